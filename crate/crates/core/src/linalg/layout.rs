use std::fmt;

use crate::error::{Error, Result};

/// Ordered tensor-factor structure of a composite Hilbert space.
///
/// Composite indices are row-major in label order: for dims `[d0, d1, d2]`
/// the basis state `|i0 i1 i2⟩` sits at `i0·d1·d2 + i1·d2 + i2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertLayout {
    dims: Vec<usize>,
    labels: Vec<String>,
}

impl HilbertLayout {
    pub fn new<S: Into<String>>(factors: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let (labels, dims): (Vec<String>, Vec<usize>) =
            factors.into_iter().map(|(l, d)| (l.into(), d)).unzip();
        if labels.is_empty() {
            return Err(Error::Layout("no subsystems".into()));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Layout(format!("subsystem `{}` has dimension 0", labels[pos])));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Layout(format!("duplicate label `{l}`")));
            }
        }
        Ok(Self { dims, labels })
    }

    /// Single-factor layout.
    pub fn single(label: &str, dim: usize) -> Result<Self> {
        Self::new([(label, dim)])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.dims[self.position(label)?])
    }

    /// Product of the dimensions of the given labels.
    pub fn dim_of_set(&self, labels: &[&str]) -> Result<usize> {
        labels.iter().map(|l| self.dim_of(l)).product()
    }

    /// Row-major strides of each factor.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        strides
    }

    /// Positions of `labels` in this layout, sorted into layout order and
    /// deduplicated.
    pub fn positions_sorted(&self, labels: &[&str]) -> Result<Vec<usize>> {
        let mut pos = labels
            .iter()
            .map(|l| self.position(l))
            .collect::<Result<Vec<_>>>()?;
        pos.sort_unstable();
        pos.dedup();
        Ok(pos)
    }

    /// Sub-layout made of the given factors, kept in layout order.
    pub fn subset(&self, labels: &[&str]) -> Result<Self> {
        let pos = self.positions_sorted(labels)?;
        if pos.is_empty() {
            return Err(Error::Layout("empty subsystem selection".into()));
        }
        Ok(self.subset_at(&pos))
    }

    pub(crate) fn subset_at(&self, pos: &[usize]) -> Self {
        Self {
            dims: pos.iter().map(|&p| self.dims[p]).collect(),
            labels: pos.iter().map(|&p| self.labels[p].clone()).collect(),
        }
    }

    /// Layout with one label renamed.
    pub fn relabel(&self, from: &str, to: &str) -> Result<Self> {
        let mut labels = self.labels.clone();
        let p = self.position(from)?;
        labels[p] = to.to_string();
        Self::new(labels.into_iter().zip(self.dims.iter().copied()))
    }

    /// Labels not listed in `labels`, in layout order.
    pub fn complement(&self, labels: &[&str]) -> Vec<&str> {
        self.labels
            .iter()
            .filter(|l| !labels.contains(&l.as_str()))
            .map(String::as_str)
            .collect()
    }

    pub fn label_refs(&self) -> Vec<&str> {
        self.labels.iter().map(String::as_str).collect()
    }

    /// Composite offsets, in this layout's strides, of every multi-index over
    /// the factors at `pos`. The multi-index over `pos` is enumerated
    /// row-major in the order `pos` is given.
    pub(crate) fn offsets(&self, pos: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let mut out = vec![0usize];
        for &p in pos {
            let d = self.dims[p];
            let s = strides[p];
            let mut next = Vec::with_capacity(out.len() * d);
            for &base in &out {
                for i in 0..d {
                    next.push(base + i * s);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for HilbertLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .labels
            .iter()
            .zip(&self.dims)
            .map(|(l, d)| format!("{l}:{d}"))
            .collect();
        write!(f, "[{}]", parts.join(" ⊗ "))
    }
}
