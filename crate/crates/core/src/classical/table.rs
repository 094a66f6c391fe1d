use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// One of the three variables of a joint distribution `P(T, A, B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T,
    A,
    B,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::T, Var::A, Var::B];

    fn axis(self) -> usize {
        match self {
            Var::T => 0,
            Var::A => 1,
            Var::B => 2,
        }
    }

    pub fn name(self) -> char {
        match self {
            Var::T => 'T',
            Var::A => 'A',
            Var::B => 'B',
        }
    }
}

/// Joint distribution over three finite alphabets, stored row-major in
/// `(t, a, b)` order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTable<T> {
    sizes: [usize; 3],
    probs: Vec<T>,
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    t: usize,
    a: usize,
    b: usize,
    p: f64,
}

impl<T: Real> ProbabilityTable<T> {
    pub fn new(sizes: [usize; 3], probs: Vec<T>) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::InvalidTable("alphabet of size 0".into()));
        }
        if probs.len() != sizes.iter().product::<usize>() {
            return Err(Error::InvalidTable(format!(
                "{} entries for alphabet sizes {sizes:?}",
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !(**p >= T::zero())) {
            return Err(Error::InvalidTable(format!("entry {p} is not a probability")));
        }
        let total = probs.iter().fold(T::zero(), |a, &b| a + b);
        if (total - T::one()).abs() > T::default_check_tol() * T::lit(1e-2) {
            return Err(Error::InvalidTable(format!("entries sum to {total}")));
        }
        Ok(Self { sizes, probs })
    }

    /// Builds a table from its nonzero entries; alphabet sizes are inferred
    /// from the largest symbol of each variable.
    pub fn from_entries(entries: &[([usize; 3], T)]) -> Result<Self> {
        let mut sizes = [1usize; 3];
        for (idx, _) in entries {
            for k in 0..3 {
                sizes[k] = sizes[k].max(idx[k] + 1);
            }
        }
        let mut probs = vec![T::zero(); sizes.iter().product()];
        let stride = |i: &[usize; 3]| i[0] * sizes[1] * sizes[2] + i[1] * sizes[2] + i[2];
        for (idx, p) in entries {
            let slot = &mut probs[stride(idx)];
            if *slot != T::zero() {
                return Err(Error::InvalidTable(format!("duplicate entry {idx:?}")));
            }
            *slot = *p;
        }
        Self::new(sizes, probs)
    }

    /// Reads a `t,a,b,p` CSV with a header row.
    pub fn from_csv_reader(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        let want = ["t", "a", "b", "p"];
        if headers.len() != 4 || headers.iter().zip(want).any(|(h, w)| h != w) {
            return Err(Error::InvalidTable(format!(
                "expected header `t,a,b,p`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut entries = Vec::new();
        for row in rdr.deserialize() {
            let row: CsvRow = row?;
            let p = T::from_f64(row.p)
                .ok_or_else(|| Error::InvalidTable(format!("probability {}", row.p)))?;
            if p != T::zero() {
                entries.push(([row.t, row.a, row.b], p));
            } else if !(row.p >= 0.0) {
                return Err(Error::InvalidTable(format!("probability {}", row.p)));
            }
        }
        if entries.is_empty() {
            return Err(Error::InvalidTable("no rows with positive probability".into()));
        }
        Self::from_entries(&entries)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_csv_reader(std::fs::File::open(path)?)
    }

    /// The "triadic" distribution: A and B each reveal the parity of T and
    /// nothing more.
    pub fn triadic() -> Self {
        let e = T::lit(0.125);
        Self::from_entries(&[
            ([0, 0, 0], e),
            ([0, 2, 2], e),
            ([2, 0, 2], e),
            ([2, 2, 0], e),
            ([1, 1, 1], e),
            ([1, 3, 3], e),
            ([3, 1, 3], e),
            ([3, 3, 1], e),
        ])
        .expect("built-in table is valid")
    }

    /// The "dyadic" distribution: A and B each reveal a different bit of T.
    pub fn dyadic() -> Self {
        let e = T::lit(0.125);
        Self::from_entries(&[
            ([0, 0, 0], e),
            ([0, 2, 1], e),
            ([1, 0, 2], e),
            ([1, 2, 3], e),
            ([2, 1, 0], e),
            ([2, 3, 1], e),
            ([3, 1, 2], e),
            ([3, 3, 3], e),
        ])
        .expect("built-in table is valid")
    }

    /// Named built-in distribution (`triadic` or `dyadic`).
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "triadic" => Some(Self::triadic()),
            "dyadic" => Some(Self::dyadic()),
            _ => None,
        }
    }

    pub fn sizes(&self) -> [usize; 3] {
        self.sizes
    }

    pub fn size(&self, v: Var) -> usize {
        self.sizes[v.axis()]
    }

    pub fn get(&self, t: usize, a: usize, b: usize) -> T {
        self.probs[self.index(t, a, b)]
    }

    fn index(&self, t: usize, a: usize, b: usize) -> usize {
        (t * self.sizes[1] + a) * self.sizes[2] + b
    }

    /// Iterates `((t, a, b), p)` over every cell.
    pub fn iter(&self) -> impl Iterator<Item = ([usize; 3], T)> + '_ {
        let [_, na, nb] = self.sizes;
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| ([i / (na * nb), (i / nb) % na, i % nb], p))
    }

    /// Nonzero cells only.
    pub fn support(&self) -> impl Iterator<Item = ([usize; 3], T)> + '_ {
        self.iter().filter(|(_, p)| *p > T::zero())
    }

    /// Marginal over `vars` (deduplicated, in T, A, B order), row-major.
    pub fn marginal(&self, vars: &[Var]) -> Vec<T> {
        let mut axes: Vec<usize> = vars.iter().map(|v| v.axis()).collect();
        axes.sort_unstable();
        axes.dedup();
        let len: usize = axes.iter().map(|&k| self.sizes[k]).product();
        let mut out = vec![T::zero(); len];
        for (idx, p) in self.iter() {
            let slot = axes.iter().fold(0, |acc, &k| acc * self.sizes[k] + idx[k]);
            out[slot] += p;
        }
        out
    }

    /// Renames the sources: the returned table is `P(T, B, A)`.
    pub fn swap_sources(&self) -> Self {
        let [nt, na, nb] = self.sizes;
        let mut probs = vec![T::zero(); self.probs.len()];
        for ([t, a, b], p) in self.iter() {
            probs[(t * nb + b) * na + a] = p;
        }
        Self {
            sizes: [nt, nb, na],
            probs,
        }
    }
}
