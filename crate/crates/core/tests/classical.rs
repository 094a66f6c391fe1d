mod common;

use common::*;
use proptest::prelude::*;
use qpid::classical::{
    bhattacharyya_overlap, conditional_entropy, interaction_gap, mutual_information, pid_decompose,
    pooled_distribution, shannon_entropy,
};
use qpid::{Error, RandomSource, Table64, Var};

const TAB: [Var; 3] = [Var::T, Var::A, Var::B];

/// `I(T; X)` by direct summation over the joint and its marginals.
fn mi_oracle(table: &Table64, x: &[usize]) -> f64 {
    let [nt, na, nb] = table.sizes();
    let key = |a: usize, b: usize| -> usize {
        match x {
            [1] => a,
            [2] => b,
            _ => a * nb + b,
        }
    };
    let nx = na * nb;
    let mut ptx = vec![0.0; nt * nx];
    let mut pt = vec![0.0; nt];
    let mut px = vec![0.0; nx];
    for t in 0..nt {
        for a in 0..na {
            for b in 0..nb {
                let p = table.get(t, a, b);
                ptx[t * nx + key(a, b)] += p;
                pt[t] += p;
                px[key(a, b)] += p;
            }
        }
    }
    let mut i = 0.0;
    for t in 0..nt {
        for k in 0..nx {
            let p = ptx[t * nx + k];
            if p > 0.0 {
                i += p * (p / (pt[t] * px[k])).log2();
            }
        }
    }
    i
}

#[test]
fn triadic_anchors() {
    let t = Table64::triadic();
    assert!((shannon_entropy(&t, &TAB) - 3.0).abs() < 1e-10);
    let r = pid_decompose(&t);
    assert!((r.i_ta - 1.0).abs() < 1e-10 && (r.i_tb - 1.0).abs() < 1e-10);
    assert!(r.b.abs() < 1e-10);
    assert!(r.unique_a.abs() < 1e-10 && r.unique_b.abs() < 1e-10);
}

#[test]
fn dyadic_anchors() {
    let r = pid_decompose(&Table64::dyadic());
    assert!((r.b - 1.0).abs() < 1e-10 && (r.b1 - 1.0).abs() < 1e-10);
    assert!((r.unique_a - 1.0).abs() < 1e-10 && (r.unique_b - 1.0).abs() < 1e-10);
}

#[test]
fn entropy_examples() {
    let uniform = Table64::new([4, 1, 1], vec![0.25; 4]).unwrap();
    assert!((shannon_entropy(&uniform, &[Var::T]) - 2.0).abs() < 1e-15);
    let det = Table64::from_entries(&[([2, 0, 1], 1.0)]).unwrap();
    for v in TAB {
        assert_eq!(shannon_entropy(&det, &[v]), 0.0);
    }
}

#[test]
fn mutual_information_examples() {
    let d = Table64::dyadic();
    assert!((mutual_information(&d, &[Var::T], &[Var::A, Var::B]).unwrap() - 2.0).abs() < 1e-12);
    assert!((mi_oracle(&d, &[1, 2]) - 2.0).abs() < 1e-12);
    let t = Table64::triadic();
    assert!((mutual_information(&t, &[Var::T], &[Var::A]).unwrap() - 1.0).abs() < 1e-12);

    let indep = Table64::new([2, 2, 1], vec![0.25; 4]).unwrap();
    assert!(mutual_information(&indep, &[Var::T], &[Var::A]).unwrap().abs() < 1e-15);
    assert!(matches!(
        mutual_information(&t, &[Var::T, Var::A], &[Var::A]),
        Err(Error::Overlap)
    ));
}

#[test]
fn overlap_examples() {
    let d = Table64::dyadic();
    assert!((bhattacharyya_overlap(&d, 0, 0).unwrap() - 0.5).abs() < 1e-15);

    let t = Table64::triadic();
    let [_, na, nb] = t.sizes();
    let pab = t.marginal(&[Var::A, Var::B]);
    for a in 0..na {
        for b in 0..nb {
            if pab[a * nb + b] > 0.0 {
                assert!((bhattacharyya_overlap(&t, a, b).unwrap() - 1.0).abs() < 1e-15);
            }
        }
    }
    let same = Table64::from_entries(&[([0, 0, 0], 0.5), ([1, 0, 0], 0.5)]).unwrap();
    assert!((bhattacharyya_overlap(&same, 0, 0).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn overlap_on_zero_probability_symbol_fails() {
    let t = Table64::from_entries(&[([0, 0, 0], 0.5), ([1, 0, 0], 0.5), ([0, 1, 1], 0.0)]).unwrap();
    assert!(matches!(
        bhattacharyya_overlap(&t, 1, 0),
        Err(Error::ZeroProbability { var: 'A', symbol: 1 })
    ));
}

#[test]
fn pooled_distribution_is_normalized_geometric_mean() {
    let d = Table64::dyadic();
    let p = pooled_distribution(&d, 0, 0).unwrap();
    // P(t|a=0) on {0,1}, P(t|b=0) on {0,2}: the only shared symbol is t=0
    assert!((p[0] - 1.0).abs() < 1e-15);
    assert!(p[1..].iter().all(|&x| x.abs() < 1e-15));
}

#[test]
fn identical_sources_have_no_unique_information() {
    let t = Table64::from_entries(&[
        ([0, 0, 0], 0.3),
        ([1, 0, 0], 0.2),
        ([1, 1, 1], 0.4),
        ([0, 1, 1], 0.1),
    ])
    .unwrap();
    let r = pid_decompose(&t);
    assert!(r.b0.abs() < 1e-15 && r.b1.abs() < 1e-15);
    assert!(r.unique_a.abs() < 1e-15 && r.unique_b.abs() < 1e-15);
}

#[test]
fn perfect_copies() {
    let t = Table64::from_entries(&[([0, 0, 0], 0.5), ([1, 1, 1], 0.3), ([2, 2, 2], 0.2)]).unwrap();
    let r = pid_decompose(&t);
    let h = shannon_entropy(&t, &[Var::T]);
    assert!(r.unique_a.abs() < 1e-10 && r.unique_b.abs() < 1e-10);
    assert!((r.redundant - h).abs() < 1e-10);
    assert!(r.synergy.abs() < 1e-10);
}

#[test]
fn interaction_gap_examples() {
    // both built-in tables: I(T;AB) = 2, I(T;A) = I(T;B) = 1
    for t in [Table64::triadic(), Table64::dyadic()] {
        let oracle = mi_oracle(&t, &[1, 2]) - mi_oracle(&t, &[1]) - mi_oracle(&t, &[2]);
        assert!(oracle.abs() < 1e-12);
        assert!(interaction_gap(&t).abs() < 1e-12);
    }
    let pt = [0.2, 0.8];
    let pa = [0.5, 0.3, 0.2];
    let pb = [0.6, 0.4];
    let mut probs = vec![];
    for x in pt {
        for y in pa {
            for z in pb {
                probs.push(x * y * z);
            }
        }
    }
    let prod = Table64::new([2, 3, 2], probs).unwrap();
    assert!(interaction_gap(&prod).abs() < 1e-12);
}

#[test]
fn csv_round_trip() {
    let text = "t,a,b,p\n0,0,0,0.5\n1,1,0,0.25\n1,0,1,0.25\n";
    let t = Table64::from_csv_reader(text.as_bytes()).unwrap();
    assert_eq!(t.sizes(), [2, 2, 2]);
    assert_eq!(t.get(1, 1, 0), 0.25);
    assert!(Table64::from_csv_reader("x,a,b,p\n0,0,0,1\n".as_bytes()).is_err());
    assert!(Table64::from_csv_reader("t,a,b,p\n0,0,0,0.9\n".as_bytes()).is_err());
    assert!(Table64::from_csv_reader("t,a,b,p\n0,0,0,-0.5\n1,0,0,1.5\n".as_bytes()).is_err());
}

#[test]
fn table_validation() {
    assert!(Table64::new([2, 1, 1], vec![0.5, 0.4]).is_err());
    assert!(Table64::new([2, 1, 1], vec![1.0]).is_err());
    assert!(Table64::from_entries(&[([0, 0, 0], 0.5), ([0, 0, 0], 0.5)]).is_err());
    assert!(Table64::builtin("triadic").is_some() && Table64::builtin("nope").is_none());
}

fn arb_table() -> impl Strategy<Value = Table64> {
    (1usize..=4, 1usize..=4, 1usize..=4, 0.0f64..0.6, any::<u64>())
        .prop_map(|(nt, na, nb, zero, seed)| random_table([nt, na, nb], &mut RandomSource::new(seed), zero))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn decomposition_identities(t in arb_table()) {
        let r = pid_decompose(&t);
        prop_assert!(r.unique_a >= -1e-10 && r.unique_b >= -1e-10);
        prop_assert!((r.i_ta - r.unique_a - r.redundant).abs() <= 1e-10);
        prop_assert!((r.i_tb - r.unique_b - r.redundant).abs() <= 1e-10);
        prop_assert!((r.i_tab - r.unique_a - r.unique_b - r.redundant - r.synergy).abs() <= 1e-10);
        prop_assert!((r.b - r.b0.max(r.b1)).abs() <= 1e-12);
        prop_assert!((r.unique_a - r.unique_b - (r.i_ta - r.i_tb)).abs() <= 1e-10);
        prop_assert!((interaction_gap(&t) - (r.synergy - r.redundant)).abs() <= 1e-10);
        prop_assert!(r.b1 >= -1e-15);
    }

    #[test]
    fn b0_is_half_the_entropy_gap(t in arb_table()) {
        let r = pid_decompose(&t);
        let gap = conditional_entropy(&t, &[Var::T], &[Var::A]) - conditional_entropy(&t, &[Var::T], &[Var::B]);
        prop_assert!((r.b0 - 0.5 * gap.abs()).abs() <= 1e-12);
    }

    #[test]
    fn mutual_information_matches_summation(t in arb_table()) {
        let r = pid_decompose(&t);
        prop_assert!((r.i_ta - mi_oracle(&t, &[1])).abs() <= 1e-10);
        prop_assert!((r.i_tb - mi_oracle(&t, &[2])).abs() <= 1e-10);
        prop_assert!((r.i_tab - mi_oracle(&t, &[1, 2])).abs() <= 1e-10);
    }

    #[test]
    fn swapping_sources_swaps_unique(t in arb_table()) {
        let r = pid_decompose(&t);
        let s = pid_decompose(&t.swap_sources());
        prop_assert!((r.unique_a - s.unique_b).abs() <= 1e-12);
        prop_assert!((r.redundant - s.redundant).abs() <= 1e-12);
    }

    #[test]
    fn duplicated_conditionals_have_zero_b1(nt in 1usize..=4, na in 1usize..=3, seed in any::<u64>()) {
        // B is an exact copy of A, so P(t|a) = P(t|b) on every supported pair.
        let base = random_table([nt, na, 1], &mut RandomSource::new(seed), 0.0);
        let mut probs = vec![0.0; nt * na * na];
        for t in 0..nt {
            for a in 0..na {
                probs[(t * na + a) * na + a] = base.get(t, a, 0);
            }
        }
        let dup = Table64::new([nt, na, na], probs).unwrap();
        let r = pid_decompose(&dup);
        prop_assert!(r.b1.abs() <= 1e-12);
    }

    #[test]
    fn distinct_conditionals_have_positive_b1(seed in any::<u64>()) {
        let mut rng = RandomSource::new(seed);
        let t = random_table([3, 2, 2], &mut rng, 0.0);
        let r = pid_decompose(&t);
        let [_, na, nb] = t.sizes();
        let pab = t.marginal(&[Var::A, Var::B]);
        let mut differ = false;
        for a in 0..na {
            for b in 0..nb {
                if pab[a * nb + b] > 0.0 && bhattacharyya_overlap(&t, a, b).unwrap() < 1.0 - 1e-9 {
                    differ = true;
                }
            }
        }
        prop_assert_eq!(differ, r.b1 > 1e-12);
    }
}
