use std::collections::BTreeSet;

use proptest::prelude::*;
use qpid::Variant;
use qpid_experiments::config::{
    DarwinismParams, Engine, Experiment, PoolingParams, ScrambleParams, StateKind, SweepConfig, System,
    TableSource,
};
use qpid_experiments::experiments::{
    run_darwinism, run_motivating, run_pooling, run_scramble, run_tables, splits,
};
use qpid_experiments::{execute, ExpError};

/// Distinct subset products by explicit recursion.
fn subset_products(factors: &[usize]) -> BTreeSet<usize> {
    match factors.split_first() {
        None => BTreeSet::from([1]),
        Some((&f, rest)) => {
            let tail = subset_products(rest);
            tail.iter().flat_map(|&p| [p, p * f]).collect()
        }
    }
}

#[test]
fn desk_splits() {
    let s = splits(&[2, 2, 3, 3]);
    let d_a: Vec<usize> = s.iter().map(|x| x.d_a).collect();
    assert_eq!(d_a, [1, 2, 3, 4, 6, 9, 12, 18, 36]);
    for (lo, hi) in s.iter().zip(s.iter().rev()) {
        assert_eq!(lo.d_a, hi.d_b);
        assert!((lo.x + hi.x).abs() < 1e-15);
    }
    let mid = s.iter().find(|x| x.d_a == 6).unwrap();
    assert_eq!(mid.x, 0.0);
}

proptest! {
    #[test]
    fn splits_cover_all_subset_products(factors in prop::collection::vec(2usize..=7, 1..=8)) {
        let d_ab: usize = factors.iter().product();
        let s = splits(&factors);
        let got: BTreeSet<usize> = s.iter().map(|x| x.d_a).collect();
        prop_assert_eq!(got.len(), s.len());
        prop_assert_eq!(got, subset_products(&factors));
        for w in s.windows(2) {
            prop_assert!(w[0].x < w[1].x);
        }
        for x in &s {
            prop_assert_eq!(x.d_a * x.d_b, d_ab);
        }
    }
}

#[test]
fn tables_from_csv_satisfy_identities() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    std::fs::write(&path, "t,a,b,p\n0,0,0,0.3\n1,0,1,0.2\n1,1,1,0.15\n2,1,0,0.35\n").unwrap();
    let (r, gap) = run_tables(&TableSource::Csv(path)).unwrap();
    assert!((r.i_ta - r.unique_a - r.redundant).abs() < 1e-12);
    assert!((r.i_tb - r.unique_b - r.redundant).abs() < 1e-12);
    assert!((r.i_tab - r.unique_a - r.unique_b - r.redundant - r.synergy).abs() < 1e-12);
    assert!((gap - (r.i_tab - r.i_ta - r.i_tb)).abs() < 1e-12);
}

#[test]
fn builtin_table_names() {
    assert_eq!(TableSource::parse("dyadic"), TableSource::Builtin("dyadic".into()));
    assert!(matches!(TableSource::parse("x.csv"), TableSource::Csv(_)));
    assert!(run_tables(&TableSource::Builtin("other".into())).is_err());
}

#[test]
fn motivating_examples() {
    let [_, p2] = run_motivating(Variant::Star).unwrap();
    assert!((p2.bq - 2.0).abs() < 1e-9);
    let [p1, p2] = run_motivating(Variant::Plain).unwrap();
    assert!(p1.bq.abs() < 1e-9);
    assert!((p2.bq - 2.0).abs() < 1e-9);
}

#[test]
fn scramble_rows_are_ordered_and_bounded() {
    let params = ScrambleParams { draws: 3, ..ScrambleParams::default() };
    let rows = run_scramble(&params, 11, Variant::Star).unwrap();
    assert_eq!(rows.len(), 9 * 3);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r.draw, i % 3);
        assert!(r.result.i_ta <= r.result.i_tab + 1e-9);
        assert!((r.result.i_tab - 4.0).abs() <= 1e-9);
        let lhs = r.result.unique_a - r.result.unique_b;
        assert!((lhs - (r.result.i_ta - r.result.i_tb)).abs() <= 1e-12);
    }
    // draws at one split are independent
    assert_ne!(rows[12].result.i_ta, rows[13].result.i_ta);
}

#[test]
fn darwinism_engines_agree() {
    for (s, p) in [(0.85, 0.5), (0.5, 0.3)] {
        let branch = run_darwinism(&DarwinismParams { n: 6, s, p, engine: Engine::Branch }, Variant::Star).unwrap();
        let dense = run_darwinism(&DarwinismParams { n: 6, s, p, engine: Engine::Dense }, Variant::Star).unwrap();
        assert_eq!(branch.len(), 6);
        for (a, b) in branch.iter().zip(&dense) {
            assert_eq!(a.m_a, b.m_a);
            assert!(a.result.max_abs_diff(&b.result) <= 1e-8);
        }
    }
}

#[test]
fn pooling_counts() {
    let out = run_pooling(
        &PoolingParams { system: System::Qubit, kind: StateKind::Mixed, samples: 50 },
        3,
        Variant::Star,
    )
    .unwrap();
    assert_eq!(out.bonuses.len(), 50);
    let manual = out.bonuses.iter().filter(|b| b.bq1 <= b.bq0).count();
    assert_eq!(out.count_b1_not_above_b0(), manual);
    assert_eq!(out.fraction(), manual as f64 / 50.0);
}

fn invalid(experiment: Experiment) -> bool {
    matches!(execute(&SweepConfig::new(experiment)), Err(ExpError::Validation(_)))
}

#[test]
fn configurations_are_validated() {
    let scramble = |f: fn(&mut ScrambleParams)| {
        let mut p = ScrambleParams::default();
        f(&mut p);
        Experiment::Scramble(p)
    };
    assert!(invalid(scramble(|p| p.factors.clear())));
    assert!(invalid(scramble(|p| p.factors = vec![1, 4])));
    assert!(invalid(scramble(|p| p.draws = 0)));
    assert!(invalid(scramble(|p| p.d_ab = Some(900))));
    assert!(invalid(scramble(|p| p.d_t = 37)));
    assert!(!invalid(scramble(|p| p.d_ab = Some(36))));

    let dense = DarwinismParams { n: 13, engine: Engine::Dense, ..DarwinismParams::default() };
    assert!(invalid(Experiment::Darwinism(dense)));
    let bad_s = DarwinismParams { s: 1.5, ..DarwinismParams::default() };
    assert!(invalid(Experiment::Darwinism(bad_s)));
    let none = PoolingParams { samples: 0, ..PoolingParams::default() };
    assert!(invalid(Experiment::Pooling(none)));
}

#[test]
fn csv_schema() {
    let mut cfg = SweepConfig::new(Experiment::Scramble(ScrambleParams::default()));
    cfg.seed = 42;
    cfg.out = Some("ignored.csv".into());
    let report = execute(&cfg).unwrap();
    let text = report.csv.render();
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        format!("# qpid v{} seed=42 cmd=scramble factors=2,2,3,3 d_t=4 draws=1 variant=star", env!("CARGO_PKG_VERSION"))
    );
    assert_eq!(lines.next().unwrap(), "x,d_a,d_b,draw,i_ta,i_tb,i_tab,unique_a,unique_b");
    assert_eq!(lines.count(), 9);

    // floats survive a text round trip exactly
    let rows = run_scramble(&ScrambleParams::default(), 42, Variant::Star).unwrap();
    let col = report.csv.column("i_ta").unwrap();
    for (text, row) in col.iter().zip(&rows) {
        assert_eq!(text.parse::<f64>().unwrap().to_bits(), row.result.i_ta.to_bits());
    }
}

#[test]
fn seeds_select_streams() {
    let run = |seed| {
        let mut cfg = SweepConfig::new(Experiment::Pooling(PoolingParams { samples: 20, ..PoolingParams::default() }));
        cfg.seed = seed;
        execute(&cfg).unwrap().csv.render()
    };
    assert_eq!(run(5), run(5));
    assert_ne!(run(5), run(6));
}
