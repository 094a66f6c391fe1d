//! Runs a configured experiment and shapes its output.

use qpid::Qpid64;

use crate::config::{Experiment, SweepConfig};
use crate::experiments::{
    run_darwinism, run_motivating, run_pooling, run_scramble, run_tables, Result,
};
use crate::output::{num, CsvDoc};
use crate::plot::{Figure, Series};

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub csv: CsvDoc,
    /// Human-readable lines.
    pub summary: Vec<String>,
    pub figure: Option<Figure>,
}

const QPID_COLUMNS: [&str; 11] = [
    "i_ta", "i_tb", "i_tab", "bq0", "bq1", "bq", "unique_a", "unique_b", "redundant", "synergy",
    "tri_information",
];

fn qpid_cells(r: &Qpid64) -> impl Iterator<Item = String> + '_ {
    r.fields().into_iter().map(|(_, v)| num(v))
}

fn qpid_summary(label: &str, r: &Qpid64) -> String {
    let parts: Vec<String> = r.fields().iter().map(|(k, v)| format!("{k}={v:.6}")).collect();
    format!("{label} [{}]: {}", r.variant, parts.join(" "))
}

pub fn execute(cfg: &SweepConfig) -> Result<Report> {
    cfg.validate()?;
    match &cfg.experiment {
        Experiment::Tables(src) => {
            let (r, gap) = run_tables(src)?;
            let mut columns = vec!["source"];
            columns.extend(r.fields().iter().map(|(k, _)| *k));
            columns.push("interaction_gap");
            let mut csv = CsvDoc::new(cfg, columns);
            let mut row = vec![src.label()];
            row.extend(r.fields().iter().map(|(_, v)| num(*v)));
            row.push(num(gap));
            csv.push(row);
            let parts: Vec<String> = r.fields().iter().map(|(k, v)| format!("{k}={v:.6}")).collect();
            let summary = vec![format!("{}: {} interaction_gap={gap:.6}", src.label(), parts.join(" "))];
            Ok(Report { csv, summary, figure: None })
        }
        Experiment::Motivating => {
            let results = run_motivating(cfg.variant)?;
            let mut columns = vec!["state", "variant"];
            columns.extend(QPID_COLUMNS);
            let mut csv = CsvDoc::new(cfg, columns);
            let mut summary = vec![];
            for (name, r) in ["psi1", "psi2"].iter().zip(&results) {
                let mut row = vec![name.to_string(), r.variant.to_string()];
                row.extend(qpid_cells(r));
                csv.push(row);
                summary.push(qpid_summary(name, r));
            }
            Ok(Report { csv, summary, figure: None })
        }
        Experiment::Scramble(p) => {
            let rows = run_scramble(p, cfg.seed, cfg.variant)?;
            let mut csv = CsvDoc::new(
                cfg,
                vec!["x", "d_a", "d_b", "draw", "i_ta", "i_tb", "i_tab", "unique_a", "unique_b"],
            );
            for r in &rows {
                let q = &r.result;
                csv.push(vec![
                    num(r.split.x),
                    r.split.d_a.to_string(),
                    r.split.d_b.to_string(),
                    r.draw.to_string(),
                    num(q.i_ta),
                    num(q.i_tb),
                    num(q.i_tab),
                    num(q.unique_a),
                    num(q.unique_b),
                ]);
            }
            let series = |name: &'static str, f: fn(&Qpid64) -> f64| Series {
                name,
                points: rows.iter().map(|r| (r.split.x, f(&r.result))).collect(),
                scatter: p.draws > 1,
            };
            let figure = Figure {
                title: format!("scrambling, D_T = {}", p.d_t),
                x_label: "log2(D_A/D_B)/2",
                y_label: "bits",
                series: vec![
                    series("unique_a", |q| q.unique_a),
                    series("unique_b", |q| q.unique_b),
                    series("I(T;A)", |q| q.i_ta),
                    series("I(T;B)", |q| q.i_tb),
                ],
            };
            let summary = vec![format!("{} rows over {} splits", rows.len(), rows.len() / p.draws)];
            Ok(Report { csv, summary, figure: Some(figure) })
        }
        Experiment::Darwinism(p) => {
            let rows = run_darwinism(p, cfg.variant)?;
            let mut csv = CsvDoc::new(cfg, vec!["m_a", "i_ta", "unique_a", "bq0", "bq1"]);
            for r in &rows {
                let q = &r.result;
                csv.push(vec![r.m_a.to_string(), num(q.i_ta), num(q.unique_a), num(q.bq0), num(q.bq1)]);
            }
            let series = |name: &'static str, f: fn(&Qpid64) -> f64| Series {
                name,
                points: rows.iter().map(|r| (r.m_a as f64, f(&r.result))).collect(),
                scatter: false,
            };
            let figure = Figure {
                title: format!("N = {}, s = {}, p = {}", p.n, p.s, p.p),
                x_label: "m_A",
                y_label: "bits",
                series: vec![series("I(T;A)", |q| q.i_ta), series("unique_a", |q| q.unique_a)],
            };
            let plateau: Vec<f64> = rows.iter().map(|r| r.result.i_ta).collect();
            let (lo, hi) = plateau.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
            let summary = vec![format!("{} rows, I(T;A) in [{lo:.6}, {hi:.6}]", rows.len())];
            Ok(Report { csv, summary, figure: Some(figure) })
        }
        Experiment::Pooling(p) => {
            let out = run_pooling(p, cfg.seed, cfg.variant)?;
            let mut csv = CsvDoc::new(cfg, vec!["sample", "bq0", "bq1"]);
            for (i, b) in out.bonuses.iter().enumerate() {
                csv.push(vec![i.to_string(), num(b.bq0), num(b.bq1)]);
            }
            let figure = Figure {
                title: format!("pooling bonuses, {} samples", p.samples),
                x_label: "B_Q0",
                y_label: "B_Q1",
                series: vec![Series {
                    name: "samples",
                    points: out.bonuses.iter().map(|b| (b.bq0, b.bq1)).collect(),
                    scatter: true,
                }],
            };
            let summary = vec![format!(
                "fraction(bq1 <= bq0) = {} ({}/{})",
                out.fraction(),
                out.count_b1_not_above_b0(),
                out.bonuses.len()
            )];
            Ok(Report { csv, summary, figure: Some(figure) })
        }
    }
}
