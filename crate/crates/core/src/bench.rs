//! Timing harness for the tree solver on generated bounded-degree trees.

use std::collections::BTreeSet;
use std::time::Instant;

use thiserror::Error;

use crate::embedded_graph::{contract_degree2, edge_curve_table};
use crate::oracle::{gen_instance, Instance, InstanceKind, InstanceSpec, OracleError};
use crate::tree_frechet::{tree_frechet_unrooted_contracted, TreeError};
use crate::ExtendedDistance;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Generator(#[from] OracleError),
    #[error(transparent)]
    Solver(#[from] TreeError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub eps: f64,
    pub max_degree: usize,
    /// Each size is solved this many times and the fastest run is kept.
    pub repeats: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: vec![256, 512, 1024, 2048],
            seed: 1,
            eps: 0.01,
            max_degree: 3,
            repeats: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub contracted_vertices: usize,
    pub contraction_ms: f64,
    pub table_ms: f64,
    pub solve_ms: f64,
    pub total_ms: f64,
    pub distance: ExtendedDistance<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of log(total time) against log(n); `None` with
    /// fewer than two distinct sizes.
    pub slope: Option<f64>,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    let mut rows = Vec::with_capacity(cfg.sizes.len());
    for (k, &n) in cfg.sizes.iter().enumerate() {
        let spec = InstanceSpec {
            kind: InstanceKind::PerturbedCopy,
            n,
            max_degree: cfg.max_degree,
            eps: cfg.eps,
            seed: cfg.seed.wrapping_add(k as u64),
            ..Default::default()
        };
        let Instance::Pair(g1, g2) = gen_instance(&spec)? else {
            unreachable!("perturbed copies come in pairs")
        };
        let mut best: Option<BenchRow> = None;
        for _ in 0..cfg.repeats.max(1) {
            let start = Instant::now();
            let none = BTreeSet::new();
            let c1 = contract_degree2(&g1, &none).map_err(TreeError::from)?;
            let c2 = contract_degree2(&g2, &none).map_err(TreeError::from)?;
            let contraction_ms = ms(start);
            let t = Instant::now();
            let table = edge_curve_table(&c1, &c2).map_err(TreeError::from)?;
            let table_ms = ms(t);
            let t = Instant::now();
            let result = tree_frechet_unrooted_contracted(&c1, &c2, &table)?;
            let solve_ms = ms(t);
            let row = BenchRow {
                n,
                contracted_vertices: c1.vertex_count(),
                contraction_ms,
                table_ms,
                solve_ms,
                total_ms: ms(start),
                distance: result.distance,
            };
            if best.as_ref().is_none_or(|b| row.total_ms < b.total_ms) {
                best = Some(row);
            }
        }
        rows.push(best.expect("at least one repeat"));
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.total_ms)).collect();
    Ok(BenchReport {
        slope: log_log_slope(&points),
        rows,
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (logs.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}
