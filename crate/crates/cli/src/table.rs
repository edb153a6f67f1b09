//! The per-`n` table of MMDs and exact discrepancy statistics.

use std::sync::Arc;

use farey_mmd::analysis::rate_scale;
use farey_mmd::{check_order, discrepancy_stats, farey_mmd, farey_sequence, DiscrepancyStats, Kernel, KernelSpec};
use rayon::prelude::*;

use crate::error::CliError;
use crate::format::{rational, real};

pub const HEADER: &str = "n,N,kernel,lambda,mmd,mmd_normalized,franel_sum,l2_discretized,mikolas_error";

pub struct Row {
    pub n: u32,
    pub len: usize,
    pub spec: KernelSpec,
    pub mmd: f64,
    pub normalized: f64,
    pub stats: Arc<DiscrepancyStats>,
}

impl Row {
    pub fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.len.to_string(),
            self.spec.id(),
            self.spec.lambda().map(real).unwrap_or_default(),
            real(self.mmd),
            real(self.normalized),
            rational(&self.stats.franel_sum),
            real(self.stats.l2_discretized),
            rational(&self.stats.mikolas_error_x2),
        ]
    }
}

/// Kernels in output order: by identifier, then by length scale. Duplicates
/// are dropped.
pub fn sort_kernels(kernels: &[KernelSpec]) -> Vec<KernelSpec> {
    let mut sorted = kernels.to_vec();
    sorted.sort_by(|a, b| {
        a.id().cmp(&b.id()).then_with(|| a.lambda().unwrap_or(0.0).total_cmp(&b.lambda().unwrap_or(0.0)))
    });
    sorted.dedup();
    sorted
}

/// One row per `(n, kernel)` for `n_lo ≤ n ≤ n_max`, sorted by `n` then kernel.
///
/// Orders are evaluated in parallel; each row depends only on its own `n`, so
/// the result is the same for every thread count.
pub fn rows(n_lo: u32, n_max: u32, kernels: &[KernelSpec]) -> Result<Vec<Row>, CliError> {
    if kernels.is_empty() {
        return Err(CliError::Input("at least one --kernel is required".into()));
    }
    if n_lo < 1 || n_lo > n_max {
        return Err(CliError::Input(format!("need 1 <= n-lo <= n-max, got {n_lo} and {n_max}")));
    }
    check_order(n_max)?;
    let kernels: Vec<Kernel> = sort_kernels(kernels).into_iter().map(Kernel::new).collect::<Result<_, _>>()?;
    let per_n: Vec<Vec<Row>> = (n_lo..=n_max)
        .into_par_iter()
        .map(|n| {
            let seq = farey_sequence(n)?;
            let stats = Arc::new(discrepancy_stats(seq.points())?);
            kernels
                .iter()
                .map(|k| {
                    let r = farey_mmd(k, &seq)?;
                    Ok(Row {
                        n,
                        len: seq.len(),
                        spec: *k.spec(),
                        mmd: r.mmd,
                        normalized: r.mmd * rate_scale(n),
                        stats: Arc::clone(&stats),
                    })
                })
                .collect()
        })
        .collect::<Result<_, CliError>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

pub fn to_csv(rows: &[Row]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(HEADER.split(','))?;
    for row in rows {
        w.write_record(row.cells())?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}
