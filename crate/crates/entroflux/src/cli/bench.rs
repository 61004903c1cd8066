//! Flux micro-benchmark: mean wall time per call over identical random face
//! sequences.

use std::hint::black_box;
use std::time::Instant;

use crate::fluxes::{self, DiffusionGuard, FluxCore};
use crate::gas::GasModel;
use crate::verification::sampling;
use crate::Error;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub flux: &'static str,
    pub mean_ns: f64,
    pub stddev_ns: f64,
}

const BATCHES: usize = 100;

/// Time every flux over the same seeded face sequence. `iterations` is the
/// number of calls per flux and must be at least 10^6 for stable statistics;
/// the standard deviation is taken over equal batches.
pub fn bench_fluxes(iterations: usize, seed: u64) -> Result<Vec<BenchRow>, Error> {
    if iterations < 1_000_000 {
        return Err(Error::Config(format!(
            "bench needs at least 1e6 iterations, got {iterations}"
        )));
    }
    let g = GasModel::AIR;
    let guard = DiffusionGuard::default();

    let mut rng = sampling::rng(seed);
    let batch_len = iterations / BATCHES;
    let faces: Vec<_> = (0..batch_len)
        .map(|_| sampling::random_face_1d(&mut rng))
        .collect();

    let mut rows = Vec::new();
    for core in FluxCore::ALL {
        let mut batch_means = Vec::with_capacity(BATCHES);
        // warm-up pass
        for (l, r) in faces.iter().take(1000) {
            black_box(fluxes::core_flux_1d(core, l, r, g, &guard));
        }
        for _ in 0..BATCHES {
            let start = Instant::now();
            for (l, r) in &faces {
                black_box(fluxes::core_flux_1d(
                    core,
                    black_box(l),
                    black_box(r),
                    g,
                    &guard,
                ));
            }
            batch_means.push(start.elapsed().as_nanos() as f64 / batch_len as f64);
        }
        let mean = batch_means.iter().sum::<f64>() / BATCHES as f64;
        let var = batch_means
            .iter()
            .map(|m| (m - mean) * (m - mean))
            .sum::<f64>()
            / (BATCHES - 1) as f64;
        rows.push(BenchRow {
            flux: core.name(),
            mean_ns: mean,
            stddev_ns: var.sqrt(),
        });
    }
    Ok(rows)
}

/// CSV rendering of the benchmark table.
pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("flux,mean_ns,stddev_ns\n");
    for r in rows {
        out.push_str(&format!("{},{:.2},{:.2}\n", r.flux, r.mean_ns, r.stddev_ns));
    }
    out
}
