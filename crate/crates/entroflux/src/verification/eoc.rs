//! Order-of-convergence harness on the advected density wave.

use super::norms::{eoc, error_norms};
use crate::fluxes::FluxCore;
use crate::gas::GasModel;
use crate::solver::{
    run_case_1d, Bc1, Case1d, InitialData1, RunOptions, SchemeConfig, Stabilization,
    TimeIntegrator,
};
use crate::Error;
use std::sync::Arc;

/// Density wave: `rho = 1 + 0.2 sin(2 pi x)`, `u = 0.1`, `p = 1` on a
/// periodic unit domain; the exact solution advects the profile at `u`.
pub fn density_wave_case(g: GasModel) -> Case1d {
    Case1d {
        name: "density-wave",
        domain: (0.0, 1.0),
        n_default: 100,
        ic: InitialData1::Profile(Arc::new(|x: f64| {
            crate::gas::Primitive1::new(
                1.0 + 0.2 * (2.0 * std::f64::consts::PI * x).sin(),
                0.1,
                1.0,
            )
        })),
        bc: Bc1::Periodic,
        t_final: 10.0,
        gas: g,
    }
}

/// Exact cell average of the advected wave over `[x_lo, x_hi]` at time `t`.
pub fn density_wave_cell_average(x_lo: f64, x_hi: f64, t: f64) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    let a = x_lo - 0.1 * t;
    let b = x_hi - 0.1 * t;
    1.0 + 0.2 * ((tau * a).cos() - (tau * b).cos()) / (tau * (b - a))
}

#[derive(Debug, Clone)]
pub struct EocRow {
    pub n: usize,
    pub l1: f64,
    pub l2: f64,
    pub eoc_l1: Option<f64>,
    pub eoc_l2: Option<f64>,
}

/// Run the density-wave case for each resolution with the bare core flux
/// and report errors plus pairwise convergence orders.
pub fn density_wave_eoc(
    flux: FluxCore,
    ns: &[usize],
    cfl: f64,
    t_final: f64,
    g: GasModel,
) -> Result<Vec<EocRow>, Error> {
    let case = density_wave_case(g);
    let scheme = SchemeConfig::default()
        .with_flux(flux)
        .with_stabilization(Stabilization::None)
        .with_cfl(cfl)
        .with_integrator(TimeIntegrator::Ssprk3);
    let opts = RunOptions {
        record_every: usize::MAX,
        t_final_override: Some(t_final),
        ..RunOptions::default()
    };

    let mut rows: Vec<EocRow> = Vec::with_capacity(ns.len());
    for &n in ns {
        let result = run_case_1d(&case, n, &scheme, &opts)?;
        let numeric: Vec<f64> = result.field.interior().iter().map(|c| c.rho).collect();
        let exact: Vec<f64> = (0..n)
            .map(|i| {
                let (lo, hi) = result.grid.cell_bounds(i);
                density_wave_cell_average(lo, hi, result.time)
            })
            .collect();
        let (l1, l2, _) = error_norms(&numeric, &exact, result.grid.dx);
        let (eoc_l1, eoc_l2) = match rows.last() {
            Some(prev) => (Some(eoc(prev.l1, l1)?), Some(eoc(prev.l2, l2)?)),
            None => (None, None),
        };
        rows.push(EocRow {
            n,
            l1,
            l2,
            eoc_l1,
            eoc_l2,
        });
    }
    Ok(rows)
}
