//! Temporary calibration probes; removed once the acceptance values are
//! frozen.

use entroflux::fluxes::FluxCore;
use entroflux::gas::GasModel;
use entroflux::solver::*;
use entroflux::verification::{cases, riemann};

const G: GasModel = GasModel::AIR;

fn one_d(name: &str) -> Case1d {
    match cases::find_case(name).unwrap() {
        AnyCase::OneD(c) => c,
        _ => panic!(),
    }
}

#[test]
#[ignore]
fn probe_sod_l1() {
    let case = one_d("sod");
    let InitialData1::Riemann { x0, left, right } = case.ic.clone() else {
        panic!()
    };
    let sol = riemann::exact_riemann(&left, &right, G).unwrap();
    for st in [Stabilization::Es, Stabilization::Hes] {
        let scheme = SchemeConfig::default().with_stabilization(st);
        let t0 = std::time::Instant::now();
        let run = run_case_1d(&case, 100, &scheme, &RunOptions::default()).unwrap();
        let mut l1 = 0.0;
        for i in 0..100 {
            let (lo, hi) = run.grid.cell_bounds(i);
            let exact = sol.cell_average_density(lo, hi, x0, run.time);
            l1 += (run.field.cell(i as isize).rho - exact).abs() * run.grid.dx;
        }
        println!(
            "sod {} N=100: steps={} L1={:.8e} ({:?})",
            st.name(),
            run.steps,
            l1,
            t0.elapsed()
        );
        // entropy monotonicity scan
        let eta = &run.diagnostics.total_entropy;
        let scale = eta[0].abs().max(1.0);
        let mut worst: f64 = 0.0;
        for k in 1..eta.len() {
            worst = worst.max(eta[k] - eta[k - 1]);
        }
        println!("  worst entropy increase per step: {:.3e} (scale {scale:.3e})", worst);
        println!("  min rho {:.4e} min p {:.4e}",
            run.diagnostics.min_rho.iter().cloned().fold(f64::INFINITY, f64::min),
            run.diagnostics.min_p.iter().cloned().fold(f64::INFINITY, f64::min));
    }
}

#[test]
#[ignore]
fn probe_stationary_shock() {
    let case = one_d("stationary-shock");
    let InitialData1::Riemann { left, right, .. } = case.ic.clone() else {
        panic!()
    };
    let scheme = SchemeConfig::default().with_stabilization(Stabilization::Es);
    let run = run_case_1d(&case, 100, &scheme, &RunOptions::default()).unwrap();
    // count intermediate cells
    let tol = 0.02 * (right.rho - left.rho).abs();
    let mut intermediate = 0;
    for i in 0..100 {
        let rho = run.field.cell(i as isize).rho;
        if (rho - left.rho).abs() > tol && (rho - right.rho).abs() > tol {
            intermediate += 1;
        }
    }
    println!(
        "stationary shock: steps={} intermediate={} rho around jump: {:?}",
        run.steps,
        intermediate,
        (46..56)
            .map(|i| (run.field.cell(i).rho * 1000.0).round() / 1000.0)
            .collect::<Vec<_>>()
    );
}

#[test]
#[ignore]
fn probe_tg_drift() {
    let case = match cases::find_case("taylor-green").unwrap() {
        AnyCase::TwoD(c) => c,
        _ => panic!(),
    };
    let scheme = SchemeConfig::default().with_stabilization(Stabilization::None);
    for (flux, dt) in [
        (FluxCore::Eckep, 1e-3),
        (FluxCore::Eckep, 5e-4),
        (FluxCore::Ec1, 1e-3),
    ] {
        let t0 = std::time::Instant::now();
        let opts = RunOptions {
            fixed_dt: Some(dt),
            t_final_override: Some(1.0),
            record_every: usize::MAX,
            ..RunOptions::default()
        };
        let run = run_case_2d(&case, (64, 64), &scheme.clone().with_flux(flux), &opts).unwrap();
        let d = &run.diagnostics;
        let eta_drift = (d.total_entropy.last().unwrap() - d.total_entropy[0]).abs();
        let ke_drift = (d.total_ke.last().unwrap() - d.total_ke[0]).abs();
        println!(
            "TG {} dt={dt:.1e}: steps={} |d eta|={eta_drift:.6e} |d KE|={ke_drift:.6e} eta0={:.6e} ke0={:.6e} ({:?})",
            flux.name(),
            run.steps,
            d.total_entropy[0],
            d.total_ke[0],
            t0.elapsed()
        );
    }
}

#[test]
#[ignore]
fn probe_oblique_steady() {
    let case = match cases::find_case("oblique-shock").unwrap() {
        AnyCase::TwoD(c) => c,
        _ => panic!(),
    };
    for st in [Stabilization::Es, Stabilization::Hes] {
        let scheme = SchemeConfig::default()
            .with_stabilization(st)
            .with_cfl(0.4)
            .with_integrator(TimeIntegrator::Ssprk2);
        let t0 = std::time::Instant::now();
        let run = run_case_2d(&case, (120, 40), &scheme, &RunOptions::default());
        match run {
            Ok(r) => println!(
                "oblique {}: steps={} converged={} t={:.3} ({:?})",
                st.name(),
                r.steps,
                r.steady_converged,
                r.time,
                t0.elapsed()
            ),
            Err(e) => println!("oblique {}: FAILED {e} ({:?})", st.name(), t0.elapsed()),
        }
    }
}

#[test]
#[ignore]
fn probe_half_cylinder_steady() {
    let case = match cases::find_case("half-cylinder").unwrap() {
        AnyCase::TwoD(c) => c,
        _ => panic!(),
    };
    for st in [Stabilization::Es, Stabilization::Hes] {
        let scheme = SchemeConfig::default()
            .with_stabilization(st)
            .with_cfl(0.4)
            .with_integrator(TimeIntegrator::Ssprk2);
        let t0 = std::time::Instant::now();
        match run_case_2d(&case, (20, 80), &scheme, &RunOptions::default()) {
            Ok(r) => {
                println!(
                    "half-cyl {}: steps={} converged={} t={:.3} ({:?})",
                    st.name(),
                    r.steps,
                    r.steady_converged,
                    r.time,
                    t0.elapsed()
                );
                // stagnation-line density profile on the two middle rows
                for j in [39usize, 40] {
                    let profile: Vec<f64> = (0..20)
                        .map(|i| r.field.cell(i as isize, j as isize).rho)
                        .collect();
                    println!("  row {j}: {profile:.3?}");
                }
            }
            Err(e) => println!("half-cyl {}: FAILED {e} ({:?})", st.name(), t0.elapsed()),
        }
    }
}

#[test]
#[ignore]
fn probe_odd_even() {
    let case = match cases::find_case("odd-even").unwrap() {
        AnyCase::TwoD(c) => c,
        _ => panic!(),
    };
    let scheme = SchemeConfig::default().with_stabilization(Stabilization::Hes);
    let t0 = std::time::Instant::now();
    let opts = RunOptions {
        record_every: 200,
        ..RunOptions::default()
    };
    match run_case_2d(&case, (300, 10), &scheme, &opts) {
        Ok(r) => {
            println!(
                "odd-even: steps={} t={:.3} min_rho={:.4e} ({:?})",
                r.steps,
                r.time,
                r.diagnostics.min_rho.iter().cloned().fold(f64::INFINITY, f64::min),
                t0.elapsed()
            );
        }
        Err(e) => println!("odd-even: FAILED {e} ({:?})", t0.elapsed()),
    }
}
