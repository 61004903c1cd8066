use std::sync::Arc;
use entroflux::fluxes::FluxCore;
use entroflux::gas::Primitive2;
use entroflux::solver::*;
use entroflux::verification::cases;

fn main() {
    // 1: ECKEP-ES strip
    let l = Primitive2::new(1.0, 0.75, 0.0, 1.0);
    let r = Primitive2::new(0.125, 0.0, 0.0, 0.1);
    let ic: Arc<dyn Fn(f64, f64) -> Primitive2 + Send + Sync> =
        Arc::new(move |x, _| if x < 0.5 { l } else { r });
    let (trans, per) = (EdgeBc::Uniform(FaceBc::Transmissive), EdgeBc::Periodic);
    let strip = Case2d {
        name: "strip",
        desk_grid: (0, 0),
        paper_grid: (0, 0),
        mesh: MeshSpec::Cartesian { x: (0.0, 1.0), y: (0.0, 0.125) },
        ic,
        bcs: Bc2Set { imin: trans.clone(), imax: trans, jmin: per.clone(), jmax: per },
        solid: None,
        stop: StopRule::TimeFinal(0.2),
        corner_fix: None,
        gas: entroflux::gas::GasModel::AIR,
    };
    for (flux, st) in [
        (FluxCore::Eckep, Stabilization::Es),
        (FluxCore::Eckep, Stabilization::Hes),
        (FluxCore::Ec1, Stabilization::Es),
    ] {
        let scheme = SchemeConfig::default().with_flux(flux).with_stabilization(st);
        match run_case_2d(&strip, (100, 5), &scheme, &RunOptions { record_every: usize::MAX, ..RunOptions::default() }) {
            Ok(run) => {
                let mut dev = 0.0f64;
                for i in 0..100isize {
                    let base = run.field.cell(i, 0).as_array();
                    for j in 1..5isize {
                        let a = run.field.cell(i, j).as_array();
                        for k in 0..4 {
                            dev = dev.max((a[k] - base[k]).abs());
                        }
                    }
                }
                println!("strip {} {}: OK row-dev={dev:.2e}", flux.name(), st.name());
            }
            Err(e) => println!("strip {} {}: FAILED {e}", flux.name(), st.name()),
        }
    }
    // 2: 1D cases
    for name in ["sod", "stationary-contact", "slow-contact", "stationary-shock"] {
        let case = match cases::find_case(name).unwrap() {
            AnyCase::OneD(c) => c,
            _ => panic!(),
        };
        for st in [Stabilization::Es, Stabilization::Hes] {
            let scheme = SchemeConfig::default().with_stabilization(st);
            match run_case_1d(&case, 100, &scheme, &RunOptions { record_every: usize::MAX, ..RunOptions::default() }) {
                Ok(run) => {
                    let rho: Vec<f64> = run.field.interior().iter().map(|c| c.rho).collect();
                    let tv: f64 = rho.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
                    // drift vs initial for the contacts
                    let mut drift = 0.0f64;
                    for i in 0..100 {
                        let w0 = case.ic.eval(run.grid.cell_center(i));
                        drift = drift.max((rho[i] - w0.rho).abs());
                    }
                    println!("{name} {}: OK TV={tv:.3} max-rho-drift={drift:.2e}", st.name());
                }
                Err(e) => println!("{name} {}: FAILED {e}", st.name()),
            }
        }
    }
}
