use entroflux::solver::*;
use entroflux::verification::cases;

fn main() {
    let mut case = match cases::find_case("oblique-shock").unwrap() {
        AnyCase::TwoD(c) => c,
        _ => panic!(),
    };
    case.stop = StopRule::TimeFinal(40.0);
    let scheme = SchemeConfig::default()
        .with_stabilization(Stabilization::Hes)
        .with_cfl(0.4)
        .with_integrator(TimeIntegrator::Ssprk2);
    let opts = RunOptions { record_every: 1, ..RunOptions::default() };
    match run_case_2d(&case, (120, 40), &scheme, &opts) {
        Ok(r) => {
            let d = &r.diagnostics;
            let base: Vec<f64> = (0..4).map(|k| d.res[k][1]).collect();
            let mut floor = [f64::INFINITY; 4];
            for s in 1..d.len() {
                for k in 0..4 {
                    floor[k] = floor[k].min(d.res[k][s] / base[k]);
                }
            }
            println!(
                "HES cfl=0.4: steps={} floors = {:.2e} {:.2e} {:.2e} {:.2e}",
                r.steps, floor[0], floor[1], floor[2], floor[3]
            );
        }
        Err(e) => println!("HES cfl=0.4: FAILED {e}"),
    }
    // min_p trajectory before a crash: rerun to just before and inspect
    let mut c2 = case.clone();
    c2.stop = StopRule::TimeFinal(31.0);
    match run_case_2d(&c2, (120, 40), &scheme, &RunOptions { record_every: 200, ..RunOptions::default() }) {
        Ok(r) => {
            let d = &r.diagnostics;
            for k in (0..d.len()).step_by(d.len() / 12) {
                println!("t={:.2} min_rho={:.4e} min_p={:.4e}", d.t[k], d.min_rho[k], d.min_p[k]);
            }
        }
        Err(e) => println!("pre-crash run FAILED: {e}"),
    }
}
