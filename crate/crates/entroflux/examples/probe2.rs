use entroflux::fluxes::FluxCore;
use entroflux::solver::*;
use entroflux::verification::cases;

fn main() {
    // odd-even with LLF reference and ES
    let case = match cases::find_case("odd-even").unwrap() {
        AnyCase::TwoD(c) => c,
        _ => panic!(),
    };
    for (name, flux, st) in [
        ("LLF", FluxCore::Llf, Stabilization::None),
        ("ES", FluxCore::Eckep, Stabilization::Es),
        ("HES", FluxCore::Eckep, Stabilization::Hes),
    ] {
        let scheme = SchemeConfig::default().with_flux(flux).with_stabilization(st);
        let mut c = case.clone();
        c.stop = StopRule::TimeFinal(5.0);
        let t0 = std::time::Instant::now();
        match run_case_2d(&c, (300, 10), &scheme, &RunOptions { record_every: usize::MAX, ..RunOptions::default() }) {
            Ok(r) => println!("odd-even {name}: OK to t=5 ({} steps, {:?})", r.steps, t0.elapsed()),
            Err(e) => println!("odd-even {name}: {e} ({:?})", t0.elapsed()),
        }
    }
    // half-cylinder with global dt at CFL 0.1
    let case = match cases::find_case("half-cylinder").unwrap() {
        AnyCase::TwoD(c) => c,
        _ => panic!(),
    };
    for (cfl, fixed) in [(0.1, false), (0.1, true)] {
        let scheme = SchemeConfig::default()
            .with_stabilization(Stabilization::Es)
            .with_cfl(cfl)
            .with_integrator(TimeIntegrator::Ssprk2);
        let mut c = case.clone();
        c.stop = StopRule::TimeFinal(0.5);
        let opts = RunOptions {
            // fixed_dt forces the global-step path even for steady rules
            fixed_dt: if fixed { Some(1e-4) } else { None },
            record_every: usize::MAX,
            ..RunOptions::default()
        };
        let t0 = std::time::Instant::now();
        match run_case_2d(&c, (20, 80), &scheme, &opts) {
            Ok(r) => println!("half-cyl cfl={cfl} fixed={fixed}: OK to t=0.5 ({} steps, {:?})", r.steps, t0.elapsed()),
            Err(e) => println!("half-cyl cfl={cfl} fixed={fixed}: {e} ({:?})", t0.elapsed()),
        }
    }
}
