use entroflux::gas::GasModel;
use entroflux::solver::*;
use entroflux::verification::cases;

const G: GasModel = GasModel::AIR;

fn main() {
    let mut case = match cases::find_case("oblique-shock").unwrap() {
        AnyCase::TwoD(c) => c,
        _ => panic!(),
    };
    // settle to the limit cycle, then compare two snapshots dt apart
    let scheme = SchemeConfig::default()
        .with_stabilization(Stabilization::Es)
        .with_cfl(0.4)
        .with_integrator(TimeIntegrator::Ssprk2);
    let mut snap = |t: f64| -> Vec<Vec<(f64, f64, f64, f64)>> {
        case.stop = StopRule::TimeFinal(t);
        let r = run_case_2d(&case, (120, 40), &scheme, &RunOptions { record_every: usize::MAX, ..RunOptions::default() }).unwrap();
        (0..4)
            .map(|j| {
                (64..84)
                    .map(|i| {
                        let w = r.field.cell(i as isize, j as isize).to_primitive(G).unwrap();
                        (w.rho, w.u, w.v, w.p)
                    })
                    .collect()
            })
            .collect()
    };
    let a = snap(30.0);
    let b = snap(30.02);
    for j in 0..3 {
        println!("row {j}: d(rho), d(v) per cell i=64..84 between t=30 and 30.02:");
        let drho: Vec<String> = a[j].iter().zip(&b[j]).map(|(x, y)| format!("{:+.1e}", y.0 - x.0)).collect();
        let dv: Vec<String> = a[j].iter().zip(&b[j]).map(|(x, y)| format!("{:+.1e}", y.2 - x.2)).collect();
        println!("  drho: {}", drho.join(" "));
        println!("  dv  : {}", dv.join(" "));
    }
    println!("row0 rho at t=30: {:?}", a[0].iter().map(|x| (x.0 * 100.0).round() / 100.0).collect::<Vec<_>>());
    println!("row0 v   at t=30: {:?}", a[0].iter().map(|x| (x.2 * 100.0).round() / 100.0).collect::<Vec<_>>());
}
