use std::sync::Arc;
use entroflux::gas::{GasModel, Primitive2};
use entroflux::solver::*;

const G: GasModel = GasModel::AIR;

fn main() {
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
        ic: ic.clone(),
        bcs: Bc2Set { imin: trans.clone(), imax: trans, jmin: per.clone(), jmax: per },
        solid: None,
        stop: StopRule::TimeFinal(0.012),
        corner_fix: None,
        gas: G,
    };
    let scheme = SchemeConfig::default().with_stabilization(Stabilization::Hes);
    let run = run_case_2d(&strip, (100, 5), &scheme, &RunOptions { record_every: usize::MAX, ..RunOptions::default() }).unwrap();
    // row deviation profile around the jump + per-row rho
    for i in 42..58isize {
        let mut dev = 0.0f64;
        let base = run.field.cell(i, 0).as_array();
        for j in 1..5isize {
            let a = run.field.cell(i, j).as_array();
            for k in 0..4 {
                dev = dev.max((a[k] - base[k]).abs());
            }
        }
        let w = run.field.cell(i, 2).to_primitive(G).unwrap();
        println!(
            "i={i}: rho={:.4} u={:.4} p={:.4} | row-dev {dev:.2e}",
            w.rho, w.u, w.p
        );
    }
}
