//! Registry of benchmark cases: seven 1D Riemann problems, the density
//! wave, two shock-free conservation cases, and the 2D benchmark suite.
//! Desk-scale grids are the defaults; paper-scale resolutions are carried
//! alongside for full-size runs.

use std::sync::Arc;

use super::eoc::density_wave_case;
use super::shock::{normal_shock_state, oblique_post_shock};
use crate::gas::{GasModel, Primitive1, Primitive2};
use crate::solver::{
    AnyCase, Bc1, Bc2Set, Case1d, Case2d, CornerFixSpec, EdgeBc, FaceBc, InitialData1, MeshSpec,
    StopRule,
};
use crate::Error;

fn riemann_case(
    name: &'static str,
    x0: f64,
    left: (f64, f64, f64),
    right: (f64, f64, f64),
    t_final: f64,
    g: GasModel,
) -> Case1d {
    Case1d {
        name,
        domain: (0.0, 1.0),
        n_default: 100,
        ic: InitialData1::Riemann {
            x0,
            left: Primitive1::new(left.0, left.1, left.2),
            right: Primitive1::new(right.0, right.1, right.2),
        },
        bc: Bc1::Transmissive,
        t_final,
        gas: g,
    }
}

/// The seven 1D cases. The stationary-shock entry is generated from the
/// jump relations with the default Mach number 2.
pub fn one_d_cases(g: GasModel) -> Vec<Case1d> {
    vec![
        riemann_case("sod", 0.3, (1.0, 0.75, 1.0), (0.125, 0.0, 0.1), 0.2, g),
        riemann_case("strong-shock", 0.5, (1.0, 0.0, 1000.0), (1.0, 0.0, 0.01), 0.012, g),
        riemann_case(
            "collision",
            0.4,
            (5.9924, 19.5975, 460.894),
            (5.9924, -6.19633, 46.0950),
            0.035,
            g,
        ),
        stationary_shock_case(2.0, g).expect("default Mach 2 is valid"),
        riemann_case("stationary-contact", 0.5, (1.4, 0.0, 1.0), (1.0, 0.0, 1.0), 2.0, g),
        riemann_case("slow-shock", 0.1, (3.86, -0.81, 10.33), (1.0, -3.44, 1.0), 4.0, g),
        riemann_case("slow-contact", 0.5, (1.4, 0.1, 1.0), (1.0, 0.1, 1.0), 1.0, g),
    ]
}

/// Stationary shock: upstream `(1, 1, 1/(gamma M^2))` has Mach `M`; the
/// downstream state comes from the jump relations with zero front speed.
pub fn stationary_shock_case(mach: f64, g: GasModel) -> Result<Case1d, Error> {
    let left = Primitive1::new(1.0, 1.0, 1.0 / (g.gamma() * mach * mach));
    let right = normal_shock_state(&left, -mach, g)?;
    Ok(Case1d {
        name: "stationary-shock",
        domain: (0.0, 1.0),
        n_default: 100,
        ic: InitialData1::Riemann { x0: 0.5, left, right },
        bc: Bc1::Transmissive,
        t_final: 5.0,
        gas: g,
    })
}

/// Taylor-Green vortex on the periodic `[0, 2 pi]^2` box.
pub fn taylor_green_case(g: GasModel) -> Case2d {
    let gamma = g.gamma();
    Case2d {
        name: "taylor-green",
        desk_grid: (64, 64),
        paper_grid: (100, 100),
        mesh: MeshSpec::Cartesian {
            x: (0.0, std::f64::consts::TAU),
            y: (0.0, std::f64::consts::TAU),
        },
        ic: Arc::new(move |x, y| {
            Primitive2::new(
                1.0,
                x.sin() * y.cos(),
                -x.cos() * y.sin(),
                100.0 / gamma + 0.25 * ((2.0 * x).cos() + (2.0 * y).cos()),
            )
        }),
        bcs: Bc2Set::periodic(),
        solid: None,
        stop: StopRule::TimeFinal(20.0),
        corner_fix: None,
        gas: g,
    }
}

/// Isentropic vortex advecting diagonally across a periodic box.
pub fn isentropic_vortex_case(g: GasModel) -> Case2d {
    let gamma = g.gamma();
    let mach = 2.0 / gamma;
    let theta = 45.0f64.to_radians();
    Case2d {
        name: "isentropic-vortex",
        desk_grid: (64, 64),
        paper_grid: (200, 200),
        mesh: MeshSpec::Cartesian {
            x: (-10.0, 10.0),
            y: (-10.0, 10.0),
        },
        ic: Arc::new(move |x, y| {
            let f = -0.5 * (x * x + y * y);
            let omega = f.exp();
            let rho = (1.0 - 0.5 * (gamma - 1.0) * omega * omega).powf(1.0 / (gamma - 1.0));
            Primitive2::new(
                rho,
                mach * theta.cos() - y * omega,
                mach * theta.sin() + x * omega,
                rho.powf(gamma) / gamma,
            )
        }),
        bcs: Bc2Set::periodic(),
        solid: None,
        stop: StopRule::TimeFinal(10.0),
        corner_fix: None,
        gas: g,
    }
}

/// Oblique shock reflecting off a wall: Mach 2.9 inflow, 29 degree incident
/// shock prescribed along the top boundary.
pub fn oblique_shock_case(g: GasModel) -> Result<Case2d, Error> {
    let inflow = Primitive2::new(1.0, 2.9, 0.0, 1.0 / 1.4);
    let post = oblique_post_shock(&inflow, 29.0f64.to_radians(), g)?;
    Ok(Case2d {
        name: "oblique-shock",
        desk_grid: (120, 40),
        paper_grid: (240, 80),
        mesh: MeshSpec::Cartesian {
            x: (0.0, 3.0),
            y: (0.0, 1.0),
        },
        ic: Arc::new(move |_, _| inflow),
        bcs: Bc2Set {
            imin: EdgeBc::Uniform(FaceBc::Inflow(inflow)),
            imax: EdgeBc::Uniform(FaceBc::Transmissive),
            jmin: EdgeBc::Uniform(FaceBc::SlipWall),
            jmax: EdgeBc::Uniform(FaceBc::Inflow(post)),
        },
        solid: None,
        stop: StopRule::Steady {
            tol: 1e-6,
            max_steps: 200_000,
        },
        corner_fix: None,
        gas: g,
    })
}

/// Mach 2 flow over a 15 degree compression ramp starting at x = 0.5.
pub fn compression_ramp_case(g: GasModel) -> Case2d {
    let inflow = Primitive2::new(1.0, 2.0, 0.0, 1.0 / 1.4);
    Case2d {
        name: "compression-ramp",
        desk_grid: (120, 40),
        paper_grid: (240, 80),
        mesh: MeshSpec::Ramp {
            x: (0.0, 3.0),
            y: (0.0, 1.0),
            start: 0.5,
            angle_deg: 15.0,
        },
        ic: Arc::new(move |_, _| inflow),
        bcs: Bc2Set {
            imin: EdgeBc::Uniform(FaceBc::Inflow(inflow)),
            imax: EdgeBc::Uniform(FaceBc::Transmissive),
            jmin: EdgeBc::Uniform(FaceBc::SlipWall),
            jmax: EdgeBc::Uniform(FaceBc::SlipWall),
        },
        solid: None,
        stop: StopRule::Steady {
            tol: 1e-6,
            max_steps: 200_000,
        },
        corner_fix: None,
        gas: g,
    }
}

/// Mach 20 flow over a half-cylinder: the bow-shock / carbuncle benchmark.
pub fn half_cylinder_case(g: GasModel) -> Case2d {
    let inflow = Primitive2::new(1.0, 20.0, 0.0, 1.0 / 1.4);
    Case2d {
        name: "half-cylinder",
        desk_grid: (20, 80),
        paper_grid: (40, 320),
        mesh: MeshSpec::HalfCylinder,
        ic: Arc::new(move |_, _| inflow),
        bcs: Bc2Set {
            imin: EdgeBc::Uniform(FaceBc::Inflow(inflow)),
            imax: EdgeBc::Uniform(FaceBc::SlipWall),
            jmin: EdgeBc::Uniform(FaceBc::Transmissive),
            jmax: EdgeBc::Uniform(FaceBc::Transmissive),
        },
        solid: None,
        stop: StopRule::Steady {
            tol: 1e-6,
            max_steps: 200_000,
        },
        corner_fix: None,
        gas: g,
    }
}

/// Mach 3 flow over a forward-facing step (corner at 0.6, step height 0.2).
pub fn forward_step_case(g: GasModel) -> Case2d {
    let inflow = Primitive2::new(1.0, 3.0, 0.0, 1.0 / 1.4);
    Case2d {
        name: "forward-step",
        desk_grid: (120, 40),
        paper_grid: (480, 160),
        mesh: MeshSpec::Cartesian {
            x: (0.0, 3.0),
            y: (0.0, 1.0),
        },
        ic: Arc::new(move |_, _| inflow),
        bcs: Bc2Set {
            imin: EdgeBc::Uniform(FaceBc::Inflow(inflow)),
            imax: EdgeBc::Uniform(FaceBc::Transmissive),
            jmin: EdgeBc::Uniform(FaceBc::SlipWall),
            jmax: EdgeBc::Uniform(FaceBc::SlipWall),
        },
        solid: Some(Arc::new(|x, y| x > 0.6 && y < 0.2)),
        stop: StopRule::TimeFinal(4.0),
        corner_fix: Some(CornerFixSpec { corner: (0.6, 0.2) }),
        gas: g,
    }
}

/// Mach 5.09 shock diffracting over a backward-facing corner at y = 0.6.
pub fn shock_diffraction_case(g: GasModel) -> Result<Case2d, Error> {
    let quiescent = Primitive2::new(1.4, 0.0, 0.0, 1.0);
    let post1 = normal_shock_state(&Primitive1::new(1.4, 0.0, 1.0), 5.09, g)?;
    let post = Primitive2::new(post1.rho, post1.u, 0.0, post1.p);
    Ok(Case2d {
        name: "shock-diffraction",
        desk_grid: (100, 100),
        paper_grid: (400, 400),
        mesh: MeshSpec::Cartesian {
            x: (0.0, 1.0),
            y: (0.0, 1.0),
        },
        ic: Arc::new(move |x, _| if x < 0.05 { post } else { quiescent }),
        bcs: Bc2Set {
            imin: EdgeBc::PerFace(Arc::new(move |_, y, _| {
                if y >= 0.6 {
                    FaceBc::Inflow(post)
                } else {
                    FaceBc::SlipWall
                }
            })),
            imax: EdgeBc::Uniform(FaceBc::SlipWall),
            jmin: EdgeBc::Uniform(FaceBc::SlipWall),
            jmax: EdgeBc::Uniform(FaceBc::SlipWall),
        },
        solid: Some(Arc::new(|x, y| x < 0.05 && y < 0.6)),
        stop: StopRule::TimeFinal(0.1561),
        corner_fix: None,
        gas: g,
    })
}

/// Planar Mach 20 shock in a long channel with a perturbed centerline; the
/// odd-even decoupling robustness test. Desk scale: a quarter-length domain
/// on 2x2 cells.
pub fn odd_even_case(g: GasModel) -> Result<Case2d, Error> {
    odd_even_case_scaled(600.0, (300, 10), (600, 20), 80.0, g)
}

pub fn odd_even_case_scaled(
    length: f64,
    desk_grid: (usize, usize),
    paper_grid: (usize, usize),
    t_final: f64,
    g: GasModel,
) -> Result<Case2d, Error> {
    let quiescent = Primitive2::new(1.0, 0.0, 0.0, 1.0);
    let post1 = normal_shock_state(&Primitive1::new(1.0, 0.0, 1.0), 20.0, g)?;
    let post = Primitive2::new(post1.rho, post1.u, 0.0, post1.p);
    Ok(Case2d {
        name: "odd-even",
        desk_grid,
        paper_grid,
        mesh: MeshSpec::PerturbedChannel {
            x: (0.0, length),
            y: (0.0, 20.0),
            dy: 0.1,
        },
        ic: Arc::new(move |x, _| if x < 5.0 { post } else { quiescent }),
        bcs: Bc2Set {
            imin: EdgeBc::Uniform(FaceBc::Inflow(post)),
            imax: EdgeBc::Uniform(FaceBc::Transmissive),
            jmin: EdgeBc::Uniform(FaceBc::SlipWall),
            jmax: EdgeBc::Uniform(FaceBc::SlipWall),
        },
        solid: None,
        stop: StopRule::TimeFinal(t_final),
        corner_fix: None,
        gas: g,
    })
}

/// Double Mach reflection: a Mach 10 shock at 60 degrees meeting a wall
/// that starts at x = 1/6.
pub fn dmr_case(g: GasModel) -> Case2d {
    let quiescent = Primitive2::new(1.4, 0.0, 0.0, 1.0);
    let post = Primitive2::new(8.0, 33.0 * 3.0f64.sqrt() / 8.0, -4.125, 116.5);
    let sqrt3 = 3.0f64.sqrt();
    let x_wall = 1.0 / 6.0;
    Case2d {
        name: "dmr",
        desk_grid: (192, 48),
        paper_grid: (960, 240),
        mesh: MeshSpec::Cartesian {
            x: (0.0, 4.0),
            y: (0.0, 1.0),
        },
        ic: Arc::new(move |x, y| {
            if y <= sqrt3 * (x - x_wall) {
                quiescent
            } else {
                post
            }
        }),
        bcs: Bc2Set {
            imin: EdgeBc::Uniform(FaceBc::Inflow(post)),
            imax: EdgeBc::Uniform(FaceBc::Transmissive),
            jmin: EdgeBc::PerFace(Arc::new(move |x, _, _| {
                if x < x_wall {
                    FaceBc::Inflow(post)
                } else {
                    FaceBc::SlipWall
                }
            })),
            // shock foot sweeping along the top boundary
            jmax: EdgeBc::PerFace(Arc::new(move |x, _, t| {
                let xs = x_wall + (1.0 + 20.0 * t) / sqrt3;
                if x < xs {
                    FaceBc::Inflow(post)
                } else {
                    FaceBc::Inflow(quiescent)
                }
            })),
        },
        solid: None,
        stop: StopRule::TimeFinal(0.2),
        corner_fix: None,
        gas: g,
    }
}

/// Vortex filament meeting a standing Mach 20 shock; the stagnant inflow
/// cell seeds the filament.
pub fn vortex_filament_case(g: GasModel) -> Result<Case2d, Error> {
    let inflow = Primitive2::new(1.0, 20.0, 0.0, 1.0 / 1.4);
    let up1 = Primitive1::new(1.0, 20.0, 1.0 / 1.4);
    // standing shock: sigma = 20 - 20 a = 0 with a = 1
    let post1 = normal_shock_state(&up1, -20.0, g)?;
    let post = Primitive2::new(post1.rho, post1.u, 0.0, post1.p);
    let stagnant = Primitive2::new(1.0, 0.0, 0.0, 1.0 / 1.4);
    Ok(Case2d {
        name: "vortex-filament",
        desk_grid: (100, 51),
        paper_grid: (200, 100),
        mesh: MeshSpec::Cartesian {
            x: (0.0, 200.0),
            y: (0.0, 100.0),
        },
        ic: Arc::new(move |x, _| if x < 100.0 { inflow } else { post }),
        bcs: Bc2Set {
            imin: EdgeBc::PerFace(Arc::new(move |_, y, _| {
                if (y - 50.0).abs() < 1.04 {
                    FaceBc::Inflow(stagnant)
                } else {
                    FaceBc::Inflow(inflow)
                }
            })),
            imax: EdgeBc::Uniform(FaceBc::Transmissive),
            jmin: EdgeBc::Uniform(FaceBc::SlipWall),
            jmax: EdgeBc::Uniform(FaceBc::SlipWall),
        },
        solid: None,
        stop: StopRule::TimeFinal(20.0),
        corner_fix: None,
        gas: g,
    })
}

/// Every registered case, 1D first.
pub fn case_registry() -> Vec<AnyCase> {
    let g = GasModel::AIR;
    let mut out: Vec<AnyCase> = one_d_cases(g).into_iter().map(AnyCase::OneD).collect();
    out.push(AnyCase::OneD(density_wave_case(g)));
    for c in [
        taylor_green_case(g),
        isentropic_vortex_case(g),
        oblique_shock_case(g).expect("static case data"),
        compression_ramp_case(g),
        half_cylinder_case(g),
        forward_step_case(g),
        shock_diffraction_case(g).expect("static case data"),
        odd_even_case(g).expect("static case data"),
        dmr_case(g),
        vortex_filament_case(g).expect("static case data"),
    ] {
        out.push(AnyCase::TwoD(c));
    }
    out
}

pub fn find_case(name: &str) -> Result<AnyCase, Error> {
    case_registry()
        .into_iter()
        .find(|c| c.name() == name)
        .ok_or_else(|| Error::Config(format!("unknown case \"{name}\" (see list-cases)")))
}
