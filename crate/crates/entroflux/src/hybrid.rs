//! Entropy-distance shock sensor, fourth-order background diffusion, and the
//! hybrid entropy-stable (HES) flux.
//!
//! The sensor input is the per-interface entropy distance `dU . dV`, scaled
//! by its global maximum, mapped through an exponential (or quadratic)
//! profile, clipped to {0, 1} and flattened over neighbouring interfaces.
//! Where the sensor fires, the interface uses the Rankine-Hugoniot
//! diffusion; elsewhere a small fourth-order diffusion keeps coarse-grid
//! smooth regions free of oscillations.

use crate::fluxes::{self, DiffusionGuard, FaceSide, FluxCore};
use crate::gas::{Conserved1, GasModel, Primitive1, Primitive2};
use crate::stabilization::{self, SonicFix, StabilizedFlux};
use crate::vecn;

/// Sensor profile applied to the scaled entropy distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SensorMode {
    /// `1 - |exp(-q SED)|`; monotone in SED. The default.
    Exponential,
    /// `1 - |1 - q SED + (q SED)^2|`, a cheap series surrogate. Not monotone
    /// for `q SED > 0.5` and drops back to zero near `q SED = 1`, which can
    /// switch the sensor off exactly at the strongest interface; kept as an
    /// opt-in for fidelity studies.
    Quadratic,
}

impl std::str::FromStr for SensorMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exponential" | "exp" => Ok(SensorMode::Exponential),
            "quadratic" | "quad" => Ok(SensorMode::Quadratic),
            other => Err(crate::Error::Config(format!("unknown sensor mode \"{other}\""))),
        }
    }
}

/// Sensor configuration: scaling factor, clip threshold and profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorParams {
    pub q: f64,
    pub eps: f64,
    pub mode: SensorMode,
}

impl Default for SensorParams {
    fn default() -> Self {
        Self {
            q: 10.0,
            eps: 0.1,
            mode: SensorMode::Exponential,
        }
    }
}

/// Pre-clip sensor value for one scaled entropy distance.
#[inline]
pub fn sensor_raw(sed: f64, q: f64, mode: SensorMode) -> f64 {
    match mode {
        SensorMode::Exponential => 1.0 - (-q * sed).exp().abs(),
        SensorMode::Quadratic => {
            let x = q * sed;
            1.0 - (1.0 - x + x * x).abs()
        }
    }
}

/// Binary sensor over a 1D interface array.
#[derive(Debug, Clone)]
pub struct SensorField {
    /// Post-clip, post-flatten indicator per interface.
    pub phi: Vec<bool>,
    /// Pre-clip values, for diagnostics.
    pub raw: Vec<f64>,
}

/// Evaluate the sensor over all interfaces of a 1D line. `eds` holds the
/// entropy distance per interface; flattening takes the max over each
/// interface and its two neighbours.
pub fn sensor_field(eds: &[f64], params: &SensorParams) -> SensorField {
    let max_ed = eds.iter().cloned().fold(0.0f64, f64::max);
    let raw: Vec<f64> = if max_ed > 0.0 {
        eds.iter()
            .map(|&ed| sensor_raw(ed / max_ed, params.q, params.mode))
            .collect()
    } else {
        vec![0.0; eds.len()]
    };
    let clipped: Vec<bool> = raw.iter().map(|&r| r > params.eps).collect();
    let n = clipped.len();
    let phi = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(1);
            let hi = (i + 1).min(n.saturating_sub(1));
            clipped[lo..=hi].iter().any(|&b| b)
        })
        .collect();
    SensorField { phi, raw }
}

/// Diffusion speed of the fourth-order term, based on an exact
/// contact-capturing estimate: across pure contacts it reduces to the
/// advection speed, and it vanishes when both velocity and pressure jumps
/// do (so steady contacts stay exact).
pub(crate) fn ricca_lambda_face(
    l: &FaceSide,
    r: &FaceSide,
    g: GasModel,
    guard: &DiffusionGuard,
) -> f64 {
    let du = vecn::sub(&r.cons(g), &l.cons(g));
    let df = vecn::sub(&r.flux(g), &l.flux(g));
    let du_max = du.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let df_max = df.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if df_max <= guard.delta && du_max <= guard.delta {
        return 0.5 * (l.un.abs() + r.un.abs());
    }
    let a_face = 0.5 * (l.a + r.a);
    let dp = (r.p - l.p).abs();
    let sign = if dp > 1e-12 * l.p.max(r.p) { 1.0 } else { 0.0 };
    l.un.abs().max(r.un.abs()) + sign * a_face
}

/// 1D wrapper around [`ricca_lambda_face`].
pub fn ricca_lambda_1d(l: &Primitive1, r: &Primitive1, g: GasModel, guard: &DiffusionGuard) -> f64 {
    let fl = FaceSide::from_primitive_1d(l, g);
    let fr = FaceSide::from_primitive_1d(r, g);
    ricca_lambda_face(&fl, &fr, g, guard)
}

/// Fourth-order background diffusion over the four-cell stencil
/// `[j-1, j, j+1, j+2]` around the interface `j+1/2`:
/// `F_R = (alpha_r / 2) (U_{j+2} - 3 U_{j+1} + 3 U_j - U_{j-1})`.
/// Annihilates constant and linear fields exactly.
#[inline]
pub fn fourth_order_flux<const N: usize>(stencil: &[[f64; N]; 4], alpha_r: f64) -> [f64; N] {
    let [um1, u0, u1, u2] = stencil;
    let mut f = [0.0; N];
    for k in 0..N {
        f[k] = 0.5 * alpha_r * (u2[k] - 3.0 * u1[k] + 3.0 * u0[k] - um1[k]);
    }
    f
}

/// Coefficient of the fourth-order term: `lambda / 32`.
#[inline]
pub fn fourth_order_coefficient(lambda: f64) -> f64 {
    lambda / 32.0
}

/// HES flux on a 1D interface: the entropy-conservative core plus either the
/// RH diffusion (`phi = 1`, identical to the ES flux) or the fourth-order
/// background diffusion (`phi = 0`).
#[allow(clippy::too_many_arguments)]
pub fn hes_flux_1d(
    stencil: &[Conserved1; 4],
    phi: bool,
    core: FluxCore,
    g: GasModel,
    fix: &SonicFix,
    guard: &DiffusionGuard,
) -> Result<StabilizedFlux<3>, crate::Error> {
    let l = stencil[1].to_primitive(g)?;
    let r = stencil[2].to_primitive(g)?;
    if phi {
        return Ok(stabilization::es_flux_1d(&l, &r, core, g, fix, guard));
    }
    let ec = fluxes::core_flux_1d(core, &l, &r, g, guard);
    let lambda = ricca_lambda_1d(&l, &r, g, guard);
    let fr = fourth_order_flux(
        &[
            stencil[0].as_array(),
            stencil[1].as_array(),
            stencil[2].as_array(),
            stencil[3].as_array(),
        ],
        fourth_order_coefficient(lambda),
    );
    let mut flux = ec;
    for k in 0..3 {
        flux[k] += fr[k];
    }
    Ok(StabilizedFlux { flux, alpha_s: 0.0 })
}

/// Face-frame HES evaluation used by the 2D solver: stencil states already
/// rotated into the face frame.
pub(crate) fn hes_face(
    sides: (&FaceSide, &FaceSide),
    stencil: &[[f64; 4]; 4],
    phi: bool,
    core: FluxCore,
    g: GasModel,
    fix: &SonicFix,
    guard: &DiffusionGuard,
    stencil_ok: bool,
) -> StabilizedFlux<4> {
    let (l, r) = sides;
    if phi {
        return stabilization::es_face(core, l, r, g, fix, guard);
    }
    let ec = fluxes::eval_core_kernel(core, l, r, g, guard);
    if !stencil_ok {
        // fewer than two usable neighbours on a side: degrade to the core
        return StabilizedFlux { flux: ec, alpha_s: 0.0 };
    }
    let lambda = ricca_lambda_face(l, r, g, guard);
    let fr = fourth_order_flux(stencil, fourth_order_coefficient(lambda));
    let mut flux = ec;
    for k in 0..4 {
        flux[k] += fr[k];
    }
    StabilizedFlux { flux, alpha_s: 0.0 }
}

/// 2D HES flux in global components; `stencil` holds the conserved states of
/// the four cells along the grid line through the face, in global frame.
#[allow(clippy::too_many_arguments)]
pub fn hes_flux_2d(
    l: &Primitive2,
    r: &Primitive2,
    n: [f64; 2],
    stencil: &[[f64; 4]; 4],
    phi: bool,
    core: FluxCore,
    g: GasModel,
    fix: &SonicFix,
    guard: &DiffusionGuard,
) -> StabilizedFlux<4> {
    let fl = FaceSide::from_primitive_2d(l, n, g);
    let fr = FaceSide::from_primitive_2d(r, n, g);
    // rotate the stencil into the face frame so the diffusion acts on the
    // same components the RH branch does
    let rot = |u: &[f64; 4]| -> [f64; 4] {
        [
            u[0],
            u[1] * n[0] + u[2] * n[1],
            -u[1] * n[1] + u[2] * n[0],
            u[3],
        ]
    };
    let stencil_face = [rot(&stencil[0]), rot(&stencil[1]), rot(&stencil[2]), rot(&stencil[3])];
    let sf = hes_face((&fl, &fr), &stencil_face, phi, core, g, fix, guard, true);
    StabilizedFlux {
        flux: fluxes::unrotate(sf.flux, n),
        alpha_s: sf.alpha_s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gas::{self, physical_flux_1d};
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

    const G: GasModel = GasModel::AIR;
    const GUARD: DiffusionGuard = DiffusionGuard { delta: 1e-16 };
    const FIX: SonicFix = SonicFix { theta: 0.1 };

    #[test]
    fn entropy_distance_examples() {
        let w = Primitive1::new(1.0, 0.5, 2.0);
        let u = w.to_conserved(G).as_array();
        let v = gas::entropy_variables_1d(&w, G);
        assert_eq!(gas::entropy_distance(&u, &u, &v, &v), 0.0);

        let l = Primitive1::new(1.0, 0.75, 1.0);
        let r = Primitive1::new(0.125, 0.0, 0.1);
        let ed = gas::entropy_distance(
            &l.to_conserved(G).as_array(),
            &r.to_conserved(G).as_array(),
            &gas::entropy_variables_1d(&l, G),
            &gas::entropy_variables_1d(&r, G),
        );
        assert!(ed > 0.0);
    }

    #[test]
    fn sensor_all_zero_distances_gives_zero_phi() {
        let f = sensor_field(&[0.0; 8], &SensorParams::default());
        assert!(f.phi.iter().all(|&p| !p));
    }

    #[test]
    fn sensor_fires_at_unit_sed() {
        // raw = 1 - e^{-10} > 0.1
        let mut eds = vec![0.0; 9];
        eds[4] = 1.0;
        let f = sensor_field(&eds, &SensorParams::default());
        assert!((f.raw[4] - (1.0 - (-10.0f64).exp())).abs() < 1e-15);
        assert!(f.phi[4]);
        // flattening extends by one interface each side
        assert!(f.phi[3] && f.phi[5]);
        assert!(!f.phi[2] && !f.phi[6]);
    }

    #[test]
    fn flatten_only_grows_the_fired_set() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let eds: Vec<f64> = (0..40).map(|_| rng.random_range(0.0..1.0)).collect();
            let params = SensorParams::default();
            let f = sensor_field(&eds, &params);
            let max_ed = eds.iter().cloned().fold(0.0f64, f64::max);
            for (i, &ed) in eds.iter().enumerate() {
                let clipped = sensor_raw(ed / max_ed, params.q, params.mode) > params.eps;
                if clipped {
                    assert!(f.phi[i], "flatten dropped a fired interface");
                }
            }
        }
    }

    #[test]
    fn exponential_mode_is_monotone_quadratic_is_not() {
        let q = 10.0;
        let mut prev = -1.0;
        for i in 0..=100 {
            let sed = i as f64 / 100.0;
            let r = sensor_raw(sed, q, SensorMode::Exponential);
            assert!(r >= prev);
            prev = r;
        }
        // quadratic: raw(0.05) > raw(0.1) once q*sed passes 1/2
        let lo = sensor_raw(0.05, q, SensorMode::Quadratic);
        let hi = sensor_raw(0.1, q, SensorMode::Quadratic);
        assert!(hi < lo);
    }

    #[test]
    fn ricca_lambda_examples() {
        // identical states, u = 0.1: first branch, mean of |u|
        let w = Primitive1::new(1.0, 0.1, 1.0);
        assert_abs_diff_eq!(ricca_lambda_1d(&w, &w, G, &GUARD), 0.1, epsilon = 1e-15);

        // stationary contact: dU != 0 but u = 0 and dp = 0 -> no diffusion
        let l = Primitive1::new(1.4, 0.0, 1.0);
        let r = Primitive1::new(1.0, 0.0, 1.0);
        assert_eq!(ricca_lambda_1d(&l, &r, G, &GUARD), 0.0);

        // Sod face: max |u| + mean sound speed
        let l = Primitive1::new(1.0, 0.75, 1.0);
        let r = Primitive1::new(0.125, 0.0, 0.1);
        let a_face = 0.5 * (l.sound_speed(G) + r.sound_speed(G));
        assert_abs_diff_eq!(ricca_lambda_1d(&l, &r, G, &GUARD), 0.75 + a_face, epsilon = 1e-14);
    }

    #[test]
    fn fourth_order_flux_annihilates_constant_and_linear() {
        let c = [[2.0, -1.0, 3.0]; 4];
        assert_eq!(fourth_order_flux(&c, 1.7), [0.0, 0.0, 0.0]);

        let lin: [[f64; 3]; 4] = std::array::from_fn(|j| {
            let x = j as f64;
            [x * 0.5, x * -2.0, x * 7.0]
        });
        assert_eq!(fourth_order_flux(&lin, 1.7), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn fourth_order_flux_scalar_example() {
        // (7 - 9 + 3 - 0) / 2 = 0.5 on the first channel
        let s = [[0.0; 3], [1.0, 0.0, 0.0], [3.0, 0.0, 0.0], [7.0, 0.0, 0.0]];
        assert_eq!(fourth_order_flux(&s, 1.0)[0], 0.5);
    }

    #[test]
    fn hes_at_phi_one_is_bit_identical_to_es() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..2000 {
            let states: Vec<Primitive1> = (0..4)
                .map(|_| {
                    Primitive1::new(
                        10.0f64.powf(rng.random_range(-1.0..1.0)),
                        rng.random_range(-5.0..5.0),
                        10.0f64.powf(rng.random_range(-1.0..1.0)),
                    )
                })
                .collect();
            let stencil: [Conserved1; 4] = std::array::from_fn(|i| states[i].to_conserved(G));
            let hes = hes_flux_1d(&stencil, true, FluxCore::Eckep, G, &FIX, &GUARD).unwrap();
            let l = stencil[1].to_primitive(G).unwrap();
            let r = stencil[2].to_primitive(G).unwrap();
            let es = stabilization::es_flux_1d(&l, &r, FluxCore::Eckep, G, &FIX, &GUARD);
            assert_eq!(hes.flux, es.flux);
            assert_eq!(hes.alpha_s, es.alpha_s);
        }
    }

    #[test]
    fn hes_constant_stencil_is_physical_flux() {
        let w = Primitive1::new(1.3, 0.4, 0.9);
        let stencil = [w.to_conserved(G); 4];
        let hes = hes_flux_1d(&stencil, false, FluxCore::Eckep, G, &FIX, &GUARD).unwrap();
        let exact = physical_flux_1d(&w, G);
        for k in 0..3 {
            assert_abs_diff_eq!(
                hes.flux[k],
                exact[k],
                epsilon = 4.0 * f64::EPSILON * exact[k].abs().max(1e-300)
            );
        }
    }

    #[test]
    fn hes_steady_contact_with_phi_zero_is_exact() {
        // lambda = 0 kills the fourth-order term across the steady contact
        let l = Primitive1::new(1.4, 0.0, 1.0);
        let r = Primitive1::new(1.0, 0.0, 1.0);
        let stencil = [
            l.to_conserved(G),
            l.to_conserved(G),
            r.to_conserved(G),
            r.to_conserved(G),
        ];
        let hes = hes_flux_1d(&stencil, false, FluxCore::Eckep, G, &FIX, &GUARD).unwrap();
        assert_eq!(hes.flux, [0.0, 1.0, 0.0]);
    }
}
