//! Rankine-Hugoniot-based scalar diffusion and the entropy-stable (ES) flux.
//!
//! Per-equation wave speeds are estimated from the jump ratios `|dF_k / dU_k|`
//! and clamped into the local characteristic range; their minimum is the
//! scalar diffusion coefficient. The resulting diffusion vanishes across
//! steady contact discontinuities and admits stationary shocks, and -- added
//! to an entropy-conservative core flux -- yields a scheme that only destroys
//! mathematical entropy.

use crate::fluxes::{self, DiffusionGuard, FaceSide, FluxCore};
use crate::gas::{GasModel, Primitive1, Primitive2};
use crate::vecn;

/// Smoothing parameter for the sonic fix applied to the scalar diffusion
/// coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SonicFix {
    pub theta: f64,
}

impl Default for SonicFix {
    fn default() -> Self {
        Self { theta: 0.1 }
    }
}

/// Per-equation wave speeds after correction, together with the
/// characteristic bounds they were clamped to.
#[derive(Debug, Clone, Copy)]
pub struct WaveSpeeds<const N: usize> {
    pub s: [f64; N],
    pub lam_min: f64,
    pub lam_max: f64,
}

/// A stabilized interface flux and the scalar diffusion that produced it.
#[derive(Debug, Clone, Copy)]
pub struct StabilizedFlux<const N: usize> {
    pub flux: [f64; N],
    pub alpha_s: f64,
}

/// Characteristic speed bounds evaluated at the arithmetic-average state of
/// the face: `lam_min/max = min/max(|u - a|, |u|, |u + a|)`.
fn face_lambda_bounds(l: &FaceSide, r: &FaceSide, g: GasModel) -> (f64, f64) {
    let ubar = 0.5 * (l.un + r.un);
    let rbar = 0.5 * (l.rho + r.rho);
    let pbar = 0.5 * (l.p + r.p);
    let abar = (g.gamma() * pbar / rbar).sqrt();
    let speeds = [(ubar - abar).abs(), ubar.abs(), (ubar + abar).abs()];
    let lam_min = speeds[0].min(speeds[1]).min(speeds[2]);
    let lam_max = speeds[0].max(speeds[1]).max(speeds[2]);
    (lam_min, lam_max)
}

/// Component jumps smaller than this fraction of the face's largest
/// normalized jump carry no usable speed information: their flux-to-state
/// ratios are dominated by round-off and are violently state-sensitive,
/// which feeds back into the scalar diffusion and destabilizes
/// multi-dimensional runs.
const RELATIVE_JUMP_FLOOR: f64 = 1e-2;

fn rh_speeds<const N: usize>(
    du: &[f64; N],
    df: &[f64; N],
    ul: &[f64; N],
    ur: &[f64; N],
    lam_min: f64,
    lam_max: f64,
    delta: f64,
) -> [f64; N] {
    // normalized jump size per component and the face's overall jump
    let mut rel = [0.0; N];
    let mut face_jump: f64 = 0.0;
    for k in 0..N {
        let scale = ul[k].abs().max(ur[k].abs()).max(1.0);
        rel[k] = du[k].abs() / scale;
        face_jump = face_jump.max(rel[k]);
    }
    let mut s = [0.0; N];
    for k in 0..N {
        // A vanishing or relatively negligible component jump carries no
        // speed information; give it the fastest local speed so fresh
        // disturbances are damped at full strength. The scalar minimum
        // still vanishes across steady contacts, where the well-defined
        // ratios are zero and lam_min = 0.
        let negligible = rel[k] <= delta || rel[k] <= RELATIVE_JUMP_FLOOR * face_jump;
        if negligible {
            s[k] = lam_max;
        } else {
            s[k] = (df[k] / du[k]).abs().clamp(lam_min, lam_max);
        }
    }
    s
}

pub(crate) fn wave_speeds_face(
    l: &FaceSide,
    r: &FaceSide,
    g: GasModel,
    guard: &DiffusionGuard,
) -> WaveSpeeds<4> {
    let (lam_min, lam_max) = face_lambda_bounds(l, r, g);
    let ul = l.cons(g);
    let ur = r.cons(g);
    let du = vecn::sub(&ur, &ul);
    let df = vecn::sub(&r.flux(g), &l.flux(g));
    WaveSpeeds {
        s: rh_speeds(&du, &df, &ul, &ur, lam_min, lam_max, guard.delta),
        lam_min,
        lam_max,
    }
}

/// Per-equation Rankine-Hugoniot wave speeds for a 1D face (3 components).
pub fn movers_wave_speeds_1d(
    l: &Primitive1,
    r: &Primitive1,
    g: GasModel,
    guard: &DiffusionGuard,
) -> WaveSpeeds<3> {
    let fl = FaceSide::from_primitive_1d(l, g);
    let fr = FaceSide::from_primitive_1d(r, g);
    let (lam_min, lam_max) = face_lambda_bounds(&fl, &fr, g);
    let ul = [fl.rho, fl.rho * fl.un, fl.cons(g)[3]];
    let ur = [fr.rho, fr.rho * fr.un, fr.cons(g)[3]];
    let du = vecn::sub(&ur, &ul);
    let fl3 = {
        let f = fl.flux(g);
        [f[0], f[1], f[3]]
    };
    let fr3 = {
        let f = fr.flux(g);
        [f[0], f[1], f[3]]
    };
    let df = vecn::sub(&fr3, &fl3);
    WaveSpeeds {
        s: rh_speeds(&du, &df, &ul, &ur, lam_min, lam_max, guard.delta),
        lam_min,
        lam_max,
    }
}

/// Per-equation wave speeds for a 2D face, computed on the 4 components of
/// the rotated normal frame.
pub fn movers_wave_speeds_2d(
    l: &Primitive2,
    r: &Primitive2,
    n: [f64; 2],
    g: GasModel,
    guard: &DiffusionGuard,
) -> WaveSpeeds<4> {
    let fl = FaceSide::from_primitive_2d(l, n, g);
    let fr = FaceSide::from_primitive_2d(r, n, g);
    wave_speeds_face(&fl, &fr, g, guard)
}

/// Scalar diffusion coefficient: the smallest corrected wave speed, run
/// through the sonic fix `alpha <- (alpha^2 + theta^2) / (2 theta)`.
///
/// The fix is a floor that keeps the diffusion away from zero near sonic
/// points; it leaves zero untouched (steady contacts stay undiffused) and is
/// the identity at `alpha = theta`. Above `theta` the raw coefficient is
/// already safe and is used as is.
pub fn rh_alpha<const N: usize>(ws: &WaveSpeeds<N>, fix: &SonicFix) -> f64 {
    let mut alpha = f64::INFINITY;
    for k in 0..N {
        alpha = alpha.min(ws.s[k]);
    }
    if alpha == 0.0 {
        0.0
    } else if alpha < fix.theta {
        (alpha * alpha + fix.theta * fix.theta) / (2.0 * fix.theta)
    } else {
        alpha
    }
}

/// ES flux on a face-frame pair: `F = F_core - (alpha_s / 2) dU`.
pub(crate) fn es_face(
    core: FluxCore,
    l: &FaceSide,
    r: &FaceSide,
    g: GasModel,
    fix: &SonicFix,
    guard: &DiffusionGuard,
) -> StabilizedFlux<4> {
    let ws = wave_speeds_face(l, r, g, guard);
    let alpha_s = rh_alpha(&ws, fix);
    stabilized_face_with_alpha(core, l, r, g, guard, alpha_s)
}

/// ES composition with an externally supplied diffusion coefficient.
/// `alpha_s = 0` reproduces the core flux bit for bit.
pub(crate) fn stabilized_face_with_alpha(
    core: FluxCore,
    l: &FaceSide,
    r: &FaceSide,
    g: GasModel,
    guard: &DiffusionGuard,
    alpha_s: f64,
) -> StabilizedFlux<4> {
    let f = fluxes::eval_core_kernel(core, l, r, g, guard);
    let du = vecn::sub(&r.cons(g), &l.cons(g));
    StabilizedFlux {
        flux: vecn::axpy(&f, -0.5 * alpha_s, &du),
        alpha_s,
    }
}

/// Entropy-stable flux on a 1D face: entropy-conservative core plus
/// Rankine-Hugoniot scalar diffusion.
pub fn es_flux_1d(
    l: &Primitive1,
    r: &Primitive1,
    core: FluxCore,
    g: GasModel,
    fix: &SonicFix,
    guard: &DiffusionGuard,
) -> StabilizedFlux<3> {
    debug_assert!(core.is_entropy_conservative());
    let fl = FaceSide::from_primitive_1d(l, g);
    let fr = FaceSide::from_primitive_1d(r, g);
    let ws = movers_wave_speeds_1d(l, r, g, guard);
    let alpha_s = rh_alpha(&ws, fix);
    let f4 = stabilized_face_with_alpha(core, &fl, &fr, g, guard, alpha_s).flux;
    StabilizedFlux {
        flux: [f4[0], f4[1], f4[3]],
        alpha_s,
    }
}

/// Entropy-stable flux on a 2D face with unit normal `n`, returned in global
/// components.
pub fn es_flux_2d(
    l: &Primitive2,
    r: &Primitive2,
    n: [f64; 2],
    core: FluxCore,
    g: GasModel,
    fix: &SonicFix,
    guard: &DiffusionGuard,
) -> StabilizedFlux<4> {
    debug_assert!(core.is_entropy_conservative());
    let fl = FaceSide::from_primitive_2d(l, n, g);
    let fr = FaceSide::from_primitive_2d(r, n, g);
    let sf = es_face(core, &fl, &fr, g, fix, guard);
    StabilizedFlux {
        flux: fluxes::unrotate(sf.flux, n),
        alpha_s: sf.alpha_s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fluxes::{eckep_flux_1d, tadmor_residual_1d};
    use crate::gas::{self, physical_flux_1d};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::Rng;
    use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

    const G: GasModel = GasModel::AIR;
    const GUARD: DiffusionGuard = DiffusionGuard { delta: 1e-16 };
    const FIX: SonicFix = SonicFix { theta: 0.1 };

    fn random_state(rng: &mut ChaCha8Rng) -> Primitive1 {
        Primitive1::new(
            10.0f64.powf(rng.random_range(-1.0..1.0)),
            rng.random_range(-5.0..5.0),
            10.0f64.powf(rng.random_range(-1.0..1.0)),
        )
    }

    #[test]
    fn identical_states_take_the_fast_speed_but_add_no_diffusion() {
        // zero jumps carry no information: the speeds default to lam_max so
        // incoming disturbances are damped, while the flux itself is
        // untouched because dU = 0
        let w = Primitive1::new(1.0, 0.4, 1.0);
        let ws = movers_wave_speeds_1d(&w, &w, G, &GUARD);
        for k in 0..3 {
            assert_eq!(ws.s[k], ws.lam_max);
        }
        let sf = es_flux_1d(&w, &w, FluxCore::Eckep, G, &FIX, &GUARD);
        let exact = physical_flux_1d(&w, G);
        for k in 0..3 {
            assert_abs_diff_eq!(
                sf.flux[k],
                exact[k],
                epsilon = 2.0 * f64::EPSILON * exact[k].abs().max(1e-300)
            );
        }
    }

    #[test]
    fn moving_contact_speeds_collapse_to_contact_speed() {
        // all jump ratios equal the contact speed 0.1
        let l = Primitive1::new(1.4, 0.1, 1.0);
        let r = Primitive1::new(1.0, 0.1, 1.0);
        let ws = movers_wave_speeds_1d(&l, &r, G, &GUARD);
        for k in 0..3 {
            assert_relative_eq!(ws.s[k], 0.1, max_relative = 1e-12);
        }
    }

    #[test]
    fn steady_contact_gets_zero_diffusion() {
        let l = Primitive1::new(1.4, 0.0, 1.0);
        let r = Primitive1::new(1.0, 0.0, 1.0);
        let ws = movers_wave_speeds_1d(&l, &r, G, &GUARD);
        assert_eq!(ws.lam_min, 0.0);
        // the mass jump carries a zero flux ratio; momentum and energy
        // jumps vanish exactly and default to lam_max, but cannot win the
        // minimum
        assert_eq!(ws.s[0], 0.0);
        assert_eq!(ws.s[1], ws.lam_max);
        assert_eq!(ws.s[2], ws.lam_max);
        assert_eq!(rh_alpha(&ws, &FIX), 0.0);

        // and the composed ES flux is the exact contact flux
        let sf = es_flux_1d(&l, &r, FluxCore::Eckep, G, &FIX, &GUARD);
        assert_eq!(sf.alpha_s, 0.0);
        assert_eq!(sf.flux, [0.0, 1.0, 0.0]);
    }

    #[test]
    fn sonic_fix_values() {
        let ws = |x: f64| WaveSpeeds::<3> {
            s: [x, 10.0, 10.0],
            lam_min: 0.0,
            lam_max: 10.0,
        };
        assert_eq!(rh_alpha(&ws(0.0), &FIX), 0.0);
        assert_abs_diff_eq!(rh_alpha(&ws(0.05), &FIX), 0.0625, epsilon = 1e-15);
        assert_abs_diff_eq!(rh_alpha(&ws(0.1), &FIX), 0.1, epsilon = 1e-15);
        // above theta the raw coefficient passes through untouched
        assert_eq!(rh_alpha(&ws(2.0), &FIX), 2.0);
    }

    #[test]
    fn wave_speeds_stay_clamped() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20_000 {
            let l = random_state(&mut rng);
            let r = random_state(&mut rng);
            let ws = movers_wave_speeds_1d(&l, &r, G, &GUARD);
            for k in 0..3 {
                assert!(ws.s[k] >= ws.lam_min && ws.s[k] <= ws.lam_max);
            }
        }
    }

    #[test]
    fn es_consistent_on_equal_states() {
        let w = Primitive1::new(0.7, -1.3, 2.0);
        let sf = es_flux_1d(&w, &w, FluxCore::Eckep, G, &FIX, &GUARD);
        let exact = physical_flux_1d(&w, G);
        for k in 0..3 {
            assert_abs_diff_eq!(sf.flux[k], exact[k], epsilon = 2.0 * f64::EPSILON * exact[k].abs().max(1e-300));
        }
    }

    #[test]
    fn interface_entropy_production_is_nonnegative() {
        // 1/4 dV . (alpha_s dU) >= 0 given alpha_s >= 0 and dU.dV >= 0
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20_000 {
            let l = random_state(&mut rng);
            let r = random_state(&mut rng);
            let sf = es_flux_1d(&l, &r, FluxCore::Eckep, G, &FIX, &GUARD);
            assert!(sf.alpha_s >= 0.0);
            let du = vecn::sub(&r.to_conserved(G).as_array(), &l.to_conserved(G).as_array());
            let dv = vecn::sub(
                &gas::entropy_variables_1d(&r, G),
                &gas::entropy_variables_1d(&l, G),
            );
            let production = 0.25 * sf.alpha_s * vecn::dot(&dv, &du);
            let scale = vecn::dot(&du, &du).sqrt() * vecn::dot(&dv, &dv).sqrt() * sf.alpha_s;
            assert!(production >= -1e-13 * scale.max(1.0));
        }
    }

    #[test]
    fn es_tadmor_residual_is_dissipative() {
        // the RH diffusion can only push the residual negative
        let l = Primitive1::new(1.0, 0.75, 1.0);
        let r = Primitive1::new(0.125, 0.0, 0.1);
        let sf = es_flux_1d(&l, &r, FluxCore::Eckep, G, &FIX, &GUARD);
        let res = tadmor_residual_1d(&l, &r, &sf.flux, G);
        assert!(res < 0.0, "residual {res}");
    }

    #[test]
    fn forced_zero_alpha_reproduces_core_bit_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let l = random_state(&mut rng);
            let r = random_state(&mut rng);
            let fl = FaceSide::from_primitive_1d(&l, G);
            let fr = FaceSide::from_primitive_1d(&r, G);
            let forced = stabilized_face_with_alpha(FluxCore::Eckep, &fl, &fr, G, &GUARD, 0.0);
            let core = crate::fluxes::eval_core_kernel(FluxCore::Eckep, &fl, &fr, G, &GUARD);
            assert_eq!(forced.flux, core);
            let ec = eckep_flux_1d(&l, &r, G, &GUARD);
            assert_eq!([forced.flux[0], forced.flux[1], forced.flux[3]], ec);
        }
    }

    #[test]
    fn kinetic_energy_diffusion_terms_are_nonpositive() {
        // the diffusion contribution to the discrete KE balance is
        // -(1/4) alpha_s rho (du)^2 per neighbour
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..10_000 {
            let l = random_state(&mut rng);
            let r = random_state(&mut rng);
            let sf = es_flux_1d(&l, &r, FluxCore::Eckep, G, &FIX, &GUARD);
            let term = -0.25 * sf.alpha_s * r.rho * (r.u - l.u) * (r.u - l.u);
            assert!(term <= 0.0);
        }
    }
}
