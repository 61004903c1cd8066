//! Perfect-gas thermodynamics: state-vector conversions, the entropy pair,
//! entropy variables and potentials, and the physical Euler fluxes.
//!
//! All routines are pure functions of their inputs and safe to call from any
//! number of workers.

use crate::{vecn, Error};

/// Perfect gas with constant ratio of specific heats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasModel {
    gamma: f64,
}

impl GasModel {
    /// Air-like diatomic gas, `gamma = 1.4`. The default for every test case
    /// that does not override it.
    pub const AIR: GasModel = GasModel { gamma: 1.4 };

    pub fn new(gamma: f64) -> Result<Self, Error> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::Config(format!("gamma must be finite and > 1, got {gamma}")));
        }
        Ok(Self { gamma })
    }

    #[inline]
    pub fn gamma(self) -> f64 {
        self.gamma
    }

    /// `gamma - 1`.
    #[inline]
    pub fn gm1(self) -> f64 {
        self.gamma - 1.0
    }
}

impl Default for GasModel {
    fn default() -> Self {
        Self::AIR
    }
}

/// Primitive flow state in one space dimension: density, velocity, pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive1 {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

/// Conserved state in one dimension: density, momentum, total energy density.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Conserved1 {
    pub rho: f64,
    pub mom: f64,
    pub energy: f64,
}

/// Primitive flow state in two dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive2 {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

/// Conserved state in two dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Conserved2 {
    pub rho: f64,
    pub mx: f64,
    pub my: f64,
    pub energy: f64,
}

impl Primitive1 {
    pub const fn new(rho: f64, u: f64, p: f64) -> Self {
        Self { rho, u, p }
    }

    #[inline]
    pub fn is_positive(&self) -> bool {
        self.rho > 0.0 && self.p > 0.0
    }

    #[inline]
    pub fn to_conserved(&self, g: GasModel) -> Conserved1 {
        Conserved1 {
            rho: self.rho,
            mom: self.rho * self.u,
            energy: self.p / g.gm1() + 0.5 * self.rho * self.u * self.u,
        }
    }

    #[inline]
    pub fn sound_speed(&self, g: GasModel) -> f64 {
        (g.gamma() * self.p / self.rho).sqrt()
    }
}

impl Conserved1 {
    #[inline]
    pub fn as_array(&self) -> [f64; 3] {
        [self.rho, self.mom, self.energy]
    }

    #[inline]
    pub fn from_array(a: [f64; 3]) -> Self {
        Self {
            rho: a[0],
            mom: a[1],
            energy: a[2],
        }
    }

    /// Inverse of [`Primitive1::to_conserved`]. Fails with a positivity
    /// violation when the derived pressure or the density is non-positive;
    /// the caller attaches the cell location.
    #[inline]
    pub fn to_primitive(&self, g: GasModel) -> Result<Primitive1, Error> {
        let u = self.mom / self.rho;
        let p = g.gm1() * (self.energy - 0.5 * self.mom * u);
        if !(self.rho > 0.0) || !(p > 0.0) {
            return Err(Error::positivity(self.rho, p));
        }
        Ok(Primitive1 { rho: self.rho, u, p })
    }
}

impl Primitive2 {
    pub const fn new(rho: f64, u: f64, v: f64, p: f64) -> Self {
        Self { rho, u, v, p }
    }

    #[inline]
    pub fn is_positive(&self) -> bool {
        self.rho > 0.0 && self.p > 0.0
    }

    #[inline]
    pub fn to_conserved(&self, g: GasModel) -> Conserved2 {
        Conserved2 {
            rho: self.rho,
            mx: self.rho * self.u,
            my: self.rho * self.v,
            energy: self.p / g.gm1() + 0.5 * self.rho * (self.u * self.u + self.v * self.v),
        }
    }

    #[inline]
    pub fn sound_speed(&self, g: GasModel) -> f64 {
        (g.gamma() * self.p / self.rho).sqrt()
    }
}

impl Conserved2 {
    #[inline]
    pub fn as_array(&self) -> [f64; 4] {
        [self.rho, self.mx, self.my, self.energy]
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Self {
            rho: a[0],
            mx: a[1],
            my: a[2],
            energy: a[3],
        }
    }

    #[inline]
    pub fn to_primitive(&self, g: GasModel) -> Result<Primitive2, Error> {
        let u = self.mx / self.rho;
        let v = self.my / self.rho;
        let p = g.gm1() * (self.energy - 0.5 * (self.mx * u + self.my * v));
        if !(self.rho > 0.0) || !(p > 0.0) {
            return Err(Error::positivity(self.rho, p));
        }
        Ok(Primitive2 { rho: self.rho, u, v, p })
    }
}

#[cfg(debug_assertions)]
thread_local! {
    static LOG_EVALS: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
}

/// Number of logarithm evaluations on this thread so far (debug builds only).
/// Instrumentation hook for the "no logarithmic means" flux property.
#[cfg(debug_assertions)]
pub fn log_eval_count() -> u64 {
    LOG_EVALS.with(|c| c.get())
}

#[inline]
fn ln_tracked(x: f64) -> f64 {
    #[cfg(debug_assertions)]
    LOG_EVALS.with(|c| c.set(c.get() + 1));
    x.ln()
}

/// Specific entropy `s = ln(p / rho^gamma)`. The single logarithm evaluation
/// in the flux path.
#[inline]
pub fn specific_entropy(rho: f64, p: f64, g: GasModel) -> f64 {
    ln_tracked(p / rho.powf(g.gamma()))
}

/// Mathematical entropy density and its flux in a given direction:
/// `eta = -rho s / (gamma - 1)`, `zeta = eta * u_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyPair {
    pub eta: f64,
    pub zeta: f64,
}

#[inline]
pub fn mathematical_entropy(rho: f64, p: f64, g: GasModel) -> f64 {
    -rho * specific_entropy(rho, p, g) / g.gm1()
}

pub fn entropy_pair_1d(w: &Primitive1, g: GasModel) -> EntropyPair {
    let eta = mathematical_entropy(w.rho, w.p, g);
    EntropyPair { eta, zeta: eta * w.u }
}

/// Entropy pair with the flux taken along the unit direction `n`.
pub fn entropy_pair_2d(w: &Primitive2, n: [f64; 2], g: GasModel) -> EntropyPair {
    let eta = mathematical_entropy(w.rho, w.p, g);
    let un = w.u * n[0] + w.v * n[1];
    EntropyPair { eta, zeta: eta * un }
}

/// Entropy potential `phi = V·U - eta = rho` and flux potential
/// `psi_n = V·F_n - zeta_n = rho u_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialPair {
    pub phi: f64,
    pub psi: f64,
}

pub fn potentials_1d(w: &Primitive1) -> PotentialPair {
    PotentialPair {
        phi: w.rho,
        psi: w.rho * w.u,
    }
}

pub fn potentials_2d(w: &Primitive2, n: [f64; 2]) -> PotentialPair {
    PotentialPair {
        phi: w.rho,
        psi: w.rho * (w.u * n[0] + w.v * n[1]),
    }
}

/// Entropy variables from a pre-computed specific entropy; shared by the
/// public wrappers and the solver's per-cell cache so both produce identical
/// bits.
#[inline]
pub(crate) fn entropy_vars_from_s_1d(rho: f64, u: f64, p: f64, s: f64, g: GasModel) -> [f64; 3] {
    let rp = rho / p;
    [
        (g.gamma() - s) / g.gm1() - 0.5 * rp * u * u,
        rp * u,
        -rp,
    ]
}

#[inline]
pub(crate) fn entropy_vars_from_s_2d(
    rho: f64,
    u: f64,
    v: f64,
    p: f64,
    s: f64,
    g: GasModel,
) -> [f64; 4] {
    let rp = rho / p;
    [
        (g.gamma() - s) / g.gm1() - 0.5 * rp * (u * u + v * v),
        rp * u,
        rp * v,
        -rp,
    ]
}

/// Entropy variable vector `V = d eta / dU` (3 components).
pub fn entropy_variables_1d(w: &Primitive1, g: GasModel) -> [f64; 3] {
    let s = specific_entropy(w.rho, w.p, g);
    entropy_vars_from_s_1d(w.rho, w.u, w.p, s, g)
}

/// Entropy variable vector `V = d eta / dU` (4 components, `|u|^2 = u^2 + v^2`).
pub fn entropy_variables_2d(w: &Primitive2, g: GasModel) -> [f64; 4] {
    let s = specific_entropy(w.rho, w.p, g);
    entropy_vars_from_s_2d(w.rho, w.u, w.v, w.p, s, g)
}

/// Physical Euler flux `F(U) = [rho u, rho u^2 + p, u (rho E + p)]`.
#[inline]
pub fn physical_flux_1d(w: &Primitive1, g: GasModel) -> [f64; 3] {
    let e = w.to_conserved(g).energy;
    [w.rho * w.u, w.rho * w.u * w.u + w.p, w.u * (e + w.p)]
}

/// Physical Euler flux along the unit direction `n`, in global components;
/// pressure enters both momentum components through `n`.
#[inline]
pub fn physical_flux_2d(w: &Primitive2, n: [f64; 2], g: GasModel) -> [f64; 4] {
    let un = w.u * n[0] + w.v * n[1];
    let e = w.to_conserved(g).energy;
    [
        w.rho * un,
        w.rho * w.u * un + w.p * n[0],
        w.rho * w.v * un + w.p * n[1],
        un * (e + w.p),
    ]
}

/// Entropy distance between two states: `(U_R - U_L)·(V_R - V_L)`.
/// Non-negative up to round-off by convexity of the entropy.
#[inline]
pub fn entropy_distance<const N: usize>(
    ul: &[f64; N],
    ur: &[f64; N],
    vl: &[f64; N],
    vr: &[f64; N],
) -> f64 {
    vecn::dot(&vecn::sub(ur, ul), &vecn::sub(vr, vl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::Rng;
    use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

    const G: GasModel = GasModel::AIR;

    fn random_state_1d(rng: &mut ChaCha8Rng) -> Primitive1 {
        // log-uniform rho, p in [0.1, 10]; uniform u in [-5, 5]
        let lr: f64 = rng.random_range(-1.0..1.0);
        let lp: f64 = rng.random_range(-1.0..1.0);
        Primitive1::new(10.0f64.powf(lr), rng.random_range(-5.0..5.0), 10.0f64.powf(lp))
    }

    #[test]
    fn prim_to_cons_stagnant() {
        // u = 0, so rho E = p / (gamma - 1) = 2.5 up to the rounding of gamma - 1
        let c = Primitive1::new(1.0, 0.0, 1.0).to_conserved(G);
        assert_eq!((c.rho, c.mom), (1.0, 0.0));
        assert_relative_eq!(c.energy, 2.5, max_relative = 2.0 * f64::EPSILON);
    }

    #[test]
    fn prim_to_cons_moving() {
        // 2.5 + 0.5 * 0.75^2
        let c = Primitive1::new(1.0, 0.75, 1.0).to_conserved(G);
        assert_eq!((c.rho, c.mom), (1.0, 0.75));
        assert_relative_eq!(c.energy, 2.78125, max_relative = 2.0 * f64::EPSILON);
    }

    #[test]
    fn cons_to_prim_examples() {
        let w = Conserved1::from_array([1.0, 0.0, 2.5]).to_primitive(G).unwrap();
        assert_eq!((w.rho, w.u), (1.0, 0.0));
        assert_relative_eq!(w.p, 1.0, max_relative = 2.0 * f64::EPSILON);

        // Sod right state
        let w = Conserved1::from_array([0.125, 0.0, 0.25]).to_primitive(G).unwrap();
        assert_eq!(w.rho, 0.125);
        assert_relative_eq!(w.p, 0.1, max_relative = 1e-15);
    }

    #[test]
    fn cons_to_prim_detects_negative_internal_energy() {
        let err = Conserved1::from_array([1.0, 3.0, 1.0]).to_primitive(G);
        assert!(matches!(err, Err(Error::Positivity { .. })));
        let err = Conserved2::from_array([1.0, 3.0, 0.0, 1.0]).to_primitive(G);
        assert!(matches!(err, Err(Error::Positivity { .. })));
    }

    #[test]
    fn round_trip_is_identity_to_4_ulp() {
        // The strict 4-ulp bound holds where the internal energy is not
        // dominated by the kinetic energy; the subtraction E - |m|^2/(2 rho)
        // otherwise amplifies round-off by the energy ratio.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut checked = 0usize;
        while checked < 100_000 {
            let w = random_state_1d(&mut rng);
            let ke = 0.5 * w.rho * w.u * w.u;
            if ke > 4.0 * w.p / G.gm1() {
                continue;
            }
            checked += 1;
            let back = w.to_conserved(G).to_primitive(G).unwrap();
            assert_abs_diff_eq!(back.rho, w.rho, epsilon = 4.0 * w.rho.abs() * f64::EPSILON);
            assert_abs_diff_eq!(back.u, w.u, epsilon = 4.0 * w.u.abs().max(1e-300) * f64::EPSILON);
            assert_abs_diff_eq!(back.p, w.p, epsilon = 4.0 * 5.0 * w.p.abs() * f64::EPSILON);
        }
    }

    #[test]
    fn round_trip_full_range_scales_with_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..100_000 {
            let w = random_state_1d(&mut rng);
            let c = w.to_conserved(G);
            let back = c.to_primitive(G).unwrap();
            // round-off amplified by at most a few ulp of the total energy scale
            let p_eps = 8.0 * G.gm1() * c.energy.abs() * f64::EPSILON;
            assert_abs_diff_eq!(back.rho, w.rho, epsilon = 4.0 * w.rho.abs() * f64::EPSILON);
            assert_abs_diff_eq!(back.u, w.u, epsilon = 4.0 * w.u.abs().max(1e-300) * f64::EPSILON);
            assert_abs_diff_eq!(back.p, w.p, epsilon = p_eps);
        }
    }

    #[test]
    fn entropy_variables_examples() {
        // s = 0, so V1 = gamma / (gamma - 1) = 3.5
        let v = entropy_variables_1d(&Primitive1::new(1.0, 0.0, 1.0), G);
        assert_abs_diff_eq!(v[0], 3.5, epsilon = 1e-15);
        assert_eq!(v[1], 0.0);
        assert_eq!(v[2], -1.0);

        let v = entropy_variables_2d(&Primitive2::new(1.0, 0.0, 0.0, 1.0), G);
        assert_abs_diff_eq!(v[0], 3.5, epsilon = 1e-15);
        assert_eq!(&v[1..], &[0.0, 0.0, -1.0]);
    }

    #[test]
    fn potential_identities_hold() {
        // phi = V.U - eta = rho and psi = V.F - zeta = rho u, to round-off.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100_000 {
            let w = random_state_1d(&mut rng);
            let v = entropy_variables_1d(&w, G);
            let u = w.to_conserved(G).as_array();
            let f = physical_flux_1d(&w, G);
            let pair = entropy_pair_1d(&w, G);

            let phi = crate::vecn::dot(&v, &u) - pair.eta;
            assert_abs_diff_eq!(phi, w.rho, epsilon = 1e-12 * pair.eta.abs().max(1.0));

            let psi = crate::vecn::dot(&v, &f) - pair.zeta;
            assert_abs_diff_eq!(psi, w.rho * w.u, epsilon = 1e-11 * pair.zeta.abs().max(1.0));
        }
    }

    #[test]
    fn entropy_pair_values() {
        let pair = entropy_pair_1d(&Primitive1::new(1.0, 0.0, 1.0), G);
        assert_eq!((pair.eta, pair.zeta), (0.0, 0.0));

        // eta = -1.4 * ln(1 / 1.4^1.4) / 0.4
        let pair = entropy_pair_1d(&Primitive1::new(1.4, 0.0, 1.0), G);
        let expect = -1.4 * (1.0f64 / 1.4f64.powf(1.4)).ln() / 0.4;
        assert_relative_eq!(pair.eta, expect, max_relative = 1e-14);
    }

    #[test]
    fn physical_flux_examples() {
        assert_eq!(physical_flux_1d(&Primitive1::new(1.0, 0.0, 1.0), G), [0.0, 1.0, 0.0]);

        // (rho E + p) u = (2.505 + 1) * 0.1
        let f = physical_flux_1d(&Primitive1::new(1.0, 0.1, 1.0), G);
        assert_abs_diff_eq!(f[0], 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(f[1], 1.01, epsilon = 1e-15);
        assert_abs_diff_eq!(f[2], 0.3505, epsilon = 1e-15);
    }

    #[test]
    fn physical_flux_rotational_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let w = Primitive2::new(
                10.0f64.powf(rng.random_range(-1.0..1.0)),
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
                10.0f64.powf(rng.random_range(-1.0..1.0)),
            );
            let th: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let (sin, cos) = th.sin_cos();
            let n = [cos, sin];

            // Flux along n must equal the rotated x-flux of the rotated state.
            let wr = Primitive2::new(
                w.rho,
                w.u * cos + w.v * sin,
                -w.u * sin + w.v * cos,
                w.p,
            );
            let f_rot = physical_flux_2d(&wr, [1.0, 0.0], G);
            let f = physical_flux_2d(&w, n, G);
            assert_abs_diff_eq!(f[0], f_rot[0], epsilon = 1e-13 * f_rot[0].abs().max(1.0));
            assert_abs_diff_eq!(f[3], f_rot[3], epsilon = 1e-13 * f_rot[3].abs().max(1.0));
            let fm = [f[1] * cos + f[2] * sin, -f[1] * sin + f[2] * cos];
            assert_abs_diff_eq!(fm[0], f_rot[1], epsilon = 1e-12 * f_rot[1].abs().max(1.0));
            assert_abs_diff_eq!(fm[1], f_rot[2], epsilon = 1e-12 * f_rot[2].abs().max(1.0));
        }
    }

    #[test]
    fn sound_speed_values() {
        assert_relative_eq!(
            Primitive1::new(1.0, 0.3, 1.4).sound_speed(G),
            1.4,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            Primitive1::new(1.0, 0.0, 1.0).sound_speed(G),
            1.4f64.sqrt(),
            max_relative = 1e-15
        );
        // a(rho, k p) = sqrt(k) a(rho, p)
        let a1 = Primitive1::new(2.0, 0.0, 3.0).sound_speed(G);
        let a2 = Primitive1::new(2.0, 0.0, 12.0).sound_speed(G);
        assert_relative_eq!(a2, 2.0 * a1, max_relative = 1e-14);
    }

    #[test]
    fn entropy_distance_is_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100_000 {
            let wl = random_state_1d(&mut rng);
            let wr = random_state_1d(&mut rng);
            let (ul, ur) = (wl.to_conserved(G).as_array(), wr.to_conserved(G).as_array());
            let (vl, vr) = (entropy_variables_1d(&wl, G), entropy_variables_1d(&wr, G));
            let ed = entropy_distance(&ul, &ur, &vl, &vr);
            let du = crate::vecn::sub(&ur, &ul);
            let dv = crate::vecn::sub(&vr, &vl);
            let scale = crate::vecn::dot(&du, &du).sqrt() * crate::vecn::dot(&dv, &dv).sqrt();
            assert!(ed >= -1e-13 * scale, "ed = {ed}, scale = {scale}");
        }
    }

    #[test]
    fn gamma_must_exceed_one() {
        assert!(GasModel::new(1.0).is_err());
        assert!(GasModel::new(0.9).is_err());
        assert!(GasModel::new(f64::NAN).is_err());
        assert!(GasModel::new(1.4).is_ok());
    }
}
