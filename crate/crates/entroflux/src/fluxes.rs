//! Interface numerical fluxes.
//!
//! Three entropy-conservative fluxes built from an arithmetic central flux
//! plus a scalar diffusion chosen to satisfy the interface identity
//! `dV . F = d(psi)` exactly:
//!
//! * `EC1`  - diffusion on all equations,
//! * `EC2`  - diffusion on the energy equation only,
//! * `ECKEP` - like EC2 but with the kinetic-energy-preserving momentum flux
//!   `F2 = F1 * ubar + pbar`.
//!
//! None of them evaluates logarithmic means; the only logarithm per call is
//! the specific entropy of each side. Local Lax-Friedrichs and Roe fluxes
//! are provided as references for comparison runs.
//!
//! All evaluation happens in the face-normal frame. A 1D face is the
//! tangential-velocity-zero specialization of the same kernels, which keeps
//! the two paths bit-identical where they overlap.

use crate::gas::{self, GasModel, Primitive1, Primitive2};
use crate::vecn;

/// Small positive parameter added to the diffusion denominators so that the
/// zero-jump case stays finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionGuard {
    pub delta: f64,
}

impl Default for DiffusionGuard {
    fn default() -> Self {
        Self { delta: 1e-16 }
    }
}

/// Interface flux selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxCore {
    Central,
    Ec1,
    Ec2,
    Eckep,
    Llf,
    Roe,
}

impl FluxCore {
    pub const ALL: [FluxCore; 6] = [
        FluxCore::Central,
        FluxCore::Ec1,
        FluxCore::Ec2,
        FluxCore::Eckep,
        FluxCore::Llf,
        FluxCore::Roe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FluxCore::Central => "central",
            FluxCore::Ec1 => "EC1",
            FluxCore::Ec2 => "EC2",
            FluxCore::Eckep => "ECKEP",
            FluxCore::Llf => "LLF",
            FluxCore::Roe => "Roe",
        }
    }

    /// The entropy-conservative family, valid as ES/HES cores.
    pub fn is_entropy_conservative(self) -> bool {
        matches!(self, FluxCore::Ec1 | FluxCore::Ec2 | FluxCore::Eckep)
    }
}

impl std::str::FromStr for FluxCore {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "central" => Ok(FluxCore::Central),
            "ec1" => Ok(FluxCore::Ec1),
            "ec2" => Ok(FluxCore::Ec2),
            "eckep" => Ok(FluxCore::Eckep),
            "llf" => Ok(FluxCore::Llf),
            "roe" => Ok(FluxCore::Roe),
            other => Err(crate::Error::Config(format!("unknown flux \"{other}\""))),
        }
    }
}

/// One side of a face in the face-normal frame: density, normal and
/// tangential velocity, pressure, plus the cached specific entropy and sound
/// speed. `ut == 0` for 1D faces.
#[derive(Debug, Clone, Copy)]
pub struct FaceSide {
    pub rho: f64,
    pub un: f64,
    pub ut: f64,
    pub p: f64,
    pub s: f64,
    pub a: f64,
}

impl FaceSide {
    pub fn from_primitive_1d(w: &Primitive1, g: GasModel) -> Self {
        Self {
            rho: w.rho,
            un: w.u,
            ut: 0.0,
            p: w.p,
            s: gas::specific_entropy(w.rho, w.p, g),
            a: w.sound_speed(g),
        }
    }

    pub fn from_primitive_2d(w: &Primitive2, n: [f64; 2], g: GasModel) -> Self {
        Self::from_cached_2d(w, n, gas::specific_entropy(w.rho, w.p, g), w.sound_speed(g))
    }

    /// For fluxes that never touch the entropy variables (central, LLF,
    /// Roe); skips the logarithm.
    fn from_primitive_1d_no_entropy(w: &Primitive1, g: GasModel) -> Self {
        Self {
            rho: w.rho,
            un: w.u,
            ut: 0.0,
            p: w.p,
            s: 0.0,
            a: w.sound_speed(g),
        }
    }

    fn from_primitive_2d_no_entropy(w: &Primitive2, n: [f64; 2], g: GasModel) -> Self {
        Self::from_cached_2d(w, n, 0.0, w.sound_speed(g))
    }

    /// Face-frame view of a cell whose entropy and sound speed were computed
    /// once per cell; the rotation only touches the velocity.
    #[inline]
    pub(crate) fn from_cached_2d(w: &Primitive2, n: [f64; 2], s: f64, a: f64) -> Self {
        Self {
            rho: w.rho,
            un: w.u * n[0] + w.v * n[1],
            ut: -w.u * n[1] + w.v * n[0],
            p: w.p,
            s,
            a,
        }
    }

    #[inline]
    pub(crate) fn from_cached_1d(w: &Primitive1, s: f64, a: f64) -> Self {
        Self {
            rho: w.rho,
            un: w.u,
            ut: 0.0,
            p: w.p,
            s,
            a,
        }
    }

    /// Conserved vector `[rho, rho un, rho ut, rho E]` in the face frame.
    #[inline]
    pub fn cons(&self, g: GasModel) -> [f64; 4] {
        let q2 = self.un * self.un + self.ut * self.ut;
        [
            self.rho,
            self.rho * self.un,
            self.rho * self.ut,
            self.p / g.gm1() + 0.5 * self.rho * q2,
        ]
    }

    /// Physical flux in the face frame.
    #[inline]
    pub fn flux(&self, g: GasModel) -> [f64; 4] {
        let e = self.cons(g)[3];
        [
            self.rho * self.un,
            self.rho * self.un * self.un + self.p,
            self.rho * self.un * self.ut,
            self.un * (e + self.p),
        ]
    }

    /// Entropy variables in the face frame.
    #[inline]
    pub fn entropy_vars(&self, g: GasModel) -> [f64; 4] {
        gas::entropy_vars_from_s_2d(self.rho, self.un, self.ut, self.p, self.s, g)
    }

    /// Entropy flux potential `psi = rho un`.
    #[inline]
    pub fn psi(&self) -> f64 {
        self.rho * self.un
    }
}

/// Drop the tangential component of a face-frame flux (1D view).
#[inline]
fn project3(f: [f64; 4]) -> [f64; 3] {
    [f[0], f[1], f[3]]
}

/// Rotate a face-frame flux back to global x/y components.
#[inline]
pub(crate) fn unrotate(f: [f64; 4], n: [f64; 2]) -> [f64; 4] {
    [
        f[0],
        f[1] * n[0] - f[2] * n[1],
        f[1] * n[1] + f[2] * n[0],
        f[3],
    ]
}

// ---------------------------------------------------------------------------
// face-frame kernels
// ---------------------------------------------------------------------------

/// Arithmetic mean of the two physical fluxes.
#[inline]
pub fn central_kernel(l: &FaceSide, r: &FaceSide, g: GasModel) -> [f64; 4] {
    vecn::mean(&l.flux(g), &r.flux(g))
}

/// Scalar-diffusion entropy-conservative flux: diffusion acts on every
/// equation, coefficient chosen so `dV . F = d(psi)`.
#[inline]
pub fn ec1_kernel(l: &FaceSide, r: &FaceSide, g: GasModel, delta: f64) -> [f64; 4] {
    let fbar = central_kernel(l, r, g);
    let dv = vecn::sub(&r.entropy_vars(g), &l.entropy_vars(g));
    let dpsi = r.psi() - l.psi();
    let half_alpha = (vecn::dot(&fbar, &dv) - dpsi) / (vecn::dot(&dv, &dv) + delta);
    vecn::axpy(&fbar, -half_alpha, &dv)
}

/// Entropy-conservative flux with the diffusion confined to the energy
/// equation; mass and momentum fluxes are the plain averages.
#[inline]
pub fn ec2_kernel(l: &FaceSide, r: &FaceSide, g: GasModel, delta: f64) -> [f64; 4] {
    let fbar = central_kernel(l, r, g);
    let dv = vecn::sub(&r.entropy_vars(g), &l.entropy_vars(g));
    let dpsi = r.psi() - l.psi();
    let half_alpha = (vecn::dot(&fbar, &dv) - dpsi) / (dv[3] * dv[3] + delta);
    let mut f = fbar;
    f[3] -= half_alpha * dv[3];
    f
}

/// Entropy-conservative and kinetic-energy-preserving flux: mean mass flux,
/// momentum flux `F1 * ubar + pbar` (tangential `F1 * utbar`), and the
/// energy diffusion chosen so `dV . F = d(psi)`.
#[inline]
pub fn eckep_kernel(l: &FaceSide, r: &FaceSide, g: GasModel, delta: f64) -> [f64; 4] {
    let fbar = central_kernel(l, r, g);
    let dv = vecn::sub(&r.entropy_vars(g), &l.entropy_vars(g));
    let dpsi = r.psi() - l.psi();
    let ubar = 0.5 * (l.un + r.un);
    let utbar = 0.5 * (l.ut + r.ut);
    let pbar = 0.5 * (l.p + r.p);

    let f0 = fbar[0];
    let f1 = f0 * ubar + pbar;
    let f2 = f0 * utbar;
    let numer = f0 * dv[0] + f1 * dv[1] + f2 * dv[2] + fbar[3] * dv[3] - dpsi;
    let half_alpha = numer / (dv[3] * dv[3] + delta);
    [f0, f1, f2, fbar[3] - half_alpha * dv[3]]
}

/// Local Lax-Friedrichs (Rusanov) flux.
#[inline]
pub fn llf_kernel(l: &FaceSide, r: &FaceSide, g: GasModel) -> [f64; 4] {
    let fbar = central_kernel(l, r, g);
    let lam = (l.un.abs() + l.a).max(r.un.abs() + r.a);
    let du = vecn::sub(&r.cons(g), &l.cons(g));
    vecn::axpy(&fbar, -0.5 * lam, &du)
}

/// Roe flux with the standard Roe-averaged eigensystem and no entropy fix.
#[inline]
pub fn roe_kernel(l: &FaceSide, r: &FaceSide, g: GasModel) -> [f64; 4] {
    let ul = l.cons(g);
    let ur = r.cons(g);

    let sl = l.rho.sqrt();
    let sr = r.rho.sqrt();
    let w = 1.0 / (sl + sr);
    let un = (sl * l.un + sr * r.un) * w;
    let ut = (sl * l.ut + sr * r.ut) * w;
    let hl = (ul[3] + l.p) / l.rho;
    let hr = (ur[3] + r.p) / r.rho;
    let h = (sl * hl + sr * hr) * w;
    let q2 = un * un + ut * ut;
    let a = (g.gm1() * (h - 0.5 * q2)).sqrt();

    let d_rho = ur[0] - ul[0];
    let d_mn = ur[1] - ul[1];
    let d_mt = ur[2] - ul[2];
    let d_e = ur[3] - ul[3];

    // shear wave first, then the 3-wave normal decomposition
    let alpha_t = d_mt - ut * d_rho;
    let d_e_bar = d_e - alpha_t * ut;
    let alpha_m = g.gm1() / (a * a) * (d_rho * (h - un * un) + un * d_mn - d_e_bar);
    let alpha_l = (d_rho * (un + a) - d_mn - a * alpha_m) / (2.0 * a);
    let alpha_r = d_rho - alpha_l - alpha_m;

    let lam_l = (un - a).abs();
    let lam_m = un.abs();
    let lam_r = (un + a).abs();

    let k_l = [1.0, un - a, ut, h - un * a];
    let k_m = [1.0, un, ut, 0.5 * q2];
    let k_t = [0.0, 0.0, 1.0, ut];
    let k_r = [1.0, un + a, ut, h + un * a];

    let mut f = central_kernel(l, r, g);
    for j in 0..4 {
        f[j] -= 0.5
            * (lam_l * alpha_l * k_l[j]
                + lam_m * alpha_m * k_m[j]
                + lam_m * alpha_t * k_t[j]
                + lam_r * alpha_r * k_r[j]);
    }
    f
}

#[inline]
pub(crate) fn eval_core_kernel(
    core: FluxCore,
    l: &FaceSide,
    r: &FaceSide,
    g: GasModel,
    guard: &DiffusionGuard,
) -> [f64; 4] {
    match core {
        FluxCore::Central => central_kernel(l, r, g),
        FluxCore::Ec1 => ec1_kernel(l, r, g, guard.delta),
        FluxCore::Ec2 => ec2_kernel(l, r, g, guard.delta),
        FluxCore::Eckep => eckep_kernel(l, r, g, guard.delta),
        FluxCore::Llf => llf_kernel(l, r, g),
        FluxCore::Roe => roe_kernel(l, r, g),
    }
}

// ---------------------------------------------------------------------------
// public per-face entry points
// ---------------------------------------------------------------------------

macro_rules! flux_1d {
    ($name:ident, $kernel:ident, $ctor:ident, guarded) => {
        pub fn $name(l: &Primitive1, r: &Primitive1, g: GasModel, guard: &DiffusionGuard) -> [f64; 3] {
            let fl = FaceSide::$ctor(l, g);
            let fr = FaceSide::$ctor(r, g);
            project3($kernel(&fl, &fr, g, guard.delta))
        }
    };
    ($name:ident, $kernel:ident, $ctor:ident, plain) => {
        pub fn $name(l: &Primitive1, r: &Primitive1, g: GasModel) -> [f64; 3] {
            let fl = FaceSide::$ctor(l, g);
            let fr = FaceSide::$ctor(r, g);
            project3($kernel(&fl, &fr, g))
        }
    };
}

macro_rules! flux_2d {
    ($name:ident, $kernel:ident, $ctor:ident, guarded) => {
        pub fn $name(
            l: &Primitive2,
            r: &Primitive2,
            n: [f64; 2],
            g: GasModel,
            guard: &DiffusionGuard,
        ) -> [f64; 4] {
            let fl = FaceSide::$ctor(l, n, g);
            let fr = FaceSide::$ctor(r, n, g);
            unrotate($kernel(&fl, &fr, g, guard.delta), n)
        }
    };
    ($name:ident, $kernel:ident, $ctor:ident, plain) => {
        pub fn $name(l: &Primitive2, r: &Primitive2, n: [f64; 2], g: GasModel) -> [f64; 4] {
            let fl = FaceSide::$ctor(l, n, g);
            let fr = FaceSide::$ctor(r, n, g);
            unrotate($kernel(&fl, &fr, g), n)
        }
    };
}

flux_1d!(central_flux_1d, central_kernel, from_primitive_1d_no_entropy, plain);
flux_1d!(ec1_flux_1d, ec1_kernel, from_primitive_1d, guarded);
flux_1d!(ec2_flux_1d, ec2_kernel, from_primitive_1d, guarded);
flux_1d!(eckep_flux_1d, eckep_kernel, from_primitive_1d, guarded);
flux_1d!(llf_flux_1d, llf_kernel, from_primitive_1d_no_entropy, plain);
flux_1d!(roe_flux_1d, roe_kernel, from_primitive_1d_no_entropy, plain);

flux_2d!(central_flux_2d, central_kernel, from_primitive_2d_no_entropy, plain);
flux_2d!(ec1_flux_2d, ec1_kernel, from_primitive_2d, guarded);
flux_2d!(ec2_flux_2d, ec2_kernel, from_primitive_2d, guarded);
flux_2d!(eckep_flux_2d, eckep_kernel, from_primitive_2d, guarded);
flux_2d!(llf_flux_2d, llf_kernel, from_primitive_2d_no_entropy, plain);
flux_2d!(roe_flux_2d, roe_kernel, from_primitive_2d_no_entropy, plain);

/// Evaluate any core flux on a 1D face.
pub fn core_flux_1d(
    core: FluxCore,
    l: &Primitive1,
    r: &Primitive1,
    g: GasModel,
    guard: &DiffusionGuard,
) -> [f64; 3] {
    match core {
        FluxCore::Central => central_flux_1d(l, r, g),
        FluxCore::Ec1 => ec1_flux_1d(l, r, g, guard),
        FluxCore::Ec2 => ec2_flux_1d(l, r, g, guard),
        FluxCore::Eckep => eckep_flux_1d(l, r, g, guard),
        FluxCore::Llf => llf_flux_1d(l, r, g),
        FluxCore::Roe => roe_flux_1d(l, r, g),
    }
}

/// Evaluate any core flux on a 2D face with unit normal `n`.
pub fn core_flux_2d(
    core: FluxCore,
    l: &Primitive2,
    r: &Primitive2,
    n: [f64; 2],
    g: GasModel,
    guard: &DiffusionGuard,
) -> [f64; 4] {
    match core {
        FluxCore::Central => central_flux_2d(l, r, n, g),
        FluxCore::Ec1 => ec1_flux_2d(l, r, n, g, guard),
        FluxCore::Ec2 => ec2_flux_2d(l, r, n, g, guard),
        FluxCore::Eckep => eckep_flux_2d(l, r, n, g, guard),
        FluxCore::Llf => llf_flux_2d(l, r, n, g),
        FluxCore::Roe => roe_flux_2d(l, r, n, g),
    }
}

/// Denominator and irreducible residual slack of an EC flux's
/// delta-guarded diffusion coefficient on a given face.
///
/// With the guard, the conservation identity carries a defect of exactly
/// `numer * delta / (denom + delta)`; faces where that defect is comparable
/// to a test tolerance are in the guard regime and excluded from identity
/// sweeps.
#[derive(Debug, Clone, Copy)]
pub struct GuardInfo {
    pub denom: f64,
    pub slack: f64,
}

/// Guard diagnostics for the EC family on a 1D face; `None` for fluxes
/// without a guarded denominator.
pub fn delta_guard_info_1d(
    core: FluxCore,
    l: &Primitive1,
    r: &Primitive1,
    g: GasModel,
    guard: &DiffusionGuard,
) -> Option<GuardInfo> {
    if !core.is_entropy_conservative() {
        return None;
    }
    let fl = FaceSide::from_primitive_1d(l, g);
    let fr = FaceSide::from_primitive_1d(r, g);
    let fbar = central_kernel(&fl, &fr, g);
    let dv = vecn::sub(&fr.entropy_vars(g), &fl.entropy_vars(g));
    let dpsi = fr.psi() - fl.psi();
    let (numer, denom) = match core {
        FluxCore::Ec1 => (vecn::dot(&fbar, &dv) - dpsi, vecn::dot(&dv, &dv)),
        FluxCore::Ec2 => (vecn::dot(&fbar, &dv) - dpsi, dv[3] * dv[3]),
        FluxCore::Eckep => {
            let ubar = 0.5 * (fl.un + fr.un);
            let pbar = 0.5 * (fl.p + fr.p);
            let f0 = fbar[0];
            let numer = f0 * dv[0] + (f0 * ubar + pbar) * dv[1] + fbar[3] * dv[3] - dpsi;
            (numer, dv[3] * dv[3])
        }
        _ => unreachable!(),
    };
    Some(GuardInfo {
        denom,
        slack: numer.abs() * guard.delta / (denom + guard.delta),
    })
}

/// Signed defect of the interface entropy-conservation identity:
/// `dV . F - d(psi)`. Zero (to round-off) for the EC family, negative for
/// entropy-dissipative fluxes on admissible jumps.
pub fn tadmor_residual_1d(l: &Primitive1, r: &Primitive1, f: &[f64; 3], g: GasModel) -> f64 {
    let dv = vecn::sub(
        &gas::entropy_variables_1d(r, g),
        &gas::entropy_variables_1d(l, g),
    );
    let dpsi = r.rho * r.u - l.rho * l.u;
    vecn::dot(&dv, f) - dpsi
}

/// 2D Tadmor defect for a flux given in global components.
pub fn tadmor_residual_2d(
    l: &Primitive2,
    r: &Primitive2,
    n: [f64; 2],
    f: &[f64; 4],
    g: GasModel,
) -> f64 {
    let dv = vecn::sub(
        &gas::entropy_variables_2d(r, g),
        &gas::entropy_variables_2d(l, g),
    );
    let dpsi = r.rho * (r.u * n[0] + r.v * n[1]) - l.rho * (l.u * n[0] + l.v * n[1]);
    vecn::dot(&dv, f) - dpsi
}
