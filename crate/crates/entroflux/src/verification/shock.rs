//! Normal- and oblique-shock jump relations.

use crate::gas::{GasModel, Primitive1, Primitive2};
use crate::Error;

/// Downstream state of a normal shock running through `upstream`.
///
/// `mach` is signed: the shock front propagates at lab speed
/// `sigma = u1 + mach * a1`, so positive values give a right-running shock
/// (downstream on the left) and `mach = -M` with `u1 = M a1` produces a
/// stationary shock. `|mach|` must exceed 1.
pub fn normal_shock_state(upstream: &Primitive1, mach: f64, g: GasModel) -> Result<Primitive1, Error> {
    if !(mach.abs() > 1.0) {
        return Err(Error::Config(format!(
            "shock Mach number must satisfy |M| > 1, got {mach}"
        )));
    }
    let gamma = g.gamma();
    let m2 = mach * mach;
    let a1 = upstream.sound_speed(g);
    let sigma = upstream.u + mach * a1;
    let rho_ratio = (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
    let p2 = upstream.p * (2.0 * gamma * m2 - (gamma - 1.0)) / (gamma + 1.0);
    let rho2 = upstream.rho * rho_ratio;
    // mass conservation in the shock frame
    let u2 = sigma + (upstream.u - sigma) / rho_ratio;
    Ok(Primitive1::new(rho2, u2, p2))
}

/// Lab-frame speed of the shock described by `normal_shock_state`.
pub fn shock_speed(upstream: &Primitive1, mach: f64, g: GasModel) -> f64 {
    upstream.u + mach * upstream.sound_speed(g)
}

/// Moving-frame Rankine-Hugoniot residual `max_k |dF_k - sigma dU_k|`,
/// normalized by the flux scale. The oracle check for shock generators.
pub fn rh_residual(pre: &Primitive1, post: &Primitive1, sigma: f64, g: GasModel) -> f64 {
    let fu = crate::gas::physical_flux_1d(pre, g);
    let fd = crate::gas::physical_flux_1d(post, g);
    let uu = pre.to_conserved(g).as_array();
    let ud = post.to_conserved(g).as_array();
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for k in 0..3 {
        worst = worst.max((fd[k] - fu[k] - sigma * (ud[k] - uu[k])).abs());
        scale = scale.max(fd[k].abs()).max(fu[k].abs());
    }
    worst / scale
}

/// Downstream state of a stationary oblique shock whose front makes the
/// angle `beta` (radians) with a horizontal incoming flow.
///
/// The front slopes down-right (the incident-shock geometry of a shock
/// reflection off a bottom wall): its tangent is `(cos b, -sin b)` and the
/// downstream side lies above, so the post-shock flow deflects downward.
pub fn oblique_post_shock(w: &Primitive2, beta: f64, g: GasModel) -> Result<Primitive2, Error> {
    let speed = (w.u * w.u + w.v * w.v).sqrt();
    let a = w.sound_speed(g);
    let mn1 = speed * beta.sin() / a;
    if !(mn1 > 1.0) {
        return Err(Error::Config(format!(
            "oblique shock normal Mach {mn1:.4} must exceed 1"
        )));
    }
    let (sin, cos) = beta.sin_cos();
    let un1 = speed * sin;
    let ut = speed * cos;
    let upstream_n = Primitive1::new(w.rho, un1, w.p);
    // stationary shock along the front normal: sigma = un1 + m a = 0
    let m = -un1 / a;
    let post = normal_shock_state(&upstream_n, m, g)?;
    // normal velocity drops, tangential persists: v = cos b (un2 - un1) < 0
    let u = post.u * sin + ut * cos;
    let v = post.u * cos - ut * sin;
    Ok(Primitive2::new(post.rho, u, v, post.p))
}
