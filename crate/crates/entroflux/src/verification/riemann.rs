//! Exact solver for the 1D Riemann problem of the Euler equations.
//!
//! Newton iteration on the star-region pressure with a two-rarefaction
//! initial guess; the solution is sampled along rays `xi = x / t`.

use crate::gas::{GasModel, Primitive1};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wave {
    Shock,
    Rarefaction,
}

#[derive(Debug, Clone)]
pub struct RiemannSolution {
    pub left: Primitive1,
    pub right: Primitive1,
    pub p_star: f64,
    pub u_star: f64,
    pub left_wave: Wave,
    pub right_wave: Wave,
    gas: GasModel,
}

const NEWTON_TOL: f64 = 1e-14;
const NEWTON_MAX_ITERS: usize = 100;

/// Pressure function of one side and its derivative.
fn side_fn(p: f64, w: &Primitive1, g: GasModel) -> (f64, f64) {
    let gamma = g.gamma();
    let a = w.sound_speed(g);
    if p > w.p {
        // shock branch
        let ak = 2.0 / ((gamma + 1.0) * w.rho);
        let bk = (gamma - 1.0) / (gamma + 1.0) * w.p;
        let root = (ak / (p + bk)).sqrt();
        let f = (p - w.p) * root;
        let df = root * (1.0 - 0.5 * (p - w.p) / (p + bk));
        (f, df)
    } else {
        // rarefaction branch
        let pr = p / w.p;
        let z = (gamma - 1.0) / (2.0 * gamma);
        let f = 2.0 * a / (gamma - 1.0) * (pr.powf(z) - 1.0);
        let df = pr.powf(-(gamma + 1.0) / (2.0 * gamma)) / (w.rho * a);
        (f, df)
    }
}

/// Solve for the star state. Fails when the data admit vacuum.
pub fn exact_riemann(
    left: &Primitive1,
    right: &Primitive1,
    g: GasModel,
) -> Result<RiemannSolution, Error> {
    let gamma = g.gamma();
    let (al, ar) = (left.sound_speed(g), right.sound_speed(g));
    let du = right.u - left.u;
    if 2.0 * (al + ar) / (gamma - 1.0) <= du {
        return Err(Error::Vacuum);
    }

    // two-rarefaction guess
    let z = (gamma - 1.0) / (2.0 * gamma);
    let guess = ((al + ar - 0.5 * (gamma - 1.0) * du)
        / (al / left.p.powf(z) + ar / right.p.powf(z)))
    .powf(1.0 / z);
    let mut p = guess.max(1e-12 * left.p.min(right.p));

    for _ in 0..NEWTON_MAX_ITERS {
        let (fl, dfl) = side_fn(p, left, g);
        let (fr, dfr) = side_fn(p, right, g);
        let f = fl + fr + du;
        let step = f / (dfl + dfr);
        let p_new = (p - step).max(1e-14 * p);
        let change = 2.0 * (p_new - p).abs() / (p_new + p);
        p = p_new;
        if change < NEWTON_TOL {
            break;
        }
    }

    let (fl, _) = side_fn(p, left, g);
    let (fr, _) = side_fn(p, right, g);
    let u_star = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);

    Ok(RiemannSolution {
        left: *left,
        right: *right,
        p_star: p,
        u_star,
        left_wave: if p > left.p { Wave::Shock } else { Wave::Rarefaction },
        right_wave: if p > right.p { Wave::Shock } else { Wave::Rarefaction },
        gas: g,
    })
}

impl RiemannSolution {
    /// Residual of the pressure function at the computed star pressure.
    pub fn pressure_residual(&self) -> f64 {
        let (fl, _) = side_fn(self.p_star, &self.left, self.gas);
        let (fr, _) = side_fn(self.p_star, &self.right, self.gas);
        fl + fr + (self.right.u - self.left.u)
    }

    /// Sample the self-similar solution at `xi = x / t`.
    pub fn sample(&self, xi: f64) -> Primitive1 {
        if xi <= self.u_star {
            self.sample_left(xi)
        } else {
            self.sample_right(xi)
        }
    }

    fn sample_left(&self, xi: f64) -> Primitive1 {
        let g = self.gas.gamma();
        let w = &self.left;
        let a = w.sound_speed(self.gas);
        match self.left_wave {
            Wave::Shock => {
                let pr = self.p_star / w.p;
                let sl = w.u - a * ((g + 1.0) / (2.0 * g) * pr + (g - 1.0) / (2.0 * g)).sqrt();
                if xi <= sl {
                    *w
                } else {
                    let rho = w.rho * (pr + (g - 1.0) / (g + 1.0))
                        / (pr * (g - 1.0) / (g + 1.0) + 1.0);
                    Primitive1::new(rho, self.u_star, self.p_star)
                }
            }
            Wave::Rarefaction => {
                let a_star = a * (self.p_star / w.p).powf((g - 1.0) / (2.0 * g));
                let head = w.u - a;
                let tail = self.u_star - a_star;
                if xi <= head {
                    *w
                } else if xi >= tail {
                    let rho = w.rho * (self.p_star / w.p).powf(1.0 / g);
                    Primitive1::new(rho, self.u_star, self.p_star)
                } else {
                    // inside the fan
                    let u = 2.0 / (g + 1.0) * (a + 0.5 * (g - 1.0) * w.u + xi);
                    let af = 2.0 / (g + 1.0) * (a + 0.5 * (g - 1.0) * (w.u - xi));
                    let rho = w.rho * (af / a).powf(2.0 / (g - 1.0));
                    let p = w.p * (af / a).powf(2.0 * g / (g - 1.0));
                    Primitive1::new(rho, u, p)
                }
            }
        }
    }

    fn sample_right(&self, xi: f64) -> Primitive1 {
        let g = self.gas.gamma();
        let w = &self.right;
        let a = w.sound_speed(self.gas);
        match self.right_wave {
            Wave::Shock => {
                let pr = self.p_star / w.p;
                let sr = w.u + a * ((g + 1.0) / (2.0 * g) * pr + (g - 1.0) / (2.0 * g)).sqrt();
                if xi >= sr {
                    *w
                } else {
                    let rho = w.rho * (pr + (g - 1.0) / (g + 1.0))
                        / (pr * (g - 1.0) / (g + 1.0) + 1.0);
                    Primitive1::new(rho, self.u_star, self.p_star)
                }
            }
            Wave::Rarefaction => {
                let a_star = a * (self.p_star / w.p).powf((g - 1.0) / (2.0 * g));
                let head = w.u + a;
                let tail = self.u_star + a_star;
                if xi >= head {
                    *w
                } else if xi <= tail {
                    let rho = w.rho * (self.p_star / w.p).powf(1.0 / g);
                    Primitive1::new(rho, self.u_star, self.p_star)
                } else {
                    let u = 2.0 / (g + 1.0) * (-a + 0.5 * (g - 1.0) * w.u + xi);
                    let af = 2.0 / (g + 1.0) * (a - 0.5 * (g - 1.0) * (w.u - xi));
                    let rho = w.rho * (af / a).powf(2.0 / (g - 1.0));
                    let p = w.p * (af / a).powf(2.0 * g / (g - 1.0));
                    Primitive1::new(rho, u, p)
                }
            }
        }
    }

    /// Density averaged over a cell `[x_lo, x_hi]` at time `t` by high-order
    /// sampling (used by the error norms against finite-volume data).
    pub fn cell_average_density(&self, x_lo: f64, x_hi: f64, x0: f64, t: f64) -> f64 {
        // 5-point Gauss-Legendre per cell
        const XI: [f64; 5] = [
            -0.906179845938664,
            -0.538469310105683,
            0.0,
            0.538469310105683,
            0.906179845938664,
        ];
        const W: [f64; 5] = [
            0.236926885056189,
            0.478628670499366,
            0.568888888888889,
            0.478628670499366,
            0.236926885056189,
        ];
        let h = 0.5 * (x_hi - x_lo);
        let c = 0.5 * (x_hi + x_lo);
        let mut acc = 0.0;
        for k in 0..5 {
            let x = c + h * XI[k];
            let xi = if t > 0.0 { (x - x0) / t } else { f64::INFINITY * (x - x0).signum() };
            acc += W[k] * self.sample(xi).rho;
        }
        0.5 * acc
    }
}
