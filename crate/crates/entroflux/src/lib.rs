//! Structure-preserving finite-volume solver for the compressible Euler
//! equations.
//!
//! The crate provides a family of entropy-conservative interface fluxes
//! (`EC1`, `EC2` and the kinetic-energy-preserving `ECKEP`), a
//! Rankine-Hugoniot-based entropy-stable scheme (`ES`), and a hybrid scheme
//! (`HES`) that switches between fourth-order background diffusion and the
//! RH diffusion using an entropy-distance shock sensor. A verification layer
//! (exact Riemann solver, normal-shock relations, error norms, conservation
//! audits) and a case registry of standard 1D/2D benchmarks sit on top.

pub mod cli;
pub mod fluxes;
pub mod gas;
pub mod hybrid;
pub mod solver;
pub mod stabilization;
pub mod verification;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Density or pressure lost positivity; signals scheme failure and
    /// aborts the run with the offending location.
    #[error("positivity violation{location}: rho = {rho:.6e}, p = {p:.6e}")]
    Positivity {
        rho: f64,
        p: f64,
        /// Filled in by the solver with cell index and time, e.g. " at cell (3, 7), t = 0.125".
        location: String,
    },

    /// The pressure function of the Riemann problem admits a vacuum state.
    #[error("vacuum formation in Riemann problem")]
    Vacuum,

    /// Invalid configuration input.
    #[error("config error: {0}")]
    Config(String),

    /// A run exceeded its step budget before reaching its stop criterion.
    #[error("no convergence within {steps} steps")]
    NonConvergence { steps: usize },

    /// Degenerate input to a post-processing routine (e.g. a zero error in
    /// an order-of-convergence ratio).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn positivity(rho: f64, p: f64) -> Self {
        Error::Positivity {
            rho,
            p,
            location: String::new(),
        }
    }

    /// Attach a location ("cell 12", "cell (3, 4)") to a positivity error as
    /// it propagates out of the solver.
    pub(crate) fn with_location(self, loc: &str, time: f64) -> Self {
        match self {
            Error::Positivity { rho, p, .. } => Error::Positivity {
                rho,
                p,
                location: if time.is_nan() {
                    format!(" at {loc}")
                } else {
                    format!(" at {loc}, t = {time:.6e}")
                },
            },
            other => other,
        }
    }

    /// Append the simulation time to an already-located positivity error.
    pub(crate) fn at_time(self, time: f64) -> Self {
        match self {
            Error::Positivity { rho, p, mut location } => {
                location.push_str(&format!(", t = {time:.6e}"));
                Error::Positivity { rho, p, location }
            }
            other => other,
        }
    }
}

/// Process exit codes used by the CLI.
pub mod exit_codes {
    pub const SUCCESS: i32 = 0;
    pub const CONFIG_ERROR: i32 = 2;
    pub const POSITIVITY: i32 = 3;
    pub const NON_CONVERGENCE: i32 = 4;
}

impl Error {
    /// Map an error to the CLI exit code contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Degenerate(_) => exit_codes::CONFIG_ERROR,
            Error::Positivity { .. } | Error::Vacuum => exit_codes::POSITIVITY,
            Error::NonConvergence { .. } => exit_codes::NON_CONVERGENCE,
            Error::Io(_) => 1,
        }
    }
}

pub(crate) mod vecn {
    //! Tiny fixed-size vector helpers shared by the flux kernels.

    #[inline]
    pub fn dot<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
        let mut acc = 0.0;
        for k in 0..N {
            acc += a[k] * b[k];
        }
        acc
    }

    #[inline]
    pub fn sub<const N: usize>(a: &[f64; N], b: &[f64; N]) -> [f64; N] {
        let mut out = [0.0; N];
        for k in 0..N {
            out[k] = a[k] - b[k];
        }
        out
    }

    #[inline]
    pub fn mean<const N: usize>(a: &[f64; N], b: &[f64; N]) -> [f64; N] {
        let mut out = [0.0; N];
        for k in 0..N {
            out[k] = 0.5 * (a[k] + b[k]);
        }
        out
    }

    /// `y + c * x`, component-wise.
    #[inline]
    pub fn axpy<const N: usize>(y: &[f64; N], c: f64, x: &[f64; N]) -> [f64; N] {
        let mut out = [0.0; N];
        for k in 0..N {
            out[k] = y[k] + c * x[k];
        }
        out
    }
}
