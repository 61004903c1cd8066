//! Test-case descriptions consumed by the run drivers. The registry of
//! concrete benchmark cases lives in the verification layer.

use std::sync::Arc;

use super::bc::{Bc1, Bc2Set};
use crate::gas::{GasModel, Primitive1, Primitive2};

/// Initial data for a 1D case.
#[derive(Clone)]
pub enum InitialData1 {
    Riemann {
        x0: f64,
        left: Primitive1,
        right: Primitive1,
    },
    Profile(Arc<dyn Fn(f64) -> Primitive1 + Send + Sync>),
}

impl InitialData1 {
    pub fn eval(&self, x: f64) -> Primitive1 {
        match self {
            InitialData1::Riemann { x0, left, right } => {
                if x <= *x0 {
                    *left
                } else {
                    *right
                }
            }
            InitialData1::Profile(f) => f(x),
        }
    }
}

#[derive(Clone)]
pub struct Case1d {
    pub name: &'static str,
    pub domain: (f64, f64),
    pub n_default: usize,
    pub ic: InitialData1,
    pub bc: Bc1,
    pub t_final: f64,
    pub gas: GasModel,
}

/// Mesh selection for a 2D case.
#[derive(Debug, Clone)]
pub enum MeshSpec {
    Cartesian { x: (f64, f64), y: (f64, f64) },
    HalfCylinder,
    PerturbedChannel { x: (f64, f64), y: (f64, f64), dy: f64 },
    Ramp { x: (f64, f64), y: (f64, f64), start: f64, angle_deg: f64 },
}

/// Stop criterion for a 2D run.
#[derive(Debug, Clone, Copy)]
pub enum StopRule {
    TimeFinal(f64),
    /// March until the L2 residual norms of all components drop below
    /// `tol` relative to their first-step values.
    Steady { tol: f64, max_steps: usize },
}

/// Post-step state reset next to a step corner (used by the forward-step
/// case, where the corner singularity drives a spurious boundary layer).
#[derive(Debug, Clone, Copy)]
pub struct CornerFixSpec {
    /// Physical location of the re-entrant corner.
    pub corner: (f64, f64),
}

#[derive(Clone)]
pub struct Case2d {
    pub name: &'static str,
    pub desk_grid: (usize, usize),
    pub paper_grid: (usize, usize),
    pub mesh: MeshSpec,
    pub ic: Arc<dyn Fn(f64, f64) -> Primitive2 + Send + Sync>,
    pub bcs: Bc2Set,
    /// Solid-cell predicate by cell center.
    pub solid: Option<Arc<dyn Fn(f64, f64) -> bool + Send + Sync>>,
    pub stop: StopRule,
    pub corner_fix: Option<CornerFixSpec>,
    pub gas: GasModel,
}

#[derive(Clone)]
pub enum AnyCase {
    OneD(Case1d),
    TwoD(Case2d),
}

impl AnyCase {
    pub fn name(&self) -> &'static str {
        match self {
            AnyCase::OneD(c) => c.name,
            AnyCase::TwoD(c) => c.name,
        }
    }
}
