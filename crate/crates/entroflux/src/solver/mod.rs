//! Finite-volume semi-discretization, boundary conditions, SSP Runge-Kutta
//! time integration and run orchestration on 1D uniform and 2D structured
//! grids.

mod bc;
mod case;
mod field;
mod grid;
mod mesh2d;
mod residual1;
mod residual2;
mod run;
mod scheme;
mod time;

pub use bc::{fill_ghosts_1d, fill_ghosts_2d, Bc1, Bc2Set, EdgeBc, FaceBc};
pub use case::{AnyCase, Case1d, Case2d, CornerFixSpec, InitialData1, MeshSpec, StopRule};
pub use field::{Field1, Field2, GHOST_LAYERS};
pub use grid::Grid1D;
pub use mesh2d::StructuredGrid2D;
pub use residual1::{residual_1d, residual_1d_with_faces, FaceReport1};
pub use residual2::{residual_2d, CellMask};
pub use run::{
    run_case_1d, run_case_2d, run_case_2d_observed, Run1Result, Run2Result, RunOptions, StepView,
};
pub use scheme::{SchemeConfig, Stabilization, TimeIntegrator};
pub use time::{compute_dt_1d, compute_dt_2d};
