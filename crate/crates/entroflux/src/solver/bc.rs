//! Boundary conditions and ghost-cell filling.

use std::sync::Arc;

use super::field::{Field1, Field2, GHOST_LAYERS};
use super::mesh2d::StructuredGrid2D;
use crate::gas::{GasModel, Primitive2};
use crate::Error;

/// 1D boundary treatment, applied to both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bc1 {
    Periodic,
    /// Zero-gradient copy of the nearest interior cell.
    Transmissive,
}

pub fn fill_ghosts_1d(field: &mut Field1, bc: Bc1) {
    let n = field.n() as isize;
    let g = GHOST_LAYERS as isize;
    match bc {
        Bc1::Periodic => {
            for k in 1..=g {
                *field.cell_mut(-k) = *field.cell(n - k);
                *field.cell_mut(n + k - 1) = *field.cell(k - 1);
            }
        }
        Bc1::Transmissive => {
            for k in 1..=g {
                *field.cell_mut(-k) = *field.cell(0);
                *field.cell_mut(n + k - 1) = *field.cell(n - 1);
            }
        }
    }
}

/// Per-face boundary treatment on one 2D edge.
#[derive(Debug, Clone)]
pub enum FaceBc {
    /// Zero-gradient copy (also serves as supersonic outflow).
    Transmissive,
    /// Fully prescribed state (supersonic inflow / time-dependent Dirichlet).
    Inflow(Primitive2),
    /// Flow tangency: mirror the velocity about the wall, copy scalars.
    /// Symmetry boundaries use the same reflection.
    SlipWall,
}

/// Boundary condition along a whole edge.
#[derive(Clone)]
pub enum EdgeBc {
    /// Wrap-around copy; must be set on both opposite edges.
    Periodic,
    Uniform(FaceBc),
    /// Position- and time-dependent treatment, evaluated at each boundary
    /// face midpoint `(x, y)` at time `t`.
    PerFace(Arc<dyn Fn(f64, f64, f64) -> FaceBc + Send + Sync>),
}

impl std::fmt::Debug for EdgeBc {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            EdgeBc::Periodic => write!(f, "Periodic"),
            EdgeBc::Uniform(bc) => write!(f, "Uniform({bc:?})"),
            EdgeBc::PerFace(_) => write!(f, "PerFace(..)"),
        }
    }
}

/// Boundary conditions for the four edges of a structured grid.
#[derive(Debug, Clone)]
pub struct Bc2Set {
    pub imin: EdgeBc,
    pub imax: EdgeBc,
    pub jmin: EdgeBc,
    pub jmax: EdgeBc,
}

impl Bc2Set {
    pub fn uniform(bc: FaceBc) -> Self {
        Self {
            imin: EdgeBc::Uniform(bc.clone()),
            imax: EdgeBc::Uniform(bc.clone()),
            jmin: EdgeBc::Uniform(bc.clone()),
            jmax: EdgeBc::Uniform(bc),
        }
    }

    pub fn periodic() -> Self {
        Self {
            imin: EdgeBc::Periodic,
            imax: EdgeBc::Periodic,
            jmin: EdgeBc::Periodic,
            jmax: EdgeBc::Periodic,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        let pair = |a: &EdgeBc, b: &EdgeBc, name: &str| -> Result<(), Error> {
            match (matches!(a, EdgeBc::Periodic), matches!(b, EdgeBc::Periodic)) {
                (true, true) | (false, false) => Ok(()),
                _ => Err(Error::Config(format!(
                    "periodic boundary must be set on both {name} edges"
                ))),
            }
        };
        pair(&self.imin, &self.imax, "i")?;
        pair(&self.jmin, &self.jmax, "j")
    }
}

fn mirror_velocity(w: &Primitive2, n: [f64; 2]) -> Primitive2 {
    let un = w.u * n[0] + w.v * n[1];
    Primitive2 {
        rho: w.rho,
        u: w.u - 2.0 * un * n[0],
        v: w.v - 2.0 * un * n[1],
        p: w.p,
    }
}

/// Fill the edge ghost layers of a 2D field at time `t`.
pub fn fill_ghosts_2d(
    field: &mut Field2,
    grid: &StructuredGrid2D,
    bcs: &Bc2Set,
    t: f64,
    g: GasModel,
) -> Result<(), Error> {
    bcs.validate()?;
    let (ni, nj) = (field.ni() as isize, field.nj() as isize);
    let layers = GHOST_LAYERS as isize;

    // periodic wraps first (they read opposite interior cells)
    if matches!(bcs.imin, EdgeBc::Periodic) {
        for j in 0..nj {
            for k in 1..=layers {
                *field.cell_mut(-k, j) = *field.cell(ni - k, j);
                *field.cell_mut(ni + k - 1, j) = *field.cell(k - 1, j);
            }
        }
    }
    if matches!(bcs.jmin, EdgeBc::Periodic) {
        for i in 0..ni {
            for k in 1..=layers {
                *field.cell_mut(i, -k) = *field.cell(i, nj - k);
                *field.cell_mut(i, nj + k - 1) = *field.cell(i, k - 1);
            }
        }
    }

    // edge: (ghost index for layer k, interior index for layer k, face normal, midpoint)
    for edge in 0..4usize {
        let bc = match edge {
            0 => &bcs.imin,
            1 => &bcs.imax,
            2 => &bcs.jmin,
            _ => &bcs.jmax,
        };
        if matches!(bc, EdgeBc::Periodic) {
            continue;
        }
        let extent = if edge < 2 { nj } else { ni };
        for q in 0..extent {
            let (normal, mid) = match edge {
                0 => (grid.iface_normal(0, q as usize), grid.iface_midpoint(0, q as usize)),
                1 => (
                    grid.iface_normal(ni as usize, q as usize),
                    grid.iface_midpoint(ni as usize, q as usize),
                ),
                2 => (grid.jface_normal(q as usize, 0), grid.jface_midpoint(q as usize, 0)),
                _ => (
                    grid.jface_normal(q as usize, nj as usize),
                    grid.jface_midpoint(q as usize, nj as usize),
                ),
            };
            let face_bc = match bc {
                EdgeBc::Uniform(b) => b.clone(),
                EdgeBc::PerFace(f) => f(mid[0], mid[1], t),
                EdgeBc::Periodic => unreachable!(),
            };
            for k in 1..=layers {
                let (ghost, interior) = match edge {
                    0 => ((-k, q), (k - 1, q)),
                    1 => ((ni + k - 1, q), (ni - k, q)),
                    2 => ((q, -k), (q, k - 1)),
                    _ => ((q, nj + k - 1), (q, nj - k)),
                };
                let value = match &face_bc {
                    FaceBc::Transmissive => {
                        let near = match edge {
                            0 => (0, q),
                            1 => (ni - 1, q),
                            2 => (q, 0),
                            _ => (q, nj - 1),
                        };
                        *field.cell(near.0, near.1)
                    }
                    FaceBc::Inflow(w) => w.to_conserved(g),
                    FaceBc::SlipWall => {
                        let w = field.cell(interior.0, interior.1).to_primitive(g)?;
                        mirror_velocity(&w, normal).to_conserved(g)
                    }
                };
                *field.cell_mut(ghost.0, ghost.1) = value;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gas::{Conserved1, Primitive1};

    const G: GasModel = GasModel::AIR;

    #[test]
    fn periodic_1d_wraps() {
        let cells: Vec<Conserved1> = (0..5)
            .map(|i| Primitive1::new(1.0 + i as f64, 0.0, 1.0).to_conserved(G))
            .collect();
        let mut f = Field1::from_cells(cells);
        fill_ghosts_1d(&mut f, Bc1::Periodic);
        assert_eq!(f.cell(-1).rho, f.cell(4).rho);
        assert_eq!(f.cell(-2).rho, f.cell(3).rho);
        assert_eq!(f.cell(5).rho, f.cell(0).rho);
        assert_eq!(f.cell(6).rho, f.cell(1).rho);
    }

    #[test]
    fn transmissive_1d_copies_edge_cell() {
        let cells: Vec<Conserved1> = (0..4)
            .map(|i| Primitive1::new(1.0 + i as f64, 0.5, 1.0).to_conserved(G))
            .collect();
        let mut f = Field1::from_cells(cells);
        fill_ghosts_1d(&mut f, Bc1::Transmissive);
        assert_eq!(f.cell(-1).rho, 1.0);
        assert_eq!(f.cell(-2).rho, 1.0);
        assert_eq!(f.cell(4).rho, 4.0);
        assert_eq!(f.cell(5).rho, 4.0);
    }

    #[test]
    fn slip_wall_mirrors_normal_velocity() {
        let grid = StructuredGrid2D::cartesian(4, 3, (0.0, 4.0), (0.0, 3.0));
        let w = Primitive2::new(1.0, 0.3, -0.7, 2.0);
        let mut f = Field2::new(4, 3, w.to_conserved(G));
        let bcs = Bc2Set::uniform(FaceBc::SlipWall);
        fill_ghosts_2d(&mut f, &grid, &bcs, 0.0, G).unwrap();
        // bottom wall along x: ghost of (rho, u, v, p) is (rho, u, -v, p)
        let ghost = f.cell(1, -1).to_primitive(G).unwrap();
        assert_eq!((ghost.rho, ghost.u, ghost.p), (w.rho, w.u, w.p));
        assert_eq!(ghost.v, -w.v);
        // left wall along y: u flips
        let ghost = f.cell(-1, 1).to_primitive(G).unwrap();
        assert_eq!(ghost.u, -w.u);
        assert_eq!(ghost.v, w.v);
    }

    #[test]
    fn per_face_bc_sees_position_and_time() {
        let grid = StructuredGrid2D::cartesian(4, 2, (0.0, 4.0), (0.0, 1.0));
        let w0 = Primitive2::new(1.0, 0.0, 0.0, 1.0);
        let mut f = Field2::new(4, 2, w0.to_conserved(G));
        let marker = |x: f64, _y: f64, t: f64| {
            if x < 2.0 + t {
                FaceBc::Inflow(Primitive2::new(8.0, 1.0, 0.0, 10.0))
            } else {
                FaceBc::Inflow(Primitive2::new(1.0, 0.0, 0.0, 1.0))
            }
        };
        let bcs = Bc2Set {
            imin: EdgeBc::Uniform(FaceBc::Transmissive),
            imax: EdgeBc::Uniform(FaceBc::Transmissive),
            jmin: EdgeBc::Uniform(FaceBc::SlipWall),
            jmax: EdgeBc::PerFace(Arc::new(marker)),
        };
        fill_ghosts_2d(&mut f, &grid, &bcs, 0.0, G).unwrap();
        assert!(f.cell(0, 2).rho > 7.0);
        assert!(f.cell(3, 2).rho < 2.0);
        // the switch point moves with t: face midpoint x = 3.5 < 2 + 1.6
        fill_ghosts_2d(&mut f, &grid, &bcs, 1.6, G).unwrap();
        assert!(f.cell(3, 2).rho > 7.0);
    }

    #[test]
    fn mismatched_periodic_edges_rejected() {
        let grid = StructuredGrid2D::cartesian(2, 2, (0.0, 1.0), (0.0, 1.0));
        let mut f = Field2::new(2, 2, Primitive2::new(1.0, 0.0, 0.0, 1.0).to_conserved(G));
        let bcs = Bc2Set {
            imin: EdgeBc::Periodic,
            imax: EdgeBc::Uniform(FaceBc::Transmissive),
            jmin: EdgeBc::Uniform(FaceBc::Transmissive),
            jmax: EdgeBc::Uniform(FaceBc::Transmissive),
        };
        assert!(matches!(
            fill_ghosts_2d(&mut f, &grid, &bcs, 0.0, G),
            Err(Error::Config(_))
        ));
    }
}
