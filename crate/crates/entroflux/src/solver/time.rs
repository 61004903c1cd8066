//! CFL time-step estimates.

use super::field::{Field1, Field2};
use super::grid::Grid1D;
use super::mesh2d::StructuredGrid2D;
use super::residual2::CellMask;
use crate::gas::GasModel;
use crate::Error;

/// `dt = cfl * dx / max_j(|u_j| + a_j)` over the interior cells.
pub fn compute_dt_1d(field: &Field1, grid: &Grid1D, cfl: f64, g: GasModel) -> Result<f64, Error> {
    let mut speed: f64 = 0.0;
    for (i, c) in field.interior().iter().enumerate() {
        let w = c
            .to_primitive(g)
            .map_err(|e| e.with_location(&format!("cell {i}"), f64::NAN))?;
        speed = speed.max(w.u.abs() + w.sound_speed(g));
    }
    Ok(cfl * grid.dx / speed)
}

/// Largest stable step of one cell.
#[inline]
fn cell_dt_2d(
    w: &crate::gas::Primitive2,
    grid: &StructuredGrid2D,
    i: usize,
    j: usize,
    cfl: f64,
    g: GasModel,
) -> f64 {
    let a = w.sound_speed(g);
    let (si, sj) = grid.cell_metric_vectors(i, j);
    let dsi = (si[0] * si[0] + si[1] * si[1]).sqrt();
    let dsj = (sj[0] * sj[0] + sj[1] * sj[1]).sqrt();
    let denom =
        (w.u * si[0] + w.v * si[1]).abs() + a * dsi + (w.u * sj[0] + w.v * sj[1]).abs() + a * dsj;
    cfl * grid.area(i, j) / denom
}

/// `dt = min over cells of cfl * area / sum of (|u.n| + a) ds` with the
/// averaged opposite-face metric vectors.
pub fn compute_dt_2d(
    field: &Field2,
    grid: &StructuredGrid2D,
    mask: Option<&CellMask>,
    cfl: f64,
    g: GasModel,
) -> Result<f64, Error> {
    let mut dt = f64::INFINITY;
    for j in 0..grid.nj {
        for i in 0..grid.ni {
            if mask.map(|m| m.solid(i, j)).unwrap_or(false) {
                continue;
            }
            let w = field
                .cell(i as isize, j as isize)
                .to_primitive(g)
                .map_err(|e| e.with_location(&format!("cell ({i}, {j})"), f64::NAN))?;
            dt = dt.min(cell_dt_2d(&w, grid, i, j, cfl, g));
        }
    }
    Ok(dt)
}

/// Per-cell stable steps for local time stepping in steady marches; masked
/// cells get zero.
pub fn compute_local_dt_2d(
    field: &Field2,
    grid: &StructuredGrid2D,
    mask: Option<&CellMask>,
    cfl: f64,
    g: GasModel,
) -> Result<Vec<f64>, Error> {
    let mut dts = vec![0.0; grid.ni * grid.nj];
    for j in 0..grid.nj {
        for i in 0..grid.ni {
            if mask.map(|m| m.solid(i, j)).unwrap_or(false) {
                continue;
            }
            let w = field
                .cell(i as isize, j as isize)
                .to_primitive(g)
                .map_err(|e| e.with_location(&format!("cell ({i}, {j})"), f64::NAN))?;
            dts[j * grid.ni + i] = cell_dt_2d(&w, grid, i, j, cfl, g);
        }
    }
    Ok(dts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gas::{Primitive1, Primitive2};
    use approx::assert_relative_eq;

    const G: GasModel = GasModel::AIR;

    #[test]
    fn dt_1d_stagnant_gas() {
        let grid = Grid1D::new(100, 0.0, 1.0);
        let f = Field1::new(100, Primitive1::new(1.0, 0.0, 1.0).to_conserved(G));
        let dt = compute_dt_1d(&f, &grid, 0.1, G).unwrap();
        assert_relative_eq!(dt, 0.001 / 1.4f64.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn dt_1d_scales_linearly_with_cfl_and_tracks_fastest_cell() {
        let grid = Grid1D::new(10, 0.0, 1.0);
        let mut f = Field1::new(10, Primitive1::new(1.0, 0.0, 1.0).to_conserved(G));
        let dt1 = compute_dt_1d(&f, &grid, 0.1, G).unwrap();
        let dt2 = compute_dt_1d(&f, &grid, 0.2, G).unwrap();
        assert_relative_eq!(dt2, 2.0 * dt1, max_relative = 1e-14);

        // one fast cell controls the step
        *f.cell_mut(7) = Primitive1::new(1.0, 10.0, 1.0).to_conserved(G);
        let dt3 = compute_dt_1d(&f, &grid, 0.1, G).unwrap();
        assert_relative_eq!(
            dt3,
            0.1 * 0.1 / (10.0 + 1.4f64.sqrt()),
            max_relative = 1e-13
        );
    }

    #[test]
    fn dt_2d_square_cells_stagnant() {
        let grid = StructuredGrid2D::cartesian(8, 8, (0.0, 1.0), (0.0, 1.0));
        let f = Field2::new(8, 8, Primitive2::new(1.0, 0.0, 0.0, 1.0).to_conserved(G));
        let dt = compute_dt_2d(&f, &grid, None, 0.1, G).unwrap();
        let h = 1.0 / 8.0;
        let a = 1.4f64.sqrt();
        assert_relative_eq!(dt, 0.1 * h / (2.0 * a), max_relative = 1e-13);
    }

    #[test]
    fn dt_2d_translation_invariant() {
        let f = |x: (f64, f64), y: (f64, f64)| {
            let grid = StructuredGrid2D::cartesian(6, 4, x, y);
            let field = Field2::new(6, 4, Primitive2::new(1.0, 0.7, -0.2, 1.0).to_conserved(G));
            compute_dt_2d(&field, &grid, None, 0.1, G).unwrap()
        };
        let a = f((0.0, 3.0), (0.0, 2.0));
        let b = f((10.0, 13.0), (-5.0, -3.0));
        assert_relative_eq!(a, b, max_relative = 1e-14);
    }

    #[test]
    fn dt_2d_single_row_strip_matches_1d() {
        // a 1-cell-thick strip with tangential-free flow reduces to the 1D
        // estimate up to the extra transverse acoustic term
        let grid = StructuredGrid2D::cartesian(50, 1, (0.0, 1.0), (0.0, 0.02));
        let f = Field2::new(50, 1, Primitive2::new(1.0, 0.5, 0.0, 1.0).to_conserved(G));
        let dt2 = compute_dt_2d(&f, &grid, None, 0.1, G).unwrap();
        let a = 1.4f64.sqrt();
        let expect = 0.1 * 0.02 * 0.02 / ((0.5 + a) * 0.02 + a * 0.02);
        assert_relative_eq!(dt2, expect, max_relative = 1e-13);
    }
}
