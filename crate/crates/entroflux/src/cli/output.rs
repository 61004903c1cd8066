//! Solution, diagnostics and convergence-table writers. CSV is the
//! canonical format; 2D fields go to legacy-ASCII structured-grid files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::gas::GasModel;
use crate::solver::{Run1Result, Run2Result};
use crate::verification::diagnostics::DiagnosticsSeries;
use crate::verification::eoc::EocRow;
use crate::Error;

/// 1D solution: one row per cell, 15 significant digits.
pub fn write_solution_1d(path: &Path, run: &Run1Result, g: GasModel) -> Result<(), Error> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "x,rho,u,p,e_int")?;
    for i in 0..run.grid.n_cells {
        let prim = run.field.cell(i as isize).to_primitive(g)?;
        let e_int = prim.p / (g.gm1() * prim.rho);
        writeln!(
            w,
            "{:.14e},{:.14e},{:.14e},{:.14e},{:.14e}",
            run.grid.cell_center(i),
            prim.rho,
            prim.u,
            prim.p,
            e_int
        )?;
    }
    Ok(())
}

/// Legacy-ASCII structured-grid file with point coordinates and the cell
/// scalars rho, p, mach and entropy.
pub fn write_solution_2d(path: &Path, run: &Run2Result, g: GasModel) -> Result<(), Error> {
    let grid = &run.grid;
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "# vtk DataFile Version 3.0")?;
    writeln!(w, "entroflux solution t = {:.6e}", run.time)?;
    writeln!(w, "ASCII")?;
    writeln!(w, "DATASET STRUCTURED_GRID")?;
    writeln!(w, "DIMENSIONS {} {} 1", grid.ni + 1, grid.nj + 1)?;
    writeln!(w, "POINTS {} double", (grid.ni + 1) * (grid.nj + 1))?;
    for j in 0..=grid.nj {
        for i in 0..=grid.ni {
            let p = grid.node(i, j);
            writeln!(w, "{:.14e} {:.14e} 0", p[0], p[1])?;
        }
    }
    writeln!(w, "CELL_DATA {}", grid.ni * grid.nj)?;

    let mut rho = Vec::with_capacity(grid.ni * grid.nj);
    let mut p = Vec::with_capacity(grid.ni * grid.nj);
    let mut mach = Vec::with_capacity(grid.ni * grid.nj);
    let mut entropy = Vec::with_capacity(grid.ni * grid.nj);
    for j in 0..grid.nj {
        for i in 0..grid.ni {
            if run.mask.as_ref().map(|m| m.solid(i, j)).unwrap_or(false) {
                rho.push(0.0);
                p.push(0.0);
                mach.push(0.0);
                entropy.push(0.0);
                continue;
            }
            let prim = run.field.cell(i as isize, j as isize).to_primitive(g)?;
            let speed = (prim.u * prim.u + prim.v * prim.v).sqrt();
            rho.push(prim.rho);
            p.push(prim.p);
            mach.push(speed / prim.sound_speed(g));
            entropy.push(crate::gas::specific_entropy(prim.rho, prim.p, g));
        }
    }
    for (name, values) in [("rho", rho), ("p", p), ("mach", mach), ("entropy", entropy)] {
        writeln!(w, "SCALARS {name} double 1")?;
        writeln!(w, "LOOKUP_TABLE default")?;
        for v in values {
            writeln!(w, "{v:.14e}")?;
        }
    }
    Ok(())
}

/// Per-step diagnostics series.
pub fn write_diagnostics(path: &Path, diag: &DiagnosticsSeries) -> Result<(), Error> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(
        w,
        "t,total_entropy,total_ke,res_rho,res_momx,res_momy,res_E,min_rho,min_p"
    )?;
    for k in 0..diag.len() {
        writeln!(
            w,
            "{:.14e},{:.14e},{:.14e},{:.14e},{:.14e},{:.14e},{:.14e},{:.14e},{:.14e}",
            diag.t[k],
            diag.total_entropy[k],
            diag.total_ke[k],
            diag.res[0][k],
            diag.res[1][k],
            diag.res[2][k],
            diag.res[3][k],
            diag.min_rho[k],
            diag.min_p[k]
        )?;
    }
    Ok(())
}

/// Convergence table; the first row has empty order entries.
pub fn write_eoc(path: &Path, rows: &[EocRow]) -> Result<(), Error> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "N,l1_err,eoc_l1,l2_err,eoc_l2")?;
    for r in rows {
        let fmt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
        writeln!(
            w,
            "{},{:.14e},{},{:.14e},{}",
            r.n,
            r.l1,
            fmt(r.eoc_l1),
            r.l2,
            fmt(r.eoc_l2)
        )?;
    }
    Ok(())
}
