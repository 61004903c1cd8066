//! Run drivers: SSP Runge-Kutta marching with CFL step control, diagnostics
//! recording and stop criteria.

use super::bc::{fill_ghosts_1d, fill_ghosts_2d};
use super::case::{Case1d, Case2d, CornerFixSpec, MeshSpec, StopRule};
use super::field::{Field1, Field2};
use super::grid::Grid1D;
use super::mesh2d::StructuredGrid2D;
use super::residual1::residual_1d;
use super::residual2::{residual_2d, CellMask};
use super::scheme::{SchemeConfig, TimeIntegrator};
use super::time::{compute_dt_1d, compute_dt_2d, compute_local_dt_2d};
use crate::gas::{Conserved1, Conserved2, GasModel};
use crate::verification::diagnostics::{self, DiagnosticsSeries};
use crate::Error;

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Step budget; exceeding it before the stop criterion is a
    /// non-convergence error. Zero means "do not advance".
    pub max_steps: usize,
    /// March with this fixed step instead of the CFL estimate.
    pub fixed_dt: Option<f64>,
    /// Diagnostics recording cadence (1 = every step).
    pub record_every: usize,
    pub t_final_override: Option<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            max_steps: 2_000_000,
            fixed_dt: None,
            record_every: 1,
            t_final_override: None,
        }
    }
}

pub struct Run1Result {
    pub grid: Grid1D,
    pub field: Field1,
    pub time: f64,
    pub steps: usize,
    pub diagnostics: DiagnosticsSeries,
}

pub struct Run2Result {
    pub grid: StructuredGrid2D,
    pub field: Field2,
    pub mask: Option<CellMask>,
    pub time: f64,
    pub steps: usize,
    pub steady_converged: bool,
    pub diagnostics: DiagnosticsSeries,
}

fn axpy1(base: &[Conserved1], c: f64, rate: &[Conserved1]) -> Vec<Conserved1> {
    base.iter()
        .zip(rate)
        .map(|(u, r)| Conserved1 {
            rho: u.rho + c * r.rho,
            mom: u.mom + c * r.mom,
            energy: u.energy + c * r.energy,
        })
        .collect()
}

fn blend1(a: f64, ua: &[Conserved1], b: f64, ub: &[Conserved1]) -> Vec<Conserved1> {
    ua.iter()
        .zip(ub)
        .map(|(x, y)| Conserved1 {
            rho: a * x.rho + b * y.rho,
            mom: a * x.mom + b * y.mom,
            energy: a * x.energy + b * y.energy,
        })
        .collect()
}

/// Advance a 1D case on `n` cells to its final time.
pub fn run_case_1d(
    case: &Case1d,
    n: usize,
    scheme: &SchemeConfig,
    opts: &RunOptions,
) -> Result<Run1Result, Error> {
    scheme.validate()?;
    let g = case.gas;
    let grid = Grid1D::new(n, case.domain.0, case.domain.1);
    let cells: Vec<Conserved1> = (0..n)
        .map(|i| case.ic.eval(grid.cell_center(i)).to_conserved(g))
        .collect();
    let mut field = Field1::from_cells(cells);
    let t_final = opts.t_final_override.unwrap_or(case.t_final);

    let mut diag = DiagnosticsSeries::new();
    let mut t = 0.0;
    let mut steps = 0usize;

    // one residual evaluation per stage; the first stage's rates double as
    // the recorded residual norms
    let stage = |f: &mut Field1, t_s: f64| -> Result<Vec<Conserved1>, Error> {
        fill_ghosts_1d(f, case.bc);
        residual_1d(f, &grid, scheme, g).map_err(|e| e.at_time(t_s))
    };

    // record the initial state
    record_1d(&mut diag, &field, &grid, g, t, None)?;

    while t < t_final && steps < opts.max_steps {
        let dt_raw = match opts.fixed_dt {
            Some(dt) => dt,
            None => compute_dt_1d(&field, &grid, scheme.cfl, g)?,
        };
        let dt = dt_raw.min(t_final - t);

        let u0: Vec<Conserved1> = field.interior().to_vec();
        let r1 = stage(&mut field, t)?;
        // semi-discrete entropy rate of the pre-step state: sum V . R dx
        let entropy_rate = {
            let mut vr = diagnostics::Kahan::default();
            for (u, r) in u0.iter().zip(&r1) {
                let w = u.to_primitive(g)?;
                let v = crate::gas::entropy_variables_1d(&w, g);
                vr.add((v[0] * r.rho + v[1] * r.mom + v[2] * r.energy) * grid.dx);
            }
            vr.value()
        };
        let u1 = axpy1(&u0, dt, &r1);
        set_interior_1d(&mut field, &u1);

        match scheme.integrator {
            TimeIntegrator::Ssprk2 => {
                let r2 = stage(&mut field, t + dt)?;
                let u2 = axpy1(&u1, dt, &r2);
                let unew = blend1(0.5, &u0, 0.5, &u2);
                set_interior_1d(&mut field, &unew);
            }
            TimeIntegrator::Ssprk3 => {
                let r2 = stage(&mut field, t + dt)?;
                let u2 = blend1(0.75, &u0, 0.25, &axpy1(&u1, dt, &r2));
                set_interior_1d(&mut field, &u2);
                let r3 = stage(&mut field, t + 0.5 * dt)?;
                let u3 = axpy1(&u2, dt, &r3);
                let unew = blend1(1.0 / 3.0, &u0, 2.0 / 3.0, &u3);
                set_interior_1d(&mut field, &unew);
            }
        }

        t += dt;
        steps += 1;
        if steps % opts.record_every == 0 {
            record_1d(&mut diag, &field, &grid, g, t, Some((&r1, entropy_rate)))?;
        }
    }

    if t < t_final && opts.max_steps > 0 {
        return Err(Error::NonConvergence { steps });
    }

    if diag.t.last() != Some(&t) {
        record_1d(&mut diag, &field, &grid, g, t, None)?;
    }

    Ok(Run1Result {
        grid,
        field,
        time: t,
        steps,
        diagnostics: diag,
    })
}

fn set_interior_1d(field: &mut Field1, values: &[Conserved1]) {
    field.interior_mut().copy_from_slice(values);
}

fn record_1d(
    diag: &mut DiagnosticsSeries,
    field: &Field1,
    grid: &Grid1D,
    g: GasModel,
    t: f64,
    rates: Option<(&[Conserved1], f64)>,
) -> Result<(), Error> {
    let (eta, ke) = diagnostics::totals_1d(field, grid, g)?;
    let mut min_rho = f64::INFINITY;
    let mut min_p = f64::INFINITY;
    for (i, c) in field.interior().iter().enumerate() {
        let w = c
            .to_primitive(g)
            .map_err(|e| e.with_location(&format!("cell {i}"), t))?;
        min_rho = min_rho.min(w.rho);
        min_p = min_p.min(w.p);
    }
    let (res, vr) = match rates {
        Some((r, entropy_rate)) => {
            let mut sq = [0.0f64; 4];
            for rate in r {
                sq[0] += rate.rho * rate.rho;
                sq[1] += rate.mom * rate.mom;
                sq[3] += rate.energy * rate.energy;
            }
            ([sq[0].sqrt(), sq[1].sqrt(), 0.0, sq[3].sqrt()], entropy_rate)
        }
        None => ([0.0; 4], 0.0),
    };
    diag.push(t, eta, ke, res, min_rho, min_p, vr);
    Ok(())
}

/// Per-step view handed to a run observer.
pub struct StepView<'a> {
    pub step: usize,
    pub time: f64,
    pub field: &'a Field2,
    pub grid: &'a StructuredGrid2D,
}

/// Advance a 2D case on the given grid sizes to its stop criterion.
pub fn run_case_2d(
    case: &Case2d,
    grid_size: (usize, usize),
    scheme: &SchemeConfig,
    opts: &RunOptions,
) -> Result<Run2Result, Error> {
    run_case_2d_observed(case, grid_size, scheme, opts, |_| Ok(()))
}

/// [`run_case_2d`] with a callback invoked after every accepted step.
pub fn run_case_2d_observed(
    case: &Case2d,
    grid_size: (usize, usize),
    scheme: &SchemeConfig,
    opts: &RunOptions,
    mut observer: impl FnMut(&StepView) -> Result<(), Error>,
) -> Result<Run2Result, Error> {
    scheme.validate()?;
    let g = case.gas;
    let (ni, nj) = grid_size;
    let grid = build_mesh(&case.mesh, ni, nj)?;
    let mask = case
        .solid
        .as_ref()
        .map(|p| CellMask::from_predicate(&grid, |x, y| p(x, y)));

    let mut field = Field2::new(ni, nj, {
        let c = grid.cell_center(0, 0);
        (case.ic)(c[0], c[1]).to_conserved(g)
    });
    for j in 0..nj {
        for i in 0..ni {
            let c = grid.cell_center(i, j);
            *field.cell_mut(i as isize, j as isize) = (case.ic)(c[0], c[1]).to_conserved(g);
        }
    }

    let (t_final, steady, max_steps) = match case.stop {
        StopRule::TimeFinal(tf) => (
            opts.t_final_override.unwrap_or(tf),
            None,
            opts.max_steps,
        ),
        StopRule::Steady { tol, max_steps } => (
            opts.t_final_override.unwrap_or(f64::INFINITY),
            Some(tol),
            max_steps.min(opts.max_steps),
        ),
    };

    let corner = case.corner_fix.as_ref().map(|c| corner_cells(c, &grid, mask.as_ref()));

    let mut diag = DiagnosticsSeries::new();
    let mut t = 0.0;
    let mut steps = 0usize;
    let mut first_norms: Option<[f64; 4]> = None;
    let mut converged = false;

    record_2d(&mut diag, &field, &grid, mask.as_ref(), g, t, None)?;

    // Steady marches use local time stepping: every cell advances at its
    // own stable pseudo-time step. The fixed points of the march are the
    // same steady states; only the path to them changes.
    let local_stepping = steady.is_some() && opts.fixed_dt.is_none();

    while t < t_final && steps < max_steps {
        let dt_field: DtField = if local_stepping {
            DtField::Local(compute_local_dt_2d(&field, &grid, mask.as_ref(), scheme.cfl, g)?)
        } else {
            let dt_raw = match opts.fixed_dt {
                Some(dt) => dt,
                None => compute_dt_2d(&field, &grid, mask.as_ref(), scheme.cfl, g)?,
            };
            DtField::Global(if t_final.is_finite() {
                dt_raw.min(t_final - t)
            } else {
                dt_raw
            })
        };
        let dt = dt_field.min_dt();

        let stage = |f: &mut Field2, t_s: f64| -> Result<Vec<Conserved2>, Error> {
            fill_ghosts_2d(f, &grid, &case.bcs, t_s, g)?;
            residual_2d(f, &grid, mask.as_ref(), scheme, g).map_err(|e| e.at_time(t_s))
        };

        let u0 = interior_2d(&field);
        let r1 = stage(&mut field, t)?;
        set_interior_2d(&mut field, &axpy2(&u0, &dt_field, &r1));

        match scheme.integrator {
            TimeIntegrator::Ssprk2 => {
                let r2 = stage(&mut field, t + dt)?;
                let u1 = interior_2d(&field);
                let unew = blend2(0.5, &u0, 0.5, &axpy2(&u1, &dt_field, &r2));
                set_interior_2d(&mut field, &unew);
            }
            TimeIntegrator::Ssprk3 => {
                let r2 = stage(&mut field, t + dt)?;
                let u1 = interior_2d(&field);
                let u2 = blend2(0.75, &u0, 0.25, &axpy2(&u1, &dt_field, &r2));
                set_interior_2d(&mut field, &u2);
                let r3 = stage(&mut field, t + 0.5 * dt)?;
                let u2 = interior_2d(&field);
                let unew = blend2(1.0 / 3.0, &u0, 2.0 / 3.0, &axpy2(&u2, &dt_field, &r3));
                set_interior_2d(&mut field, &unew);
            }
        }

        if let Some(cells) = &corner {
            apply_corner_fix(&mut field, cells, g).map_err(|e| e.at_time(t))?;
        }

        t += dt;
        steps += 1;

        observer(&StepView {
            step: steps,
            time: t,
            field: &field,
            grid: &grid,
        })?;

        let norms = residual_norms_2d(&r1, mask.as_ref(), ni);
        if steps % opts.record_every == 0 || steady.is_some() {
            record_2d(&mut diag, &field, &grid, mask.as_ref(), g, t, Some(norms))?;
        }

        if let Some(tol) = steady {
            let base = *first_norms.get_or_insert(norms);
            let done = (0..4).all(|k| base[k] == 0.0 || norms[k] <= tol * base[k]);
            if done {
                converged = true;
                break;
            }
        }
    }

    if steady.is_some() && !converged && max_steps > 0 {
        return Err(Error::NonConvergence { steps });
    }
    if steady.is_none() && t < t_final && t_final.is_finite() && max_steps > 0 {
        return Err(Error::NonConvergence { steps });
    }

    if diag.t.last() != Some(&t) {
        record_2d(&mut diag, &field, &grid, mask.as_ref(), g, t, None)?;
    }

    Ok(Run2Result {
        grid,
        field,
        mask,
        time: t,
        steps,
        steady_converged: converged,
        diagnostics: diag,
    })
}

pub(crate) fn build_mesh(spec: &MeshSpec, ni: usize, nj: usize) -> Result<StructuredGrid2D, Error> {
    match spec {
        MeshSpec::Cartesian { x, y } => Ok(StructuredGrid2D::cartesian(ni, nj, *x, *y)),
        MeshSpec::HalfCylinder => StructuredGrid2D::half_cylinder(ni, nj),
        MeshSpec::PerturbedChannel { x, y, dy } => {
            StructuredGrid2D::perturbed_channel(ni, nj, *x, *y, *dy)
        }
        MeshSpec::Ramp { x, y, start, angle_deg } => {
            StructuredGrid2D::ramp(ni, nj, *x, *y, *start, *angle_deg)
        }
    }
}

fn interior_2d(field: &Field2) -> Vec<Conserved2> {
    let mut out = Vec::with_capacity(field.ni() * field.nj());
    field.for_each_interior(|_, _, c| out.push(*c));
    out
}

fn set_interior_2d(field: &mut Field2, values: &[Conserved2]) {
    let ni = field.ni();
    let nj = field.nj();
    for j in 0..nj {
        for i in 0..ni {
            *field.cell_mut(i as isize, j as isize) = values[j * ni + i];
        }
    }
}

/// Time step per cell: one global value, or local pseudo-time steps.
enum DtField {
    Global(f64),
    Local(Vec<f64>),
}

impl DtField {
    fn min_dt(&self) -> f64 {
        match self {
            DtField::Global(dt) => *dt,
            DtField::Local(dts) => dts
                .iter()
                .cloned()
                .filter(|&d| d > 0.0)
                .fold(f64::INFINITY, f64::min),
        }
    }

    #[inline]
    fn at(&self, idx: usize) -> f64 {
        match self {
            DtField::Global(dt) => *dt,
            DtField::Local(dts) => dts[idx],
        }
    }
}

fn axpy2(base: &[Conserved2], dt: &DtField, rate: &[Conserved2]) -> Vec<Conserved2> {
    base.iter()
        .zip(rate)
        .enumerate()
        .map(|(idx, (u, r))| {
            let c = dt.at(idx);
            Conserved2 {
                rho: u.rho + c * r.rho,
                mx: u.mx + c * r.mx,
                my: u.my + c * r.my,
                energy: u.energy + c * r.energy,
            }
        })
        .collect()
}

fn blend2(a: f64, ua: &[Conserved2], b: f64, ub: &[Conserved2]) -> Vec<Conserved2> {
    ua.iter()
        .zip(ub)
        .map(|(x, y)| Conserved2 {
            rho: a * x.rho + b * y.rho,
            mx: a * x.mx + b * y.mx,
            my: a * x.my + b * y.my,
            energy: a * x.energy + b * y.energy,
        })
        .collect()
}

fn residual_norms_2d(rates: &[Conserved2], mask: Option<&CellMask>, ni: usize) -> [f64; 4] {
    let mut sq = [0.0f64; 4];
    for (idx, r) in rates.iter().enumerate() {
        if let Some(m) = mask {
            if m.solid(idx % ni, idx / ni) {
                continue;
            }
        }
        let a = r.as_array();
        for k in 0..4 {
            sq[k] += a[k] * a[k];
        }
    }
    [sq[0].sqrt(), sq[1].sqrt(), sq[2].sqrt(), sq[3].sqrt()]
}

fn record_2d(
    diag: &mut DiagnosticsSeries,
    field: &Field2,
    grid: &StructuredGrid2D,
    mask: Option<&CellMask>,
    g: GasModel,
    t: f64,
    norms: Option<[f64; 4]>,
) -> Result<(), Error> {
    let (eta, ke) = diagnostics::totals_2d(field, grid, mask, g)?;
    let mut min_rho = f64::INFINITY;
    let mut min_p = f64::INFINITY;
    let mut err: Option<Error> = None;
    field.for_each_interior(|i, j, c| {
        if err.is_some() || mask.map(|m| m.solid(i, j)).unwrap_or(false) {
            return;
        }
        match c.to_primitive(g) {
            Ok(w) => {
                min_rho = min_rho.min(w.rho);
                min_p = min_p.min(w.p);
            }
            Err(e) => err = Some(e.with_location(&format!("cell ({i}, {j})"), t)),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    diag.push(t, eta, ke, norms.unwrap_or([0.0; 4]), min_rho, min_p, 0.0);
    Ok(())
}

/// Cells reset by the corner fix: the first fluid row above the step
/// surface (to the right of the corner) and the first fluid column left of
/// the step face (below the corner), each paired with its diagonal
/// upstream-fluid neighbour.
struct CornerCells {
    targets: Vec<((usize, usize), (usize, usize))>,
}

fn corner_cells(
    spec: &CornerFixSpec,
    grid: &StructuredGrid2D,
    mask: Option<&CellMask>,
) -> CornerCells {
    let mut targets = Vec::new();
    let Some(mask) = mask else {
        return CornerCells { targets };
    };
    let (xc, yc) = spec.corner;
    for j in 0..grid.nj {
        for i in 0..grid.ni {
            if mask.solid(i, j) {
                continue;
            }
            let c = grid.cell_center(i, j);
            // row sitting on the step surface, right of the corner
            let on_step_row = j > 0 && mask.solid(i, j - 1) && c[0] > xc && c[1] > yc;
            if on_step_row && i > 0 && j + 1 < grid.nj && !mask.solid(i - 1, j + 1) {
                targets.push(((i, j), (i - 1, j + 1)));
            }
        }
    }
    CornerCells { targets }
}

fn apply_corner_fix(field: &mut Field2, cells: &CornerCells, g: GasModel) -> Result<(), Error> {
    for &((i, j), (ni_, nj_)) in &cells.targets {
        let loc = field.cell(i as isize, j as isize).to_primitive(g)?;
        let nb = field.cell(ni_ as isize, nj_ as isize).to_primitive(g)?;
        // density from entropy preservation at the local pressure; speed
        // from the neighbour, direction kept
        let rho_new = nb.rho * (loc.p / nb.p).powf(1.0 / g.gamma());
        let spd_loc = (loc.u * loc.u + loc.v * loc.v).sqrt();
        let spd_nb = (nb.u * nb.u + nb.v * nb.v).sqrt();
        let (u, v) = if spd_loc > 0.0 {
            (loc.u / spd_loc * spd_nb, loc.v / spd_loc * spd_nb)
        } else {
            (nb.u, nb.v)
        };
        *field.cell_mut(i as isize, j as isize) = crate::gas::Primitive2 {
            rho: rho_new,
            u,
            v,
            p: loc.p,
        }
        .to_conserved(g);
    }
    Ok(())
}
