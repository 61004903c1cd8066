//! 2D semi-discrete residual on structured grids.
//!
//! Every face flux is evaluated in the face-normal frame and rotated back,
//! faces are swept per row, and each cell's rate is gathered from its four
//! faces divided by the cell area. The evaluation is deterministic: face
//! values are stored per face, so thread count never changes the result.

use rayon::prelude::*;

use super::field::{Field2, GHOST_LAYERS};
use super::mesh2d::StructuredGrid2D;
use super::scheme::{SchemeConfig, Stabilization};
use crate::fluxes::{eval_core_kernel, unrotate, FaceSide};
use crate::gas::{self, Conserved2, GasModel, Primitive2};
use crate::hybrid;
use crate::stabilization;
use crate::Error;

/// Solid-cell mask over the interior cells; everything outside the interior
/// counts as fluid (domain boundaries are handled by ghost cells).
#[derive(Debug, Clone)]
pub struct CellMask {
    solid: Vec<bool>,
    ni: usize,
    nj: usize,
}

impl CellMask {
    pub fn from_predicate(
        grid: &StructuredGrid2D,
        pred: impl Fn(f64, f64) -> bool,
    ) -> Self {
        let mut solid = vec![false; grid.ni * grid.nj];
        for j in 0..grid.nj {
            for i in 0..grid.ni {
                let c = grid.cell_center(i, j);
                solid[j * grid.ni + i] = pred(c[0], c[1]);
            }
        }
        Self {
            solid,
            ni: grid.ni,
            nj: grid.nj,
        }
    }

    #[inline]
    pub fn solid(&self, i: usize, j: usize) -> bool {
        self.solid[j * self.ni + i]
    }

    #[inline]
    fn solid_signed(&self, i: isize, j: isize) -> bool {
        if i < 0 || j < 0 || i >= self.ni as isize || j >= self.nj as isize {
            false
        } else {
            self.solid[j as usize * self.ni + i as usize]
        }
    }

    pub fn fluid_count(&self) -> usize {
        self.solid.iter().filter(|&&s| !s).count()
    }
}

/// Per-cell primitives plus the transcendentals the flux kernels need,
/// cached once per residual evaluation over the padded rectangle.
struct CellCache {
    w: Vec<Primitive2>,
    s: Vec<f64>,
    a: Vec<f64>,
    /// Entropy variables in the global frame (only filled for HES runs).
    v: Vec<[f64; 4]>,
    u: Vec<[f64; 4]>,
    stride: usize,
}

impl CellCache {
    fn build(
        field: &Field2,
        mask: Option<&CellMask>,
        need_entropy_vars: bool,
        g: GasModel,
    ) -> Result<Self, Error> {
        let (ni, nj) = (field.ni(), field.nj());
        // validate the interior first so a failure names the actual cell
        // rather than one of its ghost copies
        for j in 0..nj {
            for i in 0..ni {
                if mask.map(|m| m.solid(i, j)).unwrap_or(false) {
                    continue;
                }
                field
                    .cell(i as isize, j as isize)
                    .to_primitive(g)
                    .map_err(|e| e.with_location(&format!("cell ({i}, {j})"), f64::NAN))?;
            }
        }
        let gl = GHOST_LAYERS as isize;
        let stride = ni + 2 * GHOST_LAYERS;
        let len = stride * (nj + 2 * GHOST_LAYERS);
        let mut w = Vec::with_capacity(len);
        let mut s = Vec::with_capacity(len);
        let mut a = Vec::with_capacity(len);
        let mut v = Vec::with_capacity(if need_entropy_vars { len } else { 0 });
        let mut u = Vec::with_capacity(len);
        let placeholder = Primitive2::new(1.0, 0.0, 0.0, 1.0);
        for j in -gl..(nj as isize + gl) {
            for i in -gl..(ni as isize + gl) {
                let solid = mask.map(|m| m.solid_signed(i, j)).unwrap_or(false);
                let prim = if solid {
                    placeholder
                } else {
                    field.cell(i, j).to_primitive(g).map_err(|e| {
                        let interior =
                            i >= 0 && j >= 0 && i < ni as isize && j < nj as isize;
                        let loc = if interior {
                            format!("cell ({i}, {j})")
                        } else {
                            format!("ghost cell ({i}, {j})")
                        };
                        e.with_location(&loc, f64::NAN)
                    })?
                };
                let si = gas::specific_entropy(prim.rho, prim.p, g);
                s.push(si);
                a.push(prim.sound_speed(g));
                if need_entropy_vars {
                    v.push(gas::entropy_vars_from_s_2d(
                        prim.rho, prim.u, prim.v, prim.p, si, g,
                    ));
                }
                u.push(prim.to_conserved(g).as_array());
                w.push(prim);
            }
        }
        Ok(Self {
            w,
            s,
            a,
            v,
            u,
            stride,
        })
    }

    #[inline]
    fn idx(&self, i: isize, j: isize) -> usize {
        let g = GHOST_LAYERS as isize;
        ((j + g) as usize) * self.stride + (i + g) as usize
    }

    #[inline]
    fn side(&self, i: isize, j: isize, n: [f64; 2]) -> FaceSide {
        let k = self.idx(i, j);
        FaceSide::from_cached_2d(&self.w[k], n, self.s[k], self.a[k])
    }

    #[inline]
    fn cons(&self, i: isize, j: isize) -> [f64; 4] {
        self.u[self.idx(i, j)]
    }

    #[inline]
    fn entropy_vars(&self, i: isize, j: isize) -> [f64; 4] {
        self.v[self.idx(i, j)]
    }
}

/// Mirror a face-frame side across its face (slip-wall image).
#[inline]
fn mirrored(side: &FaceSide) -> FaceSide {
    FaceSide {
        un: -side.un,
        ..*side
    }
}

/// Conserved vector rotated into a face frame.
#[inline]
fn rotate_cons(u: &[f64; 4], n: [f64; 2]) -> [f64; 4] {
    [
        u[0],
        u[1] * n[0] + u[2] * n[1],
        -u[1] * n[1] + u[2] * n[0],
        u[3],
    ]
}

struct SensorGrids {
    /// clipped sensor on x-faces, i in -1..=ni+1, j in -1..=nj
    clip_x: Vec<bool>,
    /// clipped sensor on y-faces, i in -1..=ni, j in -1..=nj+1
    clip_y: Vec<bool>,
    ni: usize,
}

impl SensorGrids {
    #[inline]
    fn x(&self, i: isize, j: isize) -> bool {
        self.clip_x[((j + 1) as usize) * (self.ni + 3) + (i + 1) as usize]
    }

    #[inline]
    fn y(&self, i: isize, j: isize) -> bool {
        self.clip_y[((j + 1) as usize) * (self.ni + 2) + (i + 1) as usize]
    }

    /// Flattened indicator for the x-face `(i, j)`: any fired interface of
    /// the two adjacent cells, plus the parallel faces of the neighbouring
    /// rows so the band stays coherent across rows.
    fn phi_x(&self, i: isize, j: isize) -> bool {
        self.x(i - 1, j)
            || self.x(i, j)
            || self.x(i + 1, j)
            || self.x(i, j - 1)
            || self.x(i, j + 1)
            || self.y(i - 1, j)
            || self.y(i - 1, j + 1)
            || self.y(i, j)
            || self.y(i, j + 1)
    }

    fn phi_y(&self, i: isize, j: isize) -> bool {
        self.y(i, j - 1)
            || self.y(i, j)
            || self.y(i, j + 1)
            || self.y(i - 1, j)
            || self.y(i + 1, j)
            || self.x(i, j - 1)
            || self.x(i + 1, j - 1)
            || self.x(i, j)
            || self.x(i + 1, j)
    }
}

fn build_sensor(
    cache: &CellCache,
    mask: Option<&CellMask>,
    scheme: &SchemeConfig,
    ni: usize,
    nj: usize,
) -> SensorGrids {
    let ed_at = |il: isize, jl: isize, ir: isize, jr: isize| -> f64 {
        if let Some(m) = mask {
            if m.solid_signed(il, jl) || m.solid_signed(ir, jr) {
                return 0.0;
            }
        }
        gas::entropy_distance(
            &cache.cons(il, jl),
            &cache.cons(ir, jr),
            &cache.entropy_vars(il, jl),
            &cache.entropy_vars(ir, jr),
        )
    };

    let mut ed_x = vec![0.0; (ni + 3) * (nj + 2)];
    for j in -1..=(nj as isize) {
        for i in -1..=(ni as isize + 1) {
            ed_x[((j + 1) as usize) * (ni + 3) + (i + 1) as usize] = ed_at(i - 1, j, i, j);
        }
    }
    let mut ed_y = vec![0.0; (ni + 2) * (nj + 3)];
    for j in -1..=(nj as isize + 1) {
        for i in -1..=(ni as isize) {
            ed_y[((j + 1) as usize) * (ni + 2) + (i + 1) as usize] = ed_at(i, j - 1, i, j);
        }
    }

    let max_ed = ed_x
        .iter()
        .chain(ed_y.iter())
        .cloned()
        .fold(0.0f64, f64::max);
    let clip = |ed: f64| -> bool {
        max_ed > 0.0
            && hybrid::sensor_raw(ed / max_ed, scheme.sensor.q, scheme.sensor.mode)
                > scheme.sensor.eps
    };
    SensorGrids {
        clip_x: ed_x.into_iter().map(clip).collect(),
        clip_y: ed_y.into_iter().map(clip).collect(),
        ni,
    }
}

/// Semi-discrete rates for the interior cells (row-major `ni x nj`).
/// Ghosts must be filled; masked cells get zero rates.
pub fn residual_2d(
    field: &Field2,
    grid: &StructuredGrid2D,
    mask: Option<&CellMask>,
    scheme: &SchemeConfig,
    g: GasModel,
) -> Result<Vec<Conserved2>, Error> {
    let (ni, nj) = (grid.ni, grid.nj);
    let hes = scheme.stabilization == Stabilization::Hes;
    let cache = CellCache::build(field, mask, hes, g)?;
    let sensor = hes.then(|| build_sensor(&cache, mask, scheme, ni, nj));

    // face flux in the face frame for an (il,jl) | (ir,jr) pair along a line
    // direction; `line` yields the stencil cells for the fourth-order term
    let eval_face = |il: isize,
                     jl: isize,
                     ir: isize,
                     jr: isize,
                     n: [f64; 2],
                     phi: bool,
                     stencil: Option<[[f64; 4]; 4]>|
     -> [f64; 4] {
        let left_solid = mask.map(|m| m.solid_signed(il, jl)).unwrap_or(false);
        let right_solid = mask.map(|m| m.solid_signed(ir, jr)).unwrap_or(false);
        if left_solid && right_solid {
            return [0.0; 4];
        }
        let (l, r, wall) = if right_solid {
            let l = cache.side(il, jl, n);
            (l, mirrored(&l), true)
        } else if left_solid {
            let r = cache.side(ir, jr, n);
            (mirrored(&r), r, true)
        } else {
            (cache.side(il, jl, n), cache.side(ir, jr, n), false)
        };
        match scheme.stabilization {
            Stabilization::None => eval_core_kernel(scheme.flux, &l, &r, g, &scheme.guard),
            Stabilization::Es => {
                stabilization::es_face(scheme.flux, &l, &r, g, &scheme.fix, &scheme.guard).flux
            }
            Stabilization::Hes => {
                // wall faces have no grid line through them; take the RH branch
                let (phi, stencil_ok) = if wall { (true, false) } else { (phi, stencil.is_some()) };
                let stencil_face = stencil.unwrap_or([[0.0; 4]; 4]);
                hybrid::hes_face(
                    (&l, &r),
                    &stencil_face,
                    phi,
                    scheme.flux,
                    g,
                    &scheme.fix,
                    &scheme.guard,
                    stencil_ok,
                )
                .flux
            }
        }
    };

    let stencil_x = |i: isize, j: isize, n: [f64; 2]| -> Option<[[f64; 4]; 4]> {
        if let Some(m) = mask {
            for di in -2..=1isize {
                if m.solid_signed(i + di, j) {
                    return None;
                }
            }
        }
        Some([
            rotate_cons(&cache.cons(i - 2, j), n),
            rotate_cons(&cache.cons(i - 1, j), n),
            rotate_cons(&cache.cons(i, j), n),
            rotate_cons(&cache.cons(i + 1, j), n),
        ])
    };
    let stencil_y = |i: isize, j: isize, n: [f64; 2]| -> Option<[[f64; 4]; 4]> {
        if let Some(m) = mask {
            for dj in -2..=1isize {
                if m.solid_signed(i, j + dj) {
                    return None;
                }
            }
        }
        Some([
            rotate_cons(&cache.cons(i, j - 2), n),
            rotate_cons(&cache.cons(i, j - 1), n),
            rotate_cons(&cache.cons(i, j), n),
            rotate_cons(&cache.cons(i, j + 1), n),
        ])
    };

    // x-faces: (ni + 1) per row, nj rows
    let mut flux_x = vec![[0.0f64; 4]; (ni + 1) * nj];
    flux_x
        .par_chunks_mut(ni + 1)
        .enumerate()
        .for_each(|(j, row)| {
            let jj = j as isize;
            for (i, slot) in row.iter_mut().enumerate() {
                let ii = i as isize;
                let n = grid.iface_normal(i, j);
                let phi = sensor.as_ref().map(|s| s.phi_x(ii, jj)).unwrap_or(false);
                let stencil = if hes { stencil_x(ii, jj, n) } else { None };
                let f = eval_face(ii - 1, jj, ii, jj, n, phi, stencil);
                *slot = unrotate(f, n);
            }
        });

    // y-faces: ni per row, (nj + 1) rows
    let mut flux_y = vec![[0.0f64; 4]; ni * (nj + 1)];
    flux_y
        .par_chunks_mut(ni)
        .enumerate()
        .for_each(|(j, row)| {
            let jj = j as isize;
            for (i, slot) in row.iter_mut().enumerate() {
                let ii = i as isize;
                let n = grid.jface_normal(i, j);
                let phi = sensor.as_ref().map(|s| s.phi_y(ii, jj)).unwrap_or(false);
                let stencil = if hes { stencil_y(ii, jj, n) } else { None };
                let f = eval_face(ii, jj - 1, ii, jj, n, phi, stencil);
                *slot = unrotate(f, n);
            }
        });

    // gather: rate = -(sum of outward flux * face length) / area
    let mut rates = vec![Conserved2::default(); ni * nj];
    rates
        .par_chunks_mut(ni)
        .enumerate()
        .for_each(|(j, row)| {
            for (i, slot) in row.iter_mut().enumerate() {
                if mask.map(|m| m.solid(i, j)).unwrap_or(false) {
                    continue;
                }
                let fw = flux_x[j * (ni + 1) + i];
                let fe = flux_x[j * (ni + 1) + i + 1];
                let fs = flux_y[j * ni + i];
                let fn_ = flux_y[(j + 1) * ni + i];
                let lw = grid.iface_len(i, j);
                let le = grid.iface_len(i + 1, j);
                let ls = grid.jface_len(i, j);
                let ln_ = grid.jface_len(i, j + 1);
                let inv_area = 1.0 / grid.area(i, j);
                let mut out = [0.0f64; 4];
                for k in 0..4 {
                    out[k] = -(fe[k] * le - fw[k] * lw + fn_[k] * ln_ - fs[k] * ls) * inv_area;
                }
                *slot = Conserved2::from_array(out);
            }
        });

    Ok(rates)
}
