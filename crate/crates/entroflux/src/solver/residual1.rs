//! 1D semi-discrete residual: `dU_j/dt = -(F_{j+1/2} - F_{j-1/2}) / dx`.

use super::field::{Field1, GHOST_LAYERS};
use super::grid::Grid1D;
use super::scheme::{SchemeConfig, Stabilization};
use crate::fluxes::{eval_core_kernel, FaceSide};
use crate::gas::{self, GasModel, Conserved1, Primitive1};
use crate::hybrid;
use crate::stabilization;
use crate::vecn;
use crate::Error;

/// Per-face data produced alongside a residual evaluation, for entropy and
/// kinetic-energy audits. Face `k` sits between cells `k-1` and `k`,
/// `k = 0..=n`.
#[derive(Debug, Clone)]
pub struct FaceReport1 {
    pub flux: Vec<[f64; 3]>,
    /// Applied RH diffusion coefficient (zero where stabilization is off or
    /// the sensor kept the face on the background branch).
    pub alpha: Vec<f64>,
    /// HES sensor indicator, when the scheme carries one.
    pub phi: Option<Vec<bool>>,
}

struct CellCache {
    w: Vec<Primitive1>,
    s: Vec<f64>,
    a: Vec<f64>,
}

impl CellCache {
    fn build(field: &Field1, g: GasModel) -> Result<Self, Error> {
        let n = field.n() as isize;
        let gl = GHOST_LAYERS as isize;
        let len = (n + 2 * gl) as usize;
        let mut w = Vec::with_capacity(len);
        let mut s = Vec::with_capacity(len);
        let mut a = Vec::with_capacity(len);
        for i in -gl..n + gl {
            let prim = field.cell(i).to_primitive(g).map_err(|e| {
                let loc = if i < 0 || i >= n {
                    format!("ghost cell {i}")
                } else {
                    format!("cell {i}")
                };
                e.with_location(&loc, f64::NAN)
            })?;
            s.push(gas::specific_entropy(prim.rho, prim.p, g));
            a.push(prim.sound_speed(g));
            w.push(prim);
        }
        Ok(Self { w, s, a })
    }

    #[inline]
    fn side(&self, i: isize) -> FaceSide {
        let k = (i + GHOST_LAYERS as isize) as usize;
        FaceSide::from_cached_1d(&self.w[k], self.s[k], self.a[k])
    }
}

/// Residual plus face-level audit data. Ghosts must be filled.
pub fn residual_1d_with_faces(
    field: &Field1,
    grid: &Grid1D,
    scheme: &SchemeConfig,
    g: GasModel,
) -> Result<(Vec<Conserved1>, FaceReport1), Error> {
    let n = field.n();
    let cache = CellCache::build(field, g)?;

    // sensor pass (HES only): entropy distances on faces -1..=n+1, then
    // clip and flatten onto the fluxed faces 0..=n
    let phi = if scheme.stabilization == Stabilization::Hes {
        let mut ed = Vec::with_capacity(n + 3);
        for k in -1..=(n as isize + 1) {
            let l = cache.side(k - 1);
            let r = cache.side(k);
            let ul = [l.rho, l.rho * l.un, l.cons(g)[3]];
            let ur = [r.rho, r.rho * r.un, r.cons(g)[3]];
            let vl = gas::entropy_vars_from_s_1d(l.rho, l.un, l.p, l.s, g);
            let vr = gas::entropy_vars_from_s_1d(r.rho, r.un, r.p, r.s, g);
            ed.push(gas::entropy_distance(&ul, &ur, &vl, &vr));
        }
        let max_ed = ed.iter().cloned().fold(0.0f64, f64::max);
        let clipped: Vec<bool> = ed
            .iter()
            .map(|&e| {
                max_ed > 0.0
                    && hybrid::sensor_raw(e / max_ed, scheme.sensor.q, scheme.sensor.mode)
                        > scheme.sensor.eps
            })
            .collect();
        // face k maps to clipped[k + 1]
        Some((0..=n).map(|k| clipped[k] || clipped[k + 1] || clipped[k + 2]).collect::<Vec<bool>>())
    } else {
        None
    };

    let mut flux = Vec::with_capacity(n + 1);
    let mut alpha = Vec::with_capacity(n + 1);
    for k in 0..=n as isize {
        let l = cache.side(k - 1);
        let r = cache.side(k);
        let (f4, a_s) = match scheme.stabilization {
            Stabilization::None => (eval_core_kernel(scheme.flux, &l, &r, g, &scheme.guard), 0.0),
            Stabilization::Es => {
                let sf = stabilization::es_face(scheme.flux, &l, &r, g, &scheme.fix, &scheme.guard);
                (sf.flux, sf.alpha_s)
            }
            Stabilization::Hes => {
                let fire = phi.as_ref().unwrap()[k as usize];
                let stencil = [
                    cell_array(&cache, k - 2, g),
                    cell_array(&cache, k - 1, g),
                    cell_array(&cache, k, g),
                    cell_array(&cache, k + 1, g),
                ];
                let sf = hybrid::hes_face(
                    (&l, &r),
                    &stencil,
                    fire,
                    scheme.flux,
                    g,
                    &scheme.fix,
                    &scheme.guard,
                    true,
                );
                (sf.flux, sf.alpha_s)
            }
        };
        flux.push([f4[0], f4[1], f4[3]]);
        alpha.push(a_s);
    }

    let inv_dx = 1.0 / grid.dx;
    let rates = (0..n)
        .map(|j| {
            let d = vecn::sub(&flux[j + 1], &flux[j]);
            Conserved1 {
                rho: -d[0] * inv_dx,
                mom: -d[1] * inv_dx,
                energy: -d[2] * inv_dx,
            }
        })
        .collect();

    Ok((rates, FaceReport1 { flux, alpha, phi }))
}

fn cell_array(cache: &CellCache, i: isize, g: GasModel) -> [f64; 4] {
    cache.side(i).cons(g)
}

/// Residual only.
pub fn residual_1d(
    field: &Field1,
    grid: &Grid1D,
    scheme: &SchemeConfig,
    g: GasModel,
) -> Result<Vec<Conserved1>, Error> {
    residual_1d_with_faces(field, grid, scheme, g).map(|(r, _)| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fluxes::FluxCore;
    use crate::solver::bc::{fill_ghosts_1d, Bc1};

    const G: GasModel = GasModel::AIR;

    fn uniform_field(n: usize) -> Field1 {
        Field1::new(n, Primitive1::new(1.3, 0.4, 2.0).to_conserved(G))
    }

    #[test]
    fn uniform_field_has_zero_residual_for_every_scheme() {
        let grid = Grid1D::new(16, 0.0, 1.0);
        let mut field = uniform_field(16);
        fill_ghosts_1d(&mut field, Bc1::Periodic);
        for st in [Stabilization::None, Stabilization::Es, Stabilization::Hes] {
            for flux in FluxCore::ALL {
                if st != Stabilization::None && !flux.is_entropy_conservative() {
                    continue;
                }
                let scheme = SchemeConfig::default().with_flux(flux).with_stabilization(st);
                let rates = residual_1d(&field, &grid, &scheme, G).unwrap();
                for r in &rates {
                    assert!(r.rho.abs() < 1e-13 && r.mom.abs() < 1e-13 && r.energy.abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn positivity_violation_reports_cell_index() {
        let grid = Grid1D::new(8, 0.0, 1.0);
        let mut field = uniform_field(8);
        field.cell_mut(5).energy = 0.0;
        fill_ghosts_1d(&mut field, Bc1::Transmissive);
        let err = residual_1d(&field, &grid, &SchemeConfig::default(), G).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("cell 5"), "{msg}");
    }

    #[test]
    fn periodic_ec_residual_conserves_entropy_globally() {
        // sum_j V_j . R_j dx telescopes to zero through the interface
        // identity
        let n = 64;
        let grid = Grid1D::new(n, 0.0, 1.0);
        let cells: Vec<_> = (0..n)
            .map(|i| {
                let x = grid.cell_center(i);
                Primitive1::new(
                    1.0 + 0.4 * (2.0 * std::f64::consts::PI * x).sin(),
                    0.3 * (2.0 * std::f64::consts::PI * x).cos(),
                    1.0 + 0.2 * (4.0 * std::f64::consts::PI * x).sin(),
                )
                .to_conserved(G)
            })
            .collect();
        let mut field = Field1::from_cells(cells);
        fill_ghosts_1d(&mut field, Bc1::Periodic);

        for flux in [FluxCore::Ec1, FluxCore::Ec2, FluxCore::Eckep] {
            let scheme = SchemeConfig::default()
                .with_flux(flux)
                .with_stabilization(Stabilization::None);
            let rates = residual_1d(&field, &grid, &scheme, G).unwrap();
            let mut sum = 0.0;
            let mut scale = 0.0;
            for (j, r) in rates.iter().enumerate() {
                let w = field.cell(j as isize).to_primitive(G).unwrap();
                let v = gas::entropy_variables_1d(&w, G);
                let contrib = (v[0] * r.rho + v[1] * r.mom + v[2] * r.energy) * grid.dx;
                sum += contrib;
                scale += contrib.abs();
            }
            assert!(
                sum.abs() <= 1e-11 * scale.max(1.0),
                "{}: entropy production {sum:.3e}",
                flux.name()
            );
        }
    }

    #[test]
    fn es_residual_entropy_production_has_dissipative_sign() {
        let n = 100;
        let grid = Grid1D::new(n, 0.0, 1.0);
        let cells: Vec<_> = (0..n)
            .map(|i| {
                let x = grid.cell_center(i);
                if (0.25..0.75).contains(&x) {
                    Primitive1::new(1.0, 0.75, 1.0).to_conserved(G)
                } else {
                    Primitive1::new(0.125, 0.0, 0.1).to_conserved(G)
                }
            })
            .collect();
        let mut field = Field1::from_cells(cells);
        fill_ghosts_1d(&mut field, Bc1::Periodic);
        let scheme = SchemeConfig::default().with_stabilization(Stabilization::Es);
        let rates = residual_1d(&field, &grid, &scheme, G).unwrap();
        let mut sum = 0.0;
        for (j, r) in rates.iter().enumerate() {
            let w = field.cell(j as isize).to_primitive(G).unwrap();
            let v = gas::entropy_variables_1d(&w, G);
            sum += (v[0] * r.rho + v[1] * r.mom + v[2] * r.energy) * grid.dx;
        }
        // mathematical entropy must not be produced
        assert!(sum <= 1e-12, "d(total eta)/dt = {sum:.3e}");
    }

    #[test]
    fn hes_report_carries_sensor_and_alpha() {
        // a moving jump: at rest the RH wave speeds legitimately vanish
        let n = 50;
        let grid = Grid1D::new(n, 0.0, 1.0);
        let cells: Vec<_> = (0..n)
            .map(|i| {
                if i < n / 2 {
                    Primitive1::new(1.0, 0.75, 1.0).to_conserved(G)
                } else {
                    Primitive1::new(0.125, 0.0, 0.1).to_conserved(G)
                }
            })
            .collect();
        let mut field = Field1::from_cells(cells);
        fill_ghosts_1d(&mut field, Bc1::Transmissive);
        let scheme = SchemeConfig::default().with_stabilization(Stabilization::Hes);
        let (_, report) = residual_1d_with_faces(&field, &grid, &scheme, G).unwrap();
        let phi = report.phi.unwrap();
        // the jump face fires, far-field faces stay off
        assert!(phi[n / 2]);
        assert!(!phi[2] && !phi[n - 2]);
        assert!(report.alpha[n / 2] > 0.0);
        assert_eq!(report.alpha[2], 0.0);
    }
}
