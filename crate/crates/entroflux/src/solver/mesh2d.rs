//! Logically rectangular structured grids with per-face metrics, and the
//! mesh generators used by the bundled cases.

use crate::Error;

/// Structured quadrilateral grid of `ni x nj` cells. Face normals are unit
/// vectors pointing in the +i / +j index directions; areas are positive for
/// right-handed node orderings (enforced at construction).
#[derive(Debug, Clone)]
pub struct StructuredGrid2D {
    pub ni: usize,
    pub nj: usize,
    nodes: Vec<[f64; 2]>,      // (ni+1) * (nj+1)
    iface_n: Vec<[f64; 2]>,    // (ni+1) * nj, unit normal pointing +i
    iface_len: Vec<f64>,
    jface_n: Vec<[f64; 2]>,    // ni * (nj+1), unit normal pointing +j
    jface_len: Vec<f64>,
    area: Vec<f64>,            // ni * nj
}

impl StructuredGrid2D {
    pub fn from_nodes(ni: usize, nj: usize, nodes: Vec<[f64; 2]>) -> Result<Self, Error> {
        if nodes.len() != (ni + 1) * (nj + 1) {
            return Err(Error::Config(format!(
                "node array has {} entries, expected {}",
                nodes.len(),
                (ni + 1) * (nj + 1)
            )));
        }
        let node = |i: usize, j: usize| nodes[j * (ni + 1) + i];

        let mut iface_n = vec![[0.0; 2]; (ni + 1) * nj];
        let mut iface_len = vec![0.0; (ni + 1) * nj];
        for j in 0..nj {
            for i in 0..=ni {
                let a = node(i, j);
                let b = node(i, j + 1);
                let e = [b[0] - a[0], b[1] - a[1]];
                let len = (e[0] * e[0] + e[1] * e[1]).sqrt();
                if !(len > 0.0) {
                    return Err(Error::Config(format!("degenerate i-face at ({i}, {j})")));
                }
                iface_n[j * (ni + 1) + i] = [e[1] / len, -e[0] / len];
                iface_len[j * (ni + 1) + i] = len;
            }
        }

        let mut jface_n = vec![[0.0; 2]; ni * (nj + 1)];
        let mut jface_len = vec![0.0; ni * (nj + 1)];
        for j in 0..=nj {
            for i in 0..ni {
                let a = node(i, j);
                let b = node(i + 1, j);
                let e = [b[0] - a[0], b[1] - a[1]];
                let len = (e[0] * e[0] + e[1] * e[1]).sqrt();
                if !(len > 0.0) {
                    return Err(Error::Config(format!("degenerate j-face at ({i}, {j})")));
                }
                jface_n[j * ni + i] = [-e[1] / len, e[0] / len];
                jface_len[j * ni + i] = len;
            }
        }

        let mut area = vec![0.0; ni * nj];
        for j in 0..nj {
            for i in 0..ni {
                let q = [node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)];
                let mut a = 0.0;
                for k in 0..4 {
                    let b = (k + 1) % 4;
                    a += q[k][0] * q[b][1] - q[b][0] * q[k][1];
                }
                a *= 0.5;
                if !(a > 0.0) {
                    return Err(Error::Config(format!(
                        "non-positive cell area {a:.3e} at ({i}, {j})"
                    )));
                }
                area[j * ni + i] = a;
            }
        }

        Ok(Self {
            ni,
            nj,
            nodes,
            iface_n,
            iface_len,
            jface_n,
            jface_len,
            area,
        })
    }

    #[inline]
    pub fn node(&self, i: usize, j: usize) -> [f64; 2] {
        self.nodes[j * (self.ni + 1) + i]
    }

    #[inline]
    pub fn iface_normal(&self, i: usize, j: usize) -> [f64; 2] {
        self.iface_n[j * (self.ni + 1) + i]
    }

    #[inline]
    pub fn iface_len(&self, i: usize, j: usize) -> f64 {
        self.iface_len[j * (self.ni + 1) + i]
    }

    #[inline]
    pub fn jface_normal(&self, i: usize, j: usize) -> [f64; 2] {
        self.jface_n[j * self.ni + i]
    }

    #[inline]
    pub fn jface_len(&self, i: usize, j: usize) -> f64 {
        self.jface_len[j * self.ni + i]
    }

    #[inline]
    pub fn area(&self, i: usize, j: usize) -> f64 {
        self.area[j * self.ni + i]
    }

    pub fn iface_midpoint(&self, i: usize, j: usize) -> [f64; 2] {
        let a = self.node(i, j);
        let b = self.node(i, j + 1);
        [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])]
    }

    pub fn jface_midpoint(&self, i: usize, j: usize) -> [f64; 2] {
        let a = self.node(i, j);
        let b = self.node(i + 1, j);
        [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])]
    }

    pub fn cell_center(&self, i: usize, j: usize) -> [f64; 2] {
        let q = [
            self.node(i, j),
            self.node(i + 1, j),
            self.node(i + 1, j + 1),
            self.node(i, j + 1),
        ];
        [
            0.25 * (q[0][0] + q[1][0] + q[2][0] + q[3][0]),
            0.25 * (q[0][1] + q[1][1] + q[2][1] + q[3][1]),
        ]
    }

    /// Averaged opposite-face metric vectors (normal times length) of a
    /// cell, used by the time-step estimate.
    pub fn cell_metric_vectors(&self, i: usize, j: usize) -> ([f64; 2], [f64; 2]) {
        let sa = self.iface_normal(i, j);
        let la = self.iface_len(i, j);
        let sb = self.iface_normal(i + 1, j);
        let lb = self.iface_len(i + 1, j);
        let si = [0.5 * (sa[0] * la + sb[0] * lb), 0.5 * (sa[1] * la + sb[1] * lb)];
        let sa = self.jface_normal(i, j);
        let la = self.jface_len(i, j);
        let sb = self.jface_normal(i, j + 1);
        let lb = self.jface_len(i, j + 1);
        let sj = [0.5 * (sa[0] * la + sb[0] * lb), 0.5 * (sa[1] * la + sb[1] * lb)];
        (si, sj)
    }

    pub fn cartesian(ni: usize, nj: usize, x: (f64, f64), y: (f64, f64)) -> Self {
        let dx = (x.1 - x.0) / ni as f64;
        let dy = (y.1 - y.0) / nj as f64;
        let mut nodes = Vec::with_capacity((ni + 1) * (nj + 1));
        for j in 0..=nj {
            for i in 0..=ni {
                nodes.push([x.0 + i as f64 * dx, y.0 + j as f64 * dy]);
            }
        }
        Self::from_nodes(ni, nj, nodes).expect("cartesian mesh is always valid")
    }

    /// Body-fitted mesh around the left half of a unit cylinder: `n` radial
    /// by `m` circumferential cells. The innermost node ring lies on the
    /// unit circle; the outer boundary is the elliptic arc of the generator
    /// curves.
    pub fn half_cylinder(n: usize, m: usize) -> Result<Self, Error> {
        if n < 2 || m < 2 {
            return Err(Error::Config("half-cylinder mesh needs n, m >= 2".into()));
        }
        let mut nodes = Vec::with_capacity((n + 1) * (m + 1));
        for j in 0..=m {
            let theta = j as f64 * 5.0 * std::f64::consts::PI / (6.0 * m as f64)
                - 5.0 * std::f64::consts::PI / 12.0;
            let tan2 = theta.tan() * theta.tan();
            for i in 0..=n {
                let fac = (n - i) as f64 / n as f64;
                let xc = 1.8 * fac;
                let r = 1.0 + 2.4 * fac;
                let disc = 4.0 * xc * xc - 4.0 * (1.0 + tan2) * (xc * xc - r * r);
                let x = (2.0 * xc - disc.sqrt()) / (2.0 * (1.0 + tan2));
                let y = -theta.tan() * x;
                nodes.push([x, y]);
            }
        }
        Self::from_nodes(n, m, nodes)
    }

    /// Cartesian channel with the centerline node row shifted up/down by
    /// `dy_perturb` in alternating node columns.
    pub fn perturbed_channel(
        ni: usize,
        nj: usize,
        x: (f64, f64),
        y: (f64, f64),
        dy_perturb: f64,
    ) -> Result<Self, Error> {
        if nj % 2 != 0 {
            return Err(Error::Config(
                "perturbed channel needs an even cell count in y".into(),
            ));
        }
        let dx = (x.1 - x.0) / ni as f64;
        let dy = (y.1 - y.0) / nj as f64;
        if dy_perturb.abs() >= 0.5 * dy {
            return Err(Error::Config(format!(
                "centerline perturbation {dy_perturb} exceeds half the cell height {dy}"
            )));
        }
        let jc = nj / 2;
        let mut nodes = Vec::with_capacity((ni + 1) * (nj + 1));
        for j in 0..=nj {
            for i in 0..=ni {
                let mut yy = y.0 + j as f64 * dy;
                if j == jc {
                    yy += if i % 2 == 0 { dy_perturb } else { -dy_perturb };
                }
                nodes.push([x.0 + i as f64 * dx, yy]);
            }
        }
        Self::from_nodes(ni, nj, nodes)
    }

    /// Channel whose bottom wall turns into a ramp of the given angle at
    /// `ramp_start`; node rows blend linearly to the flat top.
    pub fn ramp(
        ni: usize,
        nj: usize,
        x: (f64, f64),
        y: (f64, f64),
        ramp_start: f64,
        angle_deg: f64,
    ) -> Result<Self, Error> {
        let dx = (x.1 - x.0) / ni as f64;
        let tan = angle_deg.to_radians().tan();
        let mut nodes = Vec::with_capacity((ni + 1) * (nj + 1));
        for j in 0..=nj {
            let eta = j as f64 / nj as f64;
            for i in 0..=ni {
                let xx = x.0 + i as f64 * dx;
                let yb = if xx > ramp_start {
                    y.0 + (xx - ramp_start) * tan
                } else {
                    y.0
                };
                nodes.push([xx, yb + (y.1 - yb) * eta]);
            }
        }
        Self::from_nodes(ni, nj, nodes)
    }
}
