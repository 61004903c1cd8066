//! Uniform 1D grid.

#[derive(Debug, Clone, Copy)]
pub struct Grid1D {
    pub n_cells: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub dx: f64,
}

impl Grid1D {
    pub fn new(n_cells: usize, x_min: f64, x_max: f64) -> Self {
        assert!(n_cells > 0 && x_max > x_min);
        Self {
            n_cells,
            x_min,
            x_max,
            dx: (x_max - x_min) / n_cells as f64,
        }
    }

    #[inline]
    pub fn cell_center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }

    #[inline]
    pub fn cell_bounds(&self, i: usize) -> (f64, f64) {
        let lo = self.x_min + i as f64 * self.dx;
        (lo, lo + self.dx)
    }
}
