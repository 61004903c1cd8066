//! Cell-state storage with ghost padding.

use crate::gas::{Conserved1, Conserved2};

/// Ghost layers on every boundary; two are needed by the four-cell stencil
/// of the hybrid scheme.
pub const GHOST_LAYERS: usize = 2;

/// 1D solution array over `n` interior cells plus ghost padding. Interior
/// cells are indexed `0..n`, ghosts with negative or `>= n` indices.
#[derive(Debug, Clone)]
pub struct Field1 {
    data: Vec<Conserved1>,
    n: usize,
}

impl Field1 {
    pub fn new(n: usize, init: Conserved1) -> Self {
        Self {
            data: vec![init; n + 2 * GHOST_LAYERS],
            n,
        }
    }

    pub fn from_cells(cells: Vec<Conserved1>) -> Self {
        let n = cells.len();
        let mut f = Self::new(n, cells[0]);
        for (i, c) in cells.into_iter().enumerate() {
            *f.cell_mut(i as isize) = c;
        }
        f
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: isize) -> usize {
        debug_assert!(i >= -(GHOST_LAYERS as isize) && i < (self.n + GHOST_LAYERS) as isize);
        (i + GHOST_LAYERS as isize) as usize
    }

    #[inline]
    pub fn cell(&self, i: isize) -> &Conserved1 {
        &self.data[self.idx(i)]
    }

    #[inline]
    pub fn cell_mut(&mut self, i: isize) -> &mut Conserved1 {
        let k = self.idx(i);
        &mut self.data[k]
    }

    pub fn interior(&self) -> &[Conserved1] {
        &self.data[GHOST_LAYERS..GHOST_LAYERS + self.n]
    }

    pub fn interior_mut(&mut self) -> &mut [Conserved1] {
        &mut self.data[GHOST_LAYERS..GHOST_LAYERS + self.n]
    }
}

/// 2D solution array over `ni x nj` interior cells plus ghost padding,
/// row-major in `i`.
#[derive(Debug, Clone)]
pub struct Field2 {
    data: Vec<Conserved2>,
    ni: usize,
    nj: usize,
}

impl Field2 {
    pub fn new(ni: usize, nj: usize, init: Conserved2) -> Self {
        Self {
            data: vec![init; (ni + 2 * GHOST_LAYERS) * (nj + 2 * GHOST_LAYERS)],
            ni,
            nj,
        }
    }

    #[inline]
    pub fn ni(&self) -> usize {
        self.ni
    }

    #[inline]
    pub fn nj(&self) -> usize {
        self.nj
    }

    #[inline]
    fn idx(&self, i: isize, j: isize) -> usize {
        let g = GHOST_LAYERS as isize;
        debug_assert!(i >= -g && i < self.ni as isize + g);
        debug_assert!(j >= -g && j < self.nj as isize + g);
        ((j + g) as usize) * (self.ni + 2 * GHOST_LAYERS) + (i + g) as usize
    }

    #[inline]
    pub fn cell(&self, i: isize, j: isize) -> &Conserved2 {
        &self.data[self.idx(i, j)]
    }

    #[inline]
    pub fn cell_mut(&mut self, i: isize, j: isize) -> &mut Conserved2 {
        let k = self.idx(i, j);
        &mut self.data[k]
    }

    /// Visit interior cells in deterministic row-major order.
    pub fn for_each_interior(&self, mut f: impl FnMut(usize, usize, &Conserved2)) {
        for j in 0..self.nj {
            for i in 0..self.ni {
                f(i, j, self.cell(i as isize, j as isize));
            }
        }
    }
}
