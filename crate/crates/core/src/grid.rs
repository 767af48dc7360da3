//! Square-spaced sample grids for finite-difference work.

use crate::field::Field2;
use crate::scalar::Real;

/// Values of a graph function on a uniform grid with spacing h, with a mask
/// selecting the in-domain points. Row-major over (i, j) = (x, y) indices.
#[derive(Debug, Clone)]
pub struct Grid2D<T> {
    nx: usize,
    ny: usize,
    h: T,
    x0: T,
    y0: T,
    values: Vec<T>,
    mask: Vec<bool>,
}

impl<T: Real> Grid2D<T> {
    /// Sample `f` on the full rectangle [x0, x0+(nx−1)h] × [y0, y0+(ny−1)h].
    pub fn from_fn(x0: T, y0: T, nx: usize, ny: usize, h: T, f: impl Fn(T, T) -> T) -> Self {
        let mut values = Vec::with_capacity(nx * ny);
        for i in 0..nx {
            for j in 0..ny {
                let x = x0 + h * T::from_usize(i).unwrap();
                let y = y0 + h * T::from_usize(j).unwrap();
                values.push(f(x, y));
            }
        }
        Grid2D {
            nx,
            ny,
            h,
            x0,
            y0,
            values,
            mask: vec![true; nx * ny],
        }
    }

    /// Sample a field, keeping only points where `inside` holds. Values
    /// outside the mask are still sampled when the field is defined there
    /// (they never enter statistics but may pad stencils).
    pub fn from_field(
        field: &dyn Field2<T>,
        x0: T,
        y0: T,
        nx: usize,
        ny: usize,
        h: T,
        inside: impl Fn(T, T) -> bool,
    ) -> Self {
        let mut grid = Self::from_fn(x0, y0, nx, ny, h, |x, y| field.value(x, y));
        for i in 0..nx {
            for j in 0..ny {
                let (x, y) = (grid.x(i), grid.y(j));
                grid.mask[i * ny + j] = inside(x, y);
            }
        }
        grid
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn h(&self) -> T {
        self.h
    }

    pub fn x(&self, i: usize) -> T {
        self.x0 + self.h * T::from_usize(i).unwrap()
    }

    pub fn y(&self, j: usize) -> T {
        self.y0 + self.h * T::from_usize(j).unwrap()
    }

    pub fn at(&self, i: usize, j: usize) -> T {
        self.values[i * self.ny + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.values[i * self.ny + j] = v;
    }

    pub fn in_mask(&self, i: usize, j: usize) -> bool {
        self.mask[i * self.ny + j]
    }

    pub fn mask_out(&mut self, i: usize, j: usize) {
        self.mask[i * self.ny + j] = false;
    }

    /// Interior point whose full 9-point stencil lies in the mask (the
    /// 4-point cross for u_xy needs the diagonals too).
    pub fn is_stencil_interior(&self, i: usize, j: usize) -> bool {
        if i == 0 || j == 0 || i + 1 >= self.nx || j + 1 >= self.ny || !self.in_mask(i, j) {
            return false;
        }
        for di in [-1isize, 0, 1] {
            for dj in [-1isize, 0, 1] {
                let ii = (i as isize + di) as usize;
                let jj = (j as isize + dj) as usize;
                if !self.in_mask(ii, jj) {
                    return false;
                }
            }
        }
        true
    }
}
