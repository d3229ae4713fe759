//! Dense exact linear algebra over [`Field`]: reduced row echelon forms, kernels,
//! canonical solutions, and echelon subspaces.

use crate::scalar::{Field, Scalar};

pub type Row = Vec<Scalar>;

/// Gauss-Jordan elimination in place. Zero rows are removed; returns the pivot
/// columns, one per remaining row, strictly increasing.
pub fn rref(rows: &mut Vec<Row>, _field: Field) -> Vec<usize> {
    let mut transform: Vec<Row> = Vec::new();
    rref_impl(rows, &mut transform, false)
}

/// Gauss-Jordan elimination that also records the row operations.
///
/// On return `transform * original = rows`, where `rows` keeps all original rows
/// (zero rows moved to the bottom) so `transform` is square and invertible.
pub fn rref_with_transform(rows: &mut Vec<Row>, field: Field) -> (Vec<usize>, Vec<Row>) {
    let n = rows.len();
    let mut transform: Vec<Row> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect();
    let pivots = rref_impl(rows, &mut transform, true);
    (pivots, transform)
}

fn rref_impl(rows: &mut Vec<Row>, transform: &mut [Row], track: bool) -> Vec<usize> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        if track {
            transform.swap(rank, found);
        }
        let inv = rows[rank][col].inverse().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[rank].iter_mut() {
                *x = &*x * &inv;
            }
            if track {
                for x in transform[rank].iter_mut() {
                    *x = &*x * &inv;
                }
            }
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            let (pivot_row, target) = borrow_two(rows, rank, r);
            axpy(target, &factor, pivot_row);
            if track {
                let (pivot_row, target) = borrow_two(transform, rank, r);
                axpy(target, &factor, pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    if !track {
        rows.truncate(rank);
    }
    pivots
}

fn borrow_two<T>(v: &mut [T], a: usize, b: usize) -> (&T, &mut T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}

/// `target -= factor * source`
fn axpy(target: &mut Row, factor: &Scalar, source: &Row) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= &(factor * s);
        }
    }
}

/// Basis of `{x : M x = 0}` for `M` given by rows of width `width`, one vector per
/// free column, with that free coordinate set to 1.
pub fn kernel(matrix_rows: &[Row], width: usize, field: Field) -> Vec<Row> {
    let mut rows = matrix_rows.to_vec();
    let pivots = rref(&mut rows, field);
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); width];
        v[free] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&rows[r][free];
        }
        basis.push(v);
    }
    basis
}

/// Solves `M x = c` once `M` has been reduced, giving the solution whose free
/// coordinates are all zero.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    field: Field,
    rows: usize,
    cols: usize,
    pivots: Vec<usize>,
    transform: Vec<Row>,
}

impl LinearSolver {
    /// `matrix_rows` is `M` with `rows` rows of width `cols`.
    pub fn new(matrix_rows: Vec<Row>, rows: usize, cols: usize, field: Field) -> Self {
        debug_assert_eq!(matrix_rows.len(), rows);
        let mut m = matrix_rows;
        let (pivots, transform) = rref_with_transform(&mut m, field);
        LinearSolver {
            field,
            rows,
            cols,
            pivots,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Row operations reducing the matrix: `transform * M` is in RREF.
    pub fn transform(&self) -> &[Row] {
        &self.transform
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Dimension of the solution space of the homogeneous system.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Canonical solution, or `None` when `c` is outside the column space.
    pub fn solve(&self, c: &[Scalar]) -> Option<Row> {
        debug_assert_eq!(c.len(), self.rows);
        let tc: Vec<Scalar> = self.transform.iter().map(|t| dot(t, c, self.field)).collect();
        if tc[self.rank()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in self.pivots.iter().enumerate() {
            x[p] = tc[r].clone();
        }
        Some(x)
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// A subspace held as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    field: Field,
    width: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

/// Outcome of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction {
    /// What is left after subtracting the subspace component.
    pub residue: Row,
    /// Coefficients of the subtracted component on the echelon rows.
    pub coefficients: Row,
}

impl Echelon {
    pub fn empty(width: usize, field: Field) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(mut rows: Vec<Row>, width: usize, field: Field) -> Self {
        let pivots = rref(&mut rows, field);
        Echelon {
            field,
            width,
            rows,
            pivots,
        }
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn reduce(&self, v: &[Scalar]) -> Reduction {
        let mut residue = v.to_vec();
        let mut coefficients = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = residue[p].clone();
            if !c.is_zero() {
                axpy(&mut residue, &c, row);
            }
            coefficients.push(c);
        }
        Reduction {
            residue,
            coefficients,
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).residue.iter().all(Scalar::is_zero)
    }

    /// Adds a vector to the span; returns false if it was already there.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        if self.contains(v) {
            return false;
        }
        let mut rows = std::mem::take(&mut self.rows);
        rows.push(v.to_vec());
        *self = Echelon::from_rows(rows, self.width, self.field);
        true
    }
}
