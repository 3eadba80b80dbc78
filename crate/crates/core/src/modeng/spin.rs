//! Submodule spinning: the smallest subspace containing given vectors that is
//! stable under a set of linear operators.

use crate::ffield::{Fe, Field};
use crate::linalg::{Echelon, Matrix};

use super::induced::MonomialOp;

pub trait Operator {
    fn apply(&self, v: &[Fe]) -> Vec<Fe>;
}

impl Operator for MonomialOp {
    fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        MonomialOp::apply(self, v)
    }
}

impl Operator for Matrix {
    fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        self.mul_vec(v)
    }
}

#[derive(Clone)]
pub struct SpinResult {
    pub basis: Echelon,
    /// `false` when spinning stopped early because every target was reached.
    pub complete: bool,
}

impl SpinResult {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.basis.contains(v)
    }

    pub fn is_full(&self) -> bool {
        self.basis.is_full()
    }
}

/// Closure of `seeds` under `ops`.
pub fn spin<O: Operator>(field: &Field, dim: usize, ops: &[O], seeds: &[Vec<Fe>]) -> SpinResult {
    spin_until(field, dim, ops, seeds, &[])
}

/// Like [`spin`], but stops as soon as every vector in `targets` lies in the
/// span (when `targets` is nonempty). Membership is tested whenever the rank
/// has grown by a fixed stride, and once more at the end.
pub fn spin_until<O: Operator>(
    field: &Field,
    dim: usize,
    ops: &[O],
    seeds: &[Vec<Fe>],
    targets: &[Vec<Fe>],
) -> SpinResult {
    let mut ech = Echelon::new(field, dim);
    for s in seeds {
        ech.insert(s.clone());
    }
    let stride = (dim / 16).max(8);
    let mut next_check = ech.rank();
    let mut done = 0;
    while done < ech.rank() && !ech.is_full() {
        if !targets.is_empty() && ech.rank() >= next_check {
            if targets.iter().all(|t| ech.contains(t)) {
                return SpinResult { basis: ech, complete: false };
            }
            next_check = ech.rank() + stride;
        }
        let row = ech.rows()[done].clone();
        for op in ops {
            ech.insert(op.apply(&row));
            if ech.is_full() {
                break;
            }
        }
        done += 1;
    }
    SpinResult { basis: ech, complete: true }
}

/// Checks that every basis vector's image under every operator stays in the
/// span.
pub fn is_stable<O: Operator>(basis: &Echelon, ops: &[O]) -> bool {
    basis.rows().iter().all(|row| ops.iter().all(|op| basis.contains(&op.apply(row))))
}

/// Matrix of `op` on the subspace spanned by `basis` (columns are images of
/// the echelon rows, in their coordinates), or `None` if not stable.
pub fn restrict<O: Operator>(basis: &Echelon, op: &O) -> Option<Matrix> {
    let k = basis.rank();
    let mut cols = Vec::with_capacity(k);
    for row in basis.rows() {
        cols.push(basis.coordinates(&op.apply(row))?);
    }
    Some(Matrix::from_columns(basis.field(), k, &cols))
}

/// Matrix of `op` on the quotient by `basis`, in the basis of standard
/// vectors at the non-pivot columns.
pub fn quotient<O: Operator>(basis: &Echelon, op: &O) -> Matrix {
    let free = basis.non_pivots();
    let n = basis.dim();
    let mut cols = Vec::with_capacity(free.len());
    for &c in &free {
        let mut e = vec![0; n];
        e[c] = 1;
        let mut img = op.apply(&e);
        basis.reduce(&mut img);
        cols.push(free.iter().map(|&j| img[j]).collect::<Vec<Fe>>());
    }
    Matrix::from_columns(basis.field(), free.len(), &cols)
}
