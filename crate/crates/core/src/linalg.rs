//! Dense exact linear algebra over a [`GfField`].

use std::fmt;

use crate::error::{precondition, Result};
use crate::ffield::{Fe, Field, GfField};

#[derive(Clone)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Matrix) -> bool {
        self.field.same_as(&other.field)
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over GF({})", self.rows, self.cols, self.field.size())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Fe>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, rows: usize, cols: &[Vec<Fe>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Fe] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    f.axpy(dst, a, other.row(k));
                }
            }
        }
        out
    }

    /// `A v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, c: Fe) -> Matrix {
        let mut m = self.clone();
        m.field.clone().scale(&mut m.data, c);
        m
    }

    /// `A - λ I`.
    pub fn shift(&self, lambda: Fe) -> Matrix {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = self.field.sub(m.get(i, i), lambda);
            m.set(i, i, v);
        }
        m
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..self.cols {
                    self.data.swap(pr * self.cols + k, r * self.cols + k);
                }
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            f.scale(self.row_mut(r), inv);
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i != r {
                    let x = self.get(i, c);
                    if x != 0 {
                        f.axpy(self.row_mut(i), f.neg(x), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> Fe {
        assert!(self.is_square());
        let f = self.field.clone();
        let mut m = self.clone();
        let n = self.rows;
        let mut det = 1;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                for k in 0..n {
                    m.data.swap(pr * n + k, c * n + k);
                }
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).unwrap();
            let pivot_row = m.row(c).to_vec();
            for i in c + 1..n {
                let x = m.get(i, c);
                if x != 0 {
                    f.axpy(m.row_mut(i), f.neg(f.mul(x, inv)), &pivot_row);
                }
            }
        }
        det
    }

    /// `f(A)` by Horner's rule; coefficients low to high.
    pub fn eval_poly(&self, coeffs: &[Fe]) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(&self.field, n, n);
        for &c in coeffs.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }
}

const NO_ROW: u32 = u32::MAX;

/// An incrementally built semi-echelon basis.
///
/// Row `i` has a leading 1 at `pivots[i]` and zeros at the pivots of all
/// earlier rows, so reducing against the rows in insertion order clears every
/// pivot. Optionally tracks each row as a combination of the inserted inputs.
#[derive(Clone)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
    row_of_col: Vec<u32>,
    track: Option<Vec<Vec<Fe>>>,
    inputs: usize,
}

impl fmt::Debug for Echelon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Echelon(rank {} of {}, pivots {:?})", self.rank(), self.dim, self.pivots)
    }
}

impl Echelon {
    pub fn new(field: &Field, dim: usize) -> Echelon {
        Echelon {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_col: vec![NO_ROW; dim],
            track: None,
            inputs: 0,
        }
    }

    pub fn with_tracking(field: &Field, dim: usize) -> Echelon {
        let mut e = Echelon::new(field, dim);
        e.track = Some(Vec::new());
        e
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Subtracts multiples of the basis rows; returns the multipliers.
    fn reduce_with(&self, v: &mut [Fe], mut coeffs: Option<&mut Vec<Fe>>) {
        let f = &self.field;
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = v[p];
            if c != 0 {
                f.axpy(&mut v[p..], f.neg(c), &row[p..]);
                if let Some(cs) = coeffs.as_deref_mut() {
                    cs[i] = c;
                }
            }
        }
    }

    pub fn reduce(&self, v: &mut [Fe]) {
        assert_eq!(v.len(), self.dim);
        self.reduce_with(v, None);
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Fe>) -> bool {
        assert_eq!(v.len(), self.dim);
        let input = self.inputs;
        self.inputs += 1;
        let mut coeffs = vec![0; self.rows.len()];
        self.reduce_with(&mut v, Some(&mut coeffs));
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field.clone();
        let inv = f.inv(v[p]).unwrap();
        f.scale(&mut v[p..], inv);
        if let Some(track) = self.track.as_mut() {
            // row = inv * (input - Σ c_i row_i)
            let mut combo = vec![0; input + 1];
            combo[input] = 1;
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    let t = &track[i];
                    f.axpy(&mut combo[..t.len()], f.neg(c), t);
                }
            }
            f.scale(&mut combo, inv);
            track.push(combo);
        }
        self.row_of_col[p] = self.rows.len() as u32;
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` with respect to the echelon rows, or `None` when
    /// `v` is outside the span.
    pub fn coordinates(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        let mut w = v.to_vec();
        let mut coeffs = vec![0; self.rows.len()];
        self.reduce_with(&mut w, Some(&mut coeffs));
        w.iter().all(|&x| x == 0).then_some(coeffs)
    }

    /// Coordinates of `v` as a combination of the inserted input vectors
    /// (inputs that did not enlarge the span get coefficient 0).
    pub fn input_coordinates(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        let track = self.track.as_ref().expect("tracking disabled");
        let coeffs = self.coordinates(v)?;
        let f = &self.field;
        let mut out = vec![0; self.inputs];
        for (c, t) in coeffs.iter().zip(track) {
            if *c != 0 {
                f.axpy(&mut out[..t.len()], *c, t);
            }
        }
        Some(out)
    }

    pub fn row_of_pivot(&self, col: usize) -> Option<usize> {
        let r = self.row_of_col[col];
        (r != NO_ROW).then_some(r as usize)
    }

    /// Columns without a pivot, in increasing order: a basis of a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.row_of_col[c] == NO_ROW).collect()
    }
}

/// Inner product helper.
pub fn dot(f: &GfField, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

pub fn check_square(m: &Matrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        precondition(format!("expected a square matrix, got {}x{}", m.rows, m.cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::construct_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let data: Vec<Vec<Fe>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(0..f.size())).collect())
            .collect();
        Matrix::from_rows(f, &data)
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let f = construct_field(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = random_matrix(&f, 4, 7, &mut rng);
            let ns = a.nullspace();
            assert_eq!(ns.len() + a.rank(), 7);
            for v in ns {
                assert!(a.mul_vec(&v).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn rank_by_enumeration_over_f2() {
        // oracle: rank = log2 |column space| computed by enumerating A x
        let f = construct_field(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let a = random_matrix(&f, 4, 5, &mut rng);
            let mut images = std::collections::HashSet::new();
            for bits in 0u32..32 {
                let x: Vec<Fe> = (0..5).map(|i| (bits >> i) & 1).collect();
                images.insert(a.mul_vec(&x));
            }
            assert_eq!(1usize << a.rank(), images.len());
        }
    }

    #[test]
    fn echelon_tracks_inputs() {
        let f = construct_field(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let vs: Vec<Vec<Fe>> = (0..5).map(|_| (0..6).map(|_| rng.gen_range(0..25)).collect()).collect();
        let mut e = Echelon::with_tracking(&f, 6);
        for v in &vs {
            e.insert(v.clone());
        }
        // a combination of inputs is recovered
        let mut target = vec![0; 6];
        f.axpy(&mut target, 3, &vs[1]);
        f.axpy(&mut target, 7, &vs[4]);
        let c = e.input_coordinates(&target).unwrap();
        let mut rebuilt = vec![0; 6];
        for (ci, v) in c.iter().zip(&vs) {
            f.axpy(&mut rebuilt, *ci, v);
        }
        assert_eq!(rebuilt, target);
        assert!(e.contains(&target));
    }

    #[test]
    fn det_multiplicative() {
        let f = construct_field(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let a = random_matrix(&f, 4, 4, &mut rng);
            let b = random_matrix(&f, 4, 4, &mut rng);
            assert_eq!(a.mul(&b).det(), f.mul(a.det(), b.det()));
            assert_eq!(a.det() == 0, a.rank() < 4);
        }
    }
}
