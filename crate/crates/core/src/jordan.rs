//! Jordan normal form of a square matrix whose characteristic polynomial
//! splits over its field.

use serde::Serialize;

use crate::error::{precondition, Result};
use crate::ffield::Fe;
use crate::linalg::{Echelon, Matrix};
use crate::poly::{self, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct JordanBlock {
    pub eigenvalue: Fe,
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct JordanForm {
    /// Blocks in the order their chains occupy the columns of `transition`;
    /// grouped by eigenvalue (increasing encoding), larger blocks first.
    pub blocks: Vec<JordanBlock>,
    pub transition: Matrix,
    pub jordan: Matrix,
    pub char_poly: Poly,
}

impl JordanForm {
    /// `(eigenvalue, size, multiplicity)` triples in canonical order.
    pub fn multiset(&self) -> Vec<(Fe, usize, usize)> {
        let mut sorted = self.blocks.clone();
        sorted.sort();
        let mut out: Vec<(Fe, usize, usize)> = Vec::new();
        for b in sorted {
            match out.last_mut() {
                Some(last) if last.0 == b.eigenvalue && last.1 == b.size => last.2 += 1,
                _ => out.push((b.eigenvalue, b.size, 1)),
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks.iter().all(|b| b.size == 1)
    }

    /// Minimal polynomial read off the blocks: `Π (x - λ)^{max size}`.
    pub fn min_poly(&self) -> Poly {
        let f = self.transition.field();
        let mut out: Poly = vec![1];
        let mut ms = self.multiset();
        ms.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 = a.1.max(b.1);
                true
            } else {
                false
            }
        });
        for (lambda, size, _) in ms {
            for _ in 0..size {
                out = poly::mul(f, &out, &[f.neg(lambda), 1]);
            }
        }
        out
    }
}

pub fn jordan_form(a: &Matrix) -> Result<JordanForm> {
    crate::linalg::check_square(a)?;
    let f = a.field().clone();
    let n = a.rows();
    let cp = poly::char_poly(a);
    let roots = poly::roots(&f, &cp);
    let total: usize = roots.iter().map(|r| r.1).sum();
    if total != n {
        return precondition(format!(
            "characteristic polynomial {} does not split over GF({})",
            poly::format(&f, &cp),
            f.size()
        ));
    }
    let mut blocks = Vec::new();
    let mut columns: Vec<Vec<Fe>> = Vec::with_capacity(n);
    for &(lambda, mult) in &roots {
        let nil = a.shift(lambda);
        // kernels of successive powers until the generalized eigenspace
        let mut powers = vec![Matrix::identity(&f, n)];
        let mut kernels: Vec<Vec<Vec<Fe>>> = vec![Vec::new()];
        loop {
            let next = powers.last().unwrap().mul(&nil);
            let ker = next.nullspace();
            let done = ker.len() == mult;
            powers.push(next);
            kernels.push(ker);
            if done {
                break;
            }
        }
        let depth = kernels.len() - 1;
        // chains: (top vector, length)
        let mut chains: Vec<(Vec<Fe>, usize)> = Vec::new();
        for k in (1..=depth).rev() {
            let mut span = Echelon::new(&f, n);
            for v in &kernels[k - 1] {
                span.insert(v.clone());
            }
            for (top, len) in &chains {
                span.insert(powers[len - k].mul_vec(top));
            }
            for b in &kernels[k] {
                if span.insert(b.clone()) {
                    chains.push((b.clone(), k));
                }
            }
        }
        for (top, len) in chains {
            for j in (0..len).rev() {
                columns.push(powers[j].mul_vec(&top));
            }
            blocks.push(JordanBlock { eigenvalue: lambda, size: len });
        }
    }
    let transition = Matrix::from_columns(&f, n, &columns);
    let mut jordan = Matrix::zeros(&f, n, n);
    let mut at = 0;
    for b in &blocks {
        for i in 0..b.size {
            jordan.set(at + i, at + i, b.eigenvalue);
            if i + 1 < b.size {
                jordan.set(at + i, at + i + 1, 1);
            }
        }
        at += b.size;
    }
    Ok(JordanForm { blocks, transition, jordan, char_poly: cp })
}

/// Minimal polynomial from Krylov sequences of the standard basis vectors,
/// independent of any eigenvalue computation.
pub fn min_poly_krylov(a: &Matrix) -> Poly {
    let f = a.field().clone();
    let n = a.rows();
    let mut acc: Poly = vec![1];
    let mut covered = Echelon::new(&f, n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if covered.contains(&e) {
            continue;
        }
        let mut ech = Echelon::with_tracking(&f, n);
        let mut v = e;
        let mut seq = Vec::new();
        loop {
            if let Some(c) = ech.input_coordinates(&v) {
                // v = A^k e = Σ c_j A^j e
                let k = seq.len();
                let mut local: Poly = vec![0; k + 1];
                local[k] = 1;
                for (j, &cj) in c.iter().enumerate() {
                    local[j] = f.neg(cj);
                }
                acc = poly::lcm(&f, &acc, &poly::trim(local));
                break;
            }
            ech.insert(v.clone());
            covered.insert(v.clone());
            seq.push(v.clone());
            v = a.mul_vec(&v);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::construct_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn conjugated_jordan_matrices_are_recovered() {
        let f = construct_field(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let specs: Vec<Vec<JordanBlock>> = vec![
            vec![JordanBlock { eigenvalue: 1, size: 3 }, JordanBlock { eigenvalue: 1, size: 1 }],
            vec![
                JordanBlock { eigenvalue: 2, size: 2 },
                JordanBlock { eigenvalue: 2, size: 2 },
                JordanBlock { eigenvalue: 0, size: 1 },
            ],
            vec![JordanBlock { eigenvalue: 6, size: 5 }],
            vec![
                JordanBlock { eigenvalue: 3, size: 1 },
                JordanBlock { eigenvalue: 4, size: 1 },
                JordanBlock { eigenvalue: 3, size: 2 },
            ],
        ];
        for spec in specs {
            let n: usize = spec.iter().map(|b| b.size).sum();
            let mut j = Matrix::zeros(&f, n, n);
            let mut at = 0;
            for b in &spec {
                for i in 0..b.size {
                    j.set(at + i, at + i, b.eigenvalue);
                    if i + 1 < b.size {
                        j.set(at + i, at + i + 1, 1);
                    }
                }
                at += b.size;
            }
            let p = loop {
                let rows: Vec<Vec<Fe>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..7)).collect()).collect();
                let p = Matrix::from_rows(&f, &rows);
                if p.rank() == n {
                    break p;
                }
            };
            // A = P J P^{-1} computed as the solution of A P = P J
            let pinv = inverse(&p);
            let a = p.mul(&j).mul(&pinv);
            let jf = jordan_form(&a).unwrap();
            assert_eq!(a.mul(&jf.transition), jf.transition.mul(&jf.jordan));
            assert_eq!(jf.transition.rank(), n);
            let mut want = spec.clone();
            want.sort();
            let mut got = jf.blocks.clone();
            got.sort();
            assert_eq!(got, want);
            assert_eq!(jf.min_poly(), min_poly_krylov(&a));
        }
    }

    fn inverse(m: &Matrix) -> Matrix {
        let n = m.rows();
        let f = m.field();
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for k in 0..n {
                aug.set(i, k, m.get(i, k));
            }
            aug.set(i, n + i, 1);
        }
        aug.rref();
        let mut inv = Matrix::zeros(f, n, n);
        for i in 0..n {
            for k in 0..n {
                inv.set(i, k, aug.get(i, n + k));
            }
        }
        inv
    }

    #[test]
    fn non_split_is_an_error() {
        let f = construct_field(3, 1).unwrap();
        // companion matrix of x^2 + 1, irreducible over F_3
        let a = Matrix::from_rows(&f, &[vec![0, 2], vec![1, 0]]);
        assert!(jordan_form(&a).is_err());
        assert_eq!(min_poly_krylov(&a), vec![1, 0, 1]);
    }
}
