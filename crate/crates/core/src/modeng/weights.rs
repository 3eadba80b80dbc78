//! Eigenspaces of the torus element `h(ω)` on an induced module.

use std::collections::BTreeMap;

use crate::ffield::{Fe, GfField};

use super::induced::{InducedModule, MonomialOp};

#[derive(Debug, Clone)]
pub struct WeightSpaces {
    /// Eigenvalue of `h(ω)` to a basis of its eigenspace (dense vectors).
    pub spaces: BTreeMap<Fe, Vec<Vec<Fe>>>,
    pub dim: usize,
}

impl WeightSpaces {
    pub fn total(&self) -> usize {
        self.spaces.values().map(|v| v.len()).sum()
    }

    /// `dim - Σ dim(eigenspace)`: zero exactly when `h(ω)` is diagonalizable
    /// over the coefficient field.
    pub fn deficiency(&self) -> usize {
        self.dim - self.total()
    }

    pub fn dims(&self) -> BTreeMap<Fe, usize> {
        self.spaces.iter().map(|(&k, v)| (k, v.len())).collect()
    }
}

pub fn weight_spaces(module: &InducedModule) -> WeightSpaces {
    let sl2 = module.sl2();
    let h = sl2.h(module.level().generator()).unwrap();
    let op = module.monomial(&h).unwrap();
    monomial_eigenspaces(module.coeff(), &op)
}

/// Eigenvectors of a monomial operator, cycle by cycle: on a cycle
/// `j_0 → j_1 → … → j_{L-1} → j_0` with scalars `c_i`, the eigenvalues are
/// the `L`-th roots of `Π c_i`, each with a one-dimensional eigenspace.
pub fn monomial_eigenspaces(f: &GfField, op: &MonomialOp) -> WeightSpaces {
    let n = op.dim();
    let mut seen = vec![false; n];
    let mut spaces: BTreeMap<Fe, Vec<Vec<Fe>>> = BTreeMap::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cycle.push(j);
            j = op.perm[j] as usize;
        }
        let len = cycle.len() as u64;
        let prod = cycle.iter().fold(1, |acc, &j| f.mul(acc, op.scale[j]));
        for lambda in f.units().filter(|&l| f.pow(l, len) == prod) {
            let linv = f.inv(lambda).unwrap();
            let mut v = vec![0; n];
            let mut x = 1;
            for &j in &cycle {
                v[j] = x;
                x = f.mul(f.mul(x, op.scale[j]), linv);
            }
            spaces.entry(lambda).or_default().push(v);
        }
    }
    WeightSpaces { spaces, dim: n }
}
