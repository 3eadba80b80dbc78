//! Irreducibility testing for matrix representations over finite fields
//! (Norton's criterion with random algebra elements), and composition
//! factors by repeated splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{precondition, Result};
use crate::ffield::{Fe, Field};
use crate::linalg::{Echelon, Matrix};
use crate::poly;

use super::induced::InducedModule;
use super::spin::{quotient, restrict, spin};
use super::weights::monomial_eigenspaces;

pub const DEFAULT_SAMPLES: usize = 200;
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 20;

/// Generators acting on column vectors.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub field: Field,
    pub gens: Vec<Matrix>,
    pub dim: usize,
}

impl MatrixRep {
    pub fn new(field: &Field, dim: usize, gens: Vec<Matrix>) -> MatrixRep {
        for g in &gens {
            assert_eq!((g.rows(), g.cols()), (dim, dim));
        }
        MatrixRep { field: field.clone(), gens, dim }
    }

    pub fn from_module(m: &InducedModule) -> MatrixRep {
        let gens = m.generator_ops().iter().map(|op| op.to_matrix()).collect();
        MatrixRep::new(m.coeff(), m.dim(), gens)
    }

    pub fn transpose(&self) -> MatrixRep {
        MatrixRep::new(&self.field, self.dim, self.gens.iter().map(|g| g.transpose()).collect())
    }

    pub fn spin(&self, seeds: &[Vec<Fe>]) -> Echelon {
        spin(&self.field, self.dim, &self.gens, seeds).basis
    }

    /// Representation on a stable subspace.
    pub fn submodule(&self, basis: &Echelon) -> MatrixRep {
        let gens = self.gens.iter().map(|g| restrict(basis, g).expect("subspace is not stable")).collect();
        MatrixRep::new(&self.field, basis.rank(), gens)
    }

    pub fn quotient(&self, basis: &Echelon) -> MatrixRep {
        let gens = self.gens.iter().map(|g| quotient(basis, g)).collect();
        MatrixRep::new(&self.field, self.dim - basis.rank(), gens)
    }
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Simple,
    /// A proper nonzero stable subspace.
    Reducible(Echelon),
    Undecided,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Simple => "simple",
            Verdict::Reducible(_) => "reducible",
            Verdict::Undecided => "undecided",
        }
    }
}

fn random_matrix_combination(rng: &mut ChaCha8Rng, field: &Field, pool: &[Matrix]) -> Matrix {
    let q = field.size();
    let a = &pool[rng.gen_range(0..pool.len())];
    let b = &pool[rng.gen_range(0..pool.len())];
    let c = &pool[rng.gen_range(0..pool.len())];
    a.mul(b).add(&c.scaled(rng.gen_range(1..q)))
}

/// Largest number of `F[A]`-lines of a kernel that [`is_simple`] will spin
/// through exhaustively.
pub const LINE_BUDGET: u64 = 4096;

/// Randomized irreducibility test. Deterministic for a fixed seed.
///
/// For a random algebra element `A` and an irreducible factor `f` of its
/// characteristic polynomial, `N = ker f(A)` is a vector space over
/// `K = F[x]/(f)`. Any proper submodule meets `N` or has an annihilator
/// meeting the kernel of `f(A)^T`, so spinning one vector from every `K`-line
/// of both kernels decides simplicity. Norton's test is the case `dim_K N = 1`.
pub fn is_simple(rep: &MatrixRep, seed: u64, samples: usize) -> Result<Verdict> {
    if rep.dim == 0 {
        return precondition("the zero module has no irreducibility verdict");
    }
    if rep.dim == 1 {
        return Ok(Verdict::Simple);
    }
    let f = &rep.field;
    let n = rep.dim;
    if rep.gens.is_empty() {
        let mut e = vec![0; n];
        e[0] = 1;
        let mut ech = Echelon::new(f, n);
        ech.insert(e);
        return Ok(Verdict::Reducible(ech));
    }
    let dual = rep.transpose();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = rep.gens.clone();
    let q = f.size() as u64;
    for _ in 0..samples {
        let a = random_matrix_combination(&mut rng, f, &pool);
        pool.push(a.clone());
        let cp = poly::char_poly(&a);
        let mut best: Option<(u64, usize, Matrix, Vec<Vec<Fe>>)> = None;
        for fac in poly::irreducible_factors(f, &cp) {
            let deg = poly::degree(&fac).unwrap();
            let na = a.eval_poly(&fac);
            let kernel = na.nullspace();
            let sub = rep.spin(&kernel[..1]);
            if !sub.is_full() {
                return Ok(Verdict::Reducible(sub));
            }
            let lines = line_count(q, deg, kernel.len() / deg);
            if best.as_ref().is_none_or(|b| lines < b.0) {
                best = Some((lines, deg, na, kernel));
            }
        }
        let Some((lines, deg, na, kernel)) = best else { continue };
        if lines > LINE_BUDGET {
            continue;
        }
        if let Some(sub) = proper_line(rep, &a, &kernel, deg) {
            return Ok(Verdict::Reducible(sub));
        }
        let dual_kernel = na.transpose().nullspace();
        if let Some(dsub) = proper_line(&dual, &a.transpose(), &dual_kernel, deg) {
            return Ok(Verdict::Reducible(annihilator(&dsub)));
        }
        return Ok(Verdict::Simple);
    }
    Ok(match brute_force_witness(rep, BRUTE_FORCE_LIMIT) {
        Some(None) => Verdict::Simple,
        Some(Some(sub)) => Verdict::Reducible(sub),
        None => Verdict::Undecided,
    })
}

/// `(Q^c - 1)/(Q - 1)` with `Q = q^deg`, saturating.
fn line_count(q: u64, deg: usize, c: usize) -> u64 {
    let big_q = crate::arith::checked_pow(q, deg as u32).unwrap_or(u64::MAX);
    let mut total: u64 = 0;
    let mut term: u64 = 1;
    for _ in 0..c {
        total = total.saturating_add(term);
        term = term.saturating_mul(big_q);
    }
    total
}

/// Spins one vector from each `F[A]`-line of `kernel` (an `F[A]`-module
/// killed by an irreducible polynomial of degree `deg`); returns the first
/// proper span found.
fn proper_line(rep: &MatrixRep, a: &Matrix, kernel: &[Vec<Fe>], deg: usize) -> Option<Echelon> {
    let f = &rep.field;
    let n = rep.dim;
    let mut span = Echelon::new(f, n);
    // powers[i][t] = A^t v_i for a K-basis v_i
    let mut powers: Vec<Vec<Vec<Fe>>> = Vec::new();
    for k in kernel {
        if span.contains(k) {
            continue;
        }
        let mut orbit = vec![k.clone()];
        for t in 1..deg {
            orbit.push(a.mul_vec(&orbit[t - 1]));
        }
        for v in &orbit {
            span.insert(v.clone());
        }
        powers.push(orbit);
    }
    let c = powers.len();
    let q = f.size() as u64;
    let big_q = q.pow(deg as u32);
    for lead in 0..c {
        let tail = (c - lead - 1) as u32;
        for code in 0..big_q.pow(tail) {
            let mut v = powers[lead][0].clone();
            let mut rest = code;
            for block in &powers[lead + 1..] {
                for pw in block {
                    let coef = (rest % q) as Fe;
                    rest /= q;
                    if coef != 0 {
                        f.axpy(&mut v, coef, pw);
                    }
                }
            }
            let sub = rep.spin(&[v]);
            if !sub.is_full() {
                return Some(sub);
            }
        }
    }
    None
}

/// `{v : <w, v> = 0 for all w in span}`; stable under `G` whenever the span
/// is stable under the transposed generators.
fn annihilator(span: &Echelon) -> Echelon {
    let rows: Vec<Vec<Fe>> = span.rows().to_vec();
    let m = Matrix::from_rows(span.field(), &rows);
    let mut ech = Echelon::new(span.field(), span.dim());
    for v in m.nullspace() {
        ech.insert(v);
    }
    ech
}

/// Composition factor dimensions, sorted.
pub fn chop(rep: &MatrixRep, seed: u64, samples: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    chop_into(rep, seed, samples, &mut out)?;
    out.sort();
    Ok(out)
}

fn chop_into(rep: &MatrixRep, seed: u64, samples: usize, out: &mut Vec<usize>) -> Result<()> {
    if rep.dim == 0 {
        return Ok(());
    }
    match is_simple(rep, seed, samples)? {
        Verdict::Simple => out.push(rep.dim),
        Verdict::Reducible(sub) => {
            chop_into(&rep.submodule(&sub), seed.wrapping_add(1), samples, out)?;
            chop_into(&rep.quotient(&sub), seed.wrapping_add(2), samples, out)?;
        }
        Verdict::Undecided => {
            return precondition(format!(
                "irreducibility undecided for a {}-dimensional factor after {samples} samples",
                rep.dim
            ))
        }
    }
    Ok(())
}

/// Which exhaustive oracle, if any, can decide simplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OracleKind {
    /// Spin one vector from every line of the module.
    AllLines,
    /// Spin one vector from every line inside each eigenspace of a
    /// diagonalizable operator that stabilizes every submodule.
    EigenLines,
}

/// Exhaustive simplicity oracle: `Some(true)` when every nonzero vector spins
/// to the whole module. Feasible when `|F|^dim ≤ limit`.
pub fn brute_force_simple(rep: &MatrixRep, limit: u64) -> Option<bool> {
    brute_force_witness(rep, limit).map(|w| w.is_none())
}

/// Like [`brute_force_simple`], returning the first proper spin found.
fn brute_force_witness(rep: &MatrixRep, limit: u64) -> Option<Option<Echelon>> {
    let q = rep.field.size() as u64;
    crate::arith::checked_pow(q, rep.dim as u32).filter(|&t| t <= limit)?;
    let n = rep.dim;
    // normalized vectors: first nonzero coordinate equals 1
    for lead in 0..n {
        let tail = n - lead - 1;
        let count = q.pow(tail as u32);
        for code in 0..count {
            let mut v = vec![0; n];
            v[lead] = 1;
            let mut c = code;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = (c % q) as Fe;
                c /= q;
            }
            let sub = rep.spin(&[v]);
            if !sub.is_full() {
                return Some(Some(sub));
            }
        }
    }
    Some(None)
}

/// Oracle through the eigenlines of `h(ω)`: valid when `h(ω)` is
/// diagonalizable over the coefficient field, since every submodule is then
/// spanned by eigenvectors. `None` when that fails or there are more than
/// `limit` eigenlines.
pub fn eigenline_simple(module: &InducedModule, limit: u64) -> Option<bool> {
    let rep = MatrixRep::from_module(module);
    let h = module.sl2().h(module.level().generator()).unwrap();
    let op = module.monomial(&h).ok()?;
    let ws = monomial_eigenspaces(module.coeff(), &op);
    if ws.deficiency() != 0 {
        return None;
    }
    let q = module.coeff().size() as u64;
    let budget = ws.spaces.values().fold(0u64, |acc, space| acc.saturating_add(line_count(q, 1, space.len())));
    if budget > limit {
        return None;
    }
    let f = module.coeff();
    for space in ws.spaces.values() {
        let d = space.len();
        for lead in 0..d {
            let count = q.pow((d - lead - 1) as u32);
            for code in 0..count {
                let mut coeffs = vec![0; d];
                coeffs[lead] = 1;
                let mut c = code;
                for slot in coeffs.iter_mut().skip(lead + 1) {
                    *slot = (c % q) as Fe;
                    c /= q;
                }
                let mut v = vec![0; rep.dim];
                for (b, &k) in space.iter().zip(&coeffs) {
                    f.axpy(&mut v, k, b);
                }
                if !rep.spin(&[v]).is_full() {
                    return Some(false);
                }
            }
        }
    }
    Some(true)
}

/// Decides simplicity exhaustively when some oracle is feasible.
pub fn oracle_simple(module: &InducedModule, limit: u64) -> Option<(OracleKind, bool)> {
    let rep = MatrixRep::from_module(module);
    if let Some(b) = brute_force_simple(&rep, limit) {
        return Some((OracleKind::AllLines, b));
    }
    eigenline_simple(module, limit).map(|b| (OracleKind::EigenLines, b))
}
