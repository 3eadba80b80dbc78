//! Modules induced from `T`, `B` and `N` to `SL2(F_Q)`.
//!
//! Cosets are located through Bruhat normal forms rather than a group table,
//! so modules at level `Q = q^2` stay cheap even when `|G|` is large.
//!
//! Basis conventions (`1` is the generator of the inducing line):
//! - `T`: index `x` is `ε(x)·1`, index `Q + xQ + y` is `ε(x)sε(y)·1`.
//! - `B`: index `0` is `1`, index `1 + x` is `ε(x)s·1`.
//! - `N`: index `x` is `ε(x)·1`; each remaining `N`-coset is the union of
//!   the `T`-cosets of `ε(x)sε(y)` and `ε(x - 1/y)sε(-y)`, listed after the
//!   first `Q` indices in increasing order of the smaller key `xQ + y`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::chars::Character;
use crate::error::{precondition, Error, Result};
use crate::ffield::{embed_raw, sqrt_ext, Fe, Field, GfField};
use crate::sl2::{BruhatForm, GroupElement, Sl2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Induction {
    Torus,
    Borel,
    Normalizer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

const NEG_BIT: u32 = 1 << 31;

pub struct InducedModule {
    id: u64,
    sl2: Sl2,
    kind: Induction,
    character: Option<Character>,
    sign: Sign,
    coeff: Field,
    /// `chi[c] = θ(h(c))`.
    chi: Vec<Fe>,
    dim: usize,
    /// `N` only: big-cell key `xQ + y` (`y ≠ 0`) to index, `NEG_BIT` set on
    /// the non-canonical member of each pair.
    npair: Vec<u32>,
    /// `N` only: canonical `(x, y)` for indices `Q..`.
    nreps: Vec<(Fe, Fe)>,
}

impl fmt::Debug for InducedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ind_{:?}(level {}, dim {}, coefficients GF({}))",
            self.kind,
            self.level().size(),
            self.dim,
            self.coeff.size()
        )
    }
}

impl InducedModule {
    /// `Ind_T^G k_θ` with `θ` a character of the level field's units.
    pub fn torus(theta: &Character) -> InducedModule {
        InducedModule::with_character(Induction::Torus, theta)
    }

    /// `Ind_B^G k_θ`, `B` acting through its torus quotient.
    pub fn borel(theta: &Character) -> InducedModule {
        InducedModule::with_character(Induction::Borel, theta)
    }

    fn with_character(kind: Induction, theta: &Character) -> InducedModule {
        let level = theta.domain().clone();
        let q = level.size() as usize;
        let chi = (0..q as Fe).map(|c| theta.eval(c)).collect();
        let dim = match kind {
            Induction::Torus => q * (q + 1),
            _ => q + 1,
        };
        InducedModule {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            sl2: Sl2::new(&level),
            kind,
            character: Some(theta.clone()),
            sign: Sign::Plus,
            coeff: theta.coeff_field().clone(),
            chi,
            dim,
            npair: Vec::new(),
            nreps: Vec::new(),
        }
    }

    /// `Ind_N^G k_±`: `T` acts trivially, `sT` by the sign.
    pub fn normalizer(level: &Field, sign: Sign, coeff: &Field) -> InducedModule {
        let q = level.size() as usize;
        let mut npair = vec![u32::MAX; q * q];
        let mut nreps = Vec::new();
        for x in level.elements() {
            for y in level.units() {
                let key = x as usize * q + y as usize;
                if npair[key] != u32::MAX {
                    continue;
                }
                let yi = level.inv(y).unwrap();
                let (x2, y2) = (level.sub(x, yi), level.neg(y));
                let key2 = x2 as usize * q + y2 as usize;
                // the partner key is always larger here, since smaller keys
                // were visited first
                let idx = (q + nreps.len()) as u32;
                nreps.push((x, y));
                npair[key] = idx;
                npair[key2] = idx | NEG_BIT;
            }
        }
        let chi = (0..q as Fe).map(|c| if c == 0 { 0 } else { 1 }).collect();
        InducedModule {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            sl2: Sl2::new(level),
            kind: Induction::Normalizer,
            character: None,
            sign,
            coeff: coeff.clone(),
            chi,
            dim: q + nreps.len(),
            npair,
            nreps,
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn kind(&self) -> Induction {
        self.kind
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn character(&self) -> Option<&Character> {
        self.character.as_ref()
    }

    pub fn sl2(&self) -> &Sl2 {
        &self.sl2
    }

    pub fn level(&self) -> &Field {
        self.sl2.field()
    }

    pub fn coeff(&self) -> &Field {
        &self.coeff
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `θ(h(c))` (`1` for `N`-modules).
    pub fn theta(&self, c: Fe) -> Fe {
        self.chi[c as usize]
    }

    fn n_sign(&self) -> Fe {
        match self.sign {
            Sign::Plus => 1,
            Sign::Minus => self.coeff.neg(1),
        }
    }

    /// `(j, c)` with `g·1 = c · b_j`.
    #[inline]
    pub fn locate(&self, g: &GroupElement) -> (u32, Fe) {
        let lf = self.level();
        let q = lf.size();
        match (self.kind, self.sl2.bruhat(g)) {
            (Induction::Torus, BruhatForm::Borel { x, c }) => (x, self.chi[c as usize]),
            (Induction::Torus, BruhatForm::BigCell { x, c, y }) => {
                (q + x * q + lf.mul(lf.mul(c, c), y), self.chi[c as usize])
            }
            (Induction::Borel, BruhatForm::Borel { c, .. }) => (0, self.chi[c as usize]),
            (Induction::Borel, BruhatForm::BigCell { x, c, .. }) => (1 + x, self.chi[c as usize]),
            (Induction::Normalizer, BruhatForm::Borel { x, .. }) => (x, 1),
            (Induction::Normalizer, BruhatForm::BigCell { x, c, y }) => {
                let y = lf.mul(lf.mul(c, c), y);
                if y == 0 {
                    return (x, self.n_sign());
                }
                let e = self.npair[(x * q + y) as usize];
                if e & NEG_BIT != 0 {
                    (e & !NEG_BIT, self.n_sign())
                } else {
                    (e, 1)
                }
            }
        }
    }

    /// The group element whose image of `1` is basis vector `j`.
    pub fn rep(&self, j: u32) -> GroupElement {
        let q = self.level().size();
        let sl2 = &self.sl2;
        match self.kind {
            Induction::Torus if j < q => sl2.eps(j),
            Induction::Torus => {
                let k = j - q;
                sl2.product(&[sl2.eps(k / q), sl2.s(), sl2.eps(k % q)])
            }
            Induction::Borel if j == 0 => sl2.identity(),
            Induction::Borel => sl2.mul(&sl2.eps(j - 1), &sl2.s()),
            Induction::Normalizer if j < q => sl2.eps(j),
            Induction::Normalizer => {
                let (x, y) = self.nreps[(j - q) as usize];
                sl2.product(&[sl2.eps(x), sl2.s(), sl2.eps(y)])
            }
        }
    }

    fn check_element(&self, g: &GroupElement) -> Result<()> {
        if g.field_size() != self.level().size() {
            return Err(Error::FieldMismatch {
                left: g.field_size() as u64,
                right: self.level().size() as u64,
            });
        }
        Ok(())
    }

    fn check_vector(&self, v: &ModuleVector) -> Result<()> {
        if v.module != self.id {
            return precondition("vector belongs to a different module");
        }
        Ok(())
    }

    pub fn zero(&self) -> ModuleVector {
        ModuleVector { module: self.id, coeffs: BTreeMap::new() }
    }

    pub fn basis(&self, j: u32) -> ModuleVector {
        assert!((j as usize) < self.dim);
        let mut v = self.zero();
        v.coeffs.insert(j, 1);
        v
    }

    /// The generator `1` of the induced module (basis index 0).
    pub fn one(&self) -> ModuleVector {
        self.basis(0)
    }

    pub fn from_dense(&self, v: &[Fe]) -> ModuleVector {
        assert_eq!(v.len(), self.dim);
        let coeffs = v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j as u32, c)).collect();
        ModuleVector { module: self.id, coeffs }
    }

    pub fn to_dense(&self, v: &ModuleVector) -> Vec<Fe> {
        let mut out = vec![0; self.dim];
        for (&j, &c) in &v.coeffs {
            out[j as usize] = c;
        }
        out
    }

    /// `g · v`.
    pub fn act(&self, g: &GroupElement, v: &ModuleVector) -> Result<ModuleVector> {
        self.check_element(g)?;
        self.check_vector(v)?;
        Ok(self.act_unchecked(g, v))
    }

    fn act_unchecked(&self, g: &GroupElement, v: &ModuleVector) -> ModuleVector {
        let f = &self.coeff;
        let mut out = self.zero();
        for (&j, &c) in &v.coeffs {
            let (k, s) = self.locate(&self.sl2.mul(g, &self.rep(j)));
            out.add_term(f, k, f.mul(c, s));
        }
        out
    }

    /// `a · v` for a group-algebra element `a`.
    pub fn act_algebra(&self, a: &AlgebraElement, v: &ModuleVector) -> Result<ModuleVector> {
        self.check_vector(v)?;
        let f = &self.coeff;
        let mut out = self.zero();
        for (c, g) in &a.terms {
            self.check_element(g)?;
            let img = self.act_unchecked(g, v);
            for (&k, &x) in &img.coeffs {
                out.add_term(f, k, f.mul(*c, x));
            }
        }
        Ok(out)
    }

    /// The matrix of `g` on the basis, as a monomial table.
    pub fn monomial(&self, g: &GroupElement) -> Result<MonomialOp> {
        self.check_element(g)?;
        let mut perm = Vec::with_capacity(self.dim);
        let mut scale = Vec::with_capacity(self.dim);
        for j in 0..self.dim as u32 {
            let (k, s) = self.locate(&self.sl2.mul(g, &self.rep(j)));
            perm.push(k);
            scale.push(s);
        }
        Ok(MonomialOp { field: self.coeff.clone(), perm, scale })
    }

    /// Generators used for spinning: `ε(ω^i)` for `i` below the degree of the
    /// level field, then `s` and `h(ω)`.
    pub fn generators(&self) -> Vec<GroupElement> {
        let lf = self.level();
        let mut gens: Vec<GroupElement> = (0..lf.degree() as u64).map(|i| self.sl2.eps(lf.exp(i))).collect();
        gens.push(self.sl2.s());
        gens.push(self.sl2.h(lf.generator()).unwrap());
        gens
    }

    pub fn generator_ops(&self) -> Vec<MonomialOp> {
        self.generators().iter().map(|g| self.monomial(g).unwrap()).collect()
    }

    fn embed_level(&self, sub: &GfField, x: Fe) -> Result<Fe> {
        embed_raw(sub, x, self.level())
    }

    /// `Σ_{x ∈ F} ε(x)` for a subfield `F` of the level.
    pub fn ubar(&self, sub: &Field) -> Result<AlgebraElement> {
        let terms = sub
            .elements()
            .map(|x| Ok((1, self.sl2.eps(self.embed_level(sub, x)?))))
            .collect::<Result<_>>()?;
        Ok(AlgebraElement { terms })
    }

    /// `Σ_{x ∈ F^*} ε(x)`.
    pub fn ubar_star(&self, sub: &Field) -> Result<AlgebraElement> {
        let terms = sub
            .units()
            .map(|x| Ok((1, self.sl2.eps(self.embed_level(sub, x)?))))
            .collect::<Result<_>>()?;
        Ok(AlgebraElement { terms })
    }

    /// `Σ_{z ∈ F^*} h(√z)` with the square roots taken in the quadratic
    /// extension of `F`; the level must contain that extension.
    pub fn dbar(&self, sub: &Field) -> Result<AlgebraElement> {
        let mut terms = Vec::new();
        for z in sub.units() {
            let root = sqrt_ext(&sub.element(z))?;
            let c = embed_raw(root.field(), root.value(), self.level()).map_err(|_| {
                Error::Precondition(format!(
                    "level GF({}) cannot host square roots from GF({})",
                    self.level().size(),
                    root.field().size()
                ))
            })?;
            terms.push((1, self.sl2.h(c)?));
        }
        Ok(AlgebraElement { terms })
    }

    /// `Λ(z) = (sε(z) + 1 - ε(-1/z)) 1_-` in `Ind_N k_-`.
    pub fn lambda_vec(&self, z: Fe) -> Result<ModuleVector> {
        if self.kind != Induction::Normalizer || self.sign != Sign::Minus {
            return precondition("Λ(z) lives in the sign-induced module from N");
        }
        let lf = self.level();
        if z == 0 || z >= lf.size() {
            return precondition("Λ(z) needs a nonzero z in the level field");
        }
        let sl2 = &self.sl2;
        let a = AlgebraElement {
            terms: vec![
                (1, sl2.mul(&sl2.s(), &sl2.eps(z))),
                (1, sl2.identity()),
                (self.coeff.neg(1), sl2.eps(lf.neg(lf.inv(z)?))),
            ],
        };
        self.act_algebra(&a, &self.one())
    }
}

/// Sparse vector: basis index to nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleVector {
    module: u64,
    coeffs: BTreeMap<u32, Fe>,
}

impl fmt::Debug for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

impl ModuleVector {
    pub fn module_id(&self) -> u64 {
        self.module
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, j: u32) -> Fe {
        self.coeffs.get(&j).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, Fe)> + '_ {
        self.coeffs.iter().map(|(&j, &c)| (j, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, f: &GfField, j: u32, c: Fe) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(j).or_insert(0);
        *e = f.add(*e, c);
        if *e == 0 {
            self.coeffs.remove(&j);
        }
    }

    /// `self + c·other`.
    pub fn axpy(&self, f: &GfField, c: Fe, other: &ModuleVector) -> ModuleVector {
        assert_eq!(self.module, other.module, "vectors from different modules");
        let mut out = self.clone();
        for (&j, &x) in &other.coeffs {
            out.add_term(f, j, f.mul(c, x));
        }
        out
    }

    pub fn add(&self, f: &GfField, other: &ModuleVector) -> ModuleVector {
        self.axpy(f, 1, other)
    }

    pub fn sub(&self, f: &GfField, other: &ModuleVector) -> ModuleVector {
        self.axpy(f, f.neg(1), other)
    }

    pub fn scale(&self, f: &GfField, c: Fe) -> ModuleVector {
        let mut out = ModuleVector { module: self.module, coeffs: BTreeMap::new() };
        for (&j, &x) in &self.coeffs {
            out.add_term(f, j, f.mul(c, x));
        }
        out
    }
}

/// A formal sum `Σ c_i g_i` in the group algebra.
#[derive(Debug, Clone, Default)]
pub struct AlgebraElement {
    pub terms: Vec<(Fe, GroupElement)>,
}

impl AlgebraElement {
    pub fn single(g: GroupElement) -> AlgebraElement {
        AlgebraElement { terms: vec![(1, g)] }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Product in the group algebra, collecting equal group elements.
    pub fn mul(&self, other: &AlgebraElement, sl2: &Sl2, f: &GfField) -> AlgebraElement {
        let mut acc: HashMap<GroupElement, Fe> = HashMap::new();
        let mut order = Vec::new();
        for (a, g) in &self.terms {
            for (b, k) in &other.terms {
                let gk = sl2.mul(g, k);
                let e = acc.entry(gk).or_insert_with(|| {
                    order.push(gk);
                    0
                });
                *e = f.add(*e, f.mul(*a, *b));
            }
        }
        let terms = order
            .into_iter()
            .filter_map(|g| {
                let c = acc[&g];
                (c != 0).then_some((c, g))
            })
            .collect();
        AlgebraElement { terms }
    }

    pub fn scaled(&self, f: &GfField, c: Fe) -> AlgebraElement {
        AlgebraElement { terms: self.terms.iter().map(|&(a, g)| (f.mul(a, c), g)).collect() }
    }

    pub fn plus(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        AlgebraElement { terms }
    }
}

/// A monomial matrix: `b_j ↦ scale[j] · b_{perm[j]}`.
#[derive(Clone)]
pub struct MonomialOp {
    field: Field,
    pub perm: Vec<u32>,
    pub scale: Vec<Fe>,
}

impl MonomialOp {
    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut out = vec![0; v.len()];
        for (j, &c) in v.iter().enumerate() {
            if c != 0 {
                out[self.perm[j] as usize] = f.mul(c, self.scale[j]);
            }
        }
        out
    }

    pub fn to_matrix(&self) -> crate::linalg::Matrix {
        let n = self.dim();
        let mut m = crate::linalg::Matrix::zeros(&self.field, n, n);
        for j in 0..n {
            m.set(self.perm[j] as usize, j, self.scale[j]);
        }
        m
    }
}
