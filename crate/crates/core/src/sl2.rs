//! `SL2(F_q)` as explicit 2×2 matrices: Bruhat normal forms, the standard
//! subgroups, full enumeration and coset tables.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{precondition, Error, Result};
use crate::ffield::{Fe, Field};

pub const DEFAULT_GROUP_BOUND: u64 = 1_000_000;

/// Row-major entries `[a, b, c, d]` of a determinant-one matrix, tagged with
/// the order of its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    q: u32,
    m: [Fe; 4],
}

impl GroupElement {
    pub fn entries(&self) -> [Fe; 4] {
        self.m
    }

    pub fn field_size(&self) -> u32 {
        self.q
    }
}

/// `Borel(x, c) = ε(x) h(c)`; `BigCell(x, c, y) = ε(x) s h(c) ε(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BruhatForm {
    Borel { x: Fe, c: Fe },
    BigCell { x: Fe, c: Fe, y: Fe },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subgroup {
    /// Diagonal torus.
    T,
    /// Upper unitriangular.
    U,
    /// Upper triangular.
    B,
    /// Normalizer of `T`: `T ∪ sT`.
    N,
}

/// Arithmetic in `SL2` over a fixed field.
#[derive(Clone)]
pub struct Sl2 {
    field: Field,
}

impl Sl2 {
    pub fn new(field: &Field) -> Sl2 {
        Sl2 { field: field.clone() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn wrap(&self, m: [Fe; 4]) -> GroupElement {
        GroupElement { q: self.field.size(), m }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.q != self.field.size() {
            return Err(Error::FieldMismatch { left: g.q as u64, right: self.field.size() as u64 });
        }
        Ok(())
    }

    pub fn from_entries(&self, a: Fe, b: Fe, c: Fe, d: Fe) -> Result<GroupElement> {
        let f = &self.field;
        if [a, b, c, d].iter().any(|&x| x >= f.size()) {
            return precondition("entry outside the field");
        }
        if f.sub(f.mul(a, d), f.mul(b, c)) != 1 {
            return precondition("determinant is not 1");
        }
        Ok(self.wrap([a, b, c, d]))
    }

    pub fn identity(&self) -> GroupElement {
        self.wrap([1, 0, 0, 1])
    }

    pub fn eps(&self, x: Fe) -> GroupElement {
        self.wrap([1, x, 0, 1])
    }

    pub fn h(&self, c: Fe) -> Result<GroupElement> {
        let ci = self.field.inv(c)?;
        Ok(self.wrap([c, 0, 0, ci]))
    }

    pub fn s(&self) -> GroupElement {
        self.wrap([0, 1, self.field.neg(1), 0])
    }

    /// Product, assuming both factors belong to this group's field.
    #[inline]
    pub fn mul(&self, g: &GroupElement, k: &GroupElement) -> GroupElement {
        let f = &self.field;
        let [a, b, c, d] = g.m;
        let [e, x, y, z] = k.m;
        self.wrap([
            f.add(f.mul(a, e), f.mul(b, y)),
            f.add(f.mul(a, x), f.mul(b, z)),
            f.add(f.mul(c, e), f.mul(d, y)),
            f.add(f.mul(c, x), f.mul(d, z)),
        ])
    }

    pub fn multiply(&self, g: &GroupElement, k: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(k)?;
        Ok(self.mul(g, k))
    }

    pub fn product(&self, factors: &[GroupElement]) -> GroupElement {
        factors.iter().fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    pub fn invert(&self, g: &GroupElement) -> GroupElement {
        let f = &self.field;
        let [a, b, c, d] = g.m;
        self.wrap([d, f.neg(b), f.neg(c), a])
    }

    pub fn bruhat(&self, g: &GroupElement) -> BruhatForm {
        let f = &self.field;
        let [a, b, c, d] = g.m;
        if c == 0 {
            BruhatForm::Borel { x: f.mul(a, b), c: a }
        } else {
            let ci = f.inv(c).unwrap();
            BruhatForm::BigCell { x: f.mul(a, ci), c: f.neg(c), y: f.mul(d, ci) }
        }
    }

    pub fn assemble(&self, form: &BruhatForm) -> Result<GroupElement> {
        Ok(match *form {
            BruhatForm::Borel { x, c } => self.mul(&self.eps(x), &self.h(c)?),
            BruhatForm::BigCell { x, c, y } => {
                self.product(&[self.eps(x), self.s(), self.h(c)?, self.eps(y)])
            }
        })
    }

    /// `α(h(c)) = c^2`.
    pub fn simple_root_alpha(&self, t: &GroupElement) -> Result<Fe> {
        self.check(t)?;
        let [a, b, c, _] = t.m;
        if b != 0 || c != 0 {
            return precondition("element is not in the diagonal torus");
        }
        Ok(self.field.mul(a, a))
    }

    pub fn contains(&self, sub: Subgroup, g: &GroupElement) -> bool {
        let [a, b, c, d] = g.m;
        match sub {
            Subgroup::T => b == 0 && c == 0,
            Subgroup::U => c == 0 && a == 1 && d == 1,
            Subgroup::B => c == 0,
            Subgroup::N => (b == 0 && c == 0) || (a == 0 && d == 0),
        }
    }

    pub fn order(&self) -> u64 {
        let q = self.field.size() as u64;
        q * (q * q - 1)
    }

    /// All elements, generated through their Bruhat forms.
    pub fn elements(&self) -> Vec<GroupElement> {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.order() as usize);
        for c in f.units() {
            for x in f.elements() {
                out.push(self.assemble(&BruhatForm::Borel { x, c }).unwrap());
                for y in f.elements() {
                    out.push(self.assemble(&BruhatForm::BigCell { x, c, y }).unwrap());
                }
            }
        }
        out
    }
}

/// Left cosets `gH` of a subgroup inside an enumerated group.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub subgroup: Subgroup,
    /// Element index of each coset's least member.
    pub reps: Vec<u32>,
    /// Coset of each element.
    pub coset_of: Vec<u32>,
    /// Element index of `h` with `g = rep(g) · h`.
    pub part: Vec<u32>,
    /// For `N`: whether `h ∈ sT` (the nontrivial Weyl component).
    pub w_part: Vec<bool>,
}

/// Every element of `SL2(F_q)` indexed in lexicographic order of
/// `(a, b, c, d)`.
pub struct GroupTable {
    sl2: Sl2,
    elements: Vec<GroupElement>,
    index: HashMap<[Fe; 4], u32>,
}

impl GroupTable {
    pub fn enumerate(field: &Field, bound: u64) -> Result<GroupTable> {
        let sl2 = Sl2::new(field);
        let order = sl2.order();
        if order > bound {
            return Err(Error::BoundExceeded { size: order, bound });
        }
        let mut elements = sl2.elements();
        elements.sort();
        let index = elements.iter().enumerate().map(|(i, g)| (g.m, i as u32)).collect();
        Ok(GroupTable { sl2, elements, index })
    }

    pub fn sl2(&self) -> &Sl2 {
        &self.sl2
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: u32) -> GroupElement {
        self.elements[i as usize]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<u32> {
        if g.q != self.sl2.field.size() {
            return None;
        }
        self.index.get(&g.m).copied()
    }

    pub fn mask(&self, sub: Subgroup) -> Vec<bool> {
        self.elements.iter().map(|g| self.sl2.contains(sub, g)).collect()
    }

    pub fn subgroup(&self, sub: Subgroup) -> Vec<u32> {
        (0..self.len() as u32).filter(|&i| self.sl2.contains(sub, &self.elements[i as usize])).collect()
    }

    pub fn coset_table(&self, sub: Subgroup) -> Result<CosetTable> {
        if sub == Subgroup::U {
            return precondition("coset tables are provided for T, B and N");
        }
        let members = self.subgroup(sub);
        let n = self.len();
        let mut coset_of = vec![u32::MAX; n];
        let mut part = vec![0; n];
        let mut w_part = vec![false; n];
        let mut reps = Vec::new();
        for g in 0..n as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            let ge = self.elements[g as usize];
            for &h in &members {
                let he = self.elements[h as usize];
                let k = self.index[&self.sl2.mul(&ge, &he).m] as usize;
                coset_of[k] = id;
                part[k] = h;
                w_part[k] = !self.sl2.contains(Subgroup::T, &he);
            }
        }
        Ok(CosetTable { subgroup: sub, reps, coset_of, part, w_part })
    }
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// One line per coset: representative index, then member indices.
    pub fn dump(&self) -> String {
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); self.len()];
        for (g, &c) in self.coset_of.iter().enumerate() {
            members[c as usize].push(g as u32);
        }
        let mut out = String::new();
        for (rep, ms) in self.reps.iter().zip(&members) {
            let list: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
            writeln!(out, "{rep}: {}", list.join(" ")).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::construct_field;

    #[test]
    fn generator_examples() {
        let f = construct_field(7, 1).unwrap();
        let g = Sl2::new(&f);
        assert_eq!(g.mul(&g.s(), &g.s()), g.h(6).unwrap());
        assert_eq!(g.mul(&g.eps(2), &g.eps(3)), g.eps(5));
        assert_eq!(g.mul(&g.h(2).unwrap(), &g.h(3).unwrap()), g.h(6).unwrap());
        assert!(g.h(0).is_err());
        assert_eq!(g.simple_root_alpha(&g.h(3).unwrap()).unwrap(), 2);
        assert_eq!(g.simple_root_alpha(&g.h(6).unwrap()).unwrap(), 1);
        assert!(g.simple_root_alpha(&g.s()).is_err());
    }

    #[test]
    fn bruhat_examples() {
        let f = construct_field(5, 1).unwrap();
        let g = Sl2::new(&f);
        assert_eq!(g.bruhat(&g.identity()), BruhatForm::Borel { x: 0, c: 1 });
        assert_eq!(g.bruhat(&g.s()), BruhatForm::BigCell { x: 0, c: 1, y: 0 });
        let e = g.product(&[g.eps(2), g.s(), g.h(3).unwrap(), g.eps(4)]);
        assert_eq!(g.bruhat(&e), BruhatForm::BigCell { x: 2, c: 3, y: 4 });
    }

    #[test]
    fn mismatched_fields_error() {
        let a = Sl2::new(&construct_field(5, 1).unwrap());
        let b = Sl2::new(&construct_field(7, 1).unwrap());
        assert!(a.multiply(&a.s(), &b.s()).is_err());
    }

    #[test]
    fn coset_counts_q5() {
        let f = construct_field(5, 1).unwrap();
        let t = GroupTable::enumerate(&f, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(t.len(), 120);
        assert_eq!(t.subgroup(Subgroup::N).len(), 8);
        assert_eq!(t.coset_table(Subgroup::T).unwrap().len(), 30);
        assert_eq!(t.coset_table(Subgroup::B).unwrap().len(), 6);
        assert_eq!(t.coset_table(Subgroup::N).unwrap().len(), 15);
        assert!(t.coset_table(Subgroup::U).is_err());
        assert!(GroupTable::enumerate(&f, 100).is_err());
    }
}
