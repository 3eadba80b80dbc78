//! Multiplicative characters of finite fields with values in a finite
//! coefficient field of another characteristic, and the character sums built
//! from them.

use std::collections::HashSet;
use std::fmt;

use crate::arith;
use crate::error::{precondition, Error, Result};
use crate::ffield::{construct_field, embed_raw, Fe, Field, FieldElement};
use crate::linalg::Matrix;

/// `GF(r^k)` together with a primitive `n`-th root of unity
/// `ζ = g^((r^k - 1)/n)`.
#[derive(Clone)]
pub struct CoeffField {
    field: Field,
    n: u64,
    /// `(r^k - 1)/n`, so that `ζ^e = g^(step * e)`.
    step: u64,
    zeta: Fe,
}

impl fmt::Debug for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoeffField(GF({}), zeta of order {})", self.field.size(), self.n)
    }
}

/// The smallest `GF(r^k)` holding a primitive `n`-th root of unity.
pub fn make_coeff_field(r: u64, n: u64) -> Result<CoeffField> {
    if !arith::is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    if n == 0 {
        return precondition("root-of-unity order must be positive");
    }
    if n.is_multiple_of(r) {
        return precondition(format!("{r} divides {n}: no primitive {n}-th root of unity in characteristic {r}"));
    }
    let k = arith::mult_order(r, n).expect("coprime") as u32;
    let field = construct_field(r, k)?;
    let step = (field.size() as u64 - 1) / n;
    let zeta = field.exp(step);
    Ok(CoeffField { field, n, step, zeta })
}

impl CoeffField {
    /// Coefficient field for characters of a cyclic group of order `order`:
    /// in characteristic `r` only the `r'`-part of the order is visible.
    pub fn for_units(r: u64, order: u64) -> Result<CoeffField> {
        if !arith::is_prime(r) {
            return Err(Error::NotPrime(r));
        }
        let (_, l) = arith::rpart_decompose(order, r);
        make_coeff_field(r, l)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic() as u64
    }

    pub fn degree(&self) -> u32 {
        self.field.degree()
    }

    /// Order of `ζ`.
    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn zeta(&self) -> Fe {
        self.zeta
    }

    /// `ζ^e`.
    pub fn zeta_pow(&self, e: u64) -> Fe {
        self.field.exp(self.step * (e % self.n))
    }

    pub fn same_as(&self, other: &CoeffField) -> bool {
        self.n == other.n && self.field.same_as(&other.field)
    }
}

/// `χ(ω^j) = ζ^(a j)` on the units of `domain`, `χ(0) = 0`.
#[derive(Clone)]
pub struct Character {
    domain: Field,
    target: CoeffField,
    a: u64,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Character(GF({}) -> GF({}), exponent {} mod {})",
            self.domain.size(),
            self.target.field.size(),
            self.a,
            self.target.n
        )
    }
}

impl Character {
    pub fn new(domain: &Field, target: &CoeffField, a: u64) -> Result<Character> {
        let units = domain.size() as u64 - 1;
        if !units.is_multiple_of(target.n) {
            return precondition(format!(
                "root of unity of order {} does not divide |GF({})^*| = {units}",
                target.n,
                domain.size()
            ));
        }
        Ok(Character { domain: domain.clone(), target: target.clone(), a: a % target.n })
    }

    pub fn trivial(domain: &Field, target: &CoeffField) -> Result<Character> {
        Character::new(domain, target, 0)
    }

    /// Every character of `domain^*` into `target`, by exponent.
    pub fn all(domain: &Field, target: &CoeffField) -> Result<Vec<Character>> {
        (0..target.n).map(|a| Character::new(domain, target, a)).collect()
    }

    pub fn domain(&self) -> &Field {
        &self.domain
    }

    pub fn target(&self) -> &CoeffField {
        &self.target
    }

    pub fn coeff_field(&self) -> &Field {
        &self.target.field
    }

    pub fn exponent(&self) -> u64 {
        self.a
    }

    pub fn is_trivial(&self) -> bool {
        self.a == 0
    }

    pub fn order(&self) -> u64 {
        self.target.n / arith::gcd(self.a, self.target.n)
    }

    /// `x ↦ χ(x)^{-1}`; also the character `c ↦ χ(c^{-1})`.
    pub fn inverse(&self) -> Character {
        Character { a: (self.target.n - self.a) % self.target.n, ..self.clone() }
    }

    pub fn pow(&self, e: u64) -> Character {
        Character { a: (self.a * (e % self.target.n)) % self.target.n, ..self.clone() }
    }

    #[inline]
    pub fn eval(&self, x: Fe) -> Fe {
        if x == 0 {
            return 0;
        }
        let j = self.domain.log_unchecked(x) as u64;
        self.target.zeta_pow(self.a * (j % self.target.n))
    }

    pub fn eval_element(&self, x: &FieldElement) -> Result<FieldElement> {
        if !x.field().same_as(&self.domain) {
            return Err(Error::FieldMismatch {
                left: x.field().size() as u64,
                right: self.domain.size() as u64,
            });
        }
        Ok(self.target.field.element(self.eval(x.value())))
    }

    fn check_compatible(&self, other: &Character) -> Result<()> {
        if !self.domain.same_as(&other.domain) {
            return Err(Error::FieldMismatch {
                left: self.domain.size() as u64,
                right: other.domain.size() as u64,
            });
        }
        if !self.target.same_as(&other.target) {
            return precondition("characters take values in different coefficient fields");
        }
        Ok(())
    }
}

/// `Σ_{z ≠ 0} φ(z) ψ(z^{-1})`.
pub fn orthogonality_sum(phi: &Character, psi: &Character) -> Result<Fe> {
    phi.check_compatible(psi)?;
    let d = &phi.domain;
    let k = &phi.target.field;
    let mut acc = 0;
    for z in d.units() {
        let zi = d.inv(z)?;
        acc = k.add(acc, k.mul(phi.eval(z), psi.eval(zi)));
    }
    Ok(acc)
}

/// `(a_i, u_i)` with `a_i` in the coefficient field and `u_i` in the domain.
pub type Pairs = [(Fe, Fe)];

fn validate_pairs(pairs: &Pairs) -> Result<()> {
    let mut seen = HashSet::new();
    for &(a, u) in pairs {
        if a == 0 {
            return precondition("translate coefficients must be nonzero");
        }
        if u == 0 {
            return precondition("translates must be nonzero");
        }
        if !seen.insert(u) {
            return precondition(format!("translate {u} repeated"));
        }
    }
    Ok(())
}

fn validate_translates(u: &[Fe]) -> Result<()> {
    let mut seen = HashSet::new();
    for &x in u {
        if x == 0 {
            return precondition("translates must be nonzero");
        }
        if !seen.insert(x) {
            return precondition(format!("translate {x} repeated"));
        }
    }
    Ok(())
}

fn translate_sum_unchecked(lambda: &Character, pairs: &Pairs, x: Fe) -> Fe {
    let d = &lambda.domain;
    let k = &lambda.target.field;
    pairs
        .iter()
        .fold(0, |acc, &(a, u)| k.add(acc, k.mul(a, lambda.eval(d.add(x, u)))))
}

/// `S(x) = Σ a_i λ(x + u_i)`.
pub fn translate_sum(lambda: &Character, pairs: &Pairs, x: Fe) -> Result<Fe> {
    validate_pairs(pairs)?;
    Ok(translate_sum_unchecked(lambda, pairs, x))
}

/// Extends `χ` on `F_{p^m}` to `F_{p^l}` so that `χ'(embed x) = ι(χ(x))`,
/// where `ι` embeds the old coefficient field into the new one and the new
/// coefficient field carries the `r'`-part of `p^l - 1` roots of unity.
pub fn extend_character(chi: &Character, l: u32) -> Result<Character> {
    let dom = &chi.domain;
    let (p, m) = (dom.characteristic() as u64, dom.degree());
    if l == 0 || !l.is_multiple_of(m) {
        return precondition(format!("degree {m} does not divide {l}"));
    }
    let new_dom = construct_field(p, l)?;
    let r = chi.target.characteristic();
    let target = CoeffField::for_units(r, new_dom.size() as u64 - 1)?;
    let (n, n_new) = (chi.target.n, target.n);
    if n_new % n != 0 {
        return precondition("coefficient field cannot be enlarged compatibly");
    }
    // ι(ζ) = ζ'^(n'/n) by the generator-power embedding rule
    let k = (new_dom.size() as u64 - 1) / (dom.size() as u64 - 1);
    let rhs = (chi.a * (n_new / n)) % n_new;
    let a_new = arith::solve_linear_congruence(k % n_new, rhs, n_new)
        .expect("restriction to a subgroup of a cyclic group is surjective");
    Character::new(&new_dom, &target, a_new)
}

/// Maps a coefficient of `from`'s target into `to`'s target field.
pub fn lift_coefficient(from: &CoeffField, x: Fe, to: &CoeffField) -> Result<Fe> {
    embed_raw(&from.field, x, &to.field)
}

/// The points of `F_{p^l}` where `S` does not vanish, after extending `λ`.
#[derive(Debug, Clone)]
pub struct Census {
    pub level: Field,
    pub character: Character,
    pub nonvanishing: Vec<Fe>,
}

pub fn nonvanishing_census(lambda: &Character, pairs: &Pairs, l: u32) -> Result<Census> {
    validate_pairs(pairs)?;
    let ext = extend_character(lambda, l)?;
    let lifted: Vec<(Fe, Fe)> = pairs
        .iter()
        .map(|&(a, u)| {
            Ok((
                lift_coefficient(&lambda.target, a, &ext.target)?,
                embed_raw(&lambda.domain, u, &ext.domain)?,
            ))
        })
        .collect::<Result<_>>()?;
    let level = ext.domain.clone();
    let nonvanishing = level
        .elements()
        .filter(|&x| translate_sum_unchecked(&ext, &lifted, x) != 0)
        .collect();
    Ok(Census { level, character: ext, nonvanishing })
}

/// The `p^m × n` matrix `(ψ(x + u_i))` and its rank.
pub fn translate_matrix_rank(psi: &Character, u: &[Fe]) -> Result<(Matrix, usize)> {
    validate_translates(u)?;
    let d = &psi.domain;
    let rows: Vec<Vec<Fe>> = d
        .elements()
        .map(|x| u.iter().map(|&ui| psi.eval(d.add(x, ui))).collect())
        .collect();
    let m = if u.is_empty() {
        Matrix::zeros(&psi.target.field, d.size() as usize, 0)
    } else {
        Matrix::from_rows(&psi.target.field, &rows)
    };
    let rank = m.rank();
    Ok((m, rank))
}

/// `q = p^j` distinct nonzero elements summing to zero, and the Frobenius
/// power `ψ(x) = x^q` viewed as a character valued in the same field.
#[derive(Debug, Clone)]
pub struct CounterexampleFamily {
    pub field: Field,
    pub q: u64,
    pub u: Vec<Fe>,
    pub psi: Character,
}

pub fn counterexample_family(p: u64, j: u32) -> Result<CounterexampleFamily> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if j == 0 {
        return precondition("exponent j must be at least 1");
    }
    let q = arith::checked_pow(p, j).ok_or_else(|| Error::Precondition("p^j overflows".into()))?;
    if q < 3 {
        return precondition(
            "q = 2 admits no family: distinct u_1, u_2 have u_1^2 + u_2^2 = (u_1 + u_2)^2 != 0",
        );
    }
    let mut level = 1u32;
    loop {
        let size = arith::checked_pow(p, level).ok_or_else(|| Error::Precondition("level overflows".into()))?;
        if size > crate::ffield::field_bound() {
            return Err(Error::BoundExceeded { size, bound: crate::ffield::field_bound() });
        }
        if size > q {
            let field = construct_field(p, level)?;
            if let Some(u) = zero_sum_family(&field, q as usize) {
                let target = make_coeff_field(p, size - 1)?;
                let psi = Character::new(&field, &target, q % (size - 1))?;
                return Ok(CounterexampleFamily { field, q, u, psi });
            }
        }
        level += 1;
    }
}

/// `u_i = g^(i-1)` for `i < count - 1`, then the first admissible
/// `u_{count-1}` (by discrete log) leaving a fresh nonzero `u_count = -Σ`.
fn zero_sum_family(f: &Field, count: usize) -> Option<Vec<Fe>> {
    let units = f.size() as u64 - 1;
    let mut u: Vec<Fe> = (0..count as u64 - 2).map(|i| f.exp(i)).collect();
    let partial = u.iter().fold(0, |acc, &x| f.add(acc, x));
    for e in count as u64 - 2..units {
        let w = f.exp(e);
        let last = f.neg(f.add(partial, w));
        if last != 0 && last != w && !u.contains(&last) {
            u.push(w);
            u.push(last);
            return Some(u);
        }
    }
    None
}

impl CounterexampleFamily {
    /// Whether `Σ_i ψ(x + u_i) = 0` for every `x` in the field.
    pub fn column_sum_vanishes(&self) -> bool {
        let f = &self.field;
        let k = self.psi.coeff_field();
        f.elements().all(|x| {
            self.u.iter().fold(0, |acc, &ui| k.add(acc, self.psi.eval(f.add(x, ui)))) == 0
        })
    }
}

/// `(Σ_{x ≠ -u_k} S(x) λ((x + u_k)^{-1}),  p^m a_k - Σ a_i)`.
pub fn eq31_check(lambda: &Character, pairs: &Pairs, k: usize) -> Result<(Fe, Fe)> {
    validate_pairs(pairs)?;
    if lambda.is_trivial() {
        return precondition("the character must be nontrivial");
    }
    if k >= pairs.len() {
        return precondition(format!("index {k} out of range for {} pairs", pairs.len()));
    }
    let d = &lambda.domain;
    let kf = &lambda.target.field;
    let uk = pairs[k].1;
    let mut lhs = 0;
    for x in d.elements() {
        let shifted = d.add(x, uk);
        if shifted == 0 {
            continue;
        }
        let s = translate_sum_unchecked(lambda, pairs, x);
        lhs = kf.add(lhs, kf.mul(s, lambda.eval(d.inv(shifted)?)));
    }
    let r = lambda.target.characteristic();
    let qmod = kf.from_int((d.size() as u64 % r) as i64);
    let total = pairs.iter().fold(0, |acc, &(a, _)| kf.add(acc, a));
    let rhs = kf.sub(kf.mul(qmod, pairs[k].0), total);
    Ok((lhs, rhs))
}

/// `R_m(x) = Σ_{z ∈ F_{p^m}} λ(x + z)` for `λ` defined on a level containing
/// `F_{p^m}`.
pub fn partial_geometric_sum(lambda: &Character, m: u32, x: Fe) -> Result<Fe> {
    let d = &lambda.domain;
    if m == 0 || !d.degree().is_multiple_of(m) {
        return precondition(format!("F_{}^{m} is not a subfield of GF({})", d.characteristic(), d.size()));
    }
    if x >= d.size() {
        return precondition("point outside the character's domain");
    }
    let sub = construct_field(d.characteristic() as u64, m)?;
    let kf = &lambda.target.field;
    let mut acc = 0;
    for z in sub.elements() {
        let zz = embed_raw(&sub, z, d)?;
        acc = kf.add(acc, lambda.eval(d.add(x, zz)));
    }
    Ok(acc)
}

/// Whether `x` lies in the subfield `F_{p^m}` of its field.
pub fn in_subfield(f: &Field, x: Fe, m: u32) -> bool {
    let pm = arith::checked_pow(f.characteristic() as u64, m).unwrap_or(u64::MAX);
    f.pow(x, pm) == x
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetX {
    /// Order of `p` modulo `r`.
    pub d: u64,
    pub members: Vec<u64>,
    /// `(m, 2m)` with `p^m ≢ p^{2m} (mod r)`.
    pub witness: (u64, u64),
}

/// `{m ≤ bound : r ∤ p^m - 1}` together with the order `d` of `p` mod `r`
/// and a witness pair `(m, 2m)` with `m ≥ min_m` in the set.
pub fn set_x(p: u64, r: u64, bound: u64, min_m: u64) -> Result<SetX> {
    for x in [p, r] {
        if !arith::is_prime(x) {
            return Err(Error::NotPrime(x));
        }
    }
    if p == r {
        return precondition("p and r must differ");
    }
    if p % r == 1 {
        return precondition(format!("{p} ≡ 1 (mod {r})"));
    }
    let d = arith::mult_order(p, r).expect("p, r distinct primes");
    let members: Vec<u64> = (1..=bound).filter(|&m| arith::pow_mod(p, m, r) != 1).collect();
    let m = (min_m.max(1)..).find(|&m| m % d != 0).unwrap();
    Ok(SetX { d, members, witness: (m, 2 * m) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_field_examples() {
        let c = make_coeff_field(13, 4).unwrap();
        assert_eq!(c.degree(), 1);
        assert_eq!(c.field().pow(c.zeta(), 2), 12);
        assert_eq!(c.zeta(), 8); // 2^3 with generator 2
        assert_eq!(make_coeff_field(7, 4).unwrap().degree(), 2);
        assert!(make_coeff_field(3, 6).is_err());
        let u = CoeffField::for_units(3, 6).unwrap();
        assert_eq!((u.order(), u.degree()), (2, 1));
    }

    #[test]
    fn eval_examples() {
        let f5 = construct_field(5, 1).unwrap();
        let c = make_coeff_field(13, 4).unwrap();
        let triv = Character::trivial(&f5, &c).unwrap();
        assert!(f5.units().all(|x| triv.eval(x) == 1));
        let chi = Character::new(&f5, &c, 1).unwrap();
        assert_eq!(chi.eval(0), 0);
        assert_eq!(chi.eval(2), 8);
        // the exponent-3 character sends 2 to ζ^3 = 5
        assert_eq!(Character::new(&f5, &c, 3).unwrap().eval(2), 5);
    }

    #[test]
    fn multiplicativity_exhaustive() {
        for (p, m, r) in [(5, 1, 13), (7, 1, 3), (2, 2, 7), (3, 2, 5), (7, 2, 5)] {
            let d = construct_field(p, m).unwrap();
            let c = CoeffField::for_units(r, d.size() as u64 - 1).unwrap();
            for chi in Character::all(&d, &c).unwrap() {
                for x in d.units() {
                    for y in d.units() {
                        let k = chi.coeff_field();
                        assert_eq!(chi.eval(d.mul(x, y)), k.mul(chi.eval(x), chi.eval(y)));
                    }
                }
            }
        }
    }

    #[test]
    fn extension_restricts_to_original() {
        for (p, m, l, r) in [(3, 1, 2, 5), (3, 1, 4, 7), (2, 2, 4, 3), (5, 1, 2, 13), (7, 1, 2, 3)] {
            let d = construct_field(p, m).unwrap();
            let c = CoeffField::for_units(r, d.size() as u64 - 1).unwrap();
            for chi in Character::all(&d, &c).unwrap() {
                let ext = extend_character(&chi, l).unwrap();
                assert_eq!(ext.is_trivial(), chi.is_trivial());
                for x in d.units() {
                    let big = embed_raw(&d, x, ext.domain()).unwrap();
                    let want = lift_coefficient(chi.target(), chi.eval(x), ext.target()).unwrap();
                    assert_eq!(ext.eval(big), want);
                }
            }
        }
    }

    #[test]
    fn set_x_examples() {
        let s = set_x(3, 5, 8, 1).unwrap();
        assert_eq!(s.d, 4);
        assert_eq!(s.members, vec![1, 2, 3, 5, 6, 7]);
        let s = set_x(2, 3, 20, 1).unwrap();
        assert!(s.members.iter().all(|m| m % 2 == 1));
        assert!(set_x(11, 5, 8, 1).is_err());
    }

    #[test]
    fn counterexample_for_two_is_rejected() {
        assert!(counterexample_family(2, 1).is_err());
    }

    #[test]
    fn counterexample_p3_matches_hand_family() {
        let fam = counterexample_family(3, 1).unwrap();
        let f = &fam.field;
        assert_eq!(f.size(), 9);
        let g = f.generator();
        assert_eq!(fam.u, vec![1, g, f.neg(f.add(1, g))]);
        assert!(fam.column_sum_vanishes());
    }
}
