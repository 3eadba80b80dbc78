//! Finite fields GF(p^m).
//!
//! Elements are encoded as integers `Σ c_i p^i` in `[0, q)` where `c_i` are
//! the little-endian coefficients of the residue polynomial modulo the field's
//! modulus. Every field is table-driven (exp/log, and Zech logarithms or full
//! addition tables), so all hot-path operations are O(1).
//!
//! Generators are chosen so that the rule
//! `embed(g_m) = g_l^((p^l - 1)/(p^m - 1))` is a field homomorphism for every
//! tower `F_{p^m} ⊆ F_{p^l}`: the generator of `F_{p^l}` is the smallest
//! primitive element whose norm-power to each maximal subfield has the same
//! minimal polynomial as that subfield's generator. Embeddings are then
//! transitive automatically.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;
use crate::error::{precondition, Error, Result};

/// Raw field element encoding.
pub type Fe = u32;

pub type Field = Arc<GfField>;

pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

static FIELD_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_FIELD_BOUND);

/// Upper bound on `p^m` for constructed fields.
pub fn field_bound() -> u64 {
    FIELD_BOUND.load(Ordering::Relaxed)
}

pub fn set_field_bound(bound: u64) {
    FIELD_BOUND.store(bound, Ordering::Relaxed);
}

const TABLE_LIMIT: u32 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Repr {
    Prime,
    SmallExt,
    Zech,
}

pub struct GfField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Fe,
    repr: Repr,
    /// `exp[i] = g^i` for `i < 2(q-1)`, doubled to avoid a reduction in `mul`.
    exp: Vec<Fe>,
    /// `log[0]` is `u32::MAX`.
    log: Vec<u32>,
    zech: Vec<u32>,
    add_tab: Vec<u16>,
}

const NONE: u32 = u32::MAX;

impl fmt::Debug for GfField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.m, self.modulus)
    }
}

// ---------------------------------------------------------------------------
// polynomials over F_p, used only while building a field

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let pp = p as u64;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % pp;
        }
    }
    let mut r: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    poly_rem_monic(&mut r, f, p);
    r
}

/// In-place remainder modulo a monic `f`.
fn poly_rem_monic(r: &mut Vec<u32>, f: &[u32], p: u32) {
    let df = f.len() - 1;
    poly_trim(r);
    while r.len() > df {
        let lead = *r.last().unwrap() as u64;
        let shift = r.len() - 1 - df;
        for (i, &c) in f.iter().enumerate() {
            let sub = lead * c as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        poly_trim(r);
    }
}

fn poly_powmod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = base.to_vec();
    poly_rem_monic(&mut b, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    poly_trim(&mut acc);
    acc
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    arith::pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod_p(*b.last().unwrap(), p) as u64;
        let monic: Vec<u32> = b.iter().map(|&c| (c as u64 * inv % p as u64) as u32).collect();
        poly_rem_monic(&mut a, &monic, p);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Irreducibility of a monic polynomial of degree `m`: no factor of degree
/// `j <= m/2`, i.e. `gcd(f, t^(p^j) - t) = 1`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let t = vec![0, 1];
    let mut xp = t.clone();
    for _ in 1..=m / 2 {
        xp = poly_powmod(&xp, p as u64, f, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        poly_trim(&mut diff);
        if diff.is_empty() {
            return false;
        }
        let g = poly_gcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

fn decode(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

/// Field arithmetic before tables exist.
struct SlowField<'a> {
    p: u32,
    m: u32,
    modulus: &'a [u32],
}

impl SlowField<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let pa = decode(a, self.p, self.m);
        let pb = decode(b, self.p, self.m);
        let mut r = poly_mulmod(&pa, &pb, self.modulus, self.p);
        r.resize(self.m as usize, 0);
        encode(&r, self.p)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let da = decode(a, self.p, self.m);
        let db = decode(b, self.p, self.m);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        encode(&s, self.p)
    }
}

// ---------------------------------------------------------------------------
// registry

fn registry() -> &'static Mutex<HashMap<(u32, u32), Field>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn check_size(p: u64, m: u32) -> Result<u32> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidDegree("extension degree must be at least 1".into()));
    }
    let bound = field_bound();
    let size = arith::checked_pow(p, m).unwrap_or(u64::MAX);
    if size > bound || size > u32::MAX as u64 / 2 {
        return Err(Error::BoundExceeded { size, bound });
    }
    Ok(size as u32)
}

/// Returns the canonical `GF(p^m)`: lexicographically smallest monic
/// irreducible modulus `(c_0, c_1, ..., c_{m-1}, 1)` compared from `c_0`,
/// unless a modulus was pinned with [`pin_modulus`].
pub fn construct_field(p: u64, m: u32) -> Result<Field> {
    check_size(p, m)?;
    if let Some(f) = registry().lock().unwrap().get(&(p as u32, m)) {
        return Ok(f.clone());
    }
    let modulus = smallest_irreducible(p as u32, m);
    let field = Arc::new(GfField::build(p as u32, m, modulus)?);
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry((p as u32, m)).or_insert(field).clone())
}

/// Registers a specific modulus for `GF(p^m)`. Fails if the field was already
/// built with a different modulus.
pub fn pin_modulus(p: u64, modulus: &[u32]) -> Result<Field> {
    if modulus.len() < 2 {
        return Err(Error::InvalidModulus("degree must be at least 1".into()));
    }
    let m = (modulus.len() - 1) as u32;
    check_size(p, m)?;
    let p32 = p as u32;
    if modulus.iter().any(|&c| c >= p32) {
        return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {p})")));
    }
    if *modulus.last().unwrap() != 1 {
        return Err(Error::InvalidModulus("not monic".into()));
    }
    if !is_irreducible(modulus, p32) {
        return Err(Error::InvalidModulus("reducible".into()));
    }
    if let Some(f) = registry().lock().unwrap().get(&(p32, m)) {
        if f.modulus == modulus {
            return Ok(f.clone());
        }
        return Err(Error::InvalidModulus(format!(
            "GF({p}^{m}) already built with modulus {:?}",
            f.modulus
        )));
    }
    let field = Arc::new(GfField::build(p32, m, modulus.to_vec())?);
    let mut reg = registry().lock().unwrap();
    let entry = reg.entry((p32, m)).or_insert(field).clone();
    if entry.modulus != modulus {
        return Err(Error::InvalidModulus("raced with another construction".into()));
    }
    Ok(entry)
}

fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = p.pow(m);
    for idx in 0..count {
        // c_0 is the most significant digit of idx
        let mut coeffs = decode(idx, p, m);
        coeffs.reverse();
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl GfField {
    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Result<GfField> {
        let q = p.pow(m);
        let slow = SlowField { p, m, modulus: &modulus };
        let order = (q - 1) as u64;
        let factors = arith::prime_factors(order);

        // subfield data: (k, minimal polynomial of the subfield generator)
        let mut constraints: Vec<(u64, Vec<u32>)> = Vec::new();
        for ell in arith::prime_factors(m as u64) {
            let sub_deg = m / ell as u32;
            let sub = construct_field(p as u64, sub_deg)?;
            let k = order / (sub.q as u64 - 1);
            constraints.push((k, sub.generator_minpoly()));
        }

        let is_primitive = |g: u32| -> bool {
            if q == 2 {
                return g == 1;
            }
            factors.iter().all(|&l| slow.pow(g, order / l) != 1)
        };
        let compatible = |g: u32| -> bool {
            constraints.iter().all(|(k, mp)| {
                let h = slow.pow(g, *k);
                // Horner evaluation of the F_p-polynomial at h
                let mut acc = 0u32;
                for &c in mp.iter().rev() {
                    acc = slow.add(slow.mul(acc, h), c);
                }
                acc == 0
            })
        };
        let generator = (1..q)
            .find(|&g| is_primitive(g) && compatible(g))
            .ok_or_else(|| Error::InvalidModulus("no compatible generator".into()))?;

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NONE; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = slow.mul(x, generator);
        }
        for i in 0..n {
            exp[n + i] = exp[i];
        }
        if n == 1 {
            exp[1] = 1;
        }

        let repr = if m == 1 {
            Repr::Prime
        } else if q <= TABLE_LIMIT {
            Repr::SmallExt
        } else {
            Repr::Zech
        };

        let mut zech = Vec::new();
        let mut add_tab = Vec::new();
        if repr != Repr::Prime {
            // 1 + v only touches the constant digit
            let plus_one = |v: u32| (v - v % p) + (v % p + 1) % p;
            zech = (0..n)
                .map(|i| {
                    let w = plus_one(exp[i]);
                    if w == 0 {
                        NONE
                    } else {
                        log[w as usize]
                    }
                })
                .collect();
        }
        let mut field = GfField {
            p,
            m,
            q,
            modulus,
            generator,
            repr,
            exp,
            log,
            zech,
            add_tab: Vec::new(),
        };
        if repr == Repr::SmallExt {
            add_tab.reserve((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    add_tab.push(field.zech_add(a, b) as u16);
                }
            }
            field.add_tab = add_tab;
        }
        Ok(field)
    }

    /// Minimal polynomial of the generator over F_p (coefficients low to high).
    fn generator_minpoly(&self) -> Vec<u32> {
        // product of (t - g^(p^i)) for i < m
        let mut poly: Vec<Fe> = vec![1];
        let mut conj = self.generator;
        for _ in 0..self.m {
            let mut next = vec![0; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.sub(next[i], self.mul(c, conj));
            }
            poly = next;
            conj = self.pow(conj, self.p as u64);
        }
        debug_assert!(poly.iter().all(|&c| c < self.p));
        poly
    }

    fn zech_add(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.q - 1;
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[d as usize];
        if z == NONE {
            0
        } else {
            self.exp[(la + z) as usize]
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    /// `n mod p` in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.p as i64) as Fe
    }

    pub fn coefficients(&self, x: Fe) -> Vec<u32> {
        decode(x, self.p, self.m)
    }

    pub fn from_coefficients(&self, c: &[u32]) -> Result<Fe> {
        if c.len() != self.m as usize || c.iter().any(|&d| d >= self.p) {
            return precondition(format!("expected {} residues mod {}", self.m, self.p));
        }
        Ok(encode(c, self.p))
    }

    pub fn elements(&self) -> std::ops::Range<Fe> {
        0..self.q
    }

    pub fn units(&self) -> std::ops::Range<Fe> {
        1..self.q
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match self.repr {
            Repr::Prime => {
                let s = a + b;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
            Repr::SmallExt => self.add_tab[(a * self.q + b) as usize] as Fe,
            Repr::Zech => self.zech_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a == 0 {
            return 0;
        }
        match self.repr {
            Repr::Prime => self.p - a,
            _ if self.p == 2 => a,
            _ => {
                let half = (self.q - 1) / 2;
                self.exp[(self.log[a as usize] + half) as usize]
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        match self.repr {
            Repr::Prime => ((a as u64 * b as u64) % self.p as u64) as Fe,
            _ => self.exp[(self.log[a as usize] + self.log[b as usize]) as usize],
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        let l = self.log[a as usize];
        Ok(self.exp[((n - l) % n) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer exponent; `0^e` is 0 for `e > 0`, 1 for `e = 0`,
    /// and a division error for `e < 0`.
    pub fn pow_signed(&self, a: Fe, e: i64) -> Result<Fe> {
        if a == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(0),
                std::cmp::Ordering::Equal => Ok(1),
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
            };
        }
        let n = (self.q - 1) as i128;
        let l = self.log[a as usize] as i128;
        Ok(self.exp[(l * e as i128).rem_euclid(n) as usize])
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l as u128 * e as u128) % n as u128) as usize]
    }

    /// `g^e` for the field generator.
    #[inline]
    pub fn exp(&self, e: u64) -> Fe {
        self.exp[(e % (self.q as u64 - 1)) as usize]
    }

    /// Discrete logarithm base the generator, in `[0, q-1)`.
    pub fn dlog(&self, a: Fe) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroLog);
        }
        Ok(self.log[a as usize] as u64)
    }

    #[inline]
    pub(crate) fn log_unchecked(&self, a: Fe) -> u32 {
        self.log[a as usize]
    }

    /// `dst += c * src`.
    pub fn axpy(&self, dst: &mut [Fe], c: Fe, src: &[Fe]) {
        if c == 0 {
            return;
        }
        match self.repr {
            Repr::Prime => {
                let p = self.p as u64;
                let c = c as u64;
                for (d, &s) in dst.iter_mut().zip(src) {
                    if s != 0 {
                        *d = ((*d as u64 + c * s as u64) % p) as Fe;
                    }
                }
            }
            _ => {
                let lc = self.log[c as usize];
                for (d, &s) in dst.iter_mut().zip(src) {
                    if s != 0 {
                        let t = self.exp[(lc + self.log[s as usize]) as usize];
                        *d = self.add(*d, t);
                    }
                }
            }
        }
    }

    pub fn scale(&self, v: &mut [Fe], c: Fe) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub fn element(self: &Arc<Self>, value: Fe) -> FieldElement {
        assert!(value < self.q, "{value} out of range for GF({})", self.q);
        FieldElement { field: self.clone(), value }
    }

    pub fn format(&self, x: Fe) -> String {
        if self.m == 1 {
            return x.to_string();
        }
        let digits = self.coefficients(x);
        let mut terms = Vec::new();
        for (i, &d) in digits.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let coeff = if d == 1 && i > 0 { String::new() } else { d.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// One-line description `p m c_0 c_1 ... c_m`.
    pub fn spec_line(&self) -> String {
        let mut parts = vec![self.p.to_string(), self.m.to_string()];
        parts.extend(self.modulus.iter().map(|c| c.to_string()));
        parts.join(" ")
    }

    pub fn same_as(&self, other: &GfField) -> bool {
        std::ptr::eq(self, other) || (self.p == other.p && self.modulus == other.modulus)
    }
}

/// Parses a description line and pins the modulus it names.
pub fn parse_spec_line(line: &str) -> Result<Field> {
    let nums: Vec<u64> = line
        .split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect::<Result<_>>()?;
    if nums.len() < 4 {
        return Err(Error::Parse("expected `p m c_0 ... c_m`".into()));
    }
    let (p, m) = (nums[0], nums[1] as usize);
    if nums.len() != m + 3 {
        return Err(Error::Parse(format!("degree {m} needs {} coefficients", m + 1)));
    }
    let coeffs: Vec<u32> = nums[2..].iter().map(|&c| c as u32).collect();
    pin_modulus(p, &coeffs)
}

/// Embeds `x ∈ src` into `dst` along the generator-power rule.
pub fn embed_raw(src: &GfField, x: Fe, dst: &GfField) -> Result<Fe> {
    if src.p != dst.p || !dst.m.is_multiple_of(src.m) {
        return precondition(format!(
            "GF({}^{}) does not embed in GF({}^{})",
            src.p, src.m, dst.p, dst.m
        ));
    }
    if x == 0 {
        return Ok(0);
    }
    let k = (dst.q as u64 - 1) / (src.q as u64 - 1);
    Ok(dst.exp(src.log[x as usize] as u64 * k))
}

pub fn embed(x: &FieldElement, target: &Field) -> Result<FieldElement> {
    let v = embed_raw(&x.field, x.value, target)?;
    Ok(target.element(v))
}

/// A square root of `c ∈ GF(q)` in `GF(q^2)`; of the two roots, the one with
/// the smaller discrete logarithm.
pub fn sqrt_ext(c: &FieldElement) -> Result<FieldElement> {
    if c.value == 0 {
        return precondition("sqrt_ext of zero");
    }
    let base = &c.field;
    let ext = construct_field(base.p as u64, base.m * 2)?;
    let big = embed(c, &ext)?;
    let n = ext.q as u64 - 1;
    let e = ext.dlog(big.value)?;
    let j = if n.is_multiple_of(2) {
        // e is even: (q+1) * dlog_q(c)
        debug_assert_eq!(e % 2, 0);
        e / 2
    } else {
        // characteristic 2: squaring is a bijection
        arith::solve_linear_congruence(2, e, n).expect("2 invertible mod odd order")
    };
    Ok(ext.element(ext.exp(j)))
}

pub fn rpart_decompose(n: u64, r: u64) -> (u64, u64) {
    arith::rpart_decompose(n, r)
}

// ---------------------------------------------------------------------------
// owned elements

/// A field element tied to its field; mixing fields is an error.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: Fe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Fe {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.field.coefficients(self.value)
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.q as u64,
                right: other.field.q as u64,
            })
        }
    }

    pub fn arith(&self, other: &FieldElement, op: ArithOp) -> Result<FieldElement> {
        self.check(other)?;
        let f = &self.field;
        let (a, b) = (self.value, other.value);
        let v = match op {
            ArithOp::Add => f.add(a, b),
            ArithOp::Sub => f.sub(a, b),
            ArithOp::Mul => f.mul(a, b),
            ArithOp::Div => f.div(a, b)?,
        };
        Ok(f.element(v))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.field.element(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        Ok(self.field.element(self.field.pow_signed(self.value, e)?))
    }

    pub fn dlog(&self) -> Result<u64> {
        self.field.dlog(self.value)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.field.format(self.value), self.field.q)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            /// Panics when the operands live in different fields or on
            /// division by zero; use [`FieldElement::arith`] to get a `Result`.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.arith(rhs, $op).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);
binop!(Div, div, ArithOp::Div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.element(self.field.neg(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: u32) -> Field {
        construct_field(p, m).unwrap()
    }

    #[test]
    fn small_fields_match_examples() {
        let f3 = gf(3, 1);
        assert_eq!(f3.modulus(), &[0, 1]);
        assert_eq!(f3.generator(), 2);
        let f9 = gf(3, 2);
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(gf(5, 1).generator(), 2);
        assert_eq!(gf(7, 1).generator(), 3);
    }

    #[test]
    fn modulus_is_smallest_irreducible_by_root_search() {
        // degree 2 and 3: irreducible iff no roots in F_p
        for p in [2u64, 3, 5, 7] {
            for m in [2u32, 3] {
                let f = gf(p, m);
                let p32 = p as u32;
                let has_root = |c: &[u32]| {
                    (0..p32).any(|x| {
                        c.iter().rev().fold(0u64, |acc, &k| (acc * x as u64 + k as u64) % p) == 0
                    })
                };
                let mut expect = None;
                'outer: for idx in 0..p32.pow(m) {
                    let mut c = decode(idx, p32, m);
                    c.reverse();
                    c.push(1);
                    if !has_root(&c) {
                        expect = Some(c);
                        break 'outer;
                    }
                }
                assert_eq!(f.modulus(), expect.unwrap().as_slice(), "GF({p}^{m})");
            }
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = gf(5, 1);
        assert_eq!(f5.inv(2).unwrap(), 3);
        let f9 = gf(3, 2);
        let t = f9.from_coefficients(&[0, 1]).unwrap();
        assert_eq!(f9.mul(t, t), 2);
        for (p, m) in [(2, 4), (3, 3), (5, 2), (7, 1), (2, 11)] {
            let f = gf(p, m);
            assert_eq!(f.pow(f.generator(), f.size() as u64 - 1), 1);
        }
        assert_eq!(f5.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn dlog_examples() {
        let f5 = gf(5, 1);
        assert_eq!(f5.dlog(1).unwrap(), 0);
        assert_eq!(f5.dlog(f5.generator()).unwrap(), 1);
        assert_eq!(f5.dlog(4).unwrap(), 2);
        assert_eq!(f5.dlog(0), Err(Error::ZeroLog));
    }

    #[test]
    fn generator_has_full_order() {
        for (p, m) in [(2, 1), (2, 6), (3, 4), (5, 3), (13, 2), (7, 2)] {
            let f = gf(p, m);
            let g = f.generator();
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = f.mul(x, g);
                k += 1;
            }
            assert_eq!(k, f.size() - 1);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, m) in [(2, 3), (3, 2), (5, 1), (2, 4)] {
            let f = gf(p, m);
            // compare against slow polynomial arithmetic
            let slow = SlowField { p: f.p, m: f.m, modulus: &f.modulus };
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), slow.add(a, b));
                    assert_eq!(f.mul(a, b), slow.mul(a, b));
                    assert_eq!(f.add(f.sub(a, b), b), a);
                    if b != 0 {
                        assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
                    }
                }
            }
        }
    }

    #[test]
    fn zech_field_matches_slow_arithmetic() {
        let f = gf(3, 7); // 2187 elements, Zech representation
        assert_eq!(f.repr, Repr::Zech);
        let slow = SlowField { p: f.p, m: f.m, modulus: &f.modulus };
        for a in (0..f.size()).step_by(37) {
            for b in (0..f.size()).step_by(41) {
                assert_eq!(f.add(a, b), slow.add(a, b));
                assert_eq!(f.mul(a, b), slow.mul(a, b));
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_prime_field() {
        for (p, m) in [(2, 6), (3, 4), (5, 2), (7, 2), (2, 12)] {
            let f = gf(p, m);
            let mut seen = vec![false; f.size() as usize];
            let mut fixed = 0;
            for x in f.elements() {
                let y = f.pow(x, p);
                assert!(!seen[y as usize], "Frobenius not injective");
                seen[y as usize] = true;
                if x == y {
                    fixed += 1;
                    assert!(x < p as u32);
                }
            }
            assert_eq!(fixed, p);
        }
    }

    #[test]
    fn embed_examples() {
        let f3 = gf(3, 1);
        let f9 = gf(3, 2);
        assert_eq!(embed_raw(&f3, 1, &f9).unwrap(), 1);
        assert_eq!(embed_raw(&f3, 2, &f9).unwrap(), f9.exp(4));
        assert!(embed_raw(&gf(3, 2), 1, &gf(3, 3)).is_err());
    }

    #[test]
    fn embeddings_are_homomorphisms_and_transitive() {
        for (p, towers) in [(2u64, vec![(1, 2, 4), (1, 3, 6), (2, 4, 8)]), (3, vec![(1, 2, 4)]), (5, vec![(1, 2, 4)])] {
            for (a, b, c) in towers {
                let fa = gf(p, a);
                let fb = gf(p, b);
                let fc = gf(p, c);
                for x in fa.elements() {
                    let direct = embed_raw(&fa, x, &fc).unwrap();
                    let via = embed_raw(&fb, embed_raw(&fa, x, &fb).unwrap(), &fc).unwrap();
                    assert_eq!(direct, via);
                    for y in fa.elements() {
                        let e = |v| embed_raw(&fa, v, &fb).unwrap();
                        assert_eq!(e(fa.add(x, y)), fb.add(e(x), e(y)));
                        assert_eq!(e(fa.mul(x, y)), fb.mul(e(x), e(y)));
                    }
                }
            }
        }
    }

    #[test]
    fn prime_subfield_embeds_as_constants() {
        let f7 = gf(7, 1);
        let f49 = gf(7, 2);
        for x in f7.elements() {
            assert_eq!(embed_raw(&f7, x, &f49).unwrap(), x);
        }
    }

    #[test]
    fn sqrt_ext_examples() {
        let f5 = gf(5, 1);
        let f25 = gf(5, 2);
        let r = sqrt_ext(&f5.element(4)).unwrap();
        assert_eq!(r.value(), embed_raw(&f5, 2, &f25).unwrap());
        let one = sqrt_ext(&f5.element(1)).unwrap();
        assert_eq!(one.value(), 1);
        let f7 = gf(7, 1);
        let w = f7.element(f7.generator());
        let y = sqrt_ext(&w).unwrap();
        assert_eq!(&y * &y, embed(&w, y.field()).unwrap());
        // characteristic 2: unique root
        let f4 = gf(2, 2);
        for x in f4.units() {
            let y = sqrt_ext(&f4.element(x)).unwrap();
            assert_eq!(&y * &y, embed(&f4.element(x), y.field()).unwrap());
        }
        assert!(sqrt_ext(&f5.element(0)).is_err());
    }

    #[test]
    fn construct_errors() {
        assert_eq!(construct_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(construct_field(2, 21), Err(Error::BoundExceeded { .. })));
        assert!(matches!(construct_field(3, 0), Err(Error::InvalidDegree(_))));
    }

    #[test]
    fn mismatched_fields_error() {
        let a = gf(5, 1).element(1);
        let b = gf(7, 1).element(1);
        assert!(matches!(a.arith(&b, ArithOp::Add), Err(Error::FieldMismatch { .. })));
        assert_eq!(a.arith(&gf(5, 1).element(0), ArithOp::Div).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn spec_line_roundtrip() {
        let f = gf(3, 2);
        assert_eq!(f.spec_line(), "3 2 1 0 1");
        let g = parse_spec_line("3 2 1 0 1").unwrap();
        assert!(Arc::ptr_eq(&f, &g));
        assert!(parse_spec_line("3 2 1 0").is_err());
        assert!(parse_spec_line("3 2 2 0 1").is_err()); // already built differently
        assert!(matches!(pin_modulus(5, &[1, 0, 1]), Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn pinned_modulus_is_used() {
        // GF(19^2): smallest irreducible is t^2 + 1; pin t^2 + t + 2 instead
        let f = pin_modulus(19, &[2, 1, 1]).unwrap();
        assert_eq!(gf(19, 2).modulus(), &[2, 1, 1]);
        let f11 = gf(19, 1);
        for x in f11.elements() {
            for y in f11.elements() {
                let e = |v| embed_raw(&f11, v, &f).unwrap();
                assert_eq!(e(f11.add(x, y)), f.add(e(x), e(y)));
            }
        }
    }

    #[test]
    fn display() {
        let f9 = gf(3, 2);
        assert_eq!(f9.format(0), "0");
        assert_eq!(f9.format(3), "t");
        assert_eq!(f9.format(7), "1+2t");
        assert_eq!(gf(5, 1).element(3).to_string(), "3");
    }
}
