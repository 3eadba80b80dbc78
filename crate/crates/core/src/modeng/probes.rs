//! Finite checks on induced modules: the `e ± s` splitting, the `Λ`
//! identities, the maps onto principal series, cyclic generation from
//! `Ū s`-combinations, and the quotients of `Ind_N k_±`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chars::{extend_character, make_coeff_field, Character};
use crate::error::{precondition, Result};
use crate::ffield::{construct_field, embed_raw, sqrt_ext, Fe, Field};
use crate::linalg::Matrix;
use crate::report::ProbeReport;
use crate::sl2::{BruhatForm, GroupElement};

use super::induced::{AlgebraElement, InducedModule, ModuleVector, Sign};
use super::spin::{is_stable, spin, spin_until};

fn trivial_character(level: &Field, r: u64) -> Result<Character> {
    let coeff = make_coeff_field(r, 1)?;
    Character::trivial(level, &coeff)
}

fn check_cross(level: &Field, r: u64) -> Result<()> {
    if r == level.characteristic() as u64 {
        return precondition(format!("coefficient characteristic {r} equals the field characteristic"));
    }
    Ok(())
}

fn random_unit(rng: &mut ChaCha8Rng, f: &Field) -> Fe {
    rng.gen_range(1..f.size())
}

/// A uniformly random group element, drawn through its Bruhat form.
pub fn random_element(rng: &mut ChaCha8Rng, module: &InducedModule) -> GroupElement {
    let f = module.level();
    let sl2 = module.sl2();
    let x = rng.gen_range(0..f.size());
    let c = random_unit(rng, f);
    let form = if rng.gen_range(0..=f.size() as u64) == 0 {
        BruhatForm::Borel { x, c }
    } else {
        BruhatForm::BigCell { x, c, y: rng.gen_range(0..f.size()) }
    };
    sl2.assemble(&form).expect("valid Bruhat data")
}

/// A random vector with at most `terms` nonzero coordinates.
pub fn random_vector(rng: &mut ChaCha8Rng, module: &InducedModule, terms: usize) -> ModuleVector {
    let f = module.coeff();
    let mut v = module.zero();
    for _ in 0..terms {
        let j = rng.gen_range(0..module.dim() as u32);
        let c = rng.gen_range(0..f.size());
        v = v.axpy(f, c, &module.basis(j));
    }
    v
}

/// The `e ± s` splitting of `Ind_T k_tr`: `s` acts on the right (through
/// `gT ↦ gsT`), so `e_± = (1 ± R)/2` are module endomorphisms.
pub fn decomposition_check(level: &Field, r: u64) -> Result<ProbeReport> {
    if r == 2 {
        return precondition("the e ± s splitting needs odd characteristic");
    }
    let tr = trivial_character(level, r)?;
    let m = InducedModule::torus(&tr);
    let f = m.coeff().clone();
    let sl2 = m.sl2();
    let q = level.size() as u64;
    let n = m.dim();
    let mut right_s = Matrix::zeros(&f, n, n);
    for j in 0..n as u32 {
        let (k, c) = m.locate(&sl2.mul(&m.rep(j), &sl2.s()));
        right_s.set(k as usize, j as usize, c);
    }
    let half = f.inv(2)?;
    let id = Matrix::identity(&f, n);
    let e_plus = id.add(&right_s).scaled(half);
    let e_minus = id.add(&right_s.scaled(f.neg(1))).scaled(half);

    let mut rep = ProbeReport::new("decompose", q, r);
    rep.expect("e_+ idempotent", e_plus.mul(&e_plus) == e_plus);
    rep.expect("e_- idempotent", e_minus.mul(&e_minus) == e_minus);
    rep.expect("e_+ e_- = 0", e_plus.mul(&e_minus).is_zero());
    rep.expect("e_- e_+ = 0", e_minus.mul(&e_plus).is_zero());
    rep.expect("e_+ + e_- = identity", e_plus.add(&e_minus) == id);
    let half_dim = q * (q + 1) / 2;
    rep.expect_eq("rank e_+", half_dim, e_plus.rank() as u64);
    rep.expect_eq("rank e_-", half_dim, e_minus.rank() as u64);
    let gens: Vec<Matrix> = m.generator_ops().iter().map(|op| op.to_matrix()).collect();
    let commute = gens.iter().all(|g| g.mul(&e_plus) == e_plus.mul(g) && g.mul(&e_minus) == e_minus.mul(g));
    rep.expect("e_± commute with generators", commute);

    for (sign, e, label) in [(Sign::Plus, &e_plus, "+"), (Sign::Minus, &e_minus, "-")] {
        let nm = InducedModule::normalizer(level, sign, &f);
        rep.expect_eq(&format!("dim Ind_N k_{label}"), half_dim, nm.dim() as u64);
        // g·1_± ↦ g e_± 1_tr
        let cols: Vec<Vec<Fe>> = (0..nm.dim() as u32)
            .map(|j| {
                let (k, c) = m.locate(&nm.rep(j));
                let mut col = e.column(k as usize);
                f.scale(&mut col, c);
                col
            })
            .collect();
        let phi = Matrix::from_columns(&f, n, &cols);
        let nops: Vec<Matrix> = nm.generator_ops().iter().map(|op| op.to_matrix()).collect();
        let equivariant = gens.iter().zip(&nops).all(|(gt, gn)| phi.mul(gn) == gt.mul(&phi));
        rep.expect(&format!("Ind_N k_{label} -> e_{label} Ind_T equivariant"), equivariant);
        rep.expect_eq(&format!("rank of Ind_N k_{label} -> e_{label} Ind_T"), half_dim, phi.rank() as u64);
    }
    Ok(rep)
}

/// The four `Λ` identities in `Ind_N k_-` for every admissible parameter.
pub fn lambda_identities(level: &Field, r: u64) -> Result<ProbeReport> {
    let coeff = make_coeff_field(r, 1)?;
    let f = coeff.field().clone();
    let m = InducedModule::normalizer(level, Sign::Minus, &f);
    let sl2 = m.sl2();
    let lf = level;
    let q = lf.size() as u64;
    let mut rep = ProbeReport::new("lambda-identities", q, r);
    let lam = |z: Fe| m.lambda_vec(z);
    let neg = f.neg(1);

    let (mut first, mut second, mut third, mut fourth) = (0u64, 0u64, 0u64, 0u64);
    let (mut n_third, mut n_fourth) = (0u64, 0u64);
    for z in lf.units() {
        let zi = lf.inv(z)?;
        let target = lam(lf.neg(zi))?.scale(&f, neg);
        if m.act(&sl2.eps(z), &lam(zi)?)? == target {
            first += 1;
        }
        if m.act(&sl2.s(), &lam(z)?)? == target {
            second += 1;
        }
    }
    for x in lf.units() {
        for y in lf.units() {
            let xy1 = lf.sub(lf.mul(x, y), 1);
            if xy1 == 0 {
                continue;
            }
            n_third += 1;
            let lhs = m.act(&sl2.mul(&sl2.s(), &sl2.eps(x)), &lam(y)?)?;
            let a = m.act(&sl2.eps(lf.neg(lf.inv(x)?)), &lam(lf.mul(x, xy1))?)?;
            let rhs = a.add(&f, &lam(x)?).sub(&f, &lam(lf.div(xy1, y)?)?);
            if lhs == rhs {
                third += 1;
            }
        }
    }
    for c in lf.units() {
        let c2i = lf.inv(lf.mul(c, c))?;
        for z in lf.units() {
            n_fourth += 1;
            if m.act(&sl2.h(c)?, &lam(z)?)? == lam(lf.mul(c2i, z))? {
                fourth += 1;
            }
        }
    }
    let units = q - 1;
    rep.expect_eq("ε(z)Λ(1/z) = -Λ(-1/z) for all z", units, first);
    rep.expect_eq("sΛ(z) = -Λ(-1/z) for all z", units, second);
    rep.expect_eq("sε(x)Λ(y) three-term expansion for all xy ≠ 1", n_third, third);
    rep.expect_eq("h(c)Λ(z) = Λ(z/c²) for all c, z", n_fourth, fourth);
    rep.expect("s·1_- = -1_-", m.act(&sl2.s(), &m.one())? == m.one().scale(&f, neg));
    Ok(rep)
}

/// Column `j` of a monomial-valued map: `b_j ↦ c·b'_k`.
type MonomialMap = Vec<(u32, Fe)>;

fn apply_map(target: &InducedModule, map: &MonomialMap, v: &ModuleVector) -> ModuleVector {
    let f = target.coeff();
    let mut out = target.zero();
    for (j, c) in v.support() {
        let (k, s) = map[j as usize];
        out = out.axpy(f, f.mul(c, s), &target.basis(k));
    }
    out
}

fn map_rank(target: &InducedModule, map: &MonomialMap) -> usize {
    let cols: Vec<Vec<Fe>> = map
        .iter()
        .map(|&(k, c)| {
            let mut col = vec![0; target.dim()];
            col[k as usize] = c;
            col
        })
        .collect();
    Matrix::from_columns(target.coeff(), target.dim(), &cols).rank()
}

/// `φ_e: Ind_T k_θ → Ind_B k_θ` and `φ_s: Ind_T k_θ → Ind_B k_{θ^s}` with
/// `θ^s` the inverse character.
pub fn phi_check(theta: &Character, seed: u64, samples: usize) -> Result<ProbeReport> {
    let m = InducedModule::torus(theta);
    let theta_s = theta.inverse();
    let be = InducedModule::borel(theta);
    let bs = InducedModule::borel(&theta_s);
    let sl2 = m.sl2();
    let lf = m.level().clone();
    let q = lf.size();
    let phi_e: MonomialMap = (0..m.dim() as u32).map(|j| be.locate(&m.rep(j))).collect();
    let phi_s: MonomialMap = (0..m.dim() as u32).map(|j| bs.locate(&sl2.mul(&m.rep(j), &sl2.s()))).collect();

    let mut rep = ProbeReport::new("phi", q as u64, theta.target().characteristic());
    rep.theta_exponent = Some(theta.exponent());
    rep.seed = Some(seed);
    rep.expect("φ_e(1_θ) = 1̂_θ", apply_map(&be, &phi_e, &m.one()) == be.one());
    let s_hat = bs.act(&bs.sl2().s(), &bs.one())?;
    rep.expect("φ_s(1_θ) = s·1̂_{θ^s}", apply_map(&bs, &phi_s, &m.one()) == s_hat);

    for (name, target, map) in [("φ_e", &be, &phi_e), ("φ_s", &bs, &phi_s)] {
        let mut ok = true;
        for g in m.generators() {
            for j in 0..m.dim() as u32 {
                let b = m.basis(j);
                if apply_map(target, map, &m.act(&g, &b)?) != target.act(&g, &apply_map(target, map, &b))? {
                    ok = false;
                }
            }
        }
        rep.expect(&format!("{name} commutes with generators on every basis vector"), ok);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut held = 0;
        for _ in 0..samples {
            let g = random_element(&mut rng, &m);
            let v = random_vector(&mut rng, &m, 6);
            if apply_map(target, map, &m.act(&g, &v)?) == target.act(&g, &apply_map(target, map, &v))? {
                held += 1;
            }
        }
        rep.expect_eq(&format!("{name} equivariant on random (g, v)"), samples, held);
        rep.expect_eq(&format!("rank {name}"), (q + 1) as usize, map_rank(target, map));
    }

    // φ_s(ε(x)sε(y)1_θ) = θ^s(-y) ε(x - 1/y) s 1̂_{θ^s}
    let mut held = 0;
    let mut total = 0;
    for x in lf.elements() {
        for y in lf.units() {
            total += 1;
            let j = q + x * q + y;
            let expected = (1 + lf.sub(x, lf.inv(y)?), theta_s.eval(lf.neg(y)));
            if phi_s[j as usize] == expected {
                held += 1;
            }
        }
    }
    rep.expect_eq("φ_s on ε(x)sε(y)1_θ matches θ^s(-y) ε(x-1/y) s 1̂", total, held);
    Ok(rep)
}

fn dense_sum(module: &InducedModule, vs: &[&ModuleVector]) -> Vec<Fe> {
    let f = module.coeff();
    let mut out = module.zero();
    for v in vs {
        out = out.add(f, v);
    }
    module.to_dense(&out)
}

/// `Ind_T k_tr` at level `q²` with the vectors used to test generation by
/// `ξ = Σ_{z ≠ 0} a_z Ū s ε(z)·1`.
pub struct TrivialGeneration {
    base: Field,
    module: InducedModule,
    dbar: AlgebraElement,
    /// `Ū s ε(z)·1` for `z ∈ F_q^*` in encoding order.
    usz: Vec<ModuleVector>,
    /// `Ū s Ū^* ·1`.
    usu: ModuleVector,
    x_plus_y: Vec<Fe>,
    e_plus_s: Vec<Fe>,
}

impl TrivialGeneration {
    pub fn new(base: &Field, r: u64) -> Result<TrivialGeneration> {
        check_cross(base, r)?;
        let level = construct_field(base.characteristic() as u64, 2 * base.degree())?;
        let module = InducedModule::torus(&trivial_character(&level, r)?);
        let sl2 = module.sl2();
        let ubar = module.ubar(base)?;
        let dbar = module.dbar(base)?;
        let one = module.one();
        let mut usz = Vec::new();
        for z in base.units() {
            let zz = embed_raw(base, z, &level)?;
            let v = module.act(&sl2.mul(&sl2.s(), &sl2.eps(zz)), &one)?;
            usz.push(module.act_algebra(&ubar, &v)?);
        }
        let usu = usz.iter().fold(module.zero(), |acc, v| acc.add(module.coeff(), v));
        let x = module.act_algebra(&ubar, &one)?;
        let s1 = module.act(&sl2.s(), &one)?;
        let y = module.act_algebra(&ubar, &s1)?;
        let x_plus_y = dense_sum(&module, &[&x, &y]);
        let e_plus_s = dense_sum(&module, &[&one, &s1]);
        Ok(TrivialGeneration { base: base.clone(), module, dbar, usz, usu, x_plus_y, e_plus_s })
    }

    pub fn module(&self) -> &InducedModule {
        &self.module
    }

    pub fn coeff(&self) -> &Field {
        self.module.coeff()
    }

    /// Random `a_z` with nonzero sum.
    pub fn random_coeffs(&self, rng: &mut ChaCha8Rng) -> Vec<Fe> {
        let f = self.coeff();
        loop {
            let a: Vec<Fe> = self.base.units().map(|_| rng.gen_range(0..f.size())).collect();
            if a.iter().fold(0, |s, &x| f.add(s, x)) != 0 {
                return a;
            }
        }
    }

    /// `(eq21, first, second)`: whether `𝔇̄ξ = A Ū s Ū^*·1`, whether
    /// `Ū·1 + Ū s·1` lies in `kGξ`, and whether `(e + s)·1` does.
    pub fn trial(&self, a: &[Fe]) -> Result<(bool, bool, bool)> {
        let f = self.coeff();
        if a.len() != self.usz.len() {
            return precondition(format!("expected {} coefficients", self.usz.len()));
        }
        let total = a.iter().fold(0, |s, &x| f.add(s, x));
        if total == 0 {
            return precondition("coefficients sum to zero");
        }
        let xi = self.usz.iter().zip(a).fold(self.module.zero(), |acc, (v, &c)| acc.axpy(f, c, v));
        let eq21 = self.module.act_algebra(&self.dbar, &xi)? == self.usu.scale(f, total);
        let ops = self.module.generator_ops();
        let dense = self.module.to_dense(&xi);
        let targets = [self.x_plus_y.clone(), self.e_plus_s.clone()];
        let sp = spin_until(f, self.module.dim(), &ops, &[dense], &targets);
        Ok((eq21, sp.contains(&self.x_plus_y), sp.contains(&self.e_plus_s)))
    }
}

/// Generation from `Ū s`-combinations in `Ind_T k_tr` over `trials` random
/// coefficient sets (or the single set `fixed`).
pub fn lemma21(base: &Field, r: u64, trials: usize, seed: u64, fixed: Option<&[Fe]>) -> Result<ProbeReport> {
    let setup = TrivialGeneration::new(base, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets: Vec<Vec<Fe>> = match fixed {
        Some(a) => vec![a.to_vec()],
        None => (0..trials).map(|_| setup.random_coeffs(&mut rng)).collect(),
    };
    let (mut eq21, mut first, mut second) = (0, 0, 0);
    for a in &sets {
        let (e, i, ii) = setup.trial(a)?;
        eq21 += e as usize;
        first += i as usize;
        second += ii as usize;
    }
    let n = sets.len();
    let mut rep = ProbeReport::new("lemma21", base.size() as u64, r);
    rep.seed = Some(seed);
    rep.observe("level", base.size() as u64 * base.size() as u64);
    rep.observe("trials", n);
    rep.expect_eq("𝔇̄ξ = A·Ū s Ū*·1", n, eq21);
    rep.expect_eq("Ū·1 + Ū s·1 in kGξ", n, first);
    rep.observe("(e + s)·1 in kGξ", format!("{second}/{n}"));
    Ok(rep)
}

/// `Ind_T k_θ` at level `q²` (with `θ` extended from `F_q`) and the data for
/// generation by `ζ = Σ_{z ≠ 0} c_z Ū s ε(z)·1_θ`.
pub struct TwistedGeneration {
    base: Field,
    theta: Character,
    module: InducedModule,
    ubar: AlgebraElement,
    /// `Ū s ε(w)·1_θ` for `w ∈ F_q` in encoding order.
    usw: Vec<ModuleVector>,
    x: ModuleVector,
    y: ModuleVector,
}

impl TwistedGeneration {
    pub fn new(theta: &Character) -> Result<TwistedGeneration> {
        let base = theta.domain().clone();
        check_cross(&base, theta.target().characteristic())?;
        if theta.is_trivial() {
            return precondition("the character must be nontrivial");
        }
        let theta_l = extend_character(theta, 2 * base.degree())?;
        let module = InducedModule::torus(&theta_l);
        let level = module.level().clone();
        let sl2 = module.sl2();
        let ubar = module.ubar(&base)?;
        let one = module.one();
        let mut usw = Vec::new();
        for w in base.elements() {
            let ww = embed_raw(&base, w, &level)?;
            let v = module.act(&sl2.mul(&sl2.s(), &sl2.eps(ww)), &one)?;
            usw.push(module.act_algebra(&ubar, &v)?);
        }
        let x = module.act_algebra(&ubar, &one)?;
        let y = usw[0].clone();
        Ok(TwistedGeneration { base, theta: theta_l, module, ubar, usw, x, y })
    }

    pub fn module(&self) -> &InducedModule {
        &self.module
    }

    pub fn coeff(&self) -> &Field {
        self.module.coeff()
    }

    fn embed(&self, z: Fe) -> Fe {
        embed_raw(&self.base, z, self.module.level()).expect("base embeds in the level")
    }

    /// `(C, D) = (Σ c_z, Σ c_z θ^s(-z))`.
    pub fn sums(&self, c: &[Fe]) -> (Fe, Fe) {
        let f = self.coeff();
        let lf = self.module.level();
        let mut big_c = 0;
        let mut big_d = 0;
        for (z, &cz) in self.base.units().zip(c) {
            big_c = f.add(big_c, cz);
            let ts = f.inv(self.theta.eval(lf.neg(self.embed(z)))).unwrap();
            big_d = f.add(big_d, f.mul(cz, ts));
        }
        (big_c, big_d)
    }

    pub fn random_coeffs(&self, rng: &mut ChaCha8Rng) -> Vec<Fe> {
        let f = self.coeff();
        loop {
            let c: Vec<Fe> = self.base.units().map(|_| rng.gen_range(0..f.size())).collect();
            let (big_c, big_d) = self.sums(&c);
            if big_c != 0 && big_d != 0 {
                return c;
            }
        }
    }

    /// Coordinates of a vector of `V = span{Ū·1, Ū s ε(w)·1}` (read off the
    /// coordinates at `1` and at `s ε(w)·1`), or `None` if it is not in `V`.
    pub fn v_coordinates(&self, v: &ModuleVector) -> Option<(Fe, Vec<Fe>)> {
        let f = self.coeff();
        let q = self.module.level().size();
        let a = v.get(0);
        let ws: Vec<Fe> = self.base.elements().map(|w| v.get(q + self.embed(w))).collect();
        let rebuilt = self.usw.iter().zip(&ws).fold(self.x.scale(f, a), |acc, (u, &c)| acc.axpy(f, c, u));
        (rebuilt == *v).then_some((a, ws))
    }

    /// `(shape, coefficients, member, full)`: whether `Ū s ζ` lies in `V`,
    /// whether its coordinates at `Ū·1` and `Ū s·1` are `θ(-1)C` and `D`,
    /// whether `Ū·1` or `Ū s·1` lies in `kGζ`, and whether `kGζ` is
    /// everything.
    pub fn trial(&self, c: &[Fe]) -> Result<(bool, bool, bool, bool)> {
        let f = self.coeff();
        if c.len() != self.base.size() as usize - 1 {
            return precondition(format!("expected {} coefficients", self.base.size() - 1));
        }
        let (big_c, big_d) = self.sums(c);
        if big_c == 0 || big_d == 0 {
            return precondition("need Σ c_z ≠ 0 and Σ c_z θ^s(-z) ≠ 0");
        }
        let zeta = self.usw[1..].iter().zip(c).fold(self.module.zero(), |acc, (v, &k)| acc.axpy(f, k, v));
        let sl2 = self.module.sl2();
        let us_zeta = self.module.act_algebra(&self.ubar, &self.module.act(&sl2.s(), &zeta)?)?;
        let lf = self.module.level();
        let theta_m1 = self.theta.eval(lf.neg(1));
        let (shape, coeffs) = match self.v_coordinates(&us_zeta) {
            Some((a, ws)) => (true, a == f.mul(theta_m1, big_c) && ws[0] == big_d),
            None => (false, false),
        };
        let ops = self.module.generator_ops();
        let xd = self.module.to_dense(&self.x);
        let yd = self.module.to_dense(&self.y);
        let sp = spin(f, self.module.dim(), &ops, &[self.module.to_dense(&zeta)]);
        let member = sp.contains(&xd) || sp.contains(&yd);
        Ok((shape, coeffs, member, sp.is_full()))
    }
}

pub fn lemma41(theta: &Character, trials: usize, seed: u64, fixed: Option<&[Fe]>) -> Result<ProbeReport> {
    let setup = TwistedGeneration::new(theta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets: Vec<Vec<Fe>> = match fixed {
        Some(c) => vec![c.to_vec()],
        None => (0..trials).map(|_| setup.random_coeffs(&mut rng)).collect(),
    };
    let (mut shape, mut coeffs, mut member, mut full) = (0, 0, 0, 0);
    for c in &sets {
        let (a, b, m, fl) = setup.trial(c)?;
        shape += a as usize;
        coeffs += b as usize;
        member += m as usize;
        full += fl as usize;
    }
    let n = sets.len();
    let q = theta.domain().size() as u64;
    let mut rep = ProbeReport::new("lemma41", q, theta.target().characteristic());
    rep.theta_exponent = Some(theta.exponent());
    rep.seed = Some(seed);
    rep.observe("level", q * q);
    rep.observe("trials", n);
    rep.expect_eq("Ū s ζ lies in V", n, shape);
    rep.expect_eq("Ū s ζ has coordinates θ(-1)C at Ū·1 and D at Ū s·1", n, coeffs);
    rep.expect_eq("Ū·1 or Ū s·1 in kGζ", n, member);
    rep.observe("kGζ = Ind_T k_θ", format!("{full}/{n}"));
    Ok(rep)
}

/// The augmentation submodule of `Ind_N k_+`, the span of the `Λ(z)` in
/// `Ind_N k_-`, and the identity `h(t_0)Ūζ + Ūζ = 2C Ū·1_-` with
/// `t_0² = -1`.
pub fn mplus(base: &Field, r: u64, trials: usize, seed: u64) -> Result<ProbeReport> {
    check_cross(base, r)?;
    if r == 2 {
        return precondition("the sign module needs odd characteristic");
    }
    let f = make_coeff_field(r, 1)?.field().clone();
    let q = base.size() as u64;
    let mut rep = ProbeReport::new("mplus", q, r);
    rep.seed = Some(seed);

    let plus = InducedModule::normalizer(base, Sign::Plus, &f);
    let ops = plus.generator_ops();
    let scales_one = ops.iter().all(|op| op.scale.iter().all(|&c| c == 1));
    rep.expect("generators permute the basis of Ind_N k_+", scales_one);
    let kernel: Vec<Vec<Fe>> = (1..plus.dim() as u32)
        .map(|j| plus.to_dense(&plus.basis(j).sub(&f, &plus.one())))
        .collect();
    let m_plus = spin(&f, plus.dim(), &ops, &kernel);
    rep.expect("augmentation kernel is G-stable", is_stable(&m_plus.basis, &ops));
    rep.expect_eq("codim M_+", 1, plus.dim() - m_plus.dim());

    let minus = InducedModule::normalizer(base, Sign::Minus, &f);
    let mops = minus.generator_ops();
    let lambdas: Vec<Vec<Fe>> =
        base.units().map(|z| minus.lambda_vec(z).map(|v| minus.to_dense(&v))).collect::<Result<_>>()?;
    let m_minus = spin(&f, minus.dim(), &mops, &lambdas);
    rep.expect("M_- is G-stable", is_stable(&m_minus.basis, &mops));
    rep.expect_eq("dim Ind_N k_- / M_-", q as usize, minus.dim() - m_minus.dim());

    // Ū s ε(z)·1_- = -Ū s ε(-z)·1_-
    let sl2 = minus.sl2();
    let ubar = minus.ubar(base)?;
    let mut held = 0;
    for z in base.units() {
        let lhs = minus.act_algebra(&ubar, &minus.act(&sl2.mul(&sl2.s(), &sl2.eps(z)), &minus.one())?)?;
        let rhs = minus.act_algebra(&ubar, &minus.act(&sl2.mul(&sl2.s(), &sl2.eps(base.neg(z))), &minus.one())?)?;
        if lhs == rhs.scale(&f, f.neg(1)) {
            held += 1;
        }
    }
    rep.expect_eq("Ū s ε(z)·1_- = -Ū s ε(-z)·1_- for all z", q - 1, held);

    let held = two_c_identity(base, &f, trials, seed)?;
    rep.expect_eq("h(t_0)Ūζ + Ūζ = 2C Ū·1_-", trials, held);
    Ok(rep)
}

/// Runs the `2C` identity on `trials` random `ζ = Σ a ε(x)Λ(y) + Σ b Λ(z) +
/// Σ c ε(u)·1_-` with parameters in `F_q`, at the smallest level holding a
/// square root of `-1`. Returns how many held.
fn two_c_identity(base: &Field, f: &Field, trials: usize, seed: u64) -> Result<usize> {
    let t0 = sqrt_ext(&base.element(base.neg(1)))?;
    let level = if t0.field().size() > base.size() { t0.field().clone() } else { base.clone() };
    let m = InducedModule::normalizer(&level, Sign::Minus, f);
    let sl2 = m.sl2();
    let emb = |x: Fe| embed_raw(base, x, &level);
    let t0 = embed_raw(t0.field(), t0.value(), &level)?;
    let ubar = m.ubar(base)?;
    let h = sl2.h(t0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut held = 0;
    for _ in 0..trials {
        let mut zeta = m.zero();
        let mut big_c = 0;
        for _ in 0..3 {
            let (x, y) = (rng.gen_range(0..base.size()), random_unit(&mut rng, base));
            if base.mul(x, y) == 1 {
                continue;
            }
            let a = rng.gen_range(0..f.size());
            let v = m.act(&sl2.eps(emb(x)?), &m.lambda_vec(emb(y)?)?)?;
            zeta = zeta.axpy(f, a, &v);
        }
        for _ in 0..3 {
            let b = rng.gen_range(0..f.size());
            zeta = zeta.axpy(f, b, &m.lambda_vec(emb(random_unit(&mut rng, base))?)?);
        }
        for u in base.elements() {
            let c = rng.gen_range(0..f.size());
            big_c = f.add(big_c, c);
            zeta = zeta.axpy(f, c, &m.act(&sl2.eps(emb(u)?), &m.one())?);
        }
        let uz = m.act_algebra(&ubar, &zeta)?;
        let lhs = m.act(&h, &uz)?.add(f, &uz);
        let rhs = m.act_algebra(&ubar, &m.one())?.scale(f, f.add(big_c, big_c));
        if lhs == rhs {
            held += 1;
        }
    }
    Ok(held)
}
