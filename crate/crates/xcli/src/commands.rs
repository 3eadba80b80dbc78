//! One function per experiment, each returning its records.

use std::collections::BTreeSet;

use crosschar::arith;
use crosschar::chars::{
    counterexample_family, eq31_check, make_coeff_field, nonvanishing_census, orthogonality_sum, set_x,
    translate_matrix_rank, Character, CoeffField,
};
use crosschar::ffield::{construct_field, Fe, Field};
use crosschar::modeng::meataxe::{oracle_simple, BRUTE_FORCE_LIMIT, DEFAULT_SAMPLES};
use crosschar::modeng::probes::{self, random_vector};
use crosschar::modeng::spin::is_stable;
use crosschar::modeng::{chop, is_simple, jordan_on_v, spin, InducedModule, MatrixRep, Sign, Verdict};
use crosschar::poly;
use crosschar::report::{CheckRecord, ProbeReport};
use crosschar::sl2::Sl2;
use crosschar::Result;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Command, ModuleKind, RunConfig};
use crate::output::Record;

/// The characters of `F_q^*` visible in characteristic `r`.
pub fn unit_coefficients(f: &Field, r: u64) -> Result<CoeffField> {
    CoeffField::for_units(r, f.size() as u64 - 1)
}

pub fn character(f: &Field, r: u64, exponent: u64) -> Result<Character> {
    Character::new(f, &unit_coefficients(f, r)?, exponent)
}

fn check(name: &str, f: &Field, target: &CoeffField) -> CheckRecord {
    CheckRecord::new(name, f.characteristic() as u64, f.degree(), target.characteristic(), target.degree())
}

fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

/// `Σ φ(z) ψ(z^{-1}) = (q - 1) δ` for every pair.
pub fn orthogonality(f: &Field, r: u64) -> Result<Vec<Record>> {
    let target = unit_coefficients(f, r)?;
    let k = target.field();
    let chars = Character::all(f, &target)?;
    let diag = k.from_int(((f.size() as u64 - 1) % r) as i64);
    let mut out = Vec::new();
    for phi in &chars {
        for psi in &chars {
            let got = orthogonality_sum(phi, psi)?;
            let want = if phi.exponent() == psi.exponent() { diag } else { 0 };
            let rec = check("orthogonality", f, &target)
                .param("phi", phi.exponent())
                .param("psi", psi.exponent())
                .compare(k.format(got), k.format(want));
            out.push(rec.into());
        }
    }
    Ok(out)
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Full column rank of `(ψ(x + u_i))` for nontrivial `ψ`: exhaustively over
/// translate sets of size at most 3 when `exhaustive`, then on `random`
/// random sets of size 4 to 6.
pub fn translate_rank(f: &Field, r: u64, exhaustive: bool, random: usize, seed: u64) -> Result<Vec<Record>> {
    let target = unit_coefficients(f, r)?;
    let nontrivial: Vec<Character> = Character::all(f, &target)?.into_iter().filter(|c| !c.is_trivial()).collect();
    let units: Vec<Fe> = f.units().collect();
    let mut out = Vec::new();
    if exhaustive {
        for psi in &nontrivial {
            for size in 1..=3.min(units.len()) {
                let sets = subsets(units.len(), size);
                let mut full = 0;
                for s in &sets {
                    let u: Vec<Fe> = s.iter().map(|&i| units[i]).collect();
                    if translate_matrix_rank(psi, &u)?.1 == size {
                        full += 1;
                    }
                }
                let rec = check("translate-rank", f, &target)
                    .param("mode", "exhaustive")
                    .param("psi", psi.exponent())
                    .param("size", size)
                    .compare(full, sets.len());
                out.push(rec.into());
            }
        }
    }
    let max = 6.min(units.len());
    if random > 0 && max >= 4 && !nontrivial.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tally = [(0usize, 0usize); 7];
        for _ in 0..random {
            let psi = &nontrivial[rng.gen_range(0..nontrivial.len())];
            let size = rng.gen_range(4..=max);
            let u: Vec<Fe> = units.choose_multiple(&mut rng, size).copied().collect();
            tally[size].1 += 1;
            if translate_matrix_rank(psi, &u)?.1 == size {
                tally[size].0 += 1;
            }
        }
        for (size, &(full, total)) in tally.iter().enumerate().skip(4) {
            if total > 0 {
                let rec = check("translate-rank", f, &target)
                    .param("mode", "random")
                    .param("seed", seed)
                    .param("size", size)
                    .compare(full, total);
                out.push(rec.into());
            }
        }
    }
    Ok(out)
}

/// The `q = p^j` translates with `Σ u_i^q = 0` in characteristic `p`.
pub fn counterexample(p: u64, j: u32) -> Result<Vec<Record>> {
    let fam = counterexample_family(p, j)?;
    let f = &fam.field;
    let target = fam.psi.target();
    let power_sum = fam.u.iter().fold(0, |acc, &u| f.add(acc, f.pow(u, fam.q)));
    let formatted: Vec<String> = fam.u.iter().map(|&u| f.format(u)).collect();
    let distinct = fam.u.iter().collect::<BTreeSet<_>>().len() == fam.u.len() && !fam.u.contains(&0);
    let mut out: Vec<Record> = Vec::new();
    out.push(
        check("counterexample/family", f, target)
            .param("j", j)
            .param("u", list(&formatted))
            .judge(f.format(power_sum), "0", power_sum == 0 && distinct)
            .into(),
    );
    let k = fam.psi.coeff_field();
    let nonvanishing = f
        .elements()
        .filter(|&x| fam.u.iter().fold(0, |acc, &u| k.add(acc, fam.psi.eval(f.add(x, u)))) != 0)
        .count();
    out.push(
        check("counterexample/column-sum", f, target)
            .param("j", j)
            .param("vanishes", fam.column_sum_vanishes())
            .compare(nonvanishing, 0)
            .into(),
    );
    let (_, rank) = translate_matrix_rank(&fam.psi, &fam.u)?;
    out.push(
        check("counterexample/rank", f, target)
            .param("j", j)
            .param("n", fam.u.len())
            .judge(rank, format!("<= {}", fam.q - 1), rank < fam.u.len())
            .into(),
    );
    Ok(out)
}

fn random_pairs(rng: &mut ChaCha8Rng, f: &Field, k: &Field, count: usize) -> Vec<(Fe, Fe)> {
    let units: Vec<Fe> = f.units().collect();
    units
        .choose_multiple(rng, count)
        .map(|&u| (rng.gen_range(1..k.size()), u))
        .collect()
}

/// `Σ_{x ≠ -u_k} S(x) λ((x + u_k)^{-1}) = q a_k - Σ a_i` on random instances.
pub fn eq31(f: &Field, r: u64, trials: usize, seed: u64) -> Result<Vec<Record>> {
    let target = unit_coefficients(f, r)?;
    let n = target.order();
    if n < 2 {
        return Err(crosschar::Error::Precondition(format!(
            "F_{}^* has no nontrivial character in characteristic {r}",
            f.size()
        )));
    }
    let k = target.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for trial in 0..trials {
        let lambda = Character::new(f, &target, rng.gen_range(1..n))?;
        let count = rng.gen_range(1..=5.min(f.size() as usize - 1));
        let pairs = random_pairs(&mut rng, f, k, count);
        let idx = rng.gen_range(0..count);
        let (lhs, rhs) = eq31_check(&lambda, &pairs, idx)?;
        let shown: Vec<String> = pairs.iter().map(|&(a, u)| format!("({}, {})", k.format(a), f.format(u))).collect();
        let rec = check("eq31", f, &target)
            .param("trial", trial)
            .param("lambda", lambda.exponent())
            .param("pairs", list(&shown))
            .param("index", idx)
            .compare(k.format(lhs), k.format(rhs));
        out.push(rec.into());
    }
    Ok(out)
}

/// `{m ≤ bound : r ∤ p^m - 1} = {m : d ∤ m}` and a witness `(m, 2m)`.
pub fn set_x_check(p: u64, r: u64, bound: u64) -> Result<Vec<Record>> {
    let sx = set_x(p, r, bound, 1)?;
    let d = arith::mult_order(p, r).expect("distinct primes");
    let expected: Vec<u64> = (1..=bound).filter(|m| m % d != 0).collect();
    let base = |name: &str| CheckRecord::new(name, p, 1, r, 1).param("bound", bound).param("d", sx.d);
    let (m, m2) = sx.witness;
    let (a, b) = (arith::pow_mod(p, m, r), arith::pow_mod(p, m2, r));
    Ok(vec![
        base("set-x/members").compare(list(&sx.members), list(&expected)).into(),
        base("set-x/witness")
            .param("m", m)
            .param("2m", m2)
            .judge(format!("{a} vs {b}"), "distinct residues", a != b && sx.members.contains(&m) && m2 == 2 * m)
            .into(),
    ])
}

/// The nonvanishing set of a translate sum is nonempty and grows along
/// `F_q ⊂ F_{q^2} ⊂ ...` while the level stays within `max_level` and its
/// coefficient field within the field bound.
pub fn census(f: &Field, r: u64, trials: usize, seed: u64, max_level: u64) -> Result<Vec<Record>> {
    let target = unit_coefficients(f, r)?;
    let n = target.order();
    if n < 2 {
        return Err(crosschar::Error::Precondition(format!(
            "F_{}^* has no nontrivial character in characteristic {r}",
            f.size()
        )));
    }
    let k = target.field();
    let q = f.size() as u64;
    let mut levels = vec![f.degree()];
    while let Some(next) = arith::checked_pow(q, levels.len() as u32 + 1) {
        if next > max_level {
            break;
        }
        levels.push(f.degree() * (levels.len() as u32 + 1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for trial in 0..trials {
        let lambda = Character::new(f, &target, rng.gen_range(1..n))?;
        let count = rng.gen_range(1..=3.min(q as usize - 1));
        let pairs = random_pairs(&mut rng, f, k, count);
        let mut sizes = Vec::new();
        let mut reached = Vec::new();
        for &l in &levels {
            match nonvanishing_census(&lambda, &pairs, l) {
                Ok(c) => sizes.push(c.nonvanishing.len()),
                // the coefficient field for this level is too large
                Err(crosschar::Error::BoundExceeded { .. }) if !sizes.is_empty() => break,
                Err(e) => return Err(e),
            }
            reached.push(l);
        }
        let ok = sizes[0] > 0 && sizes.windows(2).all(|w| w[0] <= w[1]);
        let shown: Vec<String> = pairs.iter().map(|&(a, u)| format!("({}, {})", k.format(a), f.format(u))).collect();
        let rec = check("census", f, &target)
            .param("trial", trial)
            .param("lambda", lambda.exponent())
            .param("pairs", list(&shown))
            .param("levels", list(&reached))
            .judge(list(&sizes), "nonempty and nondecreasing", ok);
        out.push(rec.into());
    }
    Ok(out)
}

/// `h(c) ε(x) h(c)^{-1} = ε(c²x)`, `s ε(x) s = ε(-x^{-1}) s h(-x) ε(-x^{-1})`
/// and `α(h(c)) = c²` for all `x, c ∈ F_q^*`.
pub fn group_identities(f: &Field) -> Result<Vec<Record>> {
    let g = Sl2::new(f);
    let q = f.size() as u64;
    let mut conj = 0u64;
    let mut alpha = 0u64;
    for c in f.units() {
        let h = g.h(c)?;
        let hi = g.invert(&h);
        for x in f.units() {
            if g.product(&[h, g.eps(x), hi]) == g.eps(f.mul(f.mul(c, c), x)) {
                conj += 1;
            }
        }
        if g.simple_root_alpha(&h)? == f.mul(c, c) {
            alpha += 1;
        }
    }
    let mut swap = 0u64;
    for x in f.units() {
        let lhs = g.product(&[g.s(), g.eps(x), g.s()]);
        let w = f.neg(f.inv(x)?);
        let rhs = g.product(&[g.eps(w), g.s(), g.h(f.neg(x))?, g.eps(w)]);
        if lhs == rhs {
            swap += 1;
        }
    }
    let rec = |name: &str| CheckRecord::new(name, f.characteristic() as u64, f.degree(), 0, 0);
    Ok(vec![
        rec("group-identities/conjugation").compare(conj, (q - 1) * (q - 1)).into(),
        rec("group-identities/s-eps-s").compare(swap, q - 1).into(),
        rec("group-identities/alpha").compare(alpha, q - 1).into(),
    ])
}

/// The module selected by `kind` at level `f`.
pub fn build_module(f: &Field, r: u64, exponent: u64, kind: ModuleKind) -> Result<InducedModule> {
    Ok(match kind {
        ModuleKind::Borel => InducedModule::borel(&character(f, r, exponent)?),
        ModuleKind::Torus => InducedModule::torus(&character(f, r, exponent)?),
        ModuleKind::Plus | ModuleKind::Minus => {
            if r == 2 {
                return Err(crosschar::Error::Precondition("Ind_N k_- needs odd coefficient characteristic".into()));
            }
            let sign = if kind == ModuleKind::Plus { Sign::Plus } else { Sign::Minus };
            InducedModule::normalizer(f, sign, make_coeff_field(r, 1)?.field())
        }
    })
}

fn module_report(name: &str, m: &InducedModule, kind: ModuleKind, exponent: u64) -> ProbeReport {
    let mut rep = ProbeReport::new(name, m.level().size() as u64, m.coeff().characteristic() as u64);
    if matches!(kind, ModuleKind::Borel | ModuleKind::Torus) {
        rep.theta_exponent = Some(exponent);
    }
    rep.observe("module", kind);
    rep.observe("dimension", m.dim());
    rep.observe("coefficient field", format!("GF({})", m.coeff().size()));
    rep
}

/// Closure properties of spinning on random seeds, plus cyclicity of the
/// generator and, for `Ind_B` of the trivial character, the augmentation
/// kernel as the spin of `1 - s1`.
pub fn spin_properties(m: &InducedModule, kind: ModuleKind, exponent: u64, trials: usize, seed: u64) -> Result<ProbeReport> {
    let mut rep = module_report("spin", m, kind, exponent);
    rep.seed = Some(seed);
    let f = m.coeff();
    let ops = m.generator_ops();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut extensive, mut idempotent, mut monotone, mut stable) = (0, 0, 0, 0);
    for _ in 0..trials {
        let v = m.to_dense(&random_vector(&mut rng, m, 3));
        let w = m.to_dense(&random_vector(&mut rng, m, 2));
        let sv = spin(f, m.dim(), &ops, std::slice::from_ref(&v));
        if sv.contains(&v) {
            extensive += 1;
        }
        if spin(f, m.dim(), &ops, sv.basis.rows()).dim() == sv.dim() {
            idempotent += 1;
        }
        let svw = spin(f, m.dim(), &ops, &[v, w]);
        if sv.basis.rows().iter().all(|row| svw.contains(row)) && svw.dim() >= sv.dim() {
            monotone += 1;
        }
        if is_stable(&sv.basis, &ops) {
            stable += 1;
        }
    }
    rep.expect_eq("v lies in spin(v)", trials, extensive);
    rep.expect_eq("spin(spin(v)) = spin(v)", trials, idempotent);
    rep.expect_eq("spin(v) within spin(v, w)", trials, monotone);
    rep.expect_eq("spin(v) is stable", trials, stable);
    rep.expect("the generator spins to the whole module", spin(f, m.dim(), &ops, &[m.to_dense(&m.one())]).is_full());
    rep.expect_eq("spin of no vectors", 0, spin(f, m.dim(), &ops, &[]).dim());
    if kind == ModuleKind::Borel && exponent == 0 {
        let s1 = m.act(&m.sl2().s(), &m.one())?;
        let eta = m.one().sub(f, &s1);
        let d = spin(f, m.dim(), &ops, &[m.to_dense(&eta)]).dim();
        rep.expect_eq("dim spin(1 - s1)", m.dim() - 1, d);
    }
    Ok(rep)
}

/// Composition factor dimensions, sorted.
pub fn chop_report(m: &InducedModule, kind: ModuleKind, exponent: u64, seed: u64) -> Result<(ProbeReport, Vec<usize>)> {
    let mut rep = module_report("chop", m, kind, exponent);
    rep.seed = Some(seed);
    let dims = chop(&MatrixRep::from_module(m), seed, DEFAULT_SAMPLES)?;
    rep.expect_eq("factor dimensions sum", m.dim(), dims.iter().sum());
    rep.observe("factor dimensions", list(&dims));
    Ok((rep, dims))
}

/// The randomized verdict, compared with an exhaustive oracle when one is
/// feasible.
pub fn simple_report(m: &InducedModule, kind: ModuleKind, exponent: u64, seed: u64) -> Result<(ProbeReport, Verdict)> {
    let mut rep = module_report("simple", m, kind, exponent);
    rep.seed = Some(seed);
    let mrep = MatrixRep::from_module(m);
    let verdict = is_simple(&mrep, seed, DEFAULT_SAMPLES)?;
    rep.observe("verdict", verdict.label());
    if let Verdict::Reducible(sub) = &verdict {
        rep.expect("witness is a proper nonzero submodule", sub.rank() > 0 && sub.rank() < m.dim() && is_stable(sub, &mrep.gens));
    }
    match oracle_simple(m, BRUTE_FORCE_LIMIT) {
        Some((kind, truth)) => {
            rep.observe("oracle", format!("{kind:?}"));
            let want = if truth { "simple" } else { "reducible" };
            rep.expect_eq("verdict agrees with the oracle", want, verdict.label());
        }
        None => rep.observe("oracle", "infeasible"),
    }
    Ok((rep, verdict))
}

/// Jordan structure of `h(√ω)` on `V` against the predicted blocks and
/// minimal polynomial.
pub fn jordan(f: &Field, r: u64, exponent: u64) -> Result<ProbeReport> {
    let theta = character(f, r, exponent)?;
    let j = jordan_on_v(&theta)?;
    let k = &j.coeff;
    let mut rep = ProbeReport::new("jordan", j.q, r);
    rep.theta_exponent = Some(exponent);
    let form = &j.form;
    rep.expect("A P = P J", j.operator.mul(&form.transition) == form.transition.mul(&form.jordan));
    rep.expect_eq("total block size", j.q as usize + 1, j.block_sizes().iter().sum());
    rep.expect_eq("blocks", j.format_blocks(&j.predicted()), j.format_blocks(&form.multiset()));
    rep.expect_eq("minimal polynomial", poly::format(k, &j.predicted_min_poly()), poly::format(k, &j.min_poly));
    rep.observe("block sizes", list(&j.block_sizes()));
    rep.observe("kappa", k.format(j.kappa));
    rep.observe("coefficient field", format!("GF({})", k.size()));
    rep.observe("diagonalizable", form.is_diagonal());
    Ok(rep)
}

pub fn phi(f: &Field, r: u64, exponent: u64, seed: u64, samples: usize) -> Result<ProbeReport> {
    let mut rep = probes::phi_check(&character(f, r, exponent)?, seed, samples)?;
    rep.seed.get_or_insert(seed);
    Ok(rep)
}

fn field(cfg: &RunConfig) -> Result<Field> {
    construct_field(cfg.p, cfg.n)
}

/// Runs a single subcommand other than `all`.
pub fn run_command(cfg: &RunConfig) -> Result<Vec<Record>> {
    let seed = cfg.seed;
    let one = |rep: ProbeReport| Ok(vec![Record::Probe(rep)]);
    match cfg.command {
        Command::Orthogonality => orthogonality(&field(cfg)?, cfg.r),
        Command::TranslateRank => {
            let f = field(cfg)?;
            translate_rank(&f, cfg.r, f.size() <= 13, cfg.trials_or(200), seed)
        }
        Command::Counterexample => counterexample(cfg.p, cfg.j),
        Command::Eq31 => eq31(&field(cfg)?, cfg.r, cfg.trials_or(100), seed),
        Command::SetX => set_x_check(cfg.p, cfg.r, 60),
        Command::Census => census(&field(cfg)?, cfg.r, cfg.trials_or(20), seed, 4096),
        Command::GroupIdentities => group_identities(&field(cfg)?),
        Command::LambdaIdentities => one(probes::lambda_identities(&field(cfg)?, cfg.r)?),
        Command::Decompose => one(probes::decomposition_check(&field(cfg)?, cfg.r)?),
        Command::Jordan => one(jordan(&field(cfg)?, cfg.r, cfg.char_exp)?),
        Command::Spin => {
            let m = build_module(&field(cfg)?, cfg.r, cfg.char_exp, cfg.module)?;
            one(spin_properties(&m, cfg.module, cfg.char_exp, cfg.trials_or(20), seed)?)
        }
        Command::Chop => {
            let m = build_module(&field(cfg)?, cfg.r, cfg.char_exp, cfg.module)?;
            one(chop_report(&m, cfg.module, cfg.char_exp, seed)?.0)
        }
        Command::Simple => {
            let m = build_module(&field(cfg)?, cfg.r, cfg.char_exp, cfg.module)?;
            one(simple_report(&m, cfg.module, cfg.char_exp, seed)?.0)
        }
        Command::Lemma21 => one(probes::lemma21(&field(cfg)?, cfg.r, cfg.trials_or(50), seed, None)?),
        Command::Lemma41 => one(probes::lemma41(&character(&field(cfg)?, cfg.r, cfg.char_exp)?, cfg.trials_or(50), seed, None)?),
        Command::Mplus => one(probes::mplus(&field(cfg)?, cfg.r, cfg.trials_or(20), seed)?),
        Command::Phi => one(phi(&field(cfg)?, cfg.r, cfg.char_exp, seed, cfg.trials_or(100))?),
        Command::All => Err(crosschar::Error::Precondition("`all` runs through the suite".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(12, 3).len(), 220);
        assert_eq!(subsets(4, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn orthogonality_f5_has_sixteen_pairs() {
        let f = construct_field(5, 1).unwrap();
        let recs = orthogonality(&f, 13).unwrap();
        assert_eq!(recs.len(), 16);
        assert!(recs.iter().all(|r| r.passed()));
    }

    #[test]
    fn counterexample_p3() {
        let recs = counterexample(3, 1).unwrap();
        assert!(recs.iter().all(|r| r.passed()), "{recs:?}");
        assert!(counterexample(2, 1).is_err());
    }
}
