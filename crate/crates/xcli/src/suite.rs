//! The full acceptance suite behind `xcli all`, grouped by criterion.

use crosschar::chars::{make_coeff_field, CoeffField, Character};
use crosschar::ffield::{construct_field, Field};
use crosschar::modeng::{jordan_on_v, probes, InducedModule};
use crosschar::poly;
use crosschar::report::{CheckRecord, ProbeReport};
use crosschar::Result;
use rayon::prelude::*;

use crate::commands::{self, character};
use crate::config::ModuleKind;
use crate::output::{Entry, Record};

type Task = Box<dyn Fn(u64) -> Result<Vec<Record>> + Send + Sync>;

pub struct Job {
    pub group: &'static str,
    pub label: String,
    task: Task,
}

impl Job {
    fn new(group: &'static str, label: String, task: impl Fn(u64) -> Result<Vec<Record>> + Send + Sync + 'static) -> Job {
        Job { group, label, task: Box::new(task) }
    }
}

/// Group names in canonical order: `c01` to `c13` for the acceptance
/// criteria, then the remaining property suites.
pub const GROUPS: [&str; 14] = [
    "c01", "c02", "c03", "c04", "c05", "c06", "c07", "c08", "c09", "c10", "c11", "c12", "c13", "properties",
];

fn gf(q: u64) -> Result<Field> {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let (mut x, mut m) = (p, 1);
        while x < q {
            x *= p;
            m += 1;
        }
        if x == q {
            return construct_field(p, m);
        }
    }
    Err(crosschar::Error::Precondition(format!("{q} is not a supported prime power")))
}

fn char_of(q: u64) -> u64 {
    [2u64, 3, 5, 7, 11, 13].into_iter().find(|p| q.is_multiple_of(*p)).expect("prime power")
}

/// A coefficient characteristic seeing every character of `F_q^*`.
fn full_r(q: u64) -> u64 {
    [13u64, 11, 7, 5, 3]
        .into_iter()
        .find(|&r| r != char_of(q) && !(q - 1).is_multiple_of(r))
        .expect("some prime works")
}

fn one(rep: ProbeReport) -> Result<Vec<Record>> {
    Ok(vec![Record::Probe(rep)])
}

fn observation<'a>(rep: &'a ProbeReport, name: &str) -> &'a str {
    rep.observations.iter().find(|o| o.name == name).map(|o| o.value.as_str()).unwrap_or("")
}

fn jordan_case(q: u64, r: u64, exponent: u64, sizes: &'static str, literal: Option<&'static str>) -> Result<Vec<Record>> {
    let f = gf(q)?;
    let mut rep = commands::jordan(&f, r, exponent)?;
    let got = observation(&rep, "block sizes").to_string();
    rep.expect_eq("block sizes listed", sizes.to_string(), got);
    if let Some(lit) = literal {
        let blocks = rep.assertions.iter().find(|a| a.name == "blocks").map(|a| a.got.clone()).unwrap_or_default();
        rep.expect_eq("blocks listed", lit.to_string(), blocks);
    }
    one(rep)
}

fn jordan_diagonal(q: u64, r: u64) -> Result<Vec<Record>> {
    let f = gf(q)?;
    let theta = character(&f, r, 0)?;
    let j = jordan_on_v(&theta)?;
    let mut rep = commands::jordan(&f, r, 0)?;
    rep.expect("diagonalizable", j.form.is_diagonal());
    let k = &j.coeff;
    let mut t4 = poly::monomial(1, (q - 1) as usize);
    t4[0] = k.neg(1);
    rep.expect_eq("minimal polynomial listed", poly::format(k, &t4), poly::format(k, &j.min_poly));
    one(rep)
}

fn jordan_order3_refused() -> Result<Vec<Record>> {
    let e = make_coeff_field(3, 3);
    let msg = match &e {
        Ok(_) => "accepted".to_string(),
        Err(err) => format!("error: {err}"),
    };
    let rec = CheckRecord::new("jordan/order-3-character", 7, 1, 3, 0).judge(msg, "error", e.is_err());
    Ok(vec![rec.into()])
}

fn composition(theta: Character, kind: ModuleKind, expected: Option<Vec<usize>>, seed: u64) -> Result<Vec<Record>> {
    let m = match kind {
        ModuleKind::Borel => InducedModule::borel(&theta),
        _ => InducedModule::torus(&theta),
    };
    let e = theta.exponent();
    let mut out = Vec::new();
    if let Some(expected) = expected {
        let (mut rep, dims) = commands::chop_report(&m, kind, e, seed)?;
        rep.expect_eq("factor dimensions listed", format!("{expected:?}"), format!("{dims:?}"));
        out.push(rep.into());
    }
    let (rep, _) = commands::simple_report(&m, kind, e, seed)?;
    out.push(rep.into());
    Ok(out)
}

/// Every job of the suite, in canonical order.
pub fn jobs() -> Vec<Job> {
    let mut v = Vec::new();

    for q in [4u64, 5, 7, 9, 13, 25] {
        for r in [3u64, 5, 7, 11, 13] {
            if r != char_of(q) {
                v.push(Job::new("c01", format!("orthogonality q={q} r={r}"), move |_| commands::orthogonality(&gf(q)?, r)));
            }
        }
    }

    for q in [3u64, 4, 5, 7, 8, 9, 11, 13, 25] {
        let random = if [9, 13, 25].contains(&q) { 200 } else { 0 };
        let r = full_r(q);
        v.push(Job::new("c02", format!("translate-rank q={q} r={r}"), move |seed| {
            commands::translate_rank(&gf(q)?, r, q <= 13, random, seed)
        }));
    }

    for p in [3u64, 5] {
        v.push(Job::new("c03", format!("counterexample p={p}"), move |_| commands::counterexample(p, 1)));
    }

    for q in [5u64, 7, 9, 13] {
        let r = full_r(q);
        v.push(Job::new("c04", format!("eq31 q={q} r={r}"), move |seed| commands::eq31(&gf(q)?, r, 100, seed)));
    }

    for (p, r) in [(2u64, 3u64), (2, 5), (2, 7), (3, 5), (3, 7), (5, 3), (5, 7), (7, 5), (11, 3), (13, 5)] {
        v.push(Job::new("c05", format!("set-x p={p} r={r}"), move |_| commands::set_x_check(p, r, 60)));
    }

    for q in [3u64, 4, 5, 7, 9, 13] {
        v.push(Job::new("c06", format!("group-identities q={q}"), move |_| commands::group_identities(&gf(q)?)));
    }

    for q in [3u64, 5, 7, 9] {
        for r in [7u64, 11, 13] {
            if r != char_of(q) {
                v.push(Job::new("c07", format!("lambda-identities q={q} r={r}"), move |_| {
                    one(probes::lambda_identities(&gf(q)?, r)?)
                }));
            }
        }
    }

    for q in [3u64, 5, 7, 9] {
        for r in [5u64, 7, 11, 13] {
            if r != char_of(q) {
                v.push(Job::new("c08", format!("decompose q={q} r={r}"), move |_| {
                    one(probes::decomposition_check(&gf(q)?, r)?)
                }));
            }
        }
    }

    v.push(Job::new("c09", "jordan q=7 r=3".into(), |_| {
        jordan_case(7, 3, 0, "[1, 1, 3, 3]", Some("{J_1(1)^2, J_3(1), J_3(2)}"))
    }));
    v.push(Job::new("c09", "jordan q=13 r=3".into(), |_| jordan_case(13, 3, 0, "[1, 1, 3, 3, 3, 3]", None)));
    v.push(Job::new("c09", "jordan q=5 r=13".into(), |_| jordan_diagonal(5, 13)));
    v.push(Job::new("c09", "jordan q=7 r=3 order-2 character".into(), |_| jordan_case(7, 3, 1, "[1, 1, 3, 3]", None)));
    v.push(Job::new("c09", "jordan order-3 character in characteristic 3".into(), |_| jordan_order3_refused()));

    // q = 5, r = 7: the order-4 characters need GF(49)
    for (exponent, expected) in [(0u64, vec![1usize, 5]), (1, vec![6]), (3, vec![6]), (2, vec![3, 3])] {
        v.push(Job::new("c10", format!("composition q=5 r=7 exponent={exponent} over GF(49)"), move |seed| {
            let f = gf(5)?;
            composition(character(&f, 7, exponent)?, ModuleKind::Borel, Some(expected.clone()), seed)
        }));
    }
    v.push(Job::new("c10", "simplicity q=5 r=7 trivial over GF(7)".into(), |seed| {
        let f = gf(5)?;
        composition(Character::trivial(&f, &make_coeff_field(7, 1)?)?, ModuleKind::Borel, None, seed)
    }));
    v.push(Job::new("c10", "simplicity q=5 r=7 order-2 over GF(7)".into(), |seed| {
        let f = gf(5)?;
        composition(Character::new(&f, &make_coeff_field(7, 2)?, 1)?, ModuleKind::Borel, None, seed)
    }));

    for q in [3u64, 5] {
        v.push(Job::new("c11", format!("lemma21 q={q} r=7"), move |seed| one(probes::lemma21(&gf(q)?, 7, 50, seed, None)?)));
    }

    v.push(Job::new("c12", "lemma41 q=5 r=7 order 4".into(), |seed| {
        one(probes::lemma41(&character(&gf(5)?, 7, 1)?, 50, seed, None)?)
    }));

    for q in [3u64, 5, 7] {
        v.push(Job::new("c13", format!("mplus q={q} r=11"), move |seed| one(probes::mplus(&gf(q)?, 11, 20, seed)?)));
    }

    for (q, r, exponent, kind) in [
        (5u64, 7u64, 0u64, ModuleKind::Borel),
        (5, 13, 1, ModuleKind::Borel),
        (5, 13, 1, ModuleKind::Torus),
        (5, 7, 0, ModuleKind::Plus),
        (5, 7, 0, ModuleKind::Minus),
    ] {
        v.push(Job::new("properties", format!("spin q={q} r={r} exponent={exponent} {kind}"), move |seed| {
            let m = commands::build_module(&gf(q)?, r, exponent, kind)?;
            one(commands::spin_properties(&m, kind, exponent, 20, seed)?)
        }));
    }
    for (q, r, exponent) in [(5u64, 13u64, 1u64), (7, 5, 1), (9, 7, 2)] {
        v.push(Job::new("properties", format!("phi q={q} r={r} exponent={exponent}"), move |seed| {
            one(commands::phi(&gf(q)?, r, exponent, seed, 100)?)
        }));
    }
    for (q, r) in [(5u64, 13u64), (7, 13), (4, 7)] {
        v.push(Job::new("properties", format!("census q={q} r={r}"), move |seed| commands::census(&gf(q)?, r, 10, seed, 4096)));
    }
    v.push(Job::new("properties", "chop Ind_N k_+ and k_- q=5 r=7".into(), |seed| {
        let f = gf(5)?;
        let mut out = Vec::new();
        let mut total = 0;
        for kind in [ModuleKind::Plus, ModuleKind::Minus] {
            let m = commands::build_module(&f, 7, 0, kind)?;
            let (rep, dims) = commands::chop_report(&m, kind, 0, seed)?;
            total += dims.iter().sum::<usize>();
            out.push(rep.into());
        }
        let torus = InducedModule::torus(&Character::trivial(&f, &CoeffField::for_units(7, 1)?)?);
        let rec = CheckRecord::new("chop/normalizer-summands", 5, 1, 7, 1).compare(total, torus.dim());
        out.push(rec.into());
        Ok(out)
    }));
    v
}

pub fn jobs_in(group: &str) -> Vec<Job> {
    jobs().into_iter().filter(|j| j.group == group).collect()
}

/// Per-job seed: the suite seed offset by the job's position in its group.
fn job_seed(seed: u64, group: &str, index: usize) -> u64 {
    let g = GROUPS.iter().position(|&x| x == group).unwrap_or(GROUPS.len()) as u64;
    seed.wrapping_add(g * 1000 + index as u64)
}

fn error_record(job: &Job, err: &crosschar::Error) -> Record {
    CheckRecord::new("error", 0, 0, 0, 0)
        .param("job", &job.label)
        .judge(err, "completed", false)
        .into()
}

/// Runs `jobs` on up to `threads` workers and returns their records in job
/// order.
pub fn run_jobs(jobs: &[Job], seed: u64, threads: usize) -> Vec<Entry> {
    let mut index_in_group = Vec::with_capacity(jobs.len());
    for (i, job) in jobs.iter().enumerate() {
        index_in_group.push(jobs[..i].iter().filter(|j| j.group == job.group).count());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<Vec<Record>> = pool.install(|| {
        jobs.par_iter()
            .zip(index_in_group.par_iter())
            .map(|(job, &idx)| match (job.task)(job_seed(seed, job.group, idx)) {
                Ok(recs) => recs,
                Err(e) => vec![error_record(job, &e)],
            })
            .collect()
    });
    jobs.iter()
        .zip(results)
        .flat_map(|(job, recs)| recs.into_iter().map(move |record| Entry { group: Some(job.group.to_string()), record }))
        .collect()
}

/// Runs one criterion group with the seed offsets it gets inside `all`.
pub fn run_group(group: &str, seed: u64, threads: usize) -> Vec<Entry> {
    let all = jobs();
    let selected: Vec<Job> = all.into_iter().filter(|j| j.group == group).collect();
    run_jobs(&selected, seed, threads)
}

pub fn run_all(seed: u64, threads: usize) -> Vec<Entry> {
    run_jobs(&jobs(), seed, threads)
}
