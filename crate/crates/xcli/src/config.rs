//! Command-line surface and the validated run configuration.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use crosschar::arith;
use crosschar::ffield::DEFAULT_FIELD_BOUND;

pub const BOUND_ENV: &str = "CROSSCHAR_BOUND";

const CSV_HELP: &str = "\
Output:
  JSON (default) writes one record per line. Check records carry
  experiment, p, m, r, k, params, lhs, rhs, verdict; probe reports carry
  probe, q, r, theta_exponent, seed, assertions, observations. Records
  from `all` also carry the suite group they belong to.

  CSV writes a header and then one row per check, per probe assertion and
  per probe observation, with the fixed columns
    group, kind, experiment, q, r, seed, name, expected, got, verdict
  where kind is check, assertion or observation; for checks, name holds
  the parameters as key=value pairs separated by ';', expected the right
  side and got the left side; observations have verdict `observed`.

Exit status: 0 when every check passes, 1 when some check fails,
2 on usage or precondition errors.";

#[derive(Debug, Parser)]
#[command(name = "xcli", version, about = "Exact experiments on SL2 over finite fields", after_help = CSV_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Orthogonality of all character pairs of F_q^*.
    Orthogonality,
    /// Rank of translate matrices for every nontrivial character.
    TranslateRank,
    /// The characteristic-p family with vanishing column sums (needs --p, --j).
    Counterexample,
    /// The weighted translate-sum identity on random instances.
    Eq31,
    /// The set of m with r not dividing p^m - 1.
    SetX,
    /// Nonvanishing points of translate sums over extension levels.
    Census,
    /// Conjugation and s eps(x) s identities for all x, c.
    GroupIdentities,
    /// The four identities for the Lambda vectors of Ind_N k_-.
    LambdaIdentities,
    /// The e +- s splitting of Ind_T k_tr.
    Decompose,
    /// Jordan structure of h(sqrt w) on the span of U-bar vectors.
    Jordan,
    /// Spinning properties on an induced module.
    Spin,
    /// Composition factor dimensions of an induced module.
    Chop,
    /// Simplicity verdict, cross-checked against exhaustive oracles.
    Simple,
    /// Cyclic generation from U-bar s combinations, trivial character.
    Lemma21,
    /// Coefficient extraction and membership, nontrivial character.
    Lemma41,
    /// The augmentation and sign quotients of Ind_N k_+-.
    Mplus,
    /// Equivariant maps from Ind_T onto principal series.
    Phi,
    /// The full acceptance suite.
    All,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Orthogonality => "orthogonality",
            Command::TranslateRank => "translate-rank",
            Command::Counterexample => "counterexample",
            Command::Eq31 => "eq31",
            Command::SetX => "set-x",
            Command::Census => "census",
            Command::GroupIdentities => "group-identities",
            Command::LambdaIdentities => "lambda-identities",
            Command::Decompose => "decompose",
            Command::Jordan => "jordan",
            Command::Spin => "spin",
            Command::Chop => "chop",
            Command::Simple => "simple",
            Command::Lemma21 => "lemma21",
            Command::Lemma41 => "lemma41",
            Command::Mplus => "mplus",
            Command::Phi => "phi",
            Command::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Which induced module `spin`, `chop` and `simple` work on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ModuleKind {
    #[default]
    Borel,
    Torus,
    /// Ind_N k_+.
    Plus,
    /// Ind_N k_-.
    Minus,
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModuleKind::Borel => "borel",
            ModuleKind::Torus => "torus",
            ModuleKind::Plus => "plus",
            ModuleKind::Minus => "minus",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct Options {
    /// Field characteristic.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Field degree, q = p^n.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Coefficient characteristic.
    #[arg(long, global = true)]
    pub r: Option<u64>,
    /// Character exponent a, for the character w^j -> zeta^(a j) with zeta
    /// generating the r'-part of the (q-1)-th roots of unity.
    #[arg(long, global = true)]
    pub char_exp: Option<u64>,
    /// Exponent j of the counterexample family, q = p^j.
    #[arg(long, global = true)]
    pub j: Option<u32>,
    #[arg(long, value_enum, global = true)]
    pub module: Option<ModuleKind>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Largest field size that may be constructed.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// Write records here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Worker threads for independent checks.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Plain-text settings for `all`, one `key value` per line.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// A fully validated run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub p: u64,
    pub n: u32,
    pub r: u64,
    pub char_exp: u64,
    pub j: u32,
    pub module: ModuleKind,
    pub seed: u64,
    pub trials: Option<usize>,
    pub bound: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Fills unset options from a `key value` file. Blank lines and lines
/// starting with `#` are skipped.
pub fn apply_config_file(opts: &mut Options, path: &Path) -> Result<(), ConfigError> {
    let text = fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    apply_config_text(opts, &text)
}

pub fn apply_config_text(opts: &mut Options, text: &str) -> Result<(), ConfigError> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = match line.split_once(char::is_whitespace) {
            Some((k, v)) => (k, v.trim()),
            None => return err(format!("config line {}: expected `key value`", lineno + 1)),
        };
        let num = |v: &str| -> Result<u64, ConfigError> {
            v.parse().map_err(|_| ConfigError(format!("config line {}: `{v}` is not a number", lineno + 1)))
        };
        match key {
            "seed" => {
                opts.seed.get_or_insert(num(value)?);
            }
            "trials" => {
                opts.trials.get_or_insert(num(value)? as usize);
            }
            "threads" => {
                opts.threads.get_or_insert(num(value)? as usize);
            }
            "bound" => {
                opts.bound.get_or_insert(num(value)?);
            }
            "out" => {
                opts.out.get_or_insert(PathBuf::from(value));
            }
            "format" => {
                let f = Format::from_str(value, true)
                    .map_err(|_| ConfigError(format!("config line {}: unknown format `{value}`", lineno + 1)))?;
                opts.format.get_or_insert(f);
            }
            _ => return err(format!("config line {}: unknown key `{key}`", lineno + 1)),
        }
    }
    Ok(())
}

fn needs_field(c: Command) -> bool {
    !matches!(c, Command::All | Command::Counterexample | Command::SetX)
}

fn needs_r(c: Command) -> bool {
    !matches!(c, Command::All | Command::Counterexample | Command::GroupIdentities)
}

impl RunConfig {
    /// Validates `opts` for `command`. `env_bound` is the value of
    /// [`BOUND_ENV`], if set; an explicit `--bound` wins over it.
    pub fn resolve(command: Command, mut opts: Options, env_bound: Option<&str>) -> Result<RunConfig, ConfigError> {
        if let Some(path) = opts.config.clone() {
            if command != Command::All {
                return err("--config is only accepted by `all`");
            }
            apply_config_file(&mut opts, &path)?;
        }
        let bound = match (opts.bound, env_bound) {
            (Some(b), _) => b,
            (None, Some(s)) => s
                .trim()
                .parse()
                .map_err(|_| ConfigError(format!("{BOUND_ENV}=`{s}` is not a number")))?,
            (None, None) => DEFAULT_FIELD_BOUND,
        };
        if bound < 2 {
            return err("the field-size bound must be at least 2");
        }
        let threads = opts.threads.unwrap_or(1);
        if threads == 0 {
            return err("--threads must be at least 1");
        }

        let p = opts.p.unwrap_or(0);
        let n = opts.n.unwrap_or(1);
        let r = opts.r.unwrap_or(0);
        if needs_field(command) || command == Command::Counterexample || command == Command::SetX {
            match opts.p {
                None => return err(format!("`{}` needs --p", command.name())),
                Some(p) if !arith::is_prime(p) => return err(format!("--p {p} is not prime")),
                _ => {}
            }
        }
        if needs_field(command) {
            if n == 0 {
                return err("--n must be at least 1");
            }
            match arith::checked_pow(p, n) {
                Some(q) if q <= bound => {}
                _ => return err(format!("field size {p}^{n} exceeds the bound {bound}")),
            }
        }
        if needs_r(command) {
            match opts.r {
                None => return err(format!("`{}` needs --r", command.name())),
                Some(r) if !arith::is_prime(r) => return err(format!("--r {r} is not prime")),
                Some(r) if r == p => return err("--r must differ from --p"),
                _ => {}
            }
        }
        if command == Command::Counterexample && opts.j.is_none() {
            return err("`counterexample` needs --j");
        }
        if opts.trials == Some(0) && matches!(command, Command::Eq31 | Command::Lemma21 | Command::Lemma41 | Command::Mplus) {
            return err("--trials must be at least 1");
        }
        Ok(RunConfig {
            command,
            p,
            n,
            r,
            char_exp: opts.char_exp.unwrap_or(0),
            j: opts.j.unwrap_or(1),
            module: opts.module.unwrap_or_default(),
            seed: opts.seed.unwrap_or(0),
            trials: opts.trials,
            bound,
            out: opts.out,
            format: opts.format.unwrap_or_default(),
            threads,
        })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(p: u64, r: u64) -> Options {
        Options { p: Some(p), r: Some(r), ..Options::default() }
    }

    #[test]
    fn rejects_equal_characteristics() {
        let e = RunConfig::resolve(Command::Orthogonality, opts(5, 5), None).unwrap_err();
        assert!(e.0.contains("differ"));
    }

    #[test]
    fn rejects_composite_prime() {
        assert!(RunConfig::resolve(Command::Jordan, opts(6, 7), None).is_err());
        assert!(RunConfig::resolve(Command::Jordan, opts(7, 9), None).is_err());
    }

    #[test]
    fn bound_precedence() {
        let c = RunConfig::resolve(Command::Orthogonality, opts(5, 13), Some("100")).unwrap();
        assert_eq!(c.bound, 100);
        let mut o = opts(5, 13);
        o.bound = Some(50);
        assert_eq!(RunConfig::resolve(Command::Orthogonality, o, Some("100")).unwrap().bound, 50);
        let mut o = opts(5, 1 + 12);
        o.n = Some(3);
        assert!(RunConfig::resolve(Command::Orthogonality, o, Some("100")).is_err());
        assert!(RunConfig::resolve(Command::Orthogonality, opts(5, 13), Some("lots")).is_err());
    }

    #[test]
    fn config_text_fills_unset_values() {
        let mut o = Options { seed: Some(3), ..Options::default() };
        apply_config_text(&mut o, "# suite\nseed 9\ntrials 4\nformat csv\n\nthreads 2\n").unwrap();
        assert_eq!(o.seed, Some(3));
        assert_eq!(o.trials, Some(4));
        assert_eq!(o.format, Some(Format::Csv));
        assert_eq!(o.threads, Some(2));
        assert!(apply_config_text(&mut o, "colour blue").is_err());
        assert!(apply_config_text(&mut o, "seed").is_err());
    }

    #[test]
    fn all_needs_no_field() {
        let c = RunConfig::resolve(Command::All, Options::default(), None).unwrap();
        assert_eq!(c.seed, 0);
        assert_eq!(c.format, Format::Json);
    }
}
