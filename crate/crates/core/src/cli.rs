//! Command-line front end. Exit codes: 0 on success, 1 when an identity
//! fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::chain::{empirical_vs_exact, check_markov_laws, doob_decomposition_check, check_shape_kernel_rows, RngSeed, Simulator};
use crate::error::{Error, Result};
use crate::exact::{q_binomial, ExactScalar, QContext};
use crate::kernels::{check_weight_identity, verify_intertwining, ParamContext};
use crate::partition::Partition;
use crate::pattern::enumerate_patterns;
use crate::qinsert::{check_q_zero_equivalence, phi_word};
use crate::report::IdentityReport;
use crate::symfunc::{check_classic_littlewood, check_eigenrelation, check_littlewood, check_pieri, p_function, q_hermite};
use crate::tableau::{berele_word, check_bijectivity, enumerate_oscillating, enumerate_tableaux, parse_word};

#[derive(Parser, Debug)]
#[command(name = "bereleq", version, about = "Berele insertion, its q-deformation and the induced Markov chains")]
pub struct Cli {
    #[command(flatten)]
    pub config: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Alphabet size: letters 1, 1', ..., n, n'.
    #[arg(long, global = true, env = "BERELEQ_N", default_value_t = 2)]
    pub n: usize,
    /// Comma-separated positive rationals a_1..a_n [default: 2,3,...,n+1].
    #[arg(long, global = true, env = "BERELEQ_A")]
    pub a: Option<String>,
    /// Deformation parameter, 0 <= q < 1.
    #[arg(long, global = true, env = "BERELEQ_Q", default_value = "1/2")]
    pub q: String,
    #[arg(long, global = true, value_enum, env = "BERELEQ_FORMAT", default_value_t = Format::Json)]
    pub format: Format,
    /// Render barred letters as k' instead of a combining overline.
    #[arg(long, global = true)]
    pub ascii: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Insert a word. At q=0 prints (P, f); otherwise the weight table φ_w.
    Insert {
        /// Letters such as `3' 2 1'`; may be passed as one quoted string.
        word: Vec<String>,
    },
    /// Run an exact identity sweep.
    Verify {
        suite: Suite,
        /// Word length / number of steps.
        #[arg(long, default_value_t = 4)]
        m: usize,
        /// Bound on λ_1 (or on pattern entries).
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Sample trajectories, or compare empirical laws with exact ones.
    Simulate {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        compare: bool,
    },
    /// List tableaux, patterns or oscillating tableaux.
    Enumerate {
        kind: EnumKind,
        /// Comma-separated parts, e.g. `2,1`; empty for ∅.
        #[arg(long)]
        shape: Option<String>,
        /// Length of oscillating tableaux [default: |shape|].
        #[arg(long)]
        m: Option<usize>,
    },
    /// Coefficients of the rank-one function P_(ℓ), a q-Hermite polynomial.
    Hermite {
        #[arg(long, default_value_t = 3)]
        ell: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Pieri,
    Eigen,
    Littlewood,
    Intertwining,
    Doob,
    QzeroEquivalence,
    Bijectivity,
    Weight,
    Markov,
    Rows,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumKind {
    Tableaux,
    Patterns,
    Oscillating,
}

impl GlobalArgs {
    pub fn param_context(&self) -> Result<ParamContext> {
        let ctx = QContext::new(self.q.trim().parse()?)?;
        let a = match &self.a {
            Some(raw) => raw
                .split(',')
                .map(|t| t.trim().parse::<ExactScalar>())
                .collect::<Result<Vec<_>>>()?,
            None => (2..=self.n as i64 + 1).map(ExactScalar::from_integer).collect(),
        };
        ParamContext::with_rank(self.n, a, ctx)
    }
}

/// Parses `2,1`, `(2,1)`, `∅` or the empty string.
pub fn parse_shape(raw: &str) -> Result<Partition> {
    let body = raw.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if body.is_empty() || body == "∅" {
        return Ok(Partition::empty());
    }
    let parts = body
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Invalid(format!("bad part `{t}` in shape"))))
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

enum Outcome {
    Ok,
    Failed,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Invalid(e.to_string()))?;
    writeln!(out, "{s}").map_err(|e| Error::Invalid(e.to_string()))
}

fn line(out: &mut dyn Write, s: impl AsRef<str>) -> Result<()> {
    writeln!(out, "{}", s.as_ref()).map_err(|e| Error::Invalid(e.to_string()))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let cfg = &cli.config;
    let pc = cfg.param_context()?;
    let n = pc.n();
    match &cli.command {
        Command::Insert { word } => {
            let w = parse_word(&word.join(" "), n)?;
            if pc.ctx().is_classic() {
                let (p, f) = berele_word(&w, n)?;
                match cfg.format {
                    Format::Json => emit(out, &json!({ "tableau": p, "shapes": f }))?,
                    Format::Text => {
                        line(out, if p.is_empty() { "∅".to_string() } else { p.render(cfg.ascii) })?;
                        let shapes: Vec<String> = f.shapes().iter().map(|s| s.to_string()).collect();
                        line(out, format!("f: {}", shapes.join(" → ")))?;
                    }
                }
            } else {
                let table = phi_word(pc.ctx(), &w, n)?;
                match cfg.format {
                    Format::Json => emit(out, &json!({ "q": pc.ctx().q(), "total": table.total(), "weights": table }))?,
                    Format::Text => {
                        for ((z, f), wt) in table.iter() {
                            let shapes: Vec<String> = f.shapes().iter().map(|s| s.to_string()).collect();
                            line(out, format!("{wt:>12}  {}  {z}", shapes.join(" ")))?;
                        }
                        line(out, format!("total {}", table.total()))?;
                    }
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Verify { suite, m, bound } => verify(cfg, &pc, *suite, *m, *bound, out),
        Command::Simulate { m, runs, seed, compare } => {
            let seed = RngSeed(*seed);
            if *compare {
                let report = empirical_vs_exact(&pc, *m, *runs, seed)?;
                match cfg.format {
                    Format::Json => emit(out, &report)?,
                    Format::Text => {
                        for s in &report.shapes {
                            line(out, format!("{:<10} exact {:<12} empirical {}", s.shape.to_string(), s.exact.to_string(), s.empirical))?;
                        }
                        line(out, format!("shape TV {:.6} (bound {:.6})", report.shape_tv, report.shape_tv_bound))?;
                        line(out, format!("max conditional TV {:.6}", report.conditional_tv))?;
                    }
                }
            } else {
                let mut sim = Simulator::new(&pc);
                for run in 0..*runs {
                    let traj = sim.run(*m, &mut seed.rng(run as u64));
                    match cfg.format {
                        Format::Json => write!(out, "{}", traj.to_json_lines(cfg.ascii)).map_err(|e| Error::Invalid(e.to_string()))?,
                        Format::Text => {
                            let letters: Vec<String> = traj.letters.iter().map(|l| l.render(cfg.ascii)).collect();
                            let shapes: Vec<String> = traj.shapes.iter().map(|s| s.to_string()).collect();
                            line(out, format!("run {run}: {} | {}", letters.join(" "), shapes.join(" → ")))?;
                        }
                    }
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Enumerate { kind, shape, m } => {
            let shape = shape.as_deref().map(parse_shape).transpose()?;
            match kind {
                EnumKind::Tableaux | EnumKind::Patterns => {
                    let shape = shape.ok_or_else(|| Error::Invalid("--shape is required".into()))?;
                    if *kind == EnumKind::Tableaux {
                        let all = enumerate_tableaux(&shape, n)?;
                        match cfg.format {
                            Format::Json => emit(out, &all)?,
                            Format::Text => {
                                for t in &all {
                                    line(out, if t.is_empty() { "∅".to_string() } else { t.render(cfg.ascii) })?;
                                    line(out, "")?;
                                }
                                line(out, format!("{} tableaux", all.len()))?;
                            }
                        }
                    } else {
                        let all = enumerate_patterns(&shape, n)?;
                        match cfg.format {
                            Format::Json => emit(out, &all)?,
                            Format::Text => {
                                for z in &all {
                                    line(out, z.render())?;
                                    line(out, "")?;
                                }
                                line(out, format!("{} patterns", all.len()))?;
                            }
                        }
                    }
                }
                EnumKind::Oscillating => {
                    let len = match (m, &shape) {
                        (Some(m), _) => *m,
                        (None, Some(s)) => s.weight() as usize,
                        (None, None) => return Err(Error::Invalid("--m or --shape is required".into())),
                    };
                    let all = enumerate_oscillating(n, len, shape.as_ref());
                    match cfg.format {
                        Format::Json => emit(out, &all)?,
                        Format::Text => {
                            for f in &all {
                                let shapes: Vec<String> = f.shapes().iter().map(|s| s.to_string()).collect();
                                line(out, shapes.join(" → "))?;
                            }
                            line(out, format!("{} oscillating tableaux", all.len()))?;
                        }
                    }
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Hermite { ell } => {
            let ctx = pc.ctx();
            let a = &pc.a()[0];
            let coefficients: Vec<_> = (0..=*ell as i64)
                .map(|m| json!({ "power": 2 * m - *ell as i64, "coefficient": q_binomial(ctx, *ell as i64, m) }))
                .collect();
            let h = q_hermite(ctx, *ell, a)?;
            let rank_one = ParamContext::new(vec![a.clone()], ctx.clone())?;
            let p = p_function(&rank_one, &Partition::new(vec![*ell])?)?;
            let agree = h == p;
            match cfg.format {
                Format::Json => emit(out, &json!({ "ell": ell, "q": ctx.q(), "a": a, "coefficients": coefficients, "value": h, "p_function": p, "agree": agree }))?,
                Format::Text => {
                    for c in &coefficients {
                        line(out, format!("a^{:<4} {}", c["power"], c["coefficient"].as_str().unwrap_or_default()))?;
                    }
                    line(out, format!("H_{ell}({a}) = {h}; P_({ell}) = {p}"))?;
                }
            }
            Ok(if agree { Outcome::Ok } else { Outcome::Failed })
        }
    }
}

fn verify(cfg: &GlobalArgs, pc: &ParamContext, suite: Suite, m: usize, bound: u32, out: &mut dyn Write) -> Result<Outcome> {
    let n = pc.n();
    let report: IdentityReport;
    let mut extra = serde_json::Map::new();
    match suite {
        Suite::Intertwining => {
            let r = verify_intertwining(pc, bound)?;
            let passed = r.passed();
            match cfg.format {
                Format::Json => emit(out, &r)?,
                Format::Text => line(out, r.to_string())?,
            }
            return Ok(if passed { Outcome::Ok } else { Outcome::Failed });
        }
        Suite::Pieri => report = check_pieri(pc, bound)?,
        Suite::Eigen => report = check_eigenrelation(pc, bound)?,
        Suite::Littlewood => {
            let mut r = check_littlewood(pc, m)?;
            if pc.ctx().is_classic() {
                r.merge(check_classic_littlewood(pc, m)?);
            }
            report = r;
        }
        Suite::Doob => report = doob_decomposition_check(&pc.with_q(QContext::classic()), bound)?,
        Suite::QzeroEquivalence => report = check_q_zero_equivalence(n, bound)?,
        Suite::Bijectivity => {
            extra.insert("words".into(), json!((2 * n).pow(m as u32)));
            report = check_bijectivity(n, m)?;
        }
        Suite::Weight => report = check_weight_identity(pc, m)?,
        Suite::Markov => report = check_markov_laws(pc, m)?,
        Suite::Rows => report = check_shape_kernel_rows(pc, bound)?,
    }
    match cfg.format {
        Format::Json => {
            let mut value = serde_json::to_value(&report).map_err(|e| Error::Invalid(e.to_string()))?;
            if let Some(obj) = value.as_object_mut() {
                obj.insert("passed".into(), json!(report.passed()));
                obj.extend(extra);
            }
            emit(out, &value)?;
        }
        Format::Text => {
            let words = extra.get("words").map(|w| format!(" ({w} words)")).unwrap_or_default();
            line(out, format!("{report}{words}"))?;
        }
    }
    Ok(if report.passed() { Outcome::Ok } else { Outcome::Failed })
}
