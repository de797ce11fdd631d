//! `ellwp`: word problems in lattice-ordered groups from the command line.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ellwp_core::freedec::{self, DecideError, DecideOptions};
use ellwp_core::perm::{self, BumpAnchor, LazyConjugator, PLMap, DEFAULT_ITERATION_BUDGET};
use ellwp_core::present::{self, GodelCodec, Presentation};
use ellwp_core::term::{GroupWord, MeetString};
use ellwp_core::wreath::{self, FreeOracle, OracleError, Z2Oracle};
use ellwp_core::{parse, Alphabet, Generator, LTerm};

#[derive(Parser)]
#[command(name = "ellwp", version, about = "Word problems in lattice-ordered groups")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit a single JSON document.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    /// Cap on the number of diagrams per decision.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_diagrams: Option<u64>,
    /// Explore sequentially so output does not depend on scheduling.
    #[arg(long, global = true)]
    deterministic: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a term is the identity of the free ℓ-group.
    Decide {
        #[arg(long)]
        gens: String,
        /// Term text, or `-` for stdin.
        term: String,
    },
    /// Compare a term with the identity.
    Sign {
        #[arg(long)]
        gens: String,
        term: String,
    },
    /// Search for PL maps of ℚ under which a term is not the identity.
    Witness {
        #[arg(long)]
        gens: String,
        /// Number of random assignments to try.
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        term: String,
    },
    /// Decide a term in `G ≀ ℤ` or `(G ≀ ℤ) ≀ ℤ`.
    WreathDecide {
        /// Generators of the base group `G`.
        #[arg(long)]
        g_gens: String,
        #[arg(long, value_enum, default_value_t = Tower::Z)]
        tower: Tower,
        #[arg(long, value_enum, default_value_t = GOracle::Free)]
        g_oracle: GOracle,
        /// Shift generator of `z`, or the outer shift of `zlexz`.
        #[arg(long, default_value = "c")]
        shift: String,
        /// Inner shift generator of `zlexz`.
        #[arg(long, default_value = "a")]
        inner_shift: String,
        term: String,
    },
    /// Split a term over a cardinal sum.
    SumFactor {
        /// Components separated by `|`, e.g. `x,z|y`.
        #[arg(long)]
        components: String,
        term: String,
    },
    /// Prove or refute `term = 1` in a finitely presented ℓ-group.
    Solve {
        /// JSON file `{"generators": [...], "relators": [...]}`.
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        term: String,
    },
    /// List the relators adjoining conjugators to a group.
    Gdagger {
        #[arg(long)]
        g_gens: String,
        /// JSON file `[["u0", "v0"], ...]` of strictly positive pairs.
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Also list the derived orthogonality relations.
        #[arg(long)]
        derived: bool,
    },
    /// Convert between meet strings and their indices.
    Godel {
        #[arg(long)]
        gens: String,
        /// Encode the argument, a meet of group words, instead of decoding it.
        #[arg(long)]
        encode: bool,
        /// Select one of the infinitely many indices when encoding.
        #[arg(long, default_value = "0", requires = "encode")]
        pad: String,
        /// Index to decode, or meet string to encode.
        value: String,
    },
    /// Evaluate a conjugator `h` with `h⁻¹ f h = g` at rational points.
    Conjugator {
        /// `f` as a JSON list of `["x", "y"]` breakpoints.
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Anchor in the first bump of `f`.
        #[arg(long, requires = "beta")]
        alpha: Option<String>,
        /// Anchor in the first bump of `g`.
        #[arg(long, requires = "alpha")]
        beta: Option<String>,
        /// Iteration cap per evaluation.
        #[arg(long, default_value_t = DEFAULT_ITERATION_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Points at which to evaluate `h`.
        #[arg(required = true)]
        points: Vec<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Tower {
    Z,
    Zlexz,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GOracle {
    Free,
    Z2,
}

/// Failure categories and their exit codes.
enum Failure {
    Usage(String),
    Budget(String),
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        Failure::Budget(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Decide(d) => d.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn term_text(arg: &str) -> Result<String, Failure> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).map_err(usage)?;
    Ok(s.trim().to_string())
}

fn read_term(arg: &str, alphabet: &Alphabet) -> Result<LTerm, Failure> {
    parse(&term_text(arg)?, alphabet).map_err(usage)
}

fn alphabet(list: &str) -> Result<Alphabet, Failure> {
    Alphabet::parse_list(list).map_err(usage)
}

fn generator(name: &str) -> Result<Generator, Failure> {
    Generator::new(name).map_err(usage)
}

fn decide_options(c: &Common) -> DecideOptions {
    DecideOptions {
        max_diagrams: c.max_diagrams.map(|n| n as usize).or(DecideOptions::default().max_diagrams),
        jobs: c.jobs as usize,
        deterministic: c.deterministic || c.jobs == 1,
        ..DecideOptions::default()
    }
}

/// Human and JSON renderings of one result.
struct Output {
    text: String,
    json: serde_json::Value,
    code: u8,
}

impl Output {
    fn new(text: String, json: serde_json::Value) -> Self {
        Output { text, json, code: 0 }
    }
}

fn run(cmd: Command, c: &Common) -> Result<Output, Failure> {
    match cmd {
        Command::Decide { gens, term } => {
            let t = read_term(&term, &alphabet(&gens)?)?;
            let v = freedec::decide_with(&t, &decide_options(c))?;
            let mut text = format!("{:?}", v.decision);
            if let Some(w) = &v.witness {
                text.push_str(&format!("\n{w}"));
            }
            let json = json!({
                "term": t.to_string(),
                "decision": v.decision,
                "diagrams": v.diagrams,
                "witness": v.witness.as_ref().map(|w| w.to_json()),
            });
            Ok(Output::new(text, json))
        }
        Command::Sign { gens, term } => {
            let t = read_term(&term, &alphabet(&gens)?)?;
            let s = freedec::sign_with(&t, &decide_options(c))?;
            Ok(Output::new(format!("{s:?}"), json!({"term": t.to_string(), "sign": s})))
        }
        Command::Witness { gens, budget, term } => {
            let t = read_term(&term, &alphabet(&gens)?)?;
            Ok(match perm::find_witness(&t, budget, c.seed) {
                Some(w) => {
                    let mut text = String::new();
                    for (g, m) in &w.assignment {
                        text.push_str(&format!("{g} = {m}\n"));
                    }
                    text.push_str(&format!("{} . term = {} (sample {})", w.point, w.image, w.sample));
                    let mut json = w.to_json();
                    json["found"] = json!(true);
                    Output::new(text, json)
                }
                None => Output::new(
                    format!("no witness in {budget} samples"),
                    json!({"found": false, "budget": budget}),
                ),
            })
        }
        Command::WreathDecide {
            g_gens,
            tower,
            g_oracle,
            shift,
            inner_shift,
            term,
        } => {
            let base = alphabet(&g_gens)?;
            let outer = generator(&shift)?;
            let mut full = base.with(outer.clone());
            let inner = generator(&inner_shift)?;
            if tower == Tower::Zlexz {
                if full.contains(&inner) {
                    return Err(usage(format!("generator {inner} is used twice")));
                }
                full = full.with(inner.clone());
            }
            let t = read_term(&term, &full)?;
            let v = match (tower, g_oracle) {
                (Tower::Z, GOracle::Free) => wreath::w_decide(&t, FreeOracle::with_options(base, decide_options(c)), &outer)?,
                (Tower::Z, GOracle::Z2) => wreath::w_decide(&t, Z2Oracle::new(base)?, &outer)?,
                (Tower::Zlexz, GOracle::Free) => {
                    wreath::lex_w_decide(&t, FreeOracle::with_options(base, decide_options(c)), &inner, &outer)?
                }
                (Tower::Zlexz, GOracle::Z2) => wreath::lex_w_decide(&t, Z2Oracle::new(base)?, &inner, &outer)?,
            };
            let text = format!("{:?}\nvalue: {}", v.decision, v.value);
            let json = json!({"term": t.to_string(), "decision": v.decision, "value": v.value.to_json()});
            Ok(Output::new(text, json))
        }
        Command::SumFactor { components, term } => {
            let mut partition = BTreeMap::new();
            let mut names = Vec::new();
            for (i, part) in components.split('|').enumerate() {
                for g in alphabet(part)?.generators() {
                    if partition.insert(g.clone(), i).is_some() {
                        return Err(usage(format!("generator {g} is in two components")));
                    }
                    names.push(g.clone());
                }
            }
            let t = read_term(&term, &Alphabet::from_generators(names).map_err(usage)?)?;
            let factors = wreath::sum_factor(&t, &partition)?;
            let text = factors
                .iter()
                .map(|(i, f)| format!("{i}: {f}"))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({
                "term": t.to_string(),
                "factors": factors.values().map(|f| f.to_string()).collect::<Vec<_>>(),
            });
            Ok(Output::new(text, json))
        }
        Command::Solve {
            presentation,
            budget,
            term,
        } => {
            let text = fs::read_to_string(&presentation).map_err(|e| usage(format!("{}: {e}", presentation.display())))?;
            let p = Presentation::from_json(&text).map_err(usage)?;
            let w = read_term(&term, &p.generators)?;
            let cert = present::solve(&p, &w, budget, c.seed).map_err(usage)?;
            let mut out = Output::new(cert.to_string(), cert.to_json());
            if !cert.is_definitive() {
                out.code = 3;
            }
            Ok(out)
        }
        Command::Gdagger {
            g_gens,
            pairs,
            m,
            k,
            derived,
        } => {
            let g = alphabet(&g_gens)?;
            let text = fs::read_to_string(&pairs).map_err(|e| usage(format!("{}: {e}", pairs.display())))?;
            let raw: Vec<(String, String)> = serde_json::from_str(&text).map_err(usage)?;
            let parsed = raw
                .iter()
                .map(|(u, v)| Ok((parse(u, &g).map_err(usage)?, parse(v, &g).map_err(usage)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            let mut relators = present::gdagger_schema(&g, &parsed, m as usize, k as usize).map_err(usage)?;
            if derived {
                relators.extend(present::gdagger_derived(m as usize));
            }
            let text = relators.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            let json = json!({
                "generators": present::schema_alphabet(&g, m as usize).map_err(usage)?.generators()
                    .iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "relators": relators.iter().map(|r| json!({
                    "family": r.family.to_string(),
                    "label": r.label,
                    "relator": r.relator.to_string(),
                })).collect::<Vec<_>>(),
            });
            Ok(Output::new(text, json))
        }
        Command::Godel {
            gens,
            encode,
            pad,
            value,
        } => {
            let a = alphabet(&gens)?;
            let codec = GodelCodec::new(&a).map_err(usage)?;
            if encode {
                let t = read_term(&value, &a)?;
                let s = meet_string(&t).ok_or_else(|| usage(format!("{t} is not a meet of group words")))?;
                let pad = pad.parse().map_err(usage)?;
                let n = codec.encode_padded(&s, &pad).map_err(usage)?;
                Ok(Output::new(n.to_string(), json!({"meet_string": s.to_string(), "index": n.to_string()})))
            } else {
                let n = term_text(&value)?.parse().map_err(usage)?;
                let s = present::pseudo_godel(&codec, &n);
                Ok(Output::new(s.to_string(), json!({"index": n.to_string(), "meet_string": s.to_string()})))
            }
        }
        Command::Conjugator {
            f,
            g,
            alpha,
            beta,
            budget,
            points,
        } => {
            let f: PLMap = serde_json::from_str(&f).map_err(usage)?;
            let g: PLMap = serde_json::from_str(&g).map_err(usage)?;
            let h = match (alpha, beta) {
                (Some(a), Some(b)) => {
                    let (fs, gs) = (f.supports().len(), g.supports().len());
                    if fs != 1 || gs != 1 {
                        return Err(usage("anchors need single-bump maps"));
                    }
                    let anchor = BumpAnchor {
                        alpha: perm::parse_rational(&a).map_err(usage)?,
                        beta: perm::parse_rational(&b).map_err(usage)?,
                        h0: None,
                    };
                    LazyConjugator::with_anchors(&f, &g, vec![anchor])
                }
                _ => LazyConjugator::matching(&f, &g),
            }
            .map_err(usage)?
            .with_budget(budget);
            let mut rows = Vec::new();
            for p in &points {
                let x = perm::parse_rational(p).map_err(usage)?;
                let y = h.apply(&x).map_err(|e| match e {
                    perm::PermError::IterationBudgetExceeded(_) => Failure::Budget(e.to_string()),
                    e => usage(e),
                })?;
                rows.push((x.to_string(), y.to_string()));
            }
            let text = rows.iter().map(|(x, y)| format!("{x} -> {y}")).collect::<Vec<_>>().join("\n");
            Ok(Output::new(text, json!({"images": rows})))
        }
    }
}

/// Reads a term of the shape `w₁ ∧ … ∧ wₙ` with group words `wᵢ`.
fn meet_string(t: &LTerm) -> Option<MeetString> {
    fn word(t: &LTerm) -> Option<GroupWord> {
        match t {
            LTerm::Identity => Some(GroupWord::identity()),
            LTerm::Gen(g) => Some(GroupWord::letter(g.clone(), 1)),
            LTerm::Inverse(s) => word(s).map(|w| w.inverse()),
            LTerm::Product(fs) => fs.iter().try_fold(GroupWord::identity(), |acc, f| Some(acc.mul(&word(f)?))),
            LTerm::Join(_) | LTerm::Meet(_) => None,
        }
    }
    match t {
        LTerm::Meet(ws) => ws.iter().map(word).collect::<Option<Vec<_>>>().map(MeetString::new),
        LTerm::Identity => Some(MeetString::default()),
        t => word(t).map(|w| MeetString::new(vec![w])),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.common.clone();
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs as usize)
        .build_global();
    match run(cli.command, &common) {
        Ok(out) => {
            if common.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            if common.json {
                println!("{}", json!({"error": "budget exhausted", "message": msg}));
            }
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
