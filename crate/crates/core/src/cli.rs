//! Command-line frontend. Exit codes: 0 holds/success, 1 fails, 2 unknown,
//! 64 usage or input error.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::decide::{decide_report, Budget, Evidence, Exact, Report, Verdict};
use crate::error::Error;
use crate::lang::{enumerate_level, expr_to_dfa, LangDocument, LangExpr};
use crate::level::Level;
use crate::monoid::{
    enumerate_ordered_monoids, syntactic_ordered_monoid, MonoidFile, OrderedMonoid,
};
use crate::proof::{check_proof, ProofFile};
use crate::term::{
    canonical_j, decompositions, format_word, mu, normalize_a, parse_term, parse_word, subword_of,
    Letter,
};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "omega-ineq",
    version,
    about = "Inequalities of ω-terms over the levels of the Straubing-Thérien hierarchy"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide u <= v at a level
    Decide {
        u: String,
        v: String,
        #[arg(long)]
        level: Level,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Canonical form over J-trivial monoids
    CanonicalJ { term: String },
    /// Normal form over aperiodic monoids
    Normalize { term: String },
    /// The (μ_ω, μ_ℓ) measure
    Mu { term: String },
    /// Decompositions with bounded integer exponents
    Decomps {
        term: String,
        #[arg(long, default_value_t = 2)]
        exp_bound: usize,
    },
    /// Whether a word is a subword of some expansion of a term
    Subword { word: String, term: String },
    /// Syntactic ordered monoid of a language expression
    Synt {
        /// A file or inline JSON: an expression or a {"level", "expr"} document
        #[arg(long)]
        expr: String,
        /// Letters to read the language over (default: its marker letters)
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Verify a proof file
    CheckProof {
        file: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The first languages of a level
    EnumLangs {
        #[arg(long)]
        level: Level,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value = "ab")]
        alphabet: String,
    },
    /// Ordered monoids up to isomorphism
    EnumMonoids {
        #[arg(long)]
        max_size: usize,
        /// Keep isomorphic copies
        #[arg(long)]
        all: bool,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct BudgetArgs {
    #[arg(long)]
    pub budget_expansions: Option<usize>,
    #[arg(long)]
    pub budget_languages: Option<usize>,
    #[arg(long)]
    pub budget_rewrite: Option<usize>,
    #[arg(long)]
    pub budget_monoid_size: Option<usize>,
    #[arg(long)]
    pub budget_synt_cap: Option<usize>,
    #[arg(long)]
    pub budget_exp_bound: Option<usize>,
    #[arg(long)]
    pub budget_depth: Option<usize>,
    #[arg(long)]
    pub prover_slice: Option<usize>,
    #[arg(long)]
    pub refuter_slice: Option<usize>,
}

impl BudgetArgs {
    pub fn budget(&self) -> Result<Budget, String> {
        let mut b = Budget::default();
        let set = |slot: &mut usize, v: Option<usize>, name: &str| -> Result<(), String> {
            match v {
                Some(0) => Err(format!("--{name} must be positive")),
                Some(x) => {
                    *slot = x;
                    Ok(())
                }
                None => Ok(()),
            }
        };
        set(
            &mut b.proof_expansions,
            self.budget_expansions,
            "budget-expansions",
        )?;
        set(&mut b.languages, self.budget_languages, "budget-languages")?;
        set(
            &mut b.refute_size,
            self.budget_monoid_size,
            "budget-monoid-size",
        )?;
        set(&mut b.synt_cap, self.budget_synt_cap, "budget-synt-cap")?;
        set(&mut b.exp_bound, self.budget_exp_bound, "budget-exp-bound")?;
        set(&mut b.max_depth, self.budget_depth, "budget-depth")?;
        set(&mut b.prover_slice, self.prover_slice, "prover-slice")?;
        set(&mut b.refuter_slice, self.refuter_slice, "refuter-slice")?;
        if let Some(r) = self.budget_rewrite {
            b.rewrite_steps = Some(r);
        }
        Ok(b)
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_HOLDS
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
struct Failure(String);

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Failure {
        Failure(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure(e.to_string())
    }
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    value: Value,
    text: impl FnOnce() -> String,
) -> Result<(), Failure> {
    match format {
        Format::Json => writeln!(out, "{value}")?,
        Format::Text => write!(out, "{}", text())?,
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Decide {
            u,
            v,
            level,
            budget,
        } => {
            let (u, v) = (parse_term(u)?, parse_term(v)?);
            let report = decide_report(&u, &v, *level, &budget.budget()?)?;
            emit(out, format, report.to_value(&u, &v, *level), || {
                verdict_text(&report)
            })?;
            Ok(match report.verdict {
                Verdict::Holds(_) => EXIT_HOLDS,
                Verdict::Fails(_) => EXIT_FAILS,
                Verdict::Unknown(_) => EXIT_UNKNOWN,
            })
        }
        Command::CanonicalJ { term } => {
            let t = parse_term(term)?;
            let c = canonical_j(&t).to_string();
            emit(
                out,
                format,
                json!({"term": t.to_string(), "canonical_j": c}),
                || format!("{c}\n"),
            )?;
            Ok(EXIT_HOLDS)
        }
        Command::Normalize { term } => {
            let t = parse_term(term)?;
            let n = normalize_a(&t).to_string();
            emit(
                out,
                format,
                json!({"term": t.to_string(), "normal_form": n}),
                || format!("{n}\n"),
            )?;
            Ok(EXIT_HOLDS)
        }
        Command::Mu { term } => {
            let t = parse_term(term)?;
            let m = mu(&t);
            emit(
                out,
                format,
                json!({"term": t.to_string(), "mu": [m.mu_omega, m.mu_ell]}),
                || format!("{m}\n"),
            )?;
            Ok(EXIT_HOLDS)
        }
        Command::Decomps { term, exp_bound } => {
            let t = parse_term(term)?;
            let ds = decompositions(&t, *exp_bound);
            let pairs: Vec<Value> = ds
                .iter()
                .map(|d| json!([d.left.to_string(), d.right.to_string()]))
                .collect();
            emit(
                out,
                format,
                json!({"term": t.to_string(), "exp_bound": exp_bound, "decompositions": pairs}),
                || ds.iter().map(|d| format!("{d}\n")).collect(),
            )?;
            Ok(EXIT_HOLDS)
        }
        Command::Subword { word, term } => {
            let w = parse_word(word)?;
            let t = parse_term(term)?;
            let yes = subword_of(&w, &t);
            emit(
                out,
                format,
                json!({"word": format_word(&w), "term": t.to_string(), "subword": yes}),
                || format!("{}\n", if yes { "yes" } else { "no" }),
            )?;
            Ok(if yes { EXIT_HOLDS } else { EXIT_FAILS })
        }
        Command::Synt { expr, alphabet } => {
            let expr = read_expr(expr)?;
            let letters = match alphabet {
                Some(a) => parse_alphabet(a)?,
                None => expr.letters(),
            };
            let r = syntactic_ordered_monoid(&expr_to_dfa(&expr, &letters)?)?;
            let m = &r.monoid;
            let assignment: serde_json::Map<String, Value> = r
                .assignment
                .iter()
                .map(|(l, x)| (l.to_string(), json!(m.name(x))))
                .collect();
            let filter: Vec<&str> = (0..m.size())
                .filter(|&x| r.filter[x])
                .map(|x| m.name(x))
                .collect();
            emit(
                out,
                format,
                json!({"expr": expr, "monoid": MonoidFile::from_monoid(m), "assignment": assignment, "filter": filter}),
                || {
                    let mut s = monoid_text(m);
                    s.push_str(&format!("assignment: {}\n", r.assignment.display(m)));
                    s.push_str(&format!("filter: {}\n", filter.join(" ")));
                    s
                },
            )?;
            Ok(EXIT_HOLDS)
        }
        Command::CheckProof { file, budget } => {
            let text = std::fs::read_to_string(file)?;
            let proof = ProofFile::from_json(&text)?.to_proof()?;
            let result = check_proof(&proof, &budget.budget()?);
            let value = match &result {
                Ok(()) => {
                    json!({"valid": true, "conclusion": proof.conclusion().map(|c| c.to_string())})
                }
                Err(e) => json!({"valid": false, "step": e.step, "reason": e.reason}),
            };
            emit(out, format, value, || match &result {
                Ok(()) => format!("valid: {}\n", proof.conclusion().expect("nonempty")),
                Err(e) => format!("invalid: {e}\n"),
            })?;
            Ok(match &result {
                Ok(()) => EXIT_HOLDS,
                Err(e) if e.reason.starts_with("undischarged") => EXIT_UNKNOWN,
                Err(_) => EXIT_FAILS,
            })
        }
        Command::EnumLangs {
            level,
            count,
            alphabet,
        } => {
            let letters = parse_alphabet(alphabet)?;
            let exprs = enumerate_level(*level, &letters, *count)?;
            let docs: Vec<LangDocument> = exprs
                .iter()
                .map(|e| LangDocument {
                    level: *level,
                    expr: e.clone(),
                })
                .collect();
            emit(out, format, json!(docs), || {
                exprs.iter().map(|e| format!("{e}\n")).collect()
            })?;
            Ok(EXIT_HOLDS)
        }
        Command::EnumMonoids { max_size, all } => {
            let ms = enumerate_ordered_monoids(*max_size, !all);
            let mut counts = vec![0usize; *max_size];
            for m in &ms {
                counts[m.size() - 1] += 1;
            }
            let files: Vec<MonoidFile> = ms.iter().map(MonoidFile::from_monoid).collect();
            emit(
                out,
                format,
                json!({"counts": counts, "monoids": files}),
                || {
                    let mut s = String::new();
                    for (n, c) in counts.iter().enumerate() {
                        s.push_str(&format!("size {}: {c}\n", n + 1));
                    }
                    for m in &ms {
                        s.push('\n');
                        s.push_str(&monoid_text(m));
                    }
                    s
                },
            )?;
            Ok(EXIT_HOLDS)
        }
    }
}

fn parse_alphabet(s: &str) -> Result<Vec<Letter>, Failure> {
    let mut out: Vec<Letter> = s
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| Letter::new(c).ok_or_else(|| Failure(format!("bad letter {c:?}"))))
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn read_expr(arg: &str) -> Result<LangExpr, Failure> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg)?
    } else {
        arg.to_string()
    };
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure(format!("expression is not JSON: {e}")))?;
    if value.get("level").is_some() {
        return Ok(LangDocument::from_json(&text)?.expr);
    }
    Ok(LangExpr::from_value(&value)?)
}

fn monoid_text(m: &OrderedMonoid) -> String {
    let n = m.size();
    let width = (0..n).map(|x| m.name(x).len()).max().unwrap_or(1);
    let mut s = String::new();
    s.push_str(&format!("{:>width$} |", "", width = width));
    for y in 0..n {
        s.push_str(&format!(" {:>width$}", m.name(y), width = width));
    }
    s.push('\n');
    for x in 0..n {
        s.push_str(&format!("{:>width$} |", m.name(x), width = width));
        for y in 0..n {
            s.push_str(&format!(" {:>width$}", m.name(m.mul(x, y)), width = width));
        }
        s.push('\n');
    }
    let order: Vec<String> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y && m.leq(x, y))
        .map(|(x, y)| format!("{} < {}", m.name(x), m.name(y)))
        .collect();
    s.push_str(&format!(
        "order: {}\n",
        if order.is_empty() {
            "discrete".to_string()
        } else {
            order.join(", ")
        }
    ));
    s
}

fn evidence_text(e: &Evidence) -> String {
    match e {
        Evidence::Exact(Exact::TrivialLevel) => "level 0 identifies everything\n".into(),
        Evidence::Exact(Exact::SubwordInclusion) => {
            "every subword of the left side is a subword of the right side\n".into()
        }
        Evidence::Proof(p) => format!("proof at level {}:\n{p}", p.level),
        Evidence::Both(a, b) => {
            format!("{}and conversely:\n{}", evidence_text(a), evidence_text(b))
        }
    }
}

fn verdict_text(r: &Report) -> String {
    match &r.verdict {
        Verdict::Holds(e) => format!("holds\n{}", evidence_text(e)),
        Verdict::Fails(w) => {
            let mut s = format!("fails\nlanguage (level {}): {}\n", w.level, w.expr);
            if let LangExpr::Product { parts, markers } = &w.expr {
                if parts.iter().all(|p| *p == LangExpr::All) {
                    s.push_str(&format!("missing subword: {}\n", format_word(markers)));
                }
            }
            let assignment: Vec<String> = w
                .assignment
                .iter()
                .map(|(l, x)| format!("{l}->{x}"))
                .collect();
            s.push_str(&format!("assignment: {{{}}}\n", assignment.join(", ")));
            s.push_str(&format!(
                "values: {} is not below {}\n",
                w.lhs_value, w.rhs_value
            ));
            s
        }
        Verdict::Unknown(spent) => {
            let first = spent
                .exhausted
                .first()
                .map(|s| format!("{s:?}").to_lowercase())
                .unwrap_or_else(|| "none".into());
            format!(
                "unknown\nprover expansions: {}, languages tried: {}, first exhausted: {first}\n",
                spent.prover_expansions, spent.languages
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("omega-ineq").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn decide_examples() {
        let (code, out, _) = call(&["decide", "1", "a", "--level", "1/2"]);
        assert_eq!((code, out.lines().next()), (0, Some("holds")));
        let (code, out, _) = call(&["decide", "(a b)^w", "a^w b^w", "--level", "1/2"]);
        assert_eq!(code, 1);
        assert!(out.contains("missing subword: ba"), "{out}");
        let (code, out, _) = call(&["decide", "1", "a", "--level", "1", "--format", "json"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "fails");
        assert_eq!(v["query"]["level"], "1");
    }

    #[test]
    fn term_commands() {
        assert_eq!(call(&["mu", "(a a b^w)^w a b^w"]).1, "(2,0)\n");
        assert_eq!(call(&["canonical-j", "(b a)^w a"]).1, "(ab)^w\n");
        assert_eq!(call(&["normalize", "a a^w"]).1, "a^w\n");
        assert_eq!(call(&["decomps", "a b"]).1.lines().count(), 4);
        assert_eq!(call(&["subword", "ba", "a^w b^w"]).0, 1);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["decide", "a"]).0, 64);
        assert_eq!(call(&["mu", "(a"]).0, 64);
        assert_eq!(call(&["decide", "a", "a", "--level", "7/3"]).0, 64);
        assert_eq!(call(&["decide", "a", "a", "--level", "3"]).0, 64);
        assert_eq!(call(&["frobnicate"]).0, 64);
        assert_eq!(
            call(&[
                "decide",
                "a",
                "a",
                "--level",
                "1",
                "--budget-languages",
                "0"
            ])
            .0,
            64
        );
    }

    #[test]
    fn synt_and_enumerations() {
        let (code, out, _) = call(&["synt", "--expr", r#"{"product":["all","a","all"]}"#]);
        assert_eq!(code, 0);
        assert!(out.contains("filter: a"), "{out}");
        let (_, out, _) = call(&[
            "enum-langs",
            "--level",
            "0",
            "--count",
            "5",
            "--alphabet",
            "a",
        ]);
        assert_eq!(out, "A*\n0\n");
        let (_, out, _) = call(&["enum-monoids", "--max-size", "2", "--format", "json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["counts"], json!([1, 4]));
    }
}
