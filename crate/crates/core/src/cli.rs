//! Command-line driver. [`run`] parses arguments, writes to the given sinks,
//! and returns the process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::classify::{
    endomorphism_lattice, enumerate_degree, equivalent_global, equivalent_local,
    expand_to_equivalence, is_indecomposable, stabilizer, ClassEntryJson, ClassifyError, GlobalVerdict,
};
use crate::f2poly::{orbits, Automorphism, F2Poly};
use crate::quiver::{dimension_vector, enumerate_roots, RootJson};
use crate::reps::{
    conjugate, construct, construct_delta_f, construct_fprime, construct_lemma3_special, contragredient,
    tensor_character, Character, Family, Position, Representation,
};
use crate::verify::{verify_lemma3, verify_table1, verify_table2, verify_table3, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "k4rep", version, about = "Integral representations of the Klein four-group")]
struct Cli {
    /// Emit JSON on standard output instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a representation and write it as JSON. Operations apply in the
    /// order --twist, --dual, --conj.
    Construct(ConstructArgs),
    /// Dimension vector (d0; d1, d2, d3, d4) and the value of B.
    Dimvec { file: PathBuf },
    /// Positive roots of B with d1+d2+d3+d4 = M.
    Roots(RootsArgs),
    /// Aut(G)-orbits on M_n with stabilizers.
    Orbits {
        #[arg(long)]
        n: usize,
    },
    /// Indecomposability over Z_2 (hence over Z_(2) and Z).
    Indecomposable { file: PathBuf },
    /// Equivalence of two representations.
    Equivalent(EquivalentArgs),
    /// Stabilizer St and index S = 6/|St|.
    Stabilizer { file: PathBuf },
    /// Indecomposable classes of degree M up to conjugacy.
    Classify {
        #[arg(long)]
        m: usize,
        /// Also list the S(Γ) non-equivalent conjugates of each class.
        #[arg(long)]
        expand: bool,
    },
    /// Check the printed tables or the degree-4n lemma.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Delta_n, W_0, W_n, T_n, Delta_n1, F, Fprime, regular, chi1..chi4, lemma3special
    #[arg(long)]
    rep: String,
    #[arg(long)]
    n: Option<usize>,
    /// Polynomial for F, as a bit string (lowest degree first) or like x^2+x+1.
    #[arg(long)]
    f: Option<String>,
    /// Position of the companion block for F: 11, 12, 21, 22.
    #[arg(long, default_value = "12")]
    pos: String,
    /// Tensor with a character.
    #[arg(long)]
    twist: Option<String>,
    /// Conjugate by an automorphism word such as s1.s2.
    #[arg(long)]
    conj: Option<String>,
    /// Take the contragredient.
    #[arg(long)]
    dual: bool,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct RootsArgs {
    #[arg(long)]
    m: Option<u64>,
    #[arg(long = "max-m")]
    max_m: Option<u64>,
}

#[derive(Args, Debug)]
struct EquivalentArgs {
    file1: PathBuf,
    file2: PathBuf,
    /// local: over Z_(2) and Z_2 (exact); z: witness search over Z.
    #[arg(long, default_value = "local", value_parser = ["local", "z"])]
    ring: String,
    /// Coefficient bound for the witness search.
    #[arg(long, default_value_t = 2)]
    bound: u32,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3), conflicts_with = "lemma3", required_unless_present = "lemma3")]
    table: Option<u8>,
    #[arg(long = "max-n", default_value_t = 3)]
    max_n: usize,
    #[arg(long, requires = "n")]
    lemma3: bool,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        if e.is_cap_exceeded() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Usage(e.to_string())
            }
        }
    )*};
}

usage_from!(
    crate::reps::RepError,
    crate::f2poly::PolyError,
    crate::quiver::QuiverError,
    std::io::Error,
    serde_json::Error
);

type Outcome = std::result::Result<i32, Failure>;

struct Ctx<'a> {
    json: bool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, value: &Value, text: impl FnOnce() -> String) -> std::io::Result<()> {
        if self.json {
            writeln!(self.out, "{}", serde_json::to_string_pretty(value).expect("JSON value serializes"))
        } else {
            writeln!(self.out, "{}", text())
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut ctx = Ctx { json: cli.json, out };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Cap(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_CAP
        }
    }
}

fn read_rep(path: &Path) -> std::result::Result<Representation, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Representation::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn dispatch(cmd: Command, ctx: &mut Ctx<'_>) -> Outcome {
    match cmd {
        Command::Construct(a) => cmd_construct(a, ctx),
        Command::Dimvec { file } => {
            let rep = read_rep(&file)?;
            let (d, _) = dimension_vector(&rep)?;
            let j = RootJson::from(d);
            ctx.emit(&serde_json::to_value(&j)?, || format!("d = {d}  B(d) = {}", j.b))?;
            Ok(EXIT_OK)
        }
        Command::Roots(a) => {
            let ms: Vec<u64> = match (a.m, a.max_m) {
                (Some(m), _) => vec![m],
                (None, Some(mm)) => (0..=mm).collect(),
                (None, None) => unreachable!("clap enforces the group"),
            };
            let roots: Vec<RootJson> = ms.iter().flat_map(|&m| enumerate_roots(m)).map(RootJson::from).collect();
            ctx.emit(&serde_json::to_value(&roots)?, || {
                roots
                    .iter()
                    .map(|r| {
                        let d = r.d;
                        format!("m={:<3} ({}; {}, {}, {}, {})", d[1] + d[2] + d[3] + d[4], d[0], d[1], d[2], d[3], d[4])
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            Ok(EXIT_OK)
        }
        Command::Orbits { n } => {
            let recs = orbits(n)?;
            ctx.emit(&serde_json::to_value(&recs)?, || {
                if recs.is_empty() {
                    return format!("M_{n} is empty");
                }
                recs.iter()
                    .map(|r| {
                        let members: Vec<String> = r.members.iter().map(ToString::to_string).collect();
                        format!(
                            "{}  members {{{}}}  St = {} (order {})",
                            r.representative,
                            members.join(", "),
                            r.stabilizer,
                            r.stabilizer.order()
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            Ok(EXIT_OK)
        }
        Command::Indecomposable { file } => {
            let rep = read_rep(&file)?;
            let ind = is_indecomposable(&rep)?;
            let rank = endomorphism_lattice(&rep)?.rank();
            ctx.emit(&json!({ "indecomposable": ind, "endomorphism_rank": rank, "ring": "Z_2" }), || {
                format!("{} (endomorphism rank {rank})", if ind { "indecomposable" } else { "decomposable" })
            })?;
            Ok(EXIT_OK)
        }
        Command::Equivalent(a) => {
            let r1 = read_rep(&a.file1)?;
            let r2 = read_rep(&a.file2)?;
            if r1.degree() != r2.degree() {
                return Err(Failure::Usage(format!("degree mismatch: {} vs {}", r1.degree(), r2.degree())));
            }
            if a.ring == "local" {
                let eq = equivalent_local(&r1, &r2)?;
                ctx.emit(&json!({ "ring": "Z_(2)", "equivalent": eq }), || {
                    format!("{} over Z_(2) and Z_2", if eq { "equivalent" } else { "not equivalent" })
                })?;
                return Ok(EXIT_OK);
            }
            let v = equivalent_global(&r1, &r2, a.bound)?;
            let (witness, exhausted) = match &v {
                GlobalVerdict::Yes(x) => (Some(x.to_rows()), true),
                GlobalVerdict::No => (None, true),
                GlobalVerdict::Unknown { exhausted, .. } => (None, *exhausted),
            };
            ctx.emit(
                &json!({ "ring": "Z", "verdict": v.label(), "witness": witness, "bound": a.bound }),
                || match &v {
                    GlobalVerdict::Yes(x) => format!("equivalent over Z; witness:\n{x}"),
                    GlobalVerdict::No => "not equivalent (already over Z_(2))".into(),
                    GlobalVerdict::Unknown { examined, .. } => {
                        format!("unknown: no unimodular witness among {examined} candidates")
                    }
                },
            )?;
            Ok(if exhausted { EXIT_OK } else { EXIT_CAP })
        }
        Command::Stabilizer { file } => {
            let rep = read_rep(&file)?;
            let st = stabilizer(&rep)?;
            let s = 6 / st.order();
            ctx.emit(&json!({ "stabilizer": st, "order": st.order(), "S": s }), || {
                format!("St = {st} (order {}), S = {s}", st.order())
            })?;
            Ok(EXIT_OK)
        }
        Command::Classify { m, expand } => {
            let entries = enumerate_degree(m)?;
            let mut values = Vec::new();
            let mut lines = Vec::new();
            for e in &entries {
                let mut v = serde_json::to_value(ClassEntryJson::from(e))?;
                let d = e.dimension.map_or("-".to_string(), |d| d.to_string());
                lines.push(format!("{:<22} d = {:<22} St = {:<24} S = {}", e.label(), d, e.stabilizer.to_string(), e.conjugates()));
                if expand {
                    let reps = expand_to_equivalence(e)?;
                    lines.extend(reps.iter().map(|r| format!("    {}", r.label())));
                    v["expanded"] = serde_json::from_str(&format!(
                        "[{}]",
                        reps.iter().map(Representation::to_json).collect::<Vec<_>>().join(",")
                    ))?;
                }
                values.push(v);
            }
            ctx.emit(&Value::Array(values), || {
                if lines.is_empty() {
                    format!("no indecomposable classes of degree {m}")
                } else {
                    lines.join("\n")
                }
            })?;
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            let reports: Vec<Report> = if a.lemma3 {
                let n = a.n.expect("clap enforces --n");
                if n == 0 {
                    return Err(Failure::Usage("--n must be at least 1".into()));
                }
                verify_lemma3(n)?.reports
            } else {
                match a.table.expect("clap enforces --table") {
                    1 => verify_table1(a.max_n),
                    2 => verify_table2(a.max_n)?,
                    _ => verify_table3(a.max_n)?,
                }
            };
            let bad = reports.iter().filter(|r| !r.is_match()).count();
            ctx.emit(&serde_json::to_value(&reports)?, || {
                let mut lines: Vec<String> = reports
                    .iter()
                    .map(|r| {
                        let tag = if r.is_match() { "ok      " } else { "MISMATCH" };
                        if r.is_match() {
                            format!("{tag} {}  [{}]", r.claim, r.location)
                        } else {
                            format!("{tag} {}  [{}]\n         computed {}  printed {}", r.claim, r.location, r.computed, r.printed)
                        }
                    })
                    .collect();
                lines.push(format!("{} checks, {} mismatches", reports.len(), bad));
                lines.join("\n")
            })?;
            Ok(if bad == 0 { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

fn cmd_construct(a: ConstructArgs, ctx: &mut Ctx<'_>) -> Outcome {
    let need_n = || a.n.ok_or_else(|| Failure::Usage(format!("--rep {} requires --n", a.rep)));
    let mut rep = match a.rep.as_str() {
        "F" => {
            let text = a.f.as_deref().ok_or_else(|| Failure::Usage("--rep F requires --f".into()))?;
            let f: F2Poly = text.parse()?;
            let pos: Position = a.pos.parse()?;
            construct_delta_f(f, pos)?
        }
        "Fprime" => construct_fprime(need_n()?)?,
        "lemma3special" => construct_lemma3_special(need_n()?)?,
        name => {
            let family: Family = name.parse()?;
            let n = match family {
                Family::DeltaN | Family::Wn | Family::Tn | Family::DeltaN1 => need_n()?,
                _ => a.n.unwrap_or(0),
            };
            construct(family, n)?
        }
    };
    if let Some(t) = &a.twist {
        let chi: Character = t.parse()?;
        rep = tensor_character(&rep, chi);
    }
    if a.dual {
        rep = contragredient(&rep);
    }
    if let Some(w) = &a.conj {
        rep = conjugate(&rep, Automorphism::parse_word(w)?);
    }
    let text = rep.to_json_pretty();
    match &a.output {
        Some(path) => {
            fs::write(path, format!("{text}\n")).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            if !ctx.json {
                writeln!(ctx.out, "wrote {} (degree {}) to {}", rep.label(), rep.degree(), path.display())?;
            }
        }
        None => writeln!(ctx.out, "{text}")?,
    }
    Ok(EXIT_OK)
}
