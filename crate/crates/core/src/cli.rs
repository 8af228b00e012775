//! Command-line front end.
//!
//! Every subcommand produces a [`Report`] that renders either as text or as a
//! JSON document with the fixed key order `command, inputs, outputs,
//! assumptions`. Exit codes: 0 success, 1 domain error, 2 usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::abelian::{classify_section2, fm_abelian_h, g_transform_h, proof_bounds, CheckStatus};
use crate::catalog::{
    enumerate_setups, example1_family, example2_k3, parse_ceiling, search_theorem_applicable,
};
use crate::error::Error;
use crate::general::{classify_appendix, reflection, theorem_map, FmSetup, TheoremVerdict};
use crate::lattice::{MukaiVector, Surface, SurfaceKind};
use crate::matrix::IntMatrix3;
use crate::par::Exec;
use crate::verify::verify_paper;

/// Environment variable overriding the `search` bound ceiling.
pub const CEILING_ENV: &str = "FMLATTICE_SEARCH_CEILING";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Abelian,
    K3,
}

impl From<KindArg> for SurfaceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Abelian => SurfaceKind::Abelian,
            KindArg::K3 => SurfaceKind::K3,
        }
    }
}

fn parse_vector(s: &str) -> Result<MukaiVector, String> {
    s.parse::<MukaiVector>().map_err(|e| e.to_string())
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| format!("cannot parse integer from '{s}'"))
}

fn parse_override(s: &str) -> Result<(String, String), String> {
    // check names may contain '=', expected values never do
    s.rsplit_once('=')
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .ok_or_else(|| format!("expected NAME=VALUE, got '{s}'"))
}

#[derive(Debug, Parser)]
#[command(
    name = "fmlattice",
    version,
    about = "Mukai-lattice arithmetic and Fourier-Mukai transforms on Picard-rank-1 surfaces"
)]
struct Cli {
    /// Surface kind.
    #[arg(long, global = true, value_enum, default_value = "abelian")]
    kind: KindArg,

    /// Self-intersection (L^2) of the ample generator.
    #[arg(long, global = true, value_parser = parse_int, allow_hyphen_values = true)]
    lsq: Option<BigInt>,

    /// Rank r0 of the isotropic vector v0.
    #[arg(long, global = true, value_parser = parse_int, allow_hyphen_values = true)]
    r0: Option<BigInt>,

    /// Degree d0 of v0, coprime to r0.
    #[arg(long, global = true, value_parser = parse_int, allow_hyphen_values = true)]
    d0: Option<BigInt>,

    /// (L^2) = 2·r0·k, with k coprime to r0.
    #[arg(long, global = true, value_parser = parse_int, allow_hyphen_values = true)]
    k: Option<BigInt>,

    /// Alternate normalization; must satisfy d1·k·d0 ≡ 1 (mod r0).
    #[arg(long, global = true, value_parser = parse_int, allow_hyphen_values = true)]
    d1: Option<BigInt>,

    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mukai pairing <v, w>.
    Pair {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        w: MukaiVector,
    },
    /// <v^2>, primitivity and isotropy.
    Square {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
    },
    /// (r, d, a) -> (r, -d, a).
    Dual {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
    },
    /// Tensor with L^m.
    Twist {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
        #[arg(value_parser = parse_int, allow_hyphen_values = true)]
        m: BigInt,
    },
    /// Mukai vector from (rank, c1, c2), or Chern data back from a vector with --invert.
    Chern {
        #[arg(value_parser = parse_int, allow_hyphen_values = true, num_args = 0..=3)]
        values: Vec<BigInt>,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        invert: Option<MukaiVector>,
    },
    /// Relative degree, rank and slope of v against g.
    Deg {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        g: MukaiVector,
    },
    /// Poincaré transform F_H and G_H on an abelian surface.
    Fm2 {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
    },
    /// WIT/IT case for r + c1(L) + a·ω on an abelian surface.
    Classify2 {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
    },
    /// Validate (r0, d0, k) and print d1, l and the transform matrix.
    Setup,
    /// Apply the generalized transform.
    Fm {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
    },
    /// Apply the inverse transform.
    Inverse {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        w: MukaiVector,
    },
    /// Moduli isomorphism for degree-one vectors.
    Theorem {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
    },
    /// IT_1 classifier for degree-zero vectors.
    Appendix {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
    },
    /// Reflection in a (-2)-class u.
    Reflect {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        u: MukaiVector,
    },
    /// n with v ~ v(I_Z), len Z = n.
    Hilb {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
    },
    /// dim M_L(v) = <v^2> + 2.
    Dim {
        #[arg(value_parser = parse_vector, allow_hyphen_values = true)]
        v: MukaiVector,
    },
    /// Rank-one family with parameters (r0, n, s).
    Example1 {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
    },
    /// Replay the K3 example with (L^2) = 12.
    Example2,
    /// Degree-one vectors in a box, with verdicts.
    Search {
        #[arg(long)]
        bound: u64,
    },
    /// All setups for a given (L^2).
    Setups {
        #[arg(long, default_value_t = 1)]
        d0_bound: i64,
    },
    /// Replay every worked example and report pass/fail per check.
    VerifyPaper {
        /// Replace the expected value of a named check.
        #[arg(long = "override", value_parser = parse_override, hide = true)]
        overrides: Vec<(String, String)>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Pair { .. } => "pair",
            Command::Square { .. } => "square",
            Command::Dual { .. } => "dual",
            Command::Twist { .. } => "twist",
            Command::Chern { .. } => "chern",
            Command::Deg { .. } => "deg",
            Command::Fm2 { .. } => "fm2",
            Command::Classify2 { .. } => "classify2",
            Command::Setup => "setup",
            Command::Fm { .. } => "fm",
            Command::Inverse { .. } => "inverse",
            Command::Theorem { .. } => "theorem",
            Command::Appendix { .. } => "appendix",
            Command::Reflect { .. } => "reflect",
            Command::Hilb { .. } => "hilb",
            Command::Dim { .. } => "dim",
            Command::Example1 { .. } => "example1",
            Command::Example2 => "example2",
            Command::Search { .. } => "search",
            Command::Setups { .. } => "setups",
            Command::VerifyPaper { .. } => "verify-paper",
        }
    }
}

/// A value in a report. Integers stay exact in both renderings.
#[derive(Debug, Clone, PartialEq)]
pub enum Out {
    Int(BigInt),
    Vector(MukaiVector),
    Text(String),
    Bool(bool),
    Null,
    List(Vec<Out>),
    Matrix(IntMatrix3),
}

impl Out {
    fn opt_vec(v: Option<&MukaiVector>) -> Out {
        v.map_or(Out::Null, |v| Out::Vector(v.clone()))
    }

    fn opt_int(v: Option<BigInt>) -> Out {
        v.map_or(Out::Null, Out::Int)
    }

    fn to_json(&self) -> Value {
        fn num(n: &BigInt) -> Value {
            serde_json::from_str(&n.to_string()).expect("decimal integers are JSON numbers")
        }
        match self {
            Out::Int(n) => num(n),
            Out::Vector(v) => Value::Array(vec![num(&v.r), num(&v.d), num(&v.a)]),
            Out::Text(s) => Value::String(s.clone()),
            Out::Bool(b) => Value::Bool(*b),
            Out::Null => Value::Null,
            Out::List(xs) => Value::Array(xs.iter().map(Out::to_json).collect()),
            Out::Matrix(m) => Value::Array(
                m.rows()
                    .iter()
                    .map(|row| Value::Array(row.iter().map(num).collect()))
                    .collect(),
            ),
        }
    }

    fn to_text(&self) -> String {
        match self {
            Out::Int(n) => n.to_string(),
            Out::Vector(v) => v.to_string(),
            Out::Text(s) => s.clone(),
            Out::Bool(b) => b.to_string(),
            Out::Null => "none".to_string(),
            Out::List(xs) => xs.iter().map(Out::to_text).collect::<Vec<_>>().join("; "),
            Out::Matrix(m) => m.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, Out)>,
    pub outputs: Vec<(String, Out)>,
    pub assumptions: Vec<String>,
    /// Output keys printed together on the first text line.
    headline: Vec<&'static str>,
    /// Free-form text lines appended after the key=value lines.
    extra_lines: Vec<String>,
    /// Nonzero when the command ran but reports a failure (verify-paper).
    status: i32,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            assumptions: Vec::new(),
            headline: Vec::new(),
            extra_lines: Vec::new(),
            status: 0,
        }
    }

    fn input(mut self, key: &str, v: Out) -> Self {
        self.inputs.push((key.to_string(), v));
        self
    }

    fn output(mut self, key: &str, v: Out) -> Self {
        self.outputs.push((key.to_string(), v));
        self
    }

    fn headline(mut self, keys: &[&'static str]) -> Self {
        self.headline = keys.to_vec();
        self
    }

    pub fn to_json(&self) -> Value {
        let pairs = |xs: &[(String, Out)]| {
            let mut m = Map::new();
            for (k, v) in xs {
                m.insert(k.clone(), v.to_json());
            }
            Value::Object(m)
        };
        let mut doc = Map::new();
        doc.insert("command".into(), Value::String(self.command.clone()));
        doc.insert("inputs".into(), pairs(&self.inputs));
        doc.insert("outputs".into(), pairs(&self.outputs));
        doc.insert(
            "assumptions".into(),
            Value::Array(
                self.assumptions
                    .iter()
                    .map(|a| Value::String(a.clone()))
                    .collect(),
            ),
        );
        Value::Object(doc)
    }

    /// A single scalar output prints bare. Otherwise the headline keys share
    /// the first line and every other output gets its own `key=value` line.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::new();
        if self.outputs.len() == 1 && self.headline.is_empty() {
            lines.push(self.outputs[0].1.to_text());
        } else {
            let lookup = |k: &str| self.outputs.iter().find(|(key, _)| key == k);
            if !self.headline.is_empty() {
                let head: Vec<String> = self
                    .headline
                    .iter()
                    .filter_map(|k| lookup(k))
                    .map(|(k, v)| format!("{k}={}", v.to_text()))
                    .collect();
                lines.push(head.join(" "));
            }
            for (k, v) in &self.outputs {
                if !self.headline.contains(&k.as_str()) {
                    lines.push(format!("{k}={}", v.to_text()));
                }
            }
        }
        lines.extend(self.extra_lines.iter().cloned());
        for a in &self.assumptions {
            lines.push(format!("assume: {a}"));
        }
        let mut s = lines.join("\n");
        s.push('\n');
        s
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx<'a> {
    cli: &'a Cli,
    ceiling: u64,
}

impl Ctx<'_> {
    fn kind(&self) -> SurfaceKind {
        self.cli.kind.into()
    }

    /// From --lsq, or (L^2) = 2·r0·k when a setup is given.
    fn surface(&self) -> CliResult<Surface> {
        if let Some(l) = &self.cli.lsq {
            return Ok(Surface::new(self.kind(), l.clone())?);
        }
        if let (Some(r0), Some(k)) = (&self.cli.r0, &self.cli.k) {
            return Ok(Surface::new(self.kind(), BigInt::from(2) * r0 * k)?);
        }
        Err(CliError::Usage(
            "missing --lsq (or --r0 and --k) for the surface".into(),
        ))
    }

    fn setup(&self) -> CliResult<FmSetup> {
        let need = |x: &Option<BigInt>, flag: &str| {
            x.clone()
                .ok_or_else(|| CliError::Usage(format!("missing --{flag} for the setup")))
        };
        let (r0, d0, k) = (
            need(&self.cli.r0, "r0")?,
            need(&self.cli.d0, "d0")?,
            need(&self.cli.k, "k")?,
        );
        let setup = match &self.cli.d1 {
            Some(d1) => FmSetup::with_d1(self.kind(), r0, d0, k, d1.clone())?,
            None => FmSetup::new(self.kind(), r0, d0, k)?,
        };
        if let Some(l) = &self.cli.lsq {
            if l != setup.source().l_sq() {
                return Err(CliError::Domain(Error::InvalidSetup(format!(
                    "--lsq {l} ≠ 2·r0·k = {}",
                    setup.source().l_sq()
                ))));
            }
        }
        Ok(setup)
    }
}

fn surface_inputs(r: Report, s: &Surface) -> Report {
    r.input("kind", Out::Text(s.kind().name().into()))
        .input("lsq", Out::Int(s.l_sq().clone()))
}

fn setup_inputs(r: Report, s: &FmSetup) -> Report {
    r.input("kind", Out::Text(s.source().kind().name().into()))
        .input("r0", Out::Int(s.r0().clone()))
        .input("d0", Out::Int(s.d0().clone()))
        .input("k", Out::Int(s.k().clone()))
        .input("d1", Out::Int(s.d1().clone()))
}

fn verdict_report(mut r: Report, t: &TheoremVerdict) -> Report {
    r = r
        .output("case", Out::Text(t.case.name().into()))
        .output("target", Out::opt_vec(t.canonical_image()))
        .output("raw_image", Out::opt_vec(t.raw_image.as_ref()))
        .output(
            "twist",
            Out::opt_int(t.canonical.as_ref().map(|c| c.twist.clone())),
        )
        .output(
            "sign",
            Out::opt_int(t.canonical.as_ref().map(|c| BigInt::from(c.sign))),
        )
        .output("degree", Out::Int(t.degree.clone()))
        .output("pairing_v0_dual", Out::Int(t.pairing_with_v0_dual.clone()))
        .headline(&["case", "target"]);
    r.assumptions = t.assumptions.clone();
    r
}

fn execute(ctx: &Ctx<'_>) -> CliResult<Report> {
    let cmd = &ctx.cli.command;
    let r = Report::new(cmd.name());
    Ok(match cmd {
        Command::Pair { v, w } => {
            let s = ctx.surface()?;
            surface_inputs(r, &s)
                .input("v", Out::Vector(v.clone()))
                .input("w", Out::Vector(w.clone()))
                .output("pairing", Out::Int(v.pairing(w, &s)))
        }
        Command::Square { v } => {
            let s = ctx.surface()?;
            surface_inputs(r, &s)
                .input("v", Out::Vector(v.clone()))
                .output("v_squared", Out::Int(v.v_squared(&s)))
                .output("primitive", Out::Bool(v.is_primitive()))
                .output("isotropic", Out::Bool(v.is_isotropic(&s)))
                .headline(&["v_squared"])
        }
        Command::Dual { v } => r
            .input("v", Out::Vector(v.clone()))
            .output("dual", Out::Vector(v.dual())),
        Command::Twist { v, m } => {
            let s = ctx.surface()?;
            surface_inputs(r, &s)
                .input("v", Out::Vector(v.clone()))
                .input("m", Out::Int(m.clone()))
                .output("twist", Out::Vector(v.twist(m, &s)))
        }
        Command::Chern { values, invert } => {
            let s = ctx.surface()?;
            let r = surface_inputs(r, &s);
            match (values.as_slice(), invert) {
                ([rank, c1, c2], None) => r
                    .input("rank", Out::Int(rank.clone()))
                    .input("c1", Out::Int(c1.clone()))
                    .input("c2", Out::Int(c2.clone()))
                    .output(
                        "vector",
                        Out::Vector(MukaiVector::from_chern(
                            rank.clone(),
                            c1.clone(),
                            c2.clone(),
                            &s,
                        )),
                    ),
                ([], Some(v)) => {
                    let c = v.to_chern(&s);
                    r.input("v", Out::Vector(v.clone()))
                        .output("rank", Out::Int(c.rank))
                        .output("c1", Out::Int(c.c1))
                        .output("c2", Out::Int(c.c2))
                        .headline(&["rank", "c1", "c2"])
                }
                _ => {
                    return Err(CliError::Usage(
                        "chern takes either RANK C1 C2 or --invert r,d,a".into(),
                    ))
                }
            }
        }
        Command::Deg { v, g } => r
            .input("v", Out::Vector(v.clone()))
            .input("g", Out::Vector(g.clone()))
            .output("deg", Out::Int(v.deg_rel(g)))
            .output("rk", Out::Int(v.rk_rel(g)))
            .output(
                "mu",
                v.mu_rel(g).map_or(Out::Null, |q| Out::Text(q.to_string())),
            )
            .headline(&["deg"]),
        Command::Fm2 { v } => {
            let s = ctx.surface()?;
            surface_inputs(r, &s)
                .input("v", Out::Vector(v.clone()))
                .output("f_image", Out::Vector(fm_abelian_h(v, &s)?))
                .output("g_image", Out::Vector(g_transform_h(v, &s)?))
                .headline(&["f_image", "g_image"])
        }
        Command::Classify2 { v } => {
            let s = ctx.surface()?;
            let c = classify_section2(v, &s)?;
            let b = proof_bounds(v, &s)?;
            let mut r = surface_inputs(r, &s)
                .input("v", Out::Vector(v.clone()))
                .output("case", Out::Text(c.case.name().into()))
                .output("image", Out::opt_vec(c.image.as_ref()))
                .output("ext_bound", Out::opt_int(b.ext_bound))
                .output("sections_bound", Out::opt_int(b.sections_bound))
                .output(
                    "hypotheses",
                    Out::List(
                        c.hypotheses
                            .iter()
                            .filter(|h| h.status != CheckStatus::Assumed)
                            .map(|h| Out::Text(format!("{}: {}", h.name, h.status.name())))
                            .collect(),
                    ),
                )
                .headline(&["case", "image"]);
            r.assumptions = c
                .hypotheses
                .iter()
                .filter(|h| h.status == CheckStatus::Assumed)
                .map(|h| h.name.clone())
                .collect();
            r
        }
        Command::Setup => {
            let s = ctx.setup()?;
            let (g1, g2) = s.g_vectors();
            setup_inputs(r, &s)
                .output("d1", Out::Int(s.d1().clone()))
                .output("l", Out::Int(s.l().clone()))
                .output("lsq", Out::Int(s.source().l_sq().clone()))
                .output("v0", Out::Vector(s.v0()))
                .output("v0_dual", Out::Vector(s.v0_dual()))
                .output("matrix", Out::Matrix(s.fm_matrix().clone()))
                .output("det", Out::Int(s.fm_matrix().determinant()))
                .output("g1", Out::Vector(g1))
                .output("g2", Out::Vector(g2))
                .headline(&["d1", "l", "lsq"])
        }
        Command::Fm { v } => {
            let s = ctx.setup()?;
            setup_inputs(r, &s)
                .input("v", Out::Vector(v.clone()))
                .output("image", Out::Vector(s.fm_apply(v)))
        }
        Command::Inverse { w } => {
            let s = ctx.setup()?;
            setup_inputs(r, &s)
                .input("w", Out::Vector(w.clone()))
                .output("preimage", Out::Vector(s.fm_inverse_apply(w)))
        }
        Command::Theorem { v } => {
            let s = ctx.setup()?;
            let t = theorem_map(&s, v)?;
            verdict_report(setup_inputs(r, &s).input("v", Out::Vector(v.clone())), &t)
        }
        Command::Appendix { v } => {
            let s = ctx.setup()?;
            let t = classify_appendix(&s, v)?;
            verdict_report(setup_inputs(r, &s).input("v", Out::Vector(v.clone())), &t)
        }
        Command::Reflect { v, u } => {
            let s = ctx.surface()?;
            let img = reflection(v, u, &s)?;
            let canon = img.canonical_form(&s).ok().map(|c| c.vector);
            surface_inputs(r, &s)
                .input("v", Out::Vector(v.clone()))
                .input("u", Out::Vector(u.clone()))
                .output("image", Out::Vector(img))
                .output("canonical", Out::opt_vec(canon.as_ref()))
                .headline(&["image", "canonical"])
        }
        Command::Hilb { v } => {
            let s = ctx.surface()?;
            surface_inputs(r, &s)
                .input("v", Out::Vector(v.clone()))
                .output("n", Out::opt_int(v.hilbert_index(&s)))
        }
        Command::Dim { v } => {
            let s = ctx.surface()?;
            surface_inputs(r, &s)
                .input("v", Out::Vector(v.clone()))
                .output("dim", Out::Int(v.moduli_dim(&s)?))
        }
        Command::Example1 { n, s } => {
            let r0 = ctx
                .cli
                .r0
                .clone()
                .ok_or_else(|| CliError::Usage("missing --r0 for example1".into()))?;
            let r0 = i64::try_from(&r0)
                .map_err(|_| CliError::Usage(format!("--r0 {r0} out of range")))?;
            let e = example1_family(ctx.kind(), r0, *n, *s)?;
            let t = &e.verdict;
            let mut r = r
                .input("kind", Out::Text(ctx.kind().name().into()))
                .input("r0", Out::Int(r0.into()))
                .input("n", Out::Int((*n).into()))
                .input("s", Out::Int((*s).into()))
                .output("v", Out::Vector(e.v.clone()))
                .output("v0", Out::Vector(e.setup.v0()))
                .output("d0", Out::Int(e.setup.d0().clone()))
                .output("k", Out::Int(e.setup.k().clone()))
                .output("lsq", Out::Int(e.setup.source().l_sq().clone()))
                .output("v_squared", Out::Int(e.v_sq.clone()))
                .output("p", Out::Int(e.p.clone()))
                .output("case", Out::Text(t.case.name().into()))
                .output("target", Out::opt_vec(t.canonical_image()))
                .headline(&["v", "v_squared", "p", "case"]);
            r.assumptions = t.assumptions.clone();
            r
        }
        Command::Example2 => {
            let e = example2_k3()?;
            let steps = e
                .steps
                .iter()
                .map(|s| Out::Text(format!("{}: {} -> {}", s.operation, s.input, s.output)))
                .collect();
            let mut r = r
                .output("source", Out::Vector(e.source_vector.clone()))
                .output("fm_image", Out::Vector(e.fm_image.clone()))
                .output("reflected", Out::Vector(e.reflected.clone()))
                .output("target", Out::Vector(e.target_vector.clone()))
                .output("steps", Out::List(steps))
                .headline(&["source", "fm_image", "target"]);
            r.extra_lines = e
                .steps
                .iter()
                .map(|s| format!("  {}: {} -> {}", s.operation, s.input, s.output))
                .collect();
            // steps are shown as indented lines in text mode
            r.outputs.retain(|(k, _)| k != "steps" || ctx.cli.json);
            r
        }
        Command::Search { bound } => {
            let s = ctx.setup()?;
            let found = search_theorem_applicable(&s, *bound, ctx.ceiling, Exec::default())?;
            let rows = found
                .iter()
                .map(|t| {
                    Out::Text(format!(
                        "{} case={} target={}",
                        t.input,
                        t.case,
                        Out::opt_vec(t.canonical_image()).to_text()
                    ))
                })
                .collect::<Vec<_>>();
            let mut r = setup_inputs(r, &s)
                .input("bound", Out::Int((*bound).into()))
                .output("count", Out::Int(found.len().into()));
            r.extra_lines = rows.iter().map(Out::to_text).collect();
            if ctx.cli.json {
                r = r.output("results", Out::List(rows));
            }
            r.headline(&["count"])
        }
        Command::Setups { d0_bound } => {
            let s = ctx.surface()?;
            let l = i64::try_from(s.l_sq())
                .map_err(|_| CliError::Usage(format!("--lsq {} out of range", s.l_sq())))?;
            let all = enumerate_setups(s.kind(), l, *d0_bound)?;
            let rows: Vec<Out> = all
                .iter()
                .map(|x| {
                    Out::Text(format!(
                        "r0={} d0={} k={} d1={} l={}",
                        x.r0(),
                        x.d0(),
                        x.k(),
                        x.d1(),
                        x.l()
                    ))
                })
                .collect();
            let mut r = surface_inputs(r, &s)
                .input("d0_bound", Out::Int((*d0_bound).into()))
                .output("count", Out::Int(all.len().into()));
            r.extra_lines = rows.iter().map(Out::to_text).collect();
            if ctx.cli.json {
                r = r.output("setups", Out::List(rows));
            }
            r.headline(&["count"])
        }
        Command::VerifyPaper { overrides } => {
            let map: BTreeMap<String, String> = overrides.iter().cloned().collect();
            let (report, unknown) = verify_paper()?.with_overrides(&map);
            if let Some(name) = unknown.first() {
                return Err(CliError::Usage(format!("unknown check '{name}'")));
            }
            let lines: Vec<String> = report.checks.iter().map(|c| c.line()).collect();
            let failed = report.failures().count();
            let mut r = r
                .output("checks", Out::Int(report.checks.len().into()))
                .output("failed", Out::Int(failed.into()))
                .headline(&["checks", "failed"]);
            if ctx.cli.json {
                r = r.output(
                    "results",
                    Out::List(lines.iter().cloned().map(Out::Text).collect()),
                );
            }
            r.extra_lines = lines;
            r.status = if report.passed() { 0 } else { 1 };
            r
        }
    })
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_ceiling(
        args,
        parse_ceiling(std::env::var(CEILING_ENV).ok().as_deref()),
    )
}

pub fn run_with_ceiling<I, T>(args: I, ceiling: u64) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let ctx = Ctx { cli: &cli, ceiling };
    match execute(&ctx) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.to_json())
                    .expect("report values serialize");
                s.push('\n');
                s
            } else {
                report.to_text()
            };
            let stderr = if report.status == 0 {
                String::new()
            } else {
                report
                    .extra_lines
                    .iter()
                    .filter(|l| l.starts_with("FAIL"))
                    .map(|l| format!("{l}\n"))
                    .collect()
            };
            Outcome {
                code: report.status,
                stdout,
                stderr,
            }
        }
        Err(CliError::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(CliError::Domain(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
