//! Command-line front end for `gvd-core`: argument parsing, diagram
//! files and JSON output.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gvd_core::conifold::{conifold_invariant, conifold_table, degree_zero};
use gvd_core::energy::{compare, theorem_rhs};
use gvd_core::exactnum::{ApComplex, BigRat, LaurentPoly, Precision};
use gvd_core::gwloc::{gw_invariant_cp2, kontsevich_recursion, EquivWeights, Linearization};
use gvd_core::liedata::{alcove_weights, weyl_dim, Weight};
use gvd_core::mtc::{sln_unknot_surgery_tau, u1_link_value, u1_tau, verify_sl2z_data, z_s3, ModularData, SurgeryPresentation};
use gvd_core::tangle::{evaluate_closed, evaluate_u1, linking_matrix, parse_diagram, skein_check, thomflyp, SkeinTriple, TangleDiagram};
use gvd_core::Error;
use serde_json::{json, Map, Value};

/// Environment variable holding the default working precision in bits.
pub const PRECISION_ENV: &str = "GVD_PRECISION";
pub const DEFAULT_PRECISION: u32 = 256;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gvd", version, about = "Exact Chern-Simons and Gromov-Witten computations")]
pub struct Cli {
    /// Working precision in bits (at least 64); defaults to $GVD_PRECISION or 256.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gromov-Witten invariants.
    #[command(subcommand)]
    Gw(GwCommand),
    /// Chern-Simons and modular-category data.
    #[command(subcommand)]
    Cs(CsCommand),
    /// Link diagrams.
    #[command(subcommand)]
    Link(LinkCommand),
    /// Free-energy comparison.
    #[command(subcommand)]
    Energy(EnergyCommand),
    /// Lie-theoretic data for sl_N.
    #[command(subcommand)]
    Lie(LieCommand),
}

#[derive(Subcommand, Debug)]
pub enum GwCommand {
    /// Rational curves through 3d-1 points of CP^2 by localization.
    Cp2 {
        #[arg(long)]
        degree: u32,
        /// Equivariant weights a0,a1,a2 (integers or p/q).
        #[arg(long, default_value = "2,-5,7", allow_hyphen_values = true)]
        alpha: String,
        /// Lift every point class as (h - a1)(h - a2) instead of h^2.
        #[arg(long)]
        shifted: bool,
    },
    /// Multiple-cover invariants of the resolved conifold.
    Conifold {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, default_value_t = 1)]
        degree: u32,
        /// Print the whole table up to --genus and --degree.
        #[arg(long)]
        table: bool,
        /// Print the degree-zero contribution for this Euler characteristic instead.
        #[arg(long, allow_hyphen_values = true)]
        euler: Option<i64>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Level {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: i64,
}

#[derive(Subcommand, Debug)]
pub enum CsCommand {
    /// Partition function of the three-sphere.
    #[command(name = "z-s3")]
    ZS3 {
        #[command(flatten)]
        level: Level,
    },
    /// s~ and t~ matrices, quantum dimensions and the SL_2(Z) check.
    Smatrix {
        #[command(flatten)]
        level: Level,
    },
    /// Invariant of surgery on an f-framed unknot.
    TauUnknot {
        #[command(flatten)]
        level: Level,
        #[arg(long, allow_hyphen_values = true)]
        framing: i64,
    },
    /// U(1)_{2m+1} invariants of a surgery link.
    U1 {
        #[arg(long)]
        m: u32,
        /// Linking matrix with rows separated by ';', e.g. "0,-1;-1,0".
        #[arg(long, allow_hyphen_values = true, conflicts_with = "file")]
        linking: Option<String>,
        /// Diagram file whose linking matrix is used.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Colors per component; with them the link value F(L) is printed.
        #[arg(long, allow_hyphen_values = true)]
        colors: Option<String>,
    },
}

#[derive(Args, Debug)]
pub struct DiagramArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub file: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum LinkCommand {
    /// Framed invariant W of a closed diagram.
    Eval {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Evaluate in U(1)_{2m+1} instead (needs --colors).
        #[arg(long)]
        u1: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        colors: Option<String>,
    },
    /// Framing-independent THOMFLYP specialization.
    Thomflyp {
        #[command(flatten)]
        diagram: DiagramArgs,
    },
    /// Skein relation at crossing sites of a diagram, or for an explicit triple.
    SkeinCheck {
        #[arg(long)]
        n: u32,
        /// Diagram whose crossings are used as skein sites.
        #[arg(long, requires = "site")]
        file: Option<PathBuf>,
        /// Crossing site as slice:generator (0-based), repeatable.
        #[arg(long)]
        site: Vec<String>,
        #[arg(long, requires_all = ["minus", "zero"], conflicts_with = "file")]
        plus: Option<PathBuf>,
        #[arg(long)]
        minus: Option<PathBuf>,
        #[arg(long)]
        zero: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum EnergyCommand {
    /// Coefficient-wise comparison of the two free energies.
    Compare {
        #[arg(long, default_value_t = 6)]
        gmax: u32,
        #[arg(long, default_value_t = 10)]
        hmax: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum LieCommand {
    /// Weights of the Weyl alcove in enumeration order.
    Alcove {
        #[command(flatten)]
        level: Level,
    },
    /// Dimension of a Weyl module.
    Dim {
        #[arg(long)]
        n: usize,
        /// Fundamental-weight coordinates n_1,...,n_{N-1}.
        #[arg(long, conflicts_with = "partition", allow_hyphen_values = true)]
        weight: Option<String>,
        /// Partition (Young diagram rows).
        #[arg(long)]
        partition: Option<String>,
    },
}

/// Failure of a command with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Argument(_) | Error::Parse { .. } => EXIT_USAGE,
            Error::Domain(_) | Error::Singular(_) => EXIT_DOMAIN,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<Value, Failure>;

/// Parses `argv` and runs the command; returns the exit status and the
/// text for stdout (on success) or stderr (on failure).
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match execute(&cli) {
        Ok(v) => (EXIT_OK, render(&v, cli.format)),
        Err(f) => (f.code, format!("error: {}\n", f.message)),
    }
}

fn resolve_precision(flag: Option<u32>) -> Result<Precision, Failure> {
    let bits = match flag {
        Some(b) => b,
        None => match std::env::var(PRECISION_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| Failure::usage(format!("{PRECISION_ENV} must be an integer, got `{s}`")))?,
            Err(_) => DEFAULT_PRECISION,
        },
    };
    if bits < 64 {
        return Err(Failure::usage(format!("precision must be at least 64 bits, got {bits}")));
    }
    Ok(Precision::new(bits))
}

pub fn execute(cli: &Cli) -> CmdResult {
    let prec = || resolve_precision(cli.precision);
    match &cli.command {
        Command::Gw(GwCommand::Cp2 { degree, alpha, shifted }) => {
            let a = parse_rationals(alpha)?;
            if a.len() != 3 {
                return Err(Failure::usage("--alpha needs three weights"));
            }
            let w = EquivWeights::new(a[0].clone(), a[1].clone(), a[2].clone())?;
            let lin = if *shifted { Linearization::shifted() } else { Linearization::standard() };
            let n = gw_invariant_cp2(*degree, &w, &lin)?;
            Ok(json!({
                "degree": degree,
                "alpha": a.iter().map(rat_str).collect::<Vec<_>>(),
                "N_d": rat_str(&n),
                "recursion": kontsevich_recursion(*degree)?.to_string(),
            }))
        }
        Command::Gw(GwCommand::Conifold { genus, degree, table, euler }) => {
            if let Some(chi) = euler {
                return Ok(json!({"g": genus, "euler": chi, "degree_zero": rat_str(&degree_zero(*genus, *chi)?)}));
            }
            if *table {
                if *degree < 1 {
                    return Err(Failure::usage("--degree must be at least 1"));
                }
                let rows: Vec<Value> = conifold_table(*genus, *degree)
                    .into_iter()
                    .map(|c| json!({"g": c.g, "d": c.d, "N": rat_str(&c.value)}))
                    .collect();
                return Ok(json!({"table": rows}));
            }
            Ok(json!({"g": genus, "d": degree, "N": rat_str(&conifold_invariant(*genus, *degree)?)}))
        }
        Command::Cs(CsCommand::ZS3 { level }) => {
            let p = prec()?;
            Ok(json!({"N": level.n, "k": level.k, "value": complex(&z_s3(level.n, level.k, &p)?, &p)}))
        }
        Command::Cs(CsCommand::Smatrix { level }) => {
            let p = prec()?;
            let md = ModularData::new(level.n, level.k, &p)?;
            let r = verify_sl2z_data(&md, &p);
            let dev = |x: &gvd_core::ApReal| format!("{:e}", x.to_f64());
            Ok(json!({
                "N": md.n,
                "k": md.k,
                "alcove": md.alcove.weights.iter().map(|w| w.coords().to_vec()).collect::<Vec<_>>(),
                "d": md.d.iter().map(|z| complex(z, &p)).collect::<Vec<_>>(),
                "theta": md.theta.iter().map(|z| complex(z, &p)).collect::<Vec<_>>(),
                "stilde": md.stilde.iter().map(|r| r.iter().map(|z| complex(z, &p)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "D": complex(&md.diameter, &p),
                "p_plus": complex(&md.p_plus, &p),
                "p_minus": complex(&md.p_minus, &p),
                "sl2z": {
                    "st_cubed_vs_s_squared": dev(&r.st_cubed_vs_s_squared),
                    "s_squared_t_vs_t_s_squared": dev(&r.s_squared_t_vs_t_s_squared),
                    "s_fourth_vs_identity": dev(&r.s_fourth_vs_identity),
                    "stilde_squared_vs_dual": dev(&r.stilde_squared_vs_dual),
                    "inverse_st_cubed_vs_s_squared": dev(&r.inverse_st_cubed_vs_s_squared),
                },
            }))
        }
        Command::Cs(CsCommand::TauUnknot { level, framing }) => {
            let p = prec()?;
            let v = sln_unknot_surgery_tau(*framing, level.n, level.k, &p)?;
            Ok(json!({"N": level.n, "k": level.k, "framing": framing, "value": complex(&v, &p)}))
        }
        Command::Cs(CsCommand::U1 { m, linking, file, colors }) => {
            let p = prec()?;
            let lk = match (linking, file) {
                (Some(s), None) => parse_matrix(s)?,
                (None, Some(f)) => linking_matrix(&load_diagram(f)?)?,
                (None, None) => Vec::new(),
                (Some(_), Some(_)) => return Err(Failure::usage("give either --linking or --file")),
            };
            let pres = SurgeryPresentation::new(lk.clone())?;
            let sigma = gvd_core::mtc::signature(&lk)?;
            match colors {
                Some(c) => {
                    let pres = pres.with_colors(parse_ints(c)?)?;
                    Ok(json!({"m": m, "linking": lk, "signature": sigma, "link_value": complex(&u1_link_value(&pres, *m, &p)?, &p)}))
                }
                None => Ok(json!({"m": m, "linking": lk, "signature": sigma, "tau": complex(&u1_tau(&pres, *m, &p)?, &p)})),
            }
        }
        Command::Link(LinkCommand::Eval { diagram, u1, colors }) => {
            let d = load_diagram(&diagram.file)?;
            if let Some(m) = u1 {
                let p = prec()?;
                let c = colors.as_deref().ok_or_else(|| Failure::usage("--u1 needs --colors"))?;
                let v = evaluate_u1(&d, &parse_ints(c)?, *m, &p)?;
                return Ok(json!({"m": m, "value": complex(&v, &p)}));
            }
            let w = evaluate_closed(&d, diagram.n)?;
            let mut out = poly_json(&w, diagram.n);
            out["components"] = json!(d.component_count());
            out["linking"] = json!(linking_matrix(&d)?);
            Ok(out)
        }
        Command::Link(LinkCommand::Thomflyp { diagram }) => {
            let d = load_diagram(&diagram.file)?;
            Ok(poly_json(&thomflyp(&d, diagram.n)?, diagram.n))
        }
        Command::Link(LinkCommand::SkeinCheck { n, file, site, plus, minus, zero }) => {
            let mut triples = Vec::new();
            if let Some(f) = file {
                let d = load_diagram(f)?;
                for s in site {
                    let (a, b) = s.split_once(':').ok_or_else(|| Failure::usage(format!("site `{s}` is not slice:generator")))?;
                    let a = a.trim().parse().map_err(|_| Failure::usage(format!("bad slice in `{s}`")))?;
                    let b = b.trim().parse().map_err(|_| Failure::usage(format!("bad generator in `{s}`")))?;
                    triples.push(SkeinTriple::at(&d, a, b)?);
                }
            }
            if let (Some(p), Some(m), Some(z)) = (plus, minus, zero) {
                triples.push(SkeinTriple { plus: load_diagram(p)?, minus: load_diagram(m)?, zero: load_diagram(z)? });
            }
            if triples.is_empty() {
                return Err(Failure::usage("give --file with --site, or --plus/--minus/--zero"));
            }
            let r = skein_check(*n, &triples)?;
            Ok(json!({
                "N": n,
                "operator_identity": r.operator_identity_holds,
                "residuals": r.residuals.iter().map(|p| poly_json(p, *n)).collect::<Vec<_>>(),
                "max_residual_terms": r.max_residual_terms(),
                "ok": r.all_zero(),
            }))
        }
        Command::Energy(EnergyCommand::Compare { gmax, hmax }) => {
            let c = compare(*gmax, *hmax)?;
            Ok(json!({
                "g_max": c.g_max,
                "h_max": c.h_max,
                "checked": c.checked,
                "mismatches": c.mismatches,
                "matched": c.matched(),
                "residual": c.residual.to_string(),
                "theorem": theorem_rhs().to_string(),
                "residual_equals_theorem": c.residual.normal_form() == theorem_rhs().normal_form(),
            }))
        }
        Command::Lie(LieCommand::Alcove { level }) => {
            let a = alcove_weights(level.n, level.k)?;
            let w: Vec<Vec<i64>> = a.weights.iter().map(|w| w.coords().to_vec()).collect();
            Ok(json!({"N": level.n, "k": level.k, "count": w.len(), "weights": w}))
        }
        Command::Lie(LieCommand::Dim { n, weight, partition }) => {
            let w = match (weight, partition) {
                (Some(s), None) => {
                    let c = parse_ints(s)?;
                    if c.len() + 1 != *n {
                        return Err(Failure::usage(format!("sl_{n} weights have {} coordinates", n.saturating_sub(1))));
                    }
                    Weight::new(c)?
                }
                (None, Some(s)) => Weight::from_partition(*n, &parse_ints(s)?)?,
                _ => return Err(Failure::usage("give exactly one of --weight or --partition")),
            };
            if !w.is_dominant() {
                return Err(Error::domain("weight is not dominant").into());
            }
            Ok(json!({"N": n, "weight": w.coords(), "dim": weyl_dim(&w).to_string()}))
        }
    }
}

pub fn load_diagram(path: &Path) -> Result<TangleDiagram, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_diagram(&text).map_err(|e| {
        let f = Failure::from(e);
        Failure { code: f.code, message: format!("{}: {}", path.display(), f.message) }
    })
}

/// `p/q` string, or the integer alone.
pub fn rat_str(r: &BigRat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `[re, im]` decimal strings at the precision's digit count.
pub fn complex(z: &ApComplex, p: &Precision) -> Value {
    let [re, im] = z.to_decimal_pair(p.digits());
    json!([re, im])
}

/// `{"variable":"u","N":N,"coeffs":{"exp":"rational"}}`.
pub fn poly_json(w: &LaurentPoly, n: u32) -> Value {
    let mut coeffs = Map::new();
    for (e, c) in w.terms() {
        coeffs.insert(e.to_string(), Value::String(rat_str(c)));
    }
    json!({"variable": w.var().to_string(), "N": n, "coeffs": coeffs, "display": w.to_string()})
}

fn parse_rationals(s: &str) -> Result<Vec<BigRat>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<BigRat>().map_err(|_| Failure::usage(format!("`{t}` is not a rational number"))))
        .collect()
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Failure::usage(format!("`{t}` is not an integer"))))
        .collect()
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<i64>>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(parse_ints).collect()
}

/// JSON with sorted keys, or `key: value` lines.
pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{v}\n"),
        Format::Text => {
            let mut out = String::new();
            match v {
                Value::Object(m) => {
                    for (k, x) in m {
                        let s = match x {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        let _ = writeln!(out, "{k}: {s}");
                    }
                }
                other => {
                    let _ = writeln!(out, "{other}");
                }
            }
            out
        }
    }
}
