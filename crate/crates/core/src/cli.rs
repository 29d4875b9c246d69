//! Command-line front end.
//!
//! Exit codes: 0 success, 2 malformed input or usage, 3 mathematically
//! inadmissible input (the defect is printed on stderr).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{act_triple, jacobi_defect, morphism_defect, Triple};
use crate::catalog::{self, TripleKind};
use crate::cohomology::{cohomology, is_coboundary};
use crate::complex::{big_delta, Cochain, SignConvention};
use crate::deformation::{
    curve_defects, deformation_identity_report, extend_deformation, first_order, is_verified,
};
use crate::error::Error;
use crate::io::{self, AlgebraJson, CochainJson, CurveJson, SkewMapJson, TripleJson};
use crate::skew::SkewMap;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_MATH: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "liemorph",
    version,
    about = "Deformation cohomology of Lie algebra morphisms over Q"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[arg(long, global = true, default_value = "paper")]
    pub convention: SignConvention,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobi and morphism defects of a triple.
    Check {
        #[arg(long)]
        triple: PathBuf,
    },
    /// Cocycle, coboundary and cohomology dimensions in one degree.
    Cohomology {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Applies the differential to a cochain and searches for a preimage.
    Delta {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Moves a triple by (g, h) in GL(U) × GL(V).
    Act {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
    },
    /// Constraint defects and the order-by-order identity report of a curve.
    DeformCheck {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Extends a curve order by order until `--order` or an obstruction.
    DeformExtend {
        #[arg(long)]
        curve: PathBuf,
        /// Target order; defaults to one more than the input.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Emits a named algebra, or a triple built from it.
    Catalog {
        name: String,
        #[arg(long = "as-triple")]
        as_triple: Option<String>,
        /// Target algebra for `--as-triple zero`.
        #[arg(long)]
        target: Option<String>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotLie(_) | Error::NotMorphism(_) | Error::Precondition(_) | Error::Singular => {
                EXIT_MATH
            }
            _ => EXIT_SCHEMA,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_SCHEMA,
        message: format!("{}: {e}", path.display()),
    })
}

/// Re-labels schema paths with the flag they came from.
fn under(flag: &str, e: Error) -> Error {
    match e {
        Error::Schema { path, message } => Error::schema(format!("--{flag}: {path}"), message),
        other => other,
    }
}

fn load_triple(path: &Path) -> std::result::Result<Triple, Failure> {
    Ok(io::read_triple(&read(path)?).map_err(|e| under("triple", e))?)
}

fn skew(m: &SkewMap) -> SkewMapJson {
    m.into()
}

fn cochain(c: &Cochain) -> CochainJson {
    c.into()
}

struct Output {
    json: Value,
    text: String,
    code: i32,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            code: EXIT_OK,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn dispatch(cli: &Cli) -> std::result::Result<Output, Failure> {
    let conv = cli.convention;
    match &cli.command {
        Command::Check { triple } => {
            let t = io::read_triple_unchecked(&read(triple)?).map_err(|e| under("triple", e))?;
            let jr = jacobi_defect(&t.rho);
            let jt = jacobi_defect(&t.theta);
            let md = morphism_defect(&t)?;
            let verified = jr.is_zero() && jt.is_zero() && md.is_zero();
            let json = json!({
                "convention": conv,
                "verified": verified,
                "rho_jacobi_defect": skew(&jr),
                "theta_jacobi_defect": skew(&jt),
                "morphism_defect": skew(&md),
            });
            let text = format!(
                "convention: {conv}\nverified: {verified}\nrho Jacobi defect: {}\ntheta Jacobi defect: {}\nmorphism defect: {}",
                io::format_skew(&jr, "e", "e"),
                io::format_skew(&jt, "f", "f"),
                io::format_skew(&md, "e", "f"),
            );
            Ok(Output {
                json,
                text,
                code: if verified { EXIT_OK } else { EXIT_MATH },
            })
        }
        Command::Cohomology { triple, degree } => {
            let t = load_triple(triple)?;
            let r = cohomology(&t, *degree, conv)?;
            let basis: Vec<CochainJson> = r.cocycle_basis.iter().map(cochain).collect();
            let json = json!({
                "degree": r.degree,
                "convention": r.convention,
                "dims": r.dims,
                "cocycle_basis": basis,
            });
            let mut text = format!(
                "degree {} ({} convention)\ncochains: {}\ncocycles: {}\ncoboundaries: {}\ncohomology: {}",
                r.degree, conv, r.dims.cochains, r.dims.cocycles, r.dims.coboundaries, r.dims.cohomology
            );
            for (k, c) in r.cocycle_basis.iter().enumerate() {
                text.push_str(&format!(
                    "\ncocycle {}:\n{}",
                    k + 1,
                    indent(&io::format_cochain(c))
                ));
            }
            Ok(Output::ok(json, text))
        }
        Command::Delta {
            triple,
            cochain: path,
        } => {
            let t = load_triple(triple)?;
            let c = io::read_cochain(&read(path)?).map_err(|e| under("cochain", e))?;
            if c.u_dim() != t.u_dim() || c.v_dim() != t.v_dim() {
                return Err(Error::schema(
                    "--cochain",
                    format!(
                        "cochain lives on dimensions ({}, {}) but the triple has ({}, {})",
                        c.u_dim(),
                        c.v_dim(),
                        t.u_dim(),
                        t.v_dim()
                    ),
                )
                .into());
            }
            let d = big_delta(&t, &c, conv)?;
            let witness = if c.degree() == 0 {
                None
            } else {
                is_coboundary(&t, &c, conv)?
            };
            let json = json!({
                "convention": conv,
                "degree": c.degree(),
                "delta": cochain(&d),
                "is_cocycle": d.is_zero(),
                "coboundary_witness": witness.as_ref().map(cochain),
            });
            let mut text = format!(
                "convention: {conv}\nΔ of a degree-{} cochain:\n{}\ncocycle: {}",
                c.degree(),
                indent(&io::format_cochain(&d)),
                d.is_zero()
            );
            match &witness {
                Some(w) => text.push_str(&format!(
                    "\ncoboundary of:\n{}",
                    indent(&io::format_cochain(w))
                )),
                None => text.push_str("\ncoboundary: no"),
            }
            Ok(Output::ok(json, text))
        }
        Command::Act { triple, g, h } => {
            let t = load_triple(triple)?;
            let g = io::read_linear_map(&read(g)?).map_err(|e| under("g", e))?;
            let h = io::read_linear_map(&read(h)?).map_err(|e| under("h", e))?;
            if g.source_dim() != t.u_dim() || g.target_dim() != t.u_dim() {
                return Err(Error::schema("--g", format!("g must be {0}×{0}", t.u_dim())).into());
            }
            if h.source_dim() != t.v_dim() || h.target_dim() != t.v_dim() {
                return Err(Error::schema("--h", format!("h must be {0}×{0}", t.v_dim())).into());
            }
            let moved = act_triple(&g, &h, &t)?;
            Ok(Output::ok(
                to_value(&TripleJson::from(&moved)),
                io::format_triple(&moved),
            ))
        }
        Command::DeformCheck { curve } => {
            let c = io::read_curve(&read(curve)?).map_err(|e| under("curve", e))?;
            let defects = curve_defects(&c);
            let identity = deformation_identity_report(&c)?;
            let first = first_order(&c).ok();
            let cocycle = |conv| {
                first
                    .as_ref()
                    .map(|f| crate::cohomology::is_cocycle(c.base(), f, conv))
                    .transpose()
            };
            let json = json!({
                "convention": conv,
                "order": c.order(),
                "verified": is_verified(&c),
                "defects": defects.iter().map(|d| json!({
                    "order": d.order,
                    "jacobi_rho": skew(&d.jacobi_rho),
                    "jacobi_theta": skew(&d.jacobi_theta),
                    "fiber": skew(&d.fiber),
                    "zero": d.is_zero(),
                })).collect::<Vec<_>>(),
                "first_order": first.as_ref().map(cochain),
                "first_order_is_cocycle": {
                    "paper": cocycle(SignConvention::Paper)?,
                    "geometric": cocycle(SignConvention::Geometric)?,
                },
                "identity": identity.iter().map(|r| json!({
                    "order": r.order,
                    "lhs_paper": skew(&r.lhs_paper),
                    "lhs_geometric": skew(&r.lhs_geometric),
                    "rhs_phi_t": skew(&r.rhs_phi_t),
                    "rhs_base_phi": skew(&r.rhs_base_phi),
                    "double_sum": skew(&r.double_sum),
                    "expansion": skew(&r.expansion),
                    "agreements": r.agreements(),
                })).collect::<Vec<_>>(),
            });
            let mut text = format!(
                "convention: {conv}\norder: {}\nin the bundle to order {}: {}",
                c.order(),
                c.order(),
                is_verified(&c)
            );
            for d in &defects {
                text.push_str(&format!(
                    "\norder {}: Jacobi(ρ_t) {} | Jacobi(θ_t) {} | fiber {}",
                    d.order,
                    io::format_skew(&d.jacobi_rho, "e", "e"),
                    io::format_skew(&d.jacobi_theta, "f", "f"),
                    io::format_skew(&d.fiber, "e", "f"),
                ));
            }
            for r in &identity {
                let a = r.agreements();
                text.push_str(&format!(
                    "\nidentity order {}: L_geometric = P {}, L_geometric = R_base_phi {}, L_geometric = R_phi_t {}, L_paper = P {}, P = expansion {}",
                    r.order,
                    a.geometric_lhs_eq_double_sum,
                    a.geometric_lhs_eq_rhs_base_phi,
                    a.geometric_lhs_eq_rhs_phi_t,
                    a.paper_lhs_eq_double_sum,
                    a.double_sum_eq_expansion,
                ));
            }
            Ok(Output::ok(json, text))
        }
        Command::DeformExtend { curve, order } => {
            let mut c = io::read_curve(&read(curve)?).map_err(|e| under("curve", e))?;
            let target = order.unwrap_or(c.order() + 1);
            if target <= c.order() {
                return Err(Error::InvalidParams(format!(
                    "--order {target} does not exceed the curve's order {}",
                    c.order()
                ))
                .into());
            }
            let mut steps = Vec::new();
            let mut text = format!("convention: {conv}");
            while c.order() < target {
                let r = extend_deformation(&c)?;
                steps.push(json!({
                    "order": r.order,
                    "solvable": r.solvable,
                    "solution": r.solution.as_ref().map(cochain),
                    "obstruction_vector": r.obstruction.as_ref().map(|o| {
                        crate::cohomology::flatten(o).iter().map(crate::linalg::format_rational).collect::<Vec<_>>()
                    }),
                    "obstruction": r.obstruction.as_ref().map(cochain),
                    "obstruction_is_cocycle": r.obstruction_is_cocycle,
                    "freedom": r.freedom.iter().map(cochain).collect::<Vec<_>>(),
                }));
                match r.extended {
                    Some(next) => {
                        text.push_str(&format!(
                            "\norder {}: solvable, {} free directions\n{}",
                            r.order,
                            r.freedom.len(),
                            indent(&io::format_cochain(r.solution.as_ref().expect("solvable")))
                        ));
                        c = next;
                    }
                    None => {
                        let o = r.obstruction.as_ref().expect("unsolvable");
                        text.push_str(&format!(
                            "\norder {}: obstructed (residual is a cocycle: {})\n{}",
                            r.order,
                            r.obstruction_is_cocycle.unwrap_or(false),
                            indent(&io::format_cochain(o))
                        ));
                        break;
                    }
                }
            }
            let json = json!({
                "convention": conv,
                "steps": steps,
                "curve": CurveJson::from(&c),
            });
            Ok(Output::ok(json, text))
        }
        Command::Catalog {
            name,
            as_triple,
            target,
        } => {
            let alg = catalog::algebra(name)?;
            match as_triple {
                None => Ok(Output::ok(
                    to_value(&AlgebraJson::from(&alg)),
                    io::format_algebra(&alg, "e"),
                )),
                Some(kind) => {
                    let kind: TripleKind = kind.parse()?;
                    let target = target.as_deref().map(catalog::algebra).transpose()?;
                    let t = catalog::triple(kind, &alg, target.as_ref())?;
                    Ok(Output::ok(
                        to_value(&TripleJson::from(&t)),
                        io::format_triple(&t),
                    ))
                }
            }
        }
    }
}

fn indent(s: &str) -> String {
    s.lines()
        .map(|l| format!("  {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Runs one command, writing the report to `out` and diagnostics to `err`;
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_SCHEMA } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let result = dispatch(&cli);
    match result {
        Ok(o) => {
            let body = match cli.format {
                Format::Json => io::to_json_string(&o.json),
                Format::Text => o.text,
            };
            let _ = writeln!(out, "{body}");
            if o.code == EXIT_MATH {
                let _ = writeln!(err, "error: input is not a point of the morphism bundle");
            }
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
