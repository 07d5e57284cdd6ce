//! Command-line front end: exact Ehrhart/minima/bound reports over JSON.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use latgeo::conjecture;
use latgeo::error::Error;
use latgeo::lattice_face;
use latgeo::minima;
use latgeo::polytopes::{self, VPolytope};
use latgeo::ratio::format_rat;
use latgeo::zonotopes;

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "latgeo", about = "Exact lattice-point geometry of polytopes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct IoArgs {
    /// Path to a JSON input file
    #[arg(long, conflicts_with = "json")]
    input: Option<PathBuf>,
    /// Inline JSON input
    #[arg(long)]
    json: Option<String>,
    /// Write the JSON result here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Cap on the enumeration box volume
    #[arg(long, default_value_t = polytopes::DEFAULT_BOX_CAP)]
    max_box: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ehrhart coefficients of a polytope or zonotope
    Ehrhart(IoArgs),
    /// Successive minima with witness vectors
    Minima {
        #[command(flatten)]
        io: IoArgs,
        /// Use the difference body P − P instead of requiring symmetry
        #[arg(long)]
        difference: bool,
    },
    /// Coefficient bound report with floor-product and L(P) verdicts
    Report(IoArgs),
    /// Lattice-face property check
    Latticeface {
        #[command(flatten)]
        io: IoArgs,
        /// Also compare g_i with the projection volumes
        #[arg(long = "verify-liu")]
        verify_liu: bool,
    },
    /// Closed forms and interpolation for the Q-family instance
    Qfamily {
        n: usize,
        l: u64,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = polytopes::DEFAULT_BOX_CAP)]
        max_box: u64,
    },
    /// Zonotope Ehrhart coefficients by a chosen method
    ZonotopeCoeffs {
        #[command(flatten)]
        io: IoArgs,
        /// One of: stanley, geometric, counting
        #[arg(long, default_value = "stanley")]
        method: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: msg.into(),
        }
    }
    fn internal(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_value(io: &IoArgs) -> Result<Value, Failure> {
    let text = match (&io.input, &io.json) {
        (Some(path), _) => {
            fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?
        }
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(Failure::parse("one of --input or --json is required")),
    };
    serde_json::from_str(&text).map_err(|e| Failure::parse(format!("invalid JSON: {e}")))
}

fn emit(out: &Option<PathBuf>, value: &Value) -> Result<(), Failure> {
    let mut text = value.to_string();
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::internal(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn rats_to_json(rs: &[latgeo::Rat]) -> Value {
    Value::from(rs.iter().map(format_rat).collect::<Vec<_>>())
}

fn read_polytope(io: &IoArgs) -> Result<VPolytope, Failure> {
    Ok(polytopes::polytope_from_json(&read_value(io)?)?)
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Ehrhart(io) => {
            let v = read_value(&io)?;
            let result = if v.get("generators").is_some() {
                let z = zonotopes::zonotope_from_json(&v)?;
                let stanley = zonotopes::ehrhart_stanley(&z)?;
                let counted = polytopes::ehrhart_capped(&zonotopes::as_vpolytope(&z)?, io.max_box)?;
                let agree = stanley == counted;
                if !agree {
                    return Err(Failure::internal(
                        "coefficient formula and interpolation disagree",
                    ));
                }
                serde_json::json!({
                    "coefficients": rats_to_json(&stanley.coeffs),
                    "agree": agree,
                })
            } else {
                let p = polytopes::polytope_from_json(&v)?;
                let e = polytopes::ehrhart_capped(&p, io.max_box)?;
                serde_json::json!({ "coefficients": rats_to_json(&e.coeffs) })
            };
            emit(&io.output, &result)
        }
        Cmd::Minima { io, difference } => {
            let p = read_polytope(&io)?;
            let m = if difference {
                let g = polytopes::difference_gauge_view(&p)?;
                minima::successive_minima_capped(&g, io.max_box)?
            } else {
                let g = polytopes::SymmetricGauge::new(&p)?;
                minima::successive_minima_capped(&g, io.max_box)?
            };
            emit(&io.output, &conjecture::minima_to_json(&m))
        }
        Cmd::Report(io) => {
            let p = read_polytope(&io)?;
            let r = conjecture::coefficient_report(&p, None)?;
            emit(&io.output, &conjecture::bound_report_to_json(&p, &r))
        }
        Cmd::Latticeface { io, verify_liu } => {
            let p = read_polytope(&io)?;
            let r = lattice_face::check_lattice_face(&p)?;
            let mut result = lattice_face::report_to_json(&r);
            if verify_liu && r.is_lattice_face {
                let liu = lattice_face::verify_liu(&p)?;
                let obj = result.as_object_mut().unwrap();
                obj.insert(
                    "liu".into(),
                    Value::from(
                        liu.rows
                            .iter()
                            .map(|(i, g, vol)| {
                                serde_json::json!({
                                    "i": i,
                                    "g": format_rat(g),
                                    "vol": format_rat(vol),
                                    "equal": g == vol,
                                })
                            })
                            .collect::<Vec<_>>(),
                    ),
                );
                obj.insert("liu_all_equal".into(), Value::from(liu.all_equal));
            }
            emit(&io.output, &result)
        }
        Cmd::Qfamily {
            n,
            l,
            output,
            max_box,
        } => {
            let q = conjecture::q_family(n, l)?;
            let closed = conjecture::q_family_ehrhart_closed(n, l)?;
            let interpolated = polytopes::ehrhart_capped(&q.polytope, max_box)?;
            if closed != interpolated {
                return Err(Failure::internal(
                    "closed form and interpolation disagree",
                ));
            }
            let sigma: Vec<latgeo::Rat> = (0..=n)
                .map(|i| conjecture::sigma_q_closed(n, l, i))
                .collect();
            let result = serde_json::json!({
                "polytope": polytopes::polytope_to_json(&q.polytope),
                "closed_form": rats_to_json(&closed.coeffs),
                "interpolated": rats_to_json(&interpolated.coeffs),
                "sigma": rats_to_json(&sigma),
                // L(kP) = Π(k/λ_i(DP) + 1), so its k-coefficients are the σ_i
                "L_poly": rats_to_json(&sigma),
            });
            emit(&output, &result)
        }
        Cmd::ZonotopeCoeffs { io, method } => {
            let z = zonotopes::zonotope_from_json(&read_value(&io)?)?;
            let m = zonotopes::ehrhart_method(&method)
                .ok_or_else(|| Failure::parse(format!("unknown method '{method}'")))?;
            let e = m.compute(&z)?;
            let result = serde_json::json!({
                "method": m.name(),
                "coefficients": rats_to_json(&e.coeffs),
                "has_zero_generators": z.has_zero_generators(),
            });
            emit(&io.output, &result)
        }
    }
}
