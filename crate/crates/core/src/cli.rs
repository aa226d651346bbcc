//! Command-line front end.
//!
//! Every command prints canonical JSON (sorted keys, big integers and
//! rationals as strings). Exit codes: 0 success, 1 rejected input or failed
//! hypothesis, 2 usage error, 3 inconclusive.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{LaurentPoly, UnitPoint};
use crate::blanchfield::BlanchfieldForm;
use crate::certificate::{certify_box, certify_coprime_nonconcordance, certify_linear_combination, Certificate, Verdict};
use crate::concordance::{fox_milnor, search_metabolizer, verify_metabolizer, Metabolizer, SlicenessEvidence};
use crate::error::Error;
use crate::forge::{forge_family_with_cap, CGBound, FamilyDescriptor, DEFAULT_PRIME_CAP};
use crate::seifert::SeifertMatrix;
use crate::signature::{lt_signature, sig_integral, sig_profile, sig_sum};
use crate::{format_rational, parse_rational, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "concordance", version, about = "Exact knot-concordance invariants and obstruction certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct MatrixArg {
    /// Seifert matrix JSON: {"matrix": [[...], ...]}
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args, Debug)]
struct OutArg {
    /// Write JSON here instead of stdout
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alexander polynomial, Arf invariant, genus, determinant
    Invariants {
        #[command(flatten)]
        m: MatrixArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Levine-Tristram signature and nullity at one point
    Signature {
        #[command(flatten)]
        m: MatrixArg,
        /// Root of unity exp(2*pi*i*r/p), written p/r
        #[arg(long, conflicts_with = "minus_one")]
        root: Option<String>,
        #[arg(long)]
        minus_one: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Sum of signatures over the nontrivial p-th roots of unity
    Sigsum {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Piecewise-constant signature function on the upper half circle
    Sigprofile {
        #[command(flatten)]
        m: MatrixArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Certified enclosure of the normalized signature integral
    Sigintegral {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long, default_value = "1e-9")]
        tol: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Fox-Milnor test and metabolizer verification or search
    Algslice {
        #[command(flatten)]
        m: MatrixArg,
        /// Metabolizer JSON: {"basis": [[...], ...]}
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        bound: u32,
        #[command(flatten)]
        out: OutArg,
    },
    /// Alexander module, pairing values and self-annihilating submodules
    Blanchfield {
        #[command(flatten)]
        m: MatrixArg,
        /// 1-based basis indices
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        pair: Option<Vec<usize>>,
        #[arg(long)]
        self_annihilating: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Synthesize the companion family
    Forge {
        #[command(flatten)]
        m: MatrixArg,
        #[command(flatten)]
        f: ForgeArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Certificate for a linear combination of the family
    Certify {
        #[arg(long)]
        family: PathBuf,
        /// Comma-separated integers, e.g. "1,0,-1"
        #[arg(long, allow_hyphen_values = true)]
        combo: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Coprime-splitting certificate for n copies of one family member
    Split {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        index: usize,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Polynomial JSON: {"terms": [[exp, "coeff"], ...]}, {"coefficients": [...]} or [...]
        #[arg(long)]
        delta: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Forge a family and certify every combination in a box
    Pipeline {
        #[command(flatten)]
        m: MatrixArg,
        #[command(flatten)]
        f: ForgeArgs,
        /// Coefficients range over -box..=box
        #[arg(long = "box", default_value_t = 1)]
        box_bound: i64,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Args, Debug)]
struct ForgeArgs {
    #[arg(long)]
    crossing: u64,
    #[arg(long)]
    count: usize,
    #[arg(long)]
    prime_floor: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_PRIME_CAP)]
    prime_cap: u64,
    /// Metabolizer JSON certifying algebraic sliceness
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Height bound for the metabolizer search
    #[arg(long, default_value_t = 2)]
    bound: u32,
    /// Accept the algebraic sliceness hypothesis without a metabolizer
    #[arg(long)]
    assume_slice: bool,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn rejected(message: impl Into<String>) -> Self {
        Failure { code: EXIT_REJECTED, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::DimensionMismatch(_) | Error::Io(_) => EXIT_USAGE,
            _ => EXIT_REJECTED,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Canonical text: keys sorted, two-space indent, trailing newline.
pub fn canonical_json<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("value serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("value prints");
    s.push('\n');
    s
}

fn emit<T: Serialize>(x: &T, out: &OutArg) -> std::result::Result<(), Failure> {
    let text = canonical_json(x);
    match &out.output {
        Some(p) => write_file(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{} is not valid JSON: {e}", path.display())))
}

fn load<T: DeserializeOwned>(path: &Path, what: &str) -> std::result::Result<T, Failure> {
    serde_json::from_value(read_json(path)?).map_err(|e| Failure::rejected(format!("invalid {what} in {}: {e}", path.display())))
}

fn load_matrix(m: &MatrixArg) -> std::result::Result<SeifertMatrix, Failure> {
    load(&m.matrix, "Seifert matrix")
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolyInput {
    Terms(LaurentPoly),
    Coefficients { coefficients: Vec<i64> },
    Bare(Vec<i64>),
}

fn load_poly(path: &Path) -> std::result::Result<LaurentPoly, Failure> {
    Ok(match load::<PolyInput>(path, "polynomial")? {
        PolyInput::Terms(p) => p,
        PolyInput::Coefficients { coefficients } | PolyInput::Bare(coefficients) => LaurentPoly::from_ints(&coefficients),
    })
}

fn parse_combo(s: &str) -> std::result::Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Failure::usage(format!("bad combination entry {x:?}"))))
        .collect()
}

fn parse_root(s: &str) -> std::result::Result<UnitPoint, Failure> {
    let (p, r) = s.split_once('/').ok_or_else(|| Failure::usage(format!("root must be p/r, got {s:?}")))?;
    let order: u64 = p.trim().parse().map_err(|_| Failure::usage(format!("bad order {p:?}")))?;
    let index: u64 = r.trim().parse().map_err(|_| Failure::usage(format!("bad index {r:?}")))?;
    if order == 0 {
        return Err(Failure::usage("root order must be positive"));
    }
    Ok(UnitPoint::RootOfUnity { order, index: index % order })
}

fn certificate_code(c: &Certificate) -> i32 {
    if c.verdict == Verdict::Inconclusive {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

fn forge_from(v: &SeifertMatrix, f: &ForgeArgs) -> std::result::Result<FamilyDescriptor, Failure> {
    if f.count == 0 {
        return Err(Failure::usage("--count must be positive"));
    }
    let bound = CGBound::from_crossing_number(f.crossing)?;
    let evidence = match (&f.certificate, f.assume_slice) {
        (Some(path), _) => SlicenessEvidence::Certificate(load::<Metabolizer>(path, "metabolizer")?),
        (None, true) => SlicenessEvidence::Override,
        (None, false) => SlicenessEvidence::Search { bound: f.bound },
    };
    Ok(forge_family_with_cap(v, &bound, f.count, f.prime_floor, &evidence, f.prime_cap)?)
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Invariants { m, out } => {
            let v = load_matrix(&m)?;
            let a = v.alexander();
            let det = a.delta.eval(&Rational::from_integer((-1).into())).abs();
            emit(
                &json!({
                    "alexander": a.delta.to_string(),
                    "alexander_terms": a.delta,
                    "top_coeff": a.top_coeff.to_string(),
                    "degree": a.degree,
                    "determinant": format_rational(&det),
                    "arf": v.arf(),
                    "genus": v.genus(),
                }),
                &out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Signature { m, root, minus_one, out } => {
            let v = load_matrix(&m)?;
            let w = match (root, minus_one) {
                (Some(r), false) => parse_root(&r)?,
                (None, true) => UnitPoint::RootOfUnity { order: 2, index: 1 },
                _ => return Err(Failure::usage("give exactly one of --root p/r or --minus-one")),
            };
            emit(&lt_signature(&v, &w), &out)?;
            Ok(EXIT_OK)
        }
        Command::Sigsum { m, p, out } => {
            let v = load_matrix(&m)?;
            emit(&sig_sum(&v, p)?, &out)?;
            Ok(EXIT_OK)
        }
        Command::Sigprofile { m, out } => {
            let v = load_matrix(&m)?;
            emit(&sig_profile(&v), &out)?;
            Ok(EXIT_OK)
        }
        Command::Sigintegral { m, tol, out } => {
            let v = load_matrix(&m)?;
            let tol = parse_rational(&tol).map_err(Failure::usage)?;
            if tol <= Rational::from_integer(BigInt::from(0)) {
                return Err(Failure::usage("--tol must be positive"));
            }
            let iv = sig_integral(&v, &tol);
            emit(&json!({"lo": format_rational(&iv.lo), "hi": format_rational(&iv.hi)}), &out)?;
            Ok(EXIT_OK)
        }
        Command::Algslice { m, certificate, bound, out } => {
            let v = load_matrix(&m)?;
            let fm = fox_milnor(&v.alexander().delta);
            let (metabolizer, source, code) = match certificate {
                Some(path) => {
                    let h: Metabolizer = load(&path, "metabolizer")?;
                    if verify_metabolizer(&v, &h)? {
                        (Some(h), "certificate", EXIT_OK)
                    } else {
                        (None, "certificate", EXIT_REJECTED)
                    }
                }
                None => match search_metabolizer(&v, bound) {
                    Some(h) => (Some(h), "search", EXIT_OK),
                    None => (None, "search", if fm { EXIT_INCONCLUSIVE } else { EXIT_REJECTED }),
                },
            };
            let code = if fm { code } else { EXIT_REJECTED };
            emit(
                &json!({
                    "fox_milnor": fm,
                    "metabolizer": metabolizer,
                    "source": source,
                    "bound": bound,
                    "algebraically_slice": fm && metabolizer.is_some(),
                }),
                &out,
            )?;
            Ok(code)
        }
        Command::Blanchfield { m, pair, self_annihilating, out } => {
            let v = load_matrix(&m)?;
            let form = BlanchfieldForm::new(&v);
            let mut report = json!({"module": form.module});
            if let Some(p) = pair {
                let (i, j) = (p[0], p[1]);
                if i == 0 || j == 0 || i > form.dim() || j > form.dim() {
                    return Err(Failure::usage(format!("pair indices must lie in 1..={}", form.dim())));
                }
                let value = form.pair(&form.basis_vector(i - 1), &form.basis_vector(j - 1))?;
                report["pair"] = json!({"i": i, "j": j, "value": value.to_string(), "parts": value});
            }
            if self_annihilating {
                report["self_annihilating"] = json!(form.self_annihilating_submodules(&v.alexander().delta)?);
            }
            emit(&report, &out)?;
            Ok(EXIT_OK)
        }
        Command::Forge { m, f, out } => {
            let v = load_matrix(&m)?;
            let family = forge_from(&v, &f)?;
            emit(&family, &out)?;
            Ok(EXIT_OK)
        }
        Command::Certify { family, combo, out } => {
            let fam: FamilyDescriptor = load(&family, "family descriptor")?;
            let a = parse_combo(&combo)?;
            let cert = certify_linear_combination(&fam, &a)?;
            emit(&cert, &out)?;
            Ok(certificate_code(&cert))
        }
        Command::Split { family, index, n, delta, out } => {
            let fam: FamilyDescriptor = load(&family, "family descriptor")?;
            let d = load_poly(&delta)?;
            let cert = certify_coprime_nonconcordance(&fam, index, n, &d)?;
            emit(&cert, &out)?;
            Ok(certificate_code(&cert))
        }
        Command::Pipeline { m, f, box_bound, out_dir } => {
            if box_bound < 1 {
                return Err(Failure::usage("--box must be at least 1"));
            }
            let v = load_matrix(&m)?;
            let family = forge_from(&v, &f)?;
            fs::create_dir_all(&out_dir).map_err(|e| Failure::usage(format!("cannot create {}: {e}", out_dir.display())))?;
            write_file(&out_dir.join("family.json"), &canonical_json(&family))?;
            let certs = certify_box(&family, box_bound)?;
            let mut summary = Vec::new();
            let mut code = EXIT_OK;
            for (k, (a, cert)) in certs.iter().enumerate() {
                let name = format!("certificate_{:03}.json", k + 1);
                write_file(&out_dir.join(&name), &canonical_json(cert))?;
                summary.push(json!({"file": name, "combination": a, "verdict": cert.verdict}));
                code = code.max(certificate_code(cert));
            }
            let index = json!({"family": "family.json", "certificates": summary});
            write_file(&out_dir.join("index.json"), &canonical_json(&index))?;
            print!("{}", canonical_json(&index));
            Ok(code)
        }
    }
}
