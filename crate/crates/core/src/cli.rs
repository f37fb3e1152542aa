//! Command-line front end. Every verb writes one JSON document (sorted keys)
//! to the given writer and returns the process exit code.
//!
//! Exit codes: 0 success, 1 a report with a false verdict, 2 usage,
//! argument or malformed input, 3 inconsistent data or resource limits.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characters::{freudenthal_multiplicities, weight_set, weight_set_by_hull, FormalCharacter};
use crate::error::Error;
use crate::lattice::LatticeVector;
use crate::matrix::IntMatrix;
use crate::polytope::{build_polytope, edges_oracle};
use crate::reconstruct::{assemble_isomorphism, blind_reconstruct, MatchedPresentation};
use crate::root_datum::{construct, find_simple_system, LatticeKind, RootDatum};
use crate::weyl::generate;

#[derive(Debug, Parser)]
#[command(name = "rootdatum", version, about = "Root data, weight polytopes and reconstruction from characters")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the root datum axioms.
    Validate {
        /// Root datum JSON file, or `builtin:<type>:<sc|adj|gl>`.
        datum: String,
    },
    /// Weight set and multiplicities of the irreducible of highest weight λ.
    Weights {
        datum: String,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        lambda: LatticeVector,
    },
    /// Vertices and edges of the weight polytope of λ.
    Polytope {
        datum: String,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        lambda: LatticeVector,
        /// Also compare every vertex's edges with the feasibility oracle.
        #[arg(long)]
        check_oracle: bool,
    },
    /// Run the reconstruction battery on a matched presentation.
    ///
    /// Without `--datum`/`--datum-prime` both root data are first rebuilt
    /// blindly from the characters in the presentation.
    Reconstruct {
        presentation: PathBuf,
        #[arg(long)]
        datum: Option<String>,
        #[arg(long)]
        datum_prime: Option<String>,
    },
    /// Recover roots and coroots from a list of characters.
    Blind { characters: PathBuf },
    /// Check that M transports datum′ onto datum.
    TransportCheck {
        datum: String,
        datum_prime: String,
        /// Rows separated by `;`, entries by `,`, e.g. `1,1;0,1`.
        #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
        matrix: IntMatrix,
    },
    /// Run the built-in fixture battery.
    Selftest,
}

fn parse_vector(s: &str) -> Result<LatticeVector, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("'{t}': {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(LatticeVector)
}

fn parse_matrix(s: &str) -> Result<IntMatrix, String> {
    let rows = s
        .split(';')
        .map(|r| parse_vector(r).map(|v| v.0))
        .collect::<Result<Vec<_>, _>>()?;
    IntMatrix::from_rows(&rows).map_err(|e| e.to_string())
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Dimension { .. } | Error::Argument(_) | Error::Precondition(_) => 2,
            Error::Inconsistency(_) | Error::Resource(_) | Error::MissingData(_) => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Deserializes JSON, naming the offending path on failure.
pub fn parse_json<T: DeserializeOwned>(text: &str, source: &str) -> Result<T, Failure> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        usage(format!("{source}: malformed JSON at '{path}': {}", e.into_inner()))
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_json(&text, &path.display().to_string())
}

/// A datum from a JSON file or `builtin:<type>:<lattice>`.
pub fn load_datum(arg: &str) -> Result<RootDatum, Failure> {
    if let Some(rest) = arg.strip_prefix("builtin:") {
        let (label, kind) = rest.split_once(':').unwrap_or((rest, "sc"));
        let kind: LatticeKind = kind.parse()?;
        return Ok(construct(label, kind)?);
    }
    read_json(Path::new(arg))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharacterList {
    rank: usize,
    characters: Vec<FormalCharacter>,
}

/// Parses `args` (including the program name) and runs the verb.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok((value, code)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    // round-trip through Value so object keys come out sorted
    serde_json::to_value(x).expect("report types serialize")
}

fn verdict(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

/// Runs one verb, returning its JSON output and exit code.
pub fn execute(command: &Command) -> Result<(Value, i32), Failure> {
    match command {
        Command::Validate { datum } => {
            let d = load_datum(datum)?;
            let violations = d.validate();
            let ok = violations.is_empty();
            Ok((json!({ "ok": ok, "violations": to_value(&violations) }), verdict(ok)))
        }
        Command::Weights { datum, lambda } => {
            let d = load_datum(datum)?;
            let delta = find_simple_system(&d, None)?;
            let chi = freudenthal_multiplicities(&d, &delta, lambda)?;
            let weights = weight_set(&d, &delta, lambda)?;
            let ok = chi.support() == weights;
            Ok((
                json!({
                    "lambda": to_value(lambda),
                    "weights": to_value(&weights),
                    "character": to_value(&chi),
                    "dimension": chi.degree(),
                }),
                verdict(ok),
            ))
        }
        Command::Polytope { datum, lambda, check_oracle } => {
            let d = load_datum(datum)?;
            let delta = find_simple_system(&d, None)?;
            let group = generate(&d, &delta)?;
            let p = build_polytope(&d, &delta, &group, lambda)?;
            let mut value = to_value(&p.report());
            let mut ok = true;
            if *check_oracle {
                let mut mismatches = Vec::new();
                for x0 in &p.vertices {
                    if p.edges_at[x0] != edges_oracle(&p.weights, x0)? {
                        mismatches.push(x0.clone());
                    }
                }
                ok = mismatches.is_empty();
                value["oracle_mismatches"] = to_value(&mismatches);
            }
            Ok((value, verdict(ok)))
        }
        Command::Reconstruct { presentation, datum, datum_prime } => {
            let mp: MatchedPresentation = read_json(presentation)?;
            let (d, dp) = match (datum, datum_prime) {
                (Some(a), Some(b)) => (load_datum(a)?, load_datum(b)?),
                (None, None) => blind_pair(&mp)?,
                _ => return Err(usage("give both --datum and --datum-prime, or neither")),
            };
            let report = assemble_isomorphism(&d, &dp, &mp);
            Ok((to_value(&report), verdict(report.isomorphism_ok)))
        }
        Command::Blind { characters } => {
            let list: CharacterList = read_json(characters)?;
            let report = blind_reconstruct(list.rank, &list.characters)?;
            let ok = report.saturated && report.coroots_determined;
            Ok((to_value(&report), verdict(ok)))
        }
        Command::TransportCheck { datum, datum_prime, matrix } => {
            let d = load_datum(datum)?;
            let dp = load_datum(datum_prime)?;
            let mp = MatchedPresentation::standard(&dp, matrix)?;
            let report = assemble_isomorphism(&d, &dp, &mp);
            Ok((to_value(&report), verdict(report.isomorphism_ok)))
        }
        Command::Selftest => {
            let checks = selftest();
            let failed = checks.iter().filter(|c| !c.ok).count();
            Ok((
                json!({ "checks": to_value(&checks), "passed": checks.len() - failed, "failed": failed }),
                verdict(failed == 0),
            ))
        }
    }
}

fn blind_pair(mp: &MatchedPresentation) -> Result<(RootDatum, RootDatum), Failure> {
    let unprimed: Vec<FormalCharacter> = mp.irreps().iter().map(|i| i.weights.clone()).collect();
    let primed: Vec<FormalCharacter> = mp.irreps().iter().map(|i| i.weights_prime.clone()).collect();
    let d = blind_reconstruct(mp.rank(), &unprimed)?.datum("blind")?;
    let dp = blind_reconstruct(mp.rank(), &primed)?.datum("blind′")?;
    Ok((d, dp))
}

/// One named check of the built-in battery.
#[derive(Debug, Clone, Serialize)]
pub struct SelfCheck {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn check(name: impl Into<String>, f: impl FnOnce() -> crate::Result<bool>) -> SelfCheck {
    match f() {
        Ok(ok) => SelfCheck { name: name.into(), ok, detail: None },
        Err(e) => SelfCheck { name: name.into(), ok: false, detail: Some(e.to_string()) },
    }
}

pub const SELFTEST_FIXTURES: &[(&str, LatticeKind)] = &[
    ("A1", LatticeKind::SimplyConnected),
    ("A1", LatticeKind::Adjoint),
    ("A2", LatticeKind::SimplyConnected),
    ("A2", LatticeKind::Adjoint),
    ("A1xA1", LatticeKind::SimplyConnected),
    ("B2", LatticeKind::SimplyConnected),
    ("G2", LatticeKind::SimplyConnected),
    ("A3", LatticeKind::SimplyConnected),
    ("GL2", LatticeKind::GlVariant),
    ("GL3", LatticeKind::GlVariant),
];

fn small_dominant(d: &RootDatum, delta: &crate::root_datum::SimpleSystem) -> Vec<LatticeVector> {
    // dominant points with coordinates in {0, 1}
    let r = d.rank();
    (0..1u32 << r)
        .map(|bits| LatticeVector((0..r).map(|i| i64::from(bits >> i & 1)).collect()))
        .filter(|l| crate::root_datum::dominance(l, delta).is_dominant())
        .collect()
}

/// A fast battery over the built-in fixtures.
pub fn selftest() -> Vec<SelfCheck> {
    let mut out = Vec::new();
    for &(label, kind) in SELFTEST_FIXTURES {
        let name = format!("{label} {kind:?}");
        let d = match construct(label, kind) {
            Ok(d) => d,
            Err(e) => {
                out.push(SelfCheck { name, ok: false, detail: Some(e.to_string()) });
                continue;
            }
        };
        out.push(check(format!("{name}: axioms"), || Ok(d.is_valid())));
        out.push(check(format!("{name}: edges agree with oracle"), || {
            let delta = find_simple_system(&d, None)?;
            let group = generate(&d, &delta)?;
            for l in small_dominant(&d, &delta) {
                let p = build_polytope(&d, &delta, &group, &l)?;
                for x0 in &p.vertices {
                    if p.edges_at[x0] != edges_oracle(&p.weights, x0)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }));
        if d.rank() <= 2 {
            out.push(check(format!("{name}: weight set routes agree"), || {
                let delta = find_simple_system(&d, None)?;
                for l in small_dominant(&d, &delta) {
                    if weight_set(&d, &delta, &l)? != weight_set_by_hull(&d, &delta, &l)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }));
        }
        if d.num_roots() > 0 && !matches!(kind, LatticeKind::GlVariant) {
            out.push(check(format!("{name}: reconstruction round trip"), || {
                let mut rows = vec![vec![0; d.rank()]; d.rank()];
                for (i, row) in rows.iter_mut().enumerate() {
                    row[i] = 1;
                    if i + 1 < d.rank() {
                        row[i + 1] = 1;
                    }
                }
                let m = IntMatrix::from_rows(&rows)?;
                let image = d.image_under(&m)?;
                let mp = MatchedPresentation::standard(&d, &m)?;
                let r = assemble_isomorphism(&image, &d, &mp);
                let expected: BTreeSet<_> = d.roots().iter().map(|a| m.apply(a)).collect();
                Ok(r.isomorphism_ok && r.recovered_roots.iter().cloned().collect::<BTreeSet<_>>() == expected)
            }));
        }
    }
    for label in ["A2", "B2", "G2"] {
        out.push(check(format!("{label}: blind reconstruction from the adjoint character"), || {
            let d = construct(label, LatticeKind::Adjoint)?;
            let delta = find_simple_system(&d, None)?;
            let h = delta.two_rho_check();
            let top = delta.positive_roots().iter().max_by_key(|r| r.dot(&h)).expect("nonempty").clone();
            let adj = freudenthal_multiplicities(&d, &delta, &top)?;
            let r = blind_reconstruct(d.rank(), &[adj])?;
            Ok(r.saturated && r.datum("blind")?.same_as(&d))
        }));
    }
    out
}
