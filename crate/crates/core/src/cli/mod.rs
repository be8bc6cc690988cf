//! The `torloc` command-line tool.

pub mod io;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::applications::{
    chern_number, mixed_volume_fit, mixed_volume_lattice_points, mixed_volume_loc, MixedVolume, Partition,
};
use crate::error::{Error, Result};
use crate::lattice::Index;
use crate::localization::{
    e_sigma, e_sigma_principal, e_sigma_tau, iota_star_image, iota_star_with, is_balanced, picard_rank, ranks_table,
    Restriction,
};
use crate::polyalg::{RationalFunctionLF, DEFAULT_SEED};
use crate::polyhedra::Fan;

use io::{int_value, rat_string, to_canonical_string, vector_value};

/// Environment variable overriding the seed of randomized equality tests.
pub const SEED_VAR: &str = "TORLOC_SEED";

/// Number of points used when comparing rational functions by evaluation.
pub const CHECK_POINTS: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "torloc", version, about = "Exact equivariant localization on toric varieties")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Equivariant multiplicity e_sigma of maximal cones, or e_{sigma,tau} with --tau.
    Multiplicity {
        fan: PathBuf,
        /// Index of a maximal cone.
        cone: Option<usize>,
        /// Every maximal cone (containing tau, if given).
        #[arg(long, conflicts_with = "cone")]
        all: bool,
        /// A face tau of sigma, as comma-separated ray indices.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        tau: Option<Vec<usize>>,
        /// Compare against the principal part of the Hilbert series at seeded points.
        #[arg(long)]
        verify: bool,
    },
    /// Minkowski weight iota^*(f) of a piecewise polynomial, with a balancing report.
    Restrict {
        fan: PathBuf,
        pp: PathBuf,
        /// Expected degree of the piecewise polynomial.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Route::Section)]
        route: Route,
    },
    /// Ranks of PP^i, M.PP^(i-1) and the Minkowski weights of codimension i.
    Ranks {
        fan: PathBuf,
        /// Largest degree; defaults to the dimension.
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Index of the image of iota^* in the codimension-k Minkowski weights.
    Image {
        fan: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Rank of the Picard group.
    Picard { fan: PathBuf },
    /// Normalized mixed volume n!V of n lattice polytopes.
    Mixedvol {
        polytopes: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Chern number c_lambda of a toric vector bundle.
    Chern {
        fan: PathBuf,
        bundle: PathBuf,
        /// Partition such as 111, 21 or 2,1.
        lambda: String,
    },
    /// Rewrites an input file in canonical form.
    Format {
        #[arg(value_enum)]
        kind: Kind,
        file: PathBuf,
        /// Fan the piecewise polynomial or bundle lives on.
        #[arg(long)]
        fan: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Section,
    Shifted,
    Ambient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Loc,
    Points,
    Fit,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Fan,
    Pp,
    Polytopes,
    Bundle,
}

/// Seed from [`SEED_VAR`], or the library default.
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => {
            s.trim().parse().map_err(|_| Error::Validation(format!("{SEED_VAR}={s:?} is not an unsigned integer")))
        }
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Validation(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn load_fan(path: &Path) -> Result<Fan> {
    in_file(path, io::parse_fan(&read(path)?))
}

/// Runs a command and returns its output.
pub fn run(cli: &Cli, seed: u64) -> Result<String> {
    let (text, value) = match &cli.command {
        Command::Multiplicity { fan, cone, all, tau, verify } => {
            multiplicity(&load_fan(fan)?, *cone, *all, tau.as_deref(), *verify, seed)?
        }
        Command::Restrict { fan, pp, k, route } => {
            let fan = load_fan(fan)?;
            let f = in_file(pp, io::parse_piecewise(&read(pp)?, &fan))?;
            if let Some(k) = k {
                if *k != f.degree() as usize {
                    return Err(Error::DegreeMismatch(format!(
                        "--k {k} but the piecewise polynomial has degree {}",
                        f.degree()
                    )));
                }
            }
            let how = match route {
                Route::Section => Restriction::Section,
                Route::Shifted => Restriction::ShiftedSection(seed),
                Route::Ambient => Restriction::Ambient,
            };
            restrict(&fan, &f, how)?
        }
        Command::Ranks { fan, k_max } => {
            let fan = load_fan(fan)?;
            ranks(&fan, k_max.unwrap_or(fan.ambient()))?
        }
        Command::Image { fan, k } => image(&load_fan(fan)?, *k)?,
        Command::Picard { fan } => {
            let p = picard_rank(&load_fan(fan)?)?;
            (format!("{p}\n"), json!({ "picard_rank": p }))
        }
        Command::Mixedvol { polytopes, method } => {
            let text = read(polytopes)?;
            mixedvol(&in_file(polytopes, io::parse_polytopes(&text))?, *method)?
        }
        Command::Chern { fan, bundle, lambda } => {
            let fan = load_fan(fan)?;
            let b = in_file(bundle, io::parse_bundle(&read(bundle)?, &fan))?;
            let lambda = Partition::parse(lambda)?;
            let c = chern_number(&fan, &b, &lambda)?;
            let chars = (0..fan.maximal_cones().len())
                .map(|i| b.characters_of(&fan, i).map(|u| Value::Array(u.iter().map(vector_value).collect())))
                .collect::<Result<Vec<_>>>()?;
            (
                format!("{c}\n"),
                json!({ "partition": lambda.parts(), "chern_number": int_value(&c), "u_multisets": chars }),
            )
        }
        Command::Format { kind, file, fan } => {
            let text = read(file)?;
            let v = match kind {
                Kind::Fan => io::fan_to_value(&in_file(file, io::parse_fan(&text))?),
                Kind::Polytopes => io::polytopes_to_value(&in_file(file, io::parse_polytopes(&text))?),
                Kind::Pp | Kind::Bundle => {
                    let fan = load_fan(fan.as_deref().ok_or_else(|| Error::Validation("--fan is required".into()))?)?;
                    if *kind == Kind::Pp {
                        io::piecewise_to_value(&in_file(file, io::parse_piecewise(&text, &fan))?)
                    } else {
                        io::bundle_to_value(&in_file(file, io::parse_bundle(&text, &fan))?)
                    }
                }
            };
            return Ok(to_canonical_string(&v));
        }
    };
    Ok(if cli.json { to_canonical_string(&value) } else { text })
}

fn rf_value(e: &RationalFunctionLF) -> Value {
    let den: Vec<Value> = e
        .denominator()
        .iter()
        .map(|(l, p)| json!({ "form": l.coeffs().iter().map(int_value).collect::<Vec<_>>(), "power": p }))
        .collect();
    json!({ "expression": e.to_string(), "numerator": e.numerator().to_string(), "denominator": den })
}

fn multiplicity(
    fan: &Fan,
    cone: Option<usize>,
    all: bool,
    tau: Option<&[usize]>,
    verify: bool,
    seed: u64,
) -> Result<(String, Value)> {
    let count = fan.maximal_cones().len();
    let tau_cone = match tau {
        Some(t) => {
            let mut key = t.to_vec();
            key.sort();
            key.dedup();
            Some((
                fan.cone(&key).ok_or_else(|| Error::NotAFace(format!("rays {key:?} do not span a cone of the fan")))?,
                key,
            ))
        }
        None => None,
    };
    let indices: Vec<usize> = match (cone, all) {
        (Some(i), _) if i >= count => {
            return Err(Error::OutOfRange(format!("cone {i}: the fan has {count} maximal cones")))
        }
        (Some(i), _) => vec![i],
        (None, true) => match &tau_cone {
            Some((_, key)) => fan.maximal_containing(key).to_vec(),
            None => (0..count).collect(),
        },
        (None, false) => return Err(Error::Validation("give a cone index or --all".into())),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for i in indices {
        let sigma = &fan.maximal_cones()[i];
        let e = match &tau_cone {
            Some((t, _)) => e_sigma_tau(sigma, t)?,
            None => e_sigma(sigma)?,
        };
        let mut row = json!({ "cone": i, "rays": fan.maximal_keys()[i] });
        match &tau_cone {
            Some((_, key)) => {
                writeln!(text, "e({i}; {key:?}) = {e}").unwrap();
                row["tau"] = json!(key);
            }
            None => writeln!(text, "e({i}) = {e}").unwrap(),
        }
        row["e"] = rf_value(&e);
        if verify && tau_cone.is_none() {
            let ok = e.equals_by_evaluation(&e_sigma_principal(sigma)?, seed, CHECK_POINTS);
            if !ok {
                return Err(Error::Internal(format!("cone {i}: subdivision and principal part disagree")));
            }
            row["verified"] = json!(true);
        }
        rows.push(row);
    }
    Ok((text, json!({ "multiplicities": rows })))
}

fn restrict(fan: &Fan, f: &crate::localization::PiecewisePolynomial, how: Restriction) -> Result<(String, Value)> {
    let w = iota_star_with(fan, f, how)?;
    let (balanced, witnesses) = is_balanced(fan, &w)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (i, (key, v)) in w.cones().iter().zip(w.values()).enumerate() {
        writeln!(text, "c({i}) = {v}  rays {key:?}").unwrap();
        rows.push(json!({ "cone": i, "rays": key, "value": int_value(v) }));
    }
    writeln!(text, "{}", if balanced { "balanced" } else { "not balanced" }).unwrap();
    let unbalanced: Vec<Value> =
        witnesses.iter().map(|(g, v)| json!({ "cone": g, "residual": vector_value(v) })).collect();
    Ok((text, json!({ "codim": w.codim(), "weights": rows, "balanced": balanced, "unbalanced": unbalanced })))
}

/// The rank table as aligned text columns.
pub fn format_ranks(rows: &[crate::localization::RankRow]) -> String {
    let header = ["i", "rk PP^i", "rk M.PP^(i-1)", "rk MW^i"];
    let cells: Vec<[String; 4]> =
        rows.iter().map(|r| [r.degree.to_string(), r.pp.to_string(), r.m_pp.to_string(), r.mw.to_string()]).collect();
    let widths: Vec<usize> =
        (0..4).map(|c| cells.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap()).collect();
    let line = |cols: [&str; 4]| -> String {
        let s: Vec<String> = cols.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        s.join("  ") + "\n"
    };
    let mut out = line(header);
    for r in &cells {
        out += &line([&r[0], &r[1], &r[2], &r[3]]);
    }
    out
}

fn ranks(fan: &Fan, k_max: usize) -> Result<(String, Value)> {
    let rows = ranks_table(fan, k_max)?;
    let v: Vec<Value> = rows.iter().map(|r| json!({ "i": r.degree, "pp": r.pp, "m_pp": r.m_pp, "mw": r.mw })).collect();
    Ok((format_ranks(&rows), json!({ "ranks": v })))
}

fn image(fan: &Fan, k: usize) -> Result<(String, Value)> {
    let r = iota_star_image(fan, k)?;
    let (index_text, index_value) = match &r.index {
        Index::Finite(i) => (i.to_string(), int_value(i)),
        Index::Infinite => ("infinite".to_string(), json!("infinite")),
    };
    let text = format!("weight rank {}\nimage index {index_text}\n", r.weight_rank);
    Ok((text, json!({ "codim": k, "weight_rank": r.weight_rank, "index": index_value })))
}

fn mixedvol(polytopes: &[crate::polyhedra::LatticePolytope], method: Method) -> Result<(String, Value)> {
    let mut results: Vec<(&str, MixedVolume)> = Vec::new();
    if matches!(method, Method::Loc | Method::All) {
        let sys = crate::applications::PolytopeSystem::new(polytopes.to_vec())?;
        results.push(("loc", mixed_volume_loc(&sys)?));
    }
    if matches!(method, Method::Points | Method::All) {
        results.push(("points", mixed_volume_lattice_points(polytopes)?));
    }
    if matches!(method, Method::Fit | Method::All) {
        results.push(("fit", mixed_volume_fit(polytopes)?));
    }
    if results.windows(2).any(|w| w[0].1 != w[1].1) {
        let all: Vec<String> = results.iter().map(|(m, v)| format!("{m} {}", v.normalized)).collect();
        return Err(Error::Internal(format!("mixed volume methods disagree: {}", all.join(", "))));
    }
    let mut text = String::new();
    let mut methods = serde_json::Map::new();
    for (m, v) in &results {
        writeln!(text, "{m}: n!V = {}, V = {}", v.normalized, rat_string(&v.volume)).unwrap();
        methods.insert((*m).into(), json!({ "normalized": int_value(&v.normalized), "volume": rat_string(&v.volume) }));
    }
    Ok((text, json!({ "n": polytopes.len(), "methods": methods })))
}

/// Parses arguments, runs the command and prints its output; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match seed_from_env().and_then(|seed| run(&cli, seed)) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string(), "kind": format!("{:?}", e.kind()) }));
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
