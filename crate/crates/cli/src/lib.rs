//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the exit code together with everything that would be printed, so tests
//! can drive it without spawning a process.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error.
//! Sources are file paths or `catalog:<name>`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use lefschetz_core::catalog::{self, EntryData};
use lefschetz_core::feasibility::{
    enumerate_types, family_invariants, render_figure, FigureFormat,
};
use lefschetz_core::format::{parse_factorization, parse_lantern, serialize_factorization};
use lefschetz_core::homrep::{transitivity_certificate, transvection, TransitivityVerdict};
use lefschetz_core::invariants::{basis_pair_search, invariant_report, InvariantReport};
use lefschetz_core::monodromy::{
    chain_substitute, fiber_sum, global_conjugate, hurwitz_move, identity_check,
    lantern_substitute, ns_type, ChainDir, Direction,
};
use lefschetz_core::surface::{parse_twist_word, MAX_WORD_GENUS};
use lefschetz_core::{Error, Factorization, LanternInstance, Level};

const CATALOG_SCHEME: &str = "catalog:";

#[derive(Parser, Debug)]
#[command(name = "lefschetz", version, about = "Lefschetz fibration monodromy toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the monodromy is trivial.
    Check {
        source: String,
        /// homology, modp or exact; defaults to the strongest supported level.
        #[arg(long)]
        level: Option<Level>,
    },
    /// Topological invariants as key=value lines.
    Invariants {
        source: String,
        /// Do not assume the fibration has a section.
        #[arg(long)]
        no_section: bool,
    },
    /// The (n, s) type.
    Type { source: String },
    /// One elementary transformation at positions i, i+1.
    Hurwitz {
        source: String,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        dir: Direction,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Conjugate every cycle by a twist word.
    Conjugate {
        source: String,
        #[arg(long)]
        word: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Fiber sum of two factorizations.
    Fibersum {
        first: String,
        second: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Lantern or chain substitution.
    #[command(subcommand)]
    Sub(Sub),
    /// Mod-p closure of the vanishing-cycle transvections.
    Transitivity {
        source: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u64>,
    },
    /// Admissible (n, s) types of genus-2 fibrations.
    Feasibility {
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 15)]
        s_max: usize,
        #[arg(long, default_value = "csv")]
        format: FigureFormat,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Invariants forced on the (2k, 4k-5) family.
    Family {
        #[arg(long)]
        k: i64,
    },
    /// Pairs of vanishing cycles whose classes span a primitive rank-2 lattice.
    BasisPairs { source: String },
    /// Built-in catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Subcommand, Debug)]
enum Sub {
    Lantern {
        source: String,
        /// First of four consecutive positions.
        #[arg(long)]
        at: usize,
        /// Catalog name or file of the lantern instance.
        #[arg(long, default_value = "lantern-std")]
        instance: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    Chain {
        source: String,
        #[arg(long)]
        at: usize,
        #[arg(long)]
        dir: ChainDir,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    Show { name: String },
    Verify { name: String },
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn check(passed: bool, stdout: String) -> Self {
        Self { code: if passed { 0 } else { 1 }, stdout, stderr: String::new() }
    }
}

/// Runs the command line `args` (without the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("lefschetz")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome { code: error_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::UnknownLabel(_)
        | Error::UnknownEntry(_)
        | Error::IndexOutOfRange { .. }
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn dispatch(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Check { source, level } => check(&load(&source)?, level),
        Command::Invariants { source, no_section } => {
            let r = invariant_report(&load(&source)?, !no_section)?;
            Ok(Outcome::ok(key_values(&r)))
        }
        Command::Type { source } => {
            let t = ns_type(&load(&source)?)?;
            Ok(Outcome::ok(format!("n={}\ns={}\n", t.n, t.s)))
        }
        Command::Hurwitz { source, index, dir, output } => {
            emit(&hurwitz_move(&load(&source)?, index, dir)?, output.as_deref())
        }
        Command::Conjugate { source, word, output } => {
            let w = parse_twist_word(&word)?;
            emit(&global_conjugate(&load(&source)?, &w)?, output.as_deref())
        }
        Command::Fibersum { first, second, output } => {
            emit(&fiber_sum(&load(&first)?, &load(&second)?)?, output.as_deref())
        }
        Command::Sub(Sub::Lantern { source, at, instance, output }) => {
            let l = load_lantern(&instance)?;
            let positions = [at, at + 1, at + 2, at + 3];
            emit(&lantern_substitute(&load(&source)?, positions, &l)?, output.as_deref())
        }
        Command::Sub(Sub::Chain { source, at, dir, output }) => {
            emit(&chain_substitute(&load(&source)?, at, dir)?, output.as_deref())
        }
        Command::Transitivity { source, primes } => transitivity(&load(&source)?, &primes),
        Command::Feasibility { n_max, s_max, format, output } => {
            let text = render_figure(&enumerate_types(n_max, s_max)?, format, n_max, s_max);
            write_or_print(text, output.as_deref())
        }
        Command::Family { k } => {
            let r = family_invariants(k)?;
            let mut out = String::new();
            for (key, v) in [
                ("k", r.k),
                ("n", r.n as i64),
                ("s", r.s as i64),
                ("b1", r.b1),
                ("euler", r.euler),
                ("signature", r.signature),
                ("b2", r.b2),
                ("b2_plus", r.b2_plus),
                ("b2_minus", r.b2_minus),
                ("sharp_value", r.sharp_value),
            ] {
                let _ = writeln!(out, "{key}={v}");
            }
            let _ = writeln!(out, "admissible={}\nindecomposable={}", r.admissible, r.indecomposable);
            Ok(Outcome::ok(out))
        }
        Command::BasisPairs { source } => {
            let pairs = basis_pair_search(&load(&source)?)?;
            let mut out = format!("pairs={}\n", pairs.len());
            for (i, j) in pairs {
                let _ = writeln!(out, "{i} {j}");
            }
            Ok(Outcome::ok(out))
        }
        Command::Catalog(cmd) => catalog_cmd(cmd),
    }
}

fn check(f: &Factorization, level: Option<Level>) -> Result<Outcome, Error> {
    let level = level.unwrap_or(if f.fiber_genus <= MAX_WORD_GENUS { Level::Exact } else { Level::ModP });
    let r = identity_check(f, level)?;
    let achieved = r.achieved().map_or("none", Level::name);
    let mut out = format!("identity: {achieved}\nrequested: {level}\nhomology: {}\n", r.homology);
    if let Some(ps) = &r.mod_p {
        let parts: Vec<String> = ps.iter().map(|(p, ok)| format!("{p}:{ok}")).collect();
        let _ = writeln!(out, "mod_p: {}", parts.join(" "));
    }
    if let Some(exact) = &r.exact {
        match exact {
            Some(w) if w.is_empty() => out.push_str("conjugator: 1\n"),
            Some(w) => {
                let _ = writeln!(out, "conjugator: {w}");
            }
            None => out.push_str("conjugator: none\n"),
        }
    }
    Ok(Outcome::check(r.passed(), out))
}

fn key_values(r: &InvariantReport) -> String {
    let opt = |v: Option<i64>| v.map_or_else(|| "unknown".to_string(), |x| x.to_string());
    let mut out = String::new();
    let _ = writeln!(out, "fiber_genus={}", r.fiber_genus);
    let _ = writeln!(out, "base_genus={}", r.base_genus);
    let _ = writeln!(out, "n={}", r.ns.n);
    let _ = writeln!(out, "s={}", r.ns.s);
    let _ = writeln!(out, "euler={}", r.euler);
    let _ = writeln!(out, "signature={}", opt(r.signature));
    let _ = writeln!(out, "h1={}", r.h1);
    for (i, b) in r.betti.iter().enumerate() {
        let _ = writeln!(out, "b{i}={b}");
    }
    let _ = writeln!(out, "b2_plus={}", opt(r.b2_plus));
    let _ = writeln!(out, "b2_minus={}", opt(r.b2_minus));
    let bound = r.b2_minus_bound.map_or_else(|| "unknown".to_string(), |b| b.to_string());
    let _ = writeln!(out, "b2_minus_bound={bound}");
    let _ = writeln!(out, "section_assumed={}", r.section_assumed);
    if !r.section_assumed {
        out.push_str("h1_note=upper bound; the true group is a quotient\n");
    }
    let _ = writeln!(out, "identity_level={}", r.identity_level);
    out
}

fn transitivity(f: &Factorization, primes: &[u64]) -> Result<Outcome, Error> {
    let gens = f
        .classes()?
        .iter()
        .filter(|c| !c.is_zero())
        .map(transvection)
        .collect::<Result<Vec<_>, _>>()?;
    let cert = transitivity_certificate(&gens, f.fiber_genus, primes)?;
    let mut out = String::new();
    for c in &cert.primes {
        let _ = writeln!(
            out,
            "p={} order={} target={} surjective={}",
            c.prime, c.order, c.target_order, c.surjective
        );
    }
    let passed = cert.verdict == TransitivityVerdict::ConsistentWithTransitive;
    let verdict = if passed { "consistent-with-transitive" } else { "not-transitive" };
    let _ = writeln!(out, "verdict={verdict}");
    Ok(Outcome::check(passed, out))
}

fn catalog_cmd(cmd: CatalogCmd) -> Result<Outcome, Error> {
    match cmd {
        CatalogCmd::List => {
            let mut out = String::new();
            for (name, provenance) in catalog::list() {
                let _ = writeln!(out, "{name}\t{provenance}");
            }
            Ok(Outcome::ok(out))
        }
        CatalogCmd::Show { name } => {
            let e = catalog::get(strip_scheme(&name))?;
            let mut out = format!("name: {}\nprovenance: {}\nlevel: {}\n", e.name, e.provenance, e.level);
            if let Some(t) = e.expected_type {
                let _ = writeln!(out, "type: {t}");
            }
            if let Some(b1) = e.expected_b1 {
                let _ = writeln!(out, "b1: {b1}");
            }
            let _ = writeln!(out, "external_data: {}", e.external_data);
            match &e.data {
                EntryData::Fibration(f) => out.push_str(&serialize_factorization(f)),
                EntryData::Lantern(l) => {
                    let side = |cs: &[lefschetz_core::Curve]| {
                        cs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
                    };
                    let _ = writeln!(out, "boundary: {}", side(&l.boundary));
                    let _ = writeln!(out, "interior: {}", side(&l.interior));
                }
            }
            Ok(Outcome::ok(out))
        }
        CatalogCmd::Verify { name } => {
            let r = catalog::verify(strip_scheme(&name))?;
            Ok(Outcome::check(r.passed(), r.to_string()))
        }
    }
}

fn strip_scheme(name: &str) -> &str {
    name.strip_prefix(CATALOG_SCHEME).unwrap_or(name)
}

fn load(source: &str) -> Result<Factorization, Error> {
    match source.strip_prefix(CATALOG_SCHEME) {
        Some(name) => Ok(catalog::get(name)?.factorization()?.clone()),
        None => parse_factorization(&fs::read_to_string(source)?),
    }
}

fn load_lantern(source: &str) -> Result<LanternInstance, Error> {
    let name = strip_scheme(source);
    if source.starts_with(CATALOG_SCHEME) || !Path::new(source).exists() {
        return Ok(catalog::get(name)?.lantern()?.clone());
    }
    let stem = Path::new(source).file_stem().and_then(|s| s.to_str()).unwrap_or(source);
    parse_lantern(stem, &fs::read_to_string(source)?)
}

fn emit(f: &Factorization, output: Option<&Path>) -> Result<Outcome, Error> {
    write_or_print(serialize_factorization(f), output)
}

fn write_or_print(text: String, output: Option<&Path>) -> Result<Outcome, Error> {
    match output {
        Some(path) => {
            fs::write(path, text)?;
            Ok(Outcome::ok(format!("wrote {}\n", path.display())))
        }
        None => Ok(Outcome::ok(text)),
    }
}
