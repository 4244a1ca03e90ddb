//! Built-in genus-2 factorizations and relation instances.
//!
//! Base entries are read from the files under `data/`; derived entries are
//! built from them by Hurwitz moves, lantern substitution and fiber sum.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{parse_factorization, parse_lantern};
use crate::invariants::first_homology;
use crate::monodromy::{
    fiber_sum, hurwitz_move, identity_check, lantern_substitute, ns_type, Direction, Factorization,
    LanternInstance, Level, NSType,
};
use crate::surface::{algebraic_intersection, parse_twist_word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Source {
    File(&'static str),
    Lantern(&'static str),
    Lantern181,
    Lantern162,
    FiberSum124,
}

struct Info {
    name: &'static str,
    provenance: &'static str,
    level: Level,
    expected_type: Option<(usize, usize)>,
    expected_b1: Option<usize>,
    external_data: bool,
    source: Source,
}

const ENTRIES: &[Info] = &[
    Info {
        name: "chakiris-alpha",
        provenance: "Chakiris chain relation (t1 t2 t3 t4 t5)^6",
        level: Level::Exact,
        expected_type: Some((30, 0)),
        expected_b1: Some(0),
        external_data: false,
        source: Source::File(include_str!("../data/chakiris-alpha.json")),
    },
    Info {
        name: "chakiris-beta",
        provenance: "Chakiris chain relation (t1 t2 t3 t4)^10",
        level: Level::Exact,
        expected_type: Some((40, 0)),
        expected_b1: Some(0),
        external_data: false,
        source: Source::File(include_str!("../data/chakiris-beta.json")),
    },
    Info {
        name: "chakiris-gamma",
        provenance: "Chakiris relation (t1 t2 t3 t4 t5 t5 t4 t3 t2 t1)^2",
        level: Level::Exact,
        expected_type: Some((20, 0)),
        expected_b1: Some(0),
        external_data: false,
        source: Source::File(include_str!("../data/chakiris-gamma.json")),
    },
    Info {
        name: "hyperelliptic-sq",
        provenance: "square of the hyperelliptic involution (t5 t4 t3 t2 t1 t1 t2 t3 t4 t5)^2",
        level: Level::Exact,
        expected_type: Some((20, 0)),
        expected_b1: Some(0),
        external_data: false,
        source: Source::File(include_str!("../data/hyperelliptic-sq.json")),
    },
    Info {
        name: "matsumoto-62",
        provenance: "Matsumoto's (6,2) relation; curves found by search against the half twist",
        level: Level::Exact,
        expected_type: Some((6, 2)),
        expected_b1: Some(2),
        external_data: true,
        source: Source::File(include_str!("../data/matsumoto-62.json")),
    },
    Info {
        name: "lantern-std",
        provenance: "lantern relation t1 t1 t5 t5 = t_s1 t_c3 t_X inside the closed genus-2 surface",
        level: Level::Exact,
        expected_type: None,
        expected_b1: None,
        external_data: false,
        source: Source::Lantern(include_str!("../data/lantern-std.json")),
    },
    Info {
        name: "lantern-18-1",
        provenance: "hyperelliptic-sq after Hurwitz moves and one lantern substitution",
        level: Level::Homology,
        expected_type: Some((18, 1)),
        expected_b1: Some(0),
        external_data: false,
        source: Source::Lantern181,
    },
    Info {
        name: "lantern-16-2",
        provenance: "lantern-18-1 after Hurwitz moves and a second lantern substitution",
        level: Level::Homology,
        expected_type: Some((16, 2)),
        expected_b1: Some(0),
        external_data: false,
        source: Source::Lantern162,
    },
    Info {
        name: "fibersum-12-4",
        provenance: "fiber sum of two copies of matsumoto-62",
        level: Level::Exact,
        expected_type: Some((12, 4)),
        expected_b1: Some(2),
        external_data: true,
        source: Source::FiberSum124,
    },
];

/// `t1 t1 (t1 t2 t3)^4`, which equals the lantern's interior product on the
/// one-boundary surface. On the closed surface `(t1 t2 t3)^4 = t5 t5'` with
/// `c5'` isotopic to `c5`.
pub const LANTERN_STD_CERTIFICATE: &str = "t1 t1 t1 t2 t3 t1 t2 t3 t1 t2 t3 t1 t2 t3";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryData {
    Fibration(Factorization),
    Lantern(LanternInstance),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub provenance: &'static str,
    pub level: Level,
    pub expected_type: Option<NSType>,
    pub expected_b1: Option<usize>,
    pub external_data: bool,
    pub data: EntryData,
}

impl CatalogEntry {
    pub fn factorization(&self) -> Result<&Factorization> {
        match &self.data {
            EntryData::Fibration(f) => Ok(f),
            EntryData::Lantern(_) => Err(Error::Precondition(format!(
                "`{}` is a relation instance, not a factorization",
                self.name
            ))),
        }
    }

    pub fn lantern(&self) -> Result<&LanternInstance> {
        match &self.data {
            EntryData::Lantern(l) => Ok(l),
            EntryData::Fibration(_) => Err(Error::Precondition(format!(
                "`{}` is a factorization, not a lantern instance",
                self.name
            ))),
        }
    }
}

fn info(name: &str) -> Result<&'static Info> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// Names and provenance of all entries, in a fixed order.
pub fn list() -> Vec<(&'static str, &'static str)> {
    ENTRIES.iter().map(|e| (e.name, e.provenance)).collect()
}

/// Types realized by catalog fibrations (read from metadata, nothing is built).
pub fn known_types() -> Vec<NSType> {
    ENTRIES
        .iter()
        .filter_map(|e| e.expected_type.map(|(n, s)| NSType::new(n, s)))
        .collect()
}

/// Moves the cycle at `from` to `to` unchanged; the cycles it passes are
/// conjugated.
fn carry(f: &Factorization, from: usize, to: usize) -> Result<Factorization> {
    let mut f = f.clone();
    if from < to {
        for i in from..to {
            f = hurwitz_move(&f, i, Direction::Left)?;
        }
    } else {
        for i in (to..from).rev() {
            f = hurwitz_move(&f, i, Direction::Right)?;
        }
    }
    Ok(f)
}

fn fibration(name: &str) -> Result<Factorization> {
    get(name)?.factorization().cloned()
}

fn lantern_std() -> Result<LanternInstance> {
    get("lantern-std")?.lantern().cloned()
}

// hyperelliptic-sq reads 5 4 3 2 1 1 2 3 4 5 5 4 3 2 1 1 2 3 4 5 (chain
// indices). Bringing the two middle 5s down to positions 6, 7 exposes
// 1 1 5 5 at positions 4..7.
fn build_lantern_18_1() -> Result<Factorization> {
    let f = fibration("hyperelliptic-sq")?;
    let f = carry(&f, 9, 6)?;
    let f = carry(&f, 10, 7)?;
    lantern_substitute(&f, [4, 5, 6, 7], &lantern_std()?)
}

// After the first substitution the tail reads 4 3 2 1 1 2 3 4 5 at 10..18.
// The last 5 comes down to 15, then the leading 5 travels up to 15, which
// leaves 1 1 5 5 at 12..15.
fn build_lantern_16_2() -> Result<Factorization> {
    let f = fibration("lantern-18-1")?;
    let f = carry(&f, 18, 15)?;
    let f = carry(&f, 0, 15)?;
    lantern_substitute(&f, [12, 13, 14, 15], &lantern_std()?)
}

/// Builds the named entry. Verification is separate; see [`verify`].
pub fn get(name: &str) -> Result<CatalogEntry> {
    let e = info(name)?;
    let data = match e.source {
        Source::File(text) => EntryData::Fibration(parse_factorization(text)?),
        Source::Lantern(text) => EntryData::Lantern(parse_lantern(e.name, text)?),
        Source::Lantern181 => EntryData::Fibration(build_lantern_18_1()?),
        Source::Lantern162 => EntryData::Fibration(build_lantern_16_2()?),
        Source::FiberSum124 => {
            let m = fibration("matsumoto-62")?;
            EntryData::Fibration(fiber_sum(&m, &m)?)
        }
    };
    Ok(CatalogEntry {
        name: e.name,
        provenance: e.provenance,
        level: e.level,
        expected_type: e.expected_type.map(|(n, s)| NSType::new(n, s)),
        expected_b1: e.expected_b1,
        external_data: e.external_data,
        data,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub level: Level,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, label: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            label: label.to_string(),
            passed,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAILED" };
            writeln!(f, "{}: {} {} ({})", self.name, c.label, mark, c.detail)?;
        }
        Ok(())
    }
}

fn verify_fibration(e: &CatalogEntry, f: &Factorization, r: &mut VerifyReport) -> Result<()> {
    let id = identity_check(f, e.level)?;
    let achieved = id.achieved().map(Level::name).unwrap_or("none");
    r.push(&format!("identity at {}", e.level), id.passed(), format!("achieved {achieved}"));
    let t = ns_type(f)?;
    if let Some(want) = e.expected_type {
        r.push("type", t == want, format!("got {t}, expected {want}"));
        if f.fiber_genus == 2 {
            let adm = crate::feasibility::admissible(t.n, t.s)?.admissible();
            r.push("admissible", adm, format!("{t}"));
        }
    }
    if let Some(want) = e.expected_b1 {
        if id.homology {
            let h1 = first_homology(f, true)?;
            r.push("b1", h1.free_rank == want, format!("H1 = {h1}, expected b1 = {want}"));
        } else {
            r.push("b1", false, "monodromy is not trivial on homology");
        }
    }
    Ok(())
}

fn verify_lantern(l: &LanternInstance, r: &mut VerifyReport) -> Result<()> {
    let g = l.genus;
    let lhs = l.boundary_factorization();
    let rhs = l.interior_factorization();
    r.push("homology equality", lhs.evaluate()? == rhs.evaluate()?, "boundary vs interior");

    let cert = crate::pi1::compose(g, &parse_twist_word(LANTERN_STD_CERTIFICATE)?)?;
    let exact = rhs.automorphism()? == cert;
    r.push("exact interior product", exact, format!("equals {LANTERN_STD_CERTIFICATE}"));

    let bc = lhs.classes()?;
    let ic = rhs.classes()?;
    let mut disjoint = true;
    for x in &bc {
        for y in bc.iter().chain(&ic) {
            disjoint &= algebraic_intersection(x, y)? == 0;
        }
    }
    r.push("boundary meets nothing", disjoint, "algebraic intersections with boundary vanish");
    let mut even = true;
    for i in 0..3 {
        for j in i + 1..3 {
            even &= algebraic_intersection(&ic[i], &ic[j])? % 2 == 0;
        }
    }
    r.push("interior pattern", even, "pairwise algebraic intersections are even");
    Ok(())
}

/// Runs every check for the entry. A failed check shows up in the report; an
/// `Err` means the entry could not be built at all.
pub fn verify(name: &str) -> Result<VerifyReport> {
    let e = get(name)?;
    let mut r = VerifyReport {
        name: e.name.to_string(),
        level: e.level,
        checks: Vec::new(),
    };
    match &e.data {
        EntryData::Fibration(f) => verify_fibration(&e, f, &mut r)?,
        EntryData::Lantern(l) => verify_lantern(l, &mut r)?,
    }
    Ok(r)
}
