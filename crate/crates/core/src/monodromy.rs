//! Curves, factorizations and factorization surgery.
//!
//! A [`Factorization`] stores its vanishing cycles in application order: the
//! first cycle's twist acts first, so the monodromy is `t_{η_k} ⋯ t_{η_1}`.
//! Twist words elsewhere (conjugators, relation words) are written in
//! composition order, rightmost letter acting first.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homrep::{self, SpMatrix, SUPPORTED_PRIMES};
use crate::pi1::{self, FreeWord, TwistAutomorphism};
use crate::surface::{invert_word, reduce_word, std_class, std_word, HomologyClass, StdCurve, Twist};

/// The image of a standard curve under a twist word: `conj(base)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Curve {
    pub base: StdCurve,
    pub conj: Vec<Twist>,
}

impl Curve {
    /// Builds a curve with a normalized conjugator: freely reduced, and with
    /// trailing letters that fix the base curve removed.
    pub fn new(base: StdCurve, conj: Vec<Twist>) -> Self {
        let mut conj = reduce_word(&conj);
        while let Some(last) = conj.last() {
            if last.curve == base || last.curve.commutes_with(base) {
                conj.pop();
            } else {
                break;
            }
        }
        Self { base, conj }
    }

    pub fn standard(base: StdCurve) -> Self {
        Self {
            base,
            conj: Vec::new(),
        }
    }

    pub fn chain(i: usize) -> Self {
        Self::standard(StdCurve::Chain(i))
    }

    pub fn validate(&self, genus: usize) -> Result<()> {
        self.base.validate(genus)?;
        for t in &self.conj {
            t.curve.validate(genus)?;
        }
        Ok(())
    }

    /// `w(self)`: the conjugator gains `w` on the left.
    pub fn conjugated(&self, w: &[Twist]) -> Curve {
        let mut conj = w.to_vec();
        conj.extend_from_slice(&self.conj);
        Curve::new(self.base, conj)
    }

    pub fn class(&self, genus: usize) -> Result<HomologyClass> {
        let m = homrep::evaluate_word(genus, &self.conj)?;
        Ok(HomologyClass(m.apply(std_class(genus, self.base).coeffs())?))
    }

    pub fn kind(&self, genus: usize) -> Result<CurveKind> {
        Ok(if self.class(genus)?.is_zero() {
            CurveKind::Separating
        } else {
            CurveKind::Nonseparating
        })
    }

    /// The twist about this curve as a word: `conj · t_base^{±1} · conj⁻¹`.
    pub fn twist_word(&self, positive: bool) -> Vec<Twist> {
        let t = Twist::pos(self.base);
        let mut w = self.conj.clone();
        w.push(if positive { t } else { t.inv() });
        w.extend(invert_word(&self.conj));
        w
    }

    /// Transvection matrix of the positive twist about this curve.
    pub fn matrix(&self, genus: usize) -> Result<SpMatrix> {
        homrep::transvection(&self.class(genus)?)
    }

    /// Free-group representative on the one-boundary surface (genus ≤ 2).
    pub fn free_word(&self, genus: usize) -> Result<FreeWord> {
        let base = std_word(genus, self.base).ok_or(Error::Genus {
            genus,
            reason: "free-group words exist for genus 1 and 2 only",
        })?;
        Ok(pi1::compose(genus, &self.conj)?.apply(&base))
    }

    /// Same unoriented curve on the one-boundary surface. Falls back to
    /// structural equality when no free-group engine exists for the genus.
    pub fn same_curve(&self, other: &Curve, genus: usize) -> Result<bool> {
        if self == other {
            return Ok(true);
        }
        if genus > crate::surface::MAX_WORD_GENUS {
            return Ok(false);
        }
        Ok(self.free_word(genus)?.conjugacy_normal_form()
            == other.free_word(genus)?.conjugacy_normal_form())
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conj.is_empty() {
            return write!(f, "{}", self.base);
        }
        let w: Vec<String> = self.conj.iter().map(|t| t.token()).collect();
        write!(f, "({})({})", w.join(" "), self.base)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CurveKind {
    Separating,
    Nonseparating,
}

pub fn classify_curve(c: &Curve, genus: usize) -> Result<CurveKind> {
    c.kind(genus)
}

/// Counts of nonseparating and separating vanishing cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NSType {
    pub n: usize,
    pub s: usize,
}

impl NSType {
    pub fn new(n: usize, s: usize) -> Self {
        Self { n, s }
    }
}

impl std::ops::Add for NSType {
    type Output = NSType;

    fn add(self, o: NSType) -> NSType {
        NSType::new(self.n + o.n, self.s + o.s)
    }
}

impl fmt::Display for NSType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub fiber_genus: usize,
    pub base_genus: usize,
    pub cycles: Vec<Curve>,
}

impl Factorization {
    pub fn new(fiber_genus: usize, base_genus: usize, cycles: Vec<Curve>) -> Result<Self> {
        if fiber_genus == 0 {
            return Err(Error::Genus {
                genus: 0,
                reason: "sphere fibers are not supported",
            });
        }
        let cycles = cycles
            .into_iter()
            .map(|c| {
                c.validate(fiber_genus)?;
                Ok(Curve::new(c.base, c.conj))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            fiber_genus,
            base_genus,
            cycles,
        })
    }

    pub fn empty(fiber_genus: usize) -> Self {
        Self {
            fiber_genus,
            base_genus: 0,
            cycles: Vec::new(),
        }
    }

    /// Builds a factorization from a positive relation word in composition
    /// order, e.g. `t1 t2 t3 t4 t5` repeated: the rightmost twist is the
    /// first vanishing cycle.
    pub fn from_relation(fiber_genus: usize, word: &[Twist]) -> Result<Self> {
        if let Some(t) = word.iter().find(|t| t.inverse) {
            return Err(Error::Precondition(format!(
                "relation words must be positive, found {t}"
            )));
        }
        let cycles = word.iter().rev().map(|t| Curve::standard(t.curve)).collect();
        Self::new(fiber_genus, 0, cycles)
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// The monodromy `t_{η_k} ⋯ t_{η_1}` as a twist word in composition order.
    pub fn monodromy_word(&self) -> Vec<Twist> {
        self.cycles
            .iter()
            .rev()
            .flat_map(|c| c.twist_word(true))
            .collect()
    }

    /// `Ψ` of the monodromy.
    pub fn evaluate(&self) -> Result<SpMatrix> {
        let mut acc = SpMatrix::identity(self.fiber_genus);
        for c in self.cycles.iter().rev() {
            acc = acc.mul(&c.matrix(self.fiber_genus)?)?;
        }
        Ok(acc)
    }

    /// The monodromy acting on the free group of the one-boundary surface.
    ///
    /// The whole word is freely reduced first. After Hurwitz moves adjacent
    /// conjugators share long prefixes, and composing cycle by cycle builds
    /// intermediate images exponentially longer than the result.
    pub fn automorphism(&self) -> Result<TwistAutomorphism> {
        pi1::compose(self.fiber_genus, &reduce_word(&self.monodromy_word()))
    }

    pub fn classes(&self) -> Result<Vec<HomologyClass>> {
        self.cycles.iter().map(|c| c.class(self.fiber_genus)).collect()
    }
}

/// Counts cycles by [`classify_curve`]. For fiber genus above 2 the `s` count
/// lumps together all separating types.
pub fn ns_type(f: &Factorization) -> Result<NSType> {
    let mut t = NSType::new(0, 0);
    for c in &f.cycles {
        match c.kind(f.fiber_genus)? {
            CurveKind::Separating => t.s += 1,
            CurveKind::Nonseparating => t.n += 1,
        }
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Direction::Left),
            "right" => Ok(Direction::Right),
            _ => Err(Error::Precondition(format!(
                "direction must be left or right, got `{s}`"
            ))),
        }
    }
}

/// Elementary transformation at positions `i, i+1`.
///
/// Right: `(x, y) ↦ (y, t_y(x))`. Left: `(x, y) ↦ (t_x⁻¹(y), x)`. Both keep
/// the product `t_y t_x` unchanged and are inverse to each other.
pub fn hurwitz_move(f: &Factorization, i: usize, dir: Direction) -> Result<Factorization> {
    if i + 1 >= f.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: f.len(),
        });
    }
    let (x, y) = (&f.cycles[i], &f.cycles[i + 1]);
    let (first, second) = match dir {
        Direction::Right => (y.clone(), x.conjugated(&y.twist_word(true))),
        Direction::Left => (y.conjugated(&x.twist_word(false)), x.clone()),
    };
    let mut out = f.clone();
    out.cycles[i] = first;
    out.cycles[i + 1] = second;
    Ok(out)
}

/// Conjugates every cycle by `w`.
pub fn global_conjugate(f: &Factorization, w: &[Twist]) -> Result<Factorization> {
    for t in w {
        t.curve.validate(f.fiber_genus)?;
    }
    Ok(Factorization {
        fiber_genus: f.fiber_genus,
        base_genus: f.base_genus,
        cycles: f.cycles.iter().map(|c| c.conjugated(w)).collect(),
    })
}

pub fn fiber_sum(f1: &Factorization, f2: &Factorization) -> Result<Factorization> {
    if f1.fiber_genus != f2.fiber_genus {
        return Err(Error::Precondition(format!(
            "fiber genera differ: {} and {}",
            f1.fiber_genus, f2.fiber_genus
        )));
    }
    if f1.base_genus != 0 || f2.base_genus != 0 {
        return Err(Error::Precondition(
            "fiber sums are supported over the sphere only".into(),
        ));
    }
    let mut cycles = f1.cycles.clone();
    cycles.extend(f2.cycles.iter().cloned());
    Ok(Factorization {
        fiber_genus: f1.fiber_genus,
        base_genus: 0,
        cycles,
    })
}

/// A lantern configuration: `boundary` and `interior` twist products agree
/// (both lists in application order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanternInstance {
    pub name: String,
    pub genus: usize,
    pub boundary: [Curve; 4],
    pub interior: [Curve; 3],
}

impl LanternInstance {
    pub fn boundary_factorization(&self) -> Factorization {
        Factorization {
            fiber_genus: self.genus,
            base_genus: 0,
            cycles: self.boundary.to_vec(),
        }
    }

    pub fn interior_factorization(&self) -> Factorization {
        Factorization {
            fiber_genus: self.genus,
            base_genus: 0,
            cycles: self.interior.to_vec(),
        }
    }
}

/// Finds `φ` with `cycles[k] = φ(pattern[k])` for all k, trying the
/// conjugators already present in `cycles` as candidates.
fn common_conjugator(genus: usize, cycles: &[Curve], pattern: &[Curve]) -> Result<Option<Vec<Twist>>> {
    let mut candidates: Vec<Vec<Twist>> = Vec::new();
    for (c, p) in cycles.iter().zip(pattern) {
        if c.conj.len() >= p.conj.len() && c.conj.ends_with(&p.conj) {
            let phi = c.conj[..c.conj.len() - p.conj.len()].to_vec();
            if !candidates.contains(&phi) {
                candidates.push(phi);
            }
        }
    }
    for phi in candidates {
        let mut ok = true;
        for (c, p) in cycles.iter().zip(pattern) {
            if c.base != p.base || !c.same_curve(&p.conjugated(&phi), genus)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

fn check_consecutive(positions: &[usize], len: usize) -> Result<usize> {
    let start = positions[0];
    if positions.iter().enumerate().any(|(k, &p)| p != start + k) {
        return Err(Error::Precondition(format!(
            "positions {positions:?} are not consecutive"
        )));
    }
    let last = start + positions.len() - 1;
    if last >= len {
        return Err(Error::IndexOutOfRange { index: last, len });
    }
    Ok(start)
}

/// Replaces four consecutive cycles matching `φ(∂1..∂4)` by `φ(A, B, C)`.
pub fn lantern_substitute(
    f: &Factorization,
    positions: [usize; 4],
    instance: &LanternInstance,
) -> Result<Factorization> {
    if instance.genus != f.fiber_genus {
        return Err(Error::PatternMismatch(format!(
            "lantern `{}` lives in genus {}",
            instance.name, instance.genus
        )));
    }
    let start = check_consecutive(&positions, f.len())?;
    let window = &f.cycles[start..start + 4];
    let phi = common_conjugator(f.fiber_genus, window, &instance.boundary)?.ok_or_else(|| {
        Error::PatternMismatch(format!(
            "cycles {start}..{} are not a conjugate of the boundary of `{}`",
            start + 3,
            instance.name
        ))
    })?;
    let replacement: Vec<Curve> = instance.interior.iter().map(|c| c.conjugated(&phi)).collect();

    let g = f.fiber_genus;
    let before = Factorization { fiber_genus: g, base_genus: 0, cycles: window.to_vec() }.evaluate()?;
    let after = Factorization { fiber_genus: g, base_genus: 0, cycles: replacement.clone() }.evaluate()?;
    if before != after {
        return Err(Error::PatternMismatch(
            "lantern substitution would change the homology action".into(),
        ));
    }
    let mut out = f.clone();
    out.cycles.splice(start..start + 4, replacement);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainDir {
    Expand,
    Contract,
}

impl FromStr for ChainDir {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "expand" => Ok(ChainDir::Expand),
            "contract" => Ok(ChainDir::Contract),
            _ => Err(Error::Precondition(format!(
                "chain direction must be expand or contract, got `{s}`"
            ))),
        }
    }
}

/// The twelve cycles of `(t1 t2)^6` in application order.
pub fn two_chain_cycles() -> Vec<Curve> {
    (0..12)
        .map(|k| Curve::chain(if k % 2 == 0 { 2 } else { 1 }))
        .collect()
}

/// Trades a conjugate of the `s1` twist for the twelve-twist chain word, or back.
pub fn chain_substitute(f: &Factorization, position: usize, dir: ChainDir) -> Result<Factorization> {
    let g = f.fiber_genus;
    if g < 2 {
        return Err(Error::Genus {
            genus: g,
            reason: "the separating curve s1 needs genus at least 2",
        });
    }
    let pattern = two_chain_cycles();
    let mut out = f.clone();
    match dir {
        ChainDir::Expand => {
            let c = f.cycles.get(position).ok_or(Error::IndexOutOfRange {
                index: position,
                len: f.len(),
            })?;
            if c.base != StdCurve::Sep {
                return Err(Error::PatternMismatch(format!(
                    "cycle {position} is {c}, not a conjugate of s1"
                )));
            }
            let phi = c.conj.clone();
            let replacement: Vec<Curve> = pattern.iter().map(|p| p.conjugated(&phi)).collect();
            out.cycles.splice(position..position + 1, replacement);
        }
        ChainDir::Contract => {
            let positions: Vec<usize> = (position..position + 12).collect();
            check_consecutive(&positions, f.len())?;
            let window = &f.cycles[position..position + 12];
            let phi = common_conjugator(g, window, &pattern)?.ok_or_else(|| {
                Error::PatternMismatch(format!(
                    "cycles {position}..{} are not a conjugate of (t1 t2)^6",
                    position + 11
                ))
            })?;
            let sep = Curve::new(StdCurve::Sep, phi);
            out.cycles.splice(position..position + 12, [sep]);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Level {
    Homology,
    ModP,
    Exact,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Homology => "homology",
            Level::ModP => "modp",
            Level::Exact => "exact",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "homology" => Ok(Level::Homology),
            "modp" | "mod_p" | "mod-p" => Ok(Level::ModP),
            "exact" => Ok(Level::Exact),
            _ => Err(Error::Precondition(format!(
                "level must be homology, modp or exact, got `{s}`"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub requested: Level,
    pub homology: bool,
    /// Per-prime triviality of the image mod p, when requested.
    pub mod_p: Option<Vec<(u64, bool)>>,
    /// `Some(w)` when the lift to the one-boundary surface is conjugation by `w`.
    pub exact: Option<Option<FreeWord>>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.achieved() == Some(self.requested)
    }

    /// The strongest level that passed, checking levels in order.
    pub fn achieved(&self) -> Option<Level> {
        if !self.homology {
            return None;
        }
        let mut best = Level::Homology;
        if let Some(ps) = &self.mod_p {
            if ps.iter().all(|&(_, ok)| ok) {
                best = Level::ModP;
            } else {
                return Some(best);
            }
        }
        if let Some(Some(_)) = &self.exact {
            best = Level::Exact;
        }
        Some(best)
    }
}

/// Checks that the monodromy is trivial at the requested level. The exact
/// level asks for the lift to the one-boundary surface to be a power of the
/// boundary twist (which implies triviality on the closed fiber).
pub fn identity_check(f: &Factorization, level: Level) -> Result<IdentityReport> {
    let g = f.fiber_genus;
    if level == Level::Exact && g > crate::surface::MAX_WORD_GENUS {
        return Err(Error::Genus {
            genus: g,
            reason: "exact identity checks need the free-group engine (genus 1 or 2)",
        });
    }
    let m = f.evaluate()?;
    let homology = m.is_identity();
    let mut report = IdentityReport {
        requested: level,
        homology,
        mod_p: None,
        exact: None,
    };
    if level >= Level::ModP {
        let id = crate::intlinalg::IntMatrix::identity(2 * g);
        report.mod_p = Some(
            SUPPORTED_PRIMES
                .iter()
                .map(|&p| (p, m.reduce_mod(p as i64) == id))
                .collect(),
        );
    }
    if level == Level::Exact {
        report.exact = Some(if homology {
            pi1::is_inner(&f.automorphism()?)
        } else {
            None
        });
    }
    Ok(report)
}
