//! Invariants of the total space of a Lefschetz fibration read off from its
//! monodromy factorization.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlinalg::{cokernel, smith_diagonal, AbelianGroupReport, IntMatrix};
use crate::monodromy::{identity_check, ns_type, CurveKind, Factorization, Level, NSType};
use crate::pi1::FreeWord;
use crate::surface::{surface_relator, MAX_WORD_GENUS};

/// `χ = (2 − 2g)(2 − 2h) + k`.
pub fn euler_characteristic(f: &Factorization) -> i64 {
    let g = f.fiber_genus as i64;
    let h = f.base_genus as i64;
    (2 - 2 * g) * (2 - 2 * h) + f.len() as i64
}

/// Signature of a genus-2 fibration of type `(n, s)`: `−(3n + s)/5`.
pub fn signature_from_type(t: NSType) -> Result<i64> {
    let num = 3 * t.n as i64 + t.s as i64;
    if num % 5 != 0 {
        return Err(Error::NonIntegral(format!(
            "signature -(3n+s)/5 = -{num}/5 is not an integer for type {t}; \
             no genus-2 fibration has this type (n + 12s must be divisible by 10)"
        )));
    }
    Ok(-num / 5)
}

pub fn signature_g2(f: &Factorization) -> Result<i64> {
    if f.fiber_genus != 2 {
        return Err(Error::Genus {
            genus: f.fiber_genus,
            reason: "the signature formula covers genus-2 fibers only",
        });
    }
    signature_from_type(ns_type(f)?)
}

fn class_matrix(f: &Factorization) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = f.classes()?.into_iter().map(|c| c.0).collect();
    IntMatrix::from_rows(2 * f.fiber_genus, &rows)
}

/// `H1(Σ_g) / ⟨vanishing classes⟩ ⊕ Z^{2h}`.
///
/// The formula presumes a section; without one the true group is a quotient
/// of the returned one. The flag is carried into reports, not into the math.
pub fn first_homology(f: &Factorization, _assume_section: bool) -> Result<AbelianGroupReport> {
    let mut h1 = cokernel(&class_matrix(f)?)?;
    h1.free_rank += 2 * f.base_genus;
    Ok(h1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Betti {
    /// `b0..b4`
    pub b: [i64; 5],
    pub b2_plus: Option<i64>,
    pub b2_minus: Option<i64>,
}

/// Betti numbers of the closed total space. Refuses words whose monodromy
/// is not the identity in homology.
pub fn betti_numbers(f: &Factorization) -> Result<Betti> {
    if !identity_check(f, Level::Homology)?.homology {
        return Err(Error::NotIdentity);
    }
    betti_unchecked(f)
}

fn betti_unchecked(f: &Factorization) -> Result<Betti> {
    let b1 = first_homology(f, true)?.free_rank as i64;
    let b2 = euler_characteristic(f) - 2 + 2 * b1;
    let (b2_plus, b2_minus) = if f.fiber_genus == 2 {
        let sigma = signature_g2(f)?;
        if (b2 + sigma) % 2 != 0 {
            return Err(Error::NonIntegral(format!(
                "b2+ = (b2 + σ)/2 = ({b2} + {sigma})/2"
            )));
        }
        (Some((b2 + sigma) / 2), Some((b2 - sigma) / 2))
    } else {
        (None, None)
    };
    Ok(Betti {
        b: [1, b1, b2, b1, 1],
        b2_plus,
        b2_minus,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub fiber_genus: usize,
    pub base_genus: usize,
    pub ns: NSType,
    pub euler: i64,
    pub signature: Option<i64>,
    pub h1: AbelianGroupReport,
    pub betti: [i64; 5],
    pub b2_plus: Option<i64>,
    pub b2_minus: Option<i64>,
    pub section_assumed: bool,
    pub identity_level: Level,
    /// `b2− ≥ s + 1` for genus 2; a violation means the word cannot come from
    /// an actual fibration.
    pub b2_minus_bound: Option<bool>,
}

/// Full invariant report. Requires the monodromy to be trivial in homology;
/// the strongest identity level reached is recorded.
pub fn invariant_report(f: &Factorization, assume_section: bool) -> Result<InvariantReport> {
    let level = if f.fiber_genus <= MAX_WORD_GENUS {
        Level::Exact
    } else {
        Level::ModP
    };
    let identity = identity_check(f, level)?;
    let identity_level = identity.achieved().ok_or(Error::NotIdentity)?;
    let ns = ns_type(f)?;
    let betti = betti_unchecked(f)?;
    let signature = if f.fiber_genus == 2 {
        Some(signature_g2(f)?)
    } else {
        None
    };
    Ok(InvariantReport {
        fiber_genus: f.fiber_genus,
        base_genus: f.base_genus,
        ns,
        euler: euler_characteristic(f),
        signature,
        h1: first_homology(f, assume_section)?,
        betti: betti.b,
        b2_plus: betti.b2_plus,
        b2_minus: betti.b2_minus,
        section_assumed: assume_section,
        identity_level,
        b2_minus_bound: betti.b2_minus.map(|m| m >= ns.s as i64 + 1),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PresentationBase {
    /// Fibration over a disk: no surface relator.
    Disk,
    /// Closed fibration over the sphere: the surface relator is added.
    Sphere,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<FreeWord>,
    pub section_assumed: bool,
}

impl Presentation {
    pub fn abelianization(&self) -> Result<AbelianGroupReport> {
        let n = self.generators.len();
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| r.abelianization(n)).collect();
        cokernel(&IntMatrix::from_rows(n, &rows)?)
    }
}

impl std::fmt::Display for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_string()).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

pub fn pi1_presentation(
    f: &Factorization,
    base: PresentationBase,
    assume_section: bool,
) -> Result<Presentation> {
    let g = f.fiber_genus;
    if g > MAX_WORD_GENUS {
        return Err(Error::Genus {
            genus: g,
            reason: "presentations need free-group words (genus 1 or 2)",
        });
    }
    if f.base_genus > 0 {
        return Err(Error::Precondition(
            "presentations over a base of positive genus are not supported".into(),
        ));
    }
    let generators = (1..=g).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect();
    let mut relators = f
        .cycles
        .iter()
        .map(|c| c.free_word(g))
        .collect::<Result<Vec<_>>>()?;
    if base == PresentationBase::Sphere {
        relators.push(surface_relator(g));
    }
    Ok(Presentation {
        generators,
        relators,
        section_assumed: assume_section,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiBoundReport {
    pub b1: i64,
    pub bound: i64,
    pub within_bound: bool,
    /// Two nonseparating cycles with different homology classes (up to sign).
    pub witness: Option<(usize, usize)>,
    pub identity_passed: bool,
}

impl BettiBoundReport {
    pub fn passed(&self) -> bool {
        self.identity_passed && self.within_bound && self.witness.is_some()
    }
}

/// Checks `b1 ≤ 2g + 2h − 2` and looks for two nonhomologous nonseparating
/// vanishing cycles. A nontrivial word without such a pair cannot be the
/// monodromy of a fibration.
pub fn betti_bound_check(f: &Factorization) -> Result<BettiBoundReport> {
    if f.is_empty() {
        return Err(Error::Precondition(
            "the bound applies to nontrivial fibrations only".into(),
        ));
    }
    let g = f.fiber_genus;
    let identity_passed = identity_check(f, Level::Homology)?.homology;
    let b1 = first_homology(f, true)?.free_rank as i64;
    let bound = 2 * g as i64 + 2 * f.base_genus as i64 - 2;
    let classes = f.classes()?;
    let nonsep: Vec<usize> = (0..f.len())
        .filter(|&i| f.cycles[i].kind(g).map(|k| k == CurveKind::Nonseparating).unwrap_or(false))
        .collect();
    let witness = nonsep.iter().enumerate().find_map(|(k, &i)| {
        nonsep[k + 1..]
            .iter()
            .find(|&&j| !classes[i].same_up_to_sign(&classes[j]))
            .map(|&j| (i, j))
    });
    Ok(BettiBoundReport {
        b1,
        bound,
        within_bound: b1 <= bound,
        witness,
        identity_passed,
    })
}

/// Index pairs whose classes extend to an integral basis of `H1(Σ_g)`.
pub fn basis_pair_search(f: &Factorization) -> Result<Vec<(usize, usize)>> {
    let classes = f.classes()?;
    let dim = 2 * f.fiber_genus;
    let mut out = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let m = IntMatrix::from_rows(dim, &[classes[i].0.clone(), classes[j].0.clone()])?;
            if smith_diagonal(&m)? == [1, 1] {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}
