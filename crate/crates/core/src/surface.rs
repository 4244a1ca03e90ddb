//! The closed genus-g fiber: homology lattice, intersection form and the
//! standard curves.
//!
//! Basis order is `a1, b1, ..., ag, bg` with `î(a_i, b_i) = -1`. The chain is
//! `c1 = a1`, `c_{2i} = b_i`, `c_{2i+1} = a_i + a_{i+1}`, `c_{2g+1} = a_g`; the
//! standard separating curve `s1` cuts off the handle carrying `a1, b1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;
use crate::pi1::FreeWord;

/// A vector in `H1(Σ_g; Z)` written in the ordered basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyClass(pub Vec<i64>);

impl HomologyClass {
    pub fn zero(genus: usize) -> Self {
        Self(vec![0; 2 * genus])
    }

    /// The basis vector `a_i` (1-based).
    pub fn a(genus: usize, i: usize) -> Self {
        let mut v = Self::zero(genus);
        v.0[2 * (i - 1)] = 1;
        v
    }

    /// The basis vector `b_i` (1-based).
    pub fn b(genus: usize, i: usize) -> Self {
        let mut v = Self::zero(genus);
        v.0[2 * (i - 1) + 1] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self, other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow("homology sum")))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        self.0
            .iter()
            .map(|x| x.checked_mul(k).ok_or(Error::Overflow("homology scaling")))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    /// Equal up to sign. Unoriented curves only determine their class up to sign.
    pub fn same_up_to_sign(&self, other: &Self) -> bool {
        *self == *other || *self == other.neg()
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = format!("{}{}", if k % 2 == 0 { 'a' } else { 'b' }, k / 2 + 1);
            let term = match c {
                1 => format!("+{name}"),
                -1 => format!("-{name}"),
                c if c > 0 => format!("+{c}{name}"),
                c => format!("{c}{name}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let s = terms.concat();
        write!(f, "{}", s.strip_prefix('+').unwrap_or(&s))
    }
}

fn check_dims(x: &HomologyClass, y: &HomologyClass) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::Dimension(format!(
            "homology classes of length {} and {}",
            x.dim(),
            y.dim()
        )));
    }
    Ok(())
}

/// One of the standard curves: a chain curve `c_i` or the separating `s1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StdCurve {
    Chain(usize),
    Sep,
}

impl StdCurve {
    pub fn label(self) -> String {
        match self {
            StdCurve::Chain(i) => format!("c{i}"),
            StdCurve::Sep => "s1".to_string(),
        }
    }

    /// Whether the label names a curve on the genus-g surface.
    pub fn valid_for(self, genus: usize) -> bool {
        match self {
            StdCurve::Chain(i) => (1..=2 * genus + 1).contains(&i),
            StdCurve::Sep => genus >= 2,
        }
    }

    pub fn validate(self, genus: usize) -> Result<Self> {
        if self.valid_for(genus) {
            Ok(self)
        } else {
            Err(Error::UnknownLabel(format!("{} (genus {genus})", self.label())))
        }
    }

    /// Geometric intersection number between two standard curves.
    pub fn geometric_intersection(self, other: StdCurve) -> u32 {
        use StdCurve::*;
        match (self, other) {
            (Chain(i), Chain(j)) => u32::from(i.abs_diff(j) == 1),
            (Sep, Sep) => 0,
            (Sep, Chain(i)) | (Chain(i), Sep) => {
                if i == 3 {
                    2
                } else {
                    0
                }
            }
        }
    }

    /// True when the twist about `self` fixes `other` up to isotopy.
    pub fn commutes_with(self, other: StdCurve) -> bool {
        self.geometric_intersection(other) == 0
    }
}

impl fmt::Display for StdCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for StdCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "s1" {
            return Ok(StdCurve::Sep);
        }
        s.strip_prefix('c')
            .filter(|rest| !rest.starts_with('0') && !rest.starts_with('+'))
            .and_then(|rest| rest.parse::<usize>().ok())
            .map(StdCurve::Chain)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// A signed twist letter used inside conjugating words: `t3` is the positive
/// twist about `c3`, `T3` its inverse, `s1`/`S1` likewise for the separating
/// curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Twist {
    pub curve: StdCurve,
    pub inverse: bool,
}

impl Twist {
    pub fn pos(curve: StdCurve) -> Self {
        Self {
            curve,
            inverse: false,
        }
    }

    pub fn neg(curve: StdCurve) -> Self {
        Self {
            curve,
            inverse: true,
        }
    }

    pub fn chain(i: usize) -> Self {
        Self::pos(StdCurve::Chain(i))
    }

    pub fn inv(self) -> Self {
        Self {
            curve: self.curve,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn token(self) -> String {
        match (self.curve, self.inverse) {
            (StdCurve::Chain(i), false) => format!("t{i}"),
            (StdCurve::Chain(i), true) => format!("T{i}"),
            (StdCurve::Sep, false) => "s1".to_string(),
            (StdCurve::Sep, true) => "S1".to_string(),
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

impl FromStr for Twist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s1" => return Ok(Twist::pos(StdCurve::Sep)),
            "S1" => return Ok(Twist::neg(StdCurve::Sep)),
            _ => {}
        }
        let mut chars = s.chars();
        let inverse = match chars.next() {
            Some('t') => false,
            Some('T') => true,
            _ => return Err(Error::UnknownLabel(s.to_string())),
        };
        let rest = chars.as_str();
        if rest.is_empty() || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::UnknownLabel(s.to_string()));
        }
        let i = rest
            .parse::<usize>()
            .map_err(|_| Error::UnknownLabel(s.to_string()))?;
        Ok(Twist {
            curve: StdCurve::Chain(i),
            inverse,
        })
    }
}

/// Parses a whitespace-separated twist word such as `"t1 t2 T3"`.
pub fn parse_twist_word(text: &str) -> Result<Vec<Twist>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

/// Inverse of a twist word: reversed, each letter inverted.
pub fn invert_word(word: &[Twist]) -> Vec<Twist> {
    word.iter().rev().map(|t| t.inv()).collect()
}

/// Free reduction of a twist word (cancels `t_i T_i` pairs).
pub fn reduce_word(word: &[Twist]) -> Vec<Twist> {
    let mut out: Vec<Twist> = Vec::with_capacity(word.len());
    for &t in word {
        if out.last() == Some(&t.inv()) {
            out.pop();
        } else {
            out.push(t);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StdCurveRecord {
    pub curve: StdCurve,
    pub class: HomologyClass,
    /// Free-group representative on the one-boundary surface (genus ≤ 2 only).
    pub word: Option<FreeWord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub genus: usize,
    pub j: IntMatrix,
    pub chain: Vec<StdCurveRecord>,
    pub separating: Vec<StdCurveRecord>,
    /// Geometric intersection counts between chain curves.
    pub chain_intersections: Vec<Vec<u32>>,
}

/// Largest genus with a free-group engine.
pub const MAX_WORD_GENUS: usize = 2;

/// The intersection form in the ordered basis.
pub fn intersection_form(genus: usize) -> IntMatrix {
    let n = 2 * genus;
    let mut j = IntMatrix::zeros(n, n);
    for i in 0..genus {
        j.set(2 * i, 2 * i + 1, -1);
        j.set(2 * i + 1, 2 * i, 1);
    }
    j
}

/// Homology class of a chain curve.
pub fn chain_class(genus: usize, i: usize) -> HomologyClass {
    assert!((1..=2 * genus + 1).contains(&i));
    if i == 2 * genus + 1 {
        HomologyClass::a(genus, genus)
    } else if i == 1 {
        HomologyClass::a(genus, 1)
    } else if i % 2 == 0 {
        HomologyClass::b(genus, i / 2)
    } else {
        let k = (i - 1) / 2;
        let mut v = HomologyClass::a(genus, k);
        v.0[2 * k] = 1;
        v
    }
}

/// Homology class of a standard curve.
pub fn std_class(genus: usize, c: StdCurve) -> HomologyClass {
    match c {
        StdCurve::Chain(i) => chain_class(genus, i),
        StdCurve::Sep => HomologyClass::zero(genus),
    }
}

/// Free-group word of a standard curve on the one-boundary surface.
pub fn std_word(genus: usize, c: StdCurve) -> Option<FreeWord> {
    use crate::pi1::{A1, A2, B1, B2};
    match (genus, c) {
        (1, StdCurve::Chain(1 | 3)) => Some(FreeWord::from_letters(&[A1])),
        (1, StdCurve::Chain(2)) => Some(FreeWord::from_letters(&[B1])),
        (2, StdCurve::Chain(1)) => Some(FreeWord::from_letters(&[A1])),
        (2, StdCurve::Chain(2)) => Some(FreeWord::from_letters(&[B1])),
        (2, StdCurve::Chain(3)) => Some(FreeWord::from_letters(&[
            A1, -B1, A2, B2, A2, -B2, -A2, B1,
        ])),
        (2, StdCurve::Chain(4)) => Some(FreeWord::from_letters(&[B2])),
        (2, StdCurve::Chain(5)) => Some(FreeWord::from_letters(&[A2])),
        (2, StdCurve::Sep) => Some(FreeWord::from_letters(&[A1, B1, -A1, -B1])),
        _ => None,
    }
}

/// The closed-surface relator `[a1,b1]...[ag,bg]`.
pub fn surface_relator(genus: usize) -> FreeWord {
    let mut letters = Vec::with_capacity(4 * genus);
    for i in 0..genus as i8 {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        letters.extend_from_slice(&[a, b, -a, -b]);
    }
    FreeWord::from_letters(&letters)
}

pub fn standard_surface(genus: usize) -> Result<SurfaceModel> {
    if genus == 0 {
        return Err(Error::Genus {
            genus,
            reason: "sphere fibers are not supported",
        });
    }
    let chain = (1..=2 * genus + 1)
        .map(|i| {
            let curve = StdCurve::Chain(i);
            StdCurveRecord {
                curve,
                class: chain_class(genus, i),
                word: std_word(genus, curve),
            }
        })
        .collect();
    let separating = if genus >= 2 {
        vec![StdCurveRecord {
            curve: StdCurve::Sep,
            class: HomologyClass::zero(genus),
            word: std_word(genus, StdCurve::Sep),
        }]
    } else {
        Vec::new()
    };
    let n = 2 * genus + 1;
    let chain_intersections = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| StdCurve::Chain(i).geometric_intersection(StdCurve::Chain(j)))
                .collect()
        })
        .collect();
    Ok(SurfaceModel {
        genus,
        j: intersection_form(genus),
        chain,
        separating,
        chain_intersections,
    })
}

impl SurfaceModel {
    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn record(&self, c: StdCurve) -> Result<&StdCurveRecord> {
        match c.validate(self.genus)? {
            StdCurve::Chain(i) => Ok(&self.chain[i - 1]),
            StdCurve::Sep => Ok(&self.separating[0]),
        }
    }

    pub fn intersect(&self, x: &HomologyClass, y: &HomologyClass) -> Result<i64> {
        if x.dim() != self.dim() {
            return Err(Error::Dimension(format!(
                "class of length {} on a genus-{} surface",
                x.dim(),
                self.genus
            )));
        }
        algebraic_intersection(x, y)
    }
}

/// `î(x, y) = xᵀ J y`.
pub fn algebraic_intersection(x: &HomologyClass, y: &HomologyClass) -> Result<i64> {
    check_dims(x, y)?;
    if x.dim() % 2 != 0 {
        return Err(Error::Dimension(format!("odd length {}", x.dim())));
    }
    let mut total: i64 = 0;
    for k in (0..x.dim()).step_by(2) {
        // x_a * (-y_b) + x_b * y_a
        let t = x.0[k + 1]
            .checked_mul(y.0[k])
            .zip(x.0[k].checked_mul(y.0[k + 1]))
            .and_then(|(p, q)| p.checked_sub(q))
            .and_then(|d| total.checked_add(d))
            .ok_or(Error::Overflow("intersection pairing"))?;
        total = t;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_shape() {
        let s = standard_surface(2).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.chain.len(), 5);
        assert_eq!(s.separating.len(), 1);
        assert!(s.chain.iter().all(|r| r.word.is_some()));
    }

    #[test]
    fn genus_one_and_three_shapes() {
        let s1 = standard_surface(1).unwrap();
        assert_eq!((s1.dim(), s1.chain.len(), s1.separating.len()), (2, 3, 0));
        let s3 = standard_surface(3).unwrap();
        assert_eq!((s3.dim(), s3.chain.len()), (6, 7));
        assert!(s3.chain.iter().all(|r| r.word.is_none()));
        assert!(standard_surface(0).is_err());
    }

    #[test]
    fn basis_pairing_sign() {
        let a1 = HomologyClass::a(2, 1);
        let b1 = HomologyClass::b(2, 1);
        assert_eq!(algebraic_intersection(&a1, &b1).unwrap(), -1);
        assert_eq!(algebraic_intersection(&b1, &a1).unwrap(), 1);
        assert_eq!(algebraic_intersection(&a1, &a1).unwrap(), 0);
        assert_eq!(
            algebraic_intersection(&a1, &HomologyClass::b(2, 2)).unwrap(),
            0
        );
    }

    #[test]
    fn pairing_matches_form_matrix() {
        let j = intersection_form(3);
        let x = HomologyClass(vec![1, -2, 3, 0, 5, 1]);
        let y = HomologyClass(vec![0, 4, -1, 2, 2, -3]);
        let jy = j.apply(&y.0).unwrap();
        let direct: i64 = x.0.iter().zip(&jy).map(|(a, b)| a * b).sum();
        assert_eq!(algebraic_intersection(&x, &y).unwrap(), direct);
    }

    #[test]
    fn chain_pattern_all_genera() {
        for g in 1..=5 {
            let n = 2 * g + 1;
            for i in 1..=n {
                for k in 1..=n {
                    let p = algebraic_intersection(&chain_class(g, i), &chain_class(g, k)).unwrap();
                    if i.abs_diff(k) == 1 {
                        assert_eq!(p.abs(), 1, "g={g} c{i} c{k}");
                    } else {
                        assert_eq!(p, 0, "g={g} c{i} c{k}");
                    }
                }
            }
        }
    }

    #[test]
    fn genus_two_chain_classes() {
        let c: Vec<_> = (1..=5).map(|i| chain_class(2, i).0).collect();
        assert_eq!(c[0], vec![1, 0, 0, 0]);
        assert_eq!(c[1], vec![0, 1, 0, 0]);
        assert_eq!(c[2], vec![1, 0, 1, 0]);
        assert_eq!(c[3], vec![0, 0, 0, 1]);
        assert_eq!(c[4], vec![0, 0, 1, 0]);
    }

    #[test]
    fn chain_classes_span_lattice() {
        let rows: Vec<Vec<i64>> = (1..=5).map(|i| chain_class(2, i).0).collect();
        let m = IntMatrix::from_rows(4, &rows).unwrap();
        assert!(crate::intlinalg::cokernel(&m).unwrap().is_trivial());
    }

    #[test]
    fn form_is_unimodular_and_squares_to_minus_one() {
        for g in 1..=4 {
            let j = intersection_form(g);
            assert_eq!(j.transpose().entries(), j.entries().iter().map(|x| -x).collect::<Vec<_>>());
            assert_eq!(j.determinant().unwrap(), 1);
            let jj = j.mul(&j).unwrap();
            let minus = IntMatrix::new(
                2 * g,
                2 * g,
                IntMatrix::identity(2 * g).entries().iter().map(|x| -x).collect(),
            )
            .unwrap();
            assert_eq!(jj, minus);
        }
    }

    #[test]
    fn relators_abelianize_to_zero() {
        assert_eq!(surface_relator(1).to_string(), "a1 b1 A1 B1");
        assert_eq!(surface_relator(2).to_string(), "a1 b1 A1 B1 a2 b2 A2 B2");
        for g in 1..=3 {
            assert!(surface_relator(g).abelianization(2 * g).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn separating_word_is_null_homologous() {
        let w = std_word(2, StdCurve::Sep).unwrap();
        assert_eq!(w.abelianization(4), vec![0, 0, 0, 0]);
    }

    #[test]
    fn words_abelianize_to_classes() {
        for i in 1..=5 {
            let w = std_word(2, StdCurve::Chain(i)).unwrap();
            assert_eq!(w.abelianization(4), chain_class(2, i).0, "c{i}");
        }
    }

    #[test]
    fn label_parsing() {
        assert_eq!("c3".parse::<StdCurve>().unwrap(), StdCurve::Chain(3));
        assert_eq!("s1".parse::<StdCurve>().unwrap(), StdCurve::Sep);
        assert!("c0".parse::<StdCurve>().is_err());
        assert!("x1".parse::<StdCurve>().is_err());
        assert!(!StdCurve::Chain(9).valid_for(2));
        assert!(!StdCurve::Sep.valid_for(1));
        let w = parse_twist_word("t1 T3 s1 S1").unwrap();
        assert_eq!(
            w.iter().map(|t| t.token()).collect::<Vec<_>>(),
            ["t1", "T3", "s1", "S1"]
        );
        assert!("t".parse::<Twist>().is_err());
        assert!("q2".parse::<Twist>().is_err());
    }

    #[test]
    fn class_display() {
        assert_eq!(chain_class(2, 3).to_string(), "a1+a2");
        assert_eq!(HomologyClass(vec![0, -1, 2, 0]).to_string(), "-b1+2a2");
        assert_eq!(HomologyClass::zero(2).to_string(), "0");
    }
}
