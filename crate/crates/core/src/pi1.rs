//! Free-group engine for fibers of genus 1 and 2.
//!
//! The fundamental group of the one-boundary surface `Σ_{g,1}` is free on
//! `a1, b1, ..., ag, bg`, and its mapping class group acts faithfully on it.
//! A mapping class of the closed surface is trivial when some lift is a power
//! of the boundary twist, which acts as conjugation by the boundary word; so
//! identity checks reduce to [`is_inner`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::surface::{StdCurve, Twist};

pub const A1: i8 = 1;
pub const B1: i8 = 2;
pub const A2: i8 = 3;
pub const B2: i8 = 4;

/// A freely reduced word. Letter `k > 0` is the k-th generator
/// (`a1, b1, a2, b2, ...`), `-k` its inverse.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(Vec<i8>);

impl FreeWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: &[i8]) -> Self {
        let mut w = Self::empty();
        for &x in letters {
            w.push(x);
        }
        w
    }

    pub fn generator(k: i8) -> Self {
        Self(vec![k])
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, x: i8) {
        debug_assert!(x != 0);
        if self.0.last() == Some(&-x) {
            self.0.pop();
        } else {
            self.0.push(x);
        }
    }

    fn extend(&mut self, w: &FreeWord) {
        for &x in &w.0 {
            self.push(x);
        }
    }

    fn extend_inverse(&mut self, w: &FreeWord) {
        for &x in w.0.iter().rev() {
            self.push(-x);
        }
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Self::empty();
        for _ in 0..k.unsigned_abs() {
            w.extend(&base);
        }
        w
    }

    /// `self · x · self⁻¹`
    pub fn conjugate(&self, x: &FreeWord) -> Self {
        let mut w = self.clone();
        w.extend(x);
        w.extend_inverse(self);
        w
    }

    /// Exponent sums, one per generator.
    pub fn abelianization(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for &x in &self.0 {
            let k = x.unsigned_abs() as usize - 1;
            if k < rank {
                v[k] += i64::from(x.signum());
            }
        }
        v
    }

    /// Highest generator index used.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Writes `self = p · core · p⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduction(&self) -> (FreeWord, FreeWord) {
        let w = &self.0;
        let (mut i, mut j) = (0usize, w.len());
        while j >= i + 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        (Self(w[..i].to_vec()), Self(w[i..j].to_vec()))
    }

    /// Canonical representative of the unoriented conjugacy class: the least
    /// rotation of the cyclically reduced word or of its inverse.
    pub fn conjugacy_normal_form(&self) -> FreeWord {
        let core = self.cyclic_reduction().1;
        let best_rotation = |w: &[i8]| -> Vec<i8> {
            (0..w.len().max(1))
                .map(|r| {
                    let mut v = w[r.min(w.len())..].to_vec();
                    v.extend_from_slice(&w[..r.min(w.len())]);
                    v
                })
                .min()
                .unwrap_or_default()
        };
        let fwd = best_rotation(&core.0);
        let back = best_rotation(&core.inverse().0);
        FreeWord(fwd.min(back))
    }
}

fn letter_name(x: i8) -> String {
    let k = x.unsigned_abs() as usize - 1;
    let base = if k % 2 == 0 { 'a' } else { 'b' };
    let base = if x < 0 { base.to_ascii_uppercase() } else { base };
    format!("{base}{}", k / 2 + 1)
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let names: Vec<String> = self.0.iter().map(|&x| letter_name(x)).collect();
        f.write_str(&names.join(" "))
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({self})")
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    /// Space-separated letters such as `"a1 B2 b1"`; `"1"` is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let mut w = FreeWord::empty();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let mut chars = tok.chars();
            let head = chars.next().unwrap();
            let idx: i8 = chars
                .as_str()
                .parse()
                .ok()
                .filter(|&i: &i8| (1..=63).contains(&i))
                .ok_or_else(|| Error::UnknownLabel(tok.to_string()))?;
            let letter = match head {
                'a' => 2 * idx - 1,
                'b' => 2 * idx,
                'A' => -(2 * idx - 1),
                'B' => -(2 * idx),
                _ => return Err(Error::UnknownLabel(tok.to_string())),
            };
            w.push(letter);
        }
        Ok(w)
    }
}

/// An automorphism of the free group of rank `2g`, kept together with the
/// twist word it came from. Equality compares generator images only.
#[derive(Clone, Debug)]
pub struct TwistAutomorphism {
    pub images: Vec<FreeWord>,
    pub label: Vec<Twist>,
}

impl PartialEq for TwistAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for TwistAutomorphism {}

impl std::hash::Hash for TwistAutomorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl TwistAutomorphism {
    pub fn identity(rank: usize) -> Self {
        Self {
            images: (1..=rank as i8).map(FreeWord::generator).collect(),
            label: Vec::new(),
        }
    }

    /// `x ↦ w x w⁻¹`
    pub fn conjugation(rank: usize, w: &FreeWord) -> Self {
        Self {
            images: (1..=rank as i8)
                .map(|k| w.conjugate(&FreeWord::generator(k)))
                .collect(),
            label: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut out = FreeWord::empty();
        for &x in &w.0 {
            let img = &self.images[x.unsigned_abs() as usize - 1];
            if x > 0 {
                out.extend(img);
            } else {
                out.extend_inverse(img);
            }
        }
        out
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &TwistAutomorphism) -> TwistAutomorphism {
        let mut label = self.label.clone();
        label.extend_from_slice(&other.label);
        TwistAutomorphism {
            images: other.images.iter().map(|w| self.apply(w)).collect(),
            label,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, w)| w.0 == [k as i8 + 1])
    }

    /// Total letter count of the generator images.
    pub fn weight(&self) -> usize {
        self.images.iter().map(FreeWord::len).sum()
    }

    /// Abelianized action as a matrix: column `k` is the exponent vector of
    /// the image of generator `k`.
    pub fn abelianization(&self) -> crate::intlinalg::IntMatrix {
        let n = self.rank();
        let mut m = crate::intlinalg::IntMatrix::zeros(n, n);
        for (k, w) in self.images.iter().enumerate() {
            for (i, x) in w.abelianization(n).into_iter().enumerate() {
                m.set(i, k, x);
            }
        }
        m
    }
}

fn words(rows: &[&[i8]]) -> Vec<FreeWord> {
    rows.iter().map(|r| FreeWord::from_letters(r)).collect()
}

fn check_engine_genus(genus: usize) -> Result<()> {
    if genus == 0 || genus > crate::surface::MAX_WORD_GENUS {
        return Err(Error::Genus {
            genus,
            reason: "the free-group engine covers genus 1 and 2 only",
        });
    }
    Ok(())
}

/// Generator images of a single twist about a standard curve.
pub fn twist_automorphism(genus: usize, t: Twist) -> Result<TwistAutomorphism> {
    check_engine_genus(genus)?;
    t.curve.validate(genus)?;
    use StdCurve::*;
    // Each table: images of a1, b1 (, a2, b2).
    let images: Vec<FreeWord> = match (genus, t.curve, t.inverse) {
        (1, Chain(1 | 3), false) => words(&[&[A1], &[B1, A1]]),
        (1, Chain(1 | 3), true) => words(&[&[A1], &[B1, -A1]]),
        (1, Chain(2), false) => words(&[&[A1, -B1], &[B1]]),
        (1, Chain(2), true) => words(&[&[A1, B1], &[B1]]),
        (2, Chain(1), false) => words(&[&[A1], &[B1, A1], &[A2], &[B2]]),
        (2, Chain(1), true) => words(&[&[A1], &[B1, -A1], &[A2], &[B2]]),
        (2, Chain(2), false) => words(&[&[A1, -B1], &[B1], &[A2], &[B2]]),
        (2, Chain(2), true) => words(&[&[A1, B1], &[B1], &[A2], &[B2]]),
        (2, Chain(3), false) => words(&[
            &[A1],
            &[A2, B2, A2, -B2, -A2, B1, A1],
            &[A2],
            &[B2, A2, -B2, -A2, B1, A1, -B1, A2, B2],
        ]),
        (2, Chain(3), true) => words(&[
            &[A1],
            &[B1, -A1, -B1, A2, B2, -A2, -B2, -A2, B1],
            &[A2],
            &[-A2, B1, -A1, -B1, A2, B2, -A2],
        ]),
        (2, Chain(4), false) => words(&[&[A1], &[B1], &[A2, -B2], &[B2]]),
        (2, Chain(4), true) => words(&[&[A1], &[B1], &[A2, B2], &[B2]]),
        (2, Chain(5), false) => words(&[&[A1], &[B1], &[A2], &[B2, A2]]),
        (2, Chain(5), true) => words(&[&[A1], &[B1], &[A2], &[B2, -A2]]),
        (2, Sep, inverse) => {
            // Conjugation of the first handle by [b1,a1] (or its inverse).
            let c = if inverse {
                FreeWord::from_letters(&[A1, B1, -A1, -B1])
            } else {
                FreeWord::from_letters(&[B1, A1, -B1, -A1])
            };
            vec![
                c.conjugate(&FreeWord::generator(A1)),
                c.conjugate(&FreeWord::generator(B1)),
                FreeWord::generator(A2),
                FreeWord::generator(B2),
            ]
        }
        _ => unreachable!("validated above"),
    };
    Ok(TwistAutomorphism {
        images,
        label: vec![t],
    })
}

/// The automorphism of a twist word written in composition order: the
/// rightmost letter acts first.
pub fn compose(genus: usize, word: &[Twist]) -> Result<TwistAutomorphism> {
    check_engine_genus(genus)?;
    let mut acc = TwistAutomorphism::identity(2 * genus);
    for &t in word {
        acc = acc.compose(&twist_automorphism(genus, t)?);
    }
    Ok(acc)
}

pub fn apply(aut: &TwistAutomorphism, w: &FreeWord) -> FreeWord {
    aut.apply(w)
}

/// If `aut` is inner, returns `w` with `aut(x) = w x w⁻¹` for every generator.
///
/// Writing `aut(a1) = p a1 p⁻¹`, every solution has the form `p a1^k`; `k` is
/// searched in `|k| ≤` the total image length, which is enough because each
/// extra power of `a1` lengthens the image of some other generator.
pub fn is_inner(aut: &TwistAutomorphism) -> Option<FreeWord> {
    let rank = aut.rank();
    if rank == 0 {
        return Some(FreeWord::empty());
    }
    let (p, core) = aut.images[0].cyclic_reduction();
    if core.0 != [A1] {
        return None;
    }
    let bound = aut.weight() as i64;
    let a1 = FreeWord::generator(A1);
    let mut ks = vec![0i64];
    for k in 1..=bound {
        ks.push(k);
        ks.push(-k);
    }
    ks.into_iter().find_map(|k| {
        let w = p.mul(&a1.pow(k));
        (1..rank)
            .all(|g| w.conjugate(&FreeWord::generator(g as i8 + 1)) == aut.images[g])
            .then_some(w)
    })
}

/// The boundary word `[a1,b1]...[ag,bg]` of the one-boundary surface.
pub fn boundary_word(genus: usize) -> FreeWord {
    crate::surface::surface_relator(genus)
}
