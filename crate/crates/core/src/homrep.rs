//! The symplectic representation `Ψ: Mod(Σ_g) → Sp(2g, Z)` and finite
//! quotient closures.

use std::collections::{HashSet, VecDeque};
use std::ops::Deref;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlinalg::{preserves_form, IntMatrix};
use crate::surface::{intersection_form, std_class, HomologyClass, Twist};

/// A `2g × 2g` integer matrix preserving the intersection form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpMatrix(IntMatrix);

impl SpMatrix {
    pub fn identity(genus: usize) -> Self {
        Self(IntMatrix::identity(2 * genus))
    }

    /// Wraps `m` after checking that it preserves the form.
    pub fn new(m: IntMatrix) -> Result<Self> {
        if m.rows() % 2 != 0 {
            return Err(Error::Dimension(format!("odd size {}", m.rows())));
        }
        let j = intersection_form(m.rows() / 2);
        if !preserves_form(&m, &j)? {
            return Err(Error::Precondition(
                "matrix does not preserve the intersection form".into(),
            ));
        }
        Ok(Self(m))
    }

    pub fn genus(&self) -> usize {
        self.0.rows() / 2
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn mul(&self, other: &SpMatrix) -> Result<SpMatrix> {
        Ok(Self(self.0.mul(&other.0)?))
    }

    /// `M⁻¹ = -J Mᵀ J` for symplectic `M`.
    pub fn inverse(&self) -> Result<SpMatrix> {
        let j = intersection_form(self.genus());
        let t = j.mul(&self.0.transpose())?.mul(&j)?;
        let neg = t.entries().iter().map(|x| -x).collect();
        Ok(Self(IntMatrix::new(t.rows(), t.cols(), neg)?))
    }

    pub fn is_identity(&self) -> bool {
        self.0 == IntMatrix::identity(self.0.rows())
    }
}

impl Deref for SpMatrix {
    type Target = IntMatrix;

    fn deref(&self) -> &IntMatrix {
        &self.0
    }
}

/// `T^k: x ↦ x + k·î(x, c)·c`.
pub fn transvection_power(c: &HomologyClass, k: i64) -> Result<SpMatrix> {
    let n = c.dim();
    if n == 0 || n % 2 != 0 {
        return Err(Error::Dimension(format!("class of length {n}")));
    }
    let j = intersection_form(n / 2);
    let jc = j.apply(c.coeffs())?;
    let mut m = IntMatrix::identity(n);
    for r in 0..n {
        for s in 0..n {
            let add = c.coeffs()[r]
                .checked_mul(jc[s])
                .and_then(|x| x.checked_mul(k))
                .and_then(|x| x.checked_add(m.get(r, s)))
                .ok_or(Error::Overflow("transvection"))?;
            m.set(r, s, add);
        }
    }
    Ok(SpMatrix(m))
}

/// The action of the positive twist about a curve of class `c`.
pub fn transvection(c: &HomologyClass) -> Result<SpMatrix> {
    transvection_power(c, 1)
}

/// Matrix of a single standard twist letter.
pub fn twist_matrix(genus: usize, t: Twist) -> Result<SpMatrix> {
    t.curve.validate(genus)?;
    transvection_power(&std_class(genus, t.curve), t.sign())
}

/// `Ψ` of a twist word written in composition order (rightmost acts first):
/// the product of the letter matrices in written order.
pub fn evaluate_word(genus: usize, word: &[Twist]) -> Result<SpMatrix> {
    let mut acc = SpMatrix::identity(genus);
    for &t in word {
        acc = acc.mul(&twist_matrix(genus, t)?)?;
    }
    Ok(acc)
}

/// Order of `Sp(2g, F_p)`: `p^{g²} ∏_{i=1..g} (p^{2i} − 1)`.
pub fn sp_order(genus: usize, p: u64) -> u64 {
    let mut order = p.pow((genus * genus) as u32);
    for i in 1..=genus {
        order *= p.pow(2 * i as u32) - 1;
    }
    order
}

pub const SUPPORTED_PRIMES: [u64; 3] = [2, 3, 5];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeClosure {
    pub prime: u64,
    pub order: u64,
    pub target_order: u64,
    pub surjective: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TransitivityVerdict {
    /// Every tested quotient is hit: the necessary condition holds.
    ConsistentWithTransitive,
    /// Some finite quotient is missed, so the integral image is proper.
    NotTransitive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityCertificate {
    pub primes: Vec<PrimeClosure>,
    pub verdict: TransitivityVerdict,
}

/// Matrices mod p packed three bits per entry.
struct ModP {
    n: usize,
    p: u8,
}

impl ModP {
    fn pack(&self, m: &[u8]) -> u64 {
        m.iter().fold(0u64, |acc, &x| (acc << 3) | u64::from(x))
    }

    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u32;
                for k in 0..n {
                    s += u32::from(a[i * n + k]) * u32::from(b[k * n + j]);
                }
                out[i * n + j] = (s % u32::from(self.p)) as u8;
            }
        }
    }
}

/// Breadth-first closure of the subgroup of `Sp(2g, F_p)` generated by the
/// reductions of `generators`.
pub fn mod_p_closure(generators: &[SpMatrix], genus: usize, p: u64) -> Result<PrimeClosure> {
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(Error::Precondition(format!(
            "prime {p} not supported (use 2, 3 or 5)"
        )));
    }
    if genus == 0 || genus > 2 {
        return Err(Error::Genus {
            genus,
            reason: "finite closures are limited to genus 1 and 2",
        });
    }
    let n = 2 * genus;
    if let Some(bad) = generators.iter().find(|g| g.rows() != n) {
        return Err(Error::Dimension(format!(
            "generator of size {} for genus {genus}",
            bad.rows()
        )));
    }
    let ctx = ModP { n, p: p as u8 };
    let gens: Vec<Vec<u8>> = generators
        .iter()
        .map(|g| {
            g.reduce_mod(p as i64)
                .entries()
                .iter()
                .map(|&x| x as u8)
                .collect()
        })
        .collect();
    let id: Vec<u8> = IntMatrix::identity(n)
        .entries()
        .iter()
        .map(|&x| x as u8)
        .collect();

    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(ctx.pack(&id));
    let mut queue = VecDeque::from([id]);
    let mut buf = vec![0u8; n * n];
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            ctx.mul(&x, g, &mut buf);
            if seen.insert(ctx.pack(&buf)) {
                queue.push_back(buf.clone());
            }
        }
    }
    let order = seen.len() as u64;
    let target_order = sp_order(genus, p);
    Ok(PrimeClosure {
        prime: p,
        order,
        target_order,
        surjective: order == target_order,
    })
}

/// Runs [`mod_p_closure`] for each prime and combines the results.
pub fn transitivity_certificate(
    generators: &[SpMatrix],
    genus: usize,
    primes: &[u64],
) -> Result<TransitivityCertificate> {
    let primes = primes
        .iter()
        .map(|&p| mod_p_closure(generators, genus, p))
        .collect::<Result<Vec<_>>>()?;
    let verdict = if primes.iter().all(|c| c.surjective) {
        TransitivityVerdict::ConsistentWithTransitive
    } else {
        TransitivityVerdict::NotTransitive
    };
    Ok(TransitivityCertificate { primes, verdict })
}
