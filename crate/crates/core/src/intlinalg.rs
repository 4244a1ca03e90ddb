//! Exact integer linear algebra.
//!
//! Entries are `i64` and every arithmetic step is checked; an overflow is a
//! hard [`Error::Overflow`], never a wrapped value. The matrices that show up
//! here (relation matrices of vanishing cycles, symplectic images of twist
//! words) are small, so fixed-width integers are enough.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` is needed so that an empty
    /// row list still has a well-defined shape.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[i64]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a
                        .checked_mul(rhs.get(k, j))
                        .ok_or(Error::Overflow("matrix product"))?;
                    let cur = out.get(i, j);
                    out.set(
                        i,
                        j,
                        cur.checked_add(prod)
                            .ok_or(Error::Overflow("matrix product"))?,
                    );
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (&a, &b)| {
                    a.checked_mul(b)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow("matrix-vector product"))
                })
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// Entries reduced into `0..p`.
    pub fn reduce_mod(&self, p: i64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x.rem_euclid(p)).collect(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .zip(a[i][k].checked_mul(a[k][j]))
                        .and_then(|(x, y)| x.checked_sub(y))
                        .ok_or(Error::Overflow("determinant"))?;
                    a[i][j] = num / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| Error::Overflow("determinant"))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: i64) -> Result<()> {
        for c in 0..self.cols {
            let v = self
                .get(src, c)
                .checked_mul(factor)
                .and_then(|p| self.get(dst, c).checked_add(p))
                .ok_or(Error::Overflow("row operation"))?;
            self.set(dst, c, v);
        }
        Ok(())
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: i64) -> Result<()> {
        for r in 0..self.rows {
            let v = self
                .get(r, src)
                .checked_mul(factor)
                .and_then(|p| self.get(r, dst).checked_add(p))
                .ok_or(Error::Overflow("column operation"))?;
            self.set(r, dst, v);
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for c in 0..self.cols {
            let v = self
                .get(i, c)
                .checked_neg()
                .ok_or(Error::Overflow("row negation"))?;
            self.set(i, c, v);
        }
        Ok(())
    }

    fn negate_col(&mut self, j: usize) -> Result<()> {
        for r in 0..self.rows {
            let v = self
                .get(r, j)
                .checked_neg()
                .ok_or(Error::Overflow("column negation"))?;
            self.set(r, j, v);
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Smith normal form `u * m * v = diag(diagonal)` together with the inverses
/// of the two unimodular transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Length `min(rows, cols)`; nonnegative; nonzero entries first, each
    /// dividing the next.
    pub diagonal: Vec<i64>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }

    /// The nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.diagonal.iter().copied().filter(|&d| d != 0).collect()
    }
}

/// Smith normal form by repeated smallest-pivot elimination.
///
/// The pivot at every stage is the nonzero entry of least absolute value in
/// the trailing block, ties broken by lowest row then lowest column, so the
/// transforms are a deterministic function of the input.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SnfResult> {
    let mut t = Transforms {
        u: IntMatrix::identity(m.rows()),
        u_inv: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
        v_inv: IntMatrix::identity(m.cols()),
    };
    let diagonal = eliminate(m, Some(&mut t))?;
    Ok(SnfResult {
        diagonal,
        u: t.u,
        v: t.v,
        u_inv: t.u_inv,
        v_inv: t.v_inv,
    })
}

/// The diagonal of [`smith_normal_form`] without the transforms, whose
/// entries grow much faster than the reduced matrix does.
pub fn smith_diagonal(m: &IntMatrix) -> Result<Vec<i64>> {
    eliminate(m, None)
}

struct Transforms {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Transforms {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// Row `i` += `k` · row `j`.
    fn add_row(&mut self, i: usize, j: usize, k: i64) -> Result<()> {
        self.u.add_row(i, j, k)?;
        self.u_inv.add_col(j, i, k.checked_neg().ok_or(Error::Overflow("elimination"))?)
    }

    /// Column `i` += `k` · column `j`.
    fn add_col(&mut self, i: usize, j: usize, k: i64) -> Result<()> {
        self.v.add_col(i, j, k)?;
        self.v_inv.add_row(j, i, k.checked_neg().ok_or(Error::Overflow("elimination"))?)
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        self.u.negate_row(i)?;
        self.u_inv.negate_col(i)
    }
}

fn eliminate(m: &IntMatrix, mut tr: Option<&mut Transforms>) -> Result<Vec<i64>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();

    let steps = rows.min(cols);
    'outer: for t in 0..steps {
        loop {
            let mut pivot: Option<(usize, usize, i64)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a.get(i, j);
                    if x != 0 {
                        let ax = x.checked_abs().ok_or(Error::Overflow("pivot search"))?;
                        if pivot.map_or(true, |(_, _, best)| ax < best) {
                            pivot = Some((i, j, ax));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else {
                break 'outer;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            if let Some(tr) = tr.as_deref_mut() {
                tr.swap_rows(t, pi);
                tr.swap_cols(t, pj);
            }

            let p = a.get(t, t);
            let mut clean = true;
            for i in t + 1..rows {
                let q = a.get(i, t) / p;
                if q != 0 {
                    let nq = q.checked_neg().ok_or(Error::Overflow("elimination"))?;
                    a.add_row(i, t, nq)?;
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.add_row(i, t, nq)?;
                    }
                }
                if a.get(i, t) != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a.get(t, j) / p;
                if q != 0 {
                    let nq = q.checked_neg().ok_or(Error::Overflow("elimination"))?;
                    a.add_col(j, t, nq)?;
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.add_col(j, t, nq)?;
                    }
                }
                if a.get(t, j) != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and go again.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| a.get(i, j) % p != 0);
            match offender {
                Some((i, _)) => {
                    a.add_row(t, i, 1)?;
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.add_row(t, i, 1)?;
                    }
                }
                None => break,
            }
        }
        if a.get(t, t) < 0 {
            a.negate_row(t)?;
            if let Some(tr) = tr.as_deref_mut() {
                tr.negate_row(t)?;
            }
        }
    }

    Ok((0..steps).map(|i| a.get(i, i)).collect())
}

/// A finitely generated abelian group `Z^free_rank + Z/t_1 + ... + Z/t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupReport {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<i64>,
}

impl AbelianGroupReport {
    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z^cols / rowspan(m)`.
pub fn cokernel(m: &IntMatrix) -> Result<AbelianGroupReport> {
    let diagonal = smith_diagonal(m)?;
    let rank = diagonal.iter().filter(|&&d| d != 0).count();
    Ok(AbelianGroupReport {
        free_rank: m.cols() - rank,
        torsion: diagonal.into_iter().filter(|&d| d > 1).collect(),
    })
}

/// True iff `mᵀ · j · m == j`.
pub fn preserves_form(m: &IntMatrix, j: &IntMatrix) -> Result<bool> {
    if !m.is_square() || !j.is_square() || m.rows() != j.rows() {
        return Err(Error::Dimension(format!(
            "form check needs square matrices of equal size, got {}x{} and {}x{}",
            m.rows(),
            m.cols(),
            j.rows(),
            j.cols()
        )));
    }
    Ok(m.transpose().mul(j)?.mul(m)? == *j)
}
