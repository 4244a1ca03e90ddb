//! Reference computations written from the definitions, sharing no code with
//! the library beyond its plain data types.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use lefschetz_core::surface::parse_twist_word;
use lefschetz_core::{Curve, StdCurve, Twist};
use rand::Rng;

pub type Mat = Vec<Vec<i64>>;

/// î(x, y) with î(a_i, b_i) = −1 and all other basis pairings zero.
pub fn omega(x: &[i64], y: &[i64]) -> i64 {
    (0..x.len() / 2)
        .map(|i| -x[2 * i] * y[2 * i + 1] + x[2 * i + 1] * y[2 * i])
        .sum()
}

pub fn basis(dim: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[k] = 1;
    v
}

/// `[a] + k·î(a,b)[b]`.
pub fn picard_lefschetz(a: &[i64], b: &[i64], k: i64) -> Vec<i64> {
    let c = k * omega(a, b);
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

/// Chain classes: c1 = a1, c_{2i} = b_i, c_{2i+1} = a_i + a_{i+1}, c_{2g+1} = a_g.
pub fn chain(g: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; 2 * g];
    if i == 1 {
        v[0] = 1;
    } else if i % 2 == 0 {
        v[2 * (i / 2 - 1) + 1] = 1;
    } else if i == 2 * g + 1 {
        v[2 * (g - 1)] = 1;
    } else {
        let k = (i - 1) / 2;
        v[2 * (k - 1)] = 1;
        v[2 * k] = 1;
    }
    v
}

pub fn std_class(g: usize, c: StdCurve) -> Vec<i64> {
    match c {
        StdCurve::Chain(i) => chain(g, i),
        StdCurve::Sep => vec![0; 2 * g],
    }
}

/// Matrix of `x ↦ x + k·î(x,c)·c`, built column by column.
pub fn transvection(c: &[i64], k: i64) -> Mat {
    let n = c.len();
    let cols: Vec<Vec<i64>> = (0..n).map(|j| picard_lefschetz(&basis(n, j), c, k)).collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| basis(n, i)).collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    (0..n)
        .map(|i| (0..p).map(|j| (0..m).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn apply(a: &Mat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Homology action of a twist word in composition order.
pub fn word_matrix(g: usize, w: &[Twist]) -> Mat {
    let mut acc = identity(2 * g);
    for t in w {
        let c = std_class(g, t.curve);
        acc = matmul(&acc, &transvection(&c, if t.inverse { -1 } else { 1 }));
    }
    acc
}

pub fn curve_class(g: usize, c: &Curve) -> Vec<i64> {
    apply(&word_matrix(g, &c.conj), &std_class(g, c.base))
}

/// Monodromy `t_{η_k} ⋯ t_{η_1}` on homology from the classes alone.
pub fn monodromy(g: usize, cycles: &[Curve]) -> Mat {
    let mut acc = identity(2 * g);
    for c in cycles {
        acc = matmul(&transvection(&curve_class(g, c), 1), &acc);
    }
    acc
}

pub fn det(m: &Mat) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Mat = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_1 ⋯ d_k` is the gcd of
/// all k×k minors.
pub fn invariant_factors(m: &Mat) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut divisors = vec![1i64];
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Mat = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

/// Order of the subgroup of GL(n, F_p) generated by `gens`, by plain BFS.
pub fn group_order_mod_p(gens: &[Mat], p: i64) -> usize {
    let red = |m: &Mat| -> Vec<i64> { m.iter().flatten().map(|x| x.rem_euclid(p)).collect() };
    let n = gens[0].len();
    let start = red(&identity(n));
    let gens: Vec<Vec<i64>> = gens.iter().map(red).collect();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let mut y = vec![0; n * n];
            for i in 0..n {
                for j in 0..n {
                    y[i * n + j] = (0..n).map(|k| x[i * n + k] * g[k * n + j]).sum::<i64>() % p;
                }
            }
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

/// |Sp(2g, F_p)| = p^{g²} ∏ (p^{2i} − 1).
pub fn sp_order(g: u32, p: u64) -> u64 {
    p.pow(g * g) * (1..=g).map(|i| p.pow(2 * i) - 1).product::<u64>()
}

pub fn tw(s: &str) -> Vec<Twist> {
    parse_twist_word(s).unwrap()
}

pub fn random_twist<R: Rng>(rng: &mut R, g: usize, with_sep: bool) -> Twist {
    let n = 2 * g + 1 + usize::from(with_sep && g >= 2);
    let k = rng.gen_range(0..n);
    let curve = if k == 2 * g + 1 {
        StdCurve::Sep
    } else {
        StdCurve::Chain(k + 1)
    };
    Twist {
        curve,
        inverse: rng.gen_bool(0.5),
    }
}

pub fn random_word<R: Rng>(rng: &mut R, g: usize, len: usize) -> Vec<Twist> {
    (0..len).map(|_| random_twist(rng, g, true)).collect()
}

pub fn random_curve<R: Rng>(rng: &mut R, g: usize, max_conj: usize) -> Curve {
    let base = random_twist(rng, g, true).curve;
    let len = rng.gen_range(0..=max_conj);
    Curve::new(base, random_word(rng, g, len))
}
