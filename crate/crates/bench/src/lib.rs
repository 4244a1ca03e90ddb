//! Deterministic inputs shared by the benchmarks.

use lefschetz_core::surface::{chain_class, StdCurve};
use lefschetz_core::{homrep, IntMatrix, SpMatrix, Twist};

/// A genus-2 twist word of length `len` cycling through all six standard
/// curves with alternating signs every seventh letter.
pub fn twist_word(len: usize) -> Vec<Twist> {
    let curves = [
        StdCurve::Chain(1),
        StdCurve::Chain(2),
        StdCurve::Chain(3),
        StdCurve::Chain(4),
        StdCurve::Chain(5),
        StdCurve::Sep,
    ];
    (0..len)
        .map(|i| {
            let c = curves[(i * 5 + i / 6) % curves.len()];
            if i % 7 == 6 {
                Twist::neg(c)
            } else {
                Twist::pos(c)
            }
        })
        .collect()
}

/// Transvections of the chain curves `c1..c{2g+1}`.
pub fn chain_transvections(genus: usize) -> Vec<SpMatrix> {
    (1..=2 * genus + 1)
        .map(|i| homrep::transvection(&chain_class(genus, i)).expect("chain class"))
        .collect()
}

/// A dense `n × n` matrix with small entries and full rank.
pub fn dense_matrix(n: usize) -> IntMatrix {
    let entries = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let v = ((i * 7 + j * 13 + i * j) % 11) as i64 - 5;
            if i == j {
                v + 3 * n as i64
            } else {
                v
            }
        })
        .collect();
    IntMatrix::new(n, n, entries).expect("square")
}
