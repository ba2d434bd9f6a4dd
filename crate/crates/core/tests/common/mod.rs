//! Reference implementations used to check the library. Everything here is
//! written from the definitions with plain `BigInt` vectors and shares no code
//! with the crate's kernels.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use tropkex::{SemigroupOpKind, SemigroupPair, TropicalMatrix};

pub type Naive = Vec<Vec<BigInt>>;

pub fn naive(m: &TropicalMatrix) -> Naive {
    m.to_rows()
}

pub fn matrix(rows: &Naive) -> TropicalMatrix {
    TropicalMatrix::from_rows(rows.iter().cloned()).unwrap()
}

pub fn oplus(a: &Naive, b: &Naive) -> Naive {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.min(y).clone()).collect())
        .collect()
}

/// Textbook triple loop: `c[i][j] = min over l of a[i][l] + b[l][j]`.
pub fn otimes(a: &Naive, b: &Naive) -> Naive {
    let k = a.len();
    let mut c = vec![vec![BigInt::from(0); k]; k];
    for i in 0..k {
        for j in 0..k {
            let mut best: Option<BigInt> = None;
            for l in 0..k {
                let s = &a[i][l] + &b[l][j];
                if best.as_ref().is_none_or(|b| s < *b) {
                    best = Some(s);
                }
            }
            c[i][j] = best.unwrap();
        }
    }
    c
}

pub fn transpose(a: &Naive) -> Naive {
    let k = a.len();
    (0..k).map(|i| (0..k).map(|j| a[j][i].clone()).collect()).collect()
}

pub fn leq(a: &Naive, b: &Naive) -> bool {
    a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| x <= y)
}

pub type NaivePair = (Naive, Naive);

pub fn naive_pair(p: &SemigroupPair) -> NaivePair {
    (naive(&p.first), naive(&p.second))
}

pub fn circ(p: &NaivePair, q: &NaivePair) -> NaivePair {
    let ((m, g), (s, h)) = (p, q);
    let first = oplus(&oplus(&oplus(m, s), h), &otimes(m, h));
    let second = oplus(&oplus(g, h), &otimes(g, h));
    (first, second)
}

pub fn star(p: &NaivePair, q: &NaivePair) -> NaivePair {
    let ((m, g), (s, h)) = (p, q);
    let mt = transpose(m);
    let first = oplus(&oplus(&otimes(h, &mt), &otimes(&mt, h)), s);
    (first, otimes(g, h))
}

pub fn apply(op: SemigroupOpKind, p: &NaivePair, q: &NaivePair) -> NaivePair {
    match op {
        SemigroupOpKind::Circ => circ(p, q),
        SemigroupOpKind::Star => star(p, q),
    }
}

/// `base^1, …, base^n` by repeated right multiplication `x ↦ x · base`.
pub fn right_fold_powers(op: SemigroupOpKind, base: &NaivePair, n: usize) -> Vec<NaivePair> {
    let mut out = vec![base.clone()];
    while out.len() < n {
        let next = apply(op, out.last().unwrap(), base);
        out.push(next);
    }
    out
}

/// `base^1, …, base^n` by repeated left multiplication `x ↦ base · x`.
pub fn left_fold_powers(op: SemigroupOpKind, base: &NaivePair, n: usize) -> Vec<NaivePair> {
    let mut out = vec![base.clone()];
    while out.len() < n {
        let next = apply(op, base, out.last().unwrap());
        out.push(next);
    }
    out
}

pub fn random_matrix<R: Rng>(k: usize, bound: i64, rng: &mut R) -> TropicalMatrix {
    TropicalMatrix::from_entries(k, (0..k * k).map(|_| rng.gen_range(-bound..=bound))).unwrap()
}

pub fn random_pair<R: Rng>(k: usize, bound: i64, rng: &mut R) -> SemigroupPair {
    SemigroupPair::new(random_matrix(k, bound, rng), random_matrix(k, bound, rng)).unwrap()
}

/// `x` plus a random non-negative offset in each entry, so `x ≤ result`.
pub fn random_above<R: Rng>(x: &TropicalMatrix, spread: i64, rng: &mut R) -> TropicalMatrix {
    let rows: Naive = naive(x)
        .into_iter()
        .map(|r| r.into_iter().map(|v| v + rng.gen_range(0..=spread)).collect())
        .collect();
    matrix(&rows)
}

pub mod strategies {
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use tropkex::{SemigroupPair, TropicalMatrix};

    /// Entries mixing small values with magnitudes around 2^63, 2^200 and 2^300.
    pub fn wide_entry() -> impl Strategy<Value = BigInt> {
        prop_oneof![
            4 => (-50i64..=50).prop_map(BigInt::from),
            1 => (any::<i64>()).prop_map(BigInt::from),
            1 => (any::<i64>(), 150u32..=230).prop_map(|(v, s)| BigInt::from(v) << s),
            1 => (any::<i64>(), 260u32..=320).prop_map(|(v, s)| BigInt::from(v) << s),
        ]
    }

    pub fn matrix_with(k: usize, entry: impl Strategy<Value = BigInt>) -> impl Strategy<Value = TropicalMatrix> {
        proptest::collection::vec(entry, k * k).prop_map(move |v| TropicalMatrix::from_entries(k, v).unwrap())
    }

    pub fn small_matrix(k: usize) -> impl Strategy<Value = TropicalMatrix> {
        matrix_with(k, (-50i64..=50).prop_map(BigInt::from))
    }

    /// Three same-size matrices with small entries, `k ≤ max_k`.
    pub fn small_triple(max_k: usize) -> impl Strategy<Value = (TropicalMatrix, TropicalMatrix, TropicalMatrix)> {
        (1..=max_k).prop_flat_map(|k| (small_matrix(k), small_matrix(k), small_matrix(k)))
    }

    pub fn wide_triple(max_k: usize) -> impl Strategy<Value = (TropicalMatrix, TropicalMatrix, TropicalMatrix)> {
        (1..=max_k).prop_flat_map(|k| (matrix_with(k, wide_entry()), matrix_with(k, wide_entry()), matrix_with(k, wide_entry())))
    }

    pub fn small_pair(k: usize) -> impl Strategy<Value = SemigroupPair> {
        (small_matrix(k), small_matrix(k)).prop_map(|(m, g)| SemigroupPair::new(m, g).unwrap())
    }

    pub fn pair_triple(max_k: usize) -> impl Strategy<Value = (SemigroupPair, SemigroupPair, SemigroupPair)> {
        (1..=max_k).prop_flat_map(|k| (small_pair(k), small_pair(k), small_pair(k)))
    }
}
