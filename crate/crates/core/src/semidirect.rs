//! Pairs of matrices under the two semidirect-product laws, and powering.
//!
//! With `p = (M, G)` and `q = (S, H)`:
//!
//! * `Circ`: `p ∘ q = (M ⊕ S ⊕ H ⊕ (M ⊗ H), G ⊕ H ⊕ (G ⊗ H))`
//! * `Star`: `p * q = ((H ⊗ Mᵀ) ⊕ (Mᵀ ⊗ H) ⊕ S, G ⊗ H)`
//!
//! In both laws the first component of `p · q` never reads `G`.
//!
//! Powers are defined for exponents `e ≥ 1` only and are always bracketed the
//! same way: the squares `base^(2^i)` are formed by repeated self-application,
//! and the squares selected by the set bits of `e` are folded in ascending bit
//! order, `acc = op(acc, base^(2^i))`. [`power`] and
//! [`SquareCache::power`] share this bracketing, so they agree exactly even for
//! a law that fails associativity.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tropical::TropicalMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemigroupOpKind {
    Circ,
    Star,
}

impl SemigroupOpKind {
    pub const ALL: [SemigroupOpKind; 2] = [SemigroupOpKind::Circ, SemigroupOpKind::Star];

    /// Applies the law and bumps `counter` by one.
    pub fn apply(self, p: &SemigroupPair, q: &SemigroupPair, counter: &mut OpCounter) -> Result<SemigroupPair> {
        let out = match self {
            SemigroupOpKind::Circ => op_circ(p, q)?,
            SemigroupOpKind::Star => op_star(p, q)?,
        };
        counter.bump();
        Ok(out)
    }

    /// First component of `(left, ·) op right`; the second component of the
    /// left factor is never needed.
    pub fn first_component(self, left: &TropicalMatrix, right: &SemigroupPair) -> Result<TropicalMatrix> {
        check_dims(left, &right.first)?;
        let (s, h) = (&right.first, &right.second);
        let dim = left.dim();
        Ok(match self {
            SemigroupOpKind::Circ => TropicalMatrix::fused_sum(dim, &[left, s, h], &[left.times(h)]),
            SemigroupOpKind::Star => TropicalMatrix::fused_sum(
                dim,
                &[s],
                &[h.times_transposed(left), left.transposed_times(h)],
            ),
        })
    }
}

impl fmt::Display for SemigroupOpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemigroupOpKind::Circ => "circ",
            SemigroupOpKind::Star => "star",
        })
    }
}

impl FromStr for SemigroupOpKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circ" => Ok(SemigroupOpKind::Circ),
            "star" => Ok(SemigroupOpKind::Star),
            other => Err(Error::invalid(format!("unknown operation {other:?}, expected circ or star"))),
        }
    }
}

/// Counts semigroup-law applications. Passed explicitly by the caller.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounter(u64);

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self) -> u64 {
        self.0
    }

    fn bump(&mut self) {
        self.0 += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairJson")]
pub struct SemigroupPair {
    pub first: TropicalMatrix,
    pub second: TropicalMatrix,
}

#[derive(Deserialize)]
struct PairJson {
    first: TropicalMatrix,
    second: TropicalMatrix,
}

impl TryFrom<PairJson> for SemigroupPair {
    type Error = Error;

    fn try_from(p: PairJson) -> Result<Self> {
        SemigroupPair::new(p.first, p.second)
    }
}

impl SemigroupPair {
    pub fn new(first: TropicalMatrix, second: TropicalMatrix) -> Result<Self> {
        check_dims(&first, &second)?;
        Ok(SemigroupPair { first, second })
    }

    pub fn dim(&self) -> usize {
        self.first.dim()
    }
}

fn check_dims(a: &TropicalMatrix, b: &TropicalMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(())
}

pub fn op_circ(p: &SemigroupPair, q: &SemigroupPair) -> Result<SemigroupPair> {
    check_dims(&p.first, &q.first)?;
    let dim = p.dim();
    let (g, h) = (&p.second, &q.second);
    let first = SemigroupOpKind::Circ.first_component(&p.first, q)?;
    let second = TropicalMatrix::fused_sum(dim, &[g, h], &[g.times(h)]);
    Ok(SemigroupPair { first, second })
}

pub fn op_star(p: &SemigroupPair, q: &SemigroupPair) -> Result<SemigroupPair> {
    check_dims(&p.first, &q.first)?;
    let dim = p.dim();
    let first = SemigroupOpKind::Star.first_component(&p.first, q)?;
    let second = TropicalMatrix::fused_sum(dim, &[], &[p.second.times(&q.second)]);
    Ok(SemigroupPair { first, second })
}

fn check_exponent(e: &BigUint) -> Result<()> {
    if e.is_zero() {
        return Err(Error::invalid("exponent must be at least 1; the semigroup has no identity"));
    }
    Ok(())
}

/// `base^e` by square-and-multiply, using at most `2 * bits(e) - 2`
/// applications of `op`.
pub fn power(op: SemigroupOpKind, base: &SemigroupPair, e: &BigUint, counter: &mut OpCounter) -> Result<SemigroupPair> {
    check_exponent(e)?;
    let bits = e.bits();
    let mut square = base.clone();
    let mut acc: Option<SemigroupPair> = None;
    for i in 0..bits {
        if e.bit(i) {
            acc = Some(match acc {
                None => square.clone(),
                Some(a) => op.apply(&a, &square, counter)?,
            });
        }
        if i + 1 < bits {
            square = op.apply(&square, &square, counter)?;
        }
    }
    Ok(acc.expect("e >= 1 has a set bit"))
}

/// The ladder `base, base², base⁴, …, base^(2^(levels-1))`.
#[derive(Clone, Debug)]
pub struct SquareCache {
    op: SemigroupOpKind,
    squares: Vec<SemigroupPair>,
}

impl SquareCache {
    /// Builds `levels` rungs with exactly `levels - 1` applications.
    pub fn build(op: SemigroupOpKind, base: SemigroupPair, levels: u32, counter: &mut OpCounter) -> Result<Self> {
        if levels == 0 {
            return Err(Error::invalid("a square cache needs at least one level"));
        }
        let mut cache = SquareCache { op, squares: vec![base] };
        while cache.levels() < levels {
            cache.push_square(counter)?;
        }
        Ok(cache)
    }

    pub fn op(&self) -> SemigroupOpKind {
        self.op
    }

    pub fn levels(&self) -> u32 {
        self.squares.len() as u32
    }

    pub fn base(&self) -> &SemigroupPair {
        &self.squares[0]
    }

    /// `base^(2^i)`.
    pub fn square(&self, i: u32) -> Option<&SemigroupPair> {
        self.squares.get(i as usize)
    }

    /// Appends the next rung by squaring the top one.
    pub fn push_square(&mut self, counter: &mut OpCounter) -> Result<&SemigroupPair> {
        let top = self.squares.last().expect("cache is never empty");
        let next = self.op.apply(top, top, counter)?;
        self.squares.push(next);
        Ok(self.squares.last().expect("just pushed"))
    }

    /// `base^e` from the stored squares, in ascending bit order; costs
    /// `popcount(e) - 1` applications. Requires `1 ≤ e < 2^levels`.
    pub fn power(&self, e: &BigUint, counter: &mut OpCounter) -> Result<SemigroupPair> {
        check_exponent(e)?;
        if e.bits() > u64::from(self.levels()) {
            return Err(Error::invalid(format!(
                "exponent {e} needs {} levels but the cache holds {}",
                e.bits(),
                self.levels()
            )));
        }
        let mut acc: Option<SemigroupPair> = None;
        for (i, square) in self.squares.iter().enumerate().take(e.bits() as usize) {
            if e.bit(i as u64) {
                acc = Some(match acc {
                    None => square.clone(),
                    Some(a) => self.op.apply(&a, square, counter)?,
                });
            }
        }
        Ok(acc.expect("e >= 1 has a set bit"))
    }
}

/// `2^i` as a `BigUint`.
pub(crate) fn pow2(i: u32) -> BigUint {
    BigUint::one() << i
}
