//! Passive key recovery from a transcript.
//!
//! The first components `M_ℓ` of `(M, H)^ℓ` form a non-increasing chain under
//! the entrywise order. Given an intercepted `A = M_m` the attacker
//!
//! 1. squares `(M, H)` until `M_(2^t) ≤ A`, which bounds `m ≤ 2^t`;
//! 2. bisects `[1, 2^t]` for some `m'` with `M_(m') = A`, assembling each probe
//!    from the stored squares;
//! 3. combines `(A, P_E) = (M, H)^(m')` with the other public message exactly
//!    as the honest party would.
//!
//! `m'` need not equal `m` when the chain has a plateau; the derived key does
//! not depend on which index was found.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::protocol::{shared_key, Transcript};
use crate::semidirect::{pow2, power, OpCounter, SemigroupOpKind, SemigroupPair, SquareCache};
use crate::tropical::{ChainOrdering, TropicalMatrix};

/// Which public message the attack inverts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Alice,
    Bob,
}

/// How binary-search probes are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeStrategy {
    /// Each probe is a product of stored squares (`≤ K² + K` operations).
    Cached,
    /// Each probe is recomputed from `(M, H)` (`≤ 2K² + K` operations).
    FromScratch,
}

#[derive(Clone, Debug, Serialize)]
pub struct AttackResult {
    #[serde(serialize_with = "as_decimal")]
    pub m_prime: BigUint,
    pub t: u32,
    pub op_count: u64,
    #[serde(skip)]
    pub eve_pair: SemigroupPair,
    pub recovered_key: TropicalMatrix,
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn chain_step(probe: &TropicalMatrix, target: &TropicalMatrix) -> Result<ChainOrdering> {
    match probe.chain_compare(target)? {
        ChainOrdering::Incomparable => Err(Error::ChainViolation(
            "a power's first component is incomparable with the intercepted matrix".into(),
        )),
        ord => Ok(ord),
    }
}

/// Finds the least `t ≤ max_levels` with `M_(2^t) ≤ target`, returning it with
/// the squares `base^(2^0) … base^(2^t)`. Uses exactly `t` applications.
pub fn doubling_phase(
    op: SemigroupOpKind,
    base: &SemigroupPair,
    target: &TropicalMatrix,
    max_levels: u32,
    counter: &mut OpCounter,
) -> Result<(u32, SquareCache)> {
    let mut cache = SquareCache::build(op, base.clone(), 1, counter)?;
    let mut t = 0;
    loop {
        let top = cache.square(t).expect("rung t exists");
        match chain_step(&top.first, target)? {
            ChainOrdering::Less | ChainOrdering::Equal => return Ok((t, cache)),
            _ if t >= max_levels => return Err(Error::NotOnChain { levels: max_levels }),
            _ => {
                cache.push_square(counter)?;
                t += 1;
            }
        }
    }
}

/// Bisects `[1, 2^t]` for an exponent whose power has first component
/// `target`; returns it with that power.
pub fn search_exponent(
    cache: &SquareCache,
    target: &TropicalMatrix,
    t: u32,
    strategy: ProbeStrategy,
    counter: &mut OpCounter,
) -> Result<(BigUint, SemigroupPair)> {
    if cache.levels() <= t {
        return Err(Error::invalid(format!("cache holds {} levels, search needs {}", cache.levels(), t + 1)));
    }
    let one = BigUint::one();
    let mut lo = one.clone();
    let mut hi = pow2(t);
    while lo <= hi {
        let mid: BigUint = (&lo + &hi) >> 1u32;
        let probe = match strategy {
            ProbeStrategy::Cached => cache.power(&mid, counter)?,
            ProbeStrategy::FromScratch => power(cache.op(), cache.base(), &mid, counter)?,
        };
        match chain_step(&probe.first, target)? {
            ChainOrdering::Equal => return Ok((mid, probe)),
            // probe still above the target: the exponent is larger
            ChainOrdering::Greater => lo = mid + &one,
            _ => {
                if mid == one {
                    break;
                }
                hi = mid - &one;
            }
        }
    }
    Err(Error::NoMatchingExponent)
}

/// Cached bisection returning only the exponent.
pub fn binary_search_exponent(
    cache: &SquareCache,
    target: &TropicalMatrix,
    t: u32,
    counter: &mut OpCounter,
) -> Result<BigUint> {
    search_exponent(cache, target, t, ProbeStrategy::Cached, counter).map(|(m, _)| m)
}

/// Recovers the shared key by inverting Alice's message.
pub fn recover_key(transcript: &Transcript) -> Result<AttackResult> {
    recover_key_targeting(transcript, Target::Alice)
}

pub fn recover_key_targeting(transcript: &Transcript, target: Target) -> Result<AttackResult> {
    recover_key_with(transcript, target, ProbeStrategy::Cached)
}

pub fn recover_key_with(transcript: &Transcript, target: Target, strategy: ProbeStrategy) -> Result<AttackResult> {
    let params = &transcript.params;
    let (inverted, other) = match target {
        Target::Alice => (&transcript.alice_message, &transcript.bob_message),
        Target::Bob => (&transcript.bob_message, &transcript.alice_message),
    };
    let mut counter = OpCounter::new();
    let (t, cache) = doubling_phase(params.op(), params.base(), inverted, params.key_bits(), &mut counter)?;
    let (m_prime, eve_pair) = search_exponent(&cache, inverted, t, strategy, &mut counter)?;
    let recovered_key = shared_key(params.op(), &eve_pair, other)?;
    Ok(AttackResult { m_prime, t, op_count: counter.get(), eve_pair, recovered_key })
}
