//! The two-party key exchange over `Mat_k(ℤ) × Mat_k(ℤ)`.
//!
//! Both sides share `(M, H)`, pick private exponents `m, n < 2^K`, publish the
//! first component of `(M, H)^m` and `(M, H)^n`, and each combines the other's
//! public matrix with its own pair to reach `π₁((M, H)^(m+n))`.

use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semidirect::{pow2, power, OpCounter, SemigroupOpKind, SemigroupPair};
use crate::tropical::TropicalMatrix;

/// Public setup agreed by both parties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ParamsJson", into = "ParamsJson")]
pub struct ProtocolParams {
    k: usize,
    entry_bound: u64,
    key_bits: u32,
    op: SemigroupOpKind,
    base: SemigroupPair,
}

#[derive(Serialize, Deserialize)]
struct ParamsJson {
    k: usize,
    #[serde(rename = "N")]
    n: u64,
    #[serde(rename = "K")]
    key_bits: u32,
    op: SemigroupOpKind,
    #[serde(rename = "M")]
    m: TropicalMatrix,
    #[serde(rename = "H")]
    h: TropicalMatrix,
}

impl From<ProtocolParams> for ParamsJson {
    fn from(p: ProtocolParams) -> Self {
        ParamsJson {
            k: p.k,
            n: p.entry_bound,
            key_bits: p.key_bits,
            op: p.op,
            m: p.base.first,
            h: p.base.second,
        }
    }
}

impl TryFrom<ParamsJson> for ProtocolParams {
    type Error = Error;

    fn try_from(j: ParamsJson) -> Result<Self> {
        if j.m.dim() != j.k {
            return Err(Error::invalid(format!("declared k = {} but M is {}x{}", j.k, j.m.dim(), j.m.dim())));
        }
        ProtocolParams::new(j.n, j.key_bits, j.op, j.m, j.h)
    }
}

impl ProtocolParams {
    /// Validates a hand-built parameter set: `M` and `H` must be square of the
    /// same size with entries in `[-entry_bound, entry_bound]`.
    pub fn new(
        entry_bound: u64,
        key_bits: u32,
        op: SemigroupOpKind,
        m: TropicalMatrix,
        h: TropicalMatrix,
    ) -> Result<Self> {
        if key_bits == 0 {
            return Err(Error::invalid("K must be at least 1"));
        }
        let base = SemigroupPair::new(m, h)?;
        for (name, mat) in [("M", &base.first), ("H", &base.second)] {
            let inside = mat
                .to_rows()
                .iter()
                .flatten()
                .all(|x| x.magnitude() <= &BigUint::from(entry_bound));
            if !inside {
                return Err(Error::invalid(format!(
                    "{name} has entries outside [-{entry_bound}, {entry_bound}]"
                )));
            }
        }
        Ok(ProtocolParams { k: base.dim(), entry_bound, key_bits, op, base })
    }

    /// Draws fresh public matrices `M` then `H`.
    pub fn setup<R: Rng + ?Sized>(
        k: usize,
        entry_bound: u64,
        key_bits: u32,
        op: SemigroupOpKind,
        rng: &mut R,
    ) -> Result<Self> {
        let m = TropicalMatrix::random(k, entry_bound, rng)?;
        let h = TropicalMatrix::random(k, entry_bound, rng)?;
        Self::new(entry_bound, key_bits, op, m, h)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entry_bound(&self) -> u64 {
        self.entry_bound
    }

    pub fn key_bits(&self) -> u32 {
        self.key_bits
    }

    pub fn op(&self) -> SemigroupOpKind {
        self.op
    }

    /// The public pair `(M, H)`.
    pub fn base(&self) -> &SemigroupPair {
        &self.base
    }

    /// Exclusive upper bound `2^K` on private exponents.
    pub fn exponent_limit(&self) -> BigUint {
        pow2(self.key_bits)
    }
}

/// One party's private exponent and the pair it yields.
#[derive(Clone, Debug)]
pub struct PartyState {
    exponent: BigUint,
    pair: SemigroupPair,
}

impl PartyState {
    /// Picks the exponent uniformly from `[1, 2^K - 1]`.
    pub fn generate<R: Rng + ?Sized>(params: &ProtocolParams, rng: &mut R) -> Result<Self> {
        let exponent = rng.gen_biguint_range(&BigUint::one(), &params.exponent_limit());
        Self::with_exponent(params, exponent)
    }

    pub fn with_exponent(params: &ProtocolParams, exponent: BigUint) -> Result<Self> {
        if exponent < BigUint::one() || exponent >= params.exponent_limit() {
            return Err(Error::invalid(format!(
                "private exponent must lie in [1, 2^{}), got {exponent}",
                params.key_bits
            )));
        }
        let pair = power(params.op, &params.base, &exponent, &mut OpCounter::new())?;
        Ok(PartyState { exponent, pair })
    }

    pub fn exponent(&self) -> &BigUint {
        &self.exponent
    }

    pub fn pair(&self) -> &SemigroupPair {
        &self.pair
    }

    pub fn public_message(&self) -> &TropicalMatrix {
        &self.pair.first
    }

    /// `π₁((Y, ·) · (X, P_X))` with the partner's message `Y` on the left.
    pub fn derive_shared_key(&self, params: &ProtocolParams, other_message: &TropicalMatrix) -> Result<TropicalMatrix> {
        shared_key(params.op, &self.pair, other_message)
    }
}

/// The key computation shared by honest parties and the eavesdropper.
pub(crate) fn shared_key(op: SemigroupOpKind, own: &SemigroupPair, other_message: &TropicalMatrix) -> Result<TropicalMatrix> {
    op.first_component(other_message, own)
}

/// What a passive observer sees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TranscriptJson")]
pub struct Transcript {
    pub params: ProtocolParams,
    pub alice_message: TropicalMatrix,
    pub bob_message: TropicalMatrix,
}

#[derive(Deserialize)]
struct TranscriptJson {
    params: ProtocolParams,
    alice_message: TropicalMatrix,
    bob_message: TropicalMatrix,
}

impl TryFrom<TranscriptJson> for Transcript {
    type Error = Error;

    fn try_from(t: TranscriptJson) -> Result<Self> {
        let k = t.params.k();
        for (who, msg) in [("alice", &t.alice_message), ("bob", &t.bob_message)] {
            if msg.dim() != k {
                return Err(Error::invalid(format!("{who}_message is {}x{} but k = {k}", msg.dim(), msg.dim())));
            }
        }
        Ok(Transcript { params: t.params, alice_message: t.alice_message, bob_message: t.bob_message })
    }
}

/// A completed honest run.
#[derive(Clone, Debug)]
pub struct Exchange {
    pub transcript: Transcript,
    pub alice: PartyState,
    pub bob: PartyState,
    pub alice_key: TropicalMatrix,
    pub bob_key: TropicalMatrix,
}

impl Exchange {
    /// Runs both parties from already-chosen private states and requires
    /// their keys to agree.
    pub fn between(params: ProtocolParams, alice: PartyState, bob: PartyState) -> Result<Self> {
        let ex = Self::compute(params, alice, bob)?;
        if !ex.keys_agree() {
            return Err(Error::KeyDisagreement);
        }
        Ok(ex)
    }

    /// Like [`Exchange::between`] but keeps a run whose keys disagree, so it
    /// can be inspected.
    pub fn compute(params: ProtocolParams, alice: PartyState, bob: PartyState) -> Result<Self> {
        let alice_key = alice.derive_shared_key(&params, bob.public_message())?;
        let bob_key = bob.derive_shared_key(&params, alice.public_message())?;
        let transcript = Transcript {
            alice_message: alice.public_message().clone(),
            bob_message: bob.public_message().clone(),
            params,
        };
        Ok(Exchange { transcript, alice, bob, alice_key, bob_key })
    }

    pub fn keys_agree(&self) -> bool {
        self.alice_key == self.bob_key
    }

    /// The agreed key (Alice's view when the run disagrees).
    pub fn shared_key(&self) -> &TropicalMatrix {
        &self.alice_key
    }
}

/// Draws Alice's then Bob's exponent from `rng` and runs the exchange.
/// Fails with [`Error::KeyDisagreement`] if the two derived keys differ.
pub fn run_exchange<R: Rng + ?Sized>(params: ProtocolParams, rng: &mut R) -> Result<Exchange> {
    let ex = run_exchange_unchecked(params, rng)?;
    if !ex.keys_agree() {
        return Err(Error::KeyDisagreement);
    }
    Ok(ex)
}

/// [`run_exchange`] without the agreement check; consumes `rng` identically.
pub fn run_exchange_unchecked<R: Rng + ?Sized>(params: ProtocolParams, rng: &mut R) -> Result<Exchange> {
    let alice = PartyState::generate(&params, rng)?;
    let bob = PartyState::generate(&params, rng)?;
    Exchange::compute(params, alice, bob)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn scalar_params(m: i64, h: i64, key_bits: u32) -> ProtocolParams {
        ProtocolParams::new(
            100,
            key_bits,
            SemigroupOpKind::Circ,
            TropicalMatrix::from_entries(1, [m]).unwrap(),
            TropicalMatrix::from_entries(1, [h]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn setup_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = ProtocolParams::setup(30, 1000, 200, SemigroupOpKind::Circ, &mut rng).unwrap();
        assert_eq!((p.k(), p.entry_bound(), p.key_bits()), (30, 1000, 200));

        let z = ProtocolParams::setup(1, 0, 1, SemigroupOpKind::Circ, &mut rng).unwrap();
        assert_eq!(z.base().first, TropicalMatrix::zeros(1).unwrap());
        assert_eq!(z.base().second, TropicalMatrix::zeros(1).unwrap());

        let a = ProtocolParams::setup(3, 50, 8, SemigroupOpKind::Star, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        let b = ProtocolParams::setup(3, 50, 8, SemigroupOpKind::Star, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_params_are_rejected() {
        let one = TropicalMatrix::from_entries(1, [5]).unwrap();
        assert!(ProtocolParams::new(4, 3, SemigroupOpKind::Circ, one.clone(), one.clone()).is_err());
        assert!(ProtocolParams::new(5, 0, SemigroupOpKind::Circ, one.clone(), one.clone()).is_err());
        let two = TropicalMatrix::zeros(2).unwrap();
        assert!(ProtocolParams::new(5, 3, SemigroupOpKind::Circ, one, two).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(ProtocolParams::setup(0, 5, 3, SemigroupOpKind::Circ, &mut rng).is_err());
    }

    #[test]
    fn single_bit_key_forces_exponent_one() {
        let params = scalar_params(10, -3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let party = PartyState::generate(&params, &mut rng).unwrap();
            assert_eq!(party.exponent(), &BigUint::one());
            assert_eq!(party.public_message(), &params.base().first);
        }
    }

    #[test]
    fn fixed_exponent_message() {
        let params = scalar_params(10, -3, 4);
        let alice = PartyState::with_exponent(&params, BigUint::from(4u32)).unwrap();
        assert_eq!(alice.public_message(), &TropicalMatrix::from_entries(1, [-9]).unwrap());
        assert!(PartyState::with_exponent(&params, BigUint::from(16u32)).is_err());
        assert!(PartyState::with_exponent(&params, BigUint::from(0u32)).is_err());
    }

    #[test]
    fn derive_circ_scalar() {
        let params = scalar_params(10, -3, 4);
        let own = SemigroupPair::new(
            TropicalMatrix::from_entries(1, [1]).unwrap(),
            TropicalMatrix::from_entries(1, [3]).unwrap(),
        )
        .unwrap();
        let other = TropicalMatrix::from_entries(1, [0]).unwrap();
        assert_eq!(shared_key(params.op(), &own, &other).unwrap(), other);
        let wrong = TropicalMatrix::zeros(2).unwrap();
        assert!(shared_key(params.op(), &own, &wrong).is_err());
    }

    #[test]
    fn scalar_exchange_example() {
        let params = scalar_params(10, -3, 4);
        let alice = PartyState::with_exponent(&params, BigUint::from(2u32)).unwrap();
        let bob = PartyState::with_exponent(&params, BigUint::from(3u32)).unwrap();
        let ex = Exchange::between(params, alice, bob).unwrap();
        assert_eq!(ex.shared_key(), &TropicalMatrix::from_entries(1, [-12]).unwrap());
        assert_eq!(ex.alice_key, ex.bob_key);
    }

    #[test]
    fn independent_parties_differ() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let params = ProtocolParams::setup(2, 100, 64, SemigroupOpKind::Circ, &mut rng).unwrap();
        let a = PartyState::generate(&params, &mut ChaCha8Rng::seed_from_u64(100)).unwrap();
        let b = PartyState::generate(&params, &mut ChaCha8Rng::seed_from_u64(200)).unwrap();
        assert_ne!(a.exponent(), b.exponent());
    }

    #[test]
    fn transcript_round_trips_bit_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let params = ProtocolParams::setup(3, 1000, 200, SemigroupOpKind::Circ, &mut rng).unwrap();
        let ex = run_exchange(params, &mut rng).unwrap();
        let text = serde_json::to_string(&ex.transcript).unwrap();
        let back: Transcript = serde_json::from_str(&text).unwrap();
        assert_eq!(back, ex.transcript);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);

        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["k", "N", "K", "op", "M", "H"] {
            assert!(v["params"].get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["params"]["op"], "circ");
        assert!(!text.contains("exponent"));
    }

    #[test]
    fn transcript_rejects_wrong_sized_messages() {
        let params = scalar_params(10, -3, 4);
        let mut v = serde_json::to_value(Transcript {
            alice_message: params.base().first.clone(),
            bob_message: params.base().first.clone(),
            params,
        })
        .unwrap();
        v["bob_message"] = serde_json::to_value(TropicalMatrix::zeros(2).unwrap()).unwrap();
        assert!(serde_json::from_value::<Transcript>(v).is_err());
    }
}
