mod common;

use common::*;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropkex::attack::{recover_key_with, ProbeStrategy};
use tropkex::protocol::run_exchange_unchecked;
use tropkex::{
    power, recover_key, recover_key_targeting, run_exchange, Error, Exchange, OpCounter, ProtocolParams,
    SemigroupOpKind, SemigroupPair, Target, Transcript,
};

fn honest(k: usize, bound: u64, key_bits: u32, seed: u64) -> Exchange {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = ProtocolParams::setup(k, bound, key_bits, SemigroupOpKind::Circ, &mut rng).unwrap();
    run_exchange(params, &mut rng).unwrap()
}

fn first_of_power(params: &ProtocolParams, e: &BigUint) -> tropkex::TropicalMatrix {
    power(params.op(), params.base(), e, &mut OpCounter::new()).unwrap().first
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn keys_agree_and_equal_the_direct_power(k in 1usize..=5, bound in prop_oneof![Just(0u64), Just(10), Just(100)], key_bits in 1u32..=12, seed in any::<u64>()) {
        let ex = honest(k, bound, key_bits, seed);
        prop_assert_eq!(&ex.alice_key, &ex.bob_key);
        let sum = ex.alice.exponent() + ex.bob.exponent();
        prop_assert_eq!(&first_of_power(&ex.transcript.params, &sum), &ex.alice_key);
        prop_assert_eq!(ex.alice.public_message(), &ex.transcript.alice_message);
    }

    #[test]
    fn partner_second_component_is_irrelevant(k in 1usize..=4, seed in any::<u64>()) {
        let ex = honest(k, 100, 10, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let op = ex.transcript.params.op();
        let forged = SemigroupPair::new(ex.transcript.bob_message.clone(), random_matrix(k, 1000, &mut rng)).unwrap();
        let full = op.apply(&forged, ex.alice.pair(), &mut OpCounter::new()).unwrap();
        prop_assert_eq!(&full.first, &ex.alice_key);
    }

    #[test]
    fn attack_recovers_the_key(k in 1usize..=5, bound in 0u64..=100, key_bits in 2u32..=12, seed in any::<u64>()) {
        let ex = honest(k, bound, key_bits, seed);
        let params = &ex.transcript.params;
        for target in [Target::Alice, Target::Bob] {
            let res = recover_key_targeting(&ex.transcript, target).unwrap();
            prop_assert_eq!(&res.recovered_key, ex.shared_key());
            let (message, partner) = match target {
                Target::Alice => (&ex.transcript.alice_message, ex.bob.exponent()),
                Target::Bob => (&ex.transcript.bob_message, ex.alice.exponent()),
            };
            prop_assert_eq!(&first_of_power(params, &res.m_prime), message);
            prop_assert_eq!(&res.eve_pair.first, message);
            prop_assert!(res.m_prime >= BigUint::from(1u32) && res.m_prime <= BigUint::from(1u32) << res.t);
            // any m' on the chain gives the same key as the true exponent
            prop_assert_eq!(&first_of_power(params, &(&res.m_prime + partner)), ex.shared_key());
            let k2 = u64::from(key_bits) * u64::from(key_bits);
            prop_assert!(res.op_count <= k2 + u64::from(key_bits));
        }
    }

    #[test]
    fn uncached_search_agrees_within_its_budget(k in 1usize..=3, key_bits in 2u32..=16, seed in any::<u64>()) {
        let ex = honest(k, 100, key_bits, seed);
        let cached = recover_key_with(&ex.transcript, Target::Alice, ProbeStrategy::Cached).unwrap();
        let scratch = recover_key_with(&ex.transcript, Target::Alice, ProbeStrategy::FromScratch).unwrap();
        prop_assert_eq!(&cached.m_prime, &scratch.m_prime);
        prop_assert_eq!(&cached.recovered_key, &scratch.recovered_key);
        let kb = u64::from(key_bits);
        prop_assert!(scratch.op_count <= 2 * kb * kb + kb);
        prop_assert!(cached.op_count <= scratch.op_count);
    }
}

#[test]
fn attack_is_deterministic() {
    let ex = honest(4, 100, 32, 99);
    let a = recover_key(&ex.transcript).unwrap();
    let b = recover_key(&ex.transcript).unwrap();
    assert_eq!((a.m_prime, a.t, a.op_count, a.recovered_key), (b.m_prime, b.t, b.op_count, b.recovered_key));
}

#[test]
fn transcript_survives_json_before_the_attack() {
    let ex = honest(3, 1000, 64, 5);
    let text = serde_json::to_string(&ex.transcript).unwrap();
    let back: Transcript = serde_json::from_str(&text).unwrap();
    assert_eq!(back, ex.transcript);
    assert_eq!(&recover_key(&back).unwrap().recovered_key, ex.shared_key());
}

#[test]
fn same_seed_same_everything() {
    let a = honest(3, 100, 40, 1234);
    let b = honest(3, 100, 40, 1234);
    assert_eq!(a.transcript, b.transcript);
    assert_eq!(a.alice.exponent(), b.alice.exponent());
    assert_eq!(a.bob.exponent(), b.bob.exponent());
    assert_eq!(a.alice_key, b.alice_key);
}

#[test]
fn plateaus_show_up_and_do_not_matter() {
    let mut plateaus = 0;
    for seed in 0..300 {
        let ex = honest(2, 3, 8, seed);
        let res = recover_key(&ex.transcript).unwrap();
        assert_eq!(&res.recovered_key, ex.shared_key());
        if &res.m_prime != ex.alice.exponent() {
            plateaus += 1;
            let n = ex.bob.exponent().to_u64().unwrap();
            let (m, m_prime) = (ex.alice.exponent().to_u64().unwrap(), res.m_prime.to_u64().unwrap());
            let base = naive_pair(ex.transcript.params.base());
            let chain = right_fold_powers(SemigroupOpKind::Circ, &base, (m.max(m_prime) + n) as usize);
            assert_eq!(chain[(m + n - 1) as usize].0, chain[(m_prime + n - 1) as usize].0);
        }
    }
    assert!(plateaus > 0);
}

#[test]
fn star_exchange_can_disagree() {
    // non-associativity of the star law breaks π₁((M,H)^(m+n)) = π₁((M,H)^n · (M,H)^m)
    let mut disagreements = 0;
    for seed in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = ProtocolParams::setup(3, 100, 8, SemigroupOpKind::Star, &mut rng).unwrap();
        let mut checked_rng = rng.clone();
        let ex = run_exchange_unchecked(params.clone(), &mut rng).unwrap();
        if !ex.keys_agree() {
            disagreements += 1;
            assert!(matches!(run_exchange(params, &mut checked_rng), Err(Error::KeyDisagreement)));
        }
    }
    assert!(disagreements > 0);
}

#[test]
fn star_scalar_exchange_agrees() {
    for seed in 0..50 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = ProtocolParams::setup(1, 100, 12, SemigroupOpKind::Star, &mut rng).unwrap();
        let ex = run_exchange(params, &mut rng).unwrap();
        assert_eq!(&recover_key(&ex.transcript).unwrap().recovered_key, ex.shared_key());
    }
}

#[test]
fn forged_message_is_rejected() {
    let ex = honest(2, 10, 8, 3);
    let mut forged = ex.transcript.clone();
    forged.alice_message = ex.transcript.params.base().first.oplus(&tropkex::TropicalMatrix::from_rows([[-10_000, 10_000], [0, 0]]).unwrap()).unwrap();
    let err = recover_key(&forged).unwrap_err();
    assert!(matches!(err, Error::ChainViolation(_) | Error::NotOnChain { .. } | Error::NoMatchingExponent), "{err}");
}
