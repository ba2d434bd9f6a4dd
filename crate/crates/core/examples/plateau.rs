// When the chain of first components stalls, the search lands on an exponent
// other than the secret one and the key still comes out right.

use num_bigint::BigUint;
use tropkex::{recover_key, Exchange, PartyState, ProtocolParams, Result, SemigroupOpKind, TropicalMatrix};

pub fn run_example() -> Result<()> {
    // M = [5], H = [0]: every power from the second on has first component [0]
    let params = ProtocolParams::new(
        5,
        4,
        SemigroupOpKind::Circ,
        TropicalMatrix::from_entries(1, [5])?,
        TropicalMatrix::from_entries(1, [0])?,
    )?;
    let alice = PartyState::with_exponent(&params, BigUint::from(7u32))?;
    let bob = PartyState::with_exponent(&params, BigUint::from(9u32))?;
    let exchange = Exchange::between(params, alice, bob)?;

    let res = recover_key(&exchange.transcript)?;
    println!("secret m = {}, recovered m' = {}", exchange.alice.exponent(), res.m_prime);
    println!("shared key {} / recovered {}", exchange.shared_key(), res.recovered_key);
    assert_ne!(&res.m_prime, exchange.alice.exponent());
    assert_eq!(&res.recovered_key, exchange.shared_key());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
