// An honest exchange at full size (k = 5, entries in [-1000, 1000],
// 200-bit exponents) and the transcript an observer would record.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropkex::bench::measure_alpha;
use tropkex::{run_exchange, ProtocolParams, Result, SemigroupOpKind};

pub fn run_example() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let params = ProtocolParams::setup(5, 1000, 200, SemigroupOpKind::Circ, &mut rng)?;
    println!("public M =\n{}", params.base().first);
    println!("public H =\n{}", params.base().second);

    let exchange = run_exchange(params, &mut rng)?;
    println!("Alice's secret exponent has {} bits", exchange.alice.exponent().bits());
    println!("Bob's secret exponent has {} bits", exchange.bob.exponent().bits());
    println!("A[0][0] = {}", exchange.transcript.alice_message.get(0, 0));
    println!("A takes {} bits, B takes {}", measure_alpha(&exchange.transcript.alice_message), measure_alpha(&exchange.transcript.bob_message));
    println!("keys agree: {}", exchange.keys_agree());
    println!("shared key[0][0] = {}", exchange.shared_key().get(0, 0));

    let json = serde_json::to_string(&exchange.transcript)?;
    println!("transcript JSON: {} bytes, exponents not included: {}", json.len(), !json.contains("exponent"));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
