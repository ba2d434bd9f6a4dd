// Recovers the shared key from nothing but the transcript, inverting either
// party's message, with and without the stored squares.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropkex::attack::{recover_key_with, ProbeStrategy};
use tropkex::{run_exchange, ProtocolParams, Result, SemigroupOpKind, Target};

pub fn run_example() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let params = ProtocolParams::setup(10, 1000, 200, SemigroupOpKind::Circ, &mut rng)?;
    let exchange = run_exchange(params, &mut rng)?;
    let transcript = &exchange.transcript;
    let k = transcript.params.key_bits() as u64;

    for (target, strategy) in [
        (Target::Alice, ProbeStrategy::Cached),
        (Target::Bob, ProbeStrategy::Cached),
        (Target::Alice, ProbeStrategy::FromScratch),
    ] {
        let start = std::time::Instant::now();
        let res = recover_key_with(transcript, target, strategy)?;
        println!(
            "{target:?}/{strategy:?}: t = {}, {} operations (bound {}), {:.3}s, key recovered: {}",
            res.t,
            res.op_count,
            match strategy {
                ProbeStrategy::Cached => k * k + k,
                ProbeStrategy::FromScratch => 2 * k * k + k,
            },
            start.elapsed().as_secs_f64(),
            &res.recovered_key == exchange.shared_key()
        );
        let secret = match target {
            Target::Alice => exchange.alice.exponent(),
            Target::Bob => exchange.bob.exponent(),
        };
        println!("  found exponent equals the secret one: {}", &res.m_prime == secret);
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
