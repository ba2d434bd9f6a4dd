// Size of a public message in bits (magnitude bits plus a sign bit per
// entry) as the dimension and the exponent length grow.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropkex::bench::measure_alpha;
use tropkex::{run_exchange, ProtocolParams, Result, SemigroupOpKind};

fn mean_bits(k: usize, key_bits: u32, trials: u64) -> Result<f64> {
    let mut total = 0;
    for seed in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = ProtocolParams::setup(k, 1000, key_bits, SemigroupOpKind::Circ, &mut rng)?;
        total += measure_alpha(&run_exchange(params, &mut rng)?.transcript.alice_message);
    }
    Ok(total as f64 / trials as f64)
}

pub fn run_example() -> Result<()> {
    println!("{:>4} {:>4} {:>10} {:>10}", "k", "K", "bits", "K·k²");
    for k in [5usize, 10, 30] {
        for key_bits in [50u32, 100, 200] {
            let bits = mean_bits(k, key_bits, 3)?;
            println!("{k:>4} {key_bits:>4} {bits:>10.0} {:>10}", key_bits as usize * k * k);
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
