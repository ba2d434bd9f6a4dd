// The `star` law is associative on 1×1 matrices only. Beyond that,
// `(p * q) * r` and `p * (q * r)` differ, powers stop commuting and the two
// parties can end up with different keys.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropkex::protocol::run_exchange_unchecked;
use tropkex::semidirect::op_star;
use tropkex::{ProtocolParams, Result, SemigroupOpKind, SemigroupPair, TropicalMatrix};

pub fn run_example() -> Result<()> {
    let zero = TropicalMatrix::zeros(2)?;
    let p = SemigroupPair::new(TropicalMatrix::from_rows([[0, 10], [10, 10]])?, zero.clone())?;
    let q = SemigroupPair::new(TropicalMatrix::from_rows([[10, 10], [10, 10]])?, zero)?;
    let left = op_star(&op_star(&p, &q)?, &q)?;
    let right = op_star(&p, &op_star(&q, &q)?)?;
    println!("(p * q) * q first component:\n{}", left.first);
    println!("p * (q * q) first component:\n{}", right.first);

    for k in 1..=4 {
        let trials = 200;
        let agreeing = (0..trials)
            .filter(|&seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                ProtocolParams::setup(k, 100, 10, SemigroupOpKind::Star, &mut rng)
                    .and_then(|params| run_exchange_unchecked(params, &mut rng))
                    .map(|ex| ex.keys_agree())
                    .unwrap_or(false)
            })
            .count();
        println!("k = {k}: keys agree in {agreeing}/{trials} star exchanges");
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
