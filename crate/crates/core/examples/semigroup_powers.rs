// Pairs of matrices under the two semidirect laws, square-and-multiply
// powering and the ladder of stored squares.

use num_bigint::BigUint;
use tropkex::{power, OpCounter, Result, SemigroupOpKind, SemigroupPair, SquareCache, TropicalMatrix};

pub fn run_example() -> Result<()> {
    let m = TropicalMatrix::from_rows([[3, -1, 4], [1, -5, 9], [2, 6, -5]])?;
    let h = TropicalMatrix::from_rows([[3, 5, -8], [9, 7, 9], [3, 2, 3]])?;
    let base = SemigroupPair::new(m, h)?;

    for op in SemigroupOpKind::ALL {
        println!("== {op} ==");
        let mut counter = OpCounter::new();
        let p = power(op, &base, &BigUint::from(1000u32), &mut counter)?;
        println!("(M, H)^1000 took {} operations; first component:\n{}", counter.get(), p.first);

        let mut build = OpCounter::new();
        let cache = SquareCache::build(op, base.clone(), 11, &mut build)?;
        let mut probe = OpCounter::new();
        let q = cache.power(&BigUint::from(1000u32), &mut probe)?;
        assert_eq!(p, q);
        println!("from {} stored squares: {} more operations", cache.levels(), probe.get());

        // first components only ever move down
        let firsts: Vec<TropicalMatrix> =
            (1..=12u32).map(|e| power(op, &base, &BigUint::from(e), &mut OpCounter::new()).map(|p| p.first)).collect::<Result<_>>()?;
        let descending = firsts.windows(2).all(|w| w[1].leq(&w[0]).unwrap_or(false));
        println!("M_1 ≥ M_2 ≥ … ≥ M_12: {descending}");
        println!("top-left entries: {:?}", firsts.iter().map(|f| f.get(0, 0).to_string()).collect::<Vec<_>>());
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
