// Min-plus matrix arithmetic: `⊕` is entrywise min, `⊗` is the min-plus
// product, and `X ≤ Y` means `X ⊕ Y = X`.

use num_bigint::BigInt;
use tropkex::{ChainOrdering, Result, TropicalMatrix};

pub fn run_example() -> Result<()> {
    let a = TropicalMatrix::from_rows([[0, 1], [2, 3]])?;
    let b = TropicalMatrix::from_rows([[4, 5], [6, 7]])?;
    println!("A =\n{a}");
    println!("B =\n{b}");
    println!("A ⊕ B =\n{}", a.oplus(&b)?);
    println!("A ⊗ B =\n{}", a.otimes(&b)?);
    println!("Aᵀ =\n{}", a.transpose());

    assert_eq!(a.otimes(&b)?, b);
    assert_eq!(a.oplus(&a)?, a);

    // entries are exact integers of any size
    let huge = TropicalMatrix::from_entries(1, [-(BigInt::from(1) << 200u32)])?;
    let zero = TropicalMatrix::zeros(1)?;
    println!("[-2^200] ⊕ [0] = {}", huge.oplus(&zero)?);
    println!("[-2^200] ≤ [0]: {}", huge.leq(&zero)?);

    let x = TropicalMatrix::from_rows([[1, 2], [3, 4]])?;
    let y = TropicalMatrix::from_rows([[2, 1], [3, 4]])?;
    assert_eq!(x.chain_compare(&y)?, ChainOrdering::Incomparable);
    println!("{:?} vs {:?}: {:?}", x.to_rows(), y.to_rows(), x.chain_compare(&y)?);

    println!("as JSON: {}", serde_json::to_string(&huge)?);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
