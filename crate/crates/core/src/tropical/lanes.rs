//! Width-adaptive entry storage and the min-plus kernels that run on it.
//!
//! Every matrix keeps its entries in the narrowest lane that fits all of them
//! with one bit of headroom, so that the sum of any two entries of the same
//! lane never overflows that lane. Values are always exact; the lane is only a
//! representation choice and is normalised after every operation.

use std::borrow::Cow;

use ethnum::I256;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Widest two's-complement width, in bits, kept in the `i64` lane.
const NARROW_WIDTH: u64 = 63;
/// Widest two's-complement width, in bits, kept in the `I256` lane.
const WIDE_WIDTH: u64 = 255;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Tier {
    Narrow,
    Wide,
    Big,
}

impl Tier {
    fn for_width(width: u64) -> Tier {
        if width <= NARROW_WIDTH {
            Tier::Narrow
        } else if width <= WIDE_WIDTH {
            Tier::Wide
        } else {
            Tier::Big
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Entries {
    Narrow(Vec<i64>),
    Wide(Vec<I256>),
    Big(Vec<BigInt>),
}

pub(crate) trait Lane: Clone + Ord {
    fn plus(&self, other: &Self) -> Self;
    fn magnitude_bits(&self) -> u64;
}

impl Lane for i64 {
    #[inline(always)]
    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn magnitude_bits(&self) -> u64 {
        u64::from(64 - self.unsigned_abs().leading_zeros())
    }
}

impl Lane for I256 {
    #[inline(always)]
    fn plus(&self, other: &Self) -> Self {
        self.wrapping_add(*other)
    }

    fn magnitude_bits(&self) -> u64 {
        u64::from(256 - self.unsigned_abs().leading_zeros())
    }
}

impl Lane for BigInt {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn magnitude_bits(&self) -> u64 {
        self.bits()
    }
}

// Two's-complement width of a set of values: OR together `x ^ (x >> sign)`,
// which maps negatives to their ones' complement, then count bits plus sign.

fn narrow_width(v: &[i64]) -> u64 {
    let folded = v.iter().fold(0u64, |acc, &x| acc | (x ^ (x >> 63)) as u64);
    u64::from(64 - folded.leading_zeros()) + 1
}

fn wide_width(v: &[I256]) -> u64 {
    let (mut hi_acc, mut lo_acc) = (0i128, 0i128);
    for x in v {
        let (hi, lo) = x.into_words();
        let sign = hi >> 127;
        hi_acc |= hi ^ sign;
        lo_acc |= lo ^ sign;
    }
    let bits = if hi_acc != 0 {
        256 - (hi_acc as u128).leading_zeros()
    } else {
        128 - (lo_acc as u128).leading_zeros()
    };
    u64::from(bits) + 1
}

fn big_width(v: &[BigInt]) -> u64 {
    v.iter()
        .map(|x| if x.sign() == num_bigint::Sign::Minus { (-x - 1u32).bits() } else { x.bits() })
        .max()
        .unwrap_or(0)
        + 1
}

fn wide_to_big(x: &I256) -> BigInt {
    BigInt::from_signed_bytes_le(&x.to_le_bytes())
}

fn big_to_wide(x: &BigInt) -> I256 {
    let bytes = x.to_signed_bytes_le();
    debug_assert!(bytes.len() <= 32);
    let fill = if x.sign() == num_bigint::Sign::Minus { 0xff } else { 0 };
    let mut buf = [fill; 32];
    buf[..bytes.len()].copy_from_slice(&bytes);
    I256::from_le_bytes(buf)
}

impl Entries {
    pub(crate) fn from_big(values: Vec<BigInt>) -> Entries {
        Entries::Big(values).normalized()
    }

    pub(crate) fn tier(&self) -> Tier {
        match self {
            Entries::Narrow(_) => Tier::Narrow,
            Entries::Wide(_) => Tier::Wide,
            Entries::Big(_) => Tier::Big,
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Entries::Narrow(v) => v.len(),
            Entries::Wide(v) => v.len(),
            Entries::Big(v) => v.len(),
        }
    }

    pub(crate) fn get(&self, idx: usize) -> BigInt {
        match self {
            Entries::Narrow(v) => BigInt::from(v[idx]),
            Entries::Wide(v) => wide_to_big(&v[idx]),
            Entries::Big(v) => v[idx].clone(),
        }
    }

    pub(crate) fn to_big(&self) -> Vec<BigInt> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Per-entry magnitude bit lengths.
    pub(crate) fn bit_lengths(&self) -> Vec<u64> {
        match self {
            Entries::Narrow(v) => v.iter().map(Lane::magnitude_bits).collect(),
            Entries::Wide(v) => v.iter().map(Lane::magnitude_bits).collect(),
            Entries::Big(v) => v.iter().map(Lane::magnitude_bits).collect(),
        }
    }

    fn width(&self) -> u64 {
        match self {
            Entries::Narrow(v) => narrow_width(v),
            Entries::Wide(v) => wide_width(v),
            Entries::Big(v) => big_width(v),
        }
    }

    /// Re-encodes into the narrowest lane that holds every entry.
    pub(crate) fn normalized(self) -> Entries {
        let target = Tier::for_width(self.width());
        if target == self.tier() {
            return self;
        }
        match (self, target) {
            (Entries::Narrow(v), Tier::Wide) => Entries::Wide(v.into_iter().map(I256::from).collect()),
            (Entries::Narrow(v), Tier::Big) => Entries::Big(v.into_iter().map(BigInt::from).collect()),
            (Entries::Wide(v), Tier::Narrow) => Entries::Narrow(v.into_iter().map(|x| x.as_i64()).collect()),
            (Entries::Wide(v), Tier::Big) => Entries::Big(v.iter().map(wide_to_big).collect()),
            (Entries::Big(v), Tier::Narrow) => Entries::Narrow(
                v.iter()
                    .map(|x| x.to_i64().expect("value fits the narrow lane"))
                    .collect(),
            ),
            (Entries::Big(v), Tier::Wide) => Entries::Wide(v.iter().map(big_to_wide).collect()),
            (same, _) => same,
        }
    }

    fn as_narrow(&self) -> Cow<'_, [i64]> {
        match self {
            Entries::Narrow(v) => Cow::Borrowed(v),
            _ => unreachable!("entries are only lifted to a wider lane"),
        }
    }

    fn as_wide(&self) -> Cow<'_, [I256]> {
        match self {
            Entries::Narrow(v) => Cow::Owned(v.iter().map(|&x| I256::from(x)).collect()),
            Entries::Wide(v) => Cow::Borrowed(v),
            Entries::Big(_) => unreachable!("entries are only lifted to a wider lane"),
        }
    }

    fn as_big(&self) -> Cow<'_, [BigInt]> {
        match self {
            Entries::Big(v) => Cow::Borrowed(v),
            other => Cow::Owned(other.to_big()),
        }
    }
}

/// Returns `(a ≤ b, b ≤ a)` under the entrywise order.
pub(crate) fn order_flags(a: &Entries, b: &Entries) -> (bool, bool) {
    match (a, b) {
        (Entries::Narrow(x), Entries::Narrow(y)) => flags(x, y),
        (Entries::Wide(x), Entries::Wide(y)) => flags(x, y),
        _ => match a.tier().max(b.tier()) {
            Tier::Big => flags(&a.as_big(), &b.as_big()),
            _ => flags(&a.as_wide(), &b.as_wide()),
        },
    }
}

fn flags<T: Ord>(x: &[T], y: &[T]) -> (bool, bool) {
    let (mut le, mut ge) = (true, true);
    for (a, b) in x.iter().zip(y) {
        match a.cmp(b) {
            std::cmp::Ordering::Less => ge = false,
            std::cmp::Ordering::Greater => le = false,
            std::cmp::Ordering::Equal => {}
        }
        if !le && !ge {
            break;
        }
    }
    (le, ge)
}

/// One min-plus product term `a ⊗ b`; either side may be read transposed.
#[derive(Clone, Copy)]
pub(crate) struct Product<'a> {
    pub(crate) left: &'a Entries,
    pub(crate) left_transposed: bool,
    pub(crate) right: &'a Entries,
    pub(crate) right_transposed: bool,
}

/// Computes `s₁ ⊕ s₂ ⊕ … ⊕ (a₁ ⊗ b₁) ⊕ (a₂ ⊗ b₂) ⊕ …` for k×k operands in a
/// single pass over a common lane. At least one term must be supplied.
pub(crate) fn fused(dim: usize, sums: &[&Entries], products: &[Product<'_>]) -> Entries {
    let tier = sums
        .iter()
        .map(|e| e.tier())
        .chain(products.iter().flat_map(|p| [p.left.tier(), p.right.tier()]))
        .max()
        .expect("at least one term");
    let out = match tier {
        Tier::Narrow => Entries::Narrow(fused_in(dim, sums, products, Entries::as_narrow)),
        Tier::Wide => Entries::Wide(fused_in(dim, sums, products, Entries::as_wide)),
        Tier::Big => Entries::Big(fused_in(dim, sums, products, Entries::as_big)),
    };
    out.normalized()
}

fn fused_in<'e, T: Lane + 'e>(
    dim: usize,
    sums: &[&'e Entries],
    products: &[Product<'e>],
    lift: impl Fn(&'e Entries) -> Cow<'e, [T]>,
) -> Vec<T> {
    let mut acc: Option<Vec<T>> = None;
    for s in sums {
        let v = lift(s);
        acc = Some(match acc {
            None => v.into_owned(),
            Some(mut a) => {
                min_assign(&mut a, &v);
                a
            }
        });
    }
    for p in products {
        let orient = |e: &'e Entries, flip: bool| {
            let v = lift(e);
            if flip {
                Cow::Owned(transposed(dim, &v))
            } else {
                v
            }
        };
        let left = orient(p.left, p.left_transposed);
        let right = orient(p.right, p.right_transposed);
        acc = Some(min_plus(dim, acc, &left, &right));
    }
    acc.expect("at least one term")
}

fn min_assign<T: Lane>(acc: &mut [T], other: &[T]) {
    for (a, b) in acc.iter_mut().zip(other) {
        if *b < *a {
            *a = b.clone();
        }
    }
}

pub(crate) fn transposed<T: Clone>(dim: usize, v: &[T]) -> Vec<T> {
    let mut out = v.to_vec();
    for i in 0..dim {
        for j in 0..dim {
            out[j * dim + i] = v[i * dim + j].clone();
        }
    }
    out
}

/// `acc ⊕ (a ⊗ b)` in row-major layout; `acc = None` means no accumulator.
fn min_plus<T: Lane>(dim: usize, acc: Option<Vec<T>>, a: &[T], b: &[T]) -> Vec<T> {
    let mut out = match acc {
        Some(v) => v,
        None => {
            // seed every row with the l = 0 term
            let mut v = Vec::with_capacity(dim * dim);
            for i in 0..dim {
                let ai0 = &a[i * dim];
                v.extend(b[..dim].iter().map(|b0j| ai0.plus(b0j)));
            }
            v
        }
    };
    for i in 0..dim {
        let row = &mut out[i * dim..(i + 1) * dim];
        for l in 0..dim {
            let ail = &a[i * dim + l];
            let brow = &b[l * dim..(l + 1) * dim];
            for (c, blj) in row.iter_mut().zip(brow) {
                let s = ail.plus(blj);
                if s < *c {
                    *c = s;
                }
            }
        }
    }
    out
}
