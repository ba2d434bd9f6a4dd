//! Min-plus scalars and square matrices over ℤ with exact arithmetic.
//!
//! `a ⊕ b = min(a, b)` and `a ⊗ b = a + b`. Matrices inherit the entrywise
//! `⊕` and the usual row-by-column product with these two operations. There is
//! no infinite element, so neither operation has an identity matrix here.

mod lanes;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub(crate) use lanes::Product;
use lanes::{fused, order_flags, Entries};

/// One element of the min-plus semiring over ℤ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TropicalScalar(pub BigInt);

impl TropicalScalar {
    pub fn oplus(&self, other: &Self) -> Self {
        self.min(other).clone()
    }

    pub fn otimes(&self, other: &Self) -> Self {
        TropicalScalar(&self.0 + &other.0)
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }
}

impl<T: Into<BigInt>> From<T> for TropicalScalar {
    fn from(v: T) -> Self {
        TropicalScalar(v.into())
    }
}

impl fmt::Display for TropicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for TropicalScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<BigInt>()
            .map(TropicalScalar)
            .map_err(|_| Error::invalid(format!("not a decimal integer: {s:?}")))
    }
}

/// Result of comparing two matrices that are expected to sit on one chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// A k×k matrix over the min-plus semiring.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct TropicalMatrix {
    dim: usize,
    entries: Entries,
}

impl TropicalMatrix {
    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn from_entries<I, T>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        if dim == 0 {
            return Err(Error::invalid("matrix dimension must be positive"));
        }
        let values: Vec<BigInt> = entries.into_iter().map(Into::into).collect();
        if values.len() != dim * dim {
            return Err(Error::invalid(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                values.len()
            )));
        }
        Ok(TropicalMatrix { dim, entries: Entries::from_big(values) })
    }

    /// Builds a matrix from its rows; every row must have as many entries as
    /// there are rows.
    pub fn from_rows<R, T>(rows: impl IntoIterator<Item = R>) -> Result<Self>
    where
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::invalid(format!(
                "matrix is not square: {dim} rows but a row of length {}",
                bad.len()
            )));
        }
        Self::from_entries(dim, rows.into_iter().flatten())
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::from_entries(dim, std::iter::repeat_n(0, dim * dim))
    }

    /// Draws every entry independently and uniformly from `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(dim: usize, bound: u64, rng: &mut R) -> Result<Self> {
        let b = i128::from(bound);
        let values: Vec<i128> = (0..dim * dim).map(|_| rng.gen_range(-b..=b)).collect();
        Self::from_entries(dim, values)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at zero-based row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> TropicalScalar {
        assert!(i < self.dim && j < self.dim, "index ({i}, {j}) out of range");
        TropicalScalar(self.entries.get(i * self.dim + j))
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        let flat = self.entries.to_big();
        flat.chunks(self.dim).map(<[BigInt]>::to_vec).collect()
    }

    /// Magnitude bit length of every entry, row-major (`0` has length 0).
    pub fn entry_bit_lengths(&self) -> Vec<u64> {
        self.entries.bit_lengths()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// Entrywise minimum.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.with_entries(fused(self.dim, &[&self.entries, &other.entries], &[])))
    }

    /// Min-plus product: `c_ij = min_l (a_il + b_lj)`.
    pub fn otimes(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.with_entries(fused(self.dim, &[], &[self.times(other)])))
    }

    pub fn transpose(&self) -> Self {
        let flat = self.entries.to_big();
        let t = lanes::transposed(self.dim, &flat);
        self.with_entries(Entries::from_big(t))
    }

    /// `self ≤ other`, i.e. `self ⊕ other == self`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_dim(other)?;
        Ok(order_flags(&self.entries, &other.entries).0)
    }

    pub fn chain_compare(&self, other: &Self) -> Result<ChainOrdering> {
        self.check_dim(other)?;
        Ok(match order_flags(&self.entries, &other.entries) {
            (true, true) => ChainOrdering::Equal,
            (true, false) => ChainOrdering::Less,
            (false, true) => ChainOrdering::Greater,
            (false, false) => ChainOrdering::Incomparable,
        })
    }

    /// A product term for [`TropicalMatrix::fused_sum`].
    pub(crate) fn times<'a>(&'a self, other: &'a Self) -> Product<'a> {
        Product { left: &self.entries, left_transposed: false, right: &other.entries, right_transposed: false }
    }

    /// `self ⊗ otherᵀ`.
    pub(crate) fn times_transposed<'a>(&'a self, other: &'a Self) -> Product<'a> {
        Product { right_transposed: true, ..self.times(other) }
    }

    /// `selfᵀ ⊗ other`.
    pub(crate) fn transposed_times<'a>(&'a self, other: &'a Self) -> Product<'a> {
        Product { left_transposed: true, ..self.times(other) }
    }

    /// `⊕` of the listed matrices and products, evaluated in one pass. All
    /// operands must share `dim`, which callers check beforehand.
    pub(crate) fn fused_sum(dim: usize, sums: &[&TropicalMatrix], products: &[Product<'_>]) -> Self {
        let sums: Vec<&Entries> = sums.iter().map(|m| &m.entries).collect();
        TropicalMatrix { dim, entries: fused(dim, &sums, products) }
    }

    fn with_entries(&self, entries: Entries) -> Self {
        TropicalMatrix { dim: self.dim, entries }
    }
}

impl fmt::Debug for TropicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for TropicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Wire form: entries as decimal strings so that any magnitude survives.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    k: usize,
    entries: Vec<Vec<String>>,
}

impl From<TropicalMatrix> for MatrixJson {
    fn from(m: TropicalMatrix) -> Self {
        let entries = m
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        MatrixJson { k: m.dim, entries }
    }
}

impl TryFrom<MatrixJson> for TropicalMatrix {
    type Error = Error;

    fn try_from(json: MatrixJson) -> Result<Self> {
        if json.entries.len() != json.k {
            return Err(Error::invalid(format!(
                "declared k = {} but found {} rows",
                json.k,
                json.entries.len()
            )));
        }
        let rows = json
            .entries
            .iter()
            .map(|r| r.iter().map(|s| s.parse::<TropicalScalar>().map(|x| x.0)).collect())
            .collect::<Result<Vec<Vec<BigInt>>>>()?;
        TropicalMatrix::from_rows(rows)
    }
}
