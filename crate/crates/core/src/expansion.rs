//! Brute-force expansion of `c_k c_{n-k}` into monomials in the simple-root
//! classes, each reduced to a multiple of `c_n`.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::{reduction_coefficient, ExponentVector};

/// Largest `n` the expansion accepts; `C(12,6)^2` is about 8.5e5 terms.
pub const MAX_N: u32 = 12;

/// One term of `e_k * e_{n-k}`: index set `a` from `c_k`, `b` from `c_{n-k}`.
/// Bit `j - 1` of a mask stands for the index `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TermPair {
    pub a: u32,
    pub b: u32,
}

impl TermPair {
    pub fn exponents(&self, n: u32) -> Vec<u8> {
        (0..n)
            .map(|j| ((self.a >> j) & 1) as u8 + ((self.b >> j) & 1) as u8)
            .collect()
    }

    pub fn vector(&self, n: u32) -> ExponentVector {
        ExponentVector::new(self.exponents(n)).expect("entries are at most 2")
    }

    /// Number of squared factors, `|A ∩ B|`.
    pub fn squares(&self) -> u32 {
        (self.a & self.b).count_ones()
    }

    /// 1-based members of `a`.
    pub fn a_indices(&self) -> Vec<u32> {
        mask_indices(self.a)
    }

    pub fn b_indices(&self) -> Vec<u32> {
        mask_indices(self.b)
    }
}

fn mask_indices(mask: u32) -> Vec<u32> {
    (0..32)
        .filter(|j| (mask >> j) & 1 == 1)
        .map(|j| j + 1)
        .collect()
}

fn check(k: u32, n: u32) -> Result<()> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= k <= n, got k={k} n={n}"
        )));
    }
    if n > MAX_N {
        return Err(Error::ResourceLimit {
            what: "expansion dimension",
            size: n as u64,
            limit: MAX_N as u64,
        });
    }
    Ok(())
}

/// `size`-subsets of `{1..n}` as masks, in lexicographic order.
fn subsets(n: u32, size: u32) -> Vec<u32> {
    (0..n)
        .combinations(size as usize)
        .map(|c| c.into_iter().fold(0u32, |m, j| m | (1 << j)))
        .collect()
}

/// Every pair `(A, B)` with `|A| = k`, `|B| = n - k`, lexicographic in `A` then `B`.
pub fn enumerate_terms(k: u32, n: u32) -> Result<impl Iterator<Item = TermPair>> {
    check(k, n)?;
    let bs = subsets(n, n - k);
    Ok(subsets(n, k)
        .into_iter()
        .flat_map(move |a| bs.clone().into_iter().map(move |b| TermPair { a, b })))
}

/// Multiplicity of every distinct exponent vector among the terms.
fn tally(k: u32, n: u32) -> Result<HashMap<Vec<u8>, u64>> {
    check(k, n)?;
    let a_sets = subsets(n, k);
    let b_sets = subsets(n, n - k);
    let tally_from = |a: u32| {
        let mut local: HashMap<Vec<u8>, u64> = HashMap::new();
        for &b in &b_sets {
            *local.entry(TermPair { a, b }.exponents(n)).or_default() += 1;
        }
        local
    };
    let merge = |mut x: HashMap<Vec<u8>, u64>, y: HashMap<Vec<u8>, u64>| {
        for (key, c) in y {
            *x.entry(key).or_default() += c;
        }
        x
    };

    #[cfg(feature = "parallel")]
    let counts = {
        use rayon::prelude::*;
        a_sets
            .par_iter()
            .map(|&a| tally_from(a))
            .reduce(HashMap::new, merge)
    };
    #[cfg(not(feature = "parallel"))]
    let counts = a_sets
        .iter()
        .map(|&a| tally_from(a))
        .fold(HashMap::new(), merge);

    Ok(counts)
}

/// Total of `reduction_coefficient` over all terms, bucketed by the number
/// of squared factors. Buckets `0..=k` are always present.
pub fn contribution_histogram(k: u32, n: u32) -> Result<BTreeMap<u32, BigRational>> {
    let mut buckets: BTreeMap<u32, BigRational> =
        (0..=k).map(|i| (i, BigRational::zero())).collect();
    for (exponents, count) in tally(k, n)? {
        let squares = exponents.iter().filter(|&&e| e == 2).count() as u32;
        // n = 0: the single empty term is c_0 * c_0 = 1
        let q = if exponents.is_empty() {
            BigRational::one()
        } else {
            reduction_coefficient(&ExponentVector::new(exponents)?)?
        };
        if !q.is_zero() {
            *buckets.entry(squares).or_insert_with(BigRational::zero) +=
                q * BigRational::from_integer(BigInt::from(count));
        }
    }
    Ok(buckets)
}

/// `mu_k(n)` as the plain sum of reduced coefficients over all terms.
pub fn mu_bruteforce(k: u32, n: u32) -> Result<BigRational> {
    Ok(contribution_histogram(k, n)?.into_values().sum())
}
