//! Rays and cones of the permutohedral fan as subsets and chains of subsets
//! of `{1..n+1}`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::localization::Permutation;

/// Largest rank accepted by [`count_cones`].
pub const MAX_CONE_RANK: u32 = 9;
/// Largest rank accepted by [`surjectivity_check`].
pub const MAX_RAY_RANK: u32 = 7;

/// Nonempty proper subset of `{1..n+1}`, bit `j - 1` standing for `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProperSubset {
    mask: u32,
    universe: u32,
}

impl ProperSubset {
    pub fn new(mask: u32, universe: u32) -> Result<Self> {
        let full = full_mask(universe);
        if mask == 0 || mask & !full != 0 || mask == full {
            return Err(Error::InvalidArgument(format!(
                "{mask:#b} is not a nonempty proper subset of 1..={universe}"
            )));
        }
        Ok(Self { mask, universe })
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.universe as usize)
            .filter(|j| (self.mask >> j) & 1 == 1)
            .map(|j| j + 1)
            .collect()
    }
}

impl fmt::Display for ProperSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `S_1 ⊊ S_2 ⊊ ... ⊊ S_k`: a `k`-dimensional cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetChain(Vec<ProperSubset>);

impl SubsetChain {
    pub fn new(subsets: Vec<ProperSubset>) -> Result<Self> {
        for w in subsets.windows(2) {
            let (a, b) = (w[0].mask, w[1].mask);
            if a & b != a || a == b {
                return Err(Error::InvalidArgument(format!(
                    "{} is not strictly inside {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self(subsets))
    }

    pub fn subsets(&self) -> &[ProperSubset] {
        &self.0
    }
}

fn full_mask(universe: u32) -> u32 {
    if universe >= 32 {
        u32::MAX
    } else {
        (1u32 << universe) - 1
    }
}

/// The ray `u * varpi_i` as the subset `{u(1), ..., u(i)}`.
pub fn ray_subset(u: &Permutation, i: usize) -> Result<ProperSubset> {
    let size = u.size();
    if i == 0 || i >= size {
        return Err(Error::InvalidArgument(format!(
            "ray index {i} outside 1..={}",
            size.saturating_sub(1)
        )));
    }
    let mask = (1..=i).fold(0u32, |m, j| m | (1 << (u.apply(j) - 1)));
    ProperSubset::new(mask, size as u32)
}

/// Number of chains of `k` nonempty proper subsets of `{1..n+1}`, counted
/// over the Boolean lattice: `ending[S]` holds the chains whose top is `S`.
pub fn count_cones(n: u32, k: u32) -> Result<BigInt> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= k <= n, got k={k} n={n}"
        )));
    }
    if n > MAX_CONE_RANK {
        return Err(Error::ResourceLimit {
            what: "fan rank",
            size: n as u64,
            limit: MAX_CONE_RANK as u64,
        });
    }
    if k == 0 {
        return Ok(BigInt::from(1));
    }
    let full = full_mask(n + 1);
    let proper = |s: u32| s != 0 && s != full;
    let mut ending: Vec<u64> = (0..=full).map(|s| proper(s) as u64).collect();
    for _ in 1..k {
        let mut next = vec![0u64; ending.len()];
        for top in (1..full).filter(|&s| proper(s)) {
            // strict nonempty subsets of `top`
            let mut sub = (top - 1) & top;
            while sub != 0 {
                next[top as usize] += ending[sub as usize];
                sub = (sub - 1) & top;
            }
        }
        ending = next;
    }
    Ok(ending.iter().map(|&c| BigInt::from(c)).sum())
}

/// Ordered partitions of `elements` labelled items into `blocks` nonempty
/// blocks, by inclusion-exclusion over empty blocks.
pub fn ordered_set_partitions(elements: u32, blocks: u32) -> BigInt {
    let mut total = BigInt::zero();
    for empty in 0..=blocks {
        let term =
            binomial(blocks as i64, empty as i64) * BigInt::from(blocks - empty).pow(elements);
        if empty % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Whether `{u(1), ..., u(i)}` over all `u` and `i` hits every nonempty
/// proper subset of `{1..n+1}`.
pub fn surjectivity_check(n: u32) -> Result<bool> {
    if n > MAX_RAY_RANK {
        return Err(Error::ResourceLimit {
            what: "fan rank",
            size: n as u64,
            limit: MAX_RAY_RANK as u64,
        });
    }
    if n == 0 {
        return Ok(true);
    }
    let size = n as usize + 1;
    let mut hit = BTreeSet::new();
    for u in Permutation::all(size) {
        for i in 1..=n as usize {
            hit.insert(ray_subset(&u, i)?.mask());
        }
    }
    let expected = (1..full_mask(n + 1)).count();
    Ok(hit.len() == expected)
}
