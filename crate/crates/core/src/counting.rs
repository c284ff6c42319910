//! Raw and Net arrangement counts of block multisets.
//!
//! A monomial with `i` squared factors in `c_k * c_{n-k}` corresponds to a
//! linear arrangement of `m` M blocks, `l` L blocks, `r` R blocks, `k - i`
//! ones coming from `c_k` and `n - k - i` ones coming from `c_{n-k}`. The Raw
//! count admits every arrangement; the Net count forbids an L block directly
//! followed by an R block (that pair is read as an M block instead).
//!
//! Closed forms live next to enumeration oracles that walk the arrangements
//! one by one.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{binomial, multinomial};
use crate::error::{Error, Result};

/// Numbers of M, L and R blocks in an arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BlockProfile {
    pub m: u32,
    pub l: u32,
    pub r: u32,
}

impl BlockProfile {
    pub const fn new(m: u32, l: u32, r: u32) -> Self {
        Self { m, l, r }
    }

    /// Number of squared factors carried by the profile, `2m + l + r`.
    pub const fn squares(&self) -> u32 {
        2 * self.m + self.l + self.r
    }

    /// All profiles with `2m + l + r = i`, ordered by `m`, then `l`.
    pub fn with_squares(i: u32) -> impl Iterator<Item = BlockProfile> {
        (0..=i / 2).flat_map(move |m| (0..=i - 2 * m).map(move |l| Self::new(m, l, i - 2 * m - l)))
    }
}

/// Ambient dimension `n`, Chern index `k` and number of squared factors `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountContext {
    pub n: u32,
    pub k: u32,
    pub i: u32,
}

impl CountContext {
    pub fn new(n: u32, k: u32, i: u32) -> Result<Self> {
        if i > k || k > n {
            return Err(Error::InvalidArgument(format!(
                "count context requires 0 <= i <= k <= n, got n={n} k={k} i={i}"
            )));
        }
        Ok(Self { n, k, i })
    }

    fn check(&self, p: &BlockProfile) -> Result<()> {
        if p.squares() != self.i {
            return Err(Error::InvalidProfile {
                m: p.m,
                l: p.l,
                r: p.r,
                i: self.i,
            });
        }
        Ok(())
    }

    /// Ones coming from `c_k` and from `c_{n-k}`; `None` when `i > n - k`.
    fn ones(&self) -> Option<(u32, u32)> {
        let from_k = self.k - self.i;
        let from_rest = (self.n - self.k).checked_sub(self.i)?;
        Some((from_k, from_rest))
    }
}

/// `multinomial(m, l, r) * C(n-3m-l-r, m+l+r) * C(n-2i, k-i)`.
pub fn raw_count(p: &BlockProfile, c: &CountContext) -> Result<BigInt> {
    c.check(p)?;
    let (m, l, r) = (p.m as i64, p.l as i64, p.r as i64);
    let (n, k, i) = (c.n as i64, c.k as i64, c.i as i64);
    Ok(multinomial(&[m, l, r])?
        * binomial(n - 3 * m - l - r, m + l + r)
        * binomial(n - 2 * i, k - i))
}

/// Inclusion-exclusion over the number of L,R pairs glued into M blocks:
/// `sum_p (-1)^p C(m+p, p) Raw(m+p, l-p, r-p)`.
pub fn net_count(p: &BlockProfile, c: &CountContext) -> Result<BigInt> {
    c.check(p)?;
    let mut total = BigInt::zero();
    for glued in 0..=p.l.min(p.r) {
        let shifted = BlockProfile::new(p.m + glued, p.l - glued, p.r - glued);
        let term = binomial((p.m + glued) as i64, glued as i64) * raw_count(&shifted, c)?;
        if glued % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// Largest block multiset the enumeration oracles accept.
pub const ENUMERATION_LIMIT: u64 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    M,
    L,
    R,
    OneK,
    OneRest,
}

const KINDS: [Kind; 5] = [Kind::M, Kind::L, Kind::R, Kind::OneK, Kind::OneRest];

/// Counts arrangements of the block multiset by walking every distinct
/// sequence. With `forbid_lr` set, sequences containing L directly followed
/// by R are skipped.
fn enumerate(p: &BlockProfile, c: &CountContext, forbid_lr: bool) -> Result<BigInt> {
    c.check(p)?;
    let Some((from_k, from_rest)) = c.ones() else {
        return Ok(BigInt::zero());
    };
    let remaining = [p.m, p.l, p.r, from_k, from_rest];
    let size: u64 = remaining.iter().map(|&x| x as u64).sum();
    if size > ENUMERATION_LIMIT {
        return Err(Error::ResourceLimit {
            what: "block multiset",
            size,
            limit: ENUMERATION_LIMIT,
        });
    }
    if size == 0 {
        return Ok(BigInt::from(1));
    }

    let first_choices: Vec<usize> = (0..KINDS.len()).filter(|&j| remaining[j] > 0).collect();
    let from_first = |j: usize| {
        let mut rest = remaining;
        rest[j] -= 1;
        walk(&mut rest, Some(KINDS[j]), forbid_lr)
    };

    #[cfg(feature = "parallel")]
    let total: u64 = {
        use rayon::prelude::*;
        first_choices.par_iter().map(|&j| from_first(j)).sum()
    };
    #[cfg(not(feature = "parallel"))]
    let total: u64 = first_choices.iter().map(|&j| from_first(j)).sum();

    Ok(BigInt::from(total))
}

fn walk(remaining: &mut [u32; 5], last: Option<Kind>, forbid_lr: bool) -> u64 {
    if remaining.iter().all(|&x| x == 0) {
        return 1;
    }
    let mut count = 0;
    for (j, &kind) in KINDS.iter().enumerate() {
        if remaining[j] == 0 {
            continue;
        }
        if forbid_lr && last == Some(Kind::L) && kind == Kind::R {
            continue;
        }
        remaining[j] -= 1;
        count += walk(remaining, Some(kind), forbid_lr);
        remaining[j] += 1;
    }
    count
}

/// Raw count by direct enumeration of multiset permutations.
pub fn raw_count_enumerated(p: &BlockProfile, c: &CountContext) -> Result<BigInt> {
    enumerate(p, c, false)
}

/// Net count by enumerating and filtering out adjacent L,R pairs.
pub fn net_count_enumerated(p: &BlockProfile, c: &CountContext) -> Result<BigInt> {
    enumerate(p, c, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32, k: u32, i: u32) -> CountContext {
        CountContext::new(n, k, i).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn raw_examples() {
        let p = BlockProfile::new(0, 1, 0);
        assert_eq!(raw_count(&p, &ctx(4, 1, 1)).unwrap(), big(3));
        assert_eq!(raw_count_enumerated(&p, &ctx(4, 1, 1)).unwrap(), big(3));

        let empty = BlockProfile::default();
        assert_eq!(raw_count(&empty, &ctx(5, 2, 0)).unwrap(), big(10));
        assert_eq!(raw_count_enumerated(&empty, &ctx(3, 1, 0)).unwrap(), big(3));

        let lr = BlockProfile::new(0, 1, 1);
        assert_eq!(raw_count(&lr, &ctx(6, 2, 2)).unwrap(), big(12));

        let m = BlockProfile::new(1, 0, 0);
        assert_eq!(raw_count_enumerated(&m, &ctx(6, 2, 2)).unwrap(), big(3));
        assert_eq!(raw_count(&m, &ctx(6, 2, 2)).unwrap(), big(3));
    }

    #[test]
    fn net_examples() {
        let lr = BlockProfile::new(0, 1, 1);
        assert_eq!(net_count(&lr, &ctx(6, 2, 2)).unwrap(), big(9));
        assert_eq!(net_count_enumerated(&lr, &ctx(6, 2, 2)).unwrap(), big(9));
        assert_eq!(net_count_enumerated(&lr, &ctx(4, 2, 2)).unwrap(), big(1));
        assert_eq!(net_count(&lr, &ctx(4, 2, 2)).unwrap(), big(1));

        let ll = BlockProfile::new(0, 2, 0);
        let c = ctx(8, 2, 2);
        assert_eq!(
            net_count_enumerated(&ll, &c).unwrap(),
            raw_count_enumerated(&ll, &c).unwrap()
        );

        for n in 0..=8 {
            for k in 0..=n {
                let c = ctx(n, k, 0);
                let expected = binomial(n as i64, k as i64);
                assert_eq!(net_count(&BlockProfile::default(), &c).unwrap(), expected);
            }
        }
    }

    #[test]
    fn net_equals_raw_without_l_blocks() {
        for (m, r, n, k) in [(1, 1, 9, 3), (0, 2, 6, 2), (2, 0, 10, 5)] {
            let p = BlockProfile::new(m, 0, r);
            let c = ctx(n, k, p.squares());
            assert_eq!(net_count(&p, &c).unwrap(), raw_count(&p, &c).unwrap());
        }
    }

    #[test]
    fn mismatched_profile_is_rejected() {
        let p = BlockProfile::new(1, 0, 0);
        let c = ctx(6, 2, 1);
        assert!(matches!(
            raw_count(&p, &c),
            Err(Error::InvalidProfile { .. })
        ));
        assert!(matches!(
            net_count(&p, &c),
            Err(Error::InvalidProfile { .. })
        ));
        assert!(matches!(
            raw_count_enumerated(&p, &c),
            Err(Error::InvalidProfile { .. })
        ));
        assert!(CountContext::new(3, 4, 0).is_err());
        assert!(CountContext::new(3, 1, 2).is_err());
    }

    #[test]
    fn enumeration_respects_size_limit() {
        let c = ctx(20, 10, 0);
        assert!(matches!(
            raw_count_enumerated(&BlockProfile::default(), &c),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn out_of_range_binomials_give_zero() {
        // c_2 * c_1 has no room for two squared factors
        let p = BlockProfile::new(0, 1, 1);
        let c = ctx(3, 2, 2);
        assert_eq!(raw_count(&p, &c).unwrap(), big(0));
        assert_eq!(raw_count_enumerated(&p, &c).unwrap(), big(0));
    }

    #[test]
    fn profiles_with_squares_are_ordered() {
        let got: Vec<_> = BlockProfile::with_squares(2).collect();
        assert_eq!(
            got,
            vec![
                BlockProfile::new(0, 0, 2),
                BlockProfile::new(0, 1, 1),
                BlockProfile::new(0, 2, 0),
                BlockProfile::new(1, 0, 0),
            ]
        );
    }
}
