//! Contributions `X(k, i)` of monomials with `i` squared factors, the closed
//! form of `mu_k(n)` in `c_k c_{n-k} = mu_k(n) c_n`, the Chern number, and
//! checkers for the binomial identities connecting them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{as_integer, binomial, factorial, int, multinomial, ratio, rpow, sign};
use crate::counting::{net_count, raw_count, BlockProfile, CountContext};
use crate::error::{Error, Result};
use crate::monomial::profile_coefficient;

fn check_kn(k: u32, n: u32) -> Result<()> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= k <= n, got k={k} n={n}"
        )));
    }
    Ok(())
}

fn twelfth_power(j: i64) -> BigRational {
    rpow(&ratio(1, 12), j as u32)
}

/// `sum over 2m+l+r=i of (-1/2)^(l+r) (1/3)^m Net(m,l,r)(k,i)`.
pub fn x_contribution(k: u32, i: u32, n: u32) -> Result<BigRational> {
    let ctx = CountContext::new(n, k, i)?;
    let mut total = BigRational::zero();
    for p in BlockProfile::with_squares(i) {
        let net = net_count(&p, &ctx)?;
        if !net.is_zero() {
            total += profile_coefficient(&p) * int(net);
        }
    }
    Ok(total)
}

/// `X(i, i) = (-1)^i sum_j (1/12)^j C(i-j, j) C(n-i-j, i-j)`.
pub fn x_ii_closed(i: u32, n: u32) -> Result<BigRational> {
    check_kn(i, n)?;
    let (i, n) = (i as i64, n as i64);
    let sum = (0..=i / 2).fold(BigRational::zero(), |acc, j| {
        acc + twelfth_power(j) * int(binomial(i - j, j) * binomial(n - i - j, i - j))
    });
    Ok(sign(i) * sum)
}

/// `X(k, i) = C(n-2i, k-i) X(i, i)`.
pub fn x_via_factorization(k: u32, i: u32, n: u32) -> Result<BigRational> {
    CountContext::new(n, k, i)?;
    let spread = binomial(n as i64 - 2 * i as i64, k as i64 - i as i64);
    Ok(int(spread) * x_ii_closed(i, n)?)
}

/// `X(k, i) = (-1)^i sum_j (1/12)^j C(i-j, j) C(k-j, k-i) C(n-i-j, k-j)`.
pub fn x_expanded(k: u32, i: u32, n: u32) -> Result<BigRational> {
    CountContext::new(n, k, i)?;
    let (k, i, n) = (k as i64, i as i64, n as i64);
    let sum = (0..=i / 2).fold(BigRational::zero(), |acc, j| {
        acc + twelfth_power(j)
            * int(binomial(i - j, j) * binomial(k - j, k - i) * binomial(n - i - j, k - j))
    });
    Ok(sign(i) * sum)
}

/// The summands `(1/12)^j C(k-j, j) C(n-k-j, j)` of `mu_k(n)` for `j = 0..=k/2`.
pub fn mu_terms(k: u32, n: u32) -> Result<Vec<BigRational>> {
    check_kn(k, n)?;
    let (k, n) = (k as i64, n as i64);
    Ok((0..=k / 2)
        .map(|j| twelfth_power(j) * int(binomial(k - j, j) * binomial(n - k - j, j)))
        .collect())
}

/// `mu_k(n) = sum_{j <= k/2} (1/12)^j C(k-j, j) C(n-k-j, j)`.
pub fn mu_closed(k: u32, n: u32) -> Result<BigRational> {
    Ok(mu_terms(k, n)?.into_iter().sum())
}

/// `sum_{i=0}^{k} X(k, i)` with each `X` taken from the Net counts.
pub fn mu_via_contributions(k: u32, n: u32) -> Result<BigRational> {
    check_kn(k, n)?;
    (0..=k).try_fold(BigRational::zero(), |acc, i| {
        Ok(acc + x_contribution(k, i, n)?)
    })
}

/// `<c_k c_{n-k}, [X]> = (n+1)! mu_k(n)`; fails if the product is not an integer.
pub fn chern_number(k: u32, n: u32) -> Result<BigInt> {
    Ok(mu_result(k, n)?.chern_number)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuResult {
    pub n: u32,
    pub k: u32,
    pub mu: BigRational,
    pub chern_number: BigInt,
}

pub fn mu_result(k: u32, n: u32) -> Result<MuResult> {
    let mu = mu_closed(k, n)?;
    let product = int(factorial(n as i64 + 1)?) * &mu;
    let chern_number = as_integer(&product).ok_or_else(|| {
        Error::Inconsistency(format!(
            "({}+1)! * mu_{k}({n}) = {product} is not an integer",
            n
        ))
    })?;
    Ok(MuResult {
        n,
        k,
        mu,
        chern_number,
    })
}

/// `sum_r multinomial(M, L-r, r) == 2^L C(N, M)` for `L + M = N`.
pub fn check_tri_coef(l: u32, m: u32, n: u32) -> bool {
    if l + m != n {
        return false;
    }
    let lhs = (0..=l as i64).fold(BigInt::zero(), |acc, r| {
        acc + multinomial(&[m as i64, l as i64 - r, r]).expect("parts are non-negative")
    });
    lhs == (BigInt::one() << l) * binomial(n as i64, m as i64)
}

/// `sum_{l+r=L} Raw(M,l,r)(i,i) == 2^L C(L+M, M) C(n-3M-L, L+M)` for `2M + L = i`.
pub fn check_sum_of_raw(l_total: u32, m: u32, i: u32, n: u32) -> Result<bool> {
    if 2 * m + l_total != i {
        return Err(Error::InvalidArgument(format!(
            "need 2M + L = i, got M={m} L={l_total} i={i}"
        )));
    }
    let ctx = CountContext::new(n, i, i)?;
    let mut lhs = BigInt::zero();
    for r in 0..=l_total {
        lhs += raw_count(&BlockProfile::new(m, l_total - r, r), &ctx)?;
    }
    let (l, m, n) = (l_total as i64, m as i64, n as i64);
    let rhs = (BigInt::one() << l) * binomial(l + m, m) * binomial(n - 3 * m - l, l + m);
    Ok(lhs == rhs)
}

/// `sum_{p=0}^{u} (-1)^p C(u,p) C(s+p, t) == (-1)^u C(s, t-u)`.
pub fn check_alternating_binomial(u: i64, s: i64, t: i64) -> bool {
    if u < 0 {
        return false;
    }
    let lhs = (0..=u).fold(BigInt::zero(), |acc, p| {
        let term = binomial(u, p) * binomial(s + p, t);
        if p % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    let rhs = binomial(s, t - u);
    lhs == if u % 2 == 0 { rhs } else { -rhs }
}

/// `sum_{p=0}^{k-2j} (-1)^(k-p) C(k-p-j, j) C(k-j, p) C(n-k+p-j, k-j)
///  == C(k-j, j) C(n-k-j, j)`.
pub fn check_key_equality(k: u32, j: u32, n: u32) -> Result<bool> {
    check_kn(k, n)?;
    if 2 * j > k {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= j <= k/2, got j={j} k={k}"
        )));
    }
    let (k, j, n) = (k as i64, j as i64, n as i64);
    let lhs = (0..=k - 2 * j).fold(BigInt::zero(), |acc, p| {
        let term = binomial(k - p - j, j) * binomial(k - j, p) * binomial(n - k + p - j, k - j);
        if (k - p) % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    Ok(lhs == binomial(k - j, j) * binomial(n - k - j, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_contribution_examples() {
        assert_eq!(x_contribution(1, 0, 2).unwrap(), int(2));
        assert_eq!(x_contribution(1, 1, 2).unwrap(), int(-1));
        assert_eq!(x_contribution(2, 2, 4).unwrap(), ratio(13, 12));
        assert!(x_contribution(1, 2, 4).is_err());
    }

    #[test]
    fn x_ii_examples() {
        for n in 1..=12 {
            assert_eq!(x_ii_closed(1, n).unwrap(), int(-(n as i64 - 1)));
            assert_eq!(x_ii_closed(0, n).unwrap(), int(1));
        }
        assert_eq!(x_ii_closed(2, 4).unwrap(), ratio(13, 12));
        assert!(x_ii_closed(3, 2).is_err());
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(x_via_factorization(2, 1, 4).unwrap(), int(-6));
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(
                    x_via_factorization(k, 0, n).unwrap(),
                    int(binomial(n as i64, k as i64))
                );
            }
        }
        assert_eq!(
            x_via_factorization(3, 3, 6).unwrap(),
            x_ii_closed(3, 6).unwrap()
        );
    }

    #[test]
    fn mu_examples() {
        for n in 1..=30 {
            assert_eq!(mu_closed(1, n).unwrap(), int(1));
            assert_eq!(mu_closed(0, n).unwrap(), int(1));
        }
        assert_eq!(mu_closed(2, 4).unwrap(), ratio(13, 12));
        assert_eq!(mu_closed(4, 8).unwrap(), ratio(253, 144));
        assert!(mu_closed(5, 3).is_err());
        assert_eq!(
            mu_terms(4, 8).unwrap(),
            vec![int(1), ratio(9, 12), ratio(1, 144)]
        );
    }

    #[test]
    fn mu_via_contributions_examples() {
        assert_eq!(mu_via_contributions(1, 2).unwrap(), int(1));
        assert_eq!(mu_via_contributions(2, 4).unwrap(), ratio(13, 12));
        assert_eq!(x_contribution(2, 0, 4).unwrap(), int(6));
        assert_eq!(x_contribution(2, 1, 4).unwrap(), int(-6));
        for n in 0..=6 {
            assert_eq!(mu_via_contributions(0, n).unwrap(), int(1));
        }
    }

    #[test]
    fn chern_number_examples() {
        assert_eq!(chern_number(1, 2).unwrap(), BigInt::from(6));
        assert_eq!(chern_number(2, 4).unwrap(), BigInt::from(130));
        for n in 0..=10u32 {
            assert_eq!(
                chern_number(n, n).unwrap(),
                factorial(n as i64 + 1).unwrap()
            );
        }
    }

    #[test]
    fn identity_examples() {
        assert!(check_tri_coef(2, 1, 3));
        assert!(check_tri_coef(0, 5, 5));
        assert!(check_tri_coef(3, 0, 3));
        assert!(!check_tri_coef(2, 2, 3));

        assert!(check_sum_of_raw(2, 0, 2, 6).unwrap());
        assert!(check_sum_of_raw(0, 1, 2, 6).unwrap());
        assert!(check_sum_of_raw(1, 1, 3, 8).unwrap());
        assert!(check_sum_of_raw(1, 1, 2, 8).is_err());

        assert!(check_alternating_binomial(1, 2, 1));
        assert!(check_alternating_binomial(0, 4, 2));
        assert!(check_alternating_binomial(2, 3, 2));

        assert!(check_key_equality(2, 1, 5).unwrap());
        assert!(check_key_equality(1, 0, 3).unwrap());
        assert!(check_key_equality(0, 0, 4).unwrap());
        assert!(check_key_equality(2, 2, 5).is_err());
    }
}
