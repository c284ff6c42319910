//! Torus fixed-point localization on the permutohedral variety.
//!
//! The fixed points are the Weyl chambers, one per permutation `w` of
//! `{1..n+1}`; at `w` the tangent weights are `w(alpha_i) = t_{w(i)} - t_{w(i+1)}`
//! and the class `alpha_i` restricts to the same linear form. A top-degree
//! class is therefore paired with `[X]` by summing, over all `w`, the
//! restriction divided by the product of the tangent weights, evaluated at a
//! point `t` with distinct coordinates.
//!
//! Every summand is a ratio of two forms of degree `n`, so flipping the sign
//! convention of the tangent weights flips numerator and denominator
//! together and does not change the result.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::monomial::ExponentVector;

/// Point `(t_1, ..., t_{n+1})` with pairwise-distinct rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationPoint {
    coords: Vec<BigRational>,
}

impl EvaluationPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument(
                "evaluation point needs at least one coordinate".into(),
            ));
        }
        let mut sorted = coords.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DegeneratePoint(w[0].to_string()));
        }
        Ok(Self { coords })
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self> {
        Self::new(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `t_j = j` for `j = 1..=n+1`.
    pub fn standard(n: usize) -> Self {
        Self::from_integers(&(1..=n as i64 + 1).collect::<Vec<_>>()).expect("distinct")
    }

    /// `t_j = j^2` for `j = 1..=n+1`.
    pub fn squares(n: usize) -> Self {
        Self::from_integers(&(1..=n as i64 + 1).map(|j| j * j).collect::<Vec<_>>())
            .expect("distinct")
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// The rank `n`; the point has `n + 1` coordinates.
    pub fn rank(&self) -> usize {
        self.coords.len() - 1
    }

    /// Coordinates multiplied by the lcm of their denominators. Every
    /// localization summand is homogeneous of degree 0, so this rescaling
    /// leaves the pairings unchanged.
    fn integer_coords(&self) -> Vec<BigInt> {
        let lcm = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.coords
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect()
    }
}

/// A permutation of `{1..size}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// From 1-based images `(w(1), ..., w(size))`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let size = images.len();
        let mut seen = vec![false; size];
        for &x in images {
            if x == 0 || x > size || seen[x - 1] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Self(images.iter().map(|x| x - 1).collect()))
    }

    pub fn identity(size: usize) -> Self {
        Self((0..size).collect())
    }

    /// Swaps the 1-based points `a` and `b`.
    pub fn transposition(size: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=size).collect();
        if a == 0 || b == 0 || a > size || b > size {
            return Err(Error::InvalidArgument(format!(
                "transposition ({a} {b}) outside 1..={size}"
            )));
        }
        images.swap(a - 1, b - 1);
        Self::from_images(&images)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    /// All permutations of `{1..size}` in lexicographic order.
    pub fn all(size: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..size).collect();
        loop {
            out.push(Permutation(current.clone()));
            if !next_permutation(&mut current) {
                return out;
            }
        }
    }
}

/// Advances to the next permutation in lexicographic order; false at the last one.
fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(pivot) = (1..xs.len())
        .rev()
        .find(|&j| xs[j - 1] < xs[j])
        .map(|j| j - 1)
    else {
        return false;
    };
    let succ = (pivot + 1..xs.len())
        .rev()
        .find(|&j| xs[j] > xs[pivot])
        .unwrap();
    xs.swap(pivot, succ);
    xs[pivot + 1..].reverse();
    true
}

/// `(t_{w(1)} - t_{w(2)}, ..., t_{w(n)} - t_{w(n+1)})`.
pub fn root_values(w: &Permutation, t: &EvaluationPoint) -> Result<Vec<BigRational>> {
    if w.size() != t.coords.len() {
        return Err(Error::InvalidArgument(format!(
            "permutation of {} points against a point with {} coordinates",
            w.size(),
            t.coords.len()
        )));
    }
    Ok(w.0
        .windows(2)
        .map(|p| &t.coords[p[0]] - &t.coords[p[1]])
        .collect())
}

/// `e_j(values)` by the one-pass recurrence `e_j <- e_j + x e_{j-1}`.
pub fn elementary_symmetric(values: &[BigRational], j: usize) -> Result<BigRational> {
    if j > values.len() {
        return Err(Error::InvalidArgument(format!(
            "e_{j} of {} values",
            values.len()
        )));
    }
    Ok(elementary_all(values).swap_remove(j))
}

fn elementary_all<T>(values: &[T]) -> Vec<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let mut e = vec![T::zero(); values.len() + 1];
    e[0] = T::one();
    for (count, x) in values.iter().enumerate() {
        for j in (1..=count + 1).rev() {
            let add = x * &e[j - 1];
            e[j] = e[j].clone() + add;
        }
    }
    e
}

/// Per-fixed-point summand on integer root values: writes the numerators
/// into the slice and returns the common denominator, or `None` on `i128`
/// overflow.
trait Summand: Sync {
    fn width(&self) -> usize;
    fn small(&self, d: &[i128], nums: &mut [i128]) -> Option<i128>;
    fn big(&self, d: &[BigInt], nums: &mut [BigInt]) -> BigInt;
}

struct MonomialSummand<'a> {
    exponents: &'a [u8],
}

impl Summand for MonomialSummand<'_> {
    fn width(&self) -> usize {
        1
    }

    fn small(&self, d: &[i128], nums: &mut [i128]) -> Option<i128> {
        let (mut num, mut den) = (1i128, 1i128);
        for (&v, &x) in self.exponents.iter().zip(d) {
            match v {
                0 => den = den.checked_mul(x)?,
                2 => num = num.checked_mul(x)?,
                _ => {}
            }
        }
        nums[0] = num;
        Some(den)
    }

    fn big(&self, d: &[BigInt], nums: &mut [BigInt]) -> BigInt {
        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        for (&v, x) in self.exponents.iter().zip(d) {
            match v {
                0 => den *= x,
                2 => num *= x,
                _ => {}
            }
        }
        nums[0] = num;
        den
    }
}

/// `e_k(d) e_{n-k}(d) / e_n(d)` for every `k = 0..=n` at once.
struct ChernSummand {
    n: usize,
}

impl Summand for ChernSummand {
    fn width(&self) -> usize {
        self.n + 1
    }

    fn small(&self, d: &[i128], nums: &mut [i128]) -> Option<i128> {
        let mut e = vec![0i128; self.n + 1];
        e[0] = 1;
        for (count, &x) in d.iter().enumerate() {
            for j in (1..=count + 1).rev() {
                e[j] = e[j].checked_add(x.checked_mul(e[j - 1])?)?;
            }
        }
        for k in 0..=self.n {
            nums[k] = e[k].checked_mul(e[self.n - k])?;
        }
        Some(e[self.n])
    }

    fn big(&self, d: &[BigInt], nums: &mut [BigInt]) -> BigInt {
        let e = elementary_all(d);
        for k in 0..=self.n {
            nums[k] = &e[k] * &e[self.n - k];
        }
        e[self.n].clone()
    }
}

/// Numerator sums keyed by a positive denominator.
type Buckets = HashMap<BigInt, Vec<BigInt>>;

fn add_term(buckets: &mut Buckets, den: BigInt, nums: &[BigInt]) {
    let (den, flip) = if den.is_negative() {
        (-den, true)
    } else {
        (den, false)
    };
    let slot = buckets
        .entry(den)
        .or_insert_with(|| vec![BigInt::zero(); nums.len()]);
    for (acc, x) in slot.iter_mut().zip(nums) {
        if flip {
            *acc -= x;
        } else {
            *acc += x;
        }
    }
}

fn merge(mut a: Buckets, b: Buckets) -> Buckets {
    for (den, nums) in b {
        add_term(&mut a, den, &nums);
    }
    a
}

fn finish(buckets: Buckets, width: usize) -> Vec<BigRational> {
    let mut totals = vec![BigRational::zero(); width];
    for (den, nums) in buckets {
        for (total, num) in totals.iter_mut().zip(nums) {
            *total += BigRational::new(num, den.clone());
        }
    }
    totals
}

/// `i128` numerator sums keyed by denominator; a slot that would overflow
/// is moved into the big-integer buckets first.
#[derive(Default)]
struct SmallBuckets {
    exact: FxHashMap<i128, Vec<i128>>,
    spilled: Buckets,
}

impl SmallBuckets {
    fn add(&mut self, den: i128, nums: &[i128]) -> Option<()> {
        let flip = den < 0;
        let den = if flip { den.checked_neg()? } else { den };
        let slot = self.exact.entry(den).or_insert_with(|| vec![0; nums.len()]);
        let fits = slot.iter().zip(nums).all(|(acc, &x)| {
            let x = if flip { x.checked_neg() } else { Some(x) };
            x.and_then(|x| acc.checked_add(x)).is_some()
        });
        if !fits {
            let held: Vec<BigInt> = slot.iter().map(|&x| BigInt::from(x)).collect();
            slot.fill(0);
            add_term(&mut self.spilled, BigInt::from(den), &held);
            let term: Vec<BigInt> = nums.iter().map(|&x| BigInt::from(x)).collect();
            add_term(
                &mut self.spilled,
                BigInt::from(if flip { -den } else { den }),
                &term,
            );
            return Some(());
        }
        for (acc, &x) in slot.iter_mut().zip(nums) {
            *acc += if flip { -x } else { x };
        }
        Some(())
    }

    fn into_buckets(self) -> Buckets {
        let mut out = self.spilled;
        for (den, nums) in self.exact {
            let nums: Vec<BigInt> = nums.into_iter().map(BigInt::from).collect();
            add_term(&mut out, BigInt::from(den), &nums);
        }
        out
    }
}

/// Visits the permutations starting with `first`, in lexicographic order.
/// Stops early and returns `None` once `visit` returns false.
fn fold_with_first<A>(
    size: usize,
    first: usize,
    mut acc: A,
    visit: &impl Fn(&mut A, &[usize]) -> bool,
) -> Option<A> {
    let mut perm: Vec<usize> = Vec::with_capacity(size);
    perm.push(first);
    perm.extend((0..size).filter(|&x| x != first));
    loop {
        if !visit(&mut acc, &perm) {
            return None;
        }
        if !next_permutation(&mut perm[1..]) {
            return Some(acc);
        }
    }
}

/// Folds `visit` over all permutations of `0..size`, split by the first
/// image; the parts are combined into one set of buckets.
fn sum_over_permutations<A, F>(
    size: usize,
    visit: F,
    finish_part: impl Fn(A) -> Buckets + Sync,
) -> Option<Buckets>
where
    A: Default,
    F: Fn(&mut A, &[usize]) -> bool + Sync,
{
    let part = |first: usize| fold_with_first(size, first, A::default(), &visit).map(&finish_part);

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..size)
            .into_par_iter()
            .map(part)
            .try_reduce(Buckets::new, |a, b| Some(merge(a, b)))
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..size)
            .map(part)
            .try_fold(Buckets::new(), |a, b| Some(merge(a, b?)))
    }
}

fn localize_small(coords: &[i128], summand: &impl Summand) -> Option<Vec<BigRational>> {
    let width = summand.width();
    let buckets = sum_over_permutations(
        coords.len(),
        |acc: &mut (SmallBuckets, Vec<i128>, Vec<i128>), perm| {
            let (buckets, d, nums) = acc;
            d.clear();
            d.extend(perm.windows(2).map(|p| coords[p[0]] - coords[p[1]]));
            nums.resize(width, 0);
            let Some(den) = summand.small(d, nums) else {
                return false;
            };
            buckets.add(den, nums).is_some()
        },
        |(buckets, _, _)| buckets.into_buckets(),
    )?;
    Some(finish(buckets, width))
}

fn localize_big(coords: &[BigInt], summand: &impl Summand) -> Vec<BigRational> {
    let width = summand.width();
    let buckets = sum_over_permutations(
        coords.len(),
        |acc: &mut Buckets, perm| {
            let d: Vec<BigInt> = perm
                .windows(2)
                .map(|p| &coords[p[0]] - &coords[p[1]])
                .collect();
            let mut nums = vec![BigInt::zero(); width];
            let den = summand.big(&d, &mut nums);
            add_term(acc, den, &nums);
            true
        },
        |b| b,
    )
    .expect("big-integer summands never overflow");
    finish(buckets, width)
}

/// Tries the `i128` route first and falls back to big integers on overflow.
fn localize(t: &EvaluationPoint, summand: &impl Summand) -> Vec<BigRational> {
    let coords = t.integer_coords();
    let small: Option<Vec<i128>> = coords.iter().map(|c| c.to_i64().map(i128::from)).collect();
    small
        .and_then(|c| localize_small(&c, summand))
        .unwrap_or_else(|| localize_big(&coords, summand))
}

/// Same as [`monomial_pairing`] but always on big integers.
#[doc(hidden)]
pub fn monomial_pairing_big(v: &ExponentVector, t: &EvaluationPoint) -> Result<BigRational> {
    check_pairing(v, t)?;
    let summand = MonomialSummand {
        exponents: v.entries(),
    };
    Ok(localize_big(&t.integer_coords(), &summand).swap_remove(0))
}

fn check_pairing(v: &ExponentVector, t: &EvaluationPoint) -> Result<()> {
    v.ensure_top_degree()?;
    if t.rank() != v.len() {
        return Err(Error::InvalidArgument(format!(
            "vector of length {} needs a point with {} coordinates, got {}",
            v.len(),
            v.len() + 1,
            t.coords.len()
        )));
    }
    Ok(())
}

/// `<alpha^v, [X]> = sum_w prod_i d_i^(v_i - 1)` with `d = root_values(w, t)`.
pub fn monomial_pairing(v: &ExponentVector, t: &EvaluationPoint) -> Result<BigRational> {
    check_pairing(v, t)?;
    let summand = MonomialSummand {
        exponents: v.entries(),
    };
    Ok(localize(t, &summand).swap_remove(0))
}

/// `<c_k c_{n-k}, [X]>` for every `k = 0..=n`, where `n = t.rank()`.
pub fn chern_pairings(t: &EvaluationPoint) -> Vec<BigRational> {
    localize(t, &ChernSummand { n: t.rank() })
}

/// `<c_k c_{n-k}, [X]> = sum_w e_k(d) e_{n-k}(d) / e_n(d)`.
pub fn chern_pairing(k: u32, n: u32, t: &EvaluationPoint) -> Result<BigRational> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= k <= n, got k={k} n={n}"
        )));
    }
    if t.rank() != n as usize {
        return Err(Error::InvalidArgument(format!(
            "rank {n} needs a point with {} coordinates, got {}",
            n + 1,
            t.coords.len()
        )));
    }
    Ok(chern_pairings(t).swap_remove(k as usize))
}
