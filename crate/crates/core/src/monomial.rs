//! Exponent vectors of monomials in the simple-root classes, their block
//! decomposition and their exact reduction to a multiple of `c_n`.
//!
//! A degree-`n` vector with entries in `{0, 1, 2}` is non-vanishing exactly
//! when it tiles by the blocks `(1)`, `(2,0)` and `(0,2)`. Every `(2,0)`
//! immediately followed by `(0,2)` is read as a single `(2,0,0,2)` block,
//! which makes the tiling unique. Rewriting a lone `(2,0)` or `(0,2)` into
//! `(1,1)` multiplies the monomial by `-1/2`; rewriting `(2,0,0,2)` into
//! `(1,1,1,1)` multiplies it by `1/3`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{ratio, rpow};
use crate::counting::BlockProfile;
use crate::error::{Error, Result};

/// Exponents `(v_1, ..., v_n)` of the monomial `alpha_1^{v_1} ... alpha_n^{v_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u8>);

impl ExponentVector {
    /// Builds a vector, rejecting empty input and entries above 2. The degree
    /// is checked by the operations that need it.
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("empty exponent vector".into()));
        }
        if let Some((pos, &v)) = entries.iter().enumerate().find(|(_, &v)| v > 2) {
            return Err(Error::InvalidEntry {
                position: pos + 1,
                value: v as u32,
            });
        }
        Ok(Self(entries))
    }

    /// The square-free vector `(1, ..., 1)` of `c_n`.
    pub fn top(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&v| v as usize).sum()
    }

    /// Fails with [`Error::InvalidDegree`] unless the entries sum to the length.
    pub fn ensure_top_degree(&self) -> Result<()> {
        if self.degree() != self.len() {
            return Err(Error::InvalidDegree {
                len: self.len(),
                degree: self.degree(),
            });
        }
        Ok(())
    }

    /// All vectors of length `n` with entries in `{0,1,2}` summing to `n`.
    pub fn all_top_degree(n: usize) -> Vec<ExponentVector> {
        fn fill(prefix: &mut Vec<u8>, n: usize, budget: usize, out: &mut Vec<ExponentVector>) {
            let slots = n - prefix.len();
            if slots == 0 {
                if budget == 0 {
                    out.push(ExponentVector(prefix.clone()));
                }
                return;
            }
            if budget > 2 * slots {
                return;
            }
            for v in 0..=2u8 {
                if (v as usize) <= budget {
                    prefix.push(v);
                    fill(prefix, n, budget - v as usize, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        fill(&mut Vec::with_capacity(n), n, n, &mut out);
        out
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, v) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for ExponentVector {
    type Err = Error;

    /// Parses comma-separated digits such as `2,0,1,2,0,0,2,0,2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u8>()
                    .map_err(|_| Error::Parse(format!("`{tok}` is not a digit")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

/// Counts of entries equal to 0, 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VectorStats {
    pub zeros: usize,
    pub ones: usize,
    pub twos: usize,
}

pub fn vector_statistics(v: &ExponentVector) -> VectorStats {
    let count = |x| v.0.iter().filter(|&&e| e == x).count();
    VectorStats {
        zeros: count(0),
        ones: count(1),
        twos: count(2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    /// `(1)`
    One,
    /// `(2,0)`
    L,
    /// `(0,2)`
    R,
    /// `(2,0,0,2)`
    M,
}

impl Block {
    pub const fn width(self) -> usize {
        match self {
            Block::One => 1,
            Block::L | Block::R => 2,
            Block::M => 4,
        }
    }

    pub const fn expansion(self) -> &'static [u8] {
        match self {
            Block::One => &[1],
            Block::L => &[2, 0],
            Block::R => &[0, 2],
            Block::M => &[2, 0, 0, 2],
        }
    }

    pub const fn symbol(self) -> &'static str {
        match self {
            Block::One => "1",
            Block::L => "L",
            Block::R => "R",
            Block::M => "M",
        }
    }
}

/// The unique tiling of a non-vanishing vector, with adjacent L,R merged into M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Blocks paired with their 1-based starting position.
    pub fn placed(&self) -> impl Iterator<Item = (usize, Block)> + '_ {
        self.blocks.iter().scan(1, |pos, &b| {
            let at = *pos;
            *pos += b.width();
            Some((at, b))
        })
    }

    pub fn profile(&self) -> BlockProfile {
        let count = |kind| self.blocks.iter().filter(|&&b| b == kind).count() as u32;
        BlockProfile::new(count(Block::M), count(Block::L), count(Block::R))
    }

    /// Concatenated block expansions.
    pub fn expand(&self) -> Vec<u8> {
        self.blocks
            .iter()
            .flat_map(|b| b.expansion().iter().copied())
            .collect()
    }
}

impl fmt::Display for BlockDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, b) in self.blocks.iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            f.write_str("(")?;
            for (t, e) in b.expansion().iter().enumerate() {
                if t > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Greedy tiling by `(1)`, `(2,0)`, `(0,2)`; `None` when the scan gets stuck.
fn tile(entries: &[u8]) -> Option<Vec<Block>> {
    let mut blocks = Vec::with_capacity(entries.len());
    let mut j = 0;
    while j < entries.len() {
        let block = match (entries[j], entries.get(j + 1)) {
            (1, _) => Block::One,
            (2, Some(0)) => Block::L,
            (0, Some(2)) => Block::R,
            _ => return None,
        };
        j += block.width();
        blocks.push(block);
    }
    Some(blocks)
}

fn merge_lr(blocks: Vec<Block>) -> Vec<Block> {
    let mut merged: Vec<Block> = Vec::with_capacity(blocks.len());
    for b in blocks {
        if b == Block::R && merged.last() == Some(&Block::L) {
            *merged.last_mut().unwrap() = Block::M;
        } else {
            merged.push(b);
        }
    }
    merged
}

pub fn decompose(v: &ExponentVector) -> Result<Option<BlockDecomposition>> {
    v.ensure_top_degree()?;
    Ok(tile(&v.0).map(|blocks| BlockDecomposition {
        blocks: merge_lr(blocks),
    }))
}

pub fn is_nonvanishing(v: &ExponentVector) -> Result<bool> {
    Ok(decompose(v)?.is_some())
}

/// `(-1/2)^(l+r) * (1/3)^m` for a non-vanishing profile.
pub fn profile_coefficient(p: &BlockProfile) -> BigRational {
    rpow(&ratio(-1, 2), p.l + p.r) * rpow(&ratio(1, 3), p.m)
}

/// The rational `q` with `alpha^v = q * c_n`; zero for vanishing vectors.
pub fn reduction_coefficient(v: &ExponentVector) -> Result<BigRational> {
    Ok(match decompose(v)? {
        Some(d) => profile_coefficient(&d.profile()),
        None => BigRational::zero(),
    })
}

/// A maximal alternating run `S` of 0s and 2s with more 2s than 0s. Its
/// neighbours in the augmented vector are nonzero, so the pattern
/// `(*, S, *)` kills the monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingPattern {
    /// 1-based first position of `S`.
    pub start: usize,
    /// 1-based last position of `S`, inclusive.
    pub end: usize,
    pub run: Vec<u8>,
}

/// Finds the first maximal alternating 0/2 run with `N_2 > N_0`.
pub fn find_vanishing_pattern(v: &ExponentVector) -> Option<VanishingPattern> {
    let e = &v.0;
    let mut j = 0;
    while j < e.len() {
        if e[j] == 1 {
            j += 1;
            continue;
        }
        let start = j;
        while j + 1 < e.len() && e[j + 1] != 1 && e[j + 1] != e[j] {
            j += 1;
        }
        let run = &e[start..=j];
        let twos = run.iter().filter(|&&x| x == 2).count();
        if 2 * twos > run.len() {
            return Some(VanishingPattern {
                start: start + 1,
                end: j + 1,
                run: run.to_vec(),
            });
        }
        j += 1;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// `(*,2,0,*) -> (*,1,1,*)`, factor -1/2.
    R1Left,
    /// `(*,0,2,*) -> (*,1,1,*)`, factor -1/2.
    R1Right,
    /// `(*,2,0,0,2,*) -> (*,1,1,1,1,*)`, factor 1/3.
    R2,
}

impl Rule {
    pub fn factor(self) -> BigRational {
        match self {
            Rule::R1Left | Rule::R1Right => ratio(-1, 2),
            Rule::R2 => ratio(1, 3),
        }
    }

    fn pattern(self) -> &'static [u8] {
        match self {
            Rule::R1Left => &[2, 0],
            Rule::R1Right => &[0, 2],
            Rule::R2 => &[2, 0, 0, 2],
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::R1Left => "R1-left",
            Rule::R1Right => "R1-right",
            Rule::R2 => "R2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub rule: Rule,
    /// 1-based index of the first rewritten entry.
    pub position: usize,
    pub factor: BigRational,
    /// Exponent vector after this rewrite.
    pub after: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub decomposition: BlockDecomposition,
    pub steps: Vec<ReductionStep>,
    pub coefficient: BigRational,
}

/// Rewrites a non-vanishing vector down to `(1, ..., 1)`: L blocks left to
/// right, then R blocks right to left, then M blocks. Every step is applied
/// to an augmented working copy and its `(*, pattern, *)` context is checked
/// before rewriting.
pub fn reduce_with_trace(v: &ExponentVector) -> Result<Option<ReductionTrace>> {
    let Some(decomposition) = decompose(v)? else {
        return Ok(None);
    };
    let placed: Vec<(usize, Block)> = decomposition.placed().collect();
    let of_kind = |kind| {
        placed
            .iter()
            .filter(move |(_, b)| *b == kind)
            .map(|&(p, _)| p)
    };

    let mut schedule: Vec<(Rule, usize)> = of_kind(Block::L).map(|p| (Rule::R1Left, p)).collect();
    schedule.extend(of_kind(Block::R).rev().map(|p| (Rule::R1Right, p)));
    schedule.extend(of_kind(Block::M).map(|p| (Rule::R2, p)));

    // sentinels at 0 and n+1 stand for the virtual nonzero entries
    let n = v.len();
    let mut work = Vec::with_capacity(n + 2);
    work.push(1u8);
    work.extend_from_slice(&v.0);
    work.push(1);

    let mut steps = Vec::with_capacity(schedule.len());
    let mut coefficient = BigRational::one();
    for (rule, position) in schedule {
        let pattern = rule.pattern();
        let end = position + pattern.len();
        if &work[position..end] != pattern || work[position - 1] == 0 || work[end] == 0 {
            return Err(Error::Inconsistency(format!(
                "{rule} does not apply at position {position} of {:?}",
                &work[1..=n]
            )));
        }
        work[position..end].fill(1);
        let factor = rule.factor();
        coefficient *= &factor;
        steps.push(ReductionStep {
            rule,
            position,
            factor,
            after: work[1..=n].to_vec(),
        });
    }
    if work[1..=n].iter().any(|&e| e != 1) {
        return Err(Error::Inconsistency(format!(
            "reduction of {v} stopped at {:?}",
            &work[1..=n]
        )));
    }
    Ok(Some(ReductionTrace {
        decomposition,
        steps,
        coefficient,
    }))
}
