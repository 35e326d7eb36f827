//! Set partitions of `{1, ..., k}`.
//!
//! A [`SetPartition`] is stored as a restricted-growth string: entry `r` holds
//! the 0-based index of the block containing element `r + 1`, with blocks
//! numbered in order of their smallest element. Two partitions are equal iff
//! their strings are equal.
//!
//! Besides enumeration and the noncrossing test, the module decides the two
//! successor-matching predicates used in moment bias estimates:
//! [`is_acceptable`] (cyclic successor on `{1, ..., k}`) and [`is_admissible`]
//! (cyclic successor inside each half of a [`SplitGround`]).

use std::fmt;

use crate::{Error, Result};

/// Largest ground size accepted by the enumerators.
pub const ENUMERATION_CAP: usize = 10;

/// A partition of `{1, ..., k}` in canonical block order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<usize>,
    num_blocks: usize,
}

impl SetPartition {
    /// Builds a partition from a restricted-growth string.
    ///
    /// The string must start at 0 and never exceed one more than its running
    /// maximum.
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self> {
        if rgs.is_empty() {
            return Err(Error::invalid("partition of an empty ground set"));
        }
        let mut next = 0usize;
        for (r, &c) in rgs.iter().enumerate() {
            if c > next {
                return Err(Error::invalid(format!(
                    "position {r}: class {c} skips ahead of {next}"
                )));
            }
            if c == next {
                next += 1;
            }
        }
        Ok(Self {
            rgs,
            num_blocks: next,
        })
    }

    /// Builds a partition of `{1, ..., k}` from blocks of 1-based elements.
    ///
    /// Blocks may be given in any order; the result is canonical.
    ///
    /// ```
    /// use bplab::SetPartition;
    /// let p = SetPartition::from_blocks(4, &[vec![2, 4], vec![1, 3]]).unwrap();
    /// assert_eq!(p.to_string(), "{{1,3},{2,4}}");
    /// ```
    pub fn from_blocks(k: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("partition of an empty ground set"));
        }
        let mut label = vec![usize::MAX; k];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::invalid(format!("block {b} is empty")));
            }
            for &e in block {
                if e == 0 || e > k {
                    return Err(Error::invalid(format!("element {e} outside 1..={k}")));
                }
                if label[e - 1] != usize::MAX {
                    return Err(Error::invalid(format!("element {e} appears twice")));
                }
                label[e - 1] = b;
            }
        }
        if let Some(missing) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::invalid(format!("element {} not covered", missing + 1)));
        }
        Ok(Self::canonicalize(&label))
    }

    /// Canonical partition with the same classes as an arbitrary labelling.
    pub(crate) fn canonicalize(labels: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let mut rgs = Vec::with_capacity(labels.len());
        for &l in labels {
            let n = map.len();
            rgs.push(*map.entry(l).or_insert(n));
        }
        let num_blocks = map.len();
        Self { rgs, num_blocks }
    }

    /// The partition with a single block.
    pub fn one_block(k: usize) -> Result<Self> {
        Self::from_rgs(vec![0; k])
    }

    /// The partition into singletons.
    pub fn singletons(k: usize) -> Result<Self> {
        Self::from_rgs((0..k).collect())
    }

    pub fn ground_size(&self) -> usize {
        self.rgs.len()
    }

    /// Number of blocks, `|π|`.
    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    /// Block index of the 1-based element `r`.
    pub fn class_of(&self, r: usize) -> usize {
        self.rgs[r - 1]
    }

    /// Blocks as sorted lists of 1-based elements, ordered by smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks];
        for (r, &c) in self.rgs.iter().enumerate() {
            out[c].push(r + 1);
        }
        out
    }

    /// Sizes of the blocks in canonical order.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_blocks];
        for &c in &self.rgs {
            out[c] += 1;
        }
        out
    }

    /// True if some block meets both `1..=k` and `k+1..=2k` of `ground`.
    pub fn links_halves(&self, ground: SplitGround) -> bool {
        if self.ground_size() != ground.total_size() {
            return false;
        }
        let k = ground.k();
        let mut left = vec![false; self.num_blocks];
        for r in 0..k {
            left[self.rgs[r]] = true;
        }
        (k..2 * k).any(|r| left[self.rgs[r]])
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, e) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The ground set `{1, ..., 2k}` split into halves `I = {1..k}` and
/// `J = {k+1..2k}`, each with its own cyclic successor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitGround {
    k: usize,
}

impl SplitGround {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("split ground needs k >= 1"));
        }
        Ok(Self { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn total_size(&self) -> usize {
        2 * self.k
    }

    /// Successor of the 1-based element `r`: `k -> 1`, `2k -> k+1`, otherwise `r + 1`.
    pub fn successor(&self, r: usize) -> usize {
        if r == self.k {
            1
        } else if r == 2 * self.k {
            self.k + 1
        } else {
            r + 1
        }
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 || k > ENUMERATION_CAP {
        return Err(Error::invalid(format!(
            "ground size {k} outside 1..={ENUMERATION_CAP}"
        )));
    }
    Ok(())
}

/// All partitions of `{1, ..., k}` in lexicographic restricted-growth order.
///
/// ```
/// let all = bplab::partitions::enumerate_partitions(4).unwrap();
/// assert_eq!(all.len(), 15);
/// ```
pub fn enumerate_partitions(k: usize) -> Result<Vec<SetPartition>> {
    check_k(k)?;
    let mut out = Vec::new();
    let mut rgs = vec![0usize; k];
    let mut maxes = vec![0usize; k];
    loop {
        out.push(SetPartition {
            rgs: rgs.clone(),
            num_blocks: maxes[k - 1] + 1,
        });
        // advance to the next restricted-growth string
        let mut i = k - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            if rgs[i] <= maxes[i - 1] {
                rgs[i] += 1;
                maxes[i] = maxes[i - 1].max(rgs[i]);
                for j in i + 1..k {
                    rgs[j] = 0;
                    maxes[j] = maxes[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

/// True iff no `x < y < z < t` has `x, z` in one block and `y, t` in another.
pub fn is_noncrossing(p: &SetPartition) -> bool {
    let n = p.rgs.len();
    let r = &p.rgs;
    // For each pair of distinct blocks, look for an interleaving a b a b.
    for x in 0..n {
        for y in x + 1..n {
            if r[y] == r[x] {
                continue;
            }
            for z in y + 1..n {
                if r[z] != r[x] {
                    continue;
                }
                if (z + 1..n).any(|t| r[t] == r[y]) {
                    return false;
                }
            }
        }
    }
    true
}

/// All noncrossing partitions of `{1, ..., k}`.
pub fn enumerate_noncrossing(k: usize) -> Result<Vec<SetPartition>> {
    Ok(enumerate_partitions(k)?
        .into_iter()
        .filter(is_noncrossing)
        .collect())
}

fn is_interval(block: &[usize]) -> bool {
    block.windows(2).all(|w| w[1] == w[0] + 1)
}

/// A block that is a run of consecutive integers and whose removal leaves a
/// noncrossing partition. Among candidates the one with the smallest minimum
/// is returned.
///
/// Every noncrossing partition has such a block. Partitions with a crossing
/// may return `None`.
///
/// ```
/// use bplab::{partitions::interval_block, SetPartition};
/// let p = SetPartition::from_blocks(4, &[vec![1, 4], vec![2, 3]]).unwrap();
/// assert_eq!(interval_block(&p), Some(vec![2, 3]));
/// ```
pub fn interval_block(p: &SetPartition) -> Option<Vec<usize>> {
    for block in p.blocks() {
        if !is_interval(&block) {
            continue;
        }
        match remove_block(p, &block) {
            None => return Some(block),
            Some(rest) if is_noncrossing(&rest) => return Some(block),
            Some(_) => {}
        }
    }
    None
}

/// Removes a block and relabels the remaining elements `1, 2, ...` in order.
///
/// Returns `None` when the block was the whole ground set. The block must be
/// one of `p.blocks()`.
pub fn remove_block(p: &SetPartition, block: &[usize]) -> Option<SetPartition> {
    let labels: Vec<usize> = p
        .rgs
        .iter()
        .enumerate()
        .filter(|(r, _)| !block.contains(&(r + 1)))
        .map(|(_, &c)| c)
        .collect();
    if labels.is_empty() {
        None
    } else {
        Some(SetPartition::canonicalize(&labels))
    }
}

fn successor_matching(pi: &SetPartition, tau: &SetPartition, succ: impl Fn(usize) -> usize) -> bool {
    // For each block V of pi the multiset {tau(r) : r in V} must equal
    // {tau(succ r) : r in V}; that is exactly when a bijection phi of V with
    // tau(r) = tau(succ(phi(r))) exists.
    let nt = tau.num_blocks();
    let mut balance = vec![vec![0i64; nt]; pi.num_blocks()];
    for r in 1..=pi.ground_size() {
        let v = pi.class_of(r);
        balance[v][tau.class_of(r)] += 1;
        balance[v][tau.class_of(succ(r))] -= 1;
    }
    balance.iter().all(|row| row.iter().all(|&c| c == 0))
}

/// Whether `tau` is acceptable for `pi` under the cyclic successor of `{1..k}`.
///
/// ```
/// use bplab::{partitions::is_acceptable, SetPartition};
/// let pi = SetPartition::from_blocks(4, &[vec![1, 3], vec![2, 4]]).unwrap();
/// let tau = SetPartition::from_blocks(4, &[vec![1, 2], vec![3, 4]]).unwrap();
/// assert!(is_acceptable(&pi, &tau).unwrap());
/// ```
pub fn is_acceptable(pi: &SetPartition, tau: &SetPartition) -> Result<bool> {
    let k = pi.ground_size();
    if tau.ground_size() != k {
        return Err(Error::invalid(format!(
            "ground sizes differ: {k} vs {}",
            tau.ground_size()
        )));
    }
    Ok(successor_matching(pi, tau, |r| if r == k { 1 } else { r + 1 }))
}

/// Whether `tau` is admissible for `pi` under the per-half successor of `ground`.
pub fn is_admissible(ground: SplitGround, pi: &SetPartition, tau: &SetPartition) -> Result<bool> {
    let n = ground.total_size();
    if pi.ground_size() != n || tau.ground_size() != n {
        return Err(Error::invalid(format!(
            "partitions must live on a ground of size {n}, got {} and {}",
            pi.ground_size(),
            tau.ground_size()
        )));
    }
    Ok(successor_matching(pi, tau, |r| ground.successor(r)))
}

/// Number of injective maps from an `l`-set into an `n`-set, `n (n-1) ... (n-l+1)`.
///
/// Saturates at `u128::MAX`.
pub fn falling_factorial(n: u64, l: u64) -> u128 {
    if l > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..l {
        acc = acc.saturating_mul((n - i) as u128);
    }
    acc
}
