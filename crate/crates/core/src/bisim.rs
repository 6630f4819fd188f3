//! Bisimulation by signature refinement.
//!
//! Starting from the partition by atomic profile, each round gives a state
//! the signature (current block, blocks reachable per agent) and splits
//! blocks whose members disagree. The fixed point is the coarsest
//! bisimulation; stopping after `d` rounds gives `d`-bisimilarity.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{ModelError, RelationalStructure};

/// A partition of state positions into nonempty, disjoint blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Wraps blocks as given, sorting members within each block.
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.iter_mut().for_each(|b| b.sort_unstable());
        Self { blocks }
    }

    /// Groups positions by label; blocks are ordered by smallest member.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut order: BTreeMap<usize, usize> = BTreeMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            let b = *order.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(x);
        }
        Self { blocks }
    }

    /// The blocks.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    /// True for the partition of the empty set.
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index of every position in `0..n`, or `None` if this is not a
    /// partition of `0..n`.
    pub fn labels(&self, n: usize) -> Option<Vec<usize>> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return None;
            }
            for &x in block {
                if x >= n || labels[x] != usize::MAX {
                    return None;
                }
                labels[x] = b;
            }
        }
        labels.iter().all(|&l| l != usize::MAX).then_some(labels)
    }

    /// Whether the blocks are nonempty, disjoint and cover `0..n`.
    pub fn is_partition_of(&self, n: usize) -> bool {
        self.labels(n).is_some()
    }

    /// Whether `x` and `y` share a block.
    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.blocks.iter().any(|b| b.contains(&x) && b.contains(&y))
    }
}

fn atomic_labels(m: &RelationalStructure) -> Vec<usize> {
    let props: Vec<&String> = m.valuation().keys().collect();
    relabel((0..m.len()).map(|x| props.iter().map(|p| m.holds(p, x)).collect::<Vec<bool>>()))
}

fn relabel<S: Ord>(sigs: impl Iterator<Item = S>) -> Vec<usize> {
    let mut ids = BTreeMap::new();
    sigs.map(|s| {
        let next = ids.len();
        *ids.entry(s).or_insert(next)
    })
    .collect()
}

fn refine_once(m: &RelationalStructure, labels: &[usize]) -> Vec<usize> {
    relabel((0..m.len()).map(|x| {
        let reach: Vec<BTreeSet<usize>> =
            (1..=m.n_agents()).map(|a| m.succ(a, x).iter().map(|&y| labels[y]).collect()).collect();
        (labels[x], reach)
    }))
}

fn count(labels: &[usize]) -> usize {
    labels.iter().max().map_or(0, |&l| l + 1)
}

/// Block labels after at most `rounds` refinement steps (`None` runs to the
/// fixed point).
pub fn refine(m: &RelationalStructure, rounds: Option<usize>) -> Vec<usize> {
    let mut labels = atomic_labels(m);
    let mut done = 0;
    while rounds.is_none_or(|r| done < r) {
        let next = refine_once(m, &labels);
        let stable = count(&next) == count(&labels);
        labels = next;
        done += 1;
        if stable {
            break;
        }
    }
    labels
}

/// The coarsest bisimulation on `m`, agreeing on every proposition in its
/// valuation.
pub fn coarsest_bisimulation(m: &RelationalStructure) -> Partition {
    Partition::from_labels(&refine(m, None))
}

fn across(
    left: &RelationalStructure,
    x: &str,
    right: &RelationalStructure,
    y: &str,
    rounds: Option<usize>,
) -> Result<bool, ModelError> {
    let x = left.state_index(x)?;
    let y = right.state_index(y)?;
    let (union, l, r) = left.disjoint_union(right)?;
    let labels = refine(&union, rounds);
    Ok(labels[l.apply(x)] == labels[r.apply(y)])
}

/// Whether `(left, x)` and `(right, y)` are bisimilar.
pub fn bisimilar(
    left: &RelationalStructure,
    x: &str,
    right: &RelationalStructure,
    y: &str,
) -> Result<bool, ModelError> {
    across(left, x, right, y, None)
}

/// Whether `(left, x)` and `(right, y)` are bisimilar up to `depth`.
pub fn bounded_bisimilar(
    left: &RelationalStructure,
    x: &str,
    right: &RelationalStructure,
    y: &str,
    depth: usize,
) -> Result<bool, ModelError> {
    across(left, x, right, y, Some(depth))
}
