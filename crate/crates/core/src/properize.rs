//! The finite properization over `X × X`.
//!
//! For `m = |X|` the product point `(x_j, x_k)` carries the atoms of `x_j`.
//! Every agent other than the skew agent relates points inside the same copy
//! `X × {x_k}`, copying its original relation. The skew agent copies its
//! relation onto each offset block `{(x_j, x_k) : k − j ≡ ℓ (mod m)}`
//! instead. Two distinct points would need to share both the copy and the
//! offset to be related by everyone, which pins down `j`, so the result is
//! proper.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bisim::Partition;
use crate::model::{ModelError, RelationalStructure, StateMap};

/// Separator inside product-state identifiers; reserved in source ids.
pub const SEPARATOR: char = '|';

/// Errors from the properization constructions.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProperizeError {
    /// The construction needs a second agent to separate copies.
    #[error("properization undefined for a single agent")]
    SingleAgent,
    /// The skew agent is not an agent of the model.
    #[error("invalid skew agent {agent} (model has {n_agents} agents)")]
    BadSkewAgent {
        /// Requested skew agent.
        agent: usize,
        /// Agents in the model.
        n_agents: usize,
    },
    /// A source state id contains the reserved separator.
    #[error("state id `{0}` contains the reserved character `|`")]
    ReservedSeparator(String),
    /// Error building the output model.
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub(crate) fn check_signature(n_agents: usize, skew_agent: usize) -> Result<(), ProperizeError> {
    if n_agents < 2 {
        return Err(ProperizeError::SingleAgent);
    }
    if !(1..=n_agents).contains(&skew_agent) {
        return Err(ProperizeError::BadSkewAgent { agent: skew_agent, n_agents });
    }
    Ok(())
}

/// The point `(x_j, x_k)`, by source positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductState {
    /// First coordinate `x_j`; the point carries its atoms.
    pub base: usize,
    /// Second coordinate `x_k`; names the copy.
    pub tag: usize,
}

impl ProductState {
    /// Offset `ℓ = (k − j) mod m`.
    pub fn offset(self, m: usize) -> usize {
        (self.tag + m - self.base) % m
    }
}

/// Identifier `(a|b)` for a pair of state ids.
pub fn product_name(base: &str, tag: &str) -> String {
    format!("({base}{SEPARATOR}{tag})")
}

/// Splits `(a|b)` back into its coordinates.
pub fn split_product_name(name: &str) -> Option<(&str, &str)> {
    let inner = name.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(SEPARATOR)?;
    (!b.contains(SEPARATOR)).then_some((a, b))
}

/// Output of [`properize_finite`] together with its construction metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperizedModel {
    model: RelationalStructure,
    source: RelationalStructure,
    skew_agent: usize,
    points: Vec<ProductState>,
}

impl ProperizedModel {
    /// The proper model over `X × X`.
    pub fn model(&self) -> &RelationalStructure {
        &self.model
    }

    /// The original model.
    pub fn source(&self) -> &RelationalStructure {
        &self.source
    }

    /// Agent whose relation is copied along offset blocks.
    pub fn skew_agent(&self) -> usize {
        self.skew_agent
    }

    /// Coordinates of the output state at position `ix`.
    pub fn point(&self, ix: usize) -> ProductState {
        self.points[ix]
    }

    /// Output position of `(x_j, x_k)`.
    pub fn position(&self, p: ProductState) -> usize {
        p.base * self.source.len() + p.tag
    }

    /// Offset block of the output state at position `ix`.
    pub fn offset_of(&self, ix: usize) -> usize {
        self.points[ix].offset(self.source.len())
    }

    /// First-coordinate projection onto the source.
    pub fn projection(&self) -> StateMap {
        StateMap::new(self.points.iter().map(|p| p.base).collect(), self.source.len())
            .expect("projection lands in the source")
    }
}

/// Builds the proper model over `X × X` and its projection onto `X`.
///
/// States are ordered by first coordinate, then second, and named
/// `(x_j|x_k)`.
pub fn properize_finite(
    m: &RelationalStructure,
    skew_agent: usize,
) -> Result<(ProperizedModel, StateMap), ProperizeError> {
    check_signature(m.n_agents(), skew_agent)?;
    if let Some(bad) = m.states().iter().find(|s| s.contains(SEPARATOR)) {
        return Err(ProperizeError::ReservedSeparator(bad.clone()));
    }
    let size = m.len();
    let pos = |base: usize, tag: usize| base * size + tag;

    let mut points = Vec::with_capacity(size * size);
    let mut states = Vec::with_capacity(size * size);
    for base in 0..size {
        for tag in 0..size {
            points.push(ProductState { base, tag });
            states.push(product_name(m.state_name(base), m.state_name(tag)));
        }
    }

    let edges = (1..=m.n_agents())
        .map(|agent| {
            let mut rel = BTreeSet::new();
            for &(j, j2) in m.edges(agent) {
                if agent == skew_agent {
                    // One copy per offset block: (j, j+ℓ) → (j', j'+ℓ).
                    for offset in 0..size {
                        rel.insert((pos(j, (j + offset) % size), pos(j2, (j2 + offset) % size)));
                    }
                } else {
                    for tag in 0..size {
                        rel.insert((pos(j, tag), pos(j2, tag)));
                    }
                }
            }
            rel
        })
        .collect();

    let valuation: BTreeMap<String, BTreeSet<usize>> = m
        .valuation()
        .iter()
        .map(|(p, ext)| (p.clone(), ext.iter().flat_map(|&j| (0..size).map(move |k| pos(j, k))).collect()))
        .collect();

    let model = RelationalStructure::from_parts(states, edges, valuation)?;
    let out = ProperizedModel { model, source: m.clone(), skew_agent, points };
    let pi = out.projection();
    Ok((out, pi))
}

/// The offset blocks `X̃_ℓ` for `ℓ = 0 … m − 1`, in that order.
pub fn partition_blocks(p: &ProperizedModel) -> Partition {
    let size = p.source.len();
    let mut blocks = alloc::vec![Vec::with_capacity(size); size];
    for (ix, point) in p.points.iter().enumerate() {
        blocks[point.offset(size)].push(ix);
    }
    Partition::from_blocks(blocks)
}
