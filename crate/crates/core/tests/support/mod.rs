#![allow(dead_code)]

pub mod oracles;

use std::collections::{BTreeMap, BTreeSet};

use proper_core::RelationalStructure;
use proptest::prelude::*;

/// Random models with `agents` in the given range and up to `max_states`
/// states; edges and atoms drawn independently.
pub fn arb_model(
    agents: std::ops::RangeInclusive<usize>,
    max_states: usize,
) -> impl Strategy<Value = RelationalStructure> {
    (agents, 1..=max_states, 0.0f64..=1.0, 0usize..=3).prop_flat_map(|(n, m, density, props)| {
        let edges = proptest::collection::vec(proptest::collection::vec(proptest::bool::weighted(density), m * m), n);
        let val = proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), props);
        (Just(m), edges, val).prop_map(|(m, edges, val)| build(m, &edges, &val))
    })
}

pub fn build(m: usize, edges: &[Vec<bool>], val: &[Vec<bool>]) -> RelationalStructure {
    let states = (1..=m).map(|i| format!("x{i}")).collect();
    let rels = edges
        .iter()
        .map(|flags| {
            flags.iter().enumerate().filter(|(_, b)| **b).map(|(ix, _)| (ix / m, ix % m)).collect::<BTreeSet<_>>()
        })
        .collect();
    let valuation: BTreeMap<String, BTreeSet<usize>> = val
        .iter()
        .enumerate()
        .map(|(p, flags)| (format!("p{p}"), flags.iter().enumerate().filter(|(_, b)| **b).map(|(x, _)| x).collect()))
        .collect();
    RelationalStructure::from_parts(states, rels, valuation).unwrap()
}

/// `M_u`: two states, both relations universal, `p` true at `x1` only.
pub fn universal_two() -> RelationalStructure {
    let all: BTreeSet<(usize, usize)> = [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().collect();
    RelationalStructure::from_parts(
        vec!["x1".into(), "x2".into()],
        vec![all.clone(), all],
        [("p".to_string(), [0].into_iter().collect())].into_iter().collect(),
    )
    .unwrap()
}
