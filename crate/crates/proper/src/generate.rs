//! Seeded random models.

use std::collections::{BTreeMap, BTreeSet};

use proper_core::{close_under, FrameProperty, ModelError, RelationalStructure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Parameters for [`gen_random`].
#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    /// Number of states, named `x1` … `xm`.
    pub states: usize,
    /// Number of agents.
    pub agents: usize,
    /// Probability of each directed edge, per agent.
    pub density: f64,
    /// Number of propositions, named `p1` … `pk`.
    pub props: usize,
    /// Frame properties every relation is closed under afterwards.
    pub close: Vec<FrameProperty>,
    /// RNG seed.
    pub seed: u64,
}

/// Invalid generator parameters.
#[derive(Debug, PartialEq, thiserror::Error)]
pub enum GenError {
    /// `states` is zero.
    #[error("need at least one state")]
    NoStates,
    /// `agents` is zero.
    #[error("need at least one agent")]
    NoAgents,
    /// `density` outside `[0, 1]`.
    #[error("density {0} is not in [0, 1]")]
    Density(f64),
    /// Closure failure.
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Draws a model: every edge independently with probability `density`,
/// every atom true at every state with probability 1/2, then the requested
/// closures per agent. Deterministic in `seed`.
pub fn gen_random(cfg: &GenConfig) -> Result<RelationalStructure, GenError> {
    if cfg.states == 0 {
        return Err(GenError::NoStates);
    }
    if cfg.agents == 0 {
        return Err(GenError::NoAgents);
    }
    if !(0.0..=1.0).contains(&cfg.density) {
        return Err(GenError::Density(cfg.density));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let m = cfg.states;
    let edges: Vec<BTreeSet<(usize, usize)>> = (0..cfg.agents)
        .map(|_| (0..m).flat_map(|x| (0..m).map(move |y| (x, y))).filter(|_| rng.random_bool(cfg.density)).collect())
        .collect();
    let valuation: BTreeMap<String, BTreeSet<usize>> =
        (1..=cfg.props).map(|p| (format!("p{p}"), (0..m).filter(|_| rng.random_bool(0.5)).collect())).collect();
    let states = (1..=m).map(|i| format!("x{i}")).collect();
    let mut model = RelationalStructure::from_parts(states, edges, valuation)?;
    if !cfg.close.is_empty() {
        for agent in 1..=cfg.agents {
            model = close_under(&model, agent, &cfg.close)?;
        }
    }
    Ok(model)
}
