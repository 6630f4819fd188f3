//! Bounded-morphism verification.
//!
//! A map `h` between models is a bounded morphism when it agrees on atoms,
//! preserves every edge (forth) and lifts every edge out of an image back to
//! an edge in the source (back).

use alloc::collections::BTreeSet;
use alloc::string::String;

use crate::model::{ModelError, RelationalStructure, StateMap};
use crate::properize::ProperizedModel;

/// First failure of one condition, by state positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismViolation {
    /// `x` and `h(x)` disagree on `prop`.
    Atomic {
        /// Source state.
        state: usize,
        /// Offending proposition.
        prop: String,
    },
    /// `x R y` in the source but not `h(x) R h(y)` in the target.
    Forth {
        /// Agent.
        agent: usize,
        /// Edge source.
        from: usize,
        /// Edge target.
        to: usize,
    },
    /// `h(x) R z` in the target with no `x R y`, `h(y) = z`.
    Back {
        /// Agent.
        agent: usize,
        /// Source state.
        from: usize,
        /// Target state with no preimage among the successors of `from`.
        missing: usize,
    },
    /// Target state outside the image.
    NotSurjective {
        /// Unhit target state.
        target: usize,
    },
}

/// Per-condition verdicts, `None` meaning the condition holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    /// Atomic harmony.
    pub atomic: Option<MorphismViolation>,
    /// Forth condition.
    pub forth: Option<MorphismViolation>,
    /// Back condition.
    pub back: Option<MorphismViolation>,
    /// Surjectivity, checked only when requested.
    pub surjective: Option<Option<MorphismViolation>>,
}

impl MorphismReport {
    /// All checked conditions hold.
    pub fn passes(&self) -> bool {
        self.atomic.is_none()
            && self.forth.is_none()
            && self.back.is_none()
            && !matches!(self.surjective, Some(Some(_)))
    }
}

/// Checks `h : source → target`. Each condition reports its first violation
/// in state order.
pub fn check_bounded_morphism(
    source: &RelationalStructure,
    target: &RelationalStructure,
    h: &StateMap,
    require_surjective: bool,
) -> Result<MorphismReport, ModelError> {
    if source.n_agents() != target.n_agents() {
        return Err(ModelError::AgentMismatch { left: source.n_agents(), right: target.n_agents() });
    }
    if h.source_len() != source.len() {
        return Err(ModelError::NotTotal { missing: source.len().abs_diff(h.source_len()) });
    }
    if h.target_len() != target.len() {
        return Err(ModelError::TargetSizeMismatch { expected: target.len(), got: h.target_len() });
    }

    let props: BTreeSet<&str> =
        source.valuation().keys().chain(target.valuation().keys()).map(String::as_str).collect();
    let atomic = (0..source.len()).find_map(|x| {
        props
            .iter()
            .find(|p| source.holds(p, x) != target.holds(p, h.apply(x)))
            .map(|p| MorphismViolation::Atomic { state: x, prop: (*p).into() })
    });

    let agents = 1..=source.n_agents();
    let forth = agents.clone().find_map(|agent| {
        source
            .edges(agent)
            .iter()
            .find(|&&(x, y)| !target.related(agent, h.apply(x), h.apply(y)))
            .map(|&(from, to)| MorphismViolation::Forth { agent, from, to })
    });

    let back = agents.clone().find_map(|agent| {
        (0..source.len()).find_map(|x| {
            let image: BTreeSet<usize> = source.succ(agent, x).iter().map(|&y| h.apply(y)).collect();
            target.succ(agent, h.apply(x)).iter().find(|z| !image.contains(z)).map(|&missing| MorphismViolation::Back {
                agent,
                from: x,
                missing,
            })
        })
    });

    let surjective = require_surjective.then(|| {
        let mut hit = alloc::vec![false; target.len()];
        h.table().iter().for_each(|&t| hit[t] = true);
        hit.iter().position(|b| !b).map(|target| MorphismViolation::NotSurjective { target })
    });

    Ok(MorphismReport { atomic, forth, back, surjective })
}

/// `(x_j, x_k) ↦ x_j`.
pub fn projection_map(p: &ProperizedModel) -> StateMap {
    p.projection()
}
