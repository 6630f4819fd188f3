//! Satisfaction over finite models, computed bottom-up on extensions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::formula::Formula;
use crate::model::{ModelError, RelationalStructure};

/// Errors from model checking.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    /// The formula uses an agent the model does not have.
    #[error("formula uses agent {agent} but the model has {n_agents} agents")]
    AgentOutOfRange {
        /// Offending agent index.
        agent: usize,
        /// Agents in the model.
        n_agents: usize,
    },
    /// Bad state or other model-level error.
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Extension as one flag per state position.
pub type Extension = Vec<bool>;

/// Computes `⟦φ⟧` as a flag per state. Every distinct subformula is
/// evaluated once.
pub fn extension_flags(m: &RelationalStructure, f: &Formula) -> Result<Extension, SemanticsError> {
    let agent = f.max_agent();
    if agent > m.n_agents() {
        return Err(SemanticsError::AgentOutOfRange { agent, n_agents: m.n_agents() });
    }
    let mut memo = BTreeMap::new();
    Ok(eval(m, f, &mut memo))
}

fn eval<'f>(m: &RelationalStructure, f: &'f Formula, memo: &mut BTreeMap<&'f Formula, Extension>) -> Extension {
    if let Some(ext) = memo.get(f) {
        return ext.clone();
    }
    let ext: Extension = match f {
        Formula::Prop(p) => (0..m.len()).map(|x| m.holds(p, x)).collect(),
        Formula::Not(g) => eval(m, g, memo).into_iter().map(|b| !b).collect(),
        Formula::And(a, b) => {
            let ea = eval(m, a, memo);
            let eb = eval(m, b, memo);
            ea.into_iter().zip(eb).map(|(x, y)| x && y).collect()
        }
        Formula::Know(i, g) => {
            let eg = eval(m, g, memo);
            (0..m.len()).map(|x| m.succ(*i, x).iter().all(|&y| eg[y])).collect()
        }
    };
    memo.insert(f, ext.clone());
    ext
}

/// `⟦φ⟧` as a set of state positions.
pub fn extension(m: &RelationalStructure, f: &Formula) -> Result<BTreeSet<usize>, SemanticsError> {
    Ok(extension_flags(m, f)?.into_iter().enumerate().filter_map(|(x, b)| b.then_some(x)).collect())
}

/// `M, x ⊨ φ` for a named state.
pub fn satisfies(m: &RelationalStructure, x: &str, f: &Formula) -> Result<bool, SemanticsError> {
    let x = m.state_index(x)?;
    Ok(extension_flags(m, f)?[x])
}
