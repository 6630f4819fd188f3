//! Finite relational structures and total maps between them.
//!
//! States are opaque string identifiers. Their position in the ordered state
//! list is significant: it is the enumeration `x_1, …, x_m` the properization
//! arithmetic runs on. Internally everything is addressed by that position.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Unchecked, serialization-shaped form of a model.
///
/// Relation keys are agent numbers written in decimal (`"1"` … `"n"`). A
/// missing key means the empty relation. Nothing is checked until
/// [`validate`] or [`RelationalStructure::from_raw`] runs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize), serde(deny_unknown_fields))]
pub struct RawModel {
    /// Ordered state identifiers.
    pub states: Vec<String>,
    /// Number of agents.
    pub agents: usize,
    /// Edges per agent key.
    #[cfg_attr(feature = "serde", serde(default))]
    pub relations: BTreeMap<String, Vec<(String, String)>>,
    /// Extension of each proposition.
    #[cfg_attr(feature = "serde", serde(default))]
    pub valuation: BTreeMap<String, Vec<String>>,
}

/// A single well-formedness violation found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    /// The state list is empty.
    EmptyCarrier,
    /// The same state identifier occurs more than once.
    DuplicateState(String),
    /// `agents` is zero.
    NoAgents,
    /// A relation key that is not one of `"1"` … `"n"`.
    UnknownAgentKey(String),
    /// An edge endpoint that is not a state.
    DanglingEndpoint {
        /// Agent key of the relation.
        agent: String,
        /// Edge source.
        from: String,
        /// Edge target.
        to: String,
    },
    /// An edge listed twice for the same agent.
    DuplicateEdge {
        /// Agent key of the relation.
        agent: String,
        /// Edge source.
        from: String,
        /// Edge target.
        to: String,
    },
    /// A proposition with an empty name.
    EmptyProposition,
    /// A valuation entry that is not a state.
    UnknownValuationState {
        /// Proposition name.
        prop: String,
        /// Offending state id.
        state: String,
    },
    /// A state listed twice in one proposition's extension.
    DuplicateValuationEntry {
        /// Proposition name.
        prop: String,
        /// Offending state id.
        state: String,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::EmptyCarrier => write!(f, "empty carrier: a model needs at least one state"),
            Diagnostic::DuplicateState(s) => write!(f, "duplicate state `{s}`"),
            Diagnostic::NoAgents => write!(f, "agents must be at least 1"),
            Diagnostic::UnknownAgentKey(k) => write!(f, "relation key `{k}` is not an agent number"),
            Diagnostic::DanglingEndpoint { agent, from, to } => {
                write!(f, "dangling endpoint in edge ({from}, {to}) of agent {agent}")
            }
            Diagnostic::DuplicateEdge { agent, from, to } => {
                write!(f, "duplicate edge ({from}, {to}) of agent {agent}")
            }
            Diagnostic::EmptyProposition => write!(f, "empty proposition name"),
            Diagnostic::UnknownValuationState { prop, state } => {
                write!(f, "valuation of `{prop}` mentions unknown state `{state}`")
            }
            Diagnostic::DuplicateValuationEntry { prop, state } => {
                write!(f, "valuation of `{prop}` lists `{state}` twice")
            }
        }
    }
}

/// Errors raised by model queries and constructors.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    /// The model failed validation.
    #[error("invalid model: {}", join_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    /// Agent index outside `1..=n`.
    #[error("unknown agent {agent} (model has {n_agents} agents)")]
    UnknownAgent {
        /// Requested agent.
        agent: usize,
        /// Agents in the model.
        n_agents: usize,
    },
    /// State identifier not in the model.
    #[error("unknown state `{0}`")]
    UnknownState(String),
    /// Two models that must share a signature do not.
    #[error("agent count mismatch: {left} vs {right}")]
    AgentMismatch {
        /// Agents on the left.
        left: usize,
        /// Agents on the right.
        right: usize,
    },
    /// A state map that does not cover its source.
    #[error("map is not total: {missing} source state(s) unmapped")]
    NotTotal {
        /// Number of unmapped source states.
        missing: usize,
    },
    /// A state map whose target size does not match the target model.
    #[error("map targets {got} states but the target model has {expected}")]
    TargetSizeMismatch {
        /// States in the target model.
        expected: usize,
        /// Target size recorded in the map.
        got: usize,
    },
    /// A state map image outside the target.
    #[error("map sends source state {source_state} outside the target")]
    ImageOutOfRange {
        /// Offending source position.
        source_state: usize,
    },
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    let mut out = String::new();
    for (n, d) in diags.iter().enumerate() {
        if n > 0 {
            out.push_str("; ");
        }
        out.push_str(&d.to_string());
    }
    out
}

fn agent_key(key: &str, n_agents: usize) -> Option<usize> {
    if key.is_empty() || !key.bytes().all(|b| b.is_ascii_digit()) || key.starts_with('0') {
        return None;
    }
    key.parse().ok().filter(|a| (1..=n_agents).contains(a))
}

/// Checks every structural invariant of a raw model.
///
/// Returns one diagnostic per violation; the list is empty iff the model is
/// well formed.
pub fn validate(raw: &RawModel) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    if raw.states.is_empty() {
        diags.push(Diagnostic::EmptyCarrier);
    }
    let mut known = BTreeSet::new();
    for s in &raw.states {
        if !known.insert(s.as_str()) {
            diags.push(Diagnostic::DuplicateState(s.clone()));
        }
    }
    if raw.agents == 0 {
        diags.push(Diagnostic::NoAgents);
    }
    for (key, edges) in &raw.relations {
        if agent_key(key, raw.agents).is_none() {
            diags.push(Diagnostic::UnknownAgentKey(key.clone()));
        }
        let mut seen = BTreeSet::new();
        for (from, to) in edges {
            if !known.contains(from.as_str()) || !known.contains(to.as_str()) {
                diags.push(Diagnostic::DanglingEndpoint { agent: key.clone(), from: from.clone(), to: to.clone() });
            } else if !seen.insert((from.as_str(), to.as_str())) {
                diags.push(Diagnostic::DuplicateEdge { agent: key.clone(), from: from.clone(), to: to.clone() });
            }
        }
    }
    for (prop, ext) in &raw.valuation {
        if prop.is_empty() {
            diags.push(Diagnostic::EmptyProposition);
        }
        let mut seen = BTreeSet::new();
        for s in ext {
            if !known.contains(s.as_str()) {
                diags.push(Diagnostic::UnknownValuationState { prop: prop.clone(), state: s.clone() });
            } else if !seen.insert(s.as_str()) {
                diags.push(Diagnostic::DuplicateValuationEntry { prop: prop.clone(), state: s.clone() });
            }
        }
    }
    diags
}

/// A finite multi-agent relational structure `(X, (R_i), v)`.
///
/// Immutable once built. Agents are numbered from 1; states are addressed by
/// their 0-based position in [`states`](Self::states).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalStructure {
    states: Vec<String>,
    index: BTreeMap<String, usize>,
    n_agents: usize,
    edges: Vec<BTreeSet<(usize, usize)>>,
    succ: Vec<Vec<Vec<usize>>>,
    valuation: BTreeMap<String, BTreeSet<usize>>,
}

impl RelationalStructure {
    /// Builds a model from positional parts.
    ///
    /// `edges[i]` holds the relation of agent `i + 1`.
    pub fn from_parts(
        states: Vec<String>,
        edges: Vec<BTreeSet<(usize, usize)>>,
        valuation: BTreeMap<String, BTreeSet<usize>>,
    ) -> Result<Self, ModelError> {
        let m = states.len();
        let mut diags = Vec::new();
        if m == 0 {
            diags.push(Diagnostic::EmptyCarrier);
        }
        if edges.is_empty() {
            diags.push(Diagnostic::NoAgents);
        }
        let mut index = BTreeMap::new();
        for (ix, s) in states.iter().enumerate() {
            if index.insert(s.clone(), ix).is_some() {
                diags.push(Diagnostic::DuplicateState(s.clone()));
            }
        }
        let name = |ix: usize| states.get(ix).cloned().unwrap_or_else(|| format!("#{ix}"));
        for (a, rel) in edges.iter().enumerate() {
            for &(x, y) in rel {
                if x >= m || y >= m {
                    diags.push(Diagnostic::DanglingEndpoint { agent: (a + 1).to_string(), from: name(x), to: name(y) });
                }
            }
        }
        for (prop, ext) in &valuation {
            if prop.is_empty() {
                diags.push(Diagnostic::EmptyProposition);
            }
            for &x in ext {
                if x >= m {
                    diags.push(Diagnostic::UnknownValuationState { prop: prop.clone(), state: name(x) });
                }
            }
        }
        if !diags.is_empty() {
            return Err(ModelError::Invalid(diags));
        }
        let mut succ = vec_of(edges.len(), || vec_of(m, Vec::new));
        for (a, rel) in edges.iter().enumerate() {
            // BTreeSet order keeps each successor list sorted.
            for &(x, y) in rel {
                succ[a][x].push(y);
            }
        }
        Ok(Self { n_agents: edges.len(), states, index, edges, succ, valuation })
    }

    /// Validates and converts a raw model.
    pub fn from_raw(raw: &RawModel) -> Result<Self, ModelError> {
        let diags = validate(raw);
        if !diags.is_empty() {
            return Err(ModelError::Invalid(diags));
        }
        let index: BTreeMap<&str, usize> = raw.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut edges = vec_of(raw.agents, BTreeSet::new);
        for (key, list) in &raw.relations {
            let a = agent_key(key, raw.agents).expect("validated agent key");
            for (x, y) in list {
                edges[a - 1].insert((index[x.as_str()], index[y.as_str()]));
            }
        }
        let valuation =
            raw.valuation.iter().map(|(p, ext)| (p.clone(), ext.iter().map(|s| index[s.as_str()]).collect())).collect();
        Self::from_parts(raw.states.clone(), edges, valuation)
    }

    /// Converts back to the raw form, listing every agent key and all edges
    /// in state order.
    pub fn to_raw(&self) -> RawModel {
        let relations = self
            .edges
            .iter()
            .enumerate()
            .map(|(a, rel)| {
                let list = rel.iter().map(|&(x, y)| (self.states[x].clone(), self.states[y].clone())).collect();
                ((a + 1).to_string(), list)
            })
            .collect();
        let valuation = self
            .valuation
            .iter()
            .map(|(p, ext)| (p.clone(), ext.iter().map(|&x| self.states[x].clone()).collect()))
            .collect();
        RawModel { states: self.states.clone(), agents: self.n_agents, relations, valuation }
    }

    /// Re-runs [`validate`] on this model's raw form.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        validate(&self.to_raw())
    }

    /// Number of states.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    /// Always false: models have a nonempty carrier.
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Number of agents.
    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    /// Ordered state identifiers.
    pub fn states(&self) -> &[String] {
        &self.states
    }

    /// Identifier of the state at position `ix`.
    pub fn state_name(&self, ix: usize) -> &str {
        &self.states[ix]
    }

    /// Position of a named state.
    pub fn state_index(&self, name: &str) -> Result<usize, ModelError> {
        self.index.get(name).copied().ok_or_else(|| ModelError::UnknownState(name.into()))
    }

    /// Returns an error unless `agent` is in `1..=n`.
    pub fn check_agent(&self, agent: usize) -> Result<(), ModelError> {
        if (1..=self.n_agents).contains(&agent) {
            Ok(())
        } else {
            Err(ModelError::UnknownAgent { agent, n_agents: self.n_agents })
        }
    }

    /// Edge set of `agent` as position pairs. Panics on an unknown agent.
    pub fn edges(&self, agent: usize) -> &BTreeSet<(usize, usize)> {
        &self.edges[agent - 1]
    }

    /// Sorted successor positions of `x` under `agent`. Panics on unknown
    /// agent or state; use [`successors`](Self::successors) for checked
    /// lookups by name.
    pub fn succ(&self, agent: usize, x: usize) -> &[usize] {
        &self.succ[agent - 1][x]
    }

    /// Whether `x R_agent y`.
    pub fn related(&self, agent: usize, x: usize, y: usize) -> bool {
        self.succ(agent, x).binary_search(&y).is_ok()
    }

    /// `R_agent(x)` by name.
    pub fn successors(&self, agent: usize, x: &str) -> Result<BTreeSet<&str>, ModelError> {
        self.check_agent(agent)?;
        let x = self.state_index(x)?;
        Ok(self.succ(agent, x).iter().map(|&y| self.states[y].as_str()).collect())
    }

    /// The valuation, proposition to state positions.
    pub fn valuation(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.valuation
    }

    /// Whether `prop` holds at `x`. Propositions absent from the valuation
    /// hold nowhere.
    pub fn holds(&self, prop: &str, x: usize) -> bool {
        self.valuation.get(prop).is_some_and(|ext| ext.contains(&x))
    }

    /// Same carrier and valuation, with the relation of `agent` replaced.
    pub fn with_relation(&self, agent: usize, rel: BTreeSet<(usize, usize)>) -> Result<Self, ModelError> {
        self.check_agent(agent)?;
        let mut edges = self.edges.clone();
        edges[agent - 1] = rel;
        Self::from_parts(self.states.clone(), edges, self.valuation.clone())
    }

    /// Tagged disjoint union `self ⊎ other` with the two canonical
    /// injections. Left states are renamed `l:<id>`, right states `r:<id>`.
    pub fn disjoint_union(&self, other: &Self) -> Result<(Self, StateMap, StateMap), ModelError> {
        if self.n_agents != other.n_agents {
            return Err(ModelError::AgentMismatch { left: self.n_agents, right: other.n_agents });
        }
        let shift = self.len();
        let states =
            self.states.iter().map(|s| format!("l:{s}")).chain(other.states.iter().map(|s| format!("r:{s}"))).collect();
        let edges = self
            .edges
            .iter()
            .zip(&other.edges)
            .map(|(l, r)| l.iter().copied().chain(r.iter().map(|&(x, y)| (x + shift, y + shift))).collect())
            .collect();
        let mut valuation: BTreeMap<String, BTreeSet<usize>> = self.valuation.clone();
        for (p, ext) in &other.valuation {
            valuation.entry(p.clone()).or_default().extend(ext.iter().map(|&x| x + shift));
        }
        let union = Self::from_parts(states, edges, valuation)?;
        let total = union.len();
        let left = StateMap::new((0..shift).collect(), total)?;
        let right = StateMap::new((shift..total).collect(), total)?;
        Ok((union, left, right))
    }
}

fn vec_of<T>(n: usize, mut f: impl FnMut() -> T) -> Vec<T> {
    (0..n).map(|_| f()).collect()
}

/// A total map from the states of one model to the states of another,
/// stored as a table indexed by source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMap {
    table: Vec<usize>,
    target_len: usize,
}

impl StateMap {
    /// Builds a map from its table; every image must be below `target_len`.
    pub fn new(table: Vec<usize>, target_len: usize) -> Result<Self, ModelError> {
        if let Some(source_state) = table.iter().position(|&t| t >= target_len) {
            return Err(ModelError::ImageOutOfRange { source_state });
        }
        Ok(Self { table, target_len })
    }

    /// The identity on a model.
    pub fn identity(m: &RelationalStructure) -> Self {
        Self { table: (0..m.len()).collect(), target_len: m.len() }
    }

    /// Builds a map from state names, checking totality over `source`.
    pub fn from_names(
        source: &RelationalStructure,
        target: &RelationalStructure,
        names: &BTreeMap<String, String>,
    ) -> Result<Self, ModelError> {
        for k in names.keys() {
            source.state_index(k)?;
        }
        let missing = source.states().iter().filter(|s| !names.contains_key(*s)).count();
        if missing > 0 {
            return Err(ModelError::NotTotal { missing });
        }
        let table = source.states().iter().map(|s| target.state_index(&names[s])).collect::<Result<Vec<_>, _>>()?;
        Self::new(table, target.len())
    }

    /// The map as source name to target name.
    pub fn to_names(&self, source: &RelationalStructure, target: &RelationalStructure) -> BTreeMap<String, String> {
        self.table
            .iter()
            .enumerate()
            .map(|(x, &y)| (source.state_name(x).into(), target.state_name(y).into()))
            .collect()
    }

    /// Image of source position `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// The raw table.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Number of source states.
    pub fn source_len(&self) -> usize {
        self.table.len()
    }

    /// Number of target states.
    pub fn target_len(&self) -> usize {
        self.target_len
    }

    /// Whether every target state is hit.
    pub fn is_surjective(&self) -> bool {
        let mut hit = alloc::vec![false; self.target_len];
        for &t in &self.table {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &StateMap) -> Result<StateMap, ModelError> {
        if then.source_len() != self.target_len {
            return Err(ModelError::NotTotal { missing: self.target_len.abs_diff(then.source_len()) });
        }
        Ok(StateMap { table: self.table.iter().map(|&x| then.apply(x)).collect(), target_len: then.target_len })
    }
}
