//! Countably infinite models, queried on demand.
//!
//! A [`LazyModel`] answers successor, edge and valuation queries for states
//! it never materializes. An [`Enumerated`] model additionally fixes a
//! bijection between its carrier and the integers, which is what the
//! countable properization needs: there the skew agent keeps the difference
//! `f(y) − f(x)` constant instead of an offset modulo `m`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::model::{ModelError, RelationalStructure};
use crate::properize::{check_signature, product_name, split_product_name, ProperizeError};

/// A possibly infinite, image-finite model given by oracles.
///
/// Implementations must be pure: the same query always gets the same answer.
pub trait LazyModel {
    /// State representation.
    type State: Clone + Ord + Debug;

    /// Number of agents.
    fn n_agents(&self) -> usize;

    /// `R_agent(s)`; finite.
    fn successors(&self, agent: usize, s: &Self::State) -> Vec<Self::State>;

    /// Whether `s R_agent t`.
    fn related(&self, agent: usize, s: &Self::State, t: &Self::State) -> bool;

    /// Whether `prop` holds at `s`.
    fn holds(&self, prop: &str, s: &Self::State) -> bool;

    /// The propositions that hold anywhere.
    fn propositions(&self) -> Vec<String>;

    /// Printable identifier.
    fn label(&self, s: &Self::State) -> String;

    /// Inverse of [`label`](Self::label).
    fn parse_label(&self, label: &str) -> Option<Self::State>;
}

/// A lazy model with an explicit bijection `f` between its carrier and ℤ.
pub trait Enumerated: LazyModel {
    /// `f(s)`.
    fn index_of(&self, s: &Self::State) -> i64;

    /// `f⁻¹(z)`.
    fn state_at(&self, z: i64) -> Self::State;
}

impl LazyModel for RelationalStructure {
    type State = usize;

    fn n_agents(&self) -> usize {
        RelationalStructure::n_agents(self)
    }

    fn successors(&self, agent: usize, s: &usize) -> Vec<usize> {
        self.succ(agent, *s).to_vec()
    }

    fn related(&self, agent: usize, s: &usize, t: &usize) -> bool {
        RelationalStructure::related(self, agent, *s, *t)
    }

    fn holds(&self, prop: &str, s: &usize) -> bool {
        RelationalStructure::holds(self, prop, *s)
    }

    fn propositions(&self) -> Vec<String> {
        self.valuation().keys().cloned().collect()
    }

    fn label(&self, s: &usize) -> String {
        self.state_name(*s).into()
    }

    fn parse_label(&self, label: &str) -> Option<usize> {
        self.state_index(label).ok()
    }
}

/// A state `(x, t)` of the periodic extension: copy `t` of source state `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodicState {
    /// Source position.
    pub base: usize,
    /// Copy index.
    pub copy: i64,
}

/// ℤ-many disjoint copies of a finite model.
///
/// The carrier `X × ℤ` is enumerated by interleaving copies:
/// `f(x_s, t) = t·m + s` for the 0-based position `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicExtension {
    base: RelationalStructure,
}

/// ℤ-many disjoint copies of `m`.
pub fn periodic_extension(m: &RelationalStructure) -> PeriodicExtension {
    PeriodicExtension { base: m.clone() }
}

impl PeriodicExtension {
    /// The repeated model.
    pub fn base(&self) -> &RelationalStructure {
        &self.base
    }
}

impl LazyModel for PeriodicExtension {
    type State = PeriodicState;

    fn n_agents(&self) -> usize {
        self.base.n_agents()
    }

    fn successors(&self, agent: usize, s: &PeriodicState) -> Vec<PeriodicState> {
        self.base.succ(agent, s.base).iter().map(|&b| PeriodicState { base: b, copy: s.copy }).collect()
    }

    fn related(&self, agent: usize, s: &PeriodicState, t: &PeriodicState) -> bool {
        s.copy == t.copy && self.base.related(agent, s.base, t.base)
    }

    fn holds(&self, prop: &str, s: &PeriodicState) -> bool {
        self.base.holds(prop, s.base)
    }

    fn propositions(&self) -> Vec<String> {
        self.base.valuation().keys().cloned().collect()
    }

    fn label(&self, s: &PeriodicState) -> String {
        format!("{}@{}", self.base.state_name(s.base), s.copy)
    }

    /// Accepts `x@t`, or a bare source id for copy 0.
    fn parse_label(&self, label: &str) -> Option<PeriodicState> {
        if let Ok(base) = self.base.state_index(label) {
            return Some(PeriodicState { base, copy: 0 });
        }
        let (name, copy) = label.rsplit_once('@')?;
        Some(PeriodicState { base: self.base.state_index(name).ok()?, copy: copy.parse().ok()? })
    }
}

impl Enumerated for PeriodicExtension {
    fn index_of(&self, s: &PeriodicState) -> i64 {
        s.copy * self.base.len() as i64 + s.base as i64
    }

    fn state_at(&self, z: i64) -> PeriodicState {
        let m = self.base.len() as i64;
        PeriodicState { base: z.rem_euclid(m) as usize, copy: z.div_euclid(m) }
    }
}

/// The countable properization over pairs of base states.
///
/// Non-skew agents move the first coordinate and keep the second; the skew
/// agent moves both so that `f(y) − f(x)` is unchanged.
#[derive(Clone, Debug)]
pub struct ProperizedCountable<B> {
    base: B,
    skew_agent: usize,
}

/// Wraps an enumerated model in the countable properization.
pub fn properize_countable<B: Enumerated>(
    base: B,
    skew_agent: usize,
) -> Result<ProperizedCountable<B>, ProperizeError> {
    check_signature(base.n_agents(), skew_agent)?;
    Ok(ProperizedCountable { base, skew_agent })
}

impl<B: Enumerated> ProperizedCountable<B> {
    /// The underlying model.
    pub fn base(&self) -> &B {
        &self.base
    }

    /// Agent whose relation keeps the offset.
    pub fn skew_agent(&self) -> usize {
        self.skew_agent
    }

    /// `f(y) − f(x)` for the pair `(x, y)`.
    pub fn offset(&self, s: &(B::State, B::State)) -> i64 {
        self.base.index_of(&s.1) - self.base.index_of(&s.0)
    }
}

impl<B: Enumerated> LazyModel for ProperizedCountable<B> {
    type State = (B::State, B::State);

    fn n_agents(&self) -> usize {
        self.base.n_agents()
    }

    fn successors(&self, agent: usize, s: &Self::State) -> Vec<Self::State> {
        let (x, y) = s;
        let next = self.base.successors(agent, x).into_iter();
        if agent == self.skew_agent {
            let offset = self.offset(s);
            next.map(|x2| {
                let y2 = self.base.state_at(offset + self.base.index_of(&x2));
                (x2, y2)
            })
            .collect()
        } else {
            next.map(|x2| (x2, y.clone())).collect()
        }
    }

    fn related(&self, agent: usize, s: &Self::State, t: &Self::State) -> bool {
        let same_band = if agent == self.skew_agent { self.offset(s) == self.offset(t) } else { s.1 == t.1 };
        same_band && self.base.related(agent, &s.0, &t.0)
    }

    fn holds(&self, prop: &str, s: &Self::State) -> bool {
        self.base.holds(prop, &s.0)
    }

    fn propositions(&self) -> Vec<String> {
        self.base.propositions()
    }

    fn label(&self, s: &Self::State) -> String {
        product_name(&self.base.label(&s.0), &self.base.label(&s.1))
    }

    fn parse_label(&self, label: &str) -> Option<Self::State> {
        let (a, b) = split_product_name(label)?;
        Some((self.base.parse_label(a)?, self.base.parse_label(b)?))
    }
}

/// A finite window of a lazy model around a start state.
#[derive(Clone, Debug)]
pub struct Window<S> {
    /// Induced finite model; state ids are the lazy model's labels, in
    /// breadth-first discovery order (start first).
    pub model: RelationalStructure,
    /// The lazy state at each position of `model`.
    pub states: Vec<S>,
    /// Breadth-first distance from the start.
    pub distance: Vec<usize>,
    /// Exploration radius.
    pub radius: usize,
}

impl<S> Window<S> {
    /// Whether position `ix` lies on the frontier, where successor sets
    /// are not explored.
    pub fn is_frontier(&self, ix: usize) -> bool {
        self.distance[ix] == self.radius
    }

    /// Positions strictly inside the radius.
    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states.len()).filter(|&ix| !self.is_frontier(ix))
    }

    /// Positions on the frontier.
    pub fn frontier(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states.len()).filter(|&ix| self.is_frontier(ix))
    }
}

/// Materializes every state within `radius` forward steps of `start`.
///
/// Interior states keep all their edges (their successors are all inside).
/// Frontier states, at distance exactly `radius`, get no outgoing edges.
pub fn explore<L: LazyModel + ?Sized>(
    lazy: &L,
    start: L::State,
    radius: usize,
) -> Result<Window<L::State>, ModelError> {
    let mut position: BTreeMap<L::State, usize> = BTreeMap::new();
    let mut states = Vec::new();
    let mut distance = Vec::new();
    let mut queue = VecDeque::new();
    position.insert(start.clone(), 0);
    states.push(start);
    distance.push(0);
    queue.push_back(0);

    let agents = lazy.n_agents();
    let mut succ: Vec<Vec<Vec<usize>>> = Vec::new();
    while let Some(ix) = queue.pop_front() {
        let mut out = alloc::vec![Vec::new(); agents];
        if distance[ix] < radius {
            let here = states[ix].clone();
            for (a, list) in out.iter_mut().enumerate() {
                for t in lazy.successors(a + 1, &here) {
                    let next = *position.entry(t.clone()).or_insert_with(|| {
                        states.push(t);
                        distance.push(distance[ix] + 1);
                        queue.push_back(states.len() - 1);
                        states.len() - 1
                    });
                    list.push(next);
                }
            }
        }
        if succ.len() <= ix {
            succ.resize_with(ix + 1, Vec::new);
        }
        succ[ix] = out;
    }

    let mut edges = alloc::vec![BTreeSet::new(); agents];
    for (x, per_agent) in succ.iter().enumerate() {
        for (a, list) in per_agent.iter().enumerate() {
            edges[a].extend(list.iter().map(|&y| (x, y)));
        }
    }
    let valuation = lazy
        .propositions()
        .into_iter()
        .map(|p| {
            let ext = states.iter().enumerate().filter(|(_, s)| lazy.holds(&p, s)).map(|(ix, _)| ix).collect();
            (p, ext)
        })
        .collect();
    let labels = states.iter().map(|s| lazy.label(s)).collect();
    let model = RelationalStructure::from_parts(labels, edges, valuation)?;
    Ok(Window { model, states, distance, radius })
}
