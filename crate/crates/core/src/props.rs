//! Properness and the five frame properties.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::model::{ModelError, RelationalStructure};

/// Finds distinct `x ≠ y` related by every agent, if any. The witness is the
/// first such pair in state order.
pub fn improper_witness(m: &RelationalStructure) -> Option<(usize, usize)> {
    (0..m.len()).find_map(|x| {
        m.succ(1, x).iter().find(|&&y| y != x && (2..=m.n_agents()).all(|a| m.related(a, x, y))).map(|&y| (x, y))
    })
}

/// True iff no two distinct states are related by every agent.
pub fn is_proper(m: &RelationalStructure) -> bool {
    improper_witness(m).is_none()
}

/// A frame condition on a single relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameProperty {
    /// `∀x. xRx`
    Reflexive,
    /// `xRy ⇒ yRx`
    Symmetric,
    /// `xRy ∧ yRz ⇒ xRz`
    Transitive,
    /// `∀x ∃y. xRy`
    Serial,
    /// `xRy ∧ xRz ⇒ yRz`
    Euclidean,
}

impl FrameProperty {
    /// All five, in declaration order.
    pub const ALL: [FrameProperty; 5] = [
        FrameProperty::Reflexive,
        FrameProperty::Symmetric,
        FrameProperty::Transitive,
        FrameProperty::Serial,
        FrameProperty::Euclidean,
    ];

    /// Lower-case name.
    pub fn name(self) -> &'static str {
        match self {
            FrameProperty::Reflexive => "reflexive",
            FrameProperty::Symmetric => "symmetric",
            FrameProperty::Transitive => "transitive",
            FrameProperty::Serial => "serial",
            FrameProperty::Euclidean => "euclidean",
        }
    }
}

impl fmt::Display for FrameProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unrecognised frame-property name.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown frame property `{0}`")]
pub struct UnknownProperty(pub alloc::string::String);

impl FromStr for FrameProperty {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FrameProperty::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownProperty(s.into()))
    }
}

/// The tuple that breaks a frame property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `x` lacks a loop.
    NotReflexive(usize),
    /// `xRy` without `yRx`.
    NotSymmetric(usize, usize),
    /// `xRy`, `yRz` without `xRz`.
    NotTransitive(usize, usize, usize),
    /// `x` has no successor.
    NotSerial(usize),
    /// `xRy`, `xRz` without `yRz`.
    NotEuclidean(usize, usize, usize),
}

/// Checks one property of one agent's relation; returns the first
/// counterexample in state order.
pub fn check_property(
    m: &RelationalStructure,
    agent: usize,
    prop: FrameProperty,
) -> Result<Option<Violation>, ModelError> {
    m.check_agent(agent)?;
    let succ = |x: usize| m.succ(agent, x);
    let rel = |x: usize, y: usize| m.related(agent, x, y);
    let states = 0..m.len();
    let found = match prop {
        FrameProperty::Reflexive => states.clone().find(|&x| !rel(x, x)).map(Violation::NotReflexive),
        FrameProperty::Serial => states.clone().find(|&x| succ(x).is_empty()).map(Violation::NotSerial),
        FrameProperty::Symmetric => {
            states.clone().find_map(|x| succ(x).iter().find(|&&y| !rel(y, x)).map(|&y| Violation::NotSymmetric(x, y)))
        }
        FrameProperty::Transitive => states.clone().find_map(|x| {
            succ(x)
                .iter()
                .find_map(|&y| succ(y).iter().find(|&&z| !rel(x, z)).map(|&z| Violation::NotTransitive(x, y, z)))
        }),
        FrameProperty::Euclidean => states.clone().find_map(|x| {
            succ(x)
                .iter()
                .find_map(|&y| succ(x).iter().find(|&&z| !rel(y, z)).map(|&z| Violation::NotEuclidean(x, y, z)))
        }),
    };
    Ok(found)
}

/// Extends one agent's relation until it has every requested property.
///
/// Single-property closures are applied in turn until none adds a pair.
/// Serial closure adds a self-loop at each dead end.
pub fn close_under(
    m: &RelationalStructure,
    agent: usize,
    props: &[FrameProperty],
) -> Result<RelationalStructure, ModelError> {
    m.check_agent(agent)?;
    let n = m.len();
    let mut mat = vec![vec![false; n]; n];
    for &(x, y) in m.edges(agent) {
        mat[x][y] = true;
    }
    let wanted: BTreeSet<FrameProperty> = props.iter().copied().collect();
    loop {
        let mut changed = false;
        let mut set = |mat: &mut Vec<Vec<bool>>, x: usize, y: usize| {
            if !mat[x][y] {
                mat[x][y] = true;
                changed = true;
            }
        };
        for &p in &wanted {
            match p {
                FrameProperty::Reflexive => (0..n).for_each(|x| set(&mut mat, x, x)),
                FrameProperty::Serial => {
                    for x in 0..n {
                        if !mat[x].iter().any(|&b| b) {
                            set(&mut mat, x, x);
                        }
                    }
                }
                FrameProperty::Symmetric => {
                    for x in 0..n {
                        for y in 0..n {
                            if mat[x][y] {
                                set(&mut mat, y, x);
                            }
                        }
                    }
                }
                FrameProperty::Transitive => {
                    for k in 0..n {
                        for x in 0..n {
                            if mat[x][k] {
                                for y in 0..n {
                                    if mat[k][y] {
                                        set(&mut mat, x, y);
                                    }
                                }
                            }
                        }
                    }
                }
                FrameProperty::Euclidean => {
                    for x in 0..n {
                        let out: Vec<usize> = (0..n).filter(|&y| mat[x][y]).collect();
                        for &y in &out {
                            for &z in &out {
                                set(&mut mat, y, z);
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let rel = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| mat[x][y]).collect();
    m.with_relation(agent, rel)
}
