//! Slow reference implementations, independent of the library algorithms
//! they check. Shared by the integration suites of both crates.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use proper_core::RelationalStructure;

fn atoms_agree(m: &RelationalStructure, x: usize, y: usize) -> bool {
    m.valuation().values().all(|ext| ext.contains(&x) == ext.contains(&y))
}

/// Greatest bisimulation as a boolean matrix: start from atomic agreement
/// and delete pairs that break forth or back until nothing changes.
pub fn naive_bisimulation(m: &RelationalStructure) -> Vec<Vec<bool>> {
    let n = m.len();
    let mut rel: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| atoms_agree(m, x, y)).collect()).collect();
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if !rel[x][y] {
                    continue;
                }
                let ok = (1..=m.n_agents()).all(|a| {
                    let forth = m.succ(a, x).iter().all(|&x2| m.succ(a, y).iter().any(|&y2| rel[x2][y2]));
                    let back = m.succ(a, y).iter().all(|&y2| m.succ(a, x).iter().any(|&x2| rel[x2][y2]));
                    forth && back
                });
                if !ok {
                    rel[x][y] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// Equivalence classes of a relation matrix, each sorted, ordered by
/// smallest member.
pub fn classes(rel: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = rel.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&y| rel[x][y]).collect();
        for &y in &class {
            seen[y] = true;
        }
        out.push(class);
    }
    out
}

/// Depth-bounded bisimilarity by direct recursion on the definition.
pub fn recursive_bounded_bisimilar(
    a: &RelationalStructure,
    x: usize,
    b: &RelationalStructure,
    y: usize,
    depth: usize,
) -> bool {
    let props: BTreeSet<&String> = a.valuation().keys().chain(b.valuation().keys()).collect();
    if props.iter().any(|p| a.holds(p, x) != b.holds(p, y)) {
        return false;
    }
    if depth == 0 {
        return true;
    }
    (1..=a.n_agents()).all(|ag| {
        let forth = a
            .succ(ag, x)
            .iter()
            .all(|&x2| b.succ(ag, y).iter().any(|&y2| recursive_bounded_bisimilar(a, x2, b, y2, depth - 1)));
        let back = b
            .succ(ag, y)
            .iter()
            .all(|&y2| a.succ(ag, x).iter().any(|&x2| recursive_bounded_bisimilar(a, x2, b, y2, depth - 1)));
        forth && back
    })
}

/// Classes of agreement on every formula of modal depth at most `depth`.
///
/// Works purely semantically: the extensions definable at depth `k` form
/// the Boolean algebra generated by the atoms and `K_i S` for every `S`
/// definable at depth `k − 1`. Two states agree on all depth-`k` formulas
/// iff they agree on every generator.
pub fn formula_classes(m: &RelationalStructure, depth: usize) -> Vec<Vec<usize>> {
    let n = m.len();
    let atoms: Vec<Vec<bool>> = m.valuation().values().map(|ext| (0..n).map(|x| ext.contains(&x)).collect()).collect();
    let mut definable = boolean_closure(&atoms, n);
    for _ in 0..depth {
        let mut gens = atoms.clone();
        for a in 1..=m.n_agents() {
            for set in &definable {
                gens.push((0..n).map(|x| m.succ(a, x).iter().all(|&y| set[y])).collect());
            }
        }
        definable = boolean_closure(&gens, n);
    }
    let rel: Vec<Vec<bool>> =
        (0..n).map(|x| (0..n).map(|y| definable.iter().all(|s| s[x] == s[y])).collect()).collect();
    classes(&rel)
}

fn boolean_closure(gens: &[Vec<bool>], n: usize) -> BTreeSet<Vec<bool>> {
    // Atoms of the algebra are the classes of "agrees on every generator";
    // the algebra is every union of atoms.
    let mut atom_of: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        atom_of.entry(gens.iter().map(|g| g[x]).collect()).or_default().push(x);
    }
    let cells: Vec<Vec<usize>> = atom_of.into_values().collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << cells.len()) {
        let mut set = vec![false; n];
        for (c, cell) in cells.iter().enumerate() {
            if mask & (1 << c) != 0 {
                for &x in cell {
                    set[x] = true;
                }
            }
        }
        out.insert(set);
    }
    out
}

/// Number of states within `radius` steps, by breadth-first search over a
/// successor function.
pub fn bfs_count<S: Ord + Clone>(start: S, radius: usize, mut next: impl FnMut(&S) -> Vec<S>) -> usize {
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some((s, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        for t in next(&s) {
            if seen.insert(t.clone()) {
                queue.push_back((t, d + 1));
            }
        }
    }
    seen.len()
}
