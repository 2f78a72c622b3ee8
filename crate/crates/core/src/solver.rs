//! Exact, certificate-producing search for rainbow Hamiltonian cycles.
//!
//! The solver grows a vertex path from vertex 1 inside the union graph,
//! assigning colours to path edges through an incrementally maintained
//! bipartite matching (path-edge slots versus colours). A branch dies as
//! soon as its partial edge set admits no matching into distinct colours,
//! so every enumerated leaf already carries a valid colouring. Reflected
//! cycles are suppressed by requiring the second vertex to be smaller than
//! the last at closing time.

use crate::graph::{Edge, GraphFamily, RainbowCycle, Vertex};
use thiserror::Error;

/// Default limit on search-tree nodes before giving up.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("rainbow Hamiltonicity needs order >= 3, got {0}")]
    TooSmall(usize),
    #[error("the brute-force oracle supports order <= 7, got {0}")]
    OracleTooLarge(usize),
}

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(RainbowCycle),
    NotFound,
    BudgetExceeded { nodes: u64 },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&RainbowCycle> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

enum Flow {
    Found(RainbowCycle),
    Exhausted,
    Budget,
}

struct Search<'a> {
    family: &'a GraphFamily,
    n: usize,
    union_rows: Vec<u64>,
    /// Neighbours of each vertex sorted by (union degree, label): fail-first.
    order: Vec<Vec<Vertex>>,
    path: Vec<Vertex>,
    on_path: u64,
    /// Edge of each occupied slot; slot i joins path positions i and i+1,
    /// slot n-1 closes the cycle.
    slot_edge: Vec<Option<Edge>>,
    slot_color: Vec<Option<usize>>,
    color_slot: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(family: &'a GraphFamily, budget: u64) -> Self {
        let n = family.n();
        let union = family.union_graph();
        let union_rows: Vec<u64> = (1..=n).map(|v| union.neighbors_bits(v)).collect();
        let degree = |v: Vertex| union_rows[v - 1].count_ones();
        let order = (1..=n)
            .map(|v| {
                let mut nb: Vec<Vertex> = union.neighbors(v).collect();
                nb.sort_by_key(|&u| (degree(u), u));
                nb
            })
            .collect();
        Search {
            family,
            n,
            union_rows,
            order,
            path: vec![1],
            on_path: 1,
            slot_edge: vec![None; n],
            slot_color: vec![None; n],
            color_slot: vec![None; n],
            nodes: 0,
            budget,
        }
    }

    fn admissible(&self, slot: usize, color0: usize) -> bool {
        self.family
            .graph(color0 + 1)
            .contains_edge(self.slot_edge[slot].expect("slot occupied"))
    }

    /// Kuhn augmentation for a slot: free colours in ascending order first,
    /// then displacement of occupied colours.
    fn augment(&mut self, slot: usize, visited: &mut [bool]) -> bool {
        for c in 0..self.n {
            if !visited[c] && self.color_slot[c].is_none() && self.admissible(slot, c) {
                visited[c] = true;
                self.slot_color[slot] = Some(c);
                self.color_slot[c] = Some(slot);
                return true;
            }
        }
        for c in 0..self.n {
            if !visited[c] && self.admissible(slot, c) {
                visited[c] = true;
                let owner = self.color_slot[c].expect("occupied in phase two");
                if self.augment(owner, visited) {
                    self.slot_color[slot] = Some(c);
                    self.color_slot[c] = Some(slot);
                    return true;
                }
            }
        }
        false
    }

    /// Installs an edge in a slot if the enlarged edge set still matches
    /// into distinct colours; leaves all state untouched on failure.
    fn add_slot(&mut self, slot: usize, e: Edge) -> bool {
        self.slot_edge[slot] = Some(e);
        let mut visited = vec![false; self.n];
        if self.augment(slot, &mut visited) {
            true
        } else {
            self.slot_edge[slot] = None;
            false
        }
    }

    fn drop_slot(&mut self, slot: usize) {
        let c = self.slot_color[slot].take().expect("slot coloured");
        self.color_slot[c] = None;
        self.slot_edge[slot] = None;
    }

    fn certificate(&self) -> RainbowCycle {
        let colored = (0..self.n).map(|slot| {
            (
                self.slot_edge[slot].expect("complete"),
                self.slot_color[slot].expect("complete") + 1,
            )
        });
        let cycle = RainbowCycle::from_colored_edges(self.n, colored).expect("solver leaf is a Hamiltonian cycle");
        cycle
            .validate_against(self.family)
            .expect("matching guarantees membership");
        cycle
    }

    fn extend(&mut self) -> Flow {
        if self.nodes >= self.budget {
            return Flow::Budget;
        }
        self.nodes += 1;
        let depth = self.path.len();
        let last = *self.path.last().unwrap();
        if depth == self.n {
            if self.path[1] < self.path[self.n - 1] && self.union_rows[last - 1] & 1 != 0 {
                let closing = Edge::new(last, 1).unwrap();
                if self.add_slot(self.n - 1, closing) {
                    return Flow::Found(self.certificate());
                }
            }
            return Flow::Exhausted;
        }
        let candidates: Vec<Vertex> = self.order[last - 1]
            .iter()
            .copied()
            .filter(|&v| self.on_path >> (v - 1) & 1 == 0)
            .collect();
        for v in candidates {
            let e = Edge::new(last, v).unwrap();
            if !self.add_slot(depth - 1, e) {
                continue;
            }
            self.path.push(v);
            self.on_path |= 1 << (v - 1);
            match self.extend() {
                Flow::Exhausted => {}
                stop => return stop,
            }
            self.on_path &= !(1 << (v - 1));
            self.path.pop();
            self.drop_slot(depth - 1);
        }
        Flow::Exhausted
    }
}

/// Bounded exact search. `BudgetExceeded` means undecided, never "no".
pub fn find_rainbow_hamiltonian_cycle(
    family: &GraphFamily,
    budget: u64,
) -> Result<SearchOutcome, SolverError> {
    let n = family.n();
    if n < 3 {
        return Err(SolverError::TooSmall(n));
    }
    let mut search = Search::new(family, budget);
    Ok(match search.extend() {
        Flow::Found(c) => SearchOutcome::Found(c),
        Flow::Exhausted => SearchOutcome::NotFound,
        Flow::Budget => SearchOutcome::BudgetExceeded { nodes: search.nodes },
    })
}

/// Existence decision: Some(answer), or None when the budget ran out.
pub fn rainbow_hamiltonian_exists(
    family: &GraphFamily,
    budget: u64,
) -> Result<Option<bool>, SolverError> {
    Ok(match find_rainbow_hamiltonian_cycle(family, budget)? {
        SearchOutcome::Found(_) => Some(true),
        SearchOutcome::NotFound => Some(false),
        SearchOutcome::BudgetExceeded { .. } => None,
    })
}

fn assign_colors(
    family: &GraphFamily,
    edges: &[Edge],
    idx: usize,
    used: &mut [bool],
    chosen: &mut [usize],
) -> bool {
    if idx == edges.len() {
        return true;
    }
    for c in 1..=family.n() {
        if !used[c - 1] && family.graph(c).contains_edge(edges[idx]) {
            used[c - 1] = true;
            chosen[idx] = c;
            if assign_colors(family, edges, idx + 1, used, chosen) {
                return true;
            }
            used[c - 1] = false;
        }
    }
    false
}

/// Independent reference decision by full enumeration of vertex cycles and
/// naive colour backtracking. Supports n <= 7 only.
pub fn brute_force_oracle(family: &GraphFamily) -> Result<Option<RainbowCycle>, SolverError> {
    let n = family.n();
    if n < 3 {
        return Err(SolverError::TooSmall(n));
    }
    if n > 7 {
        return Err(SolverError::OracleTooLarge(n));
    }
    let mut rest: Vec<Vertex> = (2..=n).collect();
    let mut acc: Vec<Vertex> = vec![1];
    fn cycles(
        family: &GraphFamily,
        rest: &mut Vec<Vertex>,
        acc: &mut Vec<Vertex>,
        out: &mut Option<RainbowCycle>,
    ) {
        if out.is_some() {
            return;
        }
        let n = family.n();
        if rest.is_empty() {
            if acc[1] > acc[n - 1] {
                return;
            }
            let mut edges = Vec::with_capacity(n);
            for i in 0..n {
                edges.push(Edge::new(acc[i], acc[(i + 1) % n]).unwrap());
            }
            let mut used = vec![false; n];
            let mut chosen = vec![0usize; n];
            if assign_colors(family, &edges, 0, &mut used, &mut chosen) {
                let cycle = RainbowCycle::from_colored_edges(
                    n,
                    edges.iter().copied().zip(chosen.iter().copied()),
                )
                .expect("enumerated Hamiltonian cycle");
                *out = Some(cycle);
            }
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            acc.push(v);
            cycles(family, rest, acc, out);
            acc.pop();
            rest.insert(i, v);
        }
    }
    let mut out = None;
    cycles(family, &mut rest, &mut acc, &mut out);
    if let Some(c) = &out {
        c.validate_against(family).expect("oracle certificate must validate");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_plus_pendant, cycle_graph, edgeless, Graph, GraphFamily};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn solve(family: &GraphFamily) -> SearchOutcome {
        find_rainbow_hamiltonian_cycle(family, DEFAULT_NODE_BUDGET).unwrap()
    }

    #[test]
    fn complete_family_canonical_certificate() {
        for n in 4..=8 {
            let fam = GraphFamily::uniform(&complete(n).unwrap()).unwrap();
            let cycle = match solve(&fam) {
                SearchOutcome::Found(c) => c,
                other => panic!("n={}: {:?}", n, other),
            };
            let want: Vec<Vertex> = (1..=n).collect();
            assert_eq!(cycle.vertices(), &want[..], "n={}", n);
            for i in 1..n {
                assert_eq!(cycle.color_of(Edge::new(i, i + 1).unwrap()), Some(i), "n={}", n);
            }
            assert_eq!(cycle.color_of(Edge::new(1, n).unwrap()), Some(n), "n={}", n);
        }
    }

    #[test]
    fn infeasible_families() {
        let fam = GraphFamily::uniform(&edgeless(5).unwrap()).unwrap();
        assert_eq!(solve(&fam), SearchOutcome::NotFound);
        for n in 4..=7 {
            let fam = GraphFamily::uniform(&complete_plus_pendant(n).unwrap()).unwrap();
            assert_eq!(solve(&fam), SearchOutcome::NotFound, "n={}", n);
        }
    }

    #[test]
    fn hamiltonian_union_but_no_rainbow() {
        // Colours 1 and 2 both supply only the edge {1,2}: a rainbow cycle
        // would need them on two distinct edges.
        let single = Graph::new(4, &[(1, 2)]).unwrap();
        let c4 = cycle_graph(4).unwrap();
        let fam = GraphFamily::new(vec![single.clone(), single, c4.clone(), c4.clone()]).unwrap();
        assert_eq!(solve(&fam), SearchOutcome::NotFound);
        assert!(crate::graph::is_hamiltonian(&fam.union_graph()).unwrap().is_some());
    }

    #[test]
    fn all_equal_cycle_family() {
        for n in [4, 5, 7] {
            let fam = GraphFamily::uniform(&cycle_graph(n).unwrap()).unwrap();
            match solve(&fam) {
                SearchOutcome::Found(c) => c.validate_against(&fam).unwrap(),
                other => panic!("n={}: {:?}", n, other),
            }
        }
    }

    #[test]
    fn budget_exhaustion_reported() {
        let fam = GraphFamily::uniform(&complete(7).unwrap()).unwrap();
        match find_rainbow_hamiltonian_cycle(&fam, 3).unwrap() {
            SearchOutcome::BudgetExceeded { nodes } => assert!(nodes <= 3),
            other => panic!("{:?}", other),
        }
        assert_eq!(rainbow_hamiltonian_exists(&fam, 3).unwrap(), None);
    }

    #[test]
    fn too_small_rejected() {
        let fam = GraphFamily::uniform(&complete(2).unwrap()).unwrap();
        assert_eq!(
            find_rainbow_hamiltonian_cycle(&fam, 10).unwrap_err(),
            SolverError::TooSmall(2)
        );
    }

    fn random_family(rng: &mut ChaCha8Rng, n: usize) -> GraphFamily {
        let graphs: Vec<Graph> = (0..n)
            .map(|_| {
                let p = rng.gen::<f64>();
                let mut edges = Vec::new();
                for u in 1..n {
                    for v in (u + 1)..=n {
                        if rng.gen::<f64>() < p {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::new(n, &edges).unwrap()
            })
            .collect();
        GraphFamily::new(graphs).unwrap()
    }

    #[test]
    fn agrees_with_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0b5e55);
        let mut found = 0usize;
        for trial in 0..600 {
            let n = 4 + (trial % 3);
            let fam = random_family(&mut rng, n);
            let got = solve(&fam);
            let want = brute_force_oracle(&fam).unwrap();
            match (&got, &want) {
                (SearchOutcome::Found(c), Some(w)) => {
                    c.validate_against(&fam).unwrap();
                    w.validate_against(&fam).unwrap();
                    found += 1;
                }
                (SearchOutcome::NotFound, None) => {}
                other => panic!("trial {}: {:?}", trial, other),
            }
        }
        assert!(found > 50, "sampling should produce positives, got {}", found);
    }

    #[test]
    fn color_permutation_preserves_existence() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xfeed);
        for trial in 0..200 {
            let n = 4 + (trial % 3);
            let fam = random_family(&mut rng, n);
            let mut graphs = fam.graphs().to_vec();
            // rotate colours by one
            graphs.rotate_left(1);
            let rotated = GraphFamily::new(graphs).unwrap();
            let a = rainbow_hamiltonian_exists(&fam, DEFAULT_NODE_BUDGET).unwrap();
            let b = rainbow_hamiltonian_exists(&rotated, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(a, b, "trial {}", trial);
            if a == Some(true) {
                let c = solve(&rotated);
                c.found().unwrap().validate_against(&rotated).unwrap();
            }
        }
    }

    #[test]
    fn relabelling_preserves_certificates() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xbead);
        for trial in 0..100 {
            let n = 5;
            let fam = random_family(&mut rng, n);
            let mut perm: Vec<Vertex> = (1..=n).collect();
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            let relabeled = fam.relabel(&perm).unwrap();
            let a = rainbow_hamiltonian_exists(&fam, DEFAULT_NODE_BUDGET).unwrap();
            let b = rainbow_hamiltonian_exists(&relabeled, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(a, b, "trial {}", trial);
            if let SearchOutcome::Found(c) = solve(&fam) {
                c.relabel(&perm).unwrap().validate_against(&relabeled).unwrap();
            }
        }
    }

    #[test]
    fn deterministic_output() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xd00d);
        for _ in 0..50 {
            let fam = random_family(&mut rng, 6);
            assert_eq!(solve(&fam), solve(&fam));
        }
    }

    #[test]
    fn oracle_guard() {
        let fam = GraphFamily::uniform(&complete(8).unwrap()).unwrap();
        assert_eq!(brute_force_oracle(&fam).unwrap_err(), SolverError::OracleTooLarge(8));
    }
}
