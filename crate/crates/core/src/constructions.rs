//! Constructive routines that build rainbow Hamiltonian cycles outright.
//!
//! Two routes are provided. The size route applies to families whose members
//! all have more than (n-1 choose 2) + 1 edges: the family is driven to its
//! transformation fixpoint, where a fixed zigzag chord system is guaranteed
//! to exist in every member, one explicit cycle over those chords is
//! coloured, and the certificate is lifted back through the recorded
//! transcript. The extremal route applies to families whose members are all
//! dominated cliques with one pendant vertex; unless the members are
//! identical, a cycle is assembled directly from a pendant-ordered path plus
//! at most one local switch.

use crate::graph::{Edge, Graph, GraphError, GraphFamily, RainbowCycle, Vertex};
use crate::kelmans::{kelmans_family, KelmansTranscript};
use crate::lifting::{lift_full, LiftError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("construction needs order >= 4, got {0}")]
    TooSmallOrder(usize),
    #[error("colour {color} has {edges} edges, the size route needs more than {threshold}")]
    SizeTooSmall { color: usize, edges: usize, threshold: usize },
    #[error("no member of the transformed family contains the starting chord")]
    StartingChordAbsent,
    #[error("colour {color} is not a dominated clique with one pendant vertex")]
    NotExtremalForm { color: usize },
    #[error("all members are identical; this family has no rainbow Hamiltonian cycle")]
    AllEqualFamily,
    #[error("constructed assignment failed validation: {details}")]
    ConstructionFailed { details: String },
    #[error(transparent)]
    Lift(#[from] LiftError),
}

/// The chord system present in every sufficiently dense fixpoint: the outer
/// chords {j, n+2-j}, the inner chords {k, n+1-k}, the starting chord
/// {2, n}, and a closing edge at vertex 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalEdgeSchedule {
    n: usize,
    pub start_edge: Edge,
    pub outer_edges: Vec<Edge>,
    pub inner_edges: Vec<Edge>,
    pub closing_edge: Edge,
}

impl CanonicalEdgeSchedule {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The cycle's edges in traversal order, starting with {2, n} and
    /// zigzagging inwards before returning to vertex 1 and closing.
    pub fn cycle_edges(&self) -> Vec<Edge> {
        let n = self.n;
        let edge = |a: Vertex, b: Vertex| Edge::new(a, b).expect("chord endpoints are distinct");
        let mut seq = vec![self.start_edge];
        for j in 2..=n / 2 {
            seq.push(edge(j, n + 1 - j));
            if n % 2 == 1 || j < n / 2 {
                seq.push(edge(j + 1, n + 1 - j));
            }
        }
        seq.push(self.closing_edge);
        seq.push(edge(1, n));
        seq
    }
}

/// Builds the chord system for order n >= 4.
pub fn canonical_schedule(n: usize) -> Result<CanonicalEdgeSchedule, ConstructionError> {
    if n < 4 {
        return Err(ConstructionError::TooSmallOrder(n));
    }
    let edge = |a: Vertex, b: Vertex| Edge::new(a, b).expect("chord endpoints are distinct");
    let outer_edges = (3..=n.div_ceil(2)).map(|j| edge(j, n + 2 - j)).collect();
    let inner_edges = (1..=n / 2).map(|k| edge(k, n + 1 - k)).collect();
    let closing = if n % 2 == 0 { edge(n / 2 + 1, 1) } else { edge(n.div_ceil(2), 1) };
    let schedule = CanonicalEdgeSchedule {
        n,
        start_edge: edge(2, n),
        outer_edges,
        inner_edges,
        closing_edge: closing,
    };
    debug_assert_eq!(
        {
            let mut v = schedule.cycle_edges();
            v.sort();
            v.dedup();
            v.len()
        },
        n,
        "cycle edges must be n distinct edges"
    );
    Ok(schedule)
}

/// Builds a rainbow Hamiltonian cycle for a family whose members all have
/// more than (n-1 choose 2) + 1 edges, returning the transcript of the
/// transformation steps the certificate was lifted through.
pub fn construct_cycle_size_condition_traced(
    family: &GraphFamily,
) -> Result<(RainbowCycle, KelmansTranscript), ConstructionError> {
    let n = family.n();
    if n < 4 {
        return Err(ConstructionError::TooSmallOrder(n));
    }
    let threshold = (n - 1) * (n - 2) / 2 + 1;
    for i in 1..=n {
        let edges = family.graph(i).edge_count();
        if edges <= threshold {
            return Err(ConstructionError::SizeTooSmall { color: i, edges, threshold });
        }
    }
    let (fixed, transcript) = kelmans_family(family);
    let schedule = canonical_schedule(n)?;
    let edges = schedule.cycle_edges();
    let start = edges[0];
    let start_color = (1..=n)
        .find(|&i| fixed.graph(i).contains_edge(start))
        .ok_or(ConstructionError::StartingChordAbsent)?;
    let mut colored = vec![(start, start_color)];
    let rest = (1..=n).filter(|&c| c != start_color);
    colored.extend(edges[1..].iter().copied().zip(rest));
    let cycle = RainbowCycle::from_colored_edges(n, colored)
        .map_err(|e| ConstructionError::ConstructionFailed { details: format!("chord cycle: {e}") })?;
    cycle
        .validate_against(&fixed)
        .map_err(|e| ConstructionError::ConstructionFailed { details: format!("fixpoint family: {e}") })?;
    let lifted = lift_full(family, &transcript, &cycle)?;
    Ok((lifted, transcript))
}

/// As [`construct_cycle_size_condition_traced`], returning only the cycle.
pub fn construct_cycle_size_condition(
    family: &GraphFamily,
) -> Result<RainbowCycle, ConstructionError> {
    construct_cycle_size_condition_traced(family).map(|(c, _)| c)
}

/// The complete graph on all vertices except `pendant`, plus the single edge
/// from `pendant` to `attachment`.
pub fn pendant_clique_labeled(
    n: usize,
    pendant: Vertex,
    attachment: Vertex,
) -> Result<Graph, GraphError> {
    Edge::new(pendant, attachment)?;
    let mut edges = Vec::new();
    for u in 1..n {
        for v in (u + 1)..=n {
            if u != pendant && v != pendant {
                edges.push((u, v));
            }
        }
    }
    edges.push((pendant, attachment));
    Graph::new(n, &edges)
}

/// Shape of a family of dominated cliques with one pendant vertex each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalFamilyProfile {
    /// Pendant vertex of each colour, index 0 holding colour 1.
    pub pendants: Vec<Vertex>,
    /// The unique neighbour of that pendant, per colour.
    pub attachments: Vec<Vertex>,
    /// Distinct pendant vertices sorted by (multiplicity, label).
    pub pendant_order: Vec<Vertex>,
    /// Multiplicities aligned with `pendant_order`, ascending.
    pub multiplicities: Vec<usize>,
}

/// Validates that every member is a dominated clique with one pendant vertex
/// and reports pendants, attachments, and multiplicities.
pub fn extremal_profile(family: &GraphFamily) -> Result<ExtremalFamilyProfile, ConstructionError> {
    let n = family.n();
    if n < 4 {
        return Err(ConstructionError::TooSmallOrder(n));
    }
    let mut pendants = Vec::with_capacity(n);
    let mut attachments = Vec::with_capacity(n);
    for i in 1..=n {
        let g = family.graph(i);
        let deg1: Vec<Vertex> = (1..=n).filter(|&v| g.degree(v) == 1).collect();
        if deg1.len() != 1 {
            return Err(ConstructionError::NotExtremalForm { color: i });
        }
        let p = deg1[0];
        let u = g.neighbors(p).next().expect("degree one vertex has a neighbour");
        let expected = pendant_clique_labeled(n, p, u).expect("labels are in range");
        if *g != expected {
            return Err(ConstructionError::NotExtremalForm { color: i });
        }
        pendants.push(p);
        attachments.push(u);
    }
    let mut counts: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &p in &pendants {
        *counts.entry(p).or_insert(0) += 1;
    }
    let mut pendant_order: Vec<Vertex> = counts.keys().copied().collect();
    pendant_order.sort_by_key(|v| (counts[v], *v));
    let multiplicities = pendant_order.iter().map(|v| counts[v]).collect();
    Ok(ExtremalFamilyProfile { pendants, attachments, pendant_order, multiplicities })
}

/// Which assembly produced the extremal-route cycle.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExtremalBranch {
    /// All members share one pendant vertex; two different attachments are
    /// threaded through it.
    SinglePendant,
    /// The pendant-ordered path closes directly through vertex one of the
    /// ordering.
    DirectClose,
    /// The first pendant block has size above one; its last path edge is
    /// rerouted through the second pendant.
    BlockSwitch,
    /// The first pendant block is a single colour; the cycle detours through
    /// the last colour's attachment vertex.
    AttachmentSwitch,
}

/// Builds a rainbow Hamiltonian cycle for a family of dominated cliques with
/// one pendant vertex each, reporting which assembly was used. Fails with
/// [`ConstructionError::AllEqualFamily`] when the members coincide, the one
/// shape that admits no such cycle.
pub fn construct_cycle_extremal_traced(
    family: &GraphFamily,
) -> Result<(RainbowCycle, ExtremalBranch), ConstructionError> {
    let profile = extremal_profile(family)?;
    let n = family.n();
    if (1..n).all(|i| {
        profile.pendants[i] == profile.pendants[0] && profile.attachments[i] == profile.attachments[0]
    }) {
        return Err(ConstructionError::AllEqualFamily);
    }
    let fail = |details: String| ConstructionError::ConstructionFailed { details };
    let edge = |a: Vertex, b: Vertex| Edge::new(a, b).expect("assembly endpoints are distinct");
    let k = profile.pendant_order.len();

    let (colored, branch) = if k == 1 {
        let p = profile.pendant_order[0];
        let ua = profile.attachments[0];
        let b = (2..=n)
            .find(|&i| profile.attachments[i - 1] != ua)
            .expect("unequal attachments exist when pendants coincide");
        let ub = profile.attachments[b - 1];
        let mut seq = vec![p, ua];
        seq.extend((1..=n).filter(|&v| v != p && v != ua && v != ub));
        seq.push(ub);
        let mut colored = vec![(edge(p, ua), 1)];
        let rest = (2..=n).filter(|&c| c != b);
        for (w, c) in seq.windows(2).skip(1).zip(rest) {
            colored.push((edge(w[0], w[1]), c));
        }
        colored.push((edge(ub, p), b));
        (colored, ExtremalBranch::SinglePendant)
    } else {
        let mut pi: Vec<usize> = Vec::with_capacity(n);
        for &v in &profile.pendant_order {
            pi.extend((1..=n).filter(|&i| profile.pendants[i - 1] == v));
        }
        let mut nu: Vec<Vertex> = profile.pendant_order.clone();
        nu.extend((1..=n).filter(|&v| !profile.pendant_order.contains(&v)));
        let path_edges = |nu: &[Vertex], skip: Option<usize>| -> Vec<(Edge, usize)> {
            (1..=n - 2)
                .filter(|i| Some(*i) != skip)
                .map(|i| (edge(nu[i], nu[i + 1]), pi[i - 1]))
                .collect()
        };
        let last = family.graph(pi[n - 1]);
        if last.contains_edge(edge(nu[0], nu[1])) {
            let mut colored = path_edges(&nu, None);
            colored.push((edge(nu[0], nu[n - 1]), pi[n - 2]));
            colored.push((edge(nu[0], nu[1]), pi[n - 1]));
            (colored, ExtremalBranch::DirectClose)
        } else {
            if k != 2 {
                return Err(fail(format!(
                    "closing edge absent with {k} pendant blocks; expected exactly two"
                )));
            }
            let m1 = profile.multiplicities[0];
            if m1 > 1 {
                let mut colored = path_edges(&nu, Some(m1));
                colored.push((edge(nu[1], nu[m1 + 1]), pi[m1 - 1]));
                colored.push((edge(nu[0], nu[n - 1]), pi[n - 2]));
                colored.push((edge(nu[0], nu[m1]), pi[n - 1]));
                (colored, ExtremalBranch::BlockSwitch)
            } else {
                let w = profile.attachments[pi[n - 1] - 1];
                let mut j = nu.iter().position(|&v| v == w).expect("attachment is a vertex") + 1;
                if j < 3 {
                    return Err(fail(format!("last colour attaches its pendant at position {j}")));
                }
                if j == 3 {
                    nu.swap(2, 3);
                    j = 4;
                }
                let mut colored = path_edges(&nu, Some(j - 2));
                colored.push((edge(nu[0], nu[j - 2]), pi[j - 3]));
                colored.push((edge(nu[0], nu[n - 1]), pi[n - 2]));
                colored.push((edge(nu[1], nu[j - 1]), pi[n - 1]));
                (colored, ExtremalBranch::AttachmentSwitch)
            }
        }
    };

    let cycle = RainbowCycle::from_colored_edges(n, colored)
        .map_err(|e| fail(format!("assembled edges ({branch:?}): {e}")))?;
    cycle
        .validate_against(family)
        .map_err(|e| fail(format!("assembled cycle ({branch:?}): {e}")))?;
    Ok((cycle, branch))
}

/// As [`construct_cycle_extremal_traced`], returning only the cycle.
pub fn construct_cycle_extremal(family: &GraphFamily) -> Result<RainbowCycle, ConstructionError> {
    construct_cycle_extremal_traced(family).map(|(c, _)| c)
}
