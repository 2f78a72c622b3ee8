//! Transports rainbow Hamiltonian cycles backwards through transformation
//! steps.
//!
//! One neighbourhood-shift step with roles (x, y) can invalidate at most the
//! two cycle edges meeting x, because only x gains edges while y keeps a
//! subset of its old ones. Each invalid edge is repaired by a local switch
//! that exchanges the roles of x and y on part of the cycle and reuses the
//! original colours, so at most four edge assignments change per step. All
//! candidate switches are validated in full before being returned; iterating
//! over a recorded transcript then lifts a certificate for the transformed
//! family all the way back to the original one.

use crate::graph::{CycleError, Edge, GraphFamily, RainbowCycle, Vertex};
use crate::kelmans::{family_hash, kelmans_step_family, KelmansError, KelmansTranscript};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LiftError {
    #[error(transparent)]
    Kelmans(#[from] KelmansError),
    #[error("cycle is not rainbow Hamiltonian for the transformed family: {0}")]
    InvalidInput(CycleError),
    #[error(
        "no switch lifted the cycle across roles ({x}, {y}); vertices {vertices:?}, colours {colors:?}"
    )]
    CaseExhausted { x: Vertex, y: Vertex, vertices: Vec<Vertex>, colors: Vec<(Edge, usize)> },
}

/// Which repair produced the lifted cycle.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LiftChoice {
    /// The cycle was already valid for the earlier family.
    Unchanged,
    /// The edge xy was on the cycle; x and y traded places.
    EndpointExchange,
    /// The edge from x to its arc successor moved to y, and y's arc
    /// predecessor reconnected to x.
    SuccessorSwitch,
    /// Mirror image: x's arc predecessor moved to y, and y's arc successor
    /// reconnected to x.
    PredecessorSwitch,
    /// Both switches at once; x and y traded places entirely.
    DoubleSwitch,
}

/// Rebuilds the cycle with each `(old, new)` edge replacement reusing the
/// colour of `old`, then validates the result against `family`.
fn try_switch(
    family: &GraphFamily,
    cycle: &RainbowCycle,
    swaps: &[(Edge, Edge)],
) -> Option<RainbowCycle> {
    let mut colors: BTreeMap<Edge, usize> = cycle.colored_edges().collect();
    let mut adds = Vec::with_capacity(swaps.len());
    for &(old, new) in swaps {
        let c = colors.remove(&old)?;
        adds.push((new, c));
    }
    for (new, c) in adds {
        if colors.insert(new, c).is_some() {
            return None;
        }
    }
    let cand = RainbowCycle::from_colored_edges(family.n(), colors).ok()?;
    cand.validate_against(family).ok()?;
    Some(cand)
}

/// Lifts a certificate across a single step with roles (x, y), reporting
/// which repair was used. `family` is the family before the step; `cycle`
/// must be rainbow Hamiltonian for the stepped family.
pub fn lift_one_step_traced(
    family: &GraphFamily,
    x: Vertex,
    y: Vertex,
    cycle: &RainbowCycle,
) -> Result<(RainbowCycle, LiftChoice), LiftError> {
    let stepped = kelmans_step_family(family, x, y)?;
    cycle.validate_against(&stepped).map_err(LiftError::InvalidInput)?;
    if cycle.validate_against(family).is_ok() {
        return Ok((cycle.clone(), LiftChoice::Unchanged));
    }
    let n = family.n();
    let verts = cycle.vertices();
    let mut pos = vec![0usize; n + 1];
    for (i, &v) in verts.iter().enumerate() {
        pos[v] = i;
    }
    let pred = |v: Vertex| verts[(pos[v] + n - 1) % n];
    let succ = |v: Vertex| verts[(pos[v] + 1) % n];
    let edge = |u: Vertex, v: Vertex| Edge::new(u, v).expect("cycle vertices are distinct");

    if cycle.contains_edge(edge(x, y)) {
        let u = if pred(x) == y { succ(x) } else { pred(x) };
        let v = if pred(y) == x { succ(y) } else { pred(y) };
        let swaps = [(edge(u, x), edge(u, y)), (edge(y, v), edge(x, v))];
        if let Some(c) = try_switch(family, cycle, &swaps) {
            return Ok((c, LiftChoice::EndpointExchange));
        }
    } else {
        for reversed in [false, true] {
            let (a1, a2) = if reversed { (succ(x), pred(x)) } else { (pred(x), succ(x)) };
            let (b1, b2) = if reversed { (succ(y), pred(y)) } else { (pred(y), succ(y)) };
            let successor = [(edge(x, a2), edge(y, a2)), (edge(b1, y), edge(b1, x))];
            if let Some(c) = try_switch(family, cycle, &successor) {
                return Ok((c, LiftChoice::SuccessorSwitch));
            }
            let predecessor = [(edge(a1, x), edge(y, a1)), (edge(y, b2), edge(x, b2))];
            if let Some(c) = try_switch(family, cycle, &predecessor) {
                return Ok((c, LiftChoice::PredecessorSwitch));
            }
            let both = [
                (edge(a1, x), edge(y, a1)),
                (edge(x, a2), edge(y, a2)),
                (edge(b1, y), edge(b1, x)),
                (edge(y, b2), edge(x, b2)),
            ];
            if let Some(c) = try_switch(family, cycle, &both) {
                return Ok((c, LiftChoice::DoubleSwitch));
            }
        }
    }
    Err(LiftError::CaseExhausted {
        x,
        y,
        vertices: verts.to_vec(),
        colors: cycle.colored_edges().collect(),
    })
}

/// Lifts a certificate across a single step with roles (x, y).
pub fn lift_one_step(
    family: &GraphFamily,
    x: Vertex,
    y: Vertex,
    cycle: &RainbowCycle,
) -> Result<RainbowCycle, LiftError> {
    lift_one_step_traced(family, x, y, cycle).map(|(c, _)| c)
}

/// Lifts a certificate for the fully transformed family back to the original
/// one by replaying the transcript forwards (hash checked) and undoing its
/// steps in reverse.
pub fn lift_full(
    family: &GraphFamily,
    transcript: &KelmansTranscript,
    cycle: &RainbowCycle,
) -> Result<RainbowCycle, LiftError> {
    let mut intermediates = Vec::with_capacity(transcript.len() + 1);
    let mut current = family.clone();
    for (i, step) in transcript.steps().iter().enumerate() {
        let found = family_hash(&current);
        if found != step.family_hash_before {
            return Err(KelmansError::HashMismatch {
                step: i,
                expected: step.family_hash_before,
                found,
            }
            .into());
        }
        intermediates.push(current.clone());
        current = kelmans_step_family(&current, step.x, step.y)?;
    }
    cycle.validate_against(&current).map_err(LiftError::InvalidInput)?;
    let mut lifted = cycle.clone();
    for (i, step) in transcript.steps().iter().enumerate().rev() {
        lifted = lift_one_step(&intermediates[i], step.x, step.y, &lifted)?;
    }
    lifted.validate_against(family).map_err(LiftError::InvalidInput)?;
    Ok(lifted)
}
