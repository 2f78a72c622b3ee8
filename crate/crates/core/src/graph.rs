//! Labelled simple graphs on at most 64 vertices, families of n graphs on a
//! shared vertex set [n], and rainbow Hamiltonian cycle certificates.
//!
//! Vertex labels are 1-based everywhere in the public API; adjacency is stored
//! as one `u64` bitset row per vertex.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// 1-based vertex label.
pub type Vertex = usize;

/// Hard cap imposed by the bitset representation.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("order {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("order {n} is too small for {what}")]
    TooSmall { what: &'static str, n: usize },
}

/// Unordered pair of distinct vertices, stored with the smaller label first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Self, GraphError> {
        if a == b {
            return Err(GraphError::LoopEdge(a));
        }
        if a == 0 || b == 0 {
            return Err(GraphError::LabelOutOfRange { label: 0, n: MAX_VERTICES });
        }
        Ok(Edge { u: a.min(b), v: a.max(b) })
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    /// The endpoint other than `w`; panics if `w` is not an endpoint.
    pub fn other(&self, w: Vertex) -> Vertex {
        if w == self.u {
            self.v
        } else if w == self.v {
            self.u
        } else {
            panic!("vertex {} is not an endpoint of {:?}", w, self)
        }
    }

    pub fn contains(&self, w: Vertex) -> bool {
        self.u == w || self.v == w
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// Simple undirected graph with vertex set {1, ..., n}.
///
/// Immutable after construction; all operations return new values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an explicit edge list. Duplicate pairs collapse;
    /// loops and out-of-range labels are rejected.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            for label in [a, b] {
                if label == 0 || label > n {
                    return Err(GraphError::LabelOutOfRange { label, n });
                }
            }
            g.adj[a - 1] |= 1 << (b - 1);
            g.adj[b - 1] |= 1 << (a - 1);
        }
        Ok(g)
    }

    /// Edgeless graph on n vertices. An order of 0 is allowed and acts as the
    /// identity for disjoint union.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        debug_assert!(a >= 1 && a <= self.n && b >= 1 && b <= self.n && a != b);
        self.adj[a - 1] >> (b - 1) & 1 == 1
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree(&self, v: Vertex) -> usize {
        debug_assert!(v >= 1 && v <= self.n);
        self.adj[v - 1].count_ones() as usize
    }

    /// Neighbourhood of v as a bitset (bit k set means vertex k+1 is adjacent).
    pub(crate) fn neighbors_bits(&self, v: Vertex) -> u64 {
        self.adj[v - 1]
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub(crate) fn rows_mut(&mut self) -> &mut [u64] {
        &mut self.adj
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let bits = self.adj[v - 1];
        (1..=self.n).filter(move |u| bits >> (u - 1) & 1 == 1)
    }

    /// Sorted edge list.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 1..self.n {
            for v in (u + 1)..=self.n {
                if self.has_edge(u, v) {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    pub fn with_edge(&self, e: Edge) -> Result<Self, GraphError> {
        if e.v > self.n {
            return Err(GraphError::LabelOutOfRange { label: e.v, n: self.n });
        }
        let mut g = self.clone();
        g.adj[e.u - 1] |= 1 << (e.v - 1);
        g.adj[e.v - 1] |= 1 << (e.u - 1);
        Ok(g)
    }

    pub fn without_edge(&self, e: Edge) -> Result<Self, GraphError> {
        if e.v > self.n {
            return Err(GraphError::LabelOutOfRange { label: e.v, n: self.n });
        }
        let mut g = self.clone();
        g.adj[e.u - 1] &= !(1 << (e.v - 1));
        g.adj[e.v - 1] &= !(1 << (e.u - 1));
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: Vertex, v: Vertex, present: bool) {
        debug_assert!(u != v && u >= 1 && u <= self.n && v >= 1 && v <= self.n);
        if present {
            self.adj[u - 1] |= 1 << (v - 1);
            self.adj[v - 1] |= 1 << (u - 1);
        } else {
            self.adj[u - 1] &= !(1 << (v - 1));
            self.adj[v - 1] &= !(1 << (u - 1));
        }
    }

    /// Minimum degree sum over nonadjacent vertex pairs, or None when the
    /// graph is complete (no such pair exists).
    pub fn sigma2(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for u in 1..self.n {
            for v in (u + 1)..=self.n {
                if !self.has_edge(u, v) {
                    let s = self.degree(u) + self.degree(v);
                    best = Some(best.map_or(s, |b| b.min(s)));
                }
            }
        }
        best
    }

    /// Relabels vertices: vertex v becomes perm[v-1]. `perm` must be a
    /// permutation of 1..=n.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::TooSmall { what: "relabelling permutation", n: perm.len() });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p == 0 || p > self.n {
                return Err(GraphError::LabelOutOfRange { label: p, n: self.n });
            }
            if seen[p - 1] {
                return Err(GraphError::LoopEdge(p));
            }
            seen[p - 1] = true;
        }
        let mut g = Graph::empty(self.n)?;
        for u in 1..self.n {
            for v in (u + 1)..=self.n {
                if self.has_edge(u, v) {
                    g.set_edge(perm[u - 1], perm[v - 1], true);
                }
            }
        }
        Ok(g)
    }

    /// Vertex sets of connected components, each sorted, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = 0u64;
        let full: u64 = if self.n == 64 { u64::MAX } else { (1 << self.n) - 1 };
        let mut out = Vec::new();
        while seen != full {
            let start = (!seen & full).trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            loop {
                let mut grown = comp;
                let mut bits = comp;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    grown |= self.adj[v];
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            let mut verts = Vec::new();
            let mut bits = comp;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                verts.push(v + 1);
            }
            out.push(verts);
        }
        out
    }

    /// Debug check of the representation invariants: symmetric adjacency, no
    /// loops, no bits beyond n.
    pub fn check_invariants(&self) {
        let mask: u64 = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        for u in 0..self.n {
            assert_eq!(self.adj[u] & !mask, 0, "stray bits in row {}", u + 1);
            assert_eq!(self.adj[u] >> u & 1, 0, "loop at {}", u + 1);
            for v in 0..self.n {
                assert_eq!(
                    self.adj[u] >> v & 1,
                    self.adj[v] >> u & 1,
                    "asymmetry between {} and {}",
                    u + 1,
                    v + 1
                );
            }
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {:?})", self.n, self.edges())
    }
}

/// Join G1 * G2: disjoint union plus all edges between the two sides. Labels
/// of G2 are shifted up by G1's order.
pub fn join(g1: &Graph, g2: &Graph) -> Result<Graph, GraphError> {
    let n1 = g1.n;
    let n = n1 + g2.n;
    let mut g = union(g1, g2)?;
    for u in 1..=n1 {
        for v in (n1 + 1)..=n {
            g.set_edge(u, v, true);
        }
    }
    Ok(g)
}

/// Disjoint union, with G2's labels shifted up by G1's order.
pub fn union(g1: &Graph, g2: &Graph) -> Result<Graph, GraphError> {
    let n1 = g1.n;
    let n = n1 + g2.n;
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge(n));
    }
    let mut g = Graph::empty(n)?;
    for (i, row) in g1.adj.iter().enumerate() {
        g.adj[i] = *row;
    }
    for (i, row) in g2.adj.iter().enumerate() {
        g.adj[n1 + i] = row << n1;
    }
    Ok(g)
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    let mask: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for v in 0..n {
        g.adj[v] = mask & !(1 << v);
    }
    Ok(g)
}

pub fn edgeless(n: usize) -> Result<Graph, GraphError> {
    Graph::empty(n)
}

pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooSmall { what: "a cycle", n });
    }
    let mut g = Graph::empty(n)?;
    for v in 1..=n {
        let w = if v == n { 1 } else { v + 1 };
        g.set_edge(v, w, true);
    }
    Ok(g)
}

/// K_{n-1} with one extra vertex attached by a single edge: the join
/// K_1 * (K_{n-2} + K_1). Canonical labelling puts the dominating vertex at
/// label 1 and the pendant vertex at label n.
pub fn complete_plus_pendant(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooSmall { what: "a clique with a pendant", n });
    }
    let mut g = complete(n - 1)?;
    g.n = n;
    g.adj.push(0);
    g.set_edge(1, n, true);
    Ok(g)
}

/// The join K_2 * 3K_1 on 5 vertices: labels 1 and 2 are the dominating pair,
/// labels 3..5 are independent.
pub fn k2_join_3k1() -> Graph {
    join(&complete(2).unwrap(), &edgeless(3).unwrap()).unwrap()
}

/// Star K_{1,k} with the centre at label 1.
pub fn star(k: usize) -> Result<Graph, GraphError> {
    join(&complete(1)?, &edgeless(k)?)
}

/// Exact isomorphism test by backtracking over degree-compatible label maps.
/// Intended for small graphs; refuses orders above 10.
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool, GraphError> {
    if g1.n > 10 || g2.n > 10 {
        return Err(GraphError::TooLarge(g1.n.max(g2.n)));
    }
    if g1.n != g2.n || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let n = g1.n;
    if n == 0 {
        return Ok(true);
    }
    let sig = |g: &Graph| -> Vec<(usize, Vec<usize>)> {
        (1..=n)
            .map(|v| {
                let mut nd: Vec<usize> = g.neighbors(v).map(|u| g.degree(u)).collect();
                nd.sort_unstable();
                (g.degree(v), nd)
            })
            .collect()
    };
    let s1 = sig(g1);
    let s2 = sig(g2);
    {
        let mut a = s1.clone();
        let mut b = s2.clone();
        a.sort();
        b.sort();
        if a != b {
            return Ok(false);
        }
    }
    // map[v-1] = image of v in g2 (0 = unassigned)
    let mut map = vec![0usize; n];
    let mut used = vec![false; n];
    fn extend(
        v: usize,
        n: usize,
        g1: &Graph,
        g2: &Graph,
        s1: &[(usize, Vec<usize>)],
        s2: &[(usize, Vec<usize>)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v > n {
            return true;
        }
        for w in 1..=n {
            if used[w - 1] || s1[v - 1] != s2[w - 1] {
                continue;
            }
            let ok = (1..v).all(|u| g1.has_edge(u, v) == g2.has_edge(map[u - 1], w));
            if ok {
                map[v - 1] = w;
                used[w - 1] = true;
                if extend(v + 1, n, g1, g2, s1, s2, map, used) {
                    return true;
                }
                map[v - 1] = 0;
                used[w - 1] = false;
            }
        }
        false
    }
    Ok(extend(1, n, g1, g2, &s1, &s2, &mut map, &mut used))
}

/// Finds a Hamiltonian cycle of a single graph by exhaustive backtracking,
/// returned as a vertex sequence starting at 1, or None.
pub fn is_hamiltonian(g: &Graph) -> Result<Option<Vec<Vertex>>, GraphError> {
    let n = g.n;
    if n < 3 {
        return Err(GraphError::TooSmall { what: "Hamiltonicity", n });
    }
    if (1..=n).any(|v| g.degree(v) < 2) {
        return Ok(None);
    }
    let mut path = Vec::with_capacity(n);
    path.push(1usize);
    let mut on = 1u64;
    fn extend(g: &Graph, path: &mut Vec<usize>, on: &mut u64) -> bool {
        let n = g.n();
        let last = *path.last().unwrap();
        if path.len() == n {
            return g.has_edge(last, 1) && path[1] < path[n - 1];
        }
        let mut cand = g.neighbors_bits(last) & !*on;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize + 1;
            cand &= cand - 1;
            path.push(v);
            *on |= 1 << (v - 1);
            if extend(g, path, on) {
                return true;
            }
            path.pop();
            *on &= !(1 << (v - 1));
        }
        false
    }
    if extend(g, &mut path, &mut on) {
        Ok(Some(path))
    } else {
        Ok(None)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family holds {count} graphs on {n} vertices; exactly n graphs are required")]
    WrongCount { count: usize, n: usize },
    #[error("graph {index} has order {got}, expected {expected}")]
    MixedOrders { index: usize, got: usize, expected: usize },
    #[error("a family must contain at least one graph")]
    Empty,
}

/// Ordered family G_1, ..., G_n of n graphs on the common vertex set [n].
/// The position of a graph is its colour, so order is significant.
#[derive(Clone, PartialEq, Eq)]
pub struct GraphFamily {
    n: usize,
    graphs: Vec<Graph>,
}

impl GraphFamily {
    pub fn new(graphs: Vec<Graph>) -> Result<Self, FamilyError> {
        let n = match graphs.first() {
            Some(g) => g.n(),
            None => return Err(FamilyError::Empty),
        };
        for (i, g) in graphs.iter().enumerate() {
            if g.n() != n {
                return Err(FamilyError::MixedOrders { index: i + 1, got: g.n(), expected: n });
            }
        }
        if graphs.len() != n {
            return Err(FamilyError::WrongCount { count: graphs.len(), n });
        }
        Ok(GraphFamily { n, graphs })
    }

    /// Family of n copies of the same graph.
    pub fn uniform(g: &Graph) -> Result<Self, FamilyError> {
        GraphFamily::new(vec![g.clone(); g.n()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    /// Graph of the given colour (1-based).
    pub fn graph(&self, color: usize) -> &Graph {
        &self.graphs[color - 1]
    }

    pub fn replace(&self, color: usize, g: Graph) -> Result<Self, FamilyError> {
        if g.n() != self.n {
            return Err(FamilyError::MixedOrders { index: color, got: g.n(), expected: self.n });
        }
        let mut graphs = self.graphs.clone();
        graphs[color - 1] = g;
        GraphFamily::new(graphs)
    }

    pub fn all_equal(&self) -> bool {
        self.graphs.windows(2).all(|w| w[0] == w[1])
    }

    /// Union of all members.
    pub fn union_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n).unwrap();
        for member in &self.graphs {
            for (row, other) in g.adj.iter_mut().zip(member.adj.iter()) {
                *row |= other;
            }
        }
        g
    }

    /// Applies one permutation to every member's vertex labels.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self, GraphError> {
        let graphs = self
            .graphs
            .iter()
            .map(|g| g.relabel(perm))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GraphFamily { n: self.n, graphs })
    }
}

impl fmt::Debug for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GraphFamily(n={})", self.n)?;
        for (i, g) in self.graphs.iter().enumerate() {
            writeln!(f, "  G_{}: {:?}", i + 1, g.edges())?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("vertex sequence is not a permutation of 1..=n")]
    NotAPermutation,
    #[error("colour map keys do not match the cycle's edge set")]
    WrongEdgeSet,
    #[error("colours are not a bijection onto 1..=n")]
    ColorsNotBijective,
    #[error("edge {{{u},{v}}} carries colour {color} but is absent from graph {color}")]
    EdgeNotInColorGraph { u: Vertex, v: Vertex, color: usize },
    #[error("edge set does not form a single Hamiltonian cycle")]
    NotASingleCycle,
    #[error("a Hamiltonian cycle needs at least 3 vertices, got {0}")]
    TooShort(usize),
}

/// A Hamiltonian cycle together with a bijective edge colouring: the edge of
/// colour i must belong to G_i. Stored in canonical orientation (starts at
/// vertex 1, second vertex smaller than last).
#[derive(Clone, PartialEq, Eq)]
pub struct RainbowCycle {
    vertices: Vec<Vertex>,
    colors: BTreeMap<Edge, usize>,
}

impl RainbowCycle {
    /// Builds and structurally validates a certificate. Membership of edges
    /// in their colour graphs is checked separately by `validate_against`.
    pub fn new(vertices: Vec<Vertex>, colors: BTreeMap<Edge, usize>) -> Result<Self, CycleError> {
        let n = vertices.len();
        if n < 3 {
            return Err(CycleError::TooShort(n));
        }
        let mut seen = vec![false; n];
        for &v in &vertices {
            if v == 0 || v > n || seen[v - 1] {
                return Err(CycleError::NotAPermutation);
            }
            seen[v - 1] = true;
        }
        let mut cycle_edges = Vec::with_capacity(n);
        for i in 0..n {
            let e = Edge::new(vertices[i], vertices[(i + 1) % n]).map_err(|_| CycleError::NotASingleCycle)?;
            cycle_edges.push(e);
        }
        let mut sorted = cycle_edges.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(CycleError::NotASingleCycle);
        }
        if colors.len() != n || !sorted.iter().all(|e| colors.contains_key(e)) {
            return Err(CycleError::WrongEdgeSet);
        }
        let mut used = vec![false; n];
        for &c in colors.values() {
            if c == 0 || c > n || used[c - 1] {
                return Err(CycleError::ColorsNotBijective);
            }
            used[c - 1] = true;
        }
        Ok(RainbowCycle { vertices: canonical_rotation(vertices), colors })
    }

    /// Reconstructs a certificate from n coloured edges which must form a
    /// single Hamiltonian cycle on [n].
    pub fn from_colored_edges(
        n: usize,
        colored: impl IntoIterator<Item = (Edge, usize)>,
    ) -> Result<Self, CycleError> {
        let colors: BTreeMap<Edge, usize> = colored.into_iter().collect();
        if colors.len() != n {
            return Err(CycleError::WrongEdgeSet);
        }
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n + 1];
        for e in colors.keys() {
            let (u, v) = e.endpoints();
            if v > n {
                return Err(CycleError::NotAPermutation);
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        if adj.iter().skip(1).any(|nb| nb.len() != 2) {
            return Err(CycleError::NotASingleCycle);
        }
        let mut vertices = Vec::with_capacity(n);
        let mut visited = vec![false; n + 1];
        let mut prev = 0usize;
        let mut cur = 1usize;
        for _ in 0..n {
            if visited[cur] {
                return Err(CycleError::NotASingleCycle);
            }
            visited[cur] = true;
            vertices.push(cur);
            let next = if adj[cur][0] != prev { adj[cur][0] } else { adj[cur][1] };
            prev = cur;
            cur = next;
        }
        if cur != 1 {
            return Err(CycleError::NotASingleCycle);
        }
        RainbowCycle::new(vertices, colors)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex sequence in canonical orientation.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn color_of(&self, e: Edge) -> Option<usize> {
        self.colors.get(&e).copied()
    }

    /// The edge carrying the given colour.
    pub fn edge_of_color(&self, color: usize) -> Option<Edge> {
        self.colors.iter().find(|&(_, &c)| c == color).map(|(e, _)| *e)
    }

    pub fn colored_edges(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.colors.iter().map(|(e, c)| (*e, *c))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.colors.contains_key(&e)
    }

    /// Full check against a family: structure plus membership of every edge
    /// in the graph of its colour.
    pub fn validate_against(&self, family: &GraphFamily) -> Result<(), CycleError> {
        if self.vertices.len() != family.n() {
            return Err(CycleError::NotAPermutation);
        }
        for (e, c) in &self.colors {
            if !family.graph(*c).contains_edge(*e) {
                let (u, v) = e.endpoints();
                return Err(CycleError::EdgeNotInColorGraph { u, v, color: *c });
            }
        }
        Ok(())
    }

    /// Image of the certificate under a vertex relabelling.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self, CycleError> {
        let n = self.vertices.len();
        if perm.len() != n {
            return Err(CycleError::NotAPermutation);
        }
        let vertices: Vec<Vertex> = self.vertices.iter().map(|&v| perm[v - 1]).collect();
        let colors = self
            .colors
            .iter()
            .map(|(e, &c)| {
                let (u, v) = e.endpoints();
                Edge::new(perm[u - 1], perm[v - 1]).map(|e2| (e2, c)).map_err(|_| CycleError::NotAPermutation)
            })
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        RainbowCycle::new(vertices, colors)
    }
}

impl fmt::Debug for RainbowCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RainbowCycle(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, "-")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "; ")?;
        for (i, (e, c)) in self.colors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{:?}:{}", e, c)?;
        }
        write!(f, ")")
    }
}

/// Rotates/reflects a cyclic vertex sequence so it starts at 1 and the second
/// entry is smaller than the last.
fn canonical_rotation(vertices: Vec<Vertex>) -> Vec<Vertex> {
    let n = vertices.len();
    let pos = vertices.iter().position(|&v| v == 1).unwrap();
    let mut out: Vec<Vertex> = (0..n).map(|i| vertices[(pos + i) % n]).collect();
    if out[1] > out[n - 1] {
        out[1..].reverse();
    }
    out
}
