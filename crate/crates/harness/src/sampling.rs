//! Seeded, reproducible samplers and small-order enumerators.
//!
//! Campaign sampling draws, per graph, an edge count uniformly from the
//! range compatible with the hypothesis being tested and then a uniform
//! random labeled graph with that edge count. Hypotheses that constrain
//! more than the edge count (the spectral ones) are re-checked exactly
//! after the draw and failing graphs are redrawn, which conditions the
//! documented distribution on the hypothesis without bias.
//!
//! Every sampler takes an explicit random generator; [`rng_for`] derives
//! one generator per (seed, index) pair so campaigns can be replayed or
//! spot-checked family by family.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rhc_core::{pendant_clique_labeled, Graph, GraphFamily, Vertex};

/// Mixes a word through the splitmix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-item generator: the same (seed, index) pair always
/// yields the same stream, independent of how many items came before it.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(index)))
}

/// All vertex pairs u < v on [n], in lexicographic order.
pub fn edge_slots(n: usize) -> Vec<(Vertex, Vertex)> {
    let mut slots = Vec::with_capacity(n * (n - 1) / 2);
    for u in 1..=n {
        for v in (u + 1)..=n {
            slots.push((u, v));
        }
    }
    slots
}

/// Uniform random labeled graph on [n] with exactly `m` edges, drawn by a
/// partial Fisher-Yates shuffle of the edge slots.
pub fn sample_graph_with_edges(rng: &mut impl Rng, n: usize, m: usize) -> Graph {
    let mut slots = edge_slots(n);
    assert!(m <= slots.len(), "{m} edges do not fit on {n} vertices");
    for i in 0..m {
        let j = rng.gen_range(i..slots.len());
        slots.swap(i, j);
    }
    Graph::new(n, &slots[..m]).expect("slots are valid distinct edges")
}

/// Edge count uniform in [lo, hi], then a uniform graph with that count.
pub fn sample_graph_with_edges_in(rng: &mut impl Rng, n: usize, lo: usize, hi: usize) -> Graph {
    assert!(lo <= hi);
    let m = rng.gen_range(lo..=hi);
    sample_graph_with_edges(rng, n, m)
}

/// Family of n independent draws from [`sample_graph_with_edges_in`].
pub fn sample_family_with_edges_in(
    rng: &mut impl Rng,
    n: usize,
    lo: usize,
    hi: usize,
) -> GraphFamily {
    let graphs = (0..n).map(|_| sample_graph_with_edges_in(rng, n, lo, hi)).collect();
    GraphFamily::new(graphs).expect("n graphs on n vertices")
}

/// Family whose members are each redrawn until `accept` passes; used for
/// hypotheses that edge count alone cannot pin down. Returns the family
/// and the number of rejected draws.
pub fn sample_family_accepted(
    rng: &mut impl Rng,
    n: usize,
    lo: usize,
    hi: usize,
    mut accept: impl FnMut(&Graph) -> bool,
) -> (GraphFamily, u64) {
    let mut rejections = 0;
    let mut graphs = Vec::with_capacity(n);
    while graphs.len() < n {
        let g = sample_graph_with_edges_in(rng, n, lo, hi);
        if accept(&g) {
            graphs.push(g);
        } else {
            rejections += 1;
        }
    }
    (GraphFamily::new(graphs).expect("n graphs on n vertices"), rejections)
}

/// Smallest edge count a graph can have while its adjacency radius still
/// exceeds n - 2 (from rho^2 <= 2e).
pub fn min_edges_for_radius_above(n: usize) -> usize {
    (n - 2) * (n - 2) / 2 + 1
}

/// Smallest edge count compatible with signless Laplacian radius above
/// 2n - 4: the radius is at most twice the maximum degree, so some vertex
/// must be adjacent to all others.
pub fn min_edges_for_signless_above(n: usize) -> usize {
    n - 1
}

/// Every labeled graph on [n] with at least `min_edges` edges, enumerated
/// by bitmask over the edge slots. Guarded to small orders.
pub fn graphs_with_min_edges(n: usize, min_edges: usize) -> Vec<Graph> {
    assert!(n <= 6, "exhaustive graph enumeration is limited to n <= 6");
    let slots = edge_slots(n);
    let mut out = Vec::new();
    for mask in 0u32..(1 << slots.len()) {
        if (mask.count_ones() as usize) < min_edges {
            continue;
        }
        let edges: Vec<_> =
            (0..slots.len()).filter(|&i| mask >> i & 1 == 1).map(|i| slots[i]).collect();
        out.push(Graph::new(n, &edges).expect("slots are valid distinct edges"));
    }
    out
}

/// All n(n-1) ordered (pendant, attachment) pairs on [n], lexicographic.
pub fn pendant_attachment_pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    let mut pairs = Vec::with_capacity(n * (n - 1));
    for p in 1..=n {
        for u in 1..=n {
            if u != p {
                pairs.push((p, u));
            }
        }
    }
    pairs
}

/// Number of families in the product of per-color candidate lists.
pub fn family_space_size(candidates: &[Vec<Graph>]) -> usize {
    candidates.iter().map(Vec::len).product()
}

/// Decodes `index` as a mixed-radix numeral over the candidate lists: the
/// first color is the fastest-varying digit. Indices 0..family_space_size
/// enumerate every family exactly once.
pub fn family_at(candidates: &[Vec<Graph>], mut index: usize) -> GraphFamily {
    let graphs = candidates
        .iter()
        .map(|list| {
            let g = list[index % list.len()].clone();
            index /= list.len();
            g
        })
        .collect();
    GraphFamily::new(graphs).expect("candidate lists give n graphs on n vertices")
}

/// How a sampled family of pendant-clique members is steered.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExtremalStratum {
    /// Independent uniform (pendant, attachment) pairs per color.
    Uniform,
    /// Two pendant classes, smaller class of size >= 2, and the closing
    /// color's attachment kept off the first pendant so the construction
    /// must reroute through the first class boundary.
    TwoClassesWideFirst,
    /// Two pendant classes with a singleton first class and the closing
    /// color's attachment kept off the first pendant, forcing the reroute
    /// through the closing color's attachment.
    TwoClassesSingletonFirst,
    /// Every color shares one pendant vertex.
    OnePendant,
}

impl ExtremalStratum {
    /// Stratification used by sampled campaigns: three uniform draws, two
    /// of each steered two-class shape, and one shared-pendant draw per
    /// eight samples.
    pub fn for_index(index: u64) -> Self {
        match index % 8 {
            0..=2 => ExtremalStratum::Uniform,
            3 | 4 => ExtremalStratum::TwoClassesWideFirst,
            5 | 6 => ExtremalStratum::TwoClassesSingletonFirst,
            _ => ExtremalStratum::OnePendant,
        }
    }
}

fn random_attachment(rng: &mut impl Rng, n: usize, pendant: Vertex) -> Vertex {
    loop {
        let u = rng.gen_range(1..=n);
        if u != pendant {
            return u;
        }
    }
}

/// Random family whose every member is a clique with one pendant vertex,
/// steered by `stratum`.
pub fn sample_extremal_family(rng: &mut impl Rng, n: usize, stratum: ExtremalStratum) -> GraphFamily {
    assert!(n >= 4);
    let pairs = match stratum {
        ExtremalStratum::Uniform => (0..n)
            .map(|_| {
                let p = rng.gen_range(1..=n);
                (p, random_attachment(rng, n, p))
            })
            .collect(),
        ExtremalStratum::OnePendant => {
            let p = rng.gen_range(1..=n);
            (0..n).map(|_| (p, random_attachment(rng, n, p))).collect()
        }
        ExtremalStratum::TwoClassesWideFirst | ExtremalStratum::TwoClassesSingletonFirst => {
            let pa = rng.gen_range(1..=n);
            let pb = random_attachment(rng, n, pa);
            let first_size = match stratum {
                ExtremalStratum::TwoClassesWideFirst => rng.gen_range(2..=n / 2),
                _ => 1,
            };
            // Random colors for the first class; ties between equal class
            // sizes are broken by vertex label, so make pa the smaller
            // vertex in that case to keep the first class first.
            let (pa, pb) = if 2 * first_size == n && pb < pa { (pb, pa) } else { (pa, pb) };
            let mut colors: Vec<usize> = (1..=n).collect();
            for i in 0..first_size {
                let j = rng.gen_range(i..n);
                colors.swap(i, j);
            }
            let first: std::collections::BTreeSet<_> =
                colors[..first_size].iter().copied().collect();
            let closing_color = (1..=n).filter(|c| !first.contains(c)).max().expect("second class");
            (1..=n)
                .map(|c| {
                    let p = if first.contains(&c) { pa } else { pb };
                    let u = if c == closing_color {
                        loop {
                            let u = random_attachment(rng, n, p);
                            if u != pa {
                                break u;
                            }
                        }
                    } else {
                        random_attachment(rng, n, p)
                    };
                    (p, u)
                })
                .collect::<Vec<_>>()
        }
    };
    family_from_pairs(n, &pairs)
}

/// Builds the family whose color-i member is the clique with pendant and
/// attachment given by the i-th pair.
pub fn family_from_pairs(n: usize, pairs: &[(Vertex, Vertex)]) -> GraphFamily {
    assert_eq!(pairs.len(), n);
    let graphs = pairs
        .iter()
        .map(|&(p, u)| pendant_clique_labeled(n, p, u).expect("valid pendant and attachment"))
        .collect();
    GraphFamily::new(graphs).expect("n graphs on n vertices")
}
