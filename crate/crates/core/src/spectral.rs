//! Spectral radius machinery: floating-point power iteration with certified
//! tolerance, and exact integer fallbacks for decisions at integer
//! thresholds.
//!
//! Strict comparisons like "rho > n-2" are never decided from floats alone:
//! when the estimate lands within tolerance of the threshold, the answer is
//! recomputed exactly from the integer characteristic polynomial (root
//! counting via a Taylor shift and Descartes' rule, which is exact for
//! real-rooted polynomials).

use crate::graph::{complete, complete_plus_pendant, edgeless, is_isomorphic, union, Graph, Vertex};
use thiserror::Error;

/// Default certified tolerance for floating-point radius estimates.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Iteration budget per connected component.
pub const MAX_POWER_ITERATIONS: usize = 1_000_000;
/// Largest order accepted by the exact integer fallback.
pub const EXACT_MAX_ORDER: usize = 16;
/// Slack used by the edge-count lower bound check e >= rho(rho+1)/2.
pub const STANLEY_SLACK: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("spectral radius is undefined for the empty-order graph")]
    EmptyOrder,
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("power iteration failed to converge within {budget} iterations (residual {residual:.3e})")]
    NonConvergence { budget: usize, residual: f64 },
    #[error("exact eigenvalue counting supports order <= {EXACT_MAX_ORDER}, got {0}")]
    ExactTooLarge(usize),
    #[error("integer overflow in exact characteristic polynomial arithmetic")]
    ExactOverflow,
    #[error("order {got} outside the supported range {lo}..={hi} for {what}")]
    OrderOutOfRange { what: &'static str, got: usize, lo: usize, hi: usize },
}

/// A certified radius estimate: `value` is within `tolerance` of the true
/// radius, witnessed by a nonnegative approximate eigenvector supported on a
/// dominant component.
#[derive(Clone, Debug)]
pub struct SpectralEstimate {
    pub value: f64,
    pub tolerance: f64,
    pub vector: Vec<f64>,
}

/// Outcome of comparing a radius against an integer threshold.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ThresholdCmp {
    Above,
    Equal,
    Below,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

fn dense_matrix(g: &Graph, comp: &[Vertex], signless: bool) -> Vec<f64> {
    let m = comp.len();
    let mut mat = vec![0.0; m * m];
    for (i, &u) in comp.iter().enumerate() {
        if signless {
            mat[i * m + i] = g.degree(u) as f64;
        }
        for (j, &v) in comp.iter().enumerate() {
            if i != j && g.has_edge(u, v) {
                mat[i * m + j] += 1.0;
            }
        }
    }
    mat
}

/// Power iteration for a symmetric nonnegative matrix, shifted by +I so the
/// Perron eigenvalue strictly dominates in modulus. Returns the Rayleigh
/// quotient and the normalized iterate once the eigen-residual drops below
/// tol/2. The Rayleigh quotient of a symmetric matrix never exceeds the top
/// eigenvalue and the residual bounds the distance to the nearest eigenvalue,
/// so the true top eigenvalue lies in [value, value + tol/2].
fn power_iteration(mat: &[f64], m: usize, tol: f64) -> Result<(f64, Vec<f64>), SpectralError> {
    let mut v = vec![1.0 / (m as f64).sqrt(); m];
    let mut mv = vec![0.0; m];
    let mut last_residual = f64::INFINITY;
    for _ in 0..MAX_POWER_ITERATIONS {
        for i in 0..m {
            let row = &mat[i * m..(i + 1) * m];
            mv[i] = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        }
        let theta: f64 = v.iter().zip(mv.iter()).map(|(a, b)| a * b).sum();
        let residual: f64 = v
            .iter()
            .zip(mv.iter())
            .map(|(vi, mvi)| (mvi - theta * vi).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= 0.5 * tol {
            return Ok((theta, v));
        }
        last_residual = residual;
        let mut norm = 0.0;
        for i in 0..m {
            mv[i] += v[i];
            norm += mv[i] * mv[i];
        }
        let norm = norm.sqrt();
        for i in 0..m {
            v[i] = mv[i] / norm;
        }
    }
    Err(SpectralError::NonConvergence { budget: MAX_POWER_ITERATIONS, residual: last_residual })
}

fn radius_impl(g: &Graph, tol: f64, signless: bool) -> Result<SpectralEstimate, SpectralError> {
    if g.n() == 0 {
        return Err(SpectralError::EmptyOrder);
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectralError::BadTolerance(tol));
    }
    let mut best = f64::NEG_INFINITY;
    let mut vector = vec![0.0; g.n()];
    for comp in g.components() {
        let mat = dense_matrix(g, &comp, signless);
        let (theta, v) = power_iteration(&mat, comp.len(), tol)?;
        if theta > best {
            best = theta;
            vector.iter_mut().for_each(|x| *x = 0.0);
            for (i, &u) in comp.iter().enumerate() {
                vector[u - 1] = v[i];
            }
        }
    }
    Ok(SpectralEstimate { value: best.max(0.0), tolerance: tol, vector })
}

/// Adjacency spectral radius, certified to within `tol`.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralEstimate, SpectralError> {
    radius_impl(g, tol, false)
}

/// Largest eigenvalue of the signless Laplacian D + A, certified to within
/// `tol`.
pub fn signless_laplacian_radius(g: &Graph, tol: f64) -> Result<SpectralEstimate, SpectralError> {
    radius_impl(g, tol, true)
}

/// Rayleigh quotient of the adjacency matrix at a nonzero vector.
pub fn rayleigh_adjacency(g: &Graph, v: &[f64]) -> f64 {
    let n = g.n();
    assert_eq!(v.len(), n);
    let mut num = 0.0;
    for u in 1..=n {
        for w in g.neighbors(u) {
            num += v[u - 1] * v[w - 1];
        }
    }
    let den: f64 = v.iter().map(|x| x * x).sum();
    num / den
}

/// Rayleigh quotient of the signless Laplacian at a nonzero vector.
pub fn rayleigh_signless(g: &Graph, v: &[f64]) -> f64 {
    let n = g.n();
    assert_eq!(v.len(), n);
    let mut num = 0.0;
    for u in 1..=n {
        num += g.degree(u) as f64 * v[u - 1] * v[u - 1];
        for w in g.neighbors(u) {
            num += v[u - 1] * v[w - 1];
        }
    }
    let den: f64 = v.iter().map(|x| x * x).sum();
    num / den
}

/// Checks the classical edge bound e >= rho(rho+1)/2, up to a small slack.
pub fn stanley_check(g: &Graph) -> Result<bool, SpectralError> {
    if g.n() == 0 {
        return Ok(true);
    }
    let rho = spectral_radius(g, DEFAULT_TOL)?.value;
    Ok(g.edge_count() as f64 >= rho * (rho + 1.0) / 2.0 - STANLEY_SLACK)
}

fn int_matrix(g: &Graph, signless: bool) -> Vec<Vec<i128>> {
    let n = g.n();
    let mut m = vec![vec![0i128; n]; n];
    for u in 1..=n {
        if signless {
            m[u - 1][u - 1] = g.degree(u) as i128;
        }
        for v in g.neighbors(u) {
            m[u - 1][v - 1] += 1;
        }
    }
    m
}

fn checked_add(a: i128, b: i128) -> Result<i128, SpectralError> {
    a.checked_add(b).ok_or(SpectralError::ExactOverflow)
}

fn checked_mul(a: i128, b: i128) -> Result<i128, SpectralError> {
    a.checked_mul(b).ok_or(SpectralError::ExactOverflow)
}

/// Monic characteristic polynomial det(xI - M) of an integer matrix via the
/// Faddeev-LeVerrier recurrence; returns coefficients c[0..=n] with c[k] the
/// coefficient of x^k.
fn char_poly(m: &[Vec<i128>]) -> Result<Vec<i128>, SpectralError> {
    let n = m.len();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    // aux starts as the identity; each round: prod = M * aux,
    // c = -trace(prod)/k, aux = prod + c*I.
    let mut aux: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    for k in 1..=n {
        let mut prod = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i128;
                for l in 0..n {
                    acc = checked_add(acc, checked_mul(m[i][l], aux[l][j])?)?;
                }
                prod[i][j] = acc;
            }
        }
        let mut trace = 0i128;
        for i in 0..n {
            trace = checked_add(trace, prod[i][i])?;
        }
        debug_assert_eq!(trace % k as i128, 0);
        let c = -trace / k as i128;
        coeffs[n - k] = c;
        for i in 0..n {
            prod[i][i] = checked_add(prod[i][i], c)?;
        }
        aux = prod;
    }
    Ok(coeffs)
}

/// Coefficients of p(x + t) given the coefficients of p.
fn taylor_shift(coeffs: &[i128], t: i128) -> Result<Vec<i128>, SpectralError> {
    let mut a = coeffs.to_vec();
    let deg = a.len() - 1;
    for k in 0..deg {
        for j in (k..deg).rev() {
            a[j] = checked_add(a[j], checked_mul(t, a[j + 1])?)?;
        }
    }
    Ok(a)
}

fn sign_variations(coeffs: &[i128]) -> usize {
    let mut variations = 0;
    let mut last = 0i8;
    for &c in coeffs {
        let s = match c.cmp(&0) {
            std::cmp::Ordering::Less => -1i8,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        };
        if s != 0 {
            if last != 0 && s != last {
                variations += 1;
            }
            last = s;
        }
    }
    variations
}

struct ExactCount {
    above: usize,
    at: usize,
}

/// Exact count of eigenvalues strictly above t, and of eigenvalues equal to
/// t, for a symmetric integer matrix. Descartes' rule gives the exact number
/// of positive roots because the characteristic polynomial is real-rooted.
fn eigenvalues_versus(m: &[Vec<i128>], t: i128) -> Result<ExactCount, SpectralError> {
    if m.len() > EXACT_MAX_ORDER {
        return Err(SpectralError::ExactTooLarge(m.len()));
    }
    let p = char_poly(m)?;
    let q = taylor_shift(&p, t)?;
    let at = q.iter().take_while(|&&c| c == 0).count();
    Ok(ExactCount { above: sign_variations(&q), at })
}

fn compare_impl(g: &Graph, threshold: i64, signless: bool) -> Result<ThresholdCmp, SpectralError> {
    let est = radius_impl(g, DEFAULT_TOL, signless)?;
    let t = threshold as f64;
    if est.value - est.tolerance > t {
        return Ok(ThresholdCmp::Above);
    }
    if est.value + est.tolerance < t {
        return Ok(ThresholdCmp::Below);
    }
    let count = eigenvalues_versus(&int_matrix(g, signless), threshold as i128)?;
    Ok(if count.above > 0 {
        ThresholdCmp::Above
    } else if count.at > 0 {
        ThresholdCmp::Equal
    } else {
        ThresholdCmp::Below
    })
}

/// Decides rho(G) versus an integer threshold, exactly at the boundary.
pub fn compare_radius_to(g: &Graph, threshold: i64) -> Result<ThresholdCmp, SpectralError> {
    compare_impl(g, threshold, false)
}

/// Decides the signless Laplacian radius versus an integer threshold,
/// exactly at the boundary.
pub fn compare_signless_radius_to(g: &Graph, threshold: i64) -> Result<ThresholdCmp, SpectralError> {
    compare_impl(g, threshold, true)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("vertex {vertex} is covered {times} times by the parts")]
    BadCover { vertex: Vertex, times: usize },
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("vertex {vertex} has {got} neighbours in part {part}, expected {expected}")]
    NotEquitable { vertex: Vertex, part: usize, got: usize, expected: usize },
}

/// Quotient matrix of an equitable partition: entry (i, j) is the number of
/// neighbours every vertex of part i has in part j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub entries: Vec<Vec<i64>>,
    pub part_sizes: Vec<usize>,
}

impl QuotientMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Largest eigenvalue, computed by power iteration on the symmetrized
    /// form D^(1/2) Q D^(-1/2) with D the diagonal of part sizes.
    pub fn largest_eigenvalue(&self, tol: f64) -> Result<f64, SpectralError> {
        let m = self.dim();
        if m == 0 {
            return Err(SpectralError::EmptyOrder);
        }
        let mut mat = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                let scale = (self.part_sizes[i] as f64 / self.part_sizes[j] as f64).sqrt();
                mat[i * m + j] = self.entries[i][j] as f64 * scale;
            }
        }
        let (theta, _) = power_iteration(&mat, m, tol)?;
        Ok(theta)
    }

    /// Sign of det(tI - Q) at an integer point.
    pub fn char_value_sign(&self, t: i64) -> Sign {
        let m = self.dim();
        let mat: Vec<Vec<i128>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let q = self.entries[i][j] as i128;
                        if i == j {
                            t as i128 - q
                        } else {
                            -q
                        }
                    })
                    .collect()
            })
            .collect();
        match det_i128(&mat).cmp(&0) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }
}

pub(crate) fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut acc = 0i128;
            for (j, &head) in m[0].iter().enumerate() {
                if head == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let term = head * det_i128(&minor);
                acc += if j % 2 == 0 { term } else { -term };
            }
            acc
        }
    }
}

/// Checks that `parts` is an equitable partition of G's vertex set and
/// returns its quotient matrix.
pub fn verify_equitable_partition(
    g: &Graph,
    parts: &[Vec<Vertex>],
) -> Result<QuotientMatrix, PartitionError> {
    let n = g.n();
    let mut cover = vec![0usize; n];
    for (pi, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(PartitionError::EmptyPart(pi + 1));
        }
        for &v in part {
            if v == 0 || v > n {
                return Err(PartitionError::BadCover { vertex: v, times: 0 });
            }
            cover[v - 1] += 1;
        }
    }
    for v in 1..=n {
        if cover[v - 1] != 1 {
            return Err(PartitionError::BadCover { vertex: v, times: cover[v - 1] });
        }
    }
    let count_into = |v: Vertex, part: &[Vertex]| part.iter().filter(|&&u| u != v && g.has_edge(v, u)).count();
    let mut entries = Vec::with_capacity(parts.len());
    for part in parts {
        let rep = part[0];
        let row: Vec<i64> = parts.iter().map(|p| count_into(rep, p) as i64).collect();
        for &v in &part[1..] {
            for (pj, p) in parts.iter().enumerate() {
                let got = count_into(v, p);
                if got as i64 != row[pj] {
                    return Err(PartitionError::NotEquitable {
                        vertex: v,
                        part: pj + 1,
                        got,
                        expected: row[pj] as usize,
                    });
                }
            }
        }
        entries.push(row);
    }
    Ok(QuotientMatrix { entries, part_sizes: parts.iter().map(|p| p.len()).collect() })
}

/// Quotient matrix of the complete-plus-pendant graph on n vertices with one
/// clique edge (not meeting the dominating vertex) removed, under the 4-part
/// equitable partition: pendant, dominating vertex, the two endpoints of the
/// removed edge, remaining clique vertices. Requires n >= 5.
pub fn pendant_clique_quotient(n: usize) -> Result<QuotientMatrix, SpectralError> {
    if n < 5 {
        return Err(SpectralError::OrderOutOfRange {
            what: "the deleted-edge quotient",
            got: n,
            lo: 5,
            hi: usize::MAX,
        });
    }
    let m = n as i64;
    Ok(QuotientMatrix {
        entries: vec![
            vec![0, 1, 0, 0],
            vec![1, 0, 2, m - 4],
            vec![0, 1, 0, m - 4],
            vec![0, 1, 2, m - 5],
        ],
        part_sizes: vec![1, 1, 2, n - 4],
    })
}

/// Signs of det(tI - Q) for the deleted-edge quotient at t = n-2 and
/// t = n-3. A (Positive, Negative) pair certifies that the largest root lies
/// strictly between n-3 and n-2.
pub fn pendant_clique_quotient_signs(n: usize) -> Result<(Sign, Sign), SpectralError> {
    let q = pendant_clique_quotient(n)?;
    Ok((q.char_value_sign(n as i64 - 2), q.char_value_sign(n as i64 - 3)))
}

/// One audited subgraph comparison.
#[derive(Clone, Debug)]
pub struct AuditCase {
    pub label: String,
    pub cmp: ThresholdCmp,
    /// For Equal cases only: whether the subgraph is isomorphic to the known
    /// extremal answer (complete graph on n-1 vertices, possibly with an
    /// isolated vertex).
    pub matches_known_extremal: Option<bool>,
}

/// Report of the proper-subgraph radius audit for the complete-plus-pendant
/// graph: every audited subgraph must satisfy rho <= n-2, with equality only
/// at K_{n-1} or K_{n-1} plus an isolated vertex.
#[derive(Clone, Debug)]
pub struct SubgraphAudit {
    pub n: usize,
    pub cases: Vec<AuditCase>,
}

impl SubgraphAudit {
    pub fn violations(&self) -> Vec<&AuditCase> {
        self.cases
            .iter()
            .filter(|c| c.cmp == ThresholdCmp::Above || (c.cmp == ThresholdCmp::Equal && c.matches_known_extremal != Some(true)))
            .collect()
    }

    pub fn equality_cases(&self) -> Vec<&AuditCase> {
        self.cases.iter().filter(|c| c.cmp == ThresholdCmp::Equal).collect()
    }
}

fn audit_one(h: &Graph, n: usize, label: String, cases: &mut Vec<AuditCase>) -> Result<(), SpectralError> {
    let cmp = compare_radius_to(h, n as i64 - 2)?;
    let matches = if cmp == ThresholdCmp::Equal {
        let expected = if h.n() == n {
            union(&complete(n - 1).unwrap(), &edgeless(1).unwrap()).unwrap()
        } else {
            complete(n - 1).unwrap()
        };
        Some(is_isomorphic(h, &expected).unwrap_or(false))
    } else {
        None
    };
    cases.push(AuditCase { label, cmp, matches_known_extremal: matches });
    Ok(())
}

fn induced_delete(g: &Graph, v: Vertex) -> Graph {
    let n = g.n();
    let keep: Vec<Vertex> = (1..=n).filter(|&u| u != v).collect();
    let mut edges = Vec::new();
    for (i, &a) in keep.iter().enumerate() {
        for &b in keep.iter().skip(i + 1) {
            if g.has_edge(a, b) {
                edges.push((i + 1, keep.iter().position(|&x| x == b).unwrap() + 1));
            }
        }
    }
    Graph::new(n - 1, &edges).unwrap()
}

/// Audits proper subgraphs of the complete-plus-pendant graph against the
/// threshold n-2: all single-edge and double-edge deletions, all
/// single-vertex deletions, and 200 seeded pseudorandom edge subsets.
/// Supported for 4 <= n <= 8.
pub fn subgraph_radius_audit(n: usize) -> Result<SubgraphAudit, SpectralError> {
    if !(4..=8).contains(&n) {
        return Err(SpectralError::OrderOutOfRange { what: "the subgraph audit", got: n, lo: 4, hi: 8 });
    }
    let g = complete_plus_pendant(n).unwrap();
    let edges = g.edges();
    let mut cases = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        let h = g.without_edge(e).unwrap();
        audit_one(&h, n, format!("minus {:?}", e), &mut cases)?;
        for &f in edges.iter().skip(i + 1) {
            let h2 = h.without_edge(f).unwrap();
            audit_one(&h2, n, format!("minus {:?} and {:?}", e, f), &mut cases)?;
        }
    }
    for v in 1..=n {
        audit_one(&induced_delete(&g, v), n, format!("minus vertex {}", v), &mut cases)?;
    }
    let mut state = 0x9e3779b97f4a7c15u64 ^ (n as u64).wrapping_mul(0xbf58476d1ce4e5b9);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for sample in 0..200 {
        let mut h = g.clone();
        let mut removed = Vec::new();
        for &e in &edges {
            if next() & 1 == 0 {
                h = h.without_edge(e).unwrap();
                removed.push(e);
            }
        }
        if removed.is_empty() {
            continue;
        }
        audit_one(&h, n, format!("random subset #{} ({} edges removed)", sample, removed.len()), &mut cases)?;
    }
    Ok(SubgraphAudit { n, cases })
}
