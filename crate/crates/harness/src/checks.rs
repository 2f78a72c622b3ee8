//! Per-theorem hypothesis checks with exact threshold decisions.
//!
//! Three single-graph conditions (edge count strict, edge count weak with
//! exceptional shapes, adjacency spectral radius) and three family
//! conditions (edge count, adjacency radius, signless Laplacian radius) are
//! evaluated graph by graph. Spectral comparisons use the exact integer
//! tie-breaking of the core crate, so a measurement equal to its threshold
//! is reported as a borderline rather than guessed from floating point.

use rhc_core::spectral::{
    compare_radius_to, compare_signless_radius_to, signless_laplacian_radius, spectral_radius,
    SpectralError, ThresholdCmp, DEFAULT_TOL,
};
use rhc_core::{is_isomorphic, k2_join_3k1, Graph, GraphFamily};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    OreSize,
    Bondy,
    FiedlerNikiforov,
    RainbowSize,
    RainbowSpectral,
    RainbowSignless,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::OreSize,
        TheoremId::Bondy,
        TheoremId::FiedlerNikiforov,
        TheoremId::RainbowSize,
        TheoremId::RainbowSpectral,
        TheoremId::RainbowSignless,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::OreSize => "ore-size",
            TheoremId::Bondy => "bondy",
            TheoremId::FiedlerNikiforov => "fiedler-nikiforov",
            TheoremId::RainbowSize => "rainbow-size",
            TheoremId::RainbowSpectral => "rainbow-spectral",
            TheoremId::RainbowSignless => "rainbow-signless",
        }
    }

    /// Family conditions take n graphs; the others take a single graph.
    pub fn is_family(&self) -> bool {
        matches!(
            self,
            TheoremId::RainbowSize | TheoremId::RainbowSpectral | TheoremId::RainbowSignless
        )
    }

    /// Smallest order for which the condition is stated.
    pub fn min_order(&self) -> usize {
        match self {
            TheoremId::OreSize | TheoremId::Bondy | TheoremId::FiedlerNikiforov => 3,
            TheoremId::RainbowSize | TheoremId::RainbowSpectral => 4,
            TheoremId::RainbowSignless => 6,
        }
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TheoremId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown theorem id '{s}'"))
    }
}

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("{theorem} is stated for order >= {min}, got {n}")]
    TooSmallOrder { theorem: TheoremId, min: usize, n: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// One graph's measurement against its threshold.
#[derive(Clone, Debug, Serialize)]
pub struct GraphCheck {
    pub label: String,
    /// "e", "rho", or "rho_S".
    pub quantity: &'static str,
    pub value: f64,
    pub threshold: f64,
    /// true means the condition is strict (>), false means weak (>=).
    pub strict: bool,
    pub pass: bool,
    /// The measurement ties the threshold exactly (decided by exact
    /// arithmetic, reported rather than guessed).
    pub borderline: bool,
    /// Name of the exceptional shape this graph matches, if any.
    pub exceptional: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub theorem: TheoremId,
    pub n: usize,
    pub checks: Vec<GraphCheck>,
    /// Conjunction of the per-graph passes.
    pub verdict: bool,
    /// Set when the instance matches the theorem's "unless" clause.
    pub unless: Option<String>,
}

/// Structural test for the dominated clique with one pendant vertex: one
/// vertex of degree 1 whose removal leaves a complete graph.
pub fn is_pendant_clique_shape(g: &Graph) -> bool {
    let n = g.n();
    if n < 4 || g.edge_count() != (n - 1) * (n - 2) / 2 + 1 {
        return false;
    }
    let pendants: Vec<_> = (1..=n).filter(|&v| g.degree(v) == 1).collect();
    if pendants.len() != 1 {
        return false;
    }
    let p = pendants[0];
    (1..=n).filter(|&v| v != p).all(|v| g.degree(v) >= n - 2)
}

/// Isomorphism test against the five-vertex exceptional graph of the weak
/// edge-count condition.
pub fn is_exceptional_k2_join(g: &Graph) -> bool {
    g.n() == 5 && is_isomorphic(g, &k2_join_3k1()).unwrap_or(false)
}

fn size_check(label: String, g: &Graph, threshold: usize, strict: bool) -> GraphCheck {
    let e = g.edge_count();
    let pass = if strict { e > threshold } else { e >= threshold };
    GraphCheck {
        label,
        quantity: "e",
        value: e as f64,
        threshold: threshold as f64,
        strict,
        pass,
        borderline: e == threshold,
        exceptional: None,
    }
}

fn spectral_check(
    label: String,
    g: &Graph,
    threshold: i64,
    signless: bool,
) -> Result<GraphCheck, SpectralError> {
    let (cmp, value) = if signless {
        (compare_signless_radius_to(g, threshold)?, signless_laplacian_radius(g, DEFAULT_TOL)?.value)
    } else {
        (compare_radius_to(g, threshold)?, spectral_radius(g, DEFAULT_TOL)?.value)
    };
    Ok(GraphCheck {
        label,
        quantity: if signless { "rho_S" } else { "rho" },
        value,
        threshold: threshold as f64,
        strict: true,
        pass: cmp == ThresholdCmp::Above,
        borderline: cmp == ThresholdCmp::Equal,
        exceptional: None,
    })
}

fn exceptional_name(g: &Graph, allow_k2_join: bool) -> Option<String> {
    if is_pendant_clique_shape(g) {
        Some("dominated clique with one pendant vertex".to_string())
    } else if allow_k2_join && is_exceptional_k2_join(g) {
        Some("two dominating vertices over three isolated ones".to_string())
    } else {
        None
    }
}

/// Evaluates a single-graph condition.
pub fn check_graph_hypothesis(g: &Graph, theorem: TheoremId) -> Result<HypothesisReport, CheckError> {
    assert!(!theorem.is_family(), "{theorem} takes a family");
    let n = g.n();
    if n < theorem.min_order() {
        return Err(CheckError::TooSmallOrder { theorem, min: theorem.min_order(), n });
    }
    let threshold = (n - 1) * (n - 2) / 2 + 1;
    let mut check = match theorem {
        TheoremId::OreSize => size_check("G".into(), g, threshold, true),
        TheoremId::Bondy => size_check("G".into(), g, threshold, false),
        TheoremId::FiedlerNikiforov => spectral_check("G".into(), g, n as i64 - 2, false)?,
        _ => unreachable!(),
    };
    let unless = match theorem {
        TheoremId::Bondy => {
            check.exceptional = exceptional_name(g, true);
            check.exceptional.clone()
        }
        TheoremId::FiedlerNikiforov => {
            check.exceptional = exceptional_name(g, false);
            check.exceptional.clone()
        }
        _ => None,
    };
    let verdict = check.pass;
    Ok(HypothesisReport { theorem, n, checks: vec![check], verdict, unless })
}

/// Evaluates a family condition, one check per colour.
pub fn check_family_hypothesis(
    family: &GraphFamily,
    theorem: TheoremId,
) -> Result<HypothesisReport, CheckError> {
    assert!(theorem.is_family(), "{theorem} takes a single graph");
    let n = family.n();
    if n < theorem.min_order() {
        return Err(CheckError::TooSmallOrder { theorem, min: theorem.min_order(), n });
    }
    let threshold = (n - 1) * (n - 2) / 2 + 1;
    let mut checks = Vec::with_capacity(n);
    for i in 1..=n {
        let g = family.graph(i);
        let label = format!("G_{i}");
        let check = match theorem {
            TheoremId::RainbowSize => size_check(label, g, threshold, true),
            TheoremId::RainbowSpectral => spectral_check(label, g, n as i64 - 2, false)?,
            TheoremId::RainbowSignless => spectral_check(label, g, 2 * n as i64 - 4, true)?,
            _ => unreachable!(),
        };
        checks.push(check);
    }
    let verdict = checks.iter().all(|c| c.pass);
    let unless = match theorem {
        TheoremId::RainbowSpectral | TheoremId::RainbowSignless => {
            if family.all_equal() && is_pendant_clique_shape(family.graph(1)) {
                Some("all members equal and shaped as a dominated clique with one pendant vertex".to_string())
            } else {
                None
            }
        }
        _ => None,
    };
    Ok(HypothesisReport { theorem, n, checks, verdict, unless })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rhc_core::{complete, complete_plus_pendant, cycle_graph, star, GraphFamily};

    #[test]
    fn strict_size_condition() {
        let g = complete(6).unwrap();
        let r = check_graph_hypothesis(&g, TheoremId::OreSize).unwrap();
        assert!(r.verdict);
        assert_eq!(r.checks[0].value, 15.0);
        assert_eq!(r.checks[0].threshold, 11.0);

        let g = complete_plus_pendant(6).unwrap();
        let r = check_graph_hypothesis(&g, TheoremId::OreSize).unwrap();
        assert!(!r.verdict);
        assert!(r.checks[0].borderline);
    }

    #[test]
    fn weak_size_condition_flags_exceptions() {
        let g = k2_join_3k1();
        let r = check_graph_hypothesis(&g, TheoremId::Bondy).unwrap();
        assert!(r.verdict, "e = 7 = threshold passes the weak comparison");
        assert!(r.checks[0].borderline);
        assert_eq!(
            r.unless.as_deref(),
            Some("two dominating vertices over three isolated ones")
        );

        let g = complete_plus_pendant(7).unwrap();
        let r = check_graph_hypothesis(&g, TheoremId::Bondy).unwrap();
        assert!(r.verdict);
        assert_eq!(r.unless.as_deref(), Some("dominated clique with one pendant vertex"));

        let g = complete(5).unwrap();
        let r = check_graph_hypothesis(&g, TheoremId::Bondy).unwrap();
        assert!(r.verdict);
        assert!(r.unless.is_none());
    }

    #[test]
    fn spectral_condition_exact_at_threshold() {
        let g = k2_join_3k1();
        let r = check_graph_hypothesis(&g, TheoremId::FiedlerNikiforov).unwrap();
        assert!(!r.verdict, "radius exactly 3 fails the strict comparison");
        assert!(r.checks[0].borderline);

        let g = complete_plus_pendant(8).unwrap();
        let r = check_graph_hypothesis(&g, TheoremId::FiedlerNikiforov).unwrap();
        assert!(r.verdict);
        assert_eq!(r.unless.as_deref(), Some("dominated clique with one pendant vertex"));
    }

    #[test]
    fn family_size_condition() {
        let fam = GraphFamily::uniform(&complete(6).unwrap()).unwrap();
        assert!(check_family_hypothesis(&fam, TheoremId::RainbowSize).unwrap().verdict);

        let mut graphs = vec![complete(6).unwrap(); 6];
        graphs[3] = complete_plus_pendant(6).unwrap();
        let fam = GraphFamily::new(graphs).unwrap();
        let r = check_family_hypothesis(&fam, TheoremId::RainbowSize).unwrap();
        assert!(!r.verdict);
        assert!(r.checks[3].borderline && !r.checks[3].pass);
        assert!(r.checks.iter().filter(|c| !c.pass).count() == 1);
    }

    #[test]
    fn family_spectral_conditions_and_unless() {
        let fam = GraphFamily::uniform(&complete_plus_pendant(6).unwrap()).unwrap();
        let r = check_family_hypothesis(&fam, TheoremId::RainbowSpectral).unwrap();
        assert!(r.verdict, "the exceptional family satisfies the hypothesis");
        assert!(r.unless.is_some());

        let r = check_family_hypothesis(&fam, TheoremId::RainbowSignless).unwrap();
        assert!(r.verdict);
        assert!(r.unless.is_some());

        let fam = GraphFamily::uniform(&cycle_graph(6).unwrap()).unwrap();
        let r = check_family_hypothesis(&fam, TheoremId::RainbowSpectral).unwrap();
        assert!(!r.verdict);
        assert!(r.unless.is_none());
    }

    #[test]
    fn order_guards() {
        let fam = GraphFamily::uniform(&complete(5).unwrap()).unwrap();
        assert!(matches!(
            check_family_hypothesis(&fam, TheoremId::RainbowSignless).unwrap_err(),
            CheckError::TooSmallOrder { min: 6, n: 5, .. }
        ));
    }

    #[test]
    fn shape_detectors() {
        for n in 4..=20 {
            assert!(is_pendant_clique_shape(&complete_plus_pendant(n).unwrap()));
            assert!(!is_pendant_clique_shape(&complete(n).unwrap()));
        }
        assert!(!is_pendant_clique_shape(&star(5).unwrap()));
        assert!(is_exceptional_k2_join(&k2_join_3k1()));
        assert!(!is_exceptional_k2_join(&complete(5).unwrap()));
    }

    #[test]
    fn ids_round_trip() {
        for t in TheoremId::ALL {
            let s = t.as_str();
            assert_eq!(s.parse::<TheoremId>().unwrap(), t);
        }
        assert!("nope".parse::<TheoremId>().is_err());
    }
}
