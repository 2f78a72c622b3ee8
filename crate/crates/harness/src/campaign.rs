//! Seeded verification campaigns and the open-question counterexample
//! search.
//!
//! A campaign enumerates or samples families satisfying one hypothesis and
//! asserts the matching conclusion on every one of them, through the exact
//! solver and, where a constructive route exists, through that route as
//! well. Any family that defeats the conclusion is recorded as a violation:
//! the family is written out as a certificate, reloaded, and re-verified
//! with a ten-fold solver budget before the report is finalized. A clean
//! report has no violations and no solver/oracle disagreements.
//!
//! Reports are plain data and serialize to JSON; apart from the wall-time
//! field they are byte-identical across runs with the same arguments.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use rhc_core::spectral::{compare_radius_to, compare_signless_radius_to, ThresholdCmp};
use rhc_core::{
    brute_force_oracle, complete_plus_pendant, construct_cycle_extremal_traced,
    construct_cycle_size_condition, find_rainbow_hamiltonian_cycle, k2_join_3k1,
    ConstructionError, ExtremalBranch, Graph, GraphFamily, SearchOutcome,
};

use crate::checks::{
    check_family_hypothesis, is_exceptional_k2_join, is_pendant_clique_shape, CheckError,
    TheoremId,
};
use crate::io::{self, FamilyDoc, FileFormat, IoError};
use crate::sampling::{
    family_at, family_space_size, graphs_with_min_edges, min_edges_for_radius_above,
    min_edges_for_signless_above, pendant_attachment_pairs, rng_for, sample_extremal_family,
    sample_family_accepted, sample_family_with_edges_in, ExtremalStratum,
};

/// Which family statement a campaign verifies.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CampaignKind {
    /// Strict edge-count hypothesis; solver and size-route construction.
    RainbowSize,
    /// Adjacency radius above n - 2; solver, with the one exceptional
    /// all-equal family confirmed cycle-free.
    RainbowSpectral,
    /// Signless Laplacian radius above 2n - 4; as above, from order six.
    RainbowSignless,
    /// Families of pendant-clique members; the extremal construction must
    /// produce a certificate except for all-equal families.
    Extremal,
}

impl CampaignKind {
    pub const ALL: [CampaignKind; 4] = [
        CampaignKind::RainbowSize,
        CampaignKind::RainbowSpectral,
        CampaignKind::RainbowSignless,
        CampaignKind::Extremal,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CampaignKind::RainbowSize => "rainbow-size",
            CampaignKind::RainbowSpectral => "rainbow-spectral",
            CampaignKind::RainbowSignless => "rainbow-signless",
            CampaignKind::Extremal => "extremal",
        }
    }

    pub fn min_order(&self) -> usize {
        match self {
            CampaignKind::RainbowSignless => 6,
            _ => 4,
        }
    }
}

impl std::fmt::Display for CampaignKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CampaignKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CampaignKind::ALL
            .iter()
            .copied()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown campaign '{s}'"))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sampled => "sampled",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "sampled" => Ok(Mode::Sampled),
            other => Err(format!("unknown mode '{other}', expected exhaustive or sampled")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("exhaustive {campaign} verification is only feasible at n = 4, got n = {n}")]
    UnsupportedExhaustive { campaign: CampaignKind, n: usize },
    #[error("{campaign} requires n >= {min}, got {n}")]
    TooSmallOrder { campaign: String, min: usize, n: usize },
}

/// How many times each assembly of the extremal construction fired.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BranchCounts {
    pub single_pendant: u64,
    pub direct_close: u64,
    pub block_switch: u64,
    pub attachment_switch: u64,
}

/// A family that defeated its campaign's conclusion, kept with the full
/// re-verification story.
#[derive(Clone, Debug, Serialize)]
pub struct ViolationRecord {
    pub family: FamilyDoc,
    pub detail: String,
    pub certificate_path: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub n: usize,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub samples_requested: u64,
    /// Families actually put to the conclusion, probes included.
    pub families_tested: u64,
    /// Draws discarded because the hypothesis did not hold.
    pub hypothesis_rejections: u64,
    pub conclusion_holds: u64,
    /// Known exceptional families confirmed cycle-free.
    pub exceptional_confirmed: u64,
    /// Order-five boundary families (cycle-free but outside the question).
    pub known_boundary_cases: u64,
    pub violations: Vec<ViolationRecord>,
    pub budget_exhaustions: u64,
    pub oracle_cross_checks: u64,
    pub oracle_disagreements: u64,
    pub branch_counts: Option<BranchCounts>,
    pub wall_time_ms: u128,
}

impl CampaignReport {
    /// No violations and no solver/oracle disagreements.
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.oracle_disagreements == 0
    }

    /// Stable multi-line text rendering for terminal output.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "campaign {}  n={}  mode={}{}  samples={}",
            self.campaign,
            self.n,
            self.mode,
            self.seed.map(|v| format!("  seed={v}")).unwrap_or_default(),
            self.samples_requested,
        );
        let _ = writeln!(
            s,
            "families tested: {}  hypothesis rejections: {}  conclusion holds: {}",
            self.families_tested, self.hypothesis_rejections, self.conclusion_holds,
        );
        let _ = writeln!(
            s,
            "exceptional confirmed: {}  boundary cases: {}  budget exhaustions: {}",
            self.exceptional_confirmed, self.known_boundary_cases, self.budget_exhaustions,
        );
        let _ = writeln!(
            s,
            "oracle cross-checks: {}  disagreements: {}",
            self.oracle_cross_checks, self.oracle_disagreements,
        );
        if let Some(b) = &self.branch_counts {
            let _ = writeln!(
                s,
                "branches: single-pendant {}  direct-close {}  block-switch {}  attachment-switch {}",
                b.single_pendant, b.direct_close, b.block_switch, b.attachment_switch,
            );
        }
        let _ = writeln!(s, "violations: {}", self.violations.len());
        for v in &self.violations {
            let _ = writeln!(s, "  - {}", v.detail);
            if let Some(p) = &v.certificate_path {
                let _ = writeln!(s, "    certificate: {p}");
            }
        }
        let _ = writeln!(s, "wall time: {} ms", self.wall_time_ms);
        s
    }
}

/// What must be re-checked on a recorded family when a violation is
/// re-verified.
#[derive(Copy, Clone, Debug)]
enum Hypothesis {
    Theorem(TheoremId),
    PendantShapes,
    WeakSize,
}

impl Hypothesis {
    fn holds(self, fam: &GraphFamily) -> Result<bool, CheckError> {
        match self {
            Hypothesis::Theorem(t) => Ok(check_family_hypothesis(fam, t)?.verdict),
            Hypothesis::PendantShapes => {
                Ok((1..=fam.n()).all(|i| is_pendant_clique_shape(fam.graph(i))))
            }
            Hypothesis::WeakSize => {
                let n = fam.n();
                let threshold = (n - 1) * (n - 2) / 2 + 1;
                Ok((1..=n).all(|i| fam.graph(i).edge_count() >= threshold))
            }
        }
    }
}

/// Salt so the oracle subsample coin is independent of the family draw.
const ORACLE_SALT: u64 = 0x6F72_6163_6C65;

struct Run<'a> {
    report: CampaignReport,
    hypothesis: Hypothesis,
    budget: u64,
    seed: u64,
    cert_dir: Option<&'a Path>,
    /// Cross-check every family instead of a 1% subsample.
    oracle_all: bool,
}

impl<'a> Run<'a> {
    #[allow(clippy::too_many_arguments)]
    fn new(
        campaign: &str,
        n: usize,
        mode: Mode,
        seed: u64,
        samples_requested: u64,
        budget: u64,
        cert_dir: Option<&'a Path>,
        hypothesis: Hypothesis,
        track_branches: bool,
    ) -> Self {
        Run {
            report: CampaignReport {
                campaign: campaign.to_string(),
                n,
                mode,
                seed: match mode {
                    Mode::Exhaustive => None,
                    Mode::Sampled => Some(seed),
                },
                samples_requested,
                families_tested: 0,
                hypothesis_rejections: 0,
                conclusion_holds: 0,
                exceptional_confirmed: 0,
                known_boundary_cases: 0,
                violations: Vec::new(),
                budget_exhaustions: 0,
                oracle_cross_checks: 0,
                oracle_disagreements: 0,
                branch_counts: track_branches.then(BranchCounts::default),
                wall_time_ms: 0,
            },
            hypothesis,
            budget,
            seed,
            cert_dir,
            oracle_all: false,
        }
    }

    fn solve(&mut self, fam: &GraphFamily) -> SearchOutcome {
        let outcome = find_rainbow_hamiltonian_cycle(fam, self.budget)
            .expect("campaign families respect the solver's order floor");
        if matches!(outcome, SearchOutcome::BudgetExceeded { .. }) {
            self.report.budget_exhaustions += 1;
        }
        outcome
    }

    /// Cross-validates the solver's answer against the brute-force oracle
    /// on a deterministic 1% subsample (or on every family when
    /// `oracle_all` is set). Only orders the oracle can afford.
    fn oracle_check(&mut self, index: u64, fam: &GraphFamily, found: bool) {
        if fam.n() > 7 {
            return;
        }
        if !self.oracle_all {
            let mut rng = rng_for(self.seed ^ ORACLE_SALT, index);
            if rng.gen_range(0..100u32) != 0 {
                return;
            }
        }
        self.report.oracle_cross_checks += 1;
        let oracle = brute_force_oracle(fam).expect("order checked above").is_some();
        if oracle != found {
            self.report.oracle_disagreements += 1;
        }
    }

    /// Records a family that defeated the conclusion: writes it out when a
    /// certificate directory is configured, reloads it, re-checks the
    /// hypothesis, and searches again with ten times the budget.
    fn violation(
        &mut self,
        index: u64,
        fam: &GraphFamily,
        mut detail: String,
    ) -> Result<(), CampaignError> {
        let mut certificate_path = None;
        let reloaded = if let Some(dir) = self.cert_dir {
            let name = format!(
                "violation-{}-n{}-{index:06}.txt",
                self.report.campaign, self.report.n
            );
            let path = dir.join(name);
            io::write_family(fam, &path, FileFormat::Text)?;
            let back = io::read_family(&path)?;
            certificate_path = Some(path.display().to_string());
            back
        } else {
            fam.clone()
        };
        let hypothesis_holds = self.hypothesis.holds(&reloaded)?;
        let extended = self.budget.saturating_mul(10);
        let recheck = find_rainbow_hamiltonian_cycle(&reloaded, extended)
            .expect("recorded families respect the solver's order floor");
        let _ = write!(
            detail,
            "; re-verified from {}: hypothesis {}, ten-fold-budget search: {}",
            certificate_path.as_deref().unwrap_or("memory"),
            if hypothesis_holds { "holds" } else { "DOES NOT HOLD" },
            match recheck {
                SearchOutcome::Found(_) => "FOUND A CYCLE (original failure was spurious)",
                SearchOutcome::NotFound => "no cycle",
                SearchOutcome::BudgetExceeded { .. } => "still budget-bound",
            },
        );
        self.report.violations.push(ViolationRecord {
            family: FamilyDoc::from_family(&reloaded),
            detail,
            certificate_path,
        });
        Ok(())
    }

    fn count_branch(&mut self, branch: ExtremalBranch) {
        let counts = self.report.branch_counts.get_or_insert_with(BranchCounts::default);
        match branch {
            ExtremalBranch::SinglePendant => counts.single_pendant += 1,
            ExtremalBranch::DirectClose => counts.direct_close += 1,
            ExtremalBranch::BlockSwitch => counts.block_switch += 1,
            ExtremalBranch::AttachmentSwitch => counts.attachment_switch += 1,
        }
    }

    /// Strict-size family: both the solver and the size-route construction
    /// must deliver.
    fn size_case(&mut self, index: u64, fam: &GraphFamily) -> Result<(), CampaignError> {
        self.report.families_tested += 1;
        if !check_family_hypothesis(fam, TheoremId::RainbowSize)?.verdict {
            self.report.hypothesis_rejections += 1;
            return Ok(());
        }
        let found = match self.solve(fam) {
            SearchOutcome::Found(_) => true,
            SearchOutcome::NotFound => false,
            SearchOutcome::BudgetExceeded { .. } => return Ok(()),
        };
        match (found, construct_cycle_size_condition(fam)) {
            (true, Ok(cycle)) => {
                if let Err(e) = cycle.validate_against(fam) {
                    self.violation(index, fam, format!("constructed certificate invalid: {e}"))?;
                } else {
                    self.report.conclusion_holds += 1;
                }
            }
            (true, Err(e)) => self.violation(
                index,
                fam,
                format!("solver found a cycle but the constructive route failed: {e}"),
            )?,
            (false, Ok(_)) => self.violation(
                index,
                fam,
                "constructive route delivered a validated cycle the solver missed".to_string(),
            )?,
            (false, Err(e)) => self.violation(
                index,
                fam,
                format!("no rainbow Hamiltonian cycle; constructive route failed too: {e}"),
            )?,
        }
        self.oracle_check(index, fam, found);
        Ok(())
    }

    /// Spectral-hypothesis family: solver decides; the only admissible
    /// failure is the all-equal exceptional shape.
    fn spectral_case(
        &mut self,
        index: u64,
        fam: &GraphFamily,
        theorem: TheoremId,
    ) -> Result<(), CampaignError> {
        self.report.families_tested += 1;
        let rep = check_family_hypothesis(fam, theorem)?;
        if !rep.verdict {
            self.report.hypothesis_rejections += 1;
            return Ok(());
        }
        let found = match self.solve(fam) {
            SearchOutcome::Found(_) => true,
            SearchOutcome::NotFound => false,
            SearchOutcome::BudgetExceeded { .. } => return Ok(()),
        };
        if found {
            self.report.conclusion_holds += 1;
        } else if rep.unless.is_some() {
            self.report.exceptional_confirmed += 1;
        } else {
            self.violation(
                index,
                fam,
                "hypothesis-satisfying family admits no rainbow Hamiltonian cycle".to_string(),
            )?;
        }
        self.oracle_check(index, fam, found);
        Ok(())
    }

    /// Pendant-clique family: the extremal construction must deliver
    /// except on all-equal families, which must be cycle-free.
    fn extremal_case(&mut self, index: u64, fam: &GraphFamily) -> Result<(), CampaignError> {
        self.report.families_tested += 1;
        match construct_cycle_extremal_traced(fam) {
            Ok((cycle, branch)) => {
                if let Err(e) = cycle.validate_against(fam) {
                    self.violation(index, fam, format!("constructed certificate invalid: {e}"))?;
                } else {
                    self.count_branch(branch);
                    self.report.conclusion_holds += 1;
                    self.oracle_check(index, fam, true);
                }
            }
            Err(ConstructionError::AllEqualFamily) => match self.solve(fam) {
                SearchOutcome::Found(_) => self.violation(
                    index,
                    fam,
                    "all-equal family unexpectedly admits a rainbow Hamiltonian cycle".to_string(),
                )?,
                SearchOutcome::NotFound => {
                    self.report.exceptional_confirmed += 1;
                    self.oracle_check(index, fam, false);
                }
                SearchOutcome::BudgetExceeded { .. } => {}
            },
            Err(e) => {
                self.violation(index, fam, format!("extremal construction failed: {e}"))?
            }
        }
        Ok(())
    }

    /// Weak-size family for the open-question search. The all-equal
    /// exceptional shape is excluded from the question; at order five the
    /// all-equal five-vertex boundary family is recorded separately.
    fn search_case(&mut self, index: u64, fam: &GraphFamily) -> Result<(), CampaignError> {
        self.report.families_tested += 1;
        if fam.all_equal() && is_pendant_clique_shape(fam.graph(1)) {
            match self.solve(fam) {
                SearchOutcome::Found(_) => self.violation(
                    index,
                    fam,
                    "all-equal exceptional family unexpectedly admits a cycle".to_string(),
                )?,
                SearchOutcome::NotFound => self.report.exceptional_confirmed += 1,
                SearchOutcome::BudgetExceeded { .. } => {}
            }
            return Ok(());
        }
        let found = match self.solve(fam) {
            SearchOutcome::Found(_) => true,
            SearchOutcome::NotFound => false,
            SearchOutcome::BudgetExceeded { .. } => return Ok(()),
        };
        if found {
            self.report.conclusion_holds += 1;
        } else if self.report.n == 5
            && fam.all_equal()
            && is_exceptional_k2_join(fam.graph(1))
        {
            self.report.known_boundary_cases += 1;
        } else {
            self.violation(
                index,
                fam,
                "family meets the weak edge bound yet has no rainbow Hamiltonian cycle"
                    .to_string(),
            )?;
        }
        self.oracle_check(index, fam, found);
        Ok(())
    }

    fn finish(mut self, start: Instant) -> CampaignReport {
        self.report.wall_time_ms = start.elapsed().as_millis();
        self.report
    }
}

/// Sentinel index for deliberately injected probe families.
const PROBE_INDEX: u64 = u64::MAX;

fn pendant_shapes(n: usize) -> Vec<Graph> {
    pendant_attachment_pairs(n)
        .into_iter()
        .map(|(p, u)| {
            rhc_core::pendant_clique_labeled(n, p, u).expect("pendant and attachment differ")
        })
        .collect()
}

/// Runs one verification campaign and returns its report. Sampled files
/// and counters depend only on the arguments; `cert_dir`, when given,
/// receives one text family file per recorded violation.
pub fn verify_campaign(
    kind: CampaignKind,
    n: usize,
    mode: Mode,
    seed: u64,
    samples: u64,
    budget: u64,
    cert_dir: Option<&Path>,
) -> Result<CampaignReport, CampaignError> {
    let start = Instant::now();
    if n < kind.min_order() {
        return Err(CampaignError::TooSmallOrder {
            campaign: kind.to_string(),
            min: kind.min_order(),
            n,
        });
    }
    let max_edges = n * (n - 1) / 2;
    let strict_floor = (n - 1) * (n - 2) / 2 + 2;
    let hypothesis = match kind {
        CampaignKind::RainbowSize => Hypothesis::Theorem(TheoremId::RainbowSize),
        CampaignKind::RainbowSpectral => Hypothesis::Theorem(TheoremId::RainbowSpectral),
        CampaignKind::RainbowSignless => Hypothesis::Theorem(TheoremId::RainbowSignless),
        CampaignKind::Extremal => Hypothesis::PendantShapes,
    };
    let track_branches = kind == CampaignKind::Extremal;
    match (kind, mode) {
        (CampaignKind::RainbowSize, Mode::Exhaustive) => {
            if n != 4 {
                return Err(CampaignError::UnsupportedExhaustive { campaign: kind, n });
            }
            let lists = vec![graphs_with_min_edges(n, strict_floor); n];
            let total = family_space_size(&lists) as u64;
            let mut run =
                Run::new(kind.as_str(), n, mode, seed, total, budget, cert_dir, hypothesis, false);
            for idx in 0..total {
                let fam = family_at(&lists, idx as usize);
                run.size_case(idx, &fam)?;
            }
            Ok(run.finish(start))
        }
        (CampaignKind::RainbowSize, Mode::Sampled) => {
            let mut run =
                Run::new(kind.as_str(), n, mode, seed, samples, budget, cert_dir, hypothesis, false);
            for i in 0..samples {
                let mut rng = rng_for(seed, i);
                let fam = sample_family_with_edges_in(&mut rng, n, strict_floor, max_edges);
                run.size_case(i, &fam)?;
            }
            Ok(run.finish(start))
        }
        (CampaignKind::RainbowSpectral | CampaignKind::RainbowSignless, Mode::Sampled) => {
            let theorem = match kind {
                CampaignKind::RainbowSpectral => TheoremId::RainbowSpectral,
                _ => TheoremId::RainbowSignless,
            };
            let (floor, accept): (usize, fn(usize, &Graph) -> bool) = match kind {
                CampaignKind::RainbowSpectral => {
                    (min_edges_for_radius_above(n), |n, g: &Graph| {
                        compare_radius_to(g, n as i64 - 2).expect("nonempty graph")
                            == ThresholdCmp::Above
                    })
                }
                _ => (min_edges_for_signless_above(n), |n, g: &Graph| {
                    compare_signless_radius_to(g, 2 * n as i64 - 4).expect("nonempty graph")
                        == ThresholdCmp::Above
                }),
            };
            let mut run =
                Run::new(kind.as_str(), n, mode, seed, samples, budget, cert_dir, hypothesis, false);
            // The theorem's one exceptional family, probed deliberately.
            let exceptional = GraphFamily::uniform(&complete_plus_pendant(n).expect("n >= 4"))
                .expect("uniform family");
            run.spectral_case(PROBE_INDEX, &exceptional, theorem)?;
            for i in 0..samples {
                let mut rng = rng_for(seed, i);
                let (fam, rejected) =
                    sample_family_accepted(&mut rng, n, floor, max_edges, |g| accept(n, g));
                run.report.hypothesis_rejections += rejected;
                run.spectral_case(i, &fam, theorem)?;
            }
            Ok(run.finish(start))
        }
        (CampaignKind::RainbowSpectral | CampaignKind::RainbowSignless, Mode::Exhaustive) => {
            Err(CampaignError::UnsupportedExhaustive { campaign: kind, n })
        }
        (CampaignKind::Extremal, Mode::Exhaustive) => {
            if n != 4 {
                return Err(CampaignError::UnsupportedExhaustive { campaign: kind, n });
            }
            let lists = vec![pendant_shapes(n); n];
            let total = family_space_size(&lists) as u64;
            let mut run =
                Run::new(kind.as_str(), n, mode, seed, total, budget, cert_dir, hypothesis, true);
            run.oracle_all = true;
            for idx in 0..total {
                let fam = family_at(&lists, idx as usize);
                run.extremal_case(idx, &fam)?;
            }
            Ok(run.finish(start))
        }
        (CampaignKind::Extremal, Mode::Sampled) => {
            let mut run = Run::new(
                kind.as_str(),
                n,
                mode,
                seed,
                samples,
                budget,
                cert_dir,
                hypothesis,
                track_branches,
            );
            for i in 0..samples {
                let mut rng = rng_for(seed, i);
                let fam = sample_extremal_family(&mut rng, n, ExtremalStratum::for_index(i));
                run.extremal_case(i, &fam)?;
            }
            Ok(run.finish(start))
        }
    }
}

/// Samples families meeting the weak edge bound e >= (n-1)(n-2)/2 + 1 and
/// reports any cycle-free one as a counterexample candidate. The all-equal
/// exceptional family is outside the question and is instead confirmed
/// cycle-free; at n = 5 the all-equal five-vertex boundary family is
/// likewise confirmed and counted separately.
pub fn search_problem(
    n: usize,
    seed: u64,
    samples: u64,
    budget: u64,
    cert_dir: Option<&Path>,
) -> Result<CampaignReport, CampaignError> {
    let start = Instant::now();
    if n < 5 {
        return Err(CampaignError::TooSmallOrder {
            campaign: "search".to_string(),
            min: 5,
            n,
        });
    }
    let threshold = (n - 1) * (n - 2) / 2 + 1;
    let max_edges = n * (n - 1) / 2;
    let mut run = Run::new(
        "search",
        n,
        Mode::Sampled,
        seed,
        samples,
        budget,
        cert_dir,
        Hypothesis::WeakSize,
        false,
    );
    let exceptional =
        GraphFamily::uniform(&complete_plus_pendant(n).expect("n >= 4")).expect("uniform family");
    run.search_case(PROBE_INDEX, &exceptional)?;
    if n == 5 {
        let boundary = GraphFamily::uniform(&k2_join_3k1()).expect("uniform family");
        run.search_case(PROBE_INDEX - 1, &boundary)?;
    }
    for i in 0..samples {
        let mut rng = rng_for(seed, i);
        let fam = sample_family_with_edges_in(&mut rng, n, threshold, max_edges);
        run.search_case(i, &fam)?;
    }
    Ok(run.finish(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rhc_core::DEFAULT_NODE_BUDGET;

    #[test]
    fn exhaustive_strict_size_order_four_is_clean() {
        let r = verify_campaign(
            CampaignKind::RainbowSize,
            4,
            Mode::Exhaustive,
            0,
            0,
            DEFAULT_NODE_BUDGET,
            None,
        )
        .unwrap();
        assert_eq!(r.families_tested, 2401);
        assert_eq!(r.conclusion_holds, 2401);
        assert_eq!(r.hypothesis_rejections, 0);
        assert_eq!(r.budget_exhaustions, 0);
        assert!(r.clean(), "{}", r.render_text());
        assert!(r.oracle_cross_checks > 0);
        assert!(r.seed.is_none());
    }

    #[test]
    fn sampled_strict_size_is_clean() {
        for n in [5, 6] {
            let r = verify_campaign(
                CampaignKind::RainbowSize,
                n,
                Mode::Sampled,
                42,
                60,
                DEFAULT_NODE_BUDGET,
                None,
            )
            .unwrap();
            assert_eq!(r.families_tested, 60);
            assert_eq!(r.conclusion_holds, 60);
            assert!(r.clean(), "{}", r.render_text());
        }
    }

    #[test]
    fn sampled_spectral_confirms_exception_and_holds() {
        let r = verify_campaign(
            CampaignKind::RainbowSpectral,
            6,
            Mode::Sampled,
            7,
            50,
            DEFAULT_NODE_BUDGET,
            None,
        )
        .unwrap();
        assert_eq!(r.families_tested, 51, "50 samples plus the probe");
        assert_eq!(r.exceptional_confirmed, 1);
        assert_eq!(r.conclusion_holds, 50);
        assert!(r.clean(), "{}", r.render_text());
    }

    #[test]
    fn sampled_signless_confirms_exception_and_holds() {
        let r = verify_campaign(
            CampaignKind::RainbowSignless,
            6,
            Mode::Sampled,
            9,
            40,
            DEFAULT_NODE_BUDGET,
            None,
        )
        .unwrap();
        assert_eq!(r.families_tested, 41);
        assert_eq!(r.exceptional_confirmed, 1);
        assert_eq!(r.conclusion_holds, 40);
        assert!(r.clean(), "{}", r.render_text());
    }

    #[test]
    fn exhaustive_extremal_order_four_matches_oracle_everywhere() {
        let r = verify_campaign(
            CampaignKind::Extremal,
            4,
            Mode::Exhaustive,
            0,
            0,
            DEFAULT_NODE_BUDGET,
            None,
        )
        .unwrap();
        assert_eq!(r.families_tested, 20736);
        assert_eq!(r.exceptional_confirmed, 12, "one all-equal family per labeled shape");
        assert_eq!(r.conclusion_holds, 20736 - 12);
        assert_eq!(r.oracle_cross_checks, 20736);
        assert!(r.clean(), "{}", r.render_text());
        let b = r.branch_counts.unwrap();
        assert!(b.single_pendant > 0);
        assert!(b.direct_close > 0);
        assert!(b.block_switch > 0);
        assert!(b.attachment_switch > 0);
        assert_eq!(
            b.single_pendant + b.direct_close + b.block_switch + b.attachment_switch,
            20736 - 12
        );
    }

    #[test]
    fn sampled_extremal_exercises_target_branches() {
        let r = verify_campaign(
            CampaignKind::Extremal,
            6,
            Mode::Sampled,
            5,
            80,
            DEFAULT_NODE_BUDGET,
            None,
        )
        .unwrap();
        assert!(r.clean(), "{}", r.render_text());
        let b = r.branch_counts.unwrap();
        assert!(b.block_switch >= 20, "steered draws guarantee this branch: {b:?}");
        assert!(b.attachment_switch >= 20, "steered draws guarantee this branch: {b:?}");
        assert!(b.single_pendant >= 10);
    }

    #[test]
    fn search_is_clean_and_probes_boundaries() {
        let r = search_problem(6, 3, 40, DEFAULT_NODE_BUDGET, None).unwrap();
        assert_eq!(r.families_tested, 41);
        assert_eq!(r.exceptional_confirmed, 1);
        assert_eq!(r.known_boundary_cases, 0);
        assert_eq!(r.conclusion_holds, 40);
        assert!(r.clean(), "{}", r.render_text());

        let r = search_problem(5, 3, 0, DEFAULT_NODE_BUDGET, None).unwrap();
        assert_eq!(r.families_tested, 2);
        assert_eq!(r.exceptional_confirmed, 1);
        assert_eq!(r.known_boundary_cases, 1);
        assert!(r.clean(), "{}", r.render_text());
    }

    #[test]
    fn order_guards() {
        assert!(matches!(
            verify_campaign(CampaignKind::RainbowSignless, 5, Mode::Sampled, 0, 1, 1, None),
            Err(CampaignError::TooSmallOrder { min: 6, .. })
        ));
        assert!(matches!(
            verify_campaign(CampaignKind::RainbowSize, 5, Mode::Exhaustive, 0, 0, 1, None),
            Err(CampaignError::UnsupportedExhaustive { n: 5, .. })
        ));
        assert!(matches!(
            search_problem(4, 0, 1, 1, None),
            Err(CampaignError::TooSmallOrder { min: 5, .. })
        ));
    }

    #[test]
    fn reports_are_deterministic() {
        let once = verify_campaign(
            CampaignKind::RainbowSize,
            5,
            Mode::Sampled,
            13,
            30,
            DEFAULT_NODE_BUDGET,
            None,
        )
        .unwrap();
        let twice = verify_campaign(
            CampaignKind::RainbowSize,
            5,
            Mode::Sampled,
            13,
            30,
            DEFAULT_NODE_BUDGET,
            None,
        )
        .unwrap();
        let strip = |mut r: CampaignReport| {
            r.wall_time_ms = 0;
            serde_json::to_string(&r).unwrap()
        };
        assert_eq!(strip(once), strip(twice));
    }

    #[test]
    fn violation_records_write_and_reverify() {
        // Exercise the recording machinery directly with a family that is
        // genuinely cycle-free, standing in for a counterexample.
        let dir = tempfile::tempdir().unwrap();
        let fam = GraphFamily::uniform(&complete_plus_pendant(6).unwrap()).unwrap();
        let mut run = Run::new(
            "search",
            6,
            Mode::Sampled,
            0,
            1,
            DEFAULT_NODE_BUDGET,
            Some(dir.path()),
            Hypothesis::WeakSize,
            false,
        );
        run.violation(3, &fam, "probe".to_string()).unwrap();
        let record = &run.report.violations[0];
        let path = record.certificate_path.as_ref().unwrap();
        assert!(std::path::Path::new(path).exists());
        assert!(record.detail.contains("hypothesis holds"));
        assert!(record.detail.contains("no cycle"));
        let reloaded = io::read_family(std::path::Path::new(path)).unwrap();
        assert_eq!(FamilyDoc::from_family(&reloaded), record.family);
    }

    #[test]
    fn budget_exhaustion_is_counted_not_violated() {
        let r = verify_campaign(
            CampaignKind::RainbowSize,
            6,
            Mode::Sampled,
            1,
            5,
            1,
            None,
        )
        .unwrap();
        assert_eq!(r.budget_exhaustions, 5);
        assert_eq!(r.conclusion_holds, 0);
        assert!(r.violations.is_empty());
    }
}
