//! PPT and entanglement classifiers and the alpha sweep that maps out where
//! each one fires.
//!
//! Three of the tests are sufficient conditions for a positive partial
//! transpose and can only certify PPT. The third-moment test can only
//! certify entanglement. The eigenvalue test on `rho^{T_B}` decides both ways.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::spectral::DEFAULT_PSD_TOL;
use crate::state::{self, AAlphaState, MomentTerms, StateError, ValidityInterval};

/// Relative slack before the third-moment inequality counts as violated.
/// Both sides agree exactly in some cases (regular graphs at alpha = 1) and
/// must not be split by rounding.
pub const P3_REL_SLACK: f64 = 1e-12;

/// Bracket width when refining run boundaries.
pub const REFINE_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CriteriaError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error("bipartite dimension d1*d2 = {0} must exceed 1")]
    TrivialDimension(usize),
    #[error("criterion requires an unweighted graph")]
    WeightedGraph,
    #[error("alpha grid is empty")]
    EmptyGrid,
    #[error("alpha grid must be strictly increasing inside (0, 1], offending value {0}")]
    BadGrid(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    FrobeniusPpt,
    AlphaThreshold,
    P3Ppt,
    PeresHorodecki,
    SecondMomentPpt,
}

impl Criterion {
    pub const ALL: [Criterion; 5] = [
        Criterion::FrobeniusPpt,
        Criterion::AlphaThreshold,
        Criterion::P3Ppt,
        Criterion::PeresHorodecki,
        Criterion::SecondMomentPpt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::FrobeniusPpt => "frobenius_ppt",
            Criterion::AlphaThreshold => "alpha_threshold",
            Criterion::P3Ppt => "p3_ppt",
            Criterion::PeresHorodecki => "peres_horodecki",
            Criterion::SecondMomentPpt => "second_moment_ppt",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    PptCertified,
    EntangledCertified,
    Inconclusive,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::PptCertified => "ppt_certified",
            Outcome::EntangledCertified => "entangled_certified",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One criterion evaluated at one alpha, with both sides of its inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub criterion: Criterion,
    pub outcome: Outcome,
    #[serde(with = "crate::num")]
    pub lhs: f64,
    #[serde(with = "crate::num")]
    pub rhs: f64,
    #[serde(with = "crate::num")]
    pub alpha: f64,
    /// Whether `rho` is PSD at this alpha. Verdicts on non-states carry no
    /// physical meaning.
    pub valid_state: bool,
}

/// Per-graph data shared by every criterion, computed once.
#[derive(Debug, Clone)]
pub struct Evaluator {
    graph: Graph,
    terms: MomentTerms,
    threshold: Option<f64>,
    tol: f64,
}

impl Evaluator {
    pub fn new(graph: &Graph) -> Result<Self, CriteriaError> {
        Self::with_tol(graph, DEFAULT_PSD_TOL)
    }

    /// `tol` is the eigenvalue tolerance for both the state check and the
    /// eigenvalue criterion.
    pub fn with_tol(graph: &Graph, tol: f64) -> Result<Self, CriteriaError> {
        let dim = graph.n();
        if dim <= 1 {
            return Err(CriteriaError::TrivialDimension(dim));
        }
        let terms = MomentTerms::of(graph)?;
        let threshold = if graph.is_unweighted() {
            threshold_from_terms(&terms, dim)
        } else {
            None
        };
        Ok(Self {
            graph: graph.clone(),
            terms,
            threshold,
            tol,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn terms(&self) -> &MomentTerms {
        &self.terms
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// The alpha threshold for unweighted graphs; `None` when the graph is
    /// weighted or the threshold does not exist.
    pub fn alpha_threshold(&self) -> Option<f64> {
        self.threshold
    }

    fn dim(&self) -> f64 {
        self.graph.n() as f64
    }

    pub fn frobenius(&self, alpha: f64, valid_state: bool) -> CriterionVerdict {
        let t = &self.terms;
        let bracket = t.total_degree * t.total_degree / (self.dim() - 1.0) - t.sum_degree_sq;
        let rhs = if alpha == 1.0 {
            f64::INFINITY
        } else {
            let r = alpha / (1.0 - alpha);
            r * r * bracket
        };
        let lhs = t.frobenius_sq;
        verdict(Criterion::FrobeniusPpt, alpha, lhs, rhs, valid_state, lhs <= rhs, false)
    }

    pub fn second_moment(&self, alpha: f64, valid_state: bool) -> CriterionVerdict {
        let lhs = self.terms.p2(alpha);
        let rhs = 1.0 / (self.dim() - 1.0);
        verdict(Criterion::SecondMomentPpt, alpha, lhs, rhs, valid_state, lhs <= rhs, false)
    }

    /// `None` for weighted graphs, where the threshold test does not apply.
    pub fn threshold(&self, alpha: f64, valid_state: bool) -> Option<CriterionVerdict> {
        if !self.graph.is_unweighted() {
            return None;
        }
        let rhs = self.threshold.unwrap_or(f64::INFINITY);
        Some(verdict(Criterion::AlphaThreshold, alpha, alpha, rhs, valid_state, alpha >= rhs, false))
    }

    pub fn p3(&self, alpha: f64, valid_state: bool) -> CriterionVerdict {
        let t = &self.terms;
        let p2n = t.p2_numerator(alpha);
        let lhs = p2n * p2n;
        let rhs = t.total_degree * t.p3_numerator(alpha);
        let violated = lhs - rhs > P3_REL_SLACK * lhs.abs().max(rhs.abs());
        verdict(Criterion::P3Ppt, alpha, lhs, rhs, valid_state, false, violated)
    }

    pub fn peres_horodecki(&self, state: &AAlphaState, valid_state: bool) -> Result<CriterionVerdict, CriteriaError> {
        let lhs = state.partial_transpose().min_eigenvalue().map_err(StateError::from)?;
        let entangled = lhs < -self.tol;
        Ok(verdict(
            Criterion::PeresHorodecki,
            state.alpha(),
            lhs,
            0.0,
            valid_state,
            !entangled,
            entangled,
        ))
    }

    /// Builds the state and runs every applicable criterion at `alpha`.
    pub fn evaluate(&self, alpha: f64) -> Result<PointEvaluation, CriteriaError> {
        let state = AAlphaState::new(&self.graph, alpha)?;
        let rho_min = state.rho().min_eigenvalue().map_err(StateError::from)?;
        let valid = rho_min >= -self.tol;
        let mut verdicts = vec![self.frobenius(alpha, valid)];
        verdicts.extend(self.threshold(alpha, valid));
        verdicts.push(self.p3(alpha, valid));
        let ph = self.peres_horodecki(&state, valid)?;
        verdicts.push(ph);
        verdicts.push(self.second_moment(alpha, valid));
        Ok(PointEvaluation {
            alpha,
            beta: state.beta(),
            valid,
            rho_min_eigenvalue: rho_min,
            pt_min_eigenvalue: ph.lhs,
            moments: Moments::new(
                self.terms.p2(alpha),
                state.p2_direct(),
                self.terms.p3(alpha),
                state.p3_direct(),
            ),
            verdicts,
        })
    }
}

fn verdict(
    criterion: Criterion,
    alpha: f64,
    lhs: f64,
    rhs: f64,
    valid_state: bool,
    ppt: bool,
    entangled: bool,
) -> CriterionVerdict {
    let outcome = if entangled {
        Outcome::EntangledCertified
    } else if ppt {
        Outcome::PptCertified
    } else {
        Outcome::Inconclusive
    };
    CriterionVerdict {
        criterion,
        outcome,
        lhs,
        rhs,
        alpha,
        valid_state,
    }
}

fn threshold_from_terms(t: &MomentTerms, dim: usize) -> Option<f64> {
    let radicand = t.total_degree / (dim as f64 - 1.0) - t.sum_degree_sq / t.total_degree;
    (radicand >= 0.0).then(|| 1.0 / (1.0 + radicand.sqrt()))
}

fn check_dim(graph: &Graph) -> Result<(), CriteriaError> {
    if graph.n() <= 1 {
        Err(CriteriaError::TrivialDimension(graph.n()))
    } else {
        Ok(())
    }
}

fn state_is_valid(state: &AAlphaState) -> Result<bool, CriteriaError> {
    Ok(state.is_valid(DEFAULT_PSD_TOL)?)
}

/// Frobenius-norm sufficient condition:
/// `||A||_F^2 <= (alpha/(1-alpha))^2 [d_G^2/(d1 d2 - 1) - sum d^2]`.
pub fn frobenius_ppt_test(graph: &Graph, alpha: f64) -> Result<CriterionVerdict, CriteriaError> {
    check_dim(graph)?;
    let state = AAlphaState::new(graph, alpha)?;
    Ok(Evaluator::new(graph)?.frobenius(alpha, state_is_valid(&state)?))
}

/// The smallest alpha certified by the Frobenius condition on an unweighted
/// graph, `1 / (1 + sqrt(d_G/(d1 d2 - 1) - sum d^2 / d_G))`, or `None` when
/// the square root is of a negative number.
pub fn alpha_threshold_simple(graph: &Graph) -> Result<Option<f64>, CriteriaError> {
    check_dim(graph)?;
    if !graph.is_unweighted() {
        return Err(CriteriaError::WeightedGraph);
    }
    Ok(threshold_from_terms(&MomentTerms::of(graph)?, graph.n()))
}

/// Third-moment test: PPT states satisfy `p2^2 <= p3`; a violation certifies
/// entanglement.
pub fn p3_ppt_test(graph: &Graph, alpha: f64) -> Result<CriterionVerdict, CriteriaError> {
    check_dim(graph)?;
    let state = AAlphaState::new(graph, alpha)?;
    Ok(Evaluator::new(graph)?.p3(alpha, state_is_valid(&state)?))
}

/// Exact test on the spectrum of `rho^{T_B}`.
pub fn peres_horodecki_test(state: &AAlphaState, tol: f64) -> Result<CriterionVerdict, CriteriaError> {
    let valid = state.is_valid(tol)?;
    Evaluator::with_tol(state.graph(), tol)?.peres_horodecki(state, valid)
}

/// Purity bound: `p2 <= 1/(d1 d2 - 1)` puts `rho^{T_B}` inside the ball of
/// PSD unit-trace matrices around the maximally mixed state.
pub fn second_moment_ppt_test(state: &AAlphaState) -> Result<CriterionVerdict, CriteriaError> {
    let valid = state_is_valid(state)?;
    Ok(Evaluator::new(state.graph())?.second_moment(state.alpha(), valid))
}

/// Third-moment test through the triangle-free shortcut.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TreeP3Verdict {
    pub verdict: CriterionVerdict,
    /// The graph is unweighted with at most `n - 1` edges and its partial
    /// transpose is connected, so the transpose is a tree. When false the
    /// verdict comes from the general test instead.
    pub hypotheses_hold: bool,
}

/// The third-moment test with the triangle term dropped, valid when the
/// partial-transpose graph is a tree.
pub fn tree_p3_test(graph: &Graph, alpha: f64) -> Result<TreeP3Verdict, CriteriaError> {
    check_dim(graph)?;
    let state = AAlphaState::new(graph, alpha)?;
    let valid = state_is_valid(&state)?;
    let pt = graph.partial_transpose().map_err(StateError::from)?;
    let hypotheses_hold = graph.is_unweighted() && graph.edge_count() < graph.n() && pt.is_connected();
    if !hypotheses_hold {
        return Ok(TreeP3Verdict {
            verdict: Evaluator::new(graph)?.p3(alpha, valid),
            hypotheses_hold,
        });
    }
    let degrees = graph.degrees();
    let d_g = graph.total_degree();
    let b = state::beta(alpha);
    let sum_sq: f64 = degrees.iter().map(|d| d * d).sum();
    let sum_cube: f64 = degrees.iter().map(|d| d * d * d).sum();
    let lhs = (sum_sq + b * b * d_g).powi(2);
    let rhs = d_g * (sum_cube + 3.0 * b * b * graph.swapped_degree_weight_sum());
    let violated = lhs - rhs > P3_REL_SLACK * lhs.abs().max(rhs.abs());
    Ok(TreeP3Verdict {
        verdict: verdict(Criterion::P3Ppt, alpha, lhs, rhs, valid, false, violated),
        hypotheses_hold,
    })
}

/// Moments of `rho^{T_B}` from the graph formulas and from the matrix,
/// with their absolute differences.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    #[serde(with = "crate::num")]
    pub p2_graph: f64,
    #[serde(with = "crate::num")]
    pub p2_direct: f64,
    #[serde(with = "crate::num")]
    pub p2_delta: f64,
    #[serde(with = "crate::num")]
    pub p3_graph: f64,
    #[serde(with = "crate::num")]
    pub p3_direct: f64,
    #[serde(with = "crate::num")]
    pub p3_delta: f64,
}

impl Moments {
    pub fn new(p2_graph: f64, p2_direct: f64, p3_graph: f64, p3_direct: f64) -> Self {
        Self {
            p2_graph,
            p2_direct,
            p2_delta: (p2_graph - p2_direct).abs(),
            p3_graph,
            p3_direct,
            p3_delta: (p3_graph - p3_direct).abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointEvaluation {
    #[serde(with = "crate::num")]
    pub alpha: f64,
    #[serde(with = "crate::num")]
    pub beta: f64,
    pub valid: bool,
    #[serde(with = "crate::num")]
    pub rho_min_eigenvalue: f64,
    #[serde(with = "crate::num")]
    pub pt_min_eigenvalue: f64,
    pub moments: Moments,
    pub verdicts: Vec<CriterionVerdict>,
}

impl PointEvaluation {
    pub fn verdict(&self, c: Criterion) -> Option<&CriterionVerdict> {
        self.verdicts.iter().find(|v| v.criterion == c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "crate::num")]
    pub start: f64,
    #[serde(with = "crate::num")]
    pub end: f64,
}

/// A maximal stretch of consecutive valid grid points where `criterion`
/// returns `outcome`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Run {
    pub criterion: Criterion,
    pub outcome: Outcome,
    pub grid: Interval,
    /// Boundaries moved to within [`REFINE_TOL`] of the true switch point.
    /// Ends that sit on the edge of the grid are left alone.
    pub refined: Option<Interval>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub label: String,
    pub d1: usize,
    pub d2: usize,
    pub validity: ValidityInterval,
    #[serde(with = "crate::num::opt")]
    pub alpha_threshold: Option<f64>,
    pub points: Vec<PointEvaluation>,
    pub validity_runs: Vec<Interval>,
    pub runs: Vec<Run>,
}

impl SweepReport {
    pub fn runs_for(&self, criterion: Criterion, outcome: Outcome) -> impl Iterator<Item = &Run> {
        self.runs
            .iter()
            .filter(move |r| r.criterion == criterion && r.outcome == outcome)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub tol: f64,
    pub refine: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_PSD_TOL,
            refine: false,
        }
    }
}

/// `count` evenly spaced values from `start` to `end` inclusive.
pub fn linear_grid(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (count - 1) as f64;
            (0..count)
                .map(|i| if i + 1 == count { end } else { start + step * i as f64 })
                .collect()
        }
    }
}

fn check_grid(grid: &[f64]) -> Result<(), CriteriaError> {
    if grid.is_empty() {
        return Err(CriteriaError::EmptyGrid);
    }
    let mut prev = 0.0;
    for &a in grid {
        if !(a > prev && a <= 1.0) {
            return Err(CriteriaError::BadGrid(a));
        }
        prev = a;
    }
    Ok(())
}

/// Runs every criterion on each grid point and collects the verdict runs.
pub fn sweep(graph: &Graph, label: &str, grid: &[f64], opts: SweepOptions) -> Result<SweepReport, CriteriaError> {
    check_grid(grid)?;
    let eval = Evaluator::with_tol(graph, opts.tol)?;
    let validity = state::validity_interval(graph, state::DEFAULT_THRESHOLD_TOL)?;
    let points = grid
        .iter()
        .map(|&a| eval.evaluate(a))
        .collect::<Result<Vec<_>, _>>()?;

    let validity_runs = runs_of(&points, |p| p.valid)
        .into_iter()
        .map(|(i, j)| Interval {
            start: points[i].alpha,
            end: points[j].alpha,
        })
        .collect();

    let mut runs = Vec::new();
    for criterion in Criterion::ALL {
        if points[0].verdict(criterion).is_none() {
            continue;
        }
        for outcome in [Outcome::PptCertified, Outcome::EntangledCertified] {
            let inside = |p: &PointEvaluation| p.valid && p.verdict(criterion).map(|v| v.outcome) == Some(outcome);
            for (i, j) in runs_of(&points, inside) {
                let refined = if opts.refine {
                    Some(refine_run(&eval, grid, i, j, criterion, outcome)?)
                } else {
                    None
                };
                runs.push(Run {
                    criterion,
                    outcome,
                    grid: Interval {
                        start: grid[i],
                        end: grid[j],
                    },
                    refined,
                });
            }
        }
    }

    Ok(SweepReport {
        label: label.to_owned(),
        d1: graph.d1(),
        d2: graph.d2(),
        validity,
        alpha_threshold: eval.alpha_threshold(),
        points,
        validity_runs,
        runs,
    })
}

/// Index ranges `[i, j]` of maximal consecutive points satisfying `pred`.
fn runs_of<T>(items: &[T], pred: impl Fn(&T) -> bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, item) in items.iter().enumerate() {
        match (pred(item), start) {
            (true, None) => start = Some(k),
            (false, Some(s)) => {
                out.push((s, k - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, items.len() - 1));
    }
    out
}

fn refine_run(
    eval: &Evaluator,
    grid: &[f64],
    i: usize,
    j: usize,
    criterion: Criterion,
    outcome: Outcome,
) -> Result<Interval, CriteriaError> {
    let inside = |a: f64| -> Result<bool, CriteriaError> {
        let p = eval.evaluate(a)?;
        Ok(p.valid && p.verdict(criterion).map(|v| v.outcome) == Some(outcome))
    };
    let bisect = |mut in_pt: f64, mut out_pt: f64| -> Result<f64, CriteriaError> {
        while (in_pt - out_pt).abs() > REFINE_TOL {
            let mid = 0.5 * (in_pt + out_pt);
            if inside(mid)? {
                in_pt = mid;
            } else {
                out_pt = mid;
            }
        }
        Ok(in_pt)
    };
    let start = if i > 0 { bisect(grid[i], grid[i - 1])? } else { grid[i] };
    let end = if j + 1 < grid.len() { bisect(grid[j], grid[j + 1])? } else { grid[j] };
    Ok(Interval { start, end })
}
