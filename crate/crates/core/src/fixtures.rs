//! Reference graphs with published values, used as a regression suite.
//!
//! Every fixture carries a list of numeric checks. A check compares a
//! computed quantity with its reference value at a stated tolerance; counts
//! and yes/no facts are encoded as numbers so one shape covers all of them.

use serde::Serialize;

use crate::criteria::{self, CriteriaError, Criterion, Evaluator, Outcome, SweepOptions};
use crate::graph::Graph;
use crate::spectral::SymMatrix;
use crate::state::{self, AAlphaState, StateError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureId {
    G1,
    PtG1,
    PtG2,
    G2,
    G3,
    G4,
    K4,
    P4,
    P6,
}

impl FixtureId {
    pub const ALL: [FixtureId; 9] = [
        FixtureId::G1,
        FixtureId::PtG1,
        FixtureId::PtG2,
        FixtureId::G2,
        FixtureId::G3,
        FixtureId::G4,
        FixtureId::K4,
        FixtureId::P4,
        FixtureId::P6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FixtureId::G1 => "G1",
            FixtureId::PtG1 => "PT-G1",
            FixtureId::PtG2 => "PT-G2",
            FixtureId::G2 => "G2",
            FixtureId::G3 => "G3",
            FixtureId::G4 => "G4",
            FixtureId::K4 => "K4",
            FixtureId::P4 => "P4",
            FixtureId::P6 => "P6",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            FixtureId::G1 => "weighted 4-vertex graph, PPT on [0.75, 1]",
            FixtureId::PtG1 => "unweighted 4-vertex partial transpose",
            FixtureId::PtG2 => "weighted 9-vertex partial transpose",
            FixtureId::G2 => "weighted 6-vertex graph, PPT on [0.7, 1]",
            FixtureId::G3 => "weighted 9-vertex graph, PPT on [0.75, 1]",
            FixtureId::G4 => "unweighted 6-vertex graph with an entangled window",
            FixtureId::K4 => "complete graph on 4 vertices",
            FixtureId::P4 => "path on 4 vertices",
            FixtureId::P6 => "path on 6 vertices",
        }
    }

    /// Case-insensitive; `-` and `_` are interchangeable.
    pub fn find(name: &str) -> Option<FixtureId> {
        let key = name.trim().to_ascii_uppercase().replace('_', "-");
        Self::ALL.into_iter().find(|f| f.name() == key)
    }

    pub fn graph(self) -> Graph {
        match self {
            FixtureId::G1 => g1(),
            FixtureId::PtG1 => from_rows(2, 2, &PT_G1),
            FixtureId::PtG2 => from_rows(3, 3, &PT_G2),
            FixtureId::G2 => from_rows(2, 3, &G2),
            FixtureId::G3 => from_rows(3, 3, &G3),
            FixtureId::G4 => from_rows(2, 3, &G4),
            FixtureId::K4 => Graph::unweighted(2, 2, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
            FixtureId::P4 => Graph::unweighted(2, 2, [(0, 1), (1, 2), (2, 3)]).unwrap(),
            FixtureId::P6 => Graph::unweighted(2, 3, (0..5).map(|i| (i, i + 1))).unwrap(),
        }
    }

    pub fn run(self) -> Result<FixtureReport, CriteriaError> {
        let checks = match self {
            FixtureId::G1 => g1_checks()?,
            FixtureId::PtG1 => pt_checks(&self.graph(), &PT_G1_T),
            FixtureId::PtG2 => pt_checks(&self.graph(), &PT_G2_T),
            FixtureId::G2 => weighted_checks(&self.graph(), 24669.0 / 5000.0, 27867.0 / 25000.0, 0.7, 0.6955, Some((389.0, &G2_RHO)))?,
            FixtureId::G3 => weighted_checks::<9>(&self.graph(), 68521.0 / 5000.0, 45081.0 / 20000.0, 0.75, 0.75, None)?,
            FixtureId::G4 => g4_checks()?,
            FixtureId::K4 => k4_checks()?,
            FixtureId::P4 => p4_checks()?,
            FixtureId::P6 => p6_checks()?,
        };
        Ok(FixtureReport {
            name: self.name(),
            checks,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub expected: f64,
    pub actual: f64,
    pub tol: f64,
}

impl Check {
    fn new(label: impl Into<String>, expected: f64, actual: f64, tol: f64) -> Self {
        Self {
            label: label.into(),
            expected,
            actual,
            tol,
        }
    }

    fn flag(label: impl Into<String>, holds: bool) -> Self {
        Self::new(label, 1.0, if holds { 1.0 } else { 0.0 }, 0.0)
    }

    pub fn passed(&self) -> bool {
        (self.actual - self.expected).abs() <= self.tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureReport {
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

pub fn run_all() -> Result<Vec<FixtureReport>, CriteriaError> {
    FixtureId::ALL.into_iter().map(FixtureId::run).collect()
}

fn from_rows<const N: usize>(d1: usize, d2: usize, rows: &[[f64; N]; N]) -> Graph {
    let mut g = Graph::new(d1, d2).unwrap();
    for (u, row) in rows.iter().enumerate() {
        for (v, &w) in row.iter().enumerate().skip(u + 1) {
            if w != 0.0 {
                g.add_edge(u, v, w).unwrap();
            }
        }
    }
    g
}

fn g1() -> Graph {
    from_rows(2, 2, &G1)
}

const G1: [[f64; 4]; 4] = [
    [0.0, 7.0 / 50.0, 0.0, 1.0 / 4.0],
    [7.0 / 50.0, 0.0, 9.0 / 100.0, 1.0 / 5.0],
    [0.0, 9.0 / 100.0, 0.0, 0.0],
    [1.0 / 4.0, 1.0 / 5.0, 0.0, 0.0],
];

/// A printed `rho`, scaled by `d_G`, as (constant, coefficient of beta) pairs.
type PrintedRho<const N: usize> = [[(f64, f64); N]; N];

/// `68 rho` for G1 as (diagonal, coefficient of beta) pairs.
const G1_RHO: PrintedRho<4> = [
    [(19.5, 0.0), (0.0, 7.0), (0.0, 0.0), (0.0, 12.5)],
    [(0.0, 7.0), (21.5, 0.0), (0.0, 4.5), (0.0, 10.0)],
    [(0.0, 0.0), (0.0, 4.5), (4.5, 0.0), (0.0, 0.0)],
    [(0.0, 12.5), (0.0, 10.0), (0.0, 0.0), (22.5, 0.0)],
];

const PT_G1: [[f64; 4]; 4] = [
    [0.0, 1.0, 1.0, 1.0],
    [1.0, 0.0, 0.0, 1.0],
    [1.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0],
];

const PT_G1_T: [[f64; 4]; 4] = [
    [0.0, 1.0, 1.0, 0.0],
    [1.0, 0.0, 1.0, 1.0],
    [1.0, 1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
];

const PT_G2: [[f64; 9]; 9] = [
    [0.0, 2.0 / 5.0, 0.0, 3.0 / 4.0, 0.0, 0.0, 1.0 / 2.0, 0.0, 0.0],
    [2.0 / 5.0, 0.0, 7.0 / 10.0, 0.0, 1.0 / 3.0, 0.0, 0.0, 0.0, 4.0 / 5.0],
    [0.0, 7.0 / 10.0, 0.0, 1.0 / 4.0, 2.0 / 3.0, 0.0, 0.0, 3.0 / 5.0, 0.0],
    [3.0 / 4.0, 0.0, 1.0 / 4.0, 0.0, 1.0 / 2.0, 0.0, 2.0 / 5.0, 0.0, 0.0],
    [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0 / 2.0, 0.0, 3.0 / 4.0, 0.0, 1.0 / 5.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, 3.0 / 4.0, 0.0, 0.0, 0.0, 2.0 / 3.0],
    [1.0 / 2.0, 0.0, 0.0, 2.0 / 5.0, 0.0, 0.0, 0.0, 4.0 / 5.0, 1.0],
    [0.0, 0.0, 3.0 / 5.0, 0.0, 1.0 / 5.0, 0.0, 4.0 / 5.0, 0.0, 7.0 / 10.0],
    [0.0, 4.0 / 5.0, 0.0, 0.0, 0.0, 2.0 / 3.0, 1.0, 7.0 / 10.0, 0.0],
];

const PT_G2_T: [[f64; 9]; 9] = [
    [0.0, 2.0 / 5.0, 0.0, 3.0 / 4.0, 0.0, 1.0 / 4.0, 1.0 / 2.0, 0.0, 0.0],
    [2.0 / 5.0, 0.0, 7.0 / 10.0, 0.0, 1.0 / 3.0, 2.0 / 3.0, 0.0, 0.0, 3.0 / 5.0],
    [0.0, 7.0 / 10.0, 0.0, 0.0, 0.0, 0.0, 0.0, 4.0 / 5.0, 0.0],
    [3.0 / 4.0, 0.0, 0.0, 0.0, 1.0 / 2.0, 0.0, 2.0 / 5.0, 0.0, 0.0],
    [0.0, 1.0 / 3.0, 0.0, 1.0 / 2.0, 0.0, 3.0 / 4.0, 0.0, 1.0 / 5.0, 0.0],
    [1.0 / 4.0, 2.0 / 3.0, 0.0, 0.0, 3.0 / 4.0, 0.0, 0.0, 0.0, 2.0 / 3.0],
    [1.0 / 2.0, 0.0, 0.0, 2.0 / 5.0, 0.0, 0.0, 0.0, 4.0 / 5.0, 1.0],
    [0.0, 0.0, 4.0 / 5.0, 0.0, 1.0 / 5.0, 0.0, 4.0 / 5.0, 0.0, 7.0 / 10.0],
    [0.0, 3.0 / 5.0, 0.0, 0.0, 0.0, 2.0 / 3.0, 1.0, 7.0 / 10.0, 0.0],
];

const G2: [[f64; 6]; 6] = [
    [0.0, 4.0 / 5.0, 1.0 / 20.0, 0.0, 73.0 / 100.0, 0.0],
    [4.0 / 5.0, 0.0, 0.0, 1.0 / 100.0, 0.0, 39.0 / 100.0],
    [1.0 / 20.0, 0.0, 0.0, 17.0 / 50.0, 0.0, 4.0 / 25.0],
    [0.0, 1.0 / 100.0, 17.0 / 50.0, 0.0, 3.0 / 4.0, 33.0 / 50.0],
    [73.0 / 100.0, 0.0, 0.0, 3.0 / 4.0, 0.0, 0.0],
    [0.0, 39.0 / 100.0, 4.0 / 25.0, 33.0 / 50.0, 0.0, 0.0],
];

/// `389 rho` for G2 as (diagonal, coefficient of beta) pairs.
const G2_RHO: PrintedRho<6> = [
    [(79.0, 0.0), (0.0, 40.0), (0.0, 2.5), (0.0, 0.0), (0.0, 36.5), (0.0, 0.0)],
    [(0.0, 40.0), (60.0, 0.0), (0.0, 0.0), (0.0, 0.5), (0.0, 0.0), (0.0, 19.5)],
    [(0.0, 2.5), (0.0, 0.0), (27.5, 0.0), (0.0, 17.0), (0.0, 0.0), (0.0, 8.0)],
    [(0.0, 0.0), (0.0, 0.5), (0.0, 17.0), (88.0, 0.0), (0.0, 37.5), (0.0, 33.0)],
    [(0.0, 36.5), (0.0, 0.0), (0.0, 0.0), (0.0, 37.5), (74.0, 0.0), (0.0, 0.0)],
    [(0.0, 0.0), (0.0, 19.5), (0.0, 8.0), (0.0, 33.0), (0.0, 0.0), (60.5, 0.0)],
];

const G3: [[f64; 9]; 9] = [
    [0.0, 13.0 / 50.0, 0.0, 4.0 / 5.0, 0.0, 29.0 / 50.0, 41.0 / 100.0, 12.0 / 25.0, 0.0],
    [13.0 / 50.0, 0.0, 14.0 / 25.0, 0.0, 19.0 / 25.0, 0.0, 0.0, 0.0, 29.0 / 50.0],
    [0.0, 14.0 / 25.0, 0.0, 51.0 / 100.0, 69.0 / 100.0, 0.0, 0.0, 49.0 / 100.0, 0.0],
    [4.0 / 5.0, 0.0, 51.0 / 100.0, 0.0, 19.0 / 25.0, 0.0, 12.0 / 25.0, 0.0, 0.0],
    [0.0, 19.0 / 25.0, 69.0 / 100.0, 19.0 / 25.0, 0.0, 0.0, 9.0 / 25.0, 11.0 / 100.0, 0.0],
    [29.0 / 50.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [41.0 / 100.0, 0.0, 0.0, 12.0 / 25.0, 9.0 / 25.0, 0.0, 0.0, 64.0 / 100.0, 1.0],
    [12.0 / 25.0, 0.0, 49.0 / 100.0, 0.0, 11.0 / 100.0, 0.0, 64.0 / 100.0, 0.0, 23.0 / 25.0],
    [0.0, 29.0 / 50.0, 0.0, 0.0, 0.0, 0.0, 1.0, 23.0 / 25.0, 0.0],
];

const G4: [[f64; 6]; 6] = [
    [0.0, 1.0, 1.0, 0.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 0.0, 1.0, 1.0],
    [1.0, 0.0, 0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0, 0.0, 1.0],
    [0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
    [0.0, 1.0, 0.0, 1.0, 1.0, 0.0],
];

fn se(e: StateError) -> CriteriaError {
    CriteriaError::State(e)
}

/// Number of entries where the graph's transpose differs from `want`.
fn pt_mismatches<const N: usize>(g: &Graph, want: &[[f64; N]; N]) -> usize {
    let pt = g.partial_transpose().expect("transpose of a valid graph").adjacency_matrix();
    (0..N)
        .flat_map(|i| (0..N).map(move |j| (i, j)))
        .filter(|&(i, j)| pt.get(i, j) != want[i][j])
        .count()
}

fn pt_checks<const N: usize>(g: &Graph, want: &[[f64; N]; N]) -> Vec<Check> {
    vec![
        Check::new("entries differing from the printed transpose", 0.0, pt_mismatches(g, want) as f64, 0.0),
        Check::flag("transpose is an involution", g.partial_transpose().unwrap().partial_transpose().unwrap() == *g),
    ]
}

/// Largest deviation of `rho(alpha)` from `(diag + beta * off) / scale`.
fn rho_deviation<const N: usize>(g: &Graph, alpha: f64, scale: f64, printed: &PrintedRho<N>) -> Result<f64, CriteriaError> {
    let s = AAlphaState::new(g, alpha)?;
    let b = s.beta();
    let mut worst: f64 = 0.0;
    for (i, row) in printed.iter().enumerate() {
        for (j, &(d, o)) in row.iter().enumerate() {
            worst = worst.max((s.rho().get(i, j) - (d + b * o) / scale).abs());
        }
    }
    Ok(worst)
}

/// The Frobenius gap `||A||^2 - (alpha/(1-alpha))^2 [d_G^2/(n-1) - sum d^2]`.
fn frobenius_gap(g: &Graph, alpha: f64) -> Result<f64, CriteriaError> {
    let v = criteria::frobenius_ppt_test(g, alpha)?;
    Ok(v.lhs - v.rhs)
}

/// Grid points in `[start, 1]` (step 0.01) where `criterion` gives `outcome`,
/// against the total number of points.
fn count_outcome(g: &Graph, start: f64, criterion: Criterion, outcome: Outcome) -> Result<(usize, usize), CriteriaError> {
    let eval = Evaluator::new(g)?;
    let steps = ((1.0 - start) * 100.0).round() as usize;
    let mut hits = 0;
    for k in 0..=steps {
        let alpha = if k == steps { 1.0 } else { start + k as f64 / 100.0 };
        let p = eval.evaluate(alpha)?;
        if p.valid && p.verdict(criterion).map(|v| v.outcome) == Some(outcome) {
            hits += 1;
        }
    }
    Ok((hits, steps + 1))
}

fn ppt_on(g: &Graph, start: f64) -> Result<Check, CriteriaError> {
    let (hits, total) = count_outcome(g, start, Criterion::FrobeniusPpt, Outcome::PptCertified)?;
    Ok(Check::new(
        format!("grid points in [{start}, 1] certified PPT by the Frobenius test"),
        total as f64,
        hits as f64,
        0.0,
    ))
}

fn g1_checks() -> Result<Vec<Check>, CriteriaError> {
    let g = g1();
    let weyl = state::weyl_validity_threshold(&g).map_err(se)?;
    let t = state::MomentTerms::of(&g).map_err(se)?;
    let bracket = t.total_degree * t.total_degree / 3.0 - t.sum_degree_sq;
    Ok(vec![
        Check::new("lambda_min(A)", -0.2647, weyl.lambda_min, 5e-4),
        Check::new("Weyl validity bound", 0.75, weyl.alpha0, 5e-3),
        Check::new("minimum degree", 0.09, weyl.min_degree, 1e-12),
        Check::new("||A||_F^2 (printed to two places)", 0.26, t.frobenius_sq, 5e-3),
        Check::new("Frobenius bracket 517/7500", 517.0 / 7500.0, bracket, 1e-12),
        Check::new("rho(0.8) against the printed matrix", 0.0, rho_deviation(&g, 0.8, 68.0, &G1_RHO)?, 1e-12),
        ppt_on(&g, 0.75)?,
    ])
}

fn weighted_checks<const N: usize>(
    g: &Graph,
    constant: f64,
    coefficient: f64,
    ppt_from: f64,
    weyl_want: f64,
    rho: Option<(f64, &PrintedRho<N>)>,
) -> Result<Vec<Check>, CriteriaError> {
    let mut checks = Vec::new();
    for alpha in [0.75, 0.8, 0.9] {
        let r = alpha / (1.0 - alpha);
        checks.push(Check::new(
            format!("Frobenius gap at alpha = {alpha}"),
            constant - coefficient * r * r,
            frobenius_gap(g, alpha)?,
            1e-6,
        ));
    }
    let weyl = state::weyl_validity_threshold(g).map_err(se)?;
    checks.push(Check::new("Weyl validity bound", weyl_want, weyl.alpha0, 5e-3));
    checks.push(Check::flag(format!("Weyl bound at most {ppt_from}"), weyl.alpha0 <= ppt_from));
    checks.push(ppt_on(g, ppt_from)?);
    if let Some((scale, printed)) = rho {
        checks.push(Check::new("rho(0.8) against the printed matrix", 0.0, rho_deviation(g, 0.8, scale, printed)?, 1e-12));
    }
    Ok(checks)
}

fn g4_checks() -> Result<Vec<Check>, CriteriaError> {
    let g = FixtureId::G4.graph();
    let weyl = state::weyl_validity_threshold(&g).map_err(se)?;
    let grid = criteria::linear_grid(0.001, 1.0, 1000);
    let report = criteria::sweep(&g, "G4", &grid, SweepOptions { refine: true, ..Default::default() })?;
    let ph: Vec<_> = report.runs_for(Criterion::PeresHorodecki, Outcome::EntangledCertified).collect();
    let upper = ph.first().and_then(|r| r.refined).map_or(f64::NAN, |iv| iv.end);
    let ph_at = |alpha: f64| -> Result<bool, CriteriaError> {
        let s = AAlphaState::new(&g, alpha)?;
        Ok(criteria::peres_horodecki_test(&s, 1e-9)?.outcome == Outcome::EntangledCertified)
    };
    let mut checks = vec![
        Check::new("Weyl validity bound", 0.4676, weyl.alpha0, 1e-3),
        Check::new("eigenvalue entangled runs", 1.0, ph.len() as f64, 0.0),
        Check::new("upper end of the entangled run", 0.5247, upper, 1e-3),
        Check::flag("entangled at 0.4676", ph_at(0.4676)?),
        Check::flag("entangled at 0.5", ph_at(0.5)?),
        Check::flag("entangled at 0.5246", ph_at(0.5246)?),
        Check::flag("PPT at 0.5248", !ph_at(0.5248)?),
    ];
    let rho4: PrintedRho<6> = std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { (g.degrees()[i], 0.0) } else { (0.0, G4[i][j]) })
    });
    checks.push(Check::new("rho(0.5) against the printed matrix", 0.0, rho_deviation(&g, 0.5, 14.0, &rho4)?, 1e-12));
    for alpha in [0.4676, 0.5, 0.5247] {
        let v = criteria::frobenius_ppt_test(&g, alpha)?;
        checks.push(Check::flag(format!("Frobenius test inconclusive at {alpha}"), v.outcome == Outcome::Inconclusive));
        let r = alpha / (1.0 - alpha);
        checks.push(Check::new(format!("Frobenius gap at {alpha}"), 14.0 - 5.2 * r * r, v.lhs - v.rhs, 1e-9));
    }
    Ok(checks)
}

fn k4_checks() -> Result<Vec<Check>, CriteriaError> {
    let g = FixtureId::K4.graph();
    let t = state::MomentTerms::of(&g).map_err(se)?;
    let weyl = state::weyl_validity_threshold(&g).map_err(se)?;
    let threshold = criteria::alpha_threshold_simple(&g)?.unwrap_or(f64::NAN);
    let eval = Evaluator::new(&g)?;
    let grid = criteria::linear_grid(0.25, 1.0, 100);
    let mut ppt = 0;
    for &alpha in &grid {
        let p = eval.evaluate(alpha)?;
        if p.valid && p.verdict(Criterion::PeresHorodecki).unwrap().outcome == Outcome::PptCertified {
            ppt += 1;
        }
    }
    let rho1 = AAlphaState::new(&g, 1.0)?;
    let quarter = SymMatrix::identity(4).scale(0.25).map_err(|e| se(e.into()))?;
    Ok(vec![
        Check::new("d_G", 12.0, t.total_degree, 0.0),
        Check::new("sum of squared degrees", 36.0, t.sum_degree_sq, 0.0),
        Check::new("alpha threshold", 0.5, threshold, 1e-9),
        Check::new("Weyl validity bound", 0.25, weyl.alpha0, 1e-12),
        Check::new("exact validity threshold", 0.25, state::exact_validity_threshold(&g, 1e-12).map_err(se)?, 1e-9),
        Check::new("valid PPT points on 100-point grid over [0.25, 1]", 100.0, ppt as f64, 0.0),
        Check::flag("rho(1) = I/4", *rho1.rho() == quarter),
    ])
}

fn p4_checks() -> Result<Vec<Check>, CriteriaError> {
    let g = FixtureId::P4.graph();
    let grid = criteria::linear_grid(0.01, 1.0, 100);
    let report = criteria::sweep(&g, "P4", &grid, SweepOptions { refine: true, ..Default::default() })?;
    let run = |c| {
        report
            .runs_for(c, Outcome::EntangledCertified)
            .next()
            .and_then(|r| r.refined)
    };
    let (p3, ph) = (run(Criterion::P3Ppt), run(Criterion::PeresHorodecki));
    let nested = match (p3, ph) {
        (Some(a), Some(b)) => b.start <= a.start && a.end < b.end,
        _ => false,
    };
    let v = criteria::p3_ppt_test(&g, 0.5)?;
    Ok(vec![
        Check::new("third-moment entangled boundary", 0.5117, p3.map_or(f64::NAN, |iv| iv.end), 5e-3),
        Check::new("eigenvalue entangled boundary", 0.5773, ph.map_or(f64::NAN, |iv| iv.end), 5e-3),
        Check::flag("third-moment run inside the eigenvalue run", nested),
        Check::new("alpha threshold", 1.0 / (1.0 + (1.0f64 / 3.0).sqrt()), criteria::alpha_threshold_simple(&g)?.unwrap_or(f64::NAN), 1e-12),
        Check::new("(10 + 6)^2 at alpha = 0.5", 256.0, v.lhs, 1e-12),
        Check::new("108 + 144 at alpha = 0.5", 252.0, v.rhs, 1e-12),
        Check::new("exact validity threshold", 0.5, report.validity.alpha0_exact, 1e-9),
    ])
}

fn p6_checks() -> Result<Vec<Check>, CriteriaError> {
    let g = FixtureId::P6.graph();
    let rho: PrintedRho<6> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if i == j {
                (if i == 0 || i == 5 { 1.0 } else { 2.0 }, 0.0)
            } else if i.abs_diff(j) == 1 {
                (0.0, 1.0)
            } else {
                (0.0, 0.0)
            }
        })
    });
    // path spectrum: 2 cos(k pi / 7)
    let lmin = -2.0 * (std::f64::consts::PI / 7.0).cos();
    let weyl = state::weyl_validity_threshold(&g).map_err(se)?;
    Ok(vec![
        Check::new("alpha threshold", 0.691, criteria::alpha_threshold_simple(&g)?.unwrap_or(f64::NAN), 1e-3),
        Check::new("exact validity threshold", 0.5, state::exact_validity_threshold(&g, 1e-12).map_err(se)?, 1e-9),
        Check::new("Weyl validity bound", lmin / (lmin - 1.0), weyl.alpha0, 1e-12),
        Check::new("rho(0.7) against (D + beta A)/10", 0.0, rho_deviation(&g, 0.7, 10.0, &rho)?, 1e-12),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup() {
        assert_eq!(FixtureId::find("pt-g2"), Some(FixtureId::PtG2));
        assert_eq!(FixtureId::find("Pt_G1"), Some(FixtureId::PtG1));
        assert_eq!(FixtureId::find("k4"), Some(FixtureId::K4));
        assert_eq!(FixtureId::find("K5"), None);
    }

    #[test]
    fn every_fixture_passes() {
        for r in run_all().unwrap() {
            for c in &r.checks {
                assert!(c.passed(), "{}: {} expected {} got {}", r.name, c.label, c.expected, c.actual);
            }
        }
    }
}
