//! Serializable analysis reports and their JSON, CSV and text renderings.
//!
//! Floats are written at 12 significant digits and field order is fixed, so
//! the same input always produces the same bytes and a report read back from
//! JSON serializes to identical output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::criteria::{
    self, CriteriaError, Evaluator, Interval, PointEvaluation, Run, SweepOptions,
};
use crate::graph::Graph;
use crate::state::{self, MomentTerms, ValidityInterval};

pub const SCHEMA_VERSION: &str = "agraph-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    #[serde(with = "crate::num")]
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub d1: usize,
    pub d2: usize,
    pub vertices: usize,
    pub edge_count: usize,
    pub unweighted: bool,
    pub connected: bool,
    /// In 2x2 and 2x3 a positive partial transpose already means separable.
    pub ppt_implies_separable: bool,
    pub edges: Vec<EdgeRecord>,
    #[serde(with = "crate::num::vec")]
    pub degrees: Vec<f64>,
    pub moment_terms: MomentTerms,
}

impl GraphSummary {
    pub fn of(graph: &Graph) -> Result<Self, CriteriaError> {
        let (d1, d2) = (graph.d1(), graph.d2());
        Ok(Self {
            d1,
            d2,
            vertices: graph.n(),
            edge_count: graph.edge_count(),
            unweighted: graph.is_unweighted(),
            connected: graph.is_connected(),
            ppt_implies_separable: d1.min(d2) == 1 || d1 * d2 <= 6,
            edges: graph.edges().map(|e| EdgeRecord { u: e.u, v: e.v, w: e.w }).collect(),
            degrees: graph.degrees(),
            moment_terms: MomentTerms::of(graph)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    #[serde(with = "crate::num")]
    pub start: f64,
    #[serde(with = "crate::num")]
    pub end: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Analysis {
    Point {
        point: PointEvaluation,
    },
    Sweep {
        grid: GridSpec,
        refined: bool,
        points: Vec<PointEvaluation>,
        validity_runs: Vec<Interval>,
        runs: Vec<Run>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    pub label: String,
    pub graph: GraphSummary,
    pub validity: ValidityInterval,
    #[serde(with = "crate::num::opt")]
    pub alpha_threshold: Option<f64>,
    pub analysis: Analysis,
}

impl AnalysisReport {
    /// Every criterion at a single alpha.
    pub fn point(graph: &Graph, label: &str, alpha: f64, tol: f64) -> Result<Self, CriteriaError> {
        let eval = Evaluator::with_tol(graph, tol)?;
        let point = eval.evaluate(alpha)?;
        Ok(Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            label: label.to_owned(),
            graph: GraphSummary::of(graph)?,
            validity: state::validity_interval(graph, state::DEFAULT_THRESHOLD_TOL)?,
            alpha_threshold: eval.alpha_threshold(),
            analysis: Analysis::Point { point },
        })
    }

    /// A sweep over `count` evenly spaced alphas from `start` to `end`.
    pub fn sweep(graph: &Graph, label: &str, grid: GridSpec, opts: SweepOptions) -> Result<Self, CriteriaError> {
        let alphas = criteria::linear_grid(grid.start, grid.end, grid.count);
        let r = criteria::sweep(graph, label, &alphas, opts)?;
        Ok(Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            label: r.label,
            graph: GraphSummary::of(graph)?,
            validity: r.validity,
            alpha_threshold: r.alpha_threshold,
            analysis: Analysis::Sweep {
                grid,
                refined: opts.refine,
                points: r.points,
                validity_runs: r.validity_runs,
                runs: r.runs,
            },
        })
    }

    pub fn points(&self) -> &[PointEvaluation] {
        match &self.analysis {
            Analysis::Point { point } => std::slice::from_ref(point),
            Analysis::Sweep { points, .. } => points,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// One row per (alpha, criterion).
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "alpha,beta,valid_state,rho_min_eigenvalue,pt_min_eigenvalue,p2,p3,criterion,outcome,lhs,rhs\n",
        );
        for p in self.points() {
            for v in &p.verdicts {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    num(p.alpha),
                    num(p.beta),
                    p.valid,
                    num(p.rho_min_eigenvalue),
                    num(p.pt_min_eigenvalue),
                    num(p.moments.p2_graph),
                    num(p.moments.p3_graph),
                    v.criterion,
                    v.outcome,
                    num(v.lhs),
                    num(v.rhs),
                );
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        let _ = writeln!(out, "{} ({}x{}, {} edges{})", self.label, g.d1, g.d2, g.edge_count, if g.unweighted { "" } else { ", weighted" });
        let v = &self.validity;
        let _ = writeln!(out, "lambda_min(A)      {}", num(v.lambda_min_adjacency));
        let _ = writeln!(out, "valid for alpha in [{}, 1] (Weyl bound {}{})", num(v.alpha0_exact), num(v.alpha0_weyl), if v.weyl_isolated_vertex { ", isolated vertex" } else { "" });
        match self.alpha_threshold {
            Some(t) => {
                let _ = writeln!(out, "alpha threshold    {}", num(t));
            }
            None if g.unweighted => {
                let _ = writeln!(out, "alpha threshold    none");
            }
            None => {}
        }
        match &self.analysis {
            Analysis::Point { point } => {
                out.push('\n');
                write_point(&mut out, point);
            }
            Analysis::Sweep { grid, points, validity_runs, runs, refined } => {
                let _ = writeln!(out, "\nsweep {}:{}:{}{}", num(grid.start), num(grid.end), grid.count, if *refined { " (refined)" } else { "" });
                let worst = points.iter().map(|p| p.moments.p2_delta.max(p.moments.p3_delta)).fold(0.0, f64::max);
                let _ = writeln!(out, "max moment delta   {:.3e}", worst);
                for r in validity_runs {
                    let _ = writeln!(out, "valid              [{}, {}]", num(r.start), num(r.end));
                }
                for r in runs {
                    let iv = r.refined.unwrap_or(r.grid);
                    let _ = writeln!(out, "{:<18} {:<19} [{}, {}]", r.criterion.as_str(), r.outcome.as_str(), num(iv.start), num(iv.end));
                }
            }
        }
        out
    }
}

fn write_point(out: &mut String, p: &PointEvaluation) {
    let _ = writeln!(out, "alpha {}  beta {}  {}", num(p.alpha), num(p.beta), if p.valid { "valid state" } else { "NOT a valid state" });
    let _ = writeln!(out, "lambda_min(rho)    {}", num(p.rho_min_eigenvalue));
    let _ = writeln!(out, "lambda_min(rho^TB) {}", num(p.pt_min_eigenvalue));
    let _ = writeln!(out, "p2 {} (delta {:.1e})  p3 {} (delta {:.1e})", num(p.moments.p2_graph), p.moments.p2_delta, num(p.moments.p3_graph), p.moments.p3_delta);
    for v in &p.verdicts {
        let _ = writeln!(out, "{:<18} {:<19} lhs {}  rhs {}", v.criterion.as_str(), v.outcome.as_str(), num(v.lhs), num(v.rhs));
    }
}

fn num(x: f64) -> String {
    crate::num::fmt12(x)
}
