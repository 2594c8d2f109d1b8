//! Plain-array matrix oracles and the seeded random corpus shared by the
//! integration tests. Nothing here goes through the library's own matrix
//! type, so the library formulas are checked against independent arithmetic.

#![allow(dead_code)]

use agraph::family::{GraphFamily, WeightDistribution};
use agraph::Graph;

pub type Mat = Vec<Vec<f64>>;

pub fn adjacency(g: &Graph) -> Mat {
    let n = g.n();
    let mut a = vec![vec![0.0; n]; n];
    for e in g.edges() {
        a[e.u][e.v] = e.w;
        a[e.v][e.u] = e.w;
    }
    a
}

pub fn degree_diag(a: &Mat) -> Mat {
    let n = a.len();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        d[i][i] = a[i].iter().sum();
    }
    d
}

pub fn mul(x: &Mat, y: &Mat) -> Mat {
    let n = x.len();
    let mut z = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if x[i][k] != 0.0 {
                for j in 0..n {
                    z[i][j] += x[i][k] * y[k][j];
                }
            }
        }
    }
    z
}

pub fn trace(x: &Mat) -> f64 {
    (0..x.len()).map(|i| x[i][i]).sum()
}

/// Entry `((i,k),(j,l))` goes to `((i,l),(j,k))`.
pub fn partial_transpose(x: &Mat, d1: usize, d2: usize) -> Mat {
    let n = d1 * d2;
    let mut y = vec![vec![0.0; n]; n];
    for i in 0..d1 {
        for k in 0..d2 {
            for j in 0..d1 {
                for l in 0..d2 {
                    y[i * d2 + l][j * d2 + k] = x[i * d2 + k][j * d2 + l];
                }
            }
        }
    }
    y
}

/// `(D + beta A) / d_G`.
pub fn rho(g: &Graph, alpha: f64) -> Mat {
    let a = adjacency(g);
    let d = degree_diag(&a);
    let d_g: f64 = (0..a.len()).map(|i| d[i][i]).sum();
    let beta = (1.0 - alpha) / alpha;
    (0..a.len())
        .map(|i| (0..a.len()).map(|j| (d[i][j] + beta * a[i][j]) / d_g).collect())
        .collect()
}

/// `(tr R^2, tr R^3)` for `R = rho^{T_B}`.
pub fn pt_moments(g: &Graph, alpha: f64) -> (f64, f64) {
    let r = partial_transpose(&rho(g, alpha), g.d1(), g.d2());
    let r2 = mul(&r, &r);
    (trace(&r2), trace(&mul(&r2, &r)))
}

pub const SHAPES: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 3)];

/// `per_shape` seeded random graphs for each of 2x2, 2x3 and 3x3, with edge
/// density cycling through 0.2..=0.8. Edgeless draws are skipped by bumping
/// the seed.
pub fn corpus(per_shape: u64, weights: WeightDistribution) -> Vec<Graph> {
    let mut out = Vec::new();
    for (d1, d2) in SHAPES {
        let mut seed = 1000 * (d1 * d2) as u64;
        for k in 0..per_shape {
            let density = 0.2 + 0.1 * (k % 7) as f64;
            loop {
                let mut fam = GraphFamily::random(d1 * d2, seed, density);
                fam.weights = weights;
                seed += 1;
                let g = fam.generate(d1, d2).unwrap();
                if g.edge_count() > 0 {
                    out.push(g);
                    break;
                }
            }
        }
    }
    out
}

pub fn alphas() -> impl Iterator<Item = f64> {
    (1..=10).map(|k| k as f64 / 10.0)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

#[derive(Debug, Default)]
pub struct SuiteStats {
    pub graphs: usize,
    pub evaluations: usize,
    pub max_p2_delta: f64,
    pub max_p3_delta: f64,
    pub max_oracle_p2_delta: f64,
    pub max_oracle_p3_delta: f64,
    pub max_lemma_rel_err: [f64; 3],
    pub soundness_violations: Vec<String>,
    pub equivalence_violations: Vec<String>,
}

/// Moment formulas, Lemma identities and criterion soundness on `graphs`.
pub fn oracle_suite(graphs: &[Graph]) -> SuiteStats {
    use agraph::criteria::{Criterion, Evaluator, Outcome};
    use agraph::state::MomentTerms;

    let mut s = SuiteStats {
        graphs: graphs.len(),
        ..Default::default()
    };
    for (gi, g) in graphs.iter().enumerate() {
        let a = adjacency(g);
        let at = partial_transpose(&a, g.d1(), g.d2());
        let at2 = mul(&at, &at);
        let terms = MomentTerms::of(g).unwrap();
        let lemma = [
            (terms.frobenius_sq, trace(&at2)),
            (6.0 * terms.pt_triangle_weight, trace(&mul(&at2, &at))),
            (terms.swapped_degree_sum, trace(&mul(&degree_diag(&a), &at2))),
        ];
        for (k, (got, want)) in lemma.into_iter().enumerate() {
            let err = (got - want).abs() / want.abs().max(1.0);
            s.max_lemma_rel_err[k] = s.max_lemma_rel_err[k].max(err);
        }

        let eval = Evaluator::new(g).unwrap();
        for alpha in alphas() {
            let p = eval.evaluate(alpha).unwrap();
            s.evaluations += 1;
            s.max_p2_delta = s.max_p2_delta.max(p.moments.p2_delta);
            s.max_p3_delta = s.max_p3_delta.max(p.moments.p3_delta);
            let (o2, o3) = pt_moments(g, alpha);
            s.max_oracle_p2_delta = s.max_oracle_p2_delta.max((p.moments.p2_graph - o2).abs());
            s.max_oracle_p3_delta = s.max_oracle_p3_delta.max((p.moments.p3_graph - o3).abs());

            let outcome = |c| p.verdict(c).map(|v| v.outcome);
            let ph = outcome(Criterion::PeresHorodecki).unwrap();
            if p.valid {
                for c in [Criterion::FrobeniusPpt, Criterion::AlphaThreshold, Criterion::SecondMomentPpt] {
                    if outcome(c) == Some(Outcome::PptCertified) && ph != Outcome::PptCertified {
                        s.soundness_violations.push(format!("graph {gi} alpha {alpha}: {c} certified PPT, eigenvalue test says {ph}"));
                    }
                }
                if outcome(Criterion::P3Ppt) == Some(Outcome::EntangledCertified) && ph != Outcome::EntangledCertified {
                    s.soundness_violations.push(format!("graph {gi} alpha {alpha}: p3 certified entanglement, eigenvalue test says {ph}"));
                }
            }
            if alpha < 1.0 && outcome(Criterion::FrobeniusPpt) != outcome(Criterion::SecondMomentPpt) {
                s.equivalence_violations.push(format!("graph {gi} alpha {alpha}: frobenius and second-moment tests disagree"));
            }
        }
    }
    s
}
