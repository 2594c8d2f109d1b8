//! The density matrix `rho = (D + beta A) / d_G` with `beta = (1 - alpha) / alpha`,
//! its validity range in `alpha`, and the second and third moments of its
//! partial transpose.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::spectral::{SpectralError, SymMatrix};

/// Default bracket width for [`exact_validity_threshold`].
pub const DEFAULT_THRESHOLD_TOL: f64 = 1e-12;
const BISECTION_MAX_ITERS: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("graph has no edges (d_G = 0)")]
    Edgeless,
    #[error("alpha = {0} outside (0, 1]")]
    AlphaOutOfRange(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

pub fn check_alpha(alpha: f64) -> Result<(), StateError> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(StateError::AlphaOutOfRange(alpha))
    }
}

/// `(1 - alpha) / alpha`.
#[inline]
pub fn beta(alpha: f64) -> f64 {
    (1.0 - alpha) / alpha
}

/// Inverse of [`beta`].
#[inline]
pub fn alpha_from_beta(beta: f64) -> f64 {
    1.0 / (1.0 + beta)
}

/// A graph together with a mixing parameter and the materialized density matrix.
#[derive(Debug, Clone)]
pub struct AAlphaState {
    graph: Graph,
    alpha: f64,
    beta: f64,
    rho: SymMatrix,
}

impl AAlphaState {
    /// Builds `rho` for `alpha` in `(0, 1]`. Positivity is not required here;
    /// ask [`AAlphaState::is_valid`] or [`validity_interval`].
    pub fn new(graph: &Graph, alpha: f64) -> Result<Self, StateError> {
        check_alpha(alpha)?;
        let d_g = graph.total_degree();
        if d_g <= 0.0 {
            return Err(StateError::Edgeless);
        }
        let beta = beta(alpha);
        let degrees = graph.degrees();
        let rho = SymMatrix::from_upper(graph.n(), |i, j| {
            if i == j {
                degrees[i] / d_g
            } else {
                graph.weight(i, j).map_or(0.0, |w| beta * w / d_g)
            }
        })?;
        Ok(Self {
            graph: graph.clone(),
            alpha,
            beta,
            rho,
        })
    }

    /// Same as [`AAlphaState::new`] after re-splitting the vertices as `d1 x d2`.
    pub fn with_dims(graph: &Graph, alpha: f64, d1: usize, d2: usize) -> Result<Self, StateError> {
        Self::new(&graph.with_bipartition(d1, d2)?, alpha)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rho(&self) -> &SymMatrix {
        &self.rho
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.graph.d1(), self.graph.d2())
    }

    pub fn partial_transpose(&self) -> SymMatrix {
        let (d1, d2) = self.dims();
        self.rho.partial_transpose(d1, d2).expect("rho is n x n with n = d1 d2")
    }

    pub fn is_valid(&self, tol: f64) -> Result<bool, StateError> {
        Ok(self.rho.is_psd(tol)?)
    }

    /// `tr((rho^{T_B})^2)` from the matrix.
    pub fn p2_direct(&self) -> f64 {
        self.partial_transpose().trace_power(2).expect("k = 2")
    }

    /// `tr((rho^{T_B})^3)` from the matrix.
    pub fn p3_direct(&self) -> f64 {
        self.partial_transpose().trace_power(3).expect("k = 3")
    }
}

/// The graph invariants that the moment formulas are built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTerms {
    #[serde(with = "crate::num")]
    pub total_degree: f64,
    #[serde(with = "crate::num")]
    pub sum_degree_sq: f64,
    #[serde(with = "crate::num")]
    pub sum_degree_cube: f64,
    #[serde(with = "crate::num")]
    pub frobenius_sq: f64,
    /// `tr(D (A^{T_B})^2)` evaluated edge by edge.
    #[serde(with = "crate::num")]
    pub swapped_degree_sum: f64,
    /// Weighted triangle sum of the partial-transpose graph.
    #[serde(with = "crate::num")]
    pub pt_triangle_weight: f64,
}

impl MomentTerms {
    pub fn of(graph: &Graph) -> Result<Self, StateError> {
        let total_degree = graph.total_degree();
        if total_degree <= 0.0 {
            return Err(StateError::Edgeless);
        }
        let degrees = graph.degrees();
        Ok(Self {
            total_degree,
            sum_degree_sq: degrees.iter().map(|d| d * d).sum(),
            sum_degree_cube: degrees.iter().map(|d| d * d * d).sum(),
            frobenius_sq: graph.frobenius_norm_sq(),
            swapped_degree_sum: graph.swapped_degree_weight_sum(),
            pt_triangle_weight: graph.partial_transpose()?.triangle_weight_sum(),
        })
    }

    /// `sum d^2 + beta^2 ||A||_F^2`, i.e. `d_G^2 p2`.
    pub fn p2_numerator(&self, alpha: f64) -> f64 {
        let b = beta(alpha);
        self.sum_degree_sq + b * b * self.frobenius_sq
    }

    /// `sum d^3 + 3 beta^2 S + 6 beta^3 T`, i.e. `d_G^3 p3`.
    pub fn p3_numerator(&self, alpha: f64) -> f64 {
        let b = beta(alpha);
        self.sum_degree_cube
            + 3.0 * b * b * self.swapped_degree_sum
            + 6.0 * b * b * b * self.pt_triangle_weight
    }

    pub fn p2(&self, alpha: f64) -> f64 {
        self.p2_numerator(alpha) / (self.total_degree * self.total_degree)
    }

    pub fn p3(&self, alpha: f64) -> f64 {
        self.p3_numerator(alpha) / self.total_degree.powi(3)
    }
}

/// Second moment of the partial transpose from graph invariants.
pub fn p2_graph(graph: &Graph, alpha: f64) -> Result<f64, StateError> {
    check_alpha(alpha)?;
    Ok(MomentTerms::of(graph)?.p2(alpha))
}

/// Third moment of the partial transpose from graph invariants.
pub fn p3_graph(graph: &Graph, alpha: f64) -> Result<f64, StateError> {
    check_alpha(alpha)?;
    Ok(MomentTerms::of(graph)?.p3(alpha))
}

/// The sufficient positivity bound `alpha_0 = lambda_min(A) / (lambda_min(A) - delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeylBound {
    #[serde(with = "crate::num")]
    pub alpha0: f64,
    #[serde(with = "crate::num")]
    pub lambda_min: f64,
    #[serde(with = "crate::num")]
    pub min_degree: f64,
    /// Some vertex has degree zero, which collapses the bound to `alpha_0 = 1`.
    pub isolated_vertex: bool,
}

pub fn weyl_validity_threshold(graph: &Graph) -> Result<WeylBound, StateError> {
    if graph.edge_count() == 0 {
        return Err(StateError::Edgeless);
    }
    let lambda_min = graph.adjacency_matrix().min_eigenvalue()?;
    let min_degree = graph.min_degree();
    let isolated_vertex = min_degree <= 0.0;
    // A has zero trace and is non-zero, so lambda_min < 0
    let alpha0 = if isolated_vertex {
        1.0
    } else {
        lambda_min / (lambda_min - min_degree)
    };
    Ok(WeylBound {
        alpha0,
        lambda_min,
        min_degree,
        isolated_vertex,
    })
}

/// Smallest `alpha` with `rho` PSD on all of `[alpha, 1]`, to within `tol`.
///
/// `lambda_min(D + beta A)` is concave in `beta` and non-negative at `beta = 0`,
/// so the PSD set in `beta` is one interval `[0, beta*]`. Every edge `(u, v)`
/// gives a 2x2 principal minor that turns negative past
/// `sqrt(d_u d_v) / w_uv`, which brackets `beta*` from above. The returned
/// value is on the PSD side of the bracket.
pub fn exact_validity_threshold(graph: &Graph, tol: f64) -> Result<f64, StateError> {
    if graph.edge_count() == 0 {
        return Err(StateError::Edgeless);
    }
    let a = graph.adjacency_matrix();
    let d = graph.degree_matrix();
    let degrees = graph.degrees();
    let max_degree = degrees.iter().copied().fold(0.0, f64::max);
    let floor = -1e-13 * max_degree;
    let psd = |b: f64| -> Result<bool, StateError> { Ok(d.add_scaled(b, &a)?.min_eigenvalue()? >= floor) };

    let mut hi = graph
        .edges()
        .map(|e| (degrees[e.u] * degrees[e.v]).sqrt() / e.w)
        .fold(f64::INFINITY, f64::min);
    let mut lo = 0.0;
    if psd(hi)? {
        // only reachable when the minor bound is exactly tight
        lo = hi;
        hi *= 2.0;
        while psd(hi)? {
            lo = hi;
            hi *= 2.0;
        }
    }
    let width = tol.max(f64::EPSILON);
    for _ in 0..BISECTION_MAX_ITERS {
        if hi - lo <= width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if psd(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(alpha_from_beta(lo))
}

/// The range of `alpha` for which `rho` is a density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidityInterval {
    /// Sufficient bound from Weyl's inequality.
    #[serde(with = "crate::num")]
    pub alpha0_weyl: f64,
    /// Bisection on the smallest eigenvalue.
    #[serde(with = "crate::num")]
    pub alpha0_exact: f64,
    #[serde(with = "crate::num")]
    pub upper: f64,
    #[serde(with = "crate::num")]
    pub lambda_min_adjacency: f64,
    #[serde(with = "crate::num")]
    pub min_degree: f64,
    pub weyl_isolated_vertex: bool,
}

impl ValidityInterval {
    pub fn contains(&self, alpha: f64) -> bool {
        alpha >= self.alpha0_exact && alpha <= self.upper
    }
}

pub fn validity_interval(graph: &Graph, tol: f64) -> Result<ValidityInterval, StateError> {
    let weyl = weyl_validity_threshold(graph)?;
    let exact = exact_validity_threshold(graph, tol)?;
    Ok(ValidityInterval {
        alpha0_weyl: weyl.alpha0,
        alpha0_exact: exact.min(weyl.alpha0),
        upper: 1.0,
        lambda_min_adjacency: weyl.lambda_min,
        min_degree: weyl.min_degree,
        weyl_isolated_vertex: weyl.isolated_vertex,
    })
}
