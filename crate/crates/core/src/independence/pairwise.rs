//! Pairwise extremal dependence scores and the thresholded dependence graph.

use serde::{Deserialize, Serialize};

use crate::angular::{threshold_top_k, AngularCloud};
use crate::error::{Error, Result};
use crate::sample::Sample;
use crate::scalar::Real;

/// Mean of `1 - |θ - (1/2, 1/2)|` over a two-dimensional cloud.
///
/// Ranges from `1 - √2/2` (all mass on the axes) to 1 (all mass on the diagonal).
pub fn pairwise_dependence<T: Real>(cloud: &AngularCloud<T>) -> Result<T> {
    if cloud.k() == 0 {
        return Err(Error::EmptySet);
    }
    if cloud.dims() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: cloud.dims() });
    }
    let half = T::lit(0.5);
    let total: T = cloud
        .points()
        .iter()
        .map(|p| {
            let (a, b) = (p.coords()[0] - half, p.coords()[1] - half);
            T::one() - (a * a + b * b).sqrt()
        })
        .sum();
    Ok(total / T::from_count(cloud.k()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DependenceGraph {
    pub column_names: Vec<String>,
    /// Symmetric score matrix with ones on the diagonal.
    pub scores: Vec<Vec<f64>>,
    pub edges: Vec<Edge>,
    pub k: usize,
    pub threshold: f64,
}

impl DependenceGraph {
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        self.edges.iter().any(|e| e.i == i && e.j == j)
    }
}

/// Scores every column pair on absolute values and keeps pairs scoring above `threshold`.
pub fn dependence_graph<T: Real>(s: &Sample<T>, k: usize, threshold: f64) -> Result<DependenceGraph> {
    let n_cols = s.dims();
    if k >= s.n() {
        return Err(Error::invalid(format!("k must be smaller than sample size (k={k}, n={})", s.n())));
    }
    let abs = s.map_values(|v| v.abs())?;
    let mut scores = vec![vec![1.0; n_cols]; n_cols];
    let mut edges = Vec::new();
    for i in 0..n_cols {
        for j in (i + 1)..n_cols {
            let pair = abs.select_columns(&[i, j])?;
            let score = pairwise_dependence(&threshold_top_k(&pair, k)?)?.as_f64();
            scores[i][j] = score;
            scores[j][i] = score;
            if score > threshold {
                edges.push(Edge { i, j, score });
            }
        }
    }
    Ok(DependenceGraph { column_names: s.column_names().to_vec(), scores, edges, k, threshold })
}
