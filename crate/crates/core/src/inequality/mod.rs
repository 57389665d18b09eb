//! The noncontextuality inequality induced by a KS set.
//!
//! Each vertex is weighted by the number of complete bases covering it and
//! each orthogonal pair by the larger of its endpoint weights. Classically
//! the functional is bounded by the weighted independence number α(G, w);
//! quantum mechanically it equals the number of bases N for every state,
//! since the weighted projectors sum to N times the identity.

mod alpha;
mod quantum;

pub use alpha::{
    brute_force_alpha, weighted_independence_number, weighted_independence_number_with,
    AlphaBound, BRUTE_FORCE_LIMIT,
};
pub use quantum::{
    operator_sum_check, quantum_value, random_pure_state, validate_density_matrix, StateSpec,
    STATE_TOLERANCE,
};

use crate::coloring::{check_colorable, DefinitionMode};
use crate::error::{Error, Result};
use crate::rayset::{CompatibilityGraph, ProblemInstance};

/// Per-vertex basis cover counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(weights: Vec<u64>) -> Self {
        WeightVector(weights)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

pub fn compute_weights(inst: &ProblemInstance) -> WeightVector {
    WeightVector(
        (0..inst.vertex_count())
            .map(|v| inst.bases_of(v).len() as u64)
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeTerm {
    pub i: usize,
    pub j: usize,
    pub weight: u64,
}

/// `w_ij = max(w_i, w_j)` on every edge, in edge order.
pub fn edge_weights(weights: &WeightVector, g: &CompatibilityGraph) -> Vec<EdgeTerm> {
    let w = weights.as_slice();
    g.edges()
        .iter()
        .map(|&(i, j)| EdgeTerm {
            i,
            j,
            weight: w[i].max(w[j]),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    vertex_weights: Vec<u64>,
    edge_terms: Vec<EdgeTerm>,
    classical_bound: u64,
    quantum_value: u64,
}

impl Inequality {
    /// Assembles an inequality from parts, checking `w_ij ≥ max(w_i, w_j)`
    /// and edge ranges. Terms are sorted.
    pub fn from_parts(
        vertex_weights: Vec<u64>,
        mut edge_terms: Vec<EdgeTerm>,
        classical_bound: u64,
        quantum_value: u64,
    ) -> Result<Self> {
        let n = vertex_weights.len();
        for t in &edge_terms {
            if t.i >= t.j || t.j >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({}, {}) is not an ordered pair of vertices below {n}",
                    t.i, t.j
                )));
            }
            if t.weight < vertex_weights[t.i].max(vertex_weights[t.j]) {
                return Err(Error::InvalidInstance(format!(
                    "edge ({}, {}) weight {} is below its endpoint weights",
                    t.i, t.j, t.weight
                )));
            }
        }
        edge_terms.sort();
        Ok(Inequality {
            vertex_weights,
            edge_terms,
            classical_bound,
            quantum_value,
        })
    }

    pub fn vertex_weights(&self) -> &[u64] {
        &self.vertex_weights
    }

    pub fn edge_terms(&self) -> &[EdgeTerm] {
        &self.edge_terms
    }

    /// α(G, w), the maximum over noncontextual assignments.
    pub fn classical_bound(&self) -> u64 {
        self.classical_bound
    }

    /// N, the value reached by every quantum state.
    pub fn quantum_value(&self) -> u64 {
        self.quantum_value
    }

    pub fn gap(&self) -> u64 {
        self.quantum_value.saturating_sub(self.classical_bound)
    }
}

/// Builds the inequality for a pruned instance.
pub fn build_inequality(inst: &ProblemInstance) -> Result<Inequality> {
    build_inequality_with(inst, AlphaBound::default())
}

pub fn build_inequality_with(inst: &ProblemInstance, bound: AlphaBound) -> Result<Inequality> {
    if inst.basis_count() == 0 {
        return Err(Error::NoBasis);
    }
    let weights = compute_weights(inst);
    if let Some(vertex) = weights.as_slice().iter().position(|&w| w == 0) {
        return Err(Error::Unpruned { vertex });
    }
    let edges = edge_weights(&weights, inst.graph());
    let alpha = weighted_independence_number_with(inst.graph(), weights.as_slice(), bound)?;
    Ok(Inequality {
        vertex_weights: weights.0,
        edge_terms: edges,
        classical_bound: alpha,
        quantum_value: inst.basis_count() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    /// N
    pub basis_count: u64,
    pub alpha: u64,
    /// N − α
    pub gap: u64,
    /// Decided independently by the coloring search.
    pub is_original_ks: bool,
}

pub fn gap_report(inst: &ProblemInstance) -> Result<GapReport> {
    let ineq = build_inequality(inst)?;
    let coloring = check_colorable(inst, DefinitionMode::Original)?;
    Ok(GapReport {
        basis_count: ineq.quantum_value,
        alpha: ineq.classical_bound,
        gap: ineq.gap(),
        is_original_ks: !coloring.is_colorable(),
    })
}
