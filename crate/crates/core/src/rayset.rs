//! Ray sets, their orthogonality graphs and complete bases.
//!
//! Vertices are the 0-based positions of rays in input order. A basis is a
//! set of `d` pairwise orthogonal rays, i.e. a `d`-clique of the graph.

use fixedbitset::FixedBitSet;

use crate::algebra::{canonicalize, is_colinear, is_orthogonal, Ray, ScalarMode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RaySet {
    name: String,
    dimension: usize,
    mode: ScalarMode,
    rays: Vec<Ray>,
}

impl RaySet {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    fn tolerance(&self) -> f64 {
        match self.mode {
            ScalarMode::Exact { .. } => 0.0,
            ScalarMode::Numeric { tolerance } => tolerance,
        }
    }

    /// The subset of rays at `keep`, in that order.
    pub fn restrict(&self, keep: &[usize]) -> RaySet {
        RaySet {
            name: self.name.clone(),
            dimension: self.dimension,
            mode: self.mode,
            rays: keep.iter().map(|&i| self.rays[i].clone()).collect(),
        }
    }

    /// A new set with `extra` appended, validated as a whole.
    pub fn extended_with(&self, extra: Vec<Ray>) -> Result<RaySet> {
        let mut rays = self.rays.clone();
        rays.extend(extra);
        validate_rayset(&self.name, self.dimension, self.mode, rays)
    }
}

/// Canonicalizes rays and rejects zero rays, colinear duplicates, and
/// inconsistent dimensions or modes.
pub fn validate_rayset(
    name: &str,
    dimension: usize,
    mode: ScalarMode,
    raw: Vec<Ray>,
) -> Result<RaySet> {
    if dimension < 3 {
        return Err(Error::DimensionTooSmall(dimension));
    }
    if raw.is_empty() {
        return Err(Error::EmptyRaySet);
    }
    let mut rays: Vec<Ray> = Vec::with_capacity(raw.len());
    for (index, ray) in raw.into_iter().enumerate() {
        if ray.dimension() != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: ray.dimension(),
            });
        }
        match (mode, ray.discriminant()) {
            (ScalarMode::Exact { discriminant }, Some(m)) if m != discriminant => {
                return Err(Error::DiscriminantMismatch {
                    left: discriminant,
                    right: m,
                })
            }
            (ScalarMode::Exact { .. }, None) | (ScalarMode::Numeric { .. }, Some(_)) => {
                return Err(Error::ModeMismatch)
            }
            _ => {}
        }
        if ray.is_zero() {
            return Err(Error::ZeroRay { index });
        }
        let ray = canonicalize(&ray)?;
        for (first, other) in rays.iter().enumerate() {
            if is_colinear(other, &ray)? {
                return Err(Error::DuplicateRay {
                    first,
                    second: index,
                });
            }
        }
        rays.push(ray);
    }
    Ok(RaySet {
        name: name.to_string(),
        dimension,
        mode,
        rays,
    })
}

/// Undirected simple graph on `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityGraph {
    adjacency: Vec<FixedBitSet>,
    edges: Vec<(usize, usize)>,
}

impl CompatibilityGraph {
    /// Builds a graph from an edge list; pairs are normalized to `i < j`
    /// and deduplicated. Self-loops are rejected.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![FixedBitSet::with_capacity(vertex_count); vertex_count];
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {a}")));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidInstance(format!(
                    "edge ({a}, {b}) out of range for {vertex_count} vertices"
                )));
            }
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        let mut edges = Vec::new();
        for (i, row) in adjacency.iter().enumerate() {
            edges.extend(row.ones().filter(|&j| j > i).map(|j| (i, j)));
        }
        Ok(CompatibilityGraph { adjacency, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Edges as `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].ones()
    }

    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones(..)
    }

    /// Induced subgraph on `keep`, relabelled to `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> CompatibilityGraph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]))
            .collect();
        CompatibilityGraph::from_edges(keep.len(), &edges).expect("induced edges are valid")
    }
}

/// Orthogonality graph: an edge joins every orthogonal pair of rays.
pub fn build_graph(rs: &RaySet) -> Result<CompatibilityGraph> {
    let tol = rs.tolerance();
    let rays = rs.rays();
    let mut edges = Vec::new();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            if is_orthogonal(&rays[i], &rays[j], tol)? {
                edges.push((i, j));
            }
        }
    }
    CompatibilityGraph::from_edges(rays.len(), &edges)
}

/// A complete basis: `d` pairwise adjacent vertices, ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis(Vec<usize>);

impl Basis {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        Basis(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

/// All `d`-cliques of `g` in lexicographic order.
///
/// Fails with [`Error::InvalidGeometry`] if some clique has more than `d`
/// vertices, which cannot happen for distinct orthogonal rays in dimension
/// `d`.
pub fn enumerate_bases(g: &CompatibilityGraph, d: usize) -> Result<Vec<Basis>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut clique = Vec::with_capacity(d);
    let mut candidates = FixedBitSet::with_capacity(n);
    candidates.insert_range(..);
    extend_clique(g, d, &mut clique, &candidates, &mut out)?;
    Ok(out)
}

fn extend_clique(
    g: &CompatibilityGraph,
    d: usize,
    clique: &mut Vec<usize>,
    candidates: &FixedBitSet,
    out: &mut Vec<Basis>,
) -> Result<()> {
    if clique.len() == d {
        let mut common = FixedBitSet::with_capacity(g.vertex_count());
        common.insert_range(..);
        for &v in clique.iter() {
            common.intersect_with(g.neighbor_set(v));
        }
        if let Some(extra) = common.ones().next() {
            let mut bad = clique.clone();
            bad.push(extra);
            bad.sort_unstable();
            return Err(Error::InvalidGeometry(bad));
        }
        out.push(Basis(clique.clone()));
        return Ok(());
    }
    let lower = clique.last().map_or(0, |&v| v + 1);
    for v in candidates.ones().filter(|&v| v >= lower) {
        let mut next = candidates.clone();
        next.intersect_with(g.neighbor_set(v));
        // not enough candidates left to reach size d
        if next.ones().filter(|&u| u > v).count() + clique.len() + 1 < d {
            continue;
        }
        clique.push(v);
        extend_clique(g, d, clique, &next, out)?;
        clique.pop();
    }
    Ok(())
}

/// A ray set (optional for abstract instances), its graph and all bases.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    rayset: Option<RaySet>,
    dimension: usize,
    graph: CompatibilityGraph,
    bases: Vec<Basis>,
    bases_of: Vec<Vec<usize>>,
}

impl ProblemInstance {
    pub fn from_rayset(rs: RaySet) -> Result<Self> {
        let graph = build_graph(&rs)?;
        let mut inst = Self::from_graph(rs.dimension(), graph)?;
        inst.rayset = Some(rs);
        Ok(inst)
    }

    /// An instance without coordinates: bases are the `d`-cliques of `graph`.
    pub fn from_graph(dimension: usize, graph: CompatibilityGraph) -> Result<Self> {
        if dimension < 3 {
            return Err(Error::DimensionTooSmall(dimension));
        }
        let bases = enumerate_bases(&graph, dimension)?;
        Ok(Self::assemble(None, dimension, graph, bases))
    }

    fn assemble(
        rayset: Option<RaySet>,
        dimension: usize,
        graph: CompatibilityGraph,
        bases: Vec<Basis>,
    ) -> Self {
        let mut bases_of = vec![Vec::new(); graph.vertex_count()];
        for (k, b) in bases.iter().enumerate() {
            for &v in b.vertices() {
                bases_of[v].push(k);
            }
        }
        ProblemInstance {
            rayset,
            dimension,
            graph,
            bases,
            bases_of,
        }
    }

    pub fn rayset(&self) -> Option<&RaySet> {
        self.rayset.as_ref()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn graph(&self) -> &CompatibilityGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    /// N, the number of complete bases.
    pub fn basis_count(&self) -> usize {
        self.bases.len()
    }

    /// Indices into [`bases`](Self::bases) of the bases containing `v`.
    pub fn bases_of(&self, v: usize) -> &[usize] {
        &self.bases_of[v]
    }

    /// Vertices that lie in at least one basis, ascending.
    pub fn covered_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| !self.bases_of[v].is_empty())
            .collect()
    }

    pub fn is_pruned(&self) -> bool {
        self.bases_of.iter().all(|b| !b.is_empty())
    }

    /// Drops every vertex that lies in no basis. Bases keep their order
    /// and are relabelled. Fails when no basis exists.
    pub fn prune_unbased(&self) -> Result<ProblemInstance> {
        let keep = self.covered_vertices();
        if keep.is_empty() {
            return Err(Error::EmptyAfterPrune);
        }
        if keep.len() == self.vertex_count() {
            return Ok(self.clone());
        }
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let graph = self.graph.induced(&keep);
        let bases = self
            .bases
            .iter()
            .map(|b| Basis(b.vertices().iter().map(|&v| index[v]).collect()))
            .collect();
        let rayset = self.rayset.as_ref().map(|rs| rs.restrict(&keep));
        Ok(Self::assemble(rayset, self.dimension, graph, bases))
    }
}
