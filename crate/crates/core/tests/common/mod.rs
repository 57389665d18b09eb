//! Independent oracles and random instance generators shared by the
//! integration suites. Nothing here calls into the search, clique or
//! branch-and-bound code it is used to check.

#![allow(dead_code)]

use ks_certify::algebra::{QuadScalar, Ray};
use ks_certify::cli::catalog;
use ks_certify::coloring::DefinitionMode;
use ks_certify::rayset::{CompatibilityGraph, ProblemInstance, RaySet};
use rand::Rng;

pub fn catalog_instance(id: &str) -> ProblemInstance {
    ProblemInstance::from_rayset(catalog::get(id).expect("catalog id").rayset()).unwrap()
}

pub fn float_rays(rs: &RaySet) -> Vec<Vec<f64>> {
    rs.rays().iter().map(Ray::to_f64).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Orthogonal pairs by a plain floating-point scan.
pub fn float_edges(rs: &RaySet) -> Vec<(usize, usize)> {
    let r = float_rays(rs);
    let mut out = Vec::new();
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            let scale = dot(&r[i], &r[i]).sqrt() * dot(&r[j], &r[j]).sqrt();
            if dot(&r[i], &r[j]).abs() <= 1e-9 * scale {
                out.push((i, j));
            }
        }
    }
    out
}

/// Every triple of pairwise orthogonal rays, by exhaustive scan (d = 3).
pub fn float_triads(rs: &RaySet) -> Vec<[usize; 3]> {
    let edges = float_edges(rs);
    let adj = |a: usize, b: usize| edges.binary_search(&(a.min(b), a.max(b))).is_ok();
    let n = rs.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if adj(a, b) && adj(a, c) && adj(b, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Whether `Σ_{u∈b} |u><u|/<u|u>` is the identity, numerically.
pub fn projectors_sum_to_identity(rs: &RaySet, basis: &[usize], tol: f64) -> bool {
    let r = float_rays(rs);
    let d = rs.dimension();
    let mut m = vec![0.0; d * d];
    for &v in basis {
        let n2 = dot(&r[v], &r[v]);
        for a in 0..d {
            for b in 0..d {
                m[a * d + b] += r[v][a] * r[v][b] / n2;
            }
        }
    }
    (0..d).all(|a| (0..d).all(|b| (m[a * d + b] - if a == b { 1.0 } else { 0.0 }).abs() <= tol))
}

pub fn basis_masks(inst: &ProblemInstance) -> Vec<u32> {
    inst.bases()
        .iter()
        .map(|b| b.vertices().iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect()
}

pub fn adjacency_masks(g: &CompatibilityGraph) -> Vec<u32> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | (1 << u)))
        .collect()
}

/// Colorability by enumerating all `2^n` assignments (n ≤ 24).
pub fn brute_force_colorable(inst: &ProblemInstance, mode: DefinitionMode) -> bool {
    let n = inst.vertex_count();
    assert!(n <= 24, "brute force limited to 24 vertices");
    let bases = basis_masks(inst);
    let adj = adjacency_masks(inst.graph());
    (0u32..(1 << n)).any(|mask| {
        bases.iter().all(|b| (b & mask).count_ones() == 1)
            && (mode == DefinitionMode::Extended
                || (0..n).all(|v| mask & (1 << v) == 0 || adj[v] & mask == 0))
    })
}

/// Backtracking without propagation: assign vertices in order and check a
/// constraint only once all of its vertices are assigned.
pub fn naive_colorable(inst: &ProblemInstance, mode: DefinitionMode) -> bool {
    let n = inst.vertex_count();
    let bases: Vec<Vec<usize>> = inst.bases().iter().map(|b| b.vertices().to_vec()).collect();
    let edges = inst.graph().edges().to_vec();
    // constraints that become fully assigned at vertex v (their max index)
    let mut closing_bases = vec![Vec::new(); n];
    for (k, b) in bases.iter().enumerate() {
        closing_bases[*b.iter().max().unwrap()].push(k);
    }
    let mut closing_edges = vec![Vec::new(); n];
    for &(a, b) in &edges {
        closing_edges[b].push(a);
    }
    fn go(
        v: usize,
        f: &mut Vec<bool>,
        bases: &[Vec<usize>],
        cb: &[Vec<usize>],
        ce: &[Vec<usize>],
        original: bool,
    ) -> bool {
        if v == f.len() {
            return true;
        }
        for value in [true, false] {
            f[v] = value;
            let bases_ok = cb[v]
                .iter()
                .all(|&k| bases[k].iter().filter(|&&u| f[u]).count() == 1);
            let edges_ok = !original || !value || ce[v].iter().all(|&u| !f[u]);
            // prune partial bases that already hold two 1s
            let partial_ok = bases.iter().all(|b| b.iter().filter(|&&u| u <= v && f[u]).count() <= 1);
            if bases_ok && edges_ok && partial_ok && go(v + 1, f, bases, cb, ce, original) {
                return true;
            }
        }
        false
    }
    let mut f = vec![false; n];
    go(
        0,
        &mut f,
        &bases,
        &closing_bases,
        &closing_edges,
        mode == DefinitionMode::Original,
    )
}

/// A random abstract instance in dimension 3 with at most `max_vertices`
/// vertices and `1..=max_bases` bases (triangles). Half of the draws are
/// unstructured (random triangles plus sparse extra edges); the other half
/// are steered towards uncolorability by [`hard_instance`], so both verdicts
/// show up in a batch.
pub fn random_instance<R: Rng>(rng: &mut R, max_vertices: usize, max_bases: usize) -> ProblemInstance {
    if max_vertices >= 6 && max_bases >= 3 && rng.gen_bool(0.5) {
        let mode = if rng.gen_bool(0.5) {
            DefinitionMode::Original
        } else {
            DefinitionMode::Extended
        };
        hard_instance(rng, max_vertices.min(12), max_bases, mode)
    } else {
        plain_instance(rng, max_vertices, max_bases)
    }
}

/// Random triangles plus a few extra orthogonality edges. Candidates whose
/// graph has a 4-clique or too many triangles are redrawn.
pub fn plain_instance<R: Rng>(rng: &mut R, max_vertices: usize, max_bases: usize) -> ProblemInstance {
    loop {
        let k = rng.gen_range(1..=max_bases);
        let n = rng.gen_range(3..=max_vertices.min(3 * k));
        let mut edges = Vec::new();
        for _ in 0..k {
            let t = distinct_triple(rng, n);
            edges.extend([(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]);
        }
        let extra_p: f64 = rng.gen_range(0.0..0.25);
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(extra_p) {
                    edges.push((a, b));
                }
            }
        }
        let g = CompatibilityGraph::from_edges(n, &edges).unwrap();
        match ProblemInstance::from_graph(3, g) {
            Ok(inst) if inst.basis_count() >= 1 && inst.basis_count() <= max_bases => return inst,
            _ => continue,
        }
    }
}

fn distinct_triple<R: Rng>(rng: &mut R, n: usize) -> [usize; 3] {
    loop {
        let t = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
        if t[0] != t[1] && t[1] != t[2] && t[0] != t[2] {
            return t;
        }
    }
}

/// Triangles of a graph given as adjacency masks, or `None` when the graph
/// contains a 4-clique.
fn triangle_masks(adj: &[u32]) -> Option<Vec<u32>> {
    let n = adj.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if adj[a] & (1 << b) == 0 {
                continue;
            }
            for c in b + 1..n {
                if adj[a] & adj[b] & (1 << c) != 0 {
                    if adj[a] & adj[b] & adj[c] != 0 {
                        return None;
                    }
                    out.push((1 << a) | (1 << b) | (1 << c));
                }
            }
        }
    }
    Some(out)
}

/// Number of valid assignments, by enumerating all `2^n` masks.
fn count_colorings(adj: &[u32], bases: &[u32], mode: DefinitionMode) -> usize {
    let n = adj.len();
    (0u32..(1 << n))
        .filter(|&mask| {
            bases.iter().all(|b| (b & mask).count_ones() == 1)
                && (mode == DefinitionMode::Extended
                    || (0..n).all(|v| mask & (1 << v) == 0 || adj[v] & mask == 0))
        })
        .count()
}

/// Local search over graphs on `6..=max_vertices` vertices: toggle one edge
/// at a time, keeping the graph 4-clique free with `1..=max_bases`
/// triangles, and accept moves that do not increase the brute-force count
/// of valid assignments in `mode`. Stops as soon as the count reaches zero
/// or after a fixed number of steps, so the result may still be colorable.
pub fn hard_instance<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_bases: usize,
    mode: DefinitionMode,
) -> ProblemInstance {
    const STEPS: usize = 400;
    assert!((6..=16).contains(&max_vertices));
    let n = rng.gen_range(6..=max_vertices);
    let admissible = |adj: &[u32]| triangle_masks(adj).filter(|t| !t.is_empty() && t.len() <= max_bases);
    let (mut adj, mut bases) = loop {
        let mut adj = vec![0u32; n];
        for _ in 0..rng.gen_range(3..=max_bases.min(7)) {
            let t = distinct_triple(rng, n);
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        if let Some(bases) = admissible(&adj) {
            break (adj, bases);
        }
    };
    let mut count = count_colorings(&adj, &bases, mode);
    for _ in 0..STEPS {
        if count == 0 {
            break;
        }
        let [a, b, _] = distinct_triple(rng, n);
        let mut next = adj.clone();
        next[a] ^= 1 << b;
        next[b] ^= 1 << a;
        if let Some(next_bases) = admissible(&next) {
            let c = count_colorings(&next, &next_bases, mode);
            if c <= count {
                adj = next;
                bases = next_bases;
                count = c;
            }
        }
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| adj[a] & (1 << b) != 0)
        .collect();
    let inst = ProblemInstance::from_graph(3, CompatibilityGraph::from_edges(n, &edges).unwrap()).unwrap();
    debug_assert_eq!(inst.basis_count(), bases.len());
    inst
}

/// `G(n, p)` with integer weights in `1..=9`.
pub fn random_weighted_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> (CompatibilityGraph, Vec<u64>) {
    let n = rng.gen_range(1..=max_vertices);
    let p: f64 = rng.gen_range(0.2..=0.6);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let w = (0..n).map(|_| rng.gen_range(1..=9)).collect();
    (CompatibilityGraph::from_edges(n, &edges).unwrap(), w)
}

fn q(a: i64, b: i64, m: u32) -> QuadScalar {
    QuadScalar::new(a, b, m).unwrap()
}

/// Exact cross product of two 3-vectors over ℤ[√m].
pub fn cross(u: &Ray, v: &Ray) -> Ray {
    let a = u.exact_coords().unwrap();
    let b = v.exact_coords().unwrap();
    let c = |i: usize, j: usize| a[i].mul(&b[j]).unwrap().sub(&a[j].mul(&b[i]).unwrap()).unwrap();
    Ray::exact(vec![c(1, 2), c(2, 0), c(0, 1)]).unwrap()
}

/// A random ray over ℤ[√m] in dimension 3: either generic, or orthogonal to
/// two rays drawn from `existing`.
pub fn random_ray<R: Rng>(rng: &mut R, existing: &[Ray], m: u32) -> Ray {
    loop {
        let ray = if rng.gen_bool(0.5) || existing.len() < 2 {
            Ray::exact(
                (0..3)
                    .map(|_| q(rng.gen_range(-3..=3), rng.gen_range(-3..=3), m))
                    .collect(),
            )
            .unwrap()
        } else {
            let i = rng.gen_range(0..existing.len());
            let j = rng.gen_range(0..existing.len());
            cross(&existing[i], &existing[j])
        };
        if !ray.is_zero() {
            return ray;
        }
    }
}
