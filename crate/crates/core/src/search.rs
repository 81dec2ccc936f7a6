//! Labelled graphs, candidate points, the compatibility graph and coding sets.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{FpMatrix, FpVector, PrimeModulus};
use crate::geometry::{span_points, ProjPoint, ProjSubspace};
use crate::lines::{Distance, QuantumLineSet};
use crate::pauli::StabiliserGroup;

/// Simple undirected graph with edge labels in `F_p^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraph {
    adjacency: FpMatrix,
}

impl LabelledGraph {
    pub fn new(adjacency: FpMatrix) -> Result<Self> {
        let n = adjacency.rows();
        if adjacency.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: adjacency.cols() });
        }
        for i in 0..n {
            if adjacency.get(i, i) != 0 {
                return Err(Error::InvalidAdjacency { row: i, col: i });
            }
            for j in i + 1..n {
                if adjacency.get(i, j) != adjacency.get(j, i) {
                    return Err(Error::InvalidAdjacency { row: i, col: j });
                }
            }
        }
        Ok(LabelledGraph { adjacency })
    }

    /// Graph from `(i, j, label)` triples; a zero label leaves the pair a non-edge.
    pub fn from_edges(p: PrimeModulus, n: usize, edges: &[(usize, usize, u8)]) -> Result<Self> {
        let mut a = FpMatrix::zeros(p, n, n);
        for &(i, j, l) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidParameter(format!("edge ({i}, {j}) out of range for {n} vertices")));
            }
            if i == j {
                return Err(Error::InvalidAdjacency { row: i, col: j });
            }
            let l = p.reduce(l as i64);
            a.set(i, j, l);
            a.set(j, i, l);
        }
        Ok(LabelledGraph { adjacency: a })
    }

    /// The `n`-cycle with every edge labelled 1.
    pub fn cycle(p: PrimeModulus, n: usize) -> Self {
        let edges: Vec<(usize, usize, u8)> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
        Self::from_edges(p, n, &edges).expect("cycle needs n >= 3")
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.adjacency.modulus()
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacency(&self) -> &FpMatrix {
        &self.adjacency
    }

    /// `(i, j, label)` for `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, u8)> {
        let n = self.vertex_count();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter_map(|(i, j)| {
            let l = self.adjacency.get(i, j);
            (l != 0).then_some((i, j, l))
        })
        .collect()
    }
}

/// The graph code with generator matrix `(I_n | A)`.
pub fn graph_to_generators(g: &LabelledGraph) -> Result<StabiliserGroup> {
    let n = g.vertex_count();
    let p = g.modulus();
    if let Some(v) = (0..n).find(|&i| g.adjacency.row(i).iter().all(|&e| e == 0)) {
        return Err(Error::IsolatedVertex { vertex: v });
    }
    let mut m = FpMatrix::zeros(p, n, 2 * n);
    for i in 0..n {
        m.set(i, i, 1);
        for j in 0..n {
            m.set(i, n + j, g.adjacency.get(i, j));
        }
    }
    StabiliserGroup::from_matrix(&m)
}

pub(crate) fn check_distance(d: usize) -> Result<()> {
    if (2..=4).contains(&d) {
        Ok(())
    } else {
        Err(Error::UnsupportedDistance(d))
    }
}

/// Points in the span of at most `d − 1` points incident with the lines.
#[derive(Clone, Debug)]
pub struct BlockedPoints {
    points: HashSet<ProjPoint>,
}

impl BlockedPoints {
    pub fn new(x: &QuantumLineSet, d: usize) -> Result<Self> {
        check_distance(d)?;
        let incident = x.incident_points();
        let mut points: HashSet<ProjPoint> = incident.iter().cloned().collect();
        for j in 2..d {
            for subset in incident.iter().cloned().combinations(j) {
                let s = span_points(x.modulus(), x.ambient(), &subset);
                // dependent subsets span something already covered by a smaller subset
                if s.rank() == j {
                    points.extend(s.points());
                }
            }
        }
        Ok(BlockedPoints { points })
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.points.contains(x)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True iff some point of the line through `u` and `v` is blocked.
    pub fn meets_line(&self, u: &ProjPoint, v: &ProjPoint) -> bool {
        let p = u.modulus();
        if self.contains(u) || self.contains(v) {
            return true;
        }
        p.units().any(|l| ProjPoint::new(&u.coords().add_scaled(v.coords(), l)).is_some_and(|q| self.contains(&q)))
    }
}

/// Points of `restriction` (default: the whole space) outside every span of `≤ d − 1`
/// incident points, sorted.
pub fn candidate_vertices(x: &QuantumLineSet, d: usize, restriction: Option<&ProjSubspace>) -> Result<Vec<ProjPoint>> {
    let blocked = BlockedPoints::new(x, d)?;
    Ok(candidates_outside(x, &blocked, restriction))
}

fn candidates_outside(x: &QuantumLineSet, blocked: &BlockedPoints, restriction: Option<&ProjSubspace>) -> Vec<ProjPoint> {
    let whole;
    let space = match restriction {
        Some(r) => r,
        None => {
            whole = ProjSubspace::whole(x.modulus(), x.ambient());
            &whole
        }
    };
    space.points().into_iter().filter(|q| !blocked.contains(q)).collect()
}

/// Candidate points with their compatibility edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityGraph {
    vertices: Vec<ProjPoint>,
    adjacency: Vec<Vec<bool>>,
}

impl CompatibilityGraph {
    pub fn from_edges(vertices: Vec<ProjPoint>, edges: &[(usize, usize)]) -> Self {
        let n = vertices.len();
        let mut adjacency = vec![vec![false; n]; n];
        for &(i, j) in edges {
            if i != j {
                adjacency[i][j] = true;
                adjacency[j][i] = true;
            }
        }
        CompatibilityGraph { vertices, adjacency }
    }

    pub fn vertices(&self) -> &[ProjPoint] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| self.adjacency[i][j]).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|r| r.iter().filter(|&&b| b).count()).sum::<usize>() / 2
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().filter(|&&b| b).count()
    }

    pub fn is_clique(&self, c: &[usize]) -> bool {
        c.iter().tuple_combinations().all(|(&a, &b)| a != b && self.adjacency[a][b])
    }
}

/// Joins `u` and `v` iff no point of the line `⟨u, v⟩` is in the span of `≤ d − 1` incident
/// points, provided the line set itself has `d(X) ≥ d`; otherwise the graph is edgeless.
pub fn gamma_graph(x: &QuantumLineSet, vertices: Vec<ProjPoint>, d: usize) -> Result<CompatibilityGraph> {
    let blocked = BlockedPoints::new(x, d)?;
    Ok(gamma_with(x, &blocked, vertices, d))
}

fn gamma_with(x: &QuantumLineSet, blocked: &BlockedPoints, vertices: Vec<ProjPoint>, d: usize) -> CompatibilityGraph {
    let mut edges = Vec::new();
    if x.min_dependent_set(d - 1).lower_bound() >= d {
        for (i, j) in (0..vertices.len()).tuple_combinations() {
            if !blocked.meets_line(&vertices[i], &vertices[j]) {
                edges.push((i, j));
            }
        }
    }
    CompatibilityGraph::from_edges(vertices, &edges)
}

/// Candidates and Γ in one pass over the blocked set.
pub fn candidates_and_gamma(x: &QuantumLineSet, d: usize, restriction: Option<&ProjSubspace>) -> Result<CompatibilityGraph> {
    let blocked = BlockedPoints::new(x, d)?;
    let vs = candidates_outside(x, &blocked, restriction);
    Ok(gamma_with(x, &blocked, vs, d))
}

/// A set of sign vectors `T ⊆ F_p^len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodingSet {
    p: PrimeModulus,
    len: usize,
    vectors: Vec<FpVector>,
    clique: Vec<usize>,
}

impl CodingSet {
    /// The zero vector followed by `vectors`, duplicates removed.
    pub fn new(p: PrimeModulus, len: usize, vectors: &[FpVector]) -> Result<Self> {
        let mut all = vec![FpVector::zeros(p, len)];
        all.extend_from_slice(vectors);
        Self::exact(p, len, &all)
    }

    /// Exactly the given vectors (duplicates removed, first occurrence kept); the zero vector
    /// is not forced.
    pub fn exact(p: PrimeModulus, len: usize, vectors: &[FpVector]) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for v in vectors {
            if v.len() != len {
                return Err(Error::DimensionMismatch { expected: len, found: v.len() });
            }
            if v.modulus() != p {
                return Err(Error::ParameterMismatch);
            }
            if seen.insert(v.clone()) {
                out.push(v.clone());
            }
        }
        Ok(CodingSet { p, len, vectors: out, clique: Vec::new() })
    }

    /// Zero together with every non-zero multiple of the clique's points.
    pub fn from_clique(graph: &CompatibilityGraph, clique: &[usize], p: PrimeModulus, len: usize) -> Result<Self> {
        let vs: Vec<FpVector> =
            clique.iter().flat_map(|&i| p.units().map(move |l| graph.vertices()[i].coords().scale(l))).collect();
        let mut t = Self::new(p, len, &vs)?;
        t.clique = clique.to_vec();
        Ok(t)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    pub fn vectors(&self) -> &[FpVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Vertex indices of the clique this set was built from, if any.
    pub fn clique(&self) -> &[usize] {
        &self.clique
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &FpVector> {
        self.vectors.iter().filter(|v| !v.is_zero())
    }

    /// True iff the set is closed under addition and scalar multiplication.
    pub fn is_subspace(&self) -> bool {
        let set: HashSet<&FpVector> = self.vectors.iter().collect();
        if !self.vectors.iter().any(|v| v.is_zero()) {
            return false;
        }
        let scaled = self.vectors.iter().all(|v| self.p.units().all(|l| set.contains(&v.scale(l))));
        scaled && self.vectors.iter().tuple_combinations().all(|(a, b)| set.contains(&a.add(b)))
    }

    /// Rank of the span of the vectors.
    pub fn span_rank(&self) -> usize {
        FpMatrix::from_rows(self.p, self.len, &self.vectors).expect("lengths checked").rank()
    }
}

pub fn is_subspace_t(t: &CodingSet) -> bool {
    t.is_subspace()
}

/// Per-pair distances `d(X_{t,u})`, and the minimum over pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairBound {
    /// `((i, j), d(X_{t_i, t_j}))` over non-zero vectors of `T` in order, `i < j`.
    pub pairs: Vec<((usize, usize), Distance)>,
    /// Pairs of proportional vectors, skipped.
    pub proportional_pairs: usize,
    pub distance: Distance,
}

impl PairBound {
    /// No distinct-point pair was available, so `distance` carries no information.
    pub fn is_vacuous(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// `min d(X_{t,u})` over pairs of non-zero vectors of `T` defining distinct points.
pub fn distance_bound(x: &QuantumLineSet, t: &CodingSet, limit: usize) -> Result<PairBound> {
    let nz: Vec<&FpVector> = t.nonzero().collect();
    let mut pairs = Vec::new();
    let mut proportional_pairs = 0;
    let mut distance = Distance::AtLeast(limit.max(1) + 1);
    for (i, j) in (0..nz.len()).tuple_combinations() {
        if ProjPoint::new(nz[i]) == ProjPoint::new(nz[j]) {
            proportional_pairs += 1;
            continue;
        }
        let y = x.project_lines(&[nz[i].clone(), nz[j].clone()])?;
        let dd = y.min_dependent_set(limit);
        distance = distance.min(dd);
        pairs.push(((i, j), dd));
    }
    Ok(PairBound { pairs, proportional_pairs, distance })
}

/// Quantum Singleton bound `n − 2(d − 1)` on `k`.
pub fn singleton_max_k(n: usize, d: usize) -> i64 {
    n as i64 - 2 * (d as i64 - 1)
}
