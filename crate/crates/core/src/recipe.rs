//! The end-to-end construction from a labelled graph, and code reports.

use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use crate::clique::{find_cliques, greedy_clique, CliqueMode};
use crate::error::{Error, Result};
use crate::field::{FpMatrix, FpVector, PrimeModulus};
use crate::geometry::{ProjPoint, ProjSubspace, Projection};
use crate::lines::{lines_from_matrix, Distance, QuantumLineSet};
use crate::pauli::StabiliserGroup;
use crate::search::{candidates_and_gamma, candidate_vertices, check_distance, distance_bound, graph_to_generators, singleton_max_k, CodingSet, LabelledGraph};

/// Above this many vertices exact clique search is replaced by greedy search.
pub const EXACT_VERTEX_LIMIT: usize = 200;

#[derive(Clone, Debug)]
pub struct RecipeConfig {
    pub d: usize,
    pub k: usize,
    /// Restricts Γ to the points of this subspace of the projected space.
    pub restriction: Option<ProjSubspace>,
    pub clique_mode: CliqueMode,
    pub time_limit: Option<Duration>,
    /// Overrides the automatic choice of the `k` centre vectors.
    pub centre: Option<Vec<FpVector>>,
}

impl RecipeConfig {
    pub fn new(d: usize, k: usize) -> Self {
        RecipeConfig { d, k, restriction: None, clique_mode: CliqueMode::Exact, time_limit: None, centre: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    pub p: PrimeModulus,
    pub t_size: usize,
    /// `|T| · p^k`.
    pub dimension: u128,
    pub d_bound: Distance,
    pub subspace: bool,
    pub singleton_max_k: i64,
    pub cliques_found: usize,
    pub edges: usize,
    pub vertices: usize,
    pub elapsed_ms: u128,
    pub proportional_pairs: usize,
    pub warnings: Vec<String>,
    pub centre: Vec<FpVector>,
    /// Generator matrix of the group the code is built on.
    pub gmatrix: FpMatrix,
    pub coding_set: CodingSet,
}

impl CodeReport {
    /// `[[n, k + r, d]]_p` when `T` is a subspace of size `p^r`, otherwise `((n, K, d))_p`;
    /// the subscript is dropped for `p = 2`.
    pub fn notation(&self) -> String {
        let d = self.d_bound.lower_bound();
        let sub = if self.p.get() == 2 { String::new() } else { format!("_{}", self.p) };
        if self.subspace {
            let r = self.coding_set.span_rank();
            format!("[[{},{},{}]]{}", self.n, self.k + r, d, sub)
        } else {
            format!("(({},{},{})){}", self.n, self.dimension, d, sub)
        }
    }

    fn d_text(&self) -> String {
        self.d_bound.to_string()
    }

    /// Key-value pairs in machine-format order.
    pub fn machine_fields(&self) -> Vec<(&'static str, String)> {
        vec![
            ("n", self.n.to_string()),
            ("k", self.k.to_string()),
            ("p", self.p.to_string()),
            ("T_size", self.t_size.to_string()),
            ("K", self.dimension.to_string()),
            ("d_bound", self.d_text()),
            ("subspace", self.subspace.to_string()),
            ("singleton_max_k", self.singleton_max_k.to_string()),
            ("cliques_found", self.cliques_found.to_string()),
            ("edges", self.edges.to_string()),
            ("vertices", self.vertices.to_string()),
            ("elapsed_ms", self.elapsed_ms.to_string()),
        ]
    }

    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.machine_fields() {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "code {}", self.notation());
        let _ = writeln!(out, "n={} K={} d_bound={}", self.n, self.dimension, self.d_text());
        let _ = writeln!(out, "k={} p={} T_size={} subspace={} singleton_max_k={}", self.k, self.p, self.t_size, self.subspace, self.singleton_max_k);
        let _ = writeln!(out, "vertices={} edges={} cliques_found={} proportional_pairs={}", self.vertices, self.edges, self.cliques_found, self.proportional_pairs);
        let _ = writeln!(out, "elapsed_ms={}", self.elapsed_ms);
        if !self.centre.is_empty() {
            let _ = writeln!(out, "centre:");
            for v in &self.centre {
                let _ = writeln!(out, "  {v}");
            }
        }
        let _ = writeln!(out, "T:");
        for v in self.coding_set.vectors() {
            let _ = writeln!(out, "  {v}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }

    /// Machine block with the wall-clock field removed, for determinism checks.
    pub fn without_timing(&self) -> String {
        self.machine_fields().into_iter().filter(|(k, _)| *k != "elapsed_ms").map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

impl fmt::Display for CodeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Lower bound on the distance of `Q(S, T)` with the search capped at `limit`.
///
/// With at least one pair of distinct points in `T` this is the pair minimum; otherwise
/// it is `d` of the line set projected from the span of `T ∖ {0}` (or the line set itself).
pub fn code_distance(x: &QuantumLineSet, t: &CodingSet, limit: usize) -> Result<(Distance, usize)> {
    let bound = distance_bound(x, t, limit)?;
    if !bound.is_vacuous() {
        return Ok((bound.distance, bound.proportional_pairs));
    }
    let reps: Vec<FpVector> = {
        let mut pts: Vec<ProjPoint> = t.nonzero().filter_map(ProjPoint::new).collect();
        pts.sort();
        pts.dedup();
        pts.into_iter().map(|q| q.coords().clone()).collect()
    };
    let y = if reps.is_empty() { x.clone() } else { x.project_lines(&reps)? };
    Ok((y.min_dependent_set(limit), bound.proportional_pairs))
}

/// Report for a given group and coding set, with no search statistics.
pub fn assess(s: &StabiliserGroup, t: &CodingSet, limit: usize) -> Result<CodeReport> {
    let start = Instant::now();
    if t.vector_len() != s.rank() {
        return Err(Error::DimensionMismatch { expected: s.rank(), found: t.vector_len() });
    }
    let x = lines_from_matrix(s.gmatrix())?;
    let (d_bound, proportional_pairs) = code_distance(&x, t, limit)?;
    Ok(build_report(s, t, d_bound, proportional_pairs, (0, 0, 0), Vec::new(), Vec::new(), start))
}

#[allow(clippy::too_many_arguments)]
fn build_report(
    s: &StabiliserGroup,
    t: &CodingSet,
    d_bound: Distance,
    proportional_pairs: usize,
    (vertices, edges, cliques_found): (usize, usize, usize),
    centre: Vec<FpVector>,
    warnings: Vec<String>,
    start: Instant,
) -> CodeReport {
    let p = s.modulus();
    let n = s.n();
    let k = s.k();
    let dimension = t.len() as u128 * (p.get() as u128).pow(k as u32);
    CodeReport {
        n,
        k,
        p,
        t_size: t.len(),
        dimension,
        d_bound,
        subspace: t.is_subspace(),
        singleton_max_k: singleton_max_k(n, d_bound.lower_bound()),
        cliques_found,
        edges,
        vertices,
        elapsed_ms: start.elapsed().as_millis(),
        proportional_pairs,
        warnings,
        centre,
        gmatrix: s.gmatrix().clone(),
        coding_set: t.clone(),
    }
}

/// Lexicographically least `k` candidate points, taken greedily, that are independent and
/// keep every line a line after projection.
pub fn choose_centre(x: &QuantumLineSet, d: usize, k: usize) -> Result<Vec<FpVector>> {
    let mut chosen: Vec<FpVector> = Vec::new();
    for q in candidate_vertices(x, d, None)? {
        if chosen.len() == k {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(q.coords().clone());
        if x.project_lines(&trial).is_ok() {
            chosen = trial;
        }
    }
    if chosen.len() < k {
        return Err(Error::InvalidParameter(format!("only {} admissible centre points found, need {k}", chosen.len())));
    }
    Ok(chosen)
}

/// Graph → generator matrix → lines → (projection) → Γ → clique → `T` → distance check.
pub fn run_recipe(g: &LabelledGraph, cfg: &RecipeConfig) -> Result<CodeReport> {
    let start = Instant::now();
    check_distance(cfg.d)?;
    let n = g.vertex_count();
    if cfg.k >= n {
        return Err(Error::InvalidParameter(format!("k = {} must be below n = {n}", cfg.k)));
    }
    let s = graph_to_generators(g)?;
    let x = lines_from_matrix(s.gmatrix())?;
    let mut warnings = Vec::new();

    let (s, x, centre) = if cfg.k == 0 {
        (s, x, Vec::new())
    } else {
        let centre = match &cfg.centre {
            Some(c) => {
                if c.len() != cfg.k {
                    return Err(Error::InvalidParameter(format!("centre has {} vectors, k = {}", c.len(), cfg.k)));
                }
                c.clone()
            }
            None => choose_centre(&x, cfg.d, cfg.k)?,
        };
        let proj = Projection::from_vectors(s.modulus(), n, &centre)?;
        let xp = x.project_lines(&centre)?;
        let sp = StabiliserGroup::from_matrix(&proj.image_columns(s.gmatrix()))?;
        (sp, xp, centre)
    };

    let gamma = candidates_and_gamma(&x, cfg.d, cfg.restriction.as_ref())?;
    let mut mode = cfg.clique_mode;
    if mode == CliqueMode::Exact && gamma.vertex_count() > EXACT_VERTEX_LIMIT {
        mode = CliqueMode::Greedy;
        warnings.push(format!("{} vertices exceed the exact-search limit of {EXACT_VERTEX_LIMIT}; greedy clique only", gamma.vertex_count()));
    }
    let cliques = match find_cliques(&gamma, mode, cfg.time_limit) {
        Ok(c) => c,
        Err(Error::TimeLimitExceeded { best }) => {
            warnings.push("clique search hit the time limit; best clique so far used".into());
            let best = if best.is_empty() && gamma.vertex_count() > 0 { greedy_clique(&gamma) } else { best };
            vec![best]
        }
        Err(e) => return Err(e),
    };
    let p = s.modulus();
    let t = match cliques.first() {
        Some(c) => CodingSet::from_clique(&gamma, c, p, x.ambient())?,
        None => {
            warnings.push("compatibility graph has no vertices; T = {0}".into());
            CodingSet::new(p, x.ambient(), &[])?
        }
    };
    let (d_bound, proportional_pairs) = code_distance(&x, &t, cfg.d)?;
    if d_bound.lower_bound() < cfg.d {
        warnings.push(format!("distance bound {d_bound} is below the target {}", cfg.d));
    }
    Ok(build_report(&s, &t, d_bound, proportional_pairs, (gamma.vertex_count(), gamma.edge_count(), cliques.len()), centre, warnings, start))
}
