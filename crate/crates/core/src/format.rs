//! Text formats for generator matrices, graphs, restrictions and coding sets.
//!
//! All formats ignore blank lines and `#` comments. Vectors are written either as a run of
//! single digits (`10011`) or as whitespace/comma separated integers.
//!
//! - generators: header `p n k`, then `n − k` rows of `2n` entries (x-block, z-block). For
//!   `p = 2` a row may instead be a Pauli string such as `-XZIIZ`. A row may start with
//!   `w^c` to give the phase exponent.
//! - graph: header `p n`, then lines `i j label` with 0-based vertices.
//! - restriction: lines of `n` coefficients, each a homogeneous linear constraint.
//! - coding set: header `p len`, then one vector per line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FpMatrix, FpVector, PrimeModulus};
use crate::geometry::ProjSubspace;
use crate::pauli::{PauliOperator, StabiliserGroup};
use crate::search::{CodingSet, LabelledGraph};

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_ints(line_no: usize, s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Error::parse(line_no, format!("expected an integer, found {t:?}"))))
        .collect()
}

/// Parses a vector of length `len`; a single token of exactly `len` digits is split per digit.
pub fn parse_vector(p: PrimeModulus, len: usize, line_no: usize, s: &str) -> Result<FpVector> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let tokens: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
    let vals = if tokens.len() == 1 && tokens[0].len() == len && len > 1 && tokens[0].chars().all(|c| c.is_ascii_digit()) {
        tokens[0].chars().map(|c| c.to_digit(10).expect("digit") as i64).collect()
    } else {
        parse_ints(line_no, s)?
    };
    if vals.len() != len {
        return Err(Error::parse(line_no, format!("expected {len} entries, found {}", vals.len())));
    }
    if let Some(v) = vals.iter().find(|&&v| v < 0 || v >= p.get() as i64) {
        return Err(Error::parse(line_no, format!("entry {v} is not in 0..{p}")));
    }
    Ok(FpVector::from_i64(p, &vals))
}

fn header(line: Option<(usize, &str)>, count: usize, what: &str) -> Result<(usize, Vec<i64>)> {
    let (no, l) = line.ok_or_else(|| Error::parse(1, format!("missing {what} header")))?;
    let vals = parse_ints(no, l)?;
    if vals.len() != count || vals.iter().any(|&v| v < 0) {
        return Err(Error::parse(no, format!("{what} header needs {count} non-negative integers")));
    }
    Ok((no, vals))
}

fn modulus(no: usize, p: i64) -> Result<PrimeModulus> {
    PrimeModulus::new(p as u32).map_err(|e| Error::parse(no, e.to_string()))
}

fn is_letters(s: &str) -> bool {
    let body = s.trim_start_matches(['+', '-']).trim_start_matches('i');
    !body.is_empty() && body.chars().all(|c| matches!(c, 'I' | 'X' | 'Y' | 'Z'))
}

pub fn parse_generators(text: &str) -> Result<StabiliserGroup> {
    let mut lines = content_lines(text);
    let (no, h) = header(lines.next(), 3, "generator (p n k)")?;
    let p = modulus(no, h[0])?;
    let (n, k) = (h[1] as usize, h[2] as usize);
    if k > n {
        return Err(Error::parse(no, format!("k = {k} exceeds n = {n}")));
    }
    let mut gens = Vec::new();
    for (no, l) in lines {
        let g = if p.get() == 2 && is_letters(l) {
            let op = PauliOperator::from_letters(l).map_err(|e| Error::parse(no, e.to_string()))?;
            if op.n() != n {
                return Err(Error::parse(no, format!("expected {n} letters, found {}", op.n())));
            }
            op
        } else {
            let (phase, rest) = match l.strip_prefix("w^") {
                Some(r) => {
                    let (e, rest) = r.split_once(char::is_whitespace).ok_or_else(|| Error::parse(no, "phase must be followed by the row"))?;
                    (e.parse::<u8>().map_err(|_| Error::parse(no, format!("bad phase exponent {e:?}")))?, rest)
                }
                None => (0, l),
            };
            let v = parse_vector(p, 2 * n, no, rest)?;
            PauliOperator::new(phase, v.slice(0..n), v.slice(n..2 * n))?
        };
        gens.push(g);
    }
    if gens.len() != n - k {
        return Err(Error::parse(no, format!("header promises {} generators, found {}", n - k, gens.len())));
    }
    StabiliserGroup::new(p, n, gens)
}

pub fn write_generators(s: &StabiliserGroup) -> String {
    let mut out = format!("{} {} {}\n", s.modulus(), s.n(), s.k());
    for g in s.generators() {
        if s.modulus().get() == 2 && g.phase() != 0 {
            let _ = writeln!(out, "{g}");
        } else {
            if g.phase() != 0 {
                let _ = write!(out, "w^{} ", g.phase());
            }
            let _ = writeln!(out, "{}", digits(&g.x_part().concat(g.z_part())));
        }
    }
    out
}

fn digits(v: &FpVector) -> String {
    if v.modulus().get() < 10 {
        v.entries().iter().map(|d| char::from(b'0' + d)).collect()
    } else {
        v.to_string()
    }
}

pub fn parse_graph(text: &str) -> Result<LabelledGraph> {
    let mut lines = content_lines(text);
    let (no, h) = header(lines.next(), 2, "graph (p n)")?;
    let p = modulus(no, h[0])?;
    let n = h[1] as usize;
    let mut edges = Vec::new();
    for (no, l) in lines {
        let v = parse_ints(no, l)?;
        let [i, j, lab] = v[..] else {
            return Err(Error::parse(no, "edge lines are \"i j label\""));
        };
        if i < 0 || j < 0 || i as usize >= n || j as usize >= n || i == j {
            return Err(Error::parse(no, format!("invalid edge ({i}, {j}) for {n} vertices")));
        }
        if lab <= 0 || lab >= p.get() as i64 {
            return Err(Error::parse(no, format!("label {lab} is not in 1..{p}")));
        }
        edges.push((i as usize, j as usize, lab as u8));
    }
    LabelledGraph::from_edges(p, n, &edges)
}

pub fn write_graph(g: &LabelledGraph) -> String {
    let mut out = format!("{} {}\n", g.modulus(), g.vertex_count());
    for (i, j, l) in g.edges() {
        let _ = writeln!(out, "{i} {j} {l}");
    }
    out
}

/// The subspace cut out by the constraint rows.
pub fn parse_restriction(p: PrimeModulus, n: usize, text: &str) -> Result<ProjSubspace> {
    let rows = content_lines(text).map(|(no, l)| parse_vector(p, n, no, l)).collect::<Result<Vec<_>>>()?;
    let m = FpMatrix::from_rows(p, n, &rows)?;
    Ok(ProjSubspace::from_constraints(&m))
}

/// Parses a coding set; the vectors are kept as written (the zero vector is not added).
pub fn parse_coding_set(text: &str) -> Result<CodingSet> {
    let mut lines = content_lines(text);
    let (no, h) = header(lines.next(), 2, "coding set (p len)")?;
    let p = modulus(no, h[0])?;
    let len = h[1] as usize;
    let vs = lines.map(|(no, l)| parse_vector(p, len, no, l)).collect::<Result<Vec<_>>>()?;
    CodingSet::exact(p, len, &vs)
}

pub fn write_coding_set(t: &CodingSet) -> String {
    let mut out = format!("{} {}\n", t.modulus(), t.vector_len());
    for v in t.vectors() {
        let _ = writeln!(out, "{}", digits(v));
    }
    out
}
