//! Sets of lines read from the columns of a generator matrix, their dependent-point
//! distance and their projections.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{FpMatrix, FpVector, PrimeModulus};
use crate::geometry::{ProjLine, ProjPoint, ProjSubspace, Projection};

/// `n` lines in `PG(ambient − 1, p)`; line `i` is spanned by columns `i` and `i + n` of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuantumLineSet {
    p: PrimeModulus,
    ambient: usize,
    lines: Vec<ProjLine>,
}

/// Result of a bounded search: the exact value, or a lower bound when the search limit was hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distance {
    Exact(usize),
    AtLeast(usize),
}

impl Distance {
    /// The guaranteed lower bound.
    pub fn lower_bound(self) -> usize {
        match self {
            Distance::Exact(d) | Distance::AtLeast(d) => d,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Distance::Exact(_))
    }

    /// Minimum of two bounds; an exact value wins ties.
    pub fn min(self, other: Distance) -> Distance {
        match self.lower_bound().cmp(&other.lower_bound()) {
            std::cmp::Ordering::Less => self,
            std::cmp::Ordering::Greater => other,
            std::cmp::Ordering::Equal => {
                if self.is_exact() {
                    self
                } else {
                    other
                }
            }
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

/// Builds the line set of an `(n − k) × 2n` generator matrix.
pub fn lines_from_matrix(g: &FpMatrix) -> Result<QuantumLineSet> {
    if !g.cols().is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("generator matrix has odd width {}", g.cols())));
    }
    let n = g.cols() / 2;
    let mut lines = Vec::with_capacity(n);
    for i in 0..n {
        let line = ProjLine::through(&g.column(i), &g.column(i + n)).ok_or(Error::DegenerateLine { line: i })?;
        lines.push(line);
    }
    Ok(QuantumLineSet { p: g.modulus(), ambient: g.rows(), lines })
}

impl QuantumLineSet {
    pub fn new(p: PrimeModulus, ambient: usize, lines: Vec<ProjLine>) -> Result<Self> {
        if let Some(l) = lines.iter().find(|l| l.ambient() != ambient || l.as_subspace().modulus() != p) {
            return Err(Error::DimensionMismatch { expected: ambient, found: l.ambient() });
        }
        Ok(QuantumLineSet { p, ambient, lines })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    /// Length of coordinate vectors, `n − k` for a line set read from `G`.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn projective_dim(&self) -> isize {
        self.ambient as isize - 1
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    /// Generator matrix whose columns `i`, `i + n` are the RREF basis of line `i`.
    pub fn to_matrix(&self) -> FpMatrix {
        let n = self.len();
        let mut m = FpMatrix::zeros(self.p, self.ambient, 2 * n);
        for (i, l) in self.lines.iter().enumerate() {
            let b = l.as_subspace().basis();
            for r in 0..self.ambient {
                m.set(r, i, b.get(0, r));
                m.set(r, i + n, b.get(1, r));
            }
        }
        m
    }

    /// Points lying on at least one line, sorted and deduplicated.
    pub fn incident_points(&self) -> Vec<ProjPoint> {
        let mut pts: Vec<ProjPoint> = self.lines.iter().flat_map(|l| l.points()).collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// True iff every co-dimension-2 subspace is skew to an even number of the lines.
    pub fn validate_even_skew(&self) -> Result<bool> {
        if self.p.get() != 2 {
            return Err(Error::UnsupportedModulus(self.p.get()));
        }
        if self.ambient < 2 {
            return Ok(true);
        }
        let bases: Vec<[FpVector; 2]> = self
            .lines
            .iter()
            .map(|l| {
                let b = l.as_subspace().basis();
                [b.row_vector(0), b.row_vector(1)]
            })
            .collect();
        // a co-dimension-2 subspace is the kernel of two independent functionals f, g; a line
        // <a, b> misses it iff (f, g) restricted to the line is invertible
        for funcs in ProjSubspace::enumerate(self.p, self.ambient, 2) {
            let f = funcs.basis().row_vector(0);
            let g = funcs.basis().row_vector(1);
            let skew = bases
                .iter()
                .filter(|[a, b]| (f.dot(a) * g.dot(b) + f.dot(b) * g.dot(a)) % 2 == 1)
                .count();
            if skew % 2 == 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least `w ≤ limit` such that one point on each of some `w` distinct lines is linearly
    /// dependent, searching `w` upwards and line subsets lexicographically.
    pub fn min_dependent_set(&self, limit: usize) -> Distance {
        let points: Vec<Vec<FpVector>> =
            self.lines.iter().map(|l| l.points().into_iter().map(|x| x.coords().clone()).collect()).collect();
        for w in 2..=limit.min(self.len()) {
            for subset in (0..self.len()).combinations(w) {
                if self.dependent_choice(&points, &subset) {
                    return Distance::Exact(w);
                }
            }
        }
        Distance::AtLeast(limit.max(1) + 1)
    }

    fn dependent_choice(&self, points: &[Vec<FpVector>], subset: &[usize]) -> bool {
        let w = subset.len();
        let mut chosen: Vec<FpVector> = Vec::with_capacity(w);
        let mut idx = vec![0usize; w];
        loop {
            chosen.clear();
            chosen.extend(subset.iter().zip(&idx).map(|(&l, &j)| points[l][j].clone()));
            let m = FpMatrix::from_rows(self.p, self.ambient, &chosen).expect("point length equals ambient");
            if m.rank() < w {
                return true;
            }
            // odometer over one point per line
            let mut pos = w;
            loop {
                if pos == 0 {
                    return false;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < points[subset[pos]].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// Projects every line from the span of the independent vectors `ts`.
    pub fn project_lines(&self, ts: &[FpVector]) -> Result<QuantumLineSet> {
        let proj = Projection::from_vectors(self.p, self.ambient, ts)?;
        let lines = self
            .lines
            .iter()
            .enumerate()
            .map(|(i, l)| proj.line(l).map_err(|_| Error::CollapsedImage { line: Some(i) }))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuantumLineSet { p: self.p, ambient: proj.target_ambient(), lines })
    }
}

impl fmt::Display for QuantumLineSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.lines.iter().enumerate() {
            writeln!(f, "{i}: {l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{PauliOperator, StabiliserGroup};

    const F2: PrimeModulus = PrimeModulus::TWO;

    fn pentagon_g() -> FpMatrix {
        let gens = ["XZIIZ", "ZXZII", "IZXZI", "IIZXZ", "ZIIZX"].map(|s| PauliOperator::from_letters(s).unwrap()).to_vec();
        StabiliserGroup::new(F2, 5, gens).unwrap().gmatrix().clone()
    }

    fn v(bits: &[u8]) -> FpVector {
        FpVector::new(F2, bits.iter().copied())
    }

    #[test]
    fn pentagon_lines() {
        let x = lines_from_matrix(&pentagon_g()).unwrap();
        let expect = [
            (v(&[1, 0, 0, 0, 0]), v(&[0, 1, 0, 0, 1])),
            (v(&[0, 1, 0, 0, 0]), v(&[1, 0, 1, 0, 0])),
            (v(&[0, 0, 1, 0, 0]), v(&[0, 1, 0, 1, 0])),
            (v(&[0, 0, 0, 1, 0]), v(&[0, 0, 1, 0, 1])),
            (v(&[0, 0, 0, 0, 1]), v(&[1, 0, 0, 1, 0])),
        ];
        for (l, (a, b)) in x.lines().iter().zip(expect) {
            assert_eq!(*l, ProjLine::through(&a, &b).unwrap());
        }
    }

    #[test]
    fn single_edge_graph_gives_repeated_line() {
        let g = FpMatrix::from_nested(F2, &[&[1, 0, 0, 1], &[0, 1, 1, 0]]).unwrap();
        let x = lines_from_matrix(&g).unwrap();
        assert_eq!(x.lines()[0], x.lines()[1]);
        assert_eq!(x.lines()[0].as_subspace(), &ProjSubspace::whole(F2, 2));
        assert_eq!(x.min_dependent_set(2), Distance::Exact(2));
    }

    #[test]
    fn zero_column_is_degenerate() {
        let g = FpMatrix::from_nested(F2, &[&[1, 0]]).unwrap();
        assert_eq!(lines_from_matrix(&g), Err(Error::DegenerateLine { line: 0 }));
    }

    #[test]
    fn incident_point_counts() {
        let x = lines_from_matrix(&pentagon_g()).unwrap();
        assert_eq!(x.incident_points().len(), 15);
        let p3 = PrimeModulus::THREE;
        let one = QuantumLineSet::new(p3, 3, vec![ProjLine::through(&FpVector::unit(p3, 3, 0), &FpVector::unit(p3, 3, 1)).unwrap()]).unwrap();
        assert_eq!(one.incident_points().len(), 4);
        assert!(QuantumLineSet::new(F2, 3, vec![]).unwrap().incident_points().is_empty());
    }

    #[test]
    fn even_skew_pentagon() {
        assert!(lines_from_matrix(&pentagon_g()).unwrap().validate_even_skew().unwrap());
    }

    #[test]
    fn even_skew_two_lines_brute_force() {
        let e = |i| FpVector::unit(F2, 4, i);
        let x = QuantumLineSet::new(F2, 4, vec![ProjLine::through(&e(0), &e(1)).unwrap(), ProjLine::through(&e(0), &e(2)).unwrap()]).unwrap();
        // brute force over all 35 lines of PG(3,2)
        let all = ProjSubspace::enumerate(F2, 4, 2);
        assert_eq!(all.len(), 35);
        let expect = all.iter().all(|s| x.lines().iter().filter(|l| l.as_subspace().is_skew(s).unwrap()).count() % 2 == 0);
        assert_eq!(x.validate_even_skew().unwrap(), expect);
        assert!(!expect);
    }

    #[test]
    fn even_skew_rejects_odd_modulus() {
        let p3 = PrimeModulus::THREE;
        let x = QuantumLineSet::new(p3, 3, vec![]).unwrap();
        assert_eq!(x.validate_even_skew(), Err(Error::UnsupportedModulus(3)));
    }

    #[test]
    fn pentagon_distance() {
        let x = lines_from_matrix(&pentagon_g()).unwrap();
        assert_eq!(x.min_dependent_set(5), Distance::Exact(3));
        assert_eq!(x.min_dependent_set(2), Distance::AtLeast(3));
    }

    #[test]
    fn single_line_never_dependent() {
        let e = |i| FpVector::unit(F2, 3, i);
        let x = QuantumLineSet::new(F2, 3, vec![ProjLine::through(&e(0), &e(1)).unwrap()]).unwrap();
        assert_eq!(x.min_dependent_set(3), Distance::AtLeast(4));
    }

    #[test]
    fn projection_from_clique_pair() {
        let x = lines_from_matrix(&pentagon_g()).unwrap();
        let y = x.project_lines(&[v(&[1, 1, 0, 1, 0]), v(&[0, 1, 1, 0, 1])]).unwrap();
        assert_eq!(y.len(), 5);
        assert_eq!(y.ambient(), 3);
        assert!(y.validate_even_skew().unwrap());
    }

    #[test]
    fn projection_from_incident_point_collapses() {
        let x = lines_from_matrix(&pentagon_g()).unwrap();
        assert_eq!(x.project_lines(&[v(&[1, 0, 0, 0, 0])]), Err(Error::CollapsedImage { line: Some(0) }));
    }

    #[test]
    fn matrix_round_trip() {
        let x = lines_from_matrix(&pentagon_g()).unwrap();
        assert_eq!(lines_from_matrix(&x.to_matrix()).unwrap(), x);
    }

    #[test]
    fn distance_min_prefers_exact() {
        assert_eq!(Distance::AtLeast(3).min(Distance::Exact(3)), Distance::Exact(3));
        assert_eq!(Distance::Exact(2).min(Distance::AtLeast(3)), Distance::Exact(2));
        assert_eq!(Distance::AtLeast(4).to_string(), ">=4");
    }
}
