//! Points, lines and subspaces of PG(m, p), with projection from a subspace.
//!
//! A subspace is stored by its RREF basis, so two subspaces are equal iff their
//! bases are identical. Projective dimension is `rank - 1`; the API speaks in
//! vector-space rank throughout.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{complete_basis, tuples, FpMatrix, FpVector, PrimeModulus};

/// A point of PG(m, p): a non-zero vector whose first non-zero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(FpVector);

impl ProjPoint {
    /// Normalises `v`; `None` for the zero vector.
    pub fn new(v: &FpVector) -> Option<Self> {
        v.normalized().map(ProjPoint)
    }

    pub fn coords(&self) -> &FpVector {
        &self.0
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.0.modulus()
    }

    /// Length of the coordinate vector (`m + 1`).
    pub fn ambient(&self) -> usize {
        self.0.len()
    }

    pub fn to_subspace(&self) -> ProjSubspace {
        ProjSubspace::from_vectors(self.modulus(), self.ambient(), std::slice::from_ref(&self.0))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.entries().iter().join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjSubspace {
    basis: FpMatrix,
}

impl ProjSubspace {
    /// Span of the given vectors in `F_p^ambient`.
    pub fn from_vectors(p: PrimeModulus, ambient: usize, vs: &[FpVector]) -> Self {
        let m = FpMatrix::from_rows(p, ambient, vs).expect("vector length must equal ambient");
        Self::from_matrix(&m)
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &FpMatrix) -> Self {
        ProjSubspace { basis: m.rref().basis() }
    }

    pub fn whole(p: PrimeModulus, ambient: usize) -> Self {
        ProjSubspace { basis: FpMatrix::identity(p, ambient) }
    }

    pub fn empty(p: PrimeModulus, ambient: usize) -> Self {
        ProjSubspace { basis: FpMatrix::zeros(p, 0, ambient) }
    }

    /// The subspace cut out by the homogeneous equations `constraints · x = 0`.
    pub fn from_constraints(constraints: &FpMatrix) -> Self {
        Self::from_matrix(&constraints.kernel_basis())
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.basis.modulus()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn contains_vector(&self, v: &FpVector) -> bool {
        let red = crate::field::Rref {
            matrix: self.basis.clone(),
            rank: self.rank(),
            pivots: (0..self.rank())
                .map(|r| self.basis.row(r).iter().position(|&e| e != 0).expect("rref rows are non-zero"))
                .collect(),
        };
        red.contains(v.entries())
    }

    pub fn contains_point(&self, x: &ProjPoint) -> bool {
        self.contains_vector(x.coords())
    }

    pub fn contains(&self, other: &ProjSubspace) -> bool {
        other.basis.row_vectors().iter().all(|v| self.contains_vector(v))
    }

    /// All `(p^r − 1)/(p − 1)` points, sorted lexicographically.
    pub fn points(&self) -> Vec<ProjPoint> {
        let p = self.modulus();
        let r = self.rank();
        let rows = self.basis.row_vectors();
        let mut out = Vec::new();
        for lead in 0..r {
            // coefficient vectors with first non-zero entry 1 at `lead`
            let tail = r - lead - 1;
            for rest in tuples(p, tail) {
                let mut v = rows[lead].clone();
                for (i, &c) in rest.iter().enumerate() {
                    if c != 0 {
                        v = v.add_scaled(&rows[lead + 1 + i], c);
                    }
                }
                out.push(ProjPoint(v));
            }
        }
        out.sort();
        out
    }

    /// Smallest subspace containing both.
    pub fn join(&self, other: &ProjSubspace) -> Result<ProjSubspace> {
        let stacked = self.basis.stack(&other.basis)?;
        Ok(Self::from_matrix(&stacked))
    }

    /// True iff the two subspaces share no point.
    pub fn is_skew(&self, other: &ProjSubspace) -> Result<bool> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch { expected: self.ambient(), found: other.ambient() });
        }
        Ok(self.join(other)?.rank() == self.rank() + other.rank())
    }

    pub fn intersects(&self, other: &ProjSubspace) -> Result<bool> {
        self.is_skew(other).map(|s| !s)
    }

    /// Every subspace of the given rank in `F_p^ambient`, each once, via its canonical RREF
    /// basis. Ordered by pivot set, then by free entries.
    pub fn enumerate(p: PrimeModulus, ambient: usize, rank: usize) -> Vec<ProjSubspace> {
        let mut out = Vec::new();
        if rank > ambient {
            return out;
        }
        for pivots in (0..ambient).combinations(rank) {
            let free: Vec<(usize, usize)> = (0..rank)
                .flat_map(|r| ((pivots[r] + 1)..ambient).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            for values in tuples(p, free.len()) {
                let mut m = FpMatrix::zeros(p, rank, ambient);
                for (r, &c) in pivots.iter().enumerate() {
                    m.set(r, c, 1);
                }
                for (&(r, c), &v) in free.iter().zip(&values) {
                    m.set(r, c, v);
                }
                out.push(ProjSubspace { basis: m });
            }
        }
        out
    }
}

/// Gaussian binomial coefficient: the number of rank-`k` subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Smallest subspace containing all inputs.
pub fn span(p: PrimeModulus, ambient: usize, parts: &[ProjSubspace]) -> ProjSubspace {
    let mut acc = FpMatrix::zeros(p, 0, ambient);
    for s in parts {
        acc = acc.stack(s.basis()).expect("ambient dimensions agree");
    }
    ProjSubspace::from_matrix(&acc)
}

/// Span of a list of points.
pub fn span_points(p: PrimeModulus, ambient: usize, points: &[ProjPoint]) -> ProjSubspace {
    let vs: Vec<FpVector> = points.iter().map(|x| x.coords().clone()).collect();
    ProjSubspace::from_vectors(p, ambient, &vs)
}

/// A rank-2 subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjLine(ProjSubspace);

impl ProjLine {
    pub fn new(s: ProjSubspace) -> Option<Self> {
        (s.rank() == 2).then_some(ProjLine(s))
    }

    pub fn through(a: &FpVector, b: &FpVector) -> Option<Self> {
        Self::new(ProjSubspace::from_vectors(a.modulus(), a.len(), &[a.clone(), b.clone()]))
    }

    pub fn as_subspace(&self) -> &ProjSubspace {
        &self.0
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.0.points()
    }

    pub fn ambient(&self) -> usize {
        self.0.ambient()
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.0.basis();
        write!(f, "<{}, {}>", ProjPoint(b.row_vector(0)), ProjPoint(b.row_vector(1)))
    }
}

/// Projection from a centre subspace, realised as change of basis followed by deleting the
/// first `rank(centre)` coordinates.
///
/// The basis change is the greedy completion of the centre's vectors; the retained
/// coordinates depend only on the centre's span, not on which spanning vectors are given.
#[derive(Clone, Debug)]
pub struct Projection {
    centre_rank: usize,
    inverse: FpMatrix,
}

impl Projection {
    /// Projection from the span of `vs`, which must be independent.
    pub fn from_vectors(p: PrimeModulus, ambient: usize, vs: &[FpVector]) -> Result<Self> {
        if vs.iter().any(|v| v.is_zero()) {
            return Err(Error::DependentCentre);
        }
        let a = match complete_basis(p, vs, ambient) {
            Ok(a) => a,
            Err(Error::DependentInput) => return Err(Error::DependentCentre),
            Err(e) => return Err(e),
        };
        let inverse = a.inverse().expect("completed basis is non-singular");
        Ok(Projection { centre_rank: vs.len(), inverse })
    }

    pub fn from_centre(centre: &ProjSubspace) -> Result<Self> {
        let vs = centre.basis().row_vectors();
        Self::from_vectors(centre.modulus(), centre.ambient(), &vs)
    }

    pub fn centre_rank(&self) -> usize {
        self.centre_rank
    }

    /// Length of the image coordinate vectors.
    pub fn target_ambient(&self) -> usize {
        self.inverse.rows() - self.centre_rank
    }

    /// Coordinates of `v` after the basis change, first `rank(centre)` entries dropped.
    pub fn image_vector(&self, v: &FpVector) -> FpVector {
        let full = self.inverse.mul_vec(v).expect("length equals ambient");
        full.slice(self.centre_rank..full.len())
    }

    /// Applies the coordinate map to every column of `m`, returning the projected columns.
    pub fn image_columns(&self, m: &FpMatrix) -> FpMatrix {
        let full = self.inverse.mul(m).expect("row count equals ambient");
        full.select_rows(self.centre_rank..full.rows())
    }

    pub fn point(&self, x: &ProjPoint) -> Result<ProjPoint> {
        ProjPoint::new(&self.image_vector(x.coords())).ok_or(Error::CollapsedImage { line: None })
    }

    pub fn line(&self, l: &ProjLine) -> Result<ProjLine> {
        let b = l.as_subspace().basis();
        let imgs = [self.image_vector(&b.row_vector(0)), self.image_vector(&b.row_vector(1))];
        let s = ProjSubspace::from_vectors(b.modulus(), self.target_ambient(), &imgs);
        ProjLine::new(s).ok_or(Error::CollapsedImage { line: None })
    }

    pub fn subspace(&self, s: &ProjSubspace) -> Result<ProjSubspace> {
        let imgs: Vec<FpVector> = s.basis().row_vectors().iter().map(|v| self.image_vector(v)).collect();
        let out = ProjSubspace::from_vectors(s.modulus(), self.target_ambient(), &imgs);
        if out.rank() != s.rank() {
            return Err(Error::CollapsedImage { line: None });
        }
        Ok(out)
    }
}

/// Projects a point or line from `centre`.
pub fn project_from(centre: &ProjSubspace, x: &ProjSubspace) -> Result<ProjSubspace> {
    Projection::from_centre(centre)?.subspace(x)
}
