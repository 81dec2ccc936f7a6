//! Pauli operators on prime qupits, their symplectic images, and stabiliser groups.
//!
//! Phase conventions:
//! - `p = 2`: an operator is `i^phase · σ_1 ⊗ … ⊗ σ_n` with letters decoded from
//!   `(x_i, z_i)` as `(0,0) → I`, `(1,0) → X`, `(0,1) → Z`, `(1,1) → Y`, and `Y = i·XZ`.
//!   Phases live in Z/4.
//! - `p ≥ 3`: an operator is `ω^phase · X(x) Z(z)` with `ω = e^{2πi/p}`, phases in Z/p, and
//!   `X(a)Z(b) · X(a')Z(b') = ω^{b·a'} X(a+a')Z(b+b')`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{complete_basis, dot, FpMatrix, FpVector, PrimeModulus, Rref};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    phase: u8,
    x: FpVector,
    z: FpVector,
}

/// Modulus of the phase exponent: 4 for qubits, p otherwise.
pub fn phase_modulus(p: PrimeModulus) -> u8 {
    if p.get() == 2 {
        4
    } else {
        p.get()
    }
}

impl PauliOperator {
    pub fn new(phase: u8, x: FpVector, z: FpVector) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch { left: x.len(), right: z.len() });
        }
        if x.modulus() != z.modulus() {
            return Err(Error::ParameterMismatch);
        }
        let phase = phase % phase_modulus(x.modulus());
        Ok(PauliOperator { phase, x, z })
    }

    pub fn identity(p: PrimeModulus, n: usize) -> Self {
        PauliOperator { phase: 0, x: FpVector::zeros(p, n), z: FpVector::zeros(p, n) }
    }

    /// Parses a qubit Pauli string such as `XZIIZ`, `-ZYXYZ` or `iXY`.
    pub fn from_letters(s: &str) -> Result<Self> {
        let (phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix("+i").or_else(|| s.strip_prefix('i')) {
            (1, rest)
        } else {
            (0, s.strip_prefix('+').unwrap_or(s))
        };
        let p = PrimeModulus::TWO;
        let mut x = Vec::new();
        let mut z = Vec::new();
        for (i, ch) in body.chars().enumerate() {
            let (a, b) = match ch {
                'I' => (0, 0),
                'X' => (1, 0),
                'Z' => (0, 1),
                'Y' => (1, 1),
                _ => return Err(Error::parse(1, format!("unexpected Pauli letter {ch:?} at position {i}"))),
            };
            x.push(a);
            z.push(b);
        }
        Ok(PauliOperator { phase, x: FpVector::new(p, x), z: FpVector::new(p, z) })
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.x.modulus()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_part(&self) -> &FpVector {
        &self.x
    }

    pub fn z_part(&self) -> &FpVector {
        &self.z
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.x.entries().iter().zip(self.z.entries()).filter(|(&a, &b)| a != 0 || b != 0).count()
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.x.is_zero() && self.z.is_zero()
    }

    pub fn tau(&self) -> SymplecticVector {
        tau(self)
    }

    /// Multiplies by the scalar `i^delta` (qubits) or `ω^delta`.
    pub fn shift_phase(&self, delta: u8) -> PauliOperator {
        let m = phase_modulus(self.modulus());
        PauliOperator { phase: (self.phase + delta % m) % m, ..self.clone() }
    }

    /// `-self`; only representable for qubits.
    pub fn negated(&self) -> Result<PauliOperator> {
        if self.modulus().get() != 2 {
            return Err(Error::UnsupportedModulus(self.modulus().get()));
        }
        Ok(self.shift_phase(2))
    }

    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        if self.modulus() != other.modulus() || self.n() != other.n() {
            return Err(Error::ParameterMismatch);
        }
        let p = self.modulus();
        let x = self.x.add(&other.x);
        let z = self.z.add(&other.z);
        let phase = if p.get() == 2 {
            // letters as i^{xz} X^x Z^z; moving Z^{z1} past X^{x2} gives (-1)^{z1 x2}
            let mut e: i32 = self.phase as i32 + other.phase as i32;
            for i in 0..self.n() {
                let (x1, z1) = (self.x.get(i) as i32, self.z.get(i) as i32);
                let (x2, z2) = (other.x.get(i) as i32, other.z.get(i) as i32);
                e += x1 * z1 + x2 * z2 + 2 * z1 * x2 - (x.get(i) as i32) * (z.get(i) as i32);
            }
            e.rem_euclid(4) as u8
        } else {
            let cross = dot(p, self.z.entries(), other.x.entries());
            p.add(p.add(self.phase, other.phase), cross)
        };
        Ok(PauliOperator { phase, x, z })
    }

    pub fn inverse(&self) -> PauliOperator {
        let p = self.modulus();
        if p.get() == 2 {
            return PauliOperator { phase: (4 - self.phase) % 4, ..self.clone() };
        }
        let ab = dot(p, self.x.entries(), self.z.entries());
        PauliOperator { phase: p.add(p.neg(self.phase), ab), x: self.x.scale(p.get() - 1), z: self.z.scale(p.get() - 1) }
    }

    pub fn pow(&self, e: u32) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.modulus(), self.n());
        for _ in 0..e {
            acc = acc.multiply(self).expect("same parameters");
        }
        acc
    }

    /// True iff the operators commute.
    pub fn commutes_with(&self, other: &PauliOperator) -> Result<bool> {
        Ok(symplectic_form(&self.tau(), &other.tau())? == 0)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus().get() == 2 {
            f.write_str(["", "i", "-", "-i"][self.phase as usize])?;
            for (a, b) in self.x.entries().iter().zip(self.z.entries()) {
                f.write_str(match (a, b) {
                    (0, 0) => "I",
                    (1, 0) => "X",
                    (0, 1) => "Z",
                    _ => "Y",
                })?;
            }
            Ok(())
        } else {
            if self.phase != 0 {
                write!(f, "w^{} ", self.phase)?;
            }
            write!(f, "X({})Z({})", self.x.entries().iter().join(","), self.z.entries().iter().join(","))
        }
    }
}

/// An element of `F_p^{2n}`: x-block followed by z-block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticVector(FpVector);

impl SymplecticVector {
    pub fn new(v: FpVector) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("symplectic vector of odd length {}", v.len())));
        }
        Ok(SymplecticVector(v))
    }

    pub fn from_parts(x: &FpVector, z: &FpVector) -> Self {
        SymplecticVector(x.concat(z))
    }

    pub fn n(&self) -> usize {
        self.0.len() / 2
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.0.modulus()
    }

    pub fn as_vector(&self) -> &FpVector {
        &self.0
    }

    pub fn x_part(&self) -> FpVector {
        self.0.slice(0..self.n())
    }

    pub fn z_part(&self) -> FpVector {
        self.0.slice(self.n()..2 * self.n())
    }

    /// Symplectic weight: indices with `(v_i, v_{i+n}) != (0, 0)`.
    pub fn weight(&self) -> usize {
        symplectic_weight(self.0.entries())
    }
}

pub(crate) fn symplectic_weight(v: &[u8]) -> usize {
    let n = v.len() / 2;
    (0..n).filter(|&i| v[i] != 0 || v[i + n] != 0).count()
}

pub fn tau(m: &PauliOperator) -> SymplecticVector {
    SymplecticVector::from_parts(&m.x, &m.z)
}

/// Phase-0 operator with the given symplectic part.
pub fn tau_inv(v: &SymplecticVector) -> PauliOperator {
    PauliOperator { phase: 0, x: v.x_part(), z: v.z_part() }
}

/// `Σ_i (u_i v_{i+n} − v_i u_{i+n}) mod p`.
pub fn symplectic_form(u: &SymplecticVector, v: &SymplecticVector) -> Result<u8> {
    if u.0.len() != v.0.len() {
        return Err(Error::LengthMismatch { left: u.0.len(), right: v.0.len() });
    }
    if u.modulus() != v.modulus() {
        return Err(Error::ParameterMismatch);
    }
    Ok(form_raw(u.modulus(), u.0.entries(), v.0.entries()))
}

pub(crate) fn form_raw(p: PrimeModulus, u: &[u8], v: &[u8]) -> u8 {
    let n = u.len() / 2;
    let mut acc = 0u32;
    let pp = p.get() as u32;
    for i in 0..n {
        acc += u[i] as u32 * v[i + n] as u32 + (pp - 1) * (v[i] as u32 * u[i + n] as u32 % pp);
    }
    (acc % pp) as u8
}

/// The matrix `J·Gᵀ`-style companion: rows `(−z | x)` so that `(g, v) = row · v`.
fn form_matrix(g: &FpMatrix) -> FpMatrix {
    let p = g.modulus();
    let n = g.cols() / 2;
    let mut out = FpMatrix::zeros(p, g.rows(), g.cols());
    for r in 0..g.rows() {
        for i in 0..n {
            out.set(r, i, p.neg(g.get(r, i + n)));
            out.set(r, i + n, g.get(r, i));
        }
    }
    out
}

/// Basis of `{v : (u, v) = 0 for every row u of g}`.
pub fn symplectic_dual(g: &FpMatrix) -> FpMatrix {
    form_matrix(g).kernel_basis()
}

pub fn weight(m: &PauliOperator) -> usize {
    m.weight()
}

pub fn is_abelian(gens: &[PauliOperator]) -> bool {
    first_noncommuting(gens).is_none()
}

pub(crate) fn first_noncommuting(gens: &[PauliOperator]) -> Option<(usize, usize)> {
    let taus: Vec<SymplecticVector> = gens.iter().map(tau).collect();
    (0..gens.len()).tuple_combinations().find(|&(i, j)| symplectic_form(&taus[i], &taus[j]) != Ok(0))
}

/// Returns the lexicographically least element of `rowspace(space)` outside the subspace
/// described by `sub`, or `None` when `space ⊆ sub`.
pub(crate) fn lex_least_outside(space: &FpMatrix, sub: &Rref) -> Option<FpVector> {
    let p = space.modulus();
    let len = space.cols();
    let outside = |point: &[u8], dirs: &[Vec<u8>]| !sub.contains(point) || dirs.iter().any(|d| !sub.contains(d));
    let mut point = vec![0u8; len];
    let mut dirs: Vec<Vec<u8>> = (0..space.rows()).map(|r| space.row(r).to_vec()).filter(|r| r.iter().any(|&e| e != 0)).collect();
    if !outside(&point, &dirs) {
        return None;
    }
    for i in 0..len {
        let Some(j) = dirs.iter().position(|d| d[i] != 0) else { continue };
        let mut d = dirs.remove(j);
        let inv = p.inv(d[i]);
        d.iter_mut().for_each(|e| *e = p.mul(*e, inv));
        for other in dirs.iter_mut() {
            let f = p.neg(other[i]);
            if f != 0 {
                for (o, &b) in other.iter_mut().zip(&d) {
                    *o = p.add(*o, p.mul(f, b));
                }
            }
        }
        for x in 0..p.get() {
            let shift = p.sub(x, point[i]);
            let cand: Vec<u8> = point.iter().zip(&d).map(|(&a, &b)| p.add(a, p.mul(shift, b))).collect();
            if outside(&cand, &dirs) {
                point = cand;
                break;
            }
        }
    }
    Some(FpVector::new(p, point))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabiliserGroup {
    p: PrimeModulus,
    n: usize,
    generators: Vec<PauliOperator>,
    gmatrix: FpMatrix,
}

impl StabiliserGroup {
    /// Validates commutation, independence and the absence of non-trivial scalars.
    pub fn new(p: PrimeModulus, n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        if generators.iter().any(|g| g.modulus() != p || g.n() != n) {
            return Err(Error::ParameterMismatch);
        }
        if let Some((first, second)) = first_noncommuting(&generators) {
            return Err(Error::NonCommuting { first, second });
        }
        let rows: Vec<FpVector> = generators.iter().map(|g| tau(g).0).collect();
        let gmatrix = FpMatrix::from_rows(p, 2 * n, &rows)?;
        let rank = gmatrix.rank();
        if rank != generators.len() {
            return Err(Error::RankDeficient { rank, expected: generators.len() });
        }
        // full rank leaves M_j^p as the only possible scalars
        for (j, g) in generators.iter().enumerate() {
            if !g.pow(p.get() as u32).is_identity() {
                return Err(Error::InvalidGroup { generator: j });
            }
        }
        Ok(StabiliserGroup { p, n, generators, gmatrix })
    }

    /// Phase-0 generators read off the rows of `g` (x-block then z-block).
    pub fn from_matrix(g: &FpMatrix) -> Result<Self> {
        if !g.cols().is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("generator matrix has odd width {}", g.cols())));
        }
        let gens = g.row_vectors().into_iter().map(|r| tau_inv(&SymplecticVector(r))).collect();
        Self::new(g.modulus(), g.cols() / 2, gens)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators, `n − k`.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn k(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn gmatrix(&self) -> &FpMatrix {
        &self.gmatrix
    }

    /// `M_1^{c_1} ··· M_r^{c_r}` in generator order.
    pub fn product(&self, c: &FpVector) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.p, self.n);
        for (g, &e) in self.generators.iter().zip(c.entries()) {
            if e != 0 {
                acc = acc.multiply(&g.pow(e as u32)).expect("same parameters");
            }
        }
        acc
    }

    /// Subgroup generated by `M^c` for each row `c` of `coeffs`.
    pub fn subgroup(&self, coeffs: &FpMatrix) -> Result<StabiliserGroup> {
        if coeffs.cols() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: coeffs.cols() });
        }
        let gens = coeffs.row_vectors().iter().map(|c| self.product(c)).collect();
        StabiliserGroup::new(self.p, self.n, gens)
    }

    /// Returns the group with its generator list reordered: `perm[i]` is the old index of the
    /// new `i`-th generator.
    pub fn permute_generators(&self, perm: &[usize]) -> Result<StabiliserGroup> {
        let mut seen = vec![false; self.rank()];
        if perm.len() != self.rank() || perm.iter().any(|&i| i >= self.rank() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidParameter("not a permutation of the generators".into()));
        }
        let gens = perm.iter().map(|&i| self.generators[i].clone()).collect();
        StabiliserGroup::new(self.p, self.n, gens)
    }

    /// Basis of `C^{⊥s}`, the symplectic image of the centraliser.
    pub fn centraliser_basis(&self) -> FpMatrix {
        symplectic_dual(&self.gmatrix)
    }

    /// `S_{t,u}`: generators from rows `3..` of `A^{-1}` for the greedy completion `A` of `(t, u)`.
    pub fn subgroup_tu(&self, t: &FpVector, u: &FpVector) -> Result<StabiliserGroup> {
        let r = self.rank();
        if t.len() != r || u.len() != r {
            return Err(Error::DimensionMismatch { expected: r, found: t.len().max(u.len()) });
        }
        if t.is_zero() || u.is_zero() {
            return Err(Error::DependentCentre);
        }
        let a = match complete_basis(self.p, &[t.clone(), u.clone()], r) {
            Ok(a) => a,
            Err(Error::DependentInput) => return Err(Error::DependentCentre),
            Err(e) => return Err(e),
        };
        self.subgroup_with_completion(&a, 2)
    }

    /// Generators from rows `lead..` of `a^{-1}`, where `a` is any non-singular matrix.
    pub fn subgroup_with_completion(&self, a: &FpMatrix, lead: usize) -> Result<StabiliserGroup> {
        let inv = a.inverse().ok_or(Error::DependentInput)?;
        self.subgroup(&inv.select_rows(lead..inv.rows()))
    }

    /// `{M^c : c · t = 0 for all t in ts}`.
    pub fn annihilator_subgroup(&self, ts: &[FpVector]) -> Result<StabiliserGroup> {
        let m = FpMatrix::from_rows(self.p, self.rank(), ts)?;
        self.subgroup(&m.kernel_basis())
    }

    /// Extends the group to `n` generators whose symplectic code is self-dual, adjoining
    /// lexicographically least vectors of the current dual outside the current code.
    pub fn extend_to_maximal_abelian(&self) -> StabiliserGroup {
        let mut gens = self.generators.clone();
        let mut g = self.gmatrix.clone();
        while g.rows() < self.n {
            let dual = symplectic_dual(&g);
            let v = lex_least_outside(&dual, &g.rref()).expect("dual strictly contains a non-maximal isotropic code");
            g = g.stack(&FpMatrix::from_rows(self.p, 2 * self.n, std::slice::from_ref(&v)).expect("width")).expect("width");
            gens.push(tau_inv(&SymplecticVector(v)));
        }
        StabiliserGroup::new(self.p, self.n, gens).expect("extension of a valid group is valid")
    }
}
