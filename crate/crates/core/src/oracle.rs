//! Dense complex-matrix ground truth for small codes.
//!
//! Basis states are `|x⟩` for `x ∈ F_p^n`, indexed with qupit 0 most significant. Pauli
//! operators act as monomial matrices: `X(a)Z(b)|x⟩ = ω^{x·b} |x + a⟩`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{tuples, FpVector, PrimeModulus};
use crate::pauli::{first_noncommuting, PauliOperator, StabiliserGroup};
use crate::search::CodingSet;

/// Largest supported Hilbert space dimension.
pub const MAX_DIM: usize = 1 << 14;

fn hilbert_dim(p: PrimeModulus, n: usize) -> Result<usize> {
    let big = || Error::TooLarge { p: p.get(), n };
    let dim = (p.get() as usize).checked_pow(n as u32).ok_or_else(big)?;
    if dim > MAX_DIM {
        return Err(big());
    }
    Ok(dim)
}

/// `e^{2πi e/q}`.
fn root_of_unity(e: u32, q: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (e % q) as f64 / q as f64)
}

/// `|x⟩ ↦ phase[x] |perm[x]⟩`.
#[derive(Clone, Debug)]
pub struct Monomial {
    perm: Vec<usize>,
    phase: Vec<Complex64>,
}

impl Monomial {
    pub fn from_pauli(m: &PauliOperator) -> Result<Self> {
        let p = m.modulus();
        let n = m.n();
        let dim = hilbert_dim(p, n)?;
        let pp = p.get() as usize;
        let (x, z) = (m.x_part().entries(), m.z_part().entries());
        // qubit letters carry i^{x·z}; see the phase convention in `pauli`
        let (global, q) = if pp == 2 {
            let y = x.iter().zip(z).filter(|(&a, &b)| a == 1 && b == 1).count() as u32;
            (m.phase() as u32 + y, 4)
        } else {
            (m.phase() as u32, pp as u32)
        };
        let g = root_of_unity(global, q);
        let mut perm = vec![0; dim];
        let mut phase = vec![Complex64::new(0.0, 0.0); dim];
        let mut digits = vec![0usize; n];
        for (idx, slot) in perm.iter_mut().enumerate() {
            let mut rest = idx;
            for j in (0..n).rev() {
                digits[j] = rest % pp;
                rest /= pp;
            }
            let mut target = 0;
            let mut xb = 0;
            for j in 0..n {
                target = target * pp + (digits[j] + x[j] as usize) % pp;
                xb += digits[j] * z[j] as usize;
            }
            *slot = target;
            let w = if pp == 2 { root_of_unity(2 * (xb % 2) as u32, 4) } else { root_of_unity((xb % pp) as u32, pp as u32) };
            phase[idx] = g * w;
        }
        Ok(Monomial { perm, phase })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Column `x` has a single entry `phase[x]` in row `perm[x]`.
    pub fn entry(&self, x: usize) -> (usize, Complex64) {
        (self.perm[x], self.phase[x])
    }

    pub fn to_dense(&self) -> DenseOperator {
        let mut d = DenseOperator::zeros(self.dim());
        d.add_monomial(self, Complex64::new(1.0, 0.0));
        d
    }
}

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        DenseOperator { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut d = Self::zeros(dim);
        for i in 0..dim {
            d.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        d
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
        }
        Ok(DenseOperator { dim, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    fn add_monomial(&mut self, m: &Monomial, scale: Complex64) {
        for x in 0..self.dim {
            let (r, v) = m.entry(x);
            self.data[r * self.dim + x] += scale * v;
        }
    }

    fn check_dim(&self, other: &DenseOperator) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.check_dim(other)?;
        Ok(DenseOperator { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.check_dim(other)?;
        Ok(DenseOperator { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: Complex64) -> DenseOperator {
        DenseOperator { dim: self.dim, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out.data[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> DenseOperator {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖A² − A‖_F`.
    pub fn idempotency_residual(&self) -> f64 {
        self.mul(self).and_then(|sq| sq.sub(self)).map(|d| d.frobenius_norm()).unwrap_or(f64::INFINITY)
    }

    /// `‖A − A†‖_F`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.sub(&self.adjoint()).map(|d| d.frobenius_norm()).unwrap_or(f64::INFINITY)
    }
}

pub fn pauli_dense(m: &PauliOperator) -> Result<DenseOperator> {
    Ok(Monomial::from_pauli(m)?.to_dense())
}

/// Projector onto the joint `+1` eigenspace of `ω^{t_i} M_i` (for qubits, `(−1)^{t_i} M_i`):
/// `(1/|S|) Σ_c ω^{c·t} M^c`.
pub fn component_projector(s: &StabiliserGroup, t: &FpVector) -> Result<DenseOperator> {
    let p = s.modulus();
    let dim = hilbert_dim(p, s.n())?;
    if t.len() != s.rank() {
        return Err(Error::DimensionMismatch { expected: s.rank(), found: t.len() });
    }
    if let Some((first, second)) = first_noncommuting(s.generators()) {
        return Err(Error::NonCommuting { first, second });
    }
    let mut out = DenseOperator::zeros(dim);
    let order = (p.get() as f64).powi(s.rank() as i32);
    for c in tuples(p, s.rank()) {
        let c = FpVector::new(p, c);
        let w = root_of_unity(c.dot(t) as u32, p.get() as u32) / order;
        out.add_monomial(&Monomial::from_pauli(&s.product(&c))?, w);
    }
    let expected = (p.get() as f64).powi(s.k() as i32);
    if out.trace().re < expected - 1e-9 * dim as f64 {
        return Err(Error::InvalidGroup { generator: 0 });
    }
    Ok(out)
}

/// `Σ_{t ∈ T} P_t`.
pub fn code_projector(s: &StabiliserGroup, t: &CodingSet) -> Result<DenseOperator> {
    let dim = hilbert_dim(s.modulus(), s.n())?;
    let mut out = DenseOperator::zeros(dim);
    for v in t.vectors() {
        out = out.add(&component_projector(s, v)?)?;
    }
    Ok(out)
}

/// Phase-free Pauli operators with weight in `1..=max_weight`, one per symplectic class.
#[derive(Clone, Debug)]
pub struct ErrorSet {
    errors: Vec<PauliOperator>,
}

impl ErrorSet {
    pub fn up_to_weight(p: PrimeModulus, n: usize, max_weight: usize) -> Self {
        let mut errors = Vec::new();
        for xz in tuples(p, 2 * n) {
            let x = FpVector::new(p, xz[..n].iter().copied());
            let z = FpVector::new(p, xz[n..].iter().copied());
            let e = PauliOperator::new(0, x, z).expect("same length");
            let w = e.weight();
            if (1..=max_weight).contains(&w) {
                errors.push(e);
            }
        }
        ErrorSet { errors }
    }

    pub fn from_operators(errors: Vec<PauliOperator>) -> Self {
        ErrorSet { errors }
    }

    pub fn errors(&self) -> &[PauliOperator] {
        &self.errors
    }

    pub fn len(&self) -> usize {
        self.errors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.errors.is_empty()
    }

    /// Number of errors of exactly weight `w`.
    pub fn count_weight(&self, w: usize) -> usize {
        self.errors.iter().filter(|e| e.weight() == w).count()
    }
}

#[derive(Clone, Debug)]
pub struct KlReport {
    pub pass: bool,
    /// Rank of the projector.
    pub dim: usize,
    pub max_residual: f64,
    /// `c_E = tr(P E) / tr(P)` for every error, in order.
    pub alphas: Vec<Complex64>,
    pub residuals: Vec<f64>,
    /// Index of the first error whose residual exceeds the tolerance.
    pub first_failure: Option<usize>,
}

pub const KL_TOLERANCE: f64 = 1e-9;

/// Orthonormal basis (columns, as vectors) of the range of a projector.
fn range_basis(pr: &DenseOperator) -> Result<Vec<Vec<Complex64>>> {
    let n = pr.dim();
    let rank = pr.trace().re.round().max(0.0) as usize;
    let mut cols: Vec<usize> = (0..n).collect();
    cols.sort_by(|&a, &b| pr.get(b, b).re.total_cmp(&pr.get(a, a).re).then(a.cmp(&b)));
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(rank);
    for c in cols {
        if basis.len() == rank {
            break;
        }
        let mut v: Vec<Complex64> = (0..n).map(|r| pr.get(r, c)).collect();
        for _ in 0..2 {
            for b in &basis {
                let ip: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                v.iter_mut().zip(b).for_each(|(y, x)| *y -= ip * x);
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            v.iter_mut().for_each(|a| *a /= norm);
            basis.push(v);
        }
    }
    // ‖P − V V†‖_F
    let mut resid = 0.0;
    for i in 0..n {
        for j in 0..n {
            let vv: Complex64 = basis.iter().map(|b| b[i] * b[j].conj()).sum();
            resid += (pr.get(i, j) - vv).norm_sqr();
        }
    }
    let resid = resid.sqrt();
    if resid > KL_TOLERANCE {
        return Err(Error::NotProjector { residual: resid });
    }
    Ok(basis)
}

/// Checks `P E P = c_E P` for every error, via `V† E V = c_E I` on an orthonormal basis `V`
/// of the code space; the residual `‖V†EV − c_E I‖_F / √K` equals `‖PEP − c_E P‖_F / ‖P‖_F`.
pub fn kl_detect(pr: &DenseOperator, errs: &ErrorSet) -> Result<KlReport> {
    let basis = range_basis(pr)?;
    let kdim = basis.len();
    let mut alphas = Vec::with_capacity(errs.len());
    let mut residuals = Vec::with_capacity(errs.len());
    for e in errs.errors() {
        let m = Monomial::from_pauli(e)?;
        if m.dim() != pr.dim() {
            return Err(Error::DimensionMismatch { expected: pr.dim(), found: m.dim() });
        }
        // columns of E V
        let ev: Vec<Vec<Complex64>> = basis
            .iter()
            .map(|b| {
                let mut out = vec![Complex64::new(0.0, 0.0); b.len()];
                for (x, &bx) in b.iter().enumerate() {
                    let (r, ph) = m.entry(x);
                    out[r] += ph * bx;
                }
                out
            })
            .collect();
        let mut g = vec![Complex64::new(0.0, 0.0); kdim * kdim];
        for i in 0..kdim {
            for j in 0..kdim {
                g[i * kdim + j] = basis[i].iter().zip(&ev[j]).map(|(a, b)| a.conj() * b).sum();
            }
        }
        let c: Complex64 = (0..kdim).map(|i| g[i * kdim + i]).sum::<Complex64>() / kdim.max(1) as f64;
        let mut r2 = 0.0;
        for i in 0..kdim {
            for j in 0..kdim {
                let target = if i == j { c } else { Complex64::new(0.0, 0.0) };
                r2 += (g[i * kdim + j] - target).norm_sqr();
            }
        }
        alphas.push(c);
        residuals.push(if kdim == 0 { 0.0 } else { r2.sqrt() / (kdim as f64).sqrt() });
    }
    let first_failure = residuals.iter().position(|&r| r > KL_TOLERANCE);
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(KlReport { pass: first_failure.is_none(), dim: kdim, max_residual, alphas, residuals, first_failure })
}

/// `‖a − b‖_F ≤ 1e−8 · dim`.
pub fn subspace_equal(a: &DenseOperator, b: &DenseOperator) -> Result<bool> {
    Ok(a.sub(b)?.frobenius_norm() <= 1e-8 * a.dim() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: PrimeModulus = PrimeModulus::TWO;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pl(s: &str) -> PauliOperator {
        PauliOperator::from_letters(s).unwrap()
    }

    fn close(a: &DenseOperator, b: &DenseOperator) -> bool {
        a.sub(b).unwrap().frobenius_norm() < 1e-12
    }

    #[test]
    fn qubit_pauli_matrices() {
        let x = DenseOperator::from_rows(&[vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]]).unwrap();
        let y = DenseOperator::from_rows(&[vec![c(0., 0.), c(0., -1.)], vec![c(0., 1.), c(0., 0.)]]).unwrap();
        let z = DenseOperator::from_rows(&[vec![c(1., 0.), c(0., 0.)], vec![c(0., 0.), c(-1., 0.)]]).unwrap();
        assert!(close(&pauli_dense(&pl("X")).unwrap(), &x));
        assert!(close(&pauli_dense(&pl("Y")).unwrap(), &y));
        assert!(close(&pauli_dense(&pl("Z")).unwrap(), &z));
        assert!(close(&pauli_dense(&pl("III")).unwrap(), &DenseOperator::identity(8)));
    }

    #[test]
    fn qutrit_z_is_diagonal_roots() {
        let p = PrimeModulus::THREE;
        let z = PauliOperator::new(0, FpVector::new(p, [0]), FpVector::new(p, [1])).unwrap();
        let d = pauli_dense(&z).unwrap();
        for j in 0..3 {
            assert!((d.get(j, j) - root_of_unity(j as u32, 3)).norm() < 1e-15);
        }
    }

    #[test]
    fn dense_products_match_symbolic() {
        for (a, b) in [("XZ", "ZY"), ("YY", "XI"), ("iZX", "-YZ")] {
            let (a, b) = (pl(a), pl(b));
            let lhs = pauli_dense(&a.multiply(&b).unwrap()).unwrap();
            let rhs = pauli_dense(&a).unwrap().mul(&pauli_dense(&b).unwrap()).unwrap();
            assert!(close(&lhs, &rhs));
        }
    }

    #[test]
    fn guard_rejects_large_spaces() {
        assert!(matches!(pauli_dense(&PauliOperator::identity(F2, 15)), Err(Error::TooLarge { p: 2, n: 15 })));
    }

    #[test]
    fn z_stabiliser_projects_onto_zero() {
        let s = StabiliserGroup::new(F2, 1, vec![pl("Z")]).unwrap();
        let pr = component_projector(&s, &FpVector::zeros(F2, 1)).unwrap();
        let expect = DenseOperator::from_rows(&[vec![c(1., 0.), c(0., 0.)], vec![c(0., 0.), c(0., 0.)]]).unwrap();
        assert!(close(&pr, &expect));
    }

    #[test]
    fn identity_projector_kl() {
        let errs = ErrorSet::up_to_weight(F2, 2, 2);
        assert_eq!(errs.len(), 15);
        let r = kl_detect(&DenseOperator::identity(4), &errs).unwrap();
        // c_E = tr(E)/dim = 0, and PEP = E is far from scalar
        assert!(r.alphas.iter().all(|a| a.norm() < 1e-12));
        assert!(r.residuals.iter().all(|&x| (x - 1.0).abs() < 1e-12));
        assert!(!r.pass);
        assert_eq!(r.first_failure, Some(0));
    }

    #[test]
    fn non_projector_is_rejected() {
        let m = DenseOperator::identity(2).scale(c(0.5, 0.0));
        assert!(matches!(kl_detect(&m, &ErrorSet::up_to_weight(F2, 1, 1)), Err(Error::NotProjector { .. })));
    }

    #[test]
    fn error_set_counts() {
        let e = ErrorSet::up_to_weight(F2, 5, 1);
        assert_eq!(e.len(), 15);
        let e9 = ErrorSet::up_to_weight(F2, 4, 2);
        assert_eq!(e9.count_weight(1), 12);
        assert_eq!(e9.count_weight(2), 54);
    }
}
