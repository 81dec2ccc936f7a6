//! Random instances and property checks shared by the property suites and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use stabgeom::field::tuples;
use stabgeom::lines::lines_from_matrix;
use stabgeom::oracle::{code_projector, component_projector, subspace_equal};
use stabgeom::pauli::{symplectic_dual, tau_inv};
use stabgeom::{is_abelian, symplectic_form, CodingSet, Error, FpMatrix, FpVector, PauliOperator, PrimeModulus, StabiliserGroup, SymplecticVector};

/// Deterministic draw from a byte pool.
pub struct Draw<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Draw<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Draw { bytes, pos: 0 }
    }

    pub fn next(&mut self) -> u8 {
        let len = self.bytes.len().max(1);
        let b = self.bytes.get(self.pos % len).copied().unwrap_or(0);
        let round = (self.pos / len) as u8;
        self.pos += 1;
        b ^ round.wrapping_mul(151)
    }

    pub fn below(&mut self, m: u8) -> u8 {
        self.next() % m
    }

    pub fn vector(&mut self, p: PrimeModulus, len: usize) -> FpVector {
        FpVector::new(p, (0..len).map(|_| self.below(p.get())).collect::<Vec<_>>())
    }
}

pub fn modulus(p: u8) -> PrimeModulus {
    PrimeModulus::new(p as u32).unwrap()
}

/// `(p, n, bytes)` with `p ∈ {2, 3}`, `1 ≤ n ≤ max_n`.
pub fn instance(max_n: usize) -> impl Strategy<Value = (u8, usize, Vec<u8>)> {
    (prop_oneof![Just(2u8), Just(3u8)], 1..=max_n, proptest::collection::vec(any::<u8>(), 96))
}

/// Random abelian group with `r` generators, none a non-trivial scalar multiple; may return
/// fewer generators if the draws keep landing in the current span.
pub fn random_abelian(p: PrimeModulus, n: usize, r: usize, draw: &mut Draw) -> StabiliserGroup {
    let mut rows: Vec<FpVector> = Vec::new();
    let mut gens = Vec::new();
    let mut attempts = 0;
    while rows.len() < r && attempts < 64 {
        attempts += 1;
        let g = FpMatrix::from_rows(p, 2 * n, &rows).unwrap();
        let dual = symplectic_dual(&g);
        let coeffs = draw.vector(p, dual.rows());
        let v = dual.left_mul_vec(&coeffs).unwrap();
        let mut trial = rows.clone();
        trial.push(v.clone());
        if FpMatrix::from_rows(p, 2 * n, &trial).unwrap().rank() <= rows.len() {
            continue;
        }
        let phase = if p.get() == 2 { 2 * draw.below(2) } else { draw.below(p.get()) };
        gens.push(tau_inv(&SymplecticVector::new(v.clone()).unwrap()).shift_phase(phase));
        rows.push(v);
    }
    StabiliserGroup::new(p, n, gens).unwrap()
}

pub fn random_pauli(p: PrimeModulus, n: usize, draw: &mut Draw) -> PauliOperator {
    let phase = draw.below(if p.get() == 2 { 4 } else { p.get() });
    PauliOperator::new(phase, draw.vector(p, n), draw.vector(p, n)).unwrap()
}

/// All elements `M^c` of the group.
pub fn elements(s: &StabiliserGroup) -> BTreeSet<PauliOperator> {
    tuples(s.modulus(), s.rank()).map(|c| s.product(&FpVector::new(s.modulus(), c))).collect()
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

pub fn check_form(p: u8, n: usize, bytes: &[u8]) -> Result<(), TestCaseError> {
    let p = modulus(p);
    let mut d = Draw::new(bytes);
    let u = SymplecticVector::new(d.vector(p, 2 * n)).unwrap();
    let v = SymplecticVector::new(d.vector(p, 2 * n)).unwrap();
    let uv = symplectic_form(&u, &v).unwrap();
    let vu = symplectic_form(&v, &u).unwrap();
    prop_assert_eq!(p.add(uv, vu), 0, "antisymmetry");
    prop_assert_eq!(symplectic_form(&u, &u).unwrap(), 0, "self-orthogonality");
    Ok(())
}

pub fn check_tau_round_trip(p: u8, n: usize, bytes: &[u8]) -> Result<(), TestCaseError> {
    let p = modulus(p);
    let mut d = Draw::new(bytes);
    let v = SymplecticVector::new(d.vector(p, 2 * n)).unwrap();
    prop_assert_eq!(tau_inv(&v).tau(), v);
    let m = random_pauli(p, n, &mut d);
    let back = tau_inv(&m.tau());
    prop_assert_eq!(back.x_part(), m.x_part());
    prop_assert_eq!(back.z_part(), m.z_part());
    prop_assert_eq!(back.phase(), 0);
    Ok(())
}

/// abelian ⟺ all pairwise forms vanish ⟺ (p = 2) even-skew, on a mix of abelian and
/// perturbed generator sets.
pub fn check_abelian_equivalence(p: u8, n: usize, bytes: &[u8]) -> Result<(), TestCaseError> {
    let p = modulus(p);
    let mut d = Draw::new(bytes);
    let r = 1 + d.below(n as u8) as usize;
    let base = random_abelian(p, n, r, &mut d);
    let mut gens: Vec<PauliOperator> = base.generators().to_vec();
    if d.below(2) == 1 && !gens.is_empty() {
        let i = d.below(gens.len() as u8) as usize;
        gens[i] = random_pauli(p, n, &mut d);
    }
    let pairwise = gens.iter().all(|a| gens.iter().all(|b| symplectic_form(&a.tau(), &b.tau()).unwrap() == 0));
    prop_assert_eq!(is_abelian(&gens), pairwise);
    if p.get() == 2 {
        let rows: Vec<FpVector> = gens.iter().map(|g| g.tau().as_vector().clone()).collect();
        let g = FpMatrix::from_rows(p, 2 * n, &rows).unwrap();
        match lines_from_matrix(&g) {
            Ok(x) => prop_assert_eq!(x.validate_even_skew().unwrap(), pairwise, "even-skew vs abelian"),
            Err(Error::DegenerateLine { .. }) => {}
            Err(e) => return Err(fail(format!("unexpected {e}"))),
        }
    }
    Ok(())
}

/// Minimum symplectic weight over non-zero vectors of the centraliser, by enumeration.
pub fn dual_min_weight(s: &StabiliserGroup) -> usize {
    let c = s.centraliser_basis();
    let p = s.modulus();
    let mut best = usize::MAX;
    for coeffs in tuples(p, c.rows()) {
        if coeffs.iter().all(|&e| e == 0) {
            continue;
        }
        let v = c.left_mul_vec(&FpVector::new(p, coeffs)).unwrap();
        best = best.min(SymplecticVector::new(v).unwrap().weight());
    }
    best
}

pub fn check_dual_weight(p: u8, n: usize, bytes: &[u8]) -> Result<(), TestCaseError> {
    let p = modulus(p);
    let mut d = Draw::new(bytes);
    // lines need rank >= 2, and large rank makes degenerate columns rarer
    let r = n.saturating_sub(d.below(2) as usize).max(1);
    let s = random_abelian(p, n, r, &mut d);
    let Ok(x) = lines_from_matrix(s.gmatrix()) else { return Ok(()) };
    let w = dual_min_weight(&s);
    let got = x.min_dependent_set(n);
    prop_assert_eq!(got, stabgeom::Distance::Exact(w), "d(X) vs dual weight");
    Ok(())
}

/// Two independent vectors of `F_p^r`, or `None` when `r < 2`.
fn independent_pair(p: PrimeModulus, r: usize, d: &mut Draw) -> Option<(FpVector, FpVector)> {
    if r < 2 {
        return None;
    }
    for _ in 0..32 {
        let t = d.vector(p, r);
        let u = d.vector(p, r);
        if FpMatrix::from_rows(p, r, &[t.clone(), u.clone()]).unwrap().rank() == 2 {
            return Some((t, u));
        }
    }
    None
}

/// Random non-singular matrix whose first two columns are `t` and `u`.
fn random_completion(p: PrimeModulus, t: &FpVector, u: &FpVector, d: &mut Draw) -> Option<FpMatrix> {
    let r = t.len();
    for _ in 0..64 {
        let mut cols = vec![t.clone(), u.clone()];
        for _ in 2..r {
            cols.push(d.vector(p, r));
        }
        let a = FpMatrix::from_columns(p, r, &cols).unwrap();
        if a.rank() == r {
            return Some(a);
        }
    }
    None
}

pub fn check_completion_independence(p: u8, n: usize, bytes: &[u8]) -> Result<(), TestCaseError> {
    let p = modulus(p);
    let mut d = Draw::new(bytes);
    let r = 2 + d.below(n as u8) as usize;
    let s = random_abelian(p, n, r.min(n), &mut d);
    let Some((t, u)) = independent_pair(p, s.rank(), &mut d) else { return Ok(()) };
    let Some(a) = random_completion(p, &t, &u, &mut d) else { return Ok(()) };
    let std = s.subgroup_tu(&t, &u).unwrap();
    let alt = s.subgroup_with_completion(&a, 2).unwrap();
    prop_assert_eq!(elements(&std), elements(&alt), "S_tu depends on the completion");
    // every element M^c has c orthogonal to t and u
    for g in std.generators() {
        let commutes = s.generators().iter().all(|m| m.commutes_with(g).unwrap());
        prop_assert!(commutes);
    }
    Ok(())
}

pub fn check_projection_matches_subgroup(p: u8, n: usize, bytes: &[u8]) -> Result<(), TestCaseError> {
    let p = modulus(p);
    let mut d = Draw::new(bytes);
    let r = 2 + d.below(n as u8) as usize;
    let s = random_abelian(p, n, r.min(n), &mut d);
    let Ok(x) = lines_from_matrix(s.gmatrix()) else { return Ok(()) };
    let Some((t, u)) = independent_pair(p, s.rank(), &mut d) else { return Ok(()) };
    let sub = s.subgroup_tu(&t, &u).unwrap();
    match (x.project_lines(&[t, u]), lines_from_matrix(sub.gmatrix())) {
        (Ok(a), Ok(b)) => {
            prop_assert_eq!(&a, &b);
            if p.get() == 2 {
                prop_assert!(a.validate_even_skew().unwrap(), "projection lost even-skew");
            }
        }
        (Err(Error::CollapsedImage { line: Some(i) }), Err(Error::DegenerateLine { line: j })) => prop_assert_eq!(i, j),
        (a, b) => return Err(fail(format!("projection {a:?} vs subgroup lines {b:?}"))),
    }
    Ok(())
}

pub fn check_extension(p: u8, n: usize, bytes: &[u8]) -> Result<(), TestCaseError> {
    let p = modulus(p);
    let mut d = Draw::new(bytes);
    let r = d.below(n as u8 + 1) as usize;
    let s = random_abelian(p, n, r, &mut d);
    let e = s.extend_to_maximal_abelian();
    prop_assert_eq!(e.rank(), n);
    prop_assert!(is_abelian(e.generators()));
    prop_assert_eq!(&e.generators()[..s.rank()], s.generators());
    let own = e.gmatrix().rref().basis();
    prop_assert_eq!(e.centraliser_basis().rref().basis(), own, "not self-dual");
    Ok(())
}

/// `Q(S, T) = Q(S')` with `S' = {M^c : c ⊥ T}` for a random subspace `T` of rank at most 2.
pub fn check_subspace_reduction(p: u8, n: usize, bytes: &[u8]) -> Result<(), TestCaseError> {
    let p = modulus(p);
    let n = n.min(5);
    let mut d = Draw::new(bytes);
    let r = 1 + d.below(n as u8) as usize;
    let s = random_abelian(p, n, r, &mut d);
    let span_len = d.below(3) as usize;
    let basis: Vec<FpVector> = (0..span_len).map(|_| d.vector(p, s.rank())).collect();
    let span: Vec<FpVector> = tuples(p, basis.len())
        .map(|c| basis.iter().zip(&c).fold(FpVector::zeros(p, s.rank()), |acc, (b, &k)| acc.add_scaled(b, k)))
        .collect();
    let t = CodingSet::new(p, s.rank(), &span).unwrap();
    let lhs = code_projector(&s, &t).unwrap();
    let sp = s.annihilator_subgroup(&basis).unwrap();
    let rhs = component_projector(&sp, &FpVector::zeros(p, sp.rank())).unwrap();
    prop_assert!(subspace_equal(&lhs, &rhs).unwrap(), "Q(S,T) != Q(S')");
    Ok(())
}
