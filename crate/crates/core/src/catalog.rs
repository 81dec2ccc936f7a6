//! Reference instances: small graph codes and coding sets used by tests, benches and the CLI.

use crate::field::{FpMatrix, FpVector, PrimeModulus};
use crate::geometry::ProjSubspace;
use crate::pauli::{PauliOperator, StabiliserGroup};
use crate::search::{CodingSet, LabelledGraph};

const F2: PrimeModulus = PrimeModulus::TWO;
const F3: PrimeModulus = PrimeModulus::THREE;

fn bits(rows: &[&[u8]]) -> Vec<FpVector> {
    rows.iter().map(|r| FpVector::new(F2, r.iter().copied())).collect()
}

/// The `[[5,0,3]]` group: cyclic shifts of `XZIIZ`.
pub fn pentagon_group() -> StabiliserGroup {
    let gens = ["XZIIZ", "ZXZII", "IZXZI", "IIZXZ", "ZIIZX"].map(|s| PauliOperator::from_letters(s).expect("letters")).to_vec();
    StabiliserGroup::new(F2, 5, gens).expect("valid group")
}

/// A maximum coding clique for the pentagon lines, with the zero vector.
pub fn pentagon_coding_set() -> CodingSet {
    let vs = bits(&[&[1, 1, 0, 1, 0], &[0, 1, 1, 0, 1], &[1, 0, 1, 1, 0], &[0, 1, 0, 1, 1], &[1, 0, 1, 0, 1]]);
    CodingSet::new(F2, 5, &vs).expect("lengths")
}

/// Generators `M'_i` of the same group, satisfying `M'_i M'_{i+1} M'_{i+3} = M_i` on
/// symplectic parts (indices mod 5).
pub fn pentagon_alternative_generators() -> Vec<PauliOperator> {
    ["ZYXYZ", "ZZYXY", "YZZYX", "XYZZY", "YXYZZ"].map(|s| PauliOperator::from_letters(s).expect("letters")).to_vec()
}

pub fn nine_cycle() -> LabelledGraph {
    LabelledGraph::cycle(F2, 9)
}

/// `X_2 + X_6 = X_3 + X_8 = X_5 + X_9 = 0` (coordinates counted from 1).
pub fn nine_cycle_restriction() -> ProjSubspace {
    let mut m = FpMatrix::zeros(F2, 3, 9);
    for (r, (a, b)) in [(1, 5), (2, 7), (4, 8)].into_iter().enumerate() {
        m.set(r, a, 1);
        m.set(r, b, 1);
    }
    ProjSubspace::from_constraints(&m)
}

/// The eleven non-zero vectors of a size-12 coding set for the 9-cycle.
pub fn nine_cycle_clique_vectors() -> Vec<FpVector> {
    bits(&[
        &[0, 0, 1, 0, 1, 0, 0, 1, 1],
        &[0, 0, 1, 1, 0, 0, 0, 1, 0],
        &[0, 1, 0, 0, 1, 1, 0, 0, 1],
        &[0, 1, 0, 1, 0, 1, 1, 0, 0],
        &[0, 1, 1, 0, 1, 1, 1, 1, 1],
        &[1, 0, 0, 1, 0, 0, 1, 0, 0],
        &[1, 0, 1, 0, 0, 0, 1, 1, 0],
        &[1, 0, 1, 1, 1, 0, 1, 1, 1],
        &[1, 1, 0, 0, 0, 1, 0, 0, 0],
        &[1, 1, 0, 1, 1, 1, 1, 0, 1],
        &[1, 1, 1, 1, 1, 1, 0, 1, 1],
    ])
}

pub fn nine_cycle_coding_set() -> CodingSet {
    CodingSet::new(F2, 9, &nine_cycle_clique_vectors()).expect("lengths")
}

const TERNARY_G: [[u8; 22]; 7] = [
    [1, 2, 2, 0, 0, 2, 0, 2, 0, 2, 2, 0, 1, 2, 2, 2, 0, 0, 0, 1, 2, 0],
    [0, 1, 0, 2, 2, 0, 1, 1, 1, 0, 0, 2, 0, 0, 2, 2, 0, 2, 0, 1, 1, 0],
    [1, 0, 2, 1, 1, 0, 2, 0, 0, 2, 0, 0, 1, 1, 0, 1, 0, 0, 1, 2, 0, 0],
    [0, 1, 2, 2, 1, 1, 2, 2, 0, 0, 1, 0, 2, 0, 0, 0, 0, 2, 1, 2, 1, 0],
    [2, 2, 1, 1, 0, 0, 2, 2, 0, 2, 2, 0, 2, 0, 1, 1, 2, 1, 1, 1, 2, 1],
    [0, 0, 1, 2, 0, 2, 2, 2, 0, 0, 2, 2, 1, 2, 1, 1, 2, 0, 1, 2, 2, 0],
    [0, 0, 0, 1, 1, 1, 2, 0, 1, 0, 2, 2, 0, 1, 1, 2, 0, 1, 2, 0, 0, 0],
];

/// An 11-qutrit group with 7 generators.
pub fn ternary_group() -> StabiliserGroup {
    let rows: Vec<FpVector> = TERNARY_G.iter().map(|r| FpVector::new(F3, r.iter().copied())).collect();
    let g = FpMatrix::from_rows(F3, 22, &rows).expect("width");
    StabiliserGroup::from_matrix(&g).expect("valid group")
}

/// A 2-dimensional subspace of `F_3^7` coding set for [`ternary_group`].
pub fn ternary_coding_set() -> CodingSet {
    let rows: [[u8; 7]; 9] = [
        [0, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0, 1],
        [2, 0, 0, 0, 0, 0, 2],
        [1, 0, 1, 1, 0, 1, 1],
        [2, 0, 2, 2, 0, 2, 2],
        [1, 0, 2, 2, 0, 2, 1],
        [2, 0, 1, 1, 0, 1, 2],
        [0, 0, 1, 1, 0, 1, 0],
        [0, 0, 2, 2, 0, 2, 0],
    ];
    let vs: Vec<FpVector> = rows.iter().map(|r| FpVector::new(F3, r.iter().copied())).collect();
    CodingSet::exact(F3, 7, &vs).expect("lengths")
}
