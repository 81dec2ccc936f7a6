//! Exact linear algebra over a small prime field F_p.
//!
//! Residues are stored as `u8` in `[0, p)`; every operation reduces eagerly so
//! structural equality is value equality. Matrices are dense and row-major.

use std::fmt;

use crate::error::{Error, Result};

/// A prime `p` with `2 <= p <= 31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u8);

impl PrimeModulus {
    pub const TWO: PrimeModulus = PrimeModulus(2);
    pub const THREE: PrimeModulus = PrimeModulus(3);

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=31).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeModulus(p as u8))
    }

    #[inline]
    pub fn get(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.0 as i64) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.0 as u16 - b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.0 as u16) as u8
    }

    pub fn pow(self, mut base: u8, mut exp: u32) -> u8 {
        let mut acc = 1u8 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a non-zero residue.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(!a.is_multiple_of(self.0), "inverse of zero");
        self.pow(a, self.0 as u32 - 2)
    }

    /// All non-zero residues in increasing order.
    pub fn units(self) -> impl Iterator<Item = u8> {
        1..self.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector {
    p: PrimeModulus,
    entries: Vec<u8>,
}

impl FpVector {
    /// Builds a vector, reducing each entry mod p.
    pub fn new(p: PrimeModulus, entries: impl IntoIterator<Item = u8>) -> Self {
        let entries = entries.into_iter().map(|e| e % p.get()).collect();
        FpVector { p, entries }
    }

    pub fn from_i64(p: PrimeModulus, entries: &[i64]) -> Self {
        FpVector { p, entries: entries.iter().map(|&e| p.reduce(e)).collect() }
    }

    pub fn zeros(p: PrimeModulus, len: usize) -> Self {
        FpVector { p, entries: vec![0; len] }
    }

    pub fn unit(p: PrimeModulus, len: usize, i: usize) -> Self {
        let mut v = Self::zeros(p, len);
        v.entries[i] = 1;
        v
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: u8) {
        self.entries[i] = value % self.p.get();
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Index of the first non-zero entry.
    pub fn leading(&self) -> Option<usize> {
        self.entries.iter().position(|&e| e != 0)
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        debug_assert_eq!(self.len(), other.len());
        let p = self.p;
        FpVector { p, entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| p.add(a, b)).collect() }
    }

    pub fn sub(&self, other: &FpVector) -> FpVector {
        debug_assert_eq!(self.len(), other.len());
        let p = self.p;
        FpVector { p, entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| p.sub(a, b)).collect() }
    }

    pub fn scale(&self, c: u8) -> FpVector {
        let p = self.p;
        FpVector { p, entries: self.entries.iter().map(|&a| p.mul(a, c)).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &FpVector, c: u8) -> FpVector {
        let p = self.p;
        FpVector {
            p,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| p.add(a, p.mul(b, c))).collect(),
        }
    }

    pub fn dot(&self, other: &FpVector) -> u8 {
        dot(self.p, &self.entries, &other.entries)
    }

    /// Scales so the first non-zero entry is 1; `None` for the zero vector.
    pub fn normalized(&self) -> Option<FpVector> {
        let lead = self.leading()?;
        Some(self.scale(self.p.inv(self.entries[lead])))
    }

    pub fn concat(&self, other: &FpVector) -> FpVector {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        FpVector { p: self.p, entries }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> FpVector {
        FpVector { p: self.p, entries: self.entries[range].to_vec() }
    }

    pub fn into_entries(self) -> Vec<u8> {
        self.entries
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn dot(p: PrimeModulus, a: &[u8], b: &[u8]) -> u8 {
    let s: u32 = a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum();
    (s % p.get() as u32) as u8
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: PrimeModulus,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Output of [`FpMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; the first `rank` rows are the basis, the rest zero.
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Rref {
    /// The non-zero rows of the echelon form.
    pub fn basis(&self) -> FpMatrix {
        self.matrix.select_rows(0..self.rank)
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let p = self.matrix.p;
        let mut out = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            let f = out[c];
            if f != 0 {
                let nf = p.neg(f);
                for (o, &b) in out.iter_mut().zip(self.matrix.row(r)) {
                    *o = p.add(*o, p.mul(nf, b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&e| e == 0)
    }
}

impl FpMatrix {
    pub fn new(p: PrimeModulus, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        let data = data.into_iter().map(|e| e % p.get()).collect();
        Ok(FpMatrix { p, rows, cols, data })
    }

    pub fn zeros(p: PrimeModulus, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: PrimeModulus, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Stacks vectors as rows. All vectors must share one length; with no rows `cols` is used.
    pub fn from_rows(p: PrimeModulus, cols: usize, rows: &[FpVector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch { left: cols, right: r.len() });
            }
            data.extend_from_slice(r.entries());
        }
        Ok(FpMatrix { p, rows: rows.len(), cols, data })
    }

    /// Places vectors as columns.
    pub fn from_columns(p: PrimeModulus, rows: usize, columns: &[FpVector]) -> Result<Self> {
        Ok(Self::from_rows(p, rows, columns)?.transpose())
    }

    /// Convenience constructor from nested integer rows (entries reduced mod p).
    pub fn from_nested(p: PrimeModulus, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let vs: Vec<FpVector> = rows.iter().map(|r| FpVector::from_i64(p, r)).collect();
        Self::from_rows(p, cols, &vs)
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.p.get();
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vector(&self, r: usize) -> FpVector {
        FpVector { p: self.p, entries: self.row(r).to_vec() }
    }

    pub fn row_vectors(&self) -> Vec<FpVector> {
        (0..self.rows).map(|r| self.row_vector(r)).collect()
    }

    pub fn column(&self, c: usize) -> FpVector {
        FpVector { p: self.p, entries: (0..self.rows).map(|r| self.get(r, c)).collect() }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> FpMatrix {
        let mut data = Vec::new();
        let mut count = 0;
        for r in rows {
            data.extend_from_slice(self.row(r));
            count += 1;
        }
        FpMatrix { p: self.p, rows: count, cols: self.cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        FpMatrix { p: self.p, rows: self.rows, cols: cols.len(), data }
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: below.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(FpMatrix { p: self.p, rows: self.rows + below.rows, cols: self.cols, data })
    }

    pub fn mul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let p = self.p;
        let mut out = FpMatrix::zeros(p, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let idx = r * rhs.cols + c;
                    out.data[idx] = p.add(out.data[idx], p.mul(a, rhs.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &FpVector) -> Result<FpVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok(FpVector { p: self.p, entries: (0..self.rows).map(|r| dot(self.p, self.row(r), v.entries())).collect() })
    }

    /// Row vector times matrix: `c · M`.
    pub fn left_mul_vec(&self, c: &FpVector) -> Result<FpVector> {
        if c.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: c.len() });
        }
        let p = self.p;
        let mut out = vec![0u8; self.cols];
        for (r, &cr) in c.entries().iter().enumerate() {
            if cr != 0 {
                for (o, &m) in out.iter_mut().zip(self.row(r)) {
                    *o = p.add(*o, p.mul(cr, m));
                }
            }
        }
        Ok(FpVector { p, entries: out })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&r| m.get(r, c) != 0) else { continue };
            m.swap_rows(pr, rank);
            let inv = p.inv(m.get(rank, c));
            for x in &mut m.data[rank * m.cols..(rank + 1) * m.cols] {
                *x = p.mul(*x, inv);
            }
            for r in 0..m.rows {
                if r == rank {
                    continue;
                }
                let f = m.get(r, c);
                if f != 0 {
                    let nf = p.neg(f);
                    for j in c..m.cols {
                        let v = p.add(m.get(r, j), p.mul(nf, m.get(rank, j)));
                        m.data[r * m.cols + j] = v;
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        Rref { matrix: m, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows form a basis of the right null space `{x : M x = 0}`, one per free column in
    /// increasing column order.
    pub fn kernel_basis(&self) -> FpMatrix {
        let p = self.p;
        let red = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &red.pivots {
            is_pivot[c] = true;
        }
        let mut data = Vec::new();
        let mut count = 0;
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (r, &pc) in red.pivots.iter().enumerate() {
                v[pc] = p.neg(red.matrix.get(r, free));
            }
            data.extend_from_slice(&v);
            count += 1;
        }
        FpMatrix { p, rows: count, cols: self.cols, data }
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for r in 0..n {
            aug.data[r * 2 * n..r * 2 * n + n].copy_from_slice(self.row(r));
            aug.data[r * 2 * n + n + r] = 1;
        }
        let red = aug.rref();
        if red.pivots.iter().copied().take(n).ne(0..n) || red.rank < n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(red.matrix.select_columns(&cols))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row = FpVector { p: self.p, entries: self.row(r).to_vec() };
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Returns a non-singular `dim × dim` matrix whose leading columns are `vs`, completed by
/// standard basis vectors taken greedily in index order.
pub fn complete_basis(p: PrimeModulus, vs: &[FpVector], dim: usize) -> Result<FpMatrix> {
    for v in vs {
        if v.len() != dim {
            return Err(Error::LengthMismatch { left: dim, right: v.len() });
        }
    }
    let mut columns: Vec<FpVector> = vs.to_vec();
    if FpMatrix::from_rows(p, dim, &columns)?.rank() < vs.len() {
        return Err(Error::DependentInput);
    }
    let mut current = FpMatrix::from_rows(p, dim, &columns)?.rref();
    for i in 0..dim {
        if columns.len() == dim {
            break;
        }
        let e = FpVector::unit(p, dim, i);
        if !current.contains(e.entries()) {
            columns.push(e);
            current = FpMatrix::from_rows(p, dim, &columns)?.rref();
        }
    }
    FpMatrix::from_columns(p, dim, &columns)
}

/// Every vector of `F_p^len` in lexicographic order (one empty tuple when `len == 0`).
pub fn tuples(p: PrimeModulus, len: usize) -> Tuples {
    Tuples { p: p.get(), next: Some(vec![0; len]) }
}

pub struct Tuples {
    p: u8,
    next: Option<Vec<u8>>,
}

impl Iterator for Tuples {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.p {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}
