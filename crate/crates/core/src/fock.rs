//! Truncated two-mode bosonic Fock space.
//!
//! States `|n1, n2>` with `n1 + n2 <= N_max` are indexed in graded
//! lexicographic order: by total occupancy first, then by `n1`. Every shell
//! of fixed total is therefore a contiguous index range, and the basis for
//! `N_max` is a prefix of the basis for `N_max + 1`.
//!
//! Wave operators are `D x D` complex matrices over this basis, carrying
//! an integer grading `kappa' = (row total) - (column total)`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Occupation numbers of the two modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FockIndex {
    pub n1: usize,
    pub n2: usize,
}

impl FockIndex {
    pub const fn new(n1: usize, n2: usize) -> Self {
        Self { n1, n2 }
    }

    pub const fn vacuum() -> Self {
        Self { n1: 0, n2: 0 }
    }

    /// Total occupancy `n1 + n2`.
    pub const fn total(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn occupation(&self, mode: Mode) -> usize {
        match mode {
            Mode::One => self.n1,
            Mode::Two => self.n2,
        }
    }

    fn shifted(&self, mode: Mode, up: bool) -> Option<Self> {
        let mut out = *self;
        let slot = match mode {
            Mode::One => &mut out.n1,
            Mode::Two => &mut out.n2,
        };
        if up {
            *slot += 1;
        } else {
            *slot = slot.checked_sub(1)?;
        }
        Some(out)
    }
}

impl fmt::Display for FockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}>", self.n1, self.n2)
    }
}

/// Oscillator mode label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    One,
    Two,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::One, Mode::Two];

    pub fn index(self) -> usize {
        match self {
            Mode::One => 0,
            Mode::Two => 1,
        }
    }
}

/// Creation or annihilation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ladder {
    Create,
    Annihilate,
}

/// The truncated basis `{ |n1,n2> : n1 + n2 <= N_max }`.
///
/// The basis is fully determined by `N_max`; positions are computed, not
/// stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FockBasis {
    n_max: usize,
}

impl FockBasis {
    pub const fn new(n_max: usize) -> Self {
        Self { n_max }
    }

    pub const fn n_max(&self) -> usize {
        self.n_max
    }

    /// `D = (N_max + 1)(N_max + 2) / 2`.
    pub const fn dim(&self) -> usize {
        (self.n_max + 1) * (self.n_max + 2) / 2
    }

    pub fn index_of(&self, state: FockIndex) -> Option<usize> {
        let t = state.total();
        (t <= self.n_max).then(|| t * (t + 1) / 2 + state.n1)
    }

    pub fn state(&self, index: usize) -> FockIndex {
        assert!(index < self.dim(), "index {index} outside basis of dim {}", self.dim());
        // largest t with t(t+1)/2 <= index
        let mut t = (((8 * index + 1) as f64).sqrt() as usize).saturating_sub(1) / 2;
        while (t + 1) * (t + 2) / 2 <= index {
            t += 1;
        }
        while t * (t + 1) / 2 > index {
            t -= 1;
        }
        let n1 = index - t * (t + 1) / 2;
        FockIndex::new(n1, t - n1)
    }

    /// Index range of the shell with total occupancy `total`.
    pub fn shell(&self, total: usize) -> std::ops::Range<usize> {
        let start = total * (total + 1) / 2;
        start..start + total + 1
    }

    pub fn iter(&self) -> impl Iterator<Item = FockIndex> + '_ {
        (0..=self.n_max).flat_map(|t| (0..=t).map(move |n1| FockIndex::new(n1, t - n1)))
    }

    /// Total occupancy of the state at `index`.
    pub fn total_of(&self, index: usize) -> usize {
        self.state(index).total()
    }

    pub(crate) fn totals(&self) -> Vec<usize> {
        self.iter().map(|s| s.total()).collect()
    }
}

/// Builds the truncated basis for `n_max`.
pub fn enumerate_basis(n_max: usize) -> FockBasis {
    FockBasis::new(n_max)
}

/// Sparse one-body operator on a [`FockBasis`], stored by columns.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    basis: FockBasis,
    cols: Vec<Vec<(usize, Complex64)>>,
}

impl FockOperator {
    pub fn zero(basis: FockBasis) -> Self {
        Self { basis, cols: vec![Vec::new(); basis.dim()] }
    }

    pub fn identity(basis: FockBasis) -> Self {
        let cols = (0..basis.dim()).map(|j| vec![(j, Complex64::new(1.0, 0.0))]).collect();
        Self { basis, cols }
    }

    /// Diagonal operator with entries `f(state)`.
    pub fn diagonal(basis: FockBasis, f: impl Fn(FockIndex) -> f64) -> Self {
        let cols = basis
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let v = f(s);
                if v == 0.0 { Vec::new() } else { vec![(j, Complex64::new(v, 0.0))] }
            })
            .collect();
        Self { basis, cols }
    }

    /// `a_mode` or `a⁺_mode`; creation targets above `N_max` are dropped.
    pub fn ladder(basis: FockBasis, mode: Mode, kind: Ladder) -> Self {
        let cols = basis
            .iter()
            .map(|s| {
                let n = s.occupation(mode);
                let (target, coeff) = match kind {
                    Ladder::Annihilate => (s.shifted(mode, false), (n as f64).sqrt()),
                    Ladder::Create => (s.shifted(mode, true), ((n + 1) as f64).sqrt()),
                };
                target
                    .and_then(|t| basis.index_of(t))
                    .map(|i| vec![(i, Complex64::new(coeff, 0.0))])
                    .unwrap_or_default()
            })
            .collect();
        Self { basis, cols }
    }

    /// Product `first * second` of two ladder operators without truncation
    /// loss inside the basis: the intermediate state may sit one shell above
    /// `N_max`. Occupancy-preserving pairs (one creator, one annihilator)
    /// are therefore exact on every state. Coefficients are `sqrt` of the
    /// integer product, so number operators come out as exact integers.
    pub fn ladder_pair(basis: FockBasis, first: (Mode, Ladder), second: (Mode, Ladder)) -> Self {
        let step = |s: FockIndex, (mode, kind): (Mode, Ladder)| -> Option<(FockIndex, usize)> {
            let n = s.occupation(mode);
            match kind {
                Ladder::Annihilate => s.shifted(mode, false).map(|t| (t, n)),
                Ladder::Create => s.shifted(mode, true).map(|t| (t, n + 1)),
            }
        };
        let cols = basis
            .iter()
            .map(|s| {
                step(s, second)
                    .and_then(|(mid, w1)| step(mid, first).map(|(t, w2)| (t, w1 * w2)))
                    .filter(|&(_, w)| w > 0)
                    .and_then(|(t, w)| basis.index_of(t).map(|i| vec![(i, Complex64::new((w as f64).sqrt(), 0.0))]))
                    .unwrap_or_default()
            })
            .collect();
        Self { basis, cols }
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &[(usize, Complex64)] {
        &self.cols[j]
    }

    /// Row lists: `rows()[i]` holds `(j, A[i, j])`.
    pub fn rows(&self) -> Vec<Vec<(usize, Complex64)>> {
        let mut rows = vec![Vec::new(); self.dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                rows[i].push((j, v));
            }
        }
        rows
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.cols[j].iter().filter(|(r, _)| *r == i).map(|(_, v)| *v).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis);
        let d = self.dim();
        let mut acc = vec![Complex64::new(0.0, 0.0); d];
        let mut touched = Vec::new();
        let cols = other
            .cols
            .iter()
            .map(|bcol| {
                for &(k, b) in bcol {
                    for &(i, a) in &self.cols[k] {
                        if acc[i] == Complex64::new(0.0, 0.0) {
                            touched.push(i);
                        }
                        acc[i] += a * b;
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let col: Vec<_> =
                    touched.iter().map(|&i| (i, std::mem::take(&mut acc[i]))).filter(|(_, v)| v.norm() > 0.0).collect();
                touched.clear();
                col
            })
            .collect();
        Self { basis: self.basis, cols }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: Complex64, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis);
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut merged: Vec<(usize, Complex64)> = a.clone();
                for &(i, v) in b {
                    match merged.iter_mut().find(|(r, _)| *r == i) {
                        Some(slot) => slot.1 += alpha * v,
                        None => merged.push((i, alpha * v)),
                    }
                }
                merged.retain(|(_, v)| v.norm() > 0.0);
                merged.sort_by_key(|(i, _)| *i);
                merged
            })
            .collect();
        Self { basis: self.basis, cols }
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        let cols = self.cols.iter().map(|c| c.iter().map(|&(i, v)| (i, alpha * v)).collect()).collect();
        Self { basis: self.basis, cols }
    }

    pub fn adjoint(&self) -> Self {
        let mut cols = vec![Vec::new(); self.dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                cols[i].push((j, v.conj()));
            }
        }
        Self { basis: self.basis, cols }
    }

    /// Top-left block on a smaller basis.
    pub fn restrict(&self, basis: FockBasis) -> Self {
        assert!(basis.n_max <= self.basis.n_max);
        let d = basis.dim();
        let cols = self.cols[..d].iter().map(|c| c.iter().copied().filter(|(i, _)| *i < d).collect()).collect();
        Self { basis, cols }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                m[(i, j)] += v;
            }
        }
        m
    }

    /// True when every entry connects states of equal total occupancy.
    pub fn preserves_occupancy(&self) -> bool {
        let totals = self.basis.totals();
        self.cols.iter().enumerate().all(|(j, c)| c.iter().all(|(i, _)| totals[*i] == totals[j]))
    }
}

/// Dense matrix of `a_mode` or `a⁺_mode` in the truncated basis.
pub fn ladder_matrix(mode: Mode, kind: Ladder, basis: FockBasis) -> DMatrix<Complex64> {
    FockOperator::ladder(basis, mode, kind).to_dense()
}

/// A matrix unit `|row><col|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixUnit {
    pub row: FockIndex,
    pub col: FockIndex,
}

impl MatrixUnit {
    pub fn new(row: FockIndex, col: FockIndex) -> Self {
        Self { row, col }
    }

    pub fn grading(&self) -> i32 {
        self.row.total() as i32 - self.col.total() as i32
    }
}

impl fmt::Display for MatrixUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}><{},{}|", self.row.n1, self.row.n2, self.col.n1, self.col.n2)
    }
}

/// All matrix units of grading `kappa` with both totals `<= N_max`, ordered
/// by row index then column index.
pub fn sector_basis(kappa: i32, n_max: usize) -> Result<Vec<MatrixUnit>> {
    let sector = Sector::new(FockBasis::new(n_max), kappa)?;
    Ok(sector.units().collect())
}

/// Vectorization of one grading sector: an ordered list of matrix units
/// with a position lookup.
#[derive(Debug, Clone)]
pub struct Sector {
    basis: FockBasis,
    kappa: i32,
    units: Vec<(u32, u32)>,
    lookup: Vec<u32>,
    totals: Vec<usize>,
}

const NO_POSITION: u32 = u32::MAX;

impl Sector {
    pub fn new(basis: FockBasis, kappa: i32) -> Result<Self> {
        if kappa.unsigned_abs() as usize > basis.n_max() {
            return Err(Error::EmptySector { kappa, n_max: basis.n_max() });
        }
        let d = basis.dim();
        let totals = basis.totals();
        let mut units = Vec::new();
        let mut lookup = vec![NO_POSITION; d * d];
        for i in 0..d {
            let col_total = totals[i] as i64 - kappa as i64;
            if col_total < 0 || col_total as usize > basis.n_max() {
                continue;
            }
            for j in basis.shell(col_total as usize) {
                lookup[i * d + j] = units.len() as u32;
                units.push((i as u32, j as u32));
            }
        }
        Ok(Self { basis, kappa, units, lookup, totals })
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    /// Number of matrix units `M`.
    pub fn dim(&self) -> usize {
        self.units.len()
    }

    /// Basis indices `(row, col)` of the unit at `position`.
    pub fn unit_indices(&self, position: usize) -> (usize, usize) {
        let (i, j) = self.units[position];
        (i as usize, j as usize)
    }

    pub fn unit(&self, position: usize) -> MatrixUnit {
        let (i, j) = self.unit_indices(position);
        MatrixUnit::new(self.basis.state(i), self.basis.state(j))
    }

    pub fn units(&self) -> impl Iterator<Item = MatrixUnit> + '_ {
        (0..self.dim()).map(|p| self.unit(p))
    }

    pub fn position(&self, row: usize, col: usize) -> Option<usize> {
        let d = self.basis.dim();
        if row >= d || col >= d {
            return None;
        }
        let p = self.lookup[row * d + col];
        (p != NO_POSITION).then_some(p as usize)
    }

    /// Row and column totals of the unit at `position`.
    pub fn shell_totals(&self, position: usize) -> (usize, usize) {
        let (i, j) = self.units[position];
        (self.totals[i as usize], self.totals[j as usize])
    }

    /// Mask of units with both totals `<= N_max - depth`.
    pub fn interior_mask(&self, depth: usize) -> Result<Vec<bool>> {
        let n = self.basis.n_max();
        if depth >= n && depth > 0 {
            return Err(Error::NoInterior { depth, n_max: n });
        }
        let limit = n - depth;
        let mask: Vec<bool> = (0..self.dim())
            .map(|p| {
                let (tr, tc) = self.shell_totals(p);
                tr <= limit && tc <= limit
            })
            .collect();
        if !mask.iter().any(|&b| b) {
            return Err(Error::NoInterior { depth, n_max: n });
        }
        Ok(mask)
    }

    /// Vector of components of `psi` in this sector's unit order.
    pub fn vectorize(&self, psi: &WaveOperator) -> Result<Vec<Complex64>> {
        if psi.basis() != self.basis {
            return Err(Error::BasisMismatch { left: self.basis.n_max(), right: psi.basis().n_max() });
        }
        if psi.kappa() != self.kappa {
            return Err(Error::SectorMismatch { expected: self.kappa, found: psi.kappa() });
        }
        Ok(self.units.iter().map(|&(i, j)| psi.entries()[(i as usize, j as usize)]).collect())
    }

    pub fn devectorize(&self, v: &[Complex64]) -> WaveOperator {
        assert_eq!(v.len(), self.dim());
        let d = self.basis.dim();
        let mut m = DMatrix::zeros(d, d);
        for (&(i, j), &x) in self.units.iter().zip(v) {
            m[(i as usize, j as usize)] = x;
        }
        WaveOperator::from_graded(self.basis, m, self.kappa)
    }
}

/// A noncommutative wave-function `Ψ(a, a⁺)` of fixed grading.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveOperator {
    basis: FockBasis,
    entries: DMatrix<Complex64>,
    kappa: i32,
}

impl WaveOperator {
    /// Checks that every nonzero entry has grading `kappa`.
    pub fn new(basis: FockBasis, entries: DMatrix<Complex64>, kappa: i32) -> Result<Self> {
        let d = basis.dim();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::InvalidArgument(format!(
                "entries are {}x{}, basis dimension is {d}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let totals = basis.totals();
        for j in 0..d {
            for i in 0..d {
                if entries[(i, j)] != Complex64::new(0.0, 0.0) && totals[i] as i32 - totals[j] as i32 != kappa {
                    return Err(Error::Grading { row: i, col: j, kappa });
                }
            }
        }
        Ok(Self { basis, entries, kappa })
    }

    /// Caller guarantees the grading.
    pub(crate) fn from_graded(basis: FockBasis, entries: DMatrix<Complex64>, kappa: i32) -> Self {
        Self { basis, entries, kappa }
    }

    pub fn zeros(basis: FockBasis, kappa: i32) -> Self {
        let d = basis.dim();
        Self { basis, entries: DMatrix::zeros(d, d), kappa }
    }

    /// The matrix unit `|row><col|`; grading is inferred.
    pub fn unit(basis: FockBasis, row: FockIndex, col: FockIndex) -> Result<Self> {
        let (i, j) = match (basis.index_of(row), basis.index_of(col)) {
            (Some(i), Some(j)) => (i, j),
            _ => return Err(Error::InvalidArgument(format!("{row} or {col} outside N_max={}", basis.n_max()))),
        };
        let d = basis.dim();
        let mut m = DMatrix::zeros(d, d);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        Ok(Self { basis, entries: m, kappa: MatrixUnit::new(row, col).grading() })
    }

    /// Truncated identity (grading 0).
    pub fn identity(basis: FockBasis) -> Self {
        let d = basis.dim();
        Self { basis, entries: DMatrix::identity(d, d), kappa: 0 }
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn get(&self, row: FockIndex, col: FockIndex) -> Complex64 {
        match (self.basis.index_of(row), self.basis.index_of(col)) {
            (Some(i), Some(j)) => self.entries[(i, j)],
            _ => Complex64::new(0.0, 0.0),
        }
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self { basis: self.basis, entries: &self.entries * alpha, kappa: self.kappa }
    }

    /// `self + alpha * other`; both must share basis and grading.
    pub fn axpy(&self, alpha: Complex64, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.kappa != other.kappa {
            return Err(Error::SectorMismatch { expected: self.kappa, found: other.kappa });
        }
        Ok(Self { basis: self.basis, entries: &self.entries + &other.entries * alpha, kappa: self.kappa })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, z| acc + z.norm_sqr()).sqrt()
    }

    /// `Ψ ↦ A Ψ`; the grading moves by the occupancy change of `A`.
    pub fn left_mul(&self, op: &FockOperator, shift: i32) -> Self {
        Self { basis: self.basis, entries: &op.to_dense() * &self.entries, kappa: self.kappa + shift }
    }

    /// `Ψ ↦ Ψ A`.
    pub fn right_mul(&self, op: &FockOperator, shift: i32) -> Self {
        Self { basis: self.basis, entries: &self.entries * &op.to_dense(), kappa: self.kappa + shift }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch { left: self.basis.n_max(), right: other.basis.n_max() });
        }
        Ok(())
    }
}

/// Symmetrized radius `r̂` on the unit with row total `tr` and column total
/// `tc`: `λ (tr + tc + 2) / 2`.
pub fn rhat_eigenvalue(lambda: f64, row_total: usize, col_total: usize) -> f64 {
    0.5 * lambda * (row_total + col_total + 2) as f64
}

/// `(Φ, Ψ) = 4πλ² Tr[Φ† r̂ Ψ]`, with `r̂Ψ = ½(rΨ + Ψr)` and `r = λ(a⁺a + 1)`.
///
/// Operands of different grading are orthogonal and give an exact zero.
pub fn weighted_inner_product(phi: &WaveOperator, psi: &WaveOperator, lambda: f64) -> Result<Complex64> {
    phi.check_compatible(psi)?;
    if phi.kappa != psi.kappa {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let totals = phi.basis.totals();
    let d = phi.basis.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..d {
        for i in 0..d {
            let p = phi.entries[(i, j)];
            let q = psi.entries[(i, j)];
            if p == Complex64::new(0.0, 0.0) || q == Complex64::new(0.0, 0.0) {
                continue;
            }
            acc += p.conj() * q * rhat_eigenvalue(lambda, totals[i], totals[j]);
        }
    }
    Ok(acc * (4.0 * PI * lambda * lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!(enumerate_basis(0).dim(), 1);
        assert_eq!(enumerate_basis(0).iter().collect::<Vec<_>>(), vec![FockIndex::vacuum()]);
        assert_eq!(enumerate_basis(2).dim(), 6);
        assert_eq!(enumerate_basis(10).dim(), 66);
    }

    #[test]
    fn enumeration_is_a_bijection() {
        let b = enumerate_basis(9);
        let states: Vec<_> = b.iter().collect();
        assert_eq!(states.len(), b.dim());
        for (k, s) in states.iter().enumerate() {
            assert_eq!(b.index_of(*s), Some(k));
            assert_eq!(b.state(k), *s);
        }
        let mut sorted = states.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), states.len());
        assert_eq!(b.index_of(FockIndex::new(5, 5)), None);
    }

    #[test]
    fn graded_order_is_prefix_closed() {
        let small: Vec<_> = enumerate_basis(4).iter().collect();
        let big: Vec<_> = enumerate_basis(7).iter().take(small.len()).collect();
        assert_eq!(small, big);
        assert_eq!(enumerate_basis(3).state(1), FockIndex::new(0, 1));
    }

    #[test]
    fn ladder_coefficients() {
        let b = enumerate_basis(4);
        let a1 = ladder_matrix(Mode::One, Ladder::Annihilate, b);
        let i21 = b.index_of(FockIndex::new(2, 1)).unwrap();
        let i11 = b.index_of(FockIndex::new(1, 1)).unwrap();
        assert!((a1[(i11, i21)] - c(2f64.sqrt())).norm() < 1e-15);
        assert_eq!(a1.column(i21).iter().filter(|z| z.norm() > 0.0).count(), 1);

        let a1p = ladder_matrix(Mode::One, Ladder::Create, b);
        let i00 = b.index_of(FockIndex::vacuum()).unwrap();
        let i10 = b.index_of(FockIndex::new(1, 0)).unwrap();
        assert_eq!(a1p[(i10, i00)], c(1.0));

        let a2 = ladder_matrix(Mode::Two, Ladder::Annihilate, b);
        for n in 0..=4 {
            let j = b.index_of(FockIndex::new(n, 0)).unwrap();
            assert!(a2.column(j).iter().all(|z| z.norm() == 0.0));
        }
    }

    #[test]
    fn creation_drops_targets_above_truncation() {
        let b = enumerate_basis(3);
        let a2p = FockOperator::ladder(b, Mode::Two, Ladder::Create);
        for j in b.shell(3) {
            assert!(a2p.col(j).is_empty());
        }
        let a2 = FockOperator::ladder(b, Mode::Two, Ladder::Annihilate);
        assert_eq!(a2p.to_dense(), a2.adjoint().to_dense());
    }

    #[test]
    fn ladder_commutator_on_interior() {
        let n = 6;
        let b = enumerate_basis(n);
        let interior: Vec<usize> = (0..b.dim()).filter(|&i| b.total_of(i) < n).collect();
        for alpha in Mode::BOTH {
            for beta in Mode::BOTH {
                let a = ladder_matrix(alpha, Ladder::Annihilate, b);
                let ap = ladder_matrix(beta, Ladder::Create, b);
                let comm = &a * &ap - &ap * &a;
                let delta = if alpha == beta { 1.0 } else { 0.0 };
                for &i in &interior {
                    for &j in &interior {
                        let expect = if i == j { delta } else { 0.0 };
                        assert!((comm[(i, j)] - c(expect)).norm() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn exact_pairs_survive_the_top_shell() {
        let b = enumerate_basis(3);
        let aap = FockOperator::ladder_pair(b, (Mode::One, Ladder::Annihilate), (Mode::One, Ladder::Create));
        for (j, s) in b.iter().enumerate() {
            assert_eq!(aap.get(j, j), c((s.n1 + 1) as f64));
        }
        assert!(aap.preserves_occupancy());
        // the naive truncated product loses the top shell
        let naive = FockOperator::ladder(b, Mode::One, Ladder::Annihilate)
            .mul(&FockOperator::ladder(b, Mode::One, Ladder::Create));
        let top = b.index_of(FockIndex::new(0, 3)).unwrap();
        assert_eq!(naive.get(top, top), c(0.0));
    }

    #[test]
    fn inner_product_golden_values() {
        let lambda = 0.7;
        let b = enumerate_basis(3);
        let vac = WaveOperator::unit(b, FockIndex::vacuum(), FockIndex::vacuum()).unwrap();
        let v = weighted_inner_product(&vac, &vac, lambda).unwrap();
        assert!((v - c(4.0 * PI * lambda.powi(3))).norm() < 1e-14);

        let raised = WaveOperator::unit(b, FockIndex::new(1, 0), FockIndex::vacuum()).unwrap();
        assert_eq!(raised.kappa(), 1);
        let v = weighted_inner_product(&raised, &raised, lambda).unwrap();
        assert!((v - c(6.0 * PI * lambda.powi(3))).norm() < 1e-14);

        assert_eq!(weighted_inner_product(&vac, &raised, lambda).unwrap(), c(0.0));
    }

    #[test]
    fn inner_product_rejects_mismatched_bases() {
        let a = WaveOperator::identity(enumerate_basis(2));
        let b = WaveOperator::identity(enumerate_basis(3));
        assert!(matches!(weighted_inner_product(&a, &b, 1.0), Err(Error::BasisMismatch { .. })));
    }

    #[test]
    fn sector_examples() {
        let units = sector_basis(0, 1).unwrap();
        assert_eq!(units.len(), 5);
        let off: Vec<_> = units.iter().filter(|u| u.row != u.col).collect();
        assert_eq!(off.len(), 2);
        assert!(units.contains(&MatrixUnit::new(FockIndex::new(1, 0), FockIndex::new(0, 1))));
        assert!(units.contains(&MatrixUnit::new(FockIndex::new(0, 1), FockIndex::new(1, 0))));

        let top = sector_basis(4, 4).unwrap();
        assert_eq!(top.len(), 5);
        assert!(top.iter().all(|u| u.col == FockIndex::vacuum() && u.row.total() == 4));

        assert!(matches!(sector_basis(-1, 0), Err(Error::EmptySector { .. })));
    }

    #[test]
    fn sector_dimension_counts() {
        // kappa'=0: sum over shells of (t+1)^2
        let s = Sector::new(enumerate_basis(10), 0).unwrap();
        assert_eq!(s.dim(), (1..=11).map(|k| k * k).sum::<usize>());
        for p in 0..s.dim() {
            let (i, j) = s.unit_indices(p);
            assert_eq!(s.position(i, j), Some(p));
        }
    }

    #[test]
    fn grading_is_enforced() {
        let b = enumerate_basis(2);
        let mut m = DMatrix::zeros(b.dim(), b.dim());
        m[(0, 0)] = c(1.0);
        m[(1, 0)] = c(1.0);
        assert!(matches!(WaveOperator::new(b, m, 0), Err(Error::Grading { .. })));
    }

    #[test]
    fn ladder_multiplication_moves_grading() {
        let b = enumerate_basis(4);
        let psi = WaveOperator::unit(b, FockIndex::new(1, 1), FockIndex::new(1, 0)).unwrap();
        let ap = FockOperator::ladder(b, Mode::One, Ladder::Create);
        let left = psi.left_mul(&ap, 1);
        let right = psi.right_mul(&ap, 1);
        assert!(WaveOperator::new(b, left.entries().clone(), psi.kappa() + 1).is_ok());
        assert!(WaveOperator::new(b, right.entries().clone(), psi.kappa() + 1).is_ok());
        assert!(left.frobenius_norm() > 0.0 && right.frobenius_norm() > 0.0);
    }

    #[test]
    fn interior_mask_errors_without_interior() {
        let s = Sector::new(enumerate_basis(2), 0).unwrap();
        assert!(s.interior_mask(2).is_err());
        assert_eq!(s.interior_mask(0).unwrap().iter().filter(|&&b| b).count(), s.dim());
    }
}
