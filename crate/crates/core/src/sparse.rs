//! Compressed-row complex matrices for vectorized superoperators.

use nalgebra::DMatrix;
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// CSR matrix over `Complex64`. Column indices within a row are sorted and
/// unique.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, row_ptr: vec![0; nrows + 1], col_idx: Vec::new(), values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut out = Self::zeros(n, n);
        for (i, &v) in diag.iter().enumerate() {
            if v != ZERO {
                out.col_idx.push(i);
                out.values.push(v);
            }
            out.row_ptr[i + 1] = out.col_idx.len();
        }
        out
    }

    /// Duplicate entries are summed; exact zeros are dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, mut triplets: Vec<(usize, usize, Complex64)>) -> Self {
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut out = Self::zeros(nrows, ncols);
        let mut it = triplets.into_iter().peekable();
        for r in 0..nrows {
            while let Some(&(tr, c, _)) = it.peek() {
                if tr != r {
                    break;
                }
                debug_assert!(c < ncols);
                let mut v = ZERO;
                while let Some(&(tr2, c2, v2)) = it.peek() {
                    if tr2 != r || c2 != c {
                        break;
                    }
                    v += v2;
                    it.next();
                }
                if v != ZERO {
                    out.col_idx.push(c);
                    out.values.push(v);
                }
            }
            out.row_ptr[r + 1] = out.col_idx.len();
        }
        assert!(it.peek().is_none(), "triplet row index out of range");
        out
    }

    /// Builds column by column: `column(j)` yields `(row, value)` pairs.
    pub fn from_columns<I>(nrows: usize, ncols: usize, mut column: impl FnMut(usize) -> I) -> Self
    where
        I: IntoIterator<Item = (usize, Complex64)>,
    {
        let mut trip = Vec::new();
        for j in 0..ncols {
            trip.extend(column(j).into_iter().map(|(i, v)| (i, j, v)));
        }
        Self::from_triplets(nrows, ncols, trip)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.nrows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.col_idx[r.clone()].binary_search(&j) {
            Ok(k) => self.values[r.start + k],
            Err(_) => ZERO,
        }
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.nrows.min(self.ncols)).map(|i| self.get(i, i)).collect()
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.ncols);
        (0..self.nrows).map(|i| self.row(i).map(|(j, v)| v * x[j]).sum()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "inner dimensions differ");
        let mut out = Self::zeros(self.nrows, other.ncols);
        let mut acc = vec![ZERO; other.ncols];
        let mut mark = vec![usize::MAX; other.ncols];
        let mut cols: Vec<usize> = Vec::new();
        for i in 0..self.nrows {
            for (k, a) in self.row(i) {
                for (j, b) in other.row(k) {
                    if mark[j] != i {
                        mark[j] = i;
                        cols.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            cols.sort_unstable();
            for &j in &cols {
                let v = std::mem::replace(&mut acc[j], ZERO);
                if v != ZERO {
                    out.col_idx.push(j);
                    out.values.push(v);
                }
            }
            cols.clear();
            out.row_ptr[i + 1] = out.col_idx.len();
        }
        out
    }

    /// `alpha * self + beta * other`.
    pub fn lincomb(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = Self::zeros(self.nrows, self.ncols);
        for i in 0..self.nrows {
            let mut a = self.row(i).peekable();
            let mut b = other.row(i).peekable();
            loop {
                let (j, v) = match (a.peek(), b.peek()) {
                    (None, None) => break,
                    (Some(&(ja, va)), None) => {
                        a.next();
                        (ja, alpha * va)
                    }
                    (None, Some(&(jb, vb))) => {
                        b.next();
                        (jb, beta * vb)
                    }
                    (Some(&(ja, va)), Some(&(jb, vb))) => {
                        if ja < jb {
                            a.next();
                            (ja, alpha * va)
                        } else if jb < ja {
                            b.next();
                            (jb, beta * vb)
                        } else {
                            a.next();
                            b.next();
                            (ja, alpha * va + beta * vb)
                        }
                    }
                };
                if v != ZERO {
                    out.col_idx.push(j);
                    out.values.push(v);
                }
            }
            out.row_ptr[i + 1] = out.col_idx.len();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.lincomb(Complex64::new(1.0, 0.0), other, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.lincomb(Complex64::new(1.0, 0.0), other, Complex64::new(-1.0, 0.0))
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= alpha);
        out
    }

    /// `diag(left) * self * diag(right)`.
    pub fn scale_rows_cols(&self, left: &[Complex64], right: &[Complex64]) -> Self {
        let mut out = self.clone();
        for i in 0..self.nrows {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                out.values[k] = left[i] * self.values[k] * right[self.col_idx[k]];
            }
        }
        out.prune();
        out
    }

    /// Keeps entries whose row and column pass the masks (`P A P`).
    pub fn project(&self, rows: &[bool], cols: &[bool]) -> Self {
        let trip = self.triplets().filter(|&(i, j, _)| rows[i] && cols[j]).collect();
        Self::from_triplets(self.nrows, self.ncols, trip)
    }

    /// Submatrix on the selected rows and columns, reindexed.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_map = vec![usize::MAX; self.ncols];
        for (k, &j) in cols.iter().enumerate() {
            col_map[j] = k;
        }
        let mut trip = Vec::new();
        for (new_i, &i) in rows.iter().enumerate() {
            for (j, v) in self.row(i) {
                if col_map[j] != usize::MAX {
                    trip.push((new_i, col_map[j], v));
                }
            }
        }
        Self::from_triplets(rows.len(), cols.len(), trip)
    }

    pub fn adjoint(&self) -> Self {
        let trip = self.triplets().map(|(i, j, v)| (j, i, v.conj())).collect();
        Self::from_triplets(self.ncols, self.nrows, trip)
    }

    /// `Σ conj(self_ij) other_ij`.
    pub fn frobenius_dot(&self, other: &Self) -> Complex64 {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch");
        let mut acc = ZERO;
        for r in 0..self.nrows {
            let (mut p, pe) = (self.row_ptr[r], self.row_ptr[r + 1]);
            let (mut q, qe) = (other.row_ptr[r], other.row_ptr[r + 1]);
            while p < pe && q < qe {
                match self.col_idx[p].cmp(&other.col_idx[q]) {
                    std::cmp::Ordering::Less => p += 1,
                    std::cmp::Ordering::Greater => q += 1,
                    std::cmp::Ordering::Equal => {
                        acc += self.values[p].conj() * other.values[q];
                        p += 1;
                        q += 1;
                    }
                }
            }
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc + v.norm_sqr()).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest singular value, by power iteration on `A† A`.
    pub fn spectral_norm(&self) -> f64 {
        if self.nnz() == 0 {
            return 0.0;
        }
        let adj = self.adjoint();
        let mut x: Vec<Complex64> =
            (0..self.ncols).map(|k| Complex64::new(1.0 + (k % 7) as f64 * 0.1, (k % 3) as f64 * 0.05)).collect();
        let mut sigma2 = 0.0;
        for _ in 0..500 {
            let y = adj.mul_vec(&self.mul_vec(&x));
            let n = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n == 0.0 {
                return 0.0;
            }
            let prev = sigma2;
            sigma2 = n / x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            x = y.into_iter().map(|z| z / n).collect();
            if (sigma2 - prev).abs() <= 1e-14 * sigma2 {
                break;
            }
        }
        sigma2.sqrt()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v;
        }
        m
    }

    pub fn from_dense(m: &DMatrix<Complex64>) -> Self {
        let mut trip = Vec::new();
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                if m[(i, j)] != ZERO {
                    trip.push((i, j, m[(i, j)]));
                }
            }
        }
        Self::from_triplets(m.nrows(), m.ncols(), trip)
    }

    fn prune(&mut self) {
        let trip: Vec<_> = self.triplets().filter(|t| t.2 != ZERO).collect();
        *self = Self::from_triplets(self.nrows, self.ncols, trip);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> SparseMatrix {
        SparseMatrix::from_triplets(
            3,
            3,
            vec![(0, 0, c(1.0, 0.0)), (0, 2, c(0.0, 2.0)), (2, 1, c(-1.0, 1.0)), (0, 0, c(1.0, 0.0))],
        )
    }

    #[test]
    fn triplets_are_summed() {
        let a = sample();
        assert_eq!(a.get(0, 0), c(2.0, 0.0));
        assert_eq!(a.nnz(), 3);
    }

    #[test]
    fn products_match_dense() {
        let a = sample();
        let b = a.adjoint().add(&SparseMatrix::identity(3));
        let dense = a.to_dense() * b.to_dense();
        assert_eq!(a.mul(&b).to_dense(), dense);
        let x = vec![c(1.0, 1.0), c(0.5, 0.0), c(0.0, -2.0)];
        let y = a.mul_vec(&x);
        let yd = a.to_dense() * nalgebra::DVector::from_vec(x);
        for k in 0..3 {
            assert!((y[k] - yd[k]).norm() < 1e-15);
        }
    }

    #[test]
    fn cancellation_drops_entries() {
        let a = sample();
        assert_eq!(a.sub(&a).nnz(), 0);
    }

    #[test]
    fn spectral_norm_of_diagonal() {
        let d = SparseMatrix::from_diagonal(&[c(1.0, 0.0), c(0.0, -3.0), c(2.0, 0.0)]);
        assert!((d.spectral_norm() - 3.0).abs() < 1e-10);
        assert!((d.frobenius_norm() - 14f64.sqrt()).abs() < 1e-14);
    }
}
