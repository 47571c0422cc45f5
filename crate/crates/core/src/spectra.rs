//! Coulomb spectra on a vectorized sector.
//!
//! The Hamiltonian `H = Ĥ₀ − qŴ` is Hermitian for the weighted inner
//! product with weight `G = 4πλ² r̂`, which is diagonal on matrix units.
//! Working with `H̃ = G^{1/2} H G^{-1/2}` turns it into a plain Hermitian
//! matrix. The difference `n1 − m1` of a unit `|n><m|` is conserved by both
//! terms, so the sector splits into independent blocks.
//!
//! Units: `ħ = m = 1`, and `Ĥ₀` tends to `−½Δ`, so the hydrogen levels are
//! `−q²/(2n²)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{rhat_eigenvalue, FockBasis, Sector};
use crate::nc::{coulomb_superop, hamiltonian_free_with, RadialOrdering};
use crate::sparse::SparseMatrix;
use crate::verify::InteriorProjection;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Kinetic prefactor: `Ĥ₀ → KINETIC_FACTOR · (−Δ)` as `λ → 0`.
pub const KINETIC_FACTOR: f64 = 0.5;

/// A sector with its weight `G = 4πλ² r̂`.
#[derive(Debug, Clone)]
pub struct SectorSpace {
    sector: Sector,
    lambda: f64,
    weight: Vec<f64>,
}

impl SectorSpace {
    pub fn new(n_max: usize, kappa: i32, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!("lambda must be positive, got {lambda}")));
        }
        let sector = Sector::new(FockBasis::new(n_max), kappa)?;
        let c = 4.0 * std::f64::consts::PI * lambda * lambda;
        let weight = (0..sector.dim())
            .map(|p| {
                let (tr, tc) = sector.shell_totals(p);
                c * rhat_eigenvalue(lambda, tr, tc)
            })
            .collect();
        Ok(Self { sector, lambda, weight })
    }

    pub fn sector(&self) -> &Sector {
        &self.sector
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn kappa(&self) -> i32 {
        self.sector.kappa()
    }

    pub fn n_max(&self) -> usize {
        self.sector.basis().n_max()
    }

    /// Number of matrix units `M`.
    pub fn dim(&self) -> usize {
        self.sector.dim()
    }

    /// Diagonal of `G`; every entry is positive.
    pub fn weight(&self) -> &[f64] {
        &self.weight
    }

    /// Unit positions grouped by `n1 − m1`, in ascending order of that label.
    pub fn blocks(&self) -> Vec<(i64, Vec<usize>)> {
        let basis = self.sector.basis();
        let mut map: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for p in 0..self.dim() {
            let (i, j) = self.sector.unit_indices(p);
            let a = basis.state(i).n1 as i64 - basis.state(j).n1 as i64;
            map.entry(a).or_default().push(p);
        }
        map.into_iter().collect()
    }
}

/// `H̃` with its diagnostics.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    pub matrix: SparseMatrix,
    /// Relative `‖P(H̃ − H̃†)P‖` on units one shell inside the boundary.
    pub hermiticity_deviation: f64,
    /// Relative `‖P(GH − H†G)P‖` before the similarity transform.
    pub g_hermiticity_deviation: f64,
}

/// Builds `G^{1/2}(Ĥ₀ − qŴ)G^{-1/2}` on the sector.
pub fn vectorized_hamiltonian(q: f64, space: &SectorSpace) -> Result<HamiltonianMatrix> {
    vectorized_hamiltonian_with(q, space, RadialOrdering::Symmetrized)
}

pub fn vectorized_hamiltonian_with(q: f64, space: &SectorSpace, ordering: RadialOrdering) -> Result<HamiltonianMatrix> {
    let basis = space.sector.basis();
    let h0 = hamiltonian_free_with(space.lambda, basis, ordering)?;
    let op = if q == 0.0 { h0 } else { h0.sub(&coulomb_superop(space.lambda, basis)?.scale(Complex64::new(q, 0.0))) };
    let h = op.matrix(&space.sector)?;

    let sqrt_g: Vec<Complex64> = space.weight.iter().map(|&g| Complex64::new(g.sqrt(), 0.0)).collect();
    let inv_sqrt_g: Vec<Complex64> = space.weight.iter().map(|&g| Complex64::new(1.0 / g.sqrt(), 0.0)).collect();
    let g: Vec<Complex64> = space.weight.iter().map(|&g| Complex64::new(g, 0.0)).collect();
    let ones = vec![Complex64::new(1.0, 0.0); g.len()];
    let ht = h.scale_rows_cols(&sqrt_g, &inv_sqrt_g);

    let depth = op.reach().min(space.n_max().saturating_sub(1));
    let proj = InteriorProjection::new(&space.sector, depth)?;
    let rel = |a: &SparseMatrix, b: &SparseMatrix| {
        let pa = proj.apply(a);
        pa.sub(&proj.apply(b)).frobenius_norm() / pa.frobenius_norm().max(f64::MIN_POSITIVE)
    };
    let hermiticity_deviation = rel(&ht, &ht.adjoint());
    let gh = h.scale_rows_cols(&g, &ones);
    let hg = h.adjoint().scale_rows_cols(&ones, &g);
    let g_hermiticity_deviation = rel(&gh, &hg);
    Ok(HamiltonianMatrix { matrix: ht, hermiticity_deviation, g_hermiticity_deviation })
}

/// Eigensolver knobs.
#[derive(Debug, Clone, Copy)]
pub struct EigenOptions {
    /// Matrices (or blocks) up to this size are solved densely.
    pub dense_limit: usize,
    /// Residual bound for Ritz pairs, relative to `max(1, |θ|max)`.
    pub tol: f64,
    pub max_restarts: usize,
    /// Seed of the Lanczos start vector.
    pub seed: u64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self { dense_limit: 2000, tol: 1e-11, max_restarts: 500, seed: 0 }
    }
}

fn is_real(m: &DMatrix<Complex64>) -> bool {
    m.iter().all(|z| z.im == 0.0)
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn dense_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let sym = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = if is_real(&sym) {
        sym.map(|z| z.re).symmetric_eigenvalues().iter().copied().collect()
    } else {
        sym.symmetric_eigenvalues().iter().copied().collect()
    };
    ev.sort_by(f64::total_cmp);
    ev
}

/// The `k` smallest eigenvalues of a Hermitian matrix, ascending.
pub fn lowest_eigenvalues(h: &SparseMatrix, k: usize) -> Result<Vec<f64>> {
    lowest_eigenvalues_with(h, k, &EigenOptions::default())
}

pub fn lowest_eigenvalues_with(h: &SparseMatrix, k: usize, opts: &EigenOptions) -> Result<Vec<f64>> {
    let n = h.nrows();
    if h.ncols() != n {
        return Err(Error::InvalidArgument(format!("matrix is {}x{}", n, h.ncols())));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!("asked for {k} eigenvalues of a {n}x{n} matrix")));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    if n <= opts.dense_limit {
        let mut ev = dense_eigenvalues(&h.to_dense());
        ev.truncate(k);
        return Ok(ev);
    }
    lanczos_lowest(h, k, opts)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).fold(ZERO, |acc, (x, y)| acc + x.conj() * y)
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().fold(0.0, |acc, z| acc + z.norm_sqr()).sqrt()
}

/// Two passes of classical Gram-Schmidt against an orthonormal set.
fn orthogonalize(w: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for _ in 0..2 {
        for v in basis {
            let c = dot(v, w);
            for (wi, vi) in w.iter_mut().zip(v) {
                *wi -= c * vi;
            }
        }
    }
}

/// Thick-restart Lanczos with full reorthogonalization. The lowest Ritz
/// vectors are kept across restarts; once converged they stay in the
/// retained set and are not updated further in effect.
pub fn lanczos_lowest(h: &SparseMatrix, k: usize, opts: &EigenOptions) -> Result<Vec<f64>> {
    let n = h.nrows();
    let m_max = (2 * k + 40).min(n);
    let keep = (k + 8).min(m_max.saturating_sub(1)).max(k);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let random_vec = |rng: &mut ChaCha8Rng| -> Vec<Complex64> {
        (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), 0.0)).collect()
    };

    let mut v: Vec<Vec<Complex64>> = Vec::with_capacity(m_max + 1);
    let mut av: Vec<Vec<Complex64>> = Vec::with_capacity(m_max + 1);
    let start = random_vec(&mut rng);
    let s = norm(&start);
    v.push(start.into_iter().map(|z| z / s).collect());

    for _restart in 0..=opts.max_restarts {
        while v.len() < m_max {
            while av.len() < v.len() {
                av.push(h.mul_vec(&v[av.len()]));
            }
            let mut w = av.last().expect("nonempty").clone();
            let scale = norm(&w).max(1.0);
            orthogonalize(&mut w, &v);
            let mut nw = norm(&w);
            if nw <= 1e-12 * scale {
                // invariant subspace: continue with a fresh direction
                w = random_vec(&mut rng);
                orthogonalize(&mut w, &v);
                nw = norm(&w);
                if nw <= 1e-12 {
                    break;
                }
            }
            v.push(w.into_iter().map(|z| z / nw).collect());
        }
        while av.len() < v.len() {
            av.push(h.mul_vec(&v[av.len()]));
        }

        let m = v.len();
        let t = DMatrix::from_fn(m, m, |i, j| dot(&v[i], &av[j]));
        let t = (&t + t.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = t.symmetric_eigen();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let theta_scale = eig.eigenvalues.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));

        let combine = |basis: &[Vec<Complex64>], col: usize| -> Vec<Complex64> {
            let mut y = vec![ZERO; n];
            for (i, b) in basis.iter().enumerate() {
                let c = eig.eigenvectors[(i, col)];
                if c != ZERO {
                    for (yi, bi) in y.iter_mut().zip(b) {
                        *yi += c * bi;
                    }
                }
            }
            y
        };

        let mut all_converged = true;
        let mut first_unconverged_residual = None;
        for &idx in order.iter().take(k) {
            let theta = eig.eigenvalues[idx];
            let y = combine(&v, idx);
            let ay = combine(&av, idx);
            let r: Vec<Complex64> = ay.iter().zip(&y).map(|(a, b)| a - b * theta).collect();
            if norm(&r) > opts.tol * theta_scale {
                all_converged = false;
                if first_unconverged_residual.is_none() {
                    first_unconverged_residual = Some(r);
                }
            }
        }
        if all_converged || m == n {
            return Ok(order.iter().take(k).map(|&i| eig.eigenvalues[i]).collect());
        }

        let kept: Vec<usize> = order.iter().take(keep).copied().collect();
        let new_v: Vec<Vec<Complex64>> = kept.iter().map(|&i| combine(&v, i)).collect();
        let new_av: Vec<Vec<Complex64>> = kept.iter().map(|&i| combine(&av, i)).collect();
        v = new_v;
        av = new_av;
        let mut cont = first_unconverged_residual.expect("some pair is unconverged");
        orthogonalize(&mut cont, &v);
        let nc = norm(&cont);
        if nc <= 1e-14 {
            let mut w = random_vec(&mut rng);
            orthogonalize(&mut w, &v);
            let nw = norm(&w);
            v.push(w.into_iter().map(|z| z / nw).collect());
        } else {
            v.push(cont.into_iter().map(|z| z / nc).collect());
        }
    }
    Err(Error::NoConvergence { iterations: opts.max_restarts })
}

/// Blocks above this size go to Lanczos once the whole matrix is past
/// `dense_limit`.
pub const BLOCK_DENSE_LIMIT: usize = 200;

/// Lowest `k` eigenvalues of a matrix that is block diagonal over `blocks`.
/// Falls back to the whole matrix if any entry couples two blocks.
pub fn lowest_by_blocks(h: &SparseMatrix, blocks: &[Vec<usize>], k: usize, opts: &EigenOptions) -> Result<Vec<f64>> {
    let mut owner = vec![usize::MAX; h.nrows()];
    for (b, members) in blocks.iter().enumerate() {
        for &p in members {
            owner[p] = b;
        }
    }
    let decoupled = owner.iter().all(|&o| o != usize::MAX) && h.triplets().all(|(i, j, _)| owner[i] == owner[j]);
    if !decoupled {
        return lowest_eigenvalues_with(h, k, opts);
    }
    let block_opts = if h.nrows() > opts.dense_limit {
        EigenOptions { dense_limit: opts.dense_limit.min(BLOCK_DENSE_LIMIT.max(2 * k + 40)), ..*opts }
    } else {
        *opts
    };
    let parts: Vec<Vec<f64>> = blocks
        .par_iter()
        .map(|members| {
            let sub = h.submatrix(members, members);
            lowest_eigenvalues_with(&sub, k.min(members.len()), &block_opts)
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<f64> = parts.into_iter().flatten().collect();
    all.sort_by(f64::total_cmp);
    all.truncate(k);
    Ok(all)
}

/// Largest eigenvalue, via the lowest of `−H`.
pub fn largest_by_blocks(h: &SparseMatrix, blocks: &[Vec<usize>], opts: &EigenOptions) -> Result<f64> {
    let neg = h.scale(Complex64::new(-1.0, 0.0));
    Ok(-lowest_by_blocks(&neg, blocks, 1, opts)?[0])
}

/// Eigenvalues of one `(q, λ, κ', N_max)` job.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub q: f64,
    pub lambda: f64,
    pub kappa: i32,
    #[serde(rename = "N")]
    pub n_max: usize,
    pub eigenvalues: Vec<f64>,
    /// Stability under raising `N_max`; `true` when not assessed.
    pub converged: Vec<bool>,
    pub hermiticity_deviation: f64,
    pub kinetic_factor: f64,
}

impl SpectrumTable {
    pub const CSV_HEADER: &'static str = "q,lambda,kappa,N,level_index,eigenvalue,converged";

    /// CSV rows without the header.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for (i, (e, c)) in self.eigenvalues.iter().zip(&self.converged).enumerate() {
            writeln!(out, "{},{},{},{},{},{:.12e},{}", self.q, self.lambda, self.kappa, self.n_max, i, e, c)
                .expect("string write");
        }
        out
    }
}

/// Computes the `k` lowest levels of `Ĥ₀ − qŴ` on one sector.
pub fn spectrum(q: f64, lambda: f64, kappa: i32, n_max: usize, k: usize, opts: &EigenOptions) -> Result<SpectrumTable> {
    let space = SectorSpace::new(n_max, kappa, lambda)?;
    let h = vectorized_hamiltonian(q, &space)?;
    let blocks: Vec<Vec<usize>> = space.blocks().into_iter().map(|(_, b)| b).collect();
    let eigenvalues = lowest_by_blocks(&h.matrix, &blocks, k.min(space.dim()), opts)?;
    Ok(SpectrumTable {
        q,
        lambda,
        kappa,
        n_max,
        converged: vec![true; eigenvalues.len()],
        eigenvalues,
        hermiticity_deviation: h.hermiticity_deviation,
        kinetic_factor: KINETIC_FACTOR,
    })
}

/// Relative shift above which a level counts as unconverged.
pub const CONVERGENCE_THRESHOLD: f64 = 0.01;

/// `N_max` used for the convergence comparison (25% larger).
pub fn convergence_cutoff(n_max: usize) -> usize {
    n_max + n_max.div_ceil(4)
}

/// Linear fit `E(λ) ≈ a + bλ` evaluated at `λ = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub level: usize,
    /// `None` with fewer than two usable points.
    pub value: Option<f64>,
    /// The λ values that entered the fit: those where the level is flagged
    /// converged, or all of them if fewer than two are.
    pub lambdas_used: Vec<f64>,
    pub used_unconverged: bool,
}

/// Spectra over a decreasing list of λ with extrapolation to `λ = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitTable {
    pub q: f64,
    pub kappa: i32,
    #[serde(rename = "N")]
    pub n_max: usize,
    #[serde(rename = "N_check")]
    pub n_check: usize,
    pub tables: Vec<SpectrumTable>,
    pub extrapolated: Vec<Extrapolation>,
    /// Per level: whether `E(λ)` moves monotonically across the list.
    pub monotone_in_lambda: Vec<bool>,
}

/// Least-squares line through `(x, y)`, returning the intercept.
pub fn linear_intercept(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() < 2 || x.len() != y.len() {
        return None;
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    Some(my - sxy / sxx * mx)
}

/// For each λ: the `k` lowest levels at `N_max` and at the 25% larger
/// cutoff, flags for levels that moved more than 1%, and a linear
/// extrapolation per level over the flagged-converged points.
pub fn commutative_limit_table(
    q: f64,
    lambdas: &[f64],
    n_max: usize,
    k: usize,
    kappa: i32,
    opts: &EigenOptions,
) -> Result<LimitTable> {
    if lambdas.is_empty() {
        return Err(Error::InvalidArgument("empty lambda list".into()));
    }
    let n_check = convergence_cutoff(n_max);
    let mut tables = Vec::new();
    for &lambda in lambdas {
        let mut t = spectrum(q, lambda, kappa, n_max, k, opts)?;
        let check = spectrum(q, lambda, kappa, n_check, k, opts)?;
        t.converged = t
            .eigenvalues
            .iter()
            .zip(&check.eigenvalues)
            .map(|(a, b)| (a - b).abs() <= CONVERGENCE_THRESHOLD * b.abs())
            .collect();
        tables.push(t);
    }
    let levels = tables.iter().map(|t| t.eigenvalues.len()).min().unwrap_or(0);
    let mut extrapolated = Vec::new();
    let mut monotone_in_lambda = Vec::new();
    for level in 0..levels {
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for t in &tables {
            if t.converged[level] {
                xs.push(t.lambda);
                ys.push(t.eigenvalues[level]);
            }
        }
        let used_unconverged = xs.len() < 2;
        if used_unconverged {
            xs = tables.iter().map(|t| t.lambda).collect();
            ys = tables.iter().map(|t| t.eigenvalues[level]).collect();
        }
        extrapolated.push(Extrapolation { level, value: linear_intercept(&xs, &ys), lambdas_used: xs, used_unconverged });
        let e: Vec<f64> = tables.iter().map(|t| t.eigenvalues[level]).collect();
        let up = e.windows(2).all(|w| w[1] >= w[0]);
        let down = e.windows(2).all(|w| w[1] <= w[0]);
        monotone_in_lambda.push(up || down);
    }
    Ok(LimitTable { q, kappa, n_max, n_check, tables, extrapolated, monotone_in_lambda })
}

/// One point of the cutoff study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutoffPoint {
    #[serde(rename = "N")]
    pub n_max: usize,
    pub e_min: f64,
    pub e_max: f64,
}

/// Largest free eigenvalue against `N_max` at fixed λ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutoffStudy {
    pub lambda: f64,
    pub points: Vec<CutoffPoint>,
    /// Relative change of `E_max` between the last two cutoffs.
    pub last_relative_change: Option<f64>,
    /// Last change below 5% (the cutoffs are expected to double).
    pub saturated: bool,
    /// `λ² E_max` at the largest cutoff.
    pub scaled_e_max: f64,
}

/// Relative change in `E_max` below which the sequence counts as saturated.
pub const SATURATION_THRESHOLD: f64 = 0.05;

/// `q = 0`, `κ' = 0`: largest and smallest eigenvalue of `Ĥ₀` per cutoff.
pub fn cutoff_study(lambda: f64, n_list: &[usize], opts: &EigenOptions) -> Result<CutoffStudy> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("empty N list".into()));
    }
    let points: Vec<CutoffPoint> = n_list
        .iter()
        .map(|&n| {
            let space = SectorSpace::new(n, 0, lambda)?;
            let h = vectorized_hamiltonian(0.0, &space)?;
            let blocks: Vec<Vec<usize>> = space.blocks().into_iter().map(|(_, b)| b).collect();
            Ok(CutoffPoint {
                n_max: n,
                e_min: lowest_by_blocks(&h.matrix, &blocks, 1, opts)?[0],
                e_max: largest_by_blocks(&h.matrix, &blocks, opts)?,
            })
        })
        .collect::<Result<_>>()?;
    let last_relative_change = match points.as_slice() {
        [.., a, b] => Some((b.e_max - a.e_max).abs() / b.e_max.abs().max(f64::MIN_POSITIVE)),
        _ => None,
    };
    let last = points.last().expect("nonempty");
    Ok(CutoffStudy {
        lambda,
        saturated: last_relative_change.is_some_and(|c| c < SATURATION_THRESHOLD),
        scaled_e_max: lambda * lambda * last.e_max,
        last_relative_change,
        points,
    })
}

/// Radial finite-difference oracle for `−½Δ − q/r` in three dimensions.
pub mod hydrogen {
    use crate::error::{Error, Result};

    /// One radial level with its `2l + 1` degeneracy.
    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct Level {
        pub energy: f64,
        pub l: usize,
        pub multiplicity: usize,
    }

    /// Grid for `u(r) = r R(r)` on `(0, r_max)` with Dirichlet ends.
    #[derive(Debug, Clone, Copy)]
    pub struct Grid {
        pub r_max: f64,
        pub points: usize,
    }

    impl Default for Grid {
        fn default() -> Self {
            Self { r_max: 80.0, points: 8000 }
        }
    }

    /// Number of eigenvalues of the symmetric tridiagonal `(d, e)` below `x`.
    fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..d.len() {
            let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] };
            q = d[i] - x - if i == 0 { 0.0 } else { off / q };
            if q == 0.0 {
                q = -1e-300;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `count` lowest eigenvalues of a symmetric tridiagonal matrix.
    pub fn tridiagonal_lowest(d: &[f64], e: &[f64], count: usize) -> Vec<f64> {
        let lo0 = d.iter().zip(0..).map(|(&di, i)| {
            let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
            let right = if i < e.len() { e[i].abs() } else { 0.0 };
            di - left - right
        });
        let lo = lo0.fold(f64::INFINITY, f64::min);
        let hi = d
            .iter()
            .zip(0..)
            .map(|(&di, i)| {
                let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
                let right = if i < e.len() { e[i].abs() } else { 0.0 };
                di + left + right
            })
            .fold(f64::NEG_INFINITY, f64::max);
        (0..count.min(d.len()))
            .map(|k| {
                let (mut a, mut b) = (lo, hi);
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if sturm_count(d, e, mid) > k {
                        b = mid;
                    } else {
                        a = mid;
                    }
                    if b - a <= 1e-15 * (1.0 + mid.abs()) {
                        break;
                    }
                }
                0.5 * (a + b)
            })
            .collect()
    }

    /// Lowest radial eigenvalues for angular momentum `l`.
    pub fn radial_levels(q: f64, l: usize, count: usize, grid: Grid) -> Result<Vec<f64>> {
        if grid.points < 3 || grid.r_max <= 0.0 {
            return Err(Error::InvalidArgument("radial grid too small".into()));
        }
        let h = grid.r_max / (grid.points + 1) as f64;
        let ll = (l * (l + 1)) as f64;
        let d: Vec<f64> = (1..=grid.points)
            .map(|i| {
                let r = i as f64 * h;
                1.0 / (h * h) + ll / (2.0 * r * r) - q / r
            })
            .collect();
        let e = vec![-0.5 / (h * h); grid.points - 1];
        Ok(tridiagonal_lowest(&d, &e, count))
    }

    /// Levels for `l ≤ l_max`, ascending, each with multiplicity `2l + 1`.
    pub fn levels(q: f64, l_max: usize, per_l: usize, grid: Grid) -> Result<Vec<Level>> {
        let mut out = Vec::new();
        for l in 0..=l_max {
            for energy in radial_levels(q, l, per_l, grid)? {
                out.push(Level { energy, l, multiplicity: 2 * l + 1 });
            }
        }
        out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        Ok(out)
    }

    /// The `k` lowest eigenvalues of `−½Δ − q/r` counted with multiplicity.
    pub fn lowest_with_multiplicity(q: f64, k: usize, grid: Grid) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for lev in levels(q, k, k, grid)? {
            out.extend(std::iter::repeat_n(lev.energy, lev.multiplicity));
        }
        out.truncate(k);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn diagonal_example() {
        let h = SparseMatrix::from_diagonal(&[c(3.0), c(1.0), c(2.0)]);
        assert_eq!(lowest_eigenvalues(&h, 2).unwrap(), vec![1.0, 2.0]);
        assert!(lowest_eigenvalues(&h, 4).is_err());
    }

    #[test]
    fn lanczos_matches_dense_on_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 50;
        let mut trip = Vec::new();
        for i in 0..n {
            for j in 0..=i {
                let z = if i == j {
                    c(rng.random_range(-1.0..1.0))
                } else {
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                };
                trip.push((i, j, z));
                if i != j {
                    trip.push((j, i, z.conj()));
                }
            }
        }
        let h = SparseMatrix::from_triplets(n, n, trip);
        let dense = lowest_eigenvalues(&h, 5).unwrap();
        let opts = EigenOptions { dense_limit: 0, ..Default::default() };
        let iter = lowest_eigenvalues_with(&h, 5, &opts).unwrap();
        for (a, b) in dense.iter().zip(&iter) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn blocks_cover_the_sector_and_decouple_h() {
        let space = SectorSpace::new(6, 1, 0.5).unwrap();
        let blocks = space.blocks();
        assert_eq!(blocks.iter().map(|(_, b)| b.len()).sum::<usize>(), space.dim());
        let h = vectorized_hamiltonian(1.0, &space).unwrap().matrix;
        let dense = dense_eigenvalues(&h.to_dense());
        let bl: Vec<Vec<usize>> = blocks.into_iter().map(|(_, b)| b).collect();
        let by_blocks = lowest_by_blocks(&h, &bl, 8, &EigenOptions::default()).unwrap();
        for (a, b) in dense.iter().zip(&by_blocks) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn iterative_block_path_matches_dense_blocks() {
        let space = SectorSpace::new(12, 0, 0.5).unwrap();
        let h = vectorized_hamiltonian(1.0, &space).unwrap().matrix;
        let bl: Vec<Vec<usize>> = space.blocks().into_iter().map(|(_, b)| b).collect();
        let dense = lowest_by_blocks(&h, &bl, 6, &EigenOptions::default()).unwrap();
        // a small dense_limit forces Lanczos on the larger blocks
        let iterative = lowest_by_blocks(&h, &bl, 6, &EigenOptions { dense_limit: 50, ..Default::default() }).unwrap();
        for (a, b) in dense.iter().zip(&iterative) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn transformed_hamiltonian_is_hermitian() {
        for kappa in [-1, 0, 2] {
            let space = SectorSpace::new(6, kappa, 0.7).unwrap();
            let h = vectorized_hamiltonian(1.0, &space).unwrap();
            assert!(h.hermiticity_deviation < 1e-12);
            assert!(h.g_hermiticity_deviation < 1e-12);
            assert!(space.weight().iter().all(|&g| g > 0.0));
        }
    }

    #[test]
    fn free_spectrum_is_non_negative() {
        let t = spectrum(0.0, 0.5, 0, 10, 3, &EigenOptions::default()).unwrap();
        assert!(t.eigenvalues[0] > -1e-10, "{:?}", t.eigenvalues);
    }

    #[test]
    fn intercept_of_exact_line() {
        assert!((linear_intercept(&[0.4, 0.3, 0.2], &[1.4, 1.3, 1.2]).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(linear_intercept(&[0.3], &[1.0]), None);
    }

    #[test]
    fn sturm_bisection_on_small_tridiagonal() {
        // [[2,-1],[-1,2]] has eigenvalues 1 and 3
        let ev = hydrogen::tridiagonal_lowest(&[2.0, 2.0], &[-1.0], 2);
        assert!((ev[0] - 1.0).abs() < 1e-13 && (ev[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn csv_rows_have_seven_columns() {
        let t = spectrum(1.0, 0.5, 0, 4, 2, &EigenOptions::default()).unwrap();
        for line in t.csv_rows().lines() {
            assert_eq!(line.split(',').count(), SpectrumTable::CSV_HEADER.split(',').count());
        }
    }
}
