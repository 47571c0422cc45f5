//! Truncation-aware identity checks.
//!
//! Every check compares two superoperators on a vectorized sector after
//! projecting onto interior units (both shell totals at most
//! `N_max - depth`). When `depth` is at least the ladder reach of both
//! sides, the projected truncated matrices equal the projected exact ones,
//! so a residual at rounding level certifies the identity itself.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{rhat_eigenvalue, FockBasis, Sector};
use crate::nc::{
    angular_momentum_superop, coordinate_matrix, coordinate_superop, hamiltonian_free_with, inverse_radius_superop,
    levi_civita, radius_matrix, su22_generator, third_index, velocity_with, Coordinate, GeneratorLabel,
    RadialOrdering, VelocityRoute,
};
use crate::sparse::SparseMatrix;
use crate::superop::{commutator, SuperOperator};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Default relative tolerance for truncated identities.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Relative tolerance for identities between occupancy-preserving matrices.
pub const EXACT_TOLERANCE: f64 = 1e-13;
/// Units where `r̂(r̂² − λ²)` falls below this are left out of the
/// monopole check.
pub const SINGULAR_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    #[default]
    Frobenius,
    Spectral,
    /// Largest entry modulus; also used for scalar comparisons.
    MaxAbs,
}

impl NormKind {
    fn of(self, m: &SparseMatrix) -> f64 {
        match self {
            NormKind::Frobenius => m.frobenius_norm(),
            NormKind::Spectral => m.spectral_norm(),
            NormKind::MaxAbs => m.max_abs(),
        }
    }
}

/// Knobs shared by the checks.
#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub norm: NormKind,
    /// Relative tolerance; the absolute bound is `rel_tol * max(scale, 1)`.
    pub rel_tol: f64,
    /// Interior depth; `None` picks the combined ladder reach.
    pub depth: Option<usize>,
    pub ordering: RadialOrdering,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { norm: NormKind::Frobenius, rel_tol: DEFAULT_TOLERANCE, depth: None, ordering: RadialOrdering::default() }
    }
}

/// Projection onto matrix units away from the truncation boundary.
#[derive(Debug, Clone)]
pub struct InteriorProjection {
    depth: usize,
    mask: Vec<bool>,
}

impl InteriorProjection {
    pub fn new(sector: &Sector, depth: usize) -> Result<Self> {
        Ok(Self { depth, mask: sector.interior_mask(depth)? })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Number of kept units.
    pub fn rank(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    /// Drops further units, e.g. where an inverse is singular.
    pub fn exclude(&mut self, positions: &[usize]) {
        for &p in positions {
            self.mask[p] = false;
        }
    }

    /// `P M P`.
    pub fn apply(&self, m: &SparseMatrix) -> SparseMatrix {
        m.project(&self.mask, &self.mask)
    }

    /// Zeroes components outside the interior.
    pub fn apply_vector(&self, v: &[Complex64]) -> Vec<Complex64> {
        v.iter().zip(&self.mask).map(|(&z, &k)| if k { z } else { Complex64::new(0.0, 0.0) }).collect()
    }
}

/// Parameters echoed into a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(rename = "N")]
    pub n: usize,
    pub lambda: Option<f64>,
    pub kappa: Option<i32>,
}

/// One identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub identity: String,
    pub operands: Vec<String>,
    pub params: Params,
    pub depth: usize,
    pub ordering: Option<String>,
    pub norm: NormKind,
    /// `‖P(lhs − rhs)P‖`
    pub residual: f64,
    /// `‖P rhs P‖`, the reference for the relative tolerance
    pub scale: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// `false` for exploratory records that never gate a run
    pub certifies: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AlgebraReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        identity: impl Into<String>,
        operands: Vec<String>,
        params: Params,
        depth: usize,
        norm: NormKind,
        residual: Residual,
        rel_tol: f64,
    ) -> Self {
        let tolerance = rel_tol * residual.scale.max(1.0);
        Self {
            identity: identity.into(),
            operands,
            params,
            depth,
            ordering: None,
            norm,
            residual: residual.residual,
            scale: residual.scale,
            tolerance,
            pass: residual.residual <= tolerance,
            certifies: true,
            note: None,
        }
    }

    /// A scalar comparison with tolerance `rel_tol * scale`, no floor.
    pub fn relative(
        identity: impl Into<String>,
        operands: Vec<String>,
        params: Params,
        residual: Residual,
        rel_tol: f64,
    ) -> Self {
        let tolerance = rel_tol * residual.scale;
        Self {
            identity: identity.into(),
            operands,
            params,
            depth: 0,
            ordering: None,
            norm: NormKind::MaxAbs,
            residual: residual.residual,
            scale: residual.scale,
            tolerance,
            pass: residual.residual <= tolerance,
            certifies: true,
            note: None,
        }
    }

    pub fn with_ordering(mut self, ordering: impl Into<String>) -> Self {
        self.ordering = Some(ordering.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn exploratory(mut self) -> Self {
        self.certifies = false;
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// A residual with the norm of the reference side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub residual: f64,
    pub scale: f64,
}

/// `‖P(lhs − rhs)P‖` and `‖P rhs P‖` for assembled matrices.
pub fn projected_residual(
    lhs: &SparseMatrix,
    rhs: &SparseMatrix,
    proj: &InteriorProjection,
    norm: NormKind,
) -> Residual {
    let prhs = proj.apply(rhs);
    let diff = proj.apply(lhs).sub(&prhs);
    Residual { residual: norm.of(&diff), scale: norm.of(&prhs) }
}

fn resolve_depth(requested: Option<usize>, lhs: &SuperOperator, rhs: &SuperOperator) -> Result<usize> {
    let reach = lhs.reach().max(rhs.reach());
    match requested {
        None => Ok(reach),
        Some(d) if d >= reach => Ok(d),
        Some(d) => Err(Error::InvalidArgument(format!(
            "depth {d} is below the ladder reach {reach} of `{}` / `{}`",
            lhs.label(),
            rhs.label()
        ))),
    }
}

/// Residual and scale of `lhs − rhs` on the interior of `sector`.
pub fn compare(
    lhs: &SuperOperator,
    rhs: &SuperOperator,
    sector: &Sector,
    depth: Option<usize>,
    norm: NormKind,
) -> Result<(Residual, usize)> {
    let d = resolve_depth(depth, lhs, rhs)?;
    let proj = InteriorProjection::new(sector, d)?;
    Ok((projected_residual(&lhs.matrix(sector)?, &rhs.matrix(sector)?, &proj, norm), d))
}

/// `‖P(lhs − rhs)P‖` on the interior of `sector`.
pub fn interior_residual(
    lhs: &SuperOperator,
    rhs: &SuperOperator,
    sector: &Sector,
    depth: usize,
    norm: NormKind,
) -> Result<f64> {
    Ok(compare(lhs, rhs, sector, Some(depth), norm)?.0.residual)
}

pub(crate) fn params(n: usize, lambda: Option<f64>, kappa: Option<i32>) -> Params {
    Params { n, lambda, kappa }
}

fn dense_residual(lhs: &DMatrix<Complex64>, rhs: &DMatrix<Complex64>) -> Residual {
    Residual { residual: (lhs - rhs).norm(), scale: rhs.norm() }
}

/// `[x_i, x_j] = 2iλ ε_ijk x_k` as plain matrices, one report per pair.
pub fn verify_coordinate_algebra(n_max: usize, lambda: f64) -> Result<Vec<AlgebraReport>> {
    let basis = FockBasis::new(n_max);
    let x: Vec<DMatrix<Complex64>> =
        (1..=3).map(|i| coordinate_matrix(i, lambda, basis).map(|m| m.to_dense())).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, j) in [(1, 2), (2, 3), (3, 1)] {
        let k = third_index(i, j).expect("distinct");
        let lhs = &x[i - 1] * &x[j - 1] - &x[j - 1] * &x[i - 1];
        let rhs = &x[k - 1] * Complex64::new(0.0, 2.0 * lambda * levi_civita(i, j, k));
        out.push(AlgebraReport::new(
            "coordinate_algebra",
            vec![format!("x{i}"), format!("x{j}"), format!("x{k}")],
            params(n_max, Some(lambda), None),
            0,
            NormKind::Frobenius,
            dense_residual(&lhs, &rhs),
            EXACT_TOLERANCE,
        ));
    }
    Ok(out)
}

/// `Σ x_i² = r² − λ²` as plain matrices.
pub fn verify_casimir(n_max: usize, lambda: f64) -> Result<AlgebraReport> {
    let basis = FockBasis::new(n_max);
    let mut lhs = DMatrix::zeros(basis.dim(), basis.dim());
    for i in 1..=3 {
        let x = coordinate_matrix(i, lambda, basis)?.to_dense();
        lhs += &x * &x;
    }
    let r = radius_matrix(lambda, basis)?.to_dense();
    let rhs = &r * &r - DMatrix::identity(basis.dim(), basis.dim()) * Complex64::new(lambda * lambda, 0.0);
    Ok(AlgebraReport::new(
        "casimir",
        vec!["x.x".into(), "r^2 - lambda^2".into()],
        params(n_max, Some(lambda), None),
        0,
        NormKind::Frobenius,
        dense_residual(&lhs, &rhs),
        EXACT_TOLERANCE,
    ))
}

/// `[L̂_i, L̂_j] = iε_ijk L̂_k` and `[L̂_i, X̂_j] = iε_ijk X̂_k` on a sector.
pub fn verify_angular_momentum(n_max: usize, lambda: f64, kappa: i32, opts: CheckOptions) -> Result<Vec<AlgebraReport>> {
    let basis = FockBasis::new(n_max);
    let sector = Sector::new(basis, kappa)?;
    let l: Vec<SuperOperator> = (1..=3).map(|i| angular_momentum_superop(i, lambda, basis)).collect::<Result<_>>()?;
    let x: Vec<SuperOperator> =
        (1..=3).map(|i| coordinate_superop(Coordinate::X(i), lambda, basis)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, j) in [(1, 2), (2, 3), (3, 1)] {
        let k = third_index(i, j).expect("distinct");
        let eps = Complex64::new(0.0, levi_civita(i, j, k));
        for (name, vec_op) in [("angular_momentum_algebra", &l), ("vector_operator", &x)] {
            let lhs = commutator(&l[i - 1], &vec_op[j - 1])?;
            let rhs = vec_op[k - 1].scale(eps);
            let (res, d) = compare(&lhs, &rhs, &sector, opts.depth, opts.norm)?;
            out.push(AlgebraReport::new(
                name,
                vec![l[i - 1].label().into(), vec_op[j - 1].label().into(), vec_op[k - 1].label().into()],
                params(n_max, Some(lambda), Some(kappa)),
                d,
                opts.norm,
                res,
                EXACT_TOLERANCE,
            ));
        }
    }
    Ok(out)
}

/// `i[Ĥ₀, X̂_i]` against the explicit first-order form, per axis.
pub fn verify_velocity_routes(n_max: usize, lambda: f64, kappa: i32, opts: CheckOptions) -> Result<Vec<AlgebraReport>> {
    let basis = FockBasis::new(n_max);
    let sector = Sector::new(basis, kappa)?;
    (1..=3)
        .map(|i| {
            let vc = velocity_with(i, lambda, basis, VelocityRoute::Commutator, opts.ordering)?;
            let ve = velocity_with(i, lambda, basis, VelocityRoute::Explicit, opts.ordering)?;
            let (res, d) = compare(&vc, &ve, &sector, opts.depth, opts.norm)?;
            Ok(AlgebraReport::new(
                "velocity_routes",
                vec![format!("V{i} (commutator)"), format!("V{i} (explicit)")],
                params(n_max, Some(lambda), Some(kappa)),
                d,
                opts.norm,
                res,
                opts.rel_tol,
            )
            .with_ordering(opts.ordering.to_string()))
        })
        .collect()
}

/// Diagonal of the weight `G = 4πλ² r̂` on a sector.
pub fn weight_diagonal(sector: &Sector, lambda: f64) -> Vec<Complex64> {
    let c = 4.0 * std::f64::consts::PI * lambda * lambda;
    (0..sector.dim())
        .map(|p| {
            let (tr, tc) = sector.shell_totals(p);
            Complex64::new(c * rhat_eigenvalue(lambda, tr, tc), 0.0)
        })
        .collect()
}

/// `‖P(GM − M†G)P‖` with reference `‖P G M P‖`.
pub fn weighted_hermiticity_residual(m: &SparseMatrix, g: &[Complex64], proj: &InteriorProjection, norm: NormKind) -> Residual {
    let ones = vec![ONE; g.len()];
    let gm = m.scale_rows_cols(g, &ones);
    let mhg = m.adjoint().scale_rows_cols(&ones, g);
    let pgm = proj.apply(&gm);
    Residual { residual: norm.of(&pgm.sub(&proj.apply(&mhg))), scale: norm.of(&pgm) }
}

/// `‖P(M − M†)P‖` with reference `‖PMP‖`.
pub fn hs_hermiticity_residual(m: &SparseMatrix, proj: &InteriorProjection, norm: NormKind) -> Residual {
    let pm = proj.apply(m);
    Residual { residual: norm.of(&pm.sub(&proj.apply(&m.adjoint()))), scale: norm.of(&pm) }
}

/// Weighted Hermiticity of `Ĥ₀`, `X̂_i`, `r̂` and `L̂_i`.
pub fn verify_hermiticity(n_max: usize, lambda: f64, kappa: i32, opts: CheckOptions) -> Result<Vec<AlgebraReport>> {
    let basis = FockBasis::new(n_max);
    let sector = Sector::new(basis, kappa)?;
    let g = weight_diagonal(&sector, lambda);
    let mut ops = vec![hamiltonian_free_with(lambda, basis, opts.ordering)?];
    for i in 1..=3 {
        ops.push(coordinate_superop(Coordinate::X(i), lambda, basis)?);
    }
    ops.push(coordinate_superop(Coordinate::Radius, lambda, basis)?);
    for i in 1..=3 {
        ops.push(angular_momentum_superop(i, lambda, basis)?);
    }
    ops.iter()
        .map(|op| {
            let d = opts.depth.unwrap_or(op.reach()).max(op.reach());
            let proj = InteriorProjection::new(&sector, d)?;
            let res = weighted_hermiticity_residual(&op.matrix(&sector)?, &g, &proj, opts.norm);
            Ok(AlgebraReport::new(
                "weighted_hermiticity",
                vec![op.label().into()],
                params(n_max, Some(lambda), Some(kappa)),
                d,
                opts.norm,
                res,
                opts.rel_tol,
            )
            .with_ordering(opts.ordering.to_string()))
        })
        .collect()
}

/// Right-hand side order in the monopole relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonopoleOrdering {
    /// `X̂_k ∘ (r̂(r̂² − λ²))⁻¹`
    XAfterInverse,
    /// `(r̂(r̂² − λ²))⁻¹ ∘ X̂_k`
    InverseAfterX,
}

impl MonopoleOrdering {
    pub const BOTH: [MonopoleOrdering; 2] = [Self::XAfterInverse, Self::InverseAfterX];

    pub fn name(self) -> &'static str {
        match self {
            Self::XAfterInverse => "x_after_inverse",
            Self::InverseAfterX => "inverse_after_x",
        }
    }
}

/// Result of the noncommutative monopole check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonopoleCheck {
    /// One report per axis pair and right-hand ordering.
    pub reports: Vec<AlgebraReport>,
    /// The ordering with the smaller worst residual (ties keep the first).
    pub selected: MonopoleOrdering,
    /// Units left out because `r̂(r̂² − λ²)` vanishes there.
    pub excluded: usize,
}

impl MonopoleCheck {
    pub fn pass(&self) -> bool {
        self.reports.iter().filter(|r| r.ordering.as_deref() == Some(self.selected.name())).all(|r| r.pass)
    }
}

/// `[V̂_i, V̂_j] = i(−κ'/2) ε_ijk X̂_k (r̂(r̂² − λ²))⁻¹` on the interior.
pub fn verify_monopole_commutator(kappa: i32, lambda: f64, n_max: usize, opts: CheckOptions) -> Result<MonopoleCheck> {
    let basis = FockBasis::new(n_max);
    let sector = Sector::new(basis, kappa)?;
    let v: Vec<SuperOperator> = (1..=3)
        .map(|i| velocity_with(i, lambda, basis, VelocityRoute::Commutator, opts.ordering))
        .collect::<Result<_>>()?;
    let q = move |tr: usize, tc: usize| {
        let rho = rhat_eigenvalue(lambda, tr, tc);
        rho * (rho * rho - lambda * lambda)
    };
    let qinv = SuperOperator::shell_multiplier("(r(r^2-l^2))^-1", basis, move |tr, tc| {
        let x = q(tr, tc);
        Complex64::new(if x.abs() < SINGULAR_CUTOFF { 0.0 } else { 1.0 / x }, 0.0)
    });
    let singular: Vec<usize> = (0..sector.dim())
        .filter(|&p| {
            let (tr, tc) = sector.shell_totals(p);
            q(tr, tc).abs() < SINGULAR_CUTOFF
        })
        .collect();

    let lhs_ops: Vec<SuperOperator> =
        [(1, 2), (2, 3), (3, 1)].iter().map(|&(i, j)| commutator(&v[i - 1], &v[j - 1])).collect::<Result<_>>()?;
    let depth = match opts.depth {
        Some(d) => d,
        None => lhs_ops.iter().map(SuperOperator::reach).max().unwrap_or(0),
    };
    let mut proj = InteriorProjection::new(&sector, depth)?;
    proj.exclude(&singular);
    if proj.rank() == 0 {
        return Err(Error::NoInterior { depth, n_max });
    }

    let mut reports = Vec::new();
    let mut worst = [0.0f64; 2];
    for (pair, &(i, j)) in [(1, 2), (2, 3), (3, 1)].iter().enumerate() {
        let k = third_index(i, j).expect("distinct");
        if depth < lhs_ops[pair].reach() {
            return Err(Error::InvalidArgument(format!("depth {depth} below reach {}", lhs_ops[pair].reach())));
        }
        let lhs = lhs_ops[pair].matrix(&sector)?;
        let xk = coordinate_superop(Coordinate::X(k), lambda, basis)?;
        let coeff = Complex64::new(0.0, -0.5 * kappa as f64 * levi_civita(i, j, k));
        for (o, ordering) in MonopoleOrdering::BOTH.iter().enumerate() {
            let rhs_op = match ordering {
                MonopoleOrdering::XAfterInverse => xk.compose(&qinv)?,
                MonopoleOrdering::InverseAfterX => qinv.compose(&xk)?,
            }
            .scale(coeff);
            let res = projected_residual(&lhs, &rhs_op.matrix(&sector)?, &proj, opts.norm);
            worst[o] = worst[o].max(res.residual / res.scale.max(1.0));
            let mut rep = AlgebraReport::new(
                "monopole_commutator",
                vec![format!("V{i}"), format!("V{j}"), format!("X{k}")],
                params(n_max, Some(lambda), Some(kappa)),
                depth,
                opts.norm,
                res,
                opts.rel_tol,
            )
            .with_ordering(ordering.name());
            if !singular.is_empty() {
                rep = rep.with_note(format!("{} singular unit(s) excluded", singular.len()));
            }
            reports.push(rep);
        }
    }
    let selected = if worst[1] < worst[0] { MonopoleOrdering::InverseAfterX } else { MonopoleOrdering::XAfterInverse };
    Ok(MonopoleCheck { reports, selected, excluded: singular.len() })
}

/// `(Ĉ + 2) = κ'` on every unit of the sector, no projection.
pub fn verify_central_element(kappa: i32, n_max: usize) -> Result<AlgebraReport> {
    let basis = FockBasis::new(n_max);
    let sector = Sector::new(basis, kappa)?;
    let c = su22_generator(GeneratorLabel::C, basis).matrix(&sector)?;
    let shifted = c.add(&SparseMatrix::identity(sector.dim()).scale(Complex64::new(2.0, 0.0)));
    let rhs = SparseMatrix::identity(sector.dim()).scale(Complex64::new(kappa as f64, 0.0));
    let res = Residual { residual: shifted.sub(&rhs).frobenius_norm(), scale: rhs.frobenius_norm() };
    Ok(AlgebraReport::new(
        "central_element",
        vec!["C + 2".into()],
        params(n_max, None, Some(kappa)),
        0,
        NormKind::Frobenius,
        res,
        EXACT_TOLERANCE,
    ))
}

/// One expansion coefficient of a commutator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub label: GeneratorLabel,
    pub re: f64,
    pub im: f64,
}

/// `[left, right] ≈ Σ c_k S_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureEntry {
    pub left: GeneratorLabel,
    pub right: GeneratorLabel,
    /// Coefficients with modulus above [`COEFFICIENT_FLOOR`].
    pub coefficients: Vec<Coefficient>,
    pub residual: f64,
    pub scale: f64,
}

impl StructureEntry {
    pub fn coefficient(&self, label: GeneratorLabel) -> Complex64 {
        self.coefficients
            .iter()
            .find(|c| c.label == label)
            .map_or(Complex64::new(0.0, 0.0), |c| Complex64::new(c.re, c.im))
    }
}

/// Coefficients below this modulus are dropped from the table.
pub const COEFFICIENT_FLOOR: f64 = 1e-9;

/// Counts of the phase pattern of nonzero structure constants.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealityPattern {
    pub real: usize,
    pub imaginary: usize,
    pub complex: usize,
}

/// Empirical structure constants of the sixteen-operator span.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Su22Closure {
    pub kappa: i32,
    pub n_max: usize,
    pub depth: usize,
    pub rank: usize,
    /// All ordered pairs of distinct labels, `C` included.
    pub table: Vec<StructureEntry>,
    /// `max |c(A,B) + c(B,A)|` over the table.
    pub antisymmetry_deviation: f64,
    pub reality: RealityPattern,
    /// Worst relative residual over the 105 pairs of non-central
    /// generators, and over the `C` pairs, as one certifying record.
    pub report: AlgebraReport,
}

impl Su22Closure {
    pub fn entry(&self, left: GeneratorLabel, right: GeneratorLabel) -> Option<&StructureEntry> {
        self.table.iter().find(|e| e.left == left && e.right == right)
    }
}

/// Decomposes every generator commutator in the span of all sixteen
/// operators by least squares on the interior-projected sector action.
pub fn verify_su22_closure(kappa: i32, n_max: usize, opts: CheckOptions) -> Result<Su22Closure> {
    let basis = FockBasis::new(n_max);
    let sector = Sector::new(basis, kappa)?;
    let ops: Vec<SuperOperator> = GeneratorLabel::ALL.iter().map(|&l| su22_generator(l, basis)).collect();
    let mats: Vec<SparseMatrix> = ops.iter().map(|o| o.matrix(&sector)).collect::<Result<_>>()?;
    let reach = 2 * ops.iter().map(SuperOperator::reach).max().unwrap_or(0);
    let depth = opts.depth.unwrap_or(reach);
    if depth < reach {
        return Err(Error::InvalidArgument(format!("depth {depth} below commutator reach {reach}")));
    }
    let proj = InteriorProjection::new(&sector, depth)?;
    let span: Vec<SparseMatrix> = mats.iter().map(|m| proj.apply(m)).collect();

    let n = span.len();
    let gram = DMatrix::from_fn(n, n, |a, b| span[a].frobenius_dot(&span[b]));
    let eig = gram.clone().symmetric_eigen();
    let top = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let rank = eig.eigenvalues.iter().filter(|&&e| e > 1e-10 * top).count();
    if rank < n {
        return Err(Error::RankDeficient { size: n, rank });
    }
    let chol = gram.cholesky().ok_or(Error::RankDeficient { size: n, rank })?;

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let table: Vec<StructureEntry> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let comm = proj.apply(&mats[a].mul(&mats[b]).sub(&mats[b].mul(&mats[a])));
            let rhs = nalgebra::DVector::from_fn(n, |k, _| span[k].frobenius_dot(&comm));
            let c = chol.solve(&rhs);
            let mut fit = SparseMatrix::zeros(comm.nrows(), comm.ncols());
            for k in 0..n {
                fit = fit.lincomb(ONE, &span[k], c[k]);
            }
            let coefficients = (0..n)
                .filter(|&k| c[k].norm() > COEFFICIENT_FLOOR)
                .map(|k| Coefficient { label: GeneratorLabel::ALL[k], re: c[k].re, im: c[k].im })
                .collect();
            StructureEntry {
                left: GeneratorLabel::ALL[a],
                right: GeneratorLabel::ALL[b],
                coefficients,
                residual: comm.sub(&fit).frobenius_norm(),
                scale: comm.frobenius_norm(),
            }
        })
        .collect();

    let mut antisymmetry_deviation = 0.0f64;
    let mut reality = RealityPattern::default();
    for e in &table {
        if let Some(rev) = table.iter().find(|r| r.left == e.right && r.right == e.left) {
            for l in GeneratorLabel::ALL {
                antisymmetry_deviation = antisymmetry_deviation.max((e.coefficient(l) + rev.coefficient(l)).norm());
            }
        }
        for c in &e.coefficients {
            let (re, im) = (c.re.abs() > COEFFICIENT_FLOOR, c.im.abs() > COEFFICIENT_FLOOR);
            match (re, im) {
                (true, false) => reality.real += 1,
                (false, true) => reality.imaginary += 1,
                _ => reality.complex += 1,
            }
        }
    }
    let worst = table.iter().map(|e| e.residual / e.scale.max(1.0)).fold(0.0, f64::max);
    let report = AlgebraReport::new(
        "su22_closure",
        GeneratorLabel::ALL.iter().map(|l| l.name().to_string()).collect(),
        params(n_max, None, Some(kappa)),
        depth,
        NormKind::Frobenius,
        Residual { residual: worst, scale: 1.0 },
        opts.rel_tol,
    )
    .with_note(format!("worst relative residual over {} ordered pairs; span rank {rank}", table.len()));
    Ok(Su22Closure { kappa, n_max, depth, rank, table, antisymmetry_deviation, reality, report })
}

/// Hermiticity of one generator, reported but never asserted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorHermiticity {
    pub label: GeneratorLabel,
    /// Relative `‖P(GS − S†G)P‖` under the weighted inner product.
    pub weighted: f64,
    /// Same for `r̂⁻¹ ∘ S`.
    pub dressed: f64,
    /// Relative `‖P(S − S†)P‖`.
    pub hilbert_schmidt: f64,
    /// Relative `‖P(S + S†)P‖`.
    pub hilbert_schmidt_anti: f64,
}

/// Hermiticity table for all sixteen operators.
pub fn generator_hermiticity(kappa: i32, n_max: usize, lambda: f64, opts: CheckOptions) -> Result<Vec<GeneratorHermiticity>> {
    let basis = FockBasis::new(n_max);
    let sector = Sector::new(basis, kappa)?;
    let g = weight_diagonal(&sector, lambda);
    let proj = InteriorProjection::new(&sector, opts.depth.unwrap_or(2))?;
    let rinv = inverse_radius_superop(lambda, basis, RadialOrdering::Symmetrized)?;
    let rel = |r: Residual| r.residual / r.scale.max(f64::MIN_POSITIVE);
    GeneratorLabel::ALL
        .iter()
        .map(|&label| {
            let s = su22_generator(label, basis);
            let m = s.matrix(&sector)?;
            let dressed = rinv.compose(&s)?.matrix(&sector)?;
            let pm = proj.apply(&m);
            let anti = proj.apply(&m.add(&m.adjoint()));
            Ok(GeneratorHermiticity {
                label,
                weighted: rel(weighted_hermiticity_residual(&m, &g, &proj, opts.norm)),
                dressed: rel(weighted_hermiticity_residual(&dressed, &g, &proj, opts.norm)),
                hilbert_schmidt: rel(hs_hermiticity_residual(&m, &proj, opts.norm)),
                hilbert_schmidt_anti: opts.norm.of(&anti) / opts.norm.of(&pm).max(f64::MIN_POSITIVE),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_sides_have_zero_residual() {
        let b = FockBasis::new(4);
        let s = Sector::new(b, 1).unwrap();
        let h = hamiltonian_free_with(0.5, b, RadialOrdering::Symmetrized).unwrap();
        assert_eq!(interior_residual(&h, &h, &s, 1, NormKind::Frobenius).unwrap(), 0.0);
    }

    #[test]
    fn depth_below_reach_is_rejected() {
        let b = FockBasis::new(4);
        let s = Sector::new(b, 0).unwrap();
        let h = hamiltonian_free_with(1.0, b, RadialOrdering::Symmetrized).unwrap();
        assert!(interior_residual(&h, &h, &s, 0, NormKind::Frobenius).is_err());
        assert!(matches!(
            interior_residual(&h, &h, &s, 4, NormKind::Frobenius),
            Err(Error::NoInterior { .. })
        ));
    }

    #[test]
    fn perturbation_is_detected() {
        let b = FockBasis::new(4);
        let s = Sector::new(b, 0).unwrap();
        let proj = InteriorProjection::new(&s, 1).unwrap();
        let h = hamiltonian_free_with(1.0, b, RadialOrdering::Symmetrized).unwrap().matrix(&s).unwrap();
        let eps = 1e-6;
        let bump = SparseMatrix::from_triplets(s.dim(), s.dim(), vec![(0, 0, Complex64::new(eps, 0.0))]);
        let r = projected_residual(&h, &h.add(&bump), &proj, NormKind::Frobenius);
        assert!(r.residual >= eps / 2.0);
    }

    #[test]
    fn projection_is_idempotent() {
        let b = FockBasis::new(5);
        let s = Sector::new(b, -1).unwrap();
        let proj = InteriorProjection::new(&s, 2).unwrap();
        let m = su22_generator(GeneratorLabel::S01, b).matrix(&s).unwrap();
        let once = proj.apply(&m);
        assert_eq!(proj.apply(&once), once);
    }

    #[test]
    fn so3_constants_from_closure() {
        let c = verify_su22_closure(0, 5, CheckOptions::default()).unwrap();
        let e = c.entry(GeneratorLabel::S12, GeneratorLabel::S23).unwrap();
        assert!((e.coefficient(GeneratorLabel::S13) - Complex64::new(0.0, -1.0)).norm() < 1e-10);
        for l in GeneratorLabel::ALL {
            if l != GeneratorLabel::C {
                let e = c.entry(GeneratorLabel::C, l).unwrap();
                assert!(e.coefficients.is_empty(), "{l}");
            }
        }
        assert!(c.report.pass);
    }

    #[test]
    fn closure_rejects_rank_deficient_span() {
        // C vanishes identically at kappa' = 2
        assert!(matches!(
            verify_su22_closure(2, 6, CheckOptions::default()),
            Err(Error::RankDeficient { size: 16, rank: 15 })
        ));
    }

    #[test]
    fn report_json_has_schema_fields() {
        let r = verify_central_element(1, 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json_line()).unwrap();
        for key in ["identity", "params", "depth", "ordering", "residual", "tolerance", "pass", "certifies", "norm"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["params"]["N"], 3);
    }
}
