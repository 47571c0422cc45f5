//! Operators of quantum mechanics on R³_λ acting on wave operators.
//!
//! Coordinates are `x_i = λ a⁺σ^i a` and `r = λ(a⁺a + 1)`. Superoperators
//! act on `Ψ` from the left, the right, or both; `â Ψ = aΨ` and
//! `b̂ Ψ = Ψa`.
//!
//! Conventions fixed here (checked numerically in the tests and the
//! verifier):
//! * `Ĥ₀ = (1/2λ) r̂⁻¹ Σ_α [a⁺_α, [a_α, ·]]`, non-negative.
//! * `L̂_i = (1/2λ)[x_i, ·]`, Hermitian with `[L̂_i, L̂_j] = iε_ijk L̂_k`.
//! * `1/r` prefactors default to the inverse of `r̂ = ½(L_r + R_r)`, which
//!   is diagonal on matrix units; [`RadialOrdering::Left`] uses `r⁻¹Ψ`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{FockBasis, FockOperator, Ladder, Mode};
use crate::superop::{commutator, SuperOperator};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pauli matrix `σ^i`, `i ∈ 1..=3`.
pub fn pauli(i: usize) -> [[Complex64; 2]; 2] {
    match i {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("Pauli index {i} outside 1..=3"),
    }
}

/// Levi-Civita symbol on `1..=3`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

/// The third index completing `(i, j)` to a permutation of `1, 2, 3`.
pub fn third_index(i: usize, j: usize) -> Option<usize> {
    (1..=3).find(|&k| levi_civita(i, j, k) != 0.0)
}

fn check_axis(i: usize) -> Result<()> {
    if (1..=3).contains(&i) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("axis {i} outside 1..=3")))
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("lambda must be positive, got {lambda}")))
    }
}

fn mode(alpha: usize) -> Mode {
    Mode::BOTH[alpha]
}

/// `Σ_αβ s_αβ a⁺_α a_β`, exact on every basis state.
pub fn bilinear(basis: FockBasis, s: &[[Complex64; 2]; 2]) -> FockOperator {
    let mut acc = FockOperator::zero(basis);
    for (al, row) in s.iter().enumerate() {
        for (be, &c) in row.iter().enumerate() {
            if c != ZERO {
                let pair = FockOperator::ladder_pair(basis, (mode(al), Ladder::Create), (mode(be), Ladder::Annihilate));
                acc = acc.axpy(c, &pair);
            }
        }
    }
    acc
}

/// Number operator `a⁺_α a_α`.
pub fn number_operator(basis: FockBasis) -> FockOperator {
    FockOperator::diagonal(basis, |s| s.total() as f64)
}

/// Coordinate matrix `x_i = λ a⁺σ^i a`.
pub fn coordinate_matrix(i: usize, lambda: f64, basis: FockBasis) -> Result<FockOperator> {
    check_axis(i)?;
    check_lambda(lambda)?;
    Ok(bilinear(basis, &pauli(i)).scale(Complex64::new(lambda, 0.0)))
}

/// Radius matrix `r = λ(a⁺_α a_α + 1)`.
pub fn radius_matrix(lambda: f64, basis: FockBasis) -> Result<FockOperator> {
    check_lambda(lambda)?;
    Ok(FockOperator::diagonal(basis, |s| lambda * (s.total() + 1) as f64))
}

/// Which multiplication [`coordinate_superop`] builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    /// `x_i`, `i ∈ 1..=3`
    X(usize),
    Radius,
}

/// Symmetrized multiplication `X̂Ψ = ½(xΨ + Ψx)`.
pub fn coordinate_superop(c: Coordinate, lambda: f64, basis: FockBasis) -> Result<SuperOperator> {
    match c {
        Coordinate::X(i) => Ok(SuperOperator::symmetrized(format!("X{i}"), coordinate_matrix(i, lambda, basis)?)),
        Coordinate::Radius => {
            check_lambda(lambda)?;
            Ok(SuperOperator::shell_multiplier("r", basis, move |tr, tc| {
                Complex64::new(crate::fock::rhat_eigenvalue(lambda, tr, tc), 0.0)
            }))
        }
    }
}

/// Placement of `1/r` prefactors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialOrdering {
    /// Inverse of `r̂ = ½(L_r + R_r)`.
    #[default]
    Symmetrized,
    /// Left multiplication `Ψ ↦ r⁻¹Ψ`.
    Left,
}

impl fmt::Display for RadialOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RadialOrdering::Symmetrized => "symmetrized",
            RadialOrdering::Left => "left",
        })
    }
}

/// `1/r` as a superoperator with the given placement.
pub fn inverse_radius_superop(lambda: f64, basis: FockBasis, ordering: RadialOrdering) -> Result<SuperOperator> {
    check_lambda(lambda)?;
    Ok(match ordering {
        RadialOrdering::Symmetrized => SuperOperator::shell_multiplier("r^-1", basis, move |tr, tc| {
            Complex64::new(1.0 / crate::fock::rhat_eigenvalue(lambda, tr, tc), 0.0)
        }),
        RadialOrdering::Left => SuperOperator::shell_multiplier("r^-1 (left)", basis, move |tr, _| {
            Complex64::new(1.0 / (lambda * (tr + 1) as f64), 0.0)
        }),
    })
}

/// Coulomb weight `½(r⁻¹Ψ + Ψr⁻¹)`.
pub fn coulomb_superop(lambda: f64, basis: FockBasis) -> Result<SuperOperator> {
    check_lambda(lambda)?;
    Ok(SuperOperator::shell_multiplier("W", basis, move |tr, tc| {
        Complex64::new(0.5 / (lambda * (tr + 1) as f64) + 0.5 / (lambda * (tc + 1) as f64), 0.0)
    }))
}

/// `Σ_α [a⁺_α, [a_α, Ψ]]`.
pub fn double_commutator_superop(basis: FockBasis) -> SuperOperator {
    let mut terms = Vec::new();
    for m in Mode::BOTH {
        let ap = FockOperator::ladder(basis, m, Ladder::Create);
        let a = FockOperator::ladder(basis, m, Ladder::Annihilate);
        let nn = FockOperator::ladder_pair(basis, (m, Ladder::Create), (m, Ladder::Annihilate));
        let aap = FockOperator::ladder_pair(basis, (m, Ladder::Annihilate), (m, Ladder::Create));
        terms.push((ONE, SuperOperator::left("", nn)));
        terms.push((-ONE, SuperOperator::sandwich("", basis, ONE, Some(ap.clone()), Some(a.clone()))));
        terms.push((-ONE, SuperOperator::sandwich("", basis, ONE, Some(a), Some(ap))));
        terms.push((ONE, SuperOperator::right("", aap)));
    }
    SuperOperator::linear("[a+,[a,.]]", terms).expect("grading-preserving terms")
}

/// Free Hamiltonian with the default `1/r` placement.
pub fn hamiltonian_free_superop(lambda: f64, basis: FockBasis) -> Result<SuperOperator> {
    hamiltonian_free_with(lambda, basis, RadialOrdering::default())
}

/// `Ĥ₀ = (1/2λ) r̂⁻¹ Σ_α [a⁺_α, [a_α, ·]]`.
pub fn hamiltonian_free_with(lambda: f64, basis: FockBasis, ordering: RadialOrdering) -> Result<SuperOperator> {
    let rinv = inverse_radius_superop(lambda, basis, ordering)?;
    Ok(rinv
        .compose(&double_commutator_superop(basis))?
        .scale(Complex64::new(0.5 / lambda, 0.0))
        .relabel("H0"))
}

/// How [`velocity_superop`] is assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VelocityRoute {
    /// `i[Ĥ₀, X̂_i]`
    Commutator,
    /// `−(i/2) r⁻¹ σ^i_αβ (a⁺_α[a_β, Ψ] − a_β[a⁺_α, Ψ])`
    Explicit,
}

impl fmt::Display for VelocityRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VelocityRoute::Commutator => "commutator",
            VelocityRoute::Explicit => "explicit",
        })
    }
}

/// Velocity `V̂_i` with the default `1/r` placement.
pub fn velocity_superop(i: usize, lambda: f64, basis: FockBasis, route: VelocityRoute) -> Result<SuperOperator> {
    velocity_with(i, lambda, basis, route, RadialOrdering::default())
}

pub fn velocity_with(
    i: usize,
    lambda: f64,
    basis: FockBasis,
    route: VelocityRoute,
    ordering: RadialOrdering,
) -> Result<SuperOperator> {
    check_axis(i)?;
    let label = format!("V{i}");
    match route {
        VelocityRoute::Commutator => {
            let h = hamiltonian_free_with(lambda, basis, ordering)?;
            let x = coordinate_superop(Coordinate::X(i), lambda, basis)?;
            Ok(commutator(&h, &x)?.scale(I).relabel(label))
        }
        VelocityRoute::Explicit => {
            let s = pauli(i);
            let mut terms = Vec::new();
            for (al, row) in s.iter().enumerate() {
                for (be, &c) in row.iter().enumerate() {
                    if c == ZERO {
                        continue;
                    }
                    let (ma, mb) = (mode(al), mode(be));
                    let ap = FockOperator::ladder(basis, ma, Ladder::Create);
                    let a = FockOperator::ladder(basis, mb, Ladder::Annihilate);
                    let ap_a = FockOperator::ladder_pair(basis, (ma, Ladder::Create), (mb, Ladder::Annihilate));
                    let a_ap = FockOperator::ladder_pair(basis, (mb, Ladder::Annihilate), (ma, Ladder::Create));
                    // a⁺_α[a_β, Ψ] = a⁺_α a_β Ψ − a⁺_α Ψ a_β
                    terms.push((c, SuperOperator::left("", ap_a)));
                    terms.push((-c, SuperOperator::sandwich("", basis, ONE, Some(ap.clone()), Some(a.clone()))));
                    // a_β[a⁺_α, Ψ] = a_β a⁺_α Ψ − a_β Ψ a⁺_α
                    terms.push((-c, SuperOperator::left("", a_ap)));
                    terms.push((c, SuperOperator::sandwich("", basis, ONE, Some(a), Some(ap))));
                }
            }
            let inner = SuperOperator::linear("", terms)?;
            let rinv = inverse_radius_superop(lambda, basis, ordering)?;
            Ok(rinv.compose(&inner)?.scale(Complex64::new(0.0, -0.5)).relabel(label))
        }
    }
}

/// `L̂_i = (1/2λ)[x_i, ·]`.
pub fn angular_momentum_superop(i: usize, lambda: f64, basis: FockBasis) -> Result<SuperOperator> {
    let x = coordinate_matrix(i, lambda, basis)?;
    let half = Complex64::new(0.5 / lambda, 0.0);
    Ok(SuperOperator::left("", x.clone())
        .sub(&SuperOperator::right("", x))
        .scale(half)
        .relabel(format!("L{i}")))
}

/// The fifteen quadratic generators and the central element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorLabel {
    S12,
    S13,
    S23,
    S14,
    S24,
    S34,
    S05,
    S01,
    S02,
    S03,
    S45,
    S15,
    S25,
    S35,
    S04,
    C,
}

impl GeneratorLabel {
    pub const ALL: [GeneratorLabel; 16] = [
        Self::S12,
        Self::S13,
        Self::S23,
        Self::S14,
        Self::S24,
        Self::S34,
        Self::S05,
        Self::S01,
        Self::S02,
        Self::S03,
        Self::S45,
        Self::S15,
        Self::S25,
        Self::S35,
        Self::S04,
        Self::C,
    ];

    /// The fifteen non-central generators.
    pub fn generators() -> &'static [GeneratorLabel] {
        &Self::ALL[..15]
    }

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&l| l == self).expect("listed")
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::S12 => "S_12",
            Self::S13 => "S_13",
            Self::S23 => "S_23",
            Self::S14 => "S_14",
            Self::S24 => "S_24",
            Self::S34 => "S_34",
            Self::S05 => "S_05",
            Self::S01 => "S_01",
            Self::S02 => "S_02",
            Self::S03 => "S_03",
            Self::S45 => "S_45",
            Self::S15 => "S_15",
            Self::S25 => "S_25",
            Self::S35 => "S_35",
            Self::S04 => "S_04",
            Self::C => "C",
        }
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| *c != '_').collect::<String>().to_ascii_uppercase();
        Self::ALL
            .iter()
            .copied()
            .find(|l| l.name().replace('_', "") == key)
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

/// `Σ s_αβ â⁺_α b̂_β`: `Ψ ↦ Σ s_αβ a⁺_α Ψ a_β`.
fn a_plus_b(basis: FockBasis, s: &[[Complex64; 2]; 2]) -> SuperOperator {
    let mut terms = Vec::new();
    for (al, row) in s.iter().enumerate() {
        for (be, &c) in row.iter().enumerate() {
            if c != ZERO {
                let ap = FockOperator::ladder(basis, mode(al), Ladder::Create);
                let a = FockOperator::ladder(basis, mode(be), Ladder::Annihilate);
                terms.push((c, SuperOperator::sandwich("", basis, ONE, Some(ap), Some(a))));
            }
        }
    }
    SuperOperator::linear("", terms).expect("nonzero matrix")
}

/// `Σ s_αβ b̂⁺_α â_β`: `Ψ ↦ Σ s_αβ a_β Ψ a⁺_α`.
fn b_plus_a(basis: FockBasis, s: &[[Complex64; 2]; 2]) -> SuperOperator {
    let mut terms = Vec::new();
    for (al, row) in s.iter().enumerate() {
        for (be, &c) in row.iter().enumerate() {
            if c != ZERO {
                let ap = FockOperator::ladder(basis, mode(al), Ladder::Create);
                let a = FockOperator::ladder(basis, mode(be), Ladder::Annihilate);
                terms.push((c, SuperOperator::sandwich("", basis, ONE, Some(a), Some(ap))));
            }
        }
    }
    SuperOperator::linear("", terms).expect("nonzero matrix")
}

/// `Σ s_αβ b̂⁺_α b̂_β`: `Ψ ↦ Ψ (Σ s_αβ a_β a⁺_α)`, exact.
fn b_plus_b(basis: FockBasis, s: &[[Complex64; 2]; 2]) -> SuperOperator {
    let mut m = FockOperator::zero(basis);
    for (al, row) in s.iter().enumerate() {
        for (be, &c) in row.iter().enumerate() {
            if c != ZERO {
                let pair = FockOperator::ladder_pair(basis, (mode(be), Ladder::Annihilate), (mode(al), Ladder::Create));
                m = m.axpy(c, &pair);
            }
        }
    }
    SuperOperator::right("", m)
}

fn a_plus_a(basis: FockBasis, s: &[[Complex64; 2]; 2]) -> SuperOperator {
    SuperOperator::left("", bilinear(basis, s))
}

/// Builds one generator as the displayed quadratic expression in
/// `â, â⁺, b̂, b̂⁺`. Every generator preserves `kappa'`.
pub fn su22_generator(label: GeneratorLabel, basis: FockBasis) -> SuperOperator {
    use GeneratorLabel::*;
    let id = [[ONE, ZERO], [ZERO, ONE]];
    let half = Complex64::new(0.5, 0.0);
    let ihalf = Complex64::new(0.0, 0.5);
    let op = match label {
        S12 | S13 | S23 => {
            let (i, j) = match label {
                S12 => (1, 2),
                S13 => (1, 3),
                _ => (2, 3),
            };
            let k = third_index(i, j).expect("distinct axes");
            let s = pauli(k);
            a_plus_a(basis, &s).sub(&b_plus_b(basis, &s)).scale(half * levi_civita(i, j, k))
        }
        S14 | S24 | S34 => {
            let s = pauli(axis_of(label));
            a_plus_a(basis, &s).add(&b_plus_b(basis, &s)).scale(half)
        }
        S05 => a_plus_a(basis, &id).add(&b_plus_b(basis, &id)).scale(half),
        C => a_plus_a(basis, &id).sub(&b_plus_b(basis, &id)),
        S01 | S02 | S03 => {
            let s = pauli(axis_of(label));
            a_plus_b(basis, &s).sub(&b_plus_a(basis, &s)).scale(ihalf)
        }
        S45 => a_plus_b(basis, &id).sub(&b_plus_a(basis, &id)).scale(ihalf),
        S15 | S25 | S35 => {
            let s = pauli(axis_of(label));
            a_plus_b(basis, &s).add(&b_plus_a(basis, &s)).scale(ihalf)
        }
        S04 => a_plus_b(basis, &id).add(&b_plus_a(basis, &id)).scale(half),
    };
    op.relabel(label.name())
}

fn axis_of(label: GeneratorLabel) -> usize {
    use GeneratorLabel::*;
    match label {
        S14 | S01 | S15 => 1,
        S24 | S02 | S25 => 2,
        S34 | S03 | S35 => 3,
        _ => unreachable!("label has no single axis"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockIndex, Sector, WaveOperator};

    fn unit(b: FockBasis, n: (usize, usize), m: (usize, usize)) -> WaveOperator {
        WaveOperator::unit(b, FockIndex::new(n.0, n.1), FockIndex::new(m.0, m.1)).unwrap()
    }

    fn at(w: &WaveOperator, n: (usize, usize), m: (usize, usize)) -> Complex64 {
        w.get(FockIndex::new(n.0, n.1), FockIndex::new(m.0, m.1))
    }

    #[test]
    fn x3_and_radius_on_units() {
        let b = FockBasis::new(4);
        let lam = 0.7;
        let x3 = coordinate_superop(Coordinate::X(3), lam, b).unwrap();
        let psi = unit(b, (2, 1), (2, 1));
        assert!((at(&x3.apply(&psi).unwrap(), (2, 1), (2, 1)).re - lam).abs() < 1e-15);
        let r = coordinate_superop(Coordinate::Radius, lam, b).unwrap();
        assert!((at(&r.apply(&unit(b, (0, 0), (0, 0))).unwrap(), (0, 0), (0, 0)).re - lam).abs() < 1e-15);
    }

    #[test]
    fn casimir_on_single_excitation() {
        let b = FockBasis::new(3);
        let lam = 1.3;
        let mut x2 = FockOperator::zero(b);
        for i in 1..=3 {
            let x = coordinate_matrix(i, lam, b).unwrap();
            x2 = x2.add(&x.mul(&x));
        }
        let k = b.index_of(FockIndex::new(1, 0)).unwrap();
        assert!((x2.get(k, k).re - 3.0 * lam * lam).abs() < 1e-14);
    }

    #[test]
    fn hamiltonian_on_vacuum_unit() {
        // Ψ = |0><0|: a⁺aΨ = 0, aΨa⁺ = 0, Ψaa⁺ = 2Ψ, and since <0|a_α = <1_α|,
        // a⁺Ψa = Σ_α |1_α><1_α|. So D Ψ = 2|0><0| − |1,0><1,0| − |0,1><0,1|.
        // r̂ is λ on the vacuum unit and 2λ on the others:
        // Ĥ₀Ψ = (1/λ²)|0><0| − (1/4λ²)(|1,0><1,0| + |0,1><0,1|).
        let b = FockBasis::new(3);
        let lam = 0.5;
        let out = hamiltonian_free_superop(lam, b).unwrap().apply(&unit(b, (0, 0), (0, 0))).unwrap();
        let inv2 = 1.0 / (lam * lam);
        assert!((at(&out, (0, 0), (0, 0)).re - inv2).abs() < 1e-12);
        assert!((at(&out, (1, 0), (1, 0)).re + 0.25 * inv2).abs() < 1e-12);
        assert!((at(&out, (0, 1), (0, 1)).re + 0.25 * inv2).abs() < 1e-12);
        let total: f64 = out.entries().iter().map(|z| z.norm_sqr()).sum();
        assert!((total - inv2 * inv2 * (1.0 + 2.0 / 16.0)).abs() < 1e-10);
    }

    #[test]
    fn hamiltonian_kills_identity_inside() {
        let b = FockBasis::new(5);
        let out = hamiltonian_free_superop(1.0, b).unwrap().apply(&WaveOperator::identity(b)).unwrap();
        for (i, s) in b.iter().enumerate() {
            if s.total() < 5 {
                assert!(out.entries()[(i, i)].norm() < 1e-14, "{s}");
            }
        }
    }

    #[test]
    fn angular_momentum_is_diagonal_on_units() {
        let b = FockBasis::new(4);
        let l3 = angular_momentum_superop(3, 0.9, b).unwrap();
        let out = l3.apply(&unit(b, (3, 0), (0, 1))).unwrap();
        // ((3 - 0) - (0 - 1)) / 2 = 2
        assert!((at(&out, (3, 0), (0, 1)) - Complex64::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn v3_on_excited_diagonal_unit() {
        // Ψ = |1,0><1,0|, σ³ = diag(1, -1). Per mode, a⁺[a,Ψ] − a[a⁺,Ψ]
        // = (a⁺a − aa⁺)Ψ − a⁺Ψa + aΨa⁺:
        //   mode 1: −Ψ − 2|2,0><2,0| + |0,0><0,0|
        //   mode 2: −Ψ − |1,1><1,1|, entering with sign −1
        // sum: |0,0><0,0| − 2|2,0><2,0| + |1,1><1,1|, then −(i/2) r̂⁻¹
        // with r̂ = λ, 3λ, 3λ on those units.
        let b = FockBasis::new(4);
        let v = velocity_superop(3, 1.0, b, VelocityRoute::Explicit).unwrap();
        let out = v.apply(&unit(b, (1, 0), (1, 0))).unwrap();
        assert!((at(&out, (0, 0), (0, 0)) - Complex64::new(0.0, -0.5)).norm() < 1e-14);
        assert!((at(&out, (2, 0), (2, 0)) - Complex64::new(0.0, 1.0 / 3.0)).norm() < 1e-14);
        assert!((at(&out, (1, 1), (1, 1)) - Complex64::new(0.0, -1.0 / 6.0)).norm() < 1e-14);
        assert!(at(&out, (1, 0), (1, 0)).norm() < 1e-14);
        let total: f64 = out.entries().iter().map(|z| z.norm_sqr()).sum();
        assert!((total - (0.25 + 1.0 / 9.0 + 1.0 / 36.0)).abs() < 1e-14);
    }

    #[test]
    fn generator_labels_round_trip() {
        for l in GeneratorLabel::ALL {
            assert_eq!(l.name().parse::<GeneratorLabel>().unwrap(), l);
        }
        assert_eq!("s12".parse::<GeneratorLabel>().unwrap(), GeneratorLabel::S12);
        assert!("S_99".parse::<GeneratorLabel>().is_err());
        assert_eq!(GeneratorLabel::ALL.len(), 16);
    }

    #[test]
    fn central_element_plus_two_counts_grading() {
        let b = FockBasis::new(4);
        let c = su22_generator(GeneratorLabel::C, b);
        for kappa in -3..=3 {
            let s = Sector::new(b, kappa).unwrap();
            let m = c.matrix(&s).unwrap();
            for p in 0..s.dim() {
                assert_eq!(m.get(p, p), Complex64::new((kappa - 2) as f64, 0.0));
            }
            assert_eq!(m.nnz(), if kappa == 2 { 0 } else { s.dim() });
        }
    }

    #[test]
    fn s05_and_s34_diagonal_actions() {
        let b = FockBasis::new(4);
        let psi = unit(b, (2, 1), (0, 1));
        let s05 = su22_generator(GeneratorLabel::S05, b).apply(&psi).unwrap();
        assert!((at(&s05, (2, 1), (0, 1)).re - 0.5 * (3.0 + 1.0 + 2.0)).abs() < 1e-14);
        let s34 = su22_generator(GeneratorLabel::S34, b).apply(&psi).unwrap();
        assert!((at(&s34, (2, 1), (0, 1)).re - 0.5 * (1.0 + -1.0)).abs() < 1e-14);
    }

    #[test]
    fn every_generator_preserves_grading() {
        let b = FockBasis::new(3);
        for l in GeneratorLabel::ALL {
            assert_eq!(su22_generator(l, b).shift(), 0, "{l}");
        }
    }
}
