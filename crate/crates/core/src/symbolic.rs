//! Exact differentiation over the four independent variables
//! `z1, z2, z1*, z2*` of the commutative C² construction.
//!
//! Expressions are immutable trees with shared subtrees. Derivatives are
//! exact; identities are then checked by evaluating both sides at seeded
//! sample points on the principal branch, which avoids any need for a
//! canonical form of rational powers.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nc::{levi_civita, pauli};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Default pointwise tolerance for the commutative identities.
pub const POINTWISE_TOLERANCE: f64 = 1e-10;

/// One of the four independent coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z1,
    Z2,
    Z1c,
    Z2c,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z1, Var::Z2, Var::Z1c, Var::Z2c];

    /// `z_α` for `α ∈ {1, 2}`.
    pub fn z(alpha: usize) -> Var {
        match alpha {
            1 => Var::Z1,
            2 => Var::Z2,
            _ => panic!("mode index {alpha} out of range"),
        }
    }

    /// `z*_α` for `α ∈ {1, 2}`.
    pub fn zc(alpha: usize) -> Var {
        match alpha {
            1 => Var::Z1c,
            2 => Var::Z2c,
            _ => panic!("mode index {alpha} out of range"),
        }
    }

    pub fn conjugate(self) -> Var {
        match self {
            Var::Z1 => Var::Z1c,
            Var::Z2 => Var::Z2c,
            Var::Z1c => Var::Z1,
            Var::Z2c => Var::Z2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z1 => "z1",
            Var::Z2 => "z2",
            Var::Z1c => "z1*",
            Var::Z2c => "z2*",
        }
    }

    fn mode(self) -> usize {
        match self {
            Var::Z1 | Var::Z1c => 1,
            Var::Z2 | Var::Z2c => 2,
        }
    }
}

#[derive(Debug)]
enum Node {
    Const(Complex64),
    Var(Var),
    /// `r = z1 z1* + z2 z2*`
    Radius,
    Sum(Vec<SymExpr>),
    Product(Vec<SymExpr>),
    Pow(SymExpr, Rational64),
}

/// An immutable expression in `z1, z2, z1*, z2*` and `r`.
#[derive(Debug, Clone)]
pub struct SymExpr(Arc<Node>);

impl SymExpr {
    fn node(n: Node) -> Self {
        SymExpr(Arc::new(n))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::node(Node::Const(c))
    }

    pub fn real(x: f64) -> Self {
        Self::constant(Complex64::new(x, 0.0))
    }

    pub fn zero() -> Self {
        Self::real(0.0)
    }

    pub fn one() -> Self {
        Self::real(1.0)
    }

    pub fn var(v: Var) -> Self {
        Self::node(Node::Var(v))
    }

    pub fn radius() -> Self {
        Self::node(Node::Radius)
    }

    /// Flattened sum with constants folded and zeros dropped.
    pub fn sum(terms: impl IntoIterator<Item = SymExpr>) -> Self {
        let mut constant = Complex64::zero();
        let mut out = Vec::new();
        for t in terms {
            match &*t.0 {
                Node::Const(c) => constant += c,
                Node::Sum(inner) => {
                    for u in inner {
                        match &*u.0 {
                            Node::Const(c) => constant += c,
                            _ => out.push(u.clone()),
                        }
                    }
                }
                _ => out.push(t),
            }
        }
        if !constant.is_zero() {
            out.push(Self::constant(constant));
        }
        match out.len() {
            0 => Self::zero(),
            1 => out.pop().unwrap(),
            _ => Self::node(Node::Sum(out)),
        }
    }

    /// Flattened product; a zero factor collapses the whole product.
    pub fn product(factors: impl IntoIterator<Item = SymExpr>) -> Self {
        let mut constant = Complex64::one();
        let mut out = Vec::new();
        for f in factors {
            match &*f.0 {
                Node::Const(c) => constant *= c,
                Node::Product(inner) => {
                    for u in inner {
                        match &*u.0 {
                            Node::Const(c) => constant *= c,
                            _ => out.push(u.clone()),
                        }
                    }
                }
                _ => out.push(f),
            }
        }
        if constant.is_zero() {
            return Self::zero();
        }
        if out.is_empty() {
            return Self::constant(constant);
        }
        if constant != Complex64::one() {
            out.insert(0, Self::constant(constant));
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Self::node(Node::Product(out))
        }
    }

    pub fn pow(&self, p: Rational64) -> Self {
        if p.is_zero() {
            return Self::one();
        }
        if p.is_one() {
            return self.clone();
        }
        if let Node::Const(c) = &*self.0 {
            if p.is_integer() {
                if let Some(e) = p.to_integer().to_i32() {
                    if !(c.is_zero() && e < 0) {
                        return Self::constant(c.powi(e));
                    }
                }
            }
        }
        Self::node(Node::Pow(self.clone(), p))
    }

    pub fn powi(&self, e: i64) -> Self {
        self.pow(Rational64::from_integer(e))
    }

    pub fn recip(&self) -> Self {
        self.powi(-1)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::product([Self::constant(c), self.clone()])
    }

    /// `Some(c)` if the expression is a bare constant.
    pub fn as_constant(&self) -> Option<Complex64> {
        match &*self.0 {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_zero())
    }

    /// Number of distinct nodes.
    pub fn size(&self) -> usize {
        fn walk(e: &SymExpr, seen: &mut std::collections::HashSet<usize>) {
            if !seen.insert(e.key()) {
                return;
            }
            match &*e.0 {
                Node::Sum(ts) | Node::Product(ts) => ts.iter().for_each(|t| walk(t, seen)),
                Node::Pow(b, _) => walk(b, seen),
                _ => {}
            }
        }
        let mut seen = std::collections::HashSet::new();
        walk(self, &mut seen);
        seen.len()
    }

    fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// Exact partial derivative with respect to `v`.
    pub fn diff(&self, v: Var) -> SymExpr {
        let mut cache = HashMap::new();
        self.diff_cached(v, &mut cache)
    }

    fn diff_cached(&self, v: Var, cache: &mut HashMap<usize, SymExpr>) -> SymExpr {
        if let Some(d) = cache.get(&self.key()) {
            return d.clone();
        }
        let d = match &*self.0 {
            Node::Const(_) => SymExpr::zero(),
            Node::Var(w) => SymExpr::real(if *w == v { 1.0 } else { 0.0 }),
            Node::Radius => SymExpr::var(v.conjugate()),
            Node::Sum(ts) => SymExpr::sum(ts.iter().map(|t| t.diff_cached(v, cache)).collect::<Vec<_>>()),
            Node::Product(fs) => {
                let mut terms = Vec::new();
                for (i, f) in fs.iter().enumerate() {
                    let df = f.diff_cached(v, cache);
                    if df.is_zero() {
                        continue;
                    }
                    let mut factors: Vec<SymExpr> =
                        fs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
                    factors.push(df);
                    terms.push(SymExpr::product(factors));
                }
                SymExpr::sum(terms)
            }
            Node::Pow(b, p) => {
                let db = b.diff_cached(v, cache);
                if db.is_zero() {
                    SymExpr::zero()
                } else {
                    let c = Complex64::new(p.to_f64().unwrap_or(f64::NAN), 0.0);
                    SymExpr::product([SymExpr::constant(c), b.pow(p - Rational64::one()), db])
                }
            }
        };
        cache.insert(self.key(), d.clone());
        d
    }

    /// Value at a point. Non-integer powers use the principal branch.
    pub fn eval(&self, point: &C2Point) -> Result<Complex64> {
        Evaluator::new(*point).eval(self)
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Const(c) if c.im == 0.0 => write!(f, "{}", c.re),
            Node::Const(c) if c.re == 0.0 => write!(f, "{}i", c.im),
            Node::Const(c) => write!(f, "({}{:+}i)", c.re, c.im),
            Node::Var(v) => f.write_str(v.name()),
            Node::Radius => f.write_str("r"),
            Node::Sum(ts) => {
                f.write_str("(")?;
                for (k, t) in ts.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            Node::Product(fs) => {
                for (k, t) in fs.iter().enumerate() {
                    if k > 0 {
                        f.write_str("·")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            Node::Pow(b, p) => write!(f, "{b}^({p})"),
        }
    }
}

impl From<f64> for SymExpr {
    fn from(x: f64) -> Self {
        SymExpr::real(x)
    }
}

impl From<Complex64> for SymExpr {
    fn from(c: Complex64) -> Self {
        SymExpr::constant(c)
    }
}

impl From<Var> for SymExpr {
    fn from(v: Var) -> Self {
        SymExpr::var(v)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<SymExpr> for SymExpr {
            type Output = SymExpr;
            fn $method(self, rhs: SymExpr) -> SymExpr {
                $body(self, rhs)
            }
        }
        impl $tr<&SymExpr> for SymExpr {
            type Output = SymExpr;
            fn $method(self, rhs: &SymExpr) -> SymExpr {
                $body(self, rhs.clone())
            }
        }
        impl $tr<SymExpr> for &SymExpr {
            type Output = SymExpr;
            fn $method(self, rhs: SymExpr) -> SymExpr {
                $body(self.clone(), rhs)
            }
        }
        impl $tr<&SymExpr> for &SymExpr {
            type Output = SymExpr;
            fn $method(self, rhs: &SymExpr) -> SymExpr {
                $body(self.clone(), rhs.clone())
            }
        }
    };
}

binop!(Add, add, |a, b| SymExpr::sum([a, b]));
binop!(Sub, sub, |a, b: SymExpr| SymExpr::sum([a, -b]));
binop!(Mul, mul, |a, b| SymExpr::product([a, b]));

impl Neg for SymExpr {
    type Output = SymExpr;
    fn neg(self) -> SymExpr {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Neg for &SymExpr {
    type Output = SymExpr;
    fn neg(self) -> SymExpr {
        -self.clone()
    }
}

/// Evaluates several expressions at one point, sharing common subtrees.
///
/// Cached nodes are kept alive so a freed address can never alias a new node.
pub struct Evaluator {
    point: C2Point,
    cache: HashMap<usize, (SymExpr, Complex64)>,
}

impl Evaluator {
    pub fn new(point: C2Point) -> Self {
        Self { point, cache: HashMap::new() }
    }

    pub fn eval(&mut self, e: &SymExpr) -> Result<Complex64> {
        if let Some((_, v)) = self.cache.get(&e.key()) {
            return Ok(*v);
        }
        let v = match &*e.0 {
            Node::Const(c) => *c,
            Node::Var(v) => self.point.value(*v),
            Node::Radius => Complex64::new(self.point.radius(), 0.0),
            Node::Sum(ts) => {
                let mut s = Complex64::zero();
                for t in ts {
                    s += self.eval(t)?;
                }
                s
            }
            Node::Product(fs) => {
                let mut p = Complex64::one();
                for f in fs {
                    p *= self.eval(f)?;
                }
                p
            }
            Node::Pow(b, p) => {
                let base = self.eval(b)?;
                power(base, *p, b)?
            }
        };
        self.cache.insert(e.key(), (e.clone(), v));
        Ok(v)
    }
}

fn power(base: Complex64, p: Rational64, expr: &SymExpr) -> Result<Complex64> {
    if p.is_integer() {
        let e = p.to_integer();
        if base.is_zero() {
            if e > 0 {
                return Ok(Complex64::zero());
            }
            return Err(zero_base_error(expr, p));
        }
        let e = i32::try_from(e).map_err(|_| Error::Domain(format!("exponent {p} too large")))?;
        return Ok(base.powi(e));
    }
    if base.is_zero() {
        return Err(zero_base_error(expr, p));
    }
    Ok((base.ln() * p.to_f64().unwrap_or(f64::NAN)).exp())
}

fn zero_base_error(expr: &SymExpr, p: Rational64) -> Error {
    match &*expr.0 {
        Node::Var(v) => Error::DiracString(format!(
            "{}^({p}) at {} = 0, on the {}",
            v.name(),
            v.name(),
            string_axis_for_mode(v.mode())
        )),
        Node::Radius => Error::Domain(format!("r^({p}) at the origin r = 0")),
        _ => Error::Domain(format!("({expr})^({p}) with vanishing base")),
    }
}

fn string_axis_for_mode(mode: usize) -> &'static str {
    if mode == 1 {
        "negative x3 half-axis (theta = pi)"
    } else {
        "positive x3 half-axis (theta = 0)"
    }
}

/// A point of C², with the Euler chart and the Hopf image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C2Point {
    pub z1: Complex64,
    pub z2: Complex64,
}

/// Euler coordinates of a point of C².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub gamma: f64,
}

impl C2Point {
    pub fn new(z1: Complex64, z2: Complex64) -> Self {
        Self { z1, z2 }
    }

    /// `z1 = √r cos(θ/2) e^{i(−φ+γ)/2}`, `z2 = √r sin(θ/2) e^{i(φ+γ)/2}`.
    pub fn from_euler(r: f64, theta: f64, phi: f64, gamma: f64) -> Self {
        let s = r.sqrt();
        Self {
            z1: Complex64::from_polar(s * (theta / 2.0).cos(), (-phi + gamma) / 2.0),
            z2: Complex64::from_polar(s * (theta / 2.0).sin(), (phi + gamma) / 2.0),
        }
    }

    /// The `γ = 0` lift of a point of R³.
    pub fn from_cartesian(x: [f64; 3]) -> Self {
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        let theta = if r > 0.0 { (x[2] / r).clamp(-1.0, 1.0).acos() } else { 0.0 };
        let phi = x[1].atan2(x[0]);
        Self::from_euler(r, theta, phi, 0.0)
    }

    pub fn value(&self, v: Var) -> Complex64 {
        match v {
            Var::Z1 => self.z1,
            Var::Z2 => self.z2,
            Var::Z1c => self.z1.conj(),
            Var::Z2c => self.z2.conj(),
        }
    }

    pub fn radius(&self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    /// `x_i = z̄ σ^i z`.
    pub fn hopf(&self) -> [f64; 3] {
        let w = self.z1.conj() * self.z2;
        [2.0 * w.re, 2.0 * w.im, self.z1.norm_sqr() - self.z2.norm_sqr()]
    }

    /// Euler angles with `φ ∈ (−π, π]` and `γ = arg z1 + arg z2`.
    pub fn euler(&self) -> Euler {
        let theta = 2.0 * self.z2.norm().atan2(self.z1.norm());
        let (a1, a2) = (self.z1.arg(), self.z2.arg());
        let mut phi = a2 - a1;
        if phi > PI {
            phi -= 2.0 * PI;
        } else if phi <= -PI {
            phi += 2.0 * PI;
        }
        Euler { r: self.radius(), theta, phi, gamma: a1 + a2 }
    }

    /// Multiplies both coordinates by `e^{iγ/2}`, moving along the fibre.
    pub fn shift_fibre(&self, gamma: f64) -> Self {
        let u = Complex64::from_polar(1.0, gamma / 2.0);
        Self { z1: self.z1 * u, z2: self.z2 * u }
    }
}

/// Seeded sample points: moduli uniform in `[0.5, 2]`, phases uniform in
/// `(−π + 0.3, π − 0.3)`, clear of the strings and the branch cuts.
pub fn sample_points(n: usize, seed: u64) -> Vec<C2Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let m = rng.random_range(0.5..=2.0);
        let a = rng.random_range(-PI + 0.3..PI - 0.3);
        Complex64::from_polar(m, a)
    };
    (0..n)
        .map(|_| {
            let z1 = draw(&mut rng);
            let z2 = draw(&mut rng);
            C2Point::new(z1, z2)
        })
        .collect()
}

/// `x_i = z*_α σ^i_{αβ} z_β` as an expression.
pub fn hopf_component(i: usize) -> SymExpr {
    let s = pauli(i);
    let mut terms = Vec::new();
    for a in 1..=2 {
        for b in 1..=2 {
            let c = s[a - 1][b - 1];
            if !c.is_zero() {
                terms.push(SymExpr::product([SymExpr::constant(c), Var::zc(a).into(), Var::z(b).into()]));
            }
        }
    }
    SymExpr::sum(terms)
}

/// `r` written out as `z1 z1* + z2 z2*`, for cross-checks against the
/// dedicated node.
pub fn radius_expanded() -> SymExpr {
    SymExpr::sum([
        SymExpr::var(Var::Z1) * SymExpr::var(Var::Z1c),
        SymExpr::var(Var::Z2) * SymExpr::var(Var::Z2c),
    ])
}

/// `{f, g} = −i Σ_α (∂_{z_α} f ∂_{z*_α} g − ∂_{z*_α} f ∂_{z_α} g)`.
pub fn poisson_bracket(f: &SymExpr, g: &SymExpr) -> SymExpr {
    let mut terms = Vec::new();
    for a in 1..=2 {
        let (z, zc) = (Var::z(a), Var::zc(a));
        terms.push(f.diff(z) * g.diff(zc));
        terms.push(-(f.diff(zc) * g.diff(z)));
    }
    SymExpr::sum(terms).scale(-I)
}

/// `Δf = (1/r) Σ_α {z*_α, {z_α, f}}`.
pub fn laplacian_c2(f: &SymExpr) -> SymExpr {
    let mut terms = Vec::new();
    for a in 1..=2 {
        let inner = poisson_bracket(&Var::z(a).into(), f);
        terms.push(poisson_bracket(&Var::zc(a).into(), &inner));
    }
    SymExpr::radius().recip() * SymExpr::sum(terms)
}

/// `V̂_j f = −(i/2r) σ^j_{αβ} (z*_α ∂_{z*_β} f + z_β ∂_{z_α} f)`.
pub fn velocity_action(j: usize, f: &SymExpr) -> SymExpr {
    let s = pauli(j);
    let mut terms = Vec::new();
    for a in 1..=2 {
        for b in 1..=2 {
            let c = s[a - 1][b - 1];
            if c.is_zero() {
                continue;
            }
            let inner = SymExpr::var(Var::zc(a)) * f.diff(Var::zc(b)) + SymExpr::var(Var::z(b)) * f.diff(Var::z(a));
            terms.push(inner.scale(c));
        }
    }
    SymExpr::product([SymExpr::constant(Complex64::new(0.0, -0.5)), SymExpr::radius().recip(), SymExpr::sum(terms)])
}

/// `L̂_i f = (i/2) {x_i, f}`.
pub fn angular_momentum_action(i: usize, f: &SymExpr) -> SymExpr {
    poisson_bracket(&hopf_component(i), f).scale(Complex64::new(0.0, 0.5))
}

/// `(V̂_i V̂_j − V̂_j V̂_i) f`.
pub fn commutator_action(i: usize, j: usize, f: &SymExpr) -> SymExpr {
    velocity_action(i, &velocity_action(j, f)) - velocity_action(j, &velocity_action(i, f))
}

/// Monopole charge `κ` and string placement `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonopoleCharges {
    pub kappa: i64,
    pub delta: i64,
}

impl MonopoleCharges {
    pub fn new(kappa: i64, delta: i64) -> Self {
        Self { kappa, delta }
    }

    /// `μ = κ/2`; integer `κ` sweeps exactly the half-integers.
    pub fn mu(&self) -> f64 {
        self.kappa as f64 / 2.0
    }

    /// Exponents `((κ − δ)/4, (κ + δ)/4)` of `z1/z1*` and `z2/z2*`.
    pub fn exponents(&self) -> (Rational64, Rational64) {
        (Rational64::new(self.kappa - self.delta, 4), Rational64::new(self.kappa + self.delta, 4))
    }

    /// Polar angle of the Dirac string when it sits on a single half-axis.
    pub fn string_pole(&self) -> Option<f64> {
        match self.exponents() {
            (p1, p2) if p1.is_zero() && !p2.is_zero() => Some(0.0),
            (p1, p2) if p2.is_zero() && !p1.is_zero() => Some(PI),
            _ => None,
        }
    }

    /// `e^{iκγ/2} e^{iδφ/2}`.
    pub fn euler_phase(&self, phi: f64, gamma: f64) -> Complex64 {
        Complex64::from_polar(1.0, (self.kappa as f64 * gamma + self.delta as f64 * phi) / 2.0)
    }
}

/// `|e^{iκ(γ+4π)/2} − e^{iκγ/2}|`, zero exactly for integer `κ`.
pub fn fibre_winding_mismatch(kappa: f64) -> f64 {
    (Complex64::from_polar(1.0, 2.0 * PI * kappa) - 1.0).norm()
}

/// `ξ = (z1/z1*)^{(κ−δ)/4} (z2/z2*)^{(κ+δ)/4}`.
pub fn xi_state(charges: MonopoleCharges) -> SymExpr {
    let (p1, p2) = charges.exponents();
    SymExpr::product([
        SymExpr::var(Var::Z1).pow(p1),
        SymExpr::var(Var::Z1c).pow(-p1),
        SymExpr::var(Var::Z2).pow(p2),
        SymExpr::var(Var::Z2c).pow(-p2),
    ])
}

/// A polynomial in `x1, x2, x3`: the independent oracle for functions of
/// the Hopf image.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Polynomial3 {
    terms: BTreeMap<[u32; 3], Complex64>,
}

impl Polynomial3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_terms([([0, 0, 0], c)])
    }

    /// `x_i`, `i ∈ 1..=3`.
    pub fn coordinate(i: usize) -> Self {
        let mut e = [0; 3];
        e[i - 1] = 1;
        Self::from_terms([(e, Complex64::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ([u32; 3], Complex64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            *p.terms.entry(e).or_default() += c;
        }
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    /// `1 + x3 + x1 x2/2 + i x1²/4 − x2 x3²/8`.
    pub fn sample() -> Self {
        Self::from_terms([
            ([0, 0, 0], Complex64::one()),
            ([0, 0, 1], Complex64::one()),
            ([1, 1, 0], Complex64::new(0.5, 0.0)),
            ([2, 0, 0], Complex64::new(0.0, 0.25)),
            ([0, 1, 2], Complex64::new(-0.125, 0.0)),
        ])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Complex64)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).map(|(e, c)| (*e, *c)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|(e1, c1)| {
            other.terms.iter().map(move |(e2, c2)| ([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2))
        }))
    }

    /// `∂/∂x_i`.
    pub fn diff(&self, i: usize) -> Self {
        let k = i - 1;
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[k] > 0).map(|(e, c)| {
            let mut d = *e;
            d[k] -= 1;
            (d, c * e[k] as f64)
        }))
    }

    /// Flat Laplacian in R³.
    pub fn laplacian(&self) -> Self {
        (1..=3).fold(Self::zero(), |acc, i| acc.add(&self.diff(i).diff(i)))
    }

    pub fn eval(&self, x: [f64; 3]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| c * x[0].powi(e[0] as i32) * x[1].powi(e[1] as i32) * x[2].powi(e[2] as i32))
            .sum()
    }

    /// The same function pulled back through the Hopf map.
    pub fn to_sym(&self) -> SymExpr {
        let x: Vec<SymExpr> = (1..=3).map(hopf_component).collect();
        SymExpr::sum(self.terms.iter().map(|(e, c)| {
            let mut factors = vec![SymExpr::constant(*c)];
            for k in 0..3 {
                factors.push(x[k].powi(e[k] as i64));
            }
            SymExpr::product(factors)
        }))
    }
}

/// Outcome of a pointwise identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointwiseReport {
    pub identity: String,
    pub operands: Vec<String>,
    pub kappa: Option<i64>,
    pub delta: Option<i64>,
    pub points: usize,
    pub seed: u64,
    /// always `"max_pointwise"`
    pub norm: String,
    /// `max_p |lhs(p) − rhs(p)|`
    pub residual: f64,
    /// `max_p |rhs(p)|`
    pub scale: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub certifies: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PointwiseReport {
    /// A certifying record; passes when `residual <= tolerance`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        identity: impl Into<String>,
        operands: Vec<String>,
        charges: Option<MonopoleCharges>,
        points: usize,
        seed: u64,
        norm: impl Into<String>,
        residual: PointwiseResidual,
        tolerance: f64,
    ) -> Self {
        Self {
            identity: identity.into(),
            operands,
            kappa: charges.map(|c| c.kappa),
            delta: charges.map(|c| c.delta),
            points,
            seed,
            norm: norm.into(),
            residual: residual.residual,
            scale: residual.scale,
            tolerance,
            pass: residual.residual <= tolerance,
            certifies: true,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Residual statistics of `lhs − rhs` over points.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PointwiseResidual {
    pub residual: f64,
    pub scale: f64,
}

impl PointwiseResidual {
    pub fn push(&mut self, lhs: Complex64, rhs: Complex64) {
        self.residual = self.residual.max((lhs - rhs).norm());
        self.scale = self.scale.max(rhs.norm());
    }
}

/// Shared setup for the identity checks.
#[derive(Debug, Clone)]
pub struct IdentitySuite {
    pub points: Vec<C2Point>,
    pub seed: u64,
    pub rel_tol: f64,
    pub phi: Polynomial3,
}

impl IdentitySuite {
    pub fn new(n_points: usize, seed: u64) -> Self {
        Self { points: sample_points(n_points, seed), seed, rel_tol: POINTWISE_TOLERANCE, phi: Polynomial3::sample() }
    }

    fn report(
        &self,
        identity: &str,
        operands: Vec<String>,
        charges: Option<MonopoleCharges>,
        res: PointwiseResidual,
    ) -> PointwiseReport {
        let tolerance = self.rel_tol * res.scale.max(1.0);
        PointwiseReport::new(identity, operands, charges, self.points.len(), self.seed, "max_pointwise", res, tolerance)
    }

    /// `ΔΦ(x) = ∂_{x_i}∂_{x_i}Φ`.
    pub fn laplacian(&self) -> Result<PointwiseReport> {
        let lhs = laplacian_c2(&self.phi.to_sym());
        let oracle = self.phi.laplacian();
        let mut res = PointwiseResidual::default();
        for p in &self.points {
            res.push(lhs.eval(p)?, oracle.eval(p.hopf()));
        }
        Ok(self.report("laplacian_of_function_of_x", vec!["Delta".into(), "Phi".into()], None, res))
    }

    /// `V̂_j Φ(x) = −i ∂_{x_j} Φ`.
    pub fn velocity(&self) -> Result<PointwiseReport> {
        let f = self.phi.to_sym();
        let mut res = PointwiseResidual::default();
        for j in 1..=3 {
            let lhs = velocity_action(j, &f);
            let oracle = self.phi.diff(j);
            for p in &self.points {
                res.push(lhs.eval(p)?, -I * oracle.eval(p.hopf()));
            }
        }
        Ok(self.report("velocity_on_function_of_x", vec!["V".into(), "Phi".into()], None, res))
    }

    /// `ε_ijk x_j V̂_k Φ_κ = (L̂_i + (κ/2) x_i/r) Φ_κ`.
    pub fn angular(&self, charges: MonopoleCharges) -> Result<PointwiseReport> {
        let f = self.phi.to_sym() * xi_state(charges);
        let x: Vec<SymExpr> = (1..=3).map(hopf_component).collect();
        let v: Vec<SymExpr> = (1..=3).map(|k| velocity_action(k, &f)).collect();
        let half_kappa = SymExpr::real(charges.mu());
        let mut res = PointwiseResidual::default();
        for i in 1..=3 {
            let mut terms = Vec::new();
            for j in 1..=3 {
                for k in 1..=3 {
                    let e = levi_civita(i, j, k);
                    if e != 0.0 {
                        terms.push((&x[j - 1] * &v[k - 1]).scale(Complex64::new(e, 0.0)));
                    }
                }
            }
            let lhs = SymExpr::sum(terms);
            let rhs = angular_momentum_action(i, &f)
                + SymExpr::product([half_kappa.clone(), x[i - 1].clone(), SymExpr::radius().recip(), f.clone()]);
            for p in &self.points {
                let mut ev = Evaluator::new(*p);
                res.push(ev.eval(&lhs)?, ev.eval(&rhs)?);
            }
        }
        Ok(self.report("cross_product_velocity", vec!["x".into(), "V".into(), "L".into(), "xi".into()], Some(charges), res))
    }

    /// `[V̂_i, V̂_j] Φ_κ = i (κ/2) ε_ijk (x_k/r³) Φ_κ`.
    pub fn velocity_commutator(&self, charges: MonopoleCharges) -> Result<PointwiseReport> {
        let f = self.phi.to_sym() * xi_state(charges);
        let mut res = PointwiseResidual::default();
        for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
            let lhs = commutator_action(i, j, &f);
            let rhs = SymExpr::product([
                SymExpr::constant(I * charges.mu()),
                hopf_component(k),
                SymExpr::radius().powi(-3),
                f.clone(),
            ]);
            for p in &self.points {
                let mut ev = Evaluator::new(*p);
                res.push(ev.eval(&lhs)?, ev.eval(&rhs)?);
            }
        }
        Ok(self.report("velocity_commutator_monopole", vec!["V".into(), "V".into(), "xi".into()], Some(charges), res))
    }

    /// All four identities over `κ ∈ kappas`, `δ ∈ {0, ±κ}`.
    pub fn run(&self, kappas: &[i64]) -> Result<Vec<PointwiseReport>> {
        let mut out = vec![self.laplacian()?, self.velocity()?];
        for &kappa in kappas {
            let mut deltas = vec![0, kappa, -kappa];
            deltas.dedup();
            for delta in deltas {
                let c = MonopoleCharges::new(kappa, delta);
                out.push(self.angular(c)?);
                out.push(self.velocity_commutator(c)?);
            }
        }
        Ok(out)
    }
}

/// `A_j = (V̂_j ξ)/ξ`, the vector potential seen by `Φ(x) ξ`.
#[derive(Debug, Clone)]
pub struct VectorPotential {
    charges: MonopoleCharges,
    xi: SymExpr,
    v_xi: [SymExpr; 3],
    displayed: [SymExpr; 3],
}

/// A vector potential value with the discarded imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSample {
    pub cartesian: [f64; 3],
    /// `max_j |Im A_j|`; rounding level when `A` is a real gauge field.
    pub imaginary: f64,
}

impl VectorPotential {
    pub fn new(charges: MonopoleCharges) -> Self {
        let xi = xi_state(charges);
        let v_xi = [1, 2, 3].map(|j| velocity_action(j, &xi));
        let displayed = [1, 2, 3].map(|j| displayed_numerator(j, &xi));
        Self { charges, xi, v_xi, displayed }
    }

    pub fn charges(&self) -> MonopoleCharges {
        self.charges
    }

    pub fn cartesian(&self, p: &C2Point) -> Result<PotentialSample> {
        let mut ev = Evaluator::new(*p);
        let xi = ev.eval(&self.xi)?;
        let mut a = [0.0; 3];
        let mut imaginary: f64 = 0.0;
        for j in 0..3 {
            let v = ev.eval(&self.v_xi[j])? / xi;
            a[j] = v.re;
            imaginary = imaginary.max(v.im.abs());
        }
        Ok(PotentialSample { cartesian: a, imaginary })
    }

    /// Cartesian components at a point of R³, through the `γ = 0` lift.
    pub fn at_cartesian(&self, x: [f64; 3]) -> Result<[f64; 3]> {
        Ok(self.cartesian(&C2Point::from_cartesian(x))?.cartesian)
    }

    /// `(A_r, A_θ, A_φ)` in the orthonormal spherical frame.
    pub fn spherical(&self, p: &C2Point) -> Result<[f64; 3]> {
        let a = self.cartesian(p)?.cartesian;
        let e = p.euler();
        Ok(to_spherical(a, e.theta, e.phi))
    }

    /// The `z`-derivative part only, `−(i/2rξ) σ^j_{γδ} z_δ ∂_{z_γ} ξ`.
    /// It is complex in general: the real gauge field needs the `z*`
    /// terms of `V̂_j` as well.
    pub fn displayed_form(&self, p: &C2Point) -> Result<[Complex64; 3]> {
        let mut ev = Evaluator::new(*p);
        let xi = ev.eval(&self.xi)?;
        let mut out = [Complex64::zero(); 3];
        for j in 0..3 {
            out[j] = ev.eval(&self.displayed[j])? / xi;
        }
        Ok(out)
    }

    /// Central-difference curl with step `h_rel · |x|`.
    pub fn curl(&self, x: [f64; 3], h_rel: f64) -> Result<[f64; 3]> {
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        if r == 0.0 {
            return Err(Error::Domain("magnetic field at the origin".into()));
        }
        let h = h_rel * r;
        // d[k][m] = ∂_k A_m
        let mut d = [[0.0; 3]; 3];
        for k in 0..3 {
            let (mut xp, mut xm) = (x, x);
            xp[k] += h;
            xm[k] -= h;
            let (ap, am) = (self.at_cartesian(xp)?, self.at_cartesian(xm)?);
            for m in 0..3 {
                d[k][m] = (ap[m] - am[m]) / (2.0 * h);
            }
        }
        Ok([d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]])
    }
}

fn displayed_numerator(j: usize, xi: &SymExpr) -> SymExpr {
    let s = pauli(j);
    let mut terms = Vec::new();
    for g in 1..=2 {
        for d in 1..=2 {
            let c = s[g - 1][d - 1];
            if !c.is_zero() {
                terms.push((SymExpr::var(Var::z(d)) * xi.diff(Var::z(g))).scale(c));
            }
        }
    }
    SymExpr::product([SymExpr::constant(Complex64::new(0.0, -0.5)), SymExpr::radius().recip(), SymExpr::sum(terms)])
}

/// Projects a Cartesian vector on `(r̂, θ̂, φ̂)`.
pub fn to_spherical(a: [f64; 3], theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [
        a[0] * st * cp + a[1] * st * sp + a[2] * ct,
        a[0] * ct * cp + a[1] * ct * sp - a[2] * st,
        -a[0] * sp + a[1] * cp,
    ]
}

/// `(A_r, A_θ, A_φ)` at a point.
pub fn extract_vector_potential(charges: MonopoleCharges, point: &C2Point) -> Result<[f64; 3]> {
    VectorPotential::new(charges).spherical(point)
}

/// `A_φ = (δ + κ cos θ) / (2 r sin θ)`.
pub fn closed_form_a_phi(charges: MonopoleCharges, r: f64, theta: f64) -> f64 {
    (charges.delta as f64 + charges.kappa as f64 * theta.cos()) / (2.0 * r * theta.sin())
}

/// `−(κ/2) x / r³`.
pub fn coulomb_field(kappa: i64, x: [f64; 3]) -> [f64; 3] {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let c = -(kappa as f64) / (2.0 * r * r * r);
    x.map(|xi| c * xi)
}

/// Default relative step of the finite-difference curl.
pub const CURL_STEP: f64 = 1e-5;

/// Curl of the extracted potential at a point of R³.
pub fn magnetic_field(charges: MonopoleCharges, x: [f64; 3]) -> Result<[f64; 3]> {
    VectorPotential::new(charges).curl(x, CURL_STEP)
}

/// Gauss–Legendre nodes and weights on `[−1, 1]` (Golub–Welsch).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut j = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = k as f64 / ((4 * k * k - 1) as f64).sqrt();
        j[(k - 1, k)] = b;
        j[(k, k - 1)] = b;
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> =
        (0..n).map(|k| (eig.eigenvalues[k], 2.0 * eig.eigenvectors[(0, k)].powi(2))).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// `∮ B·dS` over the sphere of the given radius: Gauss–Legendre in `cos θ`
/// (nodes stay off the poles) times a uniform midpoint rule in `φ`.
pub fn magnetic_flux(charges: MonopoleCharges, radius: f64, order: usize) -> Result<f64> {
    if radius <= 0.0 || order == 0 {
        return Err(Error::InvalidArgument(format!("flux needs radius > 0 and order > 0, got {radius}, {order}")));
    }
    let pot = VectorPotential::new(charges);
    let (nodes, weights) = gauss_legendre(order);
    let n_phi = 8;
    let mut total = 0.0;
    for (u, w) in nodes.iter().zip(&weights) {
        let s = (1.0 - u * u).sqrt();
        for m in 0..n_phi {
            let phi = 2.0 * PI * (m as f64 + 0.5) / n_phi as f64;
            let n = [s * phi.cos(), s * phi.sin(), *u];
            let b = pot.curl(n.map(|c| radius * c), CURL_STEP)?;
            let bn = b[0] * n[0] + b[1] * n[1] + b[2] * n[2];
            total += w * (2.0 * PI / n_phi as f64) * radius * radius * bn;
        }
    }
    Ok(total)
}

/// Relative tolerance of the finite-difference field check.
pub const FIELD_TOLERANCE: f64 = 1e-6;
/// Absolute tolerance of the flux check.
pub const FLUX_TOLERANCE: f64 = 1e-8;
/// Default Gauss–Legendre order of the flux quadrature.
pub const FLUX_ORDER: usize = 32;

/// Extracted `(A_r, A_θ, A_φ)` against `(0, 0, (δ + κ cos θ)/(2r sin θ))`.
pub fn check_vector_potential(charges: MonopoleCharges, points: &[C2Point], seed: u64) -> Result<PointwiseReport> {
    let pot = VectorPotential::new(charges);
    let mut res = PointwiseResidual::default();
    let mut imaginary: f64 = 0.0;
    for p in points {
        let e = p.euler();
        let a = pot.spherical(p)?;
        imaginary = imaginary.max(pot.cartesian(p)?.imaginary);
        let expect = [0.0, 0.0, closed_form_a_phi(charges, e.r, e.theta)];
        for k in 0..3 {
            res.push(Complex64::new(a[k], 0.0), Complex64::new(expect[k], 0.0));
        }
    }
    let tol = POINTWISE_TOLERANCE * res.scale.max(1.0);
    Ok(PointwiseReport::new(
        "vector_potential",
        vec!["V xi / xi".into(), "A_phi closed form".into()],
        Some(charges),
        points.len(),
        seed,
        "max_pointwise",
        res,
        tol,
    )
    .with_note(format!("max |Im A| = {imaginary:.3e}")))
}

/// Finite-difference curl against `−(κ/2) x / r³`, worst relative error.
pub fn check_magnetic_field(charges: MonopoleCharges, points: &[C2Point], seed: u64) -> Result<PointwiseReport> {
    let pot = VectorPotential::new(charges);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for p in points {
        let x = p.hopf();
        let b = pot.curl(x, CURL_STEP)?;
        let expect = coulomb_field(charges.kappa, x);
        let diff = (0..3).map(|k| (b[k] - expect[k]).powi(2)).sum::<f64>().sqrt();
        let size = expect.iter().map(|v| v * v).sum::<f64>().sqrt();
        scale = scale.max(size);
        // κ = 0 has no reference magnitude; the error is then absolute
        worst = worst.max(if size > 0.0 { diff / size } else { diff });
    }
    Ok(PointwiseReport::new(
        "magnetic_field",
        vec!["curl A".into(), "-(kappa/2) x / r^3".into()],
        Some(charges),
        points.len(),
        seed,
        "max_relative",
        PointwiseResidual { residual: worst, scale },
        FIELD_TOLERANCE,
    ))
}

/// Flux through a sphere against `−2πκ`.
pub fn check_flux(charges: MonopoleCharges, radius: f64, order: usize) -> Result<PointwiseReport> {
    let flux = magnetic_flux(charges, radius, order)?;
    let expect = -2.0 * PI * charges.kappa as f64;
    Ok(PointwiseReport::new(
        "magnetic_flux",
        vec!["curl A".into(), "sphere".into()],
        Some(charges),
        order,
        0,
        "absolute",
        PointwiseResidual { residual: (flux - expect).abs(), scale: expect.abs() },
        FLUX_TOLERANCE,
    )
    .with_note(format!("radius {radius}, flux {flux:.12}")))
}

/// `|A_φ|` beyond which the potential counts as divergent at the string.
pub const POLE_DIVERGENCE: f64 = 1e6;

/// Probes `|A_φ|` at angular distance `eps` from both poles. Passes when the
/// side named by `δ = ±κ` diverges past [`POLE_DIVERGENCE`] and the other
/// side stays below 1. `residual` is the regular-side value, `scale` the
/// string-side value.
pub fn check_string_pole(charges: MonopoleCharges, radius: f64, eps: f64) -> Result<PointwiseReport> {
    let pole = charges.string_pole().ok_or_else(|| {
        Error::InvalidArgument(format!("kappa {} delta {} has no single string pole", charges.kappa, charges.delta))
    })?;
    let regular = PI - pole;
    let near = |theta: f64| -> Result<f64> {
        let theta = if theta == 0.0 { eps } else { PI - eps };
        Ok(extract_vector_potential(charges, &C2Point::from_euler(radius, theta, 0.3, 0.0))?[2].abs())
    };
    let (string_side, regular_side) = (near(pole)?, near(regular)?);
    let mut rep = PointwiseReport::new(
        "dirac_string_pole",
        vec!["A_phi".into()],
        Some(charges),
        2,
        0,
        "absolute",
        PointwiseResidual { residual: regular_side, scale: string_side },
        1.0,
    )
    .with_note(format!("string at theta = {}; |A_phi| = {string_side:.3e} at distance {eps:e}", if pole == 0.0 { "0" } else { "pi" }));
    rep.pass = string_side > POLE_DIVERGENCE && regular_side <= 1.0;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn canonical_brackets() {
        let z1: SymExpr = Var::Z1.into();
        let z1c: SymExpr = Var::Z1c.into();
        let z2: SymExpr = Var::Z2.into();
        assert_eq!(poisson_bracket(&z1, &z1c).as_constant(), Some(-I));
        assert!(poisson_bracket(&z1, &z2).is_zero());
    }

    #[test]
    fn hopf_bracket_and_flat_laplacian() {
        let x: Vec<SymExpr> = (1..=3).map(hopf_component).collect();
        let b = poisson_bracket(&x[2], &x[0]);
        let r2 = SymExpr::sum(x.iter().map(|xi| xi * xi));
        let lap_x3 = laplacian_c2(&x[2]);
        let lap_r2 = laplacian_c2(&r2);
        for p in sample_points(20, 3) {
            let h = p.hopf();
            assert!(close(b.eval(&p).unwrap(), Complex64::new(2.0 * h[1], 0.0), 1e-12));
            assert!(lap_x3.eval(&p).unwrap().norm() < 1e-12);
            assert!(close(lap_r2.eval(&p).unwrap(), Complex64::new(6.0, 0.0), 1e-12));
        }
    }

    #[test]
    fn radius_node_matches_expansion() {
        let e = radius_expanded();
        for v in Var::ALL {
            let d1 = SymExpr::radius().diff(v);
            let d2 = e.diff(v);
            for p in sample_points(5, 9) {
                assert!(close(d1.eval(&p).unwrap(), d2.eval(&p).unwrap(), 1e-14));
            }
        }
    }

    #[test]
    fn v3_on_x3() {
        let v = velocity_action(3, &hopf_component(3));
        for p in sample_points(10, 1) {
            assert!(close(v.eval(&p).unwrap(), -I, 1e-12));
        }
        assert!(velocity_action(2, &SymExpr::real(4.0)).is_zero());
    }

    #[test]
    fn xi_on_euler_chart() {
        let c = MonopoleCharges::new(3, -1);
        let xi = xi_state(c);
        let (phi, gamma) = (0.7, -0.4);
        let p = C2Point::from_euler(1.3, 1.1, phi, gamma);
        assert!(close(xi.eval(&p).unwrap(), c.euler_phase(phi, gamma), 1e-13));
        assert_eq!(xi_state(MonopoleCharges::new(0, 0)).as_constant(), Some(Complex64::one()));
    }

    #[test]
    fn string_errors_name_the_axis() {
        let north = C2Point::from_euler(1.0, 0.0, 0.2, 0.0);
        let err = xi_state(MonopoleCharges::new(1, 0)).eval(&north).unwrap_err();
        assert!(matches!(err, Error::DiracString(ref m) if m.contains("theta = 0")), "{err}");
        // δ = −κ leaves the north pole regular
        assert!(xi_state(MonopoleCharges::new(1, -1)).eval(&north).is_ok());
        let south = C2Point::new(Complex64::zero(), Complex64::from_polar(1.0, 0.1));
        let err = xi_state(MonopoleCharges::new(1, -1)).eval(&south).unwrap_err();
        assert!(matches!(err, Error::DiracString(ref m) if m.contains("theta = pi")), "{err}");
        let origin = C2Point::new(Complex64::zero(), Complex64::zero());
        assert!(matches!(velocity_action(1, &hopf_component(1)).eval(&origin), Err(Error::Domain(_))));
    }

    #[test]
    fn a_phi_at_a_hand_point() {
        let c = MonopoleCharges::new(2, 0);
        let p = C2Point::from_euler(2.0, PI / 3.0, 0.5, 0.0);
        let a = extract_vector_potential(c, &p).unwrap();
        assert!((a[2] - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-12);
        assert!(a[0].abs() < 1e-12 && a[1].abs() < 1e-12);
        let eq = extract_vector_potential(MonopoleCharges::new(1, 0), &C2Point::from_euler(1.0, PI / 2.0, 0.3, 0.1));
        assert!(eq.unwrap()[2].abs() < 1e-12);
    }

    #[test]
    fn displayed_form_is_not_real() {
        let pot = VectorPotential::new(MonopoleCharges::new(1, 1));
        let p = C2Point::from_euler(1.0, 1.0, 0.4, 0.2);
        let d = pot.displayed_form(&p).unwrap();
        assert!(d[2].im.abs() > 1e-3);
        assert!(pot.cartesian(&p).unwrap().imaginary < 1e-14);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(6);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let i10: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(10)).sum();
        assert!((i10 - 2.0 / 11.0).abs() < 1e-14);
    }

    #[test]
    fn polynomial_oracle() {
        let p = Polynomial3::coordinate(1).mul(&Polynomial3::coordinate(1)).mul(&Polynomial3::coordinate(2));
        assert_eq!(p.laplacian(), Polynomial3::coordinate(2).mul(&Polynomial3::constant(Complex64::new(2.0, 0.0))));
        assert!(close(p.eval([2.0, 3.0, 5.0]), Complex64::new(12.0, 0.0), 0.0));
    }
}
