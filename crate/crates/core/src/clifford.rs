//! Real Clifford algebra ℝ_n (e_i² = −1), paravectors and the sphere 𝕊 of
//! imaginary units.
//!
//! Basis blades e_A are indexed by bitmask: bit `i-1` set means e_i occurs in
//! A, and e_A is the product of its units in increasing index order.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported number of imaginary units.
pub const MAX_DIM: usize = 8;

fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(n))
    }
}

/// Sign of e_A e_B relative to e_{A Δ B}.
///
/// Reordering costs one sign per pair (a ∈ A, b ∈ B) with a > b, and every
/// unit in A ∩ B contributes e_i² = −1.
#[inline]
pub fn blade_sign(a: usize, b: usize) -> f64 {
    let mut swaps = (a & b).count_ones();
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Element of ℝ_n stored densely as 2^n coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordNumber {
    n: usize,
    coeffs: Vec<f64>,
}

impl CliffordNumber {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "Clifford dimension {n} outside 1..=8");
        Self { n, coeffs: vec![0.0; 1 << n] }
    }

    pub fn scalar(n: usize, value: f64) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[0] = value;
        c
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, 1.0)
    }

    /// The blade e_A with coefficient 1.
    pub fn blade(n: usize, mask: usize) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[mask] = 1.0;
        c
    }

    /// The imaginary unit e_i, `1 <= i <= n`.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "unit index {i} outside 1..={n}");
        Self::blade(n, 1 << (i - 1))
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dim(n)?;
        if coeffs.len() != 1 << n {
            return Err(Error::DimensionMismatch(coeffs.len(), 1 << n));
        }
        Ok(Self { n, coeffs })
    }

    /// Complex number `re + im·e_1`.
    pub fn complex(n: usize, re: f64, im: f64) -> Self {
        let mut c = Self::scalar(n, re);
        c.coeffs[1] = im;
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn get(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    pub fn set(&mut self, mask: usize, value: f64) {
        self.coeffs[mask] = value;
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        // hypot-style scaling keeps tiny and huge coefficients from under/overflowing
        let m = self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        m * self.coeffs.iter().map(|c| (c / m).powi(2)).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Euclidean inner product of coefficient vectors.
    pub fn dot(&self, other: &Self) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// `self += other * s`.
    pub fn add_scaled(&mut self, other: &Self, s: f64) {
        assert_eq!(self.n, other.n, "dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * s;
        }
    }

    /// Largest coefficient difference in absolute value.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.coeffs.iter().zip(&other.coeffs).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Checked Clifford product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut out = vec![0.0; self.coeffs.len()];
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (b, &y) in other.coeffs.iter().enumerate() {
                if y != 0.0 {
                    out[a ^ b] += blade_sign(a, b) * x * y;
                }
            }
        }
        Ok(Self { n: self.n, coeffs: out })
    }

    /// Product e_i · self, computed by permuting coefficients.
    pub fn left_mul_unit(&self, i: usize) -> Self {
        let bit = 1 << (i - 1);
        let mut out = vec![0.0; self.coeffs.len()];
        for (b, &y) in self.coeffs.iter().enumerate() {
            if y != 0.0 {
                out[bit ^ b] += blade_sign(bit, b) * y;
            }
        }
        Self { n: self.n, coeffs: out }
    }

    /// Vector part Σ c_i e_i, if every other component vanishes.
    pub fn as_vector(&self) -> Option<Vec<f64>> {
        let mut v = vec![0.0; self.n];
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if mask.count_ones() == 1 {
                v[mask.trailing_zeros() as usize] = c;
            } else if c != 0.0 {
                return None;
            }
        }
        Some(v)
    }
}

/// Checked product; see [`CliffordNumber::try_mul`].
pub fn clifford_mul(a: &CliffordNumber, b: &CliffordNumber) -> Result<CliffordNumber> {
    a.try_mul(b)
}

pub fn clifford_norm(a: &CliffordNumber) -> f64 {
    a.norm()
}

impl Mul for &CliffordNumber {
    type Output = CliffordNumber;
    /// Panics on dimension mismatch; use [`CliffordNumber::try_mul`] for a checked product.
    fn mul(self, rhs: Self) -> CliffordNumber {
        self.try_mul(rhs).expect("Clifford dimension mismatch")
    }
}

impl Add for &CliffordNumber {
    type Output = CliffordNumber;
    fn add(self, rhs: Self) -> CliffordNumber {
        let mut out = self.clone();
        out.add_scaled(rhs, 1.0);
        out
    }
}

impl Sub for &CliffordNumber {
    type Output = CliffordNumber;
    fn sub(self, rhs: Self) -> CliffordNumber {
        let mut out = self.clone();
        out.add_scaled(rhs, -1.0);
        out
    }
}

impl Neg for &CliffordNumber {
    type Output = CliffordNumber;
    fn neg(self) -> CliffordNumber {
        self.scale(-1.0)
    }
}

#[derive(Serialize, Deserialize)]
struct CliffordRepr {
    n: usize,
    coeffs: BTreeMap<usize, f64>,
}

impl Serialize for CliffordNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(m, &c)| (m, c))
            .collect();
        CliffordRepr { n: self.n, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CliffordNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CliffordRepr::deserialize(d)?;
        check_dim(repr.n).map_err(D::Error::custom)?;
        let mut c = CliffordNumber::zero(repr.n);
        for (mask, v) in repr.coeffs {
            if mask >= 1 << repr.n {
                return Err(D::Error::custom(format!("blade index {mask} out of range for n={}", repr.n)));
            }
            c.coeffs[mask] = v;
        }
        Ok(c)
    }
}

/// Point x₀ + x̲ of ℝ^{n+1}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Paravector {
    pub x0: f64,
    pub vec: Vec<f64>,
}

impl Paravector {
    pub fn new(x0: f64, vec: Vec<f64>) -> Result<Self> {
        check_dim(vec.len())?;
        Ok(Self { x0, vec })
    }

    pub fn real(n: usize, x0: f64) -> Self {
        Self { x0, vec: vec![0.0; n] }
    }

    /// The point u + jv.
    pub fn from_slice(u: f64, v: f64, j: &ImaginaryUnit) -> Self {
        Self { x0: u, vec: j.0.iter().map(|c| c * v).collect() }
    }

    pub fn n(&self) -> usize {
        self.vec.len()
    }

    pub fn vector_norm(&self) -> f64 {
        hypot_all(&self.vec)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x0 * self.x0 + self.vec.iter().map(|c| c * c).sum::<f64>()
    }

    pub fn norm(&self) -> f64 {
        self.x0.hypot(self.vector_norm())
    }

    pub fn conj(&self) -> Self {
        Self { x0: self.x0, vec: self.vec.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { x0: self.x0 * s, vec: self.vec.iter().map(|c| c * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { x0: self.x0 + other.x0, vec: self.vec.iter().zip(&other.vec).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn to_clifford(&self) -> CliffordNumber {
        let mut c = CliffordNumber::scalar(self.n(), self.x0);
        for (i, &v) in self.vec.iter().enumerate() {
            c.coeffs[1 << i] = v;
        }
        c
    }

    /// p⁻¹ = p̄/|p|².
    pub fn inverse(&self) -> Result<Self> {
        let q = self.norm_sqr();
        if q == 0.0 {
            return Err(Error::ZeroParavector);
        }
        Ok(self.conj().scale(1.0 / q))
    }

    /// x = u + jv with v ≥ 0. Real points use j = e₁.
    pub fn decompose(&self) -> (f64, f64, ImaginaryUnit) {
        let v = self.vector_norm();
        if v == 0.0 {
            return (self.x0, 0.0, ImaginaryUnit::basis(self.n(), 1));
        }
        let j = self.vec.iter().map(|c| c / v).collect();
        (self.x0, v, ImaginaryUnit(j))
    }

    /// x², again a paravector: x₀² − |x̲|² + 2x₀x̲.
    pub fn square(&self) -> Self {
        let v2: f64 = self.vec.iter().map(|c| c * c).sum();
        Self { x0: self.x0 * self.x0 - v2, vec: self.vec.iter().map(|c| 2.0 * self.x0 * c).collect() }
    }
}

pub fn paravector_inverse(p: &Paravector) -> Result<Paravector> {
    p.inverse()
}

pub fn decompose(x: &Paravector) -> (f64, f64, ImaginaryUnit) {
    x.decompose()
}

fn hypot_all(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |acc, &c| acc.hypot(c))
}

/// Unit 1-vector j ∈ 𝕊; j² = −1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImaginaryUnit(Vec<f64>);

impl ImaginaryUnit {
    /// Normalizes a nonzero vector.
    pub fn new(v: Vec<f64>) -> Result<Self> {
        check_dim(v.len())?;
        let norm = hypot_all(&v);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidParameter("imaginary unit needs a finite nonzero vector".into()));
        }
        Ok(Self(v.into_iter().map(|c| c / norm).collect()))
    }

    /// ±e_i with `sign` ∈ {1, −1}.
    pub fn signed_basis(n: usize, i: usize, sign: f64) -> Self {
        let mut v = vec![0.0; n];
        v[i - 1] = sign;
        Self(v)
    }

    pub fn basis(n: usize, i: usize) -> Self {
        Self::signed_basis(n, i, 1.0)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn to_clifford(&self) -> CliffordNumber {
        Paravector { x0: 0.0, vec: self.0.clone() }.to_clifford()
    }

    /// j · a.
    pub fn left_mul(&self, a: &CliffordNumber) -> CliffordNumber {
        let mut out = CliffordNumber::zero(a.n());
        for (i, &c) in self.0.iter().enumerate() {
            if c != 0.0 {
                out.add_scaled(&a.left_mul_unit(i + 1), c);
            }
        }
        out
    }

    /// c + j·d for complex scalars embedded in ℂ_j.
    pub fn complex(&self, c: f64, d: f64) -> CliffordNumber {
        let mut out = self.to_clifford().scale(d);
        out.coeffs[0] = c;
        out
    }
}

/// Deterministic points of 𝕊 ⊂ ℝ^n. The first 2n entries are ±e₁, …, ±e_n;
/// further points are normalized Gaussian draws. For n = 1 only ±e₁ exist.
pub fn sphere_sample(n: usize, count: usize, seed: u64) -> Vec<ImaginaryUnit> {
    assert!((1..=MAX_DIM).contains(&n), "Clifford dimension {n} outside 1..=8");
    let mut out = Vec::with_capacity(count.max(2 * n));
    for i in 1..=n {
        out.push(ImaginaryUnit::signed_basis(n, i, 1.0));
        out.push(ImaginaryUnit::signed_basis(n, i, -1.0));
    }
    if n == 1 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        if let Ok(j) = ImaginaryUnit::new(v) {
            out.push(j);
        }
    }
    out
}

/// Exact supremum over j ∈ 𝕊 of |A + jB|.
///
/// Left multiplication by a unit vector is an isometry of ℝ_n, so
/// |A + jB|² = |A|² + |B|² + 2 Σ c_i ⟨A, e_i B⟩ for j = Σ c_i e_i, and the
/// linear term is maximized by c parallel to w_i = ⟨A, e_i B⟩.
pub fn sup_over_sphere(a: &CliffordNumber, b: &CliffordNumber) -> f64 {
    let w: Vec<f64> = (1..=a.n()).map(|i| a.dot(&b.left_mul_unit(i))).collect();
    let sq = a.norm_sqr() + b.norm_sqr() + 2.0 * hypot_all(&w);
    sq.max(0.0).sqrt()
}

/// Unit vector j attaining [`sup_over_sphere`] (e₁ when the maximizer is not unique).
pub fn argsup_over_sphere(a: &CliffordNumber, b: &CliffordNumber) -> ImaginaryUnit {
    let w: Vec<f64> = (1..=a.n()).map(|i| a.dot(&b.left_mul_unit(i))).collect();
    ImaginaryUnit::new(w).unwrap_or_else(|_| ImaginaryUnit::basis(a.n(), 1))
}
