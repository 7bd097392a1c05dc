//! Dense polynomials in the monomial basis on [0, 1] and the shifted
//! Legendre families built from them.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::special::binomial;

/// Highest degree [`Poly`] arithmetic accepts; monomial coefficients of
/// Legendre-type families grow too fast beyond it.
pub const MAX_DEGREE: usize = 20;

/// c₀ + c₁x + … + c_d x^d with no trailing zero coefficient.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::Domain("polynomial degree exceeds 20"));
        }
        Ok(Self { coeffs })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c]).unwrap_or_default()
    }

    /// x^k
    pub fn monomial(k: usize) -> Result<Self> {
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Self::new(c).unwrap_or_default()
    }

    /// ∫₀¹ p(x) dx
    pub fn integrate_unit(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c / (k + 1) as f64)
            .sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect()).unwrap_or_default()
    }

    /// p(1 − x)
    pub fn reflect(&self) -> Self {
        let one_minus_x = Poly {
            coeffs: vec![1.0, -1.0],
        };
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, &c| {
            &(&acc * &one_minus_x) + &Poly::constant(c)
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut c = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let at = |p: &Poly, k: usize| p.coeffs.get(k).copied().unwrap_or(0.0);
        Poly::new((0..n).map(|k| at(self, k) + at(rhs, k)).collect()).unwrap_or_default()
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &-rhs
    }
}

/// Panics if the product exceeds [`MAX_DEGREE`]; use [`Poly::try_mul`]
/// when that can happen.
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs)
            .expect("polynomial product degree exceeds 20")
    }
}

/// Shifted Legendre polynomial P_k(r) = (1/k!) d^k/dr^k (r² − r)^k,
/// orthogonal on [0, 1] with ∫P_k² = 1/(2k + 1).
pub fn legendre_shifted(k: usize) -> Result<Poly> {
    if k > MAX_DEGREE {
        return Err(Error::Domain("polynomial degree exceeds 20"));
    }
    // (r² − r)^k = Σ_i C(k,i) (−1)^{k−i} r^{k+i}; differentiate k times
    // and divide by k!: coefficient of r^i is (−1)^{k−i} C(k,i) C(k+i,k).
    let c = (0..=k)
        .map(|i| {
            let sign = if (k - i).is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * binomial(k, i) * binomial(k + i, k)
        })
        .collect();
    Poly::new(c)
}

/// Order-2 associated Legendre polynomial Q_k(r) = (r − r²) P_k''(r).
pub fn legendre_assoc2(k: usize) -> Result<Poly> {
    if k < 2 {
        return Err(Error::Domain("associated Legendre order 2 needs k >= 2"));
    }
    let bubble = Poly::new(vec![0.0, 1.0, -1.0])?;
    legendre_shifted(k)?
        .derivative()
        .derivative()
        .try_mul(&bubble)
}

/// P_k and its first three derivatives at r, by the three-term recurrence
/// in x = 2r − 1. Stable where Horner on the monomial coefficients loses
/// digits to cancellation.
pub fn legendre_shifted_derivs(k: usize, r: f64) -> [f64; 4] {
    let x = 2.0 * r - 1.0;
    // prev[d], cur[d] hold the d-th x-derivative of P_{i-1}, P_i.
    let mut prev = [0.0; 4];
    let mut cur = [1.0, 0.0, 0.0, 0.0];
    for i in 0..k {
        let fi = i as f64;
        let mut next = [0.0; 4];
        for d in 0..4 {
            let lower = if d > 0 { d as f64 * cur[d - 1] } else { 0.0 };
            next[d] = ((2.0 * fi + 1.0) * (lower + x * cur[d]) - fi * prev[d]) / (fi + 1.0);
        }
        prev = cur;
        cur = next;
    }
    [cur[0], 2.0 * cur[1], 4.0 * cur[2], 8.0 * cur[3]]
}

/// Q_k(r) through [`legendre_shifted_derivs`].
pub fn legendre_assoc2_eval(k: usize, r: f64) -> f64 {
    (r - r * r) * legendre_shifted_derivs(k, r)[2]
}
