use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::expr::PolyExpr;
use crate::scalar::Scalar;

/// Complex-valued power expression `re + i·im`, both parts real PolyExprs.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoly<T> {
    pub re: PolyExpr<T>,
    pub im: PolyExpr<T>,
}

impl<T: Scalar> ComplexPoly<T> {
    pub fn new(re: PolyExpr<T>, im: PolyExpr<T>) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self { re: PolyExpr::zero(), im: PolyExpr::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Multiplies by `i^k`.
    pub fn times_i_pow(self, k: u8) -> Self {
        match k % 4 {
            0 => self,
            1 => Self { re: -self.im, im: self.re },
            2 => Self { re: -self.re, im: -self.im },
            _ => Self { re: self.im, im: -self.re },
        }
    }

    pub fn scale(&self, k: T) -> Self {
        Self { re: self.re.scale(k), im: self.im.scale(k) }
    }

    pub fn max_abs_coeff(&self) -> T {
        self.re.max_abs_coeff().max(self.im.max_abs_coeff())
    }

    /// Largest coefficient-wise deviation, without dust dropping.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.re.max_abs_diff(&other.re).max(self.im.max_abs_diff(&other.im))
    }
}

impl<T: Scalar> From<PolyExpr<T>> for ComplexPoly<T> {
    fn from(re: PolyExpr<T>) -> Self {
        Self { re, im: PolyExpr::zero() }
    }
}

impl<T: Scalar> Add for ComplexPoly<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<T: Scalar> Sub for ComplexPoly<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<T: Scalar> Neg for ComplexPoly<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl<T: Scalar> fmt::Display for ComplexPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "i*({})", self.im),
            (false, false) => write!(f, "{} + i*({})", self.re, self.im),
        }
    }
}
