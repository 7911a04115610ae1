use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::cpoly::ComplexPoly;
use crate::expr::{Axis, DomainError, PolyExpr, PowerTerm};
use crate::scalar::{snap, Scalar};

/// `i^phase · prefactor · (∂ chain)`.
///
/// Applied to an operand, the derivative chain acts first (axes in the
/// order x, y, z, t; several orders on one axis in list order, never
/// merged), then the result is multiplied by the prefactor monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorTerm<T> {
    pub phase: u8,
    pub prefactor: PowerTerm<T>,
    pub derivs: [Vec<T>; 4],
}

impl<T: Scalar> OperatorTerm<T> {
    pub fn new(phase: u8, prefactor: PowerTerm<T>) -> Self {
        Self { phase: phase % 4, prefactor, derivs: Default::default() }
    }

    /// Appends an order-`order` derivative along `axis` (applied after the
    /// ones already on that axis).
    pub fn with_derivative(mut self, axis: Axis, order: T) -> Self {
        self.derivs[axis.index()].push(snap(order));
        self
    }

    /// Folds phases 2 and 3 into the coefficient sign.
    fn canonical(mut self) -> Self {
        if self.phase >= 2 {
            self.phase -= 2;
            self.prefactor.coeff = -self.prefactor.coeff;
        }
        self
    }

    fn same_shape(&self, other: &Self) -> bool {
        let tol = T::exponent_tol();
        self.phase == other.phase
            && self.prefactor.same_monomial(&other.prefactor)
            && self
                .derivs
                .iter()
                .zip(other.derivs.iter())
                .all(|(a, b)| a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| (*x - *y).abs() <= tol))
    }

    pub fn apply_real(&self, f: &PolyExpr<T>) -> Result<PolyExpr<T>, DomainError> {
        let mut g = f.clone();
        for axis in Axis::ALL {
            for &q in &self.derivs[axis.index()] {
                g = g.rl_partial(axis, q)?;
            }
        }
        Ok(g.mul_term(&self.prefactor))
    }

    pub fn apply(&self, f: &ComplexPoly<T>) -> Result<ComplexPoly<T>, DomainError> {
        let out = ComplexPoly::new(self.apply_real(&f.re)?, self.apply_real(&f.im)?);
        Ok(out.times_i_pow(self.phase))
    }
}

/// Linear combination of [`OperatorTerm`]s.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OperatorExpr<T> {
    terms: Vec<OperatorTerm<T>>,
}

impl<T: Scalar> OperatorExpr<T> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::from_terms([OperatorTerm::new(0, PowerTerm::constant(T::one()))])
    }

    /// Multiplication by a monomial.
    pub fn multiply(m: PowerTerm<T>) -> Self {
        Self::from_terms([OperatorTerm::new(0, m)])
    }

    /// Plain `∂_axis^order`.
    pub fn derivative(axis: Axis, order: T) -> Self {
        Self::from_terms([OperatorTerm::new(0, PowerTerm::constant(T::one())).with_derivative(axis, order)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = OperatorTerm<T>>) -> Self {
        let mut merged: Vec<OperatorTerm<T>> = Vec::new();
        for t in terms.into_iter().map(OperatorTerm::canonical) {
            match merged.iter_mut().find(|m| m.same_shape(&t)) {
                Some(m) => m.prefactor.coeff = m.prefactor.coeff + t.prefactor.coeff,
                None => merged.push(t),
            }
        }
        let tol = T::drop_tol();
        merged.retain(|t| t.prefactor.coeff.abs() >= tol);
        Self { terms: merged }
    }

    pub fn terms(&self) -> &[OperatorTerm<T>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs_coeff(&self) -> T {
        self.terms.iter().fold(T::zero(), |m, t| m.max(t.prefactor.coeff.abs()))
    }

    pub fn scale(&self, k: T) -> Self {
        Self::from_terms(self.terms.iter().cloned().map(|mut t| {
            t.prefactor.coeff = t.prefactor.coeff * k;
            t
        }))
    }

    pub fn times_i(&self) -> Self {
        Self::from_terms(self.terms.iter().cloned().map(|mut t| {
            t.phase = (t.phase + 1) % 4;
            t
        }))
    }

    /// `m · self`, i.e. the prefactor of every term multiplied by `m`.
    pub fn premultiply(&self, m: &PowerTerm<T>) -> Self {
        Self::from_terms(self.terms.iter().cloned().map(|mut t| {
            t.prefactor = t.prefactor.mul_term(m);
            t
        }))
    }

    pub fn apply(&self, f: &ComplexPoly<T>) -> Result<ComplexPoly<T>, DomainError> {
        self.terms.iter().try_fold(ComplexPoly::zero(), |acc, t| Ok(acc + t.apply(f)?))
    }

    pub fn apply_real(&self, f: &PolyExpr<T>) -> Result<ComplexPoly<T>, DomainError> {
        self.apply(&ComplexPoly::from(f.clone()))
    }
}

/// `[a, b] f = a(b f) − b(a f)`.
pub fn commutator<T: Scalar>(
    a: &OperatorExpr<T>,
    b: &OperatorExpr<T>,
    f: &ComplexPoly<T>,
) -> Result<ComplexPoly<T>, DomainError> {
    let ab = a.apply(&b.apply(f)?)?;
    let ba = b.apply(&a.apply(f)?)?;
    Ok(ab - ba)
}

impl<T: Scalar> Add for OperatorExpr<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::from_terms(self.terms.into_iter().chain(rhs.terms))
    }
}

impl<T: Scalar> Neg for OperatorExpr<T> {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Sub for OperatorExpr<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> fmt::Display for OperatorExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if t.phase == 1 {
                write!(f, "i*")?;
            }
            write!(f, "({})", PolyExpr::from_terms([t.prefactor]))?;
            for axis in Axis::ALL {
                for q in &t.derivs[axis.index()] {
                    write!(f, "*d_{axis}^{q}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn poly(s: &str) -> ComplexPoly<f64> {
        parse_expr::<f64>(s).unwrap().into()
    }

    #[test]
    fn identity_action() {
        let f = poly("x^2");
        assert_eq!(OperatorExpr::identity().apply(&f).unwrap(), f);
    }

    #[test]
    fn first_derivative() {
        let d = OperatorExpr::derivative(Axis::X, 1.0);
        assert_eq!(d.apply(&poly("x*y")).unwrap(), poly("y"));
    }

    #[test]
    fn mixed_half_derivatives() {
        let op = OperatorExpr::from_terms([OperatorTerm::new(0, PowerTerm::constant(1.0))
            .with_derivative(Axis::X, 0.5)
            .with_derivative(Axis::Y, 0.5)]);
        let out = op.apply(&poly("x*y")).unwrap();
        let c = 2.0 / std::f64::consts::PI.sqrt();
        assert!((out.re.coeff_of([0.5, 0.5, 0.0, 0.0]) - c * c).abs() < 1e-13);
        assert_eq!(out.re.len(), 1);
        assert!(out.im.is_zero());
    }

    #[test]
    fn canonical_commutator() {
        let dx = OperatorExpr::derivative(Axis::X, 1.0);
        let x = OperatorExpr::multiply(PowerTerm::on_axis(1.0, Axis::X, 1.0));
        for n in [1.0, 2.5, 4.0] {
            let f: ComplexPoly<f64> = PolyExpr::power(1.0, Axis::X, n).into();
            let c = commutator(&dx, &x, &f).unwrap();
            assert!(c.max_abs_diff(&f) < 1e-12);
        }
    }

    #[test]
    fn phases_fold_and_cancel() {
        let a = OperatorExpr::derivative(Axis::Y, 0.5).times_i();
        let b = a.times_i().times_i();
        assert!((a.clone() + b).is_zero());
        assert_eq!(a.terms()[0].phase, 1);
    }

    #[test]
    fn phase_applies_to_result() {
        let op = OperatorExpr::<f64>::identity().times_i();
        let out = op.apply(&poly("x")).unwrap();
        assert!(out.re.is_zero());
        assert_eq!(out.im, parse_expr("x").unwrap());
    }
}
