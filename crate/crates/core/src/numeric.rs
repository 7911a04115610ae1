//! Numerical Riemann-Liouville derivative and the truncated Leibniz series.
//!
//! The quadrature route is kept independent of the power rule in
//! [`crate::expr`]: the inner integral `∫₀ˣ (x−ξ)^{−α} f(ξ) dξ` is done by
//! Gauss-Jacobi quadrature whose weight absorbs the endpoint singularity, and
//! the outer `d/dx` is a central difference.

use gauss_quad::GaussJacobi;
use thiserror::Error;

use crate::expr::{Axis, DomainError, PolyExpr};
use crate::scalar::Scalar;
use crate::specfun::{frac_binomial, rgamma};

pub const DEFAULT_NODES: usize = 64;

/// Relative step of the outer central difference.
const REL_STEP: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("quadrature order {0} is outside (0, 1)")]
    OrderOutOfRange(f64),
    #[error("evaluation point {0} must be positive")]
    PointOutOfRange(f64),
    #[error("need at least 2 quadrature nodes, got {0}")]
    TooFewNodes(usize),
    #[error("integrand is not finite at {0}")]
    NonFiniteSample(f64),
    #[error("series factor is not polynomial along {0}")]
    NotPolynomial(Axis),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Gauss-Jacobi rule on [−1, 1] with weight `(1 − t)^{−α}`, reusable for
/// any evaluation point at a fixed order.
#[derive(Debug, Clone)]
pub struct RlQuadrature<T> {
    alpha: T,
    nodes: Vec<(T, T)>,
}

impl<T: Scalar> RlQuadrature<T> {
    pub fn new(alpha: T, nodes: usize) -> Result<Self, NumericError> {
        let a = alpha.to_f64().unwrap_or(f64::NAN);
        if !(a > 0.0 && a < 1.0) {
            return Err(NumericError::OrderOutOfRange(a));
        }
        if nodes < 2 {
            return Err(NumericError::TooFewNodes(nodes));
        }
        let rule = GaussJacobi::new(nodes, -a, 0.0).map_err(|_| NumericError::OrderOutOfRange(a))?;
        let nodes = rule.as_node_weight_pairs().iter().map(|&(t, w)| (T::lit(t), T::lit(w))).collect();
        Ok(Self { alpha, nodes })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫₀ˢ (s−ξ)^{−α} f(ξ) dξ` with ξ = s(1+t)/2.
    pub fn weighted_integral<F: Fn(T) -> T>(&self, f: &F, s: T) -> Result<T, NumericError> {
        let half = s / T::lit(2.0);
        let mut acc = T::zero();
        for &(t, w) in &self.nodes {
            let xi = half * (T::one() + t);
            let v = f(xi);
            if !v.is_finite() {
                return Err(NumericError::NonFiniteSample(xi.to_f64().unwrap_or(f64::NAN)));
            }
            acc = acc + w * v;
        }
        Ok(half.powf(T::one() - self.alpha) * acc)
    }

    /// Left RL derivative `(D_{0+}^α f)(x)`.
    pub fn derivative<F: Fn(T) -> T>(&self, f: F, x: T) -> Result<T, NumericError> {
        if x <= T::zero() || !x.is_finite() {
            return Err(NumericError::PointOutOfRange(x.to_f64().unwrap_or(f64::NAN)));
        }
        let h = x * T::lit(REL_STEP);
        let up = self.weighted_integral(&f, x + h)?;
        let down = self.weighted_integral(&f, x - h)?;
        Ok((up - down) / (h + h) * rgamma(T::one() - self.alpha))
    }
}

/// One-shot form of [`RlQuadrature::derivative`].
pub fn rl_derivative_quad<T: Scalar, F: Fn(T) -> T>(f: F, alpha: T, x: T, nodes: usize) -> Result<T, NumericError> {
    RlQuadrature::new(alpha, nodes)?.derivative(f, x)
}

/// Partial sum `Σ_{k=0}^{K} (α choose k) (∂^k φ)(∂^{α−k} ψ)` along `axis`.
///
/// `φ` must be polynomial along `axis`; the series then terminates once
/// `k` exceeds its degree and the result equals `∂^α(φψ)`.
pub fn leibniz_series<T: Scalar>(
    phi: &PolyExpr<T>,
    psi: &PolyExpr<T>,
    axis: Axis,
    alpha: T,
    max_k: usize,
) -> Result<PolyExpr<T>, NumericError> {
    if !phi.is_polynomial_in(axis) {
        return Err(NumericError::NotPolynomial(axis));
    }
    let mut out = PolyExpr::zero();
    let mut dphi = phi.clone();
    for k in 0..=max_k {
        if dphi.is_zero() {
            break;
        }
        let c = frac_binomial(alpha, k);
        if !c.is_zero() {
            let dpsi = psi.rl_derive(axis, alpha - T::from_usize_lossy(k))?;
            out = out + (&dphi * &dpsi).scale(c);
        }
        // one integer step at a time keeps every intermediate in the domain
        dphi = dphi.rl_derive(axis, T::one())?;
    }
    Ok(out)
}
