//! External fractional gauge field, its fractional curl, and the charge
//! connection operators built from it.

use thiserror::Error;

use super::op::{OperatorExpr, OperatorTerm};
use crate::expr::{Axis, DomainError, PolyExpr, PowerTerm};
use crate::scalar::Scalar;
use crate::specfun::frac_binomial;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaugeError {
    #[error("gauge field order {0} is outside (0, 1]")]
    OrderOutOfRange(f64),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Three spatial components of `A` together with the common order α.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeField<T> {
    pub components: [PolyExpr<T>; 3],
    pub alpha: T,
}

impl<T: Scalar> GaugeField<T> {
    pub fn new(components: [PolyExpr<T>; 3], alpha: T) -> Result<Self, GaugeError> {
        if !(alpha > T::zero() && alpha <= T::one()) {
            return Err(GaugeError::OrderOutOfRange(alpha.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { components, alpha })
    }

    pub fn component(&self, axis: Axis) -> &PolyExpr<T> {
        &self.components[axis.index()]
    }
}

/// Connection operators have one component per spatial axis.
pub type VectorOperator<T> = [OperatorExpr<T>; 3];

/// `A = {−½B x^{1−α} y^{2α−1} z^{α−1}, ½B x^{2α−1} y^{1−α} z^{α−1}, 0}`,
/// the fractional analogue of a constant field B along z.
pub fn gauge_field_a<T: Scalar>(b: T, alpha: T) -> Result<GaugeField<T>, GaugeError> {
    let half_b = b / T::lit(2.0);
    let one = T::one();
    let two = T::lit(2.0);
    let ax = PolyExpr::monomial(-half_b, [one - alpha, two * alpha - one, alpha - one, T::zero()]);
    let ay = PolyExpr::monomial(half_b, [two * alpha - one, one - alpha, alpha - one, T::zero()]);
    GaugeField::new([ax, ay, PolyExpr::zero()], alpha)
}

/// `B^α = ∇^α × A`.
pub fn curl_frac<T: Scalar>(a: &GaugeField<T>) -> Result<[PolyExpr<T>; 3], DomainError> {
    let d = |comp: Axis, by: Axis| a.component(comp).rl_derive(by, a.alpha);
    Ok([
        d(Axis::Z, Axis::Y)? - d(Axis::Y, Axis::Z)?,
        d(Axis::X, Axis::Z)? - d(Axis::Z, Axis::X)?,
        d(Axis::Y, Axis::X)? - d(Axis::X, Axis::Y)?,
    ])
}

/// Residuals of `∂_x^α∂_y^α B_z`, `∂_y^α∂_x^α B_z` and `∂_z^α B_z`, taken as
/// plain RL derivatives: a field independent of z still fails `∂_z^α`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantFieldCheck<T> {
    pub passed: bool,
    pub residuals: [PolyExpr<T>; 3],
    pub max_residual: T,
}

pub fn check_constant_field<T: Scalar>(bz: &PolyExpr<T>, alpha: T) -> Result<ConstantFieldCheck<T>, DomainError> {
    let dxdy = bz.rl_derive(Axis::Y, alpha)?.rl_derive(Axis::X, alpha)?;
    let dydx = bz.rl_derive(Axis::X, alpha)?.rl_derive(Axis::Y, alpha)?;
    let dz = bz.rl_derive(Axis::Z, alpha)?;
    let residuals = [dxdy, dydx, dz];
    let max_residual = residuals.iter().fold(T::zero(), |m, r| m.max(r.max_abs_coeff()));
    Ok(ConstantFieldCheck { passed: max_residual < T::drop_tol(), residuals, max_residual })
}

/// `∂_axis^{k−α} A_axis` as `D^k I^α A`: the RL definition for orders in
/// (k−1, k), with the integer derivatives taken one step at a time.
fn shifted_potential<T: Scalar>(a: &GaugeField<T>, axis: Axis, k: usize) -> Result<PolyExpr<T>, DomainError> {
    let mut c = a.component(axis).rl_derive(axis, -a.alpha)?;
    for _ in 0..k {
        if c.is_zero() {
            break;
        }
        c = c.rl_derive(axis, T::one())?;
    }
    Ok(c)
}

/// Charge connection `Γ̂ᵢ = Σ_{k=1}^{K} (α choose k)(∂ᵢ^{k−α} Aᵢ) ∂ᵢ^{α−k}`.
pub fn gamma_connection<T: Scalar>(a: &GaugeField<T>, max_k: usize) -> Result<VectorOperator<T>, DomainError> {
    let alpha = a.alpha;
    let mut out: VectorOperator<T> = Default::default();
    for axis in Axis::SPATIAL {
        let mut terms = Vec::new();
        for k in 1..=max_k {
            let binom = frac_binomial(alpha, k);
            let c = shifted_potential(a, axis, k)?;
            if binom.is_zero() || c.is_zero() {
                continue;
            }
            let order = alpha - T::from_usize_lossy(k);
            for t in c.terms() {
                let pre = PowerTerm::new(t.coeff * binom, t.exps);
                terms.push(OperatorTerm::new(0, pre).with_derivative(axis, order));
            }
        }
        out[axis.index()] = OperatorExpr::from_terms(terms);
    }
    Ok(out)
}

/// `Ω̂ᵢ = −Σ_{k=1}^{K} (α choose k)(−1)^k ∂ᵢ^{α−k} ∘ (∂ᵢ^{k−α} Aᵢ)`.
///
/// The derivative stands to the left of the coefficient. A coefficient
/// independent of the axis commutes through; otherwise `∂^q(c·)` is expanded
/// with the Leibniz series, truncated at the same `K`.
pub fn omega_connection<T: Scalar>(a: &GaugeField<T>, max_k: usize) -> Result<VectorOperator<T>, DomainError> {
    let alpha = a.alpha;
    let mut out: VectorOperator<T> = Default::default();
    for axis in Axis::SPATIAL {
        let mut terms = Vec::new();
        for k in 1..=max_k {
            let sign = if k % 2 == 0 { -T::one() } else { T::one() };
            let weight = sign * frac_binomial(alpha, k);
            let c = shifted_potential(a, axis, k)?;
            if weight.is_zero() || c.is_zero() {
                continue;
            }
            let order = alpha - T::from_usize_lossy(k);
            for t in c.terms() {
                if t.exponent(axis).is_zero() {
                    let pre = PowerTerm::new(t.coeff * weight, t.exps);
                    terms.push(OperatorTerm::new(0, pre).with_derivative(axis, order));
                    continue;
                }
                // ∂^q (c g) = Σ_j (q choose j)(∂^j c)(∂^{q−j} g)
                let mut dc = PolyExpr::from_terms([*t]);
                for j in 0..=max_k {
                    if j > 0 {
                        dc = dc.rl_derive(axis, T::one())?;
                    }
                    if dc.is_zero() {
                        break;
                    }
                    let bj = frac_binomial(order, j);
                    for s in dc.terms() {
                        let pre = PowerTerm::new(s.coeff * weight * bj, s.exps);
                        terms.push(OperatorTerm::new(0, pre).with_derivative(axis, order - T::from_usize_lossy(j)));
                    }
                }
            }
        }
        out[axis.index()] = OperatorExpr::from_terms(terms);
    }
    Ok(out)
}

/// Closed form both connections reduce to for [`gauge_field_a`]:
/// `αΓ(2−α)(B/2) z^{α−1} {−y^{2α−1}∂_x^{α−1}, x^{2α−1}∂_y^{α−1}, 0}`.
pub fn reduced_connection<T: Scalar>(b: T, alpha: T) -> VectorOperator<T> {
    let one = T::one();
    let two = T::lit(2.0);
    let g = crate::specfun::gamma(two - alpha).expect("2 − α > 0");
    let c = alpha * g * b / two;
    let order = alpha - one;
    let x = OperatorExpr::from_terms([OperatorTerm::new(
        0,
        PowerTerm::new(-c, [T::zero(), two * alpha - one, alpha - one, T::zero()]),
    )
    .with_derivative(Axis::X, order)]);
    let y = OperatorExpr::from_terms([OperatorTerm::new(
        0,
        PowerTerm::new(c, [two * alpha - one, T::zero(), alpha - one, T::zero()]),
    )
    .with_derivative(Axis::Y, order)]);
    [x, y, OperatorExpr::zero()]
}

/// Largest coefficient difference between two vector operators.
pub fn vector_operator_diff<T: Scalar>(a: &VectorOperator<T>, b: &VectorOperator<T>) -> T {
    a.iter().zip(b.iter()).fold(T::zero(), |m, (p, q)| m.max((p.clone() - q.clone()).max_abs_coeff()))
}
