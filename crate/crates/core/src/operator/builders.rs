//! The fractional operators in natural units (ħ = c = 1).
//!
//! `m` is the particle mass; `(ħ/mc)^β mc` reduces to `m^{1−β}`.
//!
//! Sign convention for the angular momenta: `K^β_z = i m^{1−β}(y ∂_x^β − x ∂_y^β)`,
//! the same orientation as `L̂_z(α) = i(y^α ∂_x^α − x^α ∂_y^α)`. With it the
//! commutators with `H^α` and the total-momentum algebra come out with the
//! signs they are usually quoted with.

use super::op::{OperatorExpr, OperatorTerm};
use crate::expr::{Axis, PowerTerm};
use crate::scalar::Scalar;

fn unit<T: Scalar>() -> PowerTerm<T> {
    PowerTerm::constant(T::one())
}

/// `H^α = −1/(2 m^{2α−1}) Σᵢ ∂ᵢ^α ∂ᵢ^α`, two single derivatives per axis.
pub fn build_h<T: Scalar>(alpha: T, m: T) -> OperatorExpr<T> {
    let two = T::lit(2.0);
    let c = -T::one() / (two * m.powf(two * alpha - T::one()));
    OperatorExpr::from_terms(
        Axis::SPATIAL
            .map(|a| OperatorTerm::new(0, PowerTerm::constant(c)).with_derivative(a, alpha).with_derivative(a, alpha)),
    )
}

/// Generalized angular momentum component `K^β_axis`, cyclic in x, y, z.
pub fn build_k<T: Scalar>(axis: Axis, beta: T, m: T) -> OperatorExpr<T> {
    let u = axis.cyclic_next();
    let v = u.cyclic_next();
    let c = m.powf(T::one() - beta);
    // i c (v ∂_u^β − u ∂_v^β)
    OperatorExpr::from_terms([
        OperatorTerm::new(1, PowerTerm::on_axis(c, v, T::one())).with_derivative(u, beta),
        OperatorTerm::new(1, PowerTerm::on_axis(-c, u, T::one())).with_derivative(v, beta),
    ])
}

pub fn build_kz<T: Scalar>(beta: T, m: T) -> OperatorExpr<T> {
    build_k(Axis::Z, beta, m)
}

/// `L̂_z(α) = i(y^α ∂_x^α − x^α ∂_y^α)`; at α = 1 the ordinary `L_z = K^1_z`.
pub fn build_lz<T: Scalar>(alpha: T) -> OperatorExpr<T> {
    OperatorExpr::from_terms([
        OperatorTerm::new(1, PowerTerm::on_axis(T::one(), Axis::Y, alpha)).with_derivative(Axis::X, alpha),
        OperatorTerm::new(1, PowerTerm::on_axis(-T::one(), Axis::X, alpha)).with_derivative(Axis::Y, alpha),
    ])
}

/// Total angular momentum component `J^{2α−1}_axis = K^{2α−1}_axis`.
pub fn build_j<T: Scalar>(axis: Axis, alpha: T, m: T) -> OperatorExpr<T> {
    build_k(axis, T::lit(2.0) * alpha - T::one(), m)
}

pub fn build_jz<T: Scalar>(alpha: T, m: T) -> OperatorExpr<T> {
    build_j(Axis::Z, alpha, m)
}

/// Intrinsic part `S^{2α−1}_z = J^{2α−1}_z − L_z`; empty at α = 1.
pub fn build_sz<T: Scalar>(alpha: T, m: T) -> OperatorExpr<T> {
    build_jz(alpha, m) - build_lz(T::one())
}

/// Generator of fractional translations `p^β_axis = i m^{1−β} ∂^β_axis`.
pub fn build_p<T: Scalar>(axis: Axis, beta: T, m: T) -> OperatorExpr<T> {
    OperatorExpr::from_terms([
        OperatorTerm::new(1, PowerTerm::constant(m.powf(T::one() - beta))).with_derivative(axis, beta)
    ])
}

/// Fractional-minus-ordinary momentum `δp_axis = p^{2α−1}_axis − p^1_axis`.
pub fn build_delta_p<T: Scalar>(axis: Axis, alpha: T, m: T) -> OperatorExpr<T> {
    build_p(axis, T::lit(2.0) * alpha - T::one(), m) - build_p(axis, T::one(), m)
}

/// `∂_x^a ∂_y^b` with both orders applied directly (no composition).
pub fn mixed_xy<T: Scalar>(x_order: T, y_order: T) -> OperatorExpr<T> {
    OperatorExpr::from_terms([OperatorTerm::new(0, unit())
        .with_derivative(Axis::X, x_order)
        .with_derivative(Axis::Y, y_order)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_expr, PolyExpr};
    use crate::operator::ComplexPoly;

    #[test]
    fn classical_hamiltonian() {
        let h = build_h(1.0, 1.0);
        assert_eq!(h.terms().len(), 3);
        let out = h.apply_real(&parse_expr("x^2").unwrap()).unwrap();
        assert_eq!(out, ComplexPoly::from(PolyExpr::constant(-1.0)));
    }

    #[test]
    fn hamiltonian_on_power_2alpha() {
        let (a, m) = (0.6_f64, 1.7_f64);
        let out = build_h(a, m).apply_real(&PolyExpr::power(1.0, Axis::X, 2.0 * a)).unwrap();
        let expect = -crate::specfun::gamma(1.0 + 2.0 * a).unwrap() / (2.0 * m.powf(2.0 * a - 1.0));
        assert!((out.re.coeff_of([0.0; 4]) - expect).abs() < 1e-12);
        assert_eq!(out.re.len(), 1);
    }

    #[test]
    fn k_at_one_is_lz() {
        assert!((build_kz(1.0, 1.0) - build_lz(1.0)).is_zero());
        // mass drops out at β = 1
        assert!((build_kz(1.0, 3.0) - build_lz(1.0)).is_zero());
    }

    #[test]
    fn spin_vanishes_classically() {
        assert!(build_sz(1.0, 1.0).is_zero());
        assert!(!build_sz(0.75, 1.0).is_zero());
    }

    #[test]
    fn j_minus_l_minus_s_is_zero() {
        for a in [0.3, 0.75, 1.0] {
            let z = build_jz(a, 1.0) - build_lz(1.0) - build_sz(a, 1.0);
            assert!(z.is_zero(), "alpha = {a}");
        }
    }

    #[test]
    fn spin_is_r_cross_delta_p() {
        // S_z = y δp_x − x δp_y in this orientation
        let a = 0.7;
        let y = PowerTerm::on_axis(1.0, Axis::Y, 1.0);
        let x = PowerTerm::on_axis(1.0, Axis::X, 1.0);
        let s = build_delta_p(Axis::X, a, 1.0).premultiply(&y) - build_delta_p(Axis::Y, a, 1.0).premultiply(&x);
        assert!((s - build_sz(a, 1.0)).is_zero());
    }

    #[test]
    fn cyclic_components() {
        let f: ComplexPoly<f64> = parse_expr::<f64>("x^2*y^3*z^4").unwrap().into();
        // K_x = i(z ∂_y − y ∂_z) at β = 1
        let kx = build_k(Axis::X, 1.0, 1.0).apply(&f).unwrap();
        let expect = parse_expr::<f64>("3*x^2*y^2*z^5 - 4*x^2*y^4*z^3").unwrap();
        assert!(kx.re.is_zero());
        assert!(kx.im.max_abs_diff(&expect) < 1e-12);
    }
}
