//! Gamma-function kernels.
//!
//! `gamma` uses the Lanczos approximation (g = 7, nine coefficients) with the
//! reflection formula below 1/2. `rgamma` is the entire reciprocal, exactly
//! zero at the poles, and every Gamma ratio elsewhere in the crate goes
//! through it so that `1/Γ(0) = 0` cancellations are exact.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecFunError {
    #[error("gamma has a pole at {0}")]
    Pole(f64),
    #[error("non-finite argument {0}")]
    NonFinite(f64),
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole<T: Scalar>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

/// sin(πx) with the argument reduced first, so large |x| keeps full accuracy.
fn sin_pi<T: Scalar>(x: T) -> T {
    let two = T::lit(2.0);
    // r in (-1, 1]
    let mut r = x - two * (x / two).round();
    let mut sign = T::one();
    if r < T::zero() {
        r = -r;
        sign = -sign;
    }
    if r > T::one() {
        r = r - T::one();
        sign = -sign;
    }
    if r > T::lit(0.5) {
        r = T::one() - r;
    }
    sign * (T::PI() * r).sin()
}

/// Lanczos sum for x >= 0.5.
fn lanczos<T: Scalar>(x: T) -> T {
    let z = x - T::one();
    let mut acc = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (z + T::from_usize_lossy(i));
    }
    let w = z + T::lit(LANCZOS_G + 0.5);
    // sqrt(2π) w^(z+1/2) e^(-w), split in two halves to delay overflow
    let half = w.powf((z + T::lit(0.5)) / T::lit(2.0));
    (T::TAU()).sqrt() * half * (half * (-w).exp()) * acc
}

/// Euler Gamma function.
pub fn gamma<T: Scalar>(x: T) -> Result<T, SpecFunError> {
    if !x.is_finite() {
        return Err(SpecFunError::NonFinite(x.to_f64().unwrap_or(f64::NAN)));
    }
    if is_pole(x) {
        return Err(SpecFunError::Pole(x.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(gamma_unchecked(x))
}

/// `(n−1)!` for positive integers small enough to stay exact.
fn factorial_exact<T: Scalar>(x: T) -> Option<T> {
    if !(x >= T::one() && x <= T::lit(23.0)) || x.fract() != T::zero() {
        return None;
    }
    let mut acc = T::one();
    let mut k = T::lit(2.0);
    while k < x {
        acc = acc * k;
        k = k + T::one();
    }
    Some(acc)
}

fn gamma_unchecked<T: Scalar>(x: T) -> T {
    if let Some(f) = factorial_exact(x) {
        return f;
    }
    if x < T::lit(0.5) {
        T::PI() / (sin_pi(x) * lanczos(T::one() - x))
    } else {
        lanczos(x)
    }
}

/// Reciprocal Gamma, total on the reals: exactly 0 at 0, −1, −2, …
pub fn rgamma<T: Scalar>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if is_pole(x) {
        return T::zero();
    }
    if let Some(f) = factorial_exact(x) {
        return T::one() / f;
    }
    if x < T::lit(0.5) {
        sin_pi(x) * lanczos(T::one() - x) / T::PI()
    } else {
        T::one() / lanczos(x)
    }
}

/// Γ(a) / Γ(b) with the denominator through `rgamma`.
///
/// The numerator must not sit on a pole; callers guarantee `a > 0` or pass
/// through [`gamma`] first.
pub fn gamma_ratio<T: Scalar>(a: T, b: T) -> Result<T, SpecFunError> {
    let r = rgamma(b);
    if r == T::zero() {
        // still reject a pole in the numerator
        gamma(a)?;
        return Ok(T::zero());
    }
    Ok(gamma(a)? * r)
}

/// Generalized binomial coefficient (α choose k).
pub fn frac_binomial<T: Scalar>(alpha: T, k: usize) -> T {
    if k == 0 {
        return T::one();
    }
    let kf = T::from_usize_lossy(k);
    let top = T::one() + alpha;
    if is_pole(top) {
        // negative integer α: fall back to the falling factorial
        let mut acc = T::one();
        for j in 0..k {
            let jf = T::from_usize_lossy(j);
            acc = acc * (alpha - jf) / (jf + T::one());
        }
        return acc;
    }
    gamma_unchecked(top) * rgamma(T::one() + kf) * rgamma(top - kf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_factorials() {
        assert!(rel(gamma(5.0).unwrap(), 24.0) < 1e-14);
        let mut fact = 1.0_f64;
        for n in 1..=15u32 {
            fact *= n as f64;
            assert!(rel(gamma(n as f64 + 1.0).unwrap(), fact) < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn gamma_half() {
        assert!(rel(gamma(0.5).unwrap(), 1.772_453_850_905_516) < 1e-14);
        assert!(rel(gamma(-0.5).unwrap(), -3.544_907_701_811_032) < 1e-13);
    }

    #[test]
    fn gamma_poles() {
        for x in [0.0, -1.0, -2.0, -17.0] {
            assert_eq!(gamma(x), Err(SpecFunError::Pole(x)));
        }
        assert!(matches!(gamma(f64::INFINITY), Err(SpecFunError::NonFinite(_))));
    }

    #[test]
    fn rgamma_examples() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!((rgamma(2.0_f64) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rgamma_finite_on_window() {
        let mut x = -20.0_f64;
        while x <= 20.0 {
            assert!(rgamma(x).is_finite(), "x = {x}");
            x += 0.0137;
        }
    }

    #[test]
    fn frac_binomial_examples() {
        assert_eq!(frac_binomial(0.37, 0), 1.0);
        assert!((frac_binomial(0.5_f64, 2) + 0.125).abs() < 1e-15);
        assert_eq!(frac_binomial(1.0, 2), 0.0);
        // negative integer α goes through the product
        assert!((frac_binomial(-1.0_f64, 3) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn frac_binomial_integer_rows() {
        for n in 0..=12usize {
            let mut c = 1.0_f64;
            for k in 0..=n {
                let got = frac_binomial(n as f64, k);
                assert!((got - c).abs() <= 1e-12 * c.max(1.0), "({n} {k}) {got} vs {c}");
                c = c * (n - k) as f64 / (k + 1) as f64;
            }
        }
    }

    #[test]
    fn gamma_ratio_pole_in_denominator() {
        assert_eq!(gamma_ratio(2.0, 0.0).unwrap(), 0.0);
        assert!(gamma_ratio(0.0, 1.0).is_err());
    }

    #[test]
    fn single_precision() {
        assert!(((gamma(5.0f32).unwrap() - 24.0) / 24.0).abs() < 1e-5);
        assert_eq!(rgamma(-2.0f32), 0.0);
    }
}
