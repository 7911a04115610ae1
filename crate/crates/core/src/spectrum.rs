//! Casimir eigenvalues of the fractional rotation group and the level
//! formula `E = m₀ + a₀ L² ± b₀ L_z` built from them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;
use crate::specfun::rgamma;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("|M| = {m} exceeds L = {l}")]
    MOutOfRange { l: u32, m: i32 },
    #[error("alpha must be positive and finite, got {0}")]
    BadAlpha(f64),
    #[error("parameter {0} is not finite")]
    NonFinite(&'static str),
}

/// `(α, m₀, a₀, b₀)`, masses in MeV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitParams<T> {
    pub alpha: T,
    pub m0: T,
    pub a0: T,
    pub b0: T,
}

impl<T: Scalar> FitParams<T> {
    pub fn new(alpha: T, m0: T, a0: T, b0: T) -> Result<Self, SpectrumError> {
        if alpha <= T::zero() || !alpha.is_finite() {
            return Err(SpectrumError::BadAlpha(alpha.to_f64().unwrap_or(f64::NAN)));
        }
        for (name, v) in [("m0", m0), ("a0", a0), ("b0", b0)] {
            if !v.is_finite() {
                return Err(SpectrumError::NonFinite(name));
            }
        }
        Ok(Self { alpha, m0, a0, b0 })
    }

    /// The published optimum: α = 0.112, m₀ = −17171.6, a₀ = 10971.8,
    /// b₀ = 8064.6 MeV.
    pub fn published() -> Self {
        Self { alpha: T::lit(0.112), m0: T::lit(-17171.6), a0: T::lit(10971.8), b0: T::lit(8064.6) }
    }

    pub fn to_array(self) -> [T; 4] {
        [self.alpha, self.m0, self.a0, self.b0]
    }

    pub fn from_array(v: [T; 4]) -> Self {
        Self { alpha: v[0], m0: v[1], a0: v[2], b0: v[3] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

/// Quantum numbers `|L M⟩` plus the branch of the `±` in the level formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multiplet {
    pub l: u32,
    pub m: i32,
    pub sign: Sign,
}

impl Multiplet {
    pub fn new(l: u32, m: i32, sign: Sign) -> Result<Self, SpectrumError> {
        if m.unsigned_abs() > l {
            return Err(SpectrumError::MOutOfRange { l, m });
        }
        Ok(Self { l, m, sign })
    }

    /// `+` branch, which is what the tabulated baryon levels use.
    pub fn plus(l: u32, m: i32) -> Result<Self, SpectrumError> {
        Self::new(l, m, Sign::Plus)
    }
}

/// `Γ(1+(L+1)α) / Γ(1+(L−1)α)`; `L(L+1)` at α = 1.
pub fn casimir_l2<T: Scalar>(alpha: T, l: u32) -> T {
    let l = T::lit(f64::from(l));
    let one = T::one();
    ratio(one + (l + one) * alpha, one + (l - one) * alpha)
}

/// `±Γ(1+|M|α) / Γ(1+(|M|−1)α)`; `±|M|` at α = 1 and `±1/Γ(1−α)` at M = 0.
pub fn casimir_lz<T: Scalar>(alpha: T, m: i32, sign: Sign) -> T {
    let am = T::lit(f64::from(m.unsigned_abs()));
    let one = T::one();
    sign.factor::<T>() * ratio(one + am * alpha, one + (am - one) * alpha)
}

/// `Γ(a)/Γ(b)` with `1/Γ(b) = 0` at poles of the denominator; `a > 0` here.
fn ratio<T: Scalar>(a: T, b: T) -> T {
    let rb = rgamma(b);
    if rb.is_zero() {
        return T::zero();
    }
    rb / rgamma(a)
}

pub fn mass<T: Scalar>(p: &FitParams<T>, mult: &Multiplet) -> T {
    p.m0 + p.a0 * casimir_l2(p.alpha, mult.l) + p.b0 * casimir_lz(p.alpha, mult.m, mult.sign)
}

pub fn spectrum<T: Scalar>(p: &FitParams<T>, mults: &[Multiplet]) -> Vec<(Multiplet, T)> {
    mults.iter().map(|m| (*m, mass(p, m))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    fn plus(l: u32, m: i32) -> Multiplet {
        Multiplet::plus(l, m).unwrap()
    }

    #[test]
    fn classical_casimirs() {
        assert_eq!(casimir_l2(1.0, 3), 12.0);
        assert_eq!(casimir_l2(1.0, 0), 0.0);
        assert_eq!(casimir_lz(1.0, 2, Sign::Plus), 2.0);
        assert_eq!(casimir_lz(1.0, -2, Sign::Minus), -2.0);
        assert_eq!(casimir_lz(1.0, 0, Sign::Plus), 0.0);
    }

    #[test]
    fn zero_point_value() {
        let v = casimir_lz(0.112, 0, Sign::Plus);
        assert!((v - 1.0 / gamma(0.888_f64).unwrap()).abs() < 1e-14);
        assert!(v > 0.0);
    }

    #[test]
    fn tabulated_levels() {
        let p = FitParams::<f64>::published();
        assert!((mass(&p, &plus(3, 1)) - 1115.94).abs() < 0.05);
        assert!((mass(&p, &plus(4, 0)) - 1240.53).abs() < 0.05);
        assert!((mass(&p, &plus(3, 0)) - 959.39).abs() < 0.05);
        assert!((mass(&p, &plus(2, 2)) - 945.76).abs() < 0.05);
        assert!((mass(&p, &plus(1, 0)) - 313.90).abs() < 0.05);
    }

    #[test]
    fn classical_collapse() {
        let p = FitParams::new(1.0, -3.0, 2.0, 5.0).unwrap();
        for l in 0..6u32 {
            for m in 0..=l as i32 {
                let e = mass(&p, &plus(l, m));
                let expect = -3.0 + 2.0 * f64::from(l * (l + 1)) + 5.0 * f64::from(m);
                assert!((e - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn increasing_in_m() {
        let p = FitParams::<f64>::published();
        for l in 1..=10u32 {
            for m in 1..=l as i32 {
                assert!(mass(&p, &plus(l, m)) > mass(&p, &plus(l, m - 1)));
            }
        }
    }

    #[test]
    fn l2_positive() {
        for a in [0.01, 0.112, 0.5, 1.0] {
            for l in 1..30 {
                assert!(casimir_l2(a, l) > 0.0);
            }
        }
    }

    #[test]
    fn spectrum_keeps_order() {
        let p = FitParams::<f64>::published();
        assert!(spectrum(&p, &[]).is_empty());
        let ms = [plus(4, 2), plus(3, 0)];
        let s = spectrum(&p, &ms);
        assert_eq!(s[0].0, ms[0]);
        assert_eq!(s[1].0, ms[1]);
    }

    #[test]
    fn invalid_inputs() {
        assert!(Multiplet::plus(3, 5).is_err());
        assert!(Multiplet::plus(3, -4).is_err());
        assert!(FitParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(FitParams::new(0.5, f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn single_precision() {
        let p = FitParams::<f32>::published();
        assert!((mass(&p, &Multiplet::plus(3, 1).unwrap()) - 1115.94).abs() < 2.0);
    }
}
