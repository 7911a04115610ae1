use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use super::axis::Axis;
use crate::scalar::{is_integer, snap, Scalar};
use crate::specfun::{gamma, rgamma};

/// Power-rule domain violation: the term's exponent on `axis` leaves the
/// region where the Riemann-Liouville derivative with lower terminal 0 is
/// given by the Gamma-ratio closed form.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("RL {order}-derivative along {axis} is outside the power-rule domain for term `{term}` (exponent {exponent})")]
pub struct DomainError {
    pub axis: Axis,
    pub exponent: f64,
    pub order: f64,
    pub term: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("no coordinate supplied for axis {0}")]
    MissingCoordinate(Axis),
    #[error("zero coordinate on axis {0} raised to a negative power")]
    ZeroToNegativePower(Axis),
}

/// `coeff · x^ex · y^ey · z^ez · t^et`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTerm<T> {
    pub coeff: T,
    pub exps: [T; 4],
}

impl<T: Scalar> PowerTerm<T> {
    pub fn new(coeff: T, exps: [T; 4]) -> Self {
        Self { coeff, exps: exps.map(snap) }
    }

    pub fn constant(coeff: T) -> Self {
        Self::new(coeff, [T::zero(); 4])
    }

    /// `coeff · axis^exponent`.
    pub fn on_axis(coeff: T, axis: Axis, exponent: T) -> Self {
        let mut exps = [T::zero(); 4];
        exps[axis.index()] = exponent;
        Self::new(coeff, exps)
    }

    pub fn exponent(&self, axis: Axis) -> T {
        self.exps[axis.index()]
    }

    pub fn same_monomial(&self, other: &Self) -> bool {
        let tol = T::exponent_tol();
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| (*a - *b).abs() <= tol)
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|e| e.is_zero())
    }

    pub fn mul_term(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = *e + *o;
        }
        Self::new(self.coeff * other.coeff, exps)
    }

    /// Power rule `∂^q x^ν = Γ(1+ν)/Γ(1+ν−q) x^{ν−q}` along one axis.
    ///
    /// Returns `Ok(None)` when the coefficient vanishes through a pole of the
    /// denominator Gamma.
    pub fn rl_derive(&self, axis: Axis, order: T) -> Result<Option<Self>, DomainError> {
        if order.is_zero() {
            return Ok(Some(*self));
        }
        let nu = self.exponent(axis);
        let shifted = snap(nu - order);
        let integral_diverges = order < T::zero() && nu <= -T::one();
        if shifted < -T::one() || integral_diverges {
            return Err(DomainError {
                axis,
                exponent: nu.to_f64().unwrap_or(f64::NAN),
                order: order.to_f64().unwrap_or(f64::NAN),
                term: render_term(self, true),
            });
        }
        if order > T::zero() && is_integer(order) {
            // falling factorial ν(ν−1)…(ν−q+1), exact for integer ν
            let mut c = self.coeff;
            let mut k = T::zero();
            while k < order {
                c = c * (nu - k);
                k = k + T::one();
            }
            if c.is_zero() {
                return Ok(None);
            }
            let mut exps = self.exps;
            exps[axis.index()] = shifted;
            return Ok(Some(Self::new(c, exps)));
        }
        let denom = rgamma(T::one() + shifted);
        if denom.is_zero() {
            return Ok(None);
        }
        // ν > −1 here, so Γ(1+ν) is finite
        let num = gamma(T::one() + nu).expect("1 + ν > 0 inside the power-rule domain");
        let mut exps = self.exps;
        exps[axis.index()] = shifted;
        Ok(Some(Self::new(self.coeff * num * denom, exps)))
    }

    /// Evaluates with the `sign(x)|x|^λ` convention for non-integer powers.
    pub fn eval(&self, point: &Point<T>) -> Result<T, EvalError> {
        let mut acc = self.coeff;
        for axis in Axis::ALL {
            let e = self.exponent(axis);
            if e.is_zero() {
                continue;
            }
            let v = point.get(axis).ok_or(EvalError::MissingCoordinate(axis))?;
            if v.is_zero() {
                if e < T::zero() {
                    return Err(EvalError::ZeroToNegativePower(axis));
                }
                return Ok(T::zero());
            }
            let factor = if is_integer(e) {
                v.powi(e.to_i32().expect("integer exponent fits i32"))
            } else {
                v.signum() * v.abs().powf(e)
            };
            acc = acc * factor;
        }
        Ok(acc)
    }
}

/// Coordinates for numeric evaluation; unset axes are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point<T> {
    coords: [Option<T>; 4],
}

impl<T: Scalar> Point<T> {
    pub fn new() -> Self {
        Self { coords: [None; 4] }
    }

    pub fn with(mut self, axis: Axis, v: T) -> Self {
        self.coords[axis.index()] = Some(v);
        self
    }

    pub fn set(&mut self, axis: Axis, v: T) {
        self.coords[axis.index()] = Some(v);
    }

    pub fn get(&self, axis: Axis) -> Option<T> {
        self.coords[axis.index()]
    }
}

/// Finite sum of power terms, kept normalized: no two terms share a
/// monomial, no coefficient below the drop tolerance, canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyExpr<T> {
    terms: Vec<PowerTerm<T>>,
    drop_tol: T,
}

impl<T: Scalar> Default for PolyExpr<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> PolyExpr<T> {
    pub fn zero() -> Self {
        Self { terms: Vec::new(), drop_tol: T::drop_tol() }
    }

    pub fn constant(c: T) -> Self {
        Self::from_terms([PowerTerm::constant(c)])
    }

    pub fn monomial(coeff: T, exps: [T; 4]) -> Self {
        Self::from_terms([PowerTerm::new(coeff, exps)])
    }

    /// `coeff · axis^exponent`.
    pub fn power(coeff: T, axis: Axis, exponent: T) -> Self {
        Self::from_terms([PowerTerm::on_axis(coeff, axis, exponent)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = PowerTerm<T>>) -> Self {
        Self::from_terms_with_tol(terms, T::drop_tol())
    }

    pub fn from_terms_with_tol(terms: impl IntoIterator<Item = PowerTerm<T>>, drop_tol: T) -> Self {
        let mut out = Self { terms: Vec::new(), drop_tol };
        for t in terms {
            out.push_raw(t);
        }
        out.normalize();
        out
    }

    /// Same terms, different dust threshold.
    pub fn with_drop_tol(mut self, drop_tol: T) -> Self {
        self.drop_tol = drop_tol;
        self.normalize();
        self
    }

    pub fn drop_tol(&self) -> T {
        self.drop_tol
    }

    fn push_raw(&mut self, t: PowerTerm<T>) {
        match self.terms.iter_mut().find(|s| s.same_monomial(&t)) {
            Some(s) => s.coeff = s.coeff + t.coeff,
            None => self.terms.push(t),
        }
    }

    fn normalize(&mut self) {
        let tol = self.drop_tol;
        self.terms.retain(|t| t.coeff.abs() >= tol);
        self.terms.sort_by(|a, b| cmp_exps(&b.exps, &a.exps));
    }

    pub fn terms(&self) -> &[PowerTerm<T>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs_coeff(&self) -> T {
        self.terms.iter().fold(T::zero(), |m, t| m.max(t.coeff.abs()))
    }

    /// Coefficient of the monomial with exponents `exps`, zero if absent.
    pub fn coeff_of(&self, exps: [T; 4]) -> T {
        let probe = PowerTerm::new(T::one(), exps);
        self.terms.iter().find(|t| t.same_monomial(&probe)).map_or(T::zero(), |t| t.coeff)
    }

    pub fn scale(&self, k: T) -> Self {
        Self::from_terms_with_tol(
            self.terms.iter().map(|t| PowerTerm { coeff: t.coeff * k, exps: t.exps }),
            self.drop_tol,
        )
    }

    pub fn mul_term(&self, m: &PowerTerm<T>) -> Self {
        Self::from_terms_with_tol(self.terms.iter().map(|t| t.mul_term(m)), self.drop_tol)
    }

    /// Riemann-Liouville derivative of order `order` (lower terminal 0)
    /// along `axis`, term by term through the power rule. Negative orders
    /// are fractional integrals.
    pub fn rl_derive(&self, axis: Axis, order: T) -> Result<Self, DomainError> {
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if let Some(d) = t.rl_derive(axis, order)? {
                out.push(d);
            }
        }
        Ok(Self::from_terms_with_tol(out, self.drop_tol))
    }

    /// Partial derivative in the operator sense: like [`Self::rl_derive`],
    /// but a term with exponent 0 on `axis` is constant along it, so any
    /// positive order annihilates it. Integrals are unchanged.
    pub fn rl_partial(&self, axis: Axis, order: T) -> Result<Self, DomainError> {
        if order <= T::zero() {
            return self.rl_derive(axis, order);
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for t in self.terms.iter().filter(|t| !t.exponent(axis).is_zero()) {
            if let Some(d) = t.rl_derive(axis, order)? {
                out.push(d);
            }
        }
        Ok(Self::from_terms_with_tol(out, self.drop_tol))
    }

    pub fn eval(&self, point: &Point<T>) -> Result<T, EvalError> {
        self.terms.iter().try_fold(T::zero(), |acc, t| Ok(acc + t.eval(point)?))
    }

    /// True when every exponent on `axis` is a non-negative integer.
    pub fn is_polynomial_in(&self, axis: Axis) -> bool {
        self.terms.iter().all(|t| {
            let e = t.exponent(axis);
            e >= T::zero() && is_integer(e)
        })
    }

    pub fn degree_in(&self, axis: Axis) -> Option<T> {
        self.terms.iter().map(|t| t.exponent(axis)).fold(None, |m, e| Some(m.map_or(e, |m: T| m.max(e))))
    }

    /// Largest coefficient-wise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.clone() - other.clone()).with_drop_tol(T::zero()).max_abs_coeff()
    }
}

fn cmp_exps<T: Scalar>(a: &[T; 4], b: &[T; 4]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    Ordering::Equal
}

impl<T: Scalar> Add for PolyExpr<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let tol = self.drop_tol.min(rhs.drop_tol);
        Self::from_terms_with_tol(self.terms.into_iter().chain(rhs.terms), tol)
    }
}

impl<T: Scalar> Sub for PolyExpr<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for PolyExpr<T> {
    type Output = Self;

    fn neg(mut self) -> Self {
        for t in &mut self.terms {
            t.coeff = -t.coeff;
        }
        self
    }
}

impl<T: Scalar> Mul for &PolyExpr<T> {
    type Output = PolyExpr<T>;

    fn mul(self, rhs: Self) -> PolyExpr<T> {
        let tol = self.drop_tol.min(rhs.drop_tol);
        PolyExpr::from_terms_with_tol(self.terms.iter().flat_map(|a| rhs.terms.iter().map(move |b| a.mul_term(b))), tol)
    }
}

impl<T: Scalar> Mul for PolyExpr<T> {
    type Output = PolyExpr<T>;

    fn mul(self, rhs: Self) -> PolyExpr<T> {
        &self * &rhs
    }
}

fn fmt_number(v: f64) -> String {
    let s = format!("{v:.10}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

/// Renders one term; `signed` controls whether a leading minus is kept.
fn render_term<T: Scalar>(t: &PowerTerm<T>, signed: bool) -> String {
    let c = t.coeff.to_f64().unwrap_or(f64::NAN);
    let mag = if signed { c } else { c.abs() };
    let factors: Vec<String> = Axis::ALL
        .iter()
        .filter_map(|&a| {
            let e = t.exponent(a).to_f64().unwrap_or(f64::NAN);
            if e == 0.0 {
                None
            } else if e == 1.0 {
                Some(a.to_string())
            } else {
                Some(format!("{a}^{}", fmt_number(e)))
            }
        })
        .collect();
    if factors.is_empty() {
        return fmt_number(mag);
    }
    let coeff = fmt_number(mag);
    let body = factors.join("*");
    match coeff.as_str() {
        "1" => body,
        "-1" => format!("-{body}"),
        _ => format!("{coeff}*{body}"),
    }
}

/// Canonical rendering: terms sorted by exponent vector (descending,
/// lexicographic in x, y, z, t), coefficients to ten decimals.
impl<T: Scalar> fmt::Display for PolyExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coeff < T::zero();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            write!(f, "{}", render_term(t, false))?;
        }
        Ok(())
    }
}
