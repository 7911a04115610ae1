//! Pass/fail checks of the operator identities, the gauge-field construction
//! and the quadrature oracle, as JSON-serializable reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{Axis, DomainError, PolyExpr, PowerTerm};
use crate::numeric::{NumericError, RlQuadrature, DEFAULT_NODES};
use crate::operator::{
    build_h, build_j, build_jz, build_k, build_kz, build_lz, build_p, build_sz, check_constant_field, commutator,
    curl_frac, gamma_connection, gauge_field_a, mixed_xy, omega_connection, reduced_connection, vector_operator_diff,
    ComplexPoly, GaugeError, OperatorExpr,
};
use crate::specfun::gamma;
use crate::spectrum::{casimir_lz, Sign};

/// Seed of the random monomial families.
pub const MONOMIAL_SEED: u64 = 0x5eed_f2ac;

pub const IDENTITY_TOL: f64 = 1e-10;
pub const EXACT_TOL: f64 = 1e-12;
pub const NONZERO_FLOOR: f64 = 1e-6;
pub const QUAD_REL_TOL: f64 = 1e-6;

const COMMUTATOR_ALPHAS: [f64; 4] = [0.3, 0.5, 0.75, 0.9];
const FIELD_ALPHAS: [f64; 3] = [0.112, 0.5, 0.9];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
}

/// Whether a case passes by staying below or by exceeding its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Below,
    Above,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckCase {
    pub label: String,
    pub value: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub expect: Expect,
    pub tolerance: f64,
    pub passed: bool,
    pub worst: f64,
    pub cases: Vec<CheckCase>,
}

impl CheckReport {
    fn new(name: &str, expect: Expect, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            expect,
            tolerance,
            passed: true,
            worst: match expect {
                Expect::Below => 0.0,
                Expect::Above => f64::INFINITY,
            },
            cases: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, value: f64) {
        let passed = match self.expect {
            Expect::Below => value < self.tolerance,
            Expect::Above => value > self.tolerance,
        };
        self.worst = match self.expect {
            Expect::Below => self.worst.max(value),
            Expect::Above => self.worst.min(value),
        };
        self.passed &= passed;
        self.cases.push(CheckCase { label: label.into(), value, passed });
    }
}

/// A named group of reports, as emitted by one `verify` subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct Suite {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl Suite {
    fn new(name: &str, checks: Vec<CheckReport>) -> Self {
        Self { suite: name.to_string(), passed: checks.iter().all(|c| c.passed), checks }
    }
}

fn monomial(exps: [f64; 3]) -> ComplexPoly<f64> {
    PolyExpr::monomial(1.0, [exps[0], exps[1], exps[2], 0.0]).into()
}

/// `n` unit monomials in x, y, z with exponents uniform in [2, 6].
pub fn random_monomials(n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| [rng.gen_range(2.0..=6.0), rng.gen_range(2.0..=6.0), rng.gen_range(2.0..=6.0)]).collect()
}

fn label(alpha: f64, e: &[f64; 3]) -> String {
    format!("alpha={alpha} f=x^{:.4}*y^{:.4}*z^{:.4}", e[0], e[1], e[2])
}

fn apply(op: &OperatorExpr<f64>, f: &ComplexPoly<f64>) -> Result<ComplexPoly<f64>, DomainError> {
    op.apply(f)
}

/// Closed form against Gauss-Jacobi quadrature on the standard grid.
pub fn verify_quad() -> Result<Suite, VerifyError> {
    let mut rep = CheckReport::new("quadrature vs power rule", Expect::Below, QUAD_REL_TOL);
    for alpha in [0.112, 0.3, 0.5, 0.9] {
        let q = RlQuadrature::new(alpha, DEFAULT_NODES)?;
        for nu in [0.0, 0.5, 1.0, 2.3] {
            let closed = PolyExpr::power(1.0, Axis::X, nu).rl_derive(Axis::X, alpha)?;
            for x in [0.5, 1.0, 2.0] {
                let exact = closed.eval(&crate::expr::Point::new().with(Axis::X, x)).expect("x supplied");
                let num = q.derivative(|s: f64| s.powf(nu), x)?;
                rep.push(format!("nu={nu} alpha={alpha} x={x}"), ((num - exact) / exact).abs());
            }
        }
    }
    Ok(Suite::new("quad", vec![rep]))
}

/// Fractional curl of the gauge potential and the constant-field conditions.
pub fn verify_zeeman_field() -> Result<Suite, VerifyError> {
    let mut coeff = CheckReport::new("B_z coefficient Gamma(2a)/Gamma(a)", Expect::Below, EXACT_TOL);
    let mut constant = CheckReport::new("constant-field conditions", Expect::Below, EXACT_TOL);
    let b = 1.0;
    for a in FIELD_ALPHAS {
        let field = gauge_field_a(b, a)?;
        let curl = curl_frac(&field)?;
        let c = b / 2.0 * gamma(2.0 * a).expect("2a > 0") / gamma(a).expect("a > 0");
        let expect = PolyExpr::from_terms([
            PowerTerm::new(c, [1.0 - a, a - 1.0, a - 1.0, 0.0]),
            PowerTerm::new(c, [a - 1.0, 1.0 - a, a - 1.0, 0.0]),
        ]);
        coeff.push(format!("alpha={a} B_z"), curl[2].max_abs_diff(&expect));
        coeff.push(format!("alpha={a} B_x,B_y"), curl[0].max_abs_coeff().max(curl[1].max_abs_coeff()));
        let r = check_constant_field(&curl[2], a)?;
        for (name, res) in ["dx dy B_z", "dy dx B_z", "dz B_z"].iter().zip(r.residuals.iter()) {
            constant.push(format!("alpha={a} {name}"), res.max_abs_coeff());
        }
    }
    Ok(Suite::new("zeeman-field", vec![coeff, constant]))
}

/// Charge connection series: truncation, Γ̂ = Ω̂, closed form, and the
/// reduction of the interaction term to a fractional `L̂_z`.
pub fn verify_connection() -> Result<Suite, VerifyError> {
    let mut trunc = CheckReport::new("K-independence (K=1 vs K=5)", Expect::Below, EXACT_TOL);
    let mut equal = CheckReport::new("Gamma-hat equals Omega-hat", Expect::Below, EXACT_TOL);
    let mut closed = CheckReport::new("single-term closed form", Expect::Below, EXACT_TOL);
    let mut zeeman = CheckReport::new("interaction term reduces to L_z(2a-1)", Expect::Below, IDENTITY_TOL);
    let b = 1.0;
    let family = random_monomials(10, MONOMIAL_SEED ^ 0xc0);
    for a in FIELD_ALPHAS {
        let field = gauge_field_a(b, a)?;
        let g1 = gamma_connection(&field, 1)?;
        let g5 = gamma_connection(&field, 5)?;
        let o5 = omega_connection(&field, 5)?;
        trunc.push(format!("alpha={a}"), vector_operator_diff(&g1, &g5));
        equal.push(format!("alpha={a}"), vector_operator_diff(&g5, &o5));
        closed.push(format!("alpha={a}"), vector_operator_diff(&g1, &reduced_connection(b, a)));

        let c = a * gamma(2.0 - a).expect("2 - a > 0") * b / 2.0;
        let rhs_op = build_lz(2.0 * a - 1.0).premultiply(&PowerTerm::on_axis(2.0 * c, Axis::Z, a - 1.0)).times_i();
        for e in &family {
            let f = monomial(*e);
            let mut lhs = ComplexPoly::zero();
            for axis in Axis::SPATIAL {
                let d = OperatorExpr::derivative(axis, a);
                let i = axis.index();
                lhs = lhs + apply(&d, &apply(&g5[i], &f)?)? + apply(&o5[i], &apply(&d, &f)?)?;
            }
            let rhs = apply(&rhs_op, &f)?;
            zeeman.push(label(a, e), lhs.max_abs_diff(&rhs));
        }
    }
    Ok(Suite::new("connection", vec![trunc, equal, closed, zeeman]))
}

/// Commutators with the free Hamiltonian.
pub fn verify_commutators() -> Result<Suite, VerifyError> {
    let m = 1.0;
    let family = random_monomials(50, MONOMIAL_SEED);
    let mut theorem = CheckReport::new("[J_z, H] = 0", Expect::Below, IDENTITY_TOL);
    let mut broken = CheckReport::new("[L_z, H] on x^3 y^3 is nonzero", Expect::Above, NONZERO_FLOOR);
    let mut lz_formula = CheckReport::new("[L_z, H] = -i a (dx^(2a-1) dy - dx dy^(2a-1))", Expect::Below, IDENTITY_TOL);
    let mut kkk = CheckReport::new("[i K_z^b, H] = a (dx^(2a-1) dy^b - dx^b dy^(2a-1))", Expect::Below, IDENTITY_TOL);
    let mut classical = CheckReport::new("[L_z, H] = 0 at alpha = 1", Expect::Below, EXACT_TOL);

    let x3y3 = monomial([3.0, 3.0, 0.0]);
    for a in COMMUTATOR_ALPHAS {
        let h = build_h(a, m);
        let jz = build_jz(a, m);
        let lz = build_lz(1.0);
        for e in &family {
            let f = monomial(*e);
            theorem.push(label(a, e), commutator(&jz, &h, &f)?.max_abs_coeff());
        }

        broken.push(format!("alpha={a}"), commutator(&lz, &h, &x3y3)?.max_abs_coeff());

        let s = 2.0 * a - 1.0;
        let rhs = (mixed_xy(s, 1.0) - mixed_xy(1.0, s)).scale(-a).times_i();
        for f in std::iter::once(x3y3.clone()).chain(family.iter().take(10).map(|e| monomial(*e))) {
            let lhs = commutator(&lz, &h, &f)?;
            lz_formula.push(format!("alpha={a} f={}", f.re), lhs.max_abs_diff(&apply(&rhs, &f)?));
        }

        for beta in [0.4, 0.7, 1.0] {
            let ik = build_kz(beta, m).times_i();
            let rhs = (mixed_xy(s, beta) - mixed_xy(beta, s)).scale(a);
            for e in family.iter().take(10) {
                let f = monomial(*e);
                let lhs = commutator(&ik, &h, &f)?;
                kkk.push(format!("beta={beta} {}", label(a, e)), lhs.max_abs_diff(&apply(&rhs, &f)?));
            }
        }
    }
    let h1 = build_h(1.0, m);
    for e in family.iter().take(10) {
        classical.push(label(1.0, e), commutator(&build_lz(1.0), &h1, &monomial(*e))?.max_abs_coeff());
    }
    Ok(Suite::new("commutators", vec![theorem, broken, lz_formula, kkk, classical]))
}

/// Right side of `[J_a, J_b] = (2α−1)(1/m) J_c p_c^{2(α−1)}`.
fn j_algebra_rhs(c: Axis, a: f64, m: f64, f: &ComplexPoly<f64>) -> Result<ComplexPoly<f64>, DomainError> {
    let p = build_p(c, 2.0 * (a - 1.0), m);
    let jc = build_j(c, a, m);
    Ok(apply(&jc, &apply(&p, f)?)?.scale((2.0 * a - 1.0) / m))
}

/// `(x + i y)^n` expanded into real and imaginary parts.
fn xy_power(n: u32) -> ComplexPoly<f64> {
    let mut re = Vec::new();
    let mut im = Vec::new();
    let mut binom = 1.0;
    for k in 0..=n {
        // i^k (n choose k) x^{n−k} y^k
        let t = PowerTerm::new(binom, [f64::from(n - k), f64::from(k), 0.0, 0.0]);
        match k % 4 {
            0 => re.push(t),
            1 => im.push(t),
            2 => re.push(PowerTerm { coeff: -t.coeff, ..t }),
            _ => im.push(PowerTerm { coeff: -t.coeff, ..t }),
        }
        binom = binom * f64::from(n - k) / f64::from(k + 1);
    }
    ComplexPoly::new(PolyExpr::from_terms(re), PolyExpr::from_terms(im))
}

/// Total angular momentum algebra and the intrinsic part `S_z`.
pub fn verify_spin_algebra() -> Result<Suite, VerifyError> {
    let m = 1.0;
    let mut algebra = CheckReport::new("[J_a, J_b] = (2a-1)/m J_c p_c^(2(a-1))", Expect::Below, IDENTITY_TOL);
    let mut deformed = CheckReport::new("[J_a, J_b] alone is nonzero", Expect::Above, NONZERO_FLOOR);
    let mut spin_zero = CheckReport::new("S_z vanishes at alpha = 1", Expect::Below, EXACT_TOL);
    let mut decomposition = CheckReport::new("J_z - L_z - S_z = 0", Expect::Below, EXACT_TOL);
    let mut casimir = CheckReport::new("L_z eigenvalue on (x+iy)^M matches casimir_lz", Expect::Below, EXACT_TOL);

    let cases: [(f64, [f64; 3]); 4] =
        [(1.0, [2.0, 2.0, 2.0]), (0.75, [3.0, 3.0, 3.0]), (0.9, [3.0, 4.0, 5.0]), (0.6, [4.0, 3.0, 5.0])];
    let cyclic = [(Axis::X, Axis::Y, Axis::Z), (Axis::Y, Axis::Z, Axis::X), (Axis::Z, Axis::X, Axis::Y)];
    for (a, e) in cases {
        let f = monomial(e);
        for (p, q, r) in cyclic {
            let lhs = commutator(&build_j(p, a, m), &build_j(q, a, m), &f)?;
            let rhs = j_algebra_rhs(r, a, m, &f)?;
            let name = format!("[J_{p}, J_{q}] {}", label(a, &e));
            algebra.push(name.clone(), lhs.max_abs_diff(&rhs));
            deformed.push(name, lhs.max_abs_coeff());
        }
    }

    spin_zero.push("S_z(1) terms", build_sz(1.0, m).max_abs_coeff());
    for e in random_monomials(5, MONOMIAL_SEED ^ 0x51) {
        spin_zero.push(label(1.0, &e), apply(&build_sz(1.0, m), &monomial(e))?.max_abs_coeff());
    }
    for a in COMMUTATOR_ALPHAS {
        let d = build_jz(a, m) - build_lz(1.0) - build_sz(a, m);
        decomposition.push(format!("alpha={a}"), d.max_abs_coeff());
    }

    let lz = build_lz(1.0);
    for n in 0..=5u32 {
        let f = xy_power(n);
        let ev = casimir_lz(1.0, n as i32, Sign::Plus);
        casimir.push(format!("M={n}"), apply(&lz, &f)?.max_abs_diff(&f.scale(ev)));
    }
    // K^1 along x and y are the remaining classical generators
    for axis in [Axis::X, Axis::Y] {
        let k = build_k(axis, 1.0, m);
        let j = build_j(axis, 1.0, m);
        decomposition.push(format!("J_{axis}(1) - K_{axis}(1)"), (k - j).max_abs_coeff());
    }
    Ok(Suite::new("spin-algebra", vec![algebra, deformed, spin_zero, decomposition, casimir]))
}

pub fn verify_all() -> Result<Vec<Suite>, VerifyError> {
    Ok(vec![
        verify_quad()?,
        verify_zeeman_field()?,
        verify_connection()?,
        verify_commutators()?,
        verify_spin_algebra()?,
    ])
}
