//! Coefficients of the associated q-Askey-Wilson recurrence
//!
//! `X_{n+1} - (z - a'_n) X_n + b'^2_n X_{n-1} = 0`,
//!
//! where the shift `q^n -> epsilon q^n` turns the classical Askey-Wilson
//! coefficients into the associated ones, and the monic polynomials generated
//! by it from `P_{-1} = 0`, `P_0 = 1`.

use alloc::format;
use alloc::vec::Vec;

use crate::dd::Cdd;
use crate::error::{Error, Result};
use crate::hyperseries::w_value;
use crate::qcore::{nonzero_factor, powi, qpoch_finite, rel_diff, QBase, ToleranceConfig, C64};

/// Tolerance used to decide that a complex quantity is real, or that
/// `epsilon = 1`.
pub const REAL_TOL: f64 = 1e-12;

/// Base, the four Askey-Wilson parameters and the association parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParameters {
    pub q: QBase,
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub delta: C64,
    pub epsilon: C64,
}

impl QParameters {
    pub fn new(q: QBase, alpha: C64, beta: C64, gamma: C64, delta: C64, epsilon: C64) -> Result<Self> {
        if epsilon.norm() == 0.0 {
            return Err(Error::domain("epsilon must be nonzero"));
        }
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)] {
            if v.norm() == 0.0 || !v.norm().is_finite() {
                return Err(Error::domain(format!("{name} must be finite and nonzero")));
            }
        }
        Ok(QParameters { q, alpha, beta, gamma, delta, epsilon })
    }

    /// All-real convenience constructor.
    pub fn real(q: f64, alpha: f64, beta: f64, gamma: f64, delta: f64, epsilon: f64) -> Result<Self> {
        let r = |x| C64::new(x, 0.0);
        Self::new(QBase::real(q)?, r(alpha), r(beta), r(gamma), r(delta), r(epsilon))
    }

    pub fn with_epsilon(&self, epsilon: C64) -> Result<Self> {
        Self::new(self.q, self.alpha, self.beta, self.gamma, self.delta, epsilon)
    }

    /// `s = alpha beta gamma delta`.
    pub fn s(&self) -> C64 {
        self.alpha * self.beta * self.gamma * self.delta
    }

    pub fn abcd(&self) -> [C64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    /// The six pair products `alpha beta, alpha gamma, alpha delta, beta gamma,
    /// beta delta, gamma delta`.
    pub fn pairs(&self) -> [C64; 6] {
        let (a, b, c, d) = (self.alpha, self.beta, self.gamma, self.delta);
        [a * b, a * c, a * d, b * c, b * d, c * d]
    }

    /// `q^v = epsilon q^n` for the shifted index `v = n + log(epsilon)/log(q)`.
    pub fn q_shift(&self, n: i64) -> C64 {
        self.epsilon * self.q.pow(n)
    }

    pub fn is_classical(&self) -> bool {
        (self.epsilon - C64::new(1.0, 0.0)).norm() <= REAL_TOL
    }

    pub fn all_real(&self) -> bool {
        let real = |z: C64| z.im.abs() <= REAL_TOL * z.norm().max(1.0);
        real(self.q.value()) && self.abcd().iter().all(|&z| real(z)) && real(self.epsilon)
    }

    /// Numerical test of real orthogonality: real parameters, `a'_n` real and
    /// `b'^2_{n+1} > 0` for `n = 0..=n_max`.
    pub fn real_orthogonality(&self, n_max: usize) -> bool {
        if !self.all_real() {
            return false;
        }
        for n in 0..=n_max as i64 {
            let Ok(c) = coefficients(self, n) else { return false };
            let Ok(next) = coefficients(self, n + 1) else { return false };
            if c.a.im.abs() > REAL_TOL * c.a.norm().max(1.0) {
                return false;
            }
            if !(next.b2.re > 0.0) || next.b2.im.abs() > REAL_TOL * next.b2.norm() {
                return false;
            }
        }
        true
    }
}

/// `A_n`, `B_n`, `a_n = -A_n - B_n + alpha/2 + 1/(2 alpha)` and
/// `b^2_n = A_{n-1} B_n` at one index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceCoefficients {
    pub n: i64,
    pub a_upper: C64,
    pub b_upper: C64,
    pub a: C64,
    pub b2: C64,
}

fn coeff_a(p: &QParameters, n: i64) -> Result<C64> {
    let q = p.q;
    let (al, s, eps) = (p.alpha, p.s(), p.epsilon);
    let one = C64::new(1.0, 0.0);
    let en = eps * q.pow(n);
    let d1 = nonzero_factor(s * eps * eps * q.pow(2 * n - 1), "1 - s eps^2 q^(2n-1)", Some(n))?;
    let d2 = nonzero_factor(s * eps * eps * q.pow(2 * n), "1 - s eps^2 q^(2n)", Some(n))?;
    let num = (one - s * eps * q.pow(n - 1))
        * (one - al * p.beta * en)
        * (one - al * p.gamma * en)
        * (one - al * p.delta * en);
    Ok(num / (2.0 * al * d1 * d2))
}

fn coeff_b(p: &QParameters, n: i64) -> Result<C64> {
    let q = p.q;
    let (al, be, ga, de, s, eps) = (p.alpha, p.beta, p.gamma, p.delta, p.s(), p.epsilon);
    let one = C64::new(1.0, 0.0);
    let em = eps * q.pow(n - 1);
    let d1 = nonzero_factor(s * eps * eps * q.pow(2 * n - 2), "1 - s eps^2 q^(2n-2)", Some(n))?;
    let d2 = nonzero_factor(s * eps * eps * q.pow(2 * n - 1), "1 - s eps^2 q^(2n-1)", Some(n))?;
    let num = al * (one - eps * q.pow(n)) * (one - be * ga * em) * (one - be * de * em) * (one - ga * de * em);
    Ok(num / (2.0 * d1 * d2))
}

/// Recurrence coefficients at index `n` (any integer; `n = 0` gives
/// `b'^2_0 = A'_{-1} B'_0`, which Pincherle's formula consumes).
pub fn coefficients(p: &QParameters, n: i64) -> Result<RecurrenceCoefficients> {
    let a_upper = coeff_a(p, n)?;
    let b_upper = coeff_b(p, n)?;
    let a_prev = coeff_a(p, n - 1)?;
    let a = -a_upper - b_upper + p.alpha / 2.0 + (2.0 * p.alpha).inv();
    Ok(RecurrenceCoefficients { n, a_upper, b_upper, a, b2: a_prev * b_upper })
}

/// Coefficients for `n = 0..=n_max`.
pub fn coefficient_table(p: &QParameters, n_max: usize) -> Result<Vec<RecurrenceCoefficients>> {
    (0..=n_max as i64).map(|n| coefficients(p, n)).collect()
}

/// Classical Askey-Wilson coefficients, transcribed with `q^n` and no
/// association parameter. Independent of [`coefficients`].
pub fn classical_coefficients(q: QBase, [al, be, ga, de]: [C64; 4], n: i64) -> Result<RecurrenceCoefficients> {
    let one = C64::new(1.0, 0.0);
    let s = al * be * ga * de;
    let big_a = |n: i64| -> Result<C64> {
        let qn = q.pow(n);
        let den = 2.0
            * al
            * nonzero_factor(s * q.pow(2 * n - 1), "1 - s q^(2n-1)", Some(n))?
            * nonzero_factor(s * q.pow(2 * n), "1 - s q^(2n)", Some(n))?;
        Ok((one - s * q.pow(n - 1)) * (one - al * be * qn) * (one - al * ga * qn) * (one - al * de * qn) / den)
    };
    let big_b = |n: i64| -> Result<C64> {
        let qm = q.pow(n - 1);
        let den = 2.0
            * nonzero_factor(s * q.pow(2 * n - 2), "1 - s q^(2n-2)", Some(n))?
            * nonzero_factor(s * q.pow(2 * n - 1), "1 - s q^(2n-1)", Some(n))?;
        Ok(al * (one - q.pow(n)) * (one - be * ga * qm) * (one - be * de * qm) * (one - ga * de * qm) / den)
    };
    let (a_upper, b_upper) = (big_a(n)?, big_b(n)?);
    Ok(RecurrenceCoefficients {
        n,
        a_upper,
        b_upper,
        a: -a_upper - b_upper + al / 2.0 + (2.0 * al).inv(),
        b2: big_a(n - 1)? * b_upper,
    })
}

/// A point `z = (u + 1/u)/2` with the branch `|u| >= 1`.
///
/// On the cut `z = x in [-1, 1]` the point is stored as the limit from the
/// upper half-plane, `u = e^{i theta}` with `x = cos theta`, `theta in [0, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub z: C64,
    pub u: C64,
    pub theta: Option<f64>,
}

impl SpectralPoint {
    pub fn from_z(z: C64) -> Self {
        if z.im == 0.0 && z.re.abs() <= 1.0 {
            return Self::on_cut(z.re);
        }
        let one = C64::new(1.0, 0.0);
        let root = (z * z - one).sqrt();
        let mut u = z + root;
        if u.norm() < 1.0 {
            u = z - root;
        }
        SpectralPoint { z, u, theta: None }
    }

    /// `x = cos theta`, `u = e^{i theta}`.
    pub fn on_cut(x: f64) -> Self {
        let theta = libm::acos(x.clamp(-1.0, 1.0));
        let u = C64::from_polar(1.0, theta);
        SpectralPoint { z: C64::new(x, 0.0), u, theta: Some(theta) }
    }

    /// Builds the point from `u`; `|u| < 1` is replaced by `1/u`, which
    /// gives the same `z`.
    pub fn from_u(u: C64) -> Result<Self> {
        if u.norm() == 0.0 || !u.norm().is_finite() {
            return Err(Error::domain("u must be finite and nonzero"));
        }
        let u = if u.norm() < 1.0 { u.inv() } else { u };
        let z = (u + u.inv()) / 2.0;
        let theta = if (u.norm() - 1.0).abs() <= 1e-15 { Some(libm::atan2(u.im, u.re)) } else { None };
        Ok(SpectralPoint { z, u, theta })
    }

    pub fn on_unit_circle(&self, band: f64) -> bool {
        (self.u.norm() - 1.0).abs() <= band
    }
}

/// `P_0 .. P_{n_max}` at `z` by forward recurrence.
pub fn assoc_polynomial_values(p: &QParameters, n_max: usize, z: C64) -> Result<Vec<C64>> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut prev = C64::new(0.0, 0.0);
    let mut cur = C64::new(1.0, 0.0);
    out.push(cur);
    for k in 0..n_max as i64 {
        let c = coefficients(p, k)?;
        let next = (z - c.a) * cur - c.b2 * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    Ok(out)
}

/// Associated monic polynomial `P_n(z; epsilon)`.
pub fn eval_assoc_polynomial(p: &QParameters, n: usize, pt: &SpectralPoint) -> Result<C64> {
    Ok(*assoc_polynomial_values(p, n, pt.z)?.last().expect("nonempty"))
}

fn require_classical(p: &QParameters) -> Result<()> {
    if !p.is_classical() {
        return Err(Error::domain(format!("explicit Askey-Wilson forms need epsilon = 1, got {}", p.epsilon)));
    }
    Ok(())
}

/// Monic Askey-Wilson polynomial from the terminating balanced `4phi3` form.
pub fn eval_aw_4phi3(p: &QParameters, n: usize, pt: &SpectralPoint, _tol: &ToleranceConfig) -> Result<C64> {
    require_classical(p)?;
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let q = p.q;
    let (al, s, u) = (p.alpha, p.s(), pt.u);
    let ni = n as i64;
    let sq = s / q.value();
    let den_pair = qpoch_finite(sq, q, 2 * n);
    if den_pair.norm() == 0.0 {
        return Err(Error::pole("(s/q; q)_2n", Some(ni)));
    }
    let [ab, ac, ad, ..] = p.pairs();
    for (name, x) in [("(alpha beta; q)_n", ab), ("(alpha gamma; q)_n", ac), ("(alpha delta; q)_n", ad)] {
        if qpoch_finite(x, q, n).norm() == 0.0 {
            return Err(Error::pole(name, Some(ni)));
        }
    }
    let pref = qpoch_finite(ab, q, n) * qpoch_finite(ac, q, n) * qpoch_finite(ad, q, n) * qpoch_finite(sq, q, n)
        / (powi(2.0 * al, ni) * den_pair);
    Ok(pref * terminating_4phi3(p, n, u))
}

/// The terminating `4phi3` sum carried in double-double, since its terms
/// alternate and can exceed the sum by many orders of magnitude.
fn terminating_4phi3(p: &QParameters, n: usize, u: C64) -> C64 {
    let q = Cdd::from_c64(p.q.value());
    let [al, be, ga, de] = p.abcd().map(Cdd::from_c64);
    let ud = Cdd::from_c64(u);
    let s = al * be * ga * de;
    let ni = n as i64;
    let num = [q.powi(-ni), s * q.powi(ni - 1), al * ud, al / ud];
    let den = [al * be, al * ga, al * de];
    let mut term = Cdd::ONE;
    let mut sum = Cdd::ONE;
    let mut qk = Cdd::ONE;
    for _ in 0..n {
        let mut r = q;
        for a in num {
            r = r * (Cdd::ONE - a * qk);
        }
        let mut d = Cdd::ONE - qk * q;
        for b in den {
            d = d * (Cdd::ONE - b * qk);
        }
        term = term * r / d;
        if term.is_zero() {
            break;
        }
        sum = sum + term;
        qk = qk * q;
    }
    sum.to_c64()
}

/// Monic Askey-Wilson polynomial from the form symmetric in
/// `alpha, beta, gamma, delta`.
pub fn eval_aw_symmetric(p: &QParameters, n: usize, pt: &SpectralPoint, tol: &ToleranceConfig) -> Result<C64> {
    require_classical(p)?;
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let q = p.q;
    let (s, u) = (p.s(), pt.u);
    let ni = n as i64;
    let sq = s / q.value();
    let den = qpoch_finite(sq, q, 2 * n) * qpoch_finite(u * u, q, n);
    if den.norm() == 0.0 {
        return Err(Error::pole("(s/q; q)_2n (u^2; q)_n", Some(ni)));
    }
    let num: C64 = p.abcd().iter().map(|&x| qpoch_finite(x * u, q, n)).product::<C64>() * qpoch_finite(sq, q, n);
    let w = w_value(q.pow(-ni) / (u * u), [q.pow(-ni), p.alpha / u, p.beta / u, p.gamma / u, p.delta / u], q, tol)?;
    Ok(powi(2.0 * u, -ni) * num / den * w)
}

/// Residual of the reflection symmetry `v -> -v-1`,
/// `(alpha, .., delta) -> (q/alpha, .., q/delta)`:
///
/// `a_{-v-1}(q/alpha, ..) = a_v(alpha, ..)` and
/// `b^2_{-v-1}(q/alpha, ..) = b^2_{v+1}(alpha, ..)`,
///
/// with the reflected side evaluated at index `n` and shift
/// `epsilon' = 1 / (epsilon q^{2n+1})`.
pub fn reflection_residual(p: &QParameters, n: i64) -> Result<f64> {
    let qv = p.q.value();
    let eps_r = (p.epsilon * p.q.pow(2 * n + 1)).inv();
    let refl = QParameters::new(p.q, qv / p.alpha, qv / p.beta, qv / p.gamma, qv / p.delta, eps_r)?;
    let here = coefficients(p, n)?;
    let next = coefficients(p, n + 1)?;
    let there = coefficients(&refl, n)?;
    Ok(rel_diff(here.a, there.a).max(rel_diff(next.b2, there.b2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{c64, real};

    fn derived() -> QParameters {
        QParameters::real(0.5, 0.3, 0.25, 0.2, 0.15, 0.5).unwrap()
    }

    #[test]
    fn b_prime_zero_vanishes_at_unit_epsilon() {
        let p = derived().with_epsilon(real(1.0)).unwrap();
        let c = coefficients(&p, 0).unwrap();
        assert_eq!(c.b_upper, real(0.0));
        assert_eq!(c.b2, real(0.0));
    }

    #[test]
    fn unit_epsilon_matches_classical() {
        let p = QParameters::new(
            QBase::real(0.6).unwrap(),
            c64(0.3, 0.1),
            real(0.45),
            c64(-0.2, 0.3),
            real(0.7),
            real(1.0),
        )
        .unwrap();
        for n in 0..12 {
            let a = coefficients(&p, n).unwrap();
            let b = classical_coefficients(p.q, p.abcd(), n).unwrap();
            assert!(rel_diff(a.a, b.a) < 1e-14, "n = {n}");
            assert!((a.b2 - b.b2).norm() <= 1e-14 * a.b2.norm().max(1e-300), "n = {n}");
        }
    }

    #[test]
    fn pole_is_named() {
        // s eps^2 q^(2n) = 1 at n = 0 with s eps^2 = 1.
        let p = QParameters::real(0.5, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        match coefficients(&p, 0).unwrap_err() {
            Error::Pole { factor, index } => {
                assert!(factor.contains("s eps^2"));
                assert_eq!(index, Some(0));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn low_order_polynomials() {
        let p = derived();
        let pt = SpectralPoint::from_z(c64(0.7, 0.4));
        assert_eq!(eval_assoc_polynomial(&p, 0, &pt).unwrap(), real(1.0));
        let a0 = coefficients(&p, 0).unwrap().a;
        assert!(rel_diff(eval_assoc_polynomial(&p, 1, &pt).unwrap(), pt.z - a0) < 1e-15);
    }

    #[test]
    fn explicit_forms_at_low_order() {
        let tol = ToleranceConfig::default();
        let p = derived().with_epsilon(real(1.0)).unwrap();
        let pt = SpectralPoint::from_z(c64(0.3, 0.8));
        assert_eq!(eval_aw_4phi3(&p, 0, &pt, &tol).unwrap(), real(1.0));
        assert_eq!(eval_aw_symmetric(&p, 0, &pt, &tol).unwrap(), real(1.0));
        let a0 = classical_coefficients(p.q, p.abcd(), 0).unwrap().a;
        assert!(rel_diff(eval_aw_4phi3(&p, 1, &pt, &tol).unwrap(), pt.z - a0) < 1e-13);
        assert!(eval_aw_4phi3(&derived(), 2, &pt, &tol).is_err());
    }

    #[test]
    fn symmetric_form_is_permutation_invariant() {
        let tol = ToleranceConfig::default();
        let pt = SpectralPoint::from_z(c64(1.4, 0.3));
        let base = QParameters::real(0.5, 0.3, 0.25, 0.2, 0.15, 1.0).unwrap();
        let perm = QParameters::real(0.5, 0.15, 0.3, 0.25, 0.2, 1.0).unwrap();
        for n in 1..6 {
            let a = eval_aw_symmetric(&base, n, &pt, &tol).unwrap();
            let b = eval_aw_symmetric(&perm, n, &pt, &tol).unwrap();
            assert!(rel_diff(a, b) < 1e-12);
        }
    }

    #[test]
    fn reflection_unit_epsilon_index_zero() {
        let p = derived().with_epsilon(real(1.0)).unwrap();
        assert!(reflection_residual(&p, 0).unwrap() < 1e-12);
    }

    #[test]
    fn spectral_point_branches() {
        let pt = SpectralPoint::from_z(real(2.0));
        assert!(pt.u.norm() >= 1.0);
        assert!(rel_diff((pt.u + pt.u.inv()) / 2.0, pt.z) < 1e-15);
        let cut = SpectralPoint::from_z(real(0.25));
        assert!((cut.u.norm() - 1.0).abs() < 1e-15);
        assert!(cut.u.im > 0.0);
        let above = SpectralPoint::from_z(c64(0.25, 1e-9));
        assert!((above.u - cut.u).norm() < 1e-6);
        let inner = SpectralPoint::from_u(c64(0.3, 0.2)).unwrap();
        assert!(inner.u.norm() > 1.0);
        for z in [c64(-3.0, 0.5), c64(0.1, -2.0), c64(-0.5, -1e-3)] {
            let pt = SpectralPoint::from_z(z);
            assert!(pt.u.norm() >= 1.0);
            assert!(rel_diff((pt.u + pt.u.inv()) / 2.0, z) < 1e-12);
        }
    }

    #[test]
    fn real_orthogonality_detection() {
        let p = QParameters::real(0.5, 0.4, 0.4, 0.4, 0.4, 0.5).unwrap();
        assert!(p.real_orthogonality(30));
        let c = QParameters::new(QBase::real(0.5).unwrap(), c64(0.4, 0.2), real(0.4), real(0.4), real(0.4), real(0.5))
            .unwrap();
        assert!(!c.real_orthogonality(30));
    }
}
