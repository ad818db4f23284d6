//! Residuals of the contiguous relations between terminating balanced `10phi9`
//! series and their `8phi7` limits.
//!
//! Each relation is a three-term identity `T1 - T2 - T3 = 0`; the residual is
//! `|T1 - T2 - T3| / max |Ti|`, and 0 when all three summands vanish.

use alloc::format;

use crate::aqaw::QParameters;
use crate::error::{Error, Result};
use crate::hyperseries::{eval_vwp, eval_w, VwpW};
use crate::qcore::{nonzero_factor, qpoch_finite, rel_diff, QBase, ToleranceConfig, C64};

const BALANCE_TOL: f64 = 1e-10;

/// Terminating very-well-poised balanced `10phi9` with `h = q^{-n}` and
/// `bcdefgh = a^3 q^2`, argument `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TenPhiNineSpec {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    pub e: C64,
    pub f: C64,
    pub g: C64,
    pub h: C64,
    pub q: QBase,
    pub n: usize,
}

impl TenPhiNineSpec {
    pub fn new(a: C64, [b, c, d, e, f, g]: [C64; 6], q: QBase, n: usize) -> Result<Self> {
        let h = q.pow(-(n as i64));
        let lhs = b * c * d * e * f * g * h;
        let rhs = a * a * a * q.value() * q.value();
        if rel_diff(lhs, rhs) > BALANCE_TOL {
            return Err(Error::domain(format!("10phi9 is not balanced: bcdefgh = {lhs}, a^3 q^2 = {rhs}")));
        }
        Ok(TenPhiNineSpec { a, b, c, d, e, f, g, h, q, n })
    }

    /// Fixes `g` by the balance condition.
    pub fn balanced(a: C64, [b, c, d, e, f]: [C64; 5], q: QBase, n: usize) -> Result<Self> {
        let h = q.pow(-(n as i64));
        let den = b * c * d * e * f * h;
        if den.norm() == 0.0 {
            return Err(Error::domain("balanced 10phi9 needs bcdef != 0"));
        }
        let g = a * a * a * q.value() * q.value() / den;
        Self::new(a, [b, c, d, e, f, g], q, n)
    }

    pub fn params(&self) -> [C64; 7] {
        [self.b, self.c, self.d, self.e, self.f, self.g, self.h]
    }

    pub fn value(&self, tol: &ToleranceConfig) -> Result<C64> {
        Ok(eval_vwp(self.a, &self.params(), self.q.value(), self.q, tol)?.value)
    }

    fn shifted(&self, a: C64, params: [C64; 7]) -> Shifted {
        Shifted { a, params, q: self.q }
    }
}

struct Shifted {
    a: C64,
    params: [C64; 7],
    q: QBase,
}

impl Shifted {
    fn value(&self, tol: &ToleranceConfig) -> Result<C64> {
        Ok(eval_vwp(self.a, &self.params, self.q.value(), self.q, tol)?.value)
    }
}

/// Reversal coefficients `c1, c2, c3` of the reversed-series relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContiguousCoefficients {
    pub c1: C64,
    pub c2: C64,
    pub c3: C64,
}

fn poch_ratio(num: &[C64], den: &[C64], q: QBase, n: usize, what: &str) -> Result<C64> {
    let mut top = C64::new(1.0, 0.0);
    for &x in num {
        top *= qpoch_finite(x, q, n);
    }
    let mut bottom = C64::new(1.0, 0.0);
    for &x in den {
        bottom *= qpoch_finite(x, q, n);
    }
    if bottom.norm() == 0.0 || !bottom.is_finite() {
        return Err(Error::pole(format!("denominator of {what}"), Some(n as i64)));
    }
    Ok(top / bottom)
}

fn sign(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

impl ContiguousCoefficients {
    /// Needs `n >= 1` so that `c2` has a nonnegative order.
    pub fn new(spec: &TenPhiNineSpec) -> Result<Self> {
        let n = spec.n;
        if n == 0 {
            return Err(Error::domain("c2 has order n - 1 and needs n >= 1"));
        }
        let q = spec.q;
        let qv = q.value();
        let (a, b) = (spec.a, spec.b);
        let ra = a.sqrt();
        let g5 = [spec.c, spec.d, spec.e, spec.f, spec.g];
        let ni = n as i64;

        let mut num = [C64::new(0.0, 0.0); 9];
        let mut den = [C64::new(0.0, 0.0); 9];

        num[..3].copy_from_slice(&[ra, -ra, a * qv / b]);
        for (k, &x) in g5.iter().enumerate() {
            num[3 + k] = a * qv / x;
        }
        num[8] = a * q.pow(ni + 1);
        den[..4].copy_from_slice(&[a, qv * ra, -qv * ra, b]);
        den[4..].copy_from_slice(&g5);
        let c1 = poch_ratio(&num, &den, q, n, "c1")? * sign(ni) * q.pow(ni * (ni - 1) / 2);

        let q2 = qv * qv;
        num[..3].copy_from_slice(&[qv * ra, -qv * ra, a * q2 * qv / b]);
        for (k, &x) in g5.iter().enumerate() {
            num[3 + k] = a * q2 / x;
        }
        num[8] = a * q.pow(ni + 2);
        den[..4].copy_from_slice(&[a * q2, q2 * ra, -q2 * ra, b]);
        for (k, &x) in g5.iter().enumerate() {
            den[4 + k] = x * qv;
        }
        let c2 = poch_ratio(&num, &den, q, n - 1, "c2")? * sign(ni - 1) * q.pow((ni - 1) * (ni - 2) / 2);

        num[..3].copy_from_slice(&[ra / qv, -ra / qv, a / (b * qv)]);
        for (k, &x) in g5.iter().enumerate() {
            num[3 + k] = a / x;
        }
        num[8] = a * q.pow(ni);
        den[..4].copy_from_slice(&[a / q2, ra, -ra, b]);
        for (k, &x) in g5.iter().enumerate() {
            den[4 + k] = x / qv;
        }
        let c3 = poch_ratio(&num, &den, q, n + 1, "c3")? * sign(ni + 1) * q.pow(ni * (ni + 1) / 2);

        Ok(ContiguousCoefficients { c1, c2, c3 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationId {
    R2_2,
    R2_3,
    R2_8,
    R2_9,
}

impl RelationId {
    pub const ALL: [RelationId; 4] = [RelationId::R2_2, RelationId::R2_3, RelationId::R2_8, RelationId::R2_9];

    pub fn name(&self) -> &'static str {
        match self {
            RelationId::R2_2 => "R2_2",
            RelationId::R2_3 => "R2_3",
            RelationId::R2_8 => "R2_8",
            RelationId::R2_9 => "R2_9",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.name().eq_ignore_ascii_case(s))
    }
}

impl core::fmt::Display for RelationId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelationInput {
    TenPhiNine(TenPhiNineSpec),
    Vwp(VwpW),
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// `1 - x`, failing when it vanishes (used for displayed denominators).
fn den(x: C64, name: &str) -> Result<C64> {
    nonzero_factor(x, name, None)
}

/// Sorts parameters that enter a relation symmetrically, so permuted inputs
/// give bit-identical residuals.
fn canonical<const N: usize>(mut xs: [C64; N]) -> [C64; N] {
    xs.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    xs
}

fn residual(t1: C64, t2: C64, t3: C64) -> f64 {
    let m = t1.norm().max(t2.norm()).max(t3.norm());
    if m == 0.0 {
        0.0
    } else {
        (t1 - t2 - t3).norm() / m
    }
}

fn w_checked(a: C64, params: [C64; 5], q: QBase, what: &str, tol: &ToleranceConfig) -> Result<C64> {
    let w = VwpW::new(a, params, q);
    if !w.in_domain() {
        return Err(Error::domain(format!("{what}: W argument modulus {} is not below 1", w.argument().norm())));
    }
    Ok(eval_w(&w, tol)?.value)
}

pub fn relation_residual(id: RelationId, input: &RelationInput, tol: &ToleranceConfig) -> Result<f64> {
    match (id, input) {
        (RelationId::R2_2, RelationInput::TenPhiNine(s)) => residual_2_2(s, tol),
        (RelationId::R2_8, RelationInput::TenPhiNine(s)) => residual_2_8(s, tol),
        (RelationId::R2_3, RelationInput::Vwp(w)) => residual_2_3(w, tol),
        (RelationId::R2_9, RelationInput::Vwp(w)) => residual_2_9(w, tol),
        (id, _) => Err(Error::domain(format!("{id} takes the other input kind"))),
    }
}

/// `phi(b-, c+)`, `phi(b+, c-)` relation for the terminating `10phi9`.
pub fn residual_2_2(s: &TenPhiNineSpec, tol: &ToleranceConfig) -> Result<f64> {
    let [d, e, f] = canonical([s.d, s.e, s.f]);
    let s = &TenPhiNineSpec { d, e, f, ..*s };
    let qv = s.q.value();
    let (a, b, c) = (s.a, s.b, s.c);
    let rest = [s.d, s.e, s.f, s.g, s.h];
    let phi = s.value(tol)?;
    let p1 = s.shifted(a, [b / qv, c * qv, s.d, s.e, s.f, s.g, s.h]).value(tol)?;
    let p2 = s.shifted(a, [b * qv, c / qv, s.d, s.e, s.f, s.g, s.h]).value(tol)?;

    let mut k1 = b * (one() - c) * (one() - a / c) * (one() - a * qv / c);
    let mut k2 = c * (one() - b) * (one() - a / b) * (one() - a * qv / b);
    let mut k3 = a * qv / c * (one() - c / b) * (one() - b * c / (a * qv));
    for &x in &rest {
        k1 *= one() - a * qv / (b * x);
        k2 *= one() - a * qv / (c * x);
        k3 *= one() - x;
    }
    k1 /= den(c * qv / b, "1 - cq/b")?;
    k2 /= den(b * qv / c, "1 - bq/c")?;
    Ok(residual(k1 * (p1 - phi), k2 * (p2 - phi), k3 * phi))
}

/// The `n -> infinity` limit of the previous relation, for `W`.
pub fn residual_2_3(w: &VwpW, tol: &ToleranceConfig) -> Result<f64> {
    let q = w.q;
    let qv = q.value();
    let VwpW { a, b, c, .. } = *w;
    let [d, e, f] = canonical([w.d, w.e, w.f]);
    let phi = w_checked(a, [b, c, d, e, f], q, "W", tol)?;
    let w1 = w_checked(a, [b / qv, c * qv, d, e, f], q, "W(b-, c+)", tol)?;
    let w2 = w_checked(a, [b * qv, c / qv, d, e, f], q, "W(b+, c-)", tol)?;
    let kk = b * c * d * e * f / (a * a * qv);
    let mut k1 = kk * (one() - c) * (one() - a / c) * (one() - a * qv / c);
    let mut k2 = kk * (one() - b) * (one() - a / b) * (one() - a * qv / b);
    let mut k3 = a * qv / c * (one() - c / b) * (one() - b * c / (a * qv));
    for x in [d, e, f] {
        k1 *= one() - a * qv / (b * x);
        k2 *= one() - a * qv / (c * x);
        k3 *= one() - x;
    }
    k1 /= den(c * qv / b, "1 - cq/b")?;
    k2 /= den(b * qv / c, "1 - bq/c")?;
    Ok(residual(k1 * (w1 - phi), k2 * (w2 - phi), k3 * phi))
}

/// Relation for the reversed `10phi9` with `phi_+(b-)` and `phi_-(b+)`.
/// Needs `n >= 1`.
pub fn residual_2_8(s: &TenPhiNineSpec, tol: &ToleranceConfig) -> Result<f64> {
    let [c, d, e, f, g] = canonical([s.c, s.d, s.e, s.f, s.g]);
    let s = &TenPhiNineSpec { c, d, e, f, g, ..*s };
    let cc = ContiguousCoefficients::new(s)?;
    let qv = s.q.value();
    let q2 = qv * qv;
    let (a, b, h) = (s.a, s.b, s.h);
    let g5 = [s.c, s.d, s.e, s.f, s.g];
    let phi = s.value(tol)?;
    let up = s.shifted(a * q2, [b, s.c * qv, s.d * qv, s.e * qv, s.f * qv, s.g * qv, h * qv]);
    let down = s.shifted(a / q2, [b, s.c / qv, s.d / qv, s.e / qv, s.f / qv, s.g / qv, h / qv]);
    let pp = up.value(tol)?;
    let pm = down.value(tol)?;

    let mut k1 = b / a * (one() - h) * (one() - h / a) * (one() - h * qv / a);
    let mut k2 = (one() - b * h / a) * (one() - h / b) * (one() - h * qv / b);
    let mut k3 = qv / a * (one() - a / b) * (one() - b / qv);
    for &x in &g5 {
        k1 *= one() - a * qv / (b * x);
        k2 *= one() - qv / x;
        k3 *= one() - h * x / a;
    }
    k1 /= den(a * qv / b, "1 - aq/b")?;
    k2 /= den(b * qv / a, "1 - bq/a")?;
    let base = cc.c1 * phi;
    Ok(residual(k1 * (cc.c2 * pp - base), k2 * (cc.c3 * pm - base), k3 * base))
}

/// The `h -> infinity` limit of the reversed relation, for `W`, with
/// `W_+(b-)` at `(aq^2, b, cq, dq, eq, fq)` and `W_-(b+)` at
/// `(a/q^2, b, c/q, d/q, e/q, f/q)`.
pub fn residual_2_9(w: &VwpW, tol: &ToleranceConfig) -> Result<f64> {
    let q = w.q;
    let qv = q.value();
    let q2 = qv * qv;
    let VwpW { a, b, .. } = *w;
    let [c, d, e, f] = canonical([w.c, w.d, w.e, w.f]);
    let z = w.argument();
    let cdef = [c, d, e, f];
    let base = w_checked(a, [b, c, d, e, f], q, "W", tol)?;
    let wp = w_checked(a * q2, [b, c * qv, d * qv, e * qv, f * qv], q, "W_+(b-)", tol)?;
    let wm = w_checked(a / q2, [b, c / qv, d / qv, e / qv, f / qv], q, "W_-(b+)", tol)?;

    let mut k1 = b / a;
    let mut k2 = one();
    let mut inner_p = z * (one() - a * qv) * (one() - a * q2);
    let mut inner_m = one() / z * (one() - a / (b * qv)) * (one() - a / b);
    let mut dp = den(a * qv / b, "1 - aq/b")? * den(a * q2 / b, "1 - aq^2/b")?;
    let mut dm = den(a / qv, "1 - a/q")? * den(a, "1 - a")?;
    for x in cdef {
        k1 *= one() - a * qv / (b * x);
        k2 *= one() - qv / x;
        inner_p *= one() - x;
        inner_m *= one() - a / x;
        dp *= den(a * qv / x, "1 - aq/x")?;
        dm *= den(x / qv, "1 - x/q")?;
    }
    k1 /= den(a * qv / b, "1 - aq/b")?;
    k2 /= den(b * qv / a, "1 - bq/a")?;
    let k3 = qv / a * (one() - a / b) * (one() - b / qv) * (one() - z);
    Ok(residual(k1 * (inner_p / dp * wp - base), k2 * (inner_m / dm * wm - base), k3 * base))
}

/// `W` parameters `(a; b, c, d, e, f)` obtained by substituting the
/// recurrence parameters at index `n` and argument `u` into the limit
/// relation; the three `W` values then build the third solution.
pub fn solution_substitution(p: &QParameters, n: i64, u: C64) -> VwpW {
    let q = p.q;
    let qn = q.pow(n);
    let eps = p.epsilon;
    let (al, be, ga, de) = (p.alpha, p.beta, p.gamma, p.delta);
    VwpW::new(
        be * ga * de * eps * eps / u * qn * qn,
        [q.value() / (al * u), qn * q.value() * eps, be * de * eps * qn, ga * de * eps * qn, be * ga * eps * qn],
        q,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{c64, real};

    fn q() -> QBase {
        QBase::real(0.5).unwrap()
    }

    fn free() -> [C64; 5] {
        [real(0.3), c64(0.45, 0.1), real(0.6), real(0.35), real(0.55)]
    }

    #[test]
    fn balance_is_checked() {
        let e = TenPhiNineSpec::new(real(0.2), [real(0.3); 6], q(), 2).unwrap_err();
        assert_eq!(e.kind(), "domain");
    }

    #[test]
    fn r2_2_trivial_at_n0() {
        let tol = ToleranceConfig::default();
        let s = TenPhiNineSpec::balanced(real(0.2), free(), q(), 0).unwrap();
        assert_eq!(s.value(&tol).unwrap(), real(1.0));
        assert!(residual_2_2(&s, &tol).unwrap() <= 1e-12);
    }

    #[test]
    fn terminating_relations() {
        let tol = ToleranceConfig::default();
        for n in 1..6 {
            let s = TenPhiNineSpec::balanced(real(0.2), free(), q(), n).unwrap();
            assert!(residual_2_2(&s, &tol).unwrap() <= 1e-10, "2.2 n={n}");
            assert!(residual_2_8(&s, &tol).unwrap() <= 1e-10, "2.8 n={n}");
        }
        let s0 = TenPhiNineSpec::balanced(real(0.2), free(), q(), 0).unwrap();
        assert_eq!(residual_2_8(&s0, &tol).unwrap_err().kind(), "domain");
    }

    #[test]
    fn limit_relations() {
        let tol = ToleranceConfig::default();
        let [b, c, d, e, f] = free();
        let w = VwpW::new(real(0.2), [b, c, d, e, f], q());
        assert!(residual_2_3(&w, &tol).unwrap() <= 1e-10);
        let w = VwpW::new(real(0.1), [b, c, d, e, f], q());
        assert!(residual_2_9(&w, &tol).unwrap() <= 1e-10);
    }

    #[test]
    fn substituted_limit_relation() {
        let tol = ToleranceConfig::default();
        let p = QParameters::real(0.5, 0.3, 0.25, 0.2, 0.15, 0.5).unwrap();
        let w = solution_substitution(&p, 2, c64(2.5, 0.5));
        assert!(residual_2_9(&w, &tol).unwrap() <= 1e-9);
    }

    #[test]
    fn wrong_input_kind() {
        let tol = ToleranceConfig::default();
        let s = TenPhiNineSpec::balanced(real(0.2), free(), q(), 2).unwrap();
        let e = relation_residual(RelationId::R2_3, &RelationInput::TenPhiNine(s), &tol).unwrap_err();
        assert_eq!(e.kind(), "domain");
    }

    #[test]
    fn pole_cq_over_b() {
        let tol = ToleranceConfig::default();
        let [_, _, d, e, f] = free();
        let b = real(0.25);
        let s = TenPhiNineSpec::balanced(real(0.2), [b, b / 0.5, d, e, f], q(), 2).unwrap();
        match residual_2_2(&s, &tol).unwrap_err() {
            Error::Pole { factor, .. } => assert_eq!(factor, "1 - cq/b"),
            e => panic!("{e:?}"),
        }
    }
}
