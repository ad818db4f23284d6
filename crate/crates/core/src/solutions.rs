//! The six explicit solutions `X^(1)..X^(6)` of the associated recurrence.
//!
//! Each solution is a ratio of infinite q-products times a power of `u/2` or
//! `1/(2u)` times one `W` value. Solutions are evaluated exactly as displayed,
//! prefactors included, at any index `n >= -1`. Every solution is also a
//! solution with `u` replaced by `1/u` ([`ArgumentFlag::InvU`]).

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::aqaw::{coefficients, QParameters, SpectralPoint};
use crate::error::{Error, Result};
use crate::hyperseries::w_value;
use crate::qcore::{powi, qinf_ratio, ToleranceConfig, C64};

/// Half-width of the band around `|u| = 1` in which no solution is treated as
/// minimal.
pub const UNIT_CIRCLE_BAND: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolutionId {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
}

impl SolutionId {
    pub const ALL: [SolutionId; 6] =
        [SolutionId::S1, SolutionId::S2, SolutionId::S3, SolutionId::S4, SolutionId::S5, SolutionId::S6];

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s1" | "1" => Some(SolutionId::S1),
            "s2" | "2" => Some(SolutionId::S2),
            "s3" | "3" => Some(SolutionId::S3),
            "s4" | "4" => Some(SolutionId::S4),
            "s5" | "5" => Some(SolutionId::S5),
            "s6" | "6" => Some(SolutionId::S6),
            _ => None,
        }
    }

    /// Modulus of the `W` argument whose being `< 1` is the convergence
    /// predicate of this solution at index `n` and argument `u`.
    pub fn predicate_modulus(&self, p: &QParameters, n: i64, u: C64) -> f64 {
        let q = p.q;
        let (s, eps) = (p.s(), p.epsilon);
        match self {
            SolutionId::S1 => (q.value() / (p.delta * u)).norm(),
            SolutionId::S2 => (p.delta / u).norm(),
            SolutionId::S3 => (p.alpha / u).norm(),
            SolutionId::S4 => (s * q.pow(n - 1) * eps).norm(),
            SolutionId::S5 => (q.pow(2 - n) / (s * eps)).norm(),
            SolutionId::S6 => (q.pow(n + 1) * eps).norm(),
        }
    }

    pub fn predicate_text(&self) -> &'static str {
        match self {
            SolutionId::S1 => "|q/(delta u)| < 1",
            SolutionId::S2 => "|delta/u| < 1",
            SolutionId::S3 => "|alpha/u| < 1",
            SolutionId::S4 => "|s q^(n-1) eps| < 1",
            SolutionId::S5 => "|q^(2-n)/(s eps)| < 1",
            SolutionId::S6 => "|q^(n+1) eps| < 1",
        }
    }

    pub fn predicate_holds(&self, p: &QParameters, n: i64, u: C64) -> bool {
        self.predicate_modulus(p, n, u) < 1.0
    }
}

impl fmt::Display for SolutionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize + 1;
        write!(f, "S{i}")
    }
}

/// Whether a solution is evaluated at `u` or at `1/u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArgumentFlag {
    #[default]
    U,
    InvU,
}

impl ArgumentFlag {
    pub fn apply(&self, u: C64) -> C64 {
        match self {
            ArgumentFlag::U => u,
            ArgumentFlag::InvU => u.inv(),
        }
    }
}

fn pair_products(p: &QParameters, n: i64) -> [C64; 6] {
    let en = p.q_shift(n);
    p.pairs().map(|x| x * en)
}

/// Evaluates `X^(id)_n` at `u` (or `1/u`).
pub fn eval_solution(
    id: SolutionId,
    flag: ArgumentFlag,
    p: &QParameters,
    n: i64,
    pt: &SpectralPoint,
    tol: &ToleranceConfig,
) -> Result<C64> {
    eval_solution_at(id, p, n, flag.apply(pt.u), tol)
}

/// Evaluates `X^(id)_n(u)` for an explicit `u`.
pub fn eval_solution_at(id: SolutionId, p: &QParameters, n: i64, u: C64, tol: &ToleranceConfig) -> Result<C64> {
    let m = id.predicate_modulus(p, n, u);
    if !(m < 1.0) {
        return Err(Error::domain(format!(
            "{id} at n = {n}: convergence predicate {} fails (modulus {m})",
            id.predicate_text()
        )));
    }
    let v = eval_printed(id, p, n, u, tol)?;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::domain(format!("{id} at n = {n}: value overflows binary64")));
    }
    Ok(v)
}

fn eval_printed(id: SolutionId, p: &QParameters, n: i64, u: C64, tol: &ToleranceConfig) -> Result<C64> {
    let q = p.q;
    let qv = q.value();
    let (al, be, ga, de, s, eps) = (p.alpha, p.beta, p.gamma, p.delta, p.s(), p.epsilon);
    let en = eps * q.pow(n);
    let s_eps2 = s * eps * eps;
    let idx = Some(n);
    let name = |what: &str| format!("{id} denominator {what}");
    match id {
        SolutionId::S1 => {
            let num_args = [s * u * en / de, s_eps2 * q.pow(2 * n - 1)];
            let den_args = [s * eps * q.pow(n - 1), de * en / u, al * be * en, al * ga * en, be * ga * en];
            let w = w_value(
                al * be * ga * u / qv,
                [q.pow(-n) / eps, eps * s * q.pow(n - 1), al * u, be * u, ga * u],
                q,
                tol,
            )?;
            Ok(powi(u / 2.0, n)
                * qinf_ratio(&num_args, &den_args, q, tol, &name("(s eps q^(n-1), delta eps q^n/u, ..)_inf"), idx)?
                * w)
        }
        SolutionId::S2 => {
            let num_args = [s_eps2 * q.pow(2 * n - 1), en * de * u * qv];
            let den_args = [en * qv, be * de * en, ga * de * en, al * de * en, s * eps / (de * u) * q.pow(n - 1)];
            let w = w_value(
                qv * qv * u / (al * be * ga),
                [en * qv, q.pow(2 - n) / (eps * s), qv * u / al, qv * u / be, qv * u / ga],
                q,
                tol,
            )?;
            Ok(powi(u / 2.0, n) * qinf_ratio(&num_args, &den_args, q, tol, &name("(eps q^(n+1), ..)_inf"), idx)? * w)
        }
        SolutionId::S3 => {
            let bgd = be * ga * de;
            let mut num_args: Vec<C64> = alloc::vec![s_eps2 * q.pow(2 * n), s_eps2 * q.pow(2 * n - 1), bgd * en / u];
            num_args.extend([be, ga, de].iter().map(|&x| x * en * qv / u));
            let mut den_args: Vec<C64> = alloc::vec![en * qv, s * eps * q.pow(n - 1)];
            den_args.extend(pair_products(p, n));
            den_args.push(bgd * eps * eps / u * q.pow(2 * n + 1));
            let w = w_value(
                bgd * eps * eps / u * q.pow(2 * n),
                [qv / (al * u), en * qv, be * de * en, ga * de * en, be * ga * en],
                q,
                tol,
            )?;
            Ok(powi(2.0 * u, -n)
                * qinf_ratio(&num_args, &den_args, q, tol, &name("(eps q^(n+1), .., pairs)_inf"), idx)?
                * w)
        }
        SolutionId::S4 => {
            let mut num_args: Vec<C64> = alloc::vec![s_eps2 * q.pow(2 * n - 1)];
            num_args.extend(p.abcd().iter().map(|&x| x * en * qv / u));
            let mut den_args: Vec<C64> = alloc::vec![en * qv, en * qv * qv / (u * u)];
            den_args.extend(pair_products(p, n));
            let w = w_value(
                en * qv / (u * u),
                [en * qv, qv / (al * u), qv / (be * u), qv / (ga * u), qv / (de * u)],
                q,
                tol,
            )?;
            Ok(powi(2.0 * u, -n)
                * qinf_ratio(&num_args, &den_args, q, tol, &name("(eps q^(n+1), q^(n+2) eps/u^2, pairs)_inf"), idx)?
                * w)
        }
        SolutionId::S5 => {
            let num_args = [s_eps2 * q.pow(2 * n - 1), u * u * en];
            let mut den_args: Vec<C64> = alloc::vec![s * eps * q.pow(n - 1)];
            den_args.extend(p.abcd().iter().map(|&x| x * u * en));
            let w = w_value(q.pow(-n) / (eps * u * u), [q.pow(-n) / eps, al / u, be / u, ga / u, de / u], q, tol)?;
            Ok(powi(2.0 * u, -n)
                * qinf_ratio(&num_args, &den_args, q, tol, &name("(s q^(n-1) eps, alpha u eps q^n, ..)_inf"), idx)?
                * w)
        }
        SolutionId::S6 => {
            let sen = s * en;
            let mut num_args: Vec<C64> = alloc::vec![s_eps2 * q.pow(2 * n - 1)];
            num_args.extend(p.abcd().iter().map(|&x| sen / (x * u)));
            let mut den_args: Vec<C64> = alloc::vec![s * eps * q.pow(n - 1), sen / (u * u)];
            den_args.extend(pair_products(p, n));
            let w = w_value(sen / (qv * u * u), [sen / qv, al / u, be / u, ga / u, de / u], q, tol)?;
            Ok(powi(2.0 * u, -n)
                * qinf_ratio(&num_args, &den_args, q, tol, &name("(eps s q^(n-1), s eps q^n/u^2, pairs)_inf"), idx)?
                * w)
        }
    }
}

/// Relative residual of the recurrence at index `n`:
/// `|X_{n+1} - (z - a'_n) X_n + b'^2_n X_{n-1}|` over the largest of the
/// three terms.
pub fn recurrence_residual(
    id: SolutionId,
    flag: ArgumentFlag,
    p: &QParameters,
    n: i64,
    pt: &SpectralPoint,
    tol: &ToleranceConfig,
) -> Result<f64> {
    let c = coefficients(p, n)?;
    let prev = eval_solution(id, flag, p, n - 1, pt, tol)?;
    let cur = eval_solution(id, flag, p, n, pt, tol)?;
    let next = eval_solution(id, flag, p, n + 1, pt, tol)?;
    let terms = [next, (pt.z - c.a) * cur, c.b2 * prev];
    let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok((terms[0] - terms[1] + terms[2]).norm() / scale)
}

/// `max_n |r_n / r_{n0} - 1|` with `r_n = X^(id1)_n / X^(id2)_n` over `range`.
pub fn proportionality_variation(
    (id1, flag1): (SolutionId, ArgumentFlag),
    (id2, flag2): (SolutionId, ArgumentFlag),
    p: &QParameters,
    pt: &SpectralPoint,
    range: RangeInclusive<i64>,
    tol: &ToleranceConfig,
) -> Result<f64> {
    let mut first: Option<C64> = None;
    let mut worst = 0.0f64;
    for n in range {
        let x = eval_solution(id1, flag1, p, n, pt, tol)?;
        let y = eval_solution(id2, flag2, p, n, pt, tol)?;
        if y.norm() == 0.0 {
            return Err(Error::DivisionByZero(format!("{id2} vanishes at n = {n}")));
        }
        let r = x / y;
        match first {
            None => first = Some(r),
            Some(r0) => {
                if r0.norm() == 0.0 {
                    return Err(Error::DivisionByZero(format!("{id1} vanishes at the first index")));
                }
                worst = worst.max((r / r0 - C64::new(1.0, 0.0)).norm());
            }
        }
    }
    Ok(worst)
}

/// Picks the representation of the minimal solution valid at every index
/// `-1..=n_max`, trying `S6`, then `S4`, then `S3`.
pub fn select_minimal(p: &QParameters, pt: &SpectralPoint, n_max: i64) -> Result<SolutionId> {
    if pt.on_unit_circle(UNIT_CIRCLE_BAND) {
        return Err(Error::Spectrum(format!(
            "z = {} lies on [-1, 1] (|u| = 1): the spectrum is continuous there",
            pt.z
        )));
    }
    let candidates = [SolutionId::S6, SolutionId::S4, SolutionId::S3];
    for id in candidates {
        if (-1..=n_max).all(|n| id.predicate_holds(p, n, pt.u)) {
            return Ok(id);
        }
    }
    Err(Error::domain(format!(
        "no minimal-solution representation applies: {} ; {} ; {} all fail",
        SolutionId::S6.predicate_text(),
        SolutionId::S4.predicate_text(),
        SolutionId::S3.predicate_text()
    )))
}

/// The minimal solution at index `n` together with the representation used.
pub fn minimal_solution(
    p: &QParameters,
    pt: &SpectralPoint,
    n: i64,
    tol: &ToleranceConfig,
) -> Result<(SolutionId, C64)> {
    let id = select_minimal(p, pt, n.max(0))?;
    Ok((id, eval_solution(id, ArgumentFlag::U, p, n, pt, tol)?))
}
