//! The continued fraction
//!
//! `CF(z) = z - a'_0 + K_{n>=1} ( -b'^2_n / (z - a'_n) )`
//!
//! evaluated directly (modified Lentz) and through minimal solutions of the
//! recurrence, where `1/CF(z) = X_0 / (b'^2_0 X_{-1})` for the minimal
//! solution `X`.

use alloc::format;
use alloc::vec::Vec;

use crate::aqaw::{coefficients, QParameters, SpectralPoint};
use crate::error::{Error, Result};
use crate::hyperseries::w_value;
use crate::qcore::{nonzero_factor, SeriesValue, ToleranceConfig, C64};
use crate::solutions::{eval_solution, select_minimal, ArgumentFlag, UNIT_CIRCLE_BAND};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfConfig {
    /// Replacement for vanishing intermediate denominators.
    pub tiny_guard: f64,
    pub rel_tol: f64,
    pub max_depth: usize,
}

impl Default for CfConfig {
    fn default() -> Self {
        CfConfig { tiny_guard: 1e-30, rel_tol: 1e-12, max_depth: 5000 }
    }
}

impl CfConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tiny_guard > 0.0) {
            return Err(Error::domain("tiny_guard must be positive"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::domain("cf rel_tol must be positive"));
        }
        if self.max_depth == 0 {
            return Err(Error::domain("max_depth must be at least 1"));
        }
        Ok(())
    }
}

/// Modified Lentz iteration. `on_step` sees every convergent; with `stop`
/// the iteration ends once `|Δ - 1| < rel_tol`.
fn lentz<F>(
    p: &QParameters,
    z: C64,
    cfg: &CfConfig,
    max_depth: usize,
    stop: bool,
    mut on_step: F,
) -> Result<(C64, usize, f64, bool)>
where
    F: FnMut(usize, C64),
{
    cfg.validate()?;
    let tiny = C64::new(cfg.tiny_guard, 0.0);
    let guard = |x: C64| if x.norm() == 0.0 { tiny } else { x };
    let mut f = guard(z - coefficients(p, 0)?.a);
    let mut c = f;
    let mut d = C64::new(0.0, 0.0);
    let mut last_delta = f64::INFINITY;
    for n in 1..=max_depth {
        let co = coefficients(p, n as i64)?;
        if co.b2.norm() == 0.0 {
            return Err(Error::pole("b'^2_n (partial numerator)", Some(n as i64)));
        }
        let an = -co.b2;
        let bn = z - co.a;
        d = guard(bn + an * d);
        c = guard(bn + an / c);
        d = d.inv();
        let delta = c * d;
        f *= delta;
        on_step(n, f);
        last_delta = (delta - C64::new(1.0, 0.0)).norm();
        if stop && last_delta < cfg.rel_tol {
            return Ok((f, n, last_delta, true));
        }
    }
    Ok((f, max_depth, last_delta, false))
}

/// Direct evaluation of `CF(z)`. Fails with `NonConvergence` at `max_depth`,
/// which is the expected outcome on the continuous spectrum.
pub fn cf_direct(p: &QParameters, pt: &SpectralPoint, cfg: &CfConfig) -> Result<SeriesValue> {
    let (f, depth, delta, converged) = lentz(p, pt.z, cfg, cfg.max_depth, true, |_, _| {})?;
    if !converged {
        return Err(Error::NonConvergence {
            what: format!("continued fraction at z = {}", pt.z),
            terms: cfg.max_depth,
        });
    }
    Ok(SeriesValue { value: f, terms_used: depth, converged: true, tail_estimate: delta * f.norm() })
}

/// Convergents `CF_1 .. CF_depth` (the approximants after each partial
/// quotient), without a stopping test.
pub fn convergents(p: &QParameters, z: C64, depth: usize, cfg: &CfConfig) -> Result<Vec<C64>> {
    let mut out = Vec::with_capacity(depth);
    lentz(p, z, cfg, depth, false, |_, f| out.push(f))?;
    Ok(out)
}

/// `CF(z) = b'^2_0 X_{-1} / X_0` for the minimal solution selected at `pt`.
pub fn cf_pincherle(p: &QParameters, pt: &SpectralPoint, tol: &ToleranceConfig) -> Result<C64> {
    if pt.on_unit_circle(UNIT_CIRCLE_BAND) {
        return Err(Error::Spectrum(format!("z = {} is on [-1, 1]; no minimal solution", pt.z)));
    }
    let b2 = coefficients(p, 0)?.b2;
    if b2.norm() <= 1e-300 {
        return Err(Error::Degenerate(
            "b'^2_0 = 0: the first row of the Jacobi matrix decouples and the Pincherle ratio is 0/0".into(),
        ));
    }
    let id = select_minimal(p, pt, 0)?;
    let x_prev = eval_solution(id, ArgumentFlag::U, p, -1, pt, tol)?;
    let x0 = eval_solution(id, ArgumentFlag::U, p, 0, pt, tol)?;
    if x0.norm() == 0.0 {
        return Err(Error::DivisionByZero(format!("{id} vanishes at n = 0")));
    }
    Ok(b2 * x_prev / x0)
}

/// Closed form of `1/CF(z)` built from the `X^(4)` representation; valid for
/// `|sε/q²| < 1`. Inputs with `|u| < 1` are evaluated at `1/u`.
pub fn closed_form_3_3_at(p: &QParameters, u: C64, tol: &ToleranceConfig) -> Result<C64> {
    let u = if u.norm() < 1.0 { u.inv() } else { u };
    if !(u.norm() > 1.0) {
        return Err(Error::domain("closed form from X^(4) needs |u| != 1"));
    }
    let q = p.q;
    let qv = q.value();
    let (s, eps) = (p.s(), p.epsilon);
    let m = (s * eps / (qv * qv)).norm();
    if !(m < 1.0) {
        return Err(Error::domain(format!("closed form from X^(4) needs |s eps/q^2| < 1, got {m}")));
    }
    let one = C64::new(1.0, 0.0);
    let u2 = u * u;
    let mut den = nonzero_factor(s * eps / (qv * qv), "1 - s eps/q^2", None)?;
    for (name, x) in [
        ("1 - alpha eps/u", p.alpha),
        ("1 - beta eps/u", p.beta),
        ("1 - gamma eps/u", p.gamma),
        ("1 - delta eps/u", p.delta),
    ] {
        den *= nonzero_factor(x * eps / u, name, None)?;
    }
    let num = (one - eps * qv / u2) * (one - s * eps * eps / (qv * qv)) * (one - s * eps * eps / qv);
    let tail = [qv / (p.alpha * u), qv / (p.beta * u), qv / (p.gamma * u), qv / (p.delta * u)];
    let w_num = w_value(qv * eps / u2, [qv * eps, tail[0], tail[1], tail[2], tail[3]], q, tol)?;
    let w_den = w_value(eps / u2, [eps, tail[0], tail[1], tail[2], tail[3]], q, tol)?;
    if w_den.norm() == 0.0 {
        return Err(Error::pole("W(eps/u^2; eps, q/(alpha u), ..)", None));
    }
    Ok(2.0 / u * num / den * w_num / w_den)
}

pub fn closed_form_3_3(p: &QParameters, pt: &SpectralPoint, tol: &ToleranceConfig) -> Result<C64> {
    closed_form_3_3_at(p, pt.u, tol)
}

/// Closed form of `1/CF(z)` built from the `X^(6)` representation; valid for
/// `|u| > 1`, `|ε| < 1`.
pub fn closed_form_3_4(p: &QParameters, pt: &SpectralPoint, tol: &ToleranceConfig) -> Result<C64> {
    let u = pt.u;
    if !(u.norm() > 1.0 + UNIT_CIRCLE_BAND) {
        return Err(Error::domain("closed form from X^(6) needs |u| > 1"));
    }
    let q = p.q;
    let qv = q.value();
    let (s, eps) = (p.s(), p.epsilon);
    if !(eps.norm() < 1.0) {
        return Err(Error::domain(format!("closed form from X^(6) needs |eps| < 1, got {}", eps.norm())));
    }
    let one = C64::new(1.0, 0.0);
    let u2 = u * u;
    let mut den = nonzero_factor(eps, "1 - eps", None)?;
    for (name, x) in [
        ("1 - s eps/(alpha u q)", p.alpha),
        ("1 - s eps/(beta u q)", p.beta),
        ("1 - s eps/(gamma u q)", p.gamma),
        ("1 - s eps/(delta u q)", p.delta),
    ] {
        den *= nonzero_factor(s * eps / (x * u * qv), name, None)?;
    }
    let num = (one - s * eps * eps / (qv * qv)) * (one - s * eps * eps / qv) * (one - s * eps / (u2 * qv));
    let tail = [p.alpha / u, p.beta / u, p.gamma / u, p.delta / u];
    let w_num = w_value(eps * s / (u2 * qv), [eps * s / qv, tail[0], tail[1], tail[2], tail[3]], q, tol)?;
    let w_den = w_value(s * eps / (u2 * qv * qv), [eps * s / (qv * qv), tail[0], tail[1], tail[2], tail[3]], q, tol)?;
    if w_den.norm() == 0.0 {
        return Err(Error::pole("W(s eps/(u^2 q^2); ..)", None));
    }
    Ok(2.0 / u * num / den * w_num / w_den)
}
