//! Complex scalars, the base `q`, and q-shifted factorials.
//!
//! `(a; q)_n = prod_{j=0}^{n-1} (1 - a q^j)`, with `(a; q)_0 = 1` and the
//! infinite product taken for `|q| < 1`.

use alloc::format;
use num_complex::Complex;

use crate::dd::Cdd;
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Integer power that also accepts negative exponents.
pub fn powi(z: C64, n: i64) -> C64 {
    if n >= 0 {
        let mut acc = C64::new(1.0, 0.0);
        let mut base = z;
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    } else {
        powi(z, -n).inv()
    }
}

/// Relative distance `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff(a: C64, b: C64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Truncation controls for series and infinite products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Consecutive negligible terms required before a sum or product stops.
    pub tail_window: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig { rel_tol: 1e-12, max_terms: 10_000, tail_window: 3 }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::domain(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if self.max_terms == 0 {
            return Err(Error::domain("max_terms must be at least 1"));
        }
        if self.tail_window == 0 {
            return Err(Error::domain("tail_window must be at least 1"));
        }
        Ok(())
    }
}

/// The base of all q-shifted factorials; `0 < |q| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QBase(C64);

impl QBase {
    pub fn new(q: C64) -> Result<Self> {
        let m = q.norm();
        if !(m < 1.0) || m == 0.0 || !m.is_finite() {
            return Err(Error::domain(format!("base q must satisfy 0 < |q| < 1, got |q| = {m}")));
        }
        Ok(QBase(q))
    }

    pub fn real(q: f64) -> Result<Self> {
        Self::new(real(q))
    }

    #[inline]
    pub fn value(&self) -> C64 {
        self.0
    }

    #[inline]
    pub fn pow(&self, n: i64) -> C64 {
        powi(self.0, n)
    }
}

/// Value of a truncated series or product together with its truncation record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: C64,
    pub terms_used: usize,
    pub converged: bool,
    /// Absolute bound on the neglected remainder.
    pub tail_estimate: f64,
}

impl SeriesValue {
    pub fn exact(value: C64, terms_used: usize) -> Self {
        SeriesValue { value, terms_used, converged: true, tail_estimate: 0.0 }
    }
}

/// `(a; q)_n` for finite `n`.
pub fn qpoch_finite(a: C64, q: QBase, n: usize) -> C64 {
    let qd = Cdd::from_c64(q.value());
    let mut acc = C64::new(1.0, 0.0);
    let mut t = Cdd::from_c64(a);
    for _ in 0..n {
        acc *= (Cdd::ONE - t).to_c64();
        t = t * qd;
    }
    acc
}

/// `(a; q)_inf`, truncated once `|a q^k| < rel_tol (1 - |q|)` holds for
/// `tail_window` consecutive factors. The omitted factors are applied to
/// first order.
pub fn qpoch_infinite(a: C64, q: QBase, tol: &ToleranceConfig) -> Result<SeriesValue> {
    let qm = q.value().norm();
    let threshold = tol.rel_tol * (1.0 - qm);
    let qd = Cdd::from_c64(q.value());
    let mut acc = C64::new(1.0, 0.0);
    let mut td = Cdd::from_c64(a);
    let mut small = 0usize;
    for k in 0..tol.max_terms {
        let t = td.to_c64();
        acc *= (Cdd::ONE - td).to_c64();
        if t.norm() < threshold {
            small += 1;
            if small >= tol.tail_window {
                let qv = q.value();
                let next = t.norm() * qm;
                // remaining factors folded in to first order: exp(-sum_{j>k} a q^j)
                let value = acc * (-(t * qv / (1.0 - qv))).exp();
                // second-order remainder: sum_j |t_j|^2 / (1 - |t_j|)
                let log_tail = next * next / ((1.0 - qm * qm) * (1.0 - next));
                return Ok(SeriesValue {
                    value,
                    terms_used: k + 1,
                    converged: true,
                    tail_estimate: value.norm() * log_tail,
                });
            }
        } else {
            small = 0;
        }
        td = td * qd;
    }
    Err(Error::NonConvergence { what: format!("infinite q-product ({a}; q)_inf"), terms: tol.max_terms })
}

/// Order of a q-shifted factorial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochOrder {
    Finite(usize),
    Infinite,
}

/// `(a_1, ..., a_k; q)_n`; factors are multiplied in ascending parameter order.
pub fn qpoch_multi(params: &[C64], q: QBase, order: PochOrder, tol: &ToleranceConfig) -> Result<C64> {
    if params.is_empty() {
        return Err(Error::domain("qpoch_multi needs at least one parameter"));
    }
    let mut acc = C64::new(1.0, 0.0);
    for &a in params {
        acc *= match order {
            PochOrder::Finite(n) => qpoch_finite(a, q, n),
            PochOrder::Infinite => qpoch_infinite(a, q, tol)?.value,
        };
    }
    Ok(acc)
}

/// Shorthand for `(a_1, ..., a_k; q)_inf` as a bare value.
pub(crate) fn qinf(params: &[C64], q: QBase, tol: &ToleranceConfig) -> Result<C64> {
    qpoch_multi(params, q, PochOrder::Infinite, tol)
}

/// `(num; q)_inf / (den; q)_inf` accumulated with power-of-two rescaling so
/// that intermediate products of large parameters do not overflow.
pub(crate) fn qinf_ratio(
    num: &[C64],
    den: &[C64],
    q: QBase,
    tol: &ToleranceConfig,
    factor: &str,
    index: Option<i64>,
) -> Result<C64> {
    let mut acc = C64::new(1.0, 0.0);
    let mut exp = 0i32;
    let mut rescale = |acc: &mut C64| {
        let (_, e) = libm::frexp(acc.norm());
        if !(-200..=200).contains(&e) {
            *acc = acc.scale(libm::ldexp(1.0, -e));
            exp += e;
        }
    };
    for (i, &a) in num.iter().chain(den).enumerate() {
        let v = qpoch_infinite(a, q, tol)?.value;
        if i < num.len() {
            acc *= v;
        } else {
            if v.norm() == 0.0 || !v.norm().is_finite() {
                return Err(Error::pole(factor, index));
            }
            acc /= v;
        }
        rescale(&mut acc);
    }
    Ok(acc.scale(libm::ldexp(1.0, exp)))
}

/// Divides `num` by `den`, reporting a named pole when `den` vanishes
/// relative to `scale`.
pub(crate) fn checked_div(num: C64, den: C64, factor: &str, index: Option<i64>) -> Result<C64> {
    if den.norm() == 0.0 || !den.norm().is_finite() {
        return Err(Error::pole(factor, index));
    }
    Ok(num / den)
}

/// Fails with a pole error when `1 - x` is zero to within `1e-14`.
pub(crate) fn nonzero_factor(x: C64, factor: &str, index: Option<i64>) -> Result<C64> {
    let f = C64::new(1.0, 0.0) - x;
    if f.norm() <= 1e-14 * (1.0 + x.norm()) {
        return Err(Error::pole(factor, index));
    }
    Ok(f)
}
