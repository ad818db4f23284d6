//! Basic hypergeometric series `r+1phr` and the very-well-poised `8phi7`
//! function `W(a; b, c, d, e, f)`.

use alloc::format;
use alloc::vec::Vec;

use crate::dd::Cdd;
use crate::error::{Error, Result};
use crate::qcore::{QBase, ToleranceConfig, C64};

pub use crate::qcore::SeriesValue;

/// Relative distance below which a parameter is taken to be `q^{-n}`.
pub const TERMINATION_TOL: f64 = 1e-10;

/// Returns the smallest `n` with `a = q^{-n}` to [`TERMINATION_TOL`].
pub fn termination_order(a: C64, q: QBase) -> Option<usize> {
    if a.norm() == 0.0 {
        return None;
    }
    let qm = q.value().norm();
    // |a| = |q|^{-n}  =>  n = ln|a| / -ln|q|
    let guess = libm::log(a.norm()) / -libm::log(qm);
    if !guess.is_finite() || guess < -0.5 {
        return None;
    }
    let centre = libm::round(guess) as i64;
    for n in (centre - 1).max(0)..=centre + 1 {
        let target = q.pow(-n);
        if (a - target).norm() <= TERMINATION_TOL * target.norm() {
            return Some(n as usize);
        }
    }
    None
}

/// Smallest termination order among `params`; ties go to the lower index.
fn first_termination(params: &[C64], q: QBase) -> Option<usize> {
    params.iter().filter_map(|&p| termination_order(p, q)).min()
}

/// A generic `r+1phr(a_1..a_{r+1}; b_1..b_r; q, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSeriesSpec {
    pub numerators: Vec<C64>,
    pub denominators: Vec<C64>,
    pub q: QBase,
    pub argument: C64,
}

impl PhiSeriesSpec {
    pub fn new(numerators: Vec<C64>, denominators: Vec<C64>, q: QBase, argument: C64) -> Result<Self> {
        if numerators.len() != denominators.len() + 1 {
            return Err(Error::domain(format!(
                "r+1phr needs one more numerator than denominator parameter, got {} and {}",
                numerators.len(),
                denominators.len()
            )));
        }
        Ok(PhiSeriesSpec { numerators, denominators, q, argument })
    }

    pub fn terminating_order(&self) -> Option<usize> {
        first_termination(&self.numerators, self.q)
    }
}

/// Sums `sum_k t_k` given `t_0 = 1` and the ratio `t_{k+1}/t_k`.
///
/// Terms and the running sum are carried in double-double, so alternating
/// series whose terms dwarf the sum keep full binary64 accuracy.
/// `stop_after` is the termination order of a terminating series: exactly
/// `stop_after + 1` terms are summed. Otherwise the sum stops once
/// `tail_window` consecutive terms are below `rel_tol |S|` and the geometric
/// tail bound is below `rel_tol |S|` as well; the tail is then added as a
/// geometric series in the last term ratio.
fn sum_by_ratio<R, K>(
    mut ratio: R,
    mut kernel: K,
    argument_modulus: f64,
    stop_after: Option<usize>,
    tol: &ToleranceConfig,
    what: &str,
) -> Result<SeriesValue>
where
    R: FnMut(usize) -> Result<Cdd>,
    K: FnMut(usize) -> Cdd,
{
    let mut base = Cdd::ONE;
    let mut sum = Cdd::ZERO;
    if let Some(n) = stop_after {
        for k in 0..=n {
            sum = sum + base * kernel(k);
            if k < n {
                base = base * ratio(k)?;
            }
        }
        return Ok(SeriesValue::exact(sum.to_c64(), n + 1));
    }
    let mut small = 0usize;
    for k in 0..tol.max_terms {
        let term = base * kernel(k);
        sum = sum + term;
        let r = ratio(k)?;
        base = base * r;
        if base.is_zero() {
            return Ok(SeriesValue::exact(sum.to_c64(), k + 1));
        }
        let sn = sum.norm();
        if term.norm() <= tol.rel_tol * sn {
            small += 1;
        } else {
            small = 0;
        }
        if small >= tol.tail_window {
            let rho = r.norm().max(argument_modulus);
            if rho < 1.0 {
                let next = base * kernel(k + 1);
                let tail = next.norm() / (1.0 - rho);
                if tail <= tol.rel_tol * sn {
                    // geometric continuation of the remaining terms with ratio r
                    let rest = next / (Cdd::ONE - r);
                    return Ok(SeriesValue {
                        value: (sum + rest).to_c64(),
                        terms_used: k + 1,
                        converged: true,
                        tail_estimate: tail,
                    });
                }
            }
        }
    }
    Err(Error::NonConvergence { what: what.into(), terms: tol.max_terms })
}

/// Evaluates a generic `r+1phr` by its term-ratio recurrence.
pub fn eval_phi(spec: &PhiSeriesSpec, tol: &ToleranceConfig) -> Result<SeriesValue> {
    tol.validate()?;
    let stop = spec.terminating_order();
    let zm = spec.argument.norm();
    if stop.is_none() && zm >= 1.0 {
        return Err(Error::domain(format!("nonterminating r+1phr needs |z| < 1, got |z| = {zm}")));
    }
    if spec.argument.norm() == 0.0 {
        return Ok(SeriesValue::exact(C64::new(1.0, 0.0), 1));
    }
    let q = Cdd::from_c64(spec.q.value());
    let z = Cdd::from_c64(spec.argument);
    let nums: Vec<Cdd> = spec.numerators.iter().map(|&a| Cdd::from_c64(a)).collect();
    let dens: Vec<Cdd> = spec.denominators.iter().map(|&b| Cdd::from_c64(b)).collect();
    let mut qk = Cdd::ONE;
    let ratio = |k: usize| -> Result<Cdd> {
        let mut r = z;
        for &a in &nums {
            r = r * (Cdd::ONE - a * qk);
        }
        let mut d = Cdd::ONE;
        for (j, &b) in dens.iter().enumerate() {
            let f = Cdd::ONE - b * qk;
            if f.norm() <= 1e-300 {
                return Err(Error::pole(format!("(1 - b_{} q^k) in r+1phr denominator", j + 1), Some(k as i64)));
            }
            d = d * f;
        }
        qk = qk * q;
        Ok(r / (d * (Cdd::ONE - qk)))
    };
    sum_by_ratio(ratio, |_| Cdd::ONE, zm, stop, tol, "r+1phr series")
}

/// Very-well-poised series with the `+-q sqrt(a)` pair folded into the kernel
/// `(1 - a q^{2k}) / (1 - a)`:
///
/// `sum_k (a, p_1, .., p_m; q)_k / (q, aq/p_1, .., aq/p_m; q)_k
///        (1 - a q^{2k}) / (1 - a) z^k`.
pub fn eval_vwp(a: C64, params: &[C64], argument: C64, q: QBase, tol: &ToleranceConfig) -> Result<SeriesValue> {
    vwp_sum(a, params, Cdd::from_c64(argument), q, tol)
}

fn vwp_sum(a: C64, params: &[C64], argument: Cdd, q: QBase, tol: &ToleranceConfig) -> Result<SeriesValue> {
    tol.validate()?;
    let one = C64::new(1.0, 0.0);
    if (one - a).norm() <= 1e-14 {
        return Err(Error::pole("(1 - a) in the very-well-poised kernel", None));
    }
    let stop = first_termination(params, q);
    let zm = argument.norm();
    if stop.is_none() && !(zm < 1.0) {
        return Err(Error::domain(format!("nonterminating very-well-poised series needs |argument| < 1, got {zm}")));
    }
    let (ad, qd, z) = (Cdd::from_c64(a), Cdd::from_c64(q.value()), argument);
    let kernel_den = Cdd::ONE - ad;
    let ps: Vec<Cdd> = params.iter().map(|&p| Cdd::from_c64(p)).collect();
    let denoms: Vec<Cdd> = ps.iter().map(|&p| ad * qd / p).collect();
    let mut qk = Cdd::ONE;
    let ratio = |k: usize| -> Result<Cdd> {
        let mut r = z * (Cdd::ONE - ad * qk);
        for &p in &ps {
            r = r * (Cdd::ONE - p * qk);
        }
        let mut d = Cdd::ONE;
        for &den in &denoms {
            let f = Cdd::ONE - den * qk;
            if f.norm() <= 1e-300 {
                return Err(Error::pole("(1 - aq^{k+1}/p) in very-well-poised denominator", Some(k as i64)));
            }
            d = d * f;
        }
        qk = qk * qd;
        Ok(r / (d * (Cdd::ONE - qk)))
    };
    let q2 = qd * qd;
    let kernel = |k: usize| (Cdd::ONE - ad * q2.powi(k as i64)) / kernel_den;
    sum_by_ratio(ratio, kernel, zm, stop, tol, "very-well-poised series")
}

/// Parameters of `W(a; b, c, d, e, f)`, the very-well-poised `8phi7` with
/// argument `a^2 q^2 / (bcdef)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VwpW {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    pub e: C64,
    pub f: C64,
    pub q: QBase,
}

impl VwpW {
    pub fn new(a: C64, [b, c, d, e, f]: [C64; 5], q: QBase) -> Self {
        VwpW { a, b, c, d, e, f, q }
    }

    pub fn params(&self) -> [C64; 5] {
        [self.b, self.c, self.d, self.e, self.f]
    }

    pub fn argument(&self) -> C64 {
        let q = self.q.value();
        self.a * self.a * q * q / (self.b * self.c * self.d * self.e * self.f)
    }

    pub fn terminating_order(&self) -> Option<usize> {
        first_termination(&self.params(), self.q)
    }

    /// True when the series terminates or its argument lies inside the unit disc.
    pub fn in_domain(&self) -> bool {
        self.terminating_order().is_some() || self.argument().norm() < 1.0
    }
}

/// Evaluates `W(a; b, c, d, e, f)`.
pub fn eval_w(w: &VwpW, tol: &ToleranceConfig) -> Result<SeriesValue> {
    let prod = w.b * w.c * w.d * w.e * w.f;
    if prod.norm() == 0.0 {
        return Err(Error::domain("W needs bcdef != 0"));
    }
    let qd = Cdd::from_c64(w.q.value());
    let ad = Cdd::from_c64(w.a);
    let den = w.params().iter().fold(Cdd::ONE, |acc, &p| acc * Cdd::from_c64(p));
    let argument = ad * ad * qd * qd / den;
    vwp_sum(w.a, &w.params(), argument, w.q, tol)
}

/// Value-only shorthand used by the solution and spectral formulas.
pub(crate) fn w_value(a: C64, params: [C64; 5], q: QBase, tol: &ToleranceConfig) -> Result<C64> {
    Ok(eval_w(&VwpW::new(a, params, q), tol)?.value)
}
