//! Casoratians, the absolutely continuous orthogonality measure, the
//! q-Dougall type identities and quadrature checks of orthogonality.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::aqaw::{assoc_polynomial_values, coefficients, QParameters, SpectralPoint, REAL_TOL};
use crate::cf::{cf_direct, cf_pincherle, CfConfig};
use crate::error::{Error, Result};
use crate::hyperseries::w_value;
use crate::qcore::{checked_div, nonzero_factor, qinf, real, rel_diff, ToleranceConfig, C64};
use crate::solutions::{eval_solution_at, SolutionId};

/// Casoratian `X_n Y_{n+1} - X_{n+1} Y_n`.
pub fn wronskian<F, G>(mut x: F, mut y: G, n: i64) -> Result<C64>
where
    F: FnMut(i64) -> Result<C64>,
    G: FnMut(i64) -> Result<C64>,
{
    Ok(x(n)? * y(n + 1)? - x(n + 1)? * y(n)?)
}

/// Casoratian of the pair `X^(4)(u)`, `X^(4)(1/u)` at index `n`.
pub fn x4_wronskian(p: &QParameters, u: C64, n: i64, tol: &ToleranceConfig) -> Result<C64> {
    let ui = u.inv();
    wronskian(
        |k| eval_solution_at(SolutionId::S4, p, k, u, tol),
        |k| eval_solution_at(SolutionId::S4, p, k, ui, tol),
        n,
    )
}

/// Closed form of the `X^(4)(u)`, `X^(4)(1/u)` Casoratian at `n = -1`:
///
/// `2(u - 1/u) (sε²/q³, sε²/q²)_∞ / (αβε/q, .., γδε/q, sε/q², ε)_∞`.
pub fn wronskian_closed_form(p: &QParameters, u: C64, tol: &ToleranceConfig) -> Result<C64> {
    let q = p.q;
    let qv = q.value();
    let (s, eps) = (p.s(), p.epsilon);
    let q2 = qv * qv;
    let num = qinf(&[s * eps * eps / (q2 * qv), s * eps * eps / q2], q, tol)?;
    let mut den_args = [C64::new(0.0, 0.0); 8];
    for (slot, pair) in den_args.iter_mut().zip(p.pairs()) {
        *slot = pair * eps / qv;
    }
    den_args[6] = s * eps / q2;
    den_args[7] = eps;
    let den = qinf(&den_args, q, tol)?;
    checked_div(2.0 * (u - u.inv()) * num, den, "(alpha beta eps/q, ..., s eps/q^2, eps)_inf", None)
}

fn require_weight_domain(p: &QParameters, x: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("x = {x} is outside [-1, 1]")));
    }
    if !p.all_real() {
        return Err(Error::domain("the weight needs real parameters"));
    }
    let qv = p.q.value();
    let m = (p.s() * p.epsilon / (qv * qv)).norm();
    if !(m < 1.0) {
        return Err(Error::domain(format!("the weight needs |s eps/q^2| < 1, got {m}")));
    }
    Ok(())
}

fn is_endpoint(x: f64) -> bool {
    x.abs() == 1.0
}

/// `dω/dx` at `x = cos θ`, `u = e^{iθ}`:
///
/// `2√(1-x²)/π (1-sε²/q)(1-sε²/q²)² / (1-sε/q²)
///  (εq/u², εq u², αβε, .., γδε, εq)_∞ / (αε/u, αεu, .., δεu, sε/q²)_∞
///  / |W(ε/u²; q/(αu), q/(βu), q/(γu), q/(δu), ε)|²`.
pub fn weight_density(p: &QParameters, x: f64, tol: &ToleranceConfig) -> Result<f64> {
    require_weight_domain(p, x)?;
    if is_endpoint(x) {
        return Ok(0.0);
    }
    let q = p.q;
    let qv = q.value();
    let (s, eps) = (p.s(), p.epsilon);
    let u = SpectralPoint::on_cut(x).u;
    let (u2, ui) = (u * u, u.inv());
    let one = real(1.0);
    let pref = real(2.0 * libm::sqrt(1.0 - x * x) / PI)
        * (one - s * eps * eps / qv)
        * (one - s * eps * eps / (qv * qv))
        * (one - s * eps * eps / (qv * qv));
    let pref = pref / nonzero_factor(s * eps / (qv * qv), "1 - s eps/q^2", None)?;

    let mut num_args = vec![eps * qv / u2, eps * qv * u2];
    num_args.extend(p.pairs().iter().map(|&x| x * eps));
    num_args.push(eps * qv);
    let mut den_args = Vec::with_capacity(9);
    for a in p.abcd() {
        den_args.push(a * eps * ui);
        den_args.push(a * eps * u);
    }
    den_args.push(s * eps / (qv * qv));
    let num = qinf(&num_args, q, tol)?;
    let den = qinf(&den_args, q, tol)?;
    let [al, be, ga, de] = p.abcd();
    let w = w_value(eps / u2, [qv / (al * u), qv / (be * u), qv / (ga * u), qv / (de * u), eps], q, tol)?;
    let v = checked_div(pref * num, den * w.norm_sqr(), "(alpha eps/u, ..., s eps/q^2)_inf |W|^2", None)?;
    Ok(v.re)
}

/// Value of the two-term representation of the density together with the
/// size of the discarded imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AltDensity {
    pub value: f64,
    pub imag_residue: f64,
    /// Set when `|Im| > 1e-8 |Re|`.
    pub imaginary_warning: bool,
}

/// `1/(2πi) (1-sε²/q²)(1-sε²/q) (εq)_∞/(sε/q²)_∞ [T(u) - T(1/u)]` with
/// `T(u) = 2u (εq u²)_∞ ∏(sεu/α)_∞ W(sεu²/q; sε/q, αu, βu, γu, δu)
///         / ((sεu²)_∞ ∏(αεu)_∞ W(εu²; ε, qu/α, qu/β, qu/γ, qu/δ))`.
pub fn weight_density_alt(p: &QParameters, x: f64, tol: &ToleranceConfig) -> Result<AltDensity> {
    require_weight_domain(p, x)?;
    if is_endpoint(x) {
        return Ok(AltDensity { value: 0.0, imag_residue: 0.0, imaginary_warning: false });
    }
    let q = p.q;
    let qv = q.value();
    let (s, eps) = (p.s(), p.epsilon);
    let one = real(1.0);
    let abcd = p.abcd();
    let term = |u: C64| -> Result<C64> {
        let u2 = u * u;
        let mut top = vec![eps * qv * u2];
        top.extend(abcd.iter().map(|&a| s * eps * u / a));
        let mut bottom = vec![s * u2 * eps];
        bottom.extend(abcd.iter().map(|&a| a * u * eps));
        let w_top =
            w_value(s * u2 * eps / qv, [s * eps / qv, abcd[0] * u, abcd[1] * u, abcd[2] * u, abcd[3] * u], q, tol)?;
        let w_bottom =
            w_value(eps * u2, [eps, qv * u / abcd[0], qv * u / abcd[1], qv * u / abcd[2], qv * u / abcd[3]], q, tol)?;
        let num = 2.0 * u * qinf(&top, q, tol)? * w_top;
        let den = qinf(&bottom, q, tol)? * w_bottom;
        checked_div(num, den, "(s eps u^2, alpha eps u, ...)_inf W(eps u^2; ...)", None)
    };
    let u = SpectralPoint::on_cut(x).u;
    let bracket = term(u)? - term(u.inv())?;
    let pref = (one - s * eps * eps / (qv * qv)) * (one - s * eps * eps / qv) * qinf(&[eps * qv], q, tol)?;
    let pref = checked_div(pref, qinf(&[s * eps / (qv * qv)], q, tol)?, "(s eps/q^2)_inf", None)?;
    let v = pref * bracket / C64::new(0.0, 2.0 * PI);
    let imaginary_warning = v.im.abs() > 1e-8 * v.re.abs();
    Ok(AltDensity { value: v.re, imag_residue: v.im.abs(), imaginary_warning })
}

/// The `ε = 1` (Askey-Wilson) probability density
///
/// `(q, αβ, αγ, αδ, βγ, βδ, γδ)_∞ / (2π (s)_∞)
///  (u², u⁻²)_∞ / ∏(αu, α/u)_∞ / √(1-x²)`.
pub fn classical_aw_density(p: &QParameters, x: f64, tol: &ToleranceConfig) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("x = {x} is outside [-1, 1]")));
    }
    if is_endpoint(x) {
        return Ok(0.0);
    }
    let q = p.q;
    let u = SpectralPoint::on_cut(x).u;
    let mut top = vec![q.value()];
    top.extend(p.pairs());
    top.push(u * u);
    top.push((u * u).inv());
    let mut bottom = vec![p.s()];
    for a in p.abcd() {
        bottom.push(a * u);
        bottom.push(a / u);
    }
    let v = checked_div(qinf(&top, q, tol)?, qinf(&bottom, q, tol)?, "(s, alpha u, alpha/u, ...)_inf", None)?;
    Ok(v.re / (2.0 * PI * libm::sqrt(1.0 - x * x)))
}

/// `G(α, β, γ, δ, ε, u) = u⁻¹ (εq/u²)_∞ ∏(sε/(αu))_∞ / ((sε/u²)_∞ ∏(αε/u)_∞)
///  W(sε/(u²q); sε/q, α/u, β/u, γ/u, δ/u) W(εu²; ε, qu/α, qu/β, qu/γ, qu/δ)`.
pub fn g_function(p: &QParameters, u: C64, tol: &ToleranceConfig) -> Result<C64> {
    let q = p.q;
    let qv = q.value();
    let (s, eps) = (p.s(), p.epsilon);
    let abcd = p.abcd();
    let u2 = u * u;
    let mut top = vec![eps * qv / u2];
    top.extend(abcd.iter().map(|&a| s * eps / (a * u)));
    let mut bottom = vec![s * eps / u2];
    bottom.extend(abcd.iter().map(|&a| a * eps / u));
    let w1 = w_value(s * eps / (u2 * qv), [s * eps / qv, abcd[0] / u, abcd[1] / u, abcd[2] / u, abcd[3] / u], q, tol)?;
    let w2 = w_value(eps * u2, [eps, qv * u / abcd[0], qv * u / abcd[1], qv * u / abcd[2], qv * u / abcd[3]], q, tol)?;
    let v = checked_div(qinf(&top, q, tol)?, qinf(&bottom, q, tol)?, "(s eps/u^2, alpha eps/u, ...)_inf", None)?;
    Ok(v / u * w1 * w2)
}

fn rel_residual(lhs: C64, rhs: C64, scale: f64) -> f64 {
    let m = scale.max(rhs.norm());
    if m == 0.0 {
        0.0
    } else {
        (lhs - rhs).norm() / m
    }
}

/// Residual of
/// `G(u) - G(1/u) = (1/u - u)(1-sε²/q²)/(1-sε/q²)
///  (αβε, .., γδε, εq/u², εqu²)_∞ / ∏(αε/u, αεu)_∞`.
pub fn qdougall_residual(p: &QParameters, u: C64, tol: &ToleranceConfig) -> Result<f64> {
    let q = p.q;
    let qv = q.value();
    let (s, eps) = (p.s(), p.epsilon);
    let g1 = g_function(p, u, tol)?;
    let g2 = g_function(p, u.inv(), tol)?;
    let one = real(1.0);
    let mut top: Vec<C64> = p.pairs().iter().map(|&x| x * eps).collect();
    top.push(eps * qv / (u * u));
    top.push(eps * qv * u * u);
    let mut bottom = Vec::with_capacity(8);
    for a in p.abcd() {
        bottom.push(a * eps / u);
        bottom.push(a * eps * u);
    }
    let pref =
        (u.inv() - u) * (one - s * eps * eps / (qv * qv)) / nonzero_factor(s * eps / (qv * qv), "1 - s eps/q^2", None)?;
    let rhs =
        pref * checked_div(qinf(&top, q, tol)?, qinf(&bottom, q, tol)?, "(alpha eps/u, alpha eps u, ...)_inf", None)?;
    Ok(rel_residual(g1 - g2, rhs, g1.norm().max(g2.norm())))
}

/// `Π₁(u) = (q/(αu), q/(βu), q/(γu), q/(δu))_∞`, `Π₂(u) = (α/u, β/u, γ/u, δ/u)_∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiProducts {
    pub pi1: C64,
    pub pi2: C64,
}

impl PiProducts {
    pub fn new(p: &QParameters, u: C64, tol: &ToleranceConfig) -> Result<Self> {
        let qv = p.q.value();
        let abcd = p.abcd();
        let pi1 = qinf(&abcd.map(|a| qv / (a * u)), p.q, tol)?;
        let pi2 = qinf(&abcd.map(|a| a / u), p.q, tol)?;
        Ok(PiProducts { pi1, pi2 })
    }
}

/// Residual of the balanced (`s = q^m`, `ε = 1`) identity
///
/// `(q/α)^{m-3} (1/u - u) [u^{m-2} Π₁(u) Π₂(1/u) - u^{2-m} Π₁(1/u) Π₂(u)]
///  = (αβ/q, αγ/q, αδ/q, q²/(αβ), q²/(αγ), q²/(αδ), u², u⁻²)_∞`.
pub fn identity_4_10_residual(p: &QParameters, m: u32, u: C64, tol: &ToleranceConfig) -> Result<f64> {
    if !p.is_classical() {
        return Err(Error::domain("the balanced identity needs eps = 1"));
    }
    if m == 0 {
        return Err(Error::domain("m must be a positive integer"));
    }
    let q = p.q;
    let qv = q.value();
    let qm = q.pow(m as i64);
    if rel_diff(p.s(), qm) > 1e-10 {
        return Err(Error::domain(format!("alpha beta gamma delta = {} is not q^{m} = {qm}", p.s())));
    }
    if (u.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::domain(format!("the balanced identity needs |u| = 1, got {}", u.norm())));
    }
    let ui = u.inv();
    let mi = m as i64;
    let at_u = PiProducts::new(p, u, tol)?;
    let at_ui = PiProducts::new(p, ui, tol)?;
    let [al, be, ga, de] = p.abcd();
    let lead = crate::qcore::powi(qv / al, mi - 3) * (ui - u);
    let a = lead * crate::qcore::powi(u, mi - 2) * at_u.pi1 * at_ui.pi2;
    let b = lead * crate::qcore::powi(u, 2 - mi) * at_ui.pi1 * at_u.pi2;
    let rhs = qinf(
        &[
            al * be / qv,
            al * ga / qv,
            al * de / qv,
            qv * qv / (al * be),
            qv * qv / (al * ga),
            qv * qv / (al * de),
            u * u,
            ui * ui,
        ],
        q,
        tol,
    )?;
    Ok(rel_residual(a - b, rhs, a.norm().max(b.norm())))
}

/// Outcome of the no-discrete-spectrum guard. `certified == false` only
/// means the sufficient conditions do not apply.
#[derive(Debug, Clone, PartialEq)]
pub struct GuardVerdict {
    pub certified: bool,
    pub reason: String,
}

pub fn discrete_spectrum_guard(p: &QParameters) -> GuardVerdict {
    let rq = libm::sqrt(p.q.value().norm());
    let mods = p.abcd().map(|a| a.norm());
    let eps = p.epsilon;
    if eps.im.abs() > REAL_TOL * (1.0 + eps.re.abs()) {
        return GuardVerdict { certified: false, reason: format!("eps = {eps} is not real") };
    }
    let e = eps.re;
    let all_small = mods.iter().all(|&m| m < rq);
    let all_large = mods.iter().all(|&m| m > rq);
    if all_small && e.abs() < 1.0 {
        return GuardVerdict {
            certified: true,
            reason: format!("-1 < eps < 1 and |alpha|, |beta|, |gamma|, |delta| < |q|^(1/2) = {rq:.6}"),
        };
    }
    let bound = (p.q.value() * p.q.value() / p.s()).norm();
    if all_large && e.abs() < bound {
        return GuardVerdict {
            certified: true,
            reason: format!("|eps| < |q^2/s| = {bound:.6} and |alpha|, |beta|, |gamma|, |delta| > |q|^(1/2) = {rq:.6}"),
        };
    }
    let reason = if all_small {
        format!("parameters are below |q|^(1/2) but |eps| = {} is not below 1", e.abs())
    } else if all_large {
        format!("parameters are above |q|^(1/2) but |eps| = {} is not below |q^2/s| = {bound:.6}", e.abs())
    } else {
        format!("parameter moduli {mods:?} straddle |q|^(1/2) = {rq:.6}")
    };
    GuardVerdict { certified: false, reason }
}

fn require_guard(p: &QParameters) -> Result<()> {
    let g = discrete_spectrum_guard(p);
    if g.certified {
        Ok(())
    } else {
        Err(Error::Guard(format!("absence of discrete spectrum not certified: {}", g.reason)))
    }
}

/// Interior trapezoid nodes `θ_k = kπ/quad_n`, `k = 1..quad_n-1`, with
/// `x_k = cos θ_k` and quadrature weight `dω/dx (x_k) sin θ_k π/quad_n`.
/// The endpoints carry zero density and are omitted.
pub fn quadrature_thetas(quad_n: usize) -> Vec<f64> {
    (1..quad_n).map(|k| k as f64 * PI / quad_n as f64).collect()
}

/// `x_k = cos θ_k` for [`quadrature_thetas`].
pub fn quadrature_abscissae(quad_n: usize) -> Vec<f64> {
    quadrature_thetas(quad_n).into_iter().map(libm::cos).collect()
}

/// `(x_k, w_k)` pairs for the θ-trapezoid rule from precomputed densities.
pub fn quadrature_from_densities(thetas: &[f64], densities: &[f64], quad_n: usize) -> Vec<(f64, f64)> {
    let h = PI / quad_n as f64;
    thetas.iter().zip(densities).map(|(&t, &d)| (libm::cos(t), d * libm::sin(t) * h)).collect()
}

pub fn quadrature_nodes(p: &QParameters, quad_n: usize, tol: &ToleranceConfig) -> Result<Vec<(f64, f64)>> {
    if quad_n < 2 {
        return Err(Error::domain("quad_n must be at least 2"));
    }
    let thetas = quadrature_thetas(quad_n);
    let dens =
        quadrature_abscissae(quad_n).into_iter().map(|x| weight_density(p, x, tol)).collect::<Result<Vec<f64>>>()?;
    Ok(quadrature_from_densities(&thetas, &dens, quad_n))
}

/// `M[n][m] = Σ_k w_k P_n(x_k) P_m(x_k)` for `n, m <= n_max`, accumulated in
/// node order.
pub fn moment_matrix(p: &QParameters, n_max: usize, nodes: &[(f64, f64)]) -> Result<Vec<Vec<f64>>> {
    let mut m = vec![vec![0.0; n_max + 1]; n_max + 1];
    for &(x, w) in nodes {
        let vals = assoc_polynomial_values(p, n_max, real(x))?;
        for i in 0..=n_max {
            for j in 0..=n_max {
                m[i][j] += w * vals[i].re * vals[j].re;
            }
        }
    }
    Ok(m)
}

/// Quadrature matrix of `∫ P_n P_m dω` (θ-trapezoid, `quad_n` intervals).
pub fn orthogonality_check(
    p: &QParameters,
    n_max: usize,
    quad_n: usize,
    tol: &ToleranceConfig,
) -> Result<Vec<Vec<f64>>> {
    require_guard(p)?;
    let nodes = quadrature_nodes(p, quad_n, tol)?;
    moment_matrix(p, n_max, &nodes)
}

/// Expected diagonal `h_n = ∏_{k=1}^{n} b'^2_k`, `n = 0..=n_max`.
pub fn expected_norms(p: &QParameters, n_max: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = 1.0;
    out.push(acc);
    for k in 1..=n_max {
        acc *= coefficients(p, k as i64)?.b2.re;
        out.push(acc);
    }
    Ok(out)
}

/// Largest deviation `|M[n][m] - δ_{nm} h_n| / h_max(n,m)` where
/// `h_max(n,m) = sqrt(h_n h_m)`.
pub fn orthogonality_error(m: &[Vec<f64>], norms: &[f64]) -> f64 {
    let mut worst = 0.0_f64;
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let target = if i == j { norms[i] } else { 0.0 };
            let scale = libm::sqrt(norms[i] * norms[j]);
            worst = worst.max((v - target).abs() / scale);
        }
    }
    worst
}

/// `|∫ dω(x)/(z - x) - 1/CF(z)| / |1/CF(z)|` with the integral by the
/// θ-trapezoid rule and `CF` evaluated directly.
pub fn stieltjes_check(p: &QParameters, z: C64, quad_n: usize, cfg: &CfConfig, tol: &ToleranceConfig) -> Result<f64> {
    let pt = SpectralPoint::from_z(z);
    if !(pt.u.norm() > 1.0) {
        return Err(Error::domain("the Stieltjes check needs z off [-1, 1]"));
    }
    require_guard(p)?;
    let nodes = quadrature_nodes(p, quad_n, tol)?;
    stieltjes_residual(p, &pt, &nodes, cfg)
}

/// Residual of the Stieltjes transform for precomputed nodes.
pub fn stieltjes_residual(p: &QParameters, pt: &SpectralPoint, nodes: &[(f64, f64)], cfg: &CfConfig) -> Result<f64> {
    let mut integral = C64::new(0.0, 0.0);
    for &(x, w) in nodes {
        integral += w / (pt.z - x);
    }
    let inv_cf = cf_direct(p, pt, cfg)?.value.inv();
    Ok((integral - inv_cf).norm() / inv_cf.norm())
}

/// `-Im(1/CF(x + iη))/π`, the boundary value of the Stieltjes transform,
/// with `CF` from the minimal solution.
pub fn boundary_density(p: &QParameters, x: f64, eta: f64, tol: &ToleranceConfig) -> Result<f64> {
    if !(eta > 0.0) {
        return Err(Error::domain("eta must be positive"));
    }
    let pt = SpectralPoint::from_z(C64::new(x, eta));
    let cf = cf_pincherle(p, &pt, tol)?;
    Ok(-cf.inv().im / PI)
}

/// Density samples on an increasing grid of `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    pub nodes: Vec<f64>,
    pub density: Vec<f64>,
    pub params: QParameters,
    pub quadrature_n: usize,
}

impl WeightTable {
    /// Nodes are `cos θ_k` for the interior θ-trapezoid nodes, sorted
    /// increasingly.
    pub fn build(p: &QParameters, quad_n: usize, tol: &ToleranceConfig) -> Result<Self> {
        let mut nodes = quadrature_abscissae(quad_n);
        nodes.reverse();
        let density = nodes.iter().map(|&x| weight_density(p, x, tol)).collect::<Result<Vec<f64>>>()?;
        Ok(WeightTable { nodes, density, params: *p, quadrature_n: quad_n })
    }
}
