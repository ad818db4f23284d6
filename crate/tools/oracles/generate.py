"""Reference values for the integration tests.

Every quantity is computed from scratch with mpmath at 40 significant digits
(plain term-by-term sums and products, backward continued-fraction
evaluation) and written to crates/core/tests/common/oracle_values.rs.

    python3 tools/oracles/generate.py
"""

import pathlib

from mpmath import mp, mpc, mpf, exp, pi, sqrt, acos

mp.dps = 40
OUT = pathlib.Path(__file__).resolve().parents[2] / "crates/core/tests/common/oracle_values.rs"


def qp(a, q, n):
    r = mpc(1)
    for j in range(n):
        r *= 1 - a * q**j
    return r


def qpi(a, q):
    r = mpc(1)
    k = 0
    while True:
        t = a * q**k
        r *= 1 - t
        k += 1
        if abs(t) < mpf(10) ** (-mp.dps - 5) and k > 5:
            return r


def qpis(lst, q):
    r = mpc(1)
    for a in lst:
        r *= qpi(a, q)
    return r


def phi(nums, dens, q, z, kernel=None):
    s, t, k = mpc(0), mpc(1), 0
    while True:
        s += t * (kernel(k) if kernel else 1)
        r = z / (1 - q ** (k + 1))
        for x in nums:
            r *= 1 - x * q**k
        for x in dens:
            r /= 1 - x * q**k
        t *= r
        k += 1
        if t == 0 or (abs(t) < mpf(10) ** (-mp.dps - 3) * abs(s) and k > 3):
            return s


def vwp(a, params, z, q):
    return phi([a] + params, [a * q / x for x in params], q, z, lambda k: (1 - a * q ** (2 * k)) / (1 - a))


def W(a, b, c, d, e, f, q):
    return vwp(a, [b, c, d, e, f], a * a * q * q / (b * c * d * e * f), q)


class P:
    def __init__(self, q, al, be, ga, de, ep):
        self.q, self.al, self.be, self.ga, self.de, self.ep = [mpc(x) for x in (q, al, be, ga, de, ep)]
        self.s = self.al * self.be * self.ga * self.de


def AB(p, n):
    q, al, be, ga, de, ep, s = p.q, p.al, p.be, p.ga, p.de, p.ep, p.s
    A = ((1 - s * q ** (n - 1) * ep) * (1 - al * be * ep * q**n) * (1 - al * ga * ep * q**n) * (1 - al * de * ep * q**n)
         / (2 * al * (1 - s * q ** (2 * n - 1) * ep**2) * (1 - s * q ** (2 * n) * ep**2)))
    B = (al * (1 - ep * q**n) * (1 - be * ga * ep * q ** (n - 1)) * (1 - be * de * ep * q ** (n - 1))
         * (1 - ga * de * ep * q ** (n - 1)) / (2 * (1 - s * ep**2 * q ** (2 * n - 2)) * (1 - s * ep**2 * q ** (2 * n - 1))))
    return A, B


def coeffs(p, n):
    A, B = AB(p, n)
    Am1, _ = AB(p, n - 1)
    return A, B, -A - B + p.al / 2 + 1 / (2 * p.al), Am1 * B


def poly(p, n, z):
    pm, pc = mpc(0), mpc(1)
    for k in range(n):
        _, _, a, b2 = coeffs(p, k)
        pm, pc = pc, (z - a) * pc - b2 * pm
    return pc


def X1(p, n, u):
    q, al, be, ga, de, ep, s = p.q, p.al, p.be, p.ga, p.de, p.ep, p.s
    pref = (u / 2) ** n * qpi(s * u * ep * q**n / de, q) * qpi(s * ep**2 * q ** (2 * n - 1), q) / (
        qpi(s * ep * q ** (n - 1), q) * qpi(de * ep * q**n / u, q) * qpis([al * be * ep * q**n, al * ga * ep * q**n, be * ga * ep * q**n], q))
    return pref * W(al * be * ga * u / q, q ** (-n) / ep, ep * s * q ** (n - 1), al * u, be * u, ga * u, q)


def X2(p, n, u):
    q, al, be, ga, de, ep, s = p.q, p.al, p.be, p.ga, p.de, p.ep, p.s
    pref = (u / 2) ** n * qpi(s * ep**2 * q ** (2 * n - 1), q) * qpi(ep * de * u * q ** (n + 1), q) / (
        qpi(ep * q ** (n + 1), q) * qpis([be * de * ep * q**n, ga * de * ep * q**n, al * de * ep * q**n], q) * qpi(s * ep / (de * u) * q ** (n - 1), q))
    return pref * W(q * q * u / (al * be * ga), ep * q ** (n + 1), q ** (-n + 2) / (ep * s), q * u / al, q * u / be, q * u / ga, q)


def X3(p, n, u):
    q, al, be, ga, de, ep, s = p.q, p.al, p.be, p.ga, p.de, p.ep, p.s
    num = qpi(s * ep**2 * q ** (2 * n), q) * qpi(s * ep**2 * q ** (2 * n - 1), q) * qpi(be * ga * de * ep / u * q**n, q) * qpis(
        [ep * be * q ** (n + 1) / u, ep * ga * q ** (n + 1) / u, ep * de * q ** (n + 1) / u], q)
    den = qpi(ep * q ** (n + 1), q) * qpi(ep * s * q ** (n - 1), q) * qpis(
        [al * be * ep * q**n, al * ga * ep * q**n, al * de * ep * q**n, be * ga * ep * q**n, be * de * ep * q**n, ga * de * ep * q**n], q
    ) * qpi(be * ga * de * ep**2 / u * q ** (2 * n + 1), q)
    return (2 * u) ** (-n) * num / den * W(be * ga * de * ep**2 / u * q ** (2 * n), q / (al * u), ep * q ** (n + 1), be * de * ep * q**n, ga * de * ep * q**n, be * ga * ep * q**n, q)


def X4(p, n, u):
    q, al, be, ga, de, ep, s = p.q, p.al, p.be, p.ga, p.de, p.ep, p.s
    num = qpi(ep**2 * s * q ** (2 * n - 1), q) * qpis([x * ep / u * q ** (n + 1) for x in (al, be, ga, de)], q)
    den = qpi(ep * q ** (n + 1), q) * qpi(q ** (n + 2) * ep / u**2, q) * qpis(
        [al * be * ep * q**n, al * de * ep * q**n, al * ga * ep * q**n, be * ga * ep * q**n, be * de * ep * q**n, ga * de * ep * q**n], q)
    return (2 * u) ** (-n) * num / den * W(q ** (n + 1) * ep / u**2, ep * q ** (n + 1), q / (al * u), q / (be * u), q / (ga * u), q / (de * u), q)


def X5(p, n, u):
    q, al, be, ga, de, ep, s = p.q, p.al, p.be, p.ga, p.de, p.ep, p.s
    num = qpi(s * q ** (2 * n - 1) * ep**2, q) * qpi(u**2 * ep * q**n, q)
    den = qpi(s * q ** (n - 1) * ep, q) * qpis([x * u * ep * q**n for x in (al, be, ga, de)], q)
    return (2 * u) ** (-n) * num / den * W(q ** (-n) / (ep * u**2), q ** (-n) / ep, al / u, be / u, ga / u, de / u, q)


def X6(p, n, u):
    q, al, be, ga, de, ep, s = p.q, p.al, p.be, p.ga, p.de, p.ep, p.s
    num = qpi(s * ep**2 * q ** (2 * n - 1), q) * qpis([s * ep * q**n / (x * u) for x in (al, be, ga, de)], q)
    den = qpi(ep * s * q ** (n - 1), q) * qpi(s * ep * q**n / u**2, q) * qpis(
        [al * be * ep * q**n, al * ga * ep * q**n, al * de * ep * q**n, be * ga * ep * q**n, be * de * ep * q**n, ga * de * ep * q**n], q)
    return (2 * u) ** (-n) * num / den * W(s * ep * q ** (n - 1) / u**2, ep * s * q ** (n - 1), al / u, be / u, ga / u, de / u, q)


def cf_backward(p, z, depth=600):
    t = mpc(0)
    for n in range(depth, 0, -1):
        t = -coeffs(p, n)[3] / (z - coeffs(p, n)[2] + t)
    return z - coeffs(p, 0)[2] + t


def density(p, x):
    q, al, be, ga, de, ep, s = p.q, p.al, p.be, p.ga, p.de, p.ep, p.s
    u = exp(1j * acos(x))
    pref = 2 * sqrt(1 - x * x) / pi * (1 - s * ep**2 / q) * (1 - s * ep**2 / q**2) ** 2 / (1 - s * ep / q**2)
    num = qpis([ep * q / u**2, ep * q * u**2, al * be * ep, al * ga * ep, al * de * ep, be * ga * ep, be * de * ep, ga * de * ep, ep * q], q)
    den = qpis([al * ep / u, al * ep * u, be * ep / u, be * ep * u, ga * ep / u, ga * ep * u, de * ep / u, de * ep * u, s * ep / q**2], q)
    w = W(ep / u**2, q / (al * u), q / (be * u), q / (ga * u), q / (de * u), ep, q)
    return (pref * num / den / abs(w) ** 2).real


def wronskian_closed(p, u):
    q, al, be, ga, de, ep, s = p.q, p.al, p.be, p.ga, p.de, p.ep, p.s
    return 2 * (u - 1 / u) * qpi(s * ep**2 / q**3, q) * qpi(s * ep**2 / q**2, q) / qpis(
        [al * be * ep / q, al * ga * ep / q, al * de * ep / q, be * ga * ep / q, be * de * ep / q, ga * de * ep / q, s * ep / q**2, ep], q)


def G(p, u):
    q, al, be, ga, de, ep, s = p.q, p.al, p.be, p.ga, p.de, p.ep, p.s
    return 1 / u * qpi(ep * q / u**2, q) * qpis([s * ep / (x * u) for x in (al, be, ga, de)], q) / (
        qpi(s * ep / u**2, q) * qpis([x * ep / u for x in (al, be, ga, de)], q)
    ) * W(s * ep / (u**2 * q), s * ep / q, al / u, be / u, ga / u, de / u, q) * W(ep * u**2, ep, q * u / al, q * u / be, q * u / ga, q * u / de, q)


def c123(a, b, c, d, e, f, g, n, q):
    sa = sqrt(a)
    G5 = [c, d, e, f, g]

    def prodn(lst, k):
        r = mpc(1)
        for x in lst:
            r *= qp(x, q, k)
        return r

    c1 = prodn([sa, -sa, a * q / b] + [a * q / x for x in G5] + [a * q ** (n + 1)], n) / prodn(
        [a, q * sa, -q * sa, b] + G5, n) * (-1) ** n * q ** (n * (n - 1) // 2)
    c2 = prodn([q * sa, -q * sa, a * q**3 / b] + [a * q * q / x for x in G5] + [a * q ** (n + 2)], n - 1) / prodn(
        [a * q * q, q * q * sa, -q * q * sa, b] + [x * q for x in G5], n - 1) * (-1) ** (n - 1) * q ** ((n - 1) * (n - 2) // 2)
    c3 = prodn([sa / q, -sa / q, a / (b * q)] + [a / x for x in G5] + [a * q**n], n + 1) / prodn(
        [a / q**2, sa, -sa, b] + [x / q for x in G5], n + 1) * (-1) ** (n + 1) * q ** (n * (n + 1) // 2)
    return c1, c2, c3


def main():
    out = []

    def emit(name, v, note):
        v = mpc(v)
        out.append(f"/// {note}")
        out.append(f"pub const {name}: (f64, f64) = ({mp.nstr(v.real, 17, min_fixed=-1, max_fixed=-1)}, {mp.nstr(v.imag, 17, min_fixed=-1, max_fixed=-1)});")

    q = mpf("0.5")
    emit("QPOCH_FINITE", qp(mpf("0.3"), q, 5), "(0.3; 0.5)_5")
    emit("QPOCH_INF", qpi(mpf("0.3"), q), "(0.3; 0.5)_inf")
    emit("QPOCH_INF_COMPLEX", qpi(mpc("0.2", "0.3"), mpf("0.6")), "(0.2+0.3i; 0.6)_inf")
    emit("QPOCH_Q_Q", qpi(q, q), "(q; q)_inf, q = 0.5")
    emit("QPOCH_INF_SLOW", qpi(mpf("-0.7"), mpf("0.9")), "(-0.7; 0.9)_inf")

    emit("PHI_2_1", phi([mpf("0.3"), mpc("0.4", "0.1")], [mpf("0.6")], q, mpf("0.7")), "2phi1(0.3, 0.4+0.1i; 0.6; 0.5, 0.7)")
    emit("PHI_3_2_TERM", phi([q**-4, mpf("0.3"), mpf("0.45")], [mpf("0.2"), mpf("0.55")], q, q), "3phi2(q^-4, 0.3, 0.45; 0.2, 0.55; q, q), q = 0.5")
    emit("PHI_2_1_SMALL", phi([mpf("0.2"), mpf("0.3")], [mpf("0.4")], q, mpf("0.25")), "2phi1(0.2, 0.3; 0.4; 0.5, 0.25)")
    a = mpf("0.1")
    sa = sqrt(a)
    bf = [mpf("0.2"), mpf("0.3"), mpf("0.4"), mpf("0.5"), mpf("0.6")]
    explicit = phi([a, q * sa, -q * sa] + bf, [sa, -sa] + [a * q / x for x in bf], q, a * a * q * q / (bf[0] * bf[1] * bf[2] * bf[3] * bf[4]))
    emit("W_EXPLICIT", explicit, "W(0.1; 0.2, 0.3, 0.4, 0.5, 0.6), q = 0.5, summed as an 8phi7 with the explicit +-q sqrt(a) pair")
    emit("W_SAMPLE", W(mpf("0.2"), mpf("0.3"), mpc("0.45", "0.1"), mpf("0.6"), mpf("0.35"), mpf("0.55"), q), "W(0.2; 0.3, 0.45+0.1i, 0.6, 0.35, 0.55), q = 0.5")
    emit("W_TERM", W(mpf("0.2"), q**-3, mpf("0.3"), mpf("0.45"), mpf("0.6"), mpf("0.35"), q), "W(0.2; q^-3, 0.3, 0.45, 0.6, 0.35), q = 0.5")

    d = P("0.5", "0.3", "0.25", "0.2", "0.15", "0.5")
    for n in range(0, 4):
        A, B, a, b2 = coeffs(d, n)
        emit(f"COEF_A_UPPER_{n}", A, f"A'_{n}, q=0.5 alpha=0.3 beta=0.25 gamma=0.2 delta=0.15 eps=0.5")
        emit(f"COEF_B_UPPER_{n}", B, f"B'_{n}")
        emit(f"COEF_A_{n}", a, f"a'_{n}")
        emit(f"COEF_B2_{n}", b2, f"b'^2_{n}")
    z = mpc("0.3", "0.2")
    emit("POLY_4", poly(d, 4, z), "P_4(0.3+0.2i) at the same parameters")
    c = P("0.5", "0.3", "0.25", "0.2", "0.15", "1")
    u = mpc("1.3", "0.4")
    emit("AW_POLY_5", poly(c, 5, (u + 1 / u) / 2), "eps = 1 P_5 at u = 1.3+0.4i")

    u = mpc("4", "0.7")
    for name, X in (("S1", X1), ("S2", X2), ("S3", X3), ("S4", X4), ("S6", X6)):
        emit(f"SOL_{name}", X(d, 3, u), f"{name} at n = 3, u = 4+0.7i")
    e = P("0.5", "2", "3", "1.5", "2.5", "0.7")
    emit("SOL_S5", X5(e, 3, mpc("1.6", "0.5")), "S5 at n = 3, u = 1.6+0.5i, q=0.5 alpha=2 beta=3 gamma=1.5 delta=2.5 eps=0.7")

    p0 = P("0.5", "0.4", "0.4", "0.4", "0.4", "0.5")
    emit("CF_Z2", cf_backward(p0, mpf(2)), "CF(2), q=0.5 alpha=beta=gamma=delta=0.4 eps=0.5")
    u = mpc("1.5", "0.7")
    emit("CF_COMPLEX", cf_backward(p0, (u + 1 / u) / 2), "CF(z) at u = 1.5+0.7i, same parameters")
    emit("DENSITY_DEFAULT_025", density(p0, mpf("0.25")), "dw/dx at x = 0.25, same parameters")
    p1 = P("0.5", "0.4", "0.35", "0.3", "0.25", "0.5")
    emit("DENSITY_MIXED_M06", density(p1, mpf("-0.6")), "dw/dx at x = -0.6, q=0.5 alpha=0.4 beta=0.35 gamma=0.3 delta=0.25 eps=0.5")
    emit("WRONSKIAN_CLOSED", wronskian_closed(p1, mpc("1.3", "0.6")), "closed-form Casoratian at u = 1.3+0.6i, same parameters")
    emit("G_FUNCTION", G(p1, exp(mpc(0, "0.7"))), "G at u = exp(0.7i), same parameters")

    a, b, cc, dd, ee, ff = mpf("0.2"), mpf("0.3"), mpc("0.45", "0.1"), mpf("0.6"), mpf("0.35"), mpf("0.55")
    n = 3
    h = q ** (-n)
    g = a**3 * q**2 / (b * cc * dd * ee * ff * h)
    emit("TEN_PHI_NINE", vwp(a, [b, cc, dd, ee, ff, g, h], q, q), "10phi9 with a=0.2 b=0.3 c=0.45+0.1i d=0.6 e=0.35 f=0.55, n = 3, g by balance")
    c1, c2, c3 = c123(a, b, cc, dd, ee, ff, g, n, q)
    emit("REVERSAL_C1", c1, "c1 for the same series")
    emit("REVERSAL_C2", c2, "c2")
    emit("REVERSAL_C3", c3, "c3")

    header = "// @generated by tools/oracles/generate.py (mpmath, 40 digits). Do not edit.\n#![allow(dead_code, clippy::excessive_precision)]\n\n"
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(header + "\n".join(out) + "\n")
    print(f"wrote {len(out) // 2} values to {OUT}")


if __name__ == "__main__":
    main()
