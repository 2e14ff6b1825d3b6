"""Reference coverage values for the analytic crate's tests.

Independent of the Rust evaluation route: derivatives are taken by mpmath's
numerical differentiation (taylor/diff) of the Laplace functionals at s = 1,
Ψ is integrated directly from its definition, and y runs over [0, ∞) with
tanh-sinh quadrature. Prints Rust tuples.

Usage: oracle_coverage.py {ib,sc,ia,gain} CASE
"""

from mpmath import mp, mpf, hyp2f1, quad, taylor, diff, pi, inf, exp, factorial, gamma, binomial, atan, sqrt

mp.dps = 20

TIERS = [(4, 46, mpf("3.76")), (16, 30, mpf("3.67")), (40, 24, mpf("3.5"))]
# (M, S) for 4x4 rate 3/4, Alamouti, single antenna
CODES = {"4x4-3/4": (4, 3), "2x2": (2, 2), "1x1": (1, 1)}


def dbm(x):
    return mpf(10) ** ((mpf(x) - 30) / 10)


def network(codes):
    return [(mpf(d) * mpf("1e-6"), dbm(p), a, *CODES[c]) for (d, p, a), c in zip(TIERS, codes)]


def F(alpha, b, x):
    return hyp2f1(-2 / alpha, b, 1 - 2 / alpha, -x)


def coupling(tiers, l, k, y):
    lam_l, p_l, a_l, _, _ = tiers[l]
    lam, p, a, _, _ = tiers[k]
    return lam * (p / p_l) ** (2 / a) * y ** (2 * a_l / a)


def ib(tiers, n_rx, noise, t):
    total = mpf(0)
    for l, (lam_l, p_l, a_l, m_l, s_l) in enumerate(tiers):
        d = n_rx * m_l

        def g(s, y):
            e = -s * s_l * t * noise * y**a_l / p_l
            for k, (_, _, a_k, _, s_k) in enumerate(tiers):
                e -= pi * coupling(tiers, l, k, y) * F(a_k, s_k, s * t * s_l / s_k)
            return exp(e)

        def integrand(y):
            c = taylor(lambda s: g(s, y), 1, d - 1)
            return 2 * pi * lam_l * y * sum((-1) ** m * c[m] for m in range(d))

        total += quad(integrand, [0, 20, 100, 400, inf])
    return total


def sc(tiers, n_rx, noise, t):
    total = mpf(0)
    for l, (lam_l, p_l, a_l, _, _) in enumerate(tiers):
        for n in range(1, n_rx + 1):
            w = (-1) ** (n + 1) * binomial(n_rx, n)

            def integrand(y):
                e = -n * t * noise * y**a_l / p_l
                for k, (_, _, a_k, _, _) in enumerate(tiers):
                    e -= pi * coupling(tiers, l, k, y) * F(a_k, n, t)
                return 2 * pi * lam_l * y * exp(e)

            total += w * quad(integrand, [0, 20, 100, 400, inf])
    return total


def psi(a1, a2, p, q):
    f = lambda u: 1 - ((1 + a1 * u ** (-q / 2)) * (1 + a2 * u ** (-q / 2))) ** (-p)
    return quad(f, [1, 10, 100, 1e4, inf])


def ia_single_tier(alpha, m, t, model):
    """Noise-free, one tier: the y-integral of the Laplace functional is 1/A."""
    if model == "exact":
        a_fun = lambda s, tt, z: 1 + psi(s * (t - z), tt * z, m, alpha)
    else:
        a_fun = lambda s, tt, z: F(alpha, m, s * (t - z)) + F(alpha, m, tt * z) - 1
    body = mpf(0)
    for mm in range(m):

        def f(z):
            d = diff(lambda s, tt: 1 / a_fun(s, tt, z), (1, 1), (mm, m))
            return (-1) ** (mm + m) / (factorial(mm) * gamma(m)) * d / z

        body += quad(f, [0, t / 2, t])

    # z > T: only t-derivatives act and A(0, t z) = F(t z).
    def g(z):
        d = diff(lambda tt: 1 / F(alpha, m, tt * z), 1, m)
        return (-1) ** m / gamma(m) * d / z

    tail = quad(g, [t, 2 * t, 10 * t, 100 * t, inf])
    return body + tail


def gain_ia_eq(alpha, t):
    f1 = lambda x: hyp2f1(1, -2 / alpha, 1 - 2 / alpha, -x)

    def g(z):
        num = (2 * t - 4 * z) / (z + 1) - ((t * (2 + alpha) - z * (4 + alpha)) * f1(z) + alpha * (z - t) * f1(t - z))
        den = z * f1(z) + (z - t) * f1(t - z)
        return num / (alpha * den**2)

    # Numerator and denominator vanish at z = T/2. The integrand is smooth
    # there, but evaluating it close to T/2 cancels catastrophically: the
    # neighbourhood is bridged by its symmetric limit at doubled precision.
    d, h = mpf("1e-6"), mpf("1e-12")
    with mp.workdps(2 * mp.dps):
        mid = (g(t / 2 - h) + g(t / 2 + h)) / 2
    return quad(g, [0, t / 2 - d]) + 2 * d * mid + quad(g, [t / 2 + d, t])


def fmt(x):
    return mp.nstr(x, 17, min_fixed=-30, max_fixed=30)


if __name__ == "__main__":
    import sys

    section, case = sys.argv[1], int(sys.argv[2])
    noise = dbm(-104)
    if section == "ib":
        t2 = network(["4x4-3/4", "2x2", "1x1"])
        n = (1, 2, 4)[case]
        for t in (mpf("0.1"), mpf(1), mpf(10)):
            print(f"    ({n}, {fmt(t)}, {fmt(ib(t2, n, noise, t))}),", flush=True)
    elif section == "sc":
        siso = network(["1x1"] * 3)
        n = (2, 4)[case]
        for t in (mpf("0.5"), mpf(2)):
            print(f"    ({n}, {fmt(t)}, {fmt(sc(siso, n, noise, t))}),", flush=True)
    elif section == "ia":
        alpha, m, t = ((mpf("3.7"), 1, mpf(10)), (mpf("3.7"), 2, mpf(1)), (mpf(4), 1, mpf("0.5")), (mpf("3.2"), 2, mpf(5)))[case]
        print(f"    ({fmt(alpha)}, {m}, {fmt(t)}, {fmt(ia_single_tier(alpha, m, t, 'exact'))}, {fmt(ia_single_tier(alpha, m, t, 'nc'))}),", flush=True)
    elif section == "gain":
        alpha, t = ((mpf(4), mpf(1)), (mpf("3.7"), mpf(10)), (mpf("4.5"), mpf("0.3")))[case]
        print(f"    ({fmt(alpha)}, {fmt(t)}, {fmt(gain_ia_eq(alpha, t))}),", flush=True)
