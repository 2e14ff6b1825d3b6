"""Reference values for the special-function tests (mpmath, 40 digits).

Prints Rust array literals that are pasted into crates/core/tests/.
"""
from mpmath import mp, mpf, hyp2f1, quad, expm1, log1p

mp.dps = 40


def fl(s):
    return s if "." in s else s + ".0"


def family(alpha, b, m, x):
    a = -2 / mpf(alpha)
    return hyp2f1(a + m, b + m, 1 + a + m, -mpf(x))


print("// (alpha, b, shift, x, value)")
for alpha in ["2.5", "3.2", "3.7", "4", "4.8", "6"]:
    for b in [1, 2, 3, 4, 16]:
        for m in [0, 1, 7]:
            for x in ["0.01", "0.3", "1", "1.4", "1.6", "7.5", "100", "10000"]:
                v = family(mpf(alpha), b, m, mpf(x))
                print(f"    ({fl(alpha)}, {b}.0, {m}, {fl(x)}, {mp.nstr(v, 20)}),")


def psi(a1, a2, p, q):
    # Direct integrand on [1, 1e12] with log-spaced breakpoints; the
    # remaining tail through u = x^(-2/(q-2)), which makes it bounded.
    a1, a2, q = mpf(a1), mpf(a2), mpf(q)
    f = lambda u: 1 - ((1 + a1 * u ** (-q / 2)) * (1 + a2 * u ** (-q / 2))) ** (-p)
    big = mpf(10) ** 12
    body = quad(f, [mpf(10) ** (k / mpf(8)) for k in range(0, 97)])
    g = 2 / (q - 2)

    def tail(x):
        w = x ** (q / (q - 2))
        return g * -expm1(-p * (log1p(a1 * w) + log1p(a2 * w))) / w

    return body + quad(tail, [0, big ** (-1 / g)])


print("// (a1, a2, p, q, psi)")
for a1, a2, p, q in [
    ("1", "2", 2, "3.7"),
    ("1", "2", 1, "3.7"),
    ("0.5", "3", 1, "4"),
    ("10", "0.1", 2, "3.2"),
    ("0.001", "0.002", 1, "4.8"),
    ("50", "80", 2, "2.5"),
    ("3", "3", 1, "3.7"),
    ("7", "0", 2, "3.5"),
]:
    print(f"    ({fl(a1)}, {fl(a2)}, {p}, {fl(q)}, {mp.nstr(psi(a1, a2, p, q), 20)}),")
