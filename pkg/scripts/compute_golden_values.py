"""Recompute the frozen reference values used by the test suite.

Everything here runs in mpmath at high working precision and shares no code
with the package, so the numbers it prints are an independent oracle.

    python scripts/compute_golden_values.py
"""
import mpmath as mp

mp.mp.dps = 200


def ml_series(alpha, beta, z, terms=1000):
    alpha, beta, z = mp.mpf(alpha), mp.mpf(beta), mp.mpf(z)
    return mp.fsum(z**k * mp.rgamma(k * alpha + beta) for k in range(terms))


def char_fn(alpha, lam):
    x = -mp.mpf(lam)
    return (ml_series(alpha, 1, x, 400) + (1 - mp.mpf(lam)) * ml_series(alpha, alpha, x, 400)
            + ml_series(alpha, mp.mpf(alpha) - 1, x, 400))


def classical_robin(mu):
    # y'' + mu^2 y = 0, y(0) - y'(0) = 0, y(1) + y'(1) = 0, divided by mu
    return 2 * mp.cos(mu) + (1 - mu**2) * mp.sin(mu) / mu


def roots_by_scan(f, lo, hi, n):
    xs = [lo + (hi - lo) * mp.mpf(i) / n for i in range(n + 1)]
    vals = [f(x) for x in xs]
    out = []
    for x0, x1, f0, f1 in zip(xs, xs[1:], vals, vals[1:]):
        if f0 * f1 < 0:
            out.append(mp.findroot(f, (x0, x1), solver="anderson"))
    return out


def main():
    print("E_{1.5,1.5}(-1) =", mp.nstr(ml_series("1.5", "1.5", -1), 20))
    print("1/Gamma(2.5)     =", mp.nstr(mp.rgamma(2.5), 20))
    print("Gamma(3)/Gamma(1.5)*0.5**0.5 =", mp.nstr(2 / mp.gamma(1.5) * mp.sqrt(0.5), 20))
    print("A(1.5,0,1)       =", mp.nstr(mp.mpf("1.5") + mp.gamma(1.5), 20))

    mp.mp.dps = 40
    mus = roots_by_scan(classical_robin, mp.mpf("0.01"), mp.sqrt(30), 2000)
    print("alpha=2 classical roots lambda = mu^2:", [mp.nstr(m**2, 16) for m in mus])

    for alpha in ("1.1", "1.25", "1.5", "1.75", "2"):
        a = mp.mpf(alpha)
        roots = roots_by_scan(lambda lam: char_fn(a, lam), mp.mpf("0.001"), mp.mpf(30), 300)
        print(f"alpha={alpha} EV roots in (0, 30]:", [mp.nstr(r, 16) for r in roots])


if __name__ == "__main__":
    main()
