"""Brute-force oracle for the remainder and cutoff decay laws.

A = diag(-m..m), B = nearest-neighbour hopping (remainder) or sigma_x dimers
(cutoff). Symbols are rebuilt from their definitions in mpmath and
differentiated numerically at 40 digits, independently of the Rust jets.
"""
import sys
import mpmath as mp
import numpy as np

mp.mp.dps = 40


def ct_plus(t):
    if t <= 1:
        return mp.mpf(0)
    if t >= 2:
        return mp.mpf(1)
    tau = t - 1
    q = 1 / tau - 1 / (1 - tau)
    if q > 2000:
        return mp.mpf(0)
    return 1 / (1 + mp.exp(q))


def chi_tilde(t):
    return ct_plus(t) + ct_plus(-t)


def jp(t, rho):
    return (1 + t * t) ** (mp.mpf(rho) / 2)


def tail(rho, R):
    return lambda t: chi_tilde(t / R) * jp(t, rho)


def h_const(s):
    t2 = 1 / (2 * mp.mpf(s) - 1)
    return mp.mpf("1.01") * mp.sqrt(t2) * (1 + t2) ** (-s)


def drift(t, s):
    return t * (1 + t * t) ** (-s)


def phi_R(s, R):
    h = h_const(s)
    return lambda t: ct_plus(t / R) ** 2 * (h - drift(t, s)) + ct_plus(-t / R) ** 2 * (-h - drift(t, s))


def psi_R(s, R):
    phi = phi_R(s, R)
    return lambda t: R / 2 * (mp.diff(phi, t) + chi_tilde(t / R) ** 2 * mp.diff(lambda u: drift(u, s), t))


def remainder_norm(m, rho, s, sp, k, R):
    a = np.arange(-m, m + 1, dtype=float)
    n = len(a)
    f = tail(rho, R)
    vals = [f(mp.mpf(x)) for x in a]
    ders = [[mp.diff(f, mp.mpf(x), p) for p in range(1, k)] for x in a]
    M = np.zeros((n, n))
    for i in range(n):
        for j in (i - 1, i + 1):
            if 0 <= j < n:
                d = a[j] - a[i]
                r = vals[i] - vals[j] + sum(ders[i][p - 1] * mp.mpf(d) ** p / mp.factorial(p) for p in range(1, k))
                M[i, j] = float(r)
    w = lambda e: (1 + a * a) ** (e / 2)
    return np.linalg.norm(w(s)[:, None] * M * w(sp)[None, :], 2)


def cutoff_norms(m, s, alpha, R):
    a = np.arange(-m, m + 1, dtype=float)
    n = len(a)
    psi = psi_R(s, R)
    c = np.array([float(mp.sqrt(max(psi(mp.mpf(x)), 0))) for x in a])
    wa = (1 + a * a) ** (alpha / 2)
    norm = np.max(np.abs(c * wa))
    M = np.zeros((n, n))
    for i in range(0, n - 1, 2):
        M[i, i + 1] = c[i + 1] - c[i]
        M[i + 1, i] = c[i] - c[i + 1]
    return norm, np.linalg.norm(M * wa[None, :], 2)


def slope(rs, ys):
    return np.polyfit(np.log(rs), np.log(ys), 1)[0]


if __name__ == "__main__":
    m = int(sys.argv[1]) if len(sys.argv) > 1 else 256
    rs = [8.0, 16.0, 32.0, 64.0, 128.0]
    print(f"# A = diag(-{m}..{m}), R = {rs}")
    print("# remainder: rho s s' k target slope norms")
    for rho, s, sp, k in [(-1.2, .6, .6, 2), (0, .5, .5, 2), (-.5, .3, .7, 2), (.5, .5, .5, 2), (0, .5, .9, 3), (1, .6, .4, 3)]:
        ys = [remainder_norm(m, rho, s, sp, k, R) for R in rs]
        print(rho, s, sp, k, "%.2f" % (rho + s + sp - k), "%.3f" % slope(rs, ys), " ".join("%.4e" % y for y in ys), flush=True)
    print("# cutoff (dimer B, s = 0.9): alpha norm_slope commutator_slope")
    for alpha in [0.0, 0.5]:
        out = [cutoff_norms(m, 0.9, alpha, R) for R in rs]
        print(alpha, "%.3f" % slope(rs, [o[0] for o in out]), "%.3f" % slope(rs, [o[1] for o in out]), flush=True)
