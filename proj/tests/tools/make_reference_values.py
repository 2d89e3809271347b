#!/usr/bin/env python3
"""Regenerates the constants in tests/reference_values.hpp.

Everything is evaluated at 60 decimal digits with mpmath; the printed values
are truncated to 25 significant digits, far past double precision.
"""
from mpmath import mp, mpf, exp, power, fabs, nstr

mp.dps = 60


def psi(r):
    r = mpf(r)
    s = mpf(0)
    for j in range(1, 400):
        s += mpf(2) ** (-j) * exp(-1 / (mpf(2) ** j * r))
    return (s - exp(-1 / r)) / r


def ladder_eps(i, j_lo=-6, j_hi=6):
    worst = mpf(0)
    for j in range(j_lo, j_hi + 1):
        lam = max(mpf(0), 1 - mpf(2) ** (j - i))
        worst = max(worst, fabs(power(lam, 2 ** i) - exp(-mpf(2) ** j)))
    return worst


def main():
    print("psi_at_1          =", nstr(psi(1), 25))
    r = mpf(2) ** 20
    print("r2psi_at_2p20     =", nstr(r * r * psi(r), 25))
    print("pow_1m2m20        =", nstr(power(1 - mpf(2) ** -20, 2 ** 20), 25))
    print("powerlaw_clt_i10_j0 =", nstr(power(1 - mpf(2) ** -10, 2 ** 10), 25))
    for i in (4, 8, 12, 16, 20):
        print(f"ladder_eps[{i:2d}]    =", nstr(ladder_eps(i), 25))
    prev = None
    mono_from = 1
    for i in range(1, 21):
        e = ladder_eps(i)
        if prev is not None and e > prev:
            mono_from = i
        prev = e
    print("ladder_monotone_from =", mono_from)


if __name__ == "__main__":
    main()
