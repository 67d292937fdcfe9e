"""Brute-force sup error for the walk on Z^2 with steps (1,0), (0,1) at 1/2 each.

p^(n)(x, n-x) = C(n, x) / 2^n exactly; the Gaussian approximation on that line is
sqrt(2/(pi n)) * exp(-(x - (n - x))^2 / (2n)). Prints e_n = sqrt(n) * sup error,
with the sup taken over every x whose Gaussian argument is within 8 standard
deviations, plus the binomial support.
"""

from fractions import Fraction
from math import comb

import mpmath

mpmath.mp.dps = 50


def scaled_error(n: int) -> mpmath.mpf:
    sigma = mpmath.sqrt(mpmath.mpf(n) / 4)
    lo = int(mpmath.floor(mpmath.mpf(n) / 2 - 8 * sigma))
    hi = int(mpmath.ceil(mpmath.mpf(n) / 2 + 8 * sigma))
    best = mpmath.mpf(0)
    for x in range(min(lo, 0), max(hi, n) + 1):
        exact = Fraction(comb(n, x), 2**n) if 0 <= x <= n else Fraction(0)
        p = mpmath.mpf(exact.numerator) / exact.denominator
        k = mpmath.sqrt(2 / (mpmath.pi * n)) * mpmath.exp(-mpmath.mpf(2 * x - n) ** 2 / (2 * n))
        best = max(best, abs(p - k))
    return mpmath.sqrt(n) * best


if __name__ == "__main__":
    for n in (25, 50, 100, 200):
        print(n, mpmath.nstr(scaled_error(n), 20))
