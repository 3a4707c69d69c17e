#!/usr/bin/env python3
"""Golden values for the special-function and superpotential tests.

Exact-rational series (fractions.Fraction) where the parameters are rational,
mpmath at 40 digits elsewhere. Output is frozen into tests/data/ and into
test_special_functions.cpp / test_riccati.cpp; rerun only to regenerate.
"""
import random
from fractions import Fraction

import mpmath as mp

mp.mp.dps = 40


def kummer_rational(a: Fraction, b: Fraction, z: Fraction, terms: int = 200) -> Fraction:
    total = Fraction(0)
    term = Fraction(1)
    for n in range(terms):
        total += term
        term = term * (a + n) * z / ((b + n) * (n + 1))
    return total


def frac_to_str(q: Fraction, digits: int = 25) -> str:
    return mp.nstr(mp.mpf(q.numerator) / q.denominator, digits)


def main() -> None:
    print("# log_gamma")
    print("lgamma(1/2) =", mp.nstr(mp.log(mp.sqrt(mp.pi)), 25))
    print("gamma(3/4)/gamma(1/4) =", mp.nstr(mp.gamma(0.75) / mp.gamma(0.25), 25))

    half = Fraction(1, 2)
    print("# kummer")
    m = kummer_rational(Fraction(-1, 2), half, Fraction(-1))
    print("M(-1/2,1/2,-1) =", frac_to_str(m))
    dm = Fraction(-1, 2) / half * kummer_rational(half, Fraction(3, 2), Fraction(-1))
    print("M'(-1/2,1/2,-1) =", frac_to_str(dm))

    # Oscillator superpotential at E = -3/2, nu = 0, y = 1:
    # B(y) = M(a, 1/2, -y^2), a = (1 + 2E)/4 = -1/2.
    a = Fraction(-1, 2)
    b = half
    z = Fraction(-1)
    y = Fraction(1)
    m0 = kummer_rational(a, b, z)
    m1 = a / b * kummer_rational(a + 1, b + 1, z)
    m2 = a * (a + 1) / (b * (b + 1)) * kummer_rational(a + 2, b + 2, z)
    B = m0
    dB = -2 * y * m1
    d2B = -2 * m1 + 4 * y * y * m2
    alpha = y + dB / B
    dalpha = 1 + d2B / B - (dB / B) ** 2
    print("# oscillator superpotential E=-3/2 nu=0 y=1")
    print("alpha =", frac_to_str(alpha))
    print("alpha' =", frac_to_str(dalpha))

    # E = -0.3, nu = 0.5, y = 1.3 (mpmath, symbolic structure via mp.diff)
    E = mp.mpf("-0.3")
    nu = mp.mpf("0.5")
    ratio = mp.gamma((3 - 2 * E) / 4) / mp.gamma((1 - 2 * E) / 4)

    def bracket(t):
        return mp.hyp1f1((1 + 2 * E) / 4, 0.5, -t * t) + 2 * nu * ratio * t * mp.hyp1f1((3 + 2 * E) / 4, 1.5, -t * t)

    def at(t):
        return t + mp.diff(lambda s: mp.log(bracket(s)), t)

    yy = mp.mpf("1.3")
    print("# oscillator superpotential E=-0.3 nu=0.5 y=1.3")
    print("alpha =", mp.nstr(at(yy), 25))
    print("alpha' =", mp.nstr(mp.diff(at, yy), 25))

    # Randomized Kummer golden table.
    rng = random.Random(20001153)
    with open("kummer_random.csv", "w") as out:
        out.write("a,b,z,m\n")
        for _ in range(100):
            aa = round(rng.uniform(-4.0, 4.0), 6)
            bb = round(rng.uniform(0.1, 5.0), 6)
            zz = round(rng.uniform(-200.0, 200.0), 6)
            val = mp.hyp1f1(mp.mpf(str(aa)), mp.mpf(str(bb)), mp.mpf(str(zz)))
            out.write(f"{aa!r},{bb!r},{zz!r},{mp.nstr(val, 20)}\n")


if __name__ == "__main__":
    main()
