#!/usr/bin/env python3
"""Standalone canonical-height oracle: h(x(2^N P)) / 4^N by exact doubling.

Usage: height_doubling.py A B x y [N]
Prints the value to 20 significant digits. Uses gmpy2 rationals only; no
code is shared with the Rust implementation.
"""
import math
import sys

import gmpy2
from gmpy2 import mpq, mpz


def integral_model(a, b):
    u = mpz(1)
    while True:
        a4, b6 = a * u**4, b * u**6
        if a4.denominator == 1 and b6.denominator == 1:
            return a4, b6, u
        u += 1


def log_int(n):
    n = abs(n)
    bits = n.bit_length()
    if bits <= 1000:
        return math.log(int(n))
    shift = bits - 1000
    return math.log(int(n >> shift)) + shift * math.log(2)


def height(a, b, x, n):
    a, b, u = integral_model(mpq(a), mpq(b))
    x = mpq(x) * u * u
    for _ in range(n):
        num = x**4 - 2 * a * x**2 - 8 * b * x + a * a
        den = 4 * (x**3 + a * x + b)
        if den == 0:
            return 0.0
        x = num / den
    return max(log_int(x.numerator), log_int(x.denominator)) / 4**n


def main():
    a, b, x, _y = sys.argv[1:5]
    n = int(sys.argv[5]) if len(sys.argv) > 5 else 12
    print(f"{height(a, b, x, n):.20g}")


if __name__ == "__main__":
    main()
