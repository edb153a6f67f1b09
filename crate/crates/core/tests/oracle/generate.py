"""Reference values frozen into tests/oracles.rs.

Every kernel is written from its definition (the integrated Brownian
kernels through their integral representation, integrated symbolically),
one-dimensional integrals are taken by mpmath quadrature at 30 digits, and
Farey points are exact fractions. Nothing here shares code or closed forms
with the Rust crate.

Run: python3 generate.py > values.txt
"""
from fractions import Fraction
from math import factorial

import mpmath as mp
import sympy as sp

mp.mp.dps = 30


def farey(n):
    return sorted({Fraction(p, q) for q in range(1, n + 1) for p in range(q + 1)})


def matern(order, lam):
    a = mp.sqrt(order) / lam
    poly = {1: [1], 3: [1, 1], 5: [1, 1, mp.mpf(1) / 3]}[order]

    def k(x, y):
        r = a * abs(x - y)
        return sum(c * r**j for j, c in enumerate(poly)) * mp.exp(-r)

    return k


def ibm(m):
    sx, sy, su, sl = sp.symbols("x y u l")
    tail = sp.integrate((sx - su) ** m * (sy - su) ** m, (su, 0, sl)) / factorial(m) ** 2
    tail = sp.lambdify((sx, sy, sl), sp.expand(tail), "mpmath")

    def k(x, y):
        poly = sum((x * y) ** j / mp.mpf(factorial(j)) ** 2 for j in range(m + 1))
        return poly + tail(x, y, min(x, y))

    return k


KERNELS = {
    "brownian": lambda x, y: 1 + min(x, y),
    "matern12": matern(1, 1),
    "matern32": matern(3, mp.sqrt(3)),
    "matern52": matern(5, mp.sqrt(5)),
    "ibm1": ibm(1),
    "ibm2": ibm(2),
    "ibm3": ibm(3),
    "expxy": lambda x, y: mp.exp(x * y),
}


def embedding(k, y):
    return mp.quad(lambda x: k(x, y), [0, y, 1])


def double_integral(k):
    return mp.quad(lambda y: embedding(k, y), [0, 1])


def mmd2(k, pts, dint):
    xs = [mp.mpf(p.numerator) / p.denominator for p in pts]
    n = len(xs)
    emb = sum(embedding(k, x) for x in xs)
    gram = sum(k(a, b) for a in xs for b in xs)
    return dint - 2 * emb / n + gram / n**2


if __name__ == "__main__":
    for name, k in KERNELS.items():
        dint = double_integral(k)
        print(f"{name} double_integral {mp.nstr(dint, 25)}", flush=True)
        for y in ["0", "0.3", "0.75", "1"]:
            print(f"{name} embedding {y} {mp.nstr(embedding(k, mp.mpf(y)), 25)}", flush=True)
        for n in [3, 6]:
            print(f"{name} mmd2 F{n} {mp.nstr(mmd2(k, farey(n), dint), 25)}", flush=True)
