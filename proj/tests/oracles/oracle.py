# Copyright 2026 The uddtd Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent high-precision reference values for the unit tests.

Ordered integrals use mpmath piecewise polynomials at 40 digits; cosine chains
are integrated symbolically with sympy; f-coefficients use nested adaptive
quadrature. Run once and commit the JSON it prints.
"""
import json
import sys

import mpmath as mp
import sympy as sp

mp.mp.dps = 40


def udd(n):
    return [mp.sin(j * mp.pi / (2 * n + 2)) ** 2 for j in range(1, n + 1)]


def peval(c, x):
    return sum(ck * x**k for k, ck in enumerate(c))


def pinteg(c):
    return [mp.mpf(0)] + [ck / (k + 1) for k, ck in enumerate(c)]


def pmul_mono(c, p):
    return [mp.mpf(0)] * p + list(c)


def chain(n_pulses, factors):
    """factors: list of (power, uses_F), earliest variable first."""
    b = [mp.mpf(0)] + udd(n_pulses) + [mp.mpf(1)]
    g = [[mp.mpf(1)] for _ in range(n_pulses + 1)]
    for power, uses_f in factors:
        out, acc = [], mp.mpf(0)
        for k, c in enumerate(g):
            s = (-1) ** k if uses_f else 1
            c = [s * x for x in pmul_mono(c, power)]
            q = pinteg(c)
            q[0] += acc - peval(q, b[k])
            out.append(q)
            acc = peval(q, b[k + 1])
        g = out
    return peval(g[-1], mp.mpf(1))


def coefficient(n_pulses, powers):
    return chain(n_pulses, [(p, True) for p in powers])


def magnus(n_pulses):
    e = lambda fl: chain(n_pulses, [(0, f) for f in fl])
    return {
        "I1": e([True]),
        "J2": e([True, False]) - e([False, True]),
        "I31": e([True, False, False]) + e([False, False, True]) - 2 * e([False, True, False]),
        "I32": 2 * e([True, False, True]) - e([True, True, False]) - e([False, True, True]),
    }


def cos_chain(s):
    th = sp.symbols("th0:%d" % (len(s) + 1))
    expr = sp.Integer(1)
    for j, sj in enumerate(s):
        expr = sp.integrate(expr * sp.cos(sj * th[j]), (th[j], 0, th[j + 1]))
    return mp.mpf(sp.N(expr.subs(th[len(s)], sp.pi), 40))


def f_coefficient(n_pulses, q):
    bps = [mp.mpf(0)] + [j * mp.pi / (n_pulses + 1) for j in range(1, n_pulses + 1)] + [mp.pi]

    def f(th):
        k = sum(1 for b in bps[1:-1] if th >= b)
        return (-1) ** k

    def nodes(upper):
        return [b for b in bps if b < upper] + [upper]

    def level(j, upper):
        if j < 0:
            return mp.mpf(1)
        return mp.quad(lambda t: f(t) * mp.sin(q[j] * t) * level(j - 1, t), nodes(upper))

    return level(len(q) - 1, mp.pi)


def clean(x, tol=1e-30):
    return 0.0 if abs(x) < tol else float(x)


def main():
    mp.mp.dps = 40
    out = {"magnus": {}, "coefficients": [], "cos_chain": [], "f_coefficient": []}
    for n in range(1, 9):
        out["magnus"][str(n)] = {k: clean(v) for k, v in magnus(n).items()}
    for n, p in [(2, [1]), (2, [0, 0]), (2, [0, 0, 0]), (3, [0, 1]), (3, [3]),
                 (4, [1, 1, 1]), (5, [2, 0, 3]), (6, [0, 0, 0, 0, 0, 0]), (8, [1, 2])]:
        out["coefficients"].append({"N": n, "p": p, "value": clean(coefficient(n, p))})
    for s in [[0], [3], [1, 2], [2, 4, 2], [1, 2, 3], [0, 0, 0], [3, 1], [5, 0, 2, 1]]:
        out["cos_chain"].append({"s": s, "value": clean(cos_chain(s))})
    mp.mp.dps = 20
    for n, q in [(1, [1]), (2, [1, 1]), (3, [1, 2]), (2, [2, -1]), (4, [3, 1])]:
        out["f_coefficient"].append({"N": n, "q": q, "value": clean(f_coefficient(n, q), 1e-18)})
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
