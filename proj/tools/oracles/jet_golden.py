"""Symbolic reference derivatives for the jet test battery.

Prints one C++ initializer row per (expression, eta) pair; paste the output
into tests/jet_battery.hpp when the battery changes.
"""
import sympy as sp

x = sp.Symbol("x")
p = 1 + 2 * x - sp.Rational(1, 2) * x**2 + sp.Rational(1, 4) * x**3 + sp.Rational(1, 10) * x**4
q = -3 + x / 3 + sp.Rational(7, 5) * x**2 - sp.Rational(1, 8) * x**5

battery = {
    "poly_product": p * q,
    "tanh_affine": sp.tanh(sp.Rational(7, 10) * x - sp.Rational(3, 10)),
    "tanh_of_poly": sp.tanh(p / 4),
    "tanh_times_poly": sp.tanh(p / 4) * q + 3,
    "nested_tanh": sp.tanh(sp.Rational(13, 10) * sp.tanh(x) + x**2 / 5),
    "two_layer": sp.Rational(1, 2) * sp.tanh(sp.Rational(6, 5) * sp.tanh(sp.Rational(4, 5) * x + sp.Rational(1, 10)) - sp.Rational(2, 5))
    + sp.Rational(3, 10) * sp.tanh(-x / 2 + sp.Rational(1, 5)),
}
points = ["-1.3", "0", "0.4", "2.1"]

for name, e in battery.items():
    ds = [e, sp.diff(e, x), sp.diff(e, x, 2), sp.diff(e, x, 3)]
    for pt in points:
        vals = [sp.N(d.subs(x, sp.Rational(pt)), 30) for d in ds]
        print(f'    {{"{name}", {pt}, {{' + ", ".join(f"{float(v):.17g}" for v in vals) + "}},")
