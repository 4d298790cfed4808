"""Equivariant Chern classes of the tautological subbundle and their Kunneth components."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chow import LocalizedClass
from .fixed_points import QuotParams, enumerate_fixed_points
from .poly import Character, elementary_symmetric, exact_divide

# lift of the point class of P^1 as (value at 0, value at infinity):
# zero_side = (-f, 0), infinity_side = (0, f), symmetric = (-f/2, f/2)
LIFTS = ("symmetric", "zero_side", "infinity_side")


@dataclass
class ChernLocalization:
    index: int
    at_zero: LocalizedClass
    at_infinity: LocalizedClass


@dataclass
class KunnethPair:
    index: int
    lift: str
    t: LocalizedClass
    u: LocalizedClass

    def to_json(self) -> dict:
        return {"index": self.index, "lift": self.lift, "t": self.t.to_json(), "u": self.u.to_json()}


def _check_index(params: QuotParams, i: int) -> None:
    if not 1 <= i <= params.n - params.r:
        raise ValueError(f"Chern index must lie in 1..{params.n - params.r}, got {i}")


def chern_localizations(params: QuotParams, i: int) -> ChernLocalization:
    """c_i at 0 is e_i(e_j + a_j f), at infinity e_i(e_j - b_j f), over j with delta_j = 1."""
    _check_index(params, i)
    n = params.n
    zero, inf = {}, {}
    for p in enumerate_fixed_points(params):
        at0 = [Character.basis_e(n, j + 1) + Character.basis_f(n, p.a[j]) for j in p.support]
        atinf = [Character.basis_e(n, j + 1) - Character.basis_f(n, p.b[j]) for j in p.support]
        zero[p] = elementary_symmetric(at0, i, n)
        inf[p] = elementary_symmetric(atinf, i, n)
    return ChernLocalization(i, LocalizedClass(params, zero), LocalizedClass(params, inf))


def kunneth_components(params: QuotParams, i: int, lift: str = "symmetric") -> KunnethPair:
    """c_i = t_i + h u_{i-1} for the chosen lift h of the point class.

    u = (c_inf - c_0)/f for every lift; t = (c_0 + c_inf)/2, c_inf, or c_0 for
    the symmetric, zero_side and infinity_side lifts respectively.
    """
    if lift not in LIFTS:
        raise ValueError(f"lift must be one of {LIFTS}")
    loc = chern_localizations(params, i)
    fchar = Character.basis_f(params.n)
    t, u = {}, {}
    for p, c0 in loc.at_zero.values.items():
        cinf = loc.at_infinity.values[p]
        u[p] = exact_divide(cinf - c0, fchar, 1)
        if lift == "symmetric":
            t[p] = (c0 + cinf) * Fraction(1, 2)
        elif lift == "zero_side":
            t[p] = cinf
        else:
            t[p] = c0
    return KunnethPair(i, lift, LocalizedClass(params, t), LocalizedClass(params, u))
