"""
Worked example Q_2(0, 2): the ten-point quot scheme of degree-2 quotients of
O^2 on P^1 of rank 0.

Golden data are transcribed from the localization diagrams of the worked
example.  The diagrams place the ten fixed points as follows (labels are
delta.a.b, and e = e1 - e2):

                 T  = 11.11.00
    UL = 11.20.00           UR = 11.02.00
         C1 = 11.01.10
    ML = 11.10.10           MR = 11.01.01
              C2 = 11.10.01
    LL = 11.00.20           LR = 11.00.02
                 B  = 11.00.11
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chern import chern_localizations, kunneth_components
from .chow import LocalizedClass, check_membership, module_span_contains, triangular_basis
from .fixed_points import FixedPoint, QuotParams, cell_dimension
from .poly import Polynomial

PARAMS = QuotParams(0, 2, 2)

POS = {
    "T": "11.11.00", "UL": "11.20.00", "UR": "11.02.00", "C1": "11.01.10", "ML": "11.10.10",
    "MR": "11.01.01", "C2": "11.10.01", "LL": "11.00.20", "LR": "11.00.02", "B": "11.00.11",
}

E1, E2, F = Polynomial.gens(2)
E = E1 - E2


def _cls(by_pos: dict) -> LocalizedClass:
    return LocalizedClass.from_dict(PARAMS, {POS[k]: v for k, v in by_pos.items()})


def basis_classes() -> dict[str, LocalizedClass]:
    """The ten module basis elements, keyed by the label of their lowest point."""
    f, e = F, E
    return {
        "11.00.11": LocalizedClass.constant(PARAMS, 1),
        "11.00.20": _cls({"T": 2 * f, "UL": f - e, "ML": f - e, "LL": f - e,
                          "UR": f + e, "MR": f + e, "LR": f + e, "C1": f, "C2": f}),
        "11.10.10": _cls({"T": 2 * f, "UL": 2 * f, "UR": 2 * f, "C1": f, "C2": f, "ML": f, "MR": f}),
        "11.20.00": _cls({"T": f**2, "UL": f**2, "UR": f**2}),
        "11.01.10": _cls({"T": f * (f + e), "C1": e * f, "UR": 2 * e * f, "MR": e * f}),
        "11.10.01": _cls({"T": f * (f + e), "C2": e * f, "UR": 2 * e * f, "MR": e * f}),
        "11.00.02": _cls({"UR": e * (e - f), "MR": e**2, "LR": e * (e + f)}),
        "11.01.01": _cls({"T": f**2 * (f + e), "UR": 2 * e**2 * f, "MR": e**2 * f}),
        "11.02.00": _cls({"T": f**2 * (f + e), "UR": 2 * e * f**2}),
        "11.11.00": _cls({"T": f**2 * (f**2 - e**2)}),
    }


def generator_classes() -> dict[str, LocalizedClass]:
    """x, y, z as drawn in the generator diagrams."""
    f, e = F, E
    return {
        "x": _cls({"T": f, "UL": f, "UR": f, "LL": -f, "LR": -f, "B": -f}),
        "y": _cls({"T": f, "B": -f, "UL": -e, "ML": -e, "LL": -e, "UR": e, "MR": e, "LR": e}),
        "z": _cls({"C1": e * f, "C2": -e * f}),
    }


def chern_golden() -> dict[tuple[int, str], LocalizedClass]:
    """(i, side) -> c_i localized at 0 or infinity of P^1, as drawn."""
    e1, e2, f = E1, E2, F
    s = e1 + e2
    p = e1 * e2
    return {
        (1, "0"): _cls({"T": s + 2 * f, "UL": s + 2 * f, "UR": s + 2 * f, "ML": s + f, "MR": s + f,
                        "LL": s, "LR": s, "C1": s + f, "C2": s + f, "B": s}),
        (1, "inf"): _cls({"T": s, "UL": s, "UR": s, "ML": s - f, "MR": s - f, "LL": s - 2 * f,
                          "LR": s - 2 * f, "C1": s - f, "C2": s - f, "B": s - 2 * f}),
        (2, "0"): _cls({"T": p + s * f + f**2, "UL": p + 2 * e2 * f, "UR": p + 2 * e1 * f,
                        "ML": p + e2 * f, "MR": p + e1 * f, "LL": p, "LR": p,
                        "C1": p + e1 * f, "C2": p + e2 * f, "B": p}),
        (2, "inf"): _cls({"T": p, "UL": p, "UR": p, "ML": p - e2 * f, "MR": p - e1 * f,
                          "LL": p - 2 * e2 * f, "LR": p - 2 * e1 * f, "B": p - s * f + f**2,
                          "C1": p - e2 * f, "C2": p - e1 * f}),
    }


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok}
        if self.detail:
            out["detail"] = self.detail
        return out


def _diff(lhs: LocalizedClass, rhs: LocalizedClass) -> str:
    for p in lhs.values:
        if lhs.values[p] != rhs.values[p]:
            return f"at {p.label('.')}: {lhs.values[p]} != {rhs.values[p]}"
    return ""


def _eq(name: str, lhs: LocalizedClass, rhs: LocalizedClass) -> Check:
    d = _diff(lhs, rhs)
    return Check(name, not d, d)


@dataclass
class Report:
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def q202_report(with_basis: bool = True) -> Report:
    rep = Report()
    add = rep.checks.append
    basis = basis_classes()
    gens = generator_classes()
    x, y, z = gens["x"], gens["y"], gens["z"]
    one = LocalizedClass.constant(PARAMS, 1)
    zero = LocalizedClass.constant(PARAMS, 0)

    for label, cls in basis.items():
        rep_m = check_membership(cls, "integral")
        add(Check(f"membership f({label})", rep_m.ok, "" if rep_m.ok else rep_m.failures[0][0].describe()))
        p = FixedPoint.from_label(label)
        deg = cell_dimension(PARAMS, p)
        add(Check(f"degree f({label}) = {deg}", cls.is_homogeneous(deg) and not cls[p].is_zero()))
    for name, cls in gens.items():
        rep_m = check_membership(cls, "integral")
        add(Check(f"membership {name}", rep_m.ok and cls.is_integral(),
                  "" if rep_m.ok else rep_m.failures[0][0].describe()))

    add(_eq("x = f(11.10.10) - f", x, basis["11.10.10"] - F))
    add(_eq("y = f(11.00.20) - f", y, basis["11.00.20"] - F))
    add(_eq("z = f(11.01.10) - f(11.10.01)", z, basis["11.01.10"] - basis["11.10.01"]))

    e2 = E * E
    f2 = F * F
    vanishing = {
        "xz": x * z,
        "yz": y * z,
        "x(x^2-f^2)": x * (x * x - f2),
        "(y^2-e^2)(y-x)": (y * y - e2) * (y - x),
        "z^2-(y^2-e^2)(x^2-f^2)": z * z - (y * y - e2) * (x * x - f2),
    }
    for name, cls in vanishing.items():
        add(_eq(f"{name} = 0", cls, zero))

    half = Fraction(1, 2)
    add(_eq("f(11.20.00) = x(x+f)/2", basis["11.20.00"], x * (x + F) * half))
    add(_eq("f(11.00.02) = (y+e)(y-x)/2", basis["11.00.02"], (y + E) * (y - x) * half))
    add(_eq("f(11.10.01) + f(11.01.10) = (y+e)(x+f)", basis["11.10.01"] + basis["11.01.10"], (y + E) * (x + F)))
    add(_eq("y f(11.01.10) = f(11.01.01)", y * basis["11.01.10"], basis["11.01.01"]))
    add(_eq("x f(11.01.10) = f(11.02.00)", x * basis["11.01.10"], basis["11.02.00"]))
    add(_eq("(y-e) f(11.01.01) = f(11.11.00)", (y - E) * basis["11.01.01"], basis["11.11.00"]))

    gold = chern_golden()
    for i in (1, 2):
        loc = chern_localizations(PARAMS, i)
        add(_eq(f"c_{i} at 0", loc.at_zero, gold[(i, "0")]))
        add(_eq(f"c_{i} at infinity", loc.at_infinity, gold[(i, "inf")]))
    k1 = kunneth_components(PARAMS, 1, "symmetric")
    k2 = kunneth_components(PARAMS, 2, "symmetric")
    s = E1 + E2
    add(_eq("t_1 = e1 + e2 + x", k1.t, x + s))
    add(_eq("u_0 = -2", k1.u, one * -2))
    add(_eq("t_2 = e1 e2 + x(y+e1+e2)/2 + z/2", k2.t, x * (y + s) * half + z * half + E1 * E2))
    add(_eq("u_1 = -(y+e1+e2)", k2.u, -(y + s)))
    add(Check("t_2 is not integral", not k2.t.is_integral()))
    for i, k in ((1, k1), (2, k2)):
        for lift in ("zero_side", "infinity_side"):
            other = kunneth_components(PARAMS, i, lift)
            add(_eq(f"u_{i-1} independent of the {lift} lift", other.u, k.u))

    if with_basis:
        computed = triangular_basis(PARAMS)
        for label, cls in basis.items():
            add(Check(f"f({label}) in span of triangular basis", module_span_contains(computed, cls)))
    return rep
