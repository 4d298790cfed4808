"""
Localized classes, the relation systems cutting out the image of the
localization map, and the linear algebra built on them (graded dimensions,
Betti numbers, triangular bases, and the Euler-class sum check on vertical
families).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import factorial, prod

from . import linalg
from .curves import Family, curves_at, horizontal_data, vertical_families
from .fixed_points import (
    FixedPoint,
    QuotParams,
    cell_dimension,
    down_weights,
    enumerate_fixed_points,
    lex_functional,
)
from .poly import (
    Character,
    Direction,
    Polynomial,
    as_poly,
    chi_adic_expansion,
    dim_homogeneous,
    directional_derivative,
    divisible_by_power,
    monomials,
    product,
)

RINGS = ("rational", "integral")


class LocalizedClass:
    """A tuple of polynomials indexed by the fixed points."""

    def __init__(self, params: QuotParams, values: dict):
        self.params = params
        pts = enumerate_fixed_points(params)
        missing = [p for p in pts if p not in values]
        if missing:
            raise ValueError(f"no value at {missing[0].label()}")
        extra = set(values) - set(pts)
        if extra:
            raise ValueError(f"{sorted(extra)[0].label()} is not a fixed point of {params}")
        self.values = {p: as_poly(values[p], params.n) for p in pts}

    @classmethod
    def constant(cls, params: QuotParams, c) -> "LocalizedClass":
        one = Polynomial.const(params.n, c)
        return cls(params, {p: one for p in enumerate_fixed_points(params)})

    @classmethod
    def from_dict(cls, params: QuotParams, values: dict, default=0) -> "LocalizedClass":
        """Fill unspecified points with ``default``; keys may be FixedPoints or labels."""
        vals = {}
        for k, v in values.items():
            vals[k if isinstance(k, FixedPoint) else FixedPoint.from_label(k)] = v
        full = {p: vals.get(p, default) for p in enumerate_fixed_points(params)}
        return cls(params, full)

    def __getitem__(self, p) -> Polynomial:
        if not isinstance(p, FixedPoint):
            p = FixedPoint.from_label(p)
        return self.values[p]

    def _same(self, other: "LocalizedClass"):
        if other.params != self.params:
            raise ValueError(f"classes over different spaces ({self.params} vs {other.params})")

    def __add__(self, other):
        if isinstance(other, LocalizedClass):
            self._same(other)
            return LocalizedClass(self.params, {p: v + other.values[p] for p, v in self.values.items()})
        return LocalizedClass(self.params, {p: v + as_poly(other, self.params.n) for p, v in self.values.items()})

    __radd__ = __add__

    def __neg__(self):
        return LocalizedClass(self.params, {p: -v for p, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LocalizedClass):
            self._same(other)
            return LocalizedClass(self.params, {p: v * other.values[p] for p, v in self.values.items()})
        return LocalizedClass(self.params, {p: v * as_poly(other, self.params.n) for p, v in self.values.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return LocalizedClass(self.params, {p: v / c for p, v in self.values.items()})

    def __pow__(self, k: int):
        out = LocalizedClass.constant(self.params, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, LocalizedClass):
            return NotImplemented
        return self.params == other.params and self.values == other.values

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def is_integral(self) -> bool:
        return all(v.is_integral() for v in self.values.values())

    def is_homogeneous(self, k: int | None = None) -> bool:
        degs = {v.degree() for v in self.values.values() if not v.is_zero()}
        if not degs:
            return True
        if len(degs) != 1 or not all(v.is_homogeneous() for v in self.values.values()):
            return False
        return k is None or degs == {k}

    def degree(self) -> int:
        return max((v.degree() for v in self.values.values()), default=-1)

    def support(self) -> list[FixedPoint]:
        return [p for p, v in self.values.items() if not v.is_zero()]

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "values": [{"point": p.to_json(), "poly": v.to_json()} for p, v in self.values.items()],
        }

    @classmethod
    def from_json(cls, obj) -> "LocalizedClass":
        params = QuotParams.from_json(obj["params"])
        vals = {}
        for entry in obj["values"]:
            p = FixedPoint.from_json(entry["point"])
            if p in vals:
                raise ValueError(f"duplicate value for {p.label()}")
            poly = entry["poly"]
            vals[p] = Polynomial.from_json(params.n, poly) if isinstance(poly, list) else poly
        return cls(params, vals)

    def __repr__(self):
        inner = ", ".join(f"{p.label()}: {v}" for p, v in self.values.items())
        return f"LocalizedClass({self.params}, {{{inner}}})"


# ---------------------------------------------------------------------------
# relations


@dataclass(frozen=True)
class RelationInstance:
    kind: str
    terms: tuple  # ((FixedPoint, Fraction), ...)
    modulus: Character
    power: int = 1
    derivative: tuple | None = None  # (Direction, order)

    def combine(self, values) -> Polynomial:
        """sum coeff * D^order(value at point)."""
        n = self.modulus.n
        out = Polynomial.zero(n)
        for p, c in self.terms:
            v = values[p]
            if self.derivative is not None:
                direction, order = self.derivative
                v = directional_derivative(v, direction, order)
            out = out + v * c
        return out

    def holds(self, values) -> bool:
        return divisible_by_power(self.combine(values), self.modulus, self.power)

    def points(self) -> list[FixedPoint]:
        return [p for p, _ in self.terms]

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "terms": [{"point": p.to_json(), "coeff": str(c)} for p, c in self.terms],
            "modulus": str(self.modulus),
            "power": self.power,
        }
        if self.derivative is not None:
            direction, order = self.derivative
            out["derivative"] = {"direction": str(direction), "order": order}
        return out

    def describe(self) -> str:
        lhs = " ".join(f"{'+' if c > 0 else '-'} {abs(c)}*[{p.label()}]" for p, c in self.terms)
        d = ""
        if self.derivative is not None:
            d = f" D_{self.derivative[0]}^{self.derivative[1]}"
        m = f"({self.modulus})" + (f"^{self.power}" if self.power > 1 else "")
        return f"{self.kind}:{d} {lhs} = 0 mod {m}"


def _box(lo, hi):
    return iproduct(*(range(x, y + 1) for x, y in zip(lo, hi)))


def _vertical_box_terms(fam: Family, lo: tuple, hi: tuple, coeff) -> tuple:
    """Members whose b-vector lies in [lo, hi], paired with coeff(b-vector)."""
    delta, sums = fam.anchor
    terms = []
    for bvec in _box(lo, hi):
        a = tuple(s - x for s, x in zip(sums, bvec))
        terms.append((FixedPoint(delta, a, tuple(bvec)), coeff(bvec)))
    return tuple(terms)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _vec_factorial(v) -> int:
    return prod(factorial(x) for x in v)


def relations_gkm(params: QuotParams) -> list[RelationInstance]:
    """Relations I, II(a), II(b): one congruence per type I/II curve."""
    kinds = {"I": "I", "II_a": "IIa", "II_b": "IIb"}
    seen = {}
    for p in enumerate_fixed_points(params):
        for c in curves_at(params, p):
            if c.kind not in kinds:
                continue
            key = frozenset((c.source, c.target))
            if key in seen:
                continue
            seen[key] = RelationInstance(kinds[c.kind], ((c.source, Fraction(1)), (c.target, Fraction(-1))), c.weight)
    return list(seen.values())


def relations_horizontal(params: QuotParams, squared: bool) -> list[RelationInstance]:
    out = []
    for h in horizontal_data(params):
        p, pa, pb, pab = h.corners()
        terms = ((p, Fraction(1)), (pa, Fraction(-1)), (pb, Fraction(-1)), (pab, Fraction(1)))
        if squared:
            out.append(RelationInstance("IIc_prime", terms, h.modulus(), 2))
        else:
            out.append(RelationInstance("IIc", terms, h.modulus(), 1, (Direction.e(h.j), 1)))
    return out


def relations_vertical_derivative(params: QuotParams, reading: str = "boxes") -> list[RelationInstance]:
    """Derivative relations on vertical families, one per box [lo, hi] of b-vectors.

    ``reading="boxes"`` uses every box lo < hi.  ``reading="anchored"`` keeps only
    the boxes whose lower corner is b = 0, i.e. the members (delta, a + c, b - c)
    with lo <= c <= b relative to a member (delta, a, b); this is strictly
    weaker and is kept for comparison.
    """
    if reading not in ("boxes", "anchored"):
        raise ValueError(f"unknown reading {reading!r}")
    n = params.n
    fmod = Character.basis_f(n)
    out = []
    for fam in vertical_families(params):
        delta, sums = fam.anchor
        for hi in _box((0,) * n, sums):
            for lo in _box((0,) * n, hi):
                if lo == hi:
                    continue
                span = sum(hi) - sum(lo)
                if reading == "boxes":
                    def coeff(c, lo=lo, hi=hi):
                        den = _vec_factorial(x - y for x, y in zip(hi, c)) * _vec_factorial(
                            x - y for x, y in zip(c, lo))
                        return Fraction(_sign(sum(c)), den)
                    terms = _vertical_box_terms(fam, lo, hi, coeff)
                else:
                    # member (delta, a, b) with b = hi, shifts c in [lo, hi]
                    terms = []
                    for c in _box(lo, hi):
                        bvec = tuple(x - y for x, y in zip(hi, c))
                        a = tuple(s - x for s, x in zip(sums, bvec))
                        den = _vec_factorial(x - y for x, y in zip(hi, c)) * _vec_factorial(
                            x - y for x, y in zip(c, lo))
                        terms.append((FixedPoint(delta, a, bvec), Fraction(_sign(sum(c)), den)))
                    terms = tuple(terms)
                out.append(RelationInstance("III", terms, fmod, 1, (Direction.f(), span - 1)))
    return out


def relations_vertical_power(params: QuotParams) -> list[RelationInstance]:
    """For each (delta, a, b) with b != 0: sum_{0<=c<=b} (-1)^|c|/(c!(b-c)!) f_(delta,a+c,b-c) in f^|b| S."""
    n = params.n
    out = []
    for p in enumerate_fixed_points(params):
        if not any(p.b):
            continue
        terms = []
        for c in _box((0,) * n, p.b):
            q = FixedPoint(p.delta, tuple(x + y for x, y in zip(p.a, c)), tuple(x - y for x, y in zip(p.b, c)))
            terms.append((q, Fraction(_sign(sum(c)), _vec_factorial(c) * _vec_factorial(q.b))))
        out.append(RelationInstance("III_prime", tuple(terms), Character.basis_f(n, 1), sum(p.b)))
    return out


def generate_relations(params: QuotParams, ring: str = "rational", reading: str = "boxes") -> list[RelationInstance]:
    if ring not in RINGS:
        raise ValueError(f"ring must be one of {RINGS}")
    rels = relations_gkm(params)
    if ring == "rational":
        rels += relations_horizontal(params, squared=False)
        rels += relations_vertical_derivative(params, reading)
    else:
        rels += relations_horizontal(params, squared=True)
        rels += relations_vertical_power(params)
    return rels


@dataclass
class MembershipReport:
    ok: bool
    failures: list = field(default_factory=list)  # (RelationInstance | None, Polynomial | FixedPoint)
    checked: int = 0

    def to_json(self) -> dict:
        out = []
        for rel, wit in self.failures:
            if rel is None:
                out.append({"kind": "non-integral entry", "point": wit.to_json()})
            else:
                out.append({"relation": rel.to_json(), "witness": wit.to_json()})
        return {"pass": self.ok, "checked": self.checked, "failures": out}


def check_membership(cls: LocalizedClass, ring: str = "integral",
                     relations: list[RelationInstance] | None = None,
                     stop_at_first: bool = False) -> MembershipReport:
    if relations is None:
        relations = _cached_relations(cls.params, ring)
    failures = []
    if ring == "integral":
        for p, v in cls.values.items():
            if not v.is_integral():
                failures.append((None, p))
                if stop_at_first:
                    return MembershipReport(False, failures, 0)
    for k, rel in enumerate(relations):
        w = rel.combine(cls.values)
        if not divisible_by_power(w, rel.modulus, rel.power):
            failures.append((rel, w))
            if stop_at_first:
                return MembershipReport(False, failures, k + 1)
    return MembershipReport(not failures, failures, len(relations))


@lru_cache(maxsize=64)
def _cached_relations(params: QuotParams, ring: str) -> list[RelationInstance]:
    return generate_relations(params, ring)


# ---------------------------------------------------------------------------
# graded pieces


@lru_cache(maxsize=None)
def _monomial_residues(mono: tuple, modulus: Character, power: int, derivative) -> tuple:
    """Flattened chi-adic residues of D^order(mono) as ((slot, exps), coeff) pairs."""
    n = modulus.n
    p = Polynomial.monomial(mono)
    if derivative is not None:
        p = directional_derivative(p, derivative[0], derivative[1])
    if p.is_zero():
        return ()
    out = []
    for slot, r in enumerate(chi_adic_expansion(p, modulus, power)):
        for exps, c in r.items():
            out.append(((slot, exps), c))
    return tuple(out)


@dataclass
class DegreeSystem:
    """Linear conditions on degree-k tuples; unknown (point t, monomial u) has index t * len(monos) + u."""

    params: QuotParams
    degree: int
    points: list
    monos: list
    rows: list

    @property
    def ncols(self) -> int:
        return len(self.points) * len(self.monos)

    def vector_to_class(self, vec: dict) -> LocalizedClass:
        m = len(self.monos)
        vals = {p: {} for p in self.points}
        for idx, c in vec.items():
            vals[self.points[idx // m]][self.monos[idx % m]] = c
        return LocalizedClass(self.params, {p: Polynomial(self.params.n, t) for p, t in vals.items()})

    def class_to_vector(self, cls: LocalizedClass) -> dict:
        m = len(self.monos)
        mindex = {mono: u for u, mono in enumerate(self.monos)}
        vec = {}
        for t, p in enumerate(self.points):
            for exps, c in cls.values[p].items():
                if exps not in mindex:
                    raise ValueError(f"class is not homogeneous of degree {self.degree}")
                vec[t * m + mindex[exps]] = c
        return vec


def degree_system(params: QuotParams, k: int, ring: str = "rational",
                  relations: list[RelationInstance] | None = None) -> DegreeSystem:
    if k < 0:
        raise ValueError("degree must be non-negative")
    if relations is None:
        relations = _cached_relations(params, ring)
    points = enumerate_fixed_points(params)
    pindex = {p: t for t, p in enumerate(points)}
    monos = monomials(params.n + 1, k)
    m = len(monos)
    rows = []
    for rel in relations:
        cond = {}
        for p, coeff in rel.terms:
            base = pindex[p] * m
            for u, mono in enumerate(monos):
                for key, c in _monomial_residues(mono, rel.modulus, rel.power, rel.derivative):
                    row = cond.setdefault(key, {})
                    s = row.get(base + u, 0) + coeff * c
                    if s:
                        row[base + u] = s
                    else:
                        row.pop(base + u, None)
        rows.extend(r for r in cond.values() if r)
    return DegreeSystem(params, k, points, monos, rows)


def graded_dimension(params: QuotParams, k: int, ring: str = "rational", basis: bool = False,
                     relations: list[RelationInstance] | None = None):
    """dim_Q of the degree-k homogeneous tuples satisfying the relations (and a basis if asked)."""
    sysk = degree_system(params, k, ring, relations)
    if not basis:
        return sysk.ncols - linalg.rank(sysk.rows)
    vecs = linalg.nullspace(sysk.rows, sysk.ncols)
    return len(vecs), [sysk.vector_to_class(v) for v in vecs]


def betti_by_cells(params: QuotParams, v=lex_functional) -> list[int]:
    out = [0] * (params.dim + 1)
    for p in enumerate_fixed_points(params):
        out[cell_dimension(params, p, v)] += 1
    return out


def betti_by_graded_dimension(params: QuotParams, ring: str = "rational") -> list[int]:
    nvars = params.n + 1
    out = []
    for k in range(params.dim + 1):
        g = graded_dimension(params, k, ring)
        out.append(g - sum(out[j] * dim_homogeneous(nvars, k - j) for j in range(k)))
    return out


class BettiMismatch(RuntimeError):
    pass


def betti_numbers(params: QuotParams) -> list[int]:
    a = betti_by_cells(params)
    b = betti_by_graded_dimension(params)
    if a != b:
        raise BettiMismatch(f"cell count {a} disagrees with graded dimensions {b}")
    return a


# ---------------------------------------------------------------------------
# triangular basis


def upper_sets(params: QuotParams, v=lex_functional) -> dict[FixedPoint, set]:
    """q >= p iff q is reachable from p along curves whose weight at the start is positive."""
    points = enumerate_fixed_points(params)
    up = {p: [c.target for c in curves_at(params, p) if v(c.weight) > 0] for p in points}
    out = {}
    for p in points:
        seen = {p}
        queue = deque([p])
        while queue:
            x = queue.popleft()
            for y in up[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        out[p] = seen
    return out


def down_product(params: QuotParams, p: FixedPoint, v=lex_functional) -> Polynomial:
    return product((w.to_poly() for w in down_weights(params, p, v)), params.n)


def triangular_basis(params: QuotParams, v=lex_functional) -> dict[FixedPoint, LocalizedClass]:
    """One class g(p) per fixed point: degree = cell dimension, supported on q >= p,
    g(p)_p = product of the down-weights at p.  Free choices are set to zero."""
    ups = upper_sets(params, v)
    systems = {}
    out = {}
    for p in sorted(enumerate_fixed_points(params), key=lambda q: (cell_dimension(params, q, v), q)):
        k = cell_dimension(params, p, v)
        if k not in systems:
            systems[k] = degree_system(params, k, "rational")
        sysk = systems[k]
        m = len(sysk.monos)
        allowed = {t for t, q in enumerate(sysk.points) if q in ups[p]}
        t0 = sysk.points.index(p)
        target = down_product(params, p, v)
        mindex = {mono: u for u, mono in enumerate(sysk.monos)}
        fixed = {t0 * m + u: Fraction(0) for u in range(m)}
        for exps, c in target.items():
            fixed[t0 * m + mindex[exps]] = Fraction(c)
        rows = []
        for r in sysk.rows:
            rr = {i: c for i, c in r.items() if i // m in allowed}
            if rr:
                rows.append(rr)
        sol = linalg.solve(rows, sysk.ncols, fixed)
        out[p] = sysk.vector_to_class(sol)
    return out


def in_span(classes: list[LocalizedClass], target: LocalizedClass) -> bool:
    """Whether target is a Q-combination of the (homogeneous, same-degree) classes."""
    k = target.degree()
    if k < 0:
        return True
    monos = monomials(target.params.n + 1, k)
    sysk = DegreeSystem(target.params, k, enumerate_fixed_points(target.params), monos, [])
    ech = linalg.Echelon()
    for c in classes:
        if c.is_homogeneous(k) and not c.is_zero():
            ech.add(sysk.class_to_vector(c))
    return ech.contains(sysk.class_to_vector(target))


def module_span_contains(basis: dict, target: LocalizedClass) -> bool:
    """Whether target lies in the S_Q-span of the basis, by degree-matched products with monomials."""
    k = target.degree()
    if k < 0:
        return True
    n = target.params.n
    gens = []
    for g in basis.values():
        dg = g.degree()
        if dg > k:
            continue
        for mono in monomials(n + 1, k - dg):
            gens.append(g * Polynomial.monomial(mono))
    return in_span(gens, target)


# ---------------------------------------------------------------------------
# products of projective spaces


def euler_class_product_proj(l, m, j, eta: Character) -> Polynomial:
    """(-1)^(|j|-|l|) (j-l)! (m-j)! eta^(|m|-|l|)."""
    if not (len(l) == len(m) == len(j)):
        raise ValueError("l, m, j must have equal length")
    if any(not (x <= y <= z) for x, y, z in zip(l, j, m)):
        raise ValueError("need l <= j <= m componentwise")
    sign = _sign(sum(j) - sum(l))
    scal = sign * _vec_factorial(y - x for x, y in zip(l, j)) * _vec_factorial(z - y for y, z in zip(j, m))
    return eta.to_poly() ** (sum(m) - sum(l)) * scal


def box_euler_class(params: QuotParams, p: FixedPoint, lo, hi) -> Polynomial:
    """Euler class at p of the sub-product with b-vectors in [lo, hi]: the product of
    the weights of type III curves from p ending inside the box."""
    ws = []
    for c in curves_at(params, p):
        if c.kind == "III" and all(x <= y <= z for x, y, z in zip(lo, c.target.b, hi)):
            ws.append(c.weight.to_poly())
    return product(ws, params.n)


def evain_sum_check(cls: LocalizedClass, family: Family, lo, hi) -> bool:
    """Whether sum over box members p of cls_p / e_p(Z) is a polynomial, Z the box [lo, hi]
    of b-vectors inside the vertical family."""
    if family.kind != "vertical":
        raise ValueError("the sum check applies to vertical families")
    delta, sums = family.anchor
    n = cls.params.n
    if any(not (0 <= x <= y <= s) for x, y, s in zip(lo, hi, sums)):
        raise ValueError("box must satisfy 0 <= lo <= hi <= a + b")
    span = sum(hi) - sum(lo)
    total = Polynomial.zero(n)
    for bvec in _box(lo, hi):
        p = FixedPoint(delta, tuple(s - x for s, x in zip(sums, bvec)), tuple(bvec))
        e = box_euler_class(cls.params, p, lo, hi)
        # e = scalar * f^span
        fexp = [0] * n + [span]
        scalar = e.coefficient(fexp)
        if e != Polynomial.monomial(fexp, scalar):
            raise ArithmeticError(f"Euler class {e} is not a multiple of f^{span}")  # pragma: no cover
        total = total + cls.values[p] / scalar
    return divisible_by_power(total, Character.basis_f(n), span)
