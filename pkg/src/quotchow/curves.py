"""
T-invariant curves through the fixed points, their module generators, and the
families (vertical: products of projective spaces, horizontal: P1 x P1) that
they sweep out.

Indices i, j in descriptors are 1-based.  The ``parameter`` of a curve is:

* type I:   a'_j - a_i, the f-coefficient of its weight (ranges over -a_i..b_i)
* type II:  the shift c > 0 moved from position j to position i
* type III: a'_i - a_i, so the weight is parameter * f
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product as iproduct

from .fixed_points import FixedPoint, QuotParams, enumerate_fixed_points, tangent_weights
from .poly import Character

KINDS = ("I", "II_a", "II_b", "III")


@dataclass(frozen=True)
class CurveDescriptor:
    kind: str
    source: FixedPoint
    target: FixedPoint
    weight: Character
    i: int
    j: int
    parameter: int
    gamma: int | None = None

    @property
    def endpoints(self) -> tuple[FixedPoint, FixedPoint]:
        return (self.source, self.target)

    @property
    def type_name(self) -> str:
        return self.kind.split("_")[0]

    def key(self):
        """Identifies the geometric curve regardless of the endpoint it was enumerated from."""
        pair = tuple(sorted((self.source, self.target)))
        return (pair, self.weight.primitive())

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "weight": str(self.weight),
            "char": self.weight.to_json(),
            "i": self.i,
            "j": self.j,
            "parameter": self.parameter,
        }
        if self.gamma is not None:
            out["gamma"] = self.gamma
        return out


def _replace(v: tuple[int, ...], updates: dict[int, int]) -> tuple[int, ...]:
    w = list(v)
    for k, x in updates.items():
        w[k] = x
    return tuple(w)


def curves_at(params: QuotParams, p: FixedPoint) -> list[CurveDescriptor]:
    p.validate(params)
    n = params.n
    supp = p.support
    out = []
    for i in supp:
        s = p.a[i] + p.b[i]
        for j in range(n):
            if p.delta[j]:
                continue
            for aj in range(s + 1):
                q = FixedPoint(
                    _replace(p.delta, {i: 0, j: 1}),
                    _replace(p.a, {i: 0, j: aj}),
                    _replace(p.b, {i: 0, j: s - aj}),
                )
                c = aj - p.a[i]
                out.append(CurveDescriptor("I", p, q, Character.root(n, j + 1, i + 1, c), i + 1, j + 1, c))
    for i in supp:
        for j in supp:
            if i == j:
                continue
            for c in range(1, p.a[j] + 1):
                q = FixedPoint(p.delta, _replace(p.a, {i: p.a[i] + c, j: p.a[j] - c}), p.b)
                gamma = p.a[i] + p.b[i] + c - p.a[j] - p.b[j]
                w = Character.root(n, j + 1, i + 1, q.a[j] - p.a[i])
                out.append(CurveDescriptor("II_a", p, q, w, i + 1, j + 1, c, gamma))
            for c in range(1, p.b[j] + 1):
                q = FixedPoint(p.delta, p.a, _replace(p.b, {i: p.b[i] + c, j: p.b[j] - c}))
                gamma = p.a[i] + p.b[i] + c - p.a[j] - p.b[j]
                w = Character.root(n, j + 1, i + 1, p.b[i] - q.b[j])
                out.append(CurveDescriptor("II_b", p, q, w, i + 1, j + 1, c, gamma))
    for i in supp:
        s = p.a[i] + p.b[i]
        for ai in range(s + 1):
            if ai == p.a[i]:
                continue
            q = FixedPoint(p.delta, _replace(p.a, {i: ai}), _replace(p.b, {i: s - ai}))
            c = ai - p.a[i]
            out.append(CurveDescriptor("III", p, q, Character.basis_f(n, c), i + 1, i + 1, c))
    return out


def reverse(curve: CurveDescriptor, params: QuotParams) -> CurveDescriptor:
    """The same curve enumerated from its other endpoint."""
    for other in curves_at(params, curve.target):
        if other.target == curve.source and other.weight.is_parallel(curve.weight):
            return other
    raise LookupError(f"no reverse curve for {curve}")  # pragma: no cover


# ---------------------------------------------------------------------------
# generator rendering
#
# A generator is a tuple of terms (coeff, xexp, yexp, basis index); coeff is
# "s", "t" or "".


def _term(coef: str, xe: int, ye: int, k: int) -> tuple:
    return (coef, xe, ye, k)


def render_term(term) -> str:
    coef, xe, ye, k = term
    parts = []
    if coef:
        parts.append(coef)
    if xe:
        parts.append("x" if xe == 1 else f"x^{xe}")
    if ye:
        parts.append("y" if ye == 1 else f"y^{ye}")
    parts.append(f"e{k}")
    return "*".join(parts)


def render_generator(gen) -> str:
    return " + ".join(render_term(t) for t in gen)


def _generator_terms(curve: CurveDescriptor) -> list[tuple]:
    p, q = curve.source, curve.target
    i, j = curve.i - 1, curve.j - 1
    touched = {i, j}
    if curve.kind == "I":
        special = [(
            _term("s", p.a[i], p.b[i], i + 1),
            _term("t", q.a[j], q.b[j], j + 1),
        )]
    elif curve.kind == "II_a":
        c, g = curve.parameter, curve.gamma
        special = [
            (_term("", p.a[i] + c, p.b[i], i + 1),),
            (_term("", p.a[j], p.b[j], j + 1),),
        ]
        if g >= 0:
            special.append((_term("s", p.a[i], p.b[i], i + 1), _term("t", p.a[j] - c, p.b[j] + g, j + 1)))
        else:
            special.append((_term("s", p.a[i], p.b[i] - g, i + 1), _term("t", p.a[j] - c, p.b[j], j + 1)))
    elif curve.kind == "II_b":
        c, g = curve.parameter, curve.gamma
        special = [
            (_term("", p.a[i], p.b[i] + c, i + 1),),
            (_term("", p.a[j], p.b[j], j + 1),),
        ]
        if g >= 0:
            special.append((_term("s", p.a[i], p.b[i], i + 1), _term("t", p.a[j] + g, p.b[j] - c, j + 1)))
        else:
            special.append((_term("s", p.a[i] - g, p.b[i], i + 1), _term("t", p.a[j], p.b[j] - c, j + 1)))
    elif curve.kind == "III":
        special = [(
            _term("s", p.a[i], p.b[i], i + 1),
            _term("t", q.a[i], q.b[i], i + 1),
        )]
    else:
        raise ValueError(f"unknown curve kind {curve.kind!r}")
    rest = [(_term("", p.a[k], p.b[k], k + 1),) for k in p.support if k not in touched]
    return special + rest


def curve_generators(curve: CurveDescriptor) -> list[str]:
    """Module generators of the curve as plain-text strings."""
    return [render_generator(g) for g in _generator_terms(curve)]


def normalize_generators(gens: list[str]) -> tuple[str, ...]:
    """Canonical form of a generator list: order-insensitive, and insensitive to
    swapping the roles of s and t (which only reverses the parametrization)."""

    def canon(swap: bool) -> tuple[str, ...]:
        out = []
        for g in gens:
            terms = [t.strip() for t in g.split("+")]
            if swap:
                terms = [_swap_st(t) for t in terms]
            out.append(" + ".join(sorted(terms)))
        return tuple(sorted(out))

    return min(canon(False), canon(True))


def _swap_st(term: str) -> str:
    factors = term.split("*")
    swapped = ["t" if f == "s" else "s" if f == "t" else f for f in factors]
    return "*".join(swapped)


# ---------------------------------------------------------------------------
# parallel weights and families


def classify_parallel(params: QuotParams, p: FixedPoint) -> list[list[CurveDescriptor]]:
    """Partition of the curves at p into classes with parallel weights.

    All type III curves form one class; an a-side and a b-side type II curve
    with the same positions (i, j) pair up when a_i + b_i = a'_j + b'_j;
    every other curve is alone.
    """
    curves = curves_at(params, p)
    groups = []
    type3 = [c for c in curves if c.kind == "III"]
    if type3:
        groups.append(type3)
    used = set()
    a_side = [c for c in curves if c.kind == "II_a"]
    b_side = [c for c in curves if c.kind == "II_b"]
    for ca in a_side:
        for cb in b_side:
            if id(cb) in used or (ca.i, ca.j) != (cb.i, cb.j):
                continue
            i, j = ca.i - 1, ca.j - 1
            if p.a[i] + p.b[i] == ca.target.a[j] + cb.target.b[j]:
                groups.append([ca, cb])
                used.add(id(ca))
                used.add(id(cb))
                break
    for c in curves:
        if c.kind != "III" and id(c) not in used:
            groups.append([c])
    return groups


@dataclass(frozen=True)
class Family:
    kind: str  # "vertical" or "horizontal"
    members: tuple[FixedPoint, ...]
    base_shape: tuple[int, ...]
    anchor: tuple = field(default=())

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "members": [m.to_json() for m in self.members],
            "base_shape": list(self.base_shape),
        }
        if self.kind == "vertical":
            delta, sums = self.anchor
            out["anchor"] = {"delta": list(delta), "sums": list(sums)}
        else:
            corner, i, j, c, c2 = self.anchor
            out["anchor"] = {"corner": corner.to_json(), "i": i, "j": j, "c": c, "c_prime": c2}
        return out


def vertical_family(delta: tuple[int, ...], sums: tuple[int, ...]) -> Family:
    supp = [i for i, x in enumerate(delta) if x]
    members = []
    for split in iproduct(*(range(sums[i] + 1) for i in supp)):
        a = [0] * len(delta)
        b = [0] * len(delta)
        for i, ai in zip(supp, split):
            a[i] = ai
            b[i] = sums[i] - ai
        members.append(FixedPoint(delta, tuple(a), tuple(b)))
    return Family("vertical", tuple(sorted(members)), tuple(sums[i] for i in supp), (tuple(delta), tuple(sums)))


def vertical_family_of(params: QuotParams, p: FixedPoint) -> Family:
    p.validate(params)
    return vertical_family(p.delta, p.sums)


def vertical_families(params: QuotParams) -> list[Family]:
    keys = sorted({(p.delta, p.sums) for p in enumerate_fixed_points(params)})
    return [vertical_family(dl, s) for dl, s in keys]


@dataclass(frozen=True)
class HorizontalData:
    """A horizontal family anchored at the corner p with positions (i, j) (1-based)."""

    corner: FixedPoint
    i: int
    j: int
    c: int
    c_prime: int

    def corners(self) -> tuple[FixedPoint, FixedPoint, FixedPoint, FixedPoint]:
        """(p, p_a', p_b', p_a'b') in the order of the signed sum (+, -, -, +)."""
        p = self.corner
        i, j = self.i - 1, self.j - 1
        a2 = _replace(p.a, {i: p.a[i] + self.c, j: p.a[j] - self.c})
        b2 = _replace(p.b, {i: p.b[i] + self.c_prime, j: p.b[j] - self.c_prime})
        return (p, FixedPoint(p.delta, a2, p.b), FixedPoint(p.delta, p.a, b2), FixedPoint(p.delta, a2, b2))

    def modulus(self) -> Character:
        p = self.corner
        i, j = self.i - 1, self.j - 1
        n = p.n
        return Character.root(n, self.j, self.i, p.a[j] - self.c - p.a[i])


def horizontal_data(params: QuotParams) -> list[HorizontalData]:
    seen = {}
    for p in enumerate_fixed_points(params):
        supp = p.support
        for i in supp:
            for j in supp:
                if i == j:
                    continue
                for c in range(1, p.a[j] + 1):
                    c2 = p.a[j] + p.b[j] - p.a[i] - p.b[i] - c
                    if 1 <= c2 <= p.b[j]:
                        h = HorizontalData(p, i + 1, j + 1, c, c2)
                        seen.setdefault(frozenset(h.corners()), h)
    return list(seen.values())


def horizontal_families(params: QuotParams) -> list[Family]:
    out = []
    for h in horizontal_data(params):
        out.append(Family("horizontal", tuple(sorted(h.corners())), (1, 1), (h.corner, h.i, h.j, h.c, h.c_prime)))
    return out


@dataclass
class MomentMultigraph:
    params: QuotParams
    vertices: list[FixedPoint]
    edges: list[CurveDescriptor]
    multiedges: list[Family]

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "vertices": [v.to_json() for v in self.vertices],
            "edges": [e.to_json() for e in self.edges],
            "multiedges": [m.to_json() for m in self.multiedges],
        }

    def to_dot(self) -> str:
        index = {v: k for k, v in enumerate(self.vertices)}
        lines = [f'graph "{self.params}" {{']
        for v, k in index.items():
            lines.append(f'  v{k} [label="{v.label()}"];')
        for e in self.edges:
            lines.append(f'  v{index[e.source]} -- v{index[e.target]} [label="{e.weight}", type="{e.kind}"];')
        for k, fam in enumerate(self.multiedges):
            names = " ".join(f"v{index[m]};" for m in fam.members)
            lines.append(f'  subgraph family_{k} {{ label="{fam.kind} {"x".join(f"P{s}" for s in fam.base_shape)}"; {names} }}')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_multigraph(params: QuotParams) -> MomentMultigraph:
    vertices = enumerate_fixed_points(params)
    edges = {}
    for p in vertices:
        for c in curves_at(params, p):
            key = c.key()
            if key not in edges:
                edges[key] = c if c.source < c.target else reverse(c, params)
    ordered = sorted(edges.values(), key=lambda c: (c.source, c.target, c.kind, c.weight.coefficients()))
    families = [f for f in vertical_families(params) if len(f.members) > 1]
    families += sorted(horizontal_families(params), key=lambda f: f.members)
    return MomentMultigraph(params, vertices, ordered, families)


def tangent_multiset_matches(params: QuotParams, p: FixedPoint) -> bool:
    lhs = Counter(c.weight for c in curves_at(params, p))
    rhs = Counter(w.char for w in tangent_weights(params, p))
    return lhs == rhs
