from collections import Counter

import pytest
import sympy

from quotchow.curves import (
    build_multigraph,
    classify_parallel,
    curve_generators,
    curves_at,
    horizontal_families,
    normalize_generators,
    reverse,
    tangent_multiset_matches,
    vertical_families,
    vertical_family_of,
)
from quotchow.fixed_points import FixedPoint, QuotParams, enumerate_fixed_points
from quotchow.poly import Character

from conftest import sample_params

Q202 = QuotParams(0, 2, 2)
FP = FixedPoint.from_label

# Invariant curves at two points of Q_2(0,2), transcribed from the reference
# tables: (generators, weight (e-coefficients, f-coefficient), type).
TABLE_20 = [
    (["x^2*e1", "x^2*e2", "s*e1 + t*e2"], ((1, -1), 0), "II"),
    (["x^2*e1", "x^2*e2", "s*x*e1 + t*y*e2"], ((1, -1), 1), "II"),
    (["s*x^2*e1 + t*x*y*e1", "e2"], ((0, 0), -1), "III"),
    (["s*x^2*e1 + t*y^2*e1", "e2"], ((0, 0), -2), "III"),
]
TABLE_1001 = [
    (["s*x*e1 + t*y*e1", "y*e2"], ((0, 0), -1), "III"),
    (["x*y*e1", "y*e2", "s*x*e1 + t*x*e2"], ((-1, 1), 0), "II"),
    (["x*e1", "x*y*e2", "t*y*e1 + s*y*e2"], ((1, -1), 0), "II"),
    (["x*e1", "s*y*e2 + t*x*e2"], ((0, 0), 1), "III"),
]

ROWS = [("11.20.00", row) for row in TABLE_20] + [("11.10.01", row) for row in TABLE_1001]
IDS = [f"{lab}-{k}" for lab, k in [("11.20.00", k) for k in range(1, 5)] + [("11.10.01", k) for k in range(1, 5)]]


def curve_with_weight(label, weight):
    found = [c for c in curves_at(Q202, FP(label)) if c.weight == Character(*weight)]
    assert len(found) == 1
    return found[0]


@pytest.mark.parametrize("label,row", ROWS, ids=IDS)
def test_table_weights_and_types(label, row):
    _, weight, kind = row
    assert curve_with_weight(label, weight).type_name == kind


def _row_param(label, row, idx):
    marks = []
    if (label, idx) == ("11.20.00", 1):
        marks = [pytest.mark.xfail(strict=True, reason="reference row disagrees with the construction; "
                                   "see test_row_two_equivalence")]
    return pytest.param(label, row, marks=marks, id=f"{label}-{idx + 1}")


@pytest.mark.parametrize("label,row", [_row_param(lab, row, k % 4) for k, (lab, row) in enumerate(ROWS)])
def test_table_generators_exact(label, row):
    gens, weight, _ = row
    curve = curve_with_weight(label, weight)
    assert normalize_generators(curve_generators(curve)) == normalize_generators(gens)


def test_table_weight_multisets():
    for label, table in (("11.20.00", TABLE_20), ("11.10.01", TABLE_1001)):
        got = Counter(c.weight for c in curves_at(Q202, FP(label)))
        assert got == Counter(Character(*w) for _, w, _ in table)


# -- the disagreeing row: compare modules in high degree ----------------------

x, y, s, t = sympy.symbols("x y s t")


def parse_module(gens, subs):
    """Generators as (coefficient of e1, coefficient of e2) in k[x, y]."""
    e1, e2 = sympy.symbols("e1 e2")
    out = []
    for g in gens:
        expr = sympy.sympify(g.replace("^", "**"), locals={"e1": e1, "e2": e2}).subs(subs)
        out.append((sympy.expand(expr.coeff(e1)), sympy.expand(expr.coeff(e2))))
    return out


def degree_piece(module, D):
    """Row space of the degree-D part of a homogeneous submodule of k[x,y]^2."""
    mons = [x**k * y**(D - k) for k in range(D + 1)]
    rows = []
    for u, v in module:
        deg = sympy.Poly(u + v, x, y).total_degree() if (u + v) != 0 else 0
        for k in range(D - deg + 1):
            m = x**k * y**(D - deg - k)
            pu, pv = sympy.Poly(sympy.expand(m * u), x, y), sympy.Poly(sympy.expand(m * v), x, y)
            rows.append([pu.coeff_monomial(mm) for mm in mons] + [pv.coeff_monomial(mm) for mm in mons])
    return sympy.Matrix(rows) if rows else sympy.zeros(0, 2 * (D + 1))


def same_saturation(m1, m2, D=5):
    a, b = degree_piece(m1, D), degree_piece(m2, D)
    ra = a.rank()
    return ra == b.rank() == a.col_join(b).rank()


def colength(module, D=5):
    return 2 * (D + 1) - degree_piece(module, D).rank()


def test_row_two_equivalence():
    """The constructed curve agrees with the reference family on the generic fiber and has the
    reference special fibers; the reference generators do not specialize to the listed fibers."""
    curve = curve_with_weight("11.20.00", ((1, -1), 1))
    ours = curve_generators(curve)
    table = TABLE_20[1][0]
    # the reference generators run the parameter the other way
    assert same_saturation(parse_module(ours, {s: 2, t: 3}), parse_module(table, {s: 3, t: 2}))
    fiber_s0 = parse_module(ours, {s: 0, t: 1})
    fiber_t0 = parse_module(ours, {s: 1, t: 0})
    assert same_saturation(fiber_t0, parse_module(["x^2*e1", "e2"], {}))
    assert same_saturation(fiber_s0, parse_module(["x*e1", "x*e2"], {}))
    assert colength(fiber_s0) == colength(fiber_t0) == 2
    assert colength(parse_module(table, {s: 1, t: 0})) == 3


# -- structural properties ----------------------------------------------------


@pytest.mark.parametrize("params", sample_params(20), ids=str)
def test_weight_matching_random(params):
    for p in enumerate_fixed_points(params):
        assert tangent_multiset_matches(params, p)


@pytest.mark.parametrize("params", sample_params(8, seed=7, cap=500), ids=str)
def test_reverse_negates_weight(params):
    pts = set(enumerate_fixed_points(params))
    for p in pts:
        for c in curves_at(params, p):
            assert c.target in pts
            back = reverse(c, params)
            assert back.source == c.target and back.target == p
            assert back.weight == -c.weight
            assert back in curves_at(params, c.target)


@pytest.mark.parametrize("params", sample_params(8, seed=11, cap=500), ids=str)
def test_descriptor_shapes(params):
    for p in enumerate_fixed_points(params):
        for c in curves_at(params, p):
            q = c.target
            if c.kind == "III":
                assert c.weight.is_f_multiple() and q.sums == p.sums and q.delta == p.delta
                assert q in vertical_family_of(params, p).members
            else:
                i, j = c.i - 1, c.j - 1
                assert i != j and c.weight.e[j] == 1 and c.weight.e[i] == -1
            if c.kind == "I":
                assert p.a[i] + p.b[i] == q.a[j] + q.b[j]
            if c.kind in ("II_a", "II_b"):
                assert sum(q.a) == sum(p.a) and sum(q.b) == sum(p.b)


def test_degree_zero_only_type_one():
    params = QuotParams(1, 3, 0)
    for p in enumerate_fixed_points(params):
        cs = curves_at(params, p)
        assert {c.kind for c in cs} == {"I"}
        assert len(cs) == 2


def test_classify_parallel_examples():
    groups = classify_parallel(Q202, FP("11.20.00"))
    kinds = sorted(tuple(sorted(str(c.weight) for c in g)) for g in groups)
    assert kinds == sorted([("-2*f", "-f"), ("f + e1 - e2",), ("e1 - e2",)])
    groups = classify_parallel(Q202, FP("11.10.01"))
    assert sorted(len(g) for g in groups) == [1, 1, 2]
    assert all(len(g) == 1 for g in classify_parallel(QuotParams(1, 3, 0), FP("011.000.000")))


@pytest.mark.parametrize("params", [Q202, QuotParams(0, 2, 3), QuotParams(1, 3, 2), QuotParams(0, 3, 2)], ids=str)
def test_parallel_pairs_lie_in_one_horizontal_family(params):
    hor = horizontal_families(params)
    for p in enumerate_fixed_points(params):
        for g in classify_parallel(params, p):
            weights = {c.weight.primitive() for c in g}
            assert len(weights) == 1
            if len(g) == 2 and g[0].kind != "III":
                ends = {p, g[0].target, g[1].target}
                assert sum(ends <= set(h.members) for h in hor) == 1


def test_vertical_families_q202():
    fams = {f.anchor[1]: f for f in vertical_families(Q202)}
    assert set(fams) == {(2, 0), (1, 1), (0, 2)}
    assert [m.label(".") for m in fams[(2, 0)].members] == ["11.00.20", "11.10.10", "11.20.00"]
    assert fams[(1, 1)].base_shape == (1, 1) and len(fams[(1, 1)].members) == 4
    for p in enumerate_fixed_points(QuotParams(0, 3, 3)):
        fam = vertical_family_of(QuotParams(0, 3, 3), p)
        size = 1
        for i in p.support:
            size *= p.sums[i] + 1
        assert len(fam.members) == size and p in fam.members


def test_horizontal_family_q202():
    hor = horizontal_families(Q202)
    assert len(hor) == 1
    assert {m.label(".") for m in hor[0].members} == {"11.01.01", "11.01.10", "11.10.01", "11.10.10"}


def test_multigraph_census():
    g = build_multigraph(Q202)
    assert len(g.vertices) == 10
    assert len(g.edges) == 20  # sum of tangent dimensions over 10 points, halved
    assert sorted(len(m.members) for m in g.multiedges) == [3, 3, 4, 4]
    for e in g.edges:
        assert e.weight in Counter(c.weight for c in curves_at(Q202, e.source))
    dot = g.to_dot()
    assert dot.count(" -- ") == 20 and dot.count("subgraph family_") == 4
    assert build_multigraph(Q202).to_json() == g.to_json()


def test_grassmannian_multigraph_has_no_multiedges():
    g = build_multigraph(QuotParams(2, 4, 0))
    assert g.multiedges == [] and len(g.edges) == 6 * 4 // 2
