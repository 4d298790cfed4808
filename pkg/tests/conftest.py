import random

import pytest

from quotchow.fixed_points import QuotParams


def sample_params(count: int, seed: int = 20240611, cap: int = 10**4, nmax: int = 5, dmax: int = 4):
    """Deterministic random (r, n, d) with at most ``cap`` fixed points."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, nmax)
        r = rng.randint(0, n - 1)
        d = rng.randint(0, dmax)
        p = QuotParams(r, n, d)
        if p.count_fixed_points() <= cap:
            out.append(p)
    return out


@pytest.fixture
def q202():
    return QuotParams(0, 2, 2)


def random_poly(rng, n: int, k: int, lo: int = -3, hi: int = 3):
    """Random homogeneous integer polynomial of degree k in e_1..e_n, f."""
    from quotchow.poly import Polynomial, monomials

    terms = {m: rng.randint(lo, hi) for m in monomials(n + 1, k)}
    return Polynomial(n, {m: c for m, c in terms.items() if c})


def random_member(rng, basis: dict, k: int):
    """Random degree-k combination of basis classes with polynomial coefficients."""
    from quotchow.chow import LocalizedClass

    params = next(iter(basis.values())).params
    out = LocalizedClass.constant(params, 0)
    for g in basis.values():
        dg = g.degree()
        if 0 <= dg <= k:
            out = out + g * random_poly(rng, params.n, k - dg)
    return out


def random_tuple(rng, params, k: int):
    from quotchow.chow import LocalizedClass
    from quotchow.fixed_points import enumerate_fixed_points

    return LocalizedClass(params, {p: random_poly(rng, params.n, k) for p in enumerate_fixed_points(params)})


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
