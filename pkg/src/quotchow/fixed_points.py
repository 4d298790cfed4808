"""Torus-fixed points of Q_d(r, n) and their tangent weights."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, gcd
from typing import Callable, Iterator

from .poly import Character


@dataclass(frozen=True)
class QuotParams:
    r: int
    n: int
    d: int

    def __post_init__(self):
        for name in ("r", "n", "d"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"{name} must be an integer")
        if self.r < 0 or self.d < 0:
            raise ValueError("r and d must be non-negative")
        if self.n <= self.r:
            raise ValueError(f"need r < n, got r={self.r}, n={self.n}")

    @property
    def dim(self) -> int:
        return self.r * (self.n - self.r) + self.n * self.d

    @property
    def rank(self) -> int:
        """Rank n - r of the subsheaf."""
        return self.n - self.r

    def count_fixed_points(self) -> int:
        # choose the support of delta, then distribute d over 2(n-r) slots
        k = self.n - self.r
        return comb(self.n, self.r) * comb(self.d + 2 * k - 1, self.d)

    def to_json(self) -> dict:
        return {"r": self.r, "n": self.n, "d": self.d}

    @classmethod
    def from_json(cls, obj) -> "QuotParams":
        return cls(int(obj["r"]), int(obj["n"]), int(obj["d"]))

    def __str__(self):
        return f"Q_{self.d}({self.r},{self.n})"


@dataclass(frozen=True, order=True)
class FixedPoint:
    delta: tuple[int, ...]
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(int(x) for x in self.delta))
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if not (len(self.delta) == len(self.a) == len(self.b)):
            raise ValueError("delta, a, b must have the same length")

    @property
    def n(self) -> int:
        return len(self.delta)

    @property
    def support(self) -> list[int]:
        """0-based indices i with delta_i = 1."""
        return [i for i, x in enumerate(self.delta) if x]

    @property
    def sums(self) -> tuple[int, ...]:
        return tuple(x + y for x, y in zip(self.a, self.b))

    def validate(self, params: QuotParams) -> None:
        if self.n != params.n:
            raise ValueError(f"point {self.label()} has length {self.n}, expected {params.n}")
        if any(x not in (0, 1) for x in self.delta):
            raise ValueError(f"delta of {self.label()} must be 0/1")
        if sum(self.delta) != params.n - params.r:
            raise ValueError(f"point {self.label()}: |delta| must be {params.n - params.r}")
        if any(x < 0 for x in self.a + self.b):
            raise ValueError(f"point {self.label()} has negative entries")
        if sum(self.a) + sum(self.b) != params.d:
            raise ValueError(f"point {self.label()}: |a|+|b| must be {params.d}")
        for i in range(self.n):
            if not self.delta[i] and (self.a[i] or self.b[i]):
                raise ValueError(f"point {self.label()}: a_{i+1}, b_{i+1} must vanish where delta is 0")

    def label(self, sep: str = "|") -> str:
        wide = any(x > 9 for x in self.a + self.b)
        join = ",".join if wide else "".join
        return sep.join(join(str(x) for x in v) for v in (self.delta, self.a, self.b))

    @classmethod
    def from_label(cls, text: str) -> "FixedPoint":
        """Parse '11.20.00' or '11|20|00' (commas inside a block for multi-digit entries)."""
        sep = "|" if "|" in text else "."
        parts = text.split(sep)
        if len(parts) != 3:
            raise ValueError(f"cannot parse fixed point label {text!r}")
        n = len(parts[0].replace(",", ""))
        vecs = []
        for part in parts:
            if "," in part:
                vecs.append(tuple(int(x) for x in part.split(",")))
            elif len(part) == n or n != 1:
                vecs.append(tuple(int(x) for x in part))
            else:
                vecs.append((int(part),))
        return cls(*vecs)

    def to_json(self) -> dict:
        return {"delta": list(self.delta), "a": list(self.a), "b": list(self.b)}

    @classmethod
    def from_json(cls, obj) -> "FixedPoint":
        if isinstance(obj, str):
            return cls.from_label(obj)
        return cls(tuple(obj["delta"]), tuple(obj["a"]), tuple(obj["b"]))

    def __str__(self):
        return self.label()


def _compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of total into slots parts, lexicographically increasing."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def iter_fixed_points(params: QuotParams) -> Iterator[FixedPoint]:
    n, k = params.n, params.n - params.r
    for supp in combinations(range(n), k):
        delta = tuple(1 if i in supp else 0 for i in range(n))
        for comp in _compositions(params.d, 2 * k):
            a = [0] * n
            b = [0] * n
            for t, i in enumerate(supp):
                a[i] = comp[t]
                b[i] = comp[k + t]
            yield FixedPoint(delta, tuple(a), tuple(b))


def enumerate_fixed_points(params: QuotParams) -> list[FixedPoint]:
    return sorted(iter_fixed_points(params))


@dataclass(frozen=True)
class TangentWeight:
    """One weight of the tangent space with its provenance.

    ``summand`` is 1 for Hom(S_i, O e_j) directions (delta_i = 1, delta_j = 0)
    and 2 for the directions with delta_i = delta_j = 1; for summand 2,
    ``side`` records whether the monomial came from the a- or b-part.
    Indices i, j are 1-based.
    """

    char: Character
    i: int
    j: int
    summand: int
    c: int
    side: str = ""

    def to_json(self) -> dict:
        out = {"weight": str(self.char), "char": self.char.to_json(), "i": self.i, "j": self.j,
               "summand": self.summand, "c": self.c}
        if self.side:
            out["side"] = self.side
        return out


def tangent_weights(params: QuotParams, p: FixedPoint) -> list[TangentWeight]:
    p.validate(params)
    n = params.n
    out = []
    supp = p.support
    for i in supp:
        for j in range(n):
            if p.delta[j]:
                continue
            for c in range(-p.a[i], p.b[i] + 1):
                out.append(TangentWeight(Character.root(n, j + 1, i + 1, c), i + 1, j + 1, 1, c))
    for i in supp:
        for j in supp:
            for c in range(1, p.a[j] + 1):
                w = Character.root(n, j + 1, i + 1, (p.a[j] - c) - p.a[i])
                out.append(TangentWeight(w, i + 1, j + 1, 2, c, "a"))
            for c in range(1, p.b[j] + 1):
                w = Character.root(n, j + 1, i + 1, p.b[i] - (p.b[j] - c))
                out.append(TangentWeight(w, i + 1, j + 1, 2, c, "b"))
    assert len(out) == params.dim
    return out


def weight_chars(params: QuotParams, p: FixedPoint) -> list[Character]:
    return [w.char for w in tangent_weights(params, p)]


# ---------------------------------------------------------------------------
# almost coprime property


def _common_divisor_violations(chars: list[Character]) -> list[tuple[Character, Character, int]]:
    bad = []
    for u, v in combinations(chars, 2):
        g = gcd(u.content(), v.content())
        if g > 1 and not u.is_parallel(v):
            bad.append((u, v, g))
    return bad


def weights_almost_coprime(chars: list[Character]) -> bool:
    """Any two weights sharing an integer factor > 1 must be parallel."""
    return not _common_divisor_violations(chars)


@dataclass
class AlmostCoprimeReport:
    ok: bool
    nonprimitive: dict  # FixedPoint -> list[Character]
    violations: list  # (FixedPoint, Character, Character, divisor)

    def all_nonprimitive_f_multiples(self) -> bool:
        return all(w.is_f_multiple() for ws in self.nonprimitive.values() for w in ws)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "nonprimitive": [
                {"point": p.to_json(), "weights": [str(w) for w in ws]}
                for p, ws in sorted(self.nonprimitive.items())
            ],
            "violations": [
                {"point": p.to_json(), "u": str(u), "v": str(v), "divisor": g}
                for p, u, v, g in self.violations
            ],
        }


def almost_coprime_check(params: QuotParams) -> AlmostCoprimeReport:
    nonprim = {}
    violations = []
    for p in iter_fixed_points(params):
        chars = weight_chars(params, p)
        found = [w for w in chars if not w.is_primitive()]
        if found:
            nonprim[p] = found
        for u, v, g in _common_divisor_violations(chars):
            violations.append((p, u, v, g))
    return AlmostCoprimeReport(not violations, nonprim, violations)


# ---------------------------------------------------------------------------
# cells


def lex_functional(chi: Character) -> int:
    """Sign of chi under v = f + eps*(generic e-direction): compare (c_f, c_1, ..., c_n) lexicographically."""
    for c in (chi.f,) + chi.e:
        if c:
            return 1 if c > 0 else -1
    return 0


def cell_dimension(params: QuotParams, p: FixedPoint,
                   v: Callable[[Character], int] = lex_functional) -> int:
    """Number of tangent weights on which v is negative."""
    count = 0
    for w in weight_chars(params, p):
        s = v(w)
        if s == 0:
            raise ValueError(f"direction functional vanishes on weight {w} at {p.label()}")
        if s < 0:
            count += 1
    return count


def down_weights(params: QuotParams, p: FixedPoint,
                 v: Callable[[Character], int] = lex_functional) -> list[Character]:
    return [w for w in weight_chars(params, p) if v(w) < 0]
