"""
Exact arithmetic in the symmetric algebra S = Z[e_1, ..., e_n, f].

Polynomials are sparse maps from exponent vectors to coefficients.  An
exponent vector has length n + 1: the exponents of e_1, ..., e_n followed by
the exponent of f.  Coefficients are Python ints, promoted to
``fractions.Fraction`` only when a division forces it, so the integral ring
never picks up denominators by accident.

Characters (integer linear forms) are kept separately because the moduli of
the localization relations are always characters, and the chi-adic expansion
pivots on one of their unit coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from numbers import Rational
from typing import Iterable, Sequence


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _as_coeff(c):
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"coefficients must be exact rationals, got {c!r}")
    return _normalize(Fraction(c)) if not isinstance(c, int) else c


def var_names(n: int) -> list[str]:
    return [f"e{i}" for i in range(1, n + 1)] + ["f"]


@dataclass(frozen=True)
class Character:
    """Integer linear form  sum_i e[i] * e_{i+1} + f * f."""

    e: tuple[int, ...]
    f: int = 0

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(int(x) for x in self.e))
        object.__setattr__(self, "f", int(self.f))

    @classmethod
    def basis_e(cls, n: int, j: int) -> "Character":
        """The character e_j (1-based)."""
        e = [0] * n
        e[j - 1] = 1
        return cls(tuple(e), 0)

    @classmethod
    def basis_f(cls, n: int, k: int = 1) -> "Character":
        return cls((0,) * n, k)

    @classmethod
    def root(cls, n: int, j: int, i: int, c: int = 0) -> "Character":
        """e_j - e_i + c f with 1-based indices; e_i cancels when i == j."""
        e = [0] * n
        e[j - 1] += 1
        e[i - 1] -= 1
        return cls(tuple(e), c)

    @property
    def n(self) -> int:
        return len(self.e)

    def coefficients(self) -> tuple[int, ...]:
        return self.e + (self.f,)

    def is_zero(self) -> bool:
        return self.f == 0 and not any(self.e)

    def content(self) -> int:
        g = 0
        for c in self.coefficients():
            g = gcd(g, c)
        return g

    def is_primitive(self) -> bool:
        return self.content() == 1

    def primitive(self) -> "Character":
        """Primitive generator of the line, sign fixed so the first nonzero entry is positive."""
        g = self.content()
        if g == 0:
            return self
        coeffs = [c // g for c in self.coefficients()]
        lead = next(c for c in coeffs if c)
        if lead < 0:
            coeffs = [-c for c in coeffs]
        return Character(tuple(coeffs[:-1]), coeffs[-1])

    def is_parallel(self, other: "Character") -> bool:
        if self.is_zero() or other.is_zero():
            return False
        return self.primitive() == other.primitive()

    def is_f_multiple(self) -> bool:
        return not any(self.e) and self.f != 0

    def __neg__(self):
        return Character(tuple(-x for x in self.e), -self.f)

    def __add__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return Character(tuple(a + b for a, b in zip(self.e, other.e)), self.f + other.f)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return Character(tuple(k * x for x in self.e), k * self.f)

    __rmul__ = __mul__

    def to_poly(self) -> "Polynomial":
        terms = {}
        for idx, c in enumerate(self.coefficients()):
            if c:
                exps = [0] * (self.n + 1)
                exps[idx] = 1
                terms[tuple(exps)] = c
        return Polynomial(self.n, terms)

    def __str__(self):
        return str(self.to_poly())

    def to_json(self) -> dict:
        return {"e": list(self.e), "f": self.f}

    @classmethod
    def from_json(cls, obj) -> "Character":
        return cls(tuple(obj["e"]), obj["f"])


@dataclass(frozen=True)
class Direction:
    """A dual basis vector: ``Direction.e(j)`` is e_j^vee, ``Direction.f()`` is f^vee."""

    kind: str
    j: int | None = None

    def __post_init__(self):
        if self.kind == "e":
            if self.j is None or self.j < 1:
                raise ValueError("dual_e direction needs an index j >= 1")
        elif self.kind == "f":
            if self.j is not None:
                raise ValueError("dual_f direction takes no index")
        else:
            raise ValueError(f"unknown direction kind {self.kind!r}")

    @classmethod
    def e(cls, j: int) -> "Direction":
        return cls("e", j)

    @classmethod
    def f(cls) -> "Direction":
        return cls("f")

    def index(self, n: int) -> int:
        if self.kind == "f":
            return n
        if self.j > n:
            raise ValueError(f"direction e{self.j}^vee out of range for n={n}")
        return self.j - 1

    def __str__(self):
        return "f" if self.kind == "f" else f"e{self.j}"


def _term_key(exps):
    # graded lex on (f, e_1, ..., e_n), largest first
    return (-sum(exps), -exps[-1]) + tuple(-x for x in exps[:-1])


class Polynomial:
    """Immutable sparse polynomial in e_1..e_n, f with exact coefficients."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != n + 1:
                    raise ValueError(f"exponent vector {exps} has wrong length for n={n}")
                if any(x < 0 for x in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = _as_coeff(c)
                if c:
                    clean[exps] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n, terms):
        p = cls.__new__(cls)
        p.n = n
        p._terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * (n + 1): c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(len(exps) - 1, {tuple(exps): c})

    @classmethod
    def gens(cls, n: int) -> list["Polynomial"]:
        """[e_1, ..., e_n, f] as polynomials."""
        out = []
        for idx in range(n + 1):
            exps = [0] * (n + 1)
            exps[idx] = 1
            out.append(cls._raw(n, {tuple(exps): 1}))
        return out

    # inspection

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, k: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True
        return len(degs) == 1 and (k is None or degs == {k})

    @property
    def coefficient_ring(self) -> str:
        if all(isinstance(c, int) for c in self._terms.values()):
            return "integer"
        return "rational"

    def is_integral(self) -> bool:
        return self.coefficient_ring == "integer"

    def coefficient(self, exps) -> int | Fraction:
        return self._terms.get(tuple(exps), 0)

    def constant_term(self):
        return self._terms.get((0,) * (self.n + 1), 0)

    def min_exponent(self, idx: int) -> int | None:
        if not self._terms:
            return None
        return min(e[idx] for e in self._terms)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: _term_key(t[0]))

    # arithmetic

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError(f"polynomials over different rings (n={self.n} vs n={other.n})")
            return other
        if isinstance(other, Character):
            if other.n != self.n:
                raise ValueError("character over a different ring")
            return other.to_poly()
        if isinstance(other, Rational) and not isinstance(other, bool):
            return Polynomial.const(self.n, other)
        return None

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = _normalize(out.get(e, 0) + c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.scale(other)
        other = self._check(other)
        if other is None:
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = _normalize(out.get(e, 0) + c1 * c2)
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.n, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = _as_coeff(c)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial._raw(self.n, {e: _normalize(v * c) for e, v in self._terms.items()})

    def __truediv__(self, c):
        if isinstance(c, Rational) and not isinstance(c, bool):
            return self.scale(Fraction(1) / Fraction(c))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = Polynomial.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, Character):
            return self == other.to_poly()
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self == Polynomial.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def substitute_var(self, idx: int, value: "Polynomial") -> "Polynomial":
        """Replace the variable with index ``idx`` by ``value``."""
        by_power = {}
        for e, c in self._terms.items():
            rest = e[:idx] + (0,) + e[idx + 1:]
            by_power.setdefault(e[idx], {})[rest] = c
        out = Polynomial.zero(self.n)
        power = Polynomial.const(self.n, 1)
        for k in range(max(by_power, default=-1) + 1):
            if k in by_power:
                out = out + Polynomial._raw(self.n, by_power[k]) * power
            power = power * value
        return out

    def evaluate_at_zero(self, idx: int) -> "Polynomial":
        return Polynomial._raw(self.n, {e: c for e, c in self._terms.items() if e[idx] == 0})

    # rendering

    def __str__(self):
        if not self._terms:
            return "0"
        names = var_names(self.n)
        pieces = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(names, exps) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"

    def to_json(self) -> list:
        names = var_names(self.n)
        out = []
        for exps, c in self.sorted_terms():
            coeff = str(c) if isinstance(c, int) else f"{c.numerator}/{c.denominator}"
            out.append({"coeff": coeff, "exps": {nm: k for nm, k in zip(names, exps)}})
        return out

    @classmethod
    def from_json(cls, n: int, obj) -> "Polynomial":
        names = var_names(n)
        terms = {}
        for t in obj:
            unknown = set(t["exps"]) - set(names)
            if unknown:
                raise ValueError(f"unknown variables {sorted(unknown)} for n={n}")
            exps = tuple(int(t["exps"].get(nm, 0)) for nm in names)
            c = _normalize(Fraction(t["coeff"]))
            terms[exps] = _normalize(terms.get(exps, 0) + c)
        return cls(n, terms)


def as_poly(x, n: int) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, Character):
        return x.to_poly()
    return Polynomial.const(n, x)


def monomials(nvars: int, k: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree k in nvars variables, in graded-lex order."""
    if nvars == 0:
        return [()] if k == 0 else []
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for x in range(left, -1, -1):
            rec(prefix + (x,), left - x, slots - 1)

    rec((), k, nvars)
    return out


def dim_homogeneous(nvars: int, k: int) -> int:
    """dim of the degree-k part of a polynomial ring in nvars variables."""
    if k < 0:
        return 0
    return comb(k + nvars - 1, nvars - 1)


# ---------------------------------------------------------------------------
# operations


def elementary_symmetric(chars: Sequence[Character], i: int, n: int | None = None) -> Polynomial:
    """Degree-i elementary symmetric polynomial in the given linear forms."""
    if n is None:
        if not chars:
            raise ValueError("need n when the list of characters is empty")
        n = chars[0].n
    if i < 0 or i > len(chars):
        raise ValueError(f"elementary symmetric index {i} out of range 0..{len(chars)}")
    elem = [Polynomial.const(n, 1)] + [Polynomial.zero(n)] * i
    for chi in chars:
        x = chi.to_poly()
        for k in range(i, 0, -1):
            elem[k] = elem[k] + elem[k - 1] * x
    return elem[i]


def pivot_variable(chi: Character) -> tuple[int, int]:
    """(variable index, sign) of a unit coefficient of chi.

    Preference: an e-variable with coefficient +1, then one with -1, then f.
    """
    for idx, c in enumerate(chi.e):
        if c == 1:
            return idx, 1
    for idx, c in enumerate(chi.e):
        if c == -1:
            return idx, -1
    if chi.f in (1, -1):
        return chi.n, chi.f
    raise ValueError(f"character {chi} has no unit coefficient to pivot on")


def chi_adic_expansion(p: Polynomial, chi: Character, k: int) -> list[Polynomial]:
    """Coefficients (p_0, ..., p_{k-1}) with p = sum p_i chi^i  (mod chi^k).

    Each p_i is free of the pivot variable, which makes the expansion unique.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if chi.n != p.n:
        raise ValueError("character and polynomial live in different rings")
    idx, sign = pivot_variable(chi)
    # with chi' = sign * chi the pivot has coefficient +1; v = chi' - rho
    chi_s = chi * sign
    rho = chi_s.to_poly() - Polynomial.gens(p.n)[idx]
    neg_rho = -rho
    by_power = {}
    for e, c in p.items():
        rest = e[:idx] + (0,) + e[idx + 1:]
        by_power.setdefault(e[idx], {})[rest] = c
    top = max(by_power, default=-1)
    powers = [Polynomial.const(p.n, 1)]
    for _ in range(top):
        powers.append(powers[-1] * neg_rho)
    out = []
    for i in range(k):
        acc = Polynomial.zero(p.n)
        for deg, coeffs in by_power.items():
            if deg < i:
                continue
            q = Polynomial._raw(p.n, coeffs)
            acc = acc + q * powers[deg - i] * comb(deg, i)
        out.append(acc * (sign ** i))
    return out


def divisible_by_power(p: Polynomial, chi: Character, k: int) -> bool:
    if k <= 0 or p.is_zero():
        return True
    if chi.is_f_multiple() and abs(chi.f) == 1:
        return p.min_exponent(p.n) >= k
    return all(q.is_zero() for q in chi_adic_expansion(p, chi, k))


def directional_derivative(p: Polynomial, direction: Direction, order: int = 1) -> Polynomial:
    if order < 0:
        raise ValueError("derivative order must be non-negative")
    idx = direction.index(p.n)
    out = {}
    for e, c in p.items():
        k = e[idx]
        if k < order:
            continue
        factor = 1
        for t in range(order):
            factor *= k - t
        ne = e[:idx] + (k - order,) + e[idx + 1:]
        out[ne] = _normalize(out.get(ne, 0) + c * factor)
    return Polynomial(p.n, out)


def exact_divide(p: Polynomial, chi: Character, k: int = 1) -> Polynomial:
    """q with p = q * chi^k; raises ValueError when chi^k does not divide p."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if p.is_zero():
        return p
    full = chi_adic_expansion(p, chi, p.degree() + 1)
    if any(not q.is_zero() for q in full[:k]):
        raise ValueError(f"{chi}^{k} does not divide {p}")
    x = chi.to_poly()
    q = Polynomial.zero(p.n)
    power = Polynomial.const(p.n, 1)
    for coeff in full[k:]:
        q = q + coeff * power
        power = power * x
    if q * x ** k != p:
        raise ArithmeticError("chi-adic reconstruction failed")  # pragma: no cover
    return q


def product(polys: Iterable[Polynomial], n: int) -> Polynomial:
    out = Polynomial.const(n, 1)
    for p in polys:
        out = out * as_poly(p, n)
    return out
