"""Sparse multivariate polynomials over Q.

A polynomial is a dict mapping exponent tuples (one int per variable) to
nonzero Fraction coefficients; the zero polynomial is the empty dict.  All
arithmetic is exact.  Monomial orders are degrevlex (the default, fast for
Groebner bases) and lex (useful for elimination-style debugging); variable
precedence is x1 > x2 > ... > xn.

Homogeneous machinery: ``homogeneous_parts`` grades a polynomial by total
degree, and ``homogenize`` lifts it to degree d in one extra variable (the
new variable is inserted FIRST, so a homogenized polynomial in n+1 variables
reads naturally as x0, x1, ..., xn).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rational import rat

Monomial = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class MonOrder:
    """A total order on monomials, exposed as a sort key (bigger = later)."""

    tag: str

    def key(self, m: Monomial):
        if self.tag == "degrevlex":
            # compare total degree first, then reversed-negated exponents:
            # ties break toward the monomial whose rightmost differing
            # exponent is smaller.
            return (sum(m), tuple(-e for e in reversed(m)))
        if self.tag == "lex":
            return m
        raise ValueError(f"unknown monomial order {self.tag!r}")


DEGREVLEX = MonOrder("degrevlex")
LEX = MonOrder("lex")


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b, or None when b does not divide a."""
    q = tuple(x - y for x, y in zip(a, b))
    return q if all(e >= 0 for e in q) else None


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class MPoly:
    """Immutable sparse polynomial: nvars plus {exponent tuple: Fraction}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Fraction] | None = None):
        if nvars < 1:
            raise ValueError("polynomial needs at least one variable")
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for nvars={nvars}")
            c = rat(coeff)
            if c != 0:
                clean[tuple(mono)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("MPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MPoly":
        return MPoly(nvars)

    @staticmethod
    def const(nvars: int, c: int | str | Fraction) -> "MPoly":
        return MPoly(nvars, {(0,) * nvars: rat(c)})

    @staticmethod
    def var(nvars: int, i: int) -> "MPoly":
        """The variable x_{i+1} (0-based index i)."""
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for nvars={nvars}")
        e = [0] * nvars
        e[i] = 1
        return MPoly(nvars, {tuple(e): Fraction(1)})

    # -- ring operations ---------------------------------------------------

    def _check_compatible(self, other: "MPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"mismatched nvars: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return MPoly(self.nvars, out)

    def __sub__(self, other: "MPoly") -> "MPoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) - c
        return MPoly(self.nvars, out)

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "MPoly | int | Fraction") -> "MPoly":
        if isinstance(other, (int, Fraction)):
            return MPoly(self.nvars, {m: c * other for m, c in self.terms.items()})
        self._check_compatible(other)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = monomial_mul(ma, mb)
                out[m] = out.get(m, Fraction(0)) + ca * cb
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = MPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, mono: Monomial, coeff: Fraction) -> "MPoly":
        """Multiply by a single term coeff * x^mono."""
        return MPoly(
            self.nvars, {monomial_mul(m, mono): c * coeff for m, c in self.terms.items()}
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries -----------------------------------------------------------

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def is_integral(self) -> bool:
        """True when every coefficient is an integer."""
        return all(c.denominator == 1 for c in self.terms.values())

    def leading_monomial(self, order: MonOrder = DEGREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: MonOrder = DEGREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(
        self,
        order: MonOrder = DEGREVLEX,
        precedence: Sequence[int] | None = None,
    ) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending order -- the deterministic iteration order.

        ``precedence`` lists variable indices from biggest to smallest when
        the natural x1 > x2 > ... ordering is not wanted (homogenized
        polynomials sort their extra variable last).
        """
        if precedence is None:
            key = lambda mc: order.key(mc[0])
        else:
            key = lambda mc: order.key(tuple(mc[0][i] for i in precedence))
        return sorted(self.terms.items(), key=key, reverse=True)

    # -- evaluation and calculus -------------------------------------------

    def evaluate(self, xs: Sequence[Fraction | int]) -> Fraction:
        """Exact value at a rational point."""
        if len(xs) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(xs)}")
        vals = [rat(x) for x in xs]
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            term = coeff
            for x, e in zip(vals, mono):
                if e:
                    term *= x**e
            total += term
        return total

    def partial(self, i: int) -> "MPoly":
        """Partial derivative with respect to variable i (0-based)."""
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            if mono[i] == 0:
                continue
            m = list(mono)
            m[i] -= 1
            out[tuple(m)] = coeff * mono[i]
        return MPoly(self.nvars, out)

    # -- grading and homogenization ----------------------------------------

    def homogeneous_parts(self, d: int) -> list["MPoly"]:
        """Split into parts of total degree 0..d; the parts sum back to self."""
        if self.total_degree() > d:
            raise ValueError(f"degree {self.total_degree()} exceeds requested bound {d}")
        parts: list[dict[Monomial, Fraction]] = [{} for _ in range(d + 1)]
        for mono, coeff in self.terms.items():
            parts[sum(mono)][mono] = coeff
        return [MPoly(self.nvars, p) for p in parts]

    def homogenize(self, d: int) -> "MPoly":
        """Degree-d lift into nvars+1 variables; the new variable comes first.

        Each total-degree-k term is multiplied by the new variable to the
        power d-k, so the result is homogeneous of degree d and substituting
        1 for the new variable recovers the original polynomial.
        """
        if self.total_degree() > d:
            raise ValueError(f"degree {self.total_degree()} exceeds requested bound {d}")
        out = {(d - sum(m), *m): c for m, c in self.terms.items()}
        return MPoly(self.nvars + 1, out)

    def dehomogenize(self) -> "MPoly":
        """Substitute 1 for the first variable and drop it."""
        if self.nvars < 2:
            raise ValueError("need at least two variables to dehomogenize")
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            m = mono[1:]
            out[m] = out.get(m, Fraction(0)) + coeff
        return MPoly(self.nvars - 1, out)

    # -- text form -----------------------------------------------------------

    def to_text(
        self,
        names: Sequence[str] | None = None,
        order: MonOrder = DEGREVLEX,
        precedence: Sequence[int] | None = None,
    ) -> str:
        """Canonical text form: terms descending by the given order.

        Default variable names are x1..xn; pass explicit names (e.g.
        x0..xn) for homogenized polynomials.
        """
        if names is None:
            names = [f"x{i+1}" for i in range(self.nvars)]
        if len(names) != self.nvars:
            raise ValueError("wrong number of variable names")
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for mono, coeff in self.sorted_terms(order, precedence):
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if not factors:
                body = _coeff_str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_coeff_str(mag)] + factors)
            if not chunks:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(chunks)

    def homogenized_text(self) -> str:
        """Text form for a homogenized polynomial: names x0..xn, x0 least."""
        names = [f"x{i}" for i in range(self.nvars)]
        precedence = list(range(1, self.nvars)) + [0]
        return self.to_text(names, DEGREVLEX, precedence)

    def __repr__(self) -> str:
        return f"MPoly({self.nvars}, {self.to_text()})"


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_from_terms(nvars: int, terms: Mapping[Sequence[int], int | str | Fraction]) -> MPoly:
    """Build a polynomial from an {exponents: coefficient} mapping."""
    return MPoly(nvars, {tuple(m): rat(c) for m, c in terms.items()})
