"""Sparse multivariate polynomials over Q(e_n) and projective points.

Terms are a dict from exponent tuple to nonzero coefficient; the zero
polynomial is the empty dict.  Printing and parsing share one grammar:
sums of products of rational literals, e(n) root literals, variable names
and parenthesised subexpressions, with ^ for nonnegative integer powers.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .cyclo import CyclotomicNumber

Coeff = CyclotomicNumber


def default_names(nvars: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(nvars))


@lru_cache(maxsize=None)
def graded_monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given total degree, lex-descending."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in graded_monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


def _as_coeff(value, order: int) -> Coeff:
    if isinstance(value, CyclotomicNumber):
        return value.lift(math.lcm(order, value.order)) if order % value.order == 0 else value
    return CyclotomicNumber.from_rational(value, order)


class MultiPoly:
    """A polynomial in nvars variables with coefficients in Q(e_order)."""

    __slots__ = ("nvars", "order", "terms", "names")

    def __init__(self, nvars: int, order: int, terms=None, names=None) -> None:
        names = tuple(names) if names is not None else default_names(nvars)
        if len(names) != nvars:
            raise ValueError("names length must equal nvars")
        clean: dict[tuple[int, ...], Coeff] = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent tuple {exps}")
                c = _as_coeff(c, order)
                if c.order != order:
                    c = c.lift(order)
                if c:
                    clean[exps] = clean[exps] + c if exps in clean else c
                    if exps in clean and clean[exps].is_zero():
                        del clean[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "names", names)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, order: int = 1, names=None) -> "MultiPoly":
        return cls(nvars, order, {}, names)

    @classmethod
    def constant(cls, value, nvars: int, order: int = 1, names=None) -> "MultiPoly":
        return cls(nvars, order, {(0,) * nvars: value}, names)

    @classmethod
    def variable(cls, i: int, nvars: int, order: int = 1, names=None) -> "MultiPoly":
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, order, {exps: 1}, names)

    # -- coercion ---------------------------------------------------------
    def with_order(self, order: int) -> "MultiPoly":
        if order == self.order:
            return self
        return MultiPoly(self.nvars, order,
                         {e: c.lift(order) for e, c in self.terms.items()}, self.names)

    def _pair(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = MultiPoly.constant(other, self.nvars,
                                       getattr(other, "order", 1), self.names)
        if not isinstance(other, MultiPoly):
            return self, None
        if other.nvars != self.nvars:
            raise ValueError("variable counts differ")
        n = math.lcm(self.order, other.order)
        return self.with_order(n), other.with_order(n)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def degree_in(self, variables) -> int:
        vs = tuple(variables)
        if not self.terms:
            return 0
        return max(sum(e[i] for i in vs) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def is_homogeneous_in(self, variables) -> bool:
        vs = tuple(variables)
        degs = {sum(e[i] for i in vs) for e in self.terms}
        return len(degs) <= 1

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        a, b = self._pair(other)
        if b is None:
            return NotImplemented
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s:
                terms[e] = s
            elif e in terms:
                del terms[e]
        return MultiPoly(a.nvars, a.order, terms, a.names)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, self.order,
                         {e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        a, b = self._pair(other)
        if b is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            c0 = _as_coeff(other, self.order)
            n = math.lcm(self.order, c0.order)
            c0 = c0.lift(n)
            if not c0:
                return MultiPoly.zero(self.nvars, n, self.names)
            return MultiPoly(self.nvars, n,
                             {e: c.lift(n) * c0 for e, c in self.terms.items()}, self.names)
        a, b = self._pair(other)
        if b is None:
            return NotImplemented
        terms: dict[tuple[int, ...], Coeff] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                s = terms.get(e)
                s = c if s is None else s + c
                if s:
                    terms[e] = s
                elif e in terms:
                    del terms[e]
        return MultiPoly(a.nvars, a.order, terms, a.names)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = MultiPoly.constant(1, self.nvars, self.order, self.names)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return (self - other).is_zero()
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._pair(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.nvars, self.order, frozenset(self.terms.items())))

    # -- calculus ---------------------------------------------------------
    def partial(self, i: int) -> "MultiPoly":
        """Exact partial derivative with respect to variable i."""
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                nc = c * e[i]
                if ne in terms:
                    nc = terms[ne] + nc
                if nc:
                    terms[ne] = nc
                elif ne in terms:
                    del terms[ne]
        return MultiPoly(self.nvars, self.order, terms, self.names)

    def partial_multi(self, beta) -> "MultiPoly":
        out = self
        for i, b in enumerate(beta):
            for _ in range(b):
                out = out.partial(i)
        return out

    def evaluate(self, coords) -> Coeff:
        coords = list(coords)
        if len(coords) != self.nvars:
            raise ValueError("coordinate count mismatch")
        order = self.order
        for c in coords:
            if isinstance(c, CyclotomicNumber):
                order = math.lcm(order, c.order)
        coords = [_as_coeff(c, 1).lift(order) if not isinstance(c, CyclotomicNumber)
                  else c.lift(order) for c in coords]
        pows: list[dict[int, Coeff]] = [dict() for _ in range(self.nvars)]

        def power(i, k):
            d = pows[i]
            if k not in d:
                d[k] = coords[i] ** k
            return d[k]

        total = CyclotomicNumber.zero(order)
        for e, c in self.terms.items():
            v = c.lift(order)
            for i, k in enumerate(e):
                if k:
                    v = v * power(i, k)
            total = total + v
        return total

    def partial_evaluate(self, assign: dict) -> "MultiPoly":
        """Substitute constants for some variables, keeping nvars fixed."""
        order = self.order
        for v in assign.values():
            if isinstance(v, CyclotomicNumber):
                order = math.lcm(order, v.order)
        vals = {i: _as_coeff(v, order).lift(order) if not isinstance(v, CyclotomicNumber)
                else v.lift(order) for i, v in assign.items()}
        terms: dict[tuple[int, ...], Coeff] = {}
        for e, c in self.terms.items():
            c = c.lift(order)
            ne = list(e)
            for i, val in vals.items():
                k = e[i]
                if k:
                    c = c * val ** k
                    ne[i] = 0
            if not c:
                continue
            key = tuple(ne)
            s = terms.get(key)
            s = c if s is None else s + c
            if s:
                terms[key] = s
            elif key in terms:
                del terms[key]
        return MultiPoly(self.nvars, order, terms, self.names)

    def substitute_linear(self, matrix, new_names=None) -> "MultiPoly":
        """Ring substitution x_i -> sum_j matrix[i][j] * y_j.

        matrix has nvars rows; the number of columns sets the new variable
        count.  Returns the image polynomial in the y variables.
        """
        rows = [list(r) for r in matrix]
        if len(rows) != self.nvars:
            raise ValueError("matrix must have one row per variable")
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged substitution matrix")
        order = self.order
        for r in rows:
            for v in r:
                if isinstance(v, CyclotomicNumber):
                    order = math.lcm(order, v.order)
        names = tuple(new_names) if new_names is not None else default_names(m)
        lin = []
        for r in rows:
            lin.append(MultiPoly(m, order,
                                 {tuple(1 if j == t else 0 for j in range(m)): v
                                  for t, v in enumerate(r)
                                  if (v if isinstance(v, CyclotomicNumber) else Fraction(v))},
                                 names))
        pows: list[dict[int, MultiPoly]] = [dict() for _ in range(self.nvars)]

        def power(i, k):
            d = pows[i]
            if k not in d:
                d[k] = lin[i] ** k
            return d[k]

        out = MultiPoly.zero(m, order, names)
        for e, c in self.terms.items():
            piece = MultiPoly.constant(c, m, order, names)
            for i, k in enumerate(e):
                if k:
                    piece = piece * power(i, k)
            out = out + piece
        return out

    def rename(self, names) -> "MultiPoly":
        return MultiPoly(self.nvars, self.order, dict(self.terms), tuple(names))

    def coeff_vector(self, monomials) -> list[Coeff]:
        """Coefficients against an explicit monomial list; support must be covered."""
        index = {m: i for i, m in enumerate(monomials)}
        vec = [CyclotomicNumber.zero(self.order)] * len(monomials)
        for e, c in self.terms.items():
            if e not in index:
                raise ValueError(f"monomial {e} outside the given basis")
            vec[index[e]] = c
        return vec

    # -- text -------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{self.names[i]}^{k}" if k > 1 else self.names[i]
                for i, k in enumerate(e) if k)
            parts.append(_format_term(c, mono))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def _format_term(c: Coeff, mono: str) -> str:
    if c.is_rational():
        r = c.as_rational()
        if not mono:
            return str(r) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"
        if r == 1:
            return mono
        if r == -1:
            return f"-{mono}"
        cs = str(r.numerator) if r.denominator == 1 else f"({r.numerator}/{r.denominator})"
        return f"{cs}*{mono}"
    cs = str(c)
    wrapped = cs if (cs.startswith("-") or "+" not in cs and " - " not in cs) and "*" not in cs and " " not in cs else f"({cs})"
    return f"{wrapped}*{mono}" if mono else wrapped


class ProjPoint:
    """A point of projective space with exact cyclotomic coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords, order=None) -> None:
        cs = list(coords)
        if order is None:
            order = 1
            for c in cs:
                if isinstance(c, CyclotomicNumber):
                    order = math.lcm(order, c.order)
        cs = [_as_coeff(c, order).lift(order) if not isinstance(c, CyclotomicNumber)
              else c.lift(order) for c in cs]
        if not any(cs):
            raise ValueError("projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", tuple(cs))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("ProjPoint is immutable")

    @property
    def order(self) -> int:
        return self.coords[0].order

    def normalized(self) -> "ProjPoint":
        """Scale so the first nonzero coordinate is 1."""
        for c in self.coords:
            if c:
                inv = c.inverse()
                return ProjPoint([x * inv for x in self.coords])
        raise AssertionError("unreachable")

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if len(self.coords) != len(other.coords):
            return False
        return self.normalized().coords == other.normalized().coords

    def __hash__(self):
        return hash(self.normalized().coords)

    def sort_key(self):
        return tuple(c.sort_key() for c in self.normalized().coords)

    def __str__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"ProjPoint{self}"


# -- parser --------------------------------------------------------------

class _Tokens:
    def __init__(self, text: str):
        self.toks = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.toks.append(("int", text[i:j]))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("name", text[i:j]))
                i = j
            elif ch in "+-*/^()":
                self.toks.append((ch, ch))
                i += 1
            else:
                raise ValueError(f"unexpected character {ch!r} in polynomial text")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            raise ValueError(f"expected {kind}, found {tok[1]!r}")
        self.pos += 1
        return tok


def parse_poly(text: str, names, order: int = 1) -> MultiPoly:
    """Parse the printing grammar back into a MultiPoly."""
    names = tuple(names)
    index = {nm: i for i, nm in enumerate(names)}
    nvars = len(names)
    toks = _Tokens(text)

    def parse_sum():
        sign = 1
        kind, _ = toks.peek()
        if kind in ("+", "-"):
            toks.take()
            sign = -1 if kind == "-" else 1
        acc = parse_product()
        if sign < 0:
            acc = -acc
        while True:
            kind, _ = toks.peek()
            if kind == "+":
                toks.take()
                acc = acc + parse_product()
            elif kind == "-":
                toks.take()
                acc = acc - parse_product()
            else:
                return acc

    def parse_product():
        acc = parse_power()
        while True:
            kind, _ = toks.peek()
            if kind == "*":
                toks.take()
                acc = acc * parse_power()
            elif kind == "/":
                toks.take()
                den = parse_power()
                if den.degree() not in (0, None) or not den.terms:
                    raise ValueError("division only by nonzero constants")
                (c,) = den.terms.values()
                acc = acc * c.inverse()
            else:
                return acc

    def parse_power():
        base = parse_atom()
        kind, _ = toks.peek()
        if kind == "^":
            toks.take()
            sign = 1
            if toks.peek()[0] == "-":
                toks.take()
                sign = -1
            _, digits = toks.take("int")
            k = int(digits)
            if sign < 0:
                if base.degree() not in (0, None) or not base.terms:
                    raise ValueError("negative powers only on nonzero constants")
                (c,) = base.terms.values()
                return MultiPoly.constant(c.inverse(), nvars, base.order, names) ** k
            return base ** k
        return base

    def parse_atom():
        kind, val = toks.take()
        if kind == "(":
            inner = parse_sum()
            toks.take(")")
            return inner
        if kind == "int":
            return MultiPoly.constant(int(val), nvars, order, names)
        if kind == "-":
            return -parse_atom()
        if kind == "name":
            if val == "e" and toks.peek()[0] == "(":
                toks.take("(")
                _, digits = toks.take("int")
                toks.take(")")
                n = int(digits)
                root = CyclotomicNumber.root(n)
                return MultiPoly.constant(root, nvars, math.lcm(order, n), names)
            if val in index:
                return MultiPoly.variable(index[val], nvars, order, names)
            raise ValueError(f"unknown variable {val!r}")
        raise ValueError(f"unexpected token {val!r}")

    result = parse_sum()
    if toks.peek()[0] is not None:
        raise ValueError(f"trailing input at {toks.peek()[1]!r}")
    return result


def parse_point(text: str, order: int = 1) -> ProjPoint:
    """Parse '(c0 : c1 : ...)' with rational and e(n)^k coordinate literals."""
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")):
        raise ValueError(f"not a point literal: {text!r}")
    parts = t[1:-1].split(":")
    coords = []
    for p in parts:
        poly = parse_poly(p.strip() or "0", (), order)
        coords.append(poly.terms.get((), CyclotomicNumber.zero(poly.order)))
    return ProjPoint(coords)


def format_point(p: ProjPoint) -> str:
    return str(p)
