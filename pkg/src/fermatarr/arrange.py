"""Fermat-type hyperplane arrangements and their derived configurations.

Builds the extended Fermat arrangements in P^N over Q(e(n)), enumerates
monomial reflection groups G(n, p, N+1), extracts reflection hyperplanes,
dualizes arrangements to point sets, and closes arrangements under
intersection to produce derived flats with containment bookkeeping.

Flats are stored by their defining linear equations in reduced row echelon
form, so equality and hashing are structural.  All flats produced from a
single arrangement share the arrangement's root order; mixing flats whose
entries live at different non-rational orders in one hashed collection is
not supported (same caveat as CyclotomicNumber).
"""

from __future__ import annotations

import itertools
from math import comb, factorial, lcm

from .cyclo import CyclotomicNumber
from .linalg import kernel_of_rows, rref
from .mpoly import MultiPoly, ProjPoint, default_names

_ZERO = CyclotomicNumber.zero()
_ONE = CyclotomicNumber.one()

GROUP_ORDER_CAP = 100_000


def _as_cyclo(value):
    if isinstance(value, CyclotomicNumber):
        return value
    return CyclotomicNumber.from_rational(value)


def _common_order(entries):
    n = 1
    for e in entries:
        n = lcm(n, e.order)
    return n


def _cyc_key(value: CyclotomicNumber):
    # Deterministic total order on field elements.  Rational values key at
    # order 1 regardless of representation; non-rational values key by
    # their stored order, which is consistent within one arrangement.
    if value.is_rational():
        return (1, (value.as_rational(),))
    return (value.order, tuple(value.coeffs))


def _row_key(row):
    return tuple(_cyc_key(v) for v in row)


class Hyperplane:
    """A hyperplane in P^N, stored as a normalized coefficient vector.

    The form (c0, ..., cN) encodes the linear polynomial sum(ci * xi).
    Forms are scaled so the first nonzero coefficient is 1, making
    equality and hashing structural.
    """

    __slots__ = ("form",)

    def __init__(self, form):
        coeffs = tuple(_as_cyclo(c) for c in form)
        lead = next((c for c in coeffs if not c.is_zero()), None)
        if lead is None:
            raise ValueError("hyperplane form must be nonzero")
        inv = lead.inverse()
        object.__setattr__(self, "form", tuple(inv * c for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Hyperplane is immutable")

    @property
    def ambient(self) -> int:
        return len(self.form) - 1

    def linear_form(self, names=None) -> MultiPoly:
        nvars = len(self.form)
        poly = MultiPoly.zero(nvars, names=names)
        for i, c in enumerate(self.form):
            if not c.is_zero():
                poly = poly + MultiPoly.variable(i, nvars, names=names) * c
        return poly

    def contains(self, point: ProjPoint) -> bool:
        acc = _ZERO
        for c, x in zip(self.form, point.coords):
            acc = acc + c * x
        return acc.is_zero()

    def dual_point(self) -> ProjPoint:
        return ProjPoint(self.form)

    def as_flat(self) -> "Flat":
        return Flat.from_equations([self.form])

    def sort_key(self):
        return _row_key(self.form)

    def __eq__(self, other):
        if not isinstance(other, Hyperplane):
            return NotImplemented
        return self.form == other.form

    def __hash__(self):
        return hash(self.form)

    def __str__(self):
        return str(self.linear_form())

    def __repr__(self):
        return f"Hyperplane({self})"


class Arrangement:
    """A finite set of distinct hyperplanes of the Fermat family in P^N."""

    __slots__ = ("N", "n", "k", "hyperplanes")

    def __init__(self, N: int, n: int, k: int, hyperplanes):
        hyps = list(hyperplanes)
        if len(set(hyps)) != len(hyps):
            raise ValueError("hyperplanes must be mutually distinct")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "hyperplanes", tuple(hyps))

    def __setattr__(self, name, value):
        raise AttributeError("Arrangement is immutable")

    def __len__(self):
        return len(self.hyperplanes)

    def defining_polynomial(self, names=None) -> MultiPoly:
        poly = MultiPoly.constant(1, self.N + 1, names=names)
        for h in self.hyperplanes:
            poly = poly * h.linear_form(names)
        return poly

    def __repr__(self):
        return f"Arrangement(N={self.N}, n={self.n}, k={self.k}, {len(self)} hyperplanes)"


def fermat_arrangement(N: int, n: int, k: int) -> Arrangement:
    """All hyperplanes x_i - e(n)^a x_j (i < j, a in [n]) plus x_0..x_k.

    k = -1 includes no coordinate hyperplanes.  The hyperplane count is
    n*C(N+1,2) + k + 1.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    if not -1 <= k <= N:
        raise ValueError("k must be in -1..N")
    hyps = []
    for i in range(k + 1):
        form = [_ZERO] * (N + 1)
        form[i] = _ONE
        hyps.append(Hyperplane(form))
    eps = CyclotomicNumber.root(n)
    for i in range(N + 1):
        for j in range(i + 1, N + 1):
            for a in range(n):
                form = [_ZERO] * (N + 1)
                form[i] = _ONE
                form[j] = -(eps ** a)
                hyps.append(Hyperplane(form))
    arr = Arrangement(N, n, k, hyps)
    assert len(arr) == n * comb(N + 1, 2) + k + 1
    return arr


def format_spec(arr: Arrangement) -> str:
    return f"A({arr.N + 1},{arr.k + 1},{arr.n})"


def parse_spec(text: str) -> Arrangement:
    """Parse an arrangement spec string A(N+1, k+1, n)."""
    s = text.strip()
    if not (s.startswith("A(") and s.endswith(")")):
        raise ValueError(f"bad arrangement spec {text!r}: expected A(N+1,k+1,n)")
    parts = s[2:-1].split(",")
    if len(parts) != 3:
        raise ValueError(f"bad arrangement spec {text!r}: expected three integers")
    try:
        n1, k1, n = (int(p.strip()) for p in parts)
    except ValueError:
        raise ValueError(f"bad arrangement spec {text!r}: expected three integers")
    return fermat_arrangement(n1 - 1, n, k1 - 1)


class GroupElement:
    """An invertible matrix over Q(e(n)), tagged when known to be monomial."""

    __slots__ = ("matrix", "monomial")

    def __init__(self, matrix, monomial: bool = False):
        rows = tuple(tuple(_as_cyclo(v) for v in row) for row in matrix)
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise ValueError("matrix must be square")
        if monomial:
            for lines in (rows, tuple(zip(*rows))):
                for line in lines:
                    if sum(1 for v in line if not v.is_zero()) != 1:
                        raise ValueError("monomial flag requires one nonzero entry per row and column")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "monomial", monomial)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    @property
    def size(self) -> int:
        return len(self.matrix)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        n = self.size
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = _ZERO
                for t in range(n):
                    a = self.matrix[i][t]
                    b = other.matrix[t][j]
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return GroupElement(rows, monomial=self.monomial and other.monomial)

    def apply(self, vector):
        vec = tuple(_as_cyclo(v) for v in vector)
        out = []
        for row in self.matrix:
            acc = _ZERO
            for a, x in zip(row, vec):
                if not (a.is_zero() or x.is_zero()):
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"GroupElement({self.matrix!r})"


def monomial_group(n: int, p: int, N1: int, cap: int = GROUP_ORDER_CAP):
    """Enumerate G(n, p, N+1): monomial matrices with e(n)-power entries
    whose entry product is an (n/p)-th root of unity.

    The order is N1! * n^N1 / p; enumeration refuses to exceed cap.
    """
    if N1 < 2:
        raise ValueError("N1 must be >= 2")
    if n < 1 or p < 1 or n % p != 0:
        raise ValueError("p must divide n")
    order = factorial(N1) * n ** N1 // p
    if order > cap:
        raise ValueError(f"group order {order} exceeds cap {cap}")
    eps_pows = [CyclotomicNumber.root(n) ** a for a in range(n)]
    elements = []
    for sigma in itertools.permutations(range(N1)):
        for expo in itertools.product(range(n), repeat=N1):
            if sum(expo) % p != 0:
                continue
            rows = [[_ZERO] * N1 for _ in range(N1)]
            for i in range(N1):
                rows[i][sigma[i]] = eps_pows[expo[i]]
            elements.append(GroupElement(rows, monomial=True))
    assert len(elements) == order
    return elements


def reflections_of(group) -> list:
    """Fixed hyperplanes of the reflections in an enumerated group.

    An element is a reflection iff rank(g - I) = 1; the unique echelon row
    of g - I is then the linear form of the fixed hyperplane.  Results are
    deduplicated and canonically sorted.
    """
    seen = {}
    for g in group:
        size = g.size
        rows = []
        for i in range(size):
            row = list(g.matrix[i])
            row[i] = row[i] - _ONE
            rows.append(tuple(row))
        order = _common_order([v for row in rows for v in row])
        _, echelon = rref(rows, size, order)
        if len(echelon) != 1:
            continue
        h = Hyperplane(echelon[0])
        seen.setdefault(h.sort_key(), h)
    return [seen[key] for key in sorted(seen)]


def dual_points(arr: Arrangement) -> list:
    """The point of the dual space carried by each hyperplane's form."""
    return [h.dual_point() for h in arr.hyperplanes]


def hyperplane_from_point(point: ProjPoint) -> Hyperplane:
    """Inverse of dual_points on a single point."""
    return Hyperplane(point.coords)


class Flat:
    """A linear subspace of P^N cut out by independent linear equations.

    equations holds the RREF rows of the coefficient matrix, each row a
    covector (c0, ..., cN) annihilating the flat.  dim is the projective
    dimension: N - len(equations).
    """

    __slots__ = ("equations", "dim", "order")

    def __init__(self, equations, ambient: int, order: int, _canonical=False):
        if not _canonical:
            raise ValueError("use the from_* constructors")
        object.__setattr__(self, "equations", equations)
        object.__setattr__(self, "dim", ambient - len(equations))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("Flat is immutable")

    @staticmethod
    def from_equations(rows) -> "Flat":
        rows = [tuple(_as_cyclo(v) for v in row) for row in rows]
        if not rows:
            raise ValueError("a flat needs at least one equation")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("equation rows must share a length")
        order = _common_order([v for row in rows for v in row])
        _, echelon = rref(rows, ncols, order)
        if not echelon:
            raise ValueError("equations are all zero")
        if len(echelon) == ncols:
            raise ValueError("equations have no projective solutions")
        return Flat(tuple(echelon), ncols - 1, order, _canonical=True)

    @staticmethod
    def from_span(vectors) -> "Flat":
        """The flat spanned by the given coordinate vectors."""
        vecs = [tuple(_as_cyclo(v) for v in vec) for vec in vectors]
        if not vecs:
            raise ValueError("span needs at least one vector")
        ncols = len(vecs[0])
        order = _common_order([v for vec in vecs for v in vec])
        forms = kernel_of_rows(vecs, ncols, order)
        if not forms:
            raise ValueError("vectors span the whole space")
        return Flat.from_equations(forms)

    @staticmethod
    def from_point(point: ProjPoint) -> "Flat":
        return Flat.from_span([point.coords])

    @property
    def ambient(self) -> int:
        return self.dim + len(self.equations)

    def span_basis(self):
        """A canonical basis of the cone over the flat: dim+1 vectors."""
        ncols = self.ambient + 1
        return kernel_of_rows(list(self.equations), ncols, self.order)

    def point(self) -> ProjPoint:
        if self.dim != 0:
            raise ValueError("only 0-dimensional flats are points")
        return ProjPoint(self.span_basis()[0])

    def contains_point(self, point: ProjPoint) -> bool:
        for row in self.equations:
            acc = _ZERO
            for c, x in zip(row, point.coords):
                acc = acc + c * x
            if not acc.is_zero():
                return False
        return True

    def contains_flat(self, other: "Flat") -> bool:
        for vec in other.span_basis():
            if not self.contains_point(ProjPoint(vec)):
                return False
        return True

    def meet(self, other: "Flat"):
        """Intersection flat, or None when the intersection is empty."""
        rows = list(self.equations) + list(other.equations)
        ncols = self.ambient + 1
        order = lcm(self.order, other.order)
        _, echelon = rref(rows, ncols, order)
        if len(echelon) == ncols:
            return None
        return Flat(tuple(echelon), ncols - 1, order, _canonical=True)

    def equation_polys(self, names=None):
        nvars = self.ambient + 1
        polys = []
        for row in self.equations:
            poly = MultiPoly.zero(nvars, names=names)
            for i, c in enumerate(row):
                if not c.is_zero():
                    poly = poly + MultiPoly.variable(i, nvars, names=names) * c
            polys.append(poly)
        return polys

    def sort_key(self):
        return (self.dim, tuple(_row_key(row) for row in self.equations))

    def __eq__(self, other):
        if not isinstance(other, Flat):
            return NotImplemented
        return self.equations == other.equations

    def __hash__(self):
        return hash(self.equations)

    def __repr__(self):
        eqs = "; ".join(str(p) for p in self.equation_polys())
        return f"Flat(dim={self.dim}, {eqs})"


def containing_hyperplanes(arr: Arrangement, fl: Flat) -> list:
    """Arrangement hyperplanes whose form vanishes on the whole flat."""
    basis = fl.span_basis()
    out = []
    for h in arr.hyperplanes:
        if all(h.contains(ProjPoint(vec)) for vec in basis):
            out.append(h)
    return out


def lattice_membership(arr: Arrangement, fl: Flat):
    """(member, containing_count): member iff the flat equals the meet of
    all arrangement hyperplanes containing it."""
    containing = containing_hyperplanes(arr, fl)
    count = len(containing)
    if not containing:
        return False, 0
    meet = containing[0].as_flat()
    for h in containing[1:]:
        meet = meet.meet(h.as_flat())
        if meet is None:
            return False, count
    return meet == fl, count


def derived_flats(arr: Arrangement, t: int, min_hyperplanes: int) -> list:
    """All t-dimensional intersection-lattice flats lying on at least
    min_hyperplanes arrangement hyperplanes, canonically sorted.

    Closure by iterated meets with single hyperplanes: one meet drops the
    dimension by at most 1, so level-by-level descent reaches every flat.
    """
    N = arr.N
    if not 0 <= t <= N - 1:
        raise ValueError("t must be in 0..N-1")
    if min_hyperplanes < 2:
        raise ValueError("min_hyperplanes must be >= 2")
    hyp_flats = [h.as_flat() for h in arr.hyperplanes]
    current = set(hyp_flats)
    level = N - 1
    while level > t:
        nxt = set()
        for fl in current:
            for hf in hyp_flats:
                m = fl.meet(hf)
                if m is not None and m.dim == level - 1:
                    nxt.add(m)
        current = nxt
        level -= 1
    out = [fl for fl in current
           if len(containing_hyperplanes(arr, fl)) >= min_hyperplanes]
    out.sort(key=Flat.sort_key)
    return out
