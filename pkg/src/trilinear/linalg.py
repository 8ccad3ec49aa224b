"""Exact rational linear algebra and binary-form utilities.

Matrices are plain lists of rows, entries ``fractions.Fraction`` (ints are
accepted and promoted).  Everything here is deterministic: RREF pivots are
chosen left to right, nullspace bases follow the standard free-variable
convention, so downstream computations that consume these bases are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

Row = List[Fraction]
Matrix = List[Row]


def rref(m: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the list of pivot columns (ascending)."""
    a = [[Fraction(v) for v in row] for row in m]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = a[r][c]
        a[r] = [v / inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def nullspace(m: Sequence[Sequence], ncols: Optional[int] = None) -> List[Row]:
    """Canonical right-kernel basis.

    Each basis vector has one free coordinate equal to 1 and the other free
    coordinates equal to 0; vectors are ordered by ascending free column.
    """
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def _int_row(row: Sequence) -> List[int]:
    """Clear denominators and strip the content, keeping the sign pattern."""
    fr = [Fraction(v) for v in row]
    den = 1
    for v in fr:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


class Echelon:
    """Incremental fraction-free echelon form, used for fast rank counting
    and for reducing vectors modulo a row space.

    Rows are stored as primitive integer vectors; :meth:`reduce` therefore
    returns a vector that is zero exactly when the input lies in the span.
    """

    def __init__(self) -> None:
        self._rows: List[Tuple[int, List[int]]] = []  # (lead column, row)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Sequence) -> List[int]:
        v = _int_row(vec)
        for lead, row in self._rows:
            if v[lead] != 0:
                p, q = row[lead], v[lead]
                v = [p * a - q * b for a, b in zip(v, row)]
                g = 0
                for a in v:
                    g = gcd(g, a)
                if g > 1:
                    v = [a // g for a in v]
        return v

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec: Sequence) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        v = self.reduce(vec)
        lead = next((i for i, a in enumerate(v) if a != 0), None)
        if lead is None:
            return False
        self._rows.append((lead, v))
        self._rows.sort(key=lambda t: t[0])
        return True

    def add_all(self, vecs: Iterable[Sequence]) -> None:
        for v in vecs:
            self.add(v)

    def nullspace(self, ncols: int) -> List[Row]:
        """Right-kernel basis of the row space, by back substitution.

        Rows are only echelon (not fully reduced), so pivots are solved in
        reverse lead order; the free-coordinate convention matches
        :func:`nullspace`.
        """
        leads = {lead for lead, _ in self._rows}
        basis = []
        for fc in range(ncols):
            if fc in leads:
                continue
            x = [Fraction(0)] * ncols
            x[fc] = Fraction(1)
            for lead, row in reversed(self._rows):
                s = sum((Fraction(row[j]) * x[j] for j in range(lead + 1, ncols)
                         if row[j] and x[j]), Fraction(0))
                x[lead] = -s / row[lead]
            basis.append(x)
        return basis


def rank(m: Sequence[Sequence]) -> int:
    ech = Echelon()
    ech.add_all(m)
    return ech.rank


# ---------------------------------------------------------------------------
# Binary forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form in one variable pair, e.g. (x0, x1).

    ``coeffs[i]`` is the coefficient of first_var^(degree-i) * second_var^i,
    i.e. coefficients are ordered by descending power of the group's first
    variable.  The zero form keeps its declared degree.
    """

    group: str  # one of "x", "y", "z"
    degree: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count does not match degree")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def monic(self) -> "BinaryForm":
        for c in self.coeffs:
            if c != 0:
                return BinaryForm(self.group, self.degree,
                                  tuple(v / c for v in self.coeffs))
        return self

    def evaluate(self, a, b) -> Fraction:
        a, b = Fraction(a), Fraction(b)
        total = Fraction(0)
        for i, c in enumerate(self.coeffs):
            total += c * a ** (self.degree - i) * b ** i
        return total

    def multiply(self, other: "BinaryForm") -> "BinaryForm":
        if other.group != self.group:
            raise ValueError("mixed variable groups")
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, c in enumerate(self.coeffs):
            for j, d in enumerate(other.coeffs):
                out[i + j] += c * d
        return BinaryForm(self.group, self.degree + other.degree, tuple(out))


class InexactDivisionError(ValueError):
    """Raised when a binary-form division leaves a remainder."""

    def __init__(self, remainder):
        super().__init__("division is not exact")
        self.remainder = remainder


def _strip(coeffs: Sequence[Fraction]) -> Tuple[int, int, List[Fraction]]:
    """Split off the powers of the two variables.

    Returns (mult of second var, mult of first var, core coefficients) where
    the core has nonzero first and last coefficient.
    """
    lead = next(i for i, c in enumerate(coeffs) if c != 0)
    trail = next(i for i, c in enumerate(reversed(coeffs)) if c != 0)
    core = list(coeffs[lead:len(coeffs) - trail])
    return lead, trail, core


def _poly_gcd(p: List[Fraction], q: List[Fraction]) -> List[Fraction]:
    """Euclidean gcd of dense univariate polynomials (descending powers)."""
    def norm(u):
        i = next((k for k, c in enumerate(u) if c != 0), None)
        return [] if i is None else u[i:]

    p, q = norm(p), norm(q)
    while q:
        if len(p) < len(q):
            p, q = q, p
            continue
        # p -= lead(p)/lead(q) * q * x^(deg p - deg q); descending lists
        # align at the front
        f = p[0] / q[0]
        p = [c - f * q[i] if i < len(q) else c for i, c in enumerate(p)]
        p = norm(p)
        if len(p) < len(q):
            p, q = q, p
    if not p:
        return []
    return [c / p[0] for c in p]


def gcd_binary_forms(forms: Sequence[BinaryForm]) -> BinaryForm:
    """Monic homogeneous gcd of a family of binary forms over one group.

    Degree 0 means the forms have no common projective root over the complex
    numbers (the gcd is stable under field extension).
    """
    nz = [f for f in forms if not f.is_zero]
    if not nz:
        raise ValueError("zero family")
    group = nz[0].group
    if any(f.group != group for f in nz):
        raise ValueError("mixed variable groups")
    g_second, g_first, core = None, None, None
    for f in nz:
        lead, trail, c = _strip(f.coeffs)
        if core is None:
            g_second, g_first, core = lead, trail, c
        else:
            g_second = min(g_second, lead)
            g_first = min(g_first, trail)
            core = _poly_gcd(core, c)
            core = core or [Fraction(1)]
    if not core:
        core = [Fraction(1)]
    # reassemble: second_var^g_second * core * first_var^g_first
    coeffs = [Fraction(0)] * g_second + core + [Fraction(0)] * g_first
    return BinaryForm(group, len(coeffs) - 1, tuple(coeffs)).monic()


def divide_by_linear(f: BinaryForm, l: BinaryForm) -> BinaryForm:
    """Exact quotient of f by a linear form of the same group."""
    if l.degree != 1 or l.is_zero:
        raise ValueError("divisor must be a nonzero linear form")
    if l.group != f.group:
        raise ValueError("mixed variable groups")
    a, b = l.coeffs  # a*first + b*second
    if f.degree == 0:
        raise InexactDivisionError(f)
    if a != 0:
        # synthetic division in the first variable (second is homogenizing)
        q: List[Fraction] = []
        rem = Fraction(0)
        for i, c in enumerate(f.coeffs):
            if i == 0:
                q.append(c / a)
            elif i < f.degree:
                q.append((c - b * q[-1]) / a)
            else:
                rem = c - b * q[-1]
        if rem != 0:
            raise InexactDivisionError(
                BinaryForm(f.group, f.degree,
                           tuple([Fraction(0)] * f.degree + [rem])))
        return BinaryForm(f.group, f.degree - 1, tuple(q))
    # l = b * second_var: divisible iff the pure first-variable term vanishes
    if f.coeffs[0] != 0:
        raise InexactDivisionError(
            BinaryForm(f.group, f.degree,
                       tuple([f.coeffs[0]] + [Fraction(0)] * f.degree)))
    return BinaryForm(f.group, f.degree - 1, tuple(c / b for c in f.coeffs[1:]))


def rational_linear_factor(f: BinaryForm) -> Optional[BinaryForm]:
    """A monic linear factor of f over the rationals, or None.

    Checks the two coordinate factors and the rational roots of the
    dehomogenized polynomial.
    """
    if f.is_zero or f.degree == 0:
        return None
    one = Fraction(1)
    if f.coeffs[-1] == 0:  # first variable divides
        return BinaryForm(f.group, 1, (one, Fraction(0)))
    if f.coeffs[0] == 0:  # second variable divides
        return BinaryForm(f.group, 1, (Fraction(0), one))
    # rational roots r of sum c_i u^(d-i): candidates p/q with p | c_d, q | c_0
    ints = _int_row(f.coeffs)
    lead, const = abs(ints[0]), abs(ints[-1])

    def divisors(n: int) -> List[int]:
        return [d for d in range(1, abs(n) + 1) if n % d == 0]

    seen = set()
    for p in divisors(const):
        for q in divisors(lead):
            for sign in (1, -1):
                r = Fraction(sign * p, q)
                if r in seen:
                    continue
                seen.add(r)
                if f.evaluate(r, 1) == 0:
                    # root u = r of f(u, 1): factor first - r*second
                    return BinaryForm(f.group, 1, (one, -r))
    return None


def _normalize_point(u, v) -> Tuple[Fraction, Fraction]:
    u, v = Fraction(u), Fraction(v)
    if v != 0:
        return (u / v, Fraction(1))
    return (Fraction(1), Fraction(0))


def rational_roots(f: BinaryForm) -> List[Tuple[Fraction, Fraction]]:
    """Distinct rational projective roots of a binary form, as normalized
    (first, second) coordinate pairs ((r, 1) or (1, 0))."""
    if f.is_zero:
        raise ValueError("zero form")
    roots: List[Tuple[Fraction, Fraction]] = []
    g = f.monic()
    while g.degree >= 1:
        l = g if g.degree == 1 else rational_linear_factor(g)
        if l is None:
            break
        a, b = l.coeffs  # a*first + b*second vanishes at (-b : a)
        pt = _normalize_point(-b, a)
        if pt not in roots:
            roots.append(pt)
        g = divide_by_linear(g, l)
    return roots


def squarefree_degree(f: BinaryForm) -> int:
    """Number of distinct projective roots of a nonzero binary form."""
    if f.is_zero:
        raise ValueError("zero form")
    lead, trail, core = _strip(f.coeffs)
    count = (1 if lead else 0) + (1 if trail else 0)
    if len(core) > 1:
        deriv = [c * (len(core) - 1 - i) for i, c in enumerate(core[:-1])]
        g = _poly_gcd(core, deriv)
        count += (len(core) - 1) - (len(g) - 1 if g else 0)
    return count
