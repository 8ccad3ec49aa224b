"""The multi-graded polynomial ring Q[x0,x1,y0,y1,z0,z1,t0,t1,t2,t3].

A polynomial is homogeneous in each of the four variable groups and carries
its multi-degree (d1, d2, d3; d4) explicitly, so the zero polynomial of any
degree exists and subtraction stays total.  The monomial order is global and
fixed (descending lexicographic over the 10-exponent vector): coefficient
matrices, pivots and all goldens depend on it.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .linalg import BinaryForm

VARS: Tuple[str, ...] = ("x0", "x1", "y0", "y1", "z0", "z1", "t0", "t1", "t2", "t3")
VAR_INDEX: Dict[str, int] = {v: i for i, v in enumerate(VARS)}
GROUPS: Tuple[str, ...] = ("x", "y", "z", "t")
GROUP_SLICES: Dict[str, Tuple[int, int]] = {"x": (0, 2), "y": (2, 4), "z": (4, 6), "t": (6, 10)}

Monomial = Tuple[int, ...]  # 10 exponents, VARS order


class MultiDegree(NamedTuple):
    d1: int
    d2: int
    d3: int
    d4: int = 0

    @property
    def tri(self) -> Tuple[int, int, int]:
        return (self.d1, self.d2, self.d3)

    def __add__(self, other) -> "MultiDegree":  # type: ignore[override]
        return MultiDegree(*(a + b for a, b in zip(self, other)))

    def covers(self, other: "MultiDegree") -> bool:
        """Componentwise >= comparison."""
        return all(a >= b for a, b in zip(self, other))

    @staticmethod
    def of_tri(tri: Sequence[int]) -> "MultiDegree":
        return MultiDegree(tri[0], tri[1], tri[2], 0)


E1 = (1, 0, 0)
E2 = (0, 1, 0)
E3 = (0, 0, 1)


def monomial_degree(m: Monomial) -> MultiDegree:
    return MultiDegree(m[0] + m[1], m[2] + m[3], m[4] + m[5],
                       m[6] + m[7] + m[8] + m[9])


def _compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomials_of(d: MultiDegree) -> List[Monomial]:
    """All monomials of the given multi-degree, in descending lex order."""
    d = MultiDegree(*d)
    out = [xs + ys + zs + ts
           for xs in _compositions(d.d1, 2)
           for ys in _compositions(d.d2, 2)
           for zs in _compositions(d.d3, 2)
           for ts in _compositions(d.d4, 4)]
    out.sort(reverse=True)
    return out


class DegreeError(ValueError):
    pass


class MultiPoly:
    """Immutable multi-homogeneous polynomial with exact coefficients."""

    __slots__ = ("degree", "terms", "_hash")

    def __init__(self, degree: MultiDegree, terms: Dict[Monomial, Fraction]):
        degree = MultiDegree(*degree)
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if monomial_degree(mono) != degree:
                raise DegreeError(
                    f"monomial {mono} is not of multi-degree {tuple(degree)}")
            clean[tuple(mono)] = coeff
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(degree: MultiDegree) -> "MultiPoly":
        return MultiPoly(degree, {})

    @staticmethod
    def constant(value) -> "MultiPoly":
        return MultiPoly(MultiDegree(0, 0, 0, 0), {(0,) * 10: Fraction(value)})

    @staticmethod
    def variable(name: str) -> "MultiPoly":
        idx = VAR_INDEX[name]
        mono = tuple(1 if i == idx else 0 for i in range(10))
        return MultiPoly(monomial_degree(mono), {mono: Fraction(1)})

    @staticmethod
    def monomial(mono: Monomial, coeff=1) -> "MultiPoly":
        return MultiPoly(monomial_degree(tuple(mono)), {tuple(mono): Fraction(coeff)})

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def coefficients_on(self, basis: Sequence[Monomial]) -> List[Fraction]:
        return [self.terms.get(m, Fraction(0)) for m in basis]

    def leading(self) -> Tuple[Monomial, Fraction]:
        mono = max(self.terms)
        return mono, self.terms[mono]

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiPoly)
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.degree, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"MultiPoly({format_poly(self)!r})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if self.degree != other.degree:
            raise DegreeError(f"degree mismatch: {self.degree} vs {other.degree}")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return MultiPoly(self.degree, terms)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.degree, {m: -c for m, c in self.terms.items()})

    def scale(self, factor) -> "MultiPoly":
        factor = Fraction(factor)
        if factor == 0:
            return MultiPoly.zero(self.degree)
        return MultiPoly(self.degree, {m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        degree = self.degree + other.degree
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return MultiPoly(degree, terms)

    def pow(self, n: int) -> "MultiPoly":
        out = MultiPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    # -- structural operations ---------------------------------------------

    def coeff_of_var(self, var: str, power: int) -> "MultiPoly":
        """Coefficient of var^power, with that variable's exponent removed.

        The sibling variable of the group keeps its exponent, so the result
        is multi-homogeneous of the reduced group degree only when the input
        group degree equals power plus the sibling's (uniform) exponent; this
        holds for the bilinear splits used throughout.
        """
        idx = VAR_INDEX[var]
        terms: Dict[Monomial, Fraction] = {}
        degree: Optional[MultiDegree] = None
        for mono, c in self.terms.items():
            if mono[idx] != power:
                continue
            m = list(mono)
            m[idx] = 0
            m = tuple(m)
            terms[m] = c
            degree = monomial_degree(m)
        if degree is None:
            group = next(g for g, (a, b) in GROUP_SLICES.items() if a <= idx < b)
            gi = GROUPS.index(group)
            deg = list(self.degree)
            deg[gi] -= power
            degree = MultiDegree(*deg)
        return MultiPoly(degree, terms)

    def derivative(self, var: str) -> "MultiPoly":
        idx = VAR_INDEX[var]
        group = next(g for g, (a, b) in GROUP_SLICES.items() if a <= idx < b)
        deg = list(self.degree)
        deg[GROUPS.index(group)] -= 1
        if deg[GROUPS.index(group)] < 0:
            raise DegreeError("derivative of a degree-0 group")
        terms: Dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            if mono[idx] == 0:
                continue
            m = list(mono)
            m[idx] -= 1
            terms[tuple(m)] = terms.get(tuple(m), Fraction(0)) + c * mono[idx]
        return MultiPoly(MultiDegree(*deg), terms)

    def substitute_t(self, entries: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace t_i by entries[i] (the Rees substitution), fully expanded."""
        if len(entries) != 4:
            raise ValueError("need four substitution polynomials")
        d = self.degree
        edeg = entries[0].degree
        target = MultiDegree(d.d1 + d.d4 * edeg.d1, d.d2 + d.d4 * edeg.d2,
                             d.d3 + d.d4 * edeg.d3, 0)
        out = MultiPoly.zero(target)
        for mono, c in self.terms.items():
            base = list(mono)
            texp = base[6:10]
            base[6:10] = [0, 0, 0, 0]
            term = MultiPoly.monomial(tuple(base), c)
            for i, e in enumerate(texp):
                if e:
                    term = term * entries[i].pow(e)
            out = out + term
        return out

    def eval_groups(self, point: Dict[str, Sequence]) -> "MultiPoly":
        """Partial evaluation at projective representatives for some groups.

        ``point`` maps a group name to its coordinate values (length 2 for
        x/y/z, length 4 for t); remaining groups keep their grading.
        """
        for g, vals in point.items():
            lo, hi = GROUP_SLICES[g]
            if len(vals) != hi - lo:
                raise ValueError(f"group {g} needs {hi - lo} values")
            if all(Fraction(v) == 0 for v in vals):
                raise ValueError(f"all-zero representative for group {g}")
        deg = list(self.degree)
        for g in point:
            deg[GROUPS.index(g)] = 0
        degree = MultiDegree(*deg)
        terms: Dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            value = Fraction(c)
            m = list(mono)
            for g, vals in point.items():
                lo, hi = GROUP_SLICES[g]
                for i in range(lo, hi):
                    e = m[i]
                    if e:
                        v = Fraction(vals[i - lo])
                        if v == 0:
                            value = Fraction(0)
                            break
                        value *= v ** e
                    m[i] = 0
                if value == 0:
                    break
            if value == 0:
                continue
            key = tuple(m)
            terms[key] = terms.get(key, Fraction(0)) + value
        return MultiPoly(degree, terms)

    def apply_group_matrix(self, group: str, matrix: Sequence[Sequence]) -> "MultiPoly":
        """Substitute (u0, u1) <- (m00*u0 + m01*u1, m10*u0 + m11*u1) in one group."""
        lo, _ = GROUP_SLICES[group]
        if group == "t":
            raise ValueError("only the x/y/z groups admit 2x2 changes")
        u0 = MultiPoly.variable(VARS[lo])
        u1 = MultiPoly.variable(VARS[lo + 1])
        new0 = u0.scale(matrix[0][0]) + u1.scale(matrix[0][1])
        new1 = u0.scale(matrix[1][0]) + u1.scale(matrix[1][1])
        out = MultiPoly.zero(self.degree)
        for mono, c in self.terms.items():
            m = list(mono)
            e0, e1 = m[lo], m[lo + 1]
            m[lo] = m[lo + 1] = 0
            term = MultiPoly.monomial(tuple(m), c) * new0.pow(e0) * new1.pow(e1)
            out = out + term
        return out

    def permute_factors(self, perm: Sequence[int]) -> "MultiPoly":
        """Relabel the x/y/z groups: group j of the result takes the
        exponents of group perm[j] of the input."""
        deg = list(self.degree)
        new_deg = MultiDegree(deg[perm[0]], deg[perm[1]], deg[perm[2]], deg[3])
        terms: Dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            m = list(mono)
            for j in range(3):
                src = perm[j]
                m[2 * j], m[2 * j + 1] = mono[2 * src], mono[2 * src + 1]
            terms[tuple(m)] = c
        return MultiPoly(new_deg, terms)

    def as_binary_form(self, group: str) -> BinaryForm:
        """Convert a single-group polynomial (t-degree 0) to a BinaryForm."""
        gi = GROUPS.index(group)
        for j, g in enumerate(GROUPS):
            if j != gi and self.degree[j] != 0:
                raise DegreeError("polynomial involves more than one group")
        d = self.degree[gi]
        lo, _ = GROUP_SLICES[group]
        coeffs = [Fraction(0)] * (d + 1)
        for mono, c in self.terms.items():
            coeffs[mono[lo + 1]] = c  # index by power of the second variable
        return BinaryForm(group, d, tuple(coeffs))

    @staticmethod
    def from_binary_form(f: BinaryForm) -> "MultiPoly":
        lo, _ = GROUP_SLICES[f.group]
        gi = GROUPS.index(f.group)
        deg = [0, 0, 0, 0]
        deg[gi] = f.degree
        terms: Dict[Monomial, Fraction] = {}
        for i, c in enumerate(f.coeffs):
            if c == 0:
                continue
            m = [0] * 10
            m[lo] = f.degree - i
            m[lo + 1] = i
            terms[tuple(m)] = c
        return MultiPoly(MultiDegree(*deg), terms)


# ---------------------------------------------------------------------------
# Text syntax:  -2/3*x0*y1*z1 + x1*y0*z0, with ^ for powers
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*([+-]|\d+/\d+|\d+|[xyzt][0-3]|\*|\^)")


class PolyParseError(ValueError):
    pass


def parse_poly(text: str, degree: Optional[MultiDegree] = None) -> MultiPoly:
    """Parse the CLI polynomial syntax into a MultiPoly.

    The multi-degree is inferred from the first term unless given; every
    term must match it.
    """
    pos = 0
    tokens: List[str] = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PolyParseError(f"unexpected input at position {pos}: {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise PolyParseError("empty polynomial")

    terms: List[Tuple[Fraction, Monomial]] = []
    i = 0
    while i < len(tokens):
        sign = Fraction(1)
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            raise PolyParseError("dangling sign")
        coeff = sign
        expo = [0] * 10
        expect_factor = True
        while i < len(tokens):
            tok = tokens[i]
            if tok in "+-":
                break
            if tok == "*":
                if expect_factor:
                    raise PolyParseError("misplaced '*'")
                expect_factor = True
                i += 1
                continue
            if not expect_factor:
                raise PolyParseError(f"missing '*' before {tok!r}")
            if tok in VAR_INDEX:
                power = 1
                if i + 1 < len(tokens) and tokens[i + 1] == "^":
                    if i + 2 >= len(tokens) or not tokens[i + 2].isdigit():
                        raise PolyParseError("malformed exponent")
                    power = int(tokens[i + 2])
                    i += 2
                expo[VAR_INDEX[tok]] += power
            elif "/" in tok:
                num, den = tok.split("/")
                coeff *= Fraction(int(num), int(den))
            elif tok.isdigit():
                coeff *= int(tok)
            else:
                raise PolyParseError(f"unexpected token {tok!r}")
            expect_factor = False
            i += 1
        if expect_factor:
            raise PolyParseError("empty term")
        terms.append((coeff, tuple(expo)))

    if degree is None:
        degree = monomial_degree(terms[0][1])
    acc: Dict[Monomial, Fraction] = {}
    for coeff, mono in terms:
        if monomial_degree(mono) != degree:
            raise PolyParseError(
                f"term {mono} breaks multi-homogeneity (expected {tuple(degree)})")
        acc[mono] = acc.get(mono, Fraction(0)) + coeff
    return MultiPoly(degree, acc)


def format_poly(p: MultiPoly) -> str:
    if p.is_zero:
        return "0"
    parts: List[str] = []
    for mono in sorted(p.terms, reverse=True):
        c = p.terms[mono]
        factors = []
        for idx, e in enumerate(mono):
            if e == 1:
                factors.append(VARS[idx])
            elif e > 1:
                factors.append(f"{VARS[idx]}^{e}")
        body = "*".join(factors) if factors else None
        mag = abs(c)
        if body is None:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not parts:
            parts.append(text if c > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Graded dimension counts
# ---------------------------------------------------------------------------


def _span_rows(generators: Sequence[MultiPoly], d: MultiDegree,
               basis: Sequence[Monomial]) -> List[List[Fraction]]:
    rows = []
    for g in generators:
        if g.is_zero or not d.covers(g.degree):
            continue
        shift = MultiDegree(*(a - b for a, b in zip(d, g.degree)))
        for mono in monomials_of(shift):
            prod = MultiPoly.monomial(mono) * g
            rows.append(prod.coefficients_on(basis))
    return rows


def ideal_span(generators: Sequence[MultiPoly], d: MultiDegree) -> "Echelon":
    """Echelon form of the degree-d slice of the ideal the generators span."""
    from .linalg import Echelon
    d = MultiDegree(*d)
    basis = monomials_of(d)
    ech = Echelon()
    ech.add_all(_span_rows(generators, d, basis))
    return ech


def ideal_graded_dim(generators: Sequence[MultiPoly], d: MultiDegree) -> int:
    """Dimension of the degree-d slice of the ideal generated by the inputs."""
    return ideal_span(generators, MultiDegree(*d)).rank


def colon_graded_dim(generators: Sequence[MultiPoly], d: MultiDegree, k: int) -> int:
    """Dimension of {g in R_d : g * N^k slice (k,k,k) inside the ideal span},
    N being the irrelevant ideal (x0,x1) ∩ (y0,y1) ∩ (z0,z1).

    With k = 0 this is ideal_graded_dim; depth is capped at 2.
    """
    if k not in (0, 1, 2):
        raise ValueError("saturation depth must be 0, 1 or 2")
    d = MultiDegree(*d)
    if k == 0:
        return ideal_graded_dim(generators, d)
    e = MultiDegree(k, k, k, 0)
    big = d + e
    big_basis = monomials_of(big)
    big_index = {m: i for i, m in enumerate(big_basis)}
    span = ideal_span(generators, big)
    annihilator = span.nullspace(len(big_basis))
    d_basis = monomials_of(d)
    mult = monomials_of(e)  # (N^k) in degree (k,k,k) is all of R_(k,k,k)
    # g = sum u_j * d_basis[j] lies in the colon iff g*m is in the span for
    # every multiplier m, i.e. iff (shift-by-m of g) kills the annihilator
    from .linalg import Echelon
    cond = Echelon()
    for a in annihilator:
        for mp in mult:
            row = [a[big_index[tuple(x + y for x, y in zip(mono, mp))]]
                   for mono in d_basis]
            cond.add(row)
    return len(d_basis) - cond.rank
