"""Birationality decision for tri-linear maps from first syzygies.

The verdict follows from the syzygy slices at the unit tri-degrees and the
pair tri-degrees, plus a splitting condition on three determinant
polynomials in the type-(2,2,2) case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .linalg import (BinaryForm, divide_by_linear, gcd_binary_forms,
                     rational_linear_factor)
from .maps import MapValidationError, TriLinearMap, common_factor
from .ring import GROUP_SLICES, VARS, MultiPoly, monomials_of
from .syzygy import TriDegree, new_syzygy_count, syzygy_space

E1: TriDegree = (1, 0, 0)
E2: TriDegree = (0, 1, 0)
E3: TriDegree = (0, 0, 1)
UNITS = (E1, E2, E3)
PAIRS: Dict[str, TriDegree] = {
    "xy": (1, 1, 0),
    "yz": (0, 1, 1),
    "zx": (1, 0, 1),
}
# the group carrying the determinant, and the group split away from it
_PAIR_GROUPS = {"xy": ("x", "y"), "yz": ("y", "z"), "zx": ("z", "x")}

BIRATIONAL = "birational"
NOT_BIRATIONAL = "not_birational"
NOT_DOMINANT_SUSPECTED = "not_dominant_suspected"


class UPolyPreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class UPoly:
    """Determinant of a pair of independent syzygies at a pair tri-degree.

    ``poly`` is quadratic in ``group`` and quadratic in t.  ``gcd_form`` is
    the gcd of its t-coefficient binary quadratics: positive degree means a
    linear factor exists over the complex numbers.  ``linear_factor`` holds
    a rational witness when one exists.
    """

    pair: str
    poly: MultiPoly
    gcd_form: BinaryForm
    linear_factor: Optional[BinaryForm]

    @property
    def group(self) -> str:
        return _PAIR_GROUPS[self.pair][0]

    @property
    def has_linear_factor(self) -> bool:
        return self.gcd_form.degree >= 1


@dataclass
class BirReport:
    verdict: str
    phi_type: Optional[Tuple[int, int, int]]
    branch: Optional[int]
    unit_dims: Tuple[int, int, int]
    pair_dims: Dict[str, int]
    u_polys: Optional[Tuple[UPoly, UPoly, UPoly]] = None
    diagnostics: List[str] = field(default_factory=list)

    @property
    def is_birational(self) -> bool:
        return self.verdict == BIRATIONAL


def _syzygy_as_rees_element(tup, degree) -> MultiPoly:
    """Turn a coefficient 4-tuple into the element sum a_i t_i."""
    out = None
    for i, a in enumerate(tup):
        t = MultiPoly.variable(f"t{i}")
        term = a * t
        out = term if out is None else out + term
    return out


def u_polynomial(phi: TriLinearMap, pair: str) -> UPoly:
    """The 2x2 determinant of the two canonical pair-degree syzygies.

    Writing each syzygy S = w0*A + w1*B along the split group's variables,
    the determinant A1*B2 - A2*B1 is quadratic in the remaining group and
    in t.  A common root of its t-coefficient quadratics (gcd of positive
    degree) is exactly a linear factor over the complex numbers.
    """
    if pair not in PAIRS:
        raise ValueError(f"unknown pair {pair!r}")
    for unit in UNITS:
        if syzygy_space(phi, unit).dimension != 0:
            raise UPolyPreconditionError(
                f"syzygy present at unit tri-degree {unit}")
    basis = syzygy_space(phi, PAIRS[pair])
    if basis.dimension != 2:
        raise UPolyPreconditionError(
            f"pair tri-degree {PAIRS[pair]} has syzygy dimension "
            f"{basis.dimension}, expected 2")
    keep, split = _PAIR_GROUPS[pair]
    lo, _ = GROUP_SLICES[split]
    w0, w1 = VARS[lo], VARS[lo + 1]
    halves = []
    for tup in basis.elements:
        s = _syzygy_as_rees_element(tup, basis.coeff_degree)
        halves.append((s.coeff_of_var(w0, 1), s.coeff_of_var(w1, 1)))
    (a1, b1), (a2, b2) = halves
    poly = a1 * b2 - a2 * b1
    if poly.is_zero:
        raise UPolyPreconditionError(
            "pair syzygies are dependent after the split")
    # binary quadratics in the kept group, one per t-monomial
    quadratics = []
    for tm in monomials_of(poly.degree._replace(d1=0, d2=0, d3=0)):
        coeffs = {}
        for mono, c in poly.terms.items():
            if mono[6:] == tm[6:]:
                reduced = mono[:6] + (0, 0, 0, 0)
                coeffs[reduced] = c
        if coeffs:
            q = MultiPoly(poly.degree._replace(d4=0), coeffs)
            quadratics.append(q.as_binary_form(keep))
    gcd = gcd_binary_forms(quadratics)
    factor = None
    if gcd.degree == 1:
        factor = gcd
    elif gcd.degree >= 2:
        factor = rational_linear_factor(gcd)
    return UPoly(pair, poly, gcd, factor)


def condition_222(phi: TriLinearMap):
    """True when at least two of the three u-polynomials carry a linear
    factor in their own group (over the complex numbers)."""
    us = tuple(u_polynomial(phi, pair) for pair in ("xy", "yz", "zx"))
    count = sum(1 for u in us if u.has_linear_factor)
    return count >= 2, us


def decide(phi: TriLinearMap) -> BirReport:
    """Verdict and type from the graded syzygy pattern."""
    unit_dims = tuple(syzygy_space(phi, d).dimension for d in UNITS)
    pair_dims = {p: syzygy_space(phi, d).dimension for p, d in PAIRS.items()}
    report = BirReport(NOT_BIRATIONAL, None, None, unit_dims, pair_dims)

    over = [d for d, n in zip(UNITS, unit_dims) if n > 1]
    if over:
        report.diagnostics.append(
            f"syzygy dimension above 1 at unit tri-degrees {over}")
        return report

    present = [i for i, n in enumerate(unit_dims) if n == 1]
    if len(present) == 3:
        report.verdict = BIRATIONAL
        report.branch = 1
        report.phi_type = (1, 1, 1)
        return report
    if len(present) == 2:
        missing = ({0, 1, 2} - set(present)).pop()
        t = [1, 1, 1]
        t[missing] = 2
        report.verdict = BIRATIONAL
        report.branch = 2
        report.phi_type = tuple(t)
        return report
    if len(present) == 1:
        i = present[0]
        fresh = False
        for j in range(3):
            if j == i:
                continue
            d = tuple(1 if k in (i, j) else 0 for k in range(3))
            if new_syzygy_count(phi, d) >= 1:
                fresh = True
        if fresh:
            t = [2, 2, 2]
            t[i] = 1
            report.verdict = BIRATIONAL
            report.branch = 3
            report.phi_type = tuple(t)
        else:
            report.branch = 3
            report.diagnostics.append(
                "single unit syzygy without an independent pair-degree syzygy")
        return report

    # no unit syzygies: the only remaining birational shape is (2,2,2)
    report.branch = 4
    bad = {p: n for p, n in pair_dims.items() if n != 2}
    if bad:
        report.diagnostics.append(
            f"pair tri-degree syzygy dimensions {bad} (need exactly 2 each)")
        return report
    ok, us = condition_222(phi)
    report.u_polys = us
    if ok:
        report.verdict = BIRATIONAL
        report.phi_type = (2, 2, 2)
    else:
        report.diagnostics.append(
            "fewer than two u-polynomials have a linear factor")
    return report
