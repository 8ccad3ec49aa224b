"""Inverse maps of birational tri-linear maps.

Each inverse component is a pair of t-forms (a0, a1) of minimal degree r
such that w0*a1 - w1*a0 vanishes after substituting the entries for the
t-variables, where (w0, w1) is the coordinate pair of the axis.  Composing
back through the map must produce x_i * s etc. with a common nonzero
cofactor, which is checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .linalg import nullspace
from .maps import TriLinearMap
from .ring import (GROUP_SLICES, VARS, MultiDegree, MultiPoly, monomials_of)

AXES = ("x", "y", "z")


class InverseError(RuntimeError):
    """Internal inconsistency: a decided-birational map with no passing
    inverse certificate."""


@dataclass(frozen=True)
class InverseMap:
    components: Tuple[Tuple[MultiPoly, MultiPoly], ...]  # one pair per axis
    phi_type: Tuple[int, int, int]


@dataclass
class CompositionCertificate:
    cofactors: Dict[str, Optional[MultiPoly]]
    checks: Dict[str, bool]

    @property
    def all_true(self) -> bool:
        return all(self.checks.get(a, False) for a in AXES)


def _divide_by_variable(p: MultiPoly, var: str) -> Optional[MultiPoly]:
    idx = VARS.index(var)
    group = "xyz"[idx // 2] if idx < 6 else "t"
    terms = {}
    for mono, c in p.terms.items():
        if mono[idx] == 0:
            return None
        m = list(mono)
        m[idx] -= 1
        terms[tuple(m)] = c
    deg = list(p.degree)
    gi = {"x": 0, "y": 1, "z": 2, "t": 3}[group]
    deg[gi] -= 1
    return MultiPoly(MultiDegree(*deg), terms)


def _t_form(vec, basis, degree) -> MultiPoly:
    terms = {}
    for mono, c in zip(basis, vec):
        if c:
            terms[mono] = c
    return MultiPoly(degree, terms)


def jdc_slice(phi: TriLinearMap, axis: str, r: int) -> List[Tuple[MultiPoly, MultiPoly]]:
    """All canonical solutions (a0, a1) of t-degree r for one axis."""
    if axis not in AXES:
        raise ValueError(f"unknown axis {axis!r}")
    if r not in (1, 2):
        raise ValueError("component degree must be 1 or 2")
    lo, _ = GROUP_SLICES[axis]
    w0 = MultiPoly.variable(VARS[lo])
    w1 = MultiPoly.variable(VARS[lo + 1])
    tdeg = MultiDegree(0, 0, 0, r)
    basis = monomials_of(tdeg)
    n = len(basis)
    target = None
    columns = []
    # unknowns: coefficients of a0 then a1; relation w0*a1 - w1*a0
    for which, w, sign in ((0, w1, -1), (1, w0, 1)):
        for mono in basis:
            g = (w * MultiPoly.monomial(mono)).substitute_t(phi.entries)
            g = g.scale(sign)
            if target is None:
                target = monomials_of(g.degree)
            columns.append(g.coefficients_on(target))
    matrix = [[columns[c][row] for c in range(2 * n)]
              for row in range(len(target))]
    kernel = nullspace(matrix, 2 * n)
    out = []
    for vec in kernel:
        a0 = _t_form(vec[:n], basis, tdeg)
        a1 = _t_form(vec[n:], basis, tdeg)
        if a0.is_zero and a1.is_zero:
            continue
        out.append(_normalize_pair(a0, a1))
    return out


def _normalize_pair(a0: MultiPoly, a1: MultiPoly):
    lead = a0 if not a0.is_zero else a1
    c = lead.leading()[1]
    return (a0.scale(1 / c), a1.scale(1 / c))


def jdc_component(phi: TriLinearMap, axis: str, r: int):
    """First canonical solution for the axis at degree r, or None."""
    sols = jdc_slice(phi, axis, r)
    return sols[0] if sols else None


def _check_axis(phi: TriLinearMap, axis: str, pair) -> Optional[MultiPoly]:
    """Cofactor s with a0(f) = w0*s and a1(f) = w1*s, or None."""
    lo, _ = GROUP_SLICES[axis]
    a0, a1 = pair
    im0 = a0.substitute_t(phi.entries)
    im1 = a1.substitute_t(phi.entries)
    q0 = _divide_by_variable(im0, VARS[lo]) if not im0.is_zero else None
    q1 = _divide_by_variable(im1, VARS[lo + 1]) if not im1.is_zero else None
    if q0 is None or q1 is None or q0.is_zero or q0 != q1:
        return None
    return q0


def verify_inverse(phi: TriLinearMap, psi: InverseMap) -> CompositionCertificate:
    cofactors: Dict[str, Optional[MultiPoly]] = {}
    checks: Dict[str, bool] = {}
    for axis, pair in zip(AXES, psi.components):
        s = _check_axis(phi, axis, pair)
        cofactors[axis] = s
        checks[axis] = s is not None
    return CompositionCertificate(cofactors, checks)


def invert(phi: TriLinearMap) -> Tuple[InverseMap, CompositionCertificate]:
    """Minimal-degree inverse components with a passing certificate.

    The caller is expected to have decided birationality; a missing
    certificate here signals an internal inconsistency.
    """
    components = []
    degrees = []
    for axis in AXES:
        chosen = None
        for r in (1, 2):
            for pair in jdc_slice(phi, axis, r):
                if _check_axis(phi, axis, pair) is not None:
                    chosen = (pair, r)
                    break
            if chosen:
                break
        if chosen is None:
            raise InverseError(
                f"no certified inverse component for axis {axis} at degree <= 2")
        components.append(chosen[0])
        degrees.append(chosen[1])
    psi = InverseMap(tuple(components), tuple(degrees))
    cert = verify_inverse(phi, psi)
    if not cert.all_true:
        raise InverseError("composition certificate failed")
    return psi, cert
