"""Graded first-syzygy spaces of a map's entries.

A syzygy of tri-degree d is a 4-tuple (a0,..,a3) of (d;0)-forms with
sum a_i f_i = 0.  Bases are canonical (RREF free-variable convention over
the fixed monomial order), so everything downstream is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

from .linalg import Echelon, nullspace
from .maps import TriLinearMap
from .ring import MultiDegree, MultiPoly, monomials_of

TriDegree = Tuple[int, int, int]

BOX_LIMIT = (2, 2, 2)  # syzygy slices beyond this are never consulted


@dataclass(frozen=True)
class SyzygyBasis:
    coeff_degree: MultiDegree
    elements: Tuple[Tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly], ...]

    @property
    def dimension(self) -> int:
        return len(self.elements)


def _check_box(d: TriDegree) -> MultiDegree:
    if len(d) != 3 or any(a < 0 for a in d):
        raise ValueError(f"not a tri-degree: {d}")
    if any(a > b for a, b in zip(d, BOX_LIMIT)):
        raise ValueError(f"tri-degree {d} outside the supported box {BOX_LIMIT}")
    return MultiDegree(d[0], d[1], d[2], 0)


@lru_cache(maxsize=4096)
def syzygy_space(phi: TriLinearMap, d: TriDegree) -> SyzygyBasis:
    """Canonical basis of the first syzygies of tri-degree d."""
    deg = _check_box(d)
    coeff_basis = monomials_of(deg)
    target = deg + MultiDegree(1, 1, 1, 0)
    target_basis = monomials_of(target)
    ncols = 4 * len(coeff_basis)
    # column (i * len(coeff_basis) + j) is the unknown coefficient of
    # coeff_basis[j] in a_i; rows are the coefficients of sum a_i f_i
    columns = []
    for f in phi.entries:
        for mono in coeff_basis:
            prod = MultiPoly.monomial(mono) * f
            columns.append(prod.coefficients_on(target_basis))
    matrix = [[columns[c][r] for c in range(ncols)]
              for r in range(len(target_basis))]
    kernel = nullspace(matrix, ncols)
    elements = []
    for vec in kernel:
        tup = []
        for i in range(4):
            terms = {}
            for j, mono in enumerate(coeff_basis):
                c = vec[i * len(coeff_basis) + j]
                if c:
                    terms[mono] = c
            tup.append(MultiPoly(deg, terms))
        elements.append(tuple(tup))
    return SyzygyBasis(deg, tuple(elements))


def syzygy_vectors(phi: TriLinearMap, d: TriDegree) -> List[List]:
    """Syzygies of tri-degree d as flat coefficient vectors."""
    basis = syzygy_space(phi, d)
    coeff_basis = monomials_of(basis.coeff_degree)
    out = []
    for tup in basis.elements:
        vec = []
        for a in tup:
            vec.extend(a.coefficients_on(coeff_basis))
        out.append(vec)
    return out


@lru_cache(maxsize=4096)
def new_syzygy_count(phi: TriLinearMap, d: TriDegree) -> int:
    """Minimal first-syzygy generators in tri-degree d: the dimension of
    Syz(d) beyond monomial multiples of all strictly lower slices."""
    deg = _check_box(d)
    total = syzygy_space(phi, d).dimension
    if total == 0:
        return 0
    coeff_basis = monomials_of(deg)
    old = Echelon()
    for d1 in range(d[0] + 1):
        for d2 in range(d[1] + 1):
            for d3 in range(d[2] + 1):
                low = (d1, d2, d3)
                if low == d:
                    continue
                lower = syzygy_space(phi, low)
                if not lower.elements:
                    continue
                shift = MultiDegree(d[0] - d1, d[1] - d2, d[2] - d3, 0)
                for mono in monomials_of(shift):
                    m = MultiPoly.monomial(mono)
                    for tup in lower.elements:
                        vec = []
                        for a in tup:
                            vec.extend((m * a).coefficients_on(coeff_basis))
                        old.add(vec)
    return total - old.rank


@dataclass(frozen=True)
class BettiFingerprint:
    """Exact right-action invariants of a map, tabulated over a box.

    new_counts covers the syzygy box (at most (2,2,2)), hilbert the full
    requested box, and sat_hilbert the colon dimensions at saturation
    depths 1 and 2 over the box clipped to (2,2,2).
    """

    box: TriDegree
    new_counts: Tuple[Tuple[TriDegree, int], ...]
    hilbert: Tuple[Tuple[TriDegree, int], ...]
    sat_hilbert: Tuple[Tuple[int, Tuple[Tuple[TriDegree, int], ...]], ...]

    def new_counts_map(self) -> Dict[TriDegree, int]:
        return dict(self.new_counts)

    def nonzero_new_counts(self) -> Dict[TriDegree, int]:
        return {d: c for d, c in self.new_counts if c}


def _degrees_below(box: TriDegree):
    for d1 in range(box[0] + 1):
        for d2 in range(box[1] + 1):
            for d3 in range(box[2] + 1):
                yield (d1, d2, d3)


def betti_fingerprint(phi: TriLinearMap, box: TriDegree = (2, 2, 2),
                      sat_depths: Tuple[int, ...] = (1, 2)) -> BettiFingerprint:
    if any(a > 3 for a in box) or any(a < 0 for a in box):
        raise ValueError(f"box {box} outside (3,3,3)")
    from .ring import colon_graded_dim, ideal_graded_dim
    syz_box = tuple(min(a, b) for a, b in zip(box, BOX_LIMIT))
    new_counts = tuple((d, new_syzygy_count(phi, d))
                       for d in _degrees_below(syz_box))
    gens = list(phi.entries)
    hilbert = tuple(
        (d, ideal_graded_dim(gens, MultiDegree(*d, 0)))
        for d in _degrees_below(box))
    sat = []
    for k in sat_depths:
        table = tuple(
            (d, colon_graded_dim(gens, MultiDegree(*d, 0), k))
            for d in _degrees_below(syz_box))
        sat.append((k, table))
    return BettiFingerprint(tuple(box), new_counts, hilbert, tuple(sat))
