"""Tri-linear maps (P1)^3 -> P3 and their construction-time screening.

A valid map is an ordered 4-tuple of (1,1,1;0)-forms that are linearly
independent and share no factor.  Both conditions are checked exactly at
construction; the common-factor screen returns a witness when it fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .linalg import BinaryForm, gcd_binary_forms, rank
from .ring import (GROUPS, GROUP_SLICES, VARS, MultiDegree, MultiPoly,
                   monomials_of)

TRILINEAR = MultiDegree(1, 1, 1, 0)

# tri-degree of the candidate factor per screening case
_PAIR_DEGREES = {
    ("x", "y"): MultiDegree(1, 1, 0, 0),
    ("x", "z"): MultiDegree(1, 0, 1, 0),
    ("y", "z"): MultiDegree(0, 1, 1, 0),
}


class MapValidationError(ValueError):
    """Raised when four entries do not form a valid tri-linear map."""

    def __init__(self, reason: str, witness: Optional[MultiPoly] = None):
        super().__init__(reason)
        self.reason = reason
        self.witness = witness


def entry_matrix(entries: Sequence[MultiPoly]) -> List[List[Fraction]]:
    basis = monomials_of(TRILINEAR)
    return [e.coefficients_on(basis) for e in entries]


def common_factor(entries: Sequence[MultiPoly]):
    """Common factor of four (1,1,1;0)-forms, or None.

    Checks, in order: a full (1,1,1) factor (coefficient rank 1), a
    bilinear factor over each pair of groups (slice span of dimension <= 1),
    and a linear factor in each single group (gcd of the 16 coefficient
    forms).  Returns (tri_degree, witness_factor) for the first hit.
    """
    entries = list(entries)
    if all(e.is_zero for e in entries):
        raise MapValidationError("all four entries are zero")

    # (c): every entry a scalar multiple of one tri-linear form
    if rank(entry_matrix(entries)) == 1:
        witness = next(e for e in entries if not e.is_zero)
        lead_c = witness.leading()[1]
        return TRILINEAR, witness.scale(1 / lead_c)

    # (b): factor of tri-degree over a pair of groups; split along the third
    for pair, pair_deg in _PAIR_DEGREES.items():
        third = next(g for g in GROUPS[:3] if g not in pair)
        lo, _ = GROUP_SLICES[third]
        slices = []
        for e in entries:
            for var in (VARS[lo], VARS[lo + 1]):
                slices.append(e.coeff_of_var(var, 1))
        basis = monomials_of(pair_deg)
        mat = [s.coefficients_on(basis) for s in slices]
        if rank(mat) <= 1:
            witness = next(s for s in slices if not s.is_zero)
            lead_c = witness.leading()[1]
            return pair_deg, witness.scale(1 / lead_c)

    # (a): linear factor in a single group; gcd of all coefficient forms
    for gi, g in enumerate(GROUPS[:3]):
        lo, _ = GROUP_SLICES[g]
        deg_rest = MultiDegree(*(0 if j == gi else TRILINEAR[j] for j in range(4)))
        others = monomials_of(deg_rest)
        forms = []
        for e in entries:
            for mono in others:
                c0 = e.coeff(tuple(a + b for a, b in zip(
                    mono, _unit_mono(lo))))
                c1 = e.coeff(tuple(a + b for a, b in zip(
                    mono, _unit_mono(lo + 1))))
                forms.append(BinaryForm(g, 1, (c0, c1)))
        nz = [f for f in forms if not f.is_zero]
        if not nz:
            continue
        gcd = gcd_binary_forms(nz)
        if gcd.degree >= 1:
            return (MultiDegree(*(1 if j == gi else 0 for j in range(3)), 0),
                    MultiPoly.from_binary_form(gcd))
    return None


def _unit_mono(idx: int) -> Tuple[int, ...]:
    return tuple(1 if i == idx else 0 for i in range(10))


@dataclass(frozen=True)
class TriLinearMap:
    """Four independent (1,1,1;0)-forms without a common factor."""

    entries: Tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]

    def __post_init__(self):
        entries = tuple(self.entries)
        if len(entries) != 4:
            raise MapValidationError("expected exactly four entries")
        for e in entries:
            if e.degree != TRILINEAR:
                raise MapValidationError(
                    f"entry of multi-degree {tuple(e.degree)} is not tri-linear")
        object.__setattr__(self, "entries", entries)
        if rank(entry_matrix(entries)) != 4:
            raise MapValidationError("entries are linearly dependent")
        hit = common_factor(entries)
        if hit is not None:
            deg, witness = hit
            raise MapValidationError(
                f"entries share a factor of tri-degree {deg.tri}",
                witness=witness)

    def evaluate(self, x: Sequence, y: Sequence, z: Sequence) -> List[Fraction]:
        """Image of a point, as four rationals (possibly all zero on the
        base locus)."""
        point = {"x": x, "y": y, "z": z}
        out = []
        for e in self.entries:
            v = e.eval_groups(point)
            out.append(v.coeff((0,) * 10))
        return out

    def left_compose(self, matrix: Sequence[Sequence]) -> "TriLinearMap":
        """Apply an invertible 4x4 matrix to the entry tuple."""
        new = []
        for row in matrix:
            acc = MultiPoly.zero(TRILINEAR)
            for c, e in zip(row, self.entries):
                acc = acc + e.scale(c)
            new.append(acc)
        return TriLinearMap(tuple(new))

    def right_compose(self, matrices=None, permutation=None) -> "TriLinearMap":
        """Precompose with an automorphism of (P1)^3.

        ``matrices`` is a triple of 2x2 matrices acting on the x/y/z pairs,
        ``permutation`` a factor relabeling applied after the matrices.
        """
        entries = self.entries
        if matrices is not None:
            out = []
            for e in entries:
                for g, m in zip(("x", "y", "z"), matrices):
                    if m is not None:
                        e = e.apply_group_matrix(g, m)
                out.append(e)
            entries = tuple(out)
        if permutation is not None:
            entries = tuple(e.permute_factors(permutation) for e in entries)
        return TriLinearMap(entries)
