"""Orbit representatives, orbit classification, and base-locus analysis.

The 19 representatives live in an embedded data file.  Classification
matches exact invariants, canonicalized under the factor permutations
compatible with the map's type: a census of coordinate lines in the base
locus (counts, complex conjugate pairs, incidences), colon dimensions of
the base ideal at the squared unit degrees, and gradient ranks at the
special points of the base locus.  The heavier graded fingerprints
(syzygy generator counts, Hilbert and colon slice tables) back the
build-time injectivity audit.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import (BinaryForm, Echelon, _normalize_point, gcd_binary_forms,
                     rational_roots, squarefree_degree)
from .maps import TriLinearMap
from .ring import (GROUPS, GROUP_SLICES, VARS, MultiDegree, MultiPoly,
                   ideal_span, monomials_of, parse_poly)
from .birational import decide
from .syzygy import TriDegree, new_syzygy_count

FAMILIES = ((1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2))
FAMILY_SIZES = {(1, 1, 1): 4, (1, 1, 2): 5, (1, 2, 2): 8, (2, 2, 2): 2}

PERMUTATIONS = tuple(itertools.permutations(range(3)))

ORBITS_ENV = "TRILINEAR_ORBITS"


@dataclass(frozen=True)
class OrbitId:
    family: Tuple[int, int, int]
    index: int
    permutation: Tuple[int, int, int] = (0, 1, 2)

    def label(self) -> str:
        return f"({','.join(map(str, self.family))})-{self.index}"


@dataclass(frozen=True)
class OrbitRecord:
    id: OrbitId
    map: TriLinearMap
    components: Tuple[Tuple[MultiPoly, ...], ...]
    base_locus_tridegree: Tuple[int, int, int]
    description: str

    def base_slice_dim(self, d: TriDegree) -> int:
        """Graded dimension of the displayed (intersection) ideal at d."""
        return intersection_graded_dim(self.components, MultiDegree(*d, 0))

    @property
    def entries(self):
        return self.map.entries

    @property
    def fingerprint(self):
        from .syzygy import betti_fingerprint
        return betti_fingerprint(self.map)


class ClassifyError(ValueError):
    pass


class AmbiguousMatch(ClassifyError):
    def __init__(self, candidates):
        super().__init__(
            "ambiguous among {" + ", ".join(c.label() for c in candidates) + "}")
        self.candidates = candidates


# ---------------------------------------------------------------------------
# Fixture data
# ---------------------------------------------------------------------------


def _orbits_path() -> str:
    override = os.environ.get(ORBITS_ENV)
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "orbits.txt")


def _parse_orbits(text: str) -> List[OrbitRecord]:
    records = []
    header = None
    description = ""
    entries: List[MultiPoly] = []
    components: List[Tuple[MultiPoly, ...]] = []
    current: Optional[List[MultiPoly]] = None

    def flush():
        if header is None:
            return
        family, index = header
        base_deg = tuple(2 - r for r in family)
        records.append(OrbitRecord(
            OrbitId(family, index), TriLinearMap(tuple(entries)),
            tuple(tuple(c) for c in components), base_deg, description))

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[orbit"):
            flush()
            label = line[len("[orbit"):].strip(" ]")
            fam_text, idx_text = label.rsplit("-", 1)
            family = tuple(int(v) for v in fam_text.strip("()").split(","))
            header = (family, int(idx_text))
            description = ""
            entries = []
            components = []
            current = None
        elif line.startswith("description:"):
            description = line.split(":", 1)[1].strip()
        elif line == "entries:":
            current = entries
        elif line == "component:":
            current = []
            components.append(current)
        else:
            if current is None:
                raise ValueError(f"stray line in orbit data: {raw!r}")
            current.append(parse_poly(line))
    flush()
    return records


@lru_cache(maxsize=None)
def representatives() -> Tuple[OrbitRecord, ...]:
    with open(_orbits_path(), encoding="utf-8") as fh:
        records = _parse_orbits(fh.read())
    if len(records) != 19:
        raise ValueError(f"expected 19 orbit records, found {len(records)}")
    return tuple(records)


def record(family: Tuple[int, int, int], index: int) -> OrbitRecord:
    for rec in representatives():
        if rec.id.family == tuple(family) and rec.id.index == index:
            return rec
    raise KeyError(f"no orbit ({family})-{index}")


# ---------------------------------------------------------------------------
# Graded dimensions of intersections (the displayed saturated ideals)
# ---------------------------------------------------------------------------


def intersection_graded_dim(components: Sequence[Sequence[MultiPoly]],
                            d: MultiDegree) -> int:
    """dim of the degree-d slice of an intersection of ideals, computed by
    stacking the annihilators of the component slices."""
    d = MultiDegree(*d)
    ncols = len(monomials_of(d))
    stacked = Echelon()
    for gens in components:
        span = ideal_span(list(gens), d)
        for a in span.nullspace(ncols):
            stacked.add(a)
    return ncols - stacked.rank


# ---------------------------------------------------------------------------
# Classification fingerprints
# ---------------------------------------------------------------------------


def permute_tri(d: TriDegree, perm: Sequence[int]) -> TriDegree:
    return (d[perm[0]], d[perm[1]], d[perm[2]])


def _box_degrees(box: TriDegree):
    return [(a, b, c) for a in range(box[0] + 1)
            for b in range(box[1] + 1) for c in range(box[2] + 1)]


def stage1_tables(phi: TriLinearMap) -> Dict[str, Dict[TriDegree, int]]:
    """Cheap invariants: minimal syzygy generator counts and base-ideal
    Hilbert slice dimensions over the box (2,2,2)."""
    from .ring import ideal_graded_dim
    gens = list(phi.entries)
    box = _box_degrees((2, 2, 2))
    return {
        "new": {d: new_syzygy_count(phi, d) for d in box},
        "hilbert": {d: ideal_graded_dim(gens, MultiDegree(*d, 0)) for d in box},
    }


def stage2_tables(phi: TriLinearMap) -> Dict[str, Dict[TriDegree, int]]:
    """Colon slice dimensions by the irrelevant ideal, depths 1 and 2."""
    from .ring import colon_graded_dim
    gens = list(phi.entries)
    box = _box_degrees((2, 2, 2))
    return {
        "sat1": {d: colon_graded_dim(gens, MultiDegree(*d, 0), 1) for d in box},
        "sat2": {d: colon_graded_dim(gens, MultiDegree(*d, 0), 2) for d in box},
    }


def _inverse_perm(perm) -> Tuple[int, int, int]:
    inv = [0, 0, 0]
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def _permute_tables(tables, perm):
    """Invariant tables of ``phi.permute_factors(perm)`` given those of phi.

    Relabeling moves the degree slice at d to the slice at d composed with
    the inverse permutation."""
    inv = _inverse_perm(perm)
    return {name: {d: table[permute_tri(d, inv)] for d in table}
            for name, table in tables.items()}


def _serialize(tables) -> Tuple:
    return tuple(sorted((name, tuple(sorted(table.items())))
                        for name, table in tables.items()))


def _type_permutations(phi_type: Tuple[int, int, int]):
    """Permutations sending the map's type to its sorted (family) form."""
    family = tuple(sorted(phi_type))
    return [p for p in PERMUTATIONS if permute_tri(phi_type, p) == family]


@lru_cache(maxsize=None)
def _reference_tables(family: Tuple[int, int, int], index: int, stage: int):
    rec = record(family, index)
    return stage1_tables(rec.map) if stage == 1 else stage2_tables(rec.map)


def _match_stage(phi_tables, candidates, stage: int):
    """Candidate (record, perm) pairs whose reference tables equal the
    permuted input tables."""
    out = []
    for rec, perms in candidates:
        ref = _reference_tables(rec.id.family, rec.id.index, stage)
        good = [p for p in perms
                if _serialize(_permute_tables(phi_tables, p)) == _serialize(ref)]
        if good:
            out.append((rec, good))
    return out


_SQUARE_DEGREES = ((2, 0, 0), (0, 2, 0), (0, 0, 2))


def _square_saturation(phi: TriLinearMap) -> Dict[TriDegree, int]:
    """Depth-1 colon dimensions at the three squared unit degrees; cheap
    and exactly what separates the census-tied orbit pairs."""
    from .ring import colon_graded_dim
    gens = list(phi.entries)
    return {d: colon_graded_dim(gens, MultiDegree(*d, 0), 1)
            for d in _SQUARE_DEGREES}


@lru_cache(maxsize=None)
def _ref_lines(family, index):
    return _lines_signature(record(family, index).map)


@lru_cache(maxsize=None)
def _ref_points(family, index):
    return _points_signature(record(family, index).map)


@lru_cache(maxsize=None)
def _ref_squares(family, index):
    return tuple(sorted(_square_saturation(record(family, index).map).items()))


def _filter_lines(sig, candidates):
    dirs, incidence = sig
    out = []
    for rec, perms in candidates:
        ref_dirs, ref_incidence = _ref_lines(rec.id.family, rec.id.index)
        if incidence != ref_incidence:
            continue
        good = [p for p in perms
                if tuple(dirs[p[i]] for i in range(3)) == ref_dirs]
        if good:
            out.append((rec, good))
    return out


def _filter_points(sig, candidates):
    dirs, incident = sig
    out = []
    for rec, perms in candidates:
        ref_dirs, ref_incident = _ref_points(rec.id.family, rec.id.index)
        if incident != ref_incident:
            continue
        good = [p for p in perms
                if tuple(dirs[p[i]] for i in range(3)) == ref_dirs]
        if good:
            out.append((rec, good))
    return out


def _filter_squares(table, candidates):
    out = []
    for rec, perms in candidates:
        ref = dict(_ref_squares(rec.id.family, rec.id.index))
        good = []
        for p in perms:
            permuted = _permute_tables({"s": table}, p)["s"]
            if permuted == ref:
                good.append(p)
        if good:
            out.append((rec, good))
    return out


def classify_detail(phi: TriLinearMap) -> Tuple[OrbitId, str]:
    """Orbit of a birational map plus the matching method used, with the
    factor permutation aligning the input to the stored representative.

    Discriminators are applied cheapest first: the coordinate-line census,
    then colon dimensions at the squared unit degrees, then the
    special-point gradient ranks.  The build-time audit establishes that
    together they separate all 19 orbits.
    """
    report = decide(phi)
    if not report.is_birational:
        raise ClassifyError("map is not birational")
    family = tuple(sorted(report.phi_type))
    perms = _type_permutations(report.phi_type)
    candidates = [(rec, perms) for rec in representatives()
                  if rec.id.family == family]
    candidates = _filter_lines(_lines_signature(phi), candidates)
    method = "line-census"
    if len(candidates) > 1:
        candidates = _filter_squares(_square_saturation(phi), candidates)
        method = "census+saturation"
    if len(candidates) > 1:
        candidates = _filter_points(_points_signature(phi), candidates)
        method = "census+points"
    if not candidates:
        raise ClassifyError("no orbit representative matches the invariants")
    if len(candidates) > 1:
        raise AmbiguousMatch([rec.id for rec, _ in candidates])
    rec, good_perms = candidates[0]
    return OrbitId(rec.id.family, rec.id.index, good_perms[0]), method


def classify(phi: TriLinearMap) -> OrbitId:
    return classify_detail(phi)[0]


def _lines_signature(phi: TriLinearMap) -> Tuple[Tuple, int]:
    """Per-direction (rational, complex) line counts plus the number of
    incident pairs among the rational lines; the incidence count separates
    concurrent from non-concurrent line triples."""
    sig = []
    all_lines = []
    for direction in ("x", "y", "z"):
        lines, complex_count, exact = line_census(phi, direction)
        sig.append((len(lines), complex_count))
        all_lines.extend(lines)
    incidence = 0
    for i in range(len(all_lines)):
        for j in range(i + 1, len(all_lines)):
            a, b = all_lines[i], all_lines[j]
            shared = set(a) & set(b)
            if len(shared) == 1 and all(a[g] == b[g] for g in shared):
                incidence += 1
    return tuple(sig), incidence


def _points_signature(phi: TriLinearMap) -> Tuple:
    """Local data at the distinguished rational points of the base locus.

    Per direction: the gradient ranks at the isolated special points and,
    for each rational base line, the profile of points where the Jacobian
    rank drops along the line.  A direction-independent component records
    the local invariants at intersections of rational lines.  Together
    these see the embedded structure that saturation strips from the
    special-point census."""
    per_dir = []
    lines_by_dir = {}
    for d in ("x", "y", "z"):
        lines = line_census(phi, d)[0]
        lines_by_dir[d] = lines
        profile = tuple(sorted(_line_special_points(phi, d, ln)
                               for ln in lines))
        per_dir.append((special_point_ranks(phi, d), profile))
    return tuple(per_dir), _incident_point_ranks(phi, lines_by_dir)


def _incident_point_ranks(phi: TriLinearMap, lines_by_dir) -> Tuple:
    """(gradient rank, jet dimension) at rational line intersections."""
    lines = [(d, ln) for d in ("x", "y", "z") for ln in lines_by_dir[d]]
    ranks = []
    for (da, a), (db, b) in itertools.combinations(lines, 2):
        shared = set(a) & set(b)
        if len(shared) != 1 or any(a[g] != b[g] for g in shared):
            continue
        coords = dict(a)
        coords[da] = b[da]
        point = (coords["x"], coords["y"], coords["z"])
        ranks.append((_gradient_rank(phi, point), _local_jet_dim(phi, point)))
    return tuple(sorted(ranks))


def _line_special_points(phi: TriLinearMap, direction: str, line) -> Tuple:
    """(distinct complex count, rational point data) for the special
    points of one rational base line.

    Special points are where the Jacobian rank drops below its generic
    value along the line; they carry the tangency and contact structure
    embedded on the line.  Rational ones are reported with their gradient
    rank and second-order jet dimension."""
    import sympy as sp
    from . import oracle as _oracle
    from .linalg import rank as _rank
    t0, t1 = sp.symbols("_t0 _t1")
    lo, _ = GROUP_SLICES[direction]
    subs = {_oracle._SYM[VARS[lo]]: t0, _oracle._SYM[VARS[lo + 1]]: t1}
    for g, pt in line.items():
        glo, _ = GROUP_SLICES[g]
        subs[_oracle._SYM[VARS[glo]]] = sp.Rational(pt[0])
        subs[_oracle._SYM[VARS[glo + 1]]] = sp.Rational(pt[1])
    jac = []
    for f in phi.entries:
        F = _oracle.to_sympy(f)
        jac.append([sp.expand(sp.diff(F, s).subs(subs))
                    for s in _oracle._SYMS[:6]])
    # generic rank along the line, from enough samples to beat minor degrees
    samples = [(sp.Integer(k), sp.Integer(1)) for k in range(13)]
    samples.append((sp.Integer(1), sp.Integer(0)))
    generic = 0
    for a, b in samples:
        rows = [[_oracle._to_fraction(e.subs({t0: a, t1: b})) for e in row]
                for row in jac]
        generic = max(generic, _rank(rows))
    if generic == 0:
        return (-1, ())
    common = sp.Integer(0)
    for rows_ in itertools.combinations(range(4), generic):
        for cols in itertools.combinations(range(6), generic):
            m = sp.expand(sp.Matrix(
                [[jac[i][j] for j in cols] for i in rows_]).det())
            if m != 0:
                common = sp.gcd(common, m)
    p = sp.Poly(common, t0, t1)
    deg = p.total_degree()
    if deg == 0:
        return (0, ())
    coeffs = [Fraction(0)] * (deg + 1)
    for (e0, e1), c in p.terms():
        coeffs[e1] = _oracle._to_fraction(c)
    bf = BinaryForm(direction, deg, tuple(coeffs))
    data = []
    for root in rational_roots(bf):
        coords = dict(line)
        coords[direction] = root
        point = (coords["x"], coords["y"], coords["z"])
        data.append((_gradient_rank(phi, point), _local_jet_dim(phi, point)))
    return (squarefree_degree(bf), tuple(sorted(data)))


def _local_jet_dim(phi: TriLinearMap, point, order: int = 3) -> int:
    """dim of the local ring of the base scheme modulo m^order at a point.

    Computed in local affine coordinates centered at the point: the ideal
    slice below degree ``order`` is spanned by the entries times the
    monomials below that degree."""
    import sympy as sp
    from . import oracle as _oracle
    locs = sp.symbols("_u0 _u1 _u2")
    subs = {}
    for gi, g in enumerate(("x", "y", "z")):
        lo, _ = GROUP_SLICES[g]
        a, b = point[gi]
        i = 0 if a != 0 else 1
        # fix the chart coordinate, offset the other by a local variable
        subs[_oracle._SYM[VARS[lo + i]]] = sp.Rational((a, b)[i])
        subs[_oracle._SYM[VARS[lo + 1 - i]]] = \
            sp.Rational((a, b)[1 - i]) + locs[gi]
    eqs = [sp.expand(_oracle.to_sympy(f).subs(subs)) for f in phi.entries]
    exps = [e for e in itertools.product(range(order), repeat=3)
            if sum(e) < order]
    col = {e: i for i, e in enumerate(exps)}
    rows = []
    for f in eqs:
        for e in exps:
            prod = sp.Poly(sp.expand(
                f * locs[0] ** e[0] * locs[1] ** e[1] * locs[2] ** e[2]),
                *locs)
            row = [Fraction(0)] * len(exps)
            for exp, c in prod.terms():
                if sum(exp) < order:
                    row[col[exp]] = _oracle._to_fraction(c)
            rows.append(row)
    from .linalg import rank
    return len(exps) - rank(rows)


def _classifier_separated(a, b) -> Optional[str]:
    """First classifier stage separating two orbit keys, or None."""
    perms = _type_permutations(a[0])
    la, lb = _ref_lines(*a), _ref_lines(*b)
    if all(la[1] != lb[1]
           or tuple(la[0][p[i]] for i in range(3)) != lb[0] for p in perms):
        return "line-census"
    sqa = dict(_ref_squares(*a))
    survivors = [p for p in perms
                 if la[1] == lb[1]
                 and tuple(la[0][p[i]] for i in range(3)) == lb[0]
                 and _permute_tables({"s": sqa}, p)["s"] == dict(_ref_squares(*b))]
    if not survivors:
        return "census+saturation"
    pa, pb = _ref_points(*a), _ref_points(*b)
    if all(pa[1] != pb[1]
           or tuple(pa[0][p[i]] for i in range(3)) != pb[0]
           for p in survivors):
        return "census+points"
    return None


@lru_cache(maxsize=None)
def audit_fingerprints() -> Dict[str, object]:
    """Build-time injectivity audit on the 19 representatives.

    Documents which same-family pairs the full graded fingerprints (new
    syzygy counts, Hilbert and colon tables) fail to separate, verifies
    those pairs fall to the census stages, and independently verifies that
    the classifier's own stage chain separates every same-family pair.
    Raises when any pair stays inseparable."""
    stage1 = {}
    stage2 = {}
    collisions = []
    census_separated = []
    separating_stage = {}
    for rec in representatives():
        key = (rec.id.family, rec.id.index)
        stage1[key] = _reference_tables(*key, 1)
        stage2[key] = _reference_tables(*key, 2)
    keys = sorted(stage1)
    for a, b in itertools.combinations(keys, 2):
        if a[0] != b[0]:
            continue  # different family types are separated by decide
        stage = _classifier_separated(a, b)
        if stage is None:
            raise ClassifyError(
                f"orbits {a} and {b} are not separated by any invariant")
        separating_stage[(a, b)] = stage
        perms = _type_permutations(a[0])
        clash = any(
            _serialize(_permute_tables(stage1[a], p)) == _serialize(stage1[b])
            and _serialize(_permute_tables(stage2[a], p)) == _serialize(stage2[b])
            for p in perms)
        if clash:
            collisions.append((a, b))
            census_separated.append((a, b))
    return {"collisions": collisions, "census_separated": census_separated,
            "separating_stage": separating_stage}


# ---------------------------------------------------------------------------
# Line census
# ---------------------------------------------------------------------------


class DivisorialDegeneration(ValueError):
    pass


def _split_bilinear(form: MultiPoly, group: str) -> Tuple[BinaryForm, BinaryForm]:
    """Write a (1,1,0)-type form as u0*A + u1*B along ``group``; A and B are
    linear binary forms in the remaining nonzero group."""
    lo, _ = GROUP_SLICES[group]
    other = next(g for g in ("x", "y", "z")
                 if g != group and form.degree[GROUPS.index(g)] != 0)
    a = form.coeff_of_var(VARS[lo], 1).as_binary_form(other)
    b = form.coeff_of_var(VARS[lo + 1], 1).as_binary_form(other)
    return a, b


def line_census(phi: TriLinearMap, direction: str):
    """Coordinate lines of the base locus along one factor.

    Returns (rational_lines, complex_count, exact) where each rational line
    fixes the two other factors; ``exact`` is False when irrational lines
    keep the complex count a lower bound estimate only.
    """
    if direction not in ("x", "y", "z"):
        raise ValueError(f"unknown direction {direction!r}")
    fixed = [g for g in ("x", "y", "z") if g != direction]
    lo, _ = GROUP_SLICES[direction]
    # both coefficients of every entry along the free factor must vanish
    forms = []
    for f in phi.entries:
        for var in (VARS[lo], VARS[lo + 1]):
            forms.append(f.coeff_of_var(var, 1))
    # split each bilinear condition along the second fixed group
    g2 = fixed[1]
    rows = [_split_bilinear(form, g2) for form in forms if not form.is_zero]
    if not rows:
        raise DivisorialDegeneration("all slice forms vanish identically")
    minors = []
    for (a1, b1), (a2, b2) in itertools.combinations(rows, 2):
        m = _bf_sub(_bf_mul(a1, b2), _bf_mul(a2, b1))
        if not m.is_zero:
            minors.append(m)
    if not minors:
        raise DivisorialDegeneration(
            "rank condition holds identically: a line family lies in the base locus")
    g = gcd_binary_forms(minors)
    if g.degree == 0:
        return [], 0, True
    complex_count = squarefree_degree(g)
    roots = rational_roots(g)
    exact = len(roots) == complex_count
    lines = []
    for p in roots:
        # solve for the second fixed factor from any row with a nonzero value
        q = None
        degenerate = True
        for a, b in rows:
            av, bv = a.evaluate(*p), b.evaluate(*p)
            if av != 0 or bv != 0:
                degenerate = False
                cand = _normalize_point(-bv, av)
                if q is None:
                    q = cand
                elif q[0] * cand[1] - q[1] * cand[0] != 0:
                    q = False  # inconsistent rows: no actual line here
                    break
        if degenerate:
            raise DivisorialDegeneration(
                f"a one-dimensional family through {p} lies in the base locus")
        if q is False or q is None:
            complex_count -= 1
            exact = False
            continue
        point = {fixed[0]: p, fixed[1]: q}
        if all(f.eval_groups(point).is_zero for f in phi.entries):
            lines.append({fixed[0]: p, fixed[1]: q})
        else:
            complex_count -= 1
            exact = False
    return lines, complex_count, exact


def _bf_mul(a: BinaryForm, b: BinaryForm) -> BinaryForm:
    return a.multiply(b)


def _bf_sub(a: BinaryForm, b: BinaryForm) -> BinaryForm:
    return BinaryForm(a.group, a.degree,
                      tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


# send a chosen direction to the z slot so the split machinery applies
_TO_Z = {"z": (0, 1, 2), "x": (1, 2, 0), "y": (2, 0, 1)}


def special_point_ranks(phi: TriLinearMap, direction: str) -> Tuple:
    """Entry-gradient ranks at the special rational base points.

    The split along ``direction`` turns the base locus into the rank <= 1
    scheme of a 4x2 matrix of bilinear forms; saturating the ideal of its
    minors by their common factor (the projection of any base curve)
    leaves a finite residual.  At each rational residual point the rank of
    the 4x3 matrix of entry gradients is recorded: 3 at a reduced isolated
    point, 2 on a smooth curve, <= 1 at a contact point.
    """
    import sympy as sp
    from . import oracle as _oracle
    if direction not in _TO_Z:
        raise ValueError(f"unknown direction {direction!r}")
    perm = _TO_Z[direction]
    psi = phi if perm == (0, 1, 2) else phi.right_compose(permutation=perm)
    halves = []
    for f in psi.entries:
        u = f.coeff_of_var("z0", 1)
        v = f.coeff_of_var("z1", 1)
        halves.append((u, v))
    minors = []
    for (u1, v1), (u2, v2) in itertools.combinations(halves, 2):
        m = u1 * v2 - u2 * v1
        if not m.is_zero:
            minors.append(_oracle.to_sympy(m))
    if len(minors) < 2:
        return ("posdim",)
    common = minors[0]
    for m in minors[1:]:
        common = sp.gcd(common, m)
    saturate = common.has(*_oracle._SYMS)
    w = sp.Symbol("_w")
    points = set()
    # overlapping affine charts: saturation commutes with restriction to
    # open pieces, so the residual is computed chart by chart and deduped
    for xs, xf in ((_oracle.X0, _oracle.X1), (_oracle.X1, _oracle.X0)):
        for ys, yf in ((_oracle.Y0, _oracle.Y1), (_oracle.Y1, _oracle.Y0)):
            subs = {xs: 1, ys: 1}
            eqs = [sp.expand(m.subs(subs)) for m in minors]
            if saturate:
                g = sp.expand(common.subs(subs))
                if not g.is_number:
                    gb = sp.groebner([*eqs, 1 - w * g], w, xf, yf,
                                     order="lex")
                    eqs = [e for e in gb.exprs if not e.has(w)]
            out = _oracle._chart_solutions(eqs, (xf,), (yf,))
            if out is None:
                return ("posdim",)
            sols, _, _ = out
            for sol in sols:
                xv = _oracle._to_fraction(sol.get(xf, 0))
                yv = _oracle._to_fraction(sol.get(yf, 0))
                x = (1, xv) if xs is _oracle.X0 else (xv, 1)
                y = (1, yv) if ys is _oracle.Y0 else (yv, 1)
                points.add((_normalize_point(*x), _normalize_point(*y)))
    ranks = []
    for x, y in sorted(points):
        point = _lift_special_point(psi, halves, x, y)
        if point is not None:
            ranks.append(_gradient_rank(psi, point))
    return tuple(sorted(ranks))


def _lift_special_point(psi, halves, x, y):
    z = None
    for u, v in halves:
        uv = (u.eval_groups({"x": x, "y": y}).coeff((0,) * 10),
              v.eval_groups({"x": x, "y": y}).coeff((0,) * 10))
        if uv != (0, 0):
            cand = (uv[1], -uv[0])
            if z is None:
                z = cand
            elif z[0] * cand[1] - z[1] * cand[0] != 0:
                return None
    if z is None:
        return None  # a whole line, handled by the line census
    if any(v != 0 for v in psi.evaluate(x, y, z)):
        return None
    return (x, y, z)


def _gradient_rank(psi, point) -> int:
    charts = [0 if coords[0] != 0 else 1 for coords in point]
    affine_vars = [VARS[GROUP_SLICES[g][0] + 1 - charts[gi]]
                   for gi, g in enumerate(("x", "y", "z"))]
    at = {"x": point[0], "y": point[1], "z": point[2]}
    rows = [[f.derivative(v).eval_groups(at).coeff((0,) * 10)
             for v in affine_vars] for f in psi.entries]
    from .linalg import rank
    return rank(rows)


# ---------------------------------------------------------------------------
# Contact point of type-(2,2,2) maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContactData:
    Q: Tuple[Tuple[Fraction, Fraction], ...]
    lambda_mu_nu: Tuple[Fraction, Fraction, Fraction]
    deltas: Tuple[MultiPoly, MultiPoly, MultiPoly]


class ContactPointError(ValueError):
    pass


def _delta(group: str, point: Tuple[Fraction, Fraction]) -> MultiPoly:
    lo, _ = GROUP_SLICES[group]
    u0 = MultiPoly.variable(VARS[lo])
    u1 = MultiPoly.variable(VARS[lo + 1])
    return u0.scale(point[1]) + u1.scale(-point[0])


def rational_base_points(phi: TriLinearMap) -> List[Tuple]:
    """Rational points where all four entries vanish (0-dimensional case).

    Elimination: split each entry along z, require the 4x2 coefficient
    matrix to have rank <= 1 via its 2x2 minors, eliminate y from the
    minors by resultants, then back substitute.
    """
    halves = []
    for f in phi.entries:
        u = f.coeff_of_var(VARS[GROUP_SLICES["z"][0]], 1)
        v = f.coeff_of_var(VARS[GROUP_SLICES["z"][0] + 1], 1)
        halves.append((u, v))
    minors = []
    for (u1, v1), (u2, v2) in itertools.combinations(halves, 2):
        m = u1 * v2 - u2 * v1  # tri-degree (2,2,0)
        if not m.is_zero:
            minors.append(m)
    if len(minors) < 2:
        raise ContactPointError("base locus is not zero-dimensional")
    quad_pairs = [_as_y_quadratic(m) for m in minors]
    resultants = []
    for qa, qb in itertools.combinations(quad_pairs, 2):
        r = _binary_resultant(qa, qb)
        if not r.is_zero:
            resultants.append(r.as_binary_form("x"))
    if not resultants:
        raise ContactPointError("base locus is not zero-dimensional")
    gx = gcd_binary_forms(resultants)
    points = []
    for px in rational_roots(gx) if gx.degree else []:
        # restrict the minors to binary quadratics in y at x = px
        in_y = []
        for m in minors:
            v = m.eval_groups({"x": px})
            if not v.is_zero:
                in_y.append(v.as_binary_form("y"))
        if not in_y:
            continue
        gy = gcd_binary_forms(in_y)
        if gy.degree == 0:
            continue
        for py in rational_roots(gy):
            rowvals = [(u.eval_groups({"x": px, "y": py}).coeff((0,) * 10),
                        v.eval_groups({"x": px, "y": py}).coeff((0,) * 10))
                       for u, v in halves]
            nz = [(a, b) for a, b in rowvals if a != 0 or b != 0]
            if not nz:
                continue
            a, b = nz[0]
            pz = (b, -a)
            if all(v == 0 for v in phi.evaluate(px, py, pz)):
                points.append((px, py, pz))
    return points


def _as_y_quadratic(m: MultiPoly):
    """A (2,2,0)-form as y-quadratic coefficients (c0, c1, c2), each a
    (2,0,0)-form."""
    y0 = VARS[GROUP_SLICES["y"][0]]
    y1 = VARS[GROUP_SLICES["y"][0] + 1]
    c0 = m.coeff_of_var(y0, 2)
    c1_terms = {mono: c for mono, c in m.terms.items()
                if mono[2] == 1 and mono[3] == 1}
    c1 = MultiPoly(MultiDegree(2, 0, 0, 0),
                   {mono[:2] + (0, 0) + mono[4:]: c
                    for mono, c in c1_terms.items()})
    c2 = m.coeff_of_var(y1, 2)
    return (_drop_y(c0), c1, _drop_y(c2))


def _drop_y(p: MultiPoly) -> MultiPoly:
    terms = {mono[:2] + (0, 0) + mono[4:]: c for mono, c in p.terms.items()}
    return MultiPoly(MultiDegree(2, 0, 0, 0), terms)


def _binary_resultant(qa, qb) -> MultiPoly:
    """Resultant of two y-quadratics with (2,0,0)-form coefficients, as the
    4x4 Sylvester determinant (an (8,0,0)-form)."""
    zero = MultiPoly.zero(MultiDegree(2, 0, 0, 0))
    a0, a1, a2 = qa
    b0, b1, b2 = qb
    rows = [[a0, a1, a2, zero], [zero, a0, a1, a2],
            [b0, b1, b2, zero], [zero, b0, b1, b2]]
    return _poly_det(rows)


def _poly_det(rows):
    if len(rows) == 1:
        return rows[0][0]
    total = None
    for j, head in enumerate(rows[0]):
        if head.is_zero:
            continue
        sub = [[r[k] for k in range(len(r)) if k != j] for r in rows[1:]]
        term = head * _poly_det(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        # expanded along a zero row: the zero form of the diagonal degree
        d = MultiDegree(*(sum(row[i].degree[k] for i, row in enumerate(rows))
                          for k in range(4)))
        return MultiPoly.zero(d)
    return total


def contact_point(phi: TriLinearMap) -> ContactData:
    """The unique contact point and weights of a type-(2,2,2) map.

    Candidates are the rational base points; the contact point is the one
    where all four entry gradients are proportional, with weights read off
    the common gradient direction.  Raises when no rational candidate
    passes (existence is only guaranteed over the complex numbers).
    """
    report = decide(phi)
    if report.phi_type != (2, 2, 2):
        raise ContactPointError("map is not birational of type (2,2,2)")
    for Q in rational_base_points(phi):
        data = _try_contact(phi, Q)
        if data is not None:
            return data
    raise ContactPointError("contact point not rational")


def _try_contact(phi: TriLinearMap, Q) -> Optional[ContactData]:
    charts = []
    for coords in Q:
        i = 0 if coords[0] != 0 else 1
        charts.append(i)
    affine_vars = [VARS[GROUP_SLICES[g][0] + 1 - charts[gi]]
                   for gi, g in enumerate(("x", "y", "z"))]
    point = {"x": Q[0], "y": Q[1], "z": Q[2]}
    grads = []
    for f in phi.entries:
        row = [f.derivative(v).eval_groups(point).coeff((0,) * 10)
               for v in affine_vars]
        grads.append(row)
    nz = [r for r in grads if any(r)]
    if not nz:
        return None
    base = nz[0]
    for r in grads:
        for i in range(3):
            for j in range(i + 1, 3):
                if base[i] * r[j] - base[j] * r[i] != 0:
                    return None
    # scale factors from the delta derivative and the fixed chart values
    alpha, beta, gamma = Q
    s = []
    for coords, i in zip(Q, charts):
        s.append(-coords[0] if i == 0 else coords[1])
    c1 = s[0] * beta[charts[1]] * gamma[charts[2]]
    c2 = alpha[charts[0]] * s[1] * gamma[charts[2]]
    c3 = alpha[charts[0]] * beta[charts[1]] * s[2]
    lam, mu, nu = base[0] / c1, base[1] / c2, base[2] / c3
    if lam == 0 or mu == 0 or nu == 0:
        return None
    lam, mu, nu = Fraction(1), mu / lam, nu / lam
    deltas = tuple(_delta(g, p) for g, p in zip(("x", "y", "z"), Q))
    if not _entries_in_contact_slice(phi, Q, charts, (lam, mu, nu), deltas):
        return None
    return ContactData(tuple(Q), (lam, mu, nu), deltas)


def _entries_in_contact_slice(phi, Q, charts, weights, deltas) -> bool:
    lam, mu, nu = weights
    d1, d2, d3 = deltas
    xv = MultiPoly.variable(VARS[0 + charts[0]])
    yv = MultiPoly.variable(VARS[2 + charts[1]])
    zv = MultiPoly.variable(VARS[4 + charts[2]])
    g1 = (d1 * yv * zv).scale(lam) + (xv * d2 * zv).scale(mu) \
        + (xv * yv * d3).scale(nu)
    gens = [g1, d1 * d2 * zv, d1 * yv * d3, xv * d2 * d3, d1 * d2 * d3]
    basis = monomials_of(MultiDegree(1, 1, 1, 0))
    span = Echelon()
    span.add_all(g.coefficients_on(basis) for g in gens)
    return all(span.contains(f.coefficients_on(basis)) for f in phi.entries)


# ---------------------------------------------------------------------------
# Random sampling within an orbit
# ---------------------------------------------------------------------------


def _random_gl2(rng: random.Random):
    while True:
        m = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0:
            return m


def _random_gl4(rng: random.Random):
    while True:
        m = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)]
        if _int_det4(m) != 0:
            return m


def _int_det4(m) -> int:
    total = 0
    for perm in itertools.permutations(range(4)):
        sign = 1
        for i in range(4):
            for j in range(i + 1, 4):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(4):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


def random_in_orbit(id: OrbitId, seed: int) -> TriLinearMap:
    """Seeded conjugate of a representative: right action by PGL(2)^3 and a
    factor permutation, then a left invertible 4x4 factor."""
    rec = record(id.family, id.index)
    rng = random.Random(seed)
    matrices = tuple(_random_gl2(rng) for _ in range(3))
    perm = rng.choice(PERMUTATIONS)
    left = _random_gl4(rng)
    return rec.map.right_compose(matrices, perm).left_compose(left)


# ---------------------------------------------------------------------------
# Degeneration data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegenerationEdge:
    src: Tuple[Tuple[int, int, int], int]
    dst: Tuple[Tuple[int, int, int], int]
    note: str


_F111, _F112, _F122, _F222 = FAMILIES


def degenerations() -> Tuple[DegenerationEdge, ...]:
    """Closure relations between orbits, restricted to the pairs that the
    classification's stratum analysis makes explicit.  The list is
    deliberately partial: absence of an edge is not a claim."""
    mk = DegenerationEdge
    return (
        # strata over the smooth (1,1,0) curve: open > tangent plane > deep
        mk((_F112, 1), (_F112, 2), "closure of the open stratum"),
        mk((_F112, 1), (_F111, 2), "closure of the open stratum"),
        mk((_F112, 2), (_F111, 2), "tangent-plane stratum closes onto the deep stratum"),
        # strata over the reducible (1,1,0) curve
        mk((_F112, 3), (_F112, 4), "closure of the open stratum"),
        mk((_F112, 3), (_F112, 5), "closure of the open stratum"),
        mk((_F112, 3), (_F111, 3), "closure of the open stratum"),
        mk((_F112, 3), (_F111, 4), "closure of the open stratum"),
        mk((_F112, 4), (_F111, 3), "exceptional stratum closes onto its boundary"),
        mk((_F112, 4), (_F112, 5), "exceptional stratum closes onto the vertex line"),
        mk((_F112, 4), (_F111, 4), "exceptional stratum closes onto the vertex"),
        mk((_F111, 3), (_F111, 4), "intersecting-lines stratum closes onto the vertex"),
        mk((_F112, 5), (_F111, 4), "vertex line closes onto the vertex"),
        # strata over the fat point: open > exceptional cone > edge lines
        mk((_F222, 1), (_F222, 2), "closure of the open stratum"),
        mk((_F222, 1), (_F112, 2), "closure of the open stratum"),
        mk((_F222, 1), (_F111, 4), "closure of the open stratum"),
        mk((_F222, 2), (_F112, 2), "cone stratum closes onto the edge lines"),
        mk((_F222, 2), (_F111, 4), "cone stratum closes onto the vertex"),
        mk((_F112, 2), (_F111, 4), "edge-line stratum closes onto the vertex"),
        # the cited separation on the degenerate quadric: the vertex line
        # lies in the closure of one tangent stratum but not the other
        mk((_F122, 8), (_F111, 2),
           "the vertex line lies in the closure of this tangent stratum"),
    )
