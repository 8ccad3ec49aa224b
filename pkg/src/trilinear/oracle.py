"""Independent numerical-free cross checks, built on sympy.

The fiber computation here deliberately avoids the syzygy machinery: it
pulls three generic hyperplanes through the target back to (P1)^3,
eliminates one factor at a time with resultants and gcds, and reports the
rational preimages exactly.  Complex preimages are only counted through
eliminant degrees, so that count is a lower bound and is flagged as such.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy as sp

from .linalg import nullspace, rank
from .maps import TriLinearMap
from .ring import VARS, MultiPoly

_SYMS = sp.symbols(" ".join(VARS))
_SYM = dict(zip(VARS, _SYMS))
X0, X1, Y0, Y1, Z0, Z1 = _SYMS[:6]


class OracleError(RuntimeError):
    pass


def to_sympy(p: MultiPoly):
    total = sp.Integer(0)
    for mono, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for i, e in enumerate(mono):
            if e:
                term *= _SYMS[i] ** e
        total += term
    return sp.expand(total)


def random_rational(rng: random.Random) -> Fraction:
    num = rng.randint(-20, 20)
    den = rng.randint(1, 20)
    return Fraction(num, den)


def random_point(rng: random.Random) -> Tuple[Tuple[Fraction, Fraction], ...]:
    """A random point of (P1)^3 with small rational coordinates."""
    out = []
    for _ in range(3):
        while True:
            pair = (random_rational(rng), random_rational(rng))
            if pair != (0, 0):
                out.append(pair)
                break
    return tuple(out)


@dataclass
class FiberReport:
    target: Tuple[Fraction, Fraction, Fraction, Fraction]
    rational_points: List[Tuple[Tuple[Fraction, Fraction], ...]]
    complex_lower_bound: int
    complex_exact: bool
    discarded_base_points: int
    trials_used: int


def _proportional(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if a[i] * b[j] - a[j] * b[i] != 0:
                return False
    return True


def _hyperplanes_through(target, rng: random.Random):
    """Three generic rational linear forms on P3 vanishing at the target,
    as coefficient 4-vectors."""
    base = nullspace([[Fraction(v) for v in target]], 4)
    while True:
        mix = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        if rank(mix) == 3:
            break
    return [[sum(Fraction(mix[i][k]) * base[k][j] for k in range(3))
             for j in range(4)] for i in range(3)]


def _eliminate(eqs, elim_var, keep_var):
    """gcd of pairwise resultants: a univariate multiple of the projection
    of the common zeros, or None when elimination is not possible."""
    eqs = [sp.expand(e) for e in eqs]
    eqs = [e for e in eqs if e != 0]
    # pairs without the eliminated variable would degenerate to constant
    # resultants and poison the gcd
    with_v = [e for e in eqs if e.has(elim_var)]
    res = []
    for i in range(len(with_v)):
        for j in range(i + 1, len(with_v)):
            r = sp.resultant(with_v[i], with_v[j], elim_var)
            if sp.expand(r) != 0:
                res.append(sp.Poly(r, keep_var))
    res.extend(sp.Poly(e, keep_var) for e in eqs if not e.has(elim_var))
    if not res:
        return None
    elim = res[0]
    for p in res[1:]:
        elim = sp.Poly(sp.gcd(elim, p), keep_var)
    return elim


def _strip_shared_roots(elim, q, var):
    """Remove from elim every root it shares with q (with all copies)."""
    if q is None:
        return elim
    h = sp.Poly(sp.gcd(elim, q), var)
    while h.degree() > 0 and elim.degree() > 0:
        elim = sp.Poly(sp.quo(elim, h), var)
        h = sp.Poly(sp.gcd(elim, h), var)
    return elim


def _chart_solutions(eqs, xvars, yvars, excluded=()):
    """Solve a system of x/y polynomials on one disjoint chart.

    ``excluded`` is a list of polynomial systems (in the same chart
    coordinates) cutting out loci whose points are fiber artifacts, not
    preimages: roots of the eliminant lying on V(eqs) inside any of them
    are dropped before counting, so that irrational artifacts cannot
    inflate the complex lower bound.  Returns (rational solutions in
    chart coordinates, distinct-complex lower bound, exact flag) or None
    when the system is not zero-dimensional on the chart.
    """
    eqs = [sp.expand(e) for e in eqs]
    eqs = [e for e in eqs if e != 0]
    chart_vars = list(xvars) + list(yvars)
    free = [v for v in chart_vars if any(e.has(v) for e in eqs)]
    if not eqs:
        if not chart_vars:
            return ([{}], 1, True)  # the chart is a single solving point
        return None  # a whole coordinate patch solves the system
    if any(all(not e.has(v) for v in chart_vars) for e in eqs):
        return ([], 0, True)  # a nonzero constant: the system is inconsistent
    if len(free) == 1:
        v = free[0]
        g = sp.Integer(0)
        for e in eqs:
            g = sp.gcd(g, sp.Poly(e, v))
        g = sp.Poly(g, v)
        if g.degree() <= 0:
            return ([], 0, True)
        if len(chart_vars) > 1:
            return None  # solutions leave the second chart variable free
        for system in excluded:
            polys = [sp.expand(p) for p in system]
            nonzero = [p for p in polys if p != 0]
            if not nonzero or len(nonzero) < len(polys):
                continue  # the locus is not cut out on this chart
            q = nonzero[0]
            for p in nonzero[1:]:
                q = sp.gcd(q, sp.Poly(p, v))
            g = _strip_shared_roots(g, sp.Poly(q, v), v)
        if g.degree() <= 0:
            return ([], 0, True)
        sols, count, exact = _univariate_roots(g, v)
        return ([{v: r} for r in sols], count, exact)
    # two variables: eliminate the x one by pairwise resultants
    vx = next(v for v in free if v in xvars)
    vy = next(v for v in free if v in yvars)
    elim = _eliminate(eqs, vx, vy)
    if elim is None:
        return None
    if elim.degree() <= 0:
        return ([], 0, True)
    for system in excluded:
        polys = [sp.expand(p) for p in system]
        nonzero = [p for p in polys if p != 0]
        if not nonzero or len(nonzero) < len(polys):
            continue
        q = _eliminate(eqs + nonzero, vx, vy)
        elim = _strip_shared_roots(elim, q, vy)
    if elim.degree() <= 0:
        return ([], 0, True)
    yroots, ycount, yexact = _univariate_roots(elim, vy)
    sols = []
    exact = yexact and ycount == len(yroots)
    for r in yroots:
        sub = [sp.expand(e.subs(vy, r)) for e in eqs]
        sub = [e for e in sub if e != 0]
        if any(not e.has(vx) for e in sub):
            # inconsistent after substitution: a spurious resultant root
            if all(not e.has(vx) for e in sub):
                ycount -= 1
                continue
            sub = [e for e in sub if e.has(vx)]
        if not sub:
            return None  # a curve {y = r} x (x line) solves the system
        g = sp.Integer(0)
        for e in sub:
            g = sp.gcd(g, sp.Poly(e, vx))
        g = sp.Poly(g, vx)
        if g.degree() <= 0:
            ycount -= 1  # no partner: another spurious resultant root
            continue
        xroots, xcount, xexact = _univariate_roots(g, vx)
        exact = exact and xexact
        if xcount > 1:
            ycount += xcount - 1  # several partners over one eliminant root
        for xr in xroots:
            sols.append({vx: xr, vy: r})
    return (sols, ycount, exact)


def _univariate_roots(poly, var):
    """(rational roots, distinct complex count, exact flag)."""
    sf = sp.Poly(sp.quo(poly, sp.gcd(poly, poly.diff(var))), var)
    count = sf.degree()
    rat = [r for r, _ in sp.roots(poly, var).items() if r.is_Rational]
    return rat, count, len(rat) == count


_CHARTS = (
    # (x substitutions, y substitutions, free x vars, free y vars)
    ({X0: 1}, {Y0: 1}, (X1,), (Y1,)),
    ({X0: 1}, {Y0: 0, Y1: 1}, (X1,), ()),
    ({X0: 0, X1: 1}, {Y0: 1}, (), (Y1,)),
    ({X0: 0, X1: 1}, {Y0: 0, Y1: 1}, (), ()),
)


def fiber(phi: TriLinearMap, target: Sequence, seed: int = 0,
          trials: int = 3) -> FiberReport:
    """Preimages of a point of P3 under the map.

    Each trial cuts the fiber with a fresh generic hyperplane triple; the
    reported complex lower bound is the minimum over trials.  Points where
    the map itself vanishes are discarded and counted separately.
    """
    target = tuple(Fraction(v) for v in target)
    if all(v == 0 for v in target):
        raise ValueError("target must be a point of P3")
    rng = random.Random(seed)
    best: Optional[FiberReport] = None
    failures = []
    for trial in range(trials):
        try:
            report = _fiber_once(phi, target, rng)
        except OracleError as exc:
            failures.append(str(exc))
            continue
        if best is None or report.complex_lower_bound < best.complex_lower_bound:
            best = report
        best.trials_used = trial + 1
    if best is None:
        raise OracleError(
            "all hyperplane triples degenerated: " + "; ".join(failures))
    return best


def _fiber_once(phi, target, rng) -> FiberReport:
    planes = _hyperplanes_through(target, rng)
    cuts = []
    for c in planes:
        g = MultiPoly.zero(phi.entries[0].degree)
        for coeff, f in zip(c, phi.entries):
            g = g + f.scale(coeff)
        cuts.append(to_sympy(g))
    # split along z and project the common solutions to the (x, y) factors
    pairs = [(sp.expand(g.coeff(Z0)), sp.expand(g.coeff(Z1))) for g in cuts]
    minors = []
    for i in range(3):
        for j in range(i + 1, 3):
            m = sp.expand(pairs[i][0] * pairs[j][1] - pairs[j][0] * pairs[i][1])
            if m != 0:
                minors.append(m)
    if len(minors) < 2:
        raise OracleError("hyperplane cuts are degenerate")
    # the projection of the base curve divides every minor: remove it
    common = minors[0]
    for m in minors[1:]:
        common = sp.gcd(common, m)
    if common.has(*_SYMS):
        minors = [sp.cancel(m / common) for m in minors]
    # loci whose points are never preimages: the divided-out curve
    # projection (residual intersections land back on it) and the
    # projection of the isolated base points (rank <= 1 entry rows)
    excluded = []
    frows = [(sp.expand(f.coeff(Z0)), sp.expand(f.coeff(Z1)))
             for f in (to_sympy(e) for e in phi.entries)]
    base_minors = []
    for k in range(4):
        for l in range(k + 1, 4):
            m = sp.expand(frows[k][0] * frows[l][1] - frows[l][0] * frows[k][1])
            if m != 0:
                base_minors.append(m)
    if base_minors:
        excluded.append(base_minors)
    if common.has(*_SYMS):
        excluded.append([common])
    rational: List[Tuple] = []
    complex_count = 0
    exact = True
    discarded = 0
    for xsub, ysub, xfree, yfree in _CHARTS:
        eqs = [m.subs({**xsub, **ysub}) for m in minors]
        chart_excluded = [[p.subs({**xsub, **ysub}) for p in system]
                          for system in excluded]
        out = _chart_solutions(eqs, xfree, yfree, chart_excluded)
        if out is None:
            raise OracleError("fiber cut is not zero-dimensional on a chart")
        sols, count, chart_exact = out
        complex_count += count
        exact = exact and chart_exact
        for sol in sols:
            xy = _chart_point(xsub, ysub, sol)
            kept = _lift_z(phi, pairs, xy, target)
            if kept == "base":
                discarded += 1
                complex_count -= 1
            elif kept is None:
                complex_count -= 1
                exact = False
            else:
                rational.append(kept)
    return FiberReport(target, rational, complex_count, exact, discarded, 1)


def _chart_point(xsub, ysub, sol):
    def val(sym, default):
        if sym in sol:
            return _to_fraction(sol[sym])
        return default
    x = (_to_fraction(xsub.get(X0, 1)), val(X1, _to_fraction(xsub.get(X1, 0))))
    y = (_to_fraction(ysub.get(Y0, 1)), val(Y1, _to_fraction(ysub.get(Y1, 0))))
    return x, y


def _to_fraction(v) -> Fraction:
    r = sp.Rational(v)
    return Fraction(r.p, r.q)


def _lift_z(phi, pairs, xy, target):
    """Recover the z coordinate and verify the image; returns the full
    point, "base" for a base point, or None for a spurious solution."""
    x, y = xy
    subs = {X0: sp.Rational(x[0].numerator, x[0].denominator),
            X1: sp.Rational(x[1].numerator, x[1].denominator),
            Y0: sp.Rational(y[0].numerator, y[0].denominator),
            Y1: sp.Rational(y[1].numerator, y[1].denominator)}
    z = None
    for u, v in pairs:
        uv = (_to_fraction(u.subs(subs)), _to_fraction(v.subs(subs)))
        if uv != (0, 0):
            cand = (uv[1], -uv[0])
            if z is None:
                z = cand
            elif z[0] * cand[1] - z[1] * cand[0] != 0:
                return None  # the three cuts do not meet over this (x, y)
    if z is None:
        return None  # a whole z line solves the cuts; not a fiber point
    image = phi.evaluate(x, y, z)
    if all(v == 0 for v in image):
        return "base"
    if not _proportional(image, list(target)):
        return None
    return (x, y, z)


# ---------------------------------------------------------------------------
# Sampling checks
# ---------------------------------------------------------------------------


@dataclass
class SampleReport:
    trials: int
    successes: int
    witness: Optional[object] = None

    @property
    def all_passed(self) -> bool:
        return self.successes == self.trials

    @property
    def any_passed(self) -> bool:
        return self.successes > 0


def dominance_sample(phi: TriLinearMap, seed: int = 0,
                     trials: int = 5) -> SampleReport:
    """Full-rank test of the affine graph matrix at random points; rank 4
    at any point certifies dominance."""
    rng = random.Random(seed)
    ok = 0
    witness = None
    for _ in range(trials):
        p = random_point(rng)
        rows = []
        for f in phi.entries:
            vals = [f] + [f.derivative(v) for v in ("x1", "y1", "z1")]
            point = {"x": p[0], "y": p[1], "z": p[2]}
            rows.append([g.eval_groups(point).coeff((0,) * 10) for g in vals])
        if rank(rows) == 4:
            ok += 1
        elif witness is None:
            witness = p
    return SampleReport(trials, ok, witness)


def injectivity_sample(phi: TriLinearMap, seed: int = 0,
                       trials: int = 10) -> SampleReport:
    """Distinct random points must have non-proportional images (away from
    the base locus); a witness pair refutes generic injectivity."""
    rng = random.Random(seed)
    ok = 0
    witness = None
    for _ in range(trials):
        p, q = random_point(rng), random_point(rng)
        if p == q:
            ok += 1
            continue
        ip, iq = phi.evaluate(*p), phi.evaluate(*q)
        if all(v == 0 for v in ip) or all(v == 0 for v in iq):
            ok += 1  # base points carry no information
            continue
        if _proportional(ip, iq):
            if witness is None:
                witness = (p, q)
        else:
            ok += 1
    return SampleReport(trials, ok, witness)
