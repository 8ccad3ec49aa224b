import pytest

from trilinear import classify, classify_detail, decide, random_in_orbit
from trilinear.atlas import (FAMILY_SIZES, ClassifyError, OrbitId,
                             contact_point, degenerations, line_census,
                             permute_tri, record, representatives,
                             special_point_ranks)


def test_nineteen_representatives():
    recs = representatives()
    assert len(recs) == 19
    seen = {}
    for rec in recs:
        seen.setdefault(rec.id.family, []).append(rec.id.index)
    for family, size in FAMILY_SIZES.items():
        assert sorted(seen[family]) == list(range(1, size + 1))


def test_record_lookup_and_base_degree():
    rec = record((1, 1, 2), 3)
    assert rec.id.label() == "(1,1,2)-3"
    assert rec.base_locus_tridegree == (1, 1, 0)
    with pytest.raises(KeyError):
        record((1, 1, 1), 9)


def test_base_slice_dims_match_entries():
    # the (1,1,1) slice of the displayed ideal is spanned by the four
    # entries themselves, for every orbit
    for rec in representatives():
        assert rec.base_slice_dim((1, 1, 1)) == 4


def test_classify_fixes_representatives():
    for rec in representatives():
        oid, method = classify_detail(rec.map)
        assert (oid.family, oid.index) == (rec.id.family, rec.id.index)
        assert oid.permutation == (0, 1, 2)


def test_classify_rejects_non_birational(negative_222):
    with pytest.raises(ClassifyError):
        classify(negative_222)


def test_random_in_orbit_is_deterministic():
    oid = OrbitId((1, 2, 2), 7)
    a = random_in_orbit(oid, seed=5)
    b = random_in_orbit(oid, seed=5)
    assert a.entries == b.entries
    c = random_in_orbit(oid, seed=6)
    assert a.entries != c.entries


def test_classify_round_trip_sample():
    for rec in (record((1, 1, 1), 4), record((1, 1, 2), 2),
                record((1, 2, 2), 8)):
        phi = random_in_orbit(rec.id, seed=11)
        oid = classify(phi)
        assert (oid.family, oid.index) == (rec.id.family, rec.id.index)


def test_line_census_concurrent_lines():
    # three coordinate lines through a common point: one line per direction
    rec = record((1, 1, 1), 4)
    total = 0
    for direction in ("x", "y", "z"):
        lines, complex_count, exact = line_census(rec.map, direction)
        assert exact
        assert len(lines) == complex_count == 1
        total += len(lines)
    assert total == 3


def test_special_point_ranks_isolated_point():
    # an isolated reduced base point shows gradient rank 3
    assert special_point_ranks(record((1, 1, 2), 1).map, "x") == (3,)


def test_contact_point_of_generic_222():
    rec = record((2, 2, 2), 1)
    data = contact_point(rec.map)
    assert all(v != 0 for v in data.lambda_mu_nu)


def test_type_permutes_with_factors():
    rec = record((1, 2, 2), 1)
    base = decide(rec.map).phi_type
    for perm in ((0, 1, 2), (1, 0, 2), (2, 1, 0), (1, 2, 0)):
        permuted = rec.map.right_compose(permutation=perm)
        assert decide(permuted).phi_type == permute_tri(base, perm)


def test_degenerations_edges_reference_known_orbits():
    known = {(rec.id.family, rec.id.index) for rec in representatives()}
    edges = degenerations()
    assert edges
    for edge in edges:
        assert (edge.src[0], edge.src[1]) in known
        assert (edge.dst[0], edge.dst[1]) in known
