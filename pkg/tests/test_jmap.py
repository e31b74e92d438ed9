import pytest

from curvecomplex.certificates import CONSTANT, verify_certificate
from curvecomplex.complexes import is_cut_system
from curvecomplex.jmap import (boundary_identity, build_R_complex, c_prime, check_j_simplicial, find_auxiliary_II,
                               find_auxiliary_III, j_map, j_on_vertices, r_prime, subdivide_cycle, verify_lemma5,
                               verify_type_I, verify_type_II, verify_type_III)
from curvecomplex.simplicial import homology


def cells_of(G, kind):
    return [(c, ct) for c, ct in G.cells if ct.kind == kind]


def test_j_is_simplicial(ht2):
    assert check_j_simplicial(ht2)


def test_j_on_vertices(ht2):
    G = ht2
    Z = G.vertices[0]
    assert j_on_vertices({Z}) == Z
    W = G.adjacency[Z][0]
    assert j_on_vertices({Z, W}, G.ball) == Z & W
    far = next(v for v in G.vertices if v != Z and not G.has_edge(Z, v))
    with pytest.raises(ValueError):
        j_on_vertices({Z, far}, G.ball)


def test_r_complex_is_the_graph(ht2):
    R = build_R_complex(ht2)
    assert len(R.simplices_of_dim(1)) == len(ht2.edges)
    assert len(R.simplices_of_dim(2)) == 0


def test_r_prime_of_small_graph(ht2):
    # a small neighbourhood keeps the subdivision cheap: its homology is the graph's
    from curvecomplex.complexes import ht_subgraph
    Z = ht2.vertices[0]
    H = ht_subgraph(ht2.T, ht2.ball, [Z] + ht2.adjacency[Z][:4])
    assert homology(r_prime(H), 1) == homology(build_R_complex(H), 1)


def test_type_I_certificates(ht2):
    K = c_prime(ht2.ball)
    for cyc, ct in cells_of(ht2, "I")[:20]:
        cert = verify_type_I(ht2, cyc, ct)
        assert verify_certificate(K, j_map(subdivide_cycle(cyc), ht2.ball), CONSTANT, cert)


def test_type_II_certificates_use_separating_auxiliary(ht2):
    K = c_prime(ht2.ball)
    for cyc, ct in cells_of(ht2, "II")[:15]:
        cert, aux = verify_type_II(ht2, cyc, ct)
        assert verify_certificate(K, j_map(subdivide_cycle(cyc), ht2.ball), CONSTANT, cert)
        assert aux is not None and ht2.ball.separating(aux)
        assert all(ht2.ball.i(aux, c) == 0 for c in ct.curves)


def test_auxiliary_II_explicit_construction(ht2):
    # a ball too light to hold any separating class forces the explicit construction
    from curvecomplex.complexes import CurveBall
    light = CurveBall(ht2.T, 6)
    assert not any(light.separating(c) for c in light.classes)
    cyc, ct = cells_of(ht2, "II")[0]
    aux = find_auxiliary_II(light, ct.curves)
    assert light.separating(aux)
    assert all(light.i(aux, c) == 0 for c in ct.curves)


def test_auxiliary_III_intersection_pattern(ht2):
    i = ht2.ball.i
    for cyc, ct in cells_of(ht2, "III"):
        c1, c2, c3, c4, c5 = ct.curves
        c0 = find_auxiliary_III(ht2.ball, ct.curves)
        assert [i(c0, x) for x in (c1, c2, c3, c4, c5)] == [1, 0, 0, 0, 1]


def test_pentagon_filling_structure(ht2):
    T = ht2.T
    for cyc, ct in cells_of(ht2, "III"):
        cert, filling = verify_type_III(ht2, cyc, ct)
        assert len(filling.decagon) == 10
        assert filling.alpha_type == filling.beta_type == "II"
        assert len(filling.gamma) == 6
        regions = filling.regions(ht2.ball)
        assert set(regions) == {"alpha", "beta", "gamma"}
        assert boundary_identity(filling.decagon, list(regions.values()))
        for Z in filling.alpha + filling.beta:
            assert is_cut_system(T, Z, ht2.ball)
        assert set(filling.region_moves) == {"alpha", "beta", "gamma"}


def test_boundary_identity_detects_missing_region(ht2):
    cyc, ct = cells_of(ht2, "III")[0]
    _, filling = verify_type_III(ht2, cyc, ct)
    regions = filling.regions(ht2.ball)
    assert not boundary_identity(filling.decagon, [regions["alpha"], regions["gamma"]])


def test_wrong_kind_rejected(ht2):
    cyc, ct = cells_of(ht2, "I")[0]
    with pytest.raises(ValueError):
        verify_type_II(ht2, cyc, ct)


def test_cell_report_deterministic(ht2):
    sub = cells_of(ht2, "I")[:5] + cells_of(ht2, "II")[:5] + cells_of(ht2, "III")[:2]
    r1 = verify_lemma5(ht2, sub)
    r2 = verify_lemma5(ht2, sub)
    assert r1["all_accepted"]
    assert r1["counts"] == {"I": {"cells": 5, "accepted": 5}, "II": {"cells": 5, "accepted": 5},
                            "III": {"cells": 2, "accepted": 2}}
    assert r1["counts"] == r2["counts"] and r1["certificate_moves"] == r2["certificate_moves"]


def test_cell_report_empty():
    from curvecomplex.complexes import HTGraph
    from curvecomplex.triangulation import build_standard_triangulation
    from curvecomplex.complexes import CurveBall
    T = build_standard_triangulation(2)
    G = HTGraph(T, CurveBall(T, 0), [], {})
    rep = verify_lemma5(G, [])
    assert rep["all_accepted"] and rep["counts"] == {}
