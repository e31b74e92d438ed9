import random

import pytest
from hypothesis import given, settings, strategies as st

from curvecomplex.certificates import (CONSTANT, Backtrack, CertificateBuilder, HomotopyCertificate, Rotate,
                                       StarContract, TriangleReplace, check_certificate, contract_in_star,
                                       dumps_certificate, verify_certificate)
from curvecomplex.errors import CertificateError
from curvecomplex.simplicial import Complex, barycentric_subdivision

# a hexagon coned from the centre 'o', and the bare hexagon
HEX = [0, 1, 2, 3, 4, 5]
DISK = Complex([("o", HEX[k], HEX[(k + 1) % 6]) for k in range(6)])
RING = Complex([(HEX[k], HEX[(k + 1) % 6]) for k in range(6)])


def random_walk(K, v, n, rng):
    loop = [v]
    for _ in range(n - 1):
        loop.append(rng.choice(sorted(K.edges_at(loop[-1]), key=str)))
    return loop


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 12))
def test_loops_in_a_star_contract(seed, n):
    rng = random.Random(seed)
    while True:
        loop = random_walk(DISK, "o", n, rng)
        if DISK.has_simplex({loop[-1], loop[0]}):
            break
    cert = contract_in_star(DISK, loop, "o")
    assert verify_certificate(DISK, loop, CONSTANT, cert)


def test_boundary_of_disk_contracts_by_coning():
    B = CertificateBuilder(DISK, HEX)
    B.cone_segment(0, 6, "o")
    assert len(B.loop) <= 1 or B.loop == ["o"]
    check_certificate(DISK, HEX, CONSTANT, B.certificate)


def test_generator_loop_not_contractible_by_any_short_certificate():
    # the hexagon in the ring is essential: no move sequence built from
    # the ring's simplices can shrink it, so every attempt is rejected
    with pytest.raises(CertificateError):
        contract_in_star(RING, HEX, 0)
    bad = HomotopyCertificate([StarContract(0)])
    assert not verify_certificate(RING, HEX, CONSTANT, bad)


def test_mutated_certificates_rejected():
    B = CertificateBuilder(DISK, HEX)
    B.cone_segment(0, 6, "o")
    cert = B.certificate
    assert verify_certificate(DISK, HEX, CONSTANT, cert)
    rng = random.Random(3)
    rejected = 0
    for _ in range(40):
        moves = list(cert.moves)
        k = rng.randrange(len(moves))
        m = moves[k]
        if isinstance(m, TriangleReplace):
            moves[k] = TriangleReplace(m.pos + 1, m.c, m.inverse, m.simplex)
        elif isinstance(m, Backtrack):
            moves[k] = Backtrack(m.pos, "o" if m.b != "o" else 0, m.insert)
        else:
            del moves[k]
        rejected += not verify_certificate(DISK, HEX, CONSTANT, HomotopyCertificate(moves))
    assert rejected >= 30


def test_each_move_kind():
    loop = [0, 1, 2]
    K = Complex([(0, 1, 2)])
    assert check_certificate(K, loop, [0, 2], HomotopyCertificate(
        [TriangleReplace(0, 1, True, frozenset({0, 1, 2}))])) == [0, 2]
    assert check_certificate(K, [0, 2], [0, 1, 0, 2], HomotopyCertificate([Backtrack(0, 1, True)]))
    assert check_certificate(K, [0, 1, 2], [1, 2, 0], HomotopyCertificate([Rotate(1)]))
    assert check_certificate(K, [0, 1, 2], CONSTANT, HomotopyCertificate([StarContract(0)])) == [0]


def test_wrong_target_rejected():
    K = Complex([(0, 1, 2)])
    v = verify_certificate(K, [0, 1, 2], [1, 2, 0], HomotopyCertificate([]))
    assert not v and "target" in v.reason


def test_source_must_be_edge_loop():
    assert not verify_certificate(RING, [0, 2, 4], CONSTANT, HomotopyCertificate([]))


def test_json_round_trip():
    B = CertificateBuilder(DISK, HEX)
    B.cone_segment(0, 6, "o")
    cert = B.certificate
    data = cert.to_json(str)
    decode = {str(v): v for v in DISK.vertices}.get
    back = HomotopyCertificate.from_json(data, decode)
    assert back == cert
    text = dumps_certificate(cert, HEX, CONSTANT, str)
    assert text == dumps_certificate(back, HEX, CONSTANT, str)


def test_replace_arc_in_subdivision():
    K = barycentric_subdivision(DISK)
    v = lambda *xs: frozenset(xs)  # noqa: E731
    loop = []
    for k in range(6):
        a, b = HEX[k], HEX[(k + 1) % 6]
        loop += [v(a), v(a, b)]
    B = CertificateBuilder(K, loop)
    # swap the arc {0}, {0,1}, {1} for the path through the centre
    B.replace_arc(0, 2, [v(0), v("o", 0), v("o"), v("o", 1), v(1)], v("o", 0, 1))
    assert B.loop[:5] == [v(0), v("o", 0), v("o"), v("o", 1), v(1)]
    check_certificate(K, loop, B.loop, B.certificate)


def test_free_reduce():
    K = Complex([(0, 1), (1, 2)])
    B = CertificateBuilder(K, [0, 1, 2, 1, 1, 0, 1])
    B.free_reduce()
    assert len(B.loop) == 1
    check_certificate(K, [0, 1, 2, 1, 1, 0, 1], CONSTANT, B.certificate)


def test_builder_refuses_missing_simplex():
    B = CertificateBuilder(RING, HEX)
    with pytest.raises(CertificateError):
        B.insert(0, 3)
