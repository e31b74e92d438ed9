import itertools
import math

import pytest

from curvecomplex.complexes import CurveBall, build_ht_graph, enumerate_cells, is_cut_system
from curvecomplex.triangulation import build_standard_triangulation


def torus_slope(p: int, q: int) -> tuple:
    """Normal coordinates of the (p, q) curve on the standard genus-1 triangulation.

    Edges a1, b1, d2 have slopes (1, 0), (0, 1), (1, 1); a curve of slope
    (p, q) meets a straight edge of slope (r, s) |ps - qr| times.
    """
    return (abs(q), abs(p), abs(p - q))


def primitive_slopes(bound: int):
    """Slopes (p, q) up to sign with gcd 1 and max(|p|, |q|) <= bound."""
    out = []
    for p in range(0, bound + 1):
        for q in range(-bound, bound + 1):
            if math.gcd(p, q) != 1:
                continue
            if p == 0 and q < 0:
                continue
            out.append((p, q))
    return out


@pytest.fixture(scope="session")
def T1():
    return build_standard_triangulation(1)


@pytest.fixture(scope="session")
def T2():
    return build_standard_triangulation(2)


@pytest.fixture(scope="session")
def T3():
    return build_standard_triangulation(3)


@pytest.fixture(scope="session")
def ball2_8(T2):
    return CurveBall(T2, 8)


@pytest.fixture(scope="session")
def ball2_10(T2):
    return CurveBall(T2, 10)


@pytest.fixture(scope="session")
def ball2_12(T2):
    return CurveBall(T2, 12)


@pytest.fixture(scope="session")
def ball3_10(T3):
    return CurveBall(T3, 10)


def lightest_cut_system(ball):
    g = ball.T.genus
    for S in itertools.combinations(ball.nonseparating, g):
        if is_cut_system(ball.T, S, ball):
            return frozenset(S)
    return None


@pytest.fixture(scope="session")
def ht2(T2, ball2_10):
    """The genus-2 ball of the cut-system graph used throughout: weight 10, radius 2."""
    G = build_ht_graph(T2, lightest_cut_system(ball2_10), 2, ball=ball2_10)
    enumerate_cells(G)
    return G


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
