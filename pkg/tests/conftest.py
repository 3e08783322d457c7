from __future__ import annotations

import pytest

from skeleta.generators import gen_cube, gen_cycle, gen_k1, gen_product, gen_simplex
from skeleta.search import SearchSpec, search

# Witness searches reused by several test modules.
OBSTRUCTED_SPEC = dict(k=3, n=6, vertex_counts=[4], independence="not-2-independent",
                       target="obstructed", f="s2*s3", seed=0)
NO_EXTENSION_SPEC = dict(k=3, n=4, vertex_counts=[2, 3, 4], independence="at-least", level=3,
                         target="no-face-extension", face_dim=3, seed=0)
DISCONNECTED_SPEC = dict(k=3, n=3, vertex_counts=[4, 6], independence="at-least", level=3,
                         target="disconnected-face-intersection", face_dim=2, min_connectivity=3, seed=0)


def nn_corpus():
    """Type (n, n) skeletons used across the duality and poset tests."""
    out = {f"simplex{n}": gen_simplex(n) for n in range(2, 6)}
    out.update({f"cube{n}": gen_cube(n) for n in range(2, 6)})
    out["simplex2xsimplex2"] = gen_product(gen_simplex(2), gen_simplex(2))
    out["cube2xsimplex2"] = gen_product(gen_cube(2), gen_simplex(2))
    out["simplex3xcube1"] = gen_product(gen_simplex(3), gen_cube(1))
    return out


@pytest.fixture(scope="session")
def corpus():
    return nn_corpus()


@pytest.fixture(scope="session")
def k5():
    return gen_simplex(4)


@pytest.fixture(scope="session")
def q4():
    return gen_cube(4)


@pytest.fixture(scope="session")
def k3_single_color():
    return gen_k1("abc", [("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")])


@pytest.fixture(scope="session")
def c4():
    return gen_cycle(4)


@pytest.fixture(scope="session")
def obstructed_witness():
    return search(SearchSpec(**OBSTRUCTED_SPEC))


@pytest.fixture(scope="session")
def no_extension_witness():
    return search(SearchSpec(**NO_EXTENSION_SPEC))


@pytest.fixture(scope="session")
def disconnected_witness():
    return search(SearchSpec(**DISCONNECTED_SPEC))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
