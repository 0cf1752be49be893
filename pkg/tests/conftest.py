"""Shared test fixtures and an independent exhaustive reference.

exhaustive_minimum enumerates the half-cube with plain Python loops so
oracle and solver results can be checked against arithmetic that shares
no code with the package.
"""

import itertools

import numpy as np
import pytest

from plantbench import build_couplings, catalogue_pattern_set


def exhaustive_minimum(j):
    """Reference (energy, state, degeneracy) by explicit enumeration.

    The first spin is fixed to +1, matching the package convention of
    reporting one representative per mirror pair.
    """
    j = np.asarray(j, dtype=np.float64)
    n = j.shape[0]
    best_e = np.inf
    best_x = None
    degeneracy = 0
    for bits in itertools.product((1.0, -1.0), repeat=n - 1):
        x = np.array((1.0,) + bits)
        e = float(-0.5 * (x @ (j @ x)))
        if e < best_e:
            best_e = e
            best_x = x.astype(np.int8)
            degeneracy = 1
        elif e == best_e:
            degeneracy += 1
    return best_e, best_x, degeneracy


def random_symmetric(n, seed, integer=False):
    """Random symmetric zero-diagonal coupling matrix."""
    rng = np.random.default_rng(seed)
    if integer:
        j = rng.integers(-4, 5, size=(n, n)).astype(np.float64)
    else:
        j = rng.standard_normal((n, n))
    j = np.triu(j, k=1)
    return j + j.T


@pytest.fixture(scope="session")
def catalogue_instances():
    """All seven catalogue instances, built once per session."""
    return {
        ident: build_couplings(catalogue_pattern_set(ident), label=f"small-{ident}")
        for ident in ("a", "b", "b*", "c", "d", "e", "f")
    }
