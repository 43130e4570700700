import random
from fractions import Fraction

import pytest

from resipoly import fixtures


@pytest.fixture(scope="session")
def fig1():
    return fixtures.load("fig1")


@pytest.fixture(scope="session")
def fig2():
    return fixtures.load("fig2")


@pytest.fixture(scope="session")
def k4():
    return fixtures.load("k4")


@pytest.fixture(scope="session")
def c3():
    return fixtures.load("c3")


@pytest.fixture(scope="session")
def loop1():
    return fixtures.load("loop1")


def rng(seed):
    return random.Random(seed)


def fraction_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def reference_rank(rows):
    """Plain rational Gaussian elimination, independent of the package's
    integer echelon path."""
    mat = fraction_rows(rows)
    if not mat:
        return 0
    cols = len(mat[0])
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        for i in range(r + 1, len(mat)):
            if mat[i][c] != 0:
                f = mat[i][c] / mat[r][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r
