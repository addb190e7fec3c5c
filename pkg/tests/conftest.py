"""Shared builders for the test suite."""

import pytest

from eigenchain import ChainComplex, GradedMap, Matrix, ZZ, scalar_object


def triangle_boundary(ring):
    """Boundary matrix of the three edges of a triangle, vertex basis."""
    return Matrix(ring, [[-1, 0, 1], [1, -1, 0], [0, 1, -1]])


def circle_complex():
    """The circle as a triangle, 0-chains in the adapted basis.

    Basis of the degree-0 part: [A], [B]-[A], [C]-[B]; edges in their
    standard order upstairs.  Internal cochain degrees -1 (edges) and 0.
    """
    d = Matrix(ZZ, [[0, 0, 0], [1, 0, -1], [0, 1, -1]])
    return ChainComplex(ZZ, "cochain", {-1: 3, 0: 3}, {-1: d})


def circle_pair():
    """The worked scalar object and eigenmap for the circle."""
    f = circle_complex()
    lam = scalar_object(ZZ, {-1: 1, 0: 1})
    alpha = GradedMap(
        lam,
        f,
        0,
        {-1: Matrix(ZZ, [[1], [1], [1]]), 0: Matrix(ZZ, [[1], [0], [0]])},
    )
    return f, lam, alpha


@pytest.fixture
def circle():
    return circle_complex()


@pytest.fixture
def circle_with_pair():
    return circle_pair()
