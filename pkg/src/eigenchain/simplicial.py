"""Simplicial complexes and their boundary matrices.

Facets are closed under subsets; simplices are stored with sorted vertex
indices and the boundary of a simplex alternates signs over deleted
vertices.  That orientation convention is a choice made here: it
reproduces the expected homology of the bundled examples, and the
recorded basis labels let adapted-basis fixtures be matched explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import CHAIN, ChainComplex
from .errors import BadIndex, ValidationError
from .matrix import Matrix
from .rings import Ring


@dataclass
class SimplicialComplexData:
    """Vertex labels and the full simplex lists per dimension."""

    labels: list[str]
    simplices: dict[int, list[tuple[int, ...]]]

    def label_of(self, simplex: tuple[int, ...]) -> str:
        names = [self.labels[v] for v in simplex]
        joiner = "" if all(len(s) == 1 for s in names) else ","
        return "[" + joiner.join(names) + "]"

    def basis_labels(self) -> dict[int, list[str]]:
        return {k: [self.label_of(s) for s in simps] for k, simps in self.simplices.items()}


def close_simplicial(vertices, facets) -> SimplicialComplexData:
    """Validate input and close the facet list under subsets."""
    if isinstance(vertices, int):
        count = vertices
        labels = [str(i) for i in range(count)]
    else:
        labels = [str(v) for v in vertices]
        count = len(labels)
    if count < 0:
        raise ValidationError("negative vertex count")
    seen: dict[int, set[tuple[int, ...]]] = {}
    for facet in facets:
        if not facet:
            raise ValidationError("empty facet")
        idx = []
        for v in facet:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < count:
                raise BadIndex(f"vertex index {v!r} outside 0..{count - 1}")
            idx.append(v)
        if len(set(idx)) != len(idx):
            raise ValidationError(f"facet {facet} repeats a vertex")
        simplex = tuple(sorted(idx))
        for size in range(1, len(simplex) + 1):
            for face in combinations(simplex, size):
                seen.setdefault(size - 1, set()).add(face)
    simplices = {k: sorted(faces) for k, faces in seen.items()}
    return SimplicialComplexData(labels, simplices)


def simplicial_to_chain(vertices, facets, ring: Ring) -> tuple[ChainComplex, SimplicialComplexData]:
    """Chain-convention complex of a simplicial complex over ``ring``."""
    data = close_simplicial(vertices, facets)
    ranks = {k: len(simps) for k, simps in data.simplices.items()}
    index = {k: {s: i for i, s in enumerate(simps)} for k, simps in data.simplices.items()}
    diffs = {}
    for k, simps in data.simplices.items():
        if k == 0:
            continue
        rows = ranks[k - 1]
        grid = [[0] * len(simps) for _ in range(rows)]
        for j, simplex in enumerate(simps):
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1 :]
                sign = 1 if i % 2 == 0 else -1
                grid[index[k - 1][face]][j] += sign
        m = Matrix(ring, grid, cols=len(simps))
        if not m.is_zero():
            diffs[k] = m
    complex_ = ChainComplex(ring, CHAIN, ranks, diffs)
    return complex_, data
