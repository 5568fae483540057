"""Enumeration of monomials of a fixed degree in the four variables x, y, z, w."""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np


class MonomialIndexer:
    """Bijection between degree-``d`` exponent vectors and ``range(binom(d+3, 3))``.

    Exponents are listed in lexicographically decreasing order, so
    ``x**d`` comes first and ``w**d`` last.
    """

    def __init__(self, degree: int):
        if degree < 0:
            raise ValueError(f"degree must be nonnegative, got {degree}")
        self.degree = degree
        exps = [
            (a, b, c, degree - a - b - c)
            for a in range(degree, -1, -1)
            for b in range(degree - a, -1, -1)
            for c in range(degree - a - b, -1, -1)
        ]
        self.exponents = np.array(exps, dtype=np.int64).reshape(-1, 4)
        self.exponents.setflags(write=False)
        # the w exponent is implied, so (a, b, c) is enough to look up an index
        self._lookup = np.full((degree + 1,) * 3, -1, dtype=np.int64)
        self._lookup[self.exponents[:, 0], self.exponents[:, 1], self.exponents[:, 2]] = np.arange(len(exps))

    def __len__(self) -> int:
        return len(self.exponents)

    @property
    def size(self) -> int:
        return len(self.exponents)

    def index(self, exps) -> int | np.ndarray:
        """Index of one exponent vector, or an array of indices for an (n, 4) array."""
        e = np.asarray(exps, dtype=np.int64)
        if e.shape[-1] != 4:
            raise ValueError("exponent vectors have four entries")
        if np.any(e < 0) or np.any(e.sum(axis=-1) != self.degree):
            raise KeyError(f"not a degree-{self.degree} exponent vector: {exps!r}")
        idx = self._lookup[e[..., 0], e[..., 1], e[..., 2]]
        return int(idx) if idx.ndim == 0 else idx

    def exponent(self, i: int) -> tuple[int, int, int, int]:
        return tuple(int(v) for v in self.exponents[i])

    def __repr__(self):
        return f"MonomialIndexer(degree={self.degree}, size={self.size})"


@lru_cache(maxsize=64)
def indexer(degree: int) -> MonomialIndexer:
    return MonomialIndexer(degree)


def num_monomials(degree: int) -> int:
    return comb(degree + 3, 3) if degree >= 0 else 0
