"""Semisimplicial sets (face maps only) and their augmented variant."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .complex import ComplexError, SimplicialComplex


@dataclass(frozen=True)
class SemiSimplicialSet:
    """Levels S_0, S_1, ... with face tables.

    ``faces[p][i][k]`` is the index in level p-1 of d_i applied to the k-th
    element of level p (so ``faces[0]`` is empty).
    """

    levels: tuple[tuple[Hashable, ...], ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if len(self.faces) != len(self.levels):
            raise ComplexError("need one face table per level")
        for p, table in enumerate(self.faces):
            if len(table) != (p + 1 if p > 0 else 0):
                raise ComplexError(f"level {p} must have {p + 1} face maps")
            for d in table:
                if len(d) != len(self.levels[p]):
                    raise ComplexError(f"face map at level {p} has wrong length")
                if any(not 0 <= j < len(self.levels[p - 1]) for j in d):
                    raise ComplexError(f"face map at level {p} leaves level {p - 1}")

    @classmethod
    def from_face_function(cls, levels: Sequence[Sequence[Hashable]],
                           face: Callable[[int, Hashable], Hashable]) -> "SemiSimplicialSet":
        """Build tables from ``face(i, x)``, the i-th face of an element x."""
        lv = tuple(tuple(level) for level in levels)
        while lv and not lv[-1]:
            lv = lv[:-1]
        index = [{x: k for k, x in enumerate(level)} for level in lv]
        faces = []
        for p, level in enumerate(lv):
            if p == 0:
                faces.append(())
                continue
            try:
                faces.append(tuple(tuple(index[p - 1][face(i, x)] for x in level) for i in range(p + 1)))
            except KeyError as exc:
                raise ComplexError(f"face of a level-{p} element is missing from level {p - 1}: {exc}")
        return cls(lv, tuple(faces))

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def size(self, p: int) -> int:
        return len(self.levels[p]) if 0 <= p < len(self.levels) else 0

    def face(self, p: int, i: int, k: int) -> int:
        return self.faces[p][i][k]

    def identity_violations(self) -> list[tuple[int, int, int, int]]:
        """(p, i, j, k) where d_i d_j != d_{j-1} d_i on the k-th element of level p, i < j."""
        bad = []
        for p in range(2, len(self.levels)):
            for j in range(p + 1):
                for i in range(j):
                    dj, di_below = self.faces[p][j], self.faces[p - 1][i]
                    di, dj1_below = self.faces[p][i], self.faces[p - 1][j - 1]
                    for k in range(len(self.levels[p])):
                        if di_below[dj[k]] != dj1_below[di[k]]:
                            bad.append((p, i, j, k))
        return bad

    def satisfies_identities(self) -> bool:
        return not self.identity_violations()

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * len(level) for p, level in enumerate(self.levels))


@dataclass(frozen=True)
class AugmentedSemiSimplicialSet:
    base: SemiSimplicialSet
    augmentation_level: tuple[Hashable, ...]
    augmentation: tuple[int, ...]

    def __post_init__(self):
        if len(self.augmentation) != self.base.size(0):
            raise ComplexError("augmentation needs one value per 0-simplex")
        if any(not 0 <= j < len(self.augmentation_level) for j in self.augmentation):
            raise ComplexError("augmentation leaves S_{-1}")
        if self.base.size(1):
            d0, d1 = self.base.faces[1][0], self.base.faces[1][1]
            for k in range(self.base.size(1)):
                if self.augmentation[d0[k]] != self.augmentation[d1[k]]:
                    raise ComplexError("augmentation does not equalise d_0 and d_1")

    @classmethod
    def over_point(cls, base: SemiSimplicialSet) -> "AugmentedSemiSimplicialSet":
        return cls(base, ("*",), (0,) * base.size(0))

    def size(self, p: int) -> int:
        if p == -1:
            return len(self.augmentation_level)
        return self.base.size(p)


def associated_semisimplicial(K: SimplicialComplex) -> SemiSimplicialSet:
    """Ordered tuples of distinct vertices spanning simplices; d_i deletes entry i."""
    levels = []
    for p in range(K.dim + 1):
        level = sorted(perm for s in K.simplices_of_dim(p) for perm in itertools.permutations(s))
        levels.append(level)
    return SemiSimplicialSet.from_face_function(levels, lambda i, x: x[:i] + x[i + 1:])


def injective_words(m: int) -> SemiSimplicialSet:
    """The complex of injective words on the letters 1..m."""
    levels = [sorted(itertools.permutations(range(1, m + 1), p + 1)) for p in range(m)]
    return SemiSimplicialSet.from_face_function(levels, lambda i, x: x[:i] + x[i + 1:])


def ordered_simplex(n: int) -> SemiSimplicialSet:
    """Increasing tuples in 0..n: the semisimplicial n-simplex."""
    levels = [list(itertools.combinations(range(n + 1), p + 1)) for p in range(n + 1)]
    return SemiSimplicialSet.from_face_function(levels, lambda i, x: x[:i] + x[i + 1:])
