"""Degree bookkeeping for the classes κ_c: monomials in e and the Pontryagin
classes, their degrees shifted down by 2n, and the Hilbert series of the
polynomial algebra they generate."""

from __future__ import annotations

from dataclasses import dataclass


class MmmError(ValueError):
    pass


@dataclass(frozen=True)
class CharClassAlphabet:
    n: int

    def __post_init__(self):
        if self.n <= 2:
            raise MmmError("n must exceed 2")

    @property
    def generators(self) -> list[tuple[str, int]]:
        """e in degree 2n, then p_i in degree 4i for ceil((n+1)/4) <= i <= n-1."""
        lo = -(-(self.n + 1) // 4)
        return [("e", 2 * self.n)] + [(f"p{i}", 4 * i) for i in range(lo, self.n)]


def monomials(alphabet: CharClassAlphabet, max_degree: int) -> list[tuple[tuple[int, ...], int]]:
    """All (exponent vector, degree) with 0 < degree <= max_degree, ordered by (degree, exponents)."""
    gens = alphabet.generators
    out = []

    def rec(i: int, exps: list[int], deg: int) -> None:
        if i == len(gens):
            if deg > 0:
                out.append((tuple(exps), deg))
            return
        d = gens[i][1]
        k = 0
        while deg + k * d <= max_degree:
            rec(i + 1, exps + [k], deg + k * d)
            k += 1

    rec(0, [], 0)
    return sorted(out, key=lambda m: (m[1], m[0]))


def monomial_name(alphabet: CharClassAlphabet, exps: tuple[int, ...]) -> str:
    parts = []
    for (name, _), k in zip(alphabet.generators, exps):
        if k:
            parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts) or "1"


def generator_degrees(n: int, dmax: int) -> list[int]:
    """deg c - 2n for every monomial c with 2n < deg c <= dmax + 2n, sorted."""
    if dmax < 0:
        raise MmmError("dmax must be non-negative")
    alphabet = CharClassAlphabet(n)
    return sorted(d - 2 * n for _, d in monomials(alphabet, dmax + 2 * n) if d > 2 * n)


def hilbert_series(degrees: list[int], tmax: int) -> list[int]:
    """Coefficients of Π 1/(1 - t^d) through t^tmax."""
    if any(d <= 0 or d % 2 for d in degrees):
        raise MmmError("generator degrees must be positive and even")
    if tmax < 0:
        raise MmmError("tmax must be non-negative")
    coeffs = [1] + [0] * tmax
    for d in degrees:
        for t in range(d, tmax + 1):
            coeffs[t] += coeffs[t - d]
    return coeffs
