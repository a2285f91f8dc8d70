"""Three-valued connectivity verdicts and the weak Cohen–Macaulay check.

Homology certifies everything except π_1; when n ≥ 1 the fundamental group
is attacked by Tietze moves and otherwise left as unknown.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .complex import SimplicialComplex, link
from .homology import simplicial_homology
from .pi1 import simply_connected


class Verdict(enum.IntEnum):
    # ordered weakest first so min() picks the weakest verdict
    NO = 0
    HOM_YES_PI1_UNKNOWN = 1
    YES = 2

    @property
    def label(self) -> str:
        return {0: "No", 1: "HomYesPi1Unknown", 2: "Yes"}[self.value]


@dataclass(frozen=True)
class ConnectivityReport:
    verdict: Verdict
    n: int
    reason: str


def connectivity_report(K: SimplicialComplex, n: int, tietze_budget: int = 10_000) -> ConnectivityReport:
    """Is K n-connected?  Reduced homology through degree n, then π_1 if n ≥ 1."""
    if n <= -2:
        return ConnectivityReport(Verdict.YES, n, "every space is (-2)-connected")
    if K.is_empty():
        return ConnectivityReport(Verdict.NO, n, "empty complex")
    H = simplicial_homology(K, reduced=True, max_degree=n)
    for k in range(0, n + 1):
        if not H.is_zero(k):
            return ConnectivityReport(Verdict.NO, n, f"reduced H_{k} non-zero")
    if n < 1:
        return ConnectivityReport(Verdict.YES, n, "homology vanishes")
    if simply_connected(K, tietze_budget):
        return ConnectivityReport(Verdict.YES, n, "homology vanishes and π_1 presentation collapses")
    return ConnectivityReport(Verdict.HOM_YES_PI1_UNKNOWN, n, "homology vanishes, π_1 undecided")


@dataclass(frozen=True)
class WcmResult:
    verdict: Verdict
    n: int
    certificate: tuple | None  # first simplex whose condition is weakest (() is K itself)
    reason: str


def wcm_check(K: SimplicialComplex, n: int, tietze_budget: int = 10_000) -> WcmResult:
    """K is (n-1)-connected and every p-simplex link is (n-p-2)-connected."""
    rep = connectivity_report(K, n - 1, tietze_budget)
    worst = WcmResult(rep.verdict, n, None if rep.verdict == Verdict.YES else (), rep.reason)
    if rep.verdict == Verdict.NO:
        return worst
    for p in range(0, K.dim + 1):
        level = n - p - 2
        if level <= -2:
            break
        for sigma in K.simplices_of_dim(p):
            r = connectivity_report(link(K, sigma), level, tietze_budget)
            if r.verdict < worst.verdict:
                worst = WcmResult(r.verdict, n, sigma, f"link of {sigma}: {r.reason} (needed {level}-connected)")
                if r.verdict == Verdict.NO:
                    return worst
    return worst
