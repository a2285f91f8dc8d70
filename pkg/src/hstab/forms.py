"""(epsilon, Lambda)-quadratic modules over the integers.

A quadratic module is stored on a basis: the Gram matrix of the
epsilon-symmetric form ``lam`` and the values of the quadratic refinement
``alpha`` on the basis vectors.  ``alpha`` of an arbitrary vector is recovered
from the two rules alpha(a x) = a^2 alpha(x) and
alpha(x + y) = alpha(x) + alpha(y) + lam(x, y).

Only three subgroups Lambda of Z satisfy the form-parameter sandwich, so the
subgroup is a closed enum rather than a modulus.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from . import intmat
from .intmat import Matrix, Vector


class FormsError(ValueError):
    """Invalid quadratic-module data or a violated precondition."""


class SearchExhausted(RuntimeError):
    """No witness found within the coefficient bound (says nothing about existence)."""

    def __init__(self, bound: int, detail: str = ""):
        self.bound = bound
        super().__init__(f"no witness found with coefficients <= {bound}" + (f": {detail}" if detail else ""))


class Lam(Enum):
    TRIVIAL = "0"
    EVEN = "2Z"
    FULL = "Z"

    def reduce(self, value: int) -> int:
        """Canonical representative of ``value`` in Z/Lambda."""
        if self is Lam.TRIVIAL:
            return value
        if self is Lam.EVEN:
            return value % 2
        return 0

    def contains(self, value: int) -> bool:
        return self.reduce(value) == 0


def validate_form_parameter(epsilon: int, lam: Lam) -> bool:
    """Check {a - eps a} <= Lambda <= {a : a + eps a = 0}."""
    if epsilon not in (1, -1):
        return False
    # lower bound {a - eps*a} is {0} for eps=+1 and 2Z for eps=-1
    lower_ok = epsilon == 1 or lam in (Lam.EVEN, Lam.FULL)
    # upper bound {a : a + eps*a = 0} is {0} for eps=+1 and Z for eps=-1
    upper_ok = epsilon == -1 or lam is Lam.TRIVIAL
    return lower_ok and upper_ok


@dataclass(frozen=True)
class FormParameter:
    epsilon: int
    lam: Lam

    def __post_init__(self):
        if not validate_form_parameter(self.epsilon, self.lam):
            raise FormsError(f"({self.epsilon}, {self.lam.value}) is not a form parameter")


def lambda_n(n: int) -> FormParameter:
    """Form parameter ((-1)^n, Lambda_n) attached to (n-1)-connected 2n-manifolds."""
    if n <= 0:
        raise FormsError(f"n must be positive, got {n}")
    if n % 2 == 0:
        return FormParameter(1, Lam.TRIVIAL)
    if n in (1, 3, 7):
        return FormParameter(-1, Lam.FULL)
    return FormParameter(-1, Lam.EVEN)


@dataclass(frozen=True)
class QuadraticModule:
    param: FormParameter
    gram: tuple[tuple[int, ...], ...]
    alpha: tuple[int, ...]

    def __post_init__(self):
        gram = tuple(tuple(int(v) for v in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "alpha", tuple(int(v) for v in self.alpha))
        n = len(gram)
        if any(len(row) != n for row in gram) or len(self.alpha) != n:
            raise FormsError("gram must be square and alpha must have one entry per basis vector")
        eps = self.param.epsilon
        for i in range(n):
            for j in range(n):
                if gram[j][i] != eps * gram[i][j]:
                    raise FormsError(f"gram is not {eps:+d}-symmetric at ({i}, {j})")
        for i in range(n):
            a = self.alpha[i]
            if a != self.param.lam.reduce(a):
                raise FormsError(f"alpha[{i}] = {a} is not a canonical residue mod {self.param.lam.value}")
            if eps == 1:
                if gram[i][i] % 2 or a != gram[i][i] // 2:
                    raise FormsError("for epsilon=+1 the diagonal must be even and alpha = diag/2")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def epsilon(self) -> int:
        return self.param.epsilon

    @property
    def lam_subgroup(self) -> Lam:
        return self.param.lam

    def form(self, x: Sequence[int], y: Sequence[int]) -> int:
        return intmat.bilinear(x, self.gram, y)

    def gram_matrix(self) -> Matrix:
        return [list(r) for r in self.gram]


def _check_dim(M: QuadraticModule, x: Sequence[int]) -> None:
    if len(x) != M.rank:
        raise FormsError(f"vector of length {len(x)} does not live in a rank-{M.rank} module")


def alpha_eval(M: QuadraticModule, x: Sequence[int]) -> int:
    _check_dim(M, x)
    total = 0
    for i, a in enumerate(x):
        if not a:
            continue
        total += a * a * M.alpha[i]
        row = M.gram[i]
        for j in range(i + 1, M.rank):
            if x[j] and row[j]:
                total += a * x[j] * row[j]
    return M.param.lam.reduce(total)


def is_nondegenerate(M: QuadraticModule) -> bool:
    return abs(intmat.det(M.gram)) == 1


def hyperbolic(g: int, param: FormParameter) -> QuadraticModule:
    """H^{+g} on the basis e_1, f_1, ..., e_g, f_g."""
    if g < 0:
        raise FormsError("g must be non-negative")
    block = [[0, 1], [param.epsilon, 0]]
    return QuadraticModule(param, intmat.block_diagonal([block] * g), (0,) * (2 * g))


def direct_sum(M: QuadraticModule, N: QuadraticModule) -> QuadraticModule:
    if M.param != N.param:
        raise FormsError("cannot sum modules with different form parameters")
    return QuadraticModule(M.param, intmat.block_diagonal([M.gram, N.gram]), M.alpha + N.alpha)


@dataclass(frozen=True)
class ModuleMorphism:
    domain: QuadraticModule
    codomain: QuadraticModule
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.codomain.rank or any(len(row) != self.domain.rank for row in m):
            raise FormsError(
                f"morphism matrix must be {self.codomain.rank}x{self.domain.rank}"
            )

    def column(self, j: int) -> Vector:
        return [row[j] for row in self.matrix]

    def apply(self, x: Sequence[int]) -> Vector:
        _check_dim(self.domain, x)
        return intmat.matvec(self.matrix, x)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.domain.rank)]


def identity_morphism(M: QuadraticModule) -> ModuleMorphism:
    return ModuleMorphism(M, M, intmat.identity(M.rank))


def compose(second: ModuleMorphism, first: ModuleMorphism) -> ModuleMorphism:
    """second ∘ first."""
    if first.codomain != second.domain:
        raise FormsError("morphisms are not composable")
    mat = intmat.matmul(second.matrix, first.matrix, inner=second.domain.rank, cols=first.domain.rank)
    if not mat:
        mat = []
    return ModuleMorphism(first.domain, second.codomain, mat)


def check_morphism(f: ModuleMorphism) -> bool:
    """True iff f is a lam-isometry with alpha_N ∘ f = alpha_M.

    Checking alpha on a basis suffices: both sides obey the same
    quadratic rule once lam is preserved.
    """
    M, N = f.domain, f.codomain
    if M.param != N.param:
        return False
    cols = f.columns()
    for i in range(M.rank):
        for j in range(M.rank):
            if N.form(cols[i], cols[j]) != M.gram[i][j]:
                return False
    return all(alpha_eval(N, cols[i]) == M.alpha[i] for i in range(M.rank))


def is_isomorphism(f: ModuleMorphism) -> bool:
    return f.domain.rank == f.codomain.rank and check_morphism(f) and abs(intmat.det(f.matrix)) == 1


@dataclass(frozen=True, order=True)
class HyperbolicMorphism:
    """A morphism H -> M recorded by the images of e and f."""

    e: tuple[int, ...]
    f: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(int(v) for v in self.e))
        object.__setattr__(self, "f", tuple(int(v) for v in self.f))
        if len(self.e) != len(self.f):
            raise FormsError("e and f must have the same length")

    def vectors(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.e, self.f

    def max_coefficient(self) -> int:
        return intmat.max_abs([self.e, self.f])


def is_hyperbolic_morphism(M: QuadraticModule, h: HyperbolicMorphism) -> bool:
    _check_dim(M, h.e)
    return (
        M.form(h.e, h.e) == 0
        and M.form(h.f, h.f) == 0
        and M.form(h.e, h.f) == 1
        and alpha_eval(M, h.e) == 0
        and alpha_eval(M, h.f) == 0
    )


def as_morphism(M: QuadraticModule, h: HyperbolicMorphism) -> ModuleMorphism:
    mat = [[h.e[i], h.f[i]] for i in range(M.rank)]
    return ModuleMorphism(hyperbolic(1, M.param), M, mat)


def standard_copy(g: int, i: int) -> HyperbolicMorphism:
    """The i-th (0-based) standard copy of H inside H^{+g}."""
    e = [0] * (2 * g)
    f = [0] * (2 * g)
    e[2 * i] = 1
    f[2 * i + 1] = 1
    return HyperbolicMorphism(tuple(e), tuple(f))


def are_orthogonal(M: QuadraticModule, u: HyperbolicMorphism, v: HyperbolicMorphism) -> bool:
    return all(M.form(x, y) == 0 for x in u.vectors() for y in v.vectors())


def orthogonal_complement(M: QuadraticModule, embedding: ModuleMorphism) -> tuple[QuadraticModule, list[Vector]]:
    """The orthogonal complement of im(embedding), with its basis in HNF.

    Returns the restricted quadratic module and the basis vectors (in the
    coordinates of M).  The inputs must be non-degenerate so that
    M = im ⊕ complement.
    """
    if embedding.codomain != M:
        raise FormsError("embedding does not land in M")
    if not is_nondegenerate(M):
        raise FormsError("ambient module is degenerate")
    if not is_nondegenerate(embedding.domain):
        raise FormsError("embedded module is degenerate")
    if not check_morphism(embedding):
        raise FormsError("embedding is not a morphism of quadratic modules")
    k = embedding.domain.rank
    if k == 0:
        basis = [[1 if i == j else 0 for i in range(M.rank)] for j in range(M.rank)]
    else:
        # rows lam(im_i, -) as linear functionals
        A = [[sum(c[a] * M.gram[a][b] for a in range(M.rank)) for b in range(M.rank)]
             for c in embedding.columns()]
        basis = intmat.hnf_rows(intmat.integer_kernel(A, M.rank), M.rank)
    gram = [[M.form(x, y) for y in basis] for x in basis]
    alpha = [alpha_eval(M, x) for x in basis]
    return QuadraticModule(M.param, gram, alpha), basis


def coordinates(basis: Sequence[Sequence[int]], x: Sequence[int]) -> Vector:
    """Integer coordinates of x in a basis of a direct summand."""
    if not basis:
        if any(x):
            raise FormsError("vector is not in the span of the empty basis")
        return []
    cols = intmat.transpose(basis)
    y = intmat.solve_integer(cols, x)
    if y is None or intmat.matvec(cols, y) != list(x):
        raise FormsError("vector is not in the lattice spanned by the basis")
    return y


# --------------------------------------------------------------------------
# witnesses


def _swap_automorphism(M: QuadraticModule, u: HyperbolicMorphism, v: HyperbolicMorphism) -> ModuleMorphism:
    """The automorphism exchanging two orthogonal hyperbolic summands, fixing their complement."""
    two_h = hyperbolic(2, M.param)
    emb = ModuleMorphism(two_h, M, [[u.e[i], u.f[i], v.e[i], v.f[i]] for i in range(M.rank)])
    _, comp = orthogonal_complement(M, emb)
    src = [list(u.e), list(u.f), list(v.e), list(v.f)] + comp
    dst = [list(v.e), list(v.f), list(u.e), list(u.f)] + comp
    B = intmat.transpose(src, M.rank)
    Bp = intmat.transpose(dst, M.rank)
    F = intmat.matmul(Bp, intmat.inverse(B))
    return ModuleMorphism(M, M, F)


def _box(bound: int, width: int) -> np.ndarray:
    vals = np.arange(-bound, bound + 1, dtype=np.int64)
    if width == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.array(list(itertools.product(vals, repeat=width)), dtype=np.int64)
    return grid


def _vec_alpha(M: QuadraticModule, X: np.ndarray) -> np.ndarray:
    G = np.array(M.gram, dtype=np.int64).reshape(M.rank, M.rank)
    upper = np.triu(G, 1)
    vals = (X * X) @ np.array(M.alpha, dtype=np.int64) + np.einsum("ni,ij,nj->n", X, upper, X)
    lam = M.param.lam
    if lam is Lam.EVEN:
        return vals % 2
    if lam is Lam.FULL:
        return np.zeros_like(vals)
    return vals


def _lexsort_rows(X: np.ndarray) -> np.ndarray:
    if X.shape[0] == 0:
        return X
    order = np.lexsort(X.T[::-1])
    return X[order]


def _guard_int64(M: QuadraticModule, bound: int) -> None:
    gmax = max((abs(v) for row in M.gram for v in row), default=0) + max((abs(a) for a in M.alpha), default=0)
    if (bound * bound * max(M.rank, 1) ** 2 * max(gmax, 1)) >= 2 ** 62:
        raise FormsError("search box too large for 64-bit vectorised evaluation")


def isotropic_solutions(M: QuadraticModule, constraints: Sequence[Sequence[int]], bound: int) -> np.ndarray:
    """All x with ||x||_inf <= bound, lam(c, x) = 0 for each c in constraints, alpha(x) = 0.

    Sorted lexicographically.  Meet-in-the-middle on the linear constraints.
    """
    _guard_int64(M, bound)
    r = M.rank
    G = np.array(M.gram, dtype=np.int64).reshape(r, r)
    A = np.array(constraints, dtype=np.int64).reshape(len(constraints), r) @ G  # rows lam(c, -)
    h = r // 2
    left, right = _box(bound, h), _box(bound, r - h)
    kl = left @ A[:, :h].T
    kr = -(right @ A[:, h:].T)
    index: dict[bytes, list[int]] = {}
    for i, key in enumerate(map(np.ndarray.tobytes, np.ascontiguousarray(kl))):
        index.setdefault(key, []).append(i)
    li, ri = [], []
    for j, key in enumerate(map(np.ndarray.tobytes, np.ascontiguousarray(kr))):
        hits = index.get(key)
        if hits:
            li.extend(hits)
            ri.extend([j] * len(hits))
    if not li:
        return np.zeros((0, r), dtype=np.int64)
    X = np.hstack([left[li], right[ri]])
    X = X[_vec_alpha(M, X) == 0]
    if M.epsilon == 1:
        X = X[np.einsum("ni,ij,nj->n", X, G, X) == 0]
    return _lexsort_rows(X)


def _first_pair(M: QuadraticModule, X: np.ndarray, skip=None) -> HyperbolicMorphism | None:
    """Lexicographically first (x, y) from the rows of X with lam(x, y) = 1."""
    if X.shape[0] == 0:
        return None
    G = np.array(M.gram, dtype=np.int64).reshape(M.rank, M.rank)
    for x in X:
        vals = X @ (G.T @ x)
        hits = np.nonzero(vals == 1)[0]
        for j in hits:
            cand = HyperbolicMorphism(tuple(int(v) for v in x), tuple(int(v) for v in X[j]))
            if skip is None or not skip(cand):
                return cand
    return None


def common_neighbour(M: QuadraticModule, vertices: Sequence[HyperbolicMorphism], bound: int,
                     exclude: Sequence[HyperbolicMorphism] = ()) -> HyperbolicMorphism | None:
    """Smallest hyperbolic morphism orthogonal to all ``vertices``.

    Ordered by max |coefficient| first, then lexicographically on (e, f).
    """
    cons = [list(v) for h in vertices for v in h.vectors()]
    excluded = set(exclude)
    for b in range(1, bound + 1):
        X = isotropic_solutions(M, cons, b)
        found = _first_pair(M, X, skip=lambda c: c in excluded)
        if found is not None:
            return found
    return None


def _neighbours(M: QuadraticModule, v: HyperbolicMorphism, bound: int, limit: int) -> list[HyperbolicMorphism]:
    cons = [list(v.e), list(v.f)]
    out: list[HyperbolicMorphism] = []
    seen = set()
    G = np.array(M.gram, dtype=np.int64).reshape(M.rank, M.rank)
    for b in range(1, bound + 1):
        X = isotropic_solutions(M, cons, b)
        for x in X:
            vals = X @ (G.T @ x)
            for j in np.nonzero(vals == 1)[0]:
                cand = HyperbolicMorphism(tuple(int(t) for t in x), tuple(int(t) for t in X[j]))
                if cand not in seen:
                    seen.add(cand)
                    out.append(cand)
                    if len(out) >= limit:
                        return out
                break
    return out


def find_chain(M: QuadraticModule, e0: HyperbolicMorphism, e1: HyperbolicMorphism, bound: int,
               max_length: int = 3, fanout: int = 64) -> list[HyperbolicMorphism]:
    """A path e0 = v_0, ..., v_k = e1 in K^a(M) with intermediate coefficients <= bound."""
    if e0 == e1:
        return [e0]
    if are_orthogonal(M, e0, e1):
        return [e0, e1]
    if max_length >= 2:
        w = common_neighbour(M, [e0, e1], bound)
        if w is not None:
            return [e0, w, e1]
    if max_length >= 3:
        for w1 in _neighbours(M, e0, bound, fanout):
            w2 = common_neighbour(M, [w1, e1], bound)
            if w2 is not None:
                return [e0, w1, w2, e1]
    raise SearchExhausted(bound, f"no path of length <= {max_length}")


def transitivity_witness(M: QuadraticModule, e0: HyperbolicMorphism, e1: HyperbolicMorphism,
                         bound: int) -> ModuleMorphism:
    """An automorphism f of M with f ∘ e0 = e1.

    Adjacent vertices of K^a are exchanged by a swap; along a path the swaps
    compose.  Existence is guaranteed for M = H^{+g}, g >= 5, but only for some
    coefficient bound; SearchExhausted reports that ``bound`` was too small.
    """
    if bound < 1:
        raise FormsError("bound must be positive")
    for h in (e0, e1):
        if not is_hyperbolic_morphism(M, h):
            raise FormsError(f"{h} is not a morphism H -> M")
    chain = find_chain(M, e0, e1, bound)
    F = identity_morphism(M)
    for u, v in zip(chain, chain[1:]):
        F = compose(_swap_automorphism(M, u, v), F)
    return F


def cancellation_witness(M: QuadraticModule, phi: ModuleMorphism, bound: int) -> ModuleMorphism:
    """An isomorphism M -> H^{+g} from an isomorphism phi: M ⊕ H -> H^{+(g+1)}.

    Follows the cancellation argument: move phi|_H onto the last standard
    copy by a transitivity witness, then restrict to orthogonal complements.
    """
    r = M.rank
    N = phi.codomain
    if phi.domain != direct_sum(M, hyperbolic(1, M.param)):
        raise FormsError("phi must be defined on M ⊕ H")
    if N.rank % 2 or N != hyperbolic(N.rank // 2, M.param):
        raise FormsError("phi must land in a hyperbolic module H^{+(g+1)}")
    if not is_isomorphism(phi):
        raise FormsError("phi is not an isomorphism of quadratic modules")
    g1 = N.rank // 2
    h = HyperbolicMorphism(tuple(phi.column(r)), tuple(phi.column(r + 1)))
    F = transitivity_witness(N, h, standard_copy(g1, g1 - 1), bound)
    moved = compose(F, phi)
    cols = moved.columns()[:r]
    if any(c[-2] or c[-1] for c in cols):
        raise RuntimeError("restriction does not land in the complement of the last copy")
    target = hyperbolic(g1 - 1, M.param)
    psi = ModuleMorphism(M, target, [[cols[j][i] for j in range(r)] for i in range(2 * (g1 - 1))])
    return psi
