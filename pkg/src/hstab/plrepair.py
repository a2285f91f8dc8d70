"""Repairing a simplicial map on a triangulated disk until it is injective on
every simplex meeting the interior.

The map h sends disk vertices to vertices of a target complex X.  A simplex
of the disk is *bad* when each of its vertices shares its image with another
vertex of the same simplex.  Repair picks a bad simplex σ of maximal
dimension that is not contained in the boundary, removes its open star, and
glues in ∂σ * C, where C is a triangulated cone on Lk(σ) mapped into
Lk_X(h(σ)).  Boundary values never change.

Cone fillings come from an oracle; :func:`cone_extension_oracle` handles
cones of dimension 0, 1 and 2 and anything else can be plugged in.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Sequence

from .scomplex import SimplicialComplex, SimplicialMap, link
from .scomplex.connectivity import Verdict, wcm_check


class RepairError(RuntimeError):
    pass


class OracleFailure(RepairError):
    pass


class StepBudgetExceeded(RepairError):
    pass


class DiskError(ValueError):
    pass


# --------------------------------------------------------------------------
# disks


@dataclass(frozen=True)
class TriangulatedDisk:
    complex: SimplicialComplex
    boundary: SimplicialComplex
    n: int

    def __post_init__(self):
        problems = disk_problems(self)
        if problems:
            raise DiskError("; ".join(problems[:3]))

    @property
    def interior_vertices(self) -> list:
        b = set(self.boundary.vertices)
        return [v for v in self.complex.vertices if v not in b]

    def is_boundary_simplex(self, sigma) -> bool:
        return tuple(sorted(sigma)) in self.boundary.simplices


def disk_problems(D: TriangulatedDisk) -> list[str]:
    """Combinatorial disk checks; an empty list means the disk is valid."""
    K, B, n = D.complex, D.boundary, D.n
    out = []
    if n not in (1, 2):
        if not B.simplices <= K.simplices:
            out.append("boundary is not a subcomplex")
        return out
    if not B.simplices <= K.simplices:
        return ["boundary is not a subcomplex"]
    if K.full_subcomplex(B.vertices) != B:
        out.append("boundary is not a full subcomplex")
    if K.dim != n or any(len(f) != n + 1 for f in K.facets):
        out.append(f"complex is not pure of dimension {n}")
    if K.euler_characteristic() != 1:
        out.append("Euler characteristic is not 1")
    interior = set(K.vertices) - set(B.vertices)
    if n == 1:
        if len(B.vertices) != 2 or B.dim != 0:
            out.append("boundary of an interval must be two points")
        for v in K.vertices:
            want = 2 if v in interior else 1
            if len(K.neighbours(v)) != want:
                out.append(f"vertex {v} has degree {len(K.neighbours(v))}, expected {want}")
        return out
    for e in K.simplices_of_dim(1):
        count = len(K.cofaces(e)) - 1
        want = 1 if e in B.simplices else 2
        if count != want:
            out.append(f"edge {e} lies in {count} triangles, expected {want}")
    if B.dim != 1 or any(len(B.neighbours(v)) != 2 for v in B.vertices):
        out.append("boundary is not a cycle")
    for v in interior:
        L = link(K, (v,))
        if any(len(L.neighbours(w)) != 2 for w in L.vertices) or not _connected(L):
            out.append(f"link of interior vertex {v} is not a cycle")
    return out


def _connected(K: SimplicialComplex) -> bool:
    if K.is_empty():
        return False
    seen = {K.vertices[0]}
    todo = [K.vertices[0]]
    while todo:
        v = todo.pop()
        for w in K.neighbours(v):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(K.vertices)


def interval(interior: int) -> TriangulatedDisk:
    """Path 0 - 1 - ... - (interior + 1) with the two ends as boundary."""
    if interior < 1:
        raise DiskError("an interval with full boundary needs an interior vertex")
    k = interior + 1
    K = SimplicialComplex([(i,) for i in range(k + 1)] + [(i, i + 1) for i in range(k)])
    return TriangulatedDisk(K, SimplicialComplex([(0,), (k,)]), 1)


def fan_disk(k: int) -> TriangulatedDisk:
    """k-gon on vertices 0..k-1 coned from the interior vertex k."""
    if k < 3:
        raise DiskError("a polygon needs at least 3 sides")
    tris = [(i, (i + 1) % k, k) for i in range(k)]
    B = SimplicialComplex([(i,) for i in range(k)] + [(i, (i + 1) % k) for i in range(k)])
    from .scomplex import closure
    return TriangulatedDisk(closure(tris), B, 2)


def square_grid_disk(m: int) -> TriangulatedDisk:
    """m×m grid of unit squares, each coned from a centre vertex."""
    from .scomplex import closure
    vid = lambda i, j: i * (m + 1) + j
    centre = (m + 1) ** 2
    tris = []
    for i in range(m):
        for j in range(m):
            ring = [vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)]
            c = centre + i * m + j
            tris += [(ring[t], ring[(t + 1) % 4], c) for t in range(4)]
    ring = [vid(0, j) for j in range(m)] + [vid(i, m) for i in range(m)] + \
           [vid(m, j) for j in range(m, 0, -1)] + [vid(i, 0) for i in range(m, 0, -1)]
    B = SimplicialComplex([(v,) for v in ring] + [tuple(sorted((ring[t], ring[(t + 1) % len(ring)])))
                                                 for t in range(len(ring))])
    return TriangulatedDisk(closure(tris), B, 2)


def boundary_cycle(D: TriangulatedDisk) -> list:
    """Boundary vertices of a 2-disk in cyclic order starting from the smallest."""
    B = D.boundary
    start = B.vertices[0]
    cyc = [start]
    prev, cur = None, start
    while True:
        nxt = [w for w in B.neighbours(cur) if w != prev]
        w = min(nxt) if prev is None else nxt[0]
        if w == start:
            return cyc
        cyc.append(w)
        prev, cur = cur, w


# --------------------------------------------------------------------------
# bad simplices


def is_bad(sigma: Sequence, h: Mapping, rule: str = "every") -> bool:
    """``every``: each vertex has a partner with the same image; ``any``: some vertex does."""
    images = [h[v] for v in sigma]
    counts: dict = {}
    for y in images:
        counts[y] = counts.get(y, 0) + 1
    if rule == "every":
        return len(sigma) > 1 and all(counts[y] > 1 for y in images)
    if rule == "any":
        return any(c > 1 for c in counts.values())
    raise ValueError(f"unknown rule {rule!r}")


@dataclass
class RepairState:
    disk: TriangulatedDisk
    target: SimplicialComplex
    h: dict
    next_vertex: int
    boundary_values: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.boundary_values:
            self.boundary_values = {v: self.h[v] for v in self.disk.boundary.vertices}

    @property
    def map(self) -> SimplicialMap:
        return SimplicialMap(self.disk.complex, self.target, self.h)

    def fresh(self) -> int:
        v = self.next_vertex
        self.next_vertex += 1
        return v


def new_state(disk: TriangulatedDisk, target: SimplicialComplex, h: Mapping) -> RepairState:
    SimplicialMap(disk.complex, target, h)  # validates
    ints = [v for v in disk.complex.vertices if isinstance(v, int)]
    return RepairState(disk, target, dict(h), max(ints, default=-1) + 1)


def find_bad_simplices(state: RepairState, rule: str = "every") -> list[tuple]:
    """Bad simplices not contained in the boundary, by dimension (descending) then lexicographically."""
    out = [s for s in state.disk.complex.simplices
           if not state.disk.is_boundary_simplex(s) and is_bad(s, state.h, rule)]
    return sorted(out, key=lambda s: (-len(s), s))


def bad_measure(state: RepairState) -> tuple[int, ...]:
    """Interior bad-simplex counts from the top dimension down to edges."""
    counts = [0] * (state.disk.n + 1)
    for s in find_bad_simplices(state):
        counts[len(s) - 1] += 1
    return tuple(reversed(counts[1:]))


def interior_link_condition(state: RepairState) -> bool:
    """h(Lk v) ⊂ Lk(h v) for every interior vertex v."""
    X = state.target
    for v in state.disk.interior_vertices:
        Lx = link(X, (state.h[v],)).simplices
        for t in link(state.disk.complex, (v,)).simplices:
            if tuple(sorted({state.h[w] for w in t})) not in Lx:
                return False
    return True


# --------------------------------------------------------------------------
# cone oracles


@dataclass
class ConeFilling:
    """A triangulated cone on L: its simplices (new ones, touching fresh vertices) and their images."""

    simplices: list[tuple]
    values: dict  # fresh vertex -> target vertex
    cost: int


Oracle = Callable[[SimplicialComplex, Mapping, SimplicialComplex, Callable[[], Hashable]], ConeFilling]


def _bfs_path(X: SimplicialComplex, a, b) -> list | None:
    prev = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            path = [v]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for w in X.neighbours(v):
            if w not in prev:
                prev[w] = v
                queue.append(w)
    return None


def _walk_with_interior(X: SimplicialComplex, y1, y2) -> list | None:
    """y1 = w_0, ..., w_k = y2 with k >= 2, consecutive values distinct and adjacent."""
    if y1 == y2:
        nb = X.neighbours(y1)
        return [y1, nb[0], y1] if nb else None
    path = _bfs_path(X, y1, y2)
    if path is None:
        return None
    if len(path) >= 3:
        return path
    common = sorted(set(X.neighbours(y1)) & set(X.neighbours(y2)))
    if common:
        return [y1, common[0], y2]
    return [y1, y2, y1, y2]


def fill_polygon(cycle: Sequence, h: Mapping, X: SimplicialComplex, budget: int, fresh: Callable[[], Hashable],
                 *, strict: bool = True, allow_chords: bool = True) -> ConeFilling:
    """Triangulate a polygon with labelled corners by a disk mapped simplicially into X.

    Iterative deepening on the number of interior vertices (at most ``budget``).
    ``strict`` forbids edges touching an interior vertex from collapsing;
    ``allow_chords=False`` forbids edges and triangles spanned by corners only,
    keeping the polygon a full subcomplex.
    """
    corners = list(cycle)
    cset = set(corners)
    k = len(corners)
    labels = sorted(X.vertices)
    nodes = 0

    def tri_ok(tri, lab) -> bool:
        if tuple(sorted({lab[v] for v in tri})) not in X.simplices:
            return False
        if strict:
            for u, v in itertools.combinations(tri, 2):
                if (u not in cset or v not in cset) and lab[u] == lab[v]:
                    return False
        if not allow_chords and all(v in cset for v in tri) and k > 3:
            return False
        return True

    def edge_ok(u, v, edges) -> bool:
        e = frozenset((u, v))
        if e in edges:
            return False
        return allow_chords or not (u in cset and v in cset)

    def search(pending, edges, tris, lab, new, limit):
        nonlocal nodes
        nodes += 1
        if not pending:
            return tris, new, lab
        P, rest = pending[0], pending[1:]
        if len(P) == 3:
            if not tri_ok(P, lab) or (not allow_chords and all(v in cset for v in P)):
                return None
            return search(rest, edges, tris + [tuple(P)], lab, new, limit)
        a, b = P[0], P[1]
        m = len(P)
        for j in range(2, m):
            c = P[j]
            if not tri_ok((a, b, c), lab):
                continue
            add = []
            if j != 2:
                if not edge_ok(b, c, edges):
                    continue
                add.append(frozenset((b, c)))
            if j != m - 1:
                if not edge_ok(c, a, edges):
                    continue
                add.append(frozenset((c, a)))
            if len(set(add)) != len(add):
                continue
            parts = [q for q in (P[1:j + 1], P[j:] + [a]) if len(q) >= 3]
            found = search(parts + rest, edges | set(add), tris + [(a, b, c)], lab, new, limit)
            if found:
                return found
        if len(new) < limit:
            c = ("new", len(new))
            for y in labels:
                lab2 = dict(lab)
                lab2[c] = y
                if not tri_ok((a, b, c), lab2):
                    continue
                found = search([[c] + P[1:] + [a]] + rest,
                               edges | {frozenset((a, c)), frozenset((b, c))},
                               tris + [(a, b, c)], lab2, new + [c], limit)
                if found:
                    return found
        return None

    lab0 = {v: h[v] for v in corners}
    edges0 = {frozenset((corners[i], corners[(i + 1) % k])) for i in range(k)}
    start = 0 if allow_chords else 1
    for limit in range(start, budget + 1):
        found = search([corners], edges0, [], lab0, [], limit)
        if found:
            tris, new, lab = found
            rename = {c: fresh() for c in new}
            tris = [tuple(rename.get(v, v) for v in t) for t in tris]
            old = {(v,) for v in corners} | {tuple(sorted(e)) for e in edges0}
            simps = sorted({f for t in tris for r in (1, 2, 3) for f in itertools.combinations(sorted(t), r)}
                           - old)
            return ConeFilling(simps, {rename[c]: lab[c] for c in new}, nodes)
    raise OracleFailure(f"no filling of the {k}-gon with <= {budget} interior vertices")


def _cycle_order(L: SimplicialComplex) -> list:
    start = L.vertices[0]
    cyc, prev, cur = [start], None, start
    while True:
        nxt = [w for w in L.neighbours(cur) if w != prev]
        w = min(nxt) if prev is None else nxt[0]
        if w == start:
            return cyc
        cyc.append(w)
        prev, cur = cur, w


def cone_extension_oracle(L: SimplicialComplex, g: Mapping, target: SimplicialComplex,
                          fresh: Callable[[], Hashable], budget: int = 4) -> ConeFilling:
    """Extend g: L -> target over a triangulated cone on L, without interior collapses.

    L empty: a single cone point.  L = two points: a subdivided arc.  L a
    cycle: a polygon filling.  Other shapes raise :class:`OracleFailure`.
    """
    dim = L.dim + 1
    if dim == 0:
        if target.is_empty():
            raise OracleFailure("target link is empty")
        c = fresh()
        return ConeFilling([(c,)], {c: target.vertices[0]}, 1)
    if dim == 1:
        if len(L.vertices) != 2:
            raise OracleFailure("a 1-dimensional cone needs a 0-sphere")
        l1, l2 = L.vertices
        walk = _walk_with_interior(target, g[l1], g[l2])
        if walk is None:
            raise OracleFailure(f"{g[l1]} and {g[l2]} are not connected in the target link")
        chain = [l1] + [fresh() for _ in walk[1:-1]] + [l2]
        values = {chain[i]: walk[i] for i in range(1, len(chain) - 1)}
        simps = [(c,) for c in chain[1:-1]] + [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
        return ConeFilling(simps, values, len(walk))
    if dim == 2:
        if any(len(L.neighbours(v)) != 2 for v in L.vertices) or not _connected(L):
            raise OracleFailure("a 2-dimensional cone needs a cycle")
        return fill_polygon(_cycle_order(L), g, target, budget, fresh, strict=True, allow_chords=False)
    raise OracleFailure(f"no built-in oracle for cones of dimension {dim}")


# --------------------------------------------------------------------------
# the engine


@dataclass(frozen=True)
class StepRecord:
    removed: tuple
    image: tuple
    fresh: tuple
    cost: int
    measure_before: tuple[int, ...]
    measure_after: tuple[int, ...]

    def line(self, index: int) -> str:
        return (f"step {index}: removed {list(self.removed)} -> {list(self.image)}; "
                f"fresh {list(self.fresh)}; cost {self.cost}; "
                f"measure {list(self.measure_before)} -> {list(self.measure_after)}")


def _join_with_boundary(sigma: tuple, cone: list[tuple]) -> list[tuple]:
    faces = [f for r in range(0, len(sigma)) for f in itertools.combinations(sigma, r)]
    return [tuple(f) + tuple(c) for f in faces for c in cone]


def repair_step(state: RepairState, sigma: Sequence, oracle: Oracle | None = None,
                check: bool = True) -> tuple[RepairState, StepRecord]:
    oracle = oracle or cone_extension_oracle
    sigma = tuple(sorted(sigma))
    K = state.disk.complex
    if sigma not in K.simplices or state.disk.is_boundary_simplex(sigma):
        raise RepairError(f"{sigma} is not an interior simplex")
    if not is_bad(sigma, state.h):
        raise RepairError(f"{sigma} is not bad")
    before = bad_measure(state)
    top = next((len(s) for s in find_bad_simplices(state)), 0)
    if len(sigma) < top:
        raise RepairError(f"{sigma} is not of maximal dimension among interior bad simplices")

    L = link(K, sigma)
    image = tuple(sorted({state.h[v] for v in sigma}))
    X_link = link(state.target, image)
    g = {v: state.h[v] for v in L.vertices}
    Lx = X_link.simplices
    for t in L.simplices:
        if tuple(sorted({g[v] for v in t})) not in Lx:
            raise RepairError("link does not map into the target link; sigma is not maximal")

    new_ids: list = []

    def fresh():
        v = state.next_vertex + len(new_ids)
        new_ids.append(v)
        return v

    filling = oracle(L, g, X_link, fresh)
    new_simps = set(_join_with_boundary(sigma, filling.simplices))
    kept = {s for s in K.simplices if not set(sigma) <= set(s)}
    complex_ = SimplicialComplex(kept | new_simps, check=check)
    h = dict(state.h)
    h.update(filling.values)
    for v in list(h):
        if v in sigma and v not in complex_.vertices:
            del h[v]
    disk = TriangulatedDisk(complex_, state.disk.boundary, state.disk.n)
    new = RepairState(disk, state.target, h, state.next_vertex + len(new_ids), dict(state.boundary_values))
    if check:
        SimplicialMap(complex_, state.target, h)
        if any(h[v] != y for v, y in new.boundary_values.items()):
            raise RepairError("boundary values changed")
    after = bad_measure(new)
    if check and not after < before:
        raise RepairError(f"measure did not decrease: {before} -> {after}")
    return new, StepRecord(sigma, image, tuple(new_ids), filling.cost, before, after)


@dataclass
class RepairResult:
    state: RepairState
    trace: list[StepRecord]

    @property
    def map(self) -> SimplicialMap:
        return self.state.map

    @property
    def disk(self) -> TriangulatedDisk:
        return self.state.disk

    def trace_lines(self) -> list[str]:
        return [r.line(i) for i, r in enumerate(self.trace)]


def initial_extension(disk: TriangulatedDisk, boundary_map: Mapping, X: SimplicialComplex,
                      budget: int = 6) -> tuple[TriangulatedDisk, dict]:
    """Replace the interior of the disk by a filling of the boundary image.

    Intervals get a walk through X; 2-disks get a cone on the boundary cycle
    if a single vertex works, and otherwise a bounded polygon filling.
    """
    nxt = max((v for v in disk.complex.vertices if isinstance(v, int)), default=-1) + 1
    counter = itertools.count(nxt)
    fresh = lambda: next(counter)
    h = {v: boundary_map[v] for v in disk.boundary.vertices}
    if disk.n == 1:
        a, b = disk.boundary.vertices
        walk = _walk_with_interior(X, h[a], h[b])
        if walk is None:
            raise OracleFailure("boundary images lie in different components")
        chain = [a] + [fresh() for _ in walk[1:-1]] + [b]
        h.update({chain[i]: walk[i] for i in range(1, len(chain) - 1)})
        K = SimplicialComplex([(v,) for v in chain] + [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)])
        return TriangulatedDisk(K, disk.boundary, 1), h
    if disk.n == 2:
        cyc = boundary_cycle(disk)
        for y in sorted(X.vertices):
            if all(tuple(sorted({y, h[cyc[i]], h[cyc[(i + 1) % len(cyc)]]})) in X.simplices
                   for i in range(len(cyc))):
                c = fresh()
                tris = [(cyc[i], cyc[(i + 1) % len(cyc)], c) for i in range(len(cyc))]
                h[c] = y
                return _disk_from(tris, disk.boundary), h
        filling = fill_polygon(cyc, h, X, budget, fresh, strict=False, allow_chords=False)
        h.update(filling.values)
        K = SimplicialComplex(set(disk.boundary.simplices) | set(filling.simplices))
        return TriangulatedDisk(K, disk.boundary, 2), h
    raise RepairError("initial extensions are only built for n <= 2")


def _disk_from(tris, B: SimplicialComplex) -> TriangulatedDisk:
    from .scomplex import closure
    return TriangulatedDisk(closure(tris), B, 2)


def repair(disk: TriangulatedDisk, boundary_map: Mapping, X: SimplicialComplex, n: int | None = None,
           oracle: Oracle | None = None, max_steps: int = 10_000, initial: Mapping | None = None,
           check: bool = True, check_target: bool = True) -> RepairResult:
    """Extend ``boundary_map`` over the disk with no interior bad simplices.

    ``initial`` is an extension over the given disk; without one the interior
    is rebuilt by :func:`initial_extension`.
    """
    n = disk.n if n is None else n
    if n != disk.n:
        raise DiskError("n does not match the disk dimension")
    if check_target and wcm_check(X, n).verdict == Verdict.NO:
        raise RepairError(f"target is not weakly Cohen–Macaulay of dimension {n}")
    if initial is not None and any(boundary_map[v] != initial[v] for v in disk.boundary.vertices):
        raise RepairError("initial extension disagrees with the boundary map")
    if initial is None:
        disk, initial = initial_extension(disk, boundary_map, X)
    state = new_state(disk, X, initial)
    trace: list[StepRecord] = []
    while True:
        bad = find_bad_simplices(state)
        if not bad:
            return RepairResult(state, trace)
        if len(trace) >= max_steps:
            raise StepBudgetExceeded(f"{len(bad)} bad simplices left after {max_steps} steps")
        state, rec = repair_step(state, bad[0], oracle, check)
        trace.append(rec)
