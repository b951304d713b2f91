"""Confusability of signals and exact optimality checks on small spaces.

Two signals t' and t'' are confusable when their output sets
{a t' : a in [1, beta]} and {a t'' : a in [1, beta]} share infinitely many
points. For k >= 2 that requires collinearity, t' = g' u and t'' = g'' u
with u primitive, and then the scale intervals [g', beta g'] and
[g'', beta g''] must overlap in positive length:

    1/beta < g''/g' < beta        (strict)

At ratio exactly beta the overlap is a single point, reached only by a
measure-zero choice of the dilation factor, so such pairs are not
confusable. With an unbounded support every collinear pair is confusable.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .codebook import CodeSpec, SignalTuple, contains, enumerate_code
from .errors import GraphTooLarge, InvalidInput
from .sequences import DilationBound, scale_sequence

__all__ = [
    "primitive_direction",
    "confusable",
    "ConfusabilityGraph",
    "build_graph",
    "max_independent_set",
    "independence_number_exact",
    "verify_zero_error",
    "confusable_pairs",
    "shannon_map",
    "shannon_certificate",
    "DEFAULT_VERTEX_LIMIT",
]

DEFAULT_VERTEX_LIMIT = 50_000


def primitive_direction(t: Sequence[int]) -> tuple[int, SignalTuple]:
    """Split t = g * u with g = gcd(t) and u primitive; returns (g, u)."""
    g = math.gcd(*t)
    return g, tuple(x // g for x in t)


def _ratio_confusable(g1: int, g2: int, bound: DilationBound) -> bool:
    if g1 == g2:
        return False
    if bound.unbounded:
        return True
    lam = Fraction(g2, g1)
    beta = bound.value
    return 1 / beta < lam < beta


def confusable(t1: Sequence[int], t2: Sequence[int], bound) -> bool:
    """True iff distinct t1 and t2 can produce the same observation with positive probability."""
    if len(t1) != len(t2):
        raise InvalidInput("tuples must have equal arity")
    bound = DilationBound.parse(bound)
    t1, t2 = tuple(t1), tuple(t2)
    if t1 == t2:
        return False
    g1, u1 = primitive_direction(t1)
    g2, u2 = primitive_direction(t2)
    if u1 != u2:
        return False
    return _ratio_confusable(g1, g2, bound)


@dataclass
class ConfusabilityGraph:
    """Confusability graph of T_{N,k}.

    ``lines`` maps each primitive direction u to the sorted scales g such
    that g*u lies in the space; every edge joins two points of one line.
    """

    N: int
    k: int
    bound: DilationBound
    vertices: list[SignalTuple]
    edges: set[tuple[SignalTuple, SignalTuple]] = field(default_factory=set)
    lines: dict[SignalTuple, list[int]] = field(default_factory=dict)

    def adjacency(self) -> dict[SignalTuple, set[SignalTuple]]:
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def line_edges(self, u: SignalTuple) -> set[tuple[int, int]]:
        """Edges of one line as pairs of scale indices into ``lines[u]``."""
        scales = self.lines[u]
        out = set()
        for i in range(len(scales)):
            for j in range(i + 1, len(scales)):
                if _ratio_confusable(scales[i], scales[j], self.bound):
                    out.add((i, j))
        return out


def build_graph(N: int, k: int, bound, limit: int = DEFAULT_VERTEX_LIMIT) -> ConfusabilityGraph:
    """Exact confusability graph of T_{N,k}, with its line-of-sight partition."""
    bound = DilationBound.parse(bound)
    size = math.comb(N, k) if k <= N else 0
    if size > limit:
        raise GraphTooLarge(f"T_({N},{k}) has {size} vertices, limit is {limit}")
    spec = CodeSpec(N, k, "T")
    vertices = list(enumerate_code(spec))
    lines: dict[SignalTuple, list[int]] = defaultdict(list)
    for v in vertices:
        g, u = primitive_direction(v)
        lines[u].append(g)
    graph = ConfusabilityGraph(N, k, bound, vertices, lines={u: sorted(gs) for u, gs in lines.items()})
    for u, scales in graph.lines.items():
        for i, j in graph.line_edges(u):
            a = tuple(scales[i] * x for x in u)
            b = tuple(scales[j] * x for x in u)
            graph.edges.add((a, b) if a < b else (b, a))
    return graph


def _line_independence(scales: list[int], bound: DilationBound) -> int:
    """Maximum set of scales with pairwise ratios outside (1/beta, beta).

    The scales are unit-ratio intervals [g, beta g), so this is weighted
    interval scheduling with unit weights, solved by DP over sorted scales.
    """
    if not scales:
        return 0
    if bound.unbounded:
        return 1
    beta = bound.value
    best = [0] * (len(scales) + 1)
    p = 0  # number of scales g_i with g_j >= beta * g_i, monotone in j
    for j, gj in enumerate(scales, 1):
        while p < j - 1 and gj >= beta * scales[p]:
            p += 1
        best[j] = max(best[j - 1], best[p] + 1)
    return best[-1]


def independence_number_exact(nodes: Sequence, edges: Iterable[tuple]) -> int:
    """Generic exponential-time independence number (branch on max degree)."""
    adj = {v: set() for v in nodes}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)

    def solve(active: frozenset) -> int:
        if not active:
            return 0
        v = max(active, key=lambda x: len(adj[x] & active))
        nbrs = adj[v] & active
        if not nbrs:
            return 1 + solve(active - {v})
        take = 1 + solve(active - nbrs - {v})
        skip = solve(active - {v})
        return max(take, skip)

    return solve(frozenset(nodes))


def max_independent_set(graph: ConfusabilityGraph, cross_check: bool = True, cross_check_size: int = 20) -> int:
    """Independence number of a confusability graph, summed over lines.

    With ``cross_check`` every line of at most ``cross_check_size`` points is
    re-solved by :func:`independence_number_exact` and a mismatch raises.
    """
    total = 0
    for u, scales in graph.lines.items():
        alpha = _line_independence(scales, graph.bound)
        if cross_check and len(scales) <= cross_check_size:
            exact = independence_number_exact(range(len(scales)), graph.line_edges(u))
            if exact != alpha:
                raise RuntimeError(f"interval DP gave {alpha}, exhaustive search {exact} on line {u}")
        total += alpha
    return total


def confusable_pairs(code: Iterable[Sequence[int]], bound, exhaustive: bool = False) -> list[tuple[SignalTuple, SignalTuple]]:
    """Confusable pairs inside ``code``.

    Only collinear pairs can be confusable, so by default pairs are checked
    within lines of sight; ``exhaustive`` checks every pair instead.
    """
    bound = DilationBound.parse(bound)
    code = sorted(set(tuple(t) for t in code))
    found = []
    if exhaustive:
        for i, a in enumerate(code):
            for b in code[i + 1 :]:
                if confusable(a, b, bound):
                    found.append((a, b))
        return found
    lines = defaultdict(list)
    for t in code:
        g, u = primitive_direction(t)
        lines[u].append((g, t))
    for members in lines.values():
        members.sort()
        for i, (ga, a) in enumerate(members):
            for gb, b in members[i + 1 :]:
                if _ratio_confusable(ga, gb, bound):
                    found.append((a, b))
    return found


def verify_zero_error(code: Iterable[Sequence[int]], bound, exhaustive: bool = False) -> bool:
    """True iff no two distinct members of ``code`` are confusable."""
    return not confusable_pairs(code, bound, exhaustive=exhaustive)


def shannon_map(t: Sequence[int], bound) -> SignalTuple:
    """Map t = g u to d_n u where d_n is the bucket holding g.

    Buckets are [d_n, beta d_n); with beta = 1 each scale is its own bucket,
    and with unbounded support everything maps to the primitive point u.
    """
    bound = DilationBound.parse(bound)
    g, u = primitive_direction(t)
    if bound.unbounded:
        return u
    seq = scale_sequence(bound, "dilation-d")
    d = seq[seq.index_of_bucket(g)]
    return tuple(d * x for x in u)


def shannon_certificate(N: int, k: int, bound, exhaustive: bool = True, limit: int = DEFAULT_VERTEX_LIMIT) -> dict:
    """Check that the bucket map admits D_{N,k} as an optimal code.

    Verifies (a) every image lies in D_{N,k} and (b) no two non-confusable
    points share an image. With ``exhaustive`` all pairs of the space are
    examined; otherwise only pairs inside one fiber, which is equivalent.
    Returns ``{"pass", "checked_pairs", "counterexamples"}``.
    """
    bound = DilationBound.parse(bound)
    size = math.comb(N, k) if k <= N else 0
    if size > limit:
        raise GraphTooLarge(f"T_({N},{k}) has {size} vertices, limit is {limit}")
    code = CodeSpec(N, k, "D", bound)
    points = list(enumerate_code(CodeSpec(N, k, "T")))
    image = {t: shannon_map(t, bound) for t in points}
    bad = []
    for t, f in image.items():
        if not contains(code, f):
            bad.append({"kind": "image-outside-code", "t": list(t), "f": list(f)})
        elif not bound.unbounded and bound.value > 1:
            g, u = primitive_direction(t)
            d = f[0] // u[0]
            if not d <= g < bound.value * d:
                bad.append({"kind": "scale-outside-bucket", "t": list(t), "f": list(f)})
    checked = 0
    if exhaustive:
        for i, a in enumerate(points):
            fa = image[a]
            for b in points[i + 1 :]:
                checked += 1
                if fa == image[b] and not confusable(a, b, bound):
                    bad.append({"kind": "non-confusable-collision", "t1": list(a), "t2": list(b), "f": list(fa)})
    else:
        fibers = defaultdict(list)
        for t, f in image.items():
            fibers[f].append(t)
        for members in fibers.values():
            for i, a in enumerate(members):
                for b in members[i + 1 :]:
                    checked += 1
                    if not confusable(a, b, bound):
                        bad.append({"kind": "non-confusable-collision", "t1": list(a), "t2": list(b), "f": list(image[a])})
    return {"pass": not bad, "checked_pairs": checked, "counterexamples": bad}
