"""Exact integer transportation problem for d_E.

Rows are the elements of R(a) plus one dummy row whose costs are all M;
columns are the elements of R(c).  Real rows must ship exactly a(i), the
dummy row ships C(c) - C(a), and column j receives exactly c(j).  The
optimum is found by successive shortest paths with node potentials on
integer costs (rationals scaled by their common denominator), so the
value is exact and the flow integral.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import SpaceMismatchError
from .ground import GroundSpace
from .multiset import Multiset


@dataclass(frozen=True)
class TransportInstance:
    rows: tuple  # ground indices of R(a), then None for the dummy row
    cols: tuple[int, ...]
    cost: tuple[tuple[Fraction, ...], ...]
    supplies: tuple[int, ...]
    demands: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.supplies), len(self.demands)


@dataclass(frozen=True)
class Flow:
    h: tuple[tuple[int, ...], ...]

    def value(self, inst: TransportInstance) -> Fraction:
        return sum(
            (c * x for crow, hrow in zip(inst.cost, self.h) for c, x in zip(crow, hrow)),
            Fraction(0),
        )


def build_instance(space: GroundSpace, a: Multiset, c: Multiset) -> TransportInstance:
    """Cost matrix with a dummy row of M for disjoint ``a``, ``c`` with C(a) <= C(c)."""
    if a.space != space.label or c.space != space.label:
        raise SpaceMismatchError(f"multisets must belong to space {space.label!r}")
    if a.cardinality > c.cardinality:
        raise ValueError("need C(a) <= C(c); swap the arguments")
    if a & c:
        raise ValueError("a and c must be disjoint; reduce them first")
    if not c:
        raise ValueError("c must be non-empty")
    rows = tuple(sorted(a.root_set)) + (None,)
    cols = tuple(sorted(c.root_set))
    cost = tuple(tuple(space.dist(i, j) for j in cols) for i in rows[:-1]) + (
        tuple(space.M for _ in cols),
    )
    supplies = tuple(a[i] for i in rows[:-1]) + (c.cardinality - a.cardinality,)
    demands = tuple(c[j] for j in cols)
    return TransportInstance(rows, cols, cost, supplies, demands)


def _scale(cost) -> tuple[list[list[int]], int]:
    denom = math.lcm(*(x.denominator for row in cost for x in row))
    return [[int(x * denom) for x in row] for row in cost], denom


def solve_min_cost(inst: TransportInstance) -> tuple[Fraction, Flow]:
    """Minimum of sum(d_ij * h_ij) over integral flows meeting all row and column totals."""
    n_r, n_c = inst.shape
    if sum(inst.supplies) != sum(inst.demands):
        raise ValueError("infeasible instance: supplies and demands differ in total")
    if min(inst.supplies + inst.demands, default=0) < 0:
        raise ValueError("infeasible instance: negative supply or demand")
    icost, denom = _scale(inst.cost)

    # Nodes: 0 source, 1..n_r rows, n_r+1..n_r+n_c columns, n_r+n_c+1 sink.
    n = n_r + n_c + 2
    src, sink = 0, n - 1
    to: list[int] = []
    cap: list[int] = []
    cst: list[int] = []
    adj: list[list[int]] = [[] for _ in range(n)]

    def add_edge(u: int, v: int, capacity: int, c: int) -> int:
        adj[u].append(len(to))
        to.append(v), cap.append(capacity), cst.append(c)
        adj[v].append(len(to))
        to.append(u), cap.append(0), cst.append(-c)
        return len(to) - 2

    for i, s in enumerate(inst.supplies):
        add_edge(src, 1 + i, s, 0)
    for j, dmd in enumerate(inst.demands):
        add_edge(1 + n_r + j, sink, dmd, 0)
    total = sum(inst.demands)
    cell = [[add_edge(1 + i, 1 + n_r + j, total, icost[i][j]) for j in range(n_c)] for i in range(n_r)]

    potential = [0] * n
    shipped = 0
    value = 0
    inf = float("inf")
    while shipped < total:
        dist = [inf] * n
        prev = [-1] * n
        dist[src] = 0
        heap = [(0, src)]
        while heap:
            du, u = heapq.heappop(heap)
            if du > dist[u]:
                continue
            for e in adj[u]:
                if cap[e] <= 0:
                    continue
                v = to[e]
                nd = du + cst[e] + potential[u] - potential[v]
                if nd < dist[v]:
                    dist[v] = nd
                    prev[v] = e
                    heapq.heappush(heap, (nd, v))
        if dist[sink] == inf:
            raise AssertionError("transportation instance is infeasible")
        for v in range(n):
            potential[v] += min(dist[v], dist[sink])
        push = total - shipped
        v = sink
        while v != src:
            e = prev[v]
            push = min(push, cap[e])
            v = to[e ^ 1]
        v = sink
        while v != src:
            e = prev[v]
            cap[e] -= push
            cap[e ^ 1] += push
            value += push * cst[e]
            v = to[e ^ 1]
        shipped += push

    h = tuple(tuple(cap[cell[i][j] ^ 1] for j in range(n_c)) for i in range(n_r))
    return Fraction(value, denom), Flow(h)


def verify_flow(inst: TransportInstance, flow: Flow) -> bool:
    """Independent audit: shape, non-negative integers, and every row/column total."""
    n_r, n_c = inst.shape
    h = flow.h
    if len(h) != n_r or any(len(row) != n_c for row in h):
        return False
    for row in h:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int) or x < 0:
                return False
    if any(sum(row) != s for row, s in zip(h, inst.supplies)):
        return False
    return all(sum(h[i][j] for i in range(n_r)) == inst.demands[j] for j in range(n_c))
