"""Seeded random instances and the randomized metric-axiom suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .baselines import bag_distance, matching_distance, mu_metric
from .ground import GroundSpace, table_space
from .model_e import d_E, d_E_oracle, d_Em
from .model_f import APoint, FPrimeSet, d_A, d_Am, d_F, d_Fm
from .multiset import Multiset


def random_multiset(rng: random.Random, space: GroundSpace, max_card: int, min_card: int = 0) -> Multiset:
    k = rng.randint(min_card, max_card)
    return Multiset.from_elements((rng.randrange(len(space)) for _ in range(k)), space.label)


def random_apoint(rng: random.Random, space: GroundSpace, max_r: int = 5) -> APoint:
    r = rng.randint(0, max_r)
    return APoint(r, rng.randrange(len(space)) if r else None)


def random_fprime(rng: random.Random, space: GroundSpace, max_points: int = 4, max_r: int = 5) -> FPrimeSet:
    """A random point set; e0 is drawn only as the singleton {e0}."""
    if rng.random() < 0.05:
        return FPrimeSet(frozenset({APoint(0)}), space.label)
    pts = {APoint(rng.randint(1, max_r), rng.randrange(len(space))) for _ in range(rng.randint(1, max_points))}
    return FPrimeSet(frozenset(pts), space.label)


def random_plain_set(rng: random.Random, space: GroundSpace, max_size: int) -> Multiset:
    """A non-empty ordinary subset (all multiplicities 1)."""
    k = rng.randint(1, min(max_size, len(space)))
    return Multiset({x: 1 for x in rng.sample(range(len(space)), k)}, space.label)


def random_table_space(rng: random.Random, n: int, M=None, *, label: str = "random-table") -> GroundSpace:
    """Shortest-path metric of a complete graph with random positive rational weights."""
    d = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = Fraction(rng.randint(1, 20), rng.choice((1, 2, 3, 4, 6)))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return table_space(d, M, label=label)


# -- axiom suite ------------------------------------------------------------


@dataclass(frozen=True)
class MetricDef:
    fn: Callable
    sample: Callable[[random.Random, GroundSpace, int], tuple]


def _multiset_triples(rng, space, max_card):
    return tuple(random_multiset(rng, space, max_card) for _ in range(3))


def _equal_card_triples(rng, space, max_card):
    k = rng.randint(0, max_card)
    return tuple(random_multiset(rng, space, k, k) for _ in range(3))


def _apoint_triples(rng, space, max_card):
    return tuple(random_apoint(rng, space, 5) for _ in range(3))


def _fprime_triples(rng, space, max_card):
    return tuple(random_fprime(rng, space, 4, 5) for _ in range(3))


METRICS: dict[str, MetricDef] = {
    "dE": MetricDef(d_E, _multiset_triples),
    "dEm": MetricDef(d_Em, _multiset_triples),
    "dA": MetricDef(d_A, _apoint_triples),
    "dAm": MetricDef(d_Am, _apoint_triples),
    "dF": MetricDef(d_F, _fprime_triples),
    "dFm": MetricDef(d_Fm, _fprime_triples),
    "bag": MetricDef(lambda space, e, f: Fraction(bag_distance(e, f)), _multiset_triples),
    "mu": MetricDef(lambda space, e, f: mu_metric(None, e, f), _multiset_triples),
    "matching": MetricDef(matching_distance, _equal_card_triples),
}


def probe_triples(space: GroundSpace, metric: str) -> list[tuple]:
    """Deterministic triples that break the triangle inequality first when theta is too large."""
    x, y = space.max_pair()
    if metric in ("dE", "dEm"):
        ex, ey = space.unit(x), space.unit(y)
        return [(ex, ex + ey, ey)]
    if metric in ("dA", "dAm"):
        return [(APoint(2, x), APoint(1, x), APoint(2, y))]
    if metric in ("dF", "dFm"):
        return [tuple(FPrimeSet(frozenset({p}), space.label) for p in (APoint(2, x), APoint(1, x), APoint(2, y)))]
    return []


@dataclass(frozen=True)
class AxiomViolation:
    kind: str  # identity | positivity | symmetry | triangle
    points: tuple
    values: tuple

    def describe(self) -> str:
        pts = ", ".join(repr(p) for p in self.points)
        vals = ", ".join(str(v) for v in self.values)
        return f"{self.kind}: points ({pts}) values ({vals})"


@dataclass
class AxiomReport:
    metric: str
    space: str
    samples: int
    seed: int
    triangle_checks: int = 0
    violations: list[AxiomViolation] = field(default_factory=list)

    def count(self, kind: str) -> int:
        return sum(1 for v in self.violations if v.kind == kind)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self, show: int = 5) -> list[str]:
        out = [
            f"metric={self.metric} space={self.space} samples={self.samples} seed={self.seed}",
            f"triangle checks: {self.triangle_checks}",
        ]
        for kind in ("identity", "positivity", "symmetry", "triangle"):
            out.append(f"{kind} violations: {self.count(kind)}")
        for v in self.violations[:show]:
            out.append("  " + v.describe())
        out.append("PASS" if self.ok else "FAIL")
        return out


def check_metric(
    space: GroundSpace,
    metric: str,
    samples: int = 1000,
    seed: int = 0,
    max_card: int = 6,
    probes: bool = True,
) -> AxiomReport:
    """Test identity, positivity, symmetry and all three triangle inequalities on random triples."""
    mdef = METRICS[metric]
    rng = random.Random(seed)
    tol = space.tol
    report = AxiomReport(metric, space.label, samples, seed)
    triples = probe_triples(space, metric) if probes else []
    for _ in range(samples):
        triples.append(mdef.sample(rng, space, max_card))
    for triple in triples:
        d = {}
        for i in range(3):
            for j in range(3):
                d[i, j] = mdef.fn(space, triple[i], triple[j])
        for i in range(3):
            if d[i, i] != 0:
                report.violations.append(AxiomViolation("identity", (triple[i],), (d[i, i],)))
            for j in range(i + 1, 3):
                if triple[i] != triple[j] and d[i, j] <= 0:
                    report.violations.append(AxiomViolation("positivity", (triple[i], triple[j]), (d[i, j],)))
                if abs(d[i, j] - d[j, i]) > tol:
                    report.violations.append(
                        AxiomViolation("symmetry", (triple[i], triple[j]), (d[i, j], d[j, i]))
                    )
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            report.triangle_checks += 1
            # endpoints i, k through j
            if d[i, k] > d[i, j] + d[j, k] + tol:
                report.violations.append(
                    AxiomViolation(
                        "triangle",
                        (triple[i], triple[j], triple[k]),
                        (d[i, j], d[j, k], d[i, k], d[i, j] + d[j, k] - d[i, k]),
                    )
                )
    return report


# -- solver versus oracle ---------------------------------------------------


@dataclass
class OracleReport:
    space: str
    samples: int
    seed: int
    mismatches: list[tuple[Multiset, Multiset, Fraction, Fraction]] = field(default_factory=list)
    max_deviation: Fraction = Fraction(0)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def compare_oracle(space: GroundSpace, samples: int = 1000, seed: int = 0, max_card: int = 7) -> OracleReport:
    """Compare the transportation value of d_E with brute-force enumeration on random pairs."""
    rng = random.Random(seed)
    report = OracleReport(space.label, samples, seed)
    for _ in range(samples):
        a = random_multiset(rng, space, max_card)
        c = random_multiset(rng, space, max_card)
        fast = d_E(space, a, c)
        slow = d_E_oracle(space, a, c)
        dev = abs(fast - slow)
        report.max_deviation = max(report.max_deviation, dev)
        if dev:
            report.mismatches.append((a, c, fast, slow))
    return report
