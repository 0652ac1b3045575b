"""Size-matched random graphs and the small-world comparison."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateNetwork, TooManyEdges
from .metrics import average_distance, transitivity_counts
from .network import SoloNetwork, UndirectedView, connected_components, undirected_projection

RNG_ALGORITHM = "numpy PCG64 via SeedSequence"


def _rng(seed: int | Sequence[int]) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def random_graph(n: int, m: int, seed: int | Sequence[int] = 0) -> SoloNetwork:
    """Uniform G(n, m): ``m`` distinct node pairs drawn without replacement.

    Each pair is stored once as a directed edge ``(i, j)`` with ``i < j``;
    every metric reads it through the undirected view.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    max_m = n * (n - 1) // 2
    if not 0 <= m <= max_m:
        raise TooManyEdges(f"m={m} outside [0, {max_m}] for n={n}")
    rows, cols = np.triu_indices(n, 1)
    picks = np.sort(_rng(seed).choice(max_m, size=m, replace=False))
    edges = {(int(rows[k]), int(cols[k])): 1 for k in picks}
    return SoloNetwork(tuple(str(i) for i in range(n)), edges)


def ring_lattice(n: int, k: int, shortcuts=()) -> SoloNetwork:
    """Each node linked to its ``k // 2`` nearest neighbours on either side,
    plus any extra ``(x, y)`` shortcut pairs."""
    if k % 2 or not 0 < k < n:
        raise ValueError("k must be even and in (0, n)")
    edges = {(i, (i + j) % n): 1 for i in range(n) for j in range(1, k // 2 + 1)}
    edges.update({(x, y): 1 for x, y in shortcuts})
    return SoloNetwork(tuple(str(i) for i in range(n)), edges)


class Verdict(str, enum.Enum):
    SMALL_WORLD = "SmallWorld"
    NOT_SMALL_WORLD = "NotSmallWorld"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Thresholds:
    cc_factor: float = 2.0  # cc must exceed this multiple of the random cc
    dist_factor: float = 1.5  # avg distance may be at most this multiple of random
    reject_dist_factor: float = 2.0  # beyond this multiple the network is not a small world


def classify(cc: float, cc_rg: float, dist: float, dist_rg: float, th: Thresholds = Thresholds()) -> Verdict:
    # cc no better than random (including 0 vs 0) rules the network out first
    if cc <= cc_rg or dist > th.reject_dist_factor * dist_rg:
        return Verdict.NOT_SMALL_WORLD
    if cc > th.cc_factor * cc_rg and dist <= th.dist_factor * dist_rg:
        return Verdict.SMALL_WORLD
    return Verdict.INDETERMINATE


@dataclass(frozen=True)
class SmallWorldReport:
    cc: float
    cc_rg: float
    avg_dist: float
    avg_dist_rg: float
    replicates: int
    seed: int
    verdict: Verdict
    n: int
    m: int
    rng: str = RNG_ALGORITHM
    artist: str = ""
    song: str = ""

    def to_json(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def random_graph_stats(n: int, m: int, replicates: int, seed: int = 0) -> tuple[list[float], list[float]]:
    """Clustering and connected-pair average distance of ``replicates`` G(n, m) draws.

    Replicate ``i`` is seeded from ``(seed, i)``.
    """
    ccs, dists = [], []
    for i in range(replicates):
        view = undirected_projection(random_graph(n, m, (seed, i)))
        closed, triplets = transitivity_counts(view)
        ccs.append(closed / triplets if triplets else 0.0)
        if view.m:
            dists.append(average_distance(view).mean)
    return ccs, dists


def small_world_assessment(
    g: SoloNetwork | UndirectedView,
    replicates: int = 100,
    seed: int = 0,
    thresholds: Thresholds = Thresholds(),
) -> SmallWorldReport:
    """Compare clustering and average distance against G(n, m) graphs of the
    same node and link count as the undirected view."""
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    view = g if isinstance(g, UndirectedView) else undirected_projection(g)
    if view.n == 0 or len(connected_components(view)[0]) < 3:
        raise DegenerateNetwork("the largest component needs at least three nodes")
    closed, triplets = transitivity_counts(view)
    cc = closed / triplets if triplets else 0.0
    dist = average_distance(view).mean

    ccs, dists = random_graph_stats(view.n, view.m, replicates, seed)
    cc_rg = math.fsum(ccs) / len(ccs)
    dist_rg = math.fsum(dists) / len(dists)
    verdict = classify(cc, cc_rg, dist, dist_rg, thresholds)
    artist = getattr(g, "artist", "")
    song = getattr(g, "song", "")
    return SmallWorldReport(cc, cc_rg, dist, dist_rg, replicates, seed, verdict, view.n, view.m, artist=artist, song=song)


def format_table(reports: Sequence[SmallWorldReport]) -> str:
    """Plain-text table with the cc / cc (RG) / avg dist / avg dist (RG) columns."""
    names = [" -- ".join(x for x in (r.artist, r.song) if x) or "network" for r in reports]
    width = max([len("song"), *map(len, names)])
    lines = [f"{'song':<{width}}  {'cc':>6}  {'cc (RG)':>7}  {'avg dist':>8}  {'avg dist (RG)':>13}  verdict"]
    for name, r in zip(names, reports):
        lines.append(
            f"{name:<{width}}  {r.cc:6.2f}  {r.cc_rg:7.2f}  {r.avg_dist:8.2f}  {r.avg_dist_rg:13.2f}  {r.verdict.value}"
        )
    return "\n".join(lines)
