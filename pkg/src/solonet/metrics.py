"""Complex-network metrics of a solo network.

Degrees are read off the directed graph. Distances, clustering,
betweenness and eigenvector centrality run on the undirected simple view
(directions and self-loops dropped), since solo networks are usually only
weakly connected.
"""

from __future__ import annotations

import csv
import heapq
import io
import json
import math
from collections import deque
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import EmptyNetwork, NoConvergence, UndefinedMetric
from .model import MelodyTrack
from .network import SoloNetwork, UndirectedView, build_network, connected_components, undirected_projection


def _view(g) -> UndirectedView:
    return g if isinstance(g, UndirectedView) else undirected_projection(g)


# --- degrees -----------------------------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    in_degree: tuple[int, ...]
    out_degree: tuple[int, ...]
    weighted_in: tuple[int, ...]
    weighted_out: tuple[int, ...]

    @property
    def total(self) -> tuple[int, ...]:
        return tuple(i + o for i, o in zip(self.in_degree, self.out_degree))

    @property
    def weighted_total(self) -> tuple[int, ...]:
        return tuple(i + o for i, o in zip(self.weighted_in, self.weighted_out))

    @property
    def normalized(self) -> tuple[float, ...]:
        """Total degree over the largest total degree (all zero if edgeless)."""
        tot = self.total
        top = max(tot)
        return tuple(t / top if top else 0.0 for t in tot)


def degree_profile(net: SoloNetwork) -> DegreeProfile:
    """In-degree is the column sum of ``A`` and out-degree the row sum, so
    a self-loop counts once in each."""
    if net.n == 0:
        raise EmptyNetwork("degree profile of an empty network")
    d_in, d_out = [0] * net.n, [0] * net.n
    w_in, w_out = [0] * net.n, [0] * net.n
    for (x, y), w in net.edges.items():
        d_out[x] += 1
        d_in[y] += 1
        w_out[x] += w
        w_in[y] += w
    return DegreeProfile(tuple(d_in), tuple(d_out), tuple(w_in), tuple(w_out))


@dataclass(frozen=True)
class Distribution:
    """Empirical distribution over bins, with its cumulative curve."""

    values: tuple[float, ...]
    mass: tuple[float, ...]
    cumulative: tuple[float, ...]

    def as_dict(self) -> dict:
        return dict(zip(self.values, self.mass))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["value", "mass", "cumulative"])
        writer.writerows(zip(self.values, self.mass, self.cumulative))
        return buf.getvalue()


def distribution_of(values: Sequence) -> Distribution:
    """Probability mass of each distinct value; cumulative ends at exactly 1."""
    counts: dict = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    total = len(values)
    keys = sorted(counts)
    running, cum = 0, []
    for k in keys:
        running += counts[k]
        cum.append(running / total)
    return Distribution(tuple(keys), tuple(counts[k] / total for k in keys), tuple(cum))


def degree_distribution(profile: DegreeProfile, kind: str = "total") -> Distribution:
    seqs = {
        "total": profile.total,
        "in": profile.in_degree,
        "out": profile.out_degree,
        "weighted": profile.weighted_total,
    }
    if kind not in seqs:
        raise ValueError(f"unknown degree kind {kind!r}; choose from {sorted(seqs)}")
    return distribution_of(seqs[kind])


# --- distances -----------------------------------------------------------------


@dataclass(frozen=True)
class DistanceSummary:
    total: int  # sum of shortest-path lengths over connected unordered pairs
    pairs: int  # connected unordered pairs
    possible: int  # n(n-1)/2

    @property
    def exact(self) -> Fraction:
        return Fraction(self.total, self.pairs)

    @property
    def mean(self) -> float:
        return self.total / self.pairs

    @property
    def coverage(self) -> float:
        return self.pairs / self.possible


def bfs_distances(view: UndirectedView, source: int) -> list[int]:
    """Hop counts from ``source``; -1 marks unreachable nodes."""
    dist = [-1] * view.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in view.adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def average_distance(g: SoloNetwork | UndirectedView) -> DistanceSummary:
    """Mean BFS distance over connected unordered pairs of the undirected view."""
    view = _view(g)
    if view.n < 2:
        raise UndefinedMetric("average distance needs at least two nodes")
    total = pairs = 0
    for s in range(view.n):
        for t, d in enumerate(bfs_distances(view, s)):
            if t > s and d > 0:
                total += d
                pairs += 1
    if pairs == 0:
        raise UndefinedMetric("no connected pair of nodes")
    return DistanceSummary(total, pairs, view.n * (view.n - 1) // 2)


# --- clustering ------------------------------------------------------------------


def transitivity_counts(g: SoloNetwork | UndirectedView) -> tuple[int, int]:
    """``(3 * triangles, connected triplets)`` of the undirected view."""
    view = _view(g)
    nbrs = [set(a) for a in view.adj]
    closed = triplets = 0
    for v in range(view.n):
        k = len(view.adj[v])
        triplets += k * (k - 1) // 2
        a = view.adj[v]
        for i in range(k):
            ni = nbrs[a[i]]
            for j in range(i + 1, k):
                if a[j] in ni:
                    closed += 1
    return closed, triplets


def clustering_coefficient(g: SoloNetwork | UndirectedView) -> float:
    """Global transitivity; 0.0 when there is no connected triplet."""
    closed, triplets = transitivity_counts(g)
    return closed / triplets if triplets else 0.0


# --- betweenness -----------------------------------------------------------------


def _accumulate(order, preds, sigma, one):
    delta = {v: 0 * one for v in order}
    for w in reversed(order):
        coeff = (one + delta[w]) / sigma[w]
        for v in preds[w]:
            delta[v] += sigma[v] * coeff
    return delta


def betweenness(g: SoloNetwork | UndirectedView, normalized: bool = False, exact: bool = False) -> tuple:
    """Brandes betweenness over ordered (source, target) pairs, unit lengths.

    With ``normalized`` the sums are divided by n**2. ``exact`` returns
    ``Fraction`` values.
    """
    view = _view(g)
    n = view.n
    one = Fraction(1) if exact else 1.0
    bet = [0 * one] * n
    for s in range(n):
        sigma = {s: 1}
        dist = {s: 0}
        preds: dict[int, list[int]] = {s: []}
        order = []
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in view.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    sigma[w] = 0
                    preds[w] = []
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = _accumulate(order, preds, sigma, one)
        for v in order:
            if v != s:
                bet[v] += delta[v]
    if normalized and n:
        bet = [b / (n * n) for b in bet]
    return tuple(bet)


def weighted_betweenness(g: SoloNetwork | UndirectedView, normalized: bool = True, exact: bool = False) -> tuple:
    """Betweenness with link length 1/weight (heavier links are shorter).

    Path lengths are summed as exact fractions so tie detection between
    competing shortest paths is exact.
    """
    view = _view(g)
    n = view.n
    one = Fraction(1) if exact else 1.0
    bet = [0 * one] * n
    length = {}
    for (x, y), w in view.weights.items():
        length[(x, y)] = length[(y, x)] = Fraction(1, w)
    for s in range(n):
        dist = {s: Fraction(0)}
        sigma = {s: 1}
        preds: dict[int, list[int]] = {s: []}
        done = set()
        order = []
        heap = [(Fraction(0), s)]
        while heap:
            d, v = heapq.heappop(heap)
            if v in done:
                continue
            done.add(v)
            order.append(v)
            for w in view.adj[v]:
                nd = d + length[(v, w)]
                if w not in dist or nd < dist[w]:
                    dist[w] = nd
                    sigma[w] = sigma[v]
                    preds[w] = [v]
                    heapq.heappush(heap, (nd, w))
                elif nd == dist[w] and w not in done:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = _accumulate(order, preds, sigma, one)
        for v in order:
            if v != s:
                bet[v] += delta[v]
    if normalized and n:
        bet = [b / (n * n) for b in bet]
    return tuple(bet)


# --- eigenvector centrality -----------------------------------------------------------

STAGNATION_WINDOW = 50


@dataclass(frozen=True)
class EigenResult:
    values: tuple[float, ...]
    iterations: int
    residual: float
    damped: bool


def eigenvector_centrality(g: SoloNetwork | UndirectedView, tol: float = 1e-10, max_iter: int = 10_000) -> EigenResult:
    """Power iteration on the weighted undirected adjacency of the largest component.

    Starts from the uniform vector and renormalizes to unit Euclidean norm
    each step; stops when successive vectors differ by less than ``tol`` in
    max-norm. If the residual shrinks slowly while successive updates flip
    direction (a bipartite or nearly bipartite component, where the most
    negative eigenvalue rivals the leading one) the iteration switches to
    averaging consecutive iterates.
    Nodes outside the component score 0.
    """
    if tol <= 0 or max_iter < 1:
        raise ValueError("tol must be positive and max_iter at least 1")
    view = _view(g)
    out = [0.0] * view.n
    if view.n == 0:
        return EigenResult((), 0, 0.0, False)
    comp = connected_components(view)[0]
    if len(comp) == 1:
        out[comp[0]] = 1.0
        return EigenResult(tuple(out), 0, 0.0, False)

    local = {v: i for i, v in enumerate(comp)}
    rows, cols, wts = [], [], []
    for (x, y), w in view.weights.items():
        if x in local:
            rows += [local[x], local[y]]
            cols += [local[y], local[x]]
            wts += [w, w]
    rows_a, cols_a = np.array(rows), np.array(cols)
    wts_a = np.array(wts, dtype=float)
    k = len(comp)

    x = np.full(k, 1.0 / math.sqrt(k))
    damped = False
    history: list[float] = []
    residual = math.inf
    step = np.zeros(k)
    for it in range(1, max_iter + 1):
        y = np.bincount(rows_a, weights=wts_a * x[cols_a], minlength=k)
        y /= np.linalg.norm(y)
        if damped:
            y += x
            y /= np.linalg.norm(y)
        prev_step, step = step, y - x
        residual = float(np.max(np.abs(step)))
        x = y
        if residual < tol:
            for v, val in zip(comp, x):
                out[v] = float(val)
            return EigenResult(tuple(out), it, residual, damped)
        history.append(residual)
        if (
            not damped
            and len(history) > STAGNATION_WINDOW
            and residual >= 0.5 * history[-STAGNATION_WINDOW - 1]
            and float(step @ prev_step) < 0
        ):
            damped = True
    raise NoConvergence(max_iter, residual)


# --- report --------------------------------------------------------------------------


@dataclass(frozen=True)
class MetricsConfig:
    eigen_tol: float = 1e-10
    eigen_max_iter: int = 10_000
    spelling: str = "written"


REPORT_FIELDS = (
    "length",
    "nodes",
    "mean_degree",
    "mean_norm_degree",
    "mean_weighted_degree",
    "avg_distance",
    "pair_coverage",
    "clustering",
    "betweenness",
    "eigenvector",
)
SCALAR_METRICS = REPORT_FIELDS[:8]


@dataclass
class MetricsReport:
    artist: str
    song: str
    length: int
    nodes: int
    mean_degree: float | None = None
    mean_norm_degree: float | None = None
    mean_weighted_degree: float | None = None
    avg_distance: float | None = None
    pair_coverage: float | None = None
    clustering: float | None = None
    betweenness: dict[str, float] = field(default_factory=dict)
    eigenvector: dict[str, float] = field(default_factory=dict)
    undefined: list[str] = field(default_factory=list)
    degenerate: list[str] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "MetricsReport":
        return cls(**data)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _mean(xs) -> float:
    return math.fsum(xs) / len(xs)


def metrics_report(net: SoloNetwork, config: MetricsConfig | None = None, length: int | None = None) -> MetricsReport:
    """Bundle every per-network metric.

    ``length`` is the number of events of the generating track; without it
    the track is assumed seamless (sum of weights + 1).
    """
    config = config or MetricsConfig()
    if length is None:
        length = net.total_weight + 1 if net.n else 0
    prov = {
        "config": asdict(config),
        "betweenness": "brandes, ordered pairs, divided by n^2",
        "eigenvector": "power iteration, largest component, unit L2 norm",
    }
    rep = MetricsReport(net.artist, net.song, length, net.n, provenance=prov)
    if net.n == 0:
        rep.undefined = [f for f in REPORT_FIELDS[2:]]
        return rep

    prof = degree_profile(net)
    rep.mean_degree = _mean(prof.total)
    rep.mean_weighted_degree = _mean(prof.weighted_total)
    if max(prof.total):
        rep.mean_norm_degree = _mean(prof.normalized)
    else:
        rep.undefined.append("mean_norm_degree")

    view = undirected_projection(net)
    try:
        dist = average_distance(view)
        rep.avg_distance, rep.pair_coverage = dist.mean, dist.coverage
    except UndefinedMetric:
        rep.undefined += ["avg_distance", "pair_coverage"]
    closed, triplets = transitivity_counts(view)
    rep.clustering = closed / triplets if triplets else 0.0
    if not triplets:
        rep.degenerate.append("clustering")

    rep.betweenness = dict(zip(net.nodes, betweenness(view, normalized=True)))
    eig = eigenvector_centrality(view, config.eigen_tol, config.eigen_max_iter)
    rep.eigenvector = dict(zip(net.nodes, eig.values))
    if view.m == 0:
        rep.degenerate.append("eigenvector")
    return rep


def analyze_track(track: MelodyTrack, config: MetricsConfig | None = None) -> MetricsReport:
    config = config or MetricsConfig()
    return metrics_report(build_network(track, config.spelling), config, length=len(track))
