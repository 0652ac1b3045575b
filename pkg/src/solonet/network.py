"""Directed weighted note networks built from melody tracks."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import CapExceeded
from .model import MelodyTrack, node_key

DEFAULT_MATRIX_CAP = 10_000


@dataclass(frozen=True)
class SoloNetwork:
    """Nodes are labels in order of first appearance; ``edges`` maps
    ``(source, target)`` index pairs to a positive integer weight."""

    nodes: tuple[str, ...]
    edges: Mapping[tuple[int, int], int]
    artist: str = ""
    song: str = ""
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", dict(self.edges))
        object.__setattr__(self, "index", {label: i for i, label in enumerate(self.nodes)})
        if len(self.index) != len(self.nodes):
            raise ValueError("duplicate node labels")
        n = len(self.nodes)
        for (x, y), w in self.edges.items():
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"edge {(x, y)} references a missing node")
            if int(w) != w or w < 1:
                raise ValueError(f"edge {(x, y)} has non-positive weight {w}")

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def total_weight(self) -> int:
        return sum(self.edges.values())

    @classmethod
    def from_edges(cls, nodes: int | Iterable[str], edges, artist: str = "", song: str = "") -> "SoloNetwork":
        """Build from an edge list of ``(x, y)`` or ``(x, y, w)`` index tuples.

        Repeated pairs add up.
        """
        labels = [str(i) for i in range(nodes)] if isinstance(nodes, int) else list(nodes)
        acc: dict[tuple[int, int], int] = {}
        for e in edges:
            x, y, w = (*e, 1) if len(e) == 2 else e
            acc[(x, y)] = acc.get((x, y), 0) + w
        return cls(tuple(labels), acc, artist, song)

    def to_json(self) -> dict:
        return {
            "artist": self.artist,
            "song": self.song,
            "nodes": list(self.nodes),
            "edges": [{"src": x, "dst": y, "w": w} for (x, y), w in sorted(self.edges.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SoloNetwork":
        edges = {(int(e["src"]), int(e["dst"])): int(e["w"]) for e in data["edges"]}
        return cls(tuple(data["nodes"]), edges, data.get("artist", ""), data.get("song", ""))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["src_label", "dst_label", "weight"])
        for (x, y), w in sorted(self.edges.items()):
            writer.writerow([self.nodes[x], self.nodes[y], w])
        return buf.getvalue()

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def build_network(track: MelodyTrack, spelling: str = "written") -> SoloNetwork:
    """One node per distinct label; the weight of ``(x, y)`` counts how often
    ``y`` directly follows ``x``. No link crosses a concatenation seam."""
    index: dict[str, int] = {}
    order: list[int] = []
    for ev in track.events:
        order.append(index.setdefault(node_key(ev, spelling), len(index)))
    seams = set(track.boundaries)
    edges: dict[tuple[int, int], int] = {}
    for i in range(1, len(order)):
        if i in seams:
            continue
        pair = (order[i - 1], order[i])
        edges[pair] = edges.get(pair, 0) + 1
    return SoloNetwork(tuple(index), edges, track.artist, track.song)


@dataclass(frozen=True)
class UndirectedView:
    """Simple undirected graph underlying a network: directions and
    self-loops dropped, ``weights[(x, y)]`` (x < y) sums both directions."""

    n: int
    weights: Mapping[tuple[int, int], int]
    adj: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.weights)

    def weight(self, x: int, y: int) -> int:
        return self.weights.get((x, y) if x < y else (y, x), 0)

    def degree(self, x: int) -> int:
        return len(self.adj[x])

    @classmethod
    def from_pairs(cls, n: int, weights: Mapping[tuple[int, int], int]) -> "UndirectedView":
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for x, y in weights:
            nbrs[x].append(y)
            nbrs[y].append(x)
        return cls(n, dict(sorted(weights.items())), tuple(tuple(sorted(a)) for a in nbrs))


def undirected_projection(net: SoloNetwork) -> UndirectedView:
    weights: dict[tuple[int, int], int] = {}
    for (x, y), w in net.edges.items():
        if x == y:
            continue
        key = (x, y) if x < y else (y, x)
        weights[key] = weights.get(key, 0) + w
    return UndirectedView.from_pairs(net.n, weights)


def connected_components(view: UndirectedView) -> list[list[int]]:
    """Components, each sorted, largest first (ties by smallest member)."""
    seen = [False] * view.n
    comps = []
    for s in range(view.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in view.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def weakly_connected_components(net: SoloNetwork) -> list[list[int]]:
    return connected_components(undirected_projection(net))


def adjacency_matrix(net: SoloNetwork, weighted: bool = False, cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
    """Dense ``A`` with ``A[x, y]`` set when there is a link from x to y."""
    if net.n > cap:
        raise CapExceeded(f"{net.n} nodes exceeds the dense matrix cap of {cap}")
    a = np.zeros((net.n, net.n), dtype=np.int64)
    for (x, y), w in net.edges.items():
        a[x, y] = w if weighted else 1
    return a
