"""Integer flow networks, Ford-Fulkerson with BFS path search, and the
bipartite complete-matching reduction used for parameter matching.

Vertices are integers ``0..n-1``. In a matching network the source is 0,
left vertex ``i`` is ``1 + i``, right vertex ``j`` is ``1 + len(left) + j``
and the sink is last, so smallest-index tie-breaking follows list order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence


class FlowNetwork:
    """Directed graph with non-negative integer capacities.

    ``capacity(u, v)`` is 0 for every pair not listed.
    """

    __slots__ = ("n", "source", "sink", "_cap", "_adj", "labels")

    def __init__(
        self,
        n: int,
        source: int,
        sink: int,
        capacities: Mapping[tuple[int, int], int],
        labels: Sequence[str] | None = None,
    ):
        if not (0 <= source < n and 0 <= sink < n):
            raise ValueError("source and sink must be vertices of the network")
        if source == sink:
            raise ValueError("source and sink must differ")
        cap: dict[tuple[int, int], int] = {}
        adj: list[set[int]] = [set() for _ in range(n)]
        for (u, v), c in capacities.items():
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) leaves the vertex range")
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise ValueError(f"capacity of ({u}, {v}) must be a non-negative integer")
            if c == 0:
                continue
            cap[u, v] = c
            # reversals are traversable in the residual network
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.source = source
        self.sink = sink
        self._cap = cap
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise ValueError("one label per vertex required")

    def capacity(self, u: int, v: int) -> int:
        return self._cap.get((u, v), 0)

    def neighbors(self, u: int) -> tuple[int, ...]:
        """Vertices sharing an edge with ``u`` in either direction, ascending."""
        return self._adj[u]

    @property
    def edges(self) -> list[tuple[int, int, int]]:
        return sorted((u, v, c) for (u, v), c in self._cap.items())

    def __len__(self) -> int:
        return self.n


class Flow:
    """Skew-symmetric integer flow; unset pairs carry 0."""

    def __init__(self):
        self._f: dict[tuple[int, int], int] = {}
        self.augmentations = 0

    def __getitem__(self, uv: tuple[int, int]) -> int:
        return self._f.get(uv, 0)

    def push(self, u: int, v: int, amount: int) -> None:
        f = self._f.get((u, v), 0) + amount
        self._f[u, v] = f
        self._f[v, u] = -f

    def value(self, net: FlowNetwork) -> int:
        s = net.source
        return sum(self[s, v] for v in net.neighbors(s))

    def items(self):
        return ((uv, f) for uv, f in self._f.items() if f)


def residual_capacity(net: FlowNetwork, flow: Flow, u: int, v: int) -> int:
    return net.capacity(u, v) - flow[u, v]


def find_augmenting_path(net: FlowNetwork, flow: Flow) -> list[int] | None:
    """Shortest s-t path in the residual network, or None.

    Neighbours are expanded in ascending index order, so the result is
    deterministic.
    """
    s, t = net.source, net.sink
    pred = {s: s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in net.neighbors(u):
            if v in pred or residual_capacity(net, flow, u, v) <= 0:
                continue
            pred[v] = u
            if v == t:
                path = [t]
                while path[-1] != s:
                    path.append(pred[path[-1]])
                return path[::-1]
            queue.append(v)
    return None


def ford_fulkerson(
    net: FlowNetwork,
    on_augment: Callable[[FlowNetwork, Flow], None] | None = None,
) -> tuple[Flow, int]:
    """Maximum flow by repeated augmentation along residual paths.

    ``on_augment`` is called after every augmentation; tests use it to
    check the flow invariants step by step.
    """
    flow = Flow()
    while (path := find_augmenting_path(net, flow)) is not None:
        edges = list(zip(path, path[1:]))
        bottleneck = min(residual_capacity(net, flow, u, v) for u, v in edges)
        for u, v in edges:
            flow.push(u, v, bottleneck)
        flow.augmentations += 1
        if on_augment is not None:
            on_augment(net, flow)
    return flow, flow.value(net)


def flow_violations(net: FlowNetwork, flow: Flow) -> list[str]:
    """Every breach of capacity, skew symmetry or conservation."""
    problems = []
    pairs = {(u, v) for u in range(net.n) for v in net.neighbors(u)}
    pairs |= {uv for uv, _ in flow.items()}
    for u, v in sorted(pairs):
        if flow[u, v] > net.capacity(u, v):
            problems.append(f"capacity: f({u},{v})={flow[u, v]} > c={net.capacity(u, v)}")
        if flow[u, v] != -flow[v, u]:
            problems.append(f"skew symmetry: f({u},{v})={flow[u, v]}, f({v},{u})={flow[v, u]}")
    for u in range(net.n):
        if u in (net.source, net.sink):
            continue
        out = sum(flow[u, v] for v in range(net.n))
        if out != 0:
            problems.append(f"conservation: net flow {out} out of vertex {u}")
    return problems


@dataclass(frozen=True)
class BipartiteInstance:
    """Weighted bipartite graph; ``edges`` holds (left index, right index, weight)."""

    left: tuple[str, ...]
    right: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __init__(self, left: Iterable[str], right: Iterable[str], edges: Iterable[tuple[int, int, int]]):
        object.__setattr__(self, "left", tuple(left))
        object.__setattr__(self, "right", tuple(right))
        object.__setattr__(self, "edges", tuple(sorted(tuple(e) for e in edges)))
        seen = set()
        for i, j, w in self.edges:
            if not (0 <= i < len(self.left) and 0 <= j < len(self.right)):
                raise ValueError(f"edge ({i}, {j}) index out of range")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            if not 0 <= w <= 10:
                raise ValueError(f"edge ({i}, {j}) weight {w} outside [0, 10]")
            seen.add((i, j))

    def weight(self, i: int, j: int) -> int:
        for a, b, w in self.edges:
            if (a, b) == (i, j):
                return w
        return 0

    def left_vertex(self, i: int) -> int:
        return 1 + i

    def right_vertex(self, j: int) -> int:
        return 1 + len(self.left) + j


def build_matching_network(inst: BipartiteInstance, min_weight: int) -> FlowNetwork:
    """Unit-capacity network over the edges weighing at least ``min_weight``.

    Zero-weight edges never enter, whatever the threshold.
    """
    if not 0 <= min_weight <= 10:
        raise ValueError("min_weight must lie in [0, 10]")
    nl, nr = len(inst.left), len(inst.right)
    s, t = 0, nl + nr + 1
    cap = {(s, inst.left_vertex(i)): 1 for i in range(nl)}
    for i, j, w in inst.edges:
        if w > 0 and w >= min_weight:
            cap[inst.left_vertex(i), inst.right_vertex(j)] = 1
    for j in range(nr):
        cap[inst.right_vertex(j), t] = 1
    labels = ["<s>", *(f"L:{x}" for x in inst.left), *(f"R:{x}" for x in inst.right), "<t>"]
    return FlowNetwork(nl + nr + 2, s, t, cap, labels)


def extract_matching(net: FlowNetwork, flow: Flow, inst: BipartiteInstance) -> list[tuple[int, int]]:
    nl = len(inst.left)
    return [
        (i, j)
        for i in range(nl)
        for j in range(len(inst.right))
        if flow[inst.left_vertex(i), inst.right_vertex(j)] == 1
        and net.capacity(inst.left_vertex(i), inst.right_vertex(j)) == 1
    ]


class LevelResult(NamedTuple):
    level: int
    matching: tuple[tuple[int, int], ...]


def complete_match_level(inst: BipartiteInstance, levels: Sequence[int] = (10, 7, 3)) -> LevelResult:
    """Highest threshold in ``levels`` at which every left vertex can be matched.

    Returns level 0 and an empty matching when no threshold admits a
    complete matching. An empty left side is satisfied at the top level.
    """
    levels = sorted(levels, reverse=True)
    if not inst.left:
        return LevelResult(levels[0] if levels else 10, ())
    if len(inst.left) > len(inst.right):
        return LevelResult(0, ())
    for tau in levels:
        net = build_matching_network(inst, tau)
        flow, value = ford_fulkerson(net)
        if value == len(inst.left):
            return LevelResult(tau, tuple(extract_matching(net, flow, inst)))
    return LevelResult(0, ())


def dump_network(net: FlowNetwork, flow: Flow | None = None) -> str:
    """Line-oriented edge list: ``u -> v  cap=c  flow=f``."""
    lines = []
    for u, v, c in net.edges:
        f = flow[u, v] if flow is not None else 0
        lines.append(f"{net.labels[u]} -> {net.labels[v]}  cap={c}  flow={f}")
    return "\n".join(lines)
