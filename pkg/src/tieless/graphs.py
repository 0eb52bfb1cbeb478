"""Graphs induced by a comparison matrix.

``G``  directed graph with an edge i -> j whenever i is better than j,
``H``  ``G`` with every edge spanning more than one depth level removed,
``U``  undirected incomparability graph,
``G'`` DAG over the connected components of ``U``.

Node order everywhere follows the canonical object order of the matrix, which
keeps all outputs deterministic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import ComparisonMatrix, Outcome
from .errors import CycleDetected, MixedComponentDirection

DepthAssignment = dict[str, int]


@dataclass(frozen=True)
class DirectedOrderGraph:
    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    _succ: dict[str, tuple[str, ...]] = field(init=False, repr=False, compare=False)
    _pred: dict[str, tuple[str, ...]] = field(init=False, repr=False, compare=False)
    _topo: tuple[str, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        nodes = tuple(self.nodes)
        edges = frozenset(self.edges)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        pos = {x: i for i, x in enumerate(nodes)}
        succ: dict[str, list[str]] = {x: [] for x in nodes}
        pred: dict[str, list[str]] = {x: [] for x in nodes}
        for a, b in edges:
            if a not in pos or b not in pos:
                raise ValueError(f"edge ({a}, {b}) refers to a node outside the graph")
            succ[a].append(b)
            pred[b].append(a)
        object.__setattr__(self, "_succ", {x: tuple(sorted(v, key=pos.__getitem__)) for x, v in succ.items()})
        object.__setattr__(self, "_pred", {x: tuple(sorted(v, key=pos.__getitem__)) for x, v in pred.items()})
        object.__setattr__(self, "_topo", self._toposort(pos))

    def _toposort(self, pos: dict[str, int]) -> tuple[str, ...]:
        # Kahn's algorithm; ready nodes are taken in canonical order
        indeg = {x: len(self._pred[x]) for x in self.nodes}
        ready = [pos[x] for x in self.nodes if indeg[x] == 0]
        heapq.heapify(ready)
        order: list[str] = []
        while ready:
            x = self.nodes[heapq.heappop(ready)]
            order.append(x)
            for y in self._succ[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    heapq.heappush(ready, pos[y])
        if len(order) != len(self.nodes):
            stuck = [x for x in self.nodes if indeg[x] > 0]
            raise CycleDetected(f"directed graph has a cycle through {stuck[:5]}")
        return tuple(order)

    def successors(self, x: str) -> tuple[str, ...]:
        return self._succ[x]

    def predecessors(self, x: str) -> tuple[str, ...]:
        return self._pred[x]

    def out_degree(self, x: str) -> int:
        return len(self._succ[x])

    def in_degree(self, x: str) -> int:
        return len(self._pred[x])

    def topological_order(self) -> tuple[str, ...]:
        return self._topo

    def sorted_edges(self) -> list[tuple[str, str]]:
        pos = {x: i for i, x in enumerate(self.nodes)}
        return sorted(self.edges, key=lambda e: (pos[e[0]], pos[e[1]]))


@dataclass(frozen=True)
class IncomparabilityGraph:
    nodes: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def neighbours(self, x: str) -> list[str]:
        out = []
        for e in self.edges:
            if x in e:
                (other,) = e - {x}
                out.append(other)
        return out


@dataclass(frozen=True)
class ComponentDag:
    components: tuple[tuple[str, ...], ...]
    edges: frozenset[tuple[int, int]]

    def as_graph(self) -> DirectedOrderGraph:
        return DirectedOrderGraph(
            tuple(str(i) for i in range(len(self.components))),
            frozenset((str(a), str(b)) for a, b in self.edges),
        )


def build_directed_graph(cm: ComparisonMatrix) -> DirectedOrderGraph:
    return DirectedOrderGraph(cm.ids, frozenset(cm.better_pairs()))


def compute_depths(g: DirectedOrderGraph) -> DepthAssignment:
    """Length of the longest directed path ending at each node."""
    depth: DepthAssignment = {}
    for x in g.topological_order():
        preds = g.predecessors(x)
        depth[x] = max((depth[p] for p in preds), default=-1) + 1
    return {x: depth[x] for x in g.nodes}


def _reach_masks(g: DirectedOrderGraph) -> dict[str, int]:
    pos = {x: i for i, x in enumerate(g.nodes)}
    reach: dict[str, int] = {}
    for x in reversed(g.topological_order()):
        mask = 0
        for y in g.successors(x):
            mask |= reach[y] | (1 << pos[y])
        reach[x] = mask
    return reach


def transitive_reduction(g: DirectedOrderGraph) -> DirectedOrderGraph:
    """Drop every edge implied by a longer path; reachability is unchanged."""
    pos = {x: i for i, x in enumerate(g.nodes)}
    reach = _reach_masks(g)
    kept = set()
    for x in g.nodes:
        via = 0
        for y in g.successors(x):
            via |= reach[y]
        kept.update((x, y) for y in g.successors(x) if not via >> pos[y] & 1)
    return DirectedOrderGraph(g.nodes, frozenset(kept))


def sparsify(g: DirectedOrderGraph, depths: DepthAssignment | None = None) -> DirectedOrderGraph:
    """Keep only edges joining consecutive depth levels (the graph ``H``)."""
    d = compute_depths(g) if depths is None else depths
    return DirectedOrderGraph(g.nodes, frozenset((a, b) for a, b in g.edges if d[b] - d[a] == 1))


def build_incomparability_graph(cm: ComparisonMatrix) -> IncomparabilityGraph:
    ids = cm.ids
    n = len(ids)
    edges = frozenset(
        frozenset((ids[i], ids[j]))
        for i in range(n)
        for j in range(i + 1, n)
        if cm.outcomes[i][j] is Outcome.INCOMPARABLE and cm.outcomes[j][i] is Outcome.INCOMPARABLE
    )
    return IncomparabilityGraph(ids, edges)


def connected_components(u: IncomparabilityGraph) -> list[tuple[str, ...]]:
    """Components ordered by their smallest canonical index; members in canonical order."""
    pos = {x: i for i, x in enumerate(u.nodes)}
    adj: dict[str, list[str]] = {x: [] for x in u.nodes}
    for e in u.edges:
        a, b = tuple(e)
        adj[a].append(b)
        adj[b].append(a)
    seen: set[str] = set()
    comps = []
    for x in u.nodes:
        if x in seen:
            continue
        seen.add(x)
        stack, comp = [x], []
        while stack:
            y = stack.pop()
            comp.append(y)
            for z in adj[y]:
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        comps.append(tuple(sorted(comp, key=pos.__getitem__)))
    return comps


def build_component_dag(components: Sequence[Iterable[str]], cm: ComparisonMatrix) -> ComponentDag:
    """Edge ``Vi -> Vj`` iff every member of ``Vi`` is better than every member of ``Vj``."""
    comps = tuple(tuple(c) for c in components)
    owner: dict[str, int] = {}
    for k, comp in enumerate(comps):
        for x in comp:
            if x in owner:
                raise ValueError(f"{x!r} appears in more than one component")
            owner[x] = k
    if set(owner) != set(cm.ids):
        raise ValueError("components do not partition the matrix ids")

    edges = set()
    for a in range(len(comps)):
        for b in range(a + 1, len(comps)):
            forward = backward = incomparable = 0
            for x in comps[a]:
                for y in comps[b]:
                    o = cm.outcome(x, y)
                    if o is Outcome.BETTER:
                        forward += 1
                    elif o is Outcome.WORSE:
                        backward += 1
                    else:
                        incomparable += 1
            if incomparable:
                raise ValueError(
                    f"components {a} and {b} contain an incomparable cross pair; they are not components of U"
                )
            if forward and backward:
                raise MixedComponentDirection(
                    f"components {a} and {b}: {forward} cross pairs point forward, {backward} backward"
                )
            edges.add((a, b) if forward else (b, a))
    dag = ComponentDag(comps, frozenset(edges))
    dag.as_graph()  # raises CycleDetected
    return dag


def component_depths(dag: ComponentDag) -> list[int]:
    d = compute_depths(dag.as_graph())
    return [d[str(i)] for i in range(len(dag.components))]


def _q(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def directed_to_dot(g: DirectedOrderGraph, name: str = "G", depths: DepthAssignment | None = None) -> str:
    lines = [f"digraph {name} {{"]
    for x in g.nodes:
        label = x if depths is None else f"{x}\\nd={depths[x]}"
        lines.append(f"  {_q(x)} [label={_q(label)}];")
    for a, b in g.sorted_edges():
        lines.append(f"  {_q(a)} -> {_q(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def undirected_to_dot(u: IncomparabilityGraph, name: str = "U") -> str:
    pos = {x: i for i, x in enumerate(u.nodes)}
    lines = [f"graph {name} {{"]
    lines.extend(f"  {_q(x)};" for x in u.nodes)
    pairs = sorted((tuple(sorted(e, key=pos.__getitem__)) for e in u.edges), key=lambda p: (pos[p[0]], pos[p[1]]))
    lines.extend(f"  {_q(a)} -- {_q(b)};" for a, b in pairs)
    lines.append("}")
    return "\n".join(lines) + "\n"


def component_dag_to_dot(dag: ComponentDag, name: str = "Gprime") -> str:
    depths = component_depths(dag)
    lines = [f"digraph {name} {{"]
    for k, comp in enumerate(dag.components):
        label = "{" + ", ".join(comp) + f"}}\\nd={depths[k]}"
        lines.append(f"  {_q('V' + str(k))} [label={_q(label)}];")
    for a, b in sorted(dag.edges):
        lines.append(f"  {_q('V' + str(a))} -> {_q('V' + str(b))};")
    lines.append("}")
    return "\n".join(lines) + "\n"
