"""Feynman graphs and their Symanzik polynomials.

A graph is a connected multigraph whose edges carry a Schwinger variable and a
mass symbol, and whose vertices carry external momentum labels.  The first
Symanzik polynomial sums over spanning trees, the second over spanning
2-forests with the squared momentum flowing through the cut; the printed sign
convention is ``F = F0 + U * sum_e m_e^2 x_e`` with ``F0`` carrying a minus
sign on each channel invariant.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .poly import Polynomial


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple  # (vertex, vertex)
    mass: str    # mass symbol, e.g. "m1"; squared symbol is f"{mass}sq"
    var: str     # Schwinger variable name, e.g. "x1"

    @property
    def mass_sq(self) -> str:
        return f"{self.mass}sq"

    def is_self_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class Kinematics:
    """Symbol tables for masses and momentum-channel invariants.

    `channels` maps a frozenset of external momentum labels to the name of the
    squared-momentum invariant of that channel; complementary subsets denote
    the same invariant by momentum conservation, and the empty or full set has
    invariant zero.
    """

    mass_sq: dict = field(default_factory=dict)      # edge id -> variable name
    channels: dict = field(default_factory=dict)     # frozenset[str] -> variable name

    def channel_symbol(self, subset: frozenset, all_momenta: frozenset):
        """Invariant name for a momentum subset, or None when it vanishes."""
        if not subset or subset == all_momenta:
            return None
        if subset in self.channels:
            return self.channels[subset]
        comp = all_momenta - subset
        if comp in self.channels:
            return self.channels[comp]
        raise GraphError(f"no invariant symbol for channel {sorted(subset)}")


class FeynmanGraph:
    """Connected multigraph with masses, Schwinger variables and legs."""

    def __init__(self, vertices, edges, legs=None, channels=None):
        self.vertices = tuple(dict.fromkeys(vertices))
        self.edges = tuple(edges)
        self.legs = tuple(legs or ())  # (vertex, momentum symbol) pairs
        self.channels = {frozenset(k): v for k, v in (channels or {}).items()}
        self._validate()

    def _validate(self):
        vset = set(self.vertices)
        if not vset:
            raise GraphError("graph needs at least one vertex")
        for e in self.edges:
            if e.ends[0] not in vset or e.ends[1] not in vset:
                raise GraphError(f"edge {e.id} has unknown endpoint")
        names = [e.var for e in self.edges]
        if len(set(names)) != len(names):
            raise GraphError("edge variable names must be pairwise distinct")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise GraphError("edge ids must be pairwise distinct")
        for v, _ in self.legs:
            if v not in vset:
                raise GraphError(f"leg attached to unknown vertex {v}")
        if not self._connected(self.edges, self.vertices):
            raise GraphError("graph must be connected")

    @staticmethod
    def _connected(edges, vertices) -> bool:
        if not vertices:
            return False
        adj = {v: set() for v in vertices}
        for e in edges:
            adj[e.ends[0]].add(e.ends[1])
            adj[e.ends[1]].add(e.ends[0])
        seen = {vertices[0]}
        stack = [vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(vertices)

    @property
    def loop_number(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    @property
    def momenta(self) -> frozenset:
        return frozenset(p for _, p in self.legs)

    def legs_at(self, vertex) -> tuple:
        return tuple(p for v, p in self.legs if v == vertex)

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise GraphError(f"unknown edge {edge_id!r}")

    def kinematics(self) -> Kinematics:
        return Kinematics(
            mass_sq={e.id: e.mass_sq for e in self.edges},
            channels=dict(self.channels),
        )

    # -- combinatorics -------------------------------------------------------

    def spanning_trees(self) -> list:
        """All spanning trees as frozensets of edge ids (deletion-contraction)."""
        comp = {v: v for v in self.vertices}

        def find(c, v):
            while c[v] != v:
                v = c[v]
            return v

        def rec(edges, comp, n_comp):
            if n_comp == 1:
                return [frozenset()]
            if not edges:
                return []
            e, rest = edges[0], edges[1:]
            a, b = find(comp, e.ends[0]), find(comp, e.ends[1])
            trees = rec(rest, comp, n_comp)  # delete e
            if a != b:  # contract e
                comp2 = dict(comp)
                comp2[a] = b
                trees += [t | {e.id} for t in rec(rest, comp2, n_comp - 1)]
            return trees

        return sorted(rec(list(self.edges), comp, len(self.vertices)),
                      key=lambda t: sorted(t))

    def two_forests(self) -> list:
        """Spanning forests with exactly two trees, as (edge ids, vertex side).

        The returned vertex side is the component containing the first vertex,
        fixing a deterministic orientation of the cut.
        """
        want = len(self.vertices) - 2
        if want < 0:
            return []
        out = []
        for combo in itertools.combinations(self.edges, want):
            comp = {v: v for v in self.vertices}

            def find(v):
                while comp[v] != v:
                    v = comp[v]
                return v

            acyclic = True
            for e in combo:
                a, b = find(e.ends[0]), find(e.ends[1])
                if a == b:
                    acyclic = False
                    break
                comp[a] = b
            if not acyclic:
                continue
            roots = {find(v) for v in self.vertices}
            if len(roots) != 2:
                continue
            side = frozenset(v for v in self.vertices
                             if find(v) == find(self.vertices[0]))
            out.append((frozenset(e.id for e in combo), side))
        return sorted(out, key=lambda fs: sorted(fs[0]))

    def __repr__(self):
        return (f"FeynmanGraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, "
                f"h1={self.loop_number})")


def symanzik_U(g: FeynmanGraph) -> Polynomial:
    """First Symanzik polynomial: sum over spanning trees of prod_{e not in T} x_e."""
    all_ids = {e.id: e for e in g.edges}
    total = Polynomial()
    for tree in g.spanning_trees():
        powers = {all_ids[i].var: 1 for i in all_ids if i not in tree}
        total = total + Polynomial.monomial(1, powers)
    return total


def symanzik_F(g: FeynmanGraph, k: Kinematics | None = None) -> Polynomial:
    """Second Symanzik polynomial F = F0 + U * sum_e m_e^2 x_e."""
    if k is None:
        k = g.kinematics()
    all_ids = {e.id: e for e in g.edges}
    all_momenta = g.momenta
    f0 = Polynomial()
    for forest, side in g.two_forests():
        subset = frozenset(p for v, p in g.legs if v in side)
        sym = k.channel_symbol(subset, all_momenta)
        if sym is None:
            continue
        powers = {all_ids[i].var: 1 for i in all_ids if i not in forest}
        f0 = f0 - Polynomial.var(sym) * Polynomial.monomial(1, powers)
    mass_part = Polynomial()
    for e in g.edges:
        mass_part = mass_part + Polynomial.var(k.mass_sq[e.id]) * Polynomial.var(e.var)
    return f0 + symanzik_U(g) * mass_part


def contract(g: FeynmanGraph, edge_ids) -> FeynmanGraph:
    """Quotient graph G/I: delete the edges of I and identify their endpoints
    componentwise.  Self-loops in I are rejected."""
    ids = set(edge_ids)
    unknown = ids - {e.id for e in g.edges}
    if unknown:
        raise GraphError(f"unknown edges {sorted(unknown)}")
    if ids == {e.id for e in g.edges}:
        raise GraphError("cannot contract every edge")
    for e in g.edges:
        if e.id in ids and e.is_self_loop():
            raise GraphError(f"cannot contract self-loop {e.id}")
    # union-find over the contracted subgraph
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in g.edges:
        if e.id in ids:
            a, b = find(e.ends[0]), find(e.ends[1])
            if a != b:
                parent[a] = b
    # representative = first original vertex of each merged class
    rep_name = {}
    for v in g.vertices:
        r = find(v)
        rep_name.setdefault(r, v)
    remap = {v: rep_name[find(v)] for v in g.vertices}
    vertices = tuple(dict.fromkeys(remap[v] for v in g.vertices))
    edges = tuple(
        Edge(e.id, (remap[e.ends[0]], remap[e.ends[1]]), e.mass, e.var)
        for e in g.edges if e.id not in ids
    )
    legs = tuple((remap[v], p) for v, p in g.legs)
    return FeynmanGraph(vertices, edges, legs, dict(g.channels))


def load_graph(data) -> FeynmanGraph:
    """Build a FeynmanGraph from the JSON document schema.

    Schema: {"vertices": [...], "edges": [{"id","ends","mass","var"}, ...],
    "legs": [{"vertex","momentum"}, ...], "channels": {"p1": "p1sq", ...}};
    channel keys join momentum labels with '+'.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        edges = [Edge(e["id"], (e["ends"][0], e["ends"][1]), e["mass"], e["var"])
                 for e in data["edges"]]
        legs = [(l["vertex"], l["momentum"]) for l in data.get("legs", [])]
        channels = {
            frozenset(key.split("+")): sym
            for key, sym in data.get("channels", {}).items()
        }
        return FeynmanGraph(data["vertices"], edges, legs, channels)
    except (KeyError, IndexError, TypeError) as exc:
        raise GraphError(f"malformed graph document: {exc}") from exc


# -- builtin graphs ------------------------------------------------------------


def bubble_graph() -> FeynmanGraph:
    return load_graph({
        "vertices": ["v1", "v2"],
        "edges": [
            {"id": "1", "ends": ["v1", "v2"], "mass": "m1", "var": "x1"},
            {"id": "2", "ends": ["v2", "v1"], "mass": "m2", "var": "x2"},
        ],
        "legs": [{"vertex": "v1", "momentum": "p1"},
                 {"vertex": "v2", "momentum": "p2"}],
        "channels": {"p1": "psq"},
    })


def triangle_graph() -> FeynmanGraph:
    # edge i sits opposite the vertex with incoming momentum p_i
    return load_graph({
        "vertices": ["v1", "v2", "v3"],
        "edges": [
            {"id": "1", "ends": ["v2", "v3"], "mass": "m1", "var": "x1"},
            {"id": "2", "ends": ["v3", "v1"], "mass": "m2", "var": "x2"},
            {"id": "3", "ends": ["v1", "v2"], "mass": "m3", "var": "x3"},
        ],
        "legs": [{"vertex": "v1", "momentum": "p1"},
                 {"vertex": "v2", "momentum": "p2"},
                 {"vertex": "v3", "momentum": "p3"}],
        "channels": {"p1": "p1sq", "p2": "p2sq", "p3": "p3sq"},
    })


def sunrise_graph() -> FeynmanGraph:
    return load_graph({
        "vertices": ["v1", "v2"],
        "edges": [
            {"id": "1", "ends": ["v1", "v2"], "mass": "m1", "var": "x1"},
            {"id": "2", "ends": ["v1", "v2"], "mass": "m2", "var": "x2"},
            {"id": "3", "ends": ["v1", "v2"], "mass": "m3", "var": "x3"},
        ],
        "legs": [{"vertex": "v1", "momentum": "p1"},
                 {"vertex": "v2", "momentum": "p2"}],
        "channels": {"p1": "psq"},
    })


def icecream_graph() -> FeynmanGraph:
    # p1 enters the lone vertex of the loop gamma = {1,2}; p2 and p3 enter the
    # two vertices shared with the cup {3,4}
    return load_graph({
        "vertices": ["v0", "v1", "v2"],
        "edges": [
            {"id": "1", "ends": ["v1", "v2"], "mass": "m1", "var": "x1"},
            {"id": "2", "ends": ["v2", "v1"], "mass": "m2", "var": "x2"},
            {"id": "3", "ends": ["v0", "v2"], "mass": "m3", "var": "x3"},
            {"id": "4", "ends": ["v0", "v1"], "mass": "m4", "var": "x4"},
        ],
        "legs": [{"vertex": "v0", "momentum": "p1"},
                 {"vertex": "v1", "momentum": "p2"},
                 {"vertex": "v2", "momentum": "p3"}],
        "channels": {"p1": "p1sq", "p2": "p2sq", "p3": "p3sq"},
    })


BUILTIN_GRAPHS = {
    "bubble": bubble_graph,
    "triangle": triangle_graph,
    "sunrise": sunrise_graph,
    "icecream": icecream_graph,
}
