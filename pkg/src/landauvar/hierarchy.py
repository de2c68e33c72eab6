"""Compatibility relation between Landau components and the vanishing oracle.

An edge (l, l') in the relation means that the iterated variation "first
around l, then around l'" is not excluded; the oracle only ever certifies
vanishing, never non-vanishing.  Arrows require the simple type of the later
component to fit inside the type of the earlier one, with extra vetoes for
linear pinches and for odd-parity repetitions; components with non-isolated
critical sets ("general") get the containment test only.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .landau import LINEAR, LandauComponent


class HierarchyError(ValueError):
    pass


@dataclass(frozen=True)
class HierarchyRelation:
    nodes: tuple
    edges: frozenset  # ordered pairs (source, target): target <= source

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def successors(self, node: str) -> list:
        return sorted(t for s, t in self.edges if s == node)

    def reachable_from(self, node: str) -> frozenset:
        """Nodes reachable by a directed path of length >= 1."""
        seen = set()
        frontier = [t for s, t in self.edges if s == node]
        while frontier:
            cur = frontier.pop()
            if cur in seen:
                continue
            seen.add(cur)
            frontier.extend(self.successors(cur))
        return frozenset(seen)

    def reachability(self) -> dict:
        return {v: self.reachable_from(v) for v in self.nodes}


@dataclass(frozen=True)
class Verdict:
    forced_zero: bool
    reason: str | None = None

    def __str__(self):
        return f"forced_zero ({self.reason})" if self.forced_zero else "unconstrained"


def compatible(target: LandauComponent, source: LandauComponent) -> bool:
    """True iff the variation around `target` may follow the one around
    `source`, i.e. target <= source in the component relation."""
    if not target.simple_K <= source.type_K:
        return False
    if not source.simple_J <= target.type_J:
        return False
    # the refinement vetoes are proved for simple pinches only
    if target.is_simple_pinch and source.is_simple_pinch:
        if source.pinch == LINEAR and target.type_K == source.type_K:
            return False
        if target.pinch == LINEAR and target.type_J == source.type_J:
            return False
        if (
            target.id == source.id
            and source.parity is not None
            and source.parity % 2 != 0
        ):
            return False
    return True


def hierarchy_graph(components) -> HierarchyRelation:
    """Full pairwise relation over the given components, self-edges included."""
    comps = list(components)
    ids = [c.id for c in comps]
    if len(set(ids)) != len(ids):
        raise HierarchyError("duplicate component ids")
    edges = frozenset(
        (src.id, tgt.id) for src, tgt in product(comps, comps) if compatible(tgt, src)
    )
    return HierarchyRelation(nodes=tuple(sorted(ids)), edges=edges)


def word_vanishes(rel: HierarchyRelation, components, word) -> Verdict:
    """Oracle for the iterated variation along `word` (application order).

    forced_zero when some component has identically zero variation or some
    consecutive pair is not an arrow of the relation; otherwise unconstrained,
    which is *not* a claim of non-vanishing.
    """
    by_id = {c.id: c for c in components}
    for cid in word:
        if cid not in by_id:
            raise HierarchyError(f"unknown component id {cid!r}")
    for cid in word:
        if by_id[cid].variation_known_zero:
            return Verdict(True, f"variation around {cid} is identically zero")
    for a, b in zip(word, word[1:]):
        if (a, b) not in rel.edges:
            return Verdict(True, f"no arrow {a} -> {b}")
    return Verdict(False)


def to_dot(rel: HierarchyRelation, components=None) -> str:
    """DOT digraph with type sets in the node labels; deterministic order."""
    by_id = {c.id: c for c in components} if components else {}
    lines = ["digraph hierarchy {"]
    for node in rel.nodes:
        comp = by_id.get(node)
        if comp is not None:
            label = (
                f"{node}\\nJ={{{','.join(sorted(comp.type_J))}}}"
                f" K={{{','.join(sorted(comp.type_K))}}}"
            )
        else:
            label = node
        lines.append(f'    "{node}" [label="{label}"];')
    for s, t in rel.sorted_edges():
        lines.append(f'    "{s}" -> "{t}";')
    lines.append("}")
    return "\n".join(lines)


def edges_json(rel: HierarchyRelation) -> list:
    return [[s, t] for s, t in rel.sorted_edges()]
