"""Iterated relations on finite discrete spaces.

On a finite discrete space every subset is closed and open, and the
relation itself is one of its own closed neighbourhoods.  Two definitions
therefore collapse to graph notions:

* a point is chain recurrent iff it lies on a directed cycle (self-loops
  included), and
* transitive components are the strongly connected components among those
  points.

Nothing here handles infinite spaces.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from itinerary_lab.addresses import CriticalPair
from itinerary_lab.projection import coding_pi
from itinerary_lab.words import GE, LE, lex_compare


class FiniteRelation:
    """Relation on nodes ``0..n-1``; ``labels[i]`` names node ``i``."""

    def __init__(self, labels, edges):
        self.labels = list(labels)
        n = len(self.labels)
        succ = [set() for _ in range(n)]
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) references a missing node")
            succ[i].add(j)
        self.succ = [sorted(s) for s in succ]
        pred = [[] for _ in range(n)]
        for i, js in enumerate(self.succ):
            for j in js:
                pred[j].append(i)
        self.pred = pred

    def __len__(self):
        return len(self.labels)

    @property
    def nodes(self) -> frozenset:
        return frozenset(range(len(self.labels)))

    def edges(self) -> list:
        return [(i, j) for i, js in enumerate(self.succ) for j in js]

    def __eq__(self, other):
        return (isinstance(other, FiniteRelation) and self.labels == other.labels
                and self.succ == other.succ)

    def index(self, label) -> int:
        return self.labels.index(label)

    def names(self, nodes) -> list:
        return [self.labels[i] for i in sorted(nodes)]

    def to_json(self) -> dict:
        return {"nodes": [str(x) for x in self.labels], "edges": [list(e) for e in self.edges()]}

    # -- relational algebra ---------------------------------------------------

    def image(self, nodes) -> frozenset:
        return frozenset(j for i in nodes for j in self.succ[i])

    def transpose(self) -> "FiniteRelation":
        return FiniteRelation(self.labels, [(j, i) for i, j in self.edges()])

    def compose(self, other: "FiniteRelation") -> "FiniteRelation":
        """``self`` followed by ``other``: pairs ``(x, z)`` with ``x -> y`` here and ``y -> z`` there."""
        if len(other) != len(self):
            raise ValueError("relations live on different node sets")
        edges = {(i, k) for i, js in enumerate(self.succ) for j in js for k in other.succ[j]}
        return FiniteRelation(self.labels, edges)

    def iterate(self, k: int) -> "FiniteRelation":
        """``r^k``; ``r^0`` is the full relation ``X x X``."""
        if k < 0:
            raise ValueError("k must be non-negative")
        if k == 0:
            n = len(self)
            return FiniteRelation(self.labels, [(i, j) for i in range(n) for j in range(n)])
        out = self
        for _ in range(k - 1):
            out = out.compose(self)
        return out

    def hull(self, nodes) -> frozenset:
        """Smallest forward-invariant set containing ``nodes``."""
        seen = set(nodes)
        stack = list(seen)
        while stack:
            for j in self.succ[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return frozenset(seen)

    def back_hull(self, nodes) -> frozenset:
        seen = set(nodes)
        stack = list(seen)
        while stack:
            for j in self.pred[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return frozenset(seen)

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self)))
        g.add_edges_from(self.edges())
        return g


def image(r: FiniteRelation, nodes) -> frozenset:
    return r.image(nodes)


def compose(r: FiniteRelation, s: FiniteRelation) -> FiniteRelation:
    return r.compose(s)


def iterate(r: FiniteRelation, k: int) -> FiniteRelation:
    return r.iterate(k)


def omega_limit(r: FiniteRelation, nodes) -> frozenset:
    """Intersection of all forward-invariant sets absorbing some ``r^n(C)``.

    ``F(n)``, the hull of ``r^n(C)``, satisfies ``F(n+1) = r(F(n))`` and
    decreases, so iterating the image from ``F(0)`` until it stops changing
    gives the limit.
    """
    current = r.hull(nodes)
    while True:
        nxt = r.image(current)
        if nxt == current:
            return current
        current = nxt


def maximal_attractor(r: FiniteRelation) -> frozenset:
    return omega_limit(r, r.nodes)


def transitive_components(r: FiniteRelation) -> list:
    """Strongly connected components that carry a cycle, sorted by smallest node."""
    comps = []
    for comp in nx.strongly_connected_components(r.graph()):
        if len(comp) > 1 or any(i in r.succ[i] for i in comp):
            comps.append(frozenset(comp))
    return sorted(comps, key=min)


def chain_recurrent(r: FiniteRelation) -> frozenset:
    return frozenset().union(*transitive_components(r))


def basin_and_dual(r: FiniteRelation, attractor) -> tuple:
    """Basin ``{x : omega({x}) in A}`` and dual repeller (its complement).

    A cycle node escapes ``A`` when it can reach a node outside ``A``; the
    dual repeller is everything that can reach such a node.
    """
    A = frozenset(attractor)
    if r.image(A) != A:
        raise ValueError("attractor must satisfy r(A) = A")
    outside = r.nodes - A
    escaping = r.back_hull(outside) & chain_recurrent(r)
    dual = r.back_hull(escaping)
    basin = r.nodes - dual
    assert omega_limit(r.transpose(), dual) == dual, "dual repeller must attract under r^T"
    return basin, dual


@dataclass
class ConleyReport:
    maximal_attractor: frozenset
    chain_recurrent: frozenset
    transitive_components: list
    attractor: frozenset
    basin: frozenset
    dual_repeller: frozenset
    connecting: frozenset

    def to_json(self, r: FiniteRelation) -> dict:
        return {
            "maximal_attractor": r.names(self.maximal_attractor),
            "chain_recurrent": r.names(self.chain_recurrent),
            "transitive_components": [r.names(c) for c in self.transitive_components],
            "attractor": r.names(self.attractor),
            "basin": r.names(self.basin),
            "dual_repeller": r.names(self.dual_repeller),
            "connecting": r.names(self.connecting),
        }


def conley_report(r: FiniteRelation, seed) -> ConleyReport:
    """Decomposition around the attractor ``omega_limit(r, seed)``."""
    A = omega_limit(r, seed)
    basin, dual = basin_and_dual(r, A)
    comps = transitive_components(r)
    return ConleyReport(maximal_attractor(r), frozenset().union(*comps), comps, A,
                        basin, dual, r.nodes - (A | dual))


# -- relations built from the critical itineraries ------------------------------

def _all_words(k: int) -> list:
    return [format(i, f"0{k}b") for i in range(2 ** k)] if k else [""]


def _prepend_edges(crit: CriticalPair, k: int) -> list:
    crit.require(max(k - 1, 0))
    alpha, beta = crit.alpha.word[: k - 1], crit.beta.word[: k - 1]
    edges = []
    for v in range(2 ** k):
        body = v >> 1
        head = format(body, f"0{k - 1}b") if k > 1 else ""
        if lex_compare(head, alpha) in LE:
            edges.append((v, body))
        if lex_compare(head, beta) in GE:
            edges.append((v, body | (1 << (k - 1))))
    return edges


def build_itinerary_relation(crit: CriticalPair, k: int) -> FiniteRelation:
    """Depth-``k`` truncation of the prepend relation on words.

    Node ``v`` points to ``i + v[:k-1]``: to ``0 v[:k-1]`` when
    ``v[:k-1]`` does not exceed ``alpha|k-1``, and to ``1 v[:k-1]`` when it
    is not below ``beta|k-1``.  Undecided comparisons keep the edge.  Node
    ``i`` is the word with binary value ``i``, so node order is word order.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    return FiniteRelation(_all_words(k), _prepend_edges(crit, k))


def build_embedded_relation(crit: CriticalPair, k: int) -> FiniteRelation:
    """Same combinatorics, nodes labelled by their dyadic coding intervals."""
    if k < 1:
        raise ValueError("k must be at least 1")
    labels = [coding_pi(w) for w in _all_words(k)]
    return FiniteRelation(labels, _prepend_edges(crit, k))


def attractor_intervals(r: FiniteRelation) -> list:
    """``(lo, hi)`` dyadic intervals of the maximal attractor of an embedded relation."""
    return [(r.labels[i].lo, r.labels[i].hi) for i in sorted(maximal_attractor(r))]


def itinerary_report(crit: CriticalPair, k: int) -> tuple:
    """Conley data for the depth-``k`` itinerary relation.

    The maximal attractor is taken for the prepend relation, where it is the
    depth-``k`` address set.  The middle attractor (seeded by the cycles
    other than ``0^k`` and ``1^k``) and its basin and dual repeller are
    computed for the transposed, shift-direction relation, the orientation
    in which ``0^k`` and ``1^k`` repel.  Chain recurrence does not depend
    on orientation.
    """
    r = build_itinerary_relation(crit, k)
    ends = {0, 2 ** k - 1}
    comps = transitive_components(r)
    middle = frozenset().union(*(c for c in comps if not c <= ends))
    shift_rel = r.transpose()
    A = omega_limit(shift_rel, middle) if middle else frozenset()
    basin, dual = basin_and_dual(shift_rel, A)
    report = ConleyReport(maximal_attractor(r), frozenset().union(*comps), comps, A,
                          basin, dual, r.nodes - (A | dual))
    return r, report
