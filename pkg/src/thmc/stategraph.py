"""State graphs of path multisets: Euler paths, cycle decompositions, G_{m,n}.

A state graph is a directed multigraph on the states 1..S whose edge
multiplicities are the transition counts of a multiset of words; the
marked variant also counts how many words start at each state. For
three states the two-/three-cycle decomposition classifies which
transition vectors can be polytope vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .design import Model
from .words import PathMultiset, Word

_PAIRS3 = ((1, 2), (1, 3), (2, 3))
_CW3 = ((1, 2), (2, 3), (3, 1))
_CCW3 = ((1, 3), (3, 2), (2, 1))


class NoEulerianPath(ValueError):
    """The multigraph violates the Euler-path preconditions."""


@dataclass(frozen=True)
class StateGraph:
    """Directed multigraph on 1..S; ``marks`` counts word starts when present."""

    S: int
    x: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.x) != self.S or any(len(row) != self.S for row in self.x):
            raise ValueError("multiplicity matrix must be S x S")
        if any(v < 0 for row in self.x for v in row):
            raise ValueError("multiplicities must be non-negative")
        if self.marks is not None and (len(self.marks) != self.S or any(v < 0 for v in self.marks)):
            raise ValueError("marks must be a length-S non-negative vector")

    def mult(self, i: int, j: int) -> int:
        return self.x[i - 1][j - 1]

    @property
    def edge_count(self) -> int:
        return sum(v for row in self.x for v in row)

    def out_degree(self, i: int) -> int:
        return sum(self.x[i - 1])

    def in_degree(self, i: int) -> int:
        return sum(row[i - 1] for row in self.x)

    def unmarked(self) -> "StateGraph":
        return StateGraph(S=self.S, x=self.x) if self.marks is not None else self

    def has_self_loops(self) -> bool:
        return any(self.x[i][i] for i in range(self.S))

    def to_json(self) -> str:
        edges = [[i + 1, j + 1, self.x[i][j]] for i in range(self.S) for j in range(self.S) if self.x[i][j]]
        payload: dict = {"S": self.S, "edges": edges}
        if self.marks is not None:
            payload["marks"] = list(self.marks)
        return json.dumps(payload)

    def to_dot(self) -> str:
        lines = ["digraph state_graph {"]
        for i in range(1, self.S + 1):
            label = f"{i}" if self.marks is None else f"{i} [{self.marks[i - 1]}]"
            lines.append(f'  n{i} [label="{label}"];')
        for i in range(1, self.S + 1):
            for j in range(1, self.S + 1):
                m = self.mult(i, j)
                if m == 1:
                    lines.append(f"  n{i} -> n{j};")
                elif m > 1:
                    lines.append(f'  n{i} -> n{j} [label="{m}"];')
        lines.append("}")
        return "\n".join(lines)


def graph_of_multiset(multiset: PathMultiset, marked: bool = False) -> StateGraph:
    """Transition-count multigraph of a word multiset, optionally marked."""
    S = multiset.S
    x = [[0] * S for _ in range(S)]
    marks = [0] * S
    for word, mult in multiset.counts.items():
        marks[word[0] - 1] += mult
        for a, b in zip(word, word[1:]):
            x[a - 1][b - 1] += mult
    return StateGraph(
        S=S,
        x=tuple(tuple(row) for row in x),
        marks=tuple(marks) if marked else None,
    )


def graph_of_word(word: Sequence[int], S: int, marked: bool = False) -> StateGraph:
    return graph_of_multiset(PathMultiset.of([word], S=S), marked=marked)


def graph_of_transition_vector(x: Sequence[int], S: int = 3, *, no_loops: bool = True) -> StateGraph:
    """Rebuild a graph from a flat transition vector in lexicographic row order."""
    pairs = [(i, j) for i in range(1, S + 1) for j in range(1, S + 1) if not (no_loops and i == j)]
    if len(x) != len(pairs):
        raise ValueError(f"expected {len(pairs)} entries, got {len(x)}")
    mat = [[0] * S for _ in range(S)]
    for (i, j), v in zip(pairs, x):
        mat[i - 1][j - 1] = int(v)
    return StateGraph(S=S, x=tuple(tuple(row) for row in mat))


def fiber_equivalent(model: Model | str, W: PathMultiset, W_bar: PathMultiset) -> bool:
    """Same sufficient statistic, decided on (marked) state graphs.

    Models b/d compare unmarked graphs, models a/c marked graphs. Both
    multisets must share S, T, and the loop policy; words must have
    equal length, so equal graphs force equal cardinality as well.
    """
    model = Model.parse(model)
    if (W.S, W.T, W.no_loops) != (W_bar.S, W_bar.T, W_bar.no_loops):
        raise ValueError("multisets must share S, T, and the loop policy")
    marked = model.has_initial
    return graph_of_multiset(W, marked) == graph_of_multiset(W_bar, marked)


def eulerian_path(graph: StateGraph) -> Word:
    """A word consuming every edge exactly once (three states, no loops).

    The start vertex is the out-surplus vertex when the graph is
    unbalanced, otherwise the lowest-numbered vertex with an edge; ties
    always pick the lowest-numbered next state, so the output word is
    deterministic.
    """
    if graph.S != 3:
        raise NoEulerianPath("Euler construction is only provided for S = 3")
    if graph.has_self_loops():
        raise NoEulerianPath("graph has self-loops")
    if graph.edge_count == 0:
        raise NoEulerianPath("graph has no edges")
    diffs = [graph.out_degree(i) - graph.in_degree(i) for i in (1, 2, 3)]
    if sorted(diffs) not in ([0, 0, 0], [-1, 0, 1]):
        raise NoEulerianPath(f"degree imbalance {diffs} admits no Eulerian path")
    if any(diffs):
        start = diffs.index(1) + 1
    else:
        start = next(i for i in (1, 2, 3) if graph.out_degree(i) > 0)

    remaining = [list(row) for row in graph.x]
    stack = [start]
    finished: list[int] = []
    while stack:
        v = stack[-1]
        row = remaining[v - 1]
        nxt = next((j + 1 for j in range(3) if row[j] > 0), None)
        if nxt is None:
            finished.append(stack.pop())
        else:
            row[nxt - 1] -= 1
            stack.append(nxt)
    word = tuple(reversed(finished))
    if len(word) != graph.edge_count + 1:
        raise NoEulerianPath("graph is disconnected")
    return word


# ---------------------------------------------------------------------------
# Cycle decompositions and the G_{m,n} classification (S = 3)

@dataclass(frozen=True)
class CycleDecomposition:
    """Two-cycle count m, three-cycle count n, acyclic leftover."""

    m: int
    n: int
    leftover: StateGraph
    two_cycles_by_pair: tuple[int, int, int]  # pairs (1,2), (1,3), (2,3)
    three_cycles_cw: int
    three_cycles_ccw: int


def cycle_decomposition(graph: StateGraph) -> CycleDecomposition:
    """Peel all two-cycles (pairwise minima), then all three-cycles.

    The counts are canonical even though the edge-level decomposition is
    not: m is the unique maximal number of two-cycles, n the maximal
    number of three-cycles in the remainder.
    """
    if graph.S != 3 or graph.has_self_loops():
        raise ValueError("cycle decomposition is defined for loop-free graphs on 3 states")
    x = [list(row) for row in graph.x]
    per_pair = []
    for i, j in _PAIRS3:
        two = min(x[i - 1][j - 1], x[j - 1][i - 1])
        per_pair.append(two)
        x[i - 1][j - 1] -= two
        x[j - 1][i - 1] -= two
    m = sum(per_pair)
    cw = min(x[i - 1][j - 1] for i, j in _CW3)
    for i, j in _CW3:
        x[i - 1][j - 1] -= cw
    ccw = min(x[i - 1][j - 1] for i, j in _CCW3)
    for i, j in _CCW3:
        x[i - 1][j - 1] -= ccw
    leftover = StateGraph(S=3, x=tuple(tuple(row) for row in x))
    decomp = CycleDecomposition(
        m=m,
        n=cw + ccw,
        leftover=leftover,
        two_cycles_by_pair=tuple(per_pair),
        three_cycles_cw=cw,
        three_cycles_ccw=ccw,
    )
    assert 2 * decomp.m + 3 * decomp.n + leftover.edge_count == graph.edge_count
    return decomp


@dataclass(frozen=True)
class GmnClass:
    m: int
    n: int
    member_of_script_G: bool


def classify_Gmn(graph: StateGraph) -> GmnClass:
    """Class (m, n) plus membership in the one-two-cycle-type family.

    Membership needs at most one unordered pair with opposite edges and
    a single three-cycle orientation (the latter is implied but checked
    anyway).
    """
    decomp = cycle_decomposition(graph)
    pair_types = sum(1 for c in decomp.two_cycles_by_pair if c > 0)
    orientations = _three_cycle_orientations(graph)
    member = pair_types <= 1 and orientations <= 1
    return GmnClass(m=decomp.m, n=decomp.n, member_of_script_G=member)


def _three_cycle_orientations(graph: StateGraph) -> int:
    """How many triangle orientations occur as edge-disjoint three-cycles."""
    x = [list(row) for row in graph.x]
    for i, j in _PAIRS3:
        two = min(x[i - 1][j - 1], x[j - 1][i - 1])
        x[i - 1][j - 1] -= two
        x[j - 1][i - 1] -= two
    cw = min(x[i - 1][j - 1] for i, j in _CW3)
    ccw = min(x[i - 1][j - 1] for i, j in _CCW3)
    return (1 if cw else 0) + (1 if ccw else 0)


def f_T(T: int, t: int) -> int:
    """floor((T-1-2t)/3) on 0 <= 2t <= T-1, zero outside."""
    if T < 1:
        raise ValueError("T must be at least 1")
    if 0 <= 2 * t <= T - 1:
        return (T - 1 - 2 * t) // 3
    return 0


def enumerate_Gmn(T: int, m: int) -> tuple[StateGraph, ...]:
    """All graphs of G_{m, f_T(m)}: the at-most-18 case constructions.

    Choices: which pair carries the two-cycles (3), which orientation
    the three-cycles take (2), where the one or two leftover edges sit
    along that orientation (at most 3). Empty when 2m > T-1.
    """
    if m < 0 or T < 1:
        raise ValueError("need m >= 0 and T >= 1")
    if 2 * m > T - 1:
        return ()
    n = f_T(T, m)
    r = (T - 1) - 2 * m - 3 * n
    graphs: set[StateGraph] = set()
    pair_choices: Sequence[tuple[int, int] | None] = _PAIRS3 if m > 0 else (None,)
    for pair in pair_choices:
        for triangle in (_CW3, _CCW3):
            leftover_choices: list[tuple[tuple[int, int], ...]]
            if r == 0:
                leftover_choices = [()]
            elif r == 1:
                leftover_choices = [(e,) for e in triangle]
            else:
                leftover_choices = [tuple(e for e in triangle if e != skip) for skip in triangle]
            for leftover in leftover_choices:
                x = [[0] * 3 for _ in range(3)]
                if pair is not None:
                    i, j = pair
                    x[i - 1][j - 1] += m
                    x[j - 1][i - 1] += m
                for i, j in triangle:
                    x[i - 1][j - 1] += n
                for i, j in leftover:
                    x[i - 1][j - 1] += 1
                graph = StateGraph(S=3, x=tuple(tuple(row) for row in x))
                cls = classify_Gmn(graph)
                if cls.member_of_script_G and (cls.m, cls.n) == (m, n):
                    diffs = [graph.out_degree(i) - graph.in_degree(i) for i in (1, 2, 3)]
                    if sorted(diffs) in ([0, 0, 0], [-1, 0, 1]):
                        graphs.add(graph)
    result = tuple(sorted(graphs, key=lambda g: g.x))
    assert len(result) <= 18
    return result
