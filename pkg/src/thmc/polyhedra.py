"""Exact rational polyhedral computation for the transition cones and polytopes.

Vertices are certified by exact LP feasibility (is the point a convex
combination of the rest?), facets by the double description method run
in a unimodular coordinate system of the column span, and f-vectors by
closure-based face enumeration over the vertex-facet incidences. The
two routes cross-validate each other; no floating point anywhere.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import stategraph
from .design import Model, distinct_columns
from .intlinalg import (
    IntLattice,
    IntVec,
    as_int_matrix,
    det_bareiss,
    kernel_lattice_basis,
    mat_vec,
    primitive_vector,
)


class DegenerateInput(ValueError):
    """No usable generators (e.g. all columns zero)."""


# ---------------------------------------------------------------------------
# Exact rational LP feasibility (phase-1 simplex, Bland's rule)

def _as_integer_row(values: Sequence[int | Fraction]) -> list[int]:
    """Scale one equation row to integers (rows scale independently)."""
    if all(type(x) is int for x in values):
        return list(values)
    fracs = [Fraction(x) for x in values]
    scale = 1
    for x in fracs:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    return [int(x * scale) for x in fracs]


def linear_feasible(
    columns: Sequence[Sequence[int | Fraction]],
    rhs: Sequence[int | Fraction],
    *,
    coefficient_sum: int | Fraction | None = None,
) -> bool:
    """Does rhs = sum(lambda_j * columns[j]) admit a solution with lambda >= 0?

    ``coefficient_sum`` adds the constraint sum(lambda) == value (so 1
    tests convex-hull membership, k tests the k-th dilation). Runs an
    exact phase-1 simplex on a fraction-free integer tableau: every row
    carries an implicit positive scale, pivots cross-multiply, and rows
    are gcd-normalized to keep entries small. Bland's rule (smallest
    entering index, smallest basic index on ratio ties) guarantees
    termination.
    """
    if not columns:
        return all(Fraction(x) == 0 for x in rhs) and (coefficient_sum in (None, 0))
    n = len(columns)
    m = len(rhs) + (0 if coefficient_sum is None else 1)
    width = n + m + 1  # structural | artificial identity | rhs

    rows: list[list[int]] = []
    for i in range(len(rhs)):
        raw = [columns[j][i] for j in range(n)] + [0] * m + [rhs[i]]
        rows.append(_as_integer_row(raw))
    if coefficient_sum is not None:
        rows.append(_as_integer_row([1] * n + [0] * m + [coefficient_sum]))
    for i, row in enumerate(rows):
        if row[-1] < 0:
            rows[i] = [-x for x in row]
        rows[i][n + i] = 1

    # Reduced-cost row for min(sum of artificials); value cell goes last.
    cost = [0] * width
    for j in range(width):
        cost[j] = -sum(row[j] for row in rows)
    for i in range(m):
        cost[n + i] = 0
    basis = [n + i for i in range(m)]

    while True:
        enter = next((j for j in range(width - 1) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i in range(m):
            a = rows[i][enter]
            if a <= 0:
                continue
            if leave is None:
                leave = i
            else:
                # compare rhs_i / a_i < rhs_leave / a_leave by cross-multiplying
                lhs = rows[i][-1] * rows[leave][enter]
                rhs_cmp = rows[leave][-1] * a
                if lhs < rhs_cmp or (lhs == rhs_cmp and basis[i] < basis[leave]):
                    leave = i
        if leave is None:
            raise AssertionError("phase-1 objective unbounded; this cannot happen")
        pivot_row = rows[leave]
        p = pivot_row[enter]
        for i in range(m):
            if i == leave:
                continue
            f = rows[i][enter]
            if f:
                row = rows[i]
                new_row = [x * p - y * f for x, y in zip(row, pivot_row)]
                g = 0
                for x in new_row:
                    g = gcd(g, x)
                    if g == 1:
                        break
                rows[i] = [x // g for x in new_row] if g > 1 else new_row
        f = cost[enter]
        if f:
            new_cost = [x * p - y * f for x, y in zip(cost, pivot_row)]
            g = 0
            for x in new_cost:
                g = gcd(g, x)
                if g == 1:
                    break
            cost = [x // g for x in new_cost] if g > 1 else new_cost
        basis[leave] = enter
    return cost[-1] == 0


def in_cone_lp(columns: Sequence[Sequence[int]], point: Sequence[int | Fraction]) -> bool:
    return linear_feasible(columns, point)


def in_dilation_lp(columns: Sequence[Sequence[int]], point: Sequence[int | Fraction], k: int | Fraction) -> bool:
    return linear_feasible(columns, point, coefficient_sum=k)


# ---------------------------------------------------------------------------
# Rational rank / independence helpers

def _rank(rows: Iterable[Sequence[int | Fraction]]) -> int:
    work: list[list[Fraction]] = []
    for row in rows:
        vec = [Fraction(x) for x in row]
        for piv in work:
            lead = next(i for i, x in enumerate(piv) if x)
            if vec[lead]:
                f = vec[lead] / piv[lead]
                vec = [x - f * y for x, y in zip(vec, piv)]
        if any(vec):
            work.append(vec)
    return len(work)


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull spanned by the points."""
    if not points:
        return -1
    base = points[0]
    return _rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def _independent_subset(vectors: Sequence[IntVec], size: int) -> list[int]:
    picked: list[int] = []
    work: list[list[Fraction]] = []
    for idx, vec in enumerate(vectors):
        v = [Fraction(x) for x in vec]
        for piv in work:
            lead = next(i for i, x in enumerate(piv) if x)
            if v[lead]:
                f = v[lead] / piv[lead]
                v = [x - f * y for x, y in zip(v, piv)]
        if any(v):
            work.append(v)
            picked.append(idx)
            if len(picked) == size:
                return picked
    raise DegenerateInput(f"generators span rank {len(picked)}, expected {size}")


def _adjugate_columns(matrix: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """Columns of adj(M) and det(M), via cofactor expansion (small n)."""
    n = len(matrix)
    det = det_bareiss(matrix)
    cols: list[list[int]] = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [matrix[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            cof = det_bareiss(minor) if minor else 1
            if (i + j) % 2:
                cof = -cof
            # adj = transpose of cofactor matrix; store column-wise
            cols[i][j] = cof
    return cols, det


# ---------------------------------------------------------------------------
# Double description: facets of a full-dimensional pointed cone

def dual_description(generators: Sequence[IntVec]) -> tuple[IntVec, ...]:
    """Extreme rays of {h : h.g >= 0 for all generators} = facet normals.

    The generators must span the full ambient space. Classic incremental
    double description: start from the simplicial dual cone of a
    linearly independent generator subset, insert the remaining
    constraints one by one, and combine adjacent positive/negative ray
    pairs. Adjacency uses the combinatorial zero-set test, which is
    exact here because all tracked rays satisfy the processed
    constraints with >= 0.
    """
    gens = sorted(set(primitive_vector(g) for g in generators if any(g)))
    if not gens:
        raise DegenerateInput("no nonzero generators")
    dim = len(gens[0])
    first = _independent_subset(gens, dim)
    base = [gens[i] for i in first]
    rest = [g for i, g in enumerate(gens) if i not in set(first)]
    adj_cols, det = _adjugate_columns(base)
    sign = 1 if det > 0 else -1
    rays: list[tuple[IntVec, int]] = []  # (ray, zero bitmask over processed constraints)
    processed: list[IntVec] = list(base)
    for i in range(dim):
        ray = primitive_vector([sign * x for x in adj_cols[i]])
        mask = 0
        for k, g in enumerate(processed):
            d = sum(a * b for a, b in zip(ray, g))
            if d == 0:
                mask |= 1 << k
            elif d < 0:
                raise AssertionError("initial dual simplex inconsistent")
        rays.append((ray, mask))

    for g in rest:
        k = len(processed)
        pos, zero, neg = [], [], []
        for ray, mask in rays:
            d = sum(a * b for a, b in zip(ray, g))
            if d > 0:
                pos.append((ray, mask, d))
            elif d == 0:
                zero.append((ray, mask | (1 << k)))
            else:
                neg.append((ray, mask, d))
        processed.append(g)
        if not neg:
            rays = [(r, m) for r, m, _ in pos] + zero
            continue
        new_rays = [(r, m) for r, m, _ in pos] + zero
        all_masks = [m for _, m, _ in pos] + [m for _, m in zero] + [m for _, m, _ in neg]
        pos_offset = 0
        neg_offset = len(pos) + len(zero)
        for ip, (rp, mp, dp) in enumerate(pos):
            for jn, (rn, mn, dn) in enumerate(neg):
                zmask = mp & mn
                if bin(zmask).count("1") < dim - 2:
                    continue
                contained = False
                for idx, other in enumerate(all_masks):
                    if idx == pos_offset + ip or idx == neg_offset + jn:
                        continue
                    if zmask & ~other == 0:
                        contained = True
                        break
                if contained:
                    continue
                # dp > 0, dn < 0: dp*rn - dn*rp is a conic combination vanishing on g
                ray = primitive_vector([dp * b - dn * a for a, b in zip(rp, rn)])
                new_rays.append((ray, zmask | (1 << k)))
        rays = new_rays

    return tuple(sorted(ray for ray, _ in rays))


# ---------------------------------------------------------------------------
# Column-span coordinates (handles non-full-dimensional cones)

@dataclass(frozen=True)
class SpanCoordinates:
    """Unimodular identification of span(columns) ∩ Z^d with Z^r."""

    dim: int
    rank: int
    basis: tuple[IntVec, ...]  # d x r, columns are a lattice basis of the span
    equations: tuple[IntVec, ...]  # primitive integer normals vanishing on the span
    _solver_rows: tuple[int, ...]
    _solver_adj: tuple[IntVec, ...]
    _solver_det: int

    @classmethod
    def of_columns(cls, columns: Sequence[IntVec]) -> "SpanCoordinates":
        dim = len(columns[0])
        # the kernel only depends on the row space; echelonize to <= dim
        # rows first so the SNF never sees a tall matrix
        row_lattice = IntLattice.from_vectors(dim, columns)
        eqs = kernel_lattice_basis(row_lattice.echelon_rows())
        equations = tuple(sorted(_canonical_sign(primitive_vector(e)) for e in eqs))
        rank = dim - len(equations)
        if equations:
            span_basis = kernel_lattice_basis(as_int_matrix(equations))
        else:
            span_basis = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
        basis_cols = tuple(tuple(int(v[i]) for v in span_basis) for i in range(dim))  # d rows of width r
        row_idx = _independent_subset([tuple(span_basis[j][i] for j in range(len(span_basis))) for i in range(dim)], rank)
        square = [[span_basis[j][i] for j in range(rank)] for i in row_idx]
        adj_cols, det = _adjugate_columns(square)
        return cls(
            dim=dim,
            rank=rank,
            basis=basis_cols,
            equations=equations,
            _solver_rows=tuple(row_idx),
            _solver_adj=tuple(tuple(col) for col in adj_cols),
            _solver_det=det,
        )

    def to_coords(self, vector: Sequence[int]) -> IntVec:
        """Coordinates z with B z = vector; the vector must lie in the span lattice."""
        picked = [vector[i] for i in self._solver_rows]
        det = self._solver_det
        z = []
        for j in range(self.rank):
            num = sum(self._solver_adj[i][j] * picked[i] for i in range(self.rank))
            if num % det:
                raise ValueError("vector outside the span lattice")
            z.append(num // det)
        if list(mat_vec(self.basis, z)) != [int(v) for v in vector]:
            raise ValueError("vector outside the span lattice")
        return tuple(z)

    def lift_normal(self, normal: Sequence[int]) -> IntVec:
        """Integer h with h.(B z) = normal.z on the span, canonically reduced.

        Solves (B[rows])^T h[rows] = normal by Cramer's rule via the
        stored adjugate, leaving h zero off the solver rows, then
        reduces modulo the equations.
        """
        h = [0] * self.dim
        for pos, i in enumerate(self._solver_rows):
            h[i] = sum(self._solver_adj[pos][j] * normal[j] for j in range(self.rank))
        if self._solver_det < 0:
            h = [-x for x in h]
        return self.reduce_normal(h)

    def reduce_normal(self, normal: Sequence[int]) -> IntVec:
        """Canonical representative modulo the equation span.

        Equations are echelonized on their rightmost coordinates and
        used to zero the corresponding entries of the normal (the
        printed convention for the loop-free-with-initial cone, whose
        single relation has a unit coefficient on the last transition
        coordinate). Falls back to residue reduction when a pivot is not
        a unit.
        """
        h = [int(x) for x in normal]
        for eq, pivot in _right_echelon(self.equations):
            v = eq[pivot]
            q = h[pivot] // v
            if q:
                h = [a - q * b for a, b in zip(h, eq)]
        return primitive_vector(h)


def _right_echelon(equations: Sequence[IntVec]) -> list[tuple[IntVec, int]]:
    rows = [list(e) for e in equations]
    out: list[tuple[IntVec, int]] = []
    used: set[int] = set()
    for row in rows:
        for other, pivot in out:
            if row[pivot]:
                q = row[pivot] // other[pivot]
                row = [a - q * b for a, b in zip(row, other)]
        pivot = max((i for i, x in enumerate(row) if x), default=None)
        if pivot is None:
            continue
        if row[pivot] < 0:
            row = [-x for x in row]
        out.append((tuple(row), pivot))
        used.add(pivot)
    out.sort(key=lambda item: -item[1])
    return out


def _canonical_sign(vec: IntVec) -> IntVec:
    for x in vec:
        if x > 0:
            return vec
        if x < 0:
            return tuple(-v for v in vec)
    return vec


# ---------------------------------------------------------------------------
# Public representations

@dataclass(frozen=True)
class HRep:
    """Facet inequalities (h.x >= 0) and span equations (e.x = 0) of a cone."""

    inequalities: tuple[IntVec, ...]
    equations: tuple[IntVec, ...]
    grading_sum: int | None = None  # common coordinate sum of the generators, if any

    def to_json(self) -> str:
        return json.dumps(
            {
                "inequalities": [list(h) for h in self.inequalities],
                "equations": [list(e) for e in self.equations],
                "grading_sum": self.grading_sum,
            }
        )


@dataclass(frozen=True)
class VRep:
    """Vertices of the column polytope (equivalently primitive data for extreme rays)."""

    points: tuple[IntVec, ...]

    def to_json(self) -> str:
        return json.dumps({"points": [list(p) for p in self.points]})


@dataclass(frozen=True)
class FVector:
    """Proper face counts f_0 ... f_{dim-1}."""

    dim: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.dim:
            raise ValueError("f-vector must list dimensions 0..dim-1")
        euler = sum((-1) ** i * c for i, c in enumerate(self.counts))
        if euler != 1 - (-1) ** self.dim:
            raise AssertionError(f"Euler relation violated: {self.counts}")


def cone_facets(columns: Iterable[Sequence[int]]) -> HRep:
    """Irredundant facet inequalities of cone(columns) via double description.

    Normals are primitive, reduced to the canonical representative
    modulo the span equations, and lexicographically sorted; every
    generator satisfies every inequality with >= 0 (asserted).
    """
    cols = sorted(set(tuple(int(x) for x in c) for c in columns))
    cols = [c for c in cols if any(c)]
    if not cols:
        raise DegenerateInput("all columns are zero")
    span = SpanCoordinates.of_columns(cols)
    coords = [span.to_coords(c) for c in cols]
    raw = dual_description(coords)
    normals = tuple(sorted(span.lift_normal(g) for g in raw))
    sums = {sum(c) for c in cols}
    grading = sums.pop() if len(sums) == 1 else None
    rep = HRep(inequalities=normals, equations=span.equations, grading_sum=grading)
    for h in rep.inequalities:
        for c in cols:
            if sum(a * b for a, b in zip(h, c)) < 0:
                raise AssertionError("facet normal violates a generator")
    for e in rep.equations:
        for c in cols:
            if sum(a * b for a, b in zip(e, c)):
                raise AssertionError("span equation violates a generator")
    return rep


def polytope_vertices(columns: Iterable[Sequence[int]]) -> VRep:
    """Columns that are vertices of the convex hull, by exact LP.

    A deduplicated column is a vertex iff it is not a convex combination
    of the remaining columns.
    """
    cols = sorted(set(tuple(int(x) for x in c) for c in columns))
    if not cols:
        raise DegenerateInput("no columns")
    if len(cols) == 1:
        return VRep(points=tuple(cols))
    verts = []
    for i, c in enumerate(cols):
        others = cols[:i] + cols[i + 1 :]
        if not linear_feasible(others, c, coefficient_sum=1):
            verts.append(c)
    return VRep(points=tuple(verts))


def vertices_by_facet_rank(columns: Sequence[IntVec], hrep: HRep) -> tuple[IntVec, ...]:
    """Vertex detection via tight-facet rank; cross-validates the LP route.

    A generator spans an extreme ray iff its tight facet normals
    together with the span equations have rank (ambient - 1).
    """
    cols = sorted(set(columns))
    dim = len(cols[0])
    verts = []
    for c in cols:
        tight = [h for h in hrep.inequalities if sum(a * b for a, b in zip(h, c)) == 0]
        if _rank(list(tight) + list(hrep.equations)) == dim - 1:
            verts.append(c)
    return tuple(verts)


def f_vector(columns: Iterable[Sequence[int]]) -> FVector:
    """Proper face counts from the vertex-facet incidence closure."""
    cols = sorted(set(tuple(int(x) for x in c) for c in columns))
    hrep = cone_facets(cols)
    verts = vertices_by_facet_rank(cols, hrep)
    return f_vector_from_incidence(verts, hrep)


def f_vector_from_incidence(vertices: Sequence[IntVec], hrep: HRep) -> FVector:
    dim = affine_rank(vertices)
    if dim < 1:
        raise ValueError("polytope must have dimension >= 1")
    facet_sets = []
    for h in hrep.inequalities:
        members = frozenset(i for i, v in enumerate(vertices) if sum(a * b for a, b in zip(h, v)) == 0)
        if members:
            facet_sets.append(members)
    faces: set[frozenset[int]] = set(facet_sets)
    frontier = list(facet_sets)
    while frontier:
        nxt = []
        for face in frontier:
            for fs in facet_sets:
                child = face & fs
                if child and child != face and child not in faces:
                    faces.add(child)
                    nxt.append(child)
        frontier = nxt
    counts = [0] * dim
    for face in faces:
        d = affine_rank([vertices[i] for i in face])
        if d < dim:
            counts[d] += 1
    return FVector(dim=dim, counts=tuple(counts))


# ---------------------------------------------------------------------------
# Model-(d) structure checks

def model_d_columns(T: int) -> tuple[IntVec, ...]:
    return distinct_columns(Model.D, 3, T)


@dataclass(frozen=True)
class DilationReport:
    T: int
    k: int
    samples: int
    agreements: int
    counterexamples: tuple[tuple[Fraction, ...], ...]

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_dilation_slice(T: int, k: int, samples: int, *, seed: int = 0) -> DilationReport:
    """Sample rational points and test x in kP <=> (x in C and sum(x) = k(T-1)).

    Both memberships run through the exact LP (dilation LP on the left,
    conic LP on the right); points are drawn to land inside, outside,
    and off the slice.
    """
    if T < 4 or k < 1:
        raise ValueError("need T >= 4 and k >= 1")
    cols = model_d_columns(T)
    rng = random.Random((seed, T, k).__hash__() & 0x7FFFFFFF)
    target_sum = k * (T - 1)
    agreements = 0
    bad: list[tuple[Fraction, ...]] = []
    for trial in range(samples):
        style = trial % 3
        if style == 0:
            # random rational point of the dilated polytope (scaled mix)
            weights = [rng.randint(0, 6) for _ in range(4)]
            if not any(weights):
                weights[0] = 1
            total = sum(weights)
            picks = [cols[rng.randrange(len(cols))] for _ in range(4)]
            x = tuple(
                Fraction(k * sum(w * p[i] for w, p in zip(weights, picks)), total)
                for i in range(6)
            )
        elif style == 1:
            # integer column sum nudged off by a transfer between coordinates
            acc = [0] * 6
            for _ in range(k):
                p = cols[rng.randrange(len(cols))]
                acc = [a + b for a, b in zip(acc, p)]
            i, j = rng.randrange(6), rng.randrange(6)
            delta = rng.choice([-2, -1, 1, 2])
            acc[i] += delta
            acc[j] -= delta
            x = tuple(Fraction(a) for a in acc)
        else:
            # conic point just off the k-th slice: sum = (k +- 1/q)(T-1)
            weights = [rng.randint(0, 4) for _ in range(3)]
            if not any(weights):
                weights[0] = 1
            total = sum(weights)
            q = rng.randint(2, 5)
            numer = k * q + rng.choice([-1, 1])
            picks = [cols[rng.randrange(len(cols))] for _ in range(3)]
            x = tuple(
                Fraction(numer * sum(w * p[i] for w, p in zip(weights, picks)), q * total)
                for i in range(6)
            )
        in_dilation = in_dilation_lp(cols, x, k)
        in_slice = sum(x) == target_sum and all(v >= 0 for v in x) and in_cone_lp(cols, x)
        if in_dilation == in_slice:
            agreements += 1
        else:
            bad.append(x)
    return DilationReport(T=T, k=k, samples=samples, agreements=agreements, counterexamples=tuple(bad))


def integer_points_equal_columns(T: int) -> bool:
    """Exhaustively compare the polytope's integer points with the column set."""
    cols = set(model_d_columns(T))
    inside = set()
    for x in _compositions6(T - 1):
        if in_dilation_lp(sorted(cols), x, 1):
            inside.add(x)
    return inside == cols


def _compositions6(total: int):
    for a in range(total + 1):
        for b in range(total - a + 1):
            for c in range(total - a - b + 1):
                for d in range(total - a - b - c + 1):
                    for e in range(total - a - b - c - d + 1):
                        yield (a, b, c, d, e, total - a - b - c - d - e)


def check_degree_balance(x: Sequence[int], T: int) -> tuple[int, bool]:
    """Degree k = sum(x)/(T-1) and the three |out-in| <= k balance checks."""
    total = sum(int(v) for v in x)
    if total % (T - 1):
        raise ValueError(f"coordinate sum {total} is not a multiple of T-1 = {T - 1}")
    k = total // (T - 1)
    graph = stategraph.graph_of_transition_vector(x, 3)
    ok = all(abs(graph.out_degree(i) - graph.in_degree(i)) <= k for i in (1, 2, 3))
    return k, ok


@dataclass(frozen=True)
class VertexClassReport:
    T: int
    p: int
    classes: tuple[tuple[IntVec, int, int], ...]  # (vertex, m, n)
    middle_class_vertices: tuple[IntVec, ...]

    @property
    def ok(self) -> bool:
        return not self.middle_class_vertices


def classify_vertices(T: int) -> VertexClassReport:
    """Assign every vertex of the model-(d) polytope its (m, n) class.

    For T >= 13 the finite-vertex theorem predicts no vertices with
    3 <= m <= p-3 (p = floor((T-1)/2)); such vertices are reported as
    violations.
    """
    cols = model_d_columns(T)
    hrep = cone_facets(cols)
    verts = vertices_by_facet_rank(cols, hrep)
    p = (T - 1) // 2
    classified = []
    middle = []
    for v in verts:
        cls = stategraph.classify_Gmn(stategraph.graph_of_transition_vector(v, 3))
        classified.append((v, cls.m, cls.n))
        if 3 <= cls.m <= p - 3:
            middle.append(v)
    return VertexClassReport(T=T, p=p, classes=tuple(classified), middle_class_vertices=tuple(middle))


def middle_class_decomposition(x: Sequence[int], T: int) -> tuple[IntVec, IntVec]:
    """Write a G_{q,f(q)} graph vector as (y+z)/2 with y, z three apart in q.

    Mirrors the finite-vertex proof: y swaps two three-cycles for three
    two-cycles, z does the reverse. Raises when the swap is impossible.
    """
    graph = stategraph.graph_of_transition_vector(x, 3)
    decomp = stategraph.cycle_decomposition(graph)
    if decomp.n < 2:
        raise ValueError("need at least two three-cycles to trade away")
    pair = next((pq for pq, cnt in zip(((1, 2), (1, 3), (2, 3)), decomp.two_cycles_by_pair) if cnt >= 3), None)
    if pair is None:
        raise ValueError("need at least three two-cycles of one type to trade away")
    i, j = pair
    triangle = ((1, 2), (2, 3), (3, 1)) if decomp.three_cycles_cw else ((1, 3), (3, 2), (2, 1))
    two_cycle = ((i, j), (j, i))
    y = list(int(v) for v in x)
    z = list(int(v) for v in x)
    pairs6 = [(a, b) for a in (1, 2, 3) for b in (1, 2, 3) if a != b]
    index = {pq: idx for idx, pq in enumerate(pairs6)}
    for e in triangle:
        y[index[e]] -= 2
        z[index[e]] += 2
    for e in two_cycle:
        y[index[e]] += 3
        z[index[e]] -= 3
    if any(v < 0 for v in y) or any(v < 0 for v in z):
        raise ValueError("trade produced negative multiplicities")
    return tuple(y), tuple(z)


def fvector_stabilization_report(T_values: Sequence[int]) -> dict:
    """f-vectors over a T range plus the detected exact repeats."""
    table = {}
    for T in T_values:
        table[T] = f_vector(model_d_columns(T)).counts
    repeats: dict[tuple[int, ...], list[int]] = {}
    for T, fv in table.items():
        repeats.setdefault(fv, []).append(T)
    return {
        "f_vectors": table,
        "repeats": {fv: Ts for fv, Ts in repeats.items() if len(Ts) > 1},
    }


# ---------------------------------------------------------------------------
# Plain-text layout used for the printed hyperplane blocks

def normals_to_block_text(normals: Sequence[IntVec]) -> str:
    """Render normals in the printed column layout (one hyperplane per column)."""
    if not normals:
        return ""
    width = max(len(str(x)) for h in normals for x in h)
    rows = []
    for i in range(len(normals[0])):
        rows.append("  ".join(str(h[i]).rjust(width) for h in normals))
    return "\n".join(rows) + "\n"


def normals_from_block_text(text: str) -> tuple[IntVec, ...]:
    """Parse the printed column layout back into a sorted normal set."""
    rows = [[int(tok) for tok in line.split()] for line in text.strip().splitlines() if line.strip()]
    if not rows:
        return ()
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged hyperplane block")
    return tuple(sorted(zip(*rows)))


def nonnegativity_normals(dim: int) -> tuple[IntVec, ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))
