"""Exact integer linear algebra.

Smith normal form with verified transformation matrices, incremental
Hermite-style lattice bases, lattice membership tests, integer kernels,
and the alternating pivot-path pairs used to diagonalize the loop-free
transition design matrices.

Everything here is arbitrary-precision: inputs and outputs are plain
Python ints, matrices are tuples of row tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]

# Deterministic primes for the modular determinant fallback on large V.
_DET_PRIMES = (2305843009213693951, 4611686018427387847, 9223372036854775783)
_EXACT_DET_LIMIT = 150


class DimensionMismatch(ValueError):
    """Vector or matrix dimensions do not line up."""


def as_int_matrix(rows: Iterable[Sequence[int]]) -> IntMat:
    mat = tuple(tuple(int(x) for x in row) for row in rows)
    if not mat or not mat[0]:
        raise ValueError("matrix must be non-empty")
    width = len(mat[0])
    if any(len(row) != width for row in mat):
        raise ValueError("ragged rows")
    return mat


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    if len(a[0]) != len(v):
        raise DimensionMismatch(f"cannot apply {len(a)}x{len(a[0])} to vector of length {len(v)}")
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def det_bareiss(mat: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(mat)
    if n == 0:
        return 1
    if any(len(row) != n for row in mat):
        raise DimensionMismatch("determinant needs a square matrix")
    m = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[-1][-1]


def _det_mod_p(mat: Sequence[Sequence[int]], p: int) -> int:
    n = len(mat)
    m = [[x % p for x in row] for row in mat]
    det = 1
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if m[i][k]:
                pivot_row = i
                break
        if pivot_row is None:
            return 0
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det % p
        pivot = m[k][k]
        det = det * pivot % p
        inv = pow(pivot, -1, p)
        for i in range(k + 1, n):
            factor = m[i][k] * inv % p
            if factor:
                row_i = m[i]
                row_k = m[k]
                for j in range(k, n):
                    row_i[j] = (row_i[j] - factor * row_k[j]) % p
    return det


@dataclass(frozen=True)
class SnfResult:
    """Smith decomposition U*A*V = D with unimodular U, V.

    ``diagonal`` carries the invariant factors d_1 | d_2 | ... (nonzero
    entries only, nonnegative).
    """

    U: IntMat
    D: IntMat
    V: IntMat
    diagonal: IntVec

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def smith_normal_form(matrix: Iterable[Sequence[int]], *, check: bool = True) -> SnfResult:
    """Smith normal form of an integer matrix.

    Pivoting picks the entry of smallest absolute value in the working
    submatrix; the divisibility chain is enforced by folding offending
    rows back into the pivot row. When ``check`` is set (the default) the
    identity U*A*V = D is asserted exactly on every call, together with
    unimodularity of U and V. Determinants are computed exactly up to
    150 columns; above that the elementary-operation bookkeeping is
    re-verified modulo three fixed 62/63-bit primes (U stays exact).
    """
    A = as_int_matrix(matrix)
    r, c = len(A), len(A[0])
    M = [list(row) for row in A]
    U = identity_matrix(r)
    V = identity_matrix(c)
    v_det_sign = 1
    u_det_sign = 1

    def swap_rows(i: int, j: int) -> None:
        nonlocal u_det_sign
        if i != j:
            M[i], M[j] = M[j], M[i]
            U[i], U[j] = U[j], U[i]
            u_det_sign = -u_det_sign

    def swap_cols(i: int, j: int) -> None:
        nonlocal v_det_sign
        if i != j:
            for row in M:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            v_det_sign = -v_det_sign

    def negate_row(i: int) -> None:
        nonlocal u_det_sign
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]
        u_det_sign = -u_det_sign

    def row_addmul(dst: int, src: int, q: int) -> None:
        if q:
            M[dst] = [x + q * y for x, y in zip(M[dst], M[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def col_addmul(dst: int, src: int, q: int) -> None:
        if q:
            for row in M:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    def smallest_nonzero(t: int) -> tuple[int, int] | None:
        best = None
        best_abs = None
        for i in range(t, r):
            row = M[i]
            for j in range(t, c):
                x = row[j]
                if x:
                    ax = -x if x < 0 else x
                    if best_abs is None or ax < best_abs:
                        best, best_abs = (i, j), ax
                        if ax == 1:
                            return best
        return best

    t = 0
    limit = min(r, c)
    while t < limit:
        pos = smallest_nonzero(t)
        if pos is None:
            break
        while True:
            pos = smallest_nonzero(t)
            i, j = pos
            swap_rows(t, i)
            swap_cols(t, j)
            if M[t][t] < 0:
                negate_row(t)
            p = M[t][t]
            dirty = False
            for i2 in range(t + 1, r):
                x = M[i2][t]
                if x:
                    row_addmul(i2, t, -(x // p))
                    if M[i2][t]:
                        dirty = True
            if dirty:
                continue
            for j2 in range(t + 1, c):
                x = M[t][j2]
                if x:
                    col_addmul(j2, t, -(x // p))
                    if M[t][j2]:
                        dirty = True
            if dirty:
                continue
            offender = None
            for i2 in range(t + 1, r):
                row = M[i2]
                for j2 in range(t + 1, c):
                    if row[j2] % p:
                        offender = i2
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_addmul(t, offender, 1)
        t += 1

    D = as_int_matrix(M)
    diagonal = tuple(M[i][i] for i in range(limit) if M[i][i])
    result = SnfResult(U=as_int_matrix(U), D=D, V=as_int_matrix(V), diagonal=diagonal)
    if check:
        _verify_snf(A, result, u_det_sign, v_det_sign)
    return result


def _verify_snf(A: IntMat, res: SnfResult, u_sign: int, v_sign: int) -> None:
    r, c = len(A), len(A[0])
    prod = mat_mul(mat_mul(res.U, A), res.V)
    if as_int_matrix(prod) != res.D:
        raise AssertionError("SNF verification failed: U*A*V != D")
    for i, row in enumerate(res.D):
        for j, x in enumerate(row):
            if i != j and x:
                raise AssertionError("SNF verification failed: D not diagonal")
    for a, b in zip(res.diagonal, res.diagonal[1:]):
        if a <= 0 or b % a:
            raise AssertionError("SNF verification failed: divisibility chain broken")
    if abs(det_bareiss(res.U)) != 1:
        raise AssertionError("SNF verification failed: U not unimodular")
    if c <= _EXACT_DET_LIMIT:
        if abs(det_bareiss(res.V)) != 1:
            raise AssertionError("SNF verification failed: V not unimodular")
    else:
        if v_sign not in (1, -1):
            raise AssertionError("SNF verification failed: V determinant bookkeeping")
        for p in _DET_PRIMES:
            if _det_mod_p(res.V, p) not in (1 % p, (-1) % p):
                raise AssertionError("SNF verification failed: V not unimodular (mod p)")
    del u_sign


class IntLattice:
    """Sublattice of Z^dim generated incrementally from integer vectors.

    The basis is kept in row-echelon form over Z (Hermite-style, gcd
    pivots). Adding vectors is cheap, which is what the design-matrix
    lattices need: columns are streamed in without ever materializing
    the full matrix.
    """

    def __init__(self, dim: int):
        if dim <= 0:
            raise ValueError("dim must be positive")
        self.dim = dim
        self._rows: list[list[int]] = []  # sorted by pivot column
        self._pivots: list[int] = []
        self._snf_cache: SnfResult | None = None

    @classmethod
    def from_vectors(cls, dim: int, vectors: Iterable[Sequence[int]]) -> "IntLattice":
        lat = cls(dim)
        for v in vectors:
            lat.add(v)
        return lat

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, vector: Sequence[int]) -> bool:
        """Insert a generator; returns True when the lattice grew."""
        if len(vector) != self.dim:
            raise DimensionMismatch(f"expected length {self.dim}, got {len(vector)}")
        v = [int(x) for x in vector]
        changed = False
        for idx in range(len(self._rows) + 1):
            lead = next((j for j, x in enumerate(v) if x), None)
            if lead is None:
                break
            if idx == len(self._rows) or self._pivots[idx] > lead:
                if v[lead] < 0:
                    v = [-x for x in v]
                self._rows.insert(idx, v)
                self._pivots.insert(idx, lead)
                changed = True
                break
            p = self._pivots[idx]
            if p < lead:
                continue
            row = self._rows[idx]
            a, b = row[p], v[p]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
            else:
                g, s, t = _xgcd(a, b)
                new_row = [s * x + t * y for x, y in zip(row, v)]
                v = [(a // g) * y - (b // g) * x for x, y in zip(row, v)]
                self._rows[idx] = new_row
                changed = True
        if changed:
            self._snf_cache = None
        return changed

    def basis_matrix(self) -> IntMat:
        """Basis vectors as the columns of a dim x rank matrix."""
        if not self._rows:
            raise ValueError("lattice is trivial")
        return as_int_matrix([[row[i] for row in self._rows] for i in range(self.dim)])

    def invariant_factors(self) -> IntVec:
        """Diagonal of the SNF of any basis matrix (= the nonzero invariant factors)."""
        return self._snf().diagonal

    def _snf(self) -> SnfResult:
        if self._snf_cache is None:
            self._snf_cache = smith_normal_form(self.basis_matrix())
        return self._snf_cache

    def contains(self, vector: Sequence[int]) -> bool:
        """Membership via the SNF criterion on a reduced basis."""
        if len(vector) != self.dim:
            raise DimensionMismatch(f"expected length {self.dim}, got {len(vector)}")
        if not self._rows:
            return all(x == 0 for x in vector)
        return _snf_membership(self._snf(), vector)

    def index_in(self, other: "IntLattice") -> int | None:
        """Index [other : self] when both have full rank in the same span; None otherwise."""
        if self.rank != other.rank:
            return None
        mine = 1
        for d in self.invariant_factors():
            mine *= d
        theirs = 1
        for d in other.invariant_factors():
            theirs *= d
        if mine % theirs:
            return None
        return mine // theirs

    def coordinates(self, vector: Sequence[int]) -> list[int] | None:
        """Integer coordinates of ``vector`` in the echelon basis rows, or None."""
        if len(vector) != self.dim:
            raise DimensionMismatch(f"expected length {self.dim}, got {len(vector)}")
        v = [int(x) for x in vector]
        coeffs = [0] * len(self._rows)
        for idx, (p, row) in enumerate(zip(self._pivots, self._rows)):
            if v[p] == 0:
                continue
            if v[p] % row[p]:
                return None
            q = v[p] // row[p]
            coeffs[idx] = q
            v = [x - q * y for x, y in zip(v, row)]
        if any(v):
            return None
        return coeffs

    def echelon_rows(self) -> IntMat:
        if not self._rows:
            raise ValueError("lattice is trivial")
        return as_int_matrix(self._rows)


def _snf_membership(snf: SnfResult, vector: Sequence[int]) -> bool:
    u_y = mat_vec(snf.U, vector)
    diag = snf.diagonal
    for i, x in enumerate(u_y):
        if i < len(diag):
            if x % diag[i]:
                return False
        elif x:
            return False
    return True


def lattice_membership(matrix: Iterable[Sequence[int]], vector: Sequence[int]) -> bool:
    """Is ``vector`` an integer combination of the columns of ``matrix``?

    Decided via the Smith normal form: y is in the column lattice iff
    (U*y)_i is divisible by d_i on the diagonal positions and zero on
    the rank-deficient ones.
    """
    A = as_int_matrix(matrix)
    if len(vector) != len(A):
        raise DimensionMismatch(f"vector length {len(vector)} != row count {len(A)}")
    return _snf_membership(smith_normal_form(A), vector)


def residue_test(vector: Sequence[int], T: int) -> bool:
    """Coordinate-sum residue criterion: sum(y) = 0 mod (T-1)."""
    return sum(int(x) for x in vector) % (T - 1) == 0


def kernel_lattice_basis(matrix: Iterable[Sequence[int]]) -> list[IntVec]:
    """Basis of the integer kernel {z : A z = 0}, read off the SNF's V columns."""
    A = as_int_matrix(matrix)
    snf = smith_normal_form(A)
    c = len(A[0])
    basis = []
    for j in range(snf.rank, c):
        z = tuple(snf.V[i][j] for i in range(c))
        if any(mat_vec(A, z)):
            raise AssertionError("kernel basis verification failed")
        basis.append(z)
    return basis


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# ---------------------------------------------------------------------------
# Pivot-path pairs

@dataclass(frozen=True)
class PivotPathPair:
    """Pair of loop-free words whose design-column difference is e_plus - e_minus.

    ``plus``/``minus`` name the transition coordinates carrying +1/-1;
    the constructor validates the pattern exactly and refuses to emit a
    wrong pair.
    """

    P: IntVec
    Q: IntVec
    kind: str
    i: int
    j: int
    k: int
    plus: tuple[int, int]
    minus: tuple[int, int]


def _transition_counts(word: Sequence[int]) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for a, b in zip(word, word[1:]):
        counts[(a, b)] = counts.get((a, b), 0) + 1
    return counts


def pivot_paths(i: int, j: int, k: int, T: int, kind: str) -> PivotPathPair:
    """The alternating word pairs that realize a single +1/-1 transition swap.

    ``kind`` is ``"type1"`` (difference +1 at (j,i), -1 at (k,i)) or
    ``"type2"`` (difference +1 at (k,i), -1 at (k,j)). Both words have
    length T, no self-loops, and are checked against the contract before
    being returned.
    """
    if len({i, j, k}) != 3 or min(i, j, k) < 1:
        raise ValueError("i, j, k must be pairwise distinct states")
    if T < 4:
        raise ValueError("T must be at least 4")
    if kind not in ("type1", "type2"):
        raise ValueError(f"unknown kind {kind!r}")

    if kind == "type1":
        if T % 2 == 0:
            m = (T - 2) // 2
            P = (i, j) * m + (i, k)
            Q = (i, k) + (i, j) * m
        else:
            m = (T - 3) // 2
            P = (i, k) + (j, i) * m + (k,)
            Q = (i, k, i, k) + (j, i) * ((T - 5) // 2) + (j,)
        plus, minus = (j, i), (k, i)
    else:
        if T % 2 == 0:
            m = (T - 2) // 2
            P = (k,) + (i, j) * m + (i,)
            Q = (k,) + (j, i) * m + (j,)
        else:
            P = (k, i, k) + (j, i) * ((T - 3) // 2)
            Q = (k, j, i, k) + (j, i) * ((T - 5) // 2) + (j,)
        plus, minus = (k, i), (k, j)

    pair = PivotPathPair(P=P, Q=Q, kind=kind, i=i, j=j, k=k, plus=plus, minus=minus)
    _validate_pivot_pair(pair, T)
    return pair


def _validate_pivot_pair(pair: PivotPathPair, T: int) -> None:
    for word in (pair.P, pair.Q):
        if len(word) != T:
            raise AssertionError(f"pivot path has length {len(word)}, expected {T}")
        if any(a == b for a, b in zip(word, word[1:])):
            raise AssertionError("pivot path contains a self-loop")
    diff = _transition_counts(pair.P)
    for key, val in _transition_counts(pair.Q).items():
        diff[key] = diff.get(key, 0) - val
    diff = {key: val for key, val in diff.items() if val}
    if diff != {pair.plus: 1, pair.minus: -1}:
        raise AssertionError(f"pivot pair difference {diff} violates the +1/-1 contract")


# ---------------------------------------------------------------------------
# Plain-text matrix interchange: first line "r c", then r whitespace rows.

def matrix_to_text(matrix: Iterable[Sequence[int]]) -> str:
    A = as_int_matrix(matrix)
    lines = [f"{len(A)} {len(A[0])}"]
    lines.extend(" ".join(str(x) for x in row) for row in A)
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> IntMat:
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("matrix text must start with 'r c'")
    r, c = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != r * c:
        raise ValueError(f"expected {r * c} entries, found {len(body)}")
    return as_int_matrix([[int(body[i * c + j]) for j in range(c)] for i in range(r)])


def primitive_vector(vector: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in vector:
        g = gcd(g, x)
    if g == 0:
        return tuple(int(x) for x in vector)
    return tuple(int(x) // g for x in vector)
