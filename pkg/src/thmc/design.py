"""Design matrices of the four Markov chain model variants.

Model (a) is the full chain (initial-state rows plus transition rows),
(b) drops the initial rows, (c) forbids self-loops, and (d) does both.
Columns are indexed by words in lexicographic order; a column records
the initial state indicator (models a, c) and the transition counts of
its word. Everything is exact integer / rational arithmetic.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .words import (
    PathMultiset,
    Word,
    format_word,
    is_valid_word,
    iter_words,
    word_count,
)

DEFAULT_COLUMN_CAP = 10**7

RowLabel = tuple  # ("init", s) or ("trans", i, j)


class SizeCapExceeded(ValueError):
    """The requested matrix has more columns than the configured cap."""


class LoopViolation(ValueError):
    """A word with a self-loop was fed to a loop-free model."""


class Model(enum.Enum):
    """The four model variants; value is the conventional letter."""

    A = "a"
    B = "b"
    C = "c"
    D = "d"

    @property
    def has_initial(self) -> bool:
        return self in (Model.A, Model.C)

    @property
    def no_loops(self) -> bool:
        return self in (Model.C, Model.D)

    @classmethod
    def parse(cls, token: "str | Model") -> "Model":
        if isinstance(token, Model):
            return token
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ValueError(f"unknown model {token!r}; expected one of a, b, c, d") from None


def transition_pairs(S: int, no_loops: bool) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, S + 1) for j in range(1, S + 1) if not (no_loops and i == j)]


def row_labels(model: Model, S: int) -> tuple[RowLabel, ...]:
    """Initial rows ascending (models a, c), then transition rows lex."""
    labels: list[RowLabel] = []
    if model.has_initial:
        labels.extend(("init", s) for s in range(1, S + 1))
    labels.extend(("trans", i, j) for i, j in transition_pairs(S, model.no_loops))
    return tuple(labels)


def format_row_label(label: RowLabel) -> str:
    if label[0] == "init":
        return str(label[1])
    return f"{label[1]}{label[2]}" if max(label[1], label[2]) <= 9 else f"{label[1]},{label[2]}"


def column_of_word(model: Model, S: int, word: Sequence[int]) -> tuple[int, ...]:
    """Design column of one word, without materializing the matrix."""
    w = tuple(int(s) for s in word)
    if not is_valid_word(w, S, False):
        raise ValueError(f"invalid word {w!r} for S={S}")
    if model.no_loops and any(a == b for a, b in zip(w, w[1:])):
        raise LoopViolation(f"word {w!r} has a self-loop under model {model.value}")
    entries: list[int] = []
    if model.has_initial:
        entries.extend(1 if s == w[0] else 0 for s in range(1, S + 1))
    counts = [[0] * (S + 1) for _ in range(S + 1)]
    for a, b in zip(w, w[1:]):
        counts[a][b] += 1
    entries.extend(counts[i][j] for i, j in transition_pairs(S, model.no_loops))
    return tuple(entries)


@dataclass(frozen=True)
class DesignMatrix:
    """Full design matrix with labeled rows and word-labeled columns."""

    model: Model
    S: int
    T: int
    rows: tuple[RowLabel, ...]
    words: tuple[Word, ...]
    columns: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    @property
    def column_sum(self) -> int:
        """Common column sum: T for models a/c, T-1 for b/d."""
        return self.T if self.model.has_initial else self.T - 1

    def as_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.columns))

    def column(self, word: Sequence[int]) -> tuple[int, ...]:
        return self.columns[self.words.index(tuple(word))]

    def to_csv(self) -> str:
        lines = ["," + ",".join(format_word(w) for w in self.words)]
        for label, row in zip(self.rows, self.as_rows()):
            lines.append(format_row_label(label) + "," + ",".join(str(x) for x in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "model": self.model.value,
            "S": self.S,
            "T": self.T,
            "rows": [format_row_label(label) for label in self.rows],
            "columns": {format_word(w): list(col) for w, col in zip(self.words, self.columns)},
        }
        return json.dumps(payload, indent=1)


def build_design_matrix(
    model: Model | str,
    S: int,
    T: int,
    *,
    column_cap: int = DEFAULT_COLUMN_CAP,
) -> DesignMatrix:
    """Assemble the full matrix, columns in lexicographic word order."""
    model = Model.parse(model)
    count = word_count(S, T, model.no_loops)
    if count > column_cap:
        raise SizeCapExceeded(f"{count} columns exceed the cap of {column_cap}")
    words = []
    columns = []
    for w in iter_words(S, T, model.no_loops):
        words.append(w)
        columns.append(column_of_word(model, S, w))
    return DesignMatrix(
        model=model,
        S=S,
        T=T,
        rows=row_labels(model, S),
        words=tuple(words),
        columns=tuple(columns),
    )


def iter_columns(model: Model | str, S: int, T: int) -> Iterator[tuple[Word, tuple[int, ...]]]:
    """Stream (word, column) pairs in lexicographic order without the cap."""
    model = Model.parse(model)
    for w in iter_words(S, T, model.no_loops):
        yield w, column_of_word(model, S, w)


def sufficient_statistic(model: Model | str, multiset: PathMultiset) -> tuple[int, ...]:
    """A applied to the data vector of the multiset: summed design columns."""
    model = Model.parse(model)
    if model.no_loops and not multiset.no_loops:
        for word in multiset.counts:
            if any(a == b for a, b in zip(word, word[1:])):
                raise LoopViolation(f"multiset word {word!r} has a self-loop under model {model.value}")
    total: list[int] | None = None
    for word, mult in multiset.counts.items():
        col = column_of_word(model, multiset.S, word)
        if total is None:
            total = [0] * len(col)
        for idx, x in enumerate(col):
            total[idx] += mult * x
    assert total is not None
    return tuple(total)


# ---------------------------------------------------------------------------
# Probability model and toric-model map

@dataclass(frozen=True)
class ParameterSet:
    """Initial weights gamma, transition weights beta, normalizer c."""

    gamma: tuple[Fraction, ...]
    beta: tuple[tuple[Fraction, ...], ...]
    c: Fraction = Fraction(1)

    @classmethod
    def uniform(cls, S: int) -> "ParameterSet":
        one = Fraction(1)
        return cls(gamma=(one,) * S, beta=tuple((one,) * S for _ in range(S)), c=one)

    @property
    def S(self) -> int:
        return len(self.gamma)


def evaluate_path_probability(params: ParameterSet, word: Sequence[int], with_initial: bool = True) -> Fraction:
    """p(w) = c * gamma_{s1} * prod beta_{s_t, s_{t+1}}, exactly.

    With ``with_initial`` off the gamma factor is dropped (models b/d,
    where the constant initial weight is absorbed into c).
    """
    w = tuple(word)
    if any(s < 1 or s > params.S for s in w):
        raise ValueError(f"word {w!r} out of range for S={params.S}")
    p = params.c
    if with_initial:
        p *= params.gamma[w[0] - 1]
    for a, b in zip(w, w[1:]):
        p *= params.beta[a - 1][b - 1]
    return p


class ZeroNormalizer(ZeroDivisionError):
    """All monomials of the toric-model map vanished."""


def toric_model_map(matrix: DesignMatrix, theta: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Normalized monomial map theta -> (theta^{a_1}, ..., theta^{a_m}) / sum."""
    if len(theta) != len(matrix.rows):
        raise ValueError(f"theta has length {len(theta)}, expected {len(matrix.rows)}")
    theta = tuple(Fraction(t) for t in theta)
    monomials = []
    for col in matrix.columns:
        value = Fraction(1)
        for t, e in zip(theta, col):
            if e:
                value *= t**e
        monomials.append(value)
    normalizer = sum(monomials)
    if normalizer == 0:
        raise ZeroNormalizer("toric-model map normalizer is zero")
    return tuple(m / normalizer for m in monomials)


# ---------------------------------------------------------------------------
# Distinct columns without word streaming (needed once T gets large)

def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _loopfree3_balance(x: Sequence[int]) -> tuple[int, int, int]:
    x12, x13, x21, x23, x31, x32 = x
    return (
        (x12 + x13) - (x21 + x31),
        (x21 + x23) - (x12 + x32),
        (x31 + x32) - (x13 + x23),
    )


def _loopfree3_realizable(x: Sequence[int]) -> bool:
    """Is x the transition-count vector of some loop-free word on 3 states?"""
    diffs = _loopfree3_balance(x)
    return sorted(diffs) in ([0, 0, 0], [-1, 0, 1])


def _loopfree3_start_states(x: Sequence[int]) -> list[int]:
    """States a loop-free word with transition counts x can start at."""
    if not _loopfree3_realizable(x):
        return []
    diffs = _loopfree3_balance(x)
    if any(diffs):
        return [diffs.index(1) + 1]
    x12, x13, x21, x23, x31, x32 = x
    out = (x12 + x13, x21 + x23, x31 + x32)
    return [s + 1 for s in range(3) if out[s] > 0]


def _withloops2_start_states(x: Sequence[int]) -> list[int]:
    """Start states realizing transition counts x = (x11, x12, x21, x22) on 2 states."""
    x11, x12, x21, x22 = x
    d1 = x12 - x21
    if abs(d1) > 1:
        return []
    if x12 == 0 and x21 == 0 and x11 > 0 and x22 > 0:
        return []  # two disjoint loop islands
    if d1 == 1:
        return [1]
    if d1 == -1:
        return [2]
    out = (x11 + x12, x21 + x22)
    return [s + 1 for s in range(2) if out[s] > 0]


def distinct_columns(model: Model | str, S: int, T: int, *, column_cap: int = DEFAULT_COLUMN_CAP) -> tuple[tuple[int, ...], ...]:
    """Sorted distinct column vectors of the design matrix.

    For the loop-free models at S=3 and the with-loop models at S=2 the
    columns are enumerated directly as realizable transition-count
    vectors, so large T never streams S^T words.
    """
    model = Model.parse(model)
    if model.no_loops and S == 3:
        cols = set()
        for x in _compositions(T - 1, 6):
            starts = _loopfree3_start_states(x)
            if not starts:
                continue
            if model is Model.D:
                cols.add(tuple(x))
            else:
                for s in starts:
                    init = tuple(1 if v == s else 0 for v in (1, 2, 3))
                    cols.add(init + tuple(x))
        return tuple(sorted(cols))
    if not model.no_loops and S == 2:
        cols = set()
        for x in _compositions(T - 1, 4):
            starts = _withloops2_start_states(x)
            if not starts:
                continue
            if model is Model.B:
                cols.add(tuple(x))
            else:
                for s in starts:
                    init = tuple(1 if v == s else 0 for v in (1, 2))
                    cols.add(init + tuple(x))
        return tuple(sorted(cols))
    if word_count(S, T, model.no_loops) > column_cap:
        raise SizeCapExceeded("word streaming above the column cap; no fast path for this model/S")
    return tuple(sorted({col for _, col in iter_columns(model, S, T)}))
