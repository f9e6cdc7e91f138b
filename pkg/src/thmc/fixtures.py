"""Embedded golden fixtures: example matrices, count tables, hyperplane blocks.

The data files under ``thmc/data`` hold the published reference values
this toolkit reproduces, in a plain-text format: design matrices as
labeled rows under a word header, tables as ``T <t> hb <n> f <f0...>``
lines, hyperplane blocks as row-major integer matrices whose columns
are the inequality normals.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .design import Model, build_design_matrix, format_row_label
from .intlinalg import IntVec
from .words import parse_word


def _read_data(name: str) -> str:
    return (resources.files("thmc") / "data" / name).read_text()


@dataclass(frozen=True)
class DesignFixture:
    model: Model
    S: int
    T: int
    words: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def columns(self) -> tuple[IntVec, ...]:
        return tuple(zip(*self.rows))


def load_design_fixture(model: Model | str) -> DesignFixture:
    model = Model.parse(model)
    text = _read_data(f"design_{model.value}_{2 if not model.no_loops else 3}_4.txt")
    words: tuple[tuple[int, ...], ...] = ()
    labels: list[str] = []
    rows: list[tuple[int, ...]] = []
    S = T = 0
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "S":
            S = int(parts[1])
        elif parts[0] == "T":
            T = int(parts[1])
        elif parts[0] == "words":
            words = tuple(parse_word(tok) for tok in parts[1:])
        elif parts[0] == "row":
            labels.append(parts[1])
            rows.append(tuple(int(x) for x in parts[2:]))
    return DesignFixture(model=model, S=S, T=T, words=words, labels=tuple(labels), rows=tuple(rows))


@dataclass(frozen=True)
class DesignComparison:
    """How the built matrix relates to the printed fixture.

    ``strict_entrywise`` is the bit-for-bit comparison in lexicographic
    column order. The with-loop matrices print consistently; the
    loop-free ones carry a column permutation between their printed
    header and their printed data (an erratum in the source tables), so
    ``columns_match_as_multiset`` plus the recovered permutation is the
    faithful check there.
    """

    model: Model
    strict_entrywise: bool
    header_is_lex: bool
    labels_match: bool
    columns_match_as_multiset: bool
    permutation: tuple[int, ...] | None

    @property
    def ok(self) -> bool:
        if self.model in (Model.A, Model.B):
            return self.strict_entrywise and self.header_is_lex and self.labels_match
        return self.columns_match_as_multiset and self.header_is_lex and self.labels_match


def compare_design_fixture(model: Model | str) -> DesignComparison:
    model = Model.parse(model)
    fixture = load_design_fixture(model)
    built = build_design_matrix(model, fixture.S, fixture.T)
    header_is_lex = fixture.words == built.words
    labels_match = tuple(fixture.labels) == tuple(format_row_label(lab) for lab in built.rows)
    strict = fixture.columns == built.columns
    multiset = sorted(fixture.columns) == sorted(built.columns)
    permutation: tuple[int, ...] | None = None
    if multiset:
        remaining: dict[IntVec, list[int]] = {}
        for idx, col in enumerate(built.columns):
            remaining.setdefault(col, []).append(idx)
        perm = []
        for col in fixture.columns:
            perm.append(remaining[col].pop(0))
        permutation = tuple(perm)
    return DesignComparison(
        model=model,
        strict_entrywise=strict,
        header_is_lex=header_is_lex,
        labels_match=labels_match,
        columns_match_as_multiset=multiset,
        permutation=permutation,
    )


def load_tables() -> dict[str, dict[int, tuple[int, tuple[int, ...]]]]:
    """{model letter: {T: (#HB, f-vector)}} for the loop-free models."""
    tables: dict[str, dict[int, tuple[int, tuple[int, ...]]]] = {}
    current: dict[int, tuple[int, tuple[int, ...]]] | None = None
    for line in _read_data("tables.txt").splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "table":
            current = tables.setdefault(parts[1], {})
        elif parts[0] == "T" and current is not None:
            T = int(parts[1])
            hb = int(parts[3])
            fvec = tuple(int(x) for x in parts[5:])
            current[T] = (hb, fvec)
    return tables


def load_hyperplane_blocks(model: Model | str) -> dict[int, tuple[IntVec, ...]]:
    """{T: sorted tuple of printed inequality normals} for models c and d."""
    model = Model.parse(model)
    if model not in (Model.C, Model.D):
        raise ValueError("hyperplane fixtures exist for models c and d only")
    rows_by_T: dict[int, list[list[int]]] = {}
    cur: int | None = None
    for line in _read_data(f"hyperplanes_{model.value}.txt").splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "T":
            cur = int(parts[1])
            rows_by_T[cur] = []
        else:
            assert cur is not None
            rows_by_T[cur].append([int(x) for x in parts])
    return {T: tuple(sorted(zip(*rows))) for T, rows in rows_by_T.items()}


@dataclass(frozen=True)
class HyperplaneComparison:
    model: Model
    T: int
    matches: int
    fixture_only: tuple[IntVec, ...]
    computed_only: tuple[IntVec, ...]

    @property
    def ok(self) -> bool:
        return not self.fixture_only and not self.computed_only


def compare_hyperplanes(model: Model | str, T: int, computed_nontrivial: tuple[IntVec, ...]) -> HyperplaneComparison:
    model = Model.parse(model)
    fixture = set(load_hyperplane_blocks(model)[T])
    computed = set(computed_nontrivial)
    return HyperplaneComparison(
        model=model,
        T=T,
        matches=len(fixture & computed),
        fixture_only=tuple(sorted(fixture - computed)),
        computed_only=tuple(sorted(computed - fixture)),
    )
