"""Acceptance gate: the twelve headline criteria, one pass/fail line each.

Every criterion runs at full stated strength (exact equality, zero
tolerance); run with ``pytest -s tests/test_acceptance.py`` to see the
per-criterion lines, or ``thmc verify`` for the same checks via the CLI.
"""

import pytest

from thmc import verify

CRITERIA = [
    ("1-design-fixtures", verify.check_design_fixtures),
    ("2-snf-theorems", verify.check_snf_theorems),
    ("3-lattice-lemmas", verify.check_lattice_lemmas),
    ("4-nonnormality-witnesses", verify.check_witnesses),
    ("5-table-d", lambda: verify.check_table(verify.Model.D)),
    ("6-table-c", lambda: verify.check_table(verify.Model.C)),
    ("7-hyperplanes", verify.check_hyperplanes),
    ("8-polytope-structure", verify.check_polytope_structure),
    ("9-euler-roundtrip", verify.check_euler_roundtrip),
    ("10-fvector-stabilization", verify.check_stabilization),
    ("11-hilbert-oracle", verify.check_hilbert_oracle),
    ("12-markov-probe", verify.check_markov_probe),
]


@pytest.mark.parametrize("label,criterion", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance_criterion(label, criterion):
    result = criterion()
    status = "PASS" if result.passed else "FAIL"
    print(f"\n[{status}] {label}: {result.details} ({result.seconds:.1f}s)")
    assert result.passed, f"{label}: {result.details}"
