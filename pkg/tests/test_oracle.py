import pytest

from quartsearch.congruence import CaseId
from quartsearch.oracle import (
    ClaimResult,
    classify_case,
    exact_search,
    quadruple_scan,
    verify_residue_claims,
)

TRIVIAL = (1, 0, 1, 0)


def test_exact_search_tiny():
    assert exact_search(1).quadruples() == {TRIVIAL}
    assert exact_search(2).quadruples() == {TRIVIAL}


def test_quadruple_scan_tiny():
    assert quadruple_scan(1).quadruples() == {TRIVIAL}


def test_cross_oracle_agreement():
    for b in (1, 10, 35, 50, 60):
        assert quadruple_scan(b).quadruples() == exact_search(b).quadruples()


def test_exact_search_2000():
    assert exact_search(2000).quadruples() == {TRIVIAL}


def test_capacity_errors():
    with pytest.raises(ValueError):
        exact_search(10_001)
    with pytest.raises(ValueError):
        quadruple_scan(61)
    with pytest.raises(ValueError):
        exact_search(0)


def test_classify_case():
    assert classify_case(*TRIVIAL) is CaseId.N
    assert classify_case(1484801, 1203120, 1169407, 1157520) is CaseId.N
    assert classify_case(5, 2, 1, 2) is CaseId.S
    with pytest.raises(ValueError):
        classify_case(5, 1, 5, 5)         # both 5|x and 5|w


def test_residue_claims_all_pass():
    report = verify_residue_claims()
    assert report.all_pass
    assert all(isinstance(r, ClaimResult) for r in report.results)
    text = report.text()
    assert "[PASS]" in text and "[FAIL]" not in text


def test_residue_claims_specifics():
    report = verify_residue_claims()
    by_name = {r.name: r for r in report.results}
    assert by_name["mod-17 spectrum gap of f_N, f_S"].passed
    assert "[6, 7, 10, 11]" in by_name["mod-17 spectrum gap of f_N, f_S"].detail
    assert by_name["mod-13 spectrum gap of g_S"].passed
    assert "[4, 10, 12]" in by_name["mod-13 spectrum gap of g_S"].detail
    assert by_name["mod-81 write filter removal fraction"].passed
    for p in (3, 7, 11, 19, 23, 29, 31, 37, 41):
        assert by_name[f"full spectra of all four forms mod {p}"].passed
