from __future__ import annotations

import pytest

from insdel_lab.reproduce import run


def test_hermitian_case_all_pass():
    checks = run("hermitian")
    assert len(checks) == 7
    assert all(c.status == "PASS" for c in checks), [c.line() for c in checks if c.status != "PASS"]


def test_rm_case_flags_printed_values_as_warnings():
    checks = run("rm")
    assert not [c for c in checks if c.status == "FAIL"]
    warns = [c for c in checks if c.status == "WARN"]
    assert warns and all(c.provenance == "published, flagged" for c in warns)
    # both numbers are shown for a flagged value
    line = next(c for c in warns if c.name == "first_order_printed_4").line()
    assert "computed 10" in line and "expected 8" in line


def test_halfsingleton_case():
    (check,) = run("halfsingleton")
    assert check.status == "PASS"


def test_unknown_case():
    with pytest.raises(ValueError):
        run("everything")
