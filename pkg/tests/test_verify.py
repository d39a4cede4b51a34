from ladderfib.verify import KNOWN, MISMATCH, OK, exit_status, run_verification, summary, tampered


def _by_case(checks):
    return {c.case: c for c in checks}


def test_default_suite_passes():
    checks = run_verification()
    assert exit_status(checks) == 0
    counts = summary(checks)
    assert counts[MISMATCH] == 0 and counts[OK] > 200 and counts[KNOWN] > 0


def test_known_deviations_reported():
    rows = _by_case(run_verification())
    c = rows["dimer-covers-4x4"]
    assert (c.expected, c.actual, c.status) == (36, 35, KNOWN)
    c = rows["monomer-dimer-3x2-k2"]
    assert (c.expected, c.actual, c.status) == (11, 7, KNOWN)
    for n in (1, 2, 3):
        assert rows[f"dimer-covers-4x{n}"].status == OK


def test_two_leg_rows_must_be_exact():
    checks = run_verification(legs=2)
    assert all(c.status == OK for c in checks if not c.case.startswith("vbe-doped"))


def test_tampered_counts_fail():
    checks = run_verification(legs=2, max_rungs=4, doped_counts=tampered)
    assert exit_status(checks) == 2
    bad = [c for c in checks if c.status == MISMATCH]
    assert any(c.case == "monomer-dimer-2x3-k2" for c in bad)


def test_leg_filter_and_cap():
    checks = run_verification(legs=4, max_rungs=4)
    assert all("2x" not in c.case and "3x" not in c.case for c in checks)
    assert all("4x5" not in c.case for c in checks)
