import pytest

from sandpile import Configuration
from sandpile.explorer import BOTH, ModelKind, TransitionDiagram
from sandpile.verify import CHECKS, close_regex, lemma_violations, run_checks, weak_close_regex

from conftest import C


def test_regex_oracles():
    assert weak_close_regex([]) and weak_close_regex([0, 0])
    assert weak_close_regex([-1, 1, 0, -1, 0, 1])
    assert not weak_close_regex([1, -1])
    assert close_regex([0, -1, 0, 1]) and not close_regex([-1, 1, -1, 1]) and not close_regex([0])


def test_lemma_violations_on_fabricated_diagram():
    # top column 0 keeps the maximum while its drop to the right grows past 2
    a = C("_3,1")
    b = Configuration.from_heights([4])
    d = TransitionDiagram(ModelKind.PSSPM, a, [a, b], {a: [(b, BOTH)], b: []})
    found = lemma_violations(d)
    assert found and found[0]["form"] == "right" and found[0]["column"] == 0


@pytest.mark.parametrize("name", sorted(set(CHECKS) - {"successor-uniqueness"}))
def test_checks_pass(name):
    records = run_checks(12, [name])
    assert [r.n for r in records] == list(range(13))
    assert all(r.passed for r in records), [r.to_json() for r in records if not r.passed]


def test_uniqueness_check_reports_square_counts():
    failing = [r.n for r in run_checks(15, ["successor-uniqueness"]) if not r.passed]
    assert failing == [4, 9]


def test_cap_failure_is_recorded_not_raised():
    records = run_checks(13, ["interval"])
    assert records[-1].n == 13 and not records[-1].passed
    assert "cap" in records[-1].witness["error"]
    assert all(r.passed for r in records[:-1])
