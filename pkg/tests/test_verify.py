import pytest

from pgodd.verify import SUITES, run_suite


@pytest.mark.parametrize("suite", sorted(SUITES))
@pytest.mark.parametrize("q", (5, 9))
def test_suites_pass(suite, q):
    rows = run_suite(suite, q, seed=7, cases=150)
    assert rows
    bad = [r for r in rows if not r.passed]
    assert not bad, [r.to_json() for r in bad]


def test_same_seed_same_report():
    a = [r.to_json() for r in run_suite("lemma3", 7, seed=11, cases=100)]
    b = [r.to_json() for r in run_suite("lemma3", 7, seed=11, cases=100)]
    assert a == b


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("lemma99", 5)


def test_all_includes_singer_at_square_q():
    names = [r.name for r in run_suite("all", 9, cases=20)]
    assert any("Singer" in n for n in names)
