import pytest

from heckoid.verify import SUITES, UnknownSuite, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_sweeps_pass(name):
    res = run_suite(name, max_denom=12, n_values=(2,))
    assert res.passed > 0
    assert res.failed == 0, res.failures[:3]


def test_workers_do_not_change_results():
    one = run_suite("maximal-piece", max_denom=9, n_values=(2, 3), workers=1)
    two = run_suite("maximal-piece", max_denom=9, n_values=(2, 3), workers=2)
    assert one.to_json() == two.to_json()


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("no-such-lemma")
