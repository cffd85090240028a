import pytest

from hereditex.verify import SUITES, all_colorings, run_suite, single_member_bi_families, single_member_families

from .helpers import BW


def test_instance_sets_cover_every_relabeling_class():
    assert len(all_colorings(2, 3, BW)) == 4
    assert len(all_colorings(2, 3, BW, distinct=False)) == 8
    assert len(single_member_families()) == 6
    assert len(single_member_families(3, (4,))) == 5
    assert len(single_member_bi_families(1)) == 6


@pytest.mark.parametrize("suite", SUITES)
def test_default_suites_pass(suite):
    rep = run_suite(suite)
    assert rep.checks and rep.ok, [c for c in rep.checks if not c.ok]
    assert rep.lines()[-1].startswith(f"suite {suite}:")


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
