from rlk.catalog import WITNESSES
from rlk.field import FieldSpec
from rlk.witness import check_all


def test_all_printed_witnesses_hold_over_f5():
    recs = check_all(FieldSpec(5))
    assert len(WITNESSES) >= 12
    bad = [r for r in recs if not r["holds"]]
    assert not bad, bad[:2]


def test_witnesses_over_f7():
    assert all(r["holds"] for r in check_all(FieldSpec(7)))
