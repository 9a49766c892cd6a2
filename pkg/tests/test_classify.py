from rlk.classify import (DiscrepancyReport, Claim, expand_family, l51_table_claims, oracle_abelian,
                          verify_family)
from rlk.field import FieldSpec

F = FieldSpec(5)


def test_abelian_oracle_counts_partitions():
    res = oracle_abelian(F)
    assert res.classes == 7


def test_l51_rows_five_and_six_coincide():
    claims = {c.cid: c for c in l51_table_claims(F)}
    c = claims["L5_1^5 vs L5_1^6 basis change"]
    assert c.certificate


def test_verify_small_family():
    rep = verify_family("L5_4", F)
    assert rep.counts()["inconclusive"] == 0
    assert rep.exit_code == 0


def test_exit_codes():
    r = DiscrepancyReport("X", "F_5")
    assert r.exit_code == 0
    r.claims.append(Claim("a", "", "", "", "inconclusive"))
    assert r.exit_code == 3
    r.claims.append(Claim("b", "", "", "", "refuted"))
    assert r.exit_code == 1


def test_expand_family_sizes():
    assert len(expand_family("L5_1", F)) == 8
