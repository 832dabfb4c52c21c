import pytest
from hypothesis import given, settings

from helpers import partitions
from lchoose.partitions import (IntPartition, OrderCertificate, as_partition, brute_leq_oracle,
                                enumerate_partitions, is_refinement, leq, ones, partitions_up_to)

P = IntPartition.of


def test_parts_are_stored_non_increasing():
    assert P(1, 3, 2).parts == (3, 2, 1)
    assert P(1, 3) == P(3, 1)
    assert IntPartition.parse("1+1+3") == P(3, 1, 1)
    assert IntPartition.parse("{2,2}") == P(2, 2)
    with pytest.raises(ValueError):
        P(0, 1)
    with pytest.raises(ValueError):
        IntPartition(())
    with pytest.raises(ValueError):
        IntPartition.parse("1+x")


def test_order_extremes():
    assert leq(P(2), P(1, 1))[0]
    assert not leq(P(1, 1), P(2))[0]
    assert leq(P(4), ones(4))[0]
    assert not leq(P(1, 3), P(2, 2))[0]


def test_refinement_examples():
    assert not is_refinement(P(2, 2), P(1, 3))[0]
    ok, cert = is_refinement(P(1, 1, 2), P(2, 2))
    assert ok and cert.check(exact=True)
    assert not is_refinement(P(1, 1), P(3))[0]
    ok, cert = is_refinement(P(2, 3, 4), P(4, 5))
    assert ok and sorted(cert.block_sums) == [4, 5]
    assert leq(P(4, 5), P(2, 3, 4))[0]


def test_certificate_for_two_two_below_one_one_one_three():
    ok, cert = leq(P(2, 2), P(1, 1, 1, 3))
    assert ok and cert.check()
    # Certificates are not unique: grouping {3} with {1,1,1} also works, as does {3,1},{1,1}.
    other = OrderCertificate(P(2, 2), P(1, 1, 1, 3), ((0,), (1, 2, 3)))
    assert other.block_sums == (3, 3) and other.check()
    assert cert.intermediate.total == 6


def test_oracle_small_cases():
    assert brute_leq_oracle(P(2), P(1, 1))
    assert not brute_leq_oracle(P(1, 1), P(2))
    with pytest.raises(ValueError):
        brute_leq_oracle(P(13), P(13))


def test_enumeration_counts():
    assert [len(enumerate_partitions(k)) for k in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert enumerate_partitions(3) == [P(3), P(2, 1), P(1, 1, 1)]
    assert len(partitions_up_to(4)) == 11
    with pytest.raises(ValueError):
        enumerate_partitions(0)


def test_as_partition():
    assert as_partition("2+1") == P(2, 1)
    assert as_partition([1, 2]) == P(2, 1)
    assert as_partition(P(4)) == P(4)


@given(partitions(), partitions())
def test_order_matches_oracle(a, b):
    ok, cert = leq(a, b)
    assert ok == brute_leq_oracle(a, b)
    if ok:
        assert cert.check()
        assert cert.intermediate.total == b.total


@given(partitions())
def test_order_is_reflexive(a):
    assert leq(a, a)[0]


@settings(max_examples=60)
@given(partitions(max_total=7), partitions(max_total=7), partitions(max_total=7))
def test_order_is_transitive(a, b, c):
    if leq(a, b)[0] and leq(b, c)[0]:
        assert leq(a, c)[0]


@given(partitions(max_total=7), partitions(max_total=7))
def test_order_is_antisymmetric(a, b):
    if leq(a, b)[0] and leq(b, a)[0]:
        assert a == b


@given(partitions(), partitions())
def test_refinement_implies_order(fine, coarse):
    ok, cert = is_refinement(fine, coarse)
    if ok:
        assert cert.check(exact=True)
        assert leq(coarse, fine)[0]
