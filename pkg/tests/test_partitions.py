import math

import pytest
from hypothesis import given, strategies as st

from pglchar.errors import CapacityError
from pglchar.partitions import Partition, partitions_of


def naive_partition_count(m):
    # independent of the library generator: recursive count with bounded parts
    def count(rest, cap):
        if rest == 0:
            return 1
        return sum(count(rest - first, first) for first in range(1, min(rest, cap) + 1))

    return count(m, m if m else 1)


def test_validation():
    assert Partition([3, 1, 1]) == (3, 1, 1)
    assert Partition() == ()
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, 0])
    with pytest.raises(ValueError):
        Partition([-1])


def test_transpose_examples():
    assert Partition([2, 2]).transpose() == Partition([2, 2])
    assert Partition([3, 1]).transpose() == Partition([2, 1, 1])
    assert Partition([4]).transpose() == Partition([1, 1, 1, 1])


def test_transpose_involutive_up_to_12():
    for m in range(13):
        for p in partitions_of(m):
            assert p.transpose().transpose() == p
            assert p.transpose().size() == p.size()


def test_multiplicity_examples():
    assert Partition([2, 2, 1]).multiplicity(2) == 2
    assert Partition([2, 2, 1]).multiplicity(3) == 0
    assert Partition([1, 1, 1, 1]).multiplicity(1) == 4
    with pytest.raises(ValueError):
        Partition([2]).multiplicity(0)


def test_multiplicity_weight_identity():
    for m in range(9):
        for p in partitions_of(m):
            assert sum(i * mult for i, mult in p.multiplicities().items()) == p.size()


def test_is_even_examples():
    assert Partition([2, 2]).is_even()
    assert not Partition([3, 1]).is_even()
    assert Partition().is_even()


def test_is_even_via_transpose_multiplicities():
    for m in range(13):
        for p in partitions_of(m):
            t = p.transpose()
            assert p.is_even() == all(mult % 2 == 0 for mult in t.multiplicities().values())


def test_length_stats_examples():
    s = Partition([4, 2, 1]).length_stats()
    assert (s.ell, s.ell0, s.ell1, s.ell0mod4, s.ell2mod4) == (3, 2, 1, 1, 1)
    s = Partition([2, 2]).length_stats()
    assert (s.ell, s.ell0, s.ell1, s.ell0mod4, s.ell2mod4) == (2, 2, 0, 0, 2)
    s = Partition([1, 1]).length_stats()
    assert (s.ell, s.ell0, s.ell1, s.ell0mod4, s.ell2mod4) == (2, 0, 2, 0, 0)


def test_length_stats_consistency():
    for m in range(11):
        for p in partitions_of(m):
            s = p.length_stats()
            assert s.ell0 == s.ell0mod4 + s.ell2mod4
            assert s.ell == s.ell0 + s.ell1


def brute_centralizer_order(p):
    import itertools

    m = p.size()
    base = []
    offset = 0
    for length in p:
        cycle = list(range(offset + 1, offset + length)) + [offset]
        base.extend(cycle)
        offset += length
    base = tuple(base)
    count = 0
    for perm in itertools.permutations(range(m)):
        if all(perm[base[i]] == base[perm[i]] for i in range(m)):
            count += 1
    return count


def test_centralizer_order_examples():
    assert Partition([1, 1, 1]).centralizer_order() == 6
    assert Partition([2, 1]).centralizer_order() == brute_centralizer_order(Partition([2, 1]))
    assert Partition([3]).centralizer_order() == brute_centralizer_order(Partition([3]))


def test_centralizer_brute_force_up_to_6():
    for m in range(1, 7):
        for p in partitions_of(m):
            assert p.centralizer_order() == brute_centralizer_order(p)


def test_class_equation():
    for m in range(11):
        total = sum(
            math.factorial(m) // p.centralizer_order() for p in partitions_of(m)
        )
        assert total == math.factorial(m)


def test_sign_examples():
    assert Partition([2]).sign() == -1
    assert Partition([3]).sign() == 1
    assert Partition([2, 2]).sign() == 1


def test_sign_formula():
    for m in range(13):
        for p in partitions_of(m):
            assert p.sign() == (-1) ** (p.size() - len(p))


def test_partitions_of_counts_and_order():
    assert partitions_of(0) == (Partition(),)
    assert len(partitions_of(4)) == naive_partition_count(4) == 5
    assert len(partitions_of(7)) == naive_partition_count(7) == 15
    # reverse-lexicographic: (m) first, (1^m) last, strictly decreasing in lex
    for m in range(1, 10):
        parts = partitions_of(m)
        assert parts[0] == Partition([m])
        assert parts[-1] == Partition([1] * m)
        assert all(tuple(parts[i]) > tuple(parts[i + 1]) for i in range(len(parts) - 1))
        assert len(set(parts)) == len(parts)
        assert all(p.size() == m for p in parts)


def test_partitions_of_capacity():
    with pytest.raises(CapacityError):
        partitions_of(31)
    with pytest.raises(ValueError):
        partitions_of(-1)


@given(st.lists(st.integers(min_value=1, max_value=20), max_size=8))
def test_parse_str_round_trip(parts):
    p = Partition(sorted(parts, reverse=True))
    assert Partition.parse(str(p)) == p


def test_parse_errors():
    with pytest.raises(ValueError):
        Partition.parse("3,1")
    with pytest.raises(ValueError):
        Partition.parse("[3,x]")
