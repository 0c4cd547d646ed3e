import itertools

import pytest

from stringpoly.oracle import gt_pattern_count, top_row, weyl_dimension
from stringpoly.words import DomainError


def test_rank_one():
    for m in range(6):
        assert weyl_dimension(1, (m,)) == m + 1
    assert gt_pattern_count(1, (2,)) == 3


def test_known_values():
    assert weyl_dimension(2, (1, 1)) == 8
    assert weyl_dimension(2, (2, 2)) == gt_pattern_count(2, (2, 2)) == 27
    assert gt_pattern_count(3, (1, 1, 1)) == 64
    assert weyl_dimension(3, (1, 2, 3)) == 630


def test_top_row():
    assert top_row((1, 2, 3)) == (6, 5, 3, 0)


@pytest.mark.parametrize("n,weight", [(n, w) for n in (1, 2, 3)
                                      for w in itertools.product(range(7), repeat=n) if sum(w) <= 6])
def test_oracles_agree(n, weight):
    assert weyl_dimension(n, weight) == gt_pattern_count(n, weight)


def test_rejects_bad_weights():
    with pytest.raises(DomainError):
        weyl_dimension(2, (1,))
    with pytest.raises(DomainError):
        gt_pattern_count(2, (1, -1))
