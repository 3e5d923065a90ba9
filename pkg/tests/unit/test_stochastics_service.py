import numpy as np
import pytest
from numpy.testing import assert_array_equal
from pydantic import ValidationError

from models import SeededStream
from services.stochastics_service import derive_stream, gaussian, gaussian_array, member_draws
from utils import ContractError


def test_same_lineage_same_draws():
    first = gaussian_array(derive_stream(5, (2, 0, 1)), 0.0, 1.0, 10)
    second = gaussian_array(derive_stream(5, (2, 0, 1)), 0.0, 1.0, 10)
    assert_array_equal(first, second)


def test_lineage_and_seed_separate_streams():
    base = gaussian_array(derive_stream(5, (1,)), 0.0, 1.0, 10)
    assert not (base == gaussian_array(derive_stream(5, (2,)), 0.0, 1.0, 10)).all()
    assert not (base == gaussian_array(derive_stream(6, (1,)), 0.0, 1.0, 10)).all()


def test_child_matches_derived_lineage():
    parent = derive_stream(11, (2, 4))
    assert_array_equal(
        gaussian_array(parent.child(1, 3), 0.0, 1.0, 4),
        gaussian_array(derive_stream(11, (2, 4, 1, 3)), 0.0, 1.0, 4),
    )


def test_zero_variance_returns_mean(stream):
    assert gaussian(stream, 0.75, 0.0) == 0.75


def test_negative_variance_rejected(stream):
    with pytest.raises(ContractError):
        gaussian(stream, 0.0, -1.0)
    with pytest.raises(ContractError):
        member_draws(stream, 3, [-1.0, 1.0], 2)


def test_member_draws_do_not_depend_on_ensemble_size(stream):
    small = member_draws(stream, 5, [1.0, 4.0], 2)
    large = member_draws(stream, 12, [1.0, 4.0], 2)
    assert small.shape == (5, 2)
    assert_array_equal(large[:5], small)


def test_stream_rejects_negative_labels():
    with pytest.raises(ValidationError):
        SeededStream(master_seed=1, lineage=(-1,))


def test_million_draws_have_unit_moments():
    draws = gaussian_array(derive_stream(42, (7, 3)), 0.0, 1.0, 10**6)
    assert abs(draws.mean()) <= 0.01
    assert 0.99 <= draws.var(ddof=1) <= 1.01


def test_sibling_streams_are_uncorrelated():
    first = gaussian_array(derive_stream(42, (0, 0)), 0.0, 1.0, 10**4)
    second = gaussian_array(derive_stream(42, (1, 0)), 0.0, 1.0, 10**4)
    assert abs(np.corrcoef(first, second)[0, 1]) < 0.05


def test_scaled_draws_follow_mean_and_variance(stream):
    draws = gaussian_array(stream, 5.0, 4.0, 10**5)
    assert draws.mean() == pytest.approx(5.0, abs=0.03)
    assert draws.var(ddof=1) == pytest.approx(4.0, rel=0.03)
