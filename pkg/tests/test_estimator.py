import numpy as np
import pytest
from conftest import Y10
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from pcdtest import SegregationTest
from pcdtest.altdist import AltSpec
from pcdtest.errors import InvalidParam
from pcdtest.estimator import check_points
from pcdtest.inference import analyze
from pcdtest.sampler import make_rng, sample_alt_hull


@pytest.fixture
def seg_x(y10_tri):
    return sample_alt_hull(y10_tri, AltSpec("seg", 0.4), 200, make_rng(51))


def test_fit_matches_analyze(seg_x):
    est = SegregationTest(family="cs", param=1.0).fit(seg_x, Y10)
    res = analyze(seg_x, Y10, ("cs", 1.0))
    assert est.z_ == res.z and est.p_seg_ == res.p_seg
    assert est.reject_seg_ and not est.reject_assoc_
    assert est.summary()["rho"] == res.rho
    assert est.n_features_in_ == 2


def test_hull_corrected_attributes(seg_x):
    est = SegregationTest(correct_hull=True).fit(seg_x, Y10)
    assert est.z_ == est.result_.z_hull_corrected
    assert est.p_assoc_ == est.result_.p_assoc_corrected


def test_params_and_clone():
    est = SegregationTest(family="pe", param=1.5, alpha=0.1)
    assert est.get_params() == {"family": "pe", "param": 1.5, "alpha": 0.1, "correct_hull": False}
    twin = clone(est).set_params(param=3.0)
    assert twin.param == 3.0 and est.param == 1.5


def test_not_fitted():
    with pytest.raises(NotFittedError):
        SegregationTest().summary()


def test_validation(seg_x):
    with pytest.raises(InvalidParam):
        SegregationTest(alpha=1.0).fit(seg_x, Y10)
    with pytest.raises(InvalidParam):
        SegregationTest(param=0.5).fit(seg_x, Y10)
    with pytest.raises(InvalidParam):
        check_points(np.zeros((4, 3)))
    with pytest.raises(ValueError):
        check_points([[0.0, np.nan]])
    with pytest.raises(ValueError):
        SegregationTest().fit(seg_x, Y10[:2])
