"""scikit-learn style wrapper around :func:`pcdtest.inference.analyze`."""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .errors import InvalidParam
from .inference import analyze, normal_quantile
from .proximity import PcdConfig

__all__ = ["SegregationTest", "check_points"]


def check_points(points, name="X", min_points=1):
    """Validate a 2-column array of finite coordinates."""
    arr = check_array(points, dtype=np.float64, ensure_min_samples=min_points, input_name=name)
    if arr.shape[1] != 2:
        raise InvalidParam(f"{name} must have exactly 2 columns, got {arr.shape[1]}")
    return arr


class SegregationTest(BaseEstimator):
    """Relative-density test of X against the Delaunay triangulation of Y.

    Parameters
    ----------
    family : {'pe', 'cs'}
        Proportional-edge or central-similarity proximity map.
    param : float
        Expansion parameter (r >= 1 or tau > 0).
    alpha : float
        Level used for the ``reject_*_`` flags.
    correct_hull : bool
        Adjust z for X points outside the hull of Y.

    After ``fit(X, Y)`` the full result is in ``result_``; ``z_``,
    ``p_seg_``, ``p_assoc_``, ``reject_seg_`` and ``reject_assoc_`` are
    shortcuts.  There is nothing to predict or transform.
    """

    def __init__(self, family="pe", param=2.0, alpha=0.05, correct_hull=False):
        self.family = family
        self.param = param
        self.alpha = alpha
        self.correct_hull = correct_hull

    def fit(self, X, Y):
        X = check_points(X, "X", 2)
        Y = check_points(Y, "Y", 3)
        if not 0 < self.alpha < 1:
            raise InvalidParam(f"alpha must be in (0, 1), got {self.alpha}")
        cfg = PcdConfig(self.family, self.param)
        res = analyze(X, Y, cfg, correct_hull=self.correct_hull)
        z = res.z_hull_corrected if self.correct_hull else res.z
        crit = normal_quantile(1 - self.alpha)
        self.result_ = res
        self.z_ = z
        self.p_seg_ = res.p_seg_corrected if self.correct_hull else res.p_seg
        self.p_assoc_ = res.p_assoc_corrected if self.correct_hull else res.p_assoc
        self.reject_seg_ = bool(z > crit)
        self.reject_assoc_ = bool(z < -crit)
        self.n_features_in_ = 2
        return self

    def summary(self):
        check_is_fitted(self, "result_")
        return self.result_.to_dict()
