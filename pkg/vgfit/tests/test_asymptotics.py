import math
import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[2]
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from vgfit.asymptotics.cov import (
    Cov2, classic_cov, classic_cov_delta, full_cov, jacobian_classic, jacobian_modified,
    modified_cov, moment_cov_classic, moment_cov_modified,
)
from vgfit.core.errors import DomainError
from vgfit.estimate.mme import L_prime


def test_classic_closed_form_at_unit_params():
    c = classic_cov(1.0, 1.0)
    assert (c.aa, c.ab, c.bb) == pytest.approx((132.0, -140.0, 153.0), rel=1e-14)
    np.testing.assert_allclose(classic_cov(1.0, 1.0, "printed").as_array(), c.as_array(), rtol=1e-15)


def test_moment_cov_and_jacobian_at_unit_params():
    np.testing.assert_allclose(moment_cov_classic(1.0, 1.0), [[5.0, 84.0], [84.0, 2484.0]], rtol=1e-14)
    np.testing.assert_allclose(jacobian_classic(1.0, 1.0), [[4.0, -1.0 / 3.0], [-3.0, 1.0 / 3.0]], rtol=1e-14)


@pytest.mark.parametrize("a", [0.25, 1.0, 3.0])
@pytest.mark.parametrize("b", [0.1, 1.0, 5.0])
def test_closed_form_equals_delta_rebuild(a, b):
    c = classic_cov(a, b)
    d = classic_cov_delta(a, b)
    np.testing.assert_allclose(c.as_array(), d.as_array(), rtol=1e-9)


def test_printed_variant_differs_off_unit_scale():
    p = classic_cov(1.0, 2.0, "printed")
    c = classic_cov(1.0, 2.0)
    assert p.bb == pytest.approx(2448.0)
    assert c.bb == pytest.approx(612.0)
    assert c.bb == pytest.approx(classic_cov_delta(1.0, 2.0).bb, rel=1e-12)


def test_scale_laws():
    base = classic_cov(1.5, 1.0)
    t = classic_cov(1.5, 3.0)
    assert t.aa == pytest.approx(base.aa)
    assert t.ab == pytest.approx(3.0 * base.ab)
    assert t.bb == pytest.approx(9.0 * base.bb)
    mb = modified_cov(1.5, 1.0)
    mt = modified_cov(1.5, 3.0)
    assert mt.aa == pytest.approx(mb.aa, rel=1e-12)
    assert mt.ab == pytest.approx(3.0 * mb.ab, rel=1e-12)
    assert mt.bb == pytest.approx(9.0 * mb.bb, rel=1e-12)


def test_modified_paper_mode_regression():
    c = modified_cov(1.0, 1.0, "paper")
    assert c.aa == pytest.approx(38.67, rel=5e-3)
    assert c.ab == pytest.approx(-38.67, rel=5e-3)
    assert c.bb == pytest.approx(44.67, rel=5e-3)
    assert -L_prime(1.0) == pytest.approx(0.1137, abs=1e-4)


def test_modified_paper_mode_correlation():
    # −38.67 / √(38.67·44.67)
    assert modified_cov(1.0, 1.0, "paper").correlation() == pytest.approx(-0.9304, abs=2e-3)
    assert -1.0 < modified_cov(1.0, 1.0).correlation() < 0.0


def test_modified_centered_mode_values():
    c = modified_cov(1.0, 1.0)
    assert c.aa == pytest.approx(19.34, rel=5e-3)
    assert c.bb == pytest.approx(33.13, rel=5e-3)
    # 고전 MME 보다 작은 분산
    assert c.aa < classic_cov(1.0, 1.0).aa


def test_modified_jacobian_at_unit_params():
    J = jacobian_modified(1.0, 1.0)
    np.testing.assert_allclose(J, [[12.438, -4.3975], [-12.438, 5.3975]], rtol=2e-4)
    C = moment_cov_modified(1.0, 1.0, "centered")
    np.testing.assert_allclose(C, [[0.5, math.sqrt(2.0)], [math.sqrt(2.0), 5.0]], rtol=1e-12)


def test_cov_helpers():
    c = Cov2(4.0, -2.0, 9.0)
    assert c.det() == 32.0
    assert c.correlation() == pytest.approx(-1.0 / 3.0)
    f = full_cov(2.0, 0.5, "modified")
    arr = f.as_array()
    assert arr.shape == (3, 3)
    assert arr[0, 0] == 1.0 and arr[0, 1] == 0.0 and arr[2, 0] == 0.0
    np.testing.assert_array_equal(arr[1:, 1:], modified_cov(2.0, 0.5).as_array())
    assert full_cov(1.0, 1.0, "classic-mme").inner == classic_cov(1.0, 1.0)


def test_positive_definite_over_grid():
    for a in (0.25, 0.5, 1.0, 2.0, 3.0):
        for b in (0.01, 1.0, 5.0):
            assert classic_cov(a, b).det() > 0.0
            assert modified_cov(a, b).det() > 0.0


def test_argument_errors():
    with pytest.raises(DomainError):
        classic_cov(0.0, 1.0)
    with pytest.raises(DomainError):
        classic_cov(1.0, 1.0, "other")
    with pytest.raises(DomainError):
        modified_cov(1.0, 1.0, "raw")
    with pytest.raises(DomainError):
        full_cov(1.0, 1.0, "mle")
