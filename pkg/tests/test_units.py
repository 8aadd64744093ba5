import numpy as np

from holonoise import HBAR_MEV_FS, inv_fs_to_mev, mev_to_inv_fs


def test_mev_round_trip_is_identity():
    for x in [1.0, 5.0, 0.333, 123.456]:
        assert abs(inv_fs_to_mev(mev_to_inv_fs(x)) - x) <= 1e-12 * x


def test_conversion_constant():
    assert np.isclose(mev_to_inv_fs(HBAR_MEV_FS), 1.0, rtol=1e-15)
    assert np.isclose(mev_to_inv_fs(1.0), 1.0 / 658.2119569, rtol=1e-15)
