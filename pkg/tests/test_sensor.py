"""Lattice-sensor tests: quadrature, physics invariances, axis convention.

The reading is checked for linearity, exact translation covariance (the
quadrature windows translate with the sites), normalization, and the
documented raster y-flip; the overlap audit and the quadrature floor are
pinned; the config loader round-trips an INI file.
"""

import numpy as np
import pytest

from qdownsample.sensor import (
    CouplingGrid,
    Field,
    SensorReading,
    double_gaussian_field,
    encode_from_sensor,
    load_sensor_config,
    make_grid,
    min_quadrature_nodes,
    overlap_audit,
    sense,
)
from qdownsample.validation import DegenerateInputError

# ---------------------------------------------------------------------------
# fields and grids
# ---------------------------------------------------------------------------


def test_double_gaussian_field_peaks_at_centers():
    f = double_gaussian_field()
    # far-apart lobes: each center value is ~ the lone lobe amplitude
    assert abs(f(-1.5, -2.0) - 1.0) < 1e-6
    assert abs(f(2.0, 1.5) - 1.0) < 1e-6
    assert f(10.0, 10.0) < 1e-10


def test_double_gaussian_field_broadcasts():
    f = double_gaussian_field()
    x = np.linspace(-3, 3, 7)
    out = f(x[None, :], x[:, None])
    assert out.shape == (7, 7)


def test_double_gaussian_field_validates_widths():
    with pytest.raises(ValueError):
        double_gaussian_field(widths=((0.0, 1.0), (1.0, 1.0)))
    with pytest.raises(ValueError):
        double_gaussian_field(centers=((0.0, 0.0),), widths=((1, 1), (1, 1)))


def test_make_grid_labels_and_spacing():
    grid = make_grid(8)
    assert grid.side == 8
    assert grid.centers.shape == (64, 2)
    axis = np.linspace(-4.0, 4.0, 8)
    # site (m, n) carries label (a_n, b_m): x varies fastest (row-major)
    assert np.allclose(grid.centers[:8, 0], axis, atol=1e-12)
    assert np.allclose(grid.centers[:8, 1], axis[0], atol=1e-12)
    assert abs(grid.spacing - 8.0 / 7.0) < 1e-12


def test_make_grid_default_support_radius():
    grid = make_grid(8, width=5.0)
    assert abs(grid.support_radius - 4.0 / np.sqrt(5.0)) < 1e-12


def test_make_grid_rejects_bad_arguments():
    with pytest.raises(ValueError):
        make_grid(0)
    with pytest.raises(ValueError):
        make_grid(8, extent=(4.0, -4.0))
    with pytest.raises(ValueError):
        make_grid(8, width=0.0)


def test_coupling_grid_validates_center_count():
    with pytest.raises(ValueError):
        CouplingGrid(3, np.zeros((4, 2)), 5.0, 1.0)


def test_flip_y_mirrors_physical_centers():
    grid = make_grid(4, flip_y=True)
    phys = grid.physical_centers()
    assert np.allclose(phys[:, 0], grid.centers[:, 0], atol=1e-15)
    assert np.allclose(phys[:, 1], -grid.centers[:, 1], atol=1e-15)
    plain = make_grid(4, flip_y=False)
    assert np.allclose(plain.physical_centers(), plain.centers, atol=1e-15)


# ---------------------------------------------------------------------------
# quadrature floor and convergence
# ---------------------------------------------------------------------------


def test_min_quadrature_nodes_default_grid():
    # 8 * (4/sqrt(5)) * sqrt(5) = 32 nodes per axis
    assert min_quadrature_nodes(make_grid(64)) == 32


def test_sense_rejects_too_few_nodes():
    with pytest.raises(ValueError):
        sense(double_gaussian_field(), make_grid(8), nodes=16)


def test_sense_quadrature_self_convergence():
    reading = sense(double_gaussian_field(), make_grid(8), nodes=32,
                    convergence_check=True)
    assert reading.convergence_delta is not None
    assert reading.convergence_delta < 1e-9


# ---------------------------------------------------------------------------
# reading physics
# ---------------------------------------------------------------------------


def test_sense_probs_normalize():
    reading = sense(double_gaussian_field(), make_grid(8))
    assert reading.probs.shape == (8, 8)
    assert abs(reading.probs.sum() - 1.0) < 1e-12
    assert np.all(reading.probs >= 0.0)


def test_sense_is_linear_in_the_field():
    grid = make_grid(8)
    base = sense(double_gaussian_field(amplitude=1.0), grid)
    scaled = sense(double_gaussian_field(amplitude=3.5), grid)
    assert np.max(np.abs(scaled.v - 3.5 * base.v)) < 1e-12 * np.max(np.abs(base.v))
    assert np.max(np.abs(scaled.probs - base.probs)) < 1e-12


def test_sense_ignores_global_sign():
    grid = make_grid(8)
    plus = sense(double_gaussian_field(amplitude=1.0), grid)
    minus = sense(double_gaussian_field(amplitude=-1.0), grid)
    assert np.max(np.abs(minus.v + plus.v)) < 1e-12 * np.max(np.abs(plus.v))
    assert np.max(np.abs(minus.probs - plus.probs)) < 1e-12


def test_sense_translation_covariance():
    """Shifting the field by one lattice spacing shifts the reading a column.

    The quadrature window travels with each site, so the equality is exact
    to machine precision, not just to quadrature accuracy.
    """
    grid = make_grid(8)
    h = grid.spacing
    base = sense(double_gaussian_field(), grid)
    shifted_field = double_gaussian_field(
        centers=((-1.5 + h, -2.0), (2.0 + h, 1.5))
    )
    shifted = sense(shifted_field, grid)
    scale = np.max(np.abs(base.v))
    assert np.max(np.abs(shifted.v[:, 1:] - base.v[:, :-1])) < 1e-12 * scale


def test_sense_localizes_matched_gaussian():
    """A field matching one site's coupling window reads out at that site."""
    grid = make_grid(8)
    m, n = 2, 5
    label = grid.centers.reshape(8, 8, 2)[m, n]
    w = grid.width
    field = double_gaussian_field(
        centers=((label[0], -label[1]),),  # physical point of site (m, n)
        widths=((w / 2, w / 2),),
    )
    reading = sense(field, grid)
    assert np.unravel_index(np.argmax(reading.probs), (8, 8)) == (m, n)
    # everything beyond the 3x3 neighborhood is negligible
    mask = np.ones((8, 8), dtype=bool)
    mask[m - 1 : m + 2, n - 1 : n + 2] = False
    assert reading.probs[mask].sum() < 1e-2


def test_sense_flip_y_convention():
    """flip_y=False reads the same field at the mirrored row."""
    grid = make_grid(8, flip_y=False)
    m, n = 2, 5
    label = grid.centers.reshape(8, 8, 2)[m, n]
    field = double_gaussian_field(
        centers=((label[0], label[1]),), widths=((2.5, 2.5),)
    )
    reading = sense(field, grid)
    assert np.unravel_index(np.argmax(reading.probs), (8, 8)) == (m, n)


def test_sense_raises_on_zero_field():
    with pytest.raises(DegenerateInputError):
        sense(double_gaussian_field(amplitude=0.0), make_grid(4))


def test_field_dataclass_is_callable():
    f = Field(lambda x, y: np.asarray(x) + np.asarray(y))
    assert f(1.0, 2.0) == 3.0


# ---------------------------------------------------------------------------
# overlap audit
# ---------------------------------------------------------------------------


def test_overlap_audit_unit_spacing_passes():
    grid = make_grid(9, extent=(-4.0, 4.0))  # spacing exactly 1
    ratio, ok = overlap_audit(grid)
    assert ok
    # squared cross/self ratio for width-5 Gaussians at unit spacing: e^-5
    assert abs(ratio - np.exp(-5.0)) < 1e-6


def test_overlap_audit_half_spacing_fails():
    grid = make_grid(17, extent=(-4.0, 4.0))  # spacing 0.5
    ratio, ok = overlap_audit(grid)
    assert not ok
    assert abs(ratio - np.exp(-1.25)) < 1e-6


def test_overlap_audit_single_site_is_trivial():
    ratio, ok = overlap_audit(make_grid(1))
    assert ratio == 0.0 and ok


# ---------------------------------------------------------------------------
# register encoding
# ---------------------------------------------------------------------------


def test_encode_from_sensor_normalizes():
    reading = sense(double_gaussian_field(), make_grid(8))
    qi = encode_from_sensor(reading)
    assert qi.n0 == 6
    assert qi.side == 8
    assert abs(qi.state.norm() - 1.0) < 1e-12
    expected = np.abs(qi.state.amps.reshape(8, 8)) ** 2
    assert np.max(np.abs(expected - reading.probs)) < 1e-12


def test_encode_from_sensor_requires_power_of_two_side():
    reading = sense(double_gaussian_field(), make_grid(6))
    with pytest.raises(ValueError):
        encode_from_sensor(reading)


def test_encode_from_sensor_rejects_zero_reading():
    zero = SensorReading(np.zeros((4, 4), dtype=complex), np.zeros((4, 4)))
    with pytest.raises(DegenerateInputError):
        encode_from_sensor(zero)


# ---------------------------------------------------------------------------
# config loading
# ---------------------------------------------------------------------------


def test_load_sensor_config_roundtrip(tmp_path):
    path = tmp_path / "sensor.ini"
    path.write_text(
        "[field]\n"
        "amplitude = 2.0\n"
        "centers = -1.0,0.5 ; 1.0,-0.5\n"
        "widths = 0.5,1.0 ; 1.0,0.5\n"
        "[grid]\n"
        "side = 8\n"
        "extent = -2.0, 2.0\n"
        "width = 5.0\n"
        "flip_y = false\n"
        "[quadrature]\n"
        "nodes = 24\n"
        "convergence_check = true\n"
    )
    field, grid, quad = load_sensor_config(path)
    assert grid.side == 8
    assert grid.flip_y is False
    assert abs(grid.centers[:, 0].min() + 2.0) < 1e-12
    assert quad == {"nodes": 24, "convergence_check": True}
    # amplitude 2 at the first lobe's center, plus the far lobe's tail
    assert abs(field(-1.0, 0.5) - 2.0) < 0.05


def test_load_sensor_config_defaults(tmp_path):
    path = tmp_path / "minimal.ini"
    path.write_text("[grid]\nside = 8\n")
    field, grid, quad = load_sensor_config(path)
    assert grid.side == 8
    assert grid.flip_y is True
    assert quad == {"nodes": 32, "convergence_check": False}
    assert abs(field(-1.5, -2.0) - 1.0) < 1e-6


def test_load_sensor_config_missing_file():
    with pytest.raises(OSError):
        load_sensor_config("/nonexistent/sensor.ini")


def test_load_sensor_config_rejects_malformed_pairs(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[field]\ncenters = 1,2,3\n")
    with pytest.raises(ValueError):
        load_sensor_config(path)
