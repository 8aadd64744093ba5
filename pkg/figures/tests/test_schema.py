import json

import numpy as np
import pytest

from holonoise_figures import (SchemaError, read_compare, read_sweep,
                               read_trajectory, series_checksum)


def test_read_sweep_columns(sweep_csv):
    table = read_sweep(sweep_csv)
    assert table["n_r"].tolist() == [1.0, 10.0]
    assert np.all((table["mean_fidelity"] >= 0) & (table["mean_fidelity"] <= 1))
    assert table["_states"] == ["state_00", "state_01"]


def test_read_trajectory_columns(trajectory_csv):
    table = read_trajectory(trajectory_csv)
    radius = np.sqrt(table["clean_x"] ** 2 + table["clean_y"] ** 2
                     + table["clean_z"] ** 2)
    assert np.allclose(radius, 1.0, atol=1e-9)


def test_read_compare_columns(compare_csv):
    table = read_compare(compare_csv)
    assert np.all(table["n_r_dyn"] >= 1)


def test_missing_file_rejected(tmp_path):
    with pytest.raises(SchemaError, match="does not exist"):
        read_sweep(tmp_path / "absent.csv")


def test_empty_file_rejected(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(SchemaError, match="empty"):
        read_sweep(empty)


def test_header_only_rejected(tmp_path):
    p = tmp_path / "no_rows.csv"
    p.write_text("n_r,mean_fidelity,std_fidelity,leakage_G,leakage_E0\n")
    with pytest.raises(SchemaError, match="no data rows"):
        read_sweep(p)


def test_wrong_header_names_schema(tmp_path):
    p = tmp_path / "wrong.csv"
    p.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(SchemaError, match="holonoise-sweep/1"):
        read_sweep(p)
    with pytest.raises(SchemaError, match="holonoise-trajectory/1"):
        read_trajectory(p)


def test_manifest_schema_mismatch(tmp_path, sweep_csv):
    csv_copy = tmp_path / "sweep.csv"
    csv_copy.write_bytes(sweep_csv.read_bytes())
    (tmp_path / "sweep.manifest.json").write_text(
        json.dumps({"schema": "something-else/9"}))
    with pytest.raises(SchemaError, match="declares 'something-else/9'"):
        read_sweep(csv_copy)


def test_checksum_is_order_sensitive():
    a = [np.array([1.0, 2.0]), np.array([3.0])]
    b = [np.array([1.0, 2.0]), np.array([3.0])]
    c = [np.array([3.0]), np.array([1.0, 2.0])]
    assert series_checksum(a) == series_checksum(b)
    assert series_checksum(a) != series_checksum(c)
