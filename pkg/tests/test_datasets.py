import pytest
from numpy.testing import assert_allclose

from src.errors import DatasetFormatError
from src.fitting.datasets import (SOLVATION_COLUMNS, load_energy_scales, load_reference_datasets, load_timescales,
                                  records_frame)

HEADER = ",".join(SOLVATION_COLUMNS) + "\n"


def test_solvation_table():
    records = load_reference_datasets()
    assert len(records) == 22
    assert sum(r.unresolved_window for r in records) == 6
    assert sum(r.E_R is None for r in records) == 3
    for r in records:
        assert abs(r.weight_sum - 1.0) <= 0.02
        assert all(c.tau > 0 for c in r.components)


def test_unresolved_rows_start_at_second_component():
    records = load_reference_datasets()
    dcm = next(r for r in records if r.chromophore == "DCM")
    assert dcm.unresolved_window
    frame = records_frame([dcm])
    assert frame.loc[0, "A2"] == 0.25
    assert frame.loc[0, "tau3_ps"] == 10000.0
    assert frame["A1"].isna().all()


def test_records_frame_shape():
    frame = records_frame(load_reference_datasets())
    assert frame.shape == (22, len(SOLVATION_COLUMNS) + 1)


def test_as_fit_is_sorted_by_time():
    record = next(r for r in load_reference_datasets() if r.source == "Lu04CPL")
    fit = record.as_fit()
    assert list(fit.taus) == [0.34, 1.6]
    assert fit.converged


def test_energy_scales():
    scales = load_energy_scales()
    assert len(scales) == 12
    bulk = next(s for s in scales if "bulk water" in s.process)
    assert_allclose(bulk.delta_min_cm1, 80.655, rtol=1e-4)
    assert all(s.delta_max_meV >= s.delta_min_meV for s in scales)


def test_timescales():
    rows = load_timescales()
    assert len(rows) == 12
    assert all(r.max_ps >= r.min_ps for r in rows)


@pytest.mark.parametrize("row, field", [
    ("Trp,none,water,100,0.5,abc,0.5,1.0,,,x\n", "tau1_ps"),
    ("Trp,none,water,100,0.5,1.0,,,,,x\n", "A1"),
    ("Trp,none,water,100,0.5,,0.5,1.0,,,x\n", "tau1_ps"),
    ("Trp,none,water,-3,1.0,1.0,,,,,x\n", "E_R_cm1"),
])
def test_malformed_rows(tmp_path, row, field):
    path = tmp_path / "table.csv"
    path.write_text(HEADER + row)
    with pytest.raises(DatasetFormatError) as info:
        load_reference_datasets(path)
    assert info.value.line == 2
    assert info.value.field == field


def test_missing_column(tmp_path):
    path = tmp_path / "scales.csv"
    path.write_text("process,delta_min_meV,source\nx,1,y\n")
    with pytest.raises(DatasetFormatError):
        load_energy_scales(path)
