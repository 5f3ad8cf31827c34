from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def figure_argv(data_dir):
    """Input file lists for each figure id, using the bundled result CSVs."""
    d = data_dir
    return {
        "plane_csl": [d / "sample_all.csv", d / "family_optimal.csv",
                      d / "sample_thermal.csv"],
        "family_curves": [d / "family_optimal.csv", d / "family_thermal.csv"],
        "contours": [d / "grid_opposite.csv", d / "grid_thermal.csv"],
        "plane_cdelta": [d / "sample_all.csv", d / "family_optimal.csv",
                         d / "sample_thermal.csv"],
        "dephasing": [d / "dephasing.csv", d / "dephasing_maxima.csv"],
    }
