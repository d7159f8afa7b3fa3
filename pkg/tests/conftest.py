import pytest
from hypothesis import HealthCheck, settings, strategies as st

from app.core.exact_linear import GaussianRational, GaussianRationalMatrix

settings.register_profile(
    "kjb",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("kjb")

small_ints = st.integers(min_value=-3, max_value=3)
gaussian_ints = st.builds(GaussianRational, small_ints, small_ints)


def matrices(rows: int, cols: int):
    """Strategy for rows x cols matrices with small Gaussian-integer entries."""
    return st.lists(gaussian_ints, min_size=rows * cols, max_size=rows * cols).map(
        lambda entries: GaussianRationalMatrix(rows, cols, entries)
    )


@pytest.fixture
def config_path(tmp_path):
    return str(tmp_path / "kjb.toml")
