import pytest

from fdcran.model import SystemParams


@pytest.fixture
def fig2_params() -> SystemParams:
    """Dense small-cell operating point used throughout: 20 dB budgets,
    strong inter-cell D-U coupling, strong intra-cell U-D coupling."""
    return SystemParams(
        alpha=0.4,
        beta_du=0.4,
        beta_ud=0.04,
        gamma_du=0.0,
        gamma_ud=4.0,
        p_u_max=100.0,
        p_d_max=100.0,
        c_u=10.0,
        c_d=10.0,
    )


def make_params(**overrides) -> SystemParams:
    base = dict(
        alpha=0.4,
        beta_du=0.4,
        beta_ud=0.04,
        gamma_du=0.0,
        gamma_ud=4.0,
        p_u_max=100.0,
        p_d_max=100.0,
        c_u=10.0,
        c_d=10.0,
    )
    base.update(overrides)
    return SystemParams(**base)
