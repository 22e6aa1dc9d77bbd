import pytest
import structlog

from hcn.model import NetworkParams, TierParams, dbm_to_mw


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch):
    """
    Fixture to keep every test independent of the caller's HCN_* / OTEL settings.
    Tracing stays off and structlog is reset so configuration done by one test
    (e.g. a CLI run) never leaks into the next.
    """
    for name in ("HCN_LOG_LEVEL", "HCN_LOG_JSON", "HCN_SERVICE_NAME", "HCN_OTEL_ENABLED",
                 "OTEL_EXPORTER_OTLP_ENDPOINT"):
        monkeypatch.delenv(name, raising=False)
    yield
    structlog.contextvars.clear_contextvars()
    structlog.reset_defaults()


@pytest.fixture
def single_tier_params():
    """One tier, lambda = 100, lambda_u = 300, interference limited."""
    return NetworkParams(tiers=[TierParams(tx_power=1000.0, density=100.0)], alpha=3.75, ue_density=300.0)


@pytest.fixture
def two_tier_params():
    """30/24 dBm two-tier scenario with lambda_1 = 100, lambda_2 = 200."""
    return NetworkParams(
        tiers=[TierParams(dbm_to_mw(30), 100.0), TierParams(dbm_to_mw(24), 200.0)],
        alpha=3.75,
        ue_density=300.0,
    )


def two_tier(lambda_2: float, noise_power: float = 0.0) -> NetworkParams:
    return NetworkParams(
        tiers=[TierParams(dbm_to_mw(30), 100.0), TierParams(dbm_to_mw(24), lambda_2)],
        alpha=3.75,
        ue_density=300.0,
        noise_power=noise_power,
    )


def three_tier(lambda_3: float) -> NetworkParams:
    return NetworkParams(
        tiers=[
            TierParams(dbm_to_mw(46), 10.0, "macro"),
            TierParams(dbm_to_mw(30), 100.0, "pico"),
            TierParams(dbm_to_mw(24), lambda_3, "femto"),
        ],
        alpha=3.75,
        ue_density=300.0,
    )


@pytest.fixture
def fig3_sweep():
    return [two_tier(l2) for l2 in (100.0, 200.0, 300.0, 400.0, 500.0)]


@pytest.fixture
def fig2_params():
    return three_tier(300.0)


@pytest.fixture
def make_two_tier():
    """Factory for the 30/24 dBm scenario at a given lambda_2 (and noise power)."""
    return two_tier


@pytest.fixture
def make_three_tier():
    """Factory for the 46/30/24 dBm scenario at a given lambda_3."""
    return three_tier
