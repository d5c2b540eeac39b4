"""Per-cell rate analysis for half/full-duplex cellular systems with
single-cell processing or C-RAN operation on the extended Wyner model."""

from .model import (
    NumericDomainError,
    PowerAllocation,
    RateResult,
    SchemeId,
    SystemParams,
    ZfSingularError,
    db_to_linear,
    linear_to_db,
    q_clamp,
    shannon_c,
)
from .oracle import (
    CirculantChannel,
    circulant_uplink_rate,
    circulant_uplink_rate_dense,
    exhaustive_power_opt,
)
from .rates import (
    DEFAULT_GRID,
    SicMode,
    compute_scheme,
    equal_rate_split,
    fd_cran,
    fd_cran_downlink,
    fd_cran_uplink,
    fd_scp,
    fd_scp_downlink_rate,
    fd_scp_uplink_rate,
    hd_cran,
    hd_cran_downlink,
    hd_cran_uplink,
    hd_scp,
)
from .spectral import (
    DEFAULT_PANELS,
    Precoder,
    channel_response,
    custom_precoder,
    h_tilde,
    integrate_unit,
    rate_integral,
    rg,
    zf_precoder,
)
from .sweep import (
    ConfigError,
    SweepBase,
    SweepRow,
    SweepSpec,
    VerificationError,
    emit_csv,
    load_csv,
    parse_config,
    preset_spec,
    run_sweep,
    serialize_spec,
    verification_failures,
)
from .svg import PlotSpec, emit_svg

__version__ = "0.1.0"

__all__ = [
    "CirculantChannel",
    "ConfigError",
    "DEFAULT_GRID",
    "DEFAULT_PANELS",
    "NumericDomainError",
    "PlotSpec",
    "PowerAllocation",
    "Precoder",
    "RateResult",
    "SchemeId",
    "SicMode",
    "SweepBase",
    "SweepRow",
    "SweepSpec",
    "SystemParams",
    "VerificationError",
    "ZfSingularError",
    "channel_response",
    "circulant_uplink_rate",
    "circulant_uplink_rate_dense",
    "compute_scheme",
    "custom_precoder",
    "db_to_linear",
    "emit_csv",
    "emit_svg",
    "equal_rate_split",
    "exhaustive_power_opt",
    "fd_cran",
    "fd_cran_downlink",
    "fd_cran_uplink",
    "fd_scp",
    "fd_scp_downlink_rate",
    "fd_scp_uplink_rate",
    "h_tilde",
    "hd_cran",
    "hd_cran_downlink",
    "hd_cran_uplink",
    "hd_scp",
    "integrate_unit",
    "linear_to_db",
    "load_csv",
    "parse_config",
    "preset_spec",
    "q_clamp",
    "rate_integral",
    "rg",
    "run_sweep",
    "serialize_spec",
    "shannon_c",
    "verification_failures",
    "zf_precoder",
]
