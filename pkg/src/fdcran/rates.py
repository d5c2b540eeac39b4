"""Per-cell rate calculators for all six duplex/processing schemes.

Half-duplex schemes split the band between directions at full power; the
equal rate follows from balancing f*R_u against (1-f)*R_d.  Full-duplex
schemes transmit simultaneously and instead optimize the operating powers
(p_u, p_d) by a coarse grid search with zoomed local refinement.

C-RAN schemes model the fronthaul by quantization noise: uplink compression
at sigma_u^2 = (signal power at the radio unit) / (2**c_u - 1), downlink
precoding at stream power p_d * (1 - 2**-c_d) plus quantization noise
p_d * 2**-c_d, so the radio unit transmits exactly p_d.
"""

import math
from enum import Enum

import numpy as np

from .model import (
    PowerAllocation,
    RateResult,
    SchemeId,
    q_clamp,
    shannon_c,
)
from .spectral import (
    DEFAULT_PANELS,
    Precoder,
    h_tilde,
    rate_integral,
    rg,
    zf_precoder,
)

__all__ = [
    "DEFAULT_GRID",
    "SicMode",
    "compute_scheme",
    "equal_rate_split",
    "fd_cran",
    "fd_cran_downlink",
    "fd_cran_uplink",
    "fd_scp",
    "fd_scp_downlink_rate",
    "fd_scp_uplink_rate",
    "hd_cran",
    "hd_cran_downlink",
    "hd_cran_uplink",
    "hd_scp",
]

DEFAULT_GRID = 64

_REFINE_PASSES = 2  # zoomed refinements per candidate after the coarse pass
_ZOOM = 8  # window shrink factor per refinement pass
_CANDIDATES = 4  # coarse local leaders refined independently
_DENSE_POINTS = 2049  # first-pass resolution when the objective is closed form
_POLISH_POINTS = 2049  # full-range coordinate lines after refinement
_POLISH_ROUNDS = 2
_TIE_TOL = 1e-9  # objective values this close count as tied
_SEARCH_PANELS = 512  # quadrature resolution inside the power search
_K_MAX = 8  # truncation of sum_{k>0} h~_k^2 for custom precoders


class SicMode(Enum):
    """Downlink receiver behavior toward the co-located uplink transmission."""

    TREAT_AS_NOISE = "treat_as_noise"
    SIC = "sic"


def equal_rate_split(r_u: float, r_d: float) -> tuple[float, float | None]:
    """Equal rate and time split from balancing f*r_u = (1-f)*r_d.

    Returns (r_eq, f_star) with r_eq = r_u*r_d/(r_u + r_d); the 0/0 case is
    defined as rate 0 with no meaningful split (f_star None).
    """
    total = r_u + r_d
    if total <= 0.0:
        return 0.0, None
    return r_u * r_d / total, r_d / total


# ----------------------------------------------------------------------------
# half duplex


def hd_scp(params) -> RateResult:
    """Half-duplex single-cell processing.

    Each direction treats inter-cell interference as noise and is capped by
    its fronthaul: R = min{C(P / (1 + 2 alpha^2 P)), c}.  Full power loses
    nothing here, and the time split gives r_eq = r_u*r_d/(r_u + r_d).
    """
    a2 = params.alpha**2
    r_u = min(shannon_c(params.p_u_max / (1.0 + 2.0 * a2 * params.p_u_max)), params.c_u)
    r_d = min(shannon_c(params.p_d_max / (1.0 + 2.0 * a2 * params.p_d_max)), params.c_d)
    r_eq, f_star = equal_rate_split(r_u, r_d)
    diag = {}
    if f_star is not None:
        diag["f_star"] = f_star
    return RateResult(r_u, r_d, r_eq, diag)


def _hd_sigma_u_sq(params) -> float:
    a2 = params.alpha**2
    return (1.0 + (1.0 + 2.0 * a2) * params.p_u_max) / (2.0**params.c_u - 1.0)


def hd_cran_uplink(params, panels: int = DEFAULT_PANELS) -> tuple[float, float]:
    """Uplink rate under compress-and-forward fronthaul with joint decoding.

    The received signal is quantized at sigma_u^2 = (1 + (1 + 2 alpha^2) P_u)
    / (2**c_u - 1); joint decoding across cells then achieves the spectral
    integral of C(P_u H(f)^2 / (1 + sigma_u^2)).  Returns (rate, sigma_u_sq);
    c_u = 0 short-circuits to rate 0 (the quantizer passes nothing).
    """
    if params.c_u <= 0.0:
        return 0.0, math.inf
    sigma = _hd_sigma_u_sq(params)
    rate = float(rate_integral(params.p_u_max / (1.0 + sigma), params.alpha, panels))
    return rate, sigma


def _effective_taps(precoder: Precoder, alpha: float) -> tuple[float, float]:
    """(h~_0^2, sum_{k>0} h~_k^2) for the given precoder over this channel.

    A zero-forcing precoder built for the same alpha nulls every off-center
    tap by construction, so the tail sum is taken as exactly zero; otherwise
    it is truncated at k <= 8 (the inverse-filter taps decay geometrically).
    """
    h0 = h_tilde(precoder, alpha, 0)
    if precoder.kind == "zero_forcing" and precoder.alpha == alpha:
        return h0 * h0, 0.0
    tail = 0.0
    for k in range(1, _K_MAX + 1):
        hk = h_tilde(precoder, alpha, k)
        tail += hk * hk
    return h0 * h0, tail


def _downlink_base_terms(p_d, c_d: float, h0sq: float, hk_sum: float, a2: float):
    """Signal power and interference-plus-quantization denominator, before any
    uplink-to-downlink terms.  Works on scalars and arrays alike."""
    p_s = p_d * (1.0 - 2.0**-c_d)
    sigma = p_d * 2.0**-c_d
    den = 1.0 + 2.0 * p_s * hk_sum + sigma * (1.0 + 2.0 * a2)
    return p_s * h0sq, den


def hd_cran_downlink(
    params, precoder: Precoder, panels: int | None = None
) -> tuple[float, float, float]:
    """Downlink rate with central-unit precoding and fronthaul quantization.

    Stream power p_s = P_d (1 - 2**-c_d) and quantization noise
    sigma_d^2 = P_d 2**-c_d keep the radio unit at exactly P_d.  The rate is
    C(p_s h~_0^2 / (1 + 2 p_s sum_{k>0} h~_k^2 + sigma_d^2 (1 + 2 alpha^2))).
    Returns (rate, sigma_d_sq, p_s).
    """
    if panels is not None and panels != precoder.panels:
        raise ValueError(
            f"precoder is sampled at {precoder.panels} panels, got panels={panels}"
        )
    h0sq, hk_sum = _effective_taps(precoder, params.alpha)
    signal, den = _downlink_base_terms(
        params.p_d_max, params.c_d, h0sq, hk_sum, params.alpha**2
    )
    rate = shannon_c(signal / den)
    sigma = params.p_d_max * 2.0**-params.c_d
    p_s = params.p_d_max * (1.0 - 2.0**-params.c_d)
    return rate, sigma, p_s


def hd_cran(params, precoder: Precoder, panels: int = DEFAULT_PANELS) -> RateResult:
    """Half-duplex C-RAN: both directions combined through the time split."""
    r_u, sigma_u = hd_cran_uplink(params, panels)
    r_d, sigma_d, p_s = hd_cran_downlink(params, precoder, panels)
    r_eq, f_star = equal_rate_split(r_u, r_d)
    diag = {"sigma_u_sq": sigma_u, "sigma_d_sq": sigma_d, "p_s": p_s}
    if f_star is not None:
        diag["f_star"] = f_star
    return RateResult(r_u, r_d, r_eq, diag)


# ----------------------------------------------------------------------------
# full duplex, single-cell processing


def fd_scp_uplink_rate(params, p_u: float, p_d: float) -> float:
    """Uplink SCP rate at operating powers: inter-cell and downlink-to-uplink
    interference are treated as noise, then the fronthaul cap applies."""
    a2 = params.alpha**2
    bdu2 = params.beta_du**2
    return min(
        shannon_c(p_u / (1.0 + 2.0 * a2 * p_u + 2.0 * bdu2 * p_d)), params.c_u
    )


def fd_scp_downlink_rate(
    params,
    p_u: float,
    p_d: float,
    sic: SicMode = SicMode.TREAT_AS_NOISE,
    r_u: float | None = None,
) -> float:
    """Downlink SCP rate at operating powers.

    Treat-as-noise lumps the whole uplink-to-downlink power
    (2 beta_ud^2 + gamma_ud^2) p_u into the noise.  With SIC the downlink
    mobile first decodes the co-located uplink message (decodable at rates up
    to t2 - r_u jointly, t1 alone), giving the clamp q(t1, t2 - r_u, t3);
    r_u is the uplink rate actually carried.  Both variants cap at c_d.
    """
    a2 = params.alpha**2
    bud2 = params.beta_ud**2
    g2 = params.gamma_ud**2
    base = 1.0 + 2.0 * a2 * p_d + 2.0 * bud2 * p_u
    if sic is SicMode.TREAT_AS_NOISE:
        return min(shannon_c(p_d / (base + g2 * p_u)), params.c_d)
    if r_u is None:
        raise ValueError("r_u is required for the SIC downlink rate")
    t1 = shannon_c(p_d / base)
    t2 = shannon_c((p_d + g2 * p_u) / base)
    t3 = shannon_c(p_d / (base + g2 * p_u))
    return min(q_clamp(t1, t2 - r_u, t3), params.c_d)


def _fd_scp_grid_objective(params, sic: SicMode):
    a2 = params.alpha**2
    bdu2 = params.beta_du**2
    bud2 = params.beta_ud**2
    g2 = params.gamma_ud**2
    c_u, c_d = params.c_u, params.c_d

    def objective(pu_vec, pd_vec):
        pu = pu_vec[:, None]
        pd = pd_vec[None, :]
        ru = np.minimum(np.log2(1.0 + pu / (1.0 + 2.0 * a2 * pu + 2.0 * bdu2 * pd)), c_u)
        base = 1.0 + 2.0 * a2 * pd + 2.0 * bud2 * pu
        if sic is SicMode.TREAT_AS_NOISE:
            rd = np.minimum(np.log2(1.0 + pd / (base + g2 * pu)), c_d)
        else:
            t1 = np.log2(1.0 + pd / base)
            t2 = np.log2(1.0 + (pd + g2 * pu) / base)
            t3 = np.log2(1.0 + pd / (base + g2 * pu))
            rd = np.minimum(np.minimum(t1, np.maximum(t2 - ru, t3)), c_d)
        return np.minimum(ru, rd)

    return objective


def fd_scp(
    params, sic: SicMode = SicMode.TREAT_AS_NOISE, grid: int = DEFAULT_GRID
) -> RateResult:
    """Full-duplex single-cell processing: max-min over operating powers.

    Unlike half duplex, backing off from full power can help (the two
    directions interfere), so the equal rate is the grid-searched
    max over (p_u, p_d) of min{R_u, R_d}.
    """
    _, p_u, p_d = _max_min_search(
        _fd_scp_grid_objective(params, sic),
        params.p_u_max,
        params.p_d_max,
        grid,
        dense=True,
    )
    r_u = fd_scp_uplink_rate(params, p_u, p_d)
    r_d = fd_scp_downlink_rate(params, p_u, p_d, sic, r_u)
    return RateResult(
        r_u, r_d, min(r_u, r_d), {"p_u_star": p_u, "p_d_star": p_d}
    )


# ----------------------------------------------------------------------------
# full duplex, C-RAN


def _check_budget(params, powers: PowerAllocation) -> None:
    if powers.p_u > params.p_u_max or powers.p_d > params.p_d_max:
        raise ValueError(
            f"powers ({powers.p_u}, {powers.p_d}) exceed budgets "
            f"({params.p_u_max}, {params.p_d_max})"
        )


def _fd_sigma_u_sq(params, p_u, p_d, rg2: float):
    # the neighboring radio units' downlink signals are correlated at lag 2
    # through the shared precoder, hence the (1 + R_g(2)) factor
    a2 = params.alpha**2
    bdu2 = params.beta_du**2
    return (
        1.0 + (1.0 + 2.0 * a2) * p_u + 2.0 * bdu2 * (1.0 + rg2) * p_d
    ) / (2.0**params.c_u - 1.0)


def fd_cran_uplink(
    params, powers: PowerAllocation, precoder: Precoder, panels: int = DEFAULT_PANELS
) -> tuple[float, float]:
    """Full-duplex C-RAN uplink at given operating powers.

    The downlink-to-uplink interference raises the quantization noise through
    its received power 2 beta_du^2 (1 + R_g(2)) p_d, but the central unit
    knows the downlink signals and subtracts them after decompression, so
    only sigma_u^2 reaches the decoder.  Returns (rate, sigma_u_sq).
    """
    _check_budget(params, powers)
    if params.c_u <= 0.0:
        return 0.0, math.inf
    sigma = _fd_sigma_u_sq(params, powers.p_u, powers.p_d, rg(precoder, 2))
    rate = float(rate_integral(powers.p_u / (1.0 + sigma), params.alpha, panels))
    return rate, sigma


def fd_cran_downlink(
    params,
    powers: PowerAllocation,
    precoder: Precoder,
    sic: SicMode = SicMode.TREAT_AS_NOISE,
    r_u: float | None = None,
    panels: int | None = None,
) -> float:
    """Full-duplex C-RAN downlink at given operating powers.

    Treat-as-noise adds the uplink-to-downlink power
    (2 beta_ud^2 + gamma_ud^2) p_u to the quantized-downlink denominator.
    With SIC the gamma_ud^2 p_u term moves between numerator and denominator
    to form q(t1, t2 - r_u, t3); r_u (required then) is the uplink rate the
    mobile must first decode.  No fronthaul cap applies here -- the fronthaul
    already enters through the quantization noise.
    """
    _check_budget(params, powers)
    if panels is not None and panels != precoder.panels:
        raise ValueError(
            f"precoder is sampled at {precoder.panels} panels, got panels={panels}"
        )
    h0sq, hk_sum = _effective_taps(precoder, params.alpha)
    signal, den = _downlink_base_terms(
        powers.p_d, params.c_d, h0sq, hk_sum, params.alpha**2
    )
    den = den + 2.0 * params.beta_ud**2 * powers.p_u
    g2pu = params.gamma_ud**2 * powers.p_u
    if sic is SicMode.TREAT_AS_NOISE:
        return shannon_c(signal / (den + g2pu))
    if r_u is None:
        raise ValueError("r_u is required for the SIC downlink rate")
    t1 = shannon_c(signal / den)
    t2 = shannon_c((signal + g2pu) / den)
    t3 = shannon_c(signal / (den + g2pu))
    return q_clamp(t1, t2 - r_u, t3)


def _fd_cran_grid_objective(params, precoder: Precoder, sic: SicMode, panels: int):
    a2 = params.alpha**2
    bud2 = params.beta_ud**2
    g2 = params.gamma_ud**2
    rg2 = rg(precoder, 2)
    h0sq, hk_sum = _effective_taps(precoder, params.alpha)

    def objective(pu_vec, pd_vec):
        pu = pu_vec[:, None]
        pd = pd_vec[None, :]
        shape = (pu_vec.size, pd_vec.size)
        if params.c_u > 0.0:
            snr = pu / (1.0 + _fd_sigma_u_sq(params, pu, pd, rg2))
            ru = rate_integral(np.broadcast_to(snr, shape), params.alpha, panels)
        else:
            ru = np.zeros(shape)
        signal, den = _downlink_base_terms(pd, params.c_d, h0sq, hk_sum, a2)
        den = den + 2.0 * bud2 * pu
        g2pu = g2 * pu
        if sic is SicMode.TREAT_AS_NOISE:
            rd = np.log2(1.0 + signal / (den + g2pu))
        else:
            t1 = np.log2(1.0 + signal / den)
            t2 = np.log2(1.0 + (signal + g2pu) / den)
            t3 = np.log2(1.0 + signal / (den + g2pu))
            rd = np.minimum(t1, np.maximum(t2 - ru, t3))
        return np.minimum(ru, rd)

    return objective


def fd_cran(
    params,
    precoder: Precoder,
    sic: SicMode = SicMode.TREAT_AS_NOISE,
    grid: int = DEFAULT_GRID,
    panels: int = DEFAULT_PANELS,
    full_power: bool = False,
) -> RateResult:
    """Full-duplex C-RAN equal rate: max-min over operating powers.

    The SIC clamp couples the downlink to the uplink rate at the same power
    point, so the uplink is evaluated first on every candidate grid.  The
    power search integrates at a reduced panel count (the integrand is smooth
    enough that this costs nothing at these tolerances); the returned rates
    and diagnostics are re-evaluated at the requested resolution at the
    argmax.  full_power=True skips the search and spends both budgets, for
    sensitivity checks against a fixed-power reading of the scheme.
    """
    if full_power:
        p_u, p_d = params.p_u_max, params.p_d_max
    else:
        objective = _fd_cran_grid_objective(
            params, precoder, sic, min(panels, _SEARCH_PANELS)
        )
        _, p_u, p_d = _max_min_search(
            objective, params.p_u_max, params.p_d_max, grid
        )
    powers = PowerAllocation(p_u, p_d)
    r_u, sigma_u = fd_cran_uplink(params, powers, precoder, panels)
    r_d = fd_cran_downlink(params, powers, precoder, sic, r_u)
    diag = {
        "p_u_star": p_u,
        "p_d_star": p_d,
        "sigma_u_sq": sigma_u,
        "sigma_d_sq": p_d * 2.0**-params.c_d,
        "p_s": p_d * (1.0 - 2.0**-params.c_d),
    }
    return RateResult(r_u, r_d, min(r_u, r_d), diag)


# ----------------------------------------------------------------------------
# power search


def _select_max(values: np.ndarray, pu: np.ndarray, pd: np.ndarray):
    """Best grid point; ties within _TIE_TOL go to the smallest (p_u, p_d)."""
    vmax = float(values.max())
    tied = values >= vmax - _TIE_TOL
    i = int(np.argmax(tied.any(axis=1)))
    j = int(np.argmax(tied[i]))
    return float(values[i, j]), float(pu[i]), float(pd[j])


def _prefer(a, b):
    """Pick the higher-valued candidate; near-ties favor smaller powers."""
    if a[0] > b[0] + _TIE_TOL:
        return a
    if b[0] > a[0] + _TIE_TOL:
        return b
    return a if (a[1], a[2]) <= (b[1], b[2]) else b


def _top_candidates(values: np.ndarray, pu: np.ndarray, pd: np.ndarray, separation: int):
    """Up to _CANDIDATES coarse-grid local leaders, kept apart by `separation`
    grid cells so distinct basins each get refined."""
    order = np.argsort(-values, axis=None, kind="stable")
    chosen: list[tuple[int, int]] = []
    out = []
    for flat in order:
        i, j = divmod(int(flat), values.shape[1])
        if any(max(abs(i - ci), abs(j - cj)) < separation for ci, cj in chosen):
            continue
        chosen.append((i, j))
        out.append((float(values[i, j]), float(pu[i]), float(pd[j])))
        if len(out) == _CANDIDATES:
            break
    return out


def _refine(
    objective,
    candidate,
    p_u_max: float,
    p_d_max: float,
    grid: int,
    span_u: float | None = None,
    span_d: float | None = None,
):
    """Zoomed refinement passes around one candidate (window / _ZOOM per pass)."""
    best = candidate
    span_u = p_u_max / _ZOOM if span_u is None else span_u
    span_d = p_d_max / _ZOOM if span_d is None else span_d
    for _ in range(_REFINE_PASSES):
        pu = np.linspace(
            max(0.0, best[1] - span_u / 2.0), min(p_u_max, best[1] + span_u / 2.0), grid
        )
        pd = np.linspace(
            max(0.0, best[2] - span_d / 2.0), min(p_d_max, best[2] + span_d / 2.0), grid
        )
        best = _prefer(_select_max(objective(pu, pd), pu, pd), best)
        span_u /= _ZOOM
        span_d /= _ZOOM
    return best


def _dense_pass(objective, p_u_max: float, p_d_max: float):
    """Single dense full-box pass, chunked along the uplink axis.

    Affordable only for closed-form objectives; catches ridge basins narrower
    than the coarse grid which no local window can recover afterwards."""
    pu = np.linspace(0.0, p_u_max, _DENSE_POINTS)
    pd = np.linspace(0.0, p_d_max, _DENSE_POINTS)
    best = None
    for start in range(0, _DENSE_POINTS, 256):
        rows = pu[start : start + 256]
        candidate = _select_max(objective(rows, pd), rows, pd)
        best = candidate if best is None else _prefer(candidate, best)
    return best


def _polish(objective, best, p_u_max: float, p_d_max: float):
    """Alternating full-range coordinate lines around the incumbent; cheap
    insurance for optima pinned to one axis or a budget boundary."""
    for _ in range(_POLISH_ROUNDS):
        pu_line = np.linspace(0.0, p_u_max, _POLISH_POINTS)
        pd_fixed = np.array([best[2]])
        best = _prefer(_select_max(objective(pu_line, pd_fixed), pu_line, pd_fixed), best)
        pd_line = np.linspace(0.0, p_d_max, _POLISH_POINTS)
        pu_fixed = np.array([best[1]])
        best = _prefer(_select_max(objective(pu_fixed, pd_line), pu_fixed, pd_line), best)
    return best


def _max_min_search(objective, p_u_max: float, p_d_max: float, grid: int, dense: bool = False):
    """Maximize objective(pu_vec, pd_vec) over [0, p_u_max] x [0, p_d_max].

    One coarse uniform grid pass; the few best well-separated coarse points
    each get the zoomed refinement passes (the max-min objective forms narrow
    diagonal ridges that a single incumbent chain can lose).  With dense=True
    a full-box dense pass plus a tightly-windowed refinement is added, which
    closed-form objectives can afford; alternating coordinate lines then
    polish the winner.  Deterministic throughout: fixed grids, and tie
    handling favors the lexicographically smallest power pair.
    """
    if not isinstance(grid, int) or grid < 2:
        raise ValueError(f"grid resolution must be an integer >= 2, got {grid!r}")
    pu = np.linspace(0.0, p_u_max, grid)
    pd = np.linspace(0.0, p_d_max, grid)
    values = objective(pu, pd)
    best = None
    for candidate in _top_candidates(values, pu, pd, max(2, grid // 8)):
        refined = _refine(objective, candidate, p_u_max, p_d_max, grid)
        best = refined if best is None else _prefer(refined, best)
    if dense:
        anchor = _dense_pass(objective, p_u_max, p_d_max)
        spacing = 1.0 / (_DENSE_POINTS - 1)
        anchored = _refine(
            objective,
            anchor,
            p_u_max,
            p_d_max,
            grid,
            span_u=8.0 * p_u_max * spacing,
            span_d=8.0 * p_d_max * spacing,
        )
        best = _prefer(anchored, best)
    return _polish(objective, best, p_u_max, p_d_max)


# ----------------------------------------------------------------------------
# dispatch


def compute_scheme(
    scheme: SchemeId,
    params,
    panels: int = DEFAULT_PANELS,
    grid: int = DEFAULT_GRID,
    full_power: bool = False,
) -> RateResult:
    """Evaluate one scheme end to end, building the ZF precoder where needed."""
    if scheme is SchemeId.HD_SCP:
        return hd_scp(params)
    if scheme is SchemeId.FD_SCP:
        return fd_scp(params, SicMode.TREAT_AS_NOISE, grid)
    if scheme is SchemeId.FD_SCP_SIC:
        return fd_scp(params, SicMode.SIC, grid)
    precoder = zf_precoder(params.alpha, panels)
    if scheme is SchemeId.HD_CRAN:
        return hd_cran(params, precoder, panels)
    sic = SicMode.SIC if scheme is SchemeId.FD_CRAN_SIC else SicMode.TREAT_AS_NOISE
    return fd_cran(params, precoder, sic, grid, panels, full_power)
