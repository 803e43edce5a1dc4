"""Radio environment: placements, large-scale fading, Rayleigh fading, pilots.

Large-scale gains follow a three-slope COST231-Hata profile with log-normal
shadowing beyond the outer breakpoint.  Small-scale fading is i.i.d. CN(0,1)
per (AP, user) and is redrawn once per coherence block.  Channel estimates
come from a least-squares pilot round with orthonormal pilot sequences.

All functions are pure given an explicit numpy Generator; callers that run
in parallel must own their generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ChannelConfig",
    "NetworkRealization",
    "path_loss_offset_db",
    "path_loss_db",
    "large_scale_gain",
    "draw_small_scale",
    "noise_power",
    "unit_pilots",
    "ls_estimate",
    "realize_network",
    "redraw_small_scale",
]


@dataclass(frozen=True)
class ChannelConfig:
    """Static radio parameters of one deployment."""

    num_aps: int = 100
    num_users: int = 10
    area_side_m: float = 1000.0
    carrier_mhz: float = 1900.0
    ap_height_m: float = 15.0
    user_height_m: float = 1.65
    shadow_std_db: float = 10.0
    d0_km: float = 0.01
    d1_km: float = 0.05
    bandwidth_hz: float = 5e6
    noise_temp_k: float = 290.0
    noise_figure_db: float = 9.0
    boltzmann_jpk: float = 1.381e-23
    pilot_power_w: float = 0.1
    coherence_steps: int = 1

    def __post_init__(self):
        if not self.num_aps >= self.num_users >= 1:
            raise ValueError(
                f"need num_aps >= num_users >= 1, got M={self.num_aps} K={self.num_users}"
            )
        if not self.d1_km > self.d0_km > 0:
            raise ValueError(f"need d1 > d0 > 0, got d0={self.d0_km} d1={self.d1_km}")
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth must be positive")
        if self.pilot_power_w <= 0 or self.noise_temp_k <= 0 or self.boltzmann_jpk <= 0:
            raise ValueError("powers and temperatures must be positive")
        if self.coherence_steps < 1:
            raise ValueError("coherence_steps must be >= 1")


@dataclass
class NetworkRealization:
    """One draw of the network: geometry, gains, fades, and LS estimates.

    beta, h, g, g_hat are all (M, K); g = sqrt(beta) * h holds exactly and
    g_hat = g + pilot-noise term under orthonormal pilots.
    """

    ap_positions: np.ndarray
    user_positions: np.ndarray
    beta: np.ndarray
    h: np.ndarray
    g: np.ndarray
    g_hat: np.ndarray
    distances_km: np.ndarray = field(repr=False, default=None)


def path_loss_offset_db(cfg: ChannelConfig) -> float:
    """Fixed attenuation offset of the three-slope model (carrier in MHz, heights in m)."""
    log_f = np.log10(cfg.carrier_mhz)
    return (
        46.3
        + 33.9 * log_f
        - 13.82 * np.log10(cfg.ap_height_m)
        - (1.1 * log_f - 0.7) * cfg.user_height_m
        + (1.56 * log_f - 0.8)
    )


def path_loss_db(d_km, cfg: ChannelConfig):
    """Three-slope path loss in dB for distances in km (scalar or array).

    Beyond d1 the slope is 35 dB/decade; between d0 and d1 it is 20 dB/decade
    (with a fixed d1 term); below d0 the loss is constant.  Continuous at both
    breakpoints by construction.
    """
    d = np.asarray(d_km, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distances must be positive")
    loss = path_loss_offset_db(cfg)
    d0, d1 = cfg.d0_km, cfg.d1_km
    pl = np.where(
        d > d1,
        -loss - 35.0 * np.log10(d),
        np.where(
            d > d0,
            -loss - 10.0 * np.log10(d**2 * d1**1.5),
            -loss - 10.0 * np.log10(d0**2 * d1**1.5),
        ),
    )
    return pl if pl.ndim else float(pl)


def large_scale_gain(d_km, shadow_z, cfg: ChannelConfig):
    """Linear large-scale gain: 10^(PL/10) with shadowing applied only beyond d1."""
    d = np.asarray(d_km, dtype=float)
    z = np.asarray(shadow_z, dtype=float)
    pl = path_loss_db(d, cfg)
    shadow_db = np.where(d > cfg.d1_km, cfg.shadow_std_db * z, 0.0)
    gain = 10.0 ** (np.asarray(pl) / 10.0) * 10.0 ** (shadow_db / 10.0)
    return gain if gain.ndim else float(gain)


def draw_small_scale(rng: np.random.Generator, shape=None) -> np.ndarray:
    """CN(0,1) fades: real and imaginary parts i.i.d. N(0, 1/2)."""
    size = () if shape is None else shape
    re = rng.standard_normal(size)
    im = rng.standard_normal(size)
    return (re + 1j * im) / np.sqrt(2.0)


def noise_power(cfg: ChannelConfig) -> float:
    """Receiver noise power in watts: k_B * T0 * W * noise figure."""
    return (
        cfg.boltzmann_jpk
        * cfg.noise_temp_k
        * cfg.bandwidth_hz
        * 10.0 ** (cfg.noise_figure_db / 10.0)
    )


def unit_pilots(num_users: int) -> np.ndarray:
    """Orthonormal pilot matrix of shape (tau_p, K) with tau_p = K (columns are pilots)."""
    return np.eye(num_users, dtype=complex)


def _check_pilots(pilots: np.ndarray) -> None:
    tau_p, num = pilots.shape
    gram = pilots.conj().T @ pilots
    if not np.allclose(gram, np.eye(num), atol=1e-10):
        raise ValueError("pilot sequences must be pairwise orthogonal with unit norm")


def ls_estimate(y_pilot: np.ndarray, pilots: np.ndarray, k: int, cfg: ChannelConfig) -> complex:
    """Least-squares estimate of user k's channel from one AP's received pilot vector.

    y_pilot has length tau_p; with orthonormal pilots the estimate equals the
    true channel plus noise of variance sigma^2 / (tau_p * pilot power).
    """
    _check_pilots(pilots)
    tau_p = pilots.shape[0]
    return complex(pilots[:, k].conj() @ y_pilot / np.sqrt(tau_p * cfg.pilot_power_w))


def _pilot_round(g: np.ndarray, pilots: np.ndarray, noise: np.ndarray, cfg: ChannelConfig) -> np.ndarray:
    """Run the uplink pilot phase and LS-estimate every channel.

    g is (M, K), pilots (tau_p, K), noise (M, tau_p) with CN(0, sigma^2)
    entries; returns g_hat of shape (M, K).
    """
    tau_p = pilots.shape[0]
    scale = np.sqrt(tau_p * cfg.pilot_power_w)
    y = scale * g @ pilots.T + noise  # (M, tau_p)
    return y @ pilots.conj() / scale


def realize_network(cfg: ChannelConfig, rng: np.random.Generator) -> NetworkRealization:
    """Draw a full network: uniform placements, gains, fades, and LS estimates."""
    m, k = cfg.num_aps, cfg.num_users
    ap_pos = rng.uniform(0.0, cfg.area_side_m, size=(m, 2))
    user_pos = rng.uniform(0.0, cfg.area_side_m, size=(k, 2))
    d_km = np.linalg.norm(ap_pos[:, None, :] - user_pos[None, :, :], axis=2) / 1000.0
    shadow_z = rng.standard_normal((m, k))
    beta = large_scale_gain(d_km, shadow_z, cfg)
    real = NetworkRealization(
        ap_positions=ap_pos,
        user_positions=user_pos,
        beta=beta,
        h=np.empty((m, k), dtype=complex),
        g=np.empty((m, k), dtype=complex),
        g_hat=np.empty((m, k), dtype=complex),
        distances_km=d_km,
    )
    return redraw_small_scale(real, cfg, rng)


def redraw_small_scale(
    real: NetworkRealization, cfg: ChannelConfig, rng: np.random.Generator
) -> NetworkRealization:
    """New coherence block: fresh fades and a fresh pilot round over fixed beta."""
    m, k = real.beta.shape
    h = draw_small_scale(rng, (m, k))
    g = np.sqrt(real.beta) * h
    pilots = unit_pilots(k)
    sigma2 = noise_power(cfg)
    pilot_noise = draw_small_scale(rng, (m, k)) * np.sqrt(sigma2)
    g_hat = _pilot_round(g, pilots, pilot_noise, cfg)
    return NetworkRealization(
        ap_positions=real.ap_positions,
        user_positions=real.user_positions,
        beta=real.beta,
        h=h,
        g=g,
        g_hat=g_hat,
        distances_km=real.distances_km,
    )
