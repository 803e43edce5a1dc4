"""Uplink access: user-centric AP clustering, SINR/rate, fractional power control.

The SINR is evaluated on the current channel draw (instantaneous values of
the combined estimate/channel inner products), with maximum-ratio combining
over each user's serving cluster.  Interference sums run over all other
users' transmit powers regardless of their own clusters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ClusterAssignment",
    "PowerAllocation",
    "form_clusters",
    "sinr",
    "sinr_all",
    "rate",
    "fpc_power",
    "FPC_P0_W",
    "FPC_EXPONENT",
]

# Fractional power control defaults: open-loop target of -35 dBm, half compensation.
FPC_P0_W = 10.0 ** (-35.0 / 10.0) * 1e-3
FPC_EXPONENT = 0.5


@dataclass(frozen=True)
class ClusterAssignment:
    """Per-user serving sets: indices (K, N_k), sorted by descending large-scale gain."""

    indices: np.ndarray
    cluster_size: int

    @property
    def num_users(self) -> int:
        return self.indices.shape[0]


@dataclass(frozen=True)
class PowerAllocation:
    """Uplink transmit powers p_k = eta_k * p_max_k with eta in [0, 1]."""

    eta: np.ndarray
    p_max: np.ndarray

    def __post_init__(self):
        eta = np.asarray(self.eta, dtype=float)
        p_max = np.broadcast_to(np.asarray(self.p_max, dtype=float), eta.shape).copy()
        if np.any((eta < 0) | (eta > 1)):
            raise ValueError("power control coefficients must lie in [0, 1]")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "p_max", p_max)

    @property
    def watts(self) -> np.ndarray:
        return self.eta * self.p_max


def form_clusters(beta: np.ndarray, cluster_size: int) -> ClusterAssignment:
    """Greedy per-user clusters: the N_k APs with the largest gains.

    Ties break toward the lower AP index so the assignment is a pure function
    of beta.
    """
    num_aps, num_users = beta.shape
    if not 1 <= cluster_size <= num_aps:
        raise ValueError(f"cluster size must be in [1, {num_aps}], got {cluster_size}")
    order = np.argsort(-beta, axis=0, kind="stable")  # stable keeps lower index first on ties
    return ClusterAssignment(
        indices=np.ascontiguousarray(order[:cluster_size].T), cluster_size=cluster_size
    )


def sinr(
    k: int,
    g: np.ndarray,
    g_hat: np.ndarray,
    clusters: ClusterAssignment,
    p: np.ndarray,
    noise_w: float,
) -> float:
    """Instantaneous uplink SINR of user k under maximum-ratio combining.

    p holds every user's transmit power in watts; combining weights are the
    conjugated channel estimates of user k over its own cluster.
    """
    idx = clusters.indices[k]
    if idx.size == 0:
        raise ValueError("cluster is empty")
    weights = g_hat[idx, k].conj()
    cross_sq = np.abs(weights @ g[idx, :]) ** 2  # |sum_m ghat*_mk g_mk'|^2 per user k'
    signal = p[k] * cross_sq[k]
    interference = cross_sq @ p - signal
    noise = noise_w * np.sum(np.abs(g_hat[idx, k]) ** 2)
    return float(signal / (interference + noise))


def sinr_all(
    g: np.ndarray,
    g_hat: np.ndarray,
    clusters: ClusterAssignment,
    p: np.ndarray,
    noise_w: float,
) -> np.ndarray:
    """Vectorized SINR for every user (same formula as :func:`sinr`)."""
    num_users = clusters.num_users
    out = np.empty(num_users)
    for k in range(num_users):
        idx = clusters.indices[k]
        weights = g_hat[idx, k].conj()
        cross_sq = np.abs(weights @ g[idx, :]) ** 2
        signal = p[k] * cross_sq[k]
        total = cross_sq @ p
        noise = noise_w * np.sum(np.abs(g_hat[idx, k]) ** 2)
        out[k] = signal / (total - signal + noise)
    return out


def rate(gamma, bandwidth_hz: float):
    """Shannon rate in bits/s: W * log2(1 + gamma)."""
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma < 0):
        raise ValueError("SINR must be non-negative")
    r = bandwidth_hz * np.log2(1.0 + gamma)
    return r if r.ndim else float(r)


def fpc_power(
    beta_col: np.ndarray,
    cluster_idx: np.ndarray,
    p_max: float,
    p0: float = FPC_P0_W,
    nu: float = FPC_EXPONENT,
) -> float:
    """Fractional power control: min(p_max, p0 * lambda^-nu) with lambda the
    summed large-scale gain over the serving cluster."""
    lam = float(np.sum(np.asarray(beta_col, dtype=float)[cluster_idx]))
    if lam <= 0:
        raise ValueError("summed large-scale gain must be positive")
    return min(p_max, p0 * lam**-nu)
