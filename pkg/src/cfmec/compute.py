"""Parallel computation model: task splitting, local/edge delays and energy.

Every operation is vectorized over users; bits are real-valued throughout.
The edge server's clock is shared among the current step's offloaders in
proportion to their offloaded bits, so all offloaders see the same computing
delay.  A user that must offload but has zero rate gets an infinite-delay
sentinel (deadline violation) instead of an exception, because exploratory
policies do produce zero transmit power.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ComputeConfig",
    "TaskState",
    "StepOutcome",
    "split_task",
    "local_exec",
    "edge_share",
    "offload_exec",
    "total_outcome",
]


@dataclass(frozen=True)
class ComputeConfig:
    """Processor and task-arrival parameters."""

    f_local_max_hz: float = 1e9
    f_edge_hz: float = 100e9
    cycles_per_bit: float = 500.0
    switched_capacitance: float = 1e-27
    deadline_s: float = 1e-3
    task_min_bits: float = 2500.0
    task_max_bits: float = 7500.0

    def __post_init__(self):
        if min(
            self.f_local_max_hz,
            self.f_edge_hz,
            self.cycles_per_bit,
            self.switched_capacitance,
            self.deadline_s,
            self.task_min_bits,
        ) <= 0:
            raise ValueError("compute parameters must be positive")
        if self.task_min_bits > self.task_max_bits:
            raise ValueError("task_min_bits must not exceed task_max_bits")


@dataclass
class TaskState:
    """Per-user split of the incoming task into local and offloaded bits."""

    incoming_bits: np.ndarray
    local_bits: np.ndarray
    offload_bits: np.ndarray


@dataclass
class StepOutcome:
    """Per-user delays, energies, rates and deadline flags for one step."""

    t_local: np.ndarray
    t_transmit: np.ndarray
    t_edge_compute: np.ndarray
    t_offload: np.ndarray
    t_total: np.ndarray
    e_local: np.ndarray
    e_offload: np.ndarray
    e_total: np.ndarray
    rate: np.ndarray
    deadline_met: np.ndarray
    reward: float = 0.0


def split_task(task_bits, alpha, cfg: ComputeConfig) -> TaskState:
    """Split incoming bits: local share capped by what alpha*f_max finishes by the deadline."""
    task_bits = np.asarray(task_bits, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    if np.any((alpha < 0) | (alpha > 1)):
        raise ValueError("alpha must lie in [0, 1]")
    if np.any(task_bits < 0):
        raise ValueError("task sizes must be non-negative")
    f_local = alpha * cfg.f_local_max_hz
    cap = cfg.deadline_s * f_local / cfg.cycles_per_bit
    local = np.minimum(task_bits, cap)
    offload = np.maximum(0.0, task_bits - local)
    return TaskState(incoming_bits=task_bits, local_bits=local, offload_bits=offload)


def local_exec(task: TaskState, alpha, cfg: ComputeConfig):
    """Local execution delay and energy; zero work is defined to take zero time."""
    alpha = np.asarray(alpha, dtype=float)
    f_local = alpha * cfg.f_local_max_hz
    cycles = task.local_bits * cfg.cycles_per_bit
    t = np.zeros_like(task.local_bits)
    busy = task.local_bits > 0
    t = np.where(busy, np.minimum(np.divide(cycles, f_local, where=f_local > 0,
                                            out=np.zeros_like(cycles)), cfg.deadline_s), 0.0)
    energy = cfg.switched_capacitance * cycles * f_local**2
    return t, energy


def edge_share(offload_bits: np.ndarray, cfg: ComputeConfig) -> np.ndarray:
    """Edge clock split proportionally to offloaded bits; all zeros if nobody offloads."""
    offload_bits = np.asarray(offload_bits, dtype=float)
    total = offload_bits.sum()
    if total <= 0:
        return np.zeros_like(offload_bits)
    return offload_bits / total * cfg.f_edge_hz


def offload_exec(task: TaskState, rates, powers, f_edge_share, cfg: ComputeConfig):
    """Transmission + edge-compute delay and radio energy of the offloaded share.

    Zero rate with pending bits yields t = inf (deadline violation sentinel);
    the radio energy is p * t_transmit, which is zero when the power is zero.
    """
    rates = np.asarray(rates, dtype=float)
    powers = np.asarray(powers, dtype=float)
    f_edge_share = np.asarray(f_edge_share, dtype=float)
    off = task.offload_bits
    pending = off > 0

    t_tr = np.zeros_like(off)
    sendable = pending & (rates > 0)
    t_tr[sendable] = off[sendable] / rates[sendable]
    t_tr[pending & (rates <= 0)] = np.inf

    t_comp = np.zeros_like(off)
    t_comp[pending] = off[pending] * cfg.cycles_per_bit / f_edge_share[pending]

    t_off = t_tr + t_comp
    e_off = np.where(np.isfinite(t_tr), powers * t_tr,
                     np.where(powers > 0, np.inf, 0.0))
    return t_tr, t_comp, t_off, e_off


def total_outcome(
    t_local, e_local, t_tr, t_comp, t_off, e_off, rates, cfg: ComputeConfig
) -> StepOutcome:
    """Combine the parallel branches: total delay is the max, energy the sum."""
    t_total = np.maximum(t_local, t_off)
    return StepOutcome(
        t_local=t_local,
        t_transmit=t_tr,
        t_edge_compute=t_comp,
        t_offload=t_off,
        t_total=t_total,
        e_local=e_local,
        e_offload=e_off,
        e_total=e_local + e_off,
        rate=np.asarray(rates, dtype=float),
        deadline_met=t_total <= cfg.deadline_s,
    )
