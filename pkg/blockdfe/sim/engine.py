# Copyright 2025 Praveen Rachamreddy
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Monte Carlo BER engine.

Each channel realization is an independent work item. Its channel, data and
noise come from index-addressed streams, and every scheme at a given
(channel, SNR) sees the same bits and the same noise. Per-channel results
are reduced in channel order, so the report does not depend on the number
of workers.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List, Optional, Tuple

import numpy as np

from blockdfe.analysis import BerCoeffs, DetectorKind, ber_lower_bound, error_covariance, gmi
from blockdfe.channel import (
    ChannelModel,
    fir_zero_padded_channel,
    noise_variance_for_snr,
    random_fir_taps,
    rayleigh_mimo_channel,
    sample_noise,
)
from blockdfe.detection.constellation import Constellation
from blockdfe.detection.detector import count_label_bit_errors, detect_blocks
from blockdfe.errors import BlockDfeError
from blockdfe.log import log_sweep_event
from blockdfe.random_streams import Purpose, stream
from blockdfe.sim.config import Scenario, SimConfig
from blockdfe.sim.report import SimReport, SimRow
from blockdfe.transceiver.registry import load_scheme
from blockdfe.transceiver.types import DesignSpec

logger = logging.getLogger(__name__)

CellKey = Tuple[str, int]


@dataclass
class ChannelOutcome:
    """Everything one channel realization contributes to the report."""
    channel_index: int
    counts: Dict[Tuple[str, int, str], Tuple[int, int]] = field(default_factory=dict)
    analytics: Dict[CellKey, Tuple[float, float, float]] = field(default_factory=dict)
    skipped: List[Dict[str, object]] = field(default_factory=list)


def draw_channel(cfg: SimConfig, channel_index: int) -> ChannelModel:
    """Channel realization ``channel_index`` of the sweep (unit noise covariance)."""
    rng = stream(cfg.master_seed, Purpose.CHANNEL, channel_index)
    if cfg.scenario is Scenario.FIR_ZP:
        taps = random_fir_taps(cfg.L, rng, normalize=cfg.normalize_taps)
        return fir_zero_padded_channel(taps, cfg.K)
    return rayleigh_mimo_channel(cfg.P, cfg.K, rng)


def simulate_channel(cfg: SimConfig, channel_index: int) -> ChannelOutcome:
    """Run every scheme, SNR and feedback mode on one channel realization."""
    outcome = ChannelOutcome(channel_index=channel_index)
    base = draw_channel(cfg, channel_index)
    spec = DesignSpec(M=cfg.M, p0=cfg.p0)
    const = Constellation.square_qam(cfg.b)
    coeffs = BerCoeffs.from_bits(cfg.b)
    n_blocks = cfg.blocks_per_channel
    schemes = [load_scheme(name) for name in cfg.schemes]

    for snr_index, snr_db in enumerate(cfg.snr_db_grid):
        sigma2 = noise_variance_for_snr(snr_db, cfg.p0, cfg.M)
        ch = base.with_noise_variance(sigma2)

        data_rng = stream(cfg.master_seed, Purpose.DATA, channel_index, snr_index)
        noise_rng = stream(cfg.master_seed, Purpose.NOISE, channel_index, snr_index)
        bits = data_rng.integers(0, 2, size=(n_blocks, cfg.M * const.bits_per_symbol), dtype=np.uint8)
        labels = const.labels_from_bits(bits).reshape(n_blocks, cfg.M).T
        S = const.points[labels]
        V = sample_noise(ch.P, n_blocks, sigma2, noise_rng)

        for scheme in schemes:
            try:
                t = scheme.design(ch, spec)
                Y = ch.H @ (t.F @ S) + V
                Ree = error_covariance(ch, t)
                trace = float(np.real(np.trace(Ree)))
                bound = ber_lower_bound(
                    trace, cfg.M, coeffs, DetectorKind(scheme.detector_kind), per_symbol_snr=True
                ).value
                outcome.analytics[(scheme.name, snr_index)] = (trace / cfg.M, bound, gmi(ch, t.F))
                for mode in cfg.feedback_modes:
                    labels_hat, _ = detect_blocks(
                        Y, t, const, mode, true_s=S, unbiased_scaling=cfg.unbiased_scaling
                    )
                    errors = count_label_bit_errors(labels_hat, labels, const)
                    outcome.counts[(scheme.name, snr_index, mode.value)] = (bits.size, errors)
            except BlockDfeError as e:
                outcome.skipped.append({
                    "success": False,
                    "scheme": scheme.name,
                    "channel_index": channel_index,
                    "snr_db": float(snr_db),
                    "error": f"{type(e).__name__}: {e}",
                })
    return outcome


def run_sweep(
    cfg: SimConfig,
    workers: int = 1,
    trace_log: Optional[List[Dict[str, object]]] = None,
) -> SimReport:
    """Run a full Monte Carlo sweep.

    Args:
        cfg: Validated sweep configuration.
        workers: Process count; ``1`` runs in-process.
        trace_log: Optional list receiving sweep events.

    Returns:
        SimReport with one row per (scheme, SNR, feedback mode).
    """
    trace_log = [] if trace_log is None else trace_log
    indices = range(cfg.channels_per_point)
    job = partial(simulate_channel, cfg)
    log_sweep_event(
        "sweep_started",
        {"channels": cfg.channels_per_point, "snr_points": len(cfg.snr_db_grid), "workers": workers},
        trace_log,
    )

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(job, indices, chunksize=max(1, cfg.channels_per_point // (4 * workers))))
    else:
        outcomes = [job(i) for i in indices]

    report = _reduce(cfg, outcomes)
    for record in report.skipped:
        log_sweep_event("cell_skipped", record, trace_log)
    if report.skipped:
        logger.warning(f"{len(report.skipped)} (channel, SNR, scheme) cells skipped; see the trace log")
    log_sweep_event("sweep_done", {"rows": len(report.rows), "skipped": len(report.skipped)}, trace_log)
    report.trace_log = trace_log
    return report


def _reduce(cfg: SimConfig, outcomes: List[ChannelOutcome]) -> SimReport:
    outcomes = sorted(outcomes, key=lambda o: o.channel_index)
    rows: List[SimRow] = []
    for name in cfg.schemes:
        for snr_index, snr_db in enumerate(cfg.snr_db_grid):
            analytic = [o.analytics[(name, snr_index)] for o in outcomes if (name, snr_index) in o.analytics]
            if analytic:
                mse = math.fsum(a[0] for a in analytic) / len(analytic)
                bound = math.fsum(a[1] for a in analytic) / len(analytic)
                rate = math.fsum(a[2] for a in analytic) / len(analytic)
            else:
                mse = bound = rate = float("nan")
            for mode in cfg.feedback_modes:
                key = (name, snr_index, mode.value)
                bits = sum(o.counts[key][0] for o in outcomes if key in o.counts)
                errors = sum(o.counts[key][1] for o in outcomes if key in o.counts)
                rows.append(SimRow(
                    scheme=name,
                    snr_db=float(snr_db),
                    feedback_mode=mode.value,
                    bits=bits,
                    errors=errors,
                    predicted_mse=mse,
                    predicted_ber_bound=bound,
                    gmi_bits=rate,
                ))

    header = {
        "scenario": cfg.scenario.value,
        "P": cfg.P,
        "K": cfg.K,
        "M": cfg.M,
        "L": cfg.L,
        "b": cfg.b,
        "p0": cfg.p0,
        "channels_per_point": cfg.channels_per_point,
        "blocks_per_channel": cfg.blocks_per_channel,
        "master_seed": cfg.master_seed,
        "normalize_taps": cfg.normalize_taps,
        "unbiased_scaling": cfg.unbiased_scaling,
        "snr_definition": "(p0/M)/sigma^2",
    }
    skipped = [s for o in outcomes for s in o.skipped]
    return SimReport(rows=rows, header=header, skipped=skipped)
