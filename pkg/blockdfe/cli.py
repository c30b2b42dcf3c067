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

"""Command-line interface: ``blockdfe design | simulate | analyze``.

Exit codes: 0 success, 1 usage error, 2 numerical or design error, 3 I/O error.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

import numpy as np

from blockdfe.analysis import (
    BerCoeffs,
    ClosedFormKind,
    DetectorKind,
    ber_lower_bound,
    closed_form_mse,
    error_covariance,
    gmi,
    mse_report,
)
from blockdfe.channel import ChannelModel, whitened_gram
from blockdfe.config import load_config
from blockdfe.errors import BlockDfeError, InvalidInput
from blockdfe.linalg.matrix_core import hermitian_eig
from blockdfe.log import configure_logging
from blockdfe.sim.config import load_sim_config
from blockdfe.sim.engine import run_sweep
from blockdfe.sim.matrix_io import read_matrix, write_transceiver
from blockdfe.sim.presets import PRESETS, scenario_preset
from blockdfe.transceiver.registry import SCHEME_REGISTRY, load_scheme
from blockdfe.transceiver.types import DesignSpec

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """Argument parser reporting usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_channel(channel_path: str, rvv: str) -> ChannelModel:
    H = read_matrix(channel_path)
    if os.path.exists(rvv):
        return ChannelModel(H=H, Rvv=read_matrix(rvv))
    try:
        sigma2 = float(rvv)
    except ValueError:
        raise InvalidInput(f"--rvv must be a matrix file or a noise variance, got {rvv!r}") from None
    return ChannelModel(H=H).with_noise_variance(sigma2)


def _cmd_design(args) -> int:
    ch = _load_channel(args.channel, args.rvv)
    spec = DesignSpec(M=args.M, p0=args.p0)
    t = load_scheme(args.kind).design(ch, spec)
    for note in t.notes:
        print(f"note: {note}")
    write_transceiver(args.out, t)
    print(f"{args.kind}: predicted MSE {t.predicted_mse:.6g}, power {t.power:.6g}, q_active {t.q_active}")
    return 0


def _cmd_simulate(args, runtime: dict) -> int:
    if bool(args.config) == bool(args.preset):
        raise InvalidInput("give exactly one of --config or --preset")
    cfg = load_sim_config(args.config) if args.config else scenario_preset(args.preset)
    cfg = cfg.with_overrides(
        channels_per_point=args.channels,
        blocks_per_channel=args.blocks,
        master_seed=args.seed,
    )
    workers = args.workers if args.workers is not None else int(runtime.get("workers", 1))
    report = run_sweep(cfg, workers=max(1, workers))
    report.write_csv(args.out)
    if report.skipped:
        print(f"{len(report.skipped)} cells skipped")
    return 0


def _cmd_analyze(args) -> int:
    ch = _load_channel(args.channel, args.rvv)
    spec = DesignSpec(M=args.M, p0=args.p0)
    coeffs = BerCoeffs.from_bits(args.b)
    _, gram = whitened_gram(ch)
    lam = hermitian_eig(gram).values

    print("Closed-form optimal MSE")
    for kind in ClosedFormKind:
        try:
            value = f"{closed_form_mse(kind, lam[:spec.M], spec):.6g}"
        except BlockDfeError as e:
            value = f"n/a ({type(e).__name__})"
        print(f"  {kind.value:<18} {value}")

    print()
    print(f"{'scheme':<20} {'mse':>12} {'geo_mse':>12} {'min_sinr_db':>12} {'gmi_bits':>10} {'ber_bound':>12}")
    for name in SCHEME_REGISTRY:
        scheme = load_scheme(name)
        try:
            t = scheme.design(ch, spec)
            kind = DetectorKind(scheme.detector_kind)
            rep = mse_report(error_covariance(ch, t), kind)
            bound = ber_lower_bound(
                rep.arithmetic_mse * spec.M, spec.M, coeffs, kind, per_symbol_snr=True
            )
            min_sinr = 10.0 * np.log10(max(float(np.min(rep.per_element_sinr)), 1e-300))
            flag = "" if bound.convex_regime else "*"
            print(
                f"{name:<20} {rep.arithmetic_mse:>12.6g} {rep.geometric_mse:>12.6g} "
                f"{min_sinr:>12.4f} {gmi(ch, t.F):>10.5g} {bound.value:>11.4e}{flag}"
            )
        except BlockDfeError as e:
            print(f"{name:<20} skipped: {type(e).__name__}: {e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="blockdfe", description=__doc__.splitlines()[0])
    parser.add_argument("--log-level", default=None, help="Override the configured log level")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    design = sub.add_parser("design", help="Design a transceiver for a channel file")
    design.add_argument("--channel", required=True, help="Channel matrix file")
    design.add_argument("--rvv", default="1.0", help="Noise covariance file or white noise variance")
    design.add_argument("--M", type=int, required=True, help="Symbols per block")
    design.add_argument("--p0", type=float, required=True, help="Total block power")
    design.add_argument("--kind", required=True, choices=list(SCHEME_REGISTRY), help="Scheme to design")
    design.add_argument("--out", required=True, help="Transceiver output file")

    simulate = sub.add_parser("simulate", help="Run a Monte Carlo BER sweep")
    simulate.add_argument("--config", help="YAML sweep configuration")
    simulate.add_argument("--preset", choices=sorted(PRESETS), help="Named preset")
    simulate.add_argument("--channels", type=int, help="Channel realizations per SNR point")
    simulate.add_argument("--blocks", type=int, help="Blocks per channel realization")
    simulate.add_argument("--seed", type=int, help="Master seed")
    simulate.add_argument("--workers", type=int, help="Worker processes")
    simulate.add_argument("--out", required=True, help="CSV output file")

    analyze = sub.add_parser("analyze", help="Print closed-form predictions for a channel")
    analyze.add_argument("--channel", required=True, help="Channel matrix file")
    analyze.add_argument("--rvv", default="1.0", help="Noise covariance file or white noise variance")
    analyze.add_argument("--M", type=int, required=True, help="Symbols per block")
    analyze.add_argument("--p0", type=float, required=True, help="Total block power")
    analyze.add_argument("--b", type=int, default=1, help="Bits per QAM axis")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = load_config()
    runtime = config.get("runtime_settings", {})
    configure_logging(args.log_level or runtime.get("log_level", "INFO"))

    try:
        if args.command == "design":
            return _cmd_design(args)
        if args.command == "simulate":
            return _cmd_simulate(args, runtime)
        return _cmd_analyze(args)
    except BlockDfeError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
