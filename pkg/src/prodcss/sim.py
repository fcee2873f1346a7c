"""Noise channels and the seeded Monte Carlo engine for logical error
rates.

Every trial draws its randomness from a counter-based Philox stream keyed
by (seed, trial index), so results are bit-for-bit reproducible at any
parallelism level and any single trial can be replayed in isolation.
"""

from __future__ import annotations

import concurrent.futures
import math
from dataclasses import dataclass

import numpy as np

from .css import CssCode, PauliVector, is_logical_failure, syndromes
from .decode import BpConfig, BpDecoder, TannerGraph, decode_erasure
from .meta import ExtendedSyndrome, MetaCheck

DECODERS = ("erasure-ml", "bp", "bp-extended")


@dataclass(frozen=True)
class ChannelSpec:
    """One of erasure(beta), depolarizing(epsilon) or
    depolarizing_readout(epsilon, p)."""

    kind: str
    beta: float = 0.0
    epsilon: float = 0.0
    p: float = 0.0

    def __post_init__(self):
        if self.kind not in ("erasure", "depolarizing", "depolarizing_readout"):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must lie in [0, 1]")
        if not 0.0 <= self.epsilon <= 0.75:
            raise ValueError("epsilon must lie in [0, 3/4]")
        if not 0.0 <= self.p <= 0.5:
            raise ValueError("p must lie in [0, 1/2]")

    @property
    def param1(self) -> float:
        return self.beta if self.kind == "erasure" else self.epsilon

    @property
    def param2(self) -> float:
        return self.p


def erasure(beta: float) -> ChannelSpec:
    return ChannelSpec(kind="erasure", beta=beta)


def depolarizing(epsilon: float) -> ChannelSpec:
    return ChannelSpec(kind="depolarizing", epsilon=epsilon)


def depolarizing_readout(epsilon: float, p: float) -> ChannelSpec:
    return ChannelSpec(kind="depolarizing_readout", epsilon=epsilon, p=p)


@dataclass
class TrialOutcome:
    failed: bool
    converged: bool
    residual_weight: int


@dataclass
class SimPoint:
    """One Monte Carlo measurement with its binomial standard error."""

    channel: ChannelSpec
    decoder: str
    trials: int
    failures: int
    seed: int

    @property
    def rate(self) -> float:
        return self.failures / self.trials

    @property
    def stderr(self) -> float:
        r = self.rate
        return math.sqrt(r * (1.0 - r) / self.trials)


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """Independent per-trial stream from a counter-based split."""
    return np.random.Generator(
        np.random.Philox(key=seed, counter=trial_index << 128)
    )


def sample_error(
    channel: ChannelSpec,
    n: int,
    rng: np.random.Generator,
    mx: int = 0,
    mz: int = 0,
):
    """Draw one error from the channel.

    Returns (pauli, erased, e_s_x, e_s_z); erased is None except for the
    erasure channel, the read-out flip vectors are None unless the channel
    includes read-out errors.
    """
    if channel.kind == "erasure":
        erased_mask = rng.random(n) < channel.beta
        symbols = np.zeros(n, dtype=np.uint8)
        k = int(erased_mask.sum())
        if k:
            symbols[erased_mask] = rng.integers(0, 4, size=k, dtype=np.uint8)
        return PauliVector(symbols), np.nonzero(erased_mask)[0], None, None
    hit = rng.random(n) < channel.epsilon
    symbols = np.zeros(n, dtype=np.uint8)
    k = int(hit.sum())
    if k:
        symbols[hit] = rng.integers(1, 4, size=k, dtype=np.uint8)
    e = PauliVector(symbols)
    if channel.kind == "depolarizing":
        return e, None, None, None
    esx = (rng.random(mx) < channel.p).astype(np.uint8)
    esz = (rng.random(mz) < channel.p).astype(np.uint8)
    return e, None, esx, esz


class TrialRunner:
    """Per-process state for one simulation point: code, decoder, graph."""

    def __init__(
        self,
        code: CssCode,
        decoder: str,
        channel: ChannelSpec,
        cfg: BpConfig | None = None,
        metachecks: tuple[MetaCheck, MetaCheck] | None = None,
    ):
        if decoder not in DECODERS:
            raise ValueError(f"unknown decoder {decoder!r}")
        if decoder == "erasure-ml" and channel.kind != "erasure":
            raise ValueError("erasure-ml requires the erasure channel")
        if decoder == "bp" and channel.kind != "depolarizing":
            raise ValueError("bp requires the depolarizing channel")
        if decoder == "bp-extended" and channel.kind != "depolarizing_readout":
            raise ValueError("bp-extended requires read-out noise")
        self.code = code
        self.decoder = decoder
        self.channel = channel
        self.metachecks = metachecks
        self.bp: BpDecoder | None = None
        if decoder == "bp":
            cfg = cfg or BpConfig(epsilon=channel.epsilon)
            self.bp = BpDecoder(TannerGraph(code), cfg)
        elif decoder == "bp-extended":
            if metachecks is None:
                from .meta import metacheck_from_pcm

                metachecks = (
                    metacheck_from_pcm(code.hx),
                    metacheck_from_pcm(code.hz),
                )
                self.metachecks = metachecks
            cfg = cfg or BpConfig(epsilon=channel.epsilon, p_readout=channel.p)
            self.bp = BpDecoder(
                TannerGraph(code, metachecks[0], metachecks[1]), cfg
            )

    def run_trial(self, rng: np.random.Generator) -> TrialOutcome:
        code = self.code
        e, erased, esx, esz = sample_error(
            self.channel,
            code.n,
            rng,
            mx=code.hx.rows,
            mz=code.hz.rows,
        )
        sx, sz = syndromes(code, e)

        if self.decoder == "erasure-ml":
            est = decode_erasure(code, erased, sx, sz)
            if est is None:
                return TrialOutcome(failed=True, converged=False, residual_weight=-1)
            residual = e + est
            return self._classify(residual, converged=True)

        if self.decoder == "bp":
            res = self.bp.decode(np.concatenate([sx, sz]))
            residual = e + res.estimate
            if not res.converged:
                return TrialOutcome(
                    failed=True, converged=False, residual_weight=residual.weight
                )
            return self._classify(residual, converged=True)

        sp_x = sx ^ esx
        sp_z = sz ^ esz
        mx, mz = self.metachecks
        ext = np.concatenate(
            [sp_x, sp_z, mx.matrix.matvec(sp_x), mz.matrix.matvec(sp_z)]
        )
        res = self.bp.decode(ext)
        residual = e + res.estimate
        if not res.converged:
            return TrialOutcome(
                failed=True, converged=False, residual_weight=residual.weight
            )
        rx, rz = syndromes(code, residual)
        if rx.any() or rz.any():
            # Read-out estimate absorbed a wrong flip pattern.
            return TrialOutcome(
                failed=True, converged=True, residual_weight=residual.weight
            )
        return self._classify(residual, converged=True)

    def _classify(self, residual: PauliVector, converged: bool) -> TrialOutcome:
        failed = is_logical_failure(self.code, residual)
        return TrialOutcome(
            failed=failed, converged=converged, residual_weight=residual.weight
        )


def _run_range(
    code, decoder, channel, cfg, metachecks, seed, lo, hi
) -> int:
    runner = TrialRunner(code, decoder, channel, cfg, metachecks)
    failures = 0
    for t in range(lo, hi):
        if runner.run_trial(trial_rng(seed, t)).failed:
            failures += 1
    return failures


def run_point(
    code: CssCode,
    decoder: str,
    channel: ChannelSpec,
    trials: int,
    seed: int,
    cfg: BpConfig | None = None,
    metachecks: tuple[MetaCheck, MetaCheck] | None = None,
    jobs: int = 1,
) -> SimPoint:
    """Estimate the logical error rate at one channel setting.

    Per-trial randomness is a pure function of (seed, trial index), so the
    failure count is independent of ``jobs`` and of scheduling.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if jobs <= 1:
        failures = _run_range(code, decoder, channel, cfg, metachecks, seed, 0, trials)
    else:
        bounds = np.linspace(0, trials, jobs + 1, dtype=int)
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = [
                ex.submit(
                    _run_range,
                    code,
                    decoder,
                    channel,
                    cfg,
                    metachecks,
                    seed,
                    int(lo),
                    int(hi),
                )
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if hi > lo
            ]
            failures = sum(f.result() for f in futs)
    return SimPoint(
        channel=channel, decoder=decoder, trials=trials, failures=failures, seed=seed
    )


CSV_HEADER = "code,decoder,channel,param1,param2,trials,failures,rate,stderr,seed"


def format_csv_row(code_name: str, point: SimPoint) -> str:
    ch = point.channel
    return ",".join(
        [
            code_name,
            point.decoder,
            ch.kind,
            f"{ch.param1:.17g}",
            f"{ch.param2:.17g}",
            str(point.trials),
            str(point.failures),
            f"{point.rate:.17g}",
            f"{point.stderr:.17g}",
            str(point.seed),
        ]
    )


def write_csv(path, code_name: str, points: list[SimPoint]) -> None:
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for pt in points:
            fh.write(format_csv_row(code_name, pt) + "\n")
