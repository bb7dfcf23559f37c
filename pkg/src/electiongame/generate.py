"""Seeded random instances.

All randomness comes from ``numpy.random.default_rng(seed)`` (PCG64), so an
instance is reproducible from its :class:`GeneratorConfig` on any platform
running the same NumPy bit generator.

Modes
-----
``none``
    every utility uniform in [0, cross_max).
``egoistic``
    rival utilities uniform in [0, cross_max), own utilities uniform in
    (cross_max, cross_max + own_spread].
``strongly-egoistic``
    rival utilities as above; party i's own utilities uniform in
    (S_i, S_i + own_spread], where S_i sums, over the other parties, the
    largest rival utility they offer party i.

Candidates are then sorted per party and the whole instance is scaled so
its largest social utility equals beta (scaling preserves every egoism
inequality).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import InfeasibleConfig
from .model import GameInstance, is_egoistic, is_strongly_egoistic, validate

MODES = ("none", "egoistic", "strongly-egoistic")


@dataclass(frozen=True)
class GeneratorConfig:
    m: int
    n: int | tuple[int, ...] = 2
    beta: float = 100.0
    mode: str = "egoistic"
    seed: int = 0
    cross_max: float = 1.0
    own_spread: float = 0.25

    def sizes(self) -> tuple[int, ...]:
        if isinstance(self.n, int):
            return (self.n,) * self.m
        return tuple(self.n)


def _open_closed(rng, low, high, size):
    # uniform on (low, high]
    return high - (high - low) * rng.random(size)


def generate(cfg: GeneratorConfig) -> GameInstance:
    if cfg.mode not in MODES:
        raise InfeasibleConfig(f"unknown mode {cfg.mode!r}; expected one of {MODES}")
    sizes = cfg.sizes()
    if cfg.m < 2 or len(sizes) != cfg.m or min(sizes) < 1:
        raise InfeasibleConfig(f"need m >= 2 parties with >= 1 candidate each, got {cfg}")
    if not cfg.beta >= 1 or not cfg.cross_max > 0 or not cfg.own_spread > 0:
        raise InfeasibleConfig("beta must be >= 1, cross_max and own_spread positive")

    rng = np.random.default_rng(cfg.seed)
    m, c = cfg.m, cfg.cross_max
    blocks = [rng.random((n_i, m)) * c for n_i in sizes]
    if cfg.mode == "egoistic":
        for i, blk in enumerate(blocks):
            blk[:, i] = _open_closed(rng, c, c + cfg.own_spread, len(blk))
    elif cfg.mode == "strongly-egoistic":
        for i, blk in enumerate(blocks):
            rival = sum(blocks[j][:, i].max() for j in range(m) if j != i)
            blk[:, i] = _open_closed(rng, rival, rival + cfg.own_spread, len(blk))

    for i, blk in enumerate(blocks):
        blocks[i] = blk[np.argsort(-blk[:, i], kind="stable")]
    top = max(blk.sum(axis=1).max() for blk in blocks)
    if not top > 0:
        raise InfeasibleConfig("all utilities are zero")
    scale = cfg.beta / top
    parties = [[[float(x) * scale for x in row] for row in blk] for blk in blocks]
    g = validate({"beta": cfg.beta,
                  "parties": [{"candidates": [{"utilities": r} for r in p]} for p in parties],
                  "metadata": {"source": "generator", **asdict(cfg)}})

    if cfg.mode == "egoistic" and not is_egoistic(g):
        raise InfeasibleConfig(f"scaled instance lost egoism: {is_egoistic(g).witness}")
    if cfg.mode == "strongly-egoistic" and not is_strongly_egoistic(g):
        raise InfeasibleConfig(
            f"scaled instance lost strong egoism: {is_strongly_egoistic(g).witness}")
    return g


def ensemble(count: int, seed: int, m_range: Sequence[int] = (2, 4),
             n_range: Sequence[int] = (2, 3), mode: str = "egoistic",
             beta: float = 100.0) -> Iterator[tuple[GeneratorConfig, GameInstance]]:
    """``count`` instances with m and each n_i drawn uniformly from the inclusive ranges.

    Every yielded config regenerates its instance on its own.
    """
    master = np.random.default_rng(seed)
    seeds = np.random.SeedSequence(seed).generate_state(count, dtype=np.uint64)
    for k in range(count):
        m = int(master.integers(m_range[0], m_range[1] + 1))
        n = tuple(int(x) for x in master.integers(n_range[0], n_range[1] + 1, size=m))
        cfg = GeneratorConfig(m=m, n=n, beta=beta, mode=mode, seed=int(seeds[k]))
        yield cfg, generate(cfg)
