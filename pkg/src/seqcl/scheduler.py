"""Root-function pacing schedule for self-paced training.

The schedule starts at a fraction ``lambda0`` of the corpus and grows it so
that the fraction reaches 1 exactly at epoch ``e_grow``.  The square of the
pre-clamp fraction is affine in the epoch index, which gives new samples the
most room early and tapers admissions as training proceeds.
"""

import math
from dataclasses import dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class ScheduleConfig:
    lambda0: float = 0.3
    e_grow: int = 10

    def __post_init__(self):
        if not (0.0 < self.lambda0 <= 1.0):
            raise ConfigError(f"lambda0 must be in (0, 1], got {self.lambda0}")
        if self.e_grow < 1:
            raise ConfigError(f"e_grow must be >= 1, got {self.e_grow}")


def lambda_sq(cfg: ScheduleConfig, epoch: int) -> float:
    """Pre-clamp square of the pacing fraction; affine in ``epoch``."""
    return (1.0 - cfg.lambda0 ** 2) / cfg.e_grow * epoch + cfg.lambda0 ** 2


def lambda_at(cfg: ScheduleConfig, epoch: int) -> float:
    """Fraction of the corpus admitted at ``epoch``, clamped to 1."""
    if epoch < 0:
        raise ValueError(f"epoch must be >= 0, got {epoch}")
    return min(1.0, math.sqrt(lambda_sq(cfg, epoch)))


def target_size(cfg: ScheduleConfig, epoch: int, corpus_size: int) -> int:
    """Number of samples admitted at ``epoch`` out of ``corpus_size``.

    Floor rounding never admits a sample early; the result is guarded to
    stay in [1, corpus_size], and is exactly ``corpus_size`` for every
    epoch >= ``e_grow`` (the clamp must not be lost to sqrt rounding).
    """
    if corpus_size < 1:
        raise ValueError(f"corpus_size must be >= 1, got {corpus_size}")
    if epoch >= cfg.e_grow:
        return corpus_size
    size = math.floor(lambda_at(cfg, epoch) * corpus_size)
    return max(1, min(corpus_size, size))
