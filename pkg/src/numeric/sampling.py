"""
Monte Carlo integration over gauge shells
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.config import Config
from src.errors import DegenerateShell, ValidationError
from src.numeric.gauge import dilate_points, gauge_eval

# integrand(points, radii) -> values
Integrand = Callable[[np.ndarray, np.ndarray], np.ndarray]

SHELL_STREAM = 0
BALL_STREAM = 1


@dataclass(frozen=True)
class ShellEstimate:
    estimate: float
    stderr: float
    samples: int
    accepted: int

    @property
    def acceptance(self) -> float:
        return self.accepted / self.samples


@dataclass(frozen=True)
class _BlockSums:
    draws: int
    accepted: int
    total: float
    total_sq: float


def block_generator(seed: int, block: int, stream: int = 0) -> np.random.Generator:
    """Counter-based stream for one block, keyed by (seed, stream, block)"""
    return np.random.Generator(np.random.Philox(key=np.array([seed, (stream << 32) | block], dtype=np.uint64)))


def sample_shell(g: StratifiedLieAlgebra, R1: float, R2: float, size: int, seed: int, block: int
                 ) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    Directions by rejection from [-1, 1]^n into the unit gauge ball,
    projected to the unit sphere; radii log-uniform on [R1, R2].

    Returns (points, radii, number of accepted box draws).
    """
    rng = block_generator(seed, block, SHELL_STREAM)
    box = rng.uniform(-1.0, 1.0, size=(size, g.n))
    r = gauge_eval(g, box)
    inside = (r <= 1.0) & (r > 0.0)
    directions = dilate_points(g, 1.0 / r[inside], box[inside])
    radii = np.exp(rng.uniform(math.log(R1), math.log(R2), size=directions.shape[0]))
    return dilate_points(g, radii, directions), radii, int(inside.sum())


def sample_ball(g: StratifiedLieAlgebra, R: float, size: int, seed: int, block: int
                ) -> Tuple[np.ndarray, np.ndarray, int]:
    """Haar-uniform points of B(R): box draws kept in the unit ball, dilated by R"""
    rng = block_generator(seed, block, BALL_STREAM)
    box = rng.uniform(-1.0, 1.0, size=(size, g.n))
    r = gauge_eval(g, box)
    inside = r <= 1.0
    return dilate_points(g, np.full(int(inside.sum()), R), box[inside]), R * r[inside], int(inside.sum())


def _resolve(samples, seed, block_size, workers) -> Tuple[int, int, int, int]:
    samples = Config.SAMPLES if samples is None else samples
    seed = Config.SEED if seed is None else seed
    block_size = Config.BLOCK_SIZE if block_size is None else block_size
    workers = Config.WORKERS if workers is None else workers
    if samples < Config.MIN_SAMPLES:
        raise ValidationError(f"Invalid sample count: {samples}. Must be at least {Config.MIN_SAMPLES}")
    return samples, seed, block_size, workers


def _run_blocks(samples: int, block_size: int, workers: int,
                run_block: Callable[[int, int], _BlockSums]) -> List[_BlockSums]:
    """run_block(block, size) over fixed-size blocks, returned in block order"""
    sizes = [block_size] * (samples // block_size)
    if samples % block_size:
        sizes.append(samples % block_size)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        return list(pool.map(lambda block: run_block(block, sizes[block]), range(len(sizes))))


def shell_integral(g: StratifiedLieAlgebra, integrand: Integrand, R1: float, R2: float,
                   samples: Optional[int] = None, seed: Optional[int] = None,
                   block_size: Optional[int] = None, workers: Optional[int] = None) -> ShellEstimate:
    """
    Haar integral of `integrand` over R1 <= r <= R2.

    With dx = r^(Q-1) dr dsigma, the estimate is
    Q 2^n acceptance log(R2/R1) mean(f r^Q). Blocks are summed in block
    order, so the result does not depend on the worker count.
    """
    if not (R1 > 0 and R2 > R1):
        raise DegenerateShell(f"Shell needs 0 < R1 < R2, got R1={R1}, R2={R2}")
    samples, seed, block_size, workers = _resolve(samples, seed, block_size, workers)

    def run_block(block: int, size: int) -> _BlockSums:
        points, radii, accepted = sample_shell(g, R1, R2, size, seed, block)
        values = np.asarray(integrand(points, radii), dtype=float) * radii ** g.Q
        return _BlockSums(size, accepted, math.fsum(values), math.fsum(values * values))

    blocks = _run_blocks(samples, block_size, workers, run_block)

    accepted = sum(b.accepted for b in blocks)
    if accepted < 2:
        raise DegenerateShell(f"Only {accepted} of {samples} draws landed in the unit gauge ball")
    mean = math.fsum(b.total for b in blocks) / accepted
    second = math.fsum(b.total_sq for b in blocks) / accepted
    variance = max(second - mean * mean, 0.0) * accepted / (accepted - 1)
    acceptance = accepted / samples

    scale = g.Q * 2.0 ** g.n * math.log(R2 / R1)
    se_mean = math.sqrt(variance / accepted)
    se_acceptance = math.sqrt(acceptance * (1.0 - acceptance) / samples)
    stderr = math.hypot(scale * acceptance * se_mean, scale * mean * se_acceptance)
    return ShellEstimate(scale * acceptance * mean, stderr, samples, accepted)


def ball_integral(g: StratifiedLieAlgebra, integrand: Integrand, R: float,
                  samples: Optional[int] = None, seed: Optional[int] = None,
                  block_size: Optional[int] = None, workers: Optional[int] = None) -> ShellEstimate:
    """
    Haar integral of `integrand` over the gauge ball r <= R.

    Draws outside the unit ball count as zeros, so the estimate is
    2^n R^Q mean(f 1_B) over every draw.
    """
    if not R > 0:
        raise DegenerateShell(f"Ball needs R > 0, got R={R}")
    samples, seed, block_size, workers = _resolve(samples, seed, block_size, workers)

    def run_block(block: int, size: int) -> _BlockSums:
        points, radii, accepted = sample_ball(g, R, size, seed, block)
        values = np.asarray(integrand(points, radii), dtype=float)
        return _BlockSums(size, accepted, math.fsum(values), math.fsum(values * values))

    blocks = _run_blocks(samples, block_size, workers, run_block)

    mean = math.fsum(b.total for b in blocks) / samples
    second = math.fsum(b.total_sq for b in blocks) / samples
    variance = max(second - mean * mean, 0.0) * samples / (samples - 1)
    volume = 2.0 ** g.n * R ** g.Q
    return ShellEstimate(volume * mean, volume * math.sqrt(variance / samples), samples,
                         sum(b.accepted for b in blocks))
