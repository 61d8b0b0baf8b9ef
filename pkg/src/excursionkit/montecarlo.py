"""Monte Carlo sampling of excursions under the return-conditioned law.

Sampling always runs the walk under the Doob-transformed law, which makes
the return to 0 almost sure and realises the law of the excursion
conditioned to be finite; rejection against the raw walk would not
terminate on transient laws.

Randomness is counter-based: sample i of a run keyed by ``seed`` has its
own SplitMix64 stream, so a run is reproducible bit for bit for any worker
count and workers merge order-independently.  A hard cap on the number of
steps marks the rare unfinished paths as a separate counted category
rather than dropping them.

The batch engine keeps per-sample summaries (length, height, uniqueness of
the maximum, a short jump prefix) in numpy arrays; with numba installed
the inner loop is jit-compiled, otherwise a pure-Python twin with the
same bit-exact output runs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Excursion, from_jumps, level_numbers
from .probability import JumpLaw, doob_law
from .vervaat import in_domain, vervaat

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

__all__ = [
    "CapExceeded",
    "SampleReport",
    "SampleBatch",
    "Event",
    "sample_excursion",
    "sample_stream",
    "summarize",
    "estimate",
    "estimate_from_batch",
    "empirical_short_law",
    "level_process_histogram",
    "height_at_least",
    "unique_max_height",
    "is_positive_event",
    "always",
    "equals_excursion",
    "DEFAULT_THETA_MAX",
    "PREFIX_LEN",
]

DEFAULT_THETA_MAX = 10**6
PREFIX_LEN = 12

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_INV_2_53 = 1.0 / 9007199254740992.0


def _mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1F05FFC4 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


def _sample_key(seed: int, index: int) -> int:
    base = _mix64((seed & _MASK) ^ _GOLDEN)
    return _mix64((base + (index + 1) * _GOLDEN) & _MASK)


def _clipped_up_probs(law: JumpLaw) -> tuple[np.ndarray, int]:
    """Up probabilities of the conditioned walk, indexed by clipped state."""
    conditioned = doob_law(law).to_float()
    reach = conditioned.k_max + 1
    table = np.array(
        [conditioned.p(k) for k in range(-reach, reach + 1)], dtype=np.float64
    )
    return table, reach


def _walk_kernel(tp, reach, keys, theta_max, prefix, theta, height, unique, capped):
    """Simulate one excursion per key; fills the per-sample output arrays.

    Pure-Python reference; a numba-compiled twin with identical arithmetic
    replaces it when available.
    """
    n = keys.shape[0]
    plen = prefix.shape[1]
    for i in range(n):
        state = np.uint64(keys[i])
        pos = 0
        steps = 0
        maxv = 0
        max_hits = 1
        minv = 0
        min_hits = 1
        while True:
            state = np.uint64(state + np.uint64(_GOLDEN))
            z = np.uint64(state)
            z = np.uint64(
                np.uint64(z ^ np.uint64(z >> np.uint64(30)))
                * np.uint64(0xBF58476D1F05FFC4)
            )
            z = np.uint64(
                np.uint64(z ^ np.uint64(z >> np.uint64(27)))
                * np.uint64(0x94D049BB133111EB)
            )
            z = np.uint64(z ^ np.uint64(z >> np.uint64(31)))
            u = float(np.uint64(z >> np.uint64(11))) * _INV_2_53
            idx = pos
            if idx > reach:
                idx = reach
            elif idx < -reach:
                idx = -reach
            jump = 1 if u < tp[idx + reach] else -1
            if steps < plen:
                prefix[i, steps] = jump
            pos += jump
            steps += 1
            if pos > maxv:
                maxv = pos
                max_hits = 1
            elif pos == maxv:
                max_hits += 1
            if pos < minv:
                minv = pos
                min_hits = 1
            elif pos == minv:
                min_hits += 1
            if pos == 0:
                break
            if steps >= theta_max:
                capped[i] = True
                break
        theta[i] = steps
        if prefix[i, 0] > 0:
            height[i] = maxv
            unique[i] = max_hits == 1
        else:
            height[i] = minv
            unique[i] = min_hits == 1


if _HAVE_NUMBA:
    _walk_kernel_jit = numba.njit(cache=False, nogil=True)(_walk_kernel)
else:  # pragma: no cover
    _walk_kernel_jit = _walk_kernel


@dataclass(frozen=True)
class CapExceeded:
    """Outcome of a sample that hit the step cap before returning to 0."""

    theta_max: int


@dataclass(frozen=True)
class SampleBatch:
    """Per-sample summaries of one reproducible run.

    ``theta`` is the full excursion length (the cap value for capped
    samples), ``height`` the signed height reached, ``unique`` whether the
    height was attained once, and ``prefix`` the first jumps (enough to
    reconstruct every excursion of length <= PREFIX_LEN).
    """

    law: JumpLaw
    seed: int
    workers: int
    theta_max: int
    theta: np.ndarray
    height: np.ndarray
    unique: np.ndarray
    capped: np.ndarray
    prefix: np.ndarray

    @property
    def n(self) -> int:
        return self.theta.shape[0]

    @property
    def sign(self) -> np.ndarray:
        return self.prefix[:, 0].astype(np.int64)

    @property
    def finished(self) -> np.ndarray:
        return ~self.capped


def _worker_slices(n: int, workers: int) -> list[tuple[int, int]]:
    if workers < 1:
        raise ValueError("workers must be >= 1")
    base, extra = divmod(n, workers)
    slices = []
    start = 0
    for w in range(workers):
        count = base + (1 if w < extra else 0)
        slices.append((start, start + count))
        start += count
    return slices


def summarize(
    law: JumpLaw,
    n: int,
    seed: int = 0,
    workers: int = 1,
    theta_max: int = DEFAULT_THETA_MAX,
    _force_python: bool = False,
) -> SampleBatch:
    """Draw ``n`` conditioned excursions and return their summary arrays.

    The output depends only on ``(seed, n)``; the worker count changes how
    the index range is chunked across threads, never the result.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    tp, reach = _clipped_up_probs(law)
    keys = np.array([_sample_key(seed, i) for i in range(n)], dtype=np.uint64)
    theta = np.zeros(n, dtype=np.int64)
    height = np.zeros(n, dtype=np.int32)
    unique = np.zeros(n, dtype=np.bool_)
    capped = np.zeros(n, dtype=np.bool_)
    prefix = np.zeros((n, PREFIX_LEN), dtype=np.int8)
    kernel = _walk_kernel if _force_python else _walk_kernel_jit

    def run(bounds):
        lo, hi = bounds
        if lo < hi:
            # the python twin of the kernel wraps uint64 like compiled code
            with np.errstate(over="ignore"):
                kernel(
                    tp, reach, keys[lo:hi], theta_max,
                    prefix[lo:hi], theta[lo:hi], height[lo:hi],
                    unique[lo:hi], capped[lo:hi],
                )

    slices = _worker_slices(n, workers)
    if workers == 1:
        run(slices[0])
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, slices))
    return SampleBatch(law, seed, workers, theta_max, theta, height, unique, capped, prefix)


def sample_excursion(
    law: JumpLaw,
    seed: int,
    index: int = 0,
    theta_max: int = DEFAULT_THETA_MAX,
) -> Excursion | CapExceeded:
    """Draw the full excursion of sample ``index`` of the run ``seed``.

    Replay-identical with the batch engine sample by sample.  Returns a
    :class:`CapExceeded` if the walk has not returned within ``theta_max``
    steps.
    """
    tp, reach = _clipped_up_probs(law)
    state = _sample_key(seed, index)
    jumps = []
    pos = 0
    while True:
        state = (state + _GOLDEN) & _MASK
        u = (_mix64(state) >> 11) * _INV_2_53
        idx = min(max(pos, -reach), reach)
        jump = 1 if u < tp[idx + reach] else -1
        jumps.append(jump)
        pos += jump
        if pos == 0:
            return from_jumps(jumps)
        if len(jumps) >= theta_max:
            return CapExceeded(theta_max)


def sample_stream(
    law: JumpLaw,
    n: int,
    seed: int = 0,
    theta_max: int = DEFAULT_THETA_MAX,
):
    """Iterate the run's samples as full excursions (or CapExceeded)."""
    for i in range(n):
        yield sample_excursion(law, seed, i, theta_max)


@dataclass(frozen=True)
class SampleReport:
    """Estimate of one event probability with its sampling error.

    ``stderr`` is sqrt(p(1-p)/n); ``z`` compares against ``exact`` when a
    reference value is supplied.  ``capped`` counts samples excluded for
    hitting the step cap.
    """

    event: str
    n: int
    estimate: float
    stderr: float
    exact: float | None
    z: float | None
    capped: int

    def to_dict(self) -> dict:
        return {
            "event": self.event,
            "n": self.n,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "exact": self.exact,
            "z": self.z,
            "capped": self.capped,
        }


@dataclass(frozen=True)
class Event:
    """An excursion event with a fast array evaluator.

    ``batch_eval`` maps a :class:`SampleBatch` to a boolean row mask;
    ``condition_eval``, when given, restricts the estimate to the samples
    it selects (the reported probability is conditional on it).
    ``predicate`` is the same event on a single excursion, used by the
    slow per-sample path and by tests.
    """

    description: str
    predicate: Callable[[Excursion], bool]
    batch_eval: Callable[[SampleBatch], np.ndarray]
    condition_eval: Callable[[SampleBatch], np.ndarray] | None = None
    condition_predicate: Callable[[Excursion], bool] | None = None


def height_at_least(s: int) -> Event:
    """{height >= s} for positive excursions, conditional on being positive."""
    return Event(
        description=f"H>= {s} | positive",
        predicate=lambda x: x.is_positive and x.height >= s,
        batch_eval=lambda b: (b.sign > 0) & (b.height >= s),
        condition_eval=lambda b: b.sign > 0,
        condition_predicate=lambda x: x.is_positive,
    )


def unique_max_height(s: int) -> Event:
    """{height exactly s, attained once} conditional on being positive."""
    return Event(
        description=f"unique max, H = {s} | positive",
        predicate=lambda x: x.is_positive and x.height == s and in_domain(x) is not None,
        batch_eval=lambda b: (b.sign > 0) & (b.height == s) & b.unique,
        condition_eval=lambda b: b.sign > 0,
        condition_predicate=lambda x: x.is_positive,
    )


def is_positive_event() -> Event:
    return Event(
        description="positive excursion",
        predicate=lambda x: x.is_positive,
        batch_eval=lambda b: b.sign > 0,
    )


def always() -> Event:
    return Event(
        description="always",
        predicate=lambda x: True,
        batch_eval=lambda b: np.ones(b.n, dtype=bool),
    )


def equals_excursion(x0: Excursion) -> Event:
    if x0.theta > PREFIX_LEN:
        raise ValueError(f"batch matching needs theta <= {PREFIX_LEN}")
    target = np.array(x0.jumps, dtype=np.int8)

    def match(b: SampleBatch) -> np.ndarray:
        hit = b.theta == x0.theta
        hit &= (b.prefix[:, : x0.theta] == target).all(axis=1)
        return hit

    return Event(
        description=f"excursion = {x0.value_string()}",
        predicate=lambda x: x == x0,
        batch_eval=match,
    )


def estimate_from_batch(batch: SampleBatch, event: Event, exact=None) -> SampleReport:
    """Evaluate an event on an existing batch; capped samples are excluded."""
    ok = batch.finished
    cond = ok if event.condition_eval is None else ok & event.condition_eval(batch)
    n_eff = int(cond.sum())
    hits = int((event.batch_eval(batch) & cond).sum())
    return _make_report(
        event.description, n_eff, hits, int(batch.capped.sum()), exact
    )


def _make_report(description, n_eff, hits, capped, exact) -> SampleReport:
    p_hat = hits / n_eff if n_eff else math.nan
    stderr = math.sqrt(p_hat * (1 - p_hat) / n_eff) if n_eff else math.nan
    z = None
    if exact is not None:
        exact = float(exact)
        if stderr > 0:
            z = (p_hat - exact) / stderr
        else:
            z = 0.0 if p_hat == exact else math.inf
    return SampleReport(description, n_eff, p_hat, stderr, exact, z, capped)


def estimate(
    law: JumpLaw,
    event: Event | Callable[[Excursion], bool],
    n: int,
    seed: int = 0,
    workers: int = 1,
    theta_max: int = DEFAULT_THETA_MAX,
    exact=None,
) -> SampleReport:
    """Estimate P(event) from ``n`` fresh conditioned samples.

    :class:`Event` instances run on the vectorised batch engine and are
    fine at n = 10^6; a bare callable is applied to fully materialised
    excursions sample by sample, which is flexible but slow, so keep n
    moderate there.
    """
    if isinstance(event, Event):
        batch = summarize(law, n, seed, workers, theta_max)
        return estimate_from_batch(batch, event, exact)
    capped = 0
    hits = 0
    n_eff = 0
    for sample in sample_stream(law, n, seed, theta_max):
        if isinstance(sample, CapExceeded):
            capped += 1
            continue
        n_eff += 1
        if event(sample):
            hits += 1
    return _make_report(getattr(event, "__name__", "event"), n_eff, hits, capped, exact)


def empirical_short_law(batch: SampleBatch, theta_cap: int = PREFIX_LEN) -> dict:
    """Empirical distribution over excursions of length <= theta_cap.

    Keys are Excursion objects plus ``None`` for the overflow bucket (all
    longer finished samples); values sum to 1 over the finished samples.
    """
    if theta_cap > PREFIX_LEN:
        raise ValueError(f"theta_cap must be <= {PREFIX_LEN}")
    ok = batch.finished
    total = int(ok.sum())
    out: dict = {}
    for t in range(2, theta_cap + 1, 2):
        rows = np.flatnonzero(ok & (batch.theta == t))
        if rows.size == 0:
            continue
        bits = ((batch.prefix[rows, :t] > 0).astype(np.int64) << np.arange(t)).sum(axis=1)
        values, counts = np.unique(bits, return_counts=True)
        for b, c in zip(values, counts):
            jumps = tuple(1 if (int(b) >> j) & 1 else -1 for j in range(t))
            out[Excursion(jumps)] = c / total
    out[None] = int((ok & (batch.theta > theta_cap)).sum()) / total
    return out


def level_process_histogram(
    law: JumpLaw,
    n: int,
    condition: str = "all",
    seed: int = 0,
    theta_max: int = DEFAULT_THETA_MAX,
    max_level: int = 16,
) -> dict:
    """Empirical distributions of the per-level individual counts.

    ``condition`` selects the sample set: ``"all"`` finished samples,
    ``"unique-max"`` those attaining their height once, or
    ``"vervaat-of-unique-max"`` for the rotated images of the latter (their
    levels are indexed by depth from their own origin, which reverses the
    original level order sample by sample).

    Returns ``{"n_used": ..., "capped": ..., "levels": {h: {count: freq}}}``
    with frequencies per used sample; levels are indexed by |h| up to
    ``max_level``.
    """
    if condition not in ("all", "unique-max", "vervaat-of-unique-max"):
        raise ValueError(f"unknown condition {condition!r}")
    levels: dict[int, dict[int, int]] = {h: {} for h in range(max_level + 1)}
    used = 0
    capped = 0
    for sample in sample_stream(law, n, seed, theta_max):
        if isinstance(sample, CapExceeded):
            capped += 1
            continue
        if condition != "all":
            if in_domain(sample) is None:
                continue
            if condition == "vervaat-of-unique-max":
                sample = vervaat(sample)
        used += 1
        counts = level_numbers(sample).counts
        for h in range(max_level + 1):
            value = counts[h] if h < len(counts) else 0
            bucket = levels[h]
            bucket[value] = bucket.get(value, 0) + 1
    freq = {
        h: {value: c / used for value, c in bucket.items()}
        for h, bucket in levels.items()
        if used
    }
    return {"n_used": used, "capped": capped, "levels": freq}
