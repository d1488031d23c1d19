"""
Replication engine for coverage studies.

Each replication r of a cell draws its sample from its own PCG64 stream,
seeded by SeedSequence(seed, spawn_key=(r,)). Streams depend only on the cell
seed and r, and outcomes are reduced in replication order, so a cell gives
the same summary whatever the number of worker processes.
"""

import logging
import math
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .bayes import DEFAULT_PRIOR, GammaPrior, bayes_estimate, credible_interval
from .errors import NoRootError, SimulationError, TruncExpError, ValidationError
from .intervals import IntervalMethod, ci_conditional, ci_unconditional
from .model import CensoredSample, estimate_lambda
from .utils.log import log_message
from .utils.progress import make_progress_pacer

DESIGN_N = (5, 10, 15, 20)
DESIGN_LAMBDA = (0.5, 1.0, 2.0)
DESIGN_T = (1.0, 2.0)
DESIGN_REPLICATIONS = 5000

SUMMARY_COLUMNS = (
    "method",
    "n",
    "lambda",
    "T",
    "bias",
    "mse",
    "avg_length",
    "coverage_pct",
    "effective_replications",
    "d_zero_count",
    "unsolved_count",
    "replications",
    "seed",
)

CellKey = Tuple[str, int, float, float]


class SimTaskState:
    RUNNING = "running"
    DONE = "done"
    FAILED = "failed"


@dataclass(frozen=True)
class SimConfig:
    method: str
    n: int
    lambda_true: float
    T: float
    alpha: float = 0.05
    replications: int = DESIGN_REPLICATIONS
    seed: int = 0
    prior: Optional[GammaPrior] = None

    def __post_init__(self):
        if self.method not in IntervalMethod.ALL:
            raise ValidationError(f"unknown method {self.method!r}")
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"n must be a positive integer, got {self.n!r}")
        if not (math.isfinite(self.lambda_true) and self.lambda_true > 0):
            raise ValidationError(f"lambda must be positive, got {self.lambda_true!r}")
        if not (math.isfinite(self.T) and self.T > 0):
            raise ValidationError(f"T must be positive, got {self.T!r}")
        if not 0.0 < self.alpha < 1.0:
            raise ValidationError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not isinstance(self.replications, int) or self.replications < 1:
            raise ValidationError(f"replications must be >= 1, got {self.replications!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if (self.prior is not None) != (self.method == IntervalMethod.BAYES):
            raise ValidationError("a prior is required for method 'bayes' and only for it")

    @property
    def key(self) -> CellKey:
        return (self.method, self.n, self.lambda_true, self.T)

    def describe(self) -> str:
        return f"{self.method} n={self.n} lambda={self.lambda_true} T={self.T}"

    @classmethod
    def from_dict(
        cls, cell: Dict[str, Any], seed: int, replications: int, alpha: float
    ) -> "SimConfig":
        """One entry of the `cells` list of a simulate config file."""
        try:
            method = str(cell["method"])
            prior = None
            if method == IntervalMethod.BAYES:
                prior = GammaPrior(
                    a=float(cell.get("prior_a", DEFAULT_PRIOR.a)),
                    b=float(cell.get("prior_b", DEFAULT_PRIOR.b)),
                )
            return cls(
                method=method,
                n=int(cell["n"]),
                lambda_true=float(cell["lambda"]),
                T=float(cell["T"]),
                alpha=alpha,
                replications=replications,
                seed=seed,
                prior=prior,
            )
        except KeyError as e:
            raise ValidationError(f"simulation cell {cell!r} is missing the field {e}")
        except (TypeError, ValueError) as e:
            if isinstance(e, TruncExpError):
                raise
            raise ValidationError(f"simulation cell {cell!r} is malformed: {e}")


@dataclass(frozen=True)
class SimSummary:
    method: str
    n: int
    lambda_true: float
    T: float
    bias: float
    mse: float
    avg_length: float
    coverage_pct: float
    effective_replications: int
    d_zero_count: int
    unsolved_count: int = 0
    replications: int = 0
    seed: int = 0

    @property
    def key(self) -> CellKey:
        return (self.method, self.n, self.lambda_true, self.T)

    def to_dict(self) -> Dict[str, Any]:
        row = {name: getattr(self, name) for name in SUMMARY_COLUMNS if name != "lambda"}
        row["lambda"] = self.lambda_true
        return {name: row[name] for name in SUMMARY_COLUMNS}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SimSummary":
        return cls(
            method=str(data["method"]),
            n=int(data["n"]),
            lambda_true=float(data["lambda"]),
            T=float(data["T"]),
            bias=float(data["bias"]),
            mse=float(data["mse"]),
            avg_length=float(data["avg_length"]),
            coverage_pct=float(data["coverage_pct"]),
            effective_replications=int(data["effective_replications"]),
            d_zero_count=int(data["d_zero_count"]),
            unsolved_count=int(data.get("unsolved_count", 0)),
            replications=int(data.get("replications", 0)),
            seed=int(data.get("seed", 0)),
        )


@dataclass(frozen=True)
class ReplicationOutcome:
    estimate: float
    d_zero: bool
    length: Optional[float] = None
    covered: bool = False
    discarded: bool = False
    unsolved: bool = False


@dataclass
class GridResult:
    summaries: List[SimSummary] = field(default_factory=list)
    errors: Dict[CellKey, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors


def replication_rng(seed: int, replication: int) -> np.random.Generator:
    """Independent PCG64 stream for one replication of a cell."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(replication,)))


def generate_sample(n: int, lam: float, T: float, rng: np.random.Generator) -> CensoredSample:
    """n exponential(lam) lifetimes by inverse CDF, -ln(U)/lam; those <= T are the failures."""
    u = 1.0 - rng.random(n)  # U in (0, 1]
    lifetimes = -np.log(u) / lam
    # U = 1 exactly would put a failure at time 0
    lifetimes = np.maximum(lifetimes, np.finfo(float).tiny)
    failures = np.sort(lifetimes[lifetimes <= T])
    return CensoredSample(n=n, T=T, failures=tuple(failures.tolist()))


def simulate_estimates(
    n: int, lam: float, T: float, size: int, seed: Optional[int] = None
) -> np.ndarray:
    """`size` independent draws of lambda_hat = D / S (0 when D = 0), vectorized."""
    rng = np.random.default_rng(seed)
    lifetimes = -np.log(1.0 - rng.random((size, n))) / lam
    failed = lifetimes <= T
    D = failed.sum(axis=1)
    S = np.where(failed, lifetimes, T).sum(axis=1)
    return D / S


def _replicate(config: SimConfig, replication: int) -> ReplicationOutcome:
    sample = generate_sample(
        config.n, config.lambda_true, config.T, replication_rng(config.seed, replication)
    )
    d_zero = sample.D == 0

    if config.method == IntervalMethod.BAYES:
        prior = config.prior or DEFAULT_PRIOR
        interval = credible_interval(sample, prior, config.alpha)
        estimate = bayes_estimate(sample, prior)
    elif config.method == IntervalMethod.CONDITIONAL:
        estimate = estimate_lambda(sample)
        if d_zero:
            return ReplicationOutcome(estimate=estimate, d_zero=True, discarded=True)
        try:
            interval = ci_conditional(sample, config.alpha)
        except NoRootError:
            # no lower root: a degenerate interval, zero length and not covering
            return ReplicationOutcome(
                estimate=estimate, d_zero=False, length=0.0, unsolved=True
            )
    else:
        interval = ci_unconditional(sample, config.alpha)
        estimate = estimate_lambda(sample)

    return ReplicationOutcome(
        estimate=estimate,
        d_zero=d_zero,
        length=interval.length,
        covered=interval.contains(config.lambda_true),
    )


def _run_replications(config: SimConfig, start: int, stop: int) -> List[ReplicationOutcome]:
    outcomes = []
    for replication in range(start, stop):
        try:
            outcomes.append(_replicate(config, replication))
        except (TruncExpError, ArithmeticError, ValueError) as e:
            raise SimulationError(
                f"{config.describe()}: replication failed at seed offset {replication} "
                f"(seed {config.seed}): {e}"
            )
    return outcomes


def _chunks(total: int, workers: int) -> List[Tuple[int, int]]:
    size = max(1, math.ceil(total / (4 * workers)))
    return [(start, min(start + size, total)) for start in range(0, total, size)]


def summarize(config: SimConfig, outcomes: Sequence[ReplicationOutcome]) -> SimSummary:
    """Reduce replication outcomes, in replication order, to the cell summary."""
    kept = [o for o in outcomes if not o.discarded]
    if not kept:
        raise SimulationError(f"{config.describe()}: every replication was discarded (D = 0)")

    estimates = np.array([o.estimate for o in kept])
    errors = estimates - config.lambda_true
    lengths = np.array([o.length for o in kept if o.length is not None])
    covered = sum(1 for o in kept if o.covered)

    return SimSummary(
        method=config.method,
        n=config.n,
        lambda_true=config.lambda_true,
        T=config.T,
        bias=float(errors.mean()),
        mse=float((errors**2).mean()),
        avg_length=float(lengths.mean()) if lengths.size else math.nan,
        coverage_pct=100.0 * covered / len(kept),
        effective_replications=len(kept),
        d_zero_count=sum(1 for o in outcomes if o.d_zero),
        unsolved_count=sum(1 for o in kept if o.unsolved),
        replications=config.replications,
        seed=config.seed,
    )


def run_cell(config: SimConfig, workers: int = 1) -> SimSummary:
    """
    Run every replication of one cell and aggregate bias, MSE, average length
    and coverage.

    For the conditional method, D = 0 replications are discarded and counted
    in d_zero_count. Replications whose conditional lower bound has no root
    count as degenerate intervals: zero length, not covering. They are also
    counted in unsolved_count.
    """
    log_message(f"Simulation cell started: {config.describe()}", logging.INFO)
    if workers <= 1:
        outcomes = _run_replications(config, 0, config.replications)
    else:
        chunks = _chunks(config.replications, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                _run_replications,
                [config] * len(chunks),
                [start for start, _ in chunks],
                [stop for _, stop in chunks],
            )
            outcomes = [outcome for part in parts for outcome in part]

    summary = summarize(config, outcomes)
    log_message(
        f"Simulation cell done: {config.describe()} CP={summary.coverage_pct:.2f} "
        f"d_zero={summary.d_zero_count} unsolved={summary.unsolved_count}",
        logging.INFO,
    )
    return summary


def _run_cell_guarded(
    config: SimConfig, workers: int = 1
) -> Tuple[Optional[SimSummary], Optional[str]]:
    try:
        return run_cell(config, workers), None
    except TruncExpError as e:
        log_message(traceback.format_exc(), logging.WARNING)
        return None, str(e)


class SimulationGridTask:
    """
    Runs a list of cells, collecting the summaries of the cells that finish
    and the error message of those that fail.
    """

    def __init__(
        self,
        configs: Sequence[SimConfig],
        workers: int = 1,
        status_cb: Optional[Callable[[str, str], None]] = None,
        progress_cb: Optional[Callable[[str, int], None]] = None,
    ):
        self.configs = list(configs)
        self.workers = workers
        self.status_cb = status_cb
        self.update_progress = make_progress_pacer(progress_cb)
        self.result = GridResult()
        self.error: Optional[str] = None

    def _status(self, state: str, message: str) -> None:
        if self.status_cb:
            self.status_cb(state, message)

    def _record(self, config: SimConfig, summary: Optional[SimSummary], error: Optional[str]):
        if summary is not None:
            self.result.summaries.append(summary)
        else:
            self.result.errors[config.key] = error or "unknown error"
            log_message(
                f"Simulation cell failed: {config.describe()}: {error}", logging.CRITICAL
            )

    def run(self) -> bool:
        if not self.configs:
            self.error = "no simulation cells to run"
            self._status(SimTaskState.FAILED, self.error)
            return False

        total = len(self.configs)
        self._status(SimTaskState.RUNNING, f"Running {total} simulation cell(s)...")
        log_message(f"Simulation grid started: {total} cell(s), {self.workers} worker(s)")

        if self.workers <= 1 or total == 1:
            # a lone cell spreads its replications over the workers instead
            for done, config in enumerate(self.configs, start=1):
                self._record(config, *_run_cell_guarded(config, self.workers))
                self.update_progress(config.describe(), 100 * done // total)
        else:
            # cells are independent; results keep the input order
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                futures = [pool.submit(_run_cell_guarded, config) for config in self.configs]
                for done, (config, future) in enumerate(zip(self.configs, futures), start=1):
                    self._record(config, *future.result())
                    self.update_progress(config.describe(), 100 * done // total)
        self.update_progress(f"{total} cell(s) finished", 100, force=True)

        if self.result.errors:
            self.error = f"{len(self.result.errors)} of {total} cell(s) failed"
            self._status(SimTaskState.FAILED, self.error)
            return False
        self._status(SimTaskState.DONE, f"Finished {total} simulation cell(s)")
        log_message("Simulation grid done")
        return True


def run_grid(
    configs: Sequence[SimConfig],
    workers: int = 1,
    progress_cb: Optional[Callable[[str, int], None]] = None,
) -> GridResult:
    if not configs:
        raise ValidationError("run_grid needs at least one simulation cell")
    task = SimulationGridTask(configs, workers=workers, progress_cb=progress_cb)
    task.run()
    return task.result


def design_grid(
    methods: Iterable[str] = IntervalMethod.ALL,
    replications: int = DESIGN_REPLICATIONS,
    seed: int = 0,
    alpha: float = 0.05,
    prior: GammaPrior = DEFAULT_PRIOR,
) -> List[SimConfig]:
    """The published design: n in {5, 10, 15, 20}, lambda in {0.5, 1, 2}, T in {1, 2}."""
    return [
        SimConfig(
            method=method,
            n=n,
            lambda_true=lam,
            T=T,
            alpha=alpha,
            replications=replications,
            seed=seed,
            prior=prior if method == IntervalMethod.BAYES else None,
        )
        for method in methods
        for n in DESIGN_N
        for lam in DESIGN_LAMBDA
        for T in DESIGN_T
    ]
