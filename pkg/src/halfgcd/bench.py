"""Operation-count benchmarks written as CSV.

One row per (algorithm, size, seed).  The instance for size k has
``deg P = 2k`` and depends only on (seed, k), so every algorithm in one run
sees the same input.  ``normalized_constant`` is ``field_mults / (k log2(k)^2)``;
the tool reports it and leaves the interpretation to the reader.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from .arith import EXACT_NTT, mul, plan_for
from .counter import CostCounter
from .euclid import remainder_sequence
from .field import BENCH_PRIME, prime_field
from .gcd import ALGORITHMS, NORMAL_ALGORITHMS, half_gcd
from .generators import abnormal_instance, normal_instance, random_poly
from .hgcd import DEFAULT_THRESHOLD
from .ntt import is_power_of_two, log2

BENCH_ALGORITHMS = tuple(f"hgcd-{a}" for a in ALGORITHMS) + ("euclid-ref", "ntt-mul")
GENERATORS = ("auto", "normal", "general")


class BenchError(ValueError):
    """Bad benchmark request (exit code 2)."""


class SizeUnsupported(ValueError):
    """Requested size needs transforms the field does not have (exit code 3)."""


@dataclass(frozen=True)
class BenchRow:
    algorithm: str
    k: int
    d: int
    seed: int
    field_mults: int
    field_adds: int
    field_divs: int
    transforms_total: int
    transforms_weighted: int
    wall_time_ns: int
    normalized_constant: float


COLUMNS = tuple(f.name for f in fields(BenchRow))


@dataclass(frozen=True)
class Job:
    algorithm: str
    k: int
    seed: int
    generator: str = "auto"
    threshold: int = DEFAULT_THRESHOLD
    p: int = BENCH_PRIME
    timing: bool = True


def required_length(algorithm: str, k: int) -> int:
    """Largest transform length the algorithm issues at size k."""
    if algorithm == "ntt-mul":
        return 2 * k
    if algorithm == "euclid-ref":
        return 1
    return k


def _generator_for(job: Job) -> str:
    if job.generator != "auto":
        return job.generator
    return "normal" if job.algorithm.removeprefix("hgcd-") in NORMAL_ALGORITHMS else "general"


def instance(job: Job):
    """The (P, Q) pair for ``job``; a function of (seed, k, generator) only."""
    F = prime_field(job.p)
    rng = np.random.default_rng([job.seed, job.k])
    d = 2 * job.k
    if _generator_for(job) == "normal":
        return normal_instance(F, d, rng)
    return abnormal_instance(F, d, rng)


def run_job(job: Job) -> BenchRow:
    F = prime_field(job.p)
    c = CostCounter()
    k = job.k
    if job.algorithm == "ntt-mul":
        # one product of two polynomials of degree < k: the M(k) of the cost model
        rng = np.random.default_rng([job.seed, k])
        a, b = random_poly(F, k - 1, rng), random_poly(F, k - 1, rng)
        d = k - 1
        t0 = time.perf_counter_ns()
        mul(a, b, EXACT_NTT, c)
    else:
        P, Q = instance(job)
        d = P.deg
        t0 = time.perf_counter_ns()
        if job.algorithm == "euclid-ref":
            remainder_sequence(P, Q, counter=c)
        else:
            half_gcd(P, Q, k, job.algorithm.removeprefix("hgcd-"), job.threshold, c)
    elapsed = time.perf_counter_ns() - t0 if job.timing else 0
    lg = log2(k)
    norm = c.field_mults / (k * lg * lg)
    return BenchRow(
        job.algorithm,
        k,
        d,
        job.seed,
        c.field_mults,
        c.field_adds,
        c.field_divs,
        c.total_transforms,
        c.weighted_transforms,
        elapsed,
        norm,
    )


def plan_jobs(algorithms, sizes, seeds, *, generator="auto", threshold=DEFAULT_THRESHOLD, exact_accounting=False, p=BENCH_PRIME, timing=True) -> list[Job]:
    """Validate a request and expand it into jobs in output order."""
    if not algorithms:
        raise BenchError("no algorithms given")
    if not sizes:
        raise BenchError("no sizes given")
    if not seeds:
        raise BenchError("no seeds given")
    for a in algorithms:
        if a not in BENCH_ALGORITHMS:
            raise BenchError(f"unknown algorithm {a!r}; choose from {', '.join(BENCH_ALGORITHMS)}")
    if generator not in GENERATORS:
        raise BenchError(f"unknown generator {generator!r}")
    for k in sizes:
        if k < 2 or not is_power_of_two(k):
            raise BenchError(f"size {k} is not a power of two >= 2")
    if threshold < 1:
        raise BenchError("threshold must be at least 1")
    F = prime_field(p)
    limit = plan_for(F).max_length
    for a in algorithms:
        for k in sizes:
            if required_length(a, k) > limit:
                raise SizeUnsupported(f"{a} at size {k} needs transforms of length {required_length(a, k)}, field supports {limit}")
    if exact_accounting:
        threshold = 1
    jobs = [Job(a, k, s, generator, threshold, p, timing) for a in algorithms for k in sizes for s in seeds]
    return sorted(set(jobs), key=lambda j: (j.algorithm, j.k, j.seed))


def run(jobs: list[Job], workers: int = 1) -> list[BenchRow]:
    """Rows in job order, whatever order the workers finish in."""
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(run_job, jobs))
    return [run_job(j) for j in jobs]


def to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        vals = list(astuple(r))
        vals[-1] = f"{r.normalized_constant:.6f}"
        w.writerow(vals)
    return buf.getvalue()
