"""Certification harness: exhaustive and seeded-random instance sweeps.

A CertificationJob names a host ("cube:5", "link:6", "pyramid2-quad"), a
pair count k, a generation mode (exhaustive or sampled), and which solver
to exercise: the constructive engine, the exact oracle, or both with a
cross-check.  certify() streams instances through the solver, validates
every produced linkage, and aggregates a CertificationReport whose failure
rows carry full replayable instance dumps.

Sampling uses a splitmix-style 64-bit generator so streams are identical
across platforms and Python versions.  The algorithm, for the record:
state advances by adding 0x9E3779B97F4A7C15 (mod 2^64); each output mixes
the new state with xor-shifts by 30/27/31 and multiplications by
0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.  Bounded draws use rejection,
so uniformity is exact; the instance stream for a given (host, k, n, seed)
is part of this module's compatibility contract.

Parallelism: a job with workers > 1 partitions the stream by instance
index modulo the worker count, so reports are identical to a sequential
run (fail-fast then applies per worker).
"""

from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from . import cube_core, path_oracle
from .cube_core import CubeGraph, associated_pairs, link_graph, opposite
from .linkage_engine import (
    UnsupportedInstanceError,
    scenario3_context,
    solve_link,
    solve_linkage,
    solve_strong,
)
from .path_oracle import (
    BUDGET_EXCEEDED,
    DEFAULT_NODE_BUDGET,
    LINKED,
    InvariantError,
    Pairing,
    check_separator_structure,
    decide_linked,
    host_to_json,
    max_shared_neighbors,
    pairing_to_json,
    pyramid2_quad,
    validate_linkage,
)

DEFAULT_SEED = 2024

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"

ENGINE = "engine"
ORACLE = "oracle"
BOTH = "both"

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator; see the module docstring for the
    exact recurrence.  Identical streams on every platform."""

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange needs a positive bound")
        bound = _MASK64 + 1 - ((_MASK64 + 1) % n)
        while True:
            x = self.next_u64()
            if x < bound:
                return x % n

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]


# ---------------------------------------------------------------------------
# Jobs, instances, reports


@dataclass(frozen=True)
class CertificationJob:
    host: str
    k: int
    mode: str = EXHAUSTIVE
    solver: str = ENGINE
    samples: int = 0
    seed: int = DEFAULT_SEED
    strong: bool = False
    budget: int = DEFAULT_NODE_BUDGET
    fail_fast: bool = False
    workers: int = 1


@dataclass(frozen=True)
class Instance:
    """One generated test case; kind is plain, strong, or link."""

    index: int
    kind: str
    d: int
    pairing: Pairing
    forbidden: object = None
    apex: int | None = None
    fixture: str | None = None

    def host_graph(self):
        if self.fixture is not None:
            G = pyramid2_quad()
            if self.forbidden is not None:
                G = G.without({self.forbidden})
            return G
        if self.kind == "link":
            return link_graph(self.d, self.apex)
        if self.forbidden is not None:
            return CubeGraph(self.d, frozenset({self.forbidden}))
        return CubeGraph(self.d)

    def to_json(self) -> dict:
        G = self.host_graph()
        return {
            "index": self.index,
            "kind": self.kind,
            "host": host_to_json(G),
            "pairs": pairing_to_json(G, self.pairing),
        }


@dataclass
class CertificationReport:
    label: str
    instances: int = 0
    successes: int = 0
    failures: list = field(default_factory=list)
    budget_cases: list = field(default_factory=list)
    wall_time: float = 0.0
    scenario_counters: dict = field(default_factory=dict)

    @property
    def budget_exceeded(self) -> int:
        return len(self.budget_cases)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.budget_cases

    def count(self, label: str, n: int = 1) -> None:
        self.scenario_counters[label] = self.scenario_counters.get(label, 0) + n

    def merge(self, other: "CertificationReport") -> None:
        self.instances += other.instances
        self.successes += other.successes
        self.failures.extend(other.failures)
        self.budget_cases.extend(other.budget_cases)
        for key, n in other.scenario_counters.items():
            self.count(key, n)

    def sort_rows(self) -> None:
        self.failures.sort(key=lambda row: row.get("index", 0))
        self.budget_cases.sort(key=lambda row: row.get("index", 0))

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "label": self.label,
            "instances": self.instances,
            "successes": self.successes,
            "failures": self.failures,
            "budget_exceeded": len(self.budget_cases),
            "budget_cases": self.budget_cases,
            "scenario_counters": dict(sorted(self.scenario_counters.items())),
            "ok": self.ok,
        }
        if timing:
            out["wall_time_s"] = round(self.wall_time, 3)
        return out

    def summary_text(self, timing: bool = False) -> str:
        lines = [
            f"job        {self.label}",
            f"instances  {self.instances}",
            f"successes  {self.successes}",
            f"failures   {len(self.failures)}",
            f"budget     {len(self.budget_cases)}",
        ]
        if timing:
            lines.append(f"wall       {self.wall_time:.3f}s")
        for key, n in sorted(self.scenario_counters.items()):
            lines.append(f"  {key:<24} {n}")
        for row in self.failures[:10]:
            lines.append(f"  FAIL #{row.get('index')}: {row.get('reason')}")
        if len(self.failures) > 10:
            lines.append(f"  ... {len(self.failures) - 10} more failures")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Host specs and instance generation


def parse_host_spec(spec: str) -> tuple[str, int | None]:
    """'cube:5' -> ('cube', 5); 'link:6' -> ('link', 6); fixture names pass
    through with dimension None."""
    if spec == "pyramid2-quad":
        return "fixture", None
    head, sep, tail = spec.partition(":")
    if head in ("cube", "link") and sep:
        try:
            d = int(tail)
        except ValueError:
            raise ValueError(f"bad dimension in host spec {spec!r}") from None
        cube_core.check_dim(d)
        return head, d
    raise ValueError(f"unknown host spec {spec!r}")


def canonical_pairings(X: tuple) -> Iterator[tuple]:
    """All pairings of a sorted terminal tuple: the smallest terminal pairs
    with each partner in ascending order, recursively."""
    if not X:
        yield ()
        return
    s = X[0]
    for i in range(1, len(X)):
        rest = X[1:i] + X[i + 1:]
        for tail in canonical_pairings(rest):
            yield ((s, X[i]),) + tail


def _cube_pool(d: int, excluded: tuple = ()) -> list:
    out = [v for v in range(1 << d) if v not in excluded]
    return out


def exhaustive_instances(host: str, k: int, strong: bool = False) -> Iterator[Instance]:
    kind, d = parse_host_spec(host)
    idx = 0
    if kind == "cube" and not strong:
        for X in combinations(range(1 << d), 2 * k):
            for pairs in canonical_pairings(X):
                yield Instance(idx, "plain", d, Pairing(pairs))
                idx += 1
    elif kind == "cube" and strong:
        for x in range(1 << d):
            pool = _cube_pool(d, (x,))
            for X in combinations(pool, 2 * k):
                for pairs in canonical_pairings(X):
                    yield Instance(idx, "strong", d, Pairing(pairs), forbidden=x)
                    idx += 1
    elif kind == "link":
        v = 0
        pool = _cube_pool(d, (v, opposite(d, v)))
        for X in combinations(pool, 2 * k):
            for pairs in canonical_pairings(X):
                yield Instance(idx, "link", d, Pairing(pairs), apex=v)
                idx += 1
    elif kind == "fixture" and not strong:
        verts = tuple(pyramid2_quad().vertex_list())
        for X in combinations(verts, 2 * k):
            for pairs in canonical_pairings(X):
                yield Instance(idx, "plain", 0, Pairing(pairs), fixture="pyramid2-quad")
                idx += 1
    else:
        verts = tuple(pyramid2_quad().vertex_list())
        for x in verts:
            rest = tuple(u for u in verts if u != x)
            for X in combinations(rest, 2 * k):
                for pairs in canonical_pairings(X):
                    yield Instance(idx, "strong", 0, Pairing(pairs),
                                   forbidden=x, fixture="pyramid2-quad")
                    idx += 1


def _draw_distinct(rng: SplitMix64, size: int, count: int, taken: set) -> list:
    out: list = []
    seen = set(taken)
    while len(out) < count:
        v = rng.randrange(size)
        if v in seen:
            continue
        seen.add(v)
        out.append(v)
    return out


def _draw_pairing(rng: SplitMix64, terminals: list) -> tuple:
    order = list(terminals)
    rng.shuffle(order)
    return tuple((order[2 * i], order[2 * i + 1]) for i in range(len(order) // 2))


def sample_instances(host: str, k: int, n: int, seed: int,
                     strong: bool = False) -> Iterator[Instance]:
    """A reproducible stream of n random instances.

    Draw order per instance is fixed: link hosts draw the apex first, then
    terminals (rejection sampling among usable vertices), then the pairing
    by shuffling the drawn terminals; strong hosts draw the forbidden
    vertex after the pairing.  Changing this order would silently change
    every seeded stream, so it is part of the contract.
    """
    if n < 1:
        raise ValueError("sample_instances needs n >= 1")
    kind, d = parse_host_spec(host)
    rng = SplitMix64(seed)
    if kind == "fixture":
        verts = tuple(pyramid2_quad().vertex_list())
        need = 2 * k + (1 if strong else 0)
        if need > len(verts):
            raise ValueError("not enough fixture vertices for 2k terminals")
        for i in range(n):
            ids = _draw_distinct(rng, len(verts), 2 * k, set())
            pairs = _draw_pairing(rng, [verts[j] for j in ids])
            if strong:
                x = verts[_draw_distinct(rng, len(verts), 1, set(ids))[0]]
                yield Instance(i, "strong", 0, Pairing(pairs), forbidden=x,
                               fixture="pyramid2-quad")
            else:
                yield Instance(i, "plain", 0, Pairing(pairs), fixture="pyramid2-quad")
        return
    size = 1 << d
    blocked = 2 if kind == "link" else (1 if strong else 0)
    if 2 * k + blocked > size:
        raise ValueError(f"Q{d} has too few vertices for 2k={2 * k} terminals")
    for i in range(n):
        if kind == "link":
            v = rng.randrange(size)
            terms = _draw_distinct(rng, size, 2 * k, {v, opposite(d, v)})
            yield Instance(i, "link", d, Pairing(_draw_pairing(rng, terms)), apex=v)
        elif strong:
            terms = _draw_distinct(rng, size, 2 * k, set())
            pairs = _draw_pairing(rng, terms)
            x = _draw_distinct(rng, size, 1, set(terms))[0]
            yield Instance(i, "strong", d, Pairing(pairs), forbidden=x)
        else:
            terms = _draw_distinct(rng, size, 2 * k, set())
            yield Instance(i, "plain", d, Pairing(_draw_pairing(rng, terms)))


# ---------------------------------------------------------------------------
# Running jobs


def _validate_job(job: CertificationJob) -> None:
    kind, d = parse_host_spec(job.host)
    if job.k < 1:
        raise ValueError("jobs need k >= 1")
    if job.mode not in (EXHAUSTIVE, SAMPLED):
        raise ValueError(f"unknown mode {job.mode!r}")
    if job.solver not in (ENGINE, ORACLE, BOTH):
        raise ValueError(f"unknown solver {job.solver!r}")
    if job.mode == SAMPLED and job.samples < 1:
        raise ValueError("sampled jobs need a positive sample count")
    if job.workers < 1:
        raise ValueError("workers must be at least one")
    if kind == "link" and job.strong:
        raise ValueError("link jobs already remove two vertices; strong does not apply")
    if job.solver in (ENGINE, BOTH):
        if kind == "fixture":
            raise ValueError("the engine solves cube hosts only")
        if kind == "cube" and not job.strong:
            if d == 3 and job.k >= 2:
                raise ValueError("Q3 with two pairs is outside the engine guarantee")
            if job.k > (d + 1) // 2:
                raise ValueError(f"engine supports at most {(d + 1) // 2} pairs in Q{d}")
        if kind == "cube" and job.strong and job.k > d // 2:
            raise ValueError(f"strong engine supports at most {d // 2} pairs in Q{d}")
        if kind == "link":
            dd = d - 1
            if dd < 2 or dd == 3:
                raise ValueError("link jobs need host dimension 3 or at least 5")
            if job.k > (dd + 1) // 2:
                raise ValueError(f"link engine supports at most {(dd + 1) // 2} pairs")


def _instances(job: CertificationJob) -> Iterator[Instance]:
    if job.mode == EXHAUSTIVE:
        return exhaustive_instances(job.host, job.k, strong=job.strong)
    return sample_instances(job.host, job.k, job.samples, job.seed, strong=job.strong)


def _engine_solve(inst: Instance):
    if inst.kind == "plain":
        return solve_linkage(inst.d, inst.pairing)
    if inst.kind == "strong":
        return solve_strong(inst.d, inst.pairing, inst.forbidden)
    return solve_link(inst.d, inst.apex, inst.pairing)


def _run_one(inst: Instance, job: CertificationJob, report: CertificationReport) -> None:
    report.instances += 1
    host = inst.host_graph()
    if job.solver in (ENGINE, BOTH):
        try:
            result = _engine_solve(inst)
        except (InvariantError, UnsupportedInstanceError, ValueError) as exc:
            row = inst.to_json()
            row["reason"] = f"engine: {exc}"
            if isinstance(exc, InvariantError) and exc.context:
                row["context"] = exc.context
            report.failures.append(row)
            return
        check = validate_linkage(host, inst.pairing, result.linkage)
        if not check:
            row = inst.to_json()
            row["reason"] = f"engine output invalid: {check.clause}: {check.message}"
            report.failures.append(row)
            return
        for label in result.trace:
            report.count(label)
        if job.solver == ENGINE:
            report.successes += 1
            return
    outcome = decide_linked(host, inst.pairing, budget=job.budget)
    report.count(f"oracle:{outcome.status}")
    if outcome.status == BUDGET_EXCEEDED:
        row = inst.to_json()
        row["reason"] = f"oracle budget exhausted after {outcome.nodes_used} nodes"
        report.budget_cases.append(row)
        return
    if outcome.status == LINKED:
        if job.solver == BOTH:
            report.successes += 1
            return
        check = validate_linkage(host, inst.pairing, outcome.linkage)
        if check:
            report.successes += 1
        else:
            row = inst.to_json()
            row["reason"] = f"oracle witness invalid: {check.clause}"
            report.failures.append(row)
    else:
        row = inst.to_json()
        if job.solver == BOTH:
            row["reason"] = "engine produced a linkage but the oracle says unlinked"
        else:
            row["reason"] = "oracle: unlinked"
            row["pair_order"] = list(outcome.pair_order)
        report.failures.append(row)


def _certify_range(job: CertificationJob, offset: int, step: int) -> CertificationReport:
    report = CertificationReport(label=_job_label(job))
    for inst in _instances(job):
        if inst.index % step != offset:
            continue
        _run_one(inst, job, report)
        if job.fail_fast and report.failures:
            break
    return report


def _certify_worker(args: tuple) -> CertificationReport:
    job, worker_id = args
    return _certify_range(job, worker_id, job.workers)


def _job_label(job: CertificationJob) -> str:
    bits = [job.host, f"k={job.k}", job.mode]
    if job.mode == SAMPLED:
        bits.append(f"n={job.samples}")
        bits.append(f"seed={job.seed}")
    if job.strong:
        bits.append("strong")
    bits.append(job.solver)
    return " ".join(bits)


def certify(job: CertificationJob) -> CertificationReport:
    """Run the job and aggregate a report; see the module docstring."""
    _validate_job(job)
    start = time.perf_counter()
    if job.workers > 1:
        with multiprocessing.Pool(job.workers) as pool:
            parts = pool.map(_certify_worker, [(job, i) for i in range(job.workers)])
        report = CertificationReport(label=_job_label(job))
        for part in parts:
            report.merge(part)
    else:
        report = _certify_range(job, 0, 1)
    report.sort_rows()
    report.wall_time = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# Property suites


def _random_subset(rng: SplitMix64, d: int) -> list:
    size = 1 << d
    while True:
        words = [rng.next_u64() for _ in range((size + 63) // 64)]
        out = [v for v in range(size) if (words[v // 64] >> (v % 64)) & 1]
        if out:
            return out


def _suite_association(seed: int, samples: int) -> CertificationReport:
    report = CertificationReport(label="association_bound")
    for mask in range(1, 256):
        Z = [v for v in range(8) if (mask >> v) & 1]
        report.instances += 1
        if len(associated_pairs(3, Z)) <= len(Z) - 1:
            report.successes += 1
            report.count("d3")
        else:
            report.failures.append({"d": 3, "Z": Z, "reason": "association bound broken"})
    for d in range(4, 9):
        rng = SplitMix64(seed + d)
        for _ in range(samples):
            Z = _random_subset(rng, d)
            report.instances += 1
            if len(associated_pairs(d, Z)) <= len(Z) - 1:
                report.successes += 1
                report.count(f"d{d}")
            else:
                report.failures.append({"d": d, "Z": Z,
                                        "reason": "association bound broken"})
    return report


def _suite_separator(seed: int, samples: int) -> CertificationReport:
    report = CertificationReport(label="separator_structure")
    for S in combinations(range(8), 3):
        report.instances += 1
        verdict = check_separator_structure(3, S)
        report.count(f"d3:{verdict.kind}")
        if verdict.kind == path_oracle.VIOLATION:
            report.failures.append({"d": 3, "S": list(S), "reason": verdict.detail})
        else:
            report.successes += 1
    rng = SplitMix64(seed)
    for _ in range(samples):
        S = _draw_distinct(rng, 16, 4, set())
        report.instances += 1
        verdict = check_separator_structure(4, S)
        report.count(f"d4:{verdict.kind}")
        if verdict.kind == path_oracle.VIOLATION:
            report.failures.append({"d": 4, "S": sorted(S), "reason": verdict.detail})
        else:
            report.successes += 1
    return report


def _suite_shared(seed: int, samples: int) -> CertificationReport:
    report = CertificationReport(label="shared_neighbors")
    for d in range(2, 7):
        for u, v in combinations(range(1 << d), 2):
            report.instances += 1
            c = max_shared_neighbors(d, u, v)
            report.count(f"shared{c}")
            if c <= 2:
                report.successes += 1
            else:
                report.failures.append({"d": d, "u": u, "v": v,
                                        "reason": f"{c} shared neighbors"})
    return report


def _suite_omega(seed: int, samples: int) -> CertificationReport:
    report = CertificationReport(label="omega_conditions")
    full = (1 << 5) - 1
    for inst in sample_instances("cube:5", 3, samples, seed):
        pairs = inst.pairing.pairs
        if all(s ^ t == full for s, t in pairs):
            report.count("skipped_antipodal")
            continue
        X = [v for p in pairs for v in p]
        if any(len({(x >> c) & 1 for x in X}) == 1 for c in range(5)):
            report.count("skipped_common_facet")
            continue
        report.instances += 1
        try:
            ctx = scenario3_context(5, inst.pairing)
        except InvariantError as exc:
            report.failures.append({"instance": inst.to_json(),
                                    "reason": f"omega construction failed: {exc}"})
            continue
        omega = ctx.omega
        problems = []
        values = list(omega.values())
        if len(set(values)) != len(values):
            problems.append("not injective")
        X_set = frozenset(ctx.rho)
        Fo = ctx.face.opposite_facet()
        for x, wx in omega.items():
            if wx != x and not (ctx.face.contains(wx) and cube_core.adjacent(x, wx)):
                problems.append(f"omega({x}) is not x or an in-facet neighbor")
            if {wx, cube_core.project(wx, Fo)} & (X_set - {x, ctx.rho[x]}):
                problems.append(f"omega({x}) touches a foreign terminal")
            report.count("identity" if wx == x else "moved")
        if problems:
            report.failures.append({"instance": inst.to_json(),
                                    "reason": "; ".join(problems)})
        else:
            report.successes += 1
    return report


_SUITES = {
    "association_bound": _suite_association,
    "separator_structure": _suite_separator,
    "shared_neighbors": _suite_shared,
    "omega_conditions": _suite_omega,
}

SUITE_NAMES = tuple(sorted(_SUITES))


def property_suite(name: str, seed: int = DEFAULT_SEED,
                   samples: int = 10_000) -> CertificationReport:
    """Run one named invariant suite; see _SUITES for the menu."""
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; options: {sorted(_SUITES)}")
    start = time.perf_counter()
    report = _SUITES[name](seed, samples)
    report.wall_time = time.perf_counter() - start
    return report
