"""Desk-scale verification campaigns over enumerated groups.

A campaign walks every isomorphism class of abelian group up to a chosen
order, enumerates subsets exhaustively below a threshold and samples them
uniformly above it, and runs the selected checks on each instance.  All
randomness is derived from (seed, moduli), and per-group results are
merged in enumeration order and sorted, so reports are byte-identical
across runs and across worker counts.  Wall time is recorded on the
report object but never rendered into it.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import kernels
from .bounds import BoundReport, check_instance, iterated_bound, pair_bound
from .group import GroupSpec, enumerate_abelian_groups, format_group
from .sets import (
    ElementSet,
    format_set,
    iterated_sumset,
    oracle_restricted_sumset,
    restricted_sumset,
    sumset,
)
from .witness import CertificateError, ValidationReport, build_witness, validate_certificate

__all__ = [
    "ALL_CHECKS",
    "CHECK_ITERATED",
    "CHECK_ORACLE",
    "CHECK_PAIR",
    "CHECK_THEOREM",
    "CHECK_WITNESS",
    "CampaignConfig",
    "CampaignReport",
    "SumsetViolation",
    "WitnessFailure",
    "bench_kernels",
    "compare_backends",
    "extremal_search",
    "render_report",
    "run_campaign",
]

CHECK_THEOREM = "theorem"
CHECK_PAIR = "pair_bound"
CHECK_ITERATED = "iterated_bound"
CHECK_WITNESS = "witness"
CHECK_ORACLE = "oracle"
ALL_CHECKS = frozenset({CHECK_THEOREM, CHECK_PAIR, CHECK_ITERATED, CHECK_WITNESS, CHECK_ORACLE})

ORACLE_SIZE_CAP = 20


@dataclass(frozen=True)
class CampaignConfig:
    max_order: int
    exhaustive_threshold: int = 16
    samples_per_group: int = 10_000
    k_max: int | None = None
    seed: int = 0
    checks: frozenset[str] = frozenset({CHECK_THEOREM})

    def __post_init__(self):
        if self.max_order < 2:
            raise ValueError("max_order must be >= 2")
        if self.exhaustive_threshold < 1:
            raise ValueError("exhaustive_threshold must be >= 1")
        if self.samples_per_group < 0:
            raise ValueError("samples_per_group must be >= 0")
        if self.k_max is not None and self.k_max < 2:
            raise ValueError("k_max must be >= 2 when given")
        unknown = set(self.checks) - ALL_CHECKS
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")
        object.__setattr__(self, "checks", frozenset(self.checks))


@dataclass(frozen=True)
class WitnessFailure:
    group: GroupSpec
    set_indices: tuple[int, ...]
    k: int
    failures: tuple[tuple[str, str], ...]
    error: str | None = None  # builder exception, when construction itself failed


@dataclass(frozen=True)
class SumsetViolation:
    kind: str  # pair_bound or iterated_bound
    group: GroupSpec
    part_indices: tuple[tuple[int, ...], ...]
    bound: int
    actual: int


@dataclass
class CampaignReport:
    config: CampaignConfig
    groups_checked: int = 0
    instances_checked: int = 0
    violations: list[BoundReport] = field(default_factory=list)
    equality_cases: list[tuple[GroupSpec, ElementSet, int]] = field(default_factory=list)
    witness_failures: list[WitnessFailure] = field(default_factory=list)
    oracle_mismatches: list[tuple[GroupSpec, tuple[int, ...], int]] = field(default_factory=list)
    sumset_violations: list[SumsetViolation] = field(default_factory=list)
    complete: bool = True
    wall_time: float = 0.0

    def clean(self) -> bool:
        return not (
            self.violations
            or self.witness_failures
            or self.oracle_mismatches
            or self.sumset_violations
        )


@dataclass
class _GroupResult:
    instances: int = 0
    violations: list[BoundReport] = field(default_factory=list)
    equalities: list[tuple[GroupSpec, ElementSet, int]] = field(default_factory=list)
    witness_failures: list[WitnessFailure] = field(default_factory=list)
    oracle_mismatches: list[tuple[GroupSpec, tuple[int, ...], int]] = field(default_factory=list)
    sumset_violations: list[SumsetViolation] = field(default_factory=list)


def _group_seed(seed: int, moduli: tuple[int, ...]) -> int:
    x = seed
    for m in moduli:
        x = x * 1_000_003 + m
    return x


def _subset_stream(cfg: CampaignConfig, g: GroupSpec, rng: random.Random) -> Iterator[int]:
    if g.order <= cfg.exhaustive_threshold:
        return iter(range(1, 1 << g.order))
    full = (1 << g.order) - 1
    return (rng.randrange(1, full + 1) for _ in range(cfg.samples_per_group))


def _run_group(cfg: CampaignConfig, g: GroupSpec) -> _GroupResult:
    rng = random.Random(_group_seed(cfg.seed, g.moduli))
    res = _GroupResult()
    checks = cfg.checks
    full = (1 << g.order) - 1
    for bits in _subset_stream(cfg, g, rng):
        a = ElementSet(g, bits)
        size = a.cardinality
        k_top = size if cfg.k_max is None else min(size, cfg.k_max)
        for k in range(2, k_top + 1):
            res.instances += 1
            if CHECK_THEOREM in checks:
                rep = check_instance(g, a, k)
                if not rep.satisfied:
                    res.violations.append(rep)
                elif rep.equality:
                    res.equalities.append((g, a, k))
            if CHECK_ORACLE in checks and size <= ORACLE_SIZE_CAP:
                if restricted_sumset(a, k) != oracle_restricted_sumset(a, k):
                    res.oracle_mismatches.append((g, tuple(a.indices()), k))
            if CHECK_WITNESS in checks:
                try:
                    cert = build_witness(g, a, k)
                except CertificateError as exc:
                    res.witness_failures.append(
                        WitnessFailure(g, tuple(a.indices()), k, (), error=str(exc))
                    )
                else:
                    rep = validate_certificate(g, a, k, cert)
                    if not rep.ok:
                        res.witness_failures.append(
                            WitnessFailure(g, tuple(a.indices()), k, rep.failures)
                        )
        if CHECK_PAIR in checks:
            b = ElementSet(g, rng.randrange(1, full + 1))
            res.instances += 1
            actual = sumset(a, b).cardinality
            bnd = pair_bound(g, a.cardinality, b.cardinality)
            if actual < bnd:
                res.sumset_violations.append(
                    SumsetViolation(
                        CHECK_PAIR, g, (tuple(a.indices()), tuple(b.indices())), bnd, actual
                    )
                )
        if CHECK_ITERATED in checks:
            parts = [
                ElementSet(g, rng.randrange(1, full + 1)) for _ in range(rng.randint(2, 4))
            ]
            res.instances += 1
            actual = iterated_sumset(parts).cardinality
            bnd = iterated_bound(g, [len(part) for part in parts])
            if actual < bnd:
                res.sumset_violations.append(
                    SumsetViolation(
                        CHECK_ITERATED,
                        g,
                        tuple(tuple(part.indices()) for part in parts),
                        bnd,
                        actual,
                    )
                )
    return res


def _merge(cfg: CampaignConfig, results: Sequence[_GroupResult | None], complete: bool,
           wall: float) -> CampaignReport:
    report = CampaignReport(config=cfg, complete=complete, wall_time=wall)
    for res in results:
        if res is None:
            continue
        report.groups_checked += 1
        report.instances_checked += res.instances
        report.violations.extend(res.violations)
        report.equality_cases.extend(res.equalities)
        report.witness_failures.extend(res.witness_failures)
        report.oracle_mismatches.extend(res.oracle_mismatches)
        report.sumset_violations.extend(res.sumset_violations)
    report.violations.sort(key=lambda r: (r.group.moduli, r.set_indices, r.k))
    report.equality_cases.sort(key=lambda e: (e[0].order, e[0].moduli, e[2], e[1].bits))
    report.witness_failures.sort(key=lambda w: (w.group.moduli, w.set_indices, w.k))
    report.oracle_mismatches.sort(key=lambda o: (o[0].moduli, o[1], o[2]))
    report.sumset_violations.sort(key=lambda s: (s.kind, s.group.moduli, s.part_indices))
    return report


def run_campaign(cfg: CampaignConfig, jobs: int = 1, time_budget: float | None = None) -> CampaignReport:
    """Run the configured checks over all groups up to max_order.

    jobs > 1 distributes whole groups across processes; the merged report
    is identical to a sequential run.  A time budget stops scheduling new
    groups once exceeded and marks the report incomplete.
    """
    groups = enumerate_abelian_groups(2, cfg.max_order)
    start = time.perf_counter()
    results: list[_GroupResult | None] = [None] * len(groups)
    complete = True
    if jobs <= 1:
        for gi, g in enumerate(groups):
            if time_budget is not None and time.perf_counter() - start > time_budget:
                complete = False
                break
            results[gi] = _run_group(cfg, g)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_run_group, cfg, g): gi for gi, g in enumerate(groups)}
            try:
                for fut in as_completed(futures, timeout=time_budget):
                    results[futures[fut]] = fut.result()
            except TimeoutError:
                complete = False
                for fut in futures:
                    fut.cancel()
    return _merge(cfg, results, complete, time.perf_counter() - start)


def _canonical_translate(a: ElementSet) -> tuple[int, ...]:
    """Smallest sorted index tuple over all translates of the set."""
    g = a.group
    impl = kernels.active
    best: tuple[int, ...] | None = None
    for shift in range(g.order):
        coords = tuple((shift // s) % n for s, n in zip(g.strides, g.moduli))
        translated = impl.translate_bits(a.bits, coords, g.moduli)
        candidate = []
        rest = translated
        while rest:
            low = rest & -rest
            candidate.append(low.bit_length() - 1)
            rest ^= low
        cand = tuple(candidate)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def extremal_search(cfg: CampaignConfig) -> list[tuple[GroupSpec, ElementSet, int]]:
    """All equality instances |k^(A)| = bound found by the campaign walk,
    deduplicated up to translation (smallest-index representative kept)."""
    found: dict[tuple[tuple[int, ...], tuple[int, ...], int], None] = {}
    for g in enumerate_abelian_groups(2, cfg.max_order):
        rng = random.Random(_group_seed(cfg.seed, g.moduli))
        for bits in _subset_stream(cfg, g, rng):
            a = ElementSet(g, bits)
            k_top = a.cardinality if cfg.k_max is None else min(a.cardinality, cfg.k_max)
            for k in range(2, k_top + 1):
                rep = check_instance(g, a, k)
                if rep.equality:
                    found.setdefault((g.moduli, _canonical_translate(a), k), None)
    out = []
    for moduli, canon, k in found:
        g = GroupSpec(moduli)
        out.append((g, ElementSet(g, sum(1 << i for i in canon)), k))
    out.sort(key=lambda e: (e[0].order, e[0].moduli, e[2], e[1].bits))
    return out


def bench_kernels(orders: Iterable[int], set_density: float, k: int, seed: int,
                  backend: str = "auto", repeats: int = 5) -> list[tuple[int, float]]:
    """Best-of-N timing of the restricted-sumset kernel, in microseconds,
    on one random subset of each cyclic group Z_order."""
    if not 0.0 < set_density <= 1.0:
        raise ValueError("set_density must be in (0, 1]")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    impl = kernels.get_backend(backend)
    rows = []
    for order in orders:
        if order < 2:
            raise ValueError("orders must be >= 2")
        rng = random.Random(_group_seed(seed, (order,)))
        size = max(1, min(order, round(set_density * order)))
        bits = 0
        for i in rng.sample(range(order), size):
            bits |= 1 << i
        best = None
        for _ in range(repeats):
            t0 = time.perf_counter_ns()
            impl.restricted_sumset_bits(bits, k, (order,))
            dt = time.perf_counter_ns() - t0
            best = dt if best is None else min(best, dt)
        rows.append((order, best / 1000.0))
    return rows


def compare_backends(orders: Iterable[int], set_density: float, k: int, seed: int,
                     repeats: int = 5) -> list[tuple[int, str, float]]:
    """bench_kernels for every available backend, on identical inputs."""
    orders = list(orders)
    rows = []
    for name in kernels.available_backends():
        for order, micros in bench_kernels(orders, set_density, k, seed, backend=name,
                                           repeats=repeats):
            rows.append((order, name, micros))
    rows.sort(key=lambda r: (r[0], r[1]))
    return rows


def _config_line(cfg: CampaignConfig) -> str:
    k_max = "all" if cfg.k_max is None else str(cfg.k_max)
    checks = ",".join(sorted(cfg.checks))
    return (
        f"max_order={cfg.max_order} exhaustive_threshold={cfg.exhaustive_threshold} "
        f"samples_per_group={cfg.samples_per_group} k_max={k_max} seed={cfg.seed} "
        f"checks={checks}"
    )


def render_report(report: CampaignReport, fmt: str = "table") -> str:
    """Deterministic text form of a campaign report (table, csv, or json)."""
    if fmt == "table":
        lines = [
            f"campaign: {_config_line(report.config)}",
            (
                f"groups={report.groups_checked} instances={report.instances_checked} "
                f"violations={len(report.violations)} "
                f"sumset_violations={len(report.sumset_violations)} "
                f"oracle_mismatches={len(report.oracle_mismatches)} "
                f"witness_failures={len(report.witness_failures)} "
                f"equality_cases={len(report.equality_cases)} "
                f"complete={'yes' if report.complete else 'no'}"
            ),
        ]
        for rep in report.violations:
            lines.append(
                f"VIOLATION {format_group(rep.group)} set={{{_set_text(rep.group, rep.set_indices)}}} "
                f"k={rep.k} bound={rep.bound} actual={rep.actual}"
            )
        for sv in report.sumset_violations:
            parts = " + ".join(f"{{{_set_text(sv.group, idx)}}}" for idx in sv.part_indices)
            lines.append(
                f"SUMSET_VIOLATION {sv.kind} {format_group(sv.group)} {parts} "
                f"bound={sv.bound} actual={sv.actual}"
            )
        for om in report.oracle_mismatches:
            lines.append(
                f"ORACLE_MISMATCH {format_group(om[0])} set={{{_set_text(om[0], om[1])}}} k={om[2]}"
            )
        for wf in report.witness_failures:
            why = wf.error if wf.error else "; ".join(f"{name}: {detail}" for name, detail in wf.failures)
            lines.append(
                f"WITNESS_FAILURE {format_group(wf.group)} set={{{_set_text(wf.group, wf.set_indices)}}} "
                f"k={wf.k} ({why})"
            )
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        rows = ["kind,group,set,k,bound,actual,detail"]
        for rep in report.violations:
            rows.append(
                f"violation,{format_group(rep.group)},\"{_set_text(rep.group, rep.set_indices)}\","
                f"{rep.k},{rep.bound},{rep.actual},"
            )
        for sv in report.sumset_violations:
            parts = " + ".join(_set_text(sv.group, idx) for idx in sv.part_indices)
            rows.append(f"{sv.kind},{format_group(sv.group)},\"{parts}\",,{sv.bound},{sv.actual},")
        for om in report.oracle_mismatches:
            rows.append(f"oracle_mismatch,{format_group(om[0])},\"{_set_text(om[0], om[1])}\",{om[2]},,,")
        for wf in report.witness_failures:
            why = wf.error if wf.error else "; ".join(name for name, _ in wf.failures)
            rows.append(
                f"witness_failure,{format_group(wf.group)},\"{_set_text(wf.group, wf.set_indices)}\","
                f"{wf.k},,,\"{why}\""
            )
        for g, a, k in report.equality_cases:
            rows.append(f"equality,{format_group(g)},\"{format_set(a)}\",{k},,,")
        return "\n".join(rows) + "\n"
    if fmt == "json":
        import json

        def line(obj) -> str:
            return json.dumps(obj, sort_keys=True)

        out = [
            line(
                {
                    "record": "summary",
                    "config": _config_line(report.config),
                    "groups": report.groups_checked,
                    "instances": report.instances_checked,
                    "violations": len(report.violations),
                    "sumset_violations": len(report.sumset_violations),
                    "oracle_mismatches": len(report.oracle_mismatches),
                    "witness_failures": len(report.witness_failures),
                    "equality_cases": len(report.equality_cases),
                    "complete": report.complete,
                }
            )
        ]
        for rep in report.violations:
            out.append(
                line(
                    {
                        "record": "violation",
                        "group": format_group(rep.group),
                        "set": list(rep.set_indices),
                        "k": rep.k,
                        "bound": rep.bound,
                        "actual": rep.actual,
                    }
                )
            )
        for sv in report.sumset_violations:
            out.append(
                line(
                    {
                        "record": sv.kind,
                        "group": format_group(sv.group),
                        "parts": [list(idx) for idx in sv.part_indices],
                        "bound": sv.bound,
                        "actual": sv.actual,
                    }
                )
            )
        for om in report.oracle_mismatches:
            out.append(
                line({"record": "oracle_mismatch", "group": format_group(om[0]),
                      "set": list(om[1]), "k": om[2]})
            )
        for wf in report.witness_failures:
            out.append(
                line(
                    {
                        "record": "witness_failure",
                        "group": format_group(wf.group),
                        "set": list(wf.set_indices),
                        "k": wf.k,
                        "failures": [list(f) for f in wf.failures],
                        "error": wf.error,
                    }
                )
            )
        for g, a, k in report.equality_cases:
            out.append(
                line({"record": "equality", "group": format_group(g),
                      "set": sorted(a.indices()), "k": k})
            )
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def _set_text(g: GroupSpec, indices: tuple[int, ...]) -> str:
    from .sets import from_indices

    return format_set(from_indices(g, indices))
