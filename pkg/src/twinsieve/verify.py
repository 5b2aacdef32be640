"""Form-based machinery checked against the oracle, one scope at a time."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .classifier import merged_sequence_check, verify_parity_law
from .forms import FormKind, find_witnesses
from .sieve import SieveConfig, twin_flags

SCOPES = ("twins", "classify", "parity", "merged")


@dataclass
class ScopeResult:
    scope: str
    passed: bool
    checked: int
    mismatches: int = 0
    samples: list = field(default_factory=list)
    detail: str = ""


def verify_twins(config: SieveConfig, max_samples: int = 10) -> ScopeResult:
    flags = twin_flags(config)
    report = oracle.compare_twin_flags(config.limit, flags)
    ours = int(np.count_nonzero(flags))
    return ScopeResult(
        "twins",
        report.ok,
        config.limit,
        len(report.mismatches),
        [list(m) for m in report.mismatches[:max_samples]],
        f"sieve count {ours}, oracle count {report.twin_count}",
    )


def side_certificates(limit: int, side: str):
    """Witness search for every n <= limit on one side, with its certificate check.

    Returns ``(m, composite, certified)``: the candidate values, the witness
    search's composite verdicts, and whether each emitted divisor pair
    multiplies back to m with both factors strictly between 1 and m.
    """
    n = np.arange(1, limit + 1, dtype=np.int64)
    m = 6 * n - 1 if side == "minus" else 6 * n + 1
    kinds, xs, ys = find_witnesses(n, side)
    composite = kinds > 0
    certified = np.ones(limit, dtype=np.bool_)
    for kind in FormKind:
        sel = kinds == kind.code
        if not sel.any():
            continue
        sx, sy = kind.signs
        d1 = 6 * xs[sel] + sx
        d2 = 6 * ys[sel] + sy
        mm = m[sel]
        certified[sel] = (d1 * d2 == mm) & (d1 > 1) & (d2 > 1) & (d1 < mm) & (d2 < mm)
    return m, composite, certified


def verify_classify(limit: int, max_samples: int = 10) -> ScopeResult:
    """Witness-based verdicts against the oracle for every m <= 6*limit+1."""
    mask = oracle.prime_mask(6 * limit + 1)
    bad_verdict, bad_cert, samples = 0, 0, []
    for side in ("minus", "plus"):
        m, composite, certified = side_certificates(limit, side)
        wrong = composite != ~mask[m]
        bad_verdict += int(np.count_nonzero(wrong))
        bad_cert += int(np.count_nonzero(composite & ~certified))
        for i in np.flatnonzero(wrong)[: max_samples - len(samples)]:
            samples.append([int(m[i]), "Composite" if composite[i] else "Prime",
                            "Prime" if mask[m[i]] else "Composite"])
    total = bad_verdict + bad_cert
    return ScopeResult("classify", total == 0, 2 * limit, total, samples,
                       f"{bad_verdict} verdict mismatches, {bad_cert} invalid certificates")


def verify_parity(limit: int, max_samples: int = 10) -> ScopeResult:
    report = verify_parity_law(limit, max_violations=max_samples)
    return ScopeResult(
        "parity",
        report.ok,
        report.checked,
        report.violation_count,
        [[v.m, v.alpha, v.beta] for v in report.violations],
        f"alpha odd {report.alpha_odd}, alpha even {report.alpha_even}",
    )


def verify_merged(limit: int) -> ScopeResult:
    report = merged_sequence_check(limit)
    return ScopeResult(
        "merged",
        report.passed,
        report.length,
        0 if report.passed else 1,
        [] if report.passed else [report.first_discrepancy],
        f"{report.primes_checked} primes in [5, {6 * limit + 1}] covered" if report.passed
        else report.first_discrepancy,
    )


def run_scope(scope: str, config: SieveConfig) -> ScopeResult:
    if scope == "twins":
        return verify_twins(config)
    if scope == "classify":
        return verify_classify(config.limit)
    if scope == "parity":
        return verify_parity(config.limit)
    if scope == "merged":
        return verify_merged(config.limit)
    raise ValueError(f"unknown scope {scope!r}")
