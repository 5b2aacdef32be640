"""Exit criteria. Each test is one criterion; all are exact (zero mismatches)
except the performance envelope, which is pass/fail on its time and memory
budget. A PASS/FAIL line per criterion is printed in the terminal summary."""
import json
import resource
import subprocess
import sys
import time

import numpy as np
import pytest

from twinsieve import cli, oracle
from twinsieve.classifier import candidates, classify_many, merged_sequence_check, verify_parity_law
from twinsieve.forms import find_witness_minus_side, find_witness_plus_side, find_witnesses
from twinsieve.runs import blocked_runs, longest_run
from twinsieve.sieve import SieveConfig, count_twins, enumerate_twins, twin_flags

# Frozen from a plain Eratosthenes sieve before the build (numpy, no forms).
GOLDEN_TWIN_COUNTS = {10**3: 142, 10**4: 810, 10**5: 5330, 10**6: 37915}
GOLDEN_LONGEST_RUN_1E4 = (4071, 82)

N_EQUIV = 10**6


def _side_equivalence(side, scalar, acceptance):
    t0 = time.perf_counter()
    n = np.arange(1, N_EQUIV + 1, dtype=np.int64)
    m = 6 * n - 1 if side == "minus" else 6 * n + 1
    kinds, _, _ = find_witnesses(n, side)
    composite = ~oracle.prime_mask(int(m[-1]))[m]
    mismatches = int(np.count_nonzero((kinds > 0) != composite))
    # the scalar entry point must give the same verdicts as the batched kernel
    sample = range(1, N_EQUIV + 1, 997)
    scalar_bad = sum((scalar(k) is not None) != (kinds[k - 1] > 0) for k in sample)
    elapsed = time.perf_counter() - t0
    acceptance(f"n<=1e6: {mismatches} mismatches, scalar spot-check {scalar_bad} bad, {elapsed:.1f}s (<60s)")
    assert mismatches == 0
    assert scalar_bad == 0
    assert elapsed < 60


def test_c1_minus_side_equivalence(acceptance):
    _side_equivalence("minus", find_witness_minus_side, acceptance)


def test_c2_plus_side_equivalence(acceptance):
    _side_equivalence("plus", find_witness_plus_side, acceptance)


def test_c3_twin_counts(acceptance):
    got = {limit: count_twins(SieveConfig(limit)) for limit in GOLDEN_TWIN_COUNTS}
    ref = {limit: oracle.oracle_twin_count(limit) for limit in GOLDEN_TWIN_COUNTS}
    acceptance(f"sieve {got} oracle {ref}")
    assert got == ref == GOLDEN_TWIN_COUNTS


def test_c4_witness_certificates(acceptance):
    ms = [m for m in candidates(166_667).tolist() if m <= 10**6]
    results = classify_many(ms)
    composites = [c for c in results if not c.is_prime]
    bad = [c.m for c in composites
           if not (c.divisors.m == c.m and c.divisors.d1 * c.divisors.d2 == c.m
                   and 1 < c.divisors.d1 < c.m and 1 < c.divisors.d2 < c.m)]
    wrong = sum(c.is_prime != oracle.oracle_is_prime(c.m) for c in results)
    acceptance(f"{len(composites)} composite certificates for m<=1e6, {len(bad)} invalid, {wrong} verdict errors")
    assert ms[-1] == 999_997 and ms[0] == 5
    assert not bad and wrong == 0


def test_c5_parity_law(acceptance):
    limit = (10**5 - 1) // 6
    report = verify_parity_law(limit)
    acceptance(f"m<={6 * limit + 1}: {report.checked} checked, {report.violation_count} violations")
    assert 6 * limit + 1 <= 10**5 < 6 * (limit + 1) + 1
    assert report.violation_count == 0


def test_c6_merged_sequence(acceptance):
    report = merged_sequence_check(10**4)
    acceptance(f"length {report.length}, {report.primes_checked} primes covered, passed={report.passed}")
    assert report.passed


def test_c7_sieve_robustness(acceptance, capsys):
    limit = 10**5
    reference = [(t.n, t.p, t.q) for t in enumerate_twins(SieveConfig(limit))]
    variants = 0
    for segment_size in (1, 7, 64, 2**20):
        for threads in (1, 8):
            got = [(t.n, t.p, t.q) for t in enumerate_twins(SieveConfig(limit, segment_size, threads))]
            assert got == reference, (segment_size, threads)
            variants += 1
    hashes, outputs = set(), set()
    for threads in ("1", "8"):
        assert cli.main(["bench", "--limit", str(limit), "--threads", threads, "--format", "json"]) == 0
        hashes.add(json.loads(capsys.readouterr().out)["rows"][0]["result_sha256"])
        assert cli.main(["twins", "--limit", str(limit), "--threads", threads, "--quiet"]) == 0
        outputs.add(capsys.readouterr().out)
    acceptance(f"{variants} configurations identical ({len(reference)} pairs); "
               f"{len(hashes)} distinct hash, {len(outputs)} distinct CLI output")
    assert len(hashes) == 1 and len(outputs) == 1


def test_c8_run_analysis(acceptance):
    limit = 10**4
    sieve_run = longest_run(limit)
    # independent per-index witness search, no sieve
    best, start, cur = (0, 0), None, 0
    blocked = np.zeros(limit, dtype=bool)
    for n in range(1, limit + 1):
        if find_witness_minus_side(n) is not None or find_witness_plus_side(n) is not None:
            blocked[n - 1] = True
            cur += 1
            if cur > best[1]:
                best = (n - cur + 1, cur)
        else:
            cur = 0
    twins = twin_flags(SieveConfig(limit))
    from_runs = np.zeros(limit, dtype=bool)
    for r in blocked_runs(limit, witnesses=False):
        from_runs[r.start - 1 : r.end] = True
    partition = bool((twins ^ from_runs).all())
    acceptance(f"sieve longest {(sieve_run.start, sieve_run.length)}, brute force {best}, partition={partition}")
    assert (sieve_run.start, sieve_run.length) == best == GOLDEN_LONGEST_RUN_1E4
    assert np.array_equal(from_runs, blocked) and partition


def test_c9_performance_envelope(acceptance):
    limit = 10**8
    before = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "twinsieve", "bench", "--limit", str(limit), "--format", "json"],
        capture_output=True, text=True, timeout=600,
    )
    wall = time.perf_counter() - t0
    child_rss = max(before, resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss) * 1024
    assert proc.returncode == 0, proc.stderr
    row = json.loads(proc.stdout)["rows"][0]
    acceptance(f"1e8 indices: sieve {row['seconds']:.2f}s, process {wall:.2f}s (<120s), "
               f"peak RSS {child_rss / 2**20:.0f} MiB (<1024), {row['twin_count']} pairs, backend {row['backend']}")
    assert wall < 120
    assert child_rss < 2**30
