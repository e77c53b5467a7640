"""One test per acceptance criterion; each records a PASS/FAIL line that the
conftest prints in the terminal summary."""

import random
import time

import pytest

from twistcube.audits import (
    adjacent_pair_identity_audit,
    book_lemma_check,
    local_structure_audit,
    neighborhood_bound_audit,
    p2_isolating_family_audit,
    star_family_edge_audit,
)
from twistcube.claims import Cell, cells, run_cell
from twistcube.core import phi_bits
from twistcube.structures import Shape, superscript
from twistcube.topology import ImplicitTopology, build_recursive, equivalence_check

pytestmark = pytest.mark.slow


def _run(claim, lo, hi):
    reports = [run_cell(c) for c in cells(claim, lo, hi)]
    for r in reports:
        print(r.to_line())
    return reports


def _check(record, number, text, limit_s, body):
    t0 = time.perf_counter()
    failures = body()
    elapsed = time.perf_counter() - t0
    if limit_s is not None and elapsed >= limit_s:
        failures.append(f"took {elapsed:.1f}s, limit {limit_s}s")
    record(number, not failures, text, elapsed)
    assert not failures, failures


def _failed(reports):
    return [r.to_line() for r in reports if not r.passed]


def test_criterion_1_vertex_connectivity(record_criterion):
    _check(record_criterion, 1, "kappa(H_n) = n, n = 3..7, max-flow", 10,
           lambda: _failed(_run("conn", 3, 7)))


def test_criterion_2_one_extra(record_criterion):
    _check(record_criterion, 2, "kappa_1(H_n) = 2n-2, n = 3..6", 120,
           lambda: _failed(_run("lem-kappa1", 3, 6)))


def test_criterion_3_two_extra(record_criterion):
    _check(record_criterion, 3, "kappa_2(H_n) = 3n-5, n = 5..6", 600,
           lambda: _failed(_run("lem-kappa2", 5, 6)))


def test_criterion_4_k13(record_criterion):
    _check(record_criterion, 4, "K1,3 structure and substructure = ceil(n/2), n = 4..6", 900,
           lambda: _failed(_run("thm-k13", 4, 6)))


def test_criterion_5_k14(record_criterion):
    _check(record_criterion, 5, "K1,4 structure and substructure = ceil(n/2), n = 4..6", 900,
           lambda: _failed(_run("thm-k14", 4, 6)))


def test_criterion_6_p2(record_criterion):
    def body():
        failures = _failed(_run("thm-p2", 4, 6))
        fam = p2_isolating_family_audit(100, samples=50, seed=0)
        book = book_lemma_check(100, samples=50, seed=0)
        print(fam.to_line())
        print(book.to_line())
        if not (fam.passed and book.passed and book.params["regime"] == "no-book"):
            failures += [fam.to_line(), book.to_line()]
        return failures

    _check(record_criterion, 6, "P2 = n-1 for n = 4..6; n = 100 family and book audits", None, body)


def test_criterion_7_pk(record_criterion):
    def body():
        reports = _run("thm-pk", 4, 6)
        covered = {(r.params["n"], r.params["k"]) for r in reports}
        want = {(n, k) for n in range(4, 7) for k in range(3, n + 1)}
        return _failed(reports) + ([f"missing cells {want - covered}"] if covered != want else [])

    _check(record_criterion, 7, "Pk = ceil(2n/(k+1)) odd k, ceil(2n/k) even k, 3 <= k <= n, n = 4..6",
           None, body)


def test_criterion_8_property_suites(record_criterion):
    def body():
        failures = []
        for n in range(1, 13):
            if any(phi_bits(phi_bits(x, n), n) != x for x in range(1 << n)):
                failures.append(f"phi involution n={n}")
        rng = random.Random(0)
        for _ in range(10_000):
            n = rng.randint(1, 128)
            x = rng.getrandbits(n)
            if phi_bits(phi_bits(x, n), n) != x:
                failures.append(f"phi involution n={n} x={x}")
                break
        reports = []
        for n in range(1, 9):
            reports.append(local_structure_audit(build_recursive(n)))
            reports.append(adjacent_pair_identity_audit(build_recursive(n)))
        for n in range(9, 65):
            reports.append(adjacent_pair_identity_audit(ImplicitTopology(n), samples=20, seed=n))
        for n in range(1, 11):
            reports.append(equivalence_check(n))
        for n in range(3, 6):
            topo = build_recursive(n)
            shapes = [Shape("star", r) for r in range(1, n + 1)]
            shapes += [Shape("path", k) for k in range(1, n + 1)]
            reports += [neighborhood_bound_audit(topo, s) for s in shapes]
            reports.append(star_family_edge_audit(topo))
        topo = build_recursive(6)
        for s in [Shape("star", r) for r in range(1, 7)] + [Shape("path", k) for k in range(1, 7)]:
            reports.append(neighborhood_bound_audit(topo, s, samples=300, seed=0))
        reports.append(star_family_edge_audit(topo, samples=300, seed=0))
        return failures + _failed(reports)

    _check(record_criterion, 8, "property suites: zero violations", None, body)


WORKED = {
    "1": "1010", "2": "0110", "3": "0000", "4": "0011", "1,1": "1110", "2,1*": "1110",
    "2,1": "0100", "3,1": "0001", "3,1*": "1000", "4,1*": "1111", "2,1,1*": "1100",
    "3,1,1*": "1101",
}


def test_criterion_9_worked_example(record_criterion):
    def body():
        return [f"u^{{{c}}} = {superscript('0010', c)} != {want}"
                for c, want in WORKED.items() if str(superscript("0010", c)) != want]

    _check(record_criterion, 9, "u = 0010 worked example, eleven values bit-exact", None, body)
