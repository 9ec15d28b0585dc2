"""Acceptance suite: one test per criterion, each tagged ``criterion(n)``.

The terminal summary prints one PASS/FAIL line per criterion (see
``conftest.py``).  Time limits are asserted with wall-clock timers.
"""

from __future__ import annotations

import itertools
import json
import time
from collections import Counter
from pathlib import Path

import pytest

from quandlekit.catalog import (
    connected_catalog,
    enumerate_connected_by_triples,
    enumerate_connected_exhaustive,
    enumerate_quandles_exhaustive,
    surjections,
)
from quandlekit.cli import dumps_quandle, main, quandle_from_document
from quandlekit.coset import from_presentation, quotient_presentation, to_presentation
from quandlekit.factorize import check_agreement
from quandlekit.permgroup import all_normal_subgroups, all_subgroups, is_normal
from quandlekit.quandle import is_isomorphic
from quandlekit.quotient import (
    closure_formulas,
    factor_surjection,
    is_congruence,
    is_rigid,
    omega,
    orbits_under,
    realizable_kernels,
)

FIX = Path(__file__).parent / "fixtures"

# exhaustive-oracle counts of connected quandles of order 1..6
CONNECTED_COUNTS = (1, 0, 1, 1, 3, 2)


@pytest.fixture(scope="module")
def catalog():
    return connected_catalog(8)


@pytest.fixture(scope="module")
def all_small():
    return [r.quandle for n in range(1, 7) for r in enumerate_quandles_exhaustive(n)]


@pytest.mark.criterion(1)
def test_oracle_equivalence(catalog, record_property):
    # twisting h only relabels its target, which cannot change whether g
    # factors or what phi does to the source, so h runs over one surjection
    # per kernel partition and g over all of them
    start = time.perf_counter()
    pairs = 0
    reasons = Counter()
    disagreements = []
    for rec in catalog:
        Q = rec.quandle
        hs = surjections(Q)
        for g, h in itertools.product(surjections(Q, twisted=True), hs):
            report = check_agreement(g, h)
            pairs += 1
            cert = report.certificate
            reasons[cert.failure_reason.value if cert.failure_reason else "exists"] += 1
            if not report.agree:
                disagreements.append((Q.table, g.map, h.map, report.details))
    elapsed = time.perf_counter() - start
    record_property("pairs", pairs)
    record_property("outcomes", dict(sorted(reasons.items())))
    record_property("disagreements", len(disagreements))
    record_property("seconds", round(elapsed, 1))
    assert not disagreements, disagreements[:3]
    assert reasons["exists"] and reasons["KernelNotContained"]
    assert elapsed <= 300


@pytest.mark.criterion(2)
def test_closure_formulas_agree(all_small, record_property):
    start = time.perf_counter()
    checked = 0
    for Q in all_small:
        for N in all_normal_subgroups(Q.inn):
            via_kernel, via_stabilizers = closure_formulas(Q, N)
            assert via_kernel == via_stabilizers, (Q.table, N)
            assert N <= via_kernel
            checked += 1
    elapsed = time.perf_counter() - start
    record_property("quandles", len(all_small))
    record_property("pairs", checked)
    record_property("seconds", round(elapsed, 1))
    assert elapsed <= 60


@pytest.mark.criterion(3)
def test_presentation_round_trip(catalog, record_property):
    start = time.perf_counter()
    checked = 0
    for rec in catalog:
        Q = rec.quandle
        for q in range(Q.size):
            p, ident = to_presentation(Q, q)
            R, faithful, _ = from_presentation(p)
            assert faithful
            assert is_isomorphic(R, Q) is not None
            # ident is an explicit isomorphism sending the trivial coset to q
            assert ident[0] == q
            assert all(ident[R.table[i][j]] == Q.table[ident[i]][ident[j]] for i in range(Q.size) for j in range(Q.size))
            checked += 1
    elapsed = time.perf_counter() - start
    record_property("base_points", checked)
    record_property("seconds", round(elapsed, 1))
    assert elapsed <= 60


@pytest.mark.criterion(4)
def test_enumerations_agree(record_property):
    start = time.perf_counter()
    counts = []
    for n in range(1, 7):
        exhaustive = enumerate_connected_exhaustive(n)
        triples = enumerate_connected_by_triples(n)
        assert [r.canonical_form for r in triples] == [r.canonical_form for r in exhaustive], n
        for a, b in zip(triples, exhaustive):
            assert is_isomorphic(a.quandle, b.quandle) is not None
        counts.append(len(exhaustive))
    elapsed = time.perf_counter() - start
    record_property("counts", tuple(counts))
    record_property("seconds", round(elapsed, 1))
    assert tuple(counts) == CONNECTED_COUNTS
    assert elapsed <= 120


@pytest.mark.criterion(5)
def test_omega_iff_containment(catalog, record_property):
    pairs = successes = 0
    for rec in catalog:
        Q = rec.quandle
        kernels = realizable_kernels(Q)
        for N1, N2 in itertools.product(kernels, repeat=2):
            om, witness = omega(Q, N1, N2)
            pairs += 1
            if N1 <= N2:
                assert om is not None and witness is None
                successes += 1
            else:
                assert om is None
                assert witness in N1 and witness not in N2
    record_property("pairs", pairs)
    record_property("contained", successes)


@pytest.mark.criterion(6)
def test_congruence_iff_normal(catalog, record_property):
    checked = 0
    mismatches = []
    for rec in catalog:
        Q = rec.quandle
        if Q.size > 6:
            continue
        for S in all_subgroups(Q.inn):
            congruent, _ = is_congruence(Q, orbits_under(Q, S))
            checked += 1
            if congruent != is_normal(S, Q.inn):
                mismatches.append((Q.size, S.order, len(orbits_under(Q, S))))
    record_property("subgroups", checked)
    record_property("mismatches", len(mismatches))
    if mismatches:
        size, order, blocks = mismatches[0]
        record_property("first", f"order-{size} quandle, non-normal subgroup of order {order} with {blocks} orbit(s)")
    assert not mismatches


@pytest.mark.criterion(7)
def test_surjections_factor_through_orbit_quotient(catalog, record_property):
    checked = 0
    for rec in catalog:
        for h in surjections(rec.quandle, twisted=True):
            fac = factor_surjection(h)
            assert fac.g_N.then(fac.f).map == h.map
            assert is_rigid(fac.f)
            assert fac.g_N.target.size == len(orbits_under(h.source, fac.kernel))
            checked += 1
    record_property("surjections", checked)


@pytest.mark.criterion(8)
def test_quotient_presentation_checks(catalog, record_property):
    checked = 0
    for rec in catalog:
        Q = rec.quandle
        p, _ = to_presentation(Q, 0)
        for N in realizable_kernels(Q):
            _, report = quotient_presentation(p, N)
            assert report.all_passed(), (Q.table, N, report)
            checked += 1
    record_property("pairs", checked)


@pytest.mark.criterion(9)
def test_inn_abelian_iff_trivial(catalog, record_property):
    abelian = 0
    for rec in catalog:
        Q = rec.quandle
        assert Q.inn.is_abelian() == Q.inn.is_trivial()
        abelian += Q.inn.is_abelian()
    record_property("quandles", len(catalog))
    record_property("abelian", abelian)


@pytest.mark.criterion(10)
def test_cli_contract(catalog, tmp_path, capsys, record_property):
    table = [
        (["validate", "r3.json"], 0),
        (["validate", "malformed.json"], 1),
        (["validate", "non_square.json"], 1),
        (["validate", "out_of_range.json"], 1),
        (["validate", "missing_table.json"], 1),
        (["validate", "bad_axiom_i.json"], 2),
        (["validate", "bad_axiom_ii.json"], 2),
        (["validate", "bad_axiom_iii.json"], 2),
        (["inn", "r4.json"], 0),
        (["present", "r4.json"], 3),
        (["present", "q12.json"], 0),
        (["closure", "r3.json", "--subgroup", "(1 2)"], 4),
        (["closure", "r3.json", "--subgroup", "(0 1 2)"], 0),
        (["factor", "hom_r3_collapse.json", "hom_r3_identity.json"], 0),
        (["factor", "hom_r3_identity.json", "hom_r3_collapse.json"], 5),
        (["factor", "hom_q12_identity.json", "hom_q12_q6.json"], 5),
        (["factor", "hom_r4_identity.json", "hom_r4_identity.json"], 6),
        (["factor", "hom_r3_t3_not_hom.json", "hom_r3_identity.json"], 6),
        (["factor", "hom_r3_constant.json", "hom_r3_identity.json"], 6),
        (["factor", "hom_missing_file.json", "hom_r3_identity.json"], 1),
    ]
    files = {a for argv, _ in table for a in argv if a.endswith(".json")}
    assert len(files) >= 12
    codes = set()
    for argv, expected in table:
        args = [str(FIX / a) if a.endswith(".json") else a for a in argv]
        code = main(args + ["--json"])
        doc = json.loads(capsys.readouterr().out)
        assert code == expected == doc["exit_code"], argv
        codes.add(code)
    assert codes == set(range(7))

    assert main(["enumerate", "5", "--method", "both", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    exports = 0
    for rec in catalog:
        text = dumps_quandle(rec.quandle, name=f"q{exports}")
        path = tmp_path / f"q{exports}.json"
        path.write_text(text)
        doc = json.loads(path.read_text())
        assert dumps_quandle(quandle_from_document(doc), name=doc["name"]) == text
        exports += 1
    for path in sorted(tmp_path.glob("connected_5_*.json")):
        doc = json.loads(path.read_text())
        assert dumps_quandle(quandle_from_document(doc), name=doc["name"]) == path.read_text()
        exports += 1
    record_property("fixture_files", len(files))
    record_property("exit_codes", sorted(codes))
    record_property("round_trips", exports)
