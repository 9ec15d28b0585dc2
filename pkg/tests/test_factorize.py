from __future__ import annotations

import itertools

import pytest

from quandlekit.catalog import connected_catalog, enumerate_connected_by_triples, surjections
from quandlekit.errors import DomainError, NotConnectedError, NotSurjectiveError
from quandlekit.factorize import FailureReason, check_agreement, factor_oracle, factor_structural
from quandlekit.quandle import check_hom, identity_hom, is_connected
from quandlekit.quotient import is_realizable_kernel


def _collapse(Q, point):
    return check_hom([0] * Q.size, Q, point)


def _all_surjections(Q, targets):
    for R in targets:
        for f in itertools.product(range(R.size), repeat=Q.size):
            if len(set(f)) < R.size:
                continue
            try:
                yield check_hom(f, Q, R)
            except Exception:
                continue


def test_oracle_examples(R3, point):
    ident = identity_hom(R3)
    g = check_hom([0, 2, 1], R3, R3)
    phi, bad = factor_oracle(g, ident)
    assert bad is None and phi.map == g.map
    phi, bad = factor_oracle(ident, _collapse(R3, point))
    assert phi is None
    q1, q2 = bad
    assert q1 != q2 and ident(q1) != ident(q2)
    phi, bad = factor_oracle(_collapse(R3, point), ident)
    assert phi.map == (0, 0, 0)


def test_preconditions(R3, R4, point):
    with pytest.raises(DomainError):
        factor_oracle(identity_hom(R3), identity_hom(R4))
    not_onto = check_hom([0, 0, 0], R3, R3)
    with pytest.raises(NotSurjectiveError):
        factor_oracle(not_onto, identity_hom(R3))
    with pytest.raises(NotSurjectiveError):
        factor_structural(identity_hom(R3), not_onto)
    with pytest.raises(NotConnectedError):
        factor_structural(identity_hom(R4), identity_hom(R4))
    with pytest.raises(NotConnectedError):
        factor_structural(check_hom([0, 0, 0, 0], R4, point), identity_hom(R4))


def test_structural_examples(R3, point):
    ident = identity_hom(R3)
    for g in _all_surjections(R3, [R3, point]):
        cert = factor_structural(g, ident)
        assert cert.exists and cert.phi.map == g.map
        cert = factor_structural(g, g)
        assert cert.exists and cert.phi.map == tuple(range(g.target.size))
    cert = factor_structural(ident, _collapse(R3, point))
    assert not cert.exists
    assert cert.failure_reason is FailureReason.KERNEL_NOT_CONTAINED
    w = cert.witness
    assert w in cert.pipeline["N1"] and w not in cert.pipeline["N2"]
    assert cert.pipeline["N1"] == R3.inn and cert.pipeline["N2"].is_trivial()


def test_certificate_records_pipeline(R3, point):
    cert = factor_structural(_collapse(R3, point), identity_hom(R3))
    pipe = cert.pipeline
    for key in ("N1", "N2", "quotient_1", "quotient_2", "rigid_1", "rigid_2", "omega", "psi",
                "N", "closure", "closure_ok", "K", "K_image", "L", "eta", "Phi", "descent"):
        assert key in pipe
    assert pipe["closure_ok"] and pipe["stabilizer_ok"]
    assert is_realizable_kernel(R3, pipe["N"]) and pipe["N"] == R3.inn


def test_agreement_on_every_pair_out_of_r3(R3, point):
    homs = list(_all_surjections(R3, [R3, point]))
    assert len(homs) == 7  # six automorphisms and the collapse
    for g, h in itertools.product(homs, repeat=2):
        assert check_agreement(g, h).agree


def test_stabilizer_not_contained():
    found = 0
    for rec in enumerate_connected_by_triples(12, 24):
        Q = rec.quandle
        homs = [h for h in surjections(Q) if is_connected(h.target)]
        for g, h in itertools.product(homs, repeat=2):
            report = check_agreement(g, h)
            assert report.agree
            cert = report.certificate
            if cert.failure_reason is FailureReason.STABILIZER_NOT_CONTAINED:
                assert cert.pipeline["N1"] <= cert.pipeline["N2"]
                assert cert.witness in cert.pipeline["K_image"]
                assert cert.witness not in cert.pipeline["L"]
                assert report.oracle_witness is not None
                found += 1
    assert found > 0


def test_verdict_is_independent_of_base_point():
    for rec in connected_catalog(6):
        Q = rec.quandle
        for g, h in itertools.product(surjections(Q, twisted=True), surjections(Q)):
            verdicts = {factor_structural(g, h, q).exists for q in range(Q.size)}
            assert len(verdicts) == 1


def test_reflexive_and_transitive():
    for rec in connected_catalog():
        homs = surjections(rec.quandle)
        through = {
            (i, j): factor_structural(g, h).exists
            for (i, g), (j, h) in itertools.product(enumerate(homs), repeat=2)
        }
        for i in range(len(homs)):
            assert through[i, i]
        for i, j, k in itertools.product(range(len(homs)), repeat=3):
            if through[i, j] and through[j, k]:
                assert through[i, k]


def test_soundness_of_returned_maps():
    for rec in connected_catalog(7):
        Q = rec.quandle
        for g, h in itertools.product(surjections(Q, twisted=True), surjections(Q)):
            cert = factor_structural(g, h)
            if cert.exists:
                phi = check_hom(cert.phi.map, h.target, g.target)
                assert phi.is_surjective()
                assert tuple(phi(h(q)) for q in range(h.source.size)) == g.map
