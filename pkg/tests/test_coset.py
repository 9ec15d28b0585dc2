from __future__ import annotations

import pytest

from conftest import p
from quandlekit.catalog import connected_catalog, enumerate_connected_by_triples, special_linear_2_3
from quandlekit.coset import (
    action_kernel,
    check_presentation,
    from_presentation,
    make_presentation,
    phi,
    quotient_presentation,
    rigid_iff_closure,
    rigid_quotient_of_presentation,
    to_presentation,
)
from quandlekit.errors import DomainError, NotConnectedError, NotRealizableError, PresentationError
from quandlekit.permgroup import (
    Permutation,
    all_subgroups,
    center,
    find_group_isomorphism,
    generate,
    quotient_group,
    trivial_group,
)
from quandlekit.quandle import is_connected, is_isomorphic, orbits
from quandlekit.quotient import is_rigid, orbit_quotient, realizable_kernels

CONNECTED = [r.quandle for r in connected_catalog()]


def _order12():
    """The order-12 connected quandle from S4 with stabilizer <(2 3)>."""
    for rec in enumerate_connected_by_triples(12, 24):
        if rec.provenance.detail["group"] == "symmetric(4)" and rec.quandle.inn.order == 24:
            p0, _ = to_presentation(rec.quandle, 0)
            for K in all_subgroups(p0.group):
                if p0.stabilizer < K and rigid_quotient_of_presentation(p0, K)[0] is not None:
                    return rec.quandle
    raise AssertionError("order-12 quandle with a proper rigid quotient not found")


def test_to_presentation_examples(R3, point):
    pp, ident = to_presentation(point, 0)
    assert pp.group.is_trivial() and pp.stabilizer.is_trivial() and pp.eta.is_identity()
    pr, ident = to_presentation(R3, 0)
    assert pr.group.order == 6
    assert set(pr.stabilizer.elements) == {p("()", 3), p("(1 2)", 3)}
    assert pr.eta == p("(1 2)", 3) and pr.size == 3
    assert pr.cosets[0].members == pr.stabilizer.element_set
    pr1, _ = to_presentation(R3, 1)
    assert set(pr1.stabilizer.elements) == {p("()", 3), p("(0 2)", 3)}
    assert pr1.eta == p("(0 2)", 3)


def test_to_presentation_needs_connected(R4):
    with pytest.raises(NotConnectedError) as exc:
        to_presentation(R4, 0)
    assert exc.value.witness == orbits(R4)


def test_from_presentation_examples(R3, S3):
    H = generate(3, [p("(1 2)", 3)])
    Q, faithful, kernel = from_presentation(make_presentation(S3, H, p("(1 2)", 3)))
    assert is_isomorphic(Q, R3) is not None and faithful and kernel.is_trivial()
    Q, faithful, _ = from_presentation(make_presentation(trivial_group(1), trivial_group(1), Permutation.identity(1)))
    assert Q.size == 1 and faithful
    with pytest.raises(PresentationError, match="generate"):
        from_presentation(make_presentation(S3, S3, Permutation.identity(3)))


def test_presentation_requirements(S3):
    with pytest.raises(PresentationError, match="not in the stabilizer"):
        check_presentation(make_presentation(S3, trivial_group(3), p("(1 2)", 3)))
    with pytest.raises(PresentationError, match="central"):
        check_presentation(make_presentation(S3, S3, p("(1 2)", 3)))
    with pytest.raises(DomainError):
        make_presentation(generate(3, [p("(1 2)", 3)]), S3, p("(1 2)", 3))


def test_operation_formula_by_coset_arithmetic():
    for Q in CONNECTED:
        pr, _ = to_presentation(Q, 0)
        table = pr.table()
        for i, a in enumerate(pr.cosets):
            for j, b in enumerate(pr.cosets):
                g, c = a.representative, b.representative
                product = g * c.inverse() * pr.eta * c
                assert product in pr.cosets[table[i][j]].members
                # any representatives give the same coset
                for g2 in list(a.members)[:2]:
                    for c2 in list(b.members)[:2]:
                        assert g2 * c2.inverse() * pr.eta * c2 in pr.cosets[table[i][j]].members


def test_round_trip_and_faithfulness_every_base_point():
    for Q in CONNECTED:
        for q in range(Q.size):
            pr, ident = to_presentation(Q, q)
            assert pr.eta == Q.symmetries[q]
            assert pr.eta in center(pr.stabilizer)
            assert action_kernel(pr).is_trivial()
            R, faithful, _ = from_presentation(pr)
            assert faithful and is_isomorphic(R, Q) is not None
            # coset i is q . g for g in coset i
            assert ident[0] == q


def test_base_point_independence():
    for Q in CONNECTED:
        p0, _ = to_presentation(Q, 0)
        R0, _, _ = from_presentation(p0)
        for q in range(1, Q.size):
            pq, _ = to_presentation(Q, q)
            g = next(g for g in Q.inn.elements if g[0] == q)
            # stabilizer and eta move by conjugation
            assert pq.stabilizer.element_set == {g.inverse() * h * g for h in p0.stabilizer.elements}
            assert pq.eta == g.inverse() * p0.eta * g
            assert is_isomorphic(from_presentation(pq)[0], R0) is not None


def test_non_faithful_presentation_has_inn_of_the_quotient():
    G = special_linear_2_3().group()
    x = p("(0 1)(2 6 3 5 4 7)", 8)
    H = generate(8, [x])
    eta = p("(2 3 4)(5 7 6)", 8)
    pr = make_presentation(G, H, eta)
    Q, faithful, kernel = from_presentation(pr)
    assert not faithful and kernel.order == 2 and Q.size == 4
    GN, _ = quotient_group(G, kernel)
    assert find_group_isomorphism(GN, Q.inn) is not None
    assert Q.inn.order == 12


def test_quotient_presentation_examples(R3):
    pr, _ = to_presentation(R3, 0)
    p1, report = quotient_presentation(pr, trivial_group(3))
    assert report.all_passed() and p1.size == 3 and p1.group.order == 6
    p1, report = quotient_presentation(pr, R3.inn)
    assert report.all_passed() and p1.size == 1 and p1.group.is_trivial()
    with pytest.raises(NotRealizableError):
        quotient_presentation(pr, generate(3, [p("(0 1 2)", 3)]))


def test_quotient_presentation_over_proper_kernels():
    proper = 0
    for Q in CONNECTED + [r.quandle for r in enumerate_connected_by_triples(9, 18)]:
        pr, _ = to_presentation(Q, 0)
        for N in realizable_kernels(Q):
            p1, report = quotient_presentation(pr, N)
            assert report.all_passed()
            assert p1.size == orbit_quotient(Q, N).quotient.size
            if not N.is_trivial() and N != Q.inn:
                proper += 1
    assert proper > 0


def test_rigid_quotient_examples(R3):
    pr, _ = to_presentation(R3, 0)
    c, why = rigid_quotient_of_presentation(pr, pr.stabilizer)
    assert c.map == (0, 1, 2)
    c, why = rigid_quotient_of_presentation(pr, pr.group)
    assert c is None and why[0] == "eta is not central in K"
    c, why = rigid_quotient_of_presentation(pr, trivial_group(3))
    assert c is None and why[0] == "stabilizer not contained in K"
    with pytest.raises(DomainError):
        rigid_quotient_of_presentation(pr, trivial_group(4))


def test_proper_rigid_quotient():
    Q = _order12()
    pr, _ = to_presentation(Q, 0)
    found = []
    for K in all_subgroups(pr.group):
        if pr.stabilizer < K:
            c, _ = rigid_quotient_of_presentation(pr, K)
            if c is not None:
                assert is_rigid(c) and c.target.size < Q.size
                assert is_connected(c.target)
                found.append(c)
    assert found


def test_rigid_iff_closure_examples(R3):
    pr, _ = to_presentation(R3, 0)
    for N in realizable_kernels(R3):
        assert rigid_iff_closure(pr, pr.stabilizer, N)
    Q = _order12()
    pr, _ = to_presentation(Q, 0)
    for K in all_subgroups(pr.group):
        if pr.stabilizer <= K and rigid_quotient_of_presentation(pr, K)[0] is not None:
            assert rigid_iff_closure(pr, K, trivial_group(Q.size))
            for N in realizable_kernels(Q):
                rigid_iff_closure(pr, K, N)  # both deciders agree or this raises
    with pytest.raises(DomainError):
        rigid_iff_closure(pr, pr.group, trivial_group(Q.size))


def test_phi_examples(R3, S3):
    pr, _ = to_presentation(R3, 0)
    H, eta = pr.stabilizer, pr.eta
    Phi, bad = phi(S3, H, H, eta, H=H)
    assert bad is None and Phi.map == (0, 1, 2)
    # the trivial subgroup cannot carry eta = (1 2), so that presentation is rejected
    with pytest.raises(PresentationError):
        phi(S3, trivial_group(3), H, eta)
    Q = _order12()
    pr, _ = to_presentation(Q, 0)
    rigid = [K for K in all_subgroups(pr.group)
             if pr.stabilizer <= K and rigid_quotient_of_presentation(pr, K)[0] is not None]
    for K in rigid:
        for L in rigid:
            Phi, bad = phi(pr.group, K, L, pr.eta, H=pr.stabilizer)
            if K <= L:
                assert Phi is not None and is_rigid(Phi)
            else:
                assert Phi is None and bad in K and bad not in L
    assert any(not K <= L for K in rigid for L in rigid)
