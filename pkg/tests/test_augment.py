from __future__ import annotations

import pytest

from quandlekit.augment import augmented, induced_inn_hom
from quandlekit.catalog import connected_catalog, surjections
from quandlekit.errors import NotSurjectiveError
from quandlekit.permgroup import Permutation
from quandlekit.quandle import check_hom, identity_hom, trivial_quandle
from quandlekit.quotient import orbit_quotient

from conftest import p


def test_augmented_examples(R3, point):
    A = augmented(point)
    assert A.group.is_trivial() and A.augmentation == (Permutation.identity(1),)
    A = augmented(R3)
    assert A.group.order == 6
    assert list(A.augmentation) == [p("(1 2)", 3), p("(0 2)", 3), p("(0 1)", 3)]
    assert all(s in A.group for s in A.augmentation)
    A = augmented(trivial_quandle(3))
    assert A.group.is_trivial() and all(s.is_identity() for s in A.augmentation)


def test_induced_inn_hom_examples(R3, point):
    f = induced_inn_hom(identity_hom(R3))
    assert f.kernel.is_trivial()
    assert all(f(g) == g for g in R3.inn.elements)
    collapse = check_hom([0, 0, 0], R3, point)
    assert induced_inn_hom(collapse).kernel.order == 6
    oq = orbit_quotient(R3, R3.inn)
    assert oq.quotient.size == 1
    assert induced_inn_hom(oq.projection).kernel == R3.inn


def test_induced_inn_hom_needs_surjection(R3):
    with pytest.raises(NotSurjectiveError, match="epi"):
        induced_inn_hom(check_hom([0, 0, 0], R3, R3))


def _surjection_chains():
    for rec in connected_catalog():
        for h1 in surjections(rec.quandle):
            for h2 in surjections(h1.target):
                yield h1, h2


def test_functoriality():
    count = 0
    for h1, h2 in _surjection_chains():
        f1, f2 = induced_inn_hom(h1), induced_inn_hom(h2)
        f12 = induced_inn_hom(h1.then(h2))
        for g in h1.source.inn.elements:
            assert f12(g) == f2(f1(g))
        count += 1
    assert count > 16


def test_equivariance_and_naturality():
    for rec in connected_catalog():
        for h in surjections(rec.quandle):
            f = induced_inn_hom(h)
            Q, R = h.source, h.target
            for q in range(Q.size):
                assert f(Q.symmetries[q]) == R.symmetries[h(q)]
                for g in Q.inn.elements:
                    assert h(g[q]) == f(g)[h(q)]
            assert f.image.order == R.inn.order
