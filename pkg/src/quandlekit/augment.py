"""Augmented quandles and the functor ``Inn`` on surjective homomorphisms."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError, NotSurjectiveError
from .permgroup import GroupHom, PermGroup, Permutation, hom_from_generator_images
from .quandle import Quandle, QuandleHom


@dataclass(frozen=True, eq=False)
class AugmentedQuandle:
    """``(Q, Inn(Q), q -> S_q)``."""

    quandle: Quandle
    group: PermGroup
    augmentation: tuple[Permutation, ...]

    def __call__(self, q: int) -> Permutation:
        return self.augmentation[q]


def augmented(Q: Quandle) -> AugmentedQuandle:
    return AugmentedQuandle(Q, Q.inn, Q.symmetries)


def induced_inn_hom(h: QuandleHom) -> GroupHom:
    """``Inn(h)``: the homomorphism sending ``S_q`` to ``S_{h(q)}``.

    Only defined for surjective ``h``.  The extension from generators to the
    whole group is re-checked for well-definedness; a failure here would
    contradict functoriality and is reported as a consistency error.
    """
    if not h.is_surjective():
        raise NotSurjectiveError("Inn is functorial only on surjections (epis)")
    G = h.source.inn
    images = [h.target.symmetries[h.map[q]] for q in range(h.source.size)]
    hom, witness = hom_from_generator_images(G, images, h.target.size)
    if hom is None:
        raise ConsistencyError("S_q -> S_h(q) does not extend to a homomorphism", witness=witness)
    return hom
