"""Connected quandles as right-coset spaces ``H\\G``.

A triple ``(G, H, eta)`` with ``eta`` central in ``H`` and whose conjugates
generate ``G`` defines a connected quandle on the right cosets of ``H``:

    Hg |> Hc = H g c^-1 eta c

(products read left to right, as in :mod:`permgroup`).  Conversely every
connected quandle arises this way from ``G = Inn(Q)``, the stabilizer of a
base point, and the symmetry at that point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .augment import induced_inn_hom
from .errors import (
    AxiomError,
    ConsistencyError,
    DomainError,
    HomomorphismError,
    NotConnectedError,
    NotRealizableError,
    PresentationError,
)
from .permgroup import (
    Coset,
    GroupHom,
    PermGroup,
    Permutation,
    centralizes,
    generate,
    hom_from_generator_images,
    point_stabilizer,
    quotient_group,
    right_cosets,
    subgroup,
)
from .quandle import Quandle, QuandleHom, check_hom, is_connected, is_isomorphic, orbits, validate
from .quotient import is_rigid, orbit_quotient, realizable_closure


@dataclass(frozen=True, eq=False)
class CosetPresentation:
    group: PermGroup
    stabilizer: PermGroup
    eta: Permutation
    cosets: tuple[Coset, ...]
    base_point: int | None = None

    @cached_property
    def _lookup(self) -> dict[Permutation, int]:
        return {g: i for i, c in enumerate(self.cosets) for g in c.members}

    @property
    def size(self) -> int:
        return len(self.cosets)

    def coset_of(self, g: Permutation) -> int:
        return self._lookup[g]

    def representative(self, i: int) -> Permutation:
        return self.cosets[i].representative

    def augmentation(self, i: int) -> Permutation:
        """``|Hg| = g^-1 eta g``."""
        g = self.cosets[i].representative
        return g.inverse() * self.eta * g

    def operation(self, i: int, j: int) -> int:
        g, c = self.cosets[i].representative, self.cosets[j].representative
        return self.coset_of(g * c.inverse() * self.eta * c)

    def table(self) -> list[list[int]]:
        return [[self.operation(i, j) for j in range(self.size)] for i in range(self.size)]


def make_presentation(G: PermGroup, H: PermGroup, eta: Permutation, base_point: int | None = None) -> CosetPresentation:
    if not H <= G:
        raise DomainError("stabilizer is not a subgroup of the group")
    return CosetPresentation(G, H, eta, tuple(right_cosets(H, G)), base_point)


def presentation_violation(p: CosetPresentation) -> tuple[str, object] | None:
    """The first failed requirement as ``(reason, witness)``, else ``None``."""
    if p.eta not in p.stabilizer:
        return "eta is not in the stabilizer", p.eta
    h = centralizes(p.eta, p.stabilizer)
    if h is not None:
        return "eta is not central in the stabilizer", h
    conj = {g.inverse() * p.eta * g for g in p.group.elements}
    generated = generate(p.group.degree, sorted(conj))
    if generated.order != p.group.order:
        return "conjugates of eta do not generate the group", generated.order
    return None


def check_presentation(p: CosetPresentation) -> None:
    bad = presentation_violation(p)
    if bad is not None:
        raise PresentationError(bad[0], witness=bad[1])


def action_on_cosets(p: CosetPresentation) -> GroupHom:
    """Right multiplication of ``G`` on ``H\\G`` as a homomorphism."""
    reps = [c.representative for c in p.cosets]
    images = [
        Permutation._trusted(tuple(p.coset_of(r * g) for r in reps)) for g in p.group.generators
    ]
    hom, witness = hom_from_generator_images(p.group, images, p.size)
    if hom is None:
        raise ConsistencyError("right multiplication on cosets is not an action", witness=witness)
    return hom


def action_kernel(p: CosetPresentation) -> PermGroup:
    """``{g : Hc g = Hc for every c}``, straight from the definition."""
    reps = [c.representative for c in p.cosets]
    return subgroup(
        p.group.degree,
        (g for g in p.group.elements if all(p.coset_of(r * g) == i for i, r in enumerate(reps))),
    )


def to_presentation(Q: Quandle, q: int = 0) -> tuple[CosetPresentation, list[int]]:
    """Present a connected ``Q`` as ``H\\G`` at base point ``q``.

    ``G = Inn(Q)``, ``H`` the stabilizer of ``q`` and ``eta = S_q``.  The
    returned list sends coset ``i`` (``= H g``) to ``q . g``.
    """
    if not is_connected(Q):
        raise NotConnectedError("coset presentations need a connected quandle", witness=orbits(Q))
    if not 0 <= q < Q.size:
        raise DomainError(f"base point {q} out of range")
    G = Q.inn
    H = point_stabilizer(q, G)
    eta = Q.symmetries[q]
    p = make_presentation(G, H, eta, q)
    ident = [p.representative(i)[q] for i in range(p.size)]

    bad = presentation_violation(p)
    if bad is not None:
        raise ConsistencyError(f"structure of a connected quandle violated: {bad[0]}", witness=bad[1])
    if not action_kernel(p).is_trivial():
        raise ConsistencyError("Inn(Q) does not act faithfully on the cosets")
    if sorted(ident) != list(range(Q.size)):
        raise ConsistencyError("cosets are not in bijection with Q")
    for g in G.generators:
        for i in range(p.size):
            if ident[p.coset_of(p.representative(i) * g)] != g[ident[i]]:
                raise ConsistencyError("identification is not equivariant", witness=(i, g))
    for i in range(p.size):
        if p.augmentation(i) != Q.symmetries[ident[i]]:
            raise ConsistencyError("augmentation of a coset differs from the symmetry", witness=i)
        for j in range(p.size):
            if ident[p.operation(i, j)] != Q.table[ident[i]][ident[j]]:
                raise ConsistencyError("coset operation formula fails", witness=(i, j))
    return p, ident


def from_presentation(p: CosetPresentation) -> tuple[Quandle, bool, PermGroup]:
    """Build the quandle on ``H\\G``.

    Returns ``(quandle, faithful, N)`` where ``N`` is the kernel of the
    action of ``G`` on the cosets; ``Inn`` of the quandle is checked to be the
    image of that action, i.e. ``G/N``.
    """
    check_presentation(p)
    try:
        Q = validate(p.table())
    except AxiomError as exc:
        raise ConsistencyError(f"coset table fails axiom {exc.axiom}", witness=exc.witness) from exc
    if not is_connected(Q):
        raise ConsistencyError("coset quandle is not connected")
    kernel = action_kernel(p)
    act = action_on_cosets(p)
    if act.kernel != kernel:
        raise ConsistencyError("action kernel disagrees with its definition")
    if act.image != Q.inn:
        raise ConsistencyError("Inn of the coset quandle is not the image of G")
    faithful = kernel.is_trivial()
    if faithful and Q.inn.order != p.group.order:
        raise ConsistencyError("faithful action but |Inn| != |G|")
    return Q, faithful, kernel


@dataclass
class QuotientPresentationReport:
    """Outcome of each of the five checks on ``(G/N, HN/N, eta N)``."""

    stabilizer_is_HN_mod_N: bool
    augmentation_is_eta_N: bool
    eta_N_central: bool
    augmentations_are_conjugates: bool
    conjugates_generate: bool
    quotient_matches_orbit_quotient: bool
    details: dict = field(default_factory=dict)

    def all_passed(self) -> bool:
        return all(
            (
                self.stabilizer_is_HN_mod_N,
                self.augmentation_is_eta_N,
                self.eta_N_central,
                self.augmentations_are_conjugates,
                self.conjugates_generate,
                self.quotient_matches_orbit_quotient,
            )
        )


def _transport(hom: GroupHom, N: PermGroup) -> PermGroup:
    return subgroup(hom.target_degree, {hom(n) for n in N.elements})


def quotient_presentation(p: CosetPresentation, N: PermGroup) -> tuple[CosetPresentation, QuotientPresentationReport]:
    """Presentation ``(G/N, HN/N, eta N)`` of the orbit quotient ``(H\\G)/N``.

    ``p`` must be faithful and ``N`` a realizable kernel of its quandle.
    Each of the five structural facts about the quotient is checked against
    an independent computation on the orbit quotient itself.
    """
    Q, faithful, _ = from_presentation(p)
    if not faithful:
        raise PresentationError("quotient presentations need a faithful presentation")
    G, H, eta = p.group, p.stabilizer, p.eta
    if not N <= G:
        raise DomainError("N is not a subgroup of G")
    act = action_on_cosets(p)
    N_Q = _transport(act, N)
    closure = realizable_closure(Q, N_Q)
    if closure != N_Q:
        extra = min(g for g in closure.elements if g not in N_Q)
        raise NotRealizableError("N is not a realizable kernel of H\\G", witness=extra)

    GN, pi = quotient_group(G, N)
    H1 = subgroup(GN.degree, {pi[h] for h in H.elements})
    eta1 = pi[eta]
    p1 = make_presentation(GN, H1, eta1)

    oq = orbit_quotient(Q, N_Q)
    inn_c = induced_inn_hom(oq.projection)
    beta = {g: inn_c(act(g)) for g in G.elements}
    fibres: dict[Permutation, set[Permutation]] = {}
    for g, v in beta.items():
        fibres.setdefault(v, set()).add(g)
    b0 = oq.block_of[0]

    stab = {pi[g] for g in G.elements if beta[g][b0] == b0}
    check1 = stab == set(H1.elements)

    eta_N = {eta * n for n in N.elements}
    check2 = fibres.get(oq.quotient.symmetries[b0], set()) == eta_N

    check3 = centralizes(eta1, H1) is None

    check4 = True
    bad4 = None
    for g in G.elements:
        b = beta[g][b0]
        conj = g.inverse() * eta * g
        if fibres.get(oq.quotient.symmetries[b], set()) != {conj * n for n in N.elements}:
            check4, bad4 = False, g
            break

    conj_images = {pi[g.inverse() * eta * g] for g in G.elements}
    check5 = generate(GN.degree, sorted(conj_images)).order == GN.order

    rebuilt = None
    if check3 and check5:
        rebuilt, _, _ = from_presentation(p1)
    check6 = rebuilt is not None and is_isomorphic(rebuilt, oq.quotient) is not None

    report = QuotientPresentationReport(
        check1,
        check2,
        check3,
        check4,
        check5,
        check6,
        details={
            "quotient_order": GN.order,
            "H1_order": H1.order,
            "stabilizer_order": len(stab),
            "first_bad_augmentation": bad4,
        },
    )
    if not report.all_passed():
        raise ConsistencyError("quotient presentation checks failed", witness=report)
    return p1, report


def rigid_quotient_of_presentation(p: CosetPresentation, K: PermGroup) -> tuple[QuandleHom | None, tuple | None]:
    """The map ``Hg -> Kg`` from ``H\\G`` onto ``K\\G`` when it is a rigid quotient.

    Needs ``H <= K``, ``eta`` central in ``K`` and ``G`` faithful on ``K\\G``;
    otherwise returns ``(None, (reason, witness))``.
    """
    G, H, eta = p.group, p.stabilizer, p.eta
    if not K <= G:
        raise DomainError("K is not a subgroup of G")
    if not H <= K:
        return None, ("stabilizer not contained in K", min(h for h in H.elements if h not in K))
    k = centralizes(eta, K)
    if k is not None:
        return None, ("eta is not central in K", k)
    pK = make_presentation(G, K, eta)
    kernel = action_kernel(pK)
    if not kernel.is_trivial():
        return None, ("G does not act faithfully on K\\G", kernel.elements[1])
    source, _, _ = from_presentation(p)
    target, _, _ = from_presentation(pK)
    mapping = [pK.coset_of(p.representative(i)) for i in range(p.size)]
    try:
        c = check_hom(mapping, source, target)
    except HomomorphismError as exc:
        raise ConsistencyError("Hg -> Kg is not a homomorphism", witness=exc.witness) from exc
    if not is_rigid(c):
        raise ConsistencyError("Hg -> Kg is not rigid despite a faithful action")
    return c, None


def rigid_iff_closure(p: CosetPresentation, K: PermGroup, N: PermGroup) -> bool:
    """Whether ``c_N: (H\\G)/N -> (K\\G)/N`` is rigid, decided by ``N == N^(K\\G)``.

    The induced map is also built and tested for rigidity directly; the two
    answers must agree.
    """
    c, why = rigid_quotient_of_presentation(p, K)
    if c is None:
        raise DomainError(f"Hg -> Kg is not a rigid quotient: {why[0]}", witness=why[1])
    pK = make_presentation(p.group, K, p.eta)
    act_H = action_on_cosets(p)
    act_K = action_on_cosets(pK)
    N_H = _transport(act_H, N)
    N_K = _transport(act_K, N)
    if realizable_closure(c.source, N_H) != N_H:
        raise DomainError("N is not a realizable kernel of H\\G")
    verdict = realizable_closure(c.target, N_K) == N_K

    oq_H = orbit_quotient(c.source, N_H)
    oq_K = orbit_quotient(c.target, N_K)
    mapping = []
    for block in oq_H.blocks:
        values = {oq_K.block_of[c.map[x]] for x in block}
        if len(values) != 1:
            raise ConsistencyError("c does not descend to the orbit quotients", witness=block)
        mapping.append(values.pop())
    c_N = check_hom(mapping, oq_H.quotient, oq_K.quotient)
    direct = is_rigid(c_N)
    if direct != verdict:
        raise ConsistencyError(
            "closure criterion and direct rigidity test disagree", witness=(verdict, direct)
        )
    return verdict


def phi(
    G: PermGroup, K: PermGroup, L: PermGroup, eta: Permutation, H: PermGroup | None = None
) -> tuple[QuandleHom | None, Permutation | None]:
    """``Kg -> Lg`` from ``K\\G`` to ``L\\G`` when ``K <= L``.

    Returns ``(Phi, None)`` or ``(None, a)`` with ``a`` in ``K`` but not ``L``.
    When ``H`` is given, the triangle ``Phi . (Hg -> Kg) = (Hg -> Lg)`` is
    checked as well.
    """
    for name, S in (("K", K), ("L", L)):
        if not S <= G:
            raise DomainError(f"{name} is not a subgroup of G")
    pK = make_presentation(G, K, eta)
    pL = make_presentation(G, L, eta)
    check_presentation(pK)
    check_presentation(pL)
    if not K <= L:
        return None, min(a for a in K.elements if a not in L)
    source, faithful_K, _ = from_presentation(pK)
    target, faithful_L, _ = from_presentation(pL)
    mapping = [pL.coset_of(pK.representative(i)) for i in range(pK.size)]
    try:
        Phi = check_hom(mapping, source, target)
    except HomomorphismError as exc:
        raise ConsistencyError("Kg -> Lg is not a homomorphism", witness=exc.witness) from exc
    if faithful_K and faithful_L and not is_rigid(Phi):
        raise ConsistencyError("Kg -> Lg is not rigid between faithful presentations")
    if H is not None:
        if not H <= K:
            raise DomainError("H is not contained in K")
        pH = make_presentation(G, H, eta)
        for i in range(pH.size):
            g = pH.representative(i)
            if mapping[pK.coset_of(g)] != pL.coset_of(g):
                raise ConsistencyError("Phi . c differs from c'", witness=g)
    return Phi, None
