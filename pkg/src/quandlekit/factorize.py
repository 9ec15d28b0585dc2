"""Deciding whether a surjection ``g: Q -> R2`` factors through ``h: Q -> R1``.

Two deciders are provided.  :func:`factor_oracle` compares fibres directly.
:func:`factor_structural` works through inner automorphism groups:

1. split ``h`` and ``g`` into an orbit quotient followed by a rigid map,
   giving ``N1 = ker Inn(h)`` and ``N2 = ker Inn(g)``;
2. require ``N1 <= N2``, which yields ``omega: Q/N1 -> Q/N2`` and a group
   map ``psi: Inn(R1) -> Inn(R2)`` with ``psi . Inn(h) = Inn(g)``;
3. require ``N = Inn(h)(N2)`` to be a realizable kernel of ``R1``, then
   require ``psi(K) <= L`` where ``K`` and ``L`` are the stabilizers of
   ``h(q0)`` and ``g(q0)``; the map ``K'g -> Lg`` on cosets of ``Inn(R2)``
   then gives ``phi``.

:func:`check_agreement` runs both and compares them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .augment import induced_inn_hom
from .coset import make_presentation, phi as coset_phi, to_presentation
from .errors import ConsistencyError, DomainError, HomomorphismError, NotConnectedError, NotSurjectiveError
from .permgroup import Permutation, point_stabilizer, subgroup
from .quandle import Quandle, QuandleHom, check_hom, is_connected, orbits
from .quotient import factor_surjection, omega, orbit_quotient, realizable_closure


class FailureReason(str, Enum):
    KERNEL_NOT_CONTAINED = "KernelNotContained"
    CLOSURE_MISMATCH = "ClosureMismatch"
    STABILIZER_NOT_CONTAINED = "StabilizerNotContained"


@dataclass(eq=False)
class FactorizationCertificate:
    """Verdict of :func:`factor_structural` with every intermediate kept.

    On failure ``witness`` is a permutation: an element of ``N1`` outside
    ``N2``, of the closure of ``N`` outside ``N``, or of ``psi(K)`` outside
    ``L``, according to ``failure_reason``.
    """

    exists: bool
    phi: QuandleHom | None = None
    pipeline: dict = field(default_factory=dict)
    failure_reason: FailureReason | None = None
    witness: Permutation | None = None

    def summary(self) -> str:
        if self.exists:
            return f"phi = {list(self.phi.map)}"
        return f"{self.failure_reason.value}: witness {self.witness}"


def _require_pair(g: QuandleHom, h: QuandleHom) -> None:
    if g.source != h.source:
        raise DomainError("g and h must share their source quandle")
    for name, f in (("g", g), ("h", h)):
        if not f.is_surjective():
            missing = min(set(range(f.target.size)) - set(f.map))
            raise NotSurjectiveError(f"{name} is not surjective", witness=missing)


def _validated(mapping, g: QuandleHom, h: QuandleHom, stage: str) -> QuandleHom:
    try:
        f = check_hom(mapping, h.target, g.target)
    except HomomorphismError as exc:
        raise ConsistencyError(f"{stage}: phi is not a homomorphism", witness=exc.witness) from exc
    if h.then(f).map != g.map:
        raise ConsistencyError(f"{stage}: phi . h differs from g")
    return f


def factor_oracle(g: QuandleHom, h: QuandleHom) -> tuple[QuandleHom | None, tuple[int, int] | None]:
    """Brute-force decision: ``phi`` exists iff ``h(q) = h(q')`` forces ``g(q) = g(q')``.

    Returns ``(phi, None)`` or ``(None, (q, q'))`` with equal ``h``-images
    and different ``g``-images.
    """
    _require_pair(g, h)
    first: dict[int, int] = {}
    for q, r in enumerate(h.map):
        if r not in first:
            first[r] = q
        elif g.map[first[r]] != g.map[q]:
            return None, (first[r], q)
    mapping = [g.map[first[r]] for r in range(h.target.size)]
    return _validated(mapping, g, h, "oracle"), None


def _require_connected(**quandles: Quandle) -> None:
    for name, X in quandles.items():
        if not is_connected(X):
            raise NotConnectedError(f"{name} is not connected", witness=orbits(X))


def factor_structural(g: QuandleHom, h: QuandleHom, base_point: int = 0) -> FactorizationCertificate:
    """Decide factorization through kernels, closures and stabilizers."""
    _require_pair(g, h)
    Q, R1, R2 = h.source, h.target, g.target
    _require_connected(Q=Q, R1=R1, R2=R2)
    if not 0 <= base_point < Q.size:
        raise DomainError(f"base point {base_point} out of range")
    pipe: dict = {"base_point": base_point}

    # (1) orbit quotient then rigid map, for each surjection
    fh = factor_surjection(h)
    fg = factor_surjection(g)
    N1, N2 = fh.kernel, fg.kernel
    pipe.update(N1=N1, N2=N2, quotient_1=fh.orbit_quotient, quotient_2=fg.orbit_quotient,
                rigid_1=fh.f, rigid_2=fg.f)

    # (2) kernel containment
    om, bad = omega(Q, N1, N2)
    pipe["omega"] = om
    if om is None:
        return FactorizationCertificate(False, None, pipe, FailureReason.KERNEL_NOT_CONTAINED, bad)

    inn_h = induced_inn_hom(h)
    inn_g = induced_inn_hom(g)
    psi: dict[Permutation, Permutation] = {}
    for x in Q.inn.elements:
        y, z = inn_h(x), inn_g(x)
        if psi.setdefault(y, z) != z:
            raise ConsistencyError("psi is ill-defined although N1 <= N2", witness=x)
    pipe["psi"] = psi

    # (3a) closure condition on N = Inn(h)(N2)
    N = subgroup(R1.size, {inn_h(x) for x in N2.elements})
    closure = realizable_closure(R1, N)
    pipe.update(N=N, closure=closure, closure_ok=closure == N)
    if closure != N:
        extra = min(x for x in closure.elements if x not in N)
        return FactorizationCertificate(False, None, pipe, FailureReason.CLOSURE_MISMATCH, extra)

    # (3b) stabilizer containment at matched base points
    r0, s0 = h.map[base_point], g.map[base_point]
    G1, G2 = R1.inn, R2.inn
    K = point_stabilizer(r0, G1)
    K_image = subgroup(R2.size, {psi[k] for k in K.elements})
    p2, ident2 = to_presentation(R2, s0)
    L = p2.stabilizer
    eta = p2.eta
    pipe.update(r0=r0, s0=s0, K=K, K_image=K_image, L=L, eta=eta)
    Phi, bad = coset_phi(G2, K_image, L, eta)
    pipe.update(stabilizer_ok=Phi is not None, Phi=Phi)
    if Phi is None:
        return FactorizationCertificate(False, None, pipe, FailureReason.STABILIZER_NOT_CONTAINED, bad)

    # phi(r0 . x) = s0 . psi(x), read through K'\G2 -> L\G2 -> R2
    pK = make_presentation(G2, K_image, eta)
    mapping = [-1] * R1.size
    for x in G1.elements:
        r = x[r0]
        value = ident2[Phi.map[pK.coset_of(psi[x])]]
        if value != psi[x][s0]:
            raise ConsistencyError("coset route and orbit route to phi disagree", witness=x)
        if mapping[r] < 0:
            mapping[r] = value
        elif mapping[r] != value:
            raise ConsistencyError("phi is ill-defined although psi(K) <= L", witness=x)
    result = _validated(mapping, g, h, "structural")

    # phi is constant on N-orbits and closes the square with omega
    oq = orbit_quotient(R1, N)
    for block in oq.blocks:
        if len({mapping[r] for r in block}) != 1:
            raise ConsistencyError("phi does not descend through R1/N", witness=block)
    if om.then(fg.f).map != fh.f.then(result).map:
        raise ConsistencyError("rigid_2 . omega differs from phi . rigid_1")
    pipe["descent"] = oq
    return FactorizationCertificate(True, result, pipe)


@dataclass(eq=False)
class AgreementReport:
    agree: bool
    oracle_phi: QuandleHom | None
    oracle_witness: tuple[int, int] | None
    certificate: FactorizationCertificate
    details: list[str] = field(default_factory=list)


def check_agreement(g: QuandleHom, h: QuandleHom) -> AgreementReport:
    """Run both deciders and report any divergence in verdict or map."""
    oracle_phi, witness = factor_oracle(g, h)
    cert = factor_structural(g, h)
    details = []
    if (oracle_phi is not None) != cert.exists:
        details.append(
            f"verdicts differ: oracle {'exists' if oracle_phi else 'none'} "
            f"(witness {witness}), structural {cert.summary()}"
        )
    elif oracle_phi is not None and oracle_phi.map != cert.phi.map:
        details.append(f"maps differ: oracle {list(oracle_phi.map)}, structural {list(cert.phi.map)}")
    return AgreementReport(not details, oracle_phi, witness, cert, details)
