"""Orbit quotients ``Q/N`` by normal subgroups of ``Inn(Q)``, realizable
kernels and their closure, rigid quotients, and the orbit-then-rigid
factorization of a surjection.
"""

from __future__ import annotations

from dataclasses import dataclass

from .augment import induced_inn_hom
from .errors import (
    ConsistencyError,
    DomainError,
    HomomorphismError,
    NotNormalError,
    NotRealizableError,
    NotSurjectiveError,
)
from .permgroup import (
    PermGroup,
    Permutation,
    all_normal_subgroups,
    intersect,
    normality_witness,
    orbits as group_orbits,
    setwise_stabilizer,
)
from .quandle import Quandle, QuandleHom, check_hom, validate


@dataclass(frozen=True, eq=False)
class OrbitQuotient:
    source: Quandle
    kernel_subgroup: PermGroup
    quotient: Quandle
    projection: QuandleHom
    block_of: tuple[int, ...]
    blocks: tuple[frozenset[int], ...]


def _require_in_inn(Q: Quandle, N: PermGroup) -> None:
    if N.degree != Q.size:
        raise DomainError(f"subgroup acts on {N.degree} points, quandle has {Q.size}")
    G = Q.inn
    for n in N.generators:
        if n not in G:
            raise DomainError(f"{n} is not an inner automorphism", witness=n)


def orbits_under(Q: Quandle, N: PermGroup) -> list[frozenset[int]]:
    """Orbit partition of ``Q`` under ``N``, blocks ordered by least element."""
    _require_in_inn(Q, N)
    return group_orbits(N)


def _block_map(n: int, partition) -> list[int]:
    block_of = [-1] * n
    for i, block in enumerate(partition):
        for x in block:
            if not 0 <= x < n:
                raise DomainError(f"element {x} out of range")
            if block_of[x] >= 0:
                raise DomainError(f"element {x} lies in two blocks")
            block_of[x] = i
    if -1 in block_of:
        raise DomainError(f"element {block_of.index(-1)} lies in no block")
    return block_of


def is_congruence(Q: Quandle, partition) -> tuple[bool, tuple | None]:
    """Whether ``[x |> y]`` depends only on ``([x], [y])``.

    On failure the witness is two pairs ``((x1, y1), (x2, y2))`` lying in the
    same pair of blocks whose products land in different blocks.
    """
    block_of = _block_map(Q.size, partition)
    first: dict[tuple[int, int], tuple[int, int]] = {}
    for x in range(Q.size):
        for y in range(Q.size):
            key = (block_of[x], block_of[y])
            if key not in first:
                first[key] = (x, y)
                continue
            a, b = first[key]
            if block_of[Q.table[a][b]] != block_of[Q.table[x][y]]:
                return False, ((a, b), (x, y))
    return True, None


def orbit_quotient(Q: Quandle, N: PermGroup) -> OrbitQuotient:
    """``Q/N`` with ``[q] |> [r] = [q |> r]`` and its projection ``g_N``."""
    _require_in_inn(Q, N)
    G = Q.inn
    witness = normality_witness(N, G)
    if witness is not None:
        raise NotNormalError(
            "orbits of a subgroup of Inn(Q) form a quotient quandle only when the subgroup is normal",
            witness=witness,
        )
    blocks = tuple(group_orbits(N))
    block_of = tuple(_block_map(Q.size, blocks))

    # The action of Inn(Q) descends to the blocks (N normal), N itself fixes
    # every block, and the block map is equivariant by construction.
    for g in G.generators:
        for block in blocks:
            if len({block_of[g[x]] for x in block}) != 1:
                raise ConsistencyError("Inn(Q) does not permute the N-orbits", witness=(g, block))
    for n in N.generators:
        if any(block_of[n[x]] != block_of[x] for x in range(Q.size)):
            raise ConsistencyError("N moves one of its own orbits", witness=n)

    reps = [min(b) for b in blocks]
    table = [[block_of[Q.table[a][b]] for b in reps] for a in reps]
    for x in range(Q.size):
        for y in range(Q.size):
            if table[block_of[x]][block_of[y]] != block_of[Q.table[x][y]]:
                raise ConsistencyError("orbit quotient operation is ill-defined", witness=(x, y))
    quotient = validate(table)
    projection = check_hom(block_of, Q, quotient)
    return OrbitQuotient(Q, N, quotient, projection, block_of, blocks)


def closure_formulas(Q: Quandle, N: PermGroup) -> tuple[PermGroup, PermGroup]:
    """``(ker Inn(c_N), intersection of setwise stabilizers of N-orbits)``."""
    oq = orbit_quotient(Q, N)
    via_kernel = induced_inn_hom(oq.projection).kernel
    via_stabilizers = Q.inn
    for block in oq.blocks:
        via_stabilizers = intersect(via_stabilizers, setwise_stabilizer(block, Q.inn))
    return via_kernel, via_stabilizers


def realizable_closure(Q: Quandle, N: PermGroup) -> PermGroup:
    """Smallest realizable kernel containing ``N``.

    Computed twice, as the kernel of ``Inn(c_N)`` and as the intersection of
    the setwise stabilizers of the ``N``-orbits; the two must coincide.
    """
    via_kernel, via_stabilizers = closure_formulas(Q, N)
    if via_kernel != via_stabilizers:
        raise ConsistencyError(
            "ker(Inn(c_N)) differs from the intersection of block stabilizers",
            witness=(via_kernel, via_stabilizers),
        )
    return via_kernel


def is_realizable_kernel(Q: Quandle, N: PermGroup) -> bool:
    return realizable_closure(Q, N) == N


def realizable_kernels(Q: Quandle) -> list[PermGroup]:
    return [N for N in all_normal_subgroups(Q.inn) if is_realizable_kernel(Q, N)]


def _require_realizable(Q: Quandle, N: PermGroup) -> None:
    closure = realizable_closure(Q, N)
    if closure != N:
        extra = min(g for g in closure.elements if g not in N)
        raise NotRealizableError("subgroup is not a realizable kernel", witness=extra)


def is_rigid(h: QuandleHom) -> bool:
    """Whether the surjection ``h`` induces an isomorphism of ``Inn`` groups."""
    if not h.is_surjective():
        raise NotSurjectiveError("rigidity is defined for surjections only")
    f = induced_inn_hom(h)
    return f.kernel.is_trivial() and f.image.order == h.target.inn.order


@dataclass(frozen=True, eq=False)
class SurjectionFactorization:
    """``h = f . g_N`` with ``N = ker Inn(h)`` and ``f`` rigid."""

    kernel: PermGroup
    orbit_quotient: OrbitQuotient
    f: QuandleHom

    @property
    def g_N(self) -> QuandleHom:
        return self.orbit_quotient.projection


def factor_surjection(h: QuandleHom) -> SurjectionFactorization:
    if not h.is_surjective():
        raise NotSurjectiveError("only surjections factor as orbit quotient then rigid quotient")
    N = induced_inn_hom(h).kernel
    oq = orbit_quotient(h.source, N)
    f_map = []
    for block in oq.blocks:
        values = {h.map[x] for x in block}
        if len(values) != 1:
            raise ConsistencyError("h is not constant on the orbits of ker Inn(h)", witness=block)
        f_map.append(values.pop())
    try:
        f = check_hom(f_map, oq.quotient, h.target)
    except HomomorphismError as exc:
        raise ConsistencyError("induced map Q/N -> R is not a homomorphism", witness=exc.witness) from exc
    if oq.projection.then(f).map != h.map:
        raise ConsistencyError("f . g_N differs from h")
    if not is_rigid(f):
        raise ConsistencyError("induced map Q/N -> R is not rigid")
    return SurjectionFactorization(N, oq, f)


def omega(Q: Quandle, N1: PermGroup, N2: PermGroup) -> tuple[QuandleHom | None, Permutation | None]:
    """The map ``Q/N1 -> Q/N2, q.N1 -> q.N2`` if ``N1 <= N2``.

    Both arguments must be realizable kernels.  Returns ``(omega, None)`` or
    ``(None, n)`` with ``n`` in ``N1`` but not ``N2``.
    """
    _require_realizable(Q, N1)
    _require_realizable(Q, N2)
    if not N1 <= N2:
        return None, min(g for g in N1.elements if g not in N2)
    oq1 = orbit_quotient(Q, N1)
    oq2 = orbit_quotient(Q, N2)
    mapping = []
    for block in oq1.blocks:
        values = {oq2.block_of[x] for x in block}
        if len(values) != 1:
            raise ConsistencyError("an N1-orbit meets two N2-orbits", witness=block)
        mapping.append(values.pop())
    try:
        om = check_hom(mapping, oq1.quotient, oq2.quotient)
    except HomomorphismError as exc:
        raise ConsistencyError("omega is not a homomorphism", witness=exc.witness) from exc
    if oq1.projection.then(om).map != oq2.projection.map:
        raise ConsistencyError("omega . g_N1 differs from g_N2")
    return om, None
