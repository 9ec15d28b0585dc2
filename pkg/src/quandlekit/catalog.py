"""Small groups, and connected quandles enumerated two independent ways.

``enumerate_connected_by_triples`` builds quandles from coset data
``(G, H, eta)`` over the built-in groups; ``enumerate_connected_exhaustive``
searches operation tables directly and serves as the oracle for it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

import numpy as np

from .coset import from_presentation, make_presentation, presentation_violation, rigid_quotient_of_presentation, to_presentation
from .errors import DomainError, ResourceError
from .permgroup import (
    PermGroup,
    Permutation,
    all_subgroups,
    centralizer,
    conjugacy_classes,
    generate,
    normal_closure,
    subgroups_containing,
)
from .quandle import Quandle, QuandleHom, _element_invariants, automorphisms, check_hom, is_connected, is_isomorphic, validate
from .quotient import orbit_quotient, realizable_kernels

MAX_BUILTIN_ORDER = 120
CANONICAL_LIMIT = 8
EXHAUSTIVE_LIMIT = 6


@dataclass(frozen=True, eq=False)
class GroupSpec:
    name: str
    degree: int
    generators: tuple[Permutation, ...]
    order: int

    def group(self) -> PermGroup:
        G = generate(self.degree, self.generators)
        if G.order != self.order:
            raise AssertionError(f"{self.name} has order {G.order}, advertised {self.order}")
        return G


def _cycle(points, degree) -> Permutation:
    return Permutation.from_cycles([list(points)], degree)


def cyclic(n: int) -> GroupSpec:
    gens = (_cycle(range(n), n),) if n > 1 else ()
    return GroupSpec(f"cyclic({n})", n, gens, n)


def dihedral(n: int) -> GroupSpec:
    """Symmetries of the ``n``-gon, order ``2n`` (``n >= 3``)."""
    reflection = Permutation([(-x) % n for x in range(n)])
    return GroupSpec(f"dihedral({n})", n, (_cycle(range(n), n), reflection), 2 * n)


def symmetric(n: int) -> GroupSpec:
    return GroupSpec(f"symmetric({n})", n, (_cycle((0, 1), n), _cycle(range(n), n)), factorial(n))


def alternating(n: int) -> GroupSpec:
    gens = tuple(_cycle((0, 1, k), n) for k in range(2, n))
    return GroupSpec(f"alternating({n})", n, gens, factorial(n) // 2)


def _prime_power(q: int) -> tuple[int, int] | None:
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            return (p, k) if r == 1 else None
    return None


class _Field:
    """GF(p^k) on ``0..q-1`` (base-``p`` digits are polynomial coefficients)."""

    def __init__(self, p: int, k: int):
        self.p, self.k, self.q = p, k, p**k
        self.modulus = self._primitive_modulus()

    def _digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _number(self, digits):
        return sum(d * self.p**i for i, d in enumerate(digits))

    def add(self, a, b):
        return self._number([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _mul(self, a, b, modulus):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(self._digits(a)):
            for j, y in enumerate(self._digits(b)):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus x^k + sum modulus[i] x^i
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for i, m in enumerate(modulus):
                    prod[deg - k + i] = (prod[deg - k + i] - c * m) % p
        return self._number(prod[:k])

    def mul(self, a, b):
        return self._mul(a, b, self.modulus)

    def _primitive_modulus(self):
        if self.k == 1:
            return [0]
        x = self.p  # the polynomial "x"
        for tail in itertools.product(range(self.p), repeat=self.k):
            modulus = list(tail)
            if modulus[0] == 0:
                continue
            power, order = x, 1
            while power != 1 and order < self.q:
                power = self._mul(power, x, modulus)
                order += 1
            if order == self.q - 1:
                return modulus
        raise AssertionError(f"no primitive polynomial for GF({self.q})")

    def generator(self) -> int:
        """A generator of the multiplicative group."""
        for g in range(2, self.q) if self.q > 2 else [1]:
            power, order = g, 1
            while power != 1:
                power = self.mul(power, g)
                order += 1
            if order == self.q - 1:
                return g
        return 1


def affine(q: int, d: int) -> GroupSpec:
    """``GF(q) x| C_d``: maps ``x -> a x + b`` with ``a`` in the order-``d`` subgroup."""
    pk = _prime_power(q)
    if pk is None or (q - 1) % d:
        raise DomainError(f"affine({q},{d}) needs a prime power q and d | q-1")
    F = _Field(*pk)
    gens = []
    for i in range(F.k):
        b = F.p**i
        gens.append(Permutation([F.add(x, b) for x in range(q)]))
    if d > 1:
        w = F.generator()
        a = 1
        for _ in range((q - 1) // d):
            a = F.mul(a, w)
        gens.append(Permutation([F.mul(a, x) for x in range(q)]))
    return GroupSpec(f"affine({q},{d})", q, tuple(gens), q * d)


def special_linear_2_3() -> GroupSpec:
    """``SL(2,3)`` acting on the 8 nonzero row vectors of ``GF(3)^2``."""
    vectors = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}

    def act(m):
        return Permutation(
            [index[((a * m[0][0] + b * m[1][0]) % 3, (a * m[0][1] + b * m[1][1]) % 3)] for a, b in vectors]
        )

    return GroupSpec("special_linear(2,3)", 8, (act(((1, 1), (0, 1))), act(((1, 0), (1, 1)))), 24)


def builtin_groups(max_order: int) -> list[GroupSpec]:
    """Cyclic, dihedral, symmetric and alternating groups, plus the affine
    groups ``GF(q) x| C_d`` and ``SL(2,3)``, of order at most ``max_order``.
    """
    if max_order > MAX_BUILTIN_ORDER:
        raise ResourceError(f"built-in catalog is capped at order {MAX_BUILTIN_ORDER}")
    specs = [cyclic(n) for n in range(1, max_order + 1)]
    specs += [dihedral(n) for n in range(3, max_order // 2 + 1)]
    n = 3
    while factorial(n) <= max_order:
        specs.append(symmetric(n))
        n += 1
    n = 4
    while factorial(n) // 2 <= max_order:
        specs.append(alternating(n))
        n += 1
    for q in range(2, max_order + 1):
        pk = _prime_power(q)
        if pk is None:
            continue
        for d in range(1, q):
            if (q - 1) % d or q * d > max_order:
                continue
            # skip the ones that duplicate cyclic and dihedral groups
            if pk[1] == 1 and d <= 2:
                continue
            specs.append(affine(q, d))
    if 24 <= max_order:
        specs.append(special_linear_2_3())
    return sorted(specs, key=lambda s: (s.order, s.name))


# canonical forms ------------------------------------------------------------


@lru_cache(maxsize=None)
def _relabelings(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)
    return perms, np.argsort(perms, axis=1)


def canonical_form(Q: Quandle) -> tuple[tuple[int, ...], ...] | None:
    """Lexicographically least table over all relabelings (``None`` above size 8)."""
    n = Q.size
    if n > CANONICAL_LIMIT:
        return None
    perms, inverse = _relabelings(n)
    T = np.array(Q.table, dtype=np.intp)
    # relabeled[k][i][j] = perms[k][T[inv[k][i]][inv[k][j]]]
    moved = T[inverse[:, :, None], inverse[:, None, :]].reshape(len(perms), n * n)
    flat = np.take_along_axis(perms, moved, axis=1)
    alive = np.arange(len(perms))
    for col in range(n * n):
        column = flat[alive, col]
        alive = alive[column == column.min()]
        if len(alive) == 1:
            break
    best = flat[alive[0]]
    return tuple(tuple(int(v) for v in best[i * n : (i + 1) * n]) for i in range(n))


@dataclass(frozen=True, eq=False)
class Provenance:
    kind: str  # "triple" or "exhaustive"
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class QuandleRecord:
    quandle: Quandle
    provenance: Provenance
    canonical_form: tuple[tuple[int, ...], ...] | None


def _dedup(candidates) -> list[tuple[Quandle, Provenance]]:
    """Keep one quandle per isomorphism class, first occurrence wins."""
    buckets: dict[tuple, list[Quandle]] = {}
    kept = []
    seen_tables = set()
    for Q, prov in candidates:
        if Q.table in seen_tables:
            continue
        seen_tables.add(Q.table)
        key = (Q.size, tuple(sorted(_element_invariants(Q))))
        bucket = buckets.setdefault(key, [])
        if any(is_isomorphic(Q, R) is not None for R in bucket):
            continue
        bucket.append(Q)
        kept.append((Q, prov))
    return kept


def _records(kept) -> list[QuandleRecord]:
    out = []
    for Q, prov in kept:
        canon = canonical_form(Q)
        quandle = validate(canon) if canon is not None else Q
        out.append(QuandleRecord(quandle, prov, canon))
    return sorted(out, key=lambda r: (r.quandle.size, r.quandle.table))


def _triples(n: int, max_group_order: int):
    # (H, eta) and its conjugates give isomorphic quandles, so one eta per
    # conjugacy class suffices, and eta central in H means H <= C_G(eta).
    for spec in builtin_groups(max_group_order):
        if spec.order % n:
            continue
        G = spec.group()
        # abelian G has one-point conjugacy classes, so it only yields the
        # one-point quandle, which the trivial group already gives
        if G.is_abelian() and not G.is_trivial():
            continue
        for cls in conjugacy_classes(G):
            eta = min(cls)
            if normal_closure([eta], G).order != G.order:
                continue
            C = centralizer(eta, G)
            if C.order * n < G.order:
                continue
            for H in subgroups_containing(eta, C, G.order // n):
                p = make_presentation(G, H, eta)
                if presentation_violation(p) is not None:
                    continue
                Q, _, _ = from_presentation(p)
                prov = Provenance(
                    "triple",
                    {
                        "group": spec.name,
                        "stabilizer": [str(h) for h in H.generators],
                        "eta": str(eta),
                    },
                )
                yield Q, prov


def enumerate_connected_by_triples(n: int, max_group_order: int = 48) -> list[QuandleRecord]:
    """Connected quandles of order ``n`` arising from built-in ``(G, H, eta)``."""
    if n < 1:
        raise DomainError("n must be positive")
    return _records(_dedup(_triples(n, max_group_order)))


# exhaustive search ------------------------------------------------------------


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _first_column_representatives(n: int) -> list[tuple[int, ...]]:
    """One permutation fixing 0 for each cycle type on the other points."""
    reps = []
    for shape in _partitions(n - 1):
        images = list(range(n))
        start = 1
        for length in shape:
            for i in range(length):
                images[start + i] = start + (i + 1) % length
            start += length
        reps.append(tuple(images))
    return reps


def _cycle_type(images) -> tuple[int, ...]:
    return Permutation._trusted(tuple(images)).cycle_type()


def _propagate(cols: list, fresh: list[int], n: int) -> bool:
    """Force columns from ``S_{S_z(y)} = S_z S_y S_z^-1``; False on conflict."""
    queue = list(fresh)
    while queue:
        a = queue.pop()
        for b in range(n):
            if cols[b] is None or cols[a] is None:
                continue
            for z, y in ((a, b), (b, a)):
                Sz, Sy = cols[z], cols[y]
                w = Sz[y]
                forced = [0] * n
                for x in range(n):
                    forced[Sz[x]] = Sz[Sy[x]]
                forced = tuple(forced)
                if cols[w] is None:
                    cols[w] = forced
                    queue.append(w)
                elif cols[w] != forced:
                    return False
    return True


def _search_tables(n: int, connected_only: bool):
    """Every quandle table of order ``n`` whose first column is a cycle-type
    representative (each isomorphism class has such a labeling)."""
    all_columns = {}
    for y in range(n):
        others = [x for x in range(n) if x != y]
        cols = []
        for perm in itertools.permutations(others):
            images = list(range(n))
            for src, dst in zip(others, perm):
                images[src] = dst
            cols.append(tuple(images))
        all_columns[y] = cols

    def search(cols, shape):
        try:
            y = cols.index(None)
        except ValueError:
            yield [[cols[y][x] for y in range(n)] for x in range(n)]
            return
        for cand in all_columns[y]:
            if shape is not None and _cycle_type(cand) != shape:
                continue
            new = list(cols)
            new[y] = cand
            if _propagate(new, [y], n):
                yield from search(new, shape)

    for first in _first_column_representatives(n):
        cols = [None] * n
        cols[0] = first
        if _propagate(cols, [0], n):
            yield from search(cols, _cycle_type(first) if connected_only else None)


def _check_limit(n: int, limit: int) -> None:
    if n < 1:
        raise DomainError("n must be positive")
    if n > limit:
        raise ResourceError(f"exhaustive search is limited to n <= {limit}")


def enumerate_quandles_exhaustive(n: int, limit: int = EXHAUSTIVE_LIMIT) -> list[QuandleRecord]:
    """All quandles of order ``n`` up to isomorphism, connected or not."""
    _check_limit(n, limit)
    found = ((validate(t), Provenance("exhaustive")) for t in _search_tables(n, False))
    return _records(_dedup(found))


def enumerate_connected_exhaustive(n: int, limit: int = EXHAUSTIVE_LIMIT) -> list[QuandleRecord]:
    """Connected quandles of order ``n`` by direct table search.

    In a connected quandle all symmetries are conjugate, so every column is
    restricted to the cycle type of the first.
    """
    _check_limit(n, limit)
    found = (
        (Q, Provenance("exhaustive"))
        for Q in (validate(t) for t in _search_tables(n, True))
        if is_connected(Q)
    )
    return _records(_dedup(found))


@lru_cache(maxsize=None)
def connected_catalog(max_n: int = 8, max_group_order: int = 56) -> tuple[QuandleRecord, ...]:
    """Connected quandles of orders ``1..max_n`` from the triple enumeration."""
    out = []
    for n in range(1, max_n + 1):
        out.extend(enumerate_connected_by_triples(n, max_group_order))
    return tuple(out)


def surjections(Q: Quandle, twisted: bool = False) -> list[QuandleHom]:
    """Every surjection out of a connected ``Q`` up to relabeling the target.

    With ``twisted`` each is also composed with every automorphism of its
    target, so distinct maps with the same fibres are all listed.

    Each is an orbit quotient by a realizable kernel followed by a rigid
    quotient ``Hg -> Kg`` of the quotient's coset presentation.
    """
    out = []
    seen = set()
    for N in realizable_kernels(Q):
        oq = orbit_quotient(Q, N)
        p, ident = to_presentation(oq.quotient, 0)
        coset_of_element = {e: i for i, e in enumerate(ident)}
        for K in all_subgroups(p.group):
            if not p.stabilizer <= K:
                continue
            c, _ = rigid_quotient_of_presentation(p, K)
            if c is None:
                continue
            mapping = tuple(c.map[coset_of_element[oq.block_of[x]]] for x in range(Q.size))
            h = check_hom(mapping, Q, c.target)
            key = tuple(h.kernel_partition())
            if key in seen:
                continue
            seen.add(key)
            if twisted:
                out.extend(h.then(a) for a in automorphisms(h.target))
            else:
                out.append(h)
    return out
