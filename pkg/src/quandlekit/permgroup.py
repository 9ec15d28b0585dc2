"""Permutation groups small enough to hold every element in memory.

Points are ``0..degree-1`` and groups act on the right: the image of ``x``
under ``g`` is ``g[x]``, and the product ``p * q`` means "apply ``p``, then
``q``", so that ``x . (p*q) == (x . p) . q``.

Every group remembers, for each element, how the breadth-first closure first
reached it.  That gives a word in the generators for every element, which is
how homomorphisms prescribed on generators are evaluated everywhere.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, NotNormalError, ResourceError

DEFAULT_ELEMENT_CAP = 100_000


def element_cap() -> int:
    value = os.environ.get("QUANDLEKIT_ELEMENT_CAP")
    return int(value) if value else DEFAULT_ELEMENT_CAP


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image array."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise DomainError(f"not a permutation of 0..{len(images) - 1}: {list(images)}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str | Sequence[Sequence[int]], degree: int) -> "Permutation":
        """Build from disjoint-cycle notation such as ``"(0 1 2)(3 4)"`` or ``"()"``."""
        if isinstance(text, str):
            stripped = text.strip()
            if stripped in ("", "()", "id"):
                cycles = []
            else:
                if not re.fullmatch(r"(\(\s*[\d,\s]*\)\s*)+", stripped):
                    raise DomainError(f"cannot parse cycle notation {text!r}")
                cycles = [
                    [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
                    for body in re.findall(r"\(([^)]*)\)", stripped)
                ]
        else:
            cycles = [list(c) for c in text]
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for a in cycle:
                if not 0 <= a < degree:
                    raise DomainError(f"point {a} out of range for degree {degree}")
                if a in seen:
                    raise DomainError(f"point {a} appears twice in {text!r}")
                seen.add(a)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls._trusted(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __getitem__(self, x: int) -> int:
        return self.images[x]

    __call__ = __getitem__

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation._trusted(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def conjugate(self, g: "Permutation") -> "Permutation":
        """``g^-1 * self * g``."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """All cycle lengths, fixed points included, in decreasing order."""
        lengths = [len(c) for c in self.cycles()]
        fixed = len(self.images) - sum(lengths)
        return tuple(sorted(lengths, reverse=True)) + (1,) * fixed

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    if len(p.images) != len(q.images):
        raise DomainError(f"degree mismatch: {len(p.images)} vs {len(q.images)}")
    return Permutation._trusted(tuple(map(q.images.__getitem__, p.images)))


class PermGroup:
    """A finite permutation group with every element materialized.

    Build instances with :func:`generate` or :func:`subgroup`; ``elements`` is
    sorted by image array, so the identity always comes first.
    """

    def __init__(self, degree, generators, bfs, parent):
        self.degree = degree
        self.generators = tuple(generators)
        self._bfs = bfs
        self._parent = parent
        self.elements = tuple(sorted(bfs))
        self._set = frozenset(bfs)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._set

    def __le__(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self._set <= other._set

    def __lt__(self, other: "PermGroup") -> bool:
        return self <= other and len(self) < len(other)

    def __eq__(self, other) -> bool:
        return isinstance(other, PermGroup) and self.degree == other.degree and self._set == other._set

    def __hash__(self) -> int:
        return hash((self.degree, self._set))

    def __repr__(self) -> str:
        return f"<PermGroup degree={self.degree} order={self.order}>"

    @property
    def element_set(self) -> frozenset:
        return self._set

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def word(self, g: Permutation) -> tuple[tuple[int, bool], ...]:
        """Generator word ``((index, inverted), ...)`` whose product is ``g``."""
        if g not in self._set:
            raise DomainError(f"{g} is not in the group")
        steps = []
        while self._parent[g] is not None:
            prev, i, inverted = self._parent[g]
            steps.append((i, inverted))
            g = prev
        return tuple(reversed(steps))

    def evaluate(self, word, images: Sequence[Permutation] | None = None) -> Permutation:
        """Multiply out ``word`` using ``images`` (default: the generators)."""
        images = self.generators if images is None else images
        if images:
            result = Permutation.identity(images[0].degree)
        else:
            result = self.identity
        for i, inverted in word:
            result = result * (images[i].inverse() if inverted else images[i])
        return result


def generate(degree: int, gens: Sequence[Permutation], cap: int | None = None) -> PermGroup:
    """Breadth-first closure of ``gens`` under right multiplication."""
    cap = element_cap() if cap is None else cap
    gens = list(gens)
    for g in gens:
        if g.degree != degree:
            raise DomainError(f"generator {g} has degree {g.degree}, expected {degree}")
    steps = []
    for i, g in enumerate(gens):
        steps.append((i, False, g.images.__getitem__))
        inv = g.inverse()
        if inv != g:
            steps.append((i, True, inv.images.__getitem__))
    identity = tuple(range(degree))
    # work on raw image tuples; wrap as Permutations once closed
    parent: dict = {identity: None}
    bfs = [identity]
    head = 0
    while head < len(bfs):
        e = bfs[head]
        head += 1
        for i, inverted, step in steps:
            new = tuple(map(step, e))
            if new not in parent:
                parent[new] = (e, i, inverted)
                bfs.append(new)
                if len(bfs) > cap:
                    raise ResourceError(f"group closure exceeded the element cap ({cap})")
    wrapped = {t: Permutation._trusted(t) for t in bfs}
    perm_parent = {
        wrapped[t]: None if v is None else (wrapped[v[0]], v[1], v[2]) for t, v in parent.items()
    }
    return PermGroup(degree, gens, [wrapped[t] for t in bfs], perm_parent)


def trivial_group(degree: int) -> PermGroup:
    return generate(degree, [])


def subgroup(degree: int, elements: Iterable[Permutation]) -> PermGroup:
    """The group on an element set already known to be closed.

    Generators are chosen greedily (least element not yet generated), which
    keeps words short and the generating set small.
    """
    elements = sorted(set(elements))
    gens: list[Permutation] = []
    current = trivial_group(degree)
    for e in elements:
        if e not in current:
            gens.append(e)
            current = generate(degree, gens)
    if current.order != len(elements):
        raise DomainError("element set is not closed under multiplication")
    return current


def _check_point(point: int, G: PermGroup) -> None:
    if not 0 <= point < G.degree:
        raise DomainError(f"point {point} out of range for degree {G.degree}")


def orbit(point: int, G: PermGroup) -> frozenset[int]:
    _check_point(point, G)
    seen = {point}
    frontier = [point]
    while frontier:
        x = frontier.pop()
        for g in G.generators:
            y = g[x]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def orbits(G: PermGroup) -> list[frozenset[int]]:
    """Orbit partition, blocks ordered by least point."""
    out = []
    covered: set[int] = set()
    for x in range(G.degree):
        if x not in covered:
            o = orbit(x, G)
            covered |= o
            out.append(o)
    return out


def point_stabilizer(point: int, G: PermGroup) -> PermGroup:
    _check_point(point, G)
    return subgroup(G.degree, (g for g in G.elements if g[point] == point))


def setwise_stabilizer(block: Iterable[int], G: PermGroup) -> PermGroup:
    block = frozenset(block)
    if not block:
        raise DomainError("setwise stabilizer of the empty block")
    for x in block:
        _check_point(x, G)
    return subgroup(G.degree, (g for g in G.elements if all(g[x] in block for x in block)))


def _require_subgroup(N: PermGroup, G: PermGroup) -> None:
    if N.degree != G.degree:
        raise DomainError(f"degree mismatch: {N.degree} vs {G.degree}")
    for n in N.generators:
        if n not in G:
            raise DomainError(f"{n} is not an element of the ambient group", witness=n)


def normality_witness(N: PermGroup, G: PermGroup) -> tuple[Permutation, Permutation] | None:
    """``(g, n)`` with ``g^-1 n g`` outside ``N``, or ``None`` if ``N`` is normal."""
    _require_subgroup(N, G)
    for g in G.generators:
        g_inv = g.inverse()
        for n in N.generators:
            if g_inv * n * g not in N:
                return g, n
    return None


def is_normal(N: PermGroup, G: PermGroup) -> bool:
    return normality_witness(N, G) is None


def center(H: PermGroup) -> PermGroup:
    gens = H.generators
    return subgroup(H.degree, (z for z in H.elements if all(z * h == h * z for h in gens)))


def centralizes(z: Permutation, H: PermGroup) -> Permutation | None:
    """First generator of ``H`` not commuting with ``z`` (``None`` if all do)."""
    for h in H.generators:
        if z * h != h * z:
            return h
    return None


def centralizer(g: Permutation, G: PermGroup) -> PermGroup:
    return subgroup(G.degree, (x for x in G.elements if x * g == g * x))


def intersect(A: PermGroup, B: PermGroup) -> PermGroup:
    if A.degree != B.degree:
        raise DomainError(f"degree mismatch: {A.degree} vs {B.degree}")
    small, big = (A, B) if len(A) <= len(B) else (B, A)
    return subgroup(A.degree, (g for g in small.elements if g in big))


def join(A: PermGroup, B: PermGroup) -> PermGroup:
    if A.degree != B.degree:
        raise DomainError(f"degree mismatch: {A.degree} vs {B.degree}")
    if A <= B:
        return B
    if B <= A:
        return A
    return generate(A.degree, list(A.generators) + list(B.generators))


def conjugacy_class(x: Permutation, G: PermGroup) -> frozenset[Permutation]:
    seen = {x}
    frontier = [x]
    gens = [(g, g.inverse()) for g in G.generators]
    while frontier:
        y = frontier.pop()
        for g, g_inv in gens:
            z = g_inv * y * g
            if z not in seen:
                seen.add(z)
                frontier.append(z)
    return frozenset(seen)


def conjugacy_classes(G: PermGroup) -> list[frozenset[Permutation]]:
    """Classes ordered by their least element."""
    out = []
    covered: set[Permutation] = set()
    for x in G.elements:
        if x not in covered:
            cls = conjugacy_class(x, G)
            covered |= cls
            out.append(cls)
    return out


def normal_closure(elements: Iterable[Permutation], G: PermGroup) -> PermGroup:
    gens: set[Permutation] = set()
    for x in elements:
        if x not in G:
            raise DomainError(f"{x} is not an element of the ambient group", witness=x)
        gens |= conjugacy_class(x, G)
    return generate(G.degree, sorted(gens))


def _check_cap(G: PermGroup, cap: int | None) -> None:
    cap = element_cap() if cap is None else cap
    if G.order > cap:
        raise ResourceError(f"group of order {G.order} exceeds the cap ({cap})")


def _lattice_key(S: PermGroup):
    return (S.order, [e.images for e in S.elements])


def all_normal_subgroups(G: PermGroup, cap: int | None = None) -> list[PermGroup]:
    """Every normal subgroup once, ordered by order then element list.

    A normal subgroup is the join of the normal closures of the conjugacy
    classes it contains, so closing those closures under joins finds them all.
    """
    _check_cap(G, cap)
    seeds = {normal_closure([min(cls)], G) for cls in conjugacy_classes(G)}
    found = {trivial_group(G.degree)} | seeds
    frontier = list(found)
    while frontier:
        nxt = []
        for A in frontier:
            for B in seeds:
                if not B <= A:
                    C = join(A, B)
                    if C not in found:
                        found.add(C)
                        nxt.append(C)
        frontier = nxt
    return sorted(found, key=_lattice_key)


def cyclic_subgroups(G: PermGroup) -> list[PermGroup]:
    found: list[PermGroup] = []
    covered: dict[Permutation, int] = {}  # element -> order of a cyclic group it generates
    for g in G.elements:
        k = g.order()
        if covered.get(g) == k:
            continue
        C = generate(G.degree, [g])
        found.append(C)
        for x in C.elements:
            covered.setdefault(x, C.order)
            if C.order == x.order():
                covered[x] = C.order
    return sorted(set(found), key=_lattice_key)


def all_subgroups(G: PermGroup, cap: int | None = None) -> list[PermGroup]:
    """Every subgroup once, by join-closure of the cyclic subgroups."""
    _check_cap(G, cap)
    cyclic = cyclic_subgroups(G)
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for A in frontier:
            for C in cyclic:
                if not C <= A:
                    J = join(A, C)
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return sorted(found, key=_lattice_key)


def subgroups_containing(x: Permutation, G: PermGroup, order: int) -> list[PermGroup]:
    """Subgroups of ``G`` of the given order that contain ``x``."""
    if order % x.order() or G.order % order:
        return []
    cyclic = cyclic_subgroups(G)
    start = generate(G.degree, [x])
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for A in frontier:
            if A.order == order:
                continue
            for C in cyclic:
                if not C <= A:
                    J = join(A, C)
                    if order % J.order == 0 and J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return sorted((S for S in found if S.order == order), key=_lattice_key)


@dataclass(frozen=True)
class Coset:
    """Right coset ``H g``; ``representative`` is its least member."""

    representative: Permutation
    members: frozenset


def right_cosets(H: PermGroup, G: PermGroup) -> list[Coset]:
    """Partition of ``G`` into cosets ``Hg``; the trivial coset comes first."""
    _require_subgroup(H, G)
    assigned: set[Permutation] = set()
    out = []
    # Scanning G in sorted order, the first unassigned element is the least
    # member of its coset, and the identity (least of all) starts H itself.
    for g in G.elements:
        if g in assigned:
            continue
        members = frozenset(h * g for h in H.elements)
        assigned |= members
        out.append(Coset(g, members))
    return out


def coset_lookup(cosets: Sequence[Coset]) -> dict[Permutation, int]:
    return {g: i for i, c in enumerate(cosets) for g in c.members}


@dataclass(eq=False)
class GroupHom:
    """An element-wise homomorphism out of a permutation group."""

    source: PermGroup
    target_degree: int
    mapping: dict
    kernel: PermGroup

    def __call__(self, g: Permutation) -> Permutation:
        return self.mapping[g]

    @property
    def image(self) -> PermGroup:
        if not hasattr(self, "_image"):
            self._image = subgroup(self.target_degree, set(self.mapping.values()))
        return self._image

    def is_injective(self) -> bool:
        return self.kernel.is_trivial()

    def preimage(self, elements: Iterable[Permutation]) -> PermGroup:
        """Preimage of a subgroup of the image, given by its elements."""
        wanted = set(elements)
        return subgroup(self.source.degree, (g for g, v in self.mapping.items() if v in wanted))


def hom_from_generator_images(
    G: PermGroup, images: Sequence[Permutation], target_degree: int
) -> tuple[GroupHom | None, tuple | None]:
    """Extend ``G.generators[i] -> images[i]`` to all of ``G`` via stored words.

    Returns ``(hom, None)``, or ``(None, (e, i))`` where ``image(e * g_i)``
    differs from ``image(e) * images[i]``: the assignment is ill-defined.
    """
    images = list(images)
    if len(images) != len(G.generators):
        raise DomainError(f"{len(images)} images for {len(G.generators)} generators")
    for img in images:
        if img.degree != target_degree:
            raise DomainError(f"image {img} does not have degree {target_degree}")
    inverses = [img.inverse() for img in images]
    identity = Permutation.identity(target_degree)
    mapping = {G.identity: identity}
    for e in G._bfs[1:]:
        prev, i, inverted = G._parent[e]
        mapping[e] = mapping[prev] * (inverses[i] if inverted else images[i])
    for e in G.elements:
        for i, g in enumerate(G.generators):
            if mapping[e * g] != mapping[e] * images[i]:
                return None, (e, i)
    kernel = subgroup(G.degree, (g for g, v in mapping.items() if v == identity))
    return GroupHom(G, target_degree, mapping, kernel), None


def quotient_group(G: PermGroup, N: PermGroup) -> tuple[PermGroup, dict]:
    """``G/N`` as the right-multiplication action of ``G`` on the cosets of ``N``.

    Returns the image group and the projection ``g -> coset permutation``.
    """
    witness = normality_witness(N, G)
    if witness is not None:
        raise NotNormalError("quotient by a subgroup that is not normal", witness=witness)
    cosets = right_cosets(N, G)
    lookup = coset_lookup(cosets)
    reps = [c.representative for c in cosets]
    projection = {g: Permutation._trusted(tuple(lookup[r * g] for r in reps)) for g in G.elements}
    Q = generate(len(cosets), [projection[g] for g in G.generators])
    return Q, projection


def _element_orders(G: PermGroup) -> dict[Permutation, int]:
    return {g: g.order() for g in G.elements}


def find_group_isomorphism(A: PermGroup, B: PermGroup, cap: int = 200) -> GroupHom | None:
    """Brute-force isomorphism search by backtracking over generator images."""
    if A.order != B.order:
        return None
    if A.order > cap:
        raise ResourceError(f"group isomorphism test capped at order {cap}")
    gens = list(subgroup(A.degree, A.elements).generators)
    prefixes = [generate(A.degree, gens[: k + 1]) for k in range(len(gens))]
    orders_B = _element_orders(B)
    by_order: dict[int, list[Permutation]] = {}
    for b, k in orders_B.items():
        by_order.setdefault(k, []).append(b)
    for lst in by_order.values():
        lst.sort()
    candidates = [by_order.get(g.order(), []) for g in gens]

    def extend(chosen):
        k = len(chosen)
        if k:
            # the partial assignment must already be an injective hom
            hom, _ = hom_from_generator_images(prefixes[k - 1], chosen, B.degree)
            if hom is None or not hom.is_injective():
                return None
            if k == len(gens):
                return hom
        for b in candidates[k]:
            found = extend(chosen + [b])
            if found is not None:
                return found
        return None

    if not gens:
        return hom_from_generator_images(A, [], B.degree)[0]
    return extend([])
