"""Finite quandles given by operation tables.

``table[x][y]`` is ``x |> y``.  The symmetry at ``y`` is the column map
``S_y: x -> x |> y``; in the right-action convention of :mod:`permgroup`
that is ``x . S_y``.  Each column of a quandle table is a permutation fixing
its own index, and right distributivity says every ``S_z`` is an
automorphism: ``S_{y . S_z} = S_z^-1 * S_y * S_z``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import AxiomError, DomainError, HomomorphismError, TableError
from .permgroup import PermGroup, Permutation, conjugacy_class, generate, orbits as group_orbits


class Quandle:
    """A validated quandle; build with :func:`validate`."""

    def __init__(self, table: tuple[tuple[int, ...], ...], inv_table: tuple[tuple[int, ...], ...]):
        self.table = table
        self.inv_table = inv_table

    @property
    def size(self) -> int:
        return len(self.table)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv_op(self, x: int, y: int) -> int:
        return self.inv_table[x][y]

    @cached_property
    def symmetries(self) -> tuple[Permutation, ...]:
        n = self.size
        return tuple(Permutation._trusted(tuple(self.table[x][y] for x in range(n))) for y in range(n))

    @cached_property
    def inn(self) -> PermGroup:
        return generate(self.size, self.symmetries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Quandle) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"<Quandle size={self.size} table={[list(r) for r in self.table]}>"


def _as_table(table) -> tuple[tuple[int, ...], ...]:
    try:
        rows = [list(r) for r in table]
    except TypeError as exc:
        raise TableError("table must be a list of rows") from exc
    n = len(rows)
    if n == 0:
        raise TableError("table is empty")
    for x, row in enumerate(rows):
        if len(row) != n:
            raise TableError(f"table is not square: row {x} has {len(row)} entries, expected {n}")
        for y, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int):
                raise TableError(f"entry ({x},{y}) is not an integer: {v!r}")
            if not 0 <= v < n:
                raise TableError(f"entry ({x},{y}) = {v} out of range 0..{n - 1}")
    return tuple(tuple(r) for r in rows)


def validate(table) -> Quandle:
    """Check the three quandle axioms and derive the inverse operation.

    Raises :class:`TableError` for malformed input and :class:`AxiomError`
    naming the first axiom that fails, with a witness.
    """
    t = _as_table(table)
    n = len(t)
    for x in range(n):
        if t[x][x] != x:
            raise AxiomError("i", f"axiom i: {x} |> {x} = {t[x][x]}, expected {x}", witness=(x,))
    inv = [[0] * n for _ in range(n)]
    for y in range(n):
        seen: dict[int, int] = {}
        for x in range(n):
            v = t[x][y]
            if v in seen:
                raise AxiomError(
                    "ii",
                    f"axiom ii, column {y}: rows {seen[v]} and {x} both give {v}",
                    witness=(y, seen[v], x),
                )
            seen[v] = x
            inv[v][y] = x
    for x in range(n):
        for y in range(n):
            xy = t[x][y]
            for z in range(n):
                if t[xy][z] != t[t[x][z]][t[y][z]]:
                    raise AxiomError(
                        "iii",
                        f"axiom iii: ({x} |> {y}) |> {z} != ({x} |> {z}) |> ({y} |> {z})",
                        witness=(x, y, z),
                    )
    return Quandle(t, tuple(tuple(r) for r in inv))


def trivial_quandle(n: int) -> Quandle:
    return validate([[x] * n for x in range(n)])


def dihedral_quandle(n: int) -> Quandle:
    """``R_n``: ``x |> y = 2y - x mod n``."""
    return validate([[(2 * y - x) % n for y in range(n)] for x in range(n)])


def alexander_quandle(n: int, t: int) -> Quandle:
    """``x |> y = t*x + (1-t)*y mod n`` for a unit ``t``."""
    return validate([[(t * x + (1 - t) * y) % n for y in range(n)] for x in range(n)])


def relabel(Q: Quandle, perm: Sequence[int]) -> Quandle:
    """The isomorphic copy in which element ``x`` is renamed ``perm[x]``."""
    n = Q.size
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    return validate([[perm[Q.table[inv[a]][inv[b]]] for b in range(n)] for a in range(n)])


def _check_element(Q: Quandle, x: int) -> None:
    if not 0 <= x < Q.size:
        raise DomainError(f"element {x} out of range for a quandle of size {Q.size}")


def symmetry(Q: Quandle, x: int) -> Permutation:
    """``S_x: y -> y |> x``."""
    _check_element(Q, x)
    return Q.symmetries[x]


def inn(Q: Quandle) -> PermGroup:
    """Inner automorphism group; generator ``i`` is ``S_i``."""
    return Q.inn


def orbits(Q: Quandle) -> list[frozenset[int]]:
    return group_orbits(Q.inn)


def is_connected(Q: Quandle) -> bool:
    return len(orbits(Q)) == 1


def conj_quandle(G: PermGroup, seeds) -> tuple[Quandle, list[Permutation]]:
    """Union of the conjugacy classes of ``seeds`` under ``x |> y = y^-1 x y``.

    With right actions, ``S_y`` is then conjugation by ``y``.  Labels are
    the carrier elements in sorted order.
    """
    carrier: set[Permutation] = set()
    for s in seeds:
        if s not in G:
            raise DomainError(f"seed {s} is not in the group", witness=s)
        carrier |= conjugacy_class(s, G)
    labels = sorted(carrier)
    index = {p: i for i, p in enumerate(labels)}
    inverses = [p.inverse() for p in labels]
    table = [[index[inverses[j] * x * y] for j, y in enumerate(labels)] for x in labels]
    return validate(table), labels


@dataclass(frozen=True)
class QuandleHom:
    source: Quandle
    target: Quandle
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def then(self, other: "QuandleHom") -> "QuandleHom":
        """``other`` after ``self``."""
        if other.source != self.target:
            raise DomainError("composing homomorphisms whose ends do not match")
        return QuandleHom(self.source, other.target, tuple(other.map[v] for v in self.map))

    def kernel_partition(self) -> list[frozenset[int]]:
        blocks: dict[int, set[int]] = {}
        for x, v in enumerate(self.map):
            blocks.setdefault(v, set()).add(x)
        return sorted((frozenset(b) for b in blocks.values()), key=min)


def hom_violation(mapping: Sequence[int], Q: Quandle, R: Quandle) -> tuple[int, int] | None:
    """First ``(x, y)``, scanning column by column, with ``f(x|>y) != f(x)|>f(y)``."""
    for y in range(Q.size):
        fy = mapping[y]
        for x in range(Q.size):
            if mapping[Q.table[x][y]] != R.table[mapping[x]][fy]:
                return x, y
    return None


def check_hom(mapping: Sequence[int], Q: Quandle, R: Quandle) -> QuandleHom:
    mapping = tuple(mapping)
    if len(mapping) != Q.size:
        raise DomainError(f"map has {len(mapping)} entries for a source of size {Q.size}")
    for v in mapping:
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < R.size:
            raise DomainError(f"map value {v!r} out of range 0..{R.size - 1}")
    bad = hom_violation(mapping, Q, R)
    if bad is not None:
        x, y = bad
        raise HomomorphismError(
            f"f({x} |> {y}) = {mapping[Q.table[x][y]]} but f({x}) |> f({y}) = "
            f"{R.table[mapping[x]][mapping[y]]}",
            witness=bad,
        )
    return QuandleHom(Q, R, mapping)


def identity_hom(Q: Quandle) -> QuandleHom:
    return QuandleHom(Q, Q, tuple(range(Q.size)))


def subquandle(Q: Quandle, elements) -> tuple[Quandle, list[int]]:
    """The induced quandle on a subset closed under both operations."""
    labels = sorted(set(elements))
    index = {x: i for i, x in enumerate(labels)}
    try:
        table = [[index[Q.table[a][b]] for b in labels] for a in labels]
    except KeyError as exc:
        raise DomainError(f"{sorted(labels)} is not closed under |>") from exc
    return validate(table), labels


def image_subquandle(h: QuandleHom) -> tuple[Quandle, list[int]]:
    """Image of ``h`` as a quandle, with its labeling into the target."""
    return subquandle(h.target, set(h.map))


def _element_invariants(Q: Quandle) -> list[tuple]:
    orbit_size = {}
    for o in orbits(Q):
        for x in o:
            orbit_size[x] = len(o)
    out = []
    for x in range(Q.size):
        row_profile = tuple(sorted(Counter(Q.table[x]).values()))
        out.append((Q.symmetries[x].cycle_type(), orbit_size[x], row_profile))
    return out


def isomorphisms(Q: Quandle, R: Quandle):
    """Every isomorphism ``Q -> R``, as maps, in lexicographic order.

    Candidates for the image of ``x`` must share its symmetry cycle type,
    orbit size and row profile; each assignment propagates the images of
    all products of already-assigned elements.
    """
    n = Q.size
    if n != R.size:
        return
    inv_q = _element_invariants(Q)
    inv_r = _element_invariants(R)
    if sorted(inv_q) != sorted(inv_r):
        return
    tq, tr = Q.table, R.table

    def propagate(f, used, fresh):
        assigned = [x for x in range(n) if f[x] >= 0]
        queue = list(fresh)
        while queue:
            a = queue.pop()
            for b in list(assigned):
                for c, d in ((tq[a][b], tr[f[a]][f[b]]), (tq[b][a], tr[f[b]][f[a]])):
                    if f[c] < 0:
                        if used[d] or inv_q[c] != inv_r[d]:
                            return False
                        f[c] = d
                        used[d] = True
                        assigned.append(c)
                        queue.append(c)
                    elif f[c] != d:
                        return False
        return True

    def search(f, used):
        try:
            x = f.index(-1)
        except ValueError:
            yield tuple(f)
            return
        for y in range(n):
            if used[y] or inv_r[y] != inv_q[x]:
                continue
            g, u = f[:], used[:]
            g[x] = y
            u[y] = True
            if propagate(g, u, [x]):
                yield from search(g, u)

    for f in search([-1] * n, [False] * n):
        yield check_hom(f, Q, R)


def is_isomorphic(Q: Quandle, R: Quandle) -> QuandleHom | None:
    """First isomorphism ``Q -> R`` found by pruned backtracking, or ``None``."""
    return next(isomorphisms(Q, R), None)


def automorphisms(Q: Quandle) -> list[QuandleHom]:
    return list(isomorphisms(Q, Q))
