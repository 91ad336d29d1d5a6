"""Small finite groups given by multiplication tables, and homomorphism enumeration.

Group words here are tuples of nonzero ints: ``k + 1`` is generator ``k`` and
``-(k + 1)`` its inverse. A word is evaluated left to right in path order,
``value(l1 l2 ... lk) = phi(l1) * phi(l2) * ... * phi(lk)``. Counting and
separating words does not depend on which of the two orders is used, as long
as it is used consistently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .errors import BudgetError

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    table: tuple  # table[a][b] = a * b
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def inverses(self) -> tuple:
        cached = self.__dict__.get("_inv")
        if cached is None:
            e = self.identity
            cached = tuple(next(b for b in range(self.order) if self.table[a][b] == e)
                           for a in range(self.order))
            object.__setattr__(self, "_inv", cached)
        return cached

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def evaluate(self, word: Sequence[int], assignment: Sequence[int]) -> int:
        table, inv = self.table, self.inverses
        x = self.identity
        for letter in word:
            g = assignment[letter - 1] if letter > 0 else inv[assignment[-letter - 1]]
            x = table[x][g]
        return x

    def is_group(self) -> bool:
        n, t, e = self.order, self.table, self.identity
        if any(t[e][a] != a or t[a][e] != a for a in range(n)):
            return False
        if any(sorted(row) != list(range(n)) for row in t):
            return False
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))

    @classmethod
    def from_operation(cls, name: str, elements: Sequence, op: Callable, identity) -> "FiniteGroup":
        elements = list(elements)
        # identity goes first
        elements.remove(identity)
        elements.insert(0, identity)
        index = {x: i for i, x in enumerate(elements)}
        table = tuple(tuple(index[op(a, b)] for b in elements) for a in elements)
        return cls(name, table, 0)

    @classmethod
    def from_permutations(cls, name: str, generators: Sequence[tuple]) -> "FiniteGroup":
        n = len(generators[0])
        e = tuple(range(n))

        def op(p, q):  # p then q
            return tuple(q[p[i]] for i in range(n))

        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in generators:
                    y = op(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return cls.from_operation(name, sorted(seen), op, e)


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup.from_operation(f"Z{n}", range(n), lambda a, b: (a + b) % n, 0)


def abelian(*ns: int) -> FiniteGroup:
    elems = list(itertools.product(*(range(k) for k in ns)))
    return FiniteGroup.from_operation(
        "x".join(f"Z{k}" for k in ns),
        elems,
        lambda a, b: tuple((x + y) % k for x, y, k in zip(a, b, ns)),
        tuple(0 for _ in ns),
    )


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n (D3 is S3)."""
    elems = [(k, s) for s in (0, 1) for k in range(n)]
    return FiniteGroup.from_operation(
        f"D{n}",
        elems,
        lambda a, b: ((a[0] + (-1) ** a[1] * b[0]) % n, a[1] ^ b[1]),
        (0, 0),
    )


def quaternion() -> FiniteGroup:
    # unit quaternions {±1, ±i, ±j, ±k} as (sign, unit) with unit in 1, i, j, k = 0..3
    unit_table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def op(a, b):
        s, u = unit_table[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    elems = [(s, u) for s in (1, -1) for u in range(4)]
    return FiniteGroup.from_operation("Q8", elems, op, (1, 0))


def dicyclic3() -> FiniteGroup:
    elems = [(i, j) for i in range(3) for j in range(4)]
    return FiniteGroup.from_operation(
        "Dic3",
        elems,
        lambda a, b: ((a[0] + (-1) ** a[1] * b[0]) % 3, (a[1] + b[1]) % 4),
        (0, 0),
    )


def alternating4() -> FiniteGroup:
    return FiniteGroup.from_permutations("A4", [(1, 2, 0, 3), (1, 0, 3, 2)])


@lru_cache(maxsize=None)
def small_groups(max_order: int = 8) -> tuple:
    """One representative of every isomorphism class of order <= max_order (max 12)."""
    if max_order > 12:
        raise ValueError("the built-in group list stops at order 12")
    library = [
        FiniteGroup("1", ((0,),), 0),
        cyclic(2), cyclic(3), cyclic(4), abelian(2, 2), cyclic(5), cyclic(6),
        dihedral(3), cyclic(7), cyclic(8), abelian(4, 2), abelian(2, 2, 2),
        dihedral(4), quaternion(), cyclic(9), abelian(3, 3), cyclic(10),
        dihedral(5), cyclic(11), cyclic(12), abelian(6, 2), alternating4(),
        dihedral(6), dicyclic3(),
    ]
    return tuple(g for g in library if g.order <= max_order)


def group_by_name(name: str) -> FiniteGroup:
    for g in small_groups(12):
        if g.name == name:
            return g
    raise KeyError(name)


# -- homomorphism enumeration ----------------------------------------------------


class _Search:
    """Backtracking over generator images; each relator is checked once all its
    generators are assigned."""

    def __init__(self, ngens, relators, group, budget):
        self.group = group
        self.budget = DEFAULT_BUDGET if budget is None else budget
        self.evaluations = 0
        rels = [tuple(r) for r in relators if r]
        used = []
        for r in sorted(rels, key=len):
            for letter in r:
                k = abs(letter) - 1
                if k not in used:
                    used.append(k)
        self.free = [k for k in range(ngens) if k not in used]
        self.order = used
        position = {k: i for i, k in enumerate(used)}
        self.checks = [[] for _ in used]
        for r in rels:
            last = max(position[abs(l) - 1] for l in r)
            self.checks[last].append(r)
        self.ngens = ngens

    def solutions(self, rng=None) -> Iterator[list]:
        """Yield assignments of the constrained generators (free ones left at 0)."""
        G = self.group
        assignment = [G.identity] * self.ngens
        values = list(range(G.order))
        depth_total = len(self.order)

        def rec(depth):
            if depth == depth_total:
                yield assignment
                return
            k = self.order[depth]
            vals = values
            if rng is not None:
                vals = values[:]
                rng.shuffle(vals)
            for v in vals:
                assignment[k] = v
                ok = True
                for r in self.checks[depth]:
                    self.evaluations += 1
                    if self.evaluations > self.budget:
                        raise BudgetError(
                            f"homomorphism search into {G.name} exceeded {self.budget} relator evaluations"
                        )
                    if G.evaluate(r, assignment) != G.identity:
                        ok = False
                        break
                if ok:
                    yield from rec(depth + 1)
            assignment[k] = G.identity

        yield from rec(0)


def count_homomorphisms(ngens: int, relators, group: FiniteGroup, budget: int | None = None) -> int:
    search = _Search(ngens, relators, group, budget)
    n = sum(1 for _ in search.solutions())
    return n * group.order ** len(search.free)


def iter_homomorphisms(ngens: int, relators, group: FiniteGroup, budget: int | None = None,
                       rng=None) -> Iterator[tuple]:
    """Yield full assignments (free generators included) satisfying all relators."""
    search = _Search(ngens, relators, group, budget)
    frees = search.free
    for partial in search.solutions(rng=rng):
        if not frees:
            yield tuple(partial)
            continue
        if rng is not None:
            full = list(partial)
            for k in frees:
                full[k] = rng.randrange(group.order)
            yield tuple(full)
            continue
        for combo in itertools.product(range(group.order), repeat=len(frees)):
            full = list(partial)
            for k, v in zip(frees, combo):
                full[k] = v
            yield tuple(full)


def brute_force_count(ngens: int, relators, group: FiniteGroup) -> int:
    """Reference count by exhaustive enumeration; only for tiny inputs."""
    return sum(
        all(group.evaluate(r, a) == group.identity for r in relators)
        for a in itertools.product(range(group.order), repeat=ngens)
    )
