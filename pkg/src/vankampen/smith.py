"""Smith normal form over the integers, with unimodular transforms.

Pivoting always moves the smallest nonzero absolute value of the active block
into the pivot position (row-major scan breaks ties), so the output, including
the transforms, is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

LIMIT = 2**63


def _check(x):
    if abs(x) >= LIMIT:
        raise OverflowError("Smith normal form entry exceeded 2**63")


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def as_tuple(self):
        return (self.free_rank, list(self.torsion))


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """Return ``(D, U, V)`` with ``U @ matrix @ V == D`` and ``D`` in Smith form.

    ``matrix`` is a list of integer rows; all returned matrices are lists of lists.
    """
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]
        for x in A[dst]:
            _check(x)

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
            _check(row[dst])
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            # any remainder left in the pivot row/column is smaller than the pivot
            small = None
            for i in range(t + 1, m):
                if A[i][t] and (small is None or abs(A[i][t]) < abs(small[2])):
                    small = ("r", i, A[i][t])
            for j in range(t + 1, n):
                if A[t][j] and (small is None or abs(A[t][j]) < abs(small[2])):
                    small = ("c", j, A[t][j])
            if small is not None:
                if small[0] == "r":
                    swap_rows(t, small[1])
                else:
                    swap_cols(t, small[1])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def diagonal(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def invariants_of(matrix, ncols: int) -> AbelianInvariants:
    """Invariants of the abelian group ``Z^ncols / rowspace(matrix)``."""
    if not matrix:
        return AbelianInvariants(ncols, ())
    D, _, _ = smith_normal_form(matrix)
    diag = [d for d in diagonal(D) if d]
    return AbelianInvariants(ncols - len(diag), tuple(d for d in diag if d > 1))


class RowLattice:
    """Membership test for the integer row space of a fixed matrix."""

    def __init__(self, matrix, ncols: int):
        self.ncols = ncols
        if matrix:
            D, _, V = smith_normal_form(matrix)
            self.diag = [d for d in diagonal(D) if d]
            self.V = V
        else:
            self.diag = []
            self.V = _identity(ncols)

    def __contains__(self, vector) -> bool:
        y = [sum(vector[i] * self.V[i][j] for i in range(self.ncols)) for j in range(self.ncols)]
        for j, yj in enumerate(y):
            d = self.diag[j] if j < len(self.diag) else 0
            if d == 0:
                if yj:
                    return False
            elif yj % d:
                return False
        return True
