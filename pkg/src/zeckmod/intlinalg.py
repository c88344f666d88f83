"""Exact integer linear algebra on lists of Python ints.

Matrices are lists of rows.  Everything here works over arbitrary-precision
integers; nothing is ever converted to float.
"""

from __future__ import annotations

from typing import Optional, Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    if len(A[0]) != len(B):
        raise ValueError("Dimension mismatch")
    cols = len(B[0]) if B else 0
    return [[sum(a * B[t][j] for t, a in enumerate(row)) for j in range(cols)] for row in A]


def vec_mat(v: Sequence[int], A: Sequence[Sequence[int]]) -> list[int]:
    """Row vector times matrix."""
    if len(v) != len(A):
        raise ValueError("Dimension mismatch")
    cols = len(A[0]) if A else 0
    return [sum(c * A[i][j] for i, c in enumerate(v)) for j in range(cols)]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    if any(len(row) != n for row in M):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for c in range(n - 1):
        if M[c][c] == 0:
            swap = next((r for r in range(c + 1, n) if M[r][c] != 0), None)
            if swap is None:
                return 0
            M[c], M[swap] = M[swap], M[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                M[r][j] = (M[r][j] * M[c][c] - M[r][c] * M[c][j]) // prev
        prev = M[c][c]
    return sign * M[n - 1][n - 1]


def hermite_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ A == H``.  ``H`` is in
    row echelon form with positive pivots, every entry above a pivot reduced
    into ``[0, pivot)``, and zero rows at the bottom.
    """
    if not A or not A[0]:
        raise ValueError("hermite_normal_form needs a nonempty matrix")
    m, n = len(A), len(A[0])
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    H = [list(map(int, row)) for row in A]
    U = identity(m)

    def combine(i: int, j: int, a: int, b: int, c: int, d: int) -> None:
        # rows (i, j) <- (a*row_i + b*row_j, c*row_i + d*row_j); ad - bc = +-1
        for M in (H, U):
            ri, rj = M[i], M[j]
            M[i] = [a * x + b * y for x, y in zip(ri, rj)]
            M[j] = [c * x + d * y for x, y in zip(ri, rj)]

    r = 0
    for col in range(n):
        if r == m:
            break
        # gather the gcd of the column (rows r..m-1) into row r
        for i in range(r + 1, m):
            if H[i][col] == 0:
                continue
            a, b = H[r][col], H[i][col]
            g, s, t = _xgcd(a, b)
            # [s t; -b/g a/g] has determinant (s*a + t*b)/g = 1
            combine(r, i, s, t, -b // g, a // g)
        if H[r][col] == 0:
            continue
        if H[r][col] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][col]
        for i in range(r):
            q = H[i][col] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, rem = divmod(a, b)
        a, b = b, rem
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def is_hnf(H: Sequence[Sequence[int]]) -> bool:
    """Shape predicate for the row-style HNF produced above."""
    last_pivot = -1
    seen_zero = False
    for i, row in enumerate(H):
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is None:
            seen_zero = True
            continue
        if seen_zero or lead <= last_pivot or row[lead] <= 0:
            return False
        if any(not 0 <= H[r][lead] < row[lead] for r in range(i)):
            return False
        last_pivot = lead
    return True


def _pivots(H: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    out = []
    for i, row in enumerate(H):
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is None:
            break
        out.append((i, lead))
    return out


def _check_dims(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        raise ValueError("need at least one vector")
    dim = len(vectors[0])
    if dim == 0 or any(len(v) != dim for v in vectors):
        raise ValueError("vectors must share one nonzero dimension")
    return dim


def solve_coordinates(
    generators: Sequence[Sequence[int]], target: Sequence[int]
) -> Optional[list[int]]:
    """Find integers c with sum(c[i] * generators[i]) == target, or None."""
    dim = _check_dims(generators)
    if len(target) != dim:
        raise ValueError(f"target has dimension {len(target)}, expected {dim}")
    H, U = hermite_normal_form(generators)
    y = [0] * len(H)
    for i, col in _pivots(H):
        residual = target[col] - sum(y[r] * H[r][col] for r in range(i))
        q, rem = divmod(residual, H[i][col])
        if rem:
            return None
        y[i] = q
    if vec_mat(y, H) != list(target):
        return None
    return vec_mat(y, U)


def spans_full_lattice(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the integer span of ``vectors`` is all of Z^dim."""
    dim = _check_dims(vectors)
    H, _ = hermite_normal_form(vectors)
    piv = _pivots(H)
    return len(piv) == dim and all(H[i][j] == 1 for i, j in piv)


def integral_dependence(vectors: Sequence[Sequence[int]]) -> Optional[list[int]]:
    """A nonzero integer relation among ``vectors``, or None if independent.

    The relation is primitive and its first nonzero entry is positive.
    """
    _check_dims(vectors)
    H, U = hermite_normal_form(vectors)
    rank = len(_pivots(H))
    if rank == len(vectors):
        return None
    y = U[rank]
    if next(x for x in y if x) < 0:
        y = [-x for x in y]
    return y
