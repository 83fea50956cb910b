"""Exact integer linear algebra on dense matrices.

Matrices are plain lists of rows of Python ints, so every entry is an
arbitrary-precision integer and nothing here ever touches floating point.
The module provides the primitives the rest of the package is built on:

* ``hnf`` - row-style Hermite normal form (canonical bases, row-span tests),
* ``kernel_basis`` - integer kernels of mixed equality / congruence systems,
* ``rank`` / ``bareiss_det`` / ``gram_det`` - fraction-free Bareiss elimination,
* ``char_poly`` - Faddeev-LeVerrier characteristic polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def mat_mul(A, B) -> Matrix:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def gram_matrix(B) -> Matrix:
    """Matrix of pairwise scalar products of the rows of B."""
    return [[sum(a * b for a, b in zip(u, v)) for v in B] for u in B]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf(M) -> Matrix:
    """Row-style Hermite normal form of M.

    The result has the same shape as M: nonzero rows first with strictly
    increasing pivot columns, positive pivots, entries above each pivot
    reduced into [0, pivot), and zero rows at the bottom.  The integer row
    span is preserved.
    """
    A = [list(row) for row in M]
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, nrows):
            if not A[i][c]:
                continue
            a, b = A[r][c], A[i][c]
            g, x, y = xgcd(a, b)
            u, v = a // g, b // g
            Ar, Ai = A[r], A[i]
            A[r] = [x * p + y * q for p, q in zip(Ar, Ai)]
            A[i] = [u * q - v * p for p, q in zip(Ar, Ai)]
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [p - q * s for p, s in zip(A[i], A[r])]
        r += 1
    return A


def nonzero_rows(M) -> Matrix:
    return [list(row) for row in M if any(row)]


def in_row_span_hnf(H, v) -> bool:
    """Membership of v in the integer row span of an HNF matrix H."""
    w = list(v)
    pivots = {}
    for row in H:
        c = next((j for j, x in enumerate(row) if x), None)
        if c is not None:
            pivots[c] = row
    for c in range(len(w)):
        x = w[c]
        if not x:
            continue
        row = pivots.get(c)
        if row is None or x % row[c]:
            return False
        q = x // row[c]
        for j in range(c, len(w)):
            w[j] -= q * row[j]
    return not any(w)


def integer_kernel(A) -> Matrix:
    """HNF basis (as rows) of {x in Z^c : A x = 0} for an r x c matrix A."""
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    # Row-reduce [A^t | I]; rows whose left block vanishes record kernel
    # combinations in the right block, already in HNF.
    aug = [[A[i][j] for i in range(nrows)] + [1 if t == j else 0 for t in range(ncols)]
           for j in range(ncols)]
    H = hnf(aug)
    return [row[nrows:] for row in H if not any(row[:nrows])]


@dataclass(frozen=True)
class KernelProblem:
    """Integer congruence system: rows (weights, modulus), modulus 0 meaning
    equality over the integers."""

    ambient_dim: int
    rows: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        for weights, modulus in self.rows:
            if len(weights) != self.ambient_dim:
                raise ValueError("weight vector length does not match ambient dimension")
            if modulus < 0:
                raise ValueError("modulus must be nonnegative")


def kernel_basis(problem: KernelProblem) -> Matrix:
    """Canonical (HNF) basis of {v in Z^n : <w_i, v> = 0 mod m_i for all i}.

    Congruence rows get an auxiliary integer unknown each, so a single
    integer-kernel computation covers both exact and modular constraints.
    """
    n = problem.ambient_dim
    mod_slots = [i for i, (_, m) in enumerate(problem.rows) if m > 0]
    slot_of = {i: s for s, i in enumerate(mod_slots)}
    s = len(mod_slots)
    A = []
    for i, (weights, modulus) in enumerate(problem.rows):
        aux = [0] * s
        if modulus > 0:
            aux[slot_of[i]] = -modulus
        A.append(list(weights) + aux)
    if not A:
        return identity(n)
    full = integer_kernel(A)
    projected = [row[:n] for row in full]
    basis = nonzero_rows(hnf(projected))
    assert len(basis) == len(projected), "kernel projection lost rank"
    return basis


def rank(M) -> int:
    """Exact rank over the rationals by fraction-free Bareiss elimination."""
    A = [list(row) for row in M]
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        Ar = A[r]
        p = Ar[c]
        for i in range(r + 1, nrows):
            Ai = A[i]
            q = Ai[c]
            A[i] = [(p * a - q * b) // prev for a, b in zip(Ai, Ar)]
        prev = p
        r += 1
    return r


def bareiss_det(M) -> int:
    """Exact determinant of a square integer matrix."""
    n = len(M)
    for row in M:
        if len(row) != n:
            raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        Ac = A[c]
        p = Ac[c]
        for i in range(c + 1, n):
            Ai = A[i]
            q = Ai[c]
            A[i] = [(p * a - q * b) // prev for a, b in zip(Ai, Ac)]
        prev = p
    return sign * A[n - 1][n - 1]


def gram_det(B) -> int:
    """det(B B^t) for a matrix with linearly independent rows."""
    d = bareiss_det(gram_matrix(B))
    if d <= 0:
        raise ValueError("singular Gram")
    return d


def char_poly(M) -> list[int]:
    """Coefficients of det(t*I - M), highest degree first (monic).

    Computed by the Faddeev-LeVerrier recurrence; every division is exact,
    so the whole computation stays in the integers.
    """
    n = len(M)
    for row in M:
        if len(row) != n:
            raise ValueError("characteristic polynomial needs a square matrix")
    if n == 0:
        return [1]
    coeffs = [1]
    Mk = [list(row) for row in M]
    for k in range(1, n + 1):
        ck, r = divmod(-sum(Mk[i][i] for i in range(n)), k)
        assert r == 0, "Faddeev-LeVerrier division must be exact"
        coeffs.append(ck)
        if k == n:
            break
        for i in range(n):
            Mk[i][i] += ck
        Mk = mat_mul(M, Mk)
    return coeffs


def poly_eval_matrix(coeffs, M) -> Matrix:
    """Evaluate a polynomial (coefficients highest first) at a square matrix."""
    n = len(M)
    acc = [[0] * n for _ in range(n)]
    for c in coeffs:
        acc = mat_mul(acc, M)
        for i in range(n):
            acc[i][i] += c
    return acc


def parse_matrix(text: str) -> Matrix:
    """Parse the matrix text format: "rows cols" header, then integer rows."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("matrix header must be 'rows cols'")
    nrows, ncols = int(header[0]), int(header[1])
    if len(lines) != nrows + 1:
        raise ValueError(f"expected {nrows} rows, got {len(lines) - 1}")
    M = []
    for ln in lines[1:]:
        row = [int(tok) for tok in ln.split()]
        if len(row) != ncols:
            raise ValueError("ragged row in matrix text")
        M.append(row)
    return M


def format_matrix(M) -> str:
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    out = [f"{nrows} {ncols}"]
    out.extend(" ".join(str(x) for x in row) for row in M)
    return "\n".join(out) + "\n"
