"""Perfection analysis through exact symmetric-tensor ranks.

A set of vectors is perfect when its squared flattenings v_i v_j span the
whole space of symmetric matrices on the span of the set.  This module
computes that rank exactly, derives perfection defaults, k-th power rank
series, the hyperplane-splitting sufficient condition, perfection threshold
scans over excluded indices, neighbor-count statistics of shortest vectors,
and scalar-product graphs (degree profiles, strongly regular parameters,
exact spectra).

Rank strategy: ranks over Q are certified by a single modular elimination
whenever the modular rank hits the theoretical cap (the rank can never
exceed the cap and never drops mod p unless p divides all top minors);
otherwise the exact fraction-free elimination settles the value.  Results
are exact either way; the modular pass only short-circuits the common
perfect case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, gcd

from . import families, intlinalg, lattice
from .errors import ConstructionError
from .families import FamilySpec
from .lattice import Lattice, MinimalVectorSet, sign_canonical

_CERT_PRIME = (1 << 61) - 1


def _rank_mod_p(rows, cap: int | None = None, p: int = _CERT_PRIME) -> int:
    """Rank of the rows mod p (a lower bound for the rank over Q),
    stopping early once cap is reached."""
    pivots: list[tuple[int, list[int]]] = []
    rank = 0
    for row in rows:
        r = [x % p for x in row]
        for col, prow in pivots:
            f = r[col]
            if f:
                r = [(a - f * b) % p for a, b in zip(r, prow)]
        col = next((j for j, x in enumerate(r) if x), None)
        if col is None:
            continue
        inv = pow(r[col], -1, p)
        pivots.append((col, [(a * inv) % p for a in r]))
        rank += 1
        if cap is not None and rank == cap:
            break
    return rank


def _certified_rank(rows, cap: int) -> int:
    """Exact rank over Q of rows known to have rank <= cap."""
    if not rows:
        return 0
    if _rank_mod_p(rows, cap) == cap:
        return cap
    return intlinalg.rank(rows)


def _sym2_row(v) -> list[int]:
    return [v[i] * v[j] for i in range(len(v)) for j in range(i, len(v))]


def sym_square_rank(vectors) -> int:
    """Rank of the span of the symmetric squares v v^t of the given vectors.

    Rows are the upper-triangle flattenings with raw products v_i v_j; the
    rank over Q does not depend on that choice of weighting.
    """
    vecs = [list(v) for v in vectors]
    if not vecs:
        raise ValueError("need at least one vector")
    span = intlinalg.rank(vecs)
    cap = comb(span + 1, 2)
    return _certified_rank([_sym2_row(v) for v in vecs], cap)


@dataclass(frozen=True)
class PerfectionReport:
    d: int
    det: int
    min_norm: int
    mp: int
    sym_rank: int
    pd: int

    def to_json(self, family: str | None = None, params: dict | None = None) -> dict:
        out: dict = {}
        if family is not None:
            out["family"] = family
        if params is not None:
            out["params"] = params
        out.update({
            "d": str(self.d),
            "det": str(self.det),
            "min": str(self.min_norm),
            "mp": str(self.mp),
            "sym_rank": str(self.sym_rank),
            "pd": str(self.pd),
        })
        return out


def perfection_report(lat: Lattice, min_cap: int = 12) -> PerfectionReport:
    found = lattice.minimum(lat, min_cap)
    if found is None:
        raise ConstructionError(f"minimum exceeds cap {min_cap}")
    norm, mvs = found
    rank = sym_square_rank(mvs.vectors)
    d = lat.rank
    return PerfectionReport(
        d=d,
        det=lat.det,
        min_norm=norm,
        mp=mvs.count,
        sym_rank=rank,
        pd=comb(d + 1, 2) - rank,
    )


@dataclass(frozen=True)
class AlphaSeries:
    """Ranks of the k-fold symmetric power flattenings, alpha_0 = 1 first."""

    dims: tuple[int, ...]
    stabilized: bool


def _distinct_line_count(vectors) -> int:
    lines = set()
    for v in vectors:
        g = 0
        for x in v:
            g = gcd(g, x)
        if g:
            lines.add(sign_canonical(tuple(x // g for x in v)))
    return len(lines)


def alpha_series(vectors, kmax: int, budget: int = 200_000) -> AlphaSeries:
    """Dimension sequence of the spans of k-fold symmetric powers, k <= kmax.

    The k-th row of the flattening matrix evaluates every degree-k monomial
    at a vector, so the computed rank is the dimension of degree-k forms
    restricted to the point set.  The series is flagged stabilized when the
    last value reaches the number of distinct lines through the vectors,
    after which it stays constant forever.
    """
    vecs = [tuple(v) for v in vectors]
    if not vecs or kmax < 1:
        raise ValueError("need vectors and kmax >= 1")
    n = len(vecs[0])
    dims = [1]
    span = intlinalg.rank([list(v) for v in vecs])
    for k in range(1, kmax + 1):
        ncols = comb(n + k - 1, k)
        if ncols > budget:
            raise ValueError("symmetric power budget exceeded")
        monomials = list(combinations_with_replacement(range(n), k))
        rows = []
        for v in vecs:
            row = []
            for mono in monomials:
                prod = 1
                for i in mono:
                    prod *= v[i]
                row.append(prod)
            rows.append(row)
        dims.append(_certified_rank(rows, comb(span + k - 1, k)))
    return AlphaSeries(tuple(dims), stabilized=dims[-1] == _distinct_line_count(vecs))


@dataclass(frozen=True)
class HyperplaneSplit:
    section_perfect: bool
    complement_spans: bool

    @property
    def hypotheses_hold(self) -> bool:
        return self.section_perfect and self.complement_spans

    @property
    def implies_perfect(self) -> bool:
        return self.hypotheses_hold


def hyperplane_split_check(vectors, w) -> HyperplaneSplit:
    """Sufficient condition for perfection via a hyperplane section.

    Checks that (a) the vectors inside the hyperplane orthogonal to w form a
    perfect set there, and (b) the vectors outside it span the whole space.
    When both hold the full set is perfect; that conclusion is re-verified by
    a direct rank computation before returning.
    """
    if not any(w):
        raise ValueError("hyperplane normal must be nonzero")
    vecs = [tuple(v) for v in vectors]
    d = intlinalg.rank([list(v) for v in vecs])
    section, complement = [], []
    for v in vecs:
        (section if sum(a * b for a, b in zip(v, w)) == 0 else complement).append(v)
    section_perfect = bool(section) and sym_square_rank(section) == comb(d, 2)
    complement_spans = bool(complement) and intlinalg.rank([list(v) for v in complement]) == d
    result = HyperplaneSplit(section_perfect, complement_spans)
    if result.hypotheses_hold:
        assert sym_square_rank(vecs) == comb(d + 1, 2), "split criterion violated"
    return result


@dataclass(frozen=True)
class ScanResult:
    excl: tuple[int, ...]
    d_max: int
    bound: int
    perfect_ds: tuple[int, ...]
    failures: tuple[int, ...]
    D: int | None

    @property
    def certified(self) -> bool:
        return self.D is not None

    def to_json(self) -> dict:
        return {
            "excl": [str(a) for a in self.excl],
            "d_max": str(self.d_max),
            "tail_bound": str(self.bound),
            "perfect_ds": [str(d) for d in self.perfect_ds],
            "failures": [str(d) for d in self.failures],
            "D": "unresolved" if self.D is None else str(self.D),
        }


def _scan_entry(args) -> bool:
    excl, d = args
    lat = families.build_family(FamilySpec("Ld", d=d, excl=excl))
    found = lattice.minimum(lat, 4)
    if found is None or found[0] != 4:
        return False
    return sym_square_rank(found[1].vectors) == comb(d + 1, 2)


def scan_D(excl, d_max: int | None = None, jobs: int = 1) -> ScanResult:
    """Scan which dimensions give a perfect minimum-4 lattice for one
    exclusion list, and locate the successor of the last failure.

    The scan is finite: beyond max(7, 2(k+1)^3 - 1) the tail is all-perfect,
    so once d_max reaches that bound the returned D is exact.  Below the
    bound the scan reports the observed failures with D unresolved.  The
    per-dimension reports are independent and run across `jobs` processes;
    the result does not depend on the partitioning.
    """
    excl = tuple(excl)
    k = len(excl)
    bound = max(7, 2 * (k + 1) ** 3 - 1)
    if d_max is None:
        d_max = bound
    dims = range(1, d_max + 1)
    args = [(excl, d) for d in dims]
    if jobs > 1 and len(args) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_scan_entry, args))
    else:
        outcomes = [_scan_entry(a) for a in args]
    perfect, failures = [], []
    for d, ok in zip(dims, outcomes):
        (perfect if ok else failures).append(d)
    D = None
    if d_max >= bound:
        assert all(d < bound for d in failures), "failure beyond the certified tail"
        D = (max(failures) + 1) if failures else 1
    return ScanResult(excl, d_max, bound, tuple(perfect), tuple(failures), D)


def pattern_decompose(v) -> tuple[int, int, int]:
    """Write a sign-canonical norm-4 vector as e_i - e_(i+a) - e_(i+a+b) + e_(i+2a+b).

    Returns (i, alpha, beta) with 1-based i.  Raises when the vector is not
    of that shape.
    """
    v = sign_canonical(v)
    support = [(j, x) for j, x in enumerate(v) if x]
    if len(support) != 4 or [x for _, x in support] != [1, -1, -1, 1]:
        raise ValueError("not in pattern form")
    p1, p2, p3, p4 = (j for j, _ in support)
    alpha = p2 - p1
    beta = p3 - p2
    if p4 - p3 != alpha or alpha < 1 or beta < 1:
        raise ValueError("not in pattern form")
    return p1 + 1, alpha, beta


@dataclass(frozen=True)
class NeighborStats:
    count: int
    gamma: Fraction
    delta: Fraction
    main_term: Fraction

    @property
    def deviation(self) -> Fraction:
        return abs(self.count - self.main_term)


def neighbor_stats(lat: Lattice, v, mvs: MinimalVectorSet | None = None) -> NeighborStats:
    """Exact neighbor count of a shortest vector against the formula term.

    Neighbors are shortest vectors w with <v, w> = 2; each +- pair holds at
    most one.  gamma and delta are the normalized center and diameter of the
    pattern decomposition of v, and the main term is 2d(min(gamma, 1-gamma)
    + 2 - delta).
    """
    i, alpha, beta = pattern_decompose(v)
    d = lat.rank
    if mvs is None:
        mvs = lattice.vectors_of_norm(lat, 4)
    vmap = {j: x for j, x in enumerate(sign_canonical(v)) if x}
    count = 0
    for w in mvs.vectors:
        s = sum(vmap.get(j, 0) * x for j, x in enumerate(w) if x)
        if s == 2 or s == -2:
            count += 1
    gamma = Fraction(2 * (i + alpha) + beta, 2 * (d + 1))
    delta = Fraction(2 * alpha + beta, d + 1)
    main = 2 * d * (min(gamma, 1 - gamma) + 2 - delta)
    return NeighborStats(count, gamma, delta, main)


def neighbor_survey(lat: Lattice) -> list[NeighborStats]:
    """Neighbor statistics for every shortest vector of an L-family lattice."""
    mvs = lattice.vectors_of_norm(lat, 4)
    sparse = [{j: x for j, x in enumerate(w) if x} for w in mvs.vectors]
    by_coord: dict[int, list[int]] = {}
    for idx, wmap in enumerate(sparse):
        for j in wmap:
            by_coord.setdefault(j, []).append(idx)
    d = lat.rank
    out = []
    for vmap in sparse:
        candidates = set()
        for j in vmap:
            candidates.update(by_coord[j])
        count = 0
        for idx in candidates:
            s = sum(vmap.get(j, 0) * x for j, x in sparse[idx].items())
            if s == 2 or s == -2:
                count += 1
        vec = [0] * lat.ambient_dim
        for j, x in vmap.items():
            vec[j] = x
        i, alpha, beta = pattern_decompose(vec)
        gamma = Fraction(2 * (i + alpha) + beta, 2 * (d + 1))
        delta = Fraction(2 * alpha + beta, d + 1)
        main = 2 * d * (min(gamma, 1 - gamma) + 2 - delta)
        out.append(NeighborStats(count, gamma, delta, main))
    return out


@dataclass(frozen=True)
class MinVectorGraph:
    """Graph on pair representatives keyed by a scalar-product predicate."""

    vertices: tuple[tuple[int, ...], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.vertices)

    def degrees(self) -> list[int]:
        return [sum(row) for row in self.adjacency]

    def srg_parameters(self) -> tuple[int, int, int, int] | None:
        """(v, k, lambda, mu) when the graph is strongly regular, else None.

        Verified through the exact matrix identity
        A^2 = k I + lambda A + mu (J - I - A).
        """
        n = self.order
        degs = self.degrees()
        if n == 0 or len(set(degs)) != 1:
            return None
        k = degs[0]
        A = [list(row) for row in self.adjacency]
        A2 = intlinalg.mat_mul(A, A)
        lam: int | None = None
        mu: int | None = None
        for i in range(n):
            if A2[i][i] != k:
                return None
            for j in range(n):
                if i == j:
                    continue
                common = A2[i][j]
                if A[i][j]:
                    if lam is None:
                        lam = common
                    elif lam != common:
                        return None
                else:
                    if mu is None:
                        mu = common
                    elif mu != common:
                        return None
        if lam is None or mu is None:
            return None
        return (n, k, lam, mu)

    def char_poly(self) -> list[int]:
        return intlinalg.char_poly([list(row) for row in self.adjacency])

    def spectrum(self) -> dict[int, int]:
        """Eigenvalue multiplicities, requiring all eigenvalues integral.

        Candidate roots are scanned inside the Gershgorin bound (the largest
        absolute row sum), which contains every eigenvalue of the adjacency
        matrix, so the factorization is complete whenever it exists.
        """
        coeffs = self.char_poly()
        bound = max((sum(abs(x) for x in row) for row in self.adjacency), default=0)
        roots: dict[int, int] = {}
        for cand in range(bound, -bound - 1, -1):
            while len(coeffs) > 1 and _poly_eval(coeffs, cand) == 0:
                coeffs = _poly_divide_linear(coeffs, cand)
                roots[cand] = roots.get(cand, 0) + 1
        if len(coeffs) > 1:
            raise ValueError("spectrum has non-integer eigenvalues")
        return dict(sorted(roots.items(), reverse=True))


def _poly_eval(coeffs, x: int) -> int:
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _poly_divide_linear(coeffs, root: int) -> list[int]:
    # synthetic division by (t - root); the remainder must vanish
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + root * out[-1])
    assert coeffs[-1] + root * out[-1] == 0
    return out


def minvec_graph(mvs: MinimalVectorSet, product_value: int,
                 base_vector=None) -> MinVectorGraph:
    """Graph on pair representatives with edges where <v_i, v_j> matches.

    With a base vector w, the vertex set drops +-w itself, representatives
    are re-signed so that <w, v_i> > 0, and pairs orthogonal to w are left
    out (none occur in the intended equiangular construction).
    """
    if base_vector is None:
        verts = [tuple(v) for v in mvs.vectors]
    else:
        w = tuple(base_vector)
        wc = sign_canonical(w)
        verts = []
        for v in mvs.vectors:
            if v == wc:
                continue
            s = sum(a * b for a, b in zip(w, v))
            if s > 0:
                verts.append(v)
            elif s < 0:
                verts.append(tuple(-x for x in v))
    n = len(verts)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        vi = verts[i]
        for j in range(i + 1, n):
            s = sum(a * b for a, b in zip(vi, verts[j]))
            if s == product_value:
                adj[i][j] = adj[j][i] = 1
    return MinVectorGraph(tuple(verts), tuple(tuple(r) for r in adj))


def orthogonality_degrees(mvs: MinimalVectorSet) -> set[int]:
    """Distinct counts of pairs orthogonal to each pair of shortest vectors."""
    return set(minvec_graph(mvs, 0).degrees())


def parity_check_LF2k(k: int) -> bool:
    """Whether all scalar products between shortest vectors of the lattice
    over the group F_2^k are even."""
    if k < 2:
        raise ValueError("needs k >= 2")
    group_spec = "+".join(["Z/2"] * k)
    lat = families.build_family(f"LA:{group_spec}")
    mvs = lattice.vectors_of_norm(lat, 4)
    vecs = mvs.vectors
    for i, v in enumerate(vecs):
        for w in vecs[i:]:
            if sum(a * b for a, b in zip(v, w)) % 2:
                return False
    return True
