"""Structure-constant Lie algebras over Q and the constructions on them.

An algebra is a dimension, basis labels and a sparse bracket table; all
subspace outputs are canonical RREF bases from exactlin, so identical inputs
give identical bases everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactlin import (
    Mat,
    RowBasis,
    Subspace,
    _rat,
    kernel,
    vstack,
)

Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LieError(ValueError):
    """Base class for structural failures with attached witnesses."""


class TableError(LieError):
    """Malformed structure-constant table."""


class JacobiError(LieError):
    def __init__(self, violations):
        self.violations = violations
        shown = ", ".join(str(t) for t in violations[:5])
        super().__init__(f"Jacobi identity fails on basis triples: {shown}"
                         + (" ..." if len(violations) > 5 else ""))


class NotAnIdealError(LieError):
    def __init__(self, basis_index: int, vector: Vector, product: Vector):
        self.basis_index = basis_index
        self.vector = vector
        self.product = product
        super().__init__(
            f"not an ideal: bracket of basis vector {basis_index} with a "
            f"member leaves the subspace")


class NotADerivationError(LieError):
    def __init__(self, gen_index: int, pair: tuple[int, int]):
        self.gen_index = gen_index
        self.pair = pair
        super().__init__(
            f"generator {gen_index} violates the Leibniz rule on basis pair {pair}")


class NotClosedError(LieError):
    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(f"span is not bracket-closed: commutator of generators "
                         f"{pair} leaves the span")


def _norm_vec(v: Sequence, dim: int) -> list[Fraction]:
    w = [_rat(x) for x in v]
    if len(w) != dim:
        raise ValueError(f"vector length {len(w)} != dim {dim}")
    return w


class LieAlgebra:
    """Finite-dimensional Lie algebra given by structure constants.

    The table stores, for each basis pair i < j (0-based), the nonzero
    coordinates of [e_i, e_j]; brackets with i >= j follow by antisymmetry.
    """

    __slots__ = ("dim", "labels", "table")

    def __init__(self, dim: int,
                 table: dict[tuple[int, int], Iterable[tuple[int, object]]],
                 labels: Sequence[str] | None = None):
        if dim < 0:
            raise TableError("negative dimension")
        self.dim = dim
        if labels is None:
            labels = tuple(f"e{i + 1}" for i in range(dim))
        else:
            labels = tuple(labels)
            if len(labels) != dim:
                raise TableError("label count != dim")
            if len(set(labels)) != dim:
                raise TableError("duplicate labels")
        self.labels = labels
        clean: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
        for (i, j), terms in table.items():
            if not (0 <= i < j < dim):
                raise TableError(f"bad index pair ({i}, {j}); need 0 <= i < j < dim")
            seen = {}
            for k, coef in terms:
                if not (0 <= k < dim):
                    raise TableError(f"bad target index {k} in bracket ({i}, {j})")
                if k in seen:
                    raise TableError(f"duplicate target {k} in bracket ({i}, {j})")
                c = _rat(coef)
                if c:
                    seen[k] = c
            if seen:
                clean[(i, j)] = tuple(sorted(seen.items()))
        self.table = clean

    # -- basic bracket machinery -------------------------------------------

    def bracket_basis(self, i: int, j: int) -> list[Fraction]:
        out = [_ZERO] * self.dim
        if i == j:
            return out
        sign = _ONE
        if i > j:
            i, j, sign = j, i, -_ONE
        for k, c in self.table.get((i, j), ()):
            out[k] = sign * c
        return out

    def bracket(self, x: Sequence, y: Sequence) -> list[Fraction]:
        xv = _norm_vec(x, self.dim)
        yv = _norm_vec(y, self.dim)
        out = [_ZERO] * self.dim
        for (i, j), terms in self.table.items():
            coef = xv[i] * yv[j] - xv[j] * yv[i]
            if coef:
                for k, c in terms:
                    out[k] += coef * c
        return out

    def ad(self, x: Sequence) -> Mat:
        """Matrix of y -> [x, y]; column j is [x, e_j]."""
        xv = _norm_vec(x, self.dim)
        cols = []
        for j in range(self.dim):
            col = [_ZERO] * self.dim
            for (a, b), terms in self.table.items():
                if b == j and xv[a]:
                    for k, c in terms:
                        col[k] += xv[a] * c
                elif a == j and xv[b]:
                    for k, c in terms:
                        col[k] -= xv[b] * c
            cols.append(col)
        return Mat([[cols[j][i] for j in range(self.dim)] for i in range(self.dim)],
                   cols=self.dim)

    def full_space(self) -> Subspace:
        return Subspace.full(self.dim)

    def basis_vector(self, i: int) -> list[Fraction]:
        v = [_ZERO] * self.dim
        v[i] = _ONE
        return v

    # -- predicates ----------------------------------------------------------

    def is_nilpotent(self) -> bool:
        chain = series(self, "lower_central")
        return chain[-1].dim == 0

    def is_solvable(self) -> bool:
        chain = series(self, "derived")
        return chain[-1].dim == 0

    def is_abelian(self) -> bool:
        return not self.table

    def __eq__(self, other) -> bool:
        return (isinstance(other, LieAlgebra) and self.dim == other.dim
                and self.labels == other.labels and self.table == other.table)

    def __hash__(self):
        return hash((self.dim, self.labels, tuple(sorted(self.table.items()))))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.table)})"


def verify_structure(L: LieAlgebra) -> list[tuple[int, int, int]]:
    """All basis triples (i, j, k), i<j<k, where the Jacobi identity fails.

    An empty report means the table is a Lie algebra (antisymmetry holds by
    construction since only i < j brackets are stored).
    """
    bad = []
    for i in range(L.dim):
        ei = L.basis_vector(i)
        for j in range(i + 1, L.dim):
            ej = L.basis_vector(j)
            bij = L.bracket_basis(i, j)
            for k in range(j + 1, L.dim):
                ek = L.basis_vector(k)
                total = L.bracket(bij, ek)
                for a, b in ((L.bracket_basis(j, k), ei), (L.bracket_basis(k, i), ej)):
                    term = L.bracket(a, b)
                    for t in range(L.dim):
                        total[t] += term[t]
                if any(total):
                    bad.append((i, j, k))
    return bad


def product_space(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """[a, b] = span of brackets of basis pairs."""
    rows = []
    for x in a.basis.data:
        for y in b.basis.data:
            w = L.bracket(x, y)
            if any(w):
                rows.append(w)
    return Subspace.span(L.dim, rows)


def series(L: LieAlgebra, kind: str) -> list[Subspace]:
    """Lower central or derived series, stopping at stabilization.

    The list starts with the full algebra and ends either with the zero
    subspace or with the first repeated term (so a perfect algebra shows its
    stabilization explicitly).
    """
    if kind not in ("lower_central", "derived"):
        raise ValueError("kind must be 'lower_central' or 'derived'")
    full = L.full_space()
    chain = [full]
    for _ in range(L.dim + 1):
        cur = chain[-1]
        if cur.dim == 0:
            break
        nxt = product_space(L, full if kind == "lower_central" else cur, cur)
        chain.append(nxt)
        if nxt.dim == cur.dim:
            break
    return chain


def center(L: LieAlgebra) -> Subspace:
    if L.dim == 0:
        return Subspace.zero(0)
    stacked = vstack(*[L.ad(L.basis_vector(i)) for i in range(L.dim)])
    return kernel(stacked)


def centralizer(L: LieAlgebra, s: Subspace) -> Subspace:
    """{x : [x, v] = 0 for all v in s}."""
    if s.dim == 0:
        return L.full_space()
    stacked = vstack(*[L.ad(row) for row in s.basis.data])
    return kernel(stacked)


def normalizer(L: LieAlgebra, s: Subspace) -> Subspace:
    """{x : [x, s] <= s}."""
    if s.dim == 0 or s.dim == L.dim:
        return L.full_space()
    # rows of proj pick out the coordinates of the residual mod s
    proj = _mod_projection(s)
    blocks = [proj @ (-L.ad(row)) for row in s.basis.data]  # [x,v] = -ad(v) x
    return kernel(vstack(*blocks))


def _mod_projection(s: Subspace) -> Mat:
    """Linear map whose kernel is exactly s (residual coordinates mod s)."""
    n = s.ambient
    free = [c for c in range(n) if c not in set(s.pivots)]
    rows = []
    for c in free:
        row = [_ZERO] * n
        row[c] = _ONE
        for i, p in enumerate(s.pivots):
            row[p] = -s.basis.data[i][c]
        rows.append(row)
    return Mat(rows, cols=n)


def generated_subalgebra(L: LieAlgebra, seed: Subspace) -> Subspace:
    """Smallest subalgebra containing the seed: iterate V <- V + [V, V]."""
    cur = seed
    for _ in range(L.dim + 1):
        nxt = cur + product_space(L, cur, cur)
        if nxt.dim == cur.dim:
            return nxt
        cur = nxt
    return cur


def is_ideal(L: LieAlgebra, s: Subspace) -> bool:
    try:
        _ideal_check(L, s)
        return True
    except NotAnIdealError:
        return False


def _ideal_check(L: LieAlgebra, s: Subspace) -> None:
    for i in range(L.dim):
        ei = L.basis_vector(i)
        for row in s.basis.data:
            w = L.bracket(ei, row)
            if not s.contains(w):
                raise NotAnIdealError(i, tuple(row), tuple(w))


def quotient(L: LieAlgebra, ideal: Subspace) -> tuple[LieAlgebra, Mat]:
    """(L / ideal, projection matrix).

    Raises NotAnIdealError with a witnessing pair when the subspace is not an
    ideal. The quotient basis is the set of non-pivot coordinates of the
    ideal's RREF basis; the projection sends x to the residual coordinates.
    """
    _ideal_check(L, ideal)
    proj = _mod_projection(ideal)
    free = [c for c in range(L.dim) if c not in set(ideal.pivots)]
    m = len(free)
    table: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for a in range(m):
        for b in range(a + 1, m):
            w = proj.apply(L.bracket_basis(free[a], free[b]))
            terms = [(k, c) for k, c in enumerate(w) if c]
            if terms:
                table[(a, b)] = terms
    labels = tuple(L.labels[c] for c in free)
    return LieAlgebra(m, table, labels), proj


def restrict(L: LieAlgebra, s: Subspace,
             labels: Sequence[str] | None = None) -> LieAlgebra:
    """The subalgebra on s's RREF basis, with NotClosedError on failure."""
    rb = RowBasis(s.basis)
    k = s.dim
    table: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for a in range(k):
        for b in range(a + 1, k):
            w = L.bracket(s.basis.data[a], s.basis.data[b])
            cs = rb.coords(w)
            if cs is None:
                raise NotClosedError((a, b))
            terms = [(t, c) for t, c in enumerate(cs) if c]
            if terms:
                table[(a, b)] = terms
    if labels is None:
        labels = tuple(f"s{i + 1}" for i in range(k))
    return LieAlgebra(k, table, labels)


def change_basis(L: LieAlgebra, p: Mat) -> LieAlgebra:
    """Same algebra written on the new basis given by the rows of p."""
    if p.shape != (L.dim, L.dim):
        raise ValueError("basis matrix must be dim x dim")
    rb = RowBasis(p)
    if rb.rank != L.dim:
        raise ValueError("basis matrix is singular")
    table: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for a in range(L.dim):
        for b in range(a + 1, L.dim):
            w = L.bracket(p.data[a], p.data[b])
            cs = rb.coords(w)
            terms = [(t, c) for t, c in enumerate(cs) if c]
            if terms:
                table[(a, b)] = terms
    return LieAlgebra(L.dim, table, None)


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    """Direct sum of ideals; blocks do not interact."""
    table: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for (i, j), terms in a.table.items():
        table[(i, j)] = list(terms)
    off = a.dim
    for (i, j), terms in b.table.items():
        table[(i + off, j + off)] = [(k + off, c) for k, c in terms]
    labels = list(a.labels)
    for lab in b.labels:
        labels.append(lab if lab not in labels else lab + "'")
    return LieAlgebra(a.dim + b.dim, table, labels)


@dataclass
class Extension:
    """A Lie algebra together with a designated nilpotent ideal and complement.

    `validated` is set once nilradical(total) has been checked to equal the
    designated ideal; the raw semidirect constructor leaves it False.
    """
    total: LieAlgebra
    nilideal: Subspace
    complement: Subspace
    provenance: dict = field(default_factory=dict)
    validated: bool = False


def semidirect_sum(mats: Sequence[Mat], inner: LieAlgebra,
                   act_labels: Sequence[str] | None = None) -> Extension:
    """Semidirect sum of a matrix Lie algebra acting on `inner`.

    Every generator must satisfy the Leibniz rule on `inner` and the span of
    the generators must be closed under matrix commutators; violations raise
    with the witnessing pair. Generator coordinates come first in the result,
    `inner` embeds as the trailing coordinates (an ideal).
    """
    n = inner.dim
    d = len(mats)
    for idx, m in enumerate(mats):
        if m.shape != (n, n):
            raise ValueError(f"generator {idx} is not {n}x{n}")
        _leibniz_check(m, inner, idx)
    rb = RowBasis(Mat([list(m.vec()) for m in mats], cols=n * n)) if d else None
    if rb is not None and rb.rank != d:
        raise ValueError("generators are linearly dependent")
    table: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for a in range(d):
        for b in range(a + 1, d):
            comm = mats[a] @ mats[b] - mats[b] @ mats[a]
            cs = rb.coords(comm.vec())
            if cs is None:
                raise NotClosedError((a, b))
            terms = [(t, c) for t, c in enumerate(cs) if c]
            if terms:
                table[(a, b)] = terms
    for a in range(d):
        for j in range(n):
            col = mats[a].column(j)
            terms = [(d + k, c) for k, c in enumerate(col) if c]
            if terms:
                table[(a, d + j)] = terms
    for (i, j), terms in inner.table.items():
        table[(d + i, d + j)] = [(d + k, c) for k, c in terms]
    if act_labels is None:
        act_labels = [f"t{i + 1}" for i in range(d)]
    labels = list(act_labels)
    for lab in inner.labels:
        labels.append(lab if lab not in labels else lab + "'")
    total = LieAlgebra(d + n, table, labels)
    bad = verify_structure(total)
    if bad:
        raise JacobiError(bad)
    nilideal = Subspace.span(d + n, [total.basis_vector(d + i) for i in range(n)])
    complement = Subspace.span(d + n, [total.basis_vector(i) for i in range(d)])
    return Extension(total, nilideal, complement,
                     provenance={"kind": "semidirect_sum", "acting_dim": d})


def _leibniz_check(m: Mat, L: LieAlgebra, gen_index: int) -> None:
    for (i, j) in _all_pairs(L.dim):
        lhs = m.apply(L.bracket_basis(i, j))
        rhs = L.bracket(m.column(i), L.basis_vector(j))
        term = L.bracket(L.basis_vector(i), m.column(j))
        rhs = [a + b for a, b in zip(rhs, term)]
        if list(lhs) != rhs:
            raise NotADerivationError(gen_index, (i, j))


def _all_pairs(n: int):
    for i in range(n):
        for j in range(i + 1, n):
            yield (i, j)


def killing_form(L: LieAlgebra, x: Sequence, y: Sequence) -> Fraction:
    return (L.ad(x) @ L.ad(y)).trace()


def killing_radical(L: LieAlgebra) -> Subspace:
    """{x : kappa(x, y) = 0 for every y in [L, L]}.

    In characteristic zero this is the solvable radical (Cartan's criterion).
    """
    derived = product_space(L, L.full_space(), L.full_space())
    if derived.dim == 0:
        return L.full_space()
    ads = [L.ad(L.basis_vector(i)) for i in range(L.dim)]
    rows = []
    for y in derived.basis.data:
        ady = L.ad(y)
        rows.append([(ads[i] @ ady).trace() for i in range(L.dim)])
    return kernel(Mat(rows, cols=L.dim))
