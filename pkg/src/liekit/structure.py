"""Structure theory: derivations, Cartan subalgebras, nilradicals, tori.

Randomized searches (Cartan subalgebras and everything downstream) take an
explicit random.Random; results are certified by output checks, so the seed
only affects which certified answer is found, not its validity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlin import (
    Mat,
    RowBasis,
    Subspace,
    charpoly,
    commutator,
    image,
    is_nilpotent as mat_is_nilpotent,
    is_semisimple as mat_is_semisimple,
    jordan_chevalley,
    kernel,
)
from .liecore import (
    LieAlgebra,
    LieError,
    center,
    killing_radical,
    normalizer,
    product_space,
    quotient,
    restrict,
    series,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_SEED = 2022

# pool size for the regular-element search
_POOL = 64


def _rng(rng: random.Random | None) -> random.Random:
    return rng if rng is not None else random.Random(DEFAULT_SEED)


class LinearLieAlgebra:
    """A bracket-closed space of n x n matrices with induced constants.

    The closure witness is the induced structure-constant table itself: every
    commutator of basis elements is re-expressed over the basis during
    construction, and failure raises.
    """

    def __init__(self, ambient: LieAlgebra, basis: Sequence[Mat],
                 is_derivation_algebra: bool = False):
        self.ambient = ambient
        self.basis = tuple(basis)
        n = ambient.dim
        for m in self.basis:
            if m.shape != (n, n):
                raise ValueError("basis matrices must match the ambient dimension")
        self._rb = RowBasis(Mat([list(m.vec()) for m in self.basis], cols=n * n)) \
            if self.basis else None
        if self._rb is not None and self._rb.rank != len(self.basis):
            raise ValueError("matrix basis is linearly dependent")
        table: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
        for a in range(len(self.basis)):
            for b in range(a + 1, len(self.basis)):
                comm = commutator(self.basis[a], self.basis[b])
                cs = self._rb.coords(comm.vec())
                if cs is None:
                    raise LieError(
                        f"matrix span is not bracket-closed on pair ({a}, {b})")
                terms = [(k, c) for k, c in enumerate(cs) if c]
                if terms:
                    table[(a, b)] = terms
        self.table = table
        self.is_derivation_algebra = is_derivation_algebra

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coeffs: Sequence) -> Mat:
        n = self.ambient.dim
        out = Mat.zeros(n, n)
        for c, m in zip(coeffs, self.basis):
            if c:
                out = out + Fraction(c) * m
        return out

    def coords(self, m: Mat):
        if self._rb is None:
            return None if not m.is_zero() else ()
        return self._rb.coords(m.vec())

    def contains(self, m: Mat) -> bool:
        if self._rb is None:
            return m.is_zero()
        return self._rb.contains(m.vec())

    def matrix_span(self) -> Subspace:
        """The underlying subspace of gl(n), vectorized row-major."""
        n = self.ambient.dim
        return Subspace.span(n * n, [list(m.vec()) for m in self.basis])

    def to_abstract(self, prefix: str = "D") -> LieAlgebra:
        labels = tuple(f"{prefix}{i + 1}" for i in range(self.dim))
        return LieAlgebra(self.dim, dict(self.table), labels)

    def __repr__(self) -> str:
        return f"LinearLieAlgebra(dim={self.dim}, on={self.ambient.dim})"


def derivations(L: LieAlgebra) -> LinearLieAlgebra:
    """Der(L): all matrices satisfying the Leibniz rule, as a matrix algebra.

    Solves the linear system D[e_i,e_j] = [De_i,e_j] + [e_i,De_j] over the
    n^2 unknown entries; the kernel basis (canonical RREF) gives the basis.
    """
    n = L.dim
    if n == 0:
        return LinearLieAlgebra(L, [], is_derivation_algebra=True)
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            cij = L.bracket_basis(i, j)
            for u in range(n):
                row = [_ZERO] * (n * n)
                # D[e_i, e_j] coordinate u: sum_s c_ij^s D[u][s]
                for s in range(n):
                    if cij[s]:
                        row[u * n + s] += cij[s]
                # -[D e_i, e_j] coordinate u: -sum_t D[t][i] c_tj^u
                for t in range(n):
                    ctj = L.bracket_basis(t, j)
                    if ctj[u]:
                        row[t * n + i] -= ctj[u]
                # -[e_i, D e_j] coordinate u: -sum_t D[t][j] c_it^u
                for t in range(n):
                    cit = L.bracket_basis(i, t)
                    if cit[u]:
                        row[t * n + j] -= cit[u]
                if any(row):
                    rows.append(row)
    if not rows:
        mats = [_unit_mat(n, r, c) for r in range(n) for c in range(n)]
        return LinearLieAlgebra(L, mats, is_derivation_algebra=True)
    ker = kernel(Mat(rows, cols=n * n))
    mats = [Mat.from_flat(n, n, row) for row in ker.basis.data]
    der = LinearLieAlgebra(L, mats, is_derivation_algebra=True)
    # ad-images are always derivations; their span must land inside
    inner = inner_derivations(L)
    if not der.matrix_span().contains_space(inner):
        raise AssertionError("inner derivations escaped the computed Der(L)")
    return der


def _unit_mat(n: int, r: int, c: int) -> Mat:
    m = Mat.zeros(n, n)
    m.data[r][c] = _ONE
    return m


def inner_derivations(L: LieAlgebra) -> Subspace:
    """span{ad x} inside gl(L), vectorized row-major; dim = dim L - dim Z."""
    n = L.dim
    return Subspace.span(n * n,
                         [list(L.ad(L.basis_vector(i)).vec()) for i in range(n)])


def is_characteristically_nilpotent(L: LieAlgebra) -> bool:
    """Nilpotent with nilpotent derivation algebra.

    Checked two ways, both of which must agree: Der(L) nilpotent as an
    abstract algebra, and every basis derivation nilpotent as a matrix.
    """
    if not L.is_nilpotent():
        raise LieError("characteristic nilpotency is defined for nilpotent algebras")
    der = derivations(L)
    abstract_nilpotent = der.to_abstract().is_nilpotent()
    all_nilpotent_mats = all(mat_is_nilpotent(m) for m in der.basis)
    if abstract_nilpotent != all_nilpotent_mats:
        raise AssertionError(
            "derivation nilpotency checks disagree; table is inconsistent")
    return abstract_nilpotent


# ---------------------------------------------------------------------------
# Cartan subalgebras

def cartan_subalgebra(L: LieAlgebra, rng: random.Random | None = None) -> Subspace:
    """A Cartan subalgebra: nilpotent and self-normalizing, both certified.

    Searches a pool of small-integer combinations for an element whose
    generalized null space (of its adjoint) is smallest, descends into that
    null space and repeats until the candidate is nilpotent; the
    self-normalizing check runs against the full algebra. Output checks make
    the answer seed-independent in validity.
    """
    rng = _rng(rng)
    if L.dim == 0:
        return Subspace.zero(0)
    current = L.full_space()   # rows: basis of the working subalgebra, in L coords
    sub = L
    spread = 3
    for _round in range(4 * (L.dim + 2)):
        if sub.is_nilpotent():
            nz = normalizer(L, current)
            if nz.dim == current.dim:
                return current
            # nilpotent but not self-normalizing: the search landed too low;
            # restart from scratch with a wider coefficient range
            current, sub, spread = L.full_space(), L, spread + 2
            continue
        best_vec = None
        best_mult = sub.dim + 1
        for _ in range(_POOL):
            coeffs = [rng.randint(-spread, spread) for _ in range(sub.dim)]
            if not any(coeffs):
                continue
            adm = sub.ad(coeffs)
            mult = charpoly(adm).trailing_zero_count()
            if mult < best_mult:
                best_mult, best_vec = mult, (coeffs, adm)
        if best_vec is None or best_mult >= sub.dim:
            spread += 2   # all sampled elements looked nilpotent; widen and retry
            continue
        coeffs, adm = best_vec
        gen_null = kernel(adm.pow(best_mult))
        # pull the nested basis back to L coordinates
        rows = []
        for w in gen_null.basis.data:
            v = [_ZERO] * L.dim
            for c, brow in zip(w, current.basis.data):
                if c:
                    for t in range(L.dim):
                        v[t] += c * brow[t]
            rows.append(v)
        nxt = Subspace.span(L.dim, rows)
        if nxt.dim == current.dim:
            spread += 2
            continue
        current = nxt
        sub = restrict(L, current)
    raise AssertionError("Cartan subalgebra search failed to converge")


def fitting_decomposition(L: LieAlgebra, h: Subspace) -> tuple[Subspace, Subspace]:
    """(L0, L1) for the action of the nilpotent subalgebra h.

    L0 is the joint generalized null space of the ad h_i, L1 the sum of their
    stabilized images; the direct-sum and invariance contracts are asserted.
    """
    n = L.dim
    if h.dim == 0:
        return L.full_space(), Subspace.zero(n)
    sub = restrict(L, h)
    if not sub.is_nilpotent():
        raise LieError("fitting decomposition needs a nilpotent subalgebra")
    l0 = L.full_space()
    l1 = Subspace.zero(n)
    for row in h.basis.data:
        p = L.ad(row).pow(n)
        l0 = l0.intersect(kernel(p))
        l1 = l1 + image(p)
    if l0.intersect(l1).dim != 0 or l0.dim + l1.dim != n:
        raise AssertionError("Fitting components do not decompose the algebra")
    for part in (l0, l1):
        for row in h.basis.data:
            for v in part.basis.data:
                if not part.contains(L.bracket(row, v)):
                    raise AssertionError("Fitting component is not h-invariant")
    return l0, l1


# ---------------------------------------------------------------------------
# nilradical

def nilradical(L: LieAlgebra, rng: random.Random | None = None) -> Subspace:
    """The largest nilpotent ideal, with its defining contracts re-checked.

    Solvable case: with H a Cartan subalgebra and L = H + L1 the Fitting
    decomposition, the nilradical is L1 plus the kernel of h -> semisimple
    part of ad h on H. Non-solvable case: recurse into the solvable radical.
    The output is checked to be a nilpotent ideal containing [L, radical],
    and sampled ad-nilpotent elements are checked to lie inside.
    """
    rng = _rng(rng)
    result = _nilradical_inner(L, rng)
    _check_nilradical(L, result, rng)
    return result


def _nilradical_inner(L: LieAlgebra, rng: random.Random) -> Subspace:
    if L.dim == 0:
        return Subspace.zero(0)
    if L.is_nilpotent():
        return L.full_space()
    if L.is_solvable():
        h = cartan_subalgebra(L, rng)
        l0, l1 = fitting_decomposition(L, h)
        if l0 != h:
            raise AssertionError("Fitting null part of a Cartan subalgebra must be itself")
        n = L.dim
        cols = []
        for row in h.basis.data:
            s = jordan_chevalley(L.ad(row)).s
            cols.append(list(s.vec()))
        coeff_kernel = kernel(Mat(cols, cols=n * n).transpose())
        rows = list(l1.basis.data)
        for w in coeff_kernel.basis.data:
            v = [_ZERO] * n
            for c, brow in zip(w, h.basis.data):
                if c:
                    for t in range(n):
                        v[t] += c * brow[t]
            rows.append(v)
        return Subspace.span(n, rows)
    rad = killing_radical(L)
    sub = restrict(L, rad)
    inner = _nilradical_inner(sub, rng)
    rows = []
    for w in inner.basis.data:
        v = [_ZERO] * L.dim
        for c, brow in zip(w, rad.basis.data):
            if c:
                for t in range(L.dim):
                    v[t] += c * brow[t]
        rows.append(v)
    return Subspace.span(L.dim, rows)


def _check_nilradical(L: LieAlgebra, nr: Subspace, rng: random.Random) -> None:
    full = L.full_space()
    if not nr.contains_space(product_space(L, full, killing_radical(L))):
        raise AssertionError("nilradical misses [L, radical]")
    if not nr.contains_space(product_space(L, full, nr)):
        raise AssertionError("nilradical is not an ideal")
    if nr.dim and not restrict(L, nr).is_nilpotent():
        raise AssertionError("computed nilradical is not nilpotent")
    # sampled sanity: ad-nilpotent elements must lie inside (solvable case)
    if L.is_solvable():
        for _ in range(16):
            v = [rng.randint(-2, 2) for _ in range(L.dim)]
            if mat_is_nilpotent(L.ad(v)) and not nr.contains(v):
                raise AssertionError("ad-nilpotent element escaped the nilradical")


# ---------------------------------------------------------------------------
# maximal torus

def maximal_torus(der: LinearLieAlgebra,
                  rng: random.Random | None = None) -> LinearLieAlgebra:
    """Maximal abelian subalgebra of semisimple derivations, via a Cartan.

    Takes the semisimple Jordan parts of a Cartan subalgebra of the
    derivation algebra; the map h -> semisimple part is linear there, which
    is spot-checked on basis pairs. Every output generator is verified to be
    a semisimple derivation and the span to be abelian.
    """
    rng = _rng(rng)
    if not der.is_derivation_algebra:
        raise LieError("maximal_torus expects a full derivation algebra")
    if der.dim == 0:
        return LinearLieAlgebra(der.ambient, [])
    abstract = der.to_abstract()
    h = cartan_subalgebra(abstract, rng)
    mats = [der.element(row) for row in h.basis.data]
    parts = [jordan_chevalley(m).s for m in mats]
    n = der.ambient.dim
    span = Subspace.span(n * n, [list(p.vec()) for p in parts])
    basis = [Mat.from_flat(n, n, row) for row in span.basis.data]
    torus = LinearLieAlgebra(der.ambient, basis)
    _check_torus(torus, der, mats, parts, rng)
    return torus


def _check_torus(torus: LinearLieAlgebra, der: LinearLieAlgebra,
                 cartan_mats: list[Mat], parts: list[Mat],
                 rng: random.Random) -> None:
    for a in range(torus.dim):
        for b in range(a + 1, torus.dim):
            if not commutator(torus.basis[a], torus.basis[b]).is_zero():
                raise AssertionError("torus is not abelian")
    for m in torus.basis:
        if not mat_is_semisimple(m):
            raise AssertionError("torus generator is not semisimple")
        if not der.contains(m):
            raise AssertionError("torus generator is not a derivation")
    # random combinations stay semisimple (sum of commuting semisimples)
    for _ in range(4):
        if torus.dim == 0:
            break
        coeffs = [rng.randint(-3, 3) for _ in range(torus.dim)]
        if any(coeffs):
            if not mat_is_semisimple(torus.element(coeffs)):
                raise AssertionError("torus combination is not semisimple")
    # linearity of the semisimple-part map on the Cartan, spot-checked
    for a in range(len(cartan_mats)):
        for b in range(a + 1, min(len(cartan_mats), a + 3)):
            lhs = jordan_chevalley(cartan_mats[a] + cartan_mats[b]).s
            if lhs != parts[a] + parts[b]:
                raise AssertionError("semisimple part is not additive on the Cartan")


def toric_rank(L: LieAlgebra, nil: Subspace,
               rng: random.Random | None = None) -> int:
    """Dimension of a Cartan subalgebra of L / nilradical.

    `nil` must equal the computed nilradical; for solvable L the quotient is
    abelian and the rank is just its dimension.
    """
    rng = _rng(rng)
    if nilradical(L, rng) != nil:
        raise LieError("designated subspace is not the nilradical")
    q, _ = quotient(L, nil)
    if q.dim == 0:
        return 0
    return cartan_subalgebra(q, rng).dim


# ---------------------------------------------------------------------------
# fingerprint

@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism invariants; unequal fingerprints certify non-isomorphism."""
    dim: int
    lower_central: tuple[int, ...]
    derived: tuple[int, ...]
    dim_center: int
    dim_commutator: int
    dim_nilradical: int
    dim_der: int
    dim_malcev: int | None   # None when the algebra is not solvable

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "lower_central": list(self.lower_central),
            "derived": list(self.derived),
            "dim_center": self.dim_center,
            "dim_commutator": self.dim_commutator,
            "dim_nilradical": self.dim_nilradical,
            "dim_der": self.dim_der,
            "dim_malcev": self.dim_malcev,
        }


def fingerprint(L: LieAlgebra, rng: random.Random | None = None) -> Fingerprint:
    rng = _rng(rng)
    lc = tuple(s.dim for s in series(L, "lower_central"))
    dv = tuple(s.dim for s in series(L, "derived"))
    comm = product_space(L, L.full_space(), L.full_space())
    dim_malcev = None
    if L.is_solvable():
        from .extensions import malcev_split_solvable
        dim_malcev = malcev_split_solvable(L, rng=rng,
                                           check_idempotence=False).M.dim
    return Fingerprint(
        dim=L.dim,
        lower_central=lc,
        derived=dv,
        dim_center=center(L).dim,
        dim_commutator=comm.dim,
        dim_nilradical=nilradical(L, rng).dim,
        dim_der=derivations(L).dim,
        dim_malcev=dim_malcev,
    )
