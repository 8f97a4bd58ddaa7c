"""Solvable extensions of nilpotent algebras and the Malcev-type splitting.

Constructors hand back validated records: an Extension is only returned once
the nilradical of the total algebra has been recomputed and matched against
the designated ideal, and a SplittingResult re-checks every invariant of the
split form before it is released.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Sequence

from .exactlin import Mat, Subspace, is_semisimple, jordan_chevalley
from .liecore import (
    Extension,
    LieAlgebra,
    LieError,
    center,
    is_ideal,
    product_space,
    semidirect_sum,
)
from .structure import (
    _rng,
    cartan_subalgebra,
    derivations,
    inner_derivations,
    maximal_torus,
    nilradical,
    toric_rank,
)

__all__ = [
    "Extension",
    "NilradicalMismatch",
    "SplittingResult",
    "RankBoundReport",
    "TogoReport",
    "extend_by_derivations",
    "standard_solvable_extension",
    "malcev_split_solvable",
    "is_split_solvable",
    "verify_rank_bound",
    "rank_bound_of",
    "togo_dim_check",
]


class NilradicalMismatch(LieError):
    """The built algebra's nilradical is not the designated nilpotent ideal."""

    def __init__(self, expected: Subspace, computed: Subspace):
        self.expected = expected
        self.computed = computed
        super().__init__(
            f"nilradical mismatch: designated ideal has dim {expected.dim}, "
            f"computed nilradical has dim {computed.dim}")


def extend_by_derivations(N: LieAlgebra, gens: Sequence[Mat],
                          act_labels: Sequence[str] | None = None,
                          rng: random.Random | None = None) -> Extension:
    """Adjoin derivation generators to N; reject unless the nilradical is N.

    Leibniz and bracket-closure failures raise with witnessing pairs from the
    semidirect constructor; a nilradical that differs from the embedded copy
    of N raises NilradicalMismatch carrying the computed ideal.
    """
    ext = semidirect_sum(gens, N, act_labels)
    computed = nilradical(ext.total, _rng(rng))
    if computed != ext.nilideal:
        raise NilradicalMismatch(ext.nilideal, computed)
    prov = dict(ext.provenance, kind="derivation_extension",
                generator_count=len(gens))
    return replace(ext, provenance=prov, validated=True)


def standard_solvable_extension(N: LieAlgebra,
                                rng: random.Random | None = None) -> Extension:
    """Maximal torus of Der(N), acting on N.

    For a characteristically nilpotent N the torus is zero and the result is
    N itself with a zero complement.
    """
    rng = _rng(rng)
    if not N.is_nilpotent():
        raise LieError("standard extension is defined for nilpotent algebras")
    torus = maximal_torus(derivations(N), rng)
    labels = [f"s{i + 1}" for i in range(torus.dim)]
    ext = extend_by_derivations(N, torus.basis, labels, rng)
    prov = dict(ext.provenance, kind="standard_extension", torus_dim=torus.dim)
    return replace(ext, provenance=prov)


@dataclass(frozen=True)
class SplittingResult:
    """Outcome of the solvable splitting: M = torus_part + embedded copy."""
    M: LieAlgebra
    embedding: Mat          # row i = image of the i-th basis vector of L
    torus_part: Subspace
    added_dim: int


def malcev_split_solvable(L: LieAlgebra, rng: random.Random | None = None,
                          check_idempotence: bool = True) -> SplittingResult:
    """Embed solvable L into a split algebra by adjoining outer torus parts.

    Construction: take a Cartan subalgebra H, collect the semisimple Jordan
    parts of ad h over a basis of H (the map is linear on H), then keep the
    RREF-ordered subset of that span which is independent modulo inner
    derivations; those matrices act as new semisimple generators. All split
    invariants are asserted before returning.
    """
    rng = _rng(rng)
    if not L.is_solvable():
        raise LieError("splitting is implemented for solvable algebras only")
    n = L.dim
    h = cartan_subalgebra(L, rng)
    parts = [jordan_chevalley(L.ad(row)).s for row in h.basis.data]
    sigma = Subspace.span(n * n, [list(p.vec()) for p in parts])
    running = inner_derivations(L)
    kept: list[Mat] = []
    for row in sigma.basis.data:
        if not running.contains(row):
            kept.append(Mat.from_flat(n, n, row))
            running = running + Subspace.span(n * n, [row])
    if not kept:
        result = SplittingResult(L, Mat.identity(n), Subspace.zero(n), 0)
    else:
        labels = [f"s{i + 1}" for i in range(len(kept))]
        ext = semidirect_sum(kept, L, labels)
        t = len(kept)
        emb_rows = [[0] * t + [1 if c == i else 0 for c in range(n)]
                    for i in range(n)]
        result = SplittingResult(ext.total, Mat(emb_rows), ext.complement, t)
    _check_splitting(L, result, rng)
    if check_idempotence and result.added_dim:
        again = malcev_split_solvable(result.M, rng, check_idempotence=False)
        if again.added_dim != 0:
            raise AssertionError("splitting is not idempotent on its own output")
    return result


def _check_splitting(L: LieAlgebra, r: SplittingResult,
                     rng: random.Random) -> None:
    from .exactlin import rank

    M, n = r.M, L.dim
    if rank(r.embedding) != n:
        raise AssertionError("embedding is not injective")
    img_rows = list(r.embedding.data)
    image = Subspace.span(M.dim, img_rows)
    for i in range(n):
        for j in range(i + 1, n):
            lhs = M.bracket(img_rows[i], img_rows[j])
            target = L.bracket_basis(i, j)
            rhs = [sum(target[k] * img_rows[k][c] for k in range(n))
                   for c in range(M.dim)]
            if list(lhs) != rhs:
                raise AssertionError("embedding is not a homomorphism")
    if not is_ideal(M, image):
        raise AssertionError("embedded copy is not an ideal")
    if r.torus_part.dim + n != M.dim or r.torus_part.intersect(image).dim != 0:
        raise AssertionError("torus part does not complement the image")
    combos = list(r.torus_part.basis.data)
    for _ in range(4):
        if r.torus_part.dim == 0:
            break
        cs = [rng.randint(-3, 3) for _ in range(r.torus_part.dim)]
        if any(cs):
            combos.append([sum(c * row[t] for c, row in zip(cs, combos[:r.torus_part.dim]))
                           for t in range(M.dim)])
    for v in combos:
        adv = M.ad(v)
        if not is_semisimple(adv):
            raise AssertionError("torus element does not act semisimply")
        if any(v) and adv.is_zero():
            raise AssertionError("nonzero torus element acts trivially")


def is_split_solvable(L: LieAlgebra, rng: random.Random | None = None) -> bool:
    """True when the splitting adds nothing."""
    return malcev_split_solvable(L, rng, check_idempotence=False).added_dim == 0


@dataclass(frozen=True)
class RankBoundReport:
    toric_rank: int
    gen_bound: int          # dim N - dim [N, N]
    rank_ok: bool
    solvable: bool
    codim: int | None       # dim L - dim N, solvable totals only
    codim_ok: bool | None

    @property
    def ok(self) -> bool:
        return self.rank_ok and (self.codim_ok is not False)

    def to_dict(self) -> dict:
        return {
            "toric_rank": self.toric_rank,
            "gen_bound": self.gen_bound,
            "rank_ok": self.rank_ok,
            "solvable": self.solvable,
            "codim": self.codim,
            "codim_ok": self.codim_ok,
        }


def _rank_report(L: LieAlgebra, nil: Subspace,
                 rng: random.Random) -> RankBoundReport:
    commN = product_space(L, nil, nil)
    g = nil.dim - commN.dim
    rt = toric_rank(L, nil, rng)
    solvable = L.is_solvable()
    codim = L.dim - nil.dim if solvable else None
    codim_ok = (codim <= g) if solvable else None
    return RankBoundReport(rt, g, rt <= g, solvable, codim, codim_ok)


def verify_rank_bound(E: Extension,
                      rng: random.Random | None = None) -> RankBoundReport:
    """Check toric rank and codimension against the generator count of N."""
    rng = _rng(rng)
    if not E.validated:
        raise LieError("rank bound check needs a validated extension")
    return _rank_report(E.total, E.nilideal, rng)


def rank_bound_of(L: LieAlgebra,
                  rng: random.Random | None = None) -> RankBoundReport:
    """Rank bound for a bare algebra; its nilradical is recomputed here."""
    rng = _rng(rng)
    return _rank_report(L, nilradical(L, rng), rng)


@dataclass(frozen=True)
class TogoReport:
    dim_der_sum: int        # dim Der(A + B), computed directly
    dim_der_a: int
    dim_der_b: int
    hom_a_to_zb: int        # (dim A - dim [A,A]) * dim Z(B)
    hom_b_to_za: int
    equal: bool

    @property
    def predicted(self) -> int:
        return self.dim_der_a + self.dim_der_b + self.hom_a_to_zb + self.hom_b_to_za

    def to_dict(self) -> dict:
        return {
            "dim_der_sum": self.dim_der_sum,
            "dim_der_a": self.dim_der_a,
            "dim_der_b": self.dim_der_b,
            "hom_a_to_zb": self.hom_a_to_zb,
            "hom_b_to_za": self.hom_b_to_za,
            "predicted": self.predicted,
            "equal": self.equal,
        }


def togo_dim_check(A: LieAlgebra, B: LieAlgebra) -> TogoReport:
    """Compare dim Der(A + B) against the four-block dimension count.

    Both sides are computed independently: the left by solving the Leibniz
    system on the direct sum, the right from the summands' derivation
    algebras, centers and generator counts. A mismatch is reported, not
    raised.
    """
    if not (A.is_nilpotent() and B.is_nilpotent()):
        raise LieError("block count is stated for nilpotent summands")
    from .liecore import direct_sum

    lhs = derivations(direct_sum(A, B)).dim
    da = derivations(A).dim
    db = derivations(B).dim
    ga = A.dim - product_space(A, A.full_space(), A.full_space()).dim
    gb = B.dim - product_space(B, B.full_space(), B.full_space()).dim
    za = center(A).dim
    zb = center(B).dim
    report = TogoReport(lhs, da, db, ga * zb, gb * za,
                        lhs == da + db + ga * zb + gb * za)
    return report
