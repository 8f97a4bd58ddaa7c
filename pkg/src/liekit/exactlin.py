"""Exact linear and polynomial algebra over the rationals.

Everything here computes with Fraction scalars; no floats ever enter, so
ranks, kernels and Jordan-Chevalley parts are exact, and identical inputs
give bit-identical outputs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

Rat = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _bitsize(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


class Mat:
    """Dense rational matrix (row-major). Treat instances as immutable."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        self.data = [[_rat(x) for x in row] for row in data]
        self.rows = len(self.data)
        if self.rows:
            self.cols = len(self.data[0])
        else:
            self.cols = 0 if cols is None else cols
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    @staticmethod
    def zeros(rows: int, cols: int) -> "Mat":
        return Mat([[_ZERO] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def identity(n: int) -> "Mat":
        m = Mat.zeros(n, n)
        for i in range(n):
            m.data[i][i] = _ONE
        return m

    @staticmethod
    def from_flat(rows: int, cols: int, flat: Sequence) -> "Mat":
        if len(flat) != rows * cols:
            raise ValueError("flat length mismatch")
        return Mat([flat[i * cols : (i + 1) * cols] for i in range(rows)], cols=cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> tuple[Fraction, ...]:
        return tuple(self.data[i])

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.data)

    def vec(self) -> tuple[Fraction, ...]:
        """Row-major flattening."""
        return tuple(x for row in self.data for x in row)

    def transpose(self) -> "Mat":
        return Mat([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
                   cols=self.rows)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
                   cols=self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
                   cols=self.cols)

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in row] for row in self.data], cols=self.cols)

    def __mul__(self, scalar) -> "Mat":
        s = _rat(scalar)
        return Mat([[s * a for a in row] for row in self.data], cols=self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        out = [[_ZERO] * other.cols for _ in range(self.rows)]
        odata = other.data
        for i, arow in enumerate(self.data):
            orow = out[i]
            for k, aik in enumerate(arow):
                if aik:
                    brow = odata[k]
                    for j, bkj in enumerate(brow):
                        if bkj:
                            orow[j] += aik * bkj
        return Mat(out, cols=other.cols)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        vv = [_rat(x) for x in v]
        out = []
        for row in self.data:
            s = _ZERO
            for a, x in zip(row, vv):
                if a and x:
                    s += a * x
            out.append(s)
        return tuple(out)

    def pow(self, k: int) -> "Mat":
        if not self.is_square():
            raise ValueError("pow needs a square matrix")
        if k < 0:
            raise ValueError("negative power")
        result = Mat.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("trace needs a square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), _ZERO)

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Mat) and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.vec())))

    def __repr__(self) -> str:
        return f"Mat({self.data!r})"


def vstack(*mats: Mat) -> Mat:
    cols = mats[0].cols
    rows = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("column mismatch in vstack")
        rows.extend(m.data)
    return Mat(rows, cols=cols)


def commutator(a: Mat, b: Mat) -> Mat:
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# row reduction

def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column list.

    Pivot choice: among the nonzero candidates in the pivot column, the entry
    of smallest bit size wins, ties going to the lowest row index. This keeps
    intermediate numerators/denominators small and is fully deterministic.
    """
    R = [row[:] for row in m.data]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_bits = 0
        for i in range(r, nrows):
            v = R[i][c]
            if v:
                b = _bitsize(v)
                if best < 0 or b < best_bits:
                    best, best_bits = i, b
        if best < 0:
            continue
        if best != r:
            R[r], R[best] = R[best], R[r]
        prow = R[r]
        piv = prow[c]
        if piv != 1:
            inv = _ONE / piv
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] *= inv
        nz = [(j, prow[j]) for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            f = R[i][c]
            if f:
                row = R[i]
                for j, v in nz:
                    row[j] -= f * v
        pivots.append(c)
        r += 1
    return Mat(R, cols=ncols), tuple(pivots)


def rref_with_transform(m: Mat) -> tuple[Mat, tuple[int, ...], Mat]:
    """Like rref, but also returns invertible T with T @ m == R."""
    aug = Mat([list(row) + list(trow) for row, trow in
               zip(m.data, Mat.identity(m.rows).data)], cols=m.cols + m.rows)
    R_aug, piv_aug = rref(aug)
    # pivots in the identity block happen exactly for zero rows of the m part,
    # so the m-part pivots are those < m.cols
    pivots = tuple(p for p in piv_aug if p < m.cols)
    R = Mat([row[: m.cols] for row in R_aug.data], cols=m.cols)
    T = Mat([row[m.cols :] for row in R_aug.data], cols=m.rows)
    return R, pivots, T


def rank(m: Mat) -> int:
    return len(rref(m)[1])


class Subspace:
    """Subspace of Q^ambient held as an RREF basis (rows).

    The basis matrix is always in reduced row echelon form with no zero rows,
    pivots strictly increasing and pivot entries 1 with zeros above and below,
    so equal subspaces compare equal componentwise.
    """

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, basis: Mat, pivots: tuple[int, ...]):
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots

    @staticmethod
    def span(ambient: int, rows: Iterable[Sequence]) -> "Subspace":
        rows = [list(r) for r in rows]
        for r in rows:
            if len(r) != ambient:
                raise ValueError("vector length mismatch")
        if not rows:
            return Subspace(ambient, Mat([], cols=ambient), ())
        R, piv = rref(Mat(rows, cols=ambient))
        return Subspace(ambient, Mat(R.data[: len(piv)], cols=ambient), piv)

    @staticmethod
    def zero(ambient: int) -> "Subspace":
        return Subspace(ambient, Mat([], cols=ambient), ())

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(ambient, Mat.identity(ambient), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def rows(self) -> list[tuple[Fraction, ...]]:
        return [tuple(r) for r in self.basis.data]

    def reduce(self, v: Sequence) -> list[Fraction]:
        """Residual of v after eliminating all pivot coordinates."""
        w = [_rat(x) for x in v]
        if len(w) != self.ambient:
            raise ValueError("vector length mismatch")
        for i, p in enumerate(self.pivots):
            f = w[p]
            if f:
                brow = self.basis.data[i]
                for j in range(p, self.ambient):
                    if brow[j]:
                        w[j] -= f * brow[j]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def coords(self, v: Sequence):
        """Coefficients of v over the RREF basis rows, or None."""
        w = [_rat(x) for x in v]
        cs = [w[p] for p in self.pivots]
        return tuple(cs) if self.contains(v) else None

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.basis.data)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return Subspace.span(self.ambient, list(self.basis.data) + list(other.basis.data))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of the stacked coefficient system."""
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        k, m = self.dim, other.dim
        if k == 0 or m == 0:
            return Subspace.zero(self.ambient)
        stacked = vstack(self.basis, -other.basis)  # (k+m) x n
        lk = kernel(stacked.transpose())            # w with sum_i w_i row_i = 0
        rows = []
        for w in lk.basis.data:
            v = [_ZERO] * self.ambient
            for i in range(k):
                if w[i]:
                    brow = self.basis.data[i]
                    for j in range(self.ambient):
                        if brow[j]:
                            v[j] += w[i] * brow[j]
            rows.append(v)
        return Subspace.span(self.ambient, rows)

    def complement(self) -> "Subspace":
        """Coordinate complement within the ambient space (non-pivot axes)."""
        free = [c for c in range(self.ambient) if c not in set(self.pivots)]
        rows = []
        for c in free:
            v = [_ZERO] * self.ambient
            v[c] = _ONE
            rows.append(v)
        return Subspace.span(self.ambient, rows)

    def complement_in(self, outer: "Subspace") -> "Subspace":
        """A complement of self inside outer (requires self <= outer)."""
        if not outer.contains_space(self):
            raise ValueError("complement_in requires containment")
        span = _IncrementalRowSpan(self.ambient)
        for row in self.basis.data:
            span.append(row)
        added = []
        for row in outer.basis.data:
            if span.append(row):
                added.append(row)
        return Subspace.span(self.ambient, added)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def kernel(m: Mat) -> Subspace:
    """Null space {v : m v = 0} as a Subspace of Q^cols."""
    R, piv = rref(m)
    pivset = set(piv)
    free = [c for c in range(m.cols) if c not in pivset]
    rows = []
    for c in free:
        v = [_ZERO] * m.cols
        v[c] = _ONE
        for i, p in enumerate(piv):
            v[p] = -R.data[i][c]
        rows.append(v)
    return Subspace.span(m.cols, rows)


def image(m: Mat) -> Subspace:
    """Column space of m as a Subspace of Q^rows."""
    return Subspace.span(m.rows, [m.column(j) for j in range(m.cols)])


class _IncrementalRowSpan:
    """Grow a row space one vector at a time, tracking coordinates.

    Rows are stored leading-coefficient-normalized and indexed by pivot, so a
    single ascending sweep decides membership. Each stored row also carries
    its expression over the vectors appended so far.
    """

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.rows: list[tuple[int, list[Fraction], list[Fraction]]] = []  # (pivot, row, comb)
        self.appended = 0

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Sequence):
        w = [_rat(x) for x in v]
        alpha = [_ZERO] * len(self.rows)
        for idx, (p, row, _comb) in enumerate(self.rows):
            f = w[p]
            if f:
                for j in range(p, self.ambient):
                    if row[j]:
                        w[j] -= f * row[j]
                alpha[idx] = f
        return w, alpha

    def append(self, v: Sequence) -> bool:
        """Add v; True if it enlarged the span."""
        w, alpha = self._reduce(v)
        k = self.appended
        self.appended += 1
        for p in range(self.ambient):
            if w[p]:
                inv = _ONE / w[p]
                row = [x * inv for x in w]
                comb = [_ZERO] * self.appended
                comb[k] = inv
                for idx, a in enumerate(alpha):
                    if a:
                        old = self.rows[idx][2]
                        fa = a * inv
                        for t, c in enumerate(old):
                            if c:
                                comb[t] -= fa * c
                self.rows.append((p, row, comb))
                self.rows.sort(key=lambda t: t[0])
                return True
        return False

    def coords(self, v: Sequence):
        """Express v over the appended vectors; None if outside the span."""
        w, alpha = self._reduce(v)
        if any(w):
            return None
        out = [_ZERO] * self.appended
        for idx, a in enumerate(alpha):
            if a:
                comb = self.rows[idx][2]
                for t, c in enumerate(comb):
                    if c:
                        out[t] += a * c
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        w, _ = self._reduce(v)
        return not any(w)


class RowBasis:
    """Coordinate solver for the row space of a fixed matrix."""

    def __init__(self, m: Mat):
        self.source_rows = m.rows
        self.span = _IncrementalRowSpan(m.cols)
        for row in m.data:
            self.span.append(row)

    @property
    def rank(self) -> int:
        return self.span.dim

    def coords(self, v: Sequence):
        """c with c @ m == v, or None. Full-length (one entry per source row)."""
        c = self.span.coords(v)
        if c is None:
            return None
        return tuple(list(c) + [_ZERO] * (self.source_rows - len(c)))

    def contains(self, v: Sequence) -> bool:
        return self.span.contains(v)


# ---------------------------------------------------------------------------
# polynomials

class Poly:
    """Univariate rational polynomial, coefficients lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence):
        cs = [_rat(x) for x in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.c = tuple(cs)

    @staticmethod
    def zero() -> "Poly":
        return Poly([])

    @staticmethod
    def one() -> "Poly":
        return Poly([1])

    @staticmethod
    def x() -> "Poly":
        return Poly([0, 1])

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # zero polynomial gets -1

    def is_zero(self) -> bool:
        return not self.c

    def leading(self) -> Fraction:
        if not self.c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.c), len(other.c))
        a = list(self.c) + [_ZERO] * (n - len(self.c))
        b = list(other.c) + [_ZERO] * (n - len(other.c))
        return Poly([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.c), len(other.c))
        a = list(self.c) + [_ZERO] * (n - len(self.c))
        b = list(other.c) + [_ZERO] * (n - len(other.c))
        return Poly([x - y for x, y in zip(a, b)])

    def __neg__(self) -> "Poly":
        return Poly([-x for x in self.c])

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.c or not other.c:
                return Poly.zero()
            out = [_ZERO] * (len(self.c) + len(other.c) - 1)
            for i, a in enumerate(self.c):
                if a:
                    for j, b in enumerate(other.c):
                        if b:
                            out[i + j] += a * b
            return Poly(out)
        return Poly([_rat(other) * a for a in self.c])

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [_ZERO] * max(len(self.c) - len(other.c) + 1, 0)
        r = list(self.c)
        dlead = other.leading()
        dd = other.degree
        while len(r) - 1 >= dd and any(r):
            while r and not r[-1]:
                r.pop()
            if len(r) - 1 < dd:
                break
            f = r[-1] / dlead
            k = len(r) - 1 - dd
            q[k] = f
            for i, b in enumerate(other.c):
                if b:
                    r[k + i] -= f * b
        return Poly(q), Poly(r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading()
        if lead == 1:
            return self
        return Poly([a / lead for a in self.c])

    def derivative(self) -> "Poly":
        return Poly([i * a for i, a in enumerate(self.c)][1:])

    def evaluate(self, x) -> Fraction:
        acc = _ZERO
        xv = _rat(x)
        for a in reversed(self.c):
            acc = acc * xv + a
        return acc

    def eval_mat(self, m: Mat) -> Mat:
        if not m.is_square():
            raise ValueError("eval_mat needs a square matrix")
        acc = Mat.zeros(m.rows, m.cols)
        eye = Mat.identity(m.rows)
        for a in reversed(self.c):
            acc = acc @ m
            if a:
                acc = acc + a * eye
        return acc

    def compose_mod(self, q: "Poly", mod: "Poly") -> "Poly":
        """self(q) reduced modulo mod."""
        acc = Poly.zero()
        for a in reversed(self.c):
            acc = (acc * q + Poly([a])) % mod
        return acc

    def trailing_zero_count(self) -> int:
        """Multiplicity of the root 0."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        n = 0
        while not self.c[n]:
            n += 1
        return n

    def __str__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            if i == 0:
                terms.append(f"{a}")
            elif i == 1:
                terms.append(f"{a}*x" if a != 1 else "x")
            else:
                terms.append(f"{a}*x^{i}" if a != 1 else f"x^{i}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({list(self.c)!r})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = a, b
    u0, u1 = Poly.one(), Poly.zero()
    v0, v1 = Poly.zero(), Poly.one()
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero():
        return r0, u0, v0
    lead = r0.leading()
    inv = _ONE / lead
    return r0.monic(), inv * u0, inv * v0


def squarefree_part(p: Poly) -> Poly:
    """The radical p / gcd(p, p'), monic. Same roots, each simple."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


# ---------------------------------------------------------------------------
# characteristic and minimal polynomials

def charpoly(m: Mat) -> Poly:
    """Characteristic polynomial det(xI - m), monic.

    Reduces to Hessenberg form by exact similarity transformations, then runs
    the leading-minor recurrence; O(n^3) field operations instead of the
    exponential cofactor expansion.
    """
    if not m.is_square():
        raise ValueError("charpoly needs a square matrix")
    n = m.rows
    if n == 0:
        return Poly.one()
    H = [row[:] for row in m.data]
    for j in range(n - 2):
        # pick the pivot below the subdiagonal with the smallest bit size
        best = -1
        best_bits = 0
        for i in range(j + 1, n):
            v = H[i][j]
            if v:
                b = _bitsize(v)
                if best < 0 or b < best_bits:
                    best, best_bits = i, b
        if best < 0:
            continue
        if best != j + 1:
            H[j + 1], H[best] = H[best], H[j + 1]
            for row in H:
                row[j + 1], row[best] = row[best], row[j + 1]
        piv = H[j + 1][j]
        for i in range(j + 2, n):
            f = H[i][j] / piv
            if f:
                rowi, rowp = H[i], H[j + 1]
                for c in range(j, n):
                    if rowp[c]:
                        rowi[c] -= f * rowp[c]
                # similarity: compensate with a column operation
                for r in range(n):
                    if H[r][i]:
                        H[r][j + 1] += f * H[r][i]
    x = Poly.x()
    p = [Poly.one()]
    for mm in range(1, n + 1):
        poly = (x - Poly([H[mm - 1][mm - 1]])) * p[mm - 1]
        t = _ONE
        for i in range(1, mm):
            t = t * H[mm - i][mm - i - 1]
            if not t:
                break
            coeff = H[mm - i - 1][mm - 1]
            if coeff:
                poly = poly - (t * coeff) * p[mm - i - 1]
        p.append(poly)
    return p[n]


def minpoly(m: Mat) -> Poly:
    """Minimal polynomial: first monic dependency among powers of m."""
    if not m.is_square():
        raise ValueError("minpoly needs a square matrix")
    n = m.rows
    if n == 0:
        return Poly.one()
    span = _IncrementalRowSpan(n * n)
    power = Mat.identity(n)
    span.append(power.vec())
    for _ in range(n):
        power = power @ m
        cs = span.coords(power.vec())
        if cs is not None:
            return Poly([-c for c in cs] + [_ONE])
        span.append(power.vec())
    raise AssertionError("no dependency among n+1 matrix powers")  # unreachable


def is_nilpotent(m: Mat) -> bool:
    """Nilpotent operator test: characteristic polynomial is x^n."""
    p = charpoly(m)
    return all(not c for c in p.c[:-1])


def is_semisimple(m: Mat) -> bool:
    """Semisimple operator test: squarefree minimal polynomial."""
    mu = minpoly(m)
    return poly_gcd(mu, mu.derivative()).degree == 0


class OperatorPredicates(NamedTuple):
    is_nilpotent: bool
    is_semisimple: bool


def operator_predicates(m: Mat) -> OperatorPredicates:
    return OperatorPredicates(is_nilpotent(m), is_semisimple(m))


# ---------------------------------------------------------------------------
# Jordan-Chevalley decomposition

class JordanChevalley(NamedTuple):
    s: Mat        # semisimple part
    n: Mat        # nilpotent part
    witness: Poly  # q with s == q(m), for audit


def jordan_chevalley(m: Mat) -> JordanChevalley:
    """Exact m = s + n with s semisimple, n nilpotent, [s, n] = 0.

    Newton iteration on the squarefree part g of the characteristic
    polynomial: a <- a - g(a) * h(a), where h is the inverse of g' modulo g.
    The iterate is tracked as a polynomial in m reduced mod the minimal
    polynomial, so each step costs a handful of small polynomial products and
    the count is bounded by ceil(log2 n) + 1. Purely rational throughout.
    """
    if not m.is_square():
        raise ValueError("jordan_chevalley needs a square matrix")
    n_dim = m.rows
    if n_dim == 0:
        return JordanChevalley(m, m, Poly.x())
    chi = charpoly(m)
    mu = minpoly(m)
    g = squarefree_part(chi)
    gp = g.derivative()
    one, _u, h = poly_xgcd(g, gp)  # _u*g + h*g' = 1 since g is squarefree
    if one.degree != 0:
        raise AssertionError("squarefree part not coprime with its derivative")
    q = Poly.x() % mu
    limit = 1
    while (1 << limit) < max(n_dim, 1):
        limit += 1
    for _ in range(limit + 1):
        gq = g.compose_mod(q, mu)
        if gq.is_zero():
            break
        hq = h.compose_mod(q, mu)
        q = (q - gq * hq) % mu
    if not g.compose_mod(q, mu).is_zero():
        raise AssertionError("Newton iteration did not converge")
    s = q.eval_mat(m)
    return JordanChevalley(s, m - s, q)
