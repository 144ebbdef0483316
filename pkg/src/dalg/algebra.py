"""Finite-dimensional associative algebras with a differential, over GF(2^k).

An algebra is a structure tensor ``tensor[i][j]`` (coordinates of e_i e_j),
a differential matrix ``dmat`` (column j holds d(e_j)), and the index of
the basis vector equal to 1 (index 0 by convention everywhere in this
package).  :class:`AssocAlgebra2` checks associativity, the unit laws and
that d is a square-zero derivation; :class:`DAlgebra` additionally demands
the twisted commutation law

    a b = b a + d(b) d(a)

which is the commutativity constraint of the ambient symmetric tensor
category in characteristic 2.

All verification is exhaustive over basis tuples: every law checked here
is multilinear in its arguments (the one exception, the [x,x] = 0 law for
Lie objects, is handled in :mod:`dalg.lie` with its own justification), so
basis tuples decide the law on the whole algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import (
    BadDifferential,
    DimensionMismatch,
    NotApplicable,
    NotDIdeal,
    ShapeMismatch,
)
from .gf2k import Fe, FieldCtx
from .linalg import (
    CoordSolver,
    Matrix,
    Subspace,
    Vec,
    extend_basis,
    nullspace_rows,
    rref_rows,
)

Tensor = list  # tensor[i][j] is the coordinate vector of e_i * e_j


def vec_xor(a: Sequence[Fe], b: Sequence[Fe]) -> Vec:
    return [x ^ y for x, y in zip(a, b)]


def vec_scale(ctx: FieldCtx, c: Fe, v: Sequence[Fe]) -> Vec:
    if c == 1:
        return list(v)
    mul = ctx.mul
    return [mul(c, x) if x else 0 for x in v]


@dataclass
class AxiomFailure:
    axiom: str
    witness: tuple
    lhs: tuple
    rhs: tuple

    def __str__(self) -> str:
        w = ",".join(map(str, self.witness))
        return f"{self.axiom} fails at ({w}): {self.lhs} != {self.rhs}"


@dataclass
class AxiomReport:
    kind: str
    failures: list[AxiomFailure] = dc_field(default_factory=list)
    notes: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, axiom: str, witness: tuple, lhs: Sequence[Fe], rhs: Sequence[Fe]) -> None:
        self.failures.append(AxiomFailure(axiom, witness, tuple(lhs), tuple(rhs)))

    def merge(self, other: "AxiomReport") -> None:
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)

    def __str__(self) -> str:
        if self.passed:
            return f"{self.kind}: all axioms hold"
        lines = [f"{self.kind}: {len(self.failures)} failure(s)"]
        lines += [f"  {f}" for f in self.failures]
        return "\n".join(lines)


class AssocAlgebra2:
    """Associative unital algebra with a square-zero derivation.

    Parameters
    ----------
    ctx : FieldCtx
    tensor : n x n grid of coordinate vectors, tensor[i][j] = e_i e_j
    dmat : Matrix or rows, column j holding d(e_j)
    unit_idx : index of the basis vector equal to 1
    """

    kind = "assoc2"

    def __init__(self, ctx: FieldCtx, tensor: Tensor, dmat, unit_idx: int = 0):
        n = len(tensor)
        for row in tensor:
            if len(row) != n or any(len(v) != n for v in row):
                raise ShapeMismatch("structure tensor must be n x n x n")
        if isinstance(dmat, Matrix):
            if dmat.nrows != n or dmat.ncols != n:
                raise ShapeMismatch("differential matrix must be n x n")
        else:
            dmat = Matrix(ctx, dmat, n)
            if dmat.nrows != n or dmat.ncols != n:
                raise ShapeMismatch("differential matrix must be n x n")
        if not 0 <= unit_idx < n:
            raise ShapeMismatch("unit index out of range")
        self.ctx = ctx
        self.n = n
        self.tensor = [[list(v) for v in row] for row in tensor]
        self.dmat = dmat
        self.unit_idx = unit_idx

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, k={self.ctx.k})"

    def unit_vec(self) -> Vec:
        v = [0] * self.n
        v[self.unit_idx] = 1
        return v

    def zero_vec(self) -> Vec:
        return [0] * self.n

    def mul(self, a: Sequence[Fe], b: Sequence[Fe]) -> Vec:
        ctx = self.ctx
        mul = ctx.mul
        out = [0] * self.n
        for i, ai in enumerate(a):
            if not ai:
                continue
            ti = self.tensor[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = mul(ai, bj)
                row = ti[j]
                for m, rm in enumerate(row):
                    if rm:
                        out[m] ^= mul(c, rm)
        return out

    def d(self, a: Sequence[Fe]) -> Vec:
        return self.dmat.mul_vec(a)

    def basis_vec(self, i: int) -> Vec:
        v = [0] * self.n
        v[i] = 1
        return v

    def rand_vec(self, rng) -> Vec:
        return [self.ctx.rand(rng) for _ in range(self.n)]

    # -- verification -------------------------------------------------------

    def verify(self) -> AxiomReport:
        rep = AxiomReport(self.kind)
        self._verify_assoc(rep)
        return rep

    def _verify_assoc(self, rep: AxiomReport) -> None:
        n = self.n
        T = self.tensor
        u = self.unit_idx
        for i in range(n):
            lhs = T[u][i]
            e = self.basis_vec(i)
            if lhs != e:
                rep.record("left_unit", (i,), lhs, e)
            rhs = T[i][u]
            if rhs != e:
                rep.record("right_unit", (i,), rhs, e)
        for i in range(n):
            for j in range(n):
                tij = T[i][j]
                for k in range(n):
                    left = self.mul(tij, self.basis_vec(k))
                    right = self.mul(self.basis_vec(i), T[j][k])
                    if left != right:
                        rep.record("associativity", (i, j, k), left, right)
        dd = self.dmat.mul(self.dmat)
        if not dd.is_zero():
            rep.record("d_squared", (), tuple(map(tuple, dd.rows)), ((),))
        for i in range(n):
            for j in range(n):
                lhs = self.d(T[i][j])
                rhs = vec_xor(
                    self.mul(self.dmat.col(i), self.basis_vec(j)),
                    self.mul(self.basis_vec(i), self.dmat.col(j)),
                )
                if lhs != rhs:
                    rep.record("leibniz", (i, j), lhs, rhs)
        du = self.dmat.col(u)
        if any(du):
            rep.record("unit_differential", (u,), du, tuple([0] * n))

    # -- derived subspaces --------------------------------------------------

    def ker_d(self) -> Subspace:
        return Subspace(self.ctx, self.n, nullspace_rows(self.ctx, self.dmat.rows, self.n))

    def im_d(self) -> Subspace:
        return Subspace(self.ctx, self.n, [self.dmat.col(j) for j in range(self.n)])

    def center(self) -> Subspace:
        # solve x e_i = e_i x for all i: stack (L_i - R_i) and take the kernel
        rows = []
        for i in range(self.n):
            li = self._left_mult_rows(i)
            ri = self._right_mult_rows(i)
            rows.extend(vec_xor(a, b) for a, b in zip(li, ri))
        return Subspace(self.ctx, self.n, nullspace_rows(self.ctx, rows, self.n))

    def _left_mult_rows(self, i: int) -> list[Vec]:
        # matrix of x -> e_i x, rows indexed by output coordinate
        return [[self.tensor[i][j][m] for j in range(self.n)] for m in range(self.n)]

    def _right_mult_rows(self, i: int) -> list[Vec]:
        return [[self.tensor[j][i][m] for j in range(self.n)] for m in range(self.n)]

    def left_mult_matrix(self, a: Sequence[Fe]) -> Matrix:
        cols = [self.mul(a, self.basis_vec(j)) for j in range(self.n)]
        return Matrix.from_cols(self.ctx, cols)

    def is_commutative(self) -> tuple[int, int] | None:
        """None when commutative, else the first noncommuting basis pair."""
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.tensor[i][j] != self.tensor[j][i]:
                    return (i, j)
        return None


class DAlgebra(AssocAlgebra2):
    """Associative algebra satisfying the twisted commutation law."""

    kind = "dalgebra"

    def verify(self) -> AxiomReport:
        rep = AxiomReport(self.kind)
        self._verify_assoc(rep)
        n = self.n
        for i in range(n):
            di = self.dmat.col(i)
            for j in range(n):
                # e_i e_j = e_j e_i + d(e_j) d(e_i)
                rhs = vec_xor(self.tensor[j][i], self.mul(self.dmat.col(j), di))
                if self.tensor[i][j] != rhs:
                    rep.record("d_commutativity", (i, j), self.tensor[i][j], rhs)
        return rep


@dataclass
class Morphism:
    """Linear map between algebras, columns holding images of basis vectors."""

    source: AssocAlgebra2
    target: AssocAlgebra2
    mat: Matrix

    def apply(self, v: Sequence[Fe]) -> Vec:
        return self.mat.mul_vec(v)

    def __repr__(self) -> str:
        return f"Morphism({self.source!r} -> {self.target!r})"


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    if inner.target is not outer.source and inner.target.n != outer.source.n:
        raise DimensionMismatch("morphisms do not chain")
    return Morphism(inner.source, outer.target, outer.mat.mul(inner.mat))


def invert(m: Morphism) -> Morphism:
    return Morphism(m.target, m.source, m.mat.inverse())


def verify_morphism(m: Morphism, require_iso: bool = False) -> AxiomReport:
    """Check unitality, multiplicativity, d-equivariance (and bijectivity)."""
    rep = AxiomReport("morphism")
    src, tgt = m.source, m.target
    if m.mat.ncols != src.n or m.mat.nrows != tgt.n:
        raise ShapeMismatch("morphism matrix shape disagrees with its algebras")
    if src.ctx is not tgt.ctx:
        raise DimensionMismatch("morphism endpoints live over different fields")
    img_unit = m.apply(src.unit_vec())
    if img_unit != tgt.unit_vec():
        rep.record("unit", (), img_unit, tgt.unit_vec())
    for i in range(src.n):
        fi = m.mat.col(i)
        for j in range(src.n):
            lhs = m.apply(src.tensor[i][j])
            rhs = tgt.mul(fi, m.mat.col(j))
            if lhs != rhs:
                rep.record("multiplicative", (i, j), lhs, rhs)
    lhs_mat = m.mat.mul(src.dmat)
    rhs_mat = tgt.dmat.mul(m.mat)
    if lhs_mat != rhs_mat:
        rep.record("d_equivariant", (), tuple(map(tuple, lhs_mat.rows)), tuple(map(tuple, rhs_mat.rows)))
    if require_iso:
        if src.n != tgt.n or m.mat.rank() != src.n:
            rep.record("bijective", (), (m.mat.rank(),), (src.n,))
    return rep


def lemma_suite(a: DAlgebra) -> AxiomReport:
    """Consequences of the axioms, checked on concrete data.

    Verified here: d(x)^2 = 0 on the basis (enough, since squares of
    elements of the image of d reduce to basis squares by the commutation
    law), Im(d) inside Ker(d), Im(d) central, dim Im(d) < dim Ker(d), and
    for every noncommuting basis pair (a, b) the independence of
    {d(a), d(b), d(a)d(b)} together with dim Im(d) >= 3.
    """
    rep = AxiomReport("lemma_suite")
    n = a.n
    zero = [0] * n
    for i in range(n):
        di = a.dmat.col(i)
        sq = a.mul(di, di)
        if any(sq):
            rep.record("d_square_zero", (i,), sq, zero)
    im = a.im_d()
    ker = a.ker_d()
    for r in im.rows:
        if not ker.contains(r):
            rep.record("im_inside_ker", (), r, zero)
    cen = a.center()
    for r in im.rows:
        if not cen.contains(r):
            rep.record("im_central", (), r, zero)
    if not im.dim < ker.dim:
        rep.record("im_smaller_than_ker", (), (im.dim,), (ker.dim,))
    witness = a.is_commutative()
    if witness is not None:
        for i in range(n):
            di = a.dmat.col(i)
            for j in range(i + 1, n):
                if a.tensor[i][j] == a.tensor[j][i]:
                    continue
                dj = a.dmat.col(j)
                prod = a.mul(di, dj)
                sp = Subspace(a.ctx, n, [di, dj, prod])
                if sp.dim != 3:
                    rep.record("noncomm_triple_independent", (i, j), (sp.dim,), (3,))
        if im.dim < 3:
            rep.record("noncomm_im_dim", witness, (im.dim,), (3,))
    return rep


def small_dim_commutativity_check(a: DAlgebra) -> AxiomReport:
    """dim Im(d) <= 2 forces commutativity, as does dim A <= 6."""
    rep = AxiomReport("small_dim_commutativity")
    witness = a.is_commutative()
    if witness is None:
        rep.notes.append("commutative")
        return rep
    im_dim = a.im_d().dim
    if im_dim <= 2:
        rep.record("im_le_2_commutative", witness, (im_dim,), ())
    if a.n <= 6:
        rep.record("dim_le_6_commutative", witness, (a.n,), ())
    rep.notes.append(f"noncommutative with dim Im(d) = {im_dim}, dim = {a.n}")
    return rep


def defect(a: AssocAlgebra2) -> int:
    """dim Ker(d) - dim Im(d)."""
    return a.ker_d().dim - a.im_d().dim


def homology(a: DAlgebra) -> tuple[DAlgebra, Matrix]:
    """Ker(d)/Im(d) as a commutative algebra with zero differential.

    Returns (H, proj) where proj maps Ker(d) coordinates (in the ambient
    basis) to H coordinates.  Chosen coset representatives sit on H as the
    attribute ``coset_reps`` (one ambient vector per H basis element, the
    class of 1 first).
    """
    ker = a.ker_d()
    im = a.im_d()
    unit = a.unit_vec()
    if im.contains(unit):
        raise NotApplicable("unit is a boundary; homology has no unit")
    reps = [unit] + extend_basis(
        Subspace(a.ctx, a.n, im.rows + [unit]), [r[:] for r in ker.rows]
    )
    h = len(reps)
    off = im.dim
    # complete to a basis of all of A so the projection is linear everywhere
    # and restricts to the coset map on Ker(d)
    span = Subspace(a.ctx, a.n, im.rows + reps)
    rest = extend_basis(span, [a.basis_vec(i) for i in range(a.n)])
    solver = CoordSolver(a.ctx, im.rows + reps + rest)

    def project(v: Sequence[Fe]) -> Vec:
        return solver.coords(v)[off : off + h]

    tensor = [[project(a.mul(reps[i], reps[j])) for j in range(h)] for i in range(h)]
    halg = DAlgebra(a.ctx, tensor, Matrix.zeros(a.ctx, h, h), unit_idx=0)
    halg.coset_reps = reps
    proj_cols = [project(a.basis_vec(j)) for j in range(a.n)]
    return halg, Matrix.from_cols(a.ctx, proj_cols, h)


def change_basis(a: AssocAlgebra2, new_basis: Sequence[Sequence[Fe]], unit: Sequence[Fe] | None = None):
    """Rewrite a on the given basis (rows as ambient coordinate vectors).

    Returns (B, phi) with phi the isomorphism from B back to a.  ``unit``
    overrides a.unit_vec() for callers whose tensor is assembled by hand.
    """
    if len(new_basis) != a.n:
        raise DimensionMismatch("change of basis needs exactly n vectors")
    solver = CoordSolver(a.ctx, new_basis)
    n = a.n
    tensor = [
        [solver.coords(a.mul(new_basis[i], new_basis[j])) for j in range(n)]
        for i in range(n)
    ]
    dcols = [solver.coords(a.d(new_basis[i])) for i in range(n)]
    unit_coords = solver.coords(list(unit) if unit is not None else a.unit_vec())
    unit_idx = _standard_index(unit_coords)
    if unit_idx is None:
        raise NotApplicable("unit is not a basis vector in the proposed basis")
    out = type(a)(a.ctx, tensor, Matrix.from_cols(a.ctx, dcols), unit_idx)
    phi = Morphism(out, a, Matrix.from_cols(a.ctx, [list(v) for v in new_basis]))
    return out, phi


def _standard_index(v: Sequence[Fe]) -> int | None:
    nz = [(i, c) for i, c in enumerate(v) if c]
    if len(nz) == 1 and nz[0][1] == 1:
        return nz[0][0]
    return None


def subalgebra(a: AssocAlgebra2, vectors: Sequence[Sequence[Fe]], unit: Sequence[Fe] | None = None):
    """Algebra structure on the span of vectors (must contain 1, be closed).

    Returns (S, incl) with the unit of S at index 0.  ``unit`` defaults to
    the unit of a; passing an idempotent e builds the corner algebra on a
    span of the form e*a (e must act as identity on the span).  Raises
    :class:`NotApplicable` when the span misses the unit or fails closure
    under multiplication or d.
    """
    span = Subspace(a.ctx, a.n, vectors)
    unit = list(unit) if unit is not None else a.unit_vec()
    if not span.contains(unit):
        raise NotApplicable("subalgebra span does not contain the unit")
    for r in span.rows:
        if a.mul(unit, r) != list(r) or a.mul(r, unit) != list(r):
            raise NotApplicable("proposed unit does not act as identity on the span")
    basis = [unit] + extend_basis(Subspace(a.ctx, a.n, [unit]), span.rows)
    solver = CoordSolver(a.ctx, basis)
    m = len(basis)
    tensor = []
    for i in range(m):
        row = []
        for j in range(m):
            prod = a.mul(basis[i], basis[j])
            if not span.contains(prod):
                raise NotApplicable("span not closed under multiplication")
            row.append(solver.coords(prod))
        tensor.append(row)
    dcols = []
    for i in range(m):
        dv = a.d(basis[i])
        if not span.contains(dv):
            raise NotApplicable("span not closed under d")
        dcols.append(solver.coords(dv))
    cls = type(a) if isinstance(a, DAlgebra) else AssocAlgebra2
    sub = cls(a.ctx, tensor, Matrix.from_cols(a.ctx, dcols), 0)
    incl = Morphism(sub, a, Matrix.from_cols(a.ctx, basis))
    return sub, incl


def is_d_ideal(a: AssocAlgebra2, space: Subspace) -> bool:
    """Closed under d and under multiplication by the algebra on both sides."""
    if space.ambient != a.n or space.ctx is not a.ctx:
        raise ShapeMismatch("subspace does not live in the algebra")
    for r in space.rows:
        if not space.contains(a.d(r)):
            return False
        for i in range(a.n):
            e = a.basis_vec(i)
            if not space.contains(a.mul(e, r)):
                return False
            if not space.contains(a.mul(r, e)):
                return False
    return True


def quotient(a: DAlgebra, ideal_space: Subspace):
    """Quotient by a d-ideal; returns (Q, proj).

    The ideal is revalidated here.  Coset representatives are the unit
    followed by standard basis vectors chosen greedily; the unit of the
    quotient therefore sits at index 0.
    """
    if not is_d_ideal(a, ideal_space):
        raise NotDIdeal("subspace is not a d-ideal")
    unit = a.unit_vec()
    if ideal_space.contains(unit):
        raise NotApplicable("ideal contains 1; the quotient has no unit")
    reps = extend_basis(
        ideal_space, [unit] + [a.basis_vec(i) for i in range(a.n)]
    )
    m = len(reps)
    solver = CoordSolver(a.ctx, ideal_space.rows + reps)
    off = ideal_space.dim

    def project(v: Sequence[Fe]) -> Vec:
        return solver.coords(v)[off:]

    tensor = [[project(a.mul(reps[i], reps[j])) for j in range(m)] for i in range(m)]
    dcols = [project(a.d(reps[i])) for i in range(m)]
    q = type(a)(a.ctx, tensor, Matrix.from_cols(a.ctx, dcols), 0)
    proj = Morphism(a, q, Matrix.from_cols(a.ctx, [project(a.basis_vec(j)) for j in range(a.n)]))
    return q, proj


def direct_product_many(algs: Sequence[DAlgebra]):
    """Componentwise product of several algebras, rebased so 1 is index 0.

    The unit is the sum of the factor units, which is not a standard basis
    vector in block coordinates, hence the rebase.  Returns (P, projs) with
    one projection morphism per factor.
    """
    if not algs:
        raise NotApplicable("product of no factors")
    ctx = algs[0].ctx
    for f in algs[1:]:
        if f.ctx is not ctx:
            raise DimensionMismatch("product factors live over different fields")
    n = sum(f.n for f in algs)
    offs = []
    o = 0
    for f in algs:
        offs.append(o)
        o += f.n
    tensor = [[[0] * n for _ in range(n)] for _ in range(n)]
    drows = [[0] * n for _ in range(n)]
    for f, off in zip(algs, offs):
        for i in range(f.n):
            for j in range(f.n):
                tensor[off + i][off + j][off : off + f.n] = f.tensor[i][j]
                drows[off + i][off + j] = f.dmat.rows[i][j]
    blockwise = type(algs[0])(ctx, tensor, Matrix(ctx, drows, n), offs[0] + algs[0].unit_idx)
    ua = [0] * n
    for f, off in zip(algs, offs):
        ua[off + f.unit_idx] = 1
    basis = [ua]
    for idx, (f, off) in enumerate(zip(algs, offs)):
        skip = f.unit_idx if idx == 0 else -1
        basis += [blockwise.basis_vec(off + i) for i in range(f.n) if i != skip]
    prod, phi = change_basis(blockwise, basis, unit=ua)
    projs = []
    for f, off in zip(algs, offs):
        block = Matrix(ctx, [[1 if off + i == j else 0 for j in range(n)] for i in range(f.n)], n)
        projs.append(Morphism(prod, f, block.mul(phi.mat)))
    return prod, projs


def direct_product(a: DAlgebra, b: DAlgebra):
    """Two-factor product; returns (P, proj_a, proj_b)."""
    prod, projs = direct_product_many([a, b])
    return prod, projs[0], projs[1]


def embed_algebra(a: AssocAlgebra2, big_ctx: FieldCtx, embed) -> AssocAlgebra2:
    """Same structure constants pushed through a field embedding."""
    tensor = [[[embed(x) for x in v] for v in row] for row in a.tensor]
    drows = [[embed(x) for x in r] for r in a.dmat.rows]
    return type(a)(big_ctx, tensor, Matrix(big_ctx, drows, a.n), a.unit_idx)


def check_differential(ctx: FieldCtx, dmat: Matrix) -> None:
    if not dmat.mul(dmat).is_zero():
        raise BadDifferential("differential does not square to zero")
