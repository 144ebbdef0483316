"""Builders for small reference algebras shared across the test suite."""

from __future__ import annotations

from dalg import DAlgebra, Matrix, field
from dalg.gf2k import FieldCtx


def truncated_poly_algebra(ctx: FieldCtx, m: int) -> DAlgebra:
    """F[t]/(t^m) with zero differential, basis 1, t, ..., t^(m-1)."""
    tensor = [
        [[1 if s == i + j else 0 for s in range(m)] if i + j < m else [0] * m for j in range(m)]
        for i in range(m)
    ]
    return DAlgebra(ctx, tensor, Matrix.zeros(ctx, m, m), 0)


def tiny_d_algebra(ctx: FieldCtx) -> DAlgebra:
    """Basis {1, w, x} with d(x) = w, x^2 = w x = x w = w^2 = 0.

    The smallest commutative algebra with a nonzero differential.
    """
    n = 3
    tensor = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        tensor[0][i][i] = 1
        tensor[i][0][i] = 1
    dmat = Matrix(ctx, [[0, 0, 0], [0, 0, 1], [0, 0, 0]], n)
    return DAlgebra(ctx, tensor, dmat, 0)


def field_as_algebra(ctx: FieldCtx) -> DAlgebra:
    """The base field as a one-dimensional algebra."""
    return DAlgebra(ctx, [[[1]]], Matrix.zeros(ctx, 1, 1), 0)


def gf4_over_gf2_algebra() -> DAlgebra:
    """GF(4) as a two-dimensional commutative algebra over GF(2).

    Basis {1, g} with g^2 = g + 1; semisimple with a residue field the
    base field cannot split.
    """
    ctx = field(1)
    tensor = [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 1]],  # g * g = 1 + g
    ]
    return DAlgebra(ctx, tensor, Matrix.zeros(ctx, 2, 2), 0)


def corpus_small() -> list[DAlgebra]:
    """Deterministic corpus of d-algebras of dimension at most 6.

    Mixes truncated polynomials, products, quotients and bounded
    presentations over several fields; used wherever a test wants many
    small verified algebras.
    """
    from dalg import close, direct_product, field as fld, quotient
    from dalg import parse_presentation, quotient_to_dalgebra

    sources = [
        "P(0,1) / [y1^2] @ deg 2",
        "P(0,2) / [y1^2, y2^2, y1 y2] @ deg 2",
        "P(1,0) / [x1^2, xi1 x1] @ deg 3",
        "P(1,1) / [x1^2, xi1 x1, y1^2, y1 x1, y1 xi1] @ deg 3",
    ]
    algs = []
    for k in (1, 2, 3, 4, 8):
        ctx = fld(k)
        for m in range(1, 6):
            algs.append(truncated_poly_algebra(ctx, m))
        algs.append(tiny_d_algebra(ctx))
        algs.append(field_as_algebra(ctx))
        t2 = truncated_poly_algebra(ctx, 2)
        t3 = truncated_poly_algebra(ctx, 3)
        tiny = tiny_d_algebra(ctx)
        algs.append(direct_product(t2, t2)[0])
        algs.append(direct_product(t3, t3)[0])
        algs.append(direct_product(tiny, t2)[0])
        algs.append(direct_product(tiny, tiny)[0])
        t4 = truncated_poly_algebra(ctx, 4)
        t_sq = t4.mul(t4.basis_vec(1), t4.basis_vec(1))
        algs.append(quotient(t4, close(t4, [t_sq]).space)[0])
        algs.append(quotient(tiny, close(tiny, [tiny.basis_vec(1)]).space)[0])
        for src in sources:
            algs.append(quotient_to_dalgebra(parse_presentation(src, ctx)))
    algs.append(gf4_over_gf2_algebra())
    assert all(a.n <= 6 for a in algs)
    return algs


def random_dim7(rng) -> DAlgebra:
    """A random member of the 7-dimensional family in a random basis."""
    from dalg import Subspace, change_basis, field as fld
    from dalg.dim7 import make_D

    ctx = fld(rng.choice([1, 2, 3, 4, 8]))
    base = make_D(ctx, ctx.rand(rng), ctx.rand(rng), ctx.rand(rng))
    while True:
        rows = [base.unit_vec()] + [base.rand_vec(rng) for _ in range(6)]
        if Subspace(ctx, 7, rows).dim == 7:
            break
    moved, _ = change_basis(base, rows, unit=base.unit_vec())
    return moved
