"""Reduction of a truncated complex along an admissible vector field.

Sorting the pairs by decreasing lambda and moving paired cells to the
front turns the paired block of D1 into a unit lower triangular matrix L:
an off-diagonal 1 at (i, j) with j > i would witness a relation edge from
pair j's row to pair i's row, forcing lambda(j) > lambda(i) and therefore
j < i in the sort. With L invertible, Gaussian block elimination of the
paired rows and columns yields a smaller complex on the critical cells
together with an explicit strong deformation retract onto it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import FGChainComplex, ReductionTriple, TruncatedComplex, from_truncated
from .gf2 import Gf2Matrix, Permutation, hstack, join4, vstack
from .vectorfield import DiscreteVectorField

__all__ = ["TriangularityViolation", "ReorderedComplex", "reorder", "hexagonal_reduce"]


class TriangularityViolation(Exception):
    """The paired block of the reordered D1 is not unit lower triangular."""


@dataclass(frozen=True)
class ReorderedComplex:
    """A truncated complex with paired cells moved to the leading positions.

    Pair p of the sorted field becomes row p and column p of the reordered
    D1, so the nv x nv upper-left block L is unit lower triangular. T, S, R
    are the other D1 quadrants; d2_top/d2_bot split the reordered D2 rows
    at nv.  row_perm and col_perm send original indices to new positions.
    """

    original: TruncatedComplex
    reordered: TruncatedComplex
    nv: int
    row_perm: Permutation
    col_perm: Permutation
    L: Gf2Matrix
    T: Gf2Matrix
    S: Gf2Matrix
    R: Gf2Matrix
    d2_top: Gf2Matrix
    d2_bot: Gf2Matrix


def _front_permutation(total: int, leading: list[int], what: str) -> Permutation:
    """Send leading[p] to position p and pack the rest behind, order preserved."""
    image: list[int] = [-1] * total
    for p, idx in enumerate(leading):
        if not 0 <= idx < total:
            raise ValueError(f"{what} index {idx} out of range")
        if image[idx] != -1:
            raise ValueError(f"duplicate {what} index {idx}")
        image[idx] = p
    nxt = len(leading)
    for idx in range(total):
        if image[idx] == -1:
            image[idx] = nxt
            nxt += 1
    return Permutation(tuple(image))


def reorder(t: TruncatedComplex, vf: DiscreteVectorField) -> ReorderedComplex:
    """Permute t so the vector field pairs occupy the leading rows/columns of D1.

    The field must already be sorted by decreasing lambda (checked) and be
    admissible on t.d1 (assumed; see check_admissible). Raises
    TriangularityViolation if the paired block fails to come out unit
    lower triangular, which cannot happen for a sorted admissible field.
    """
    lams = [vf.lambdas[r] for r, _ in vf.pairs]
    if any(a < b for a, b in zip(lams, lams[1:])):
        raise ValueError("vector field pairs are not sorted by decreasing lambda")
    nv = vf.nv
    row_perm = _front_permutation(t.c0, [r for r, _ in vf.pairs], "row")
    col_perm = _front_permutation(t.c1, [c for _, c in vf.pairs], "column")
    d1r = t.d1.permute(row_perm, col_perm)
    d2r = t.d2.permute(col_perm, Permutation.identity(t.c2))
    block_l, block_t, block_s, block_r = d1r.split4(nv, nv)
    if not block_l.is_lower_unitriangular():
        raise TriangularityViolation(
            "paired block is not unit lower triangular; field unsorted or inadmissible"
        )
    d2_top, d2_bot = d2r.split_rows(nv)
    return ReorderedComplex(
        original=t,
        reordered=TruncatedComplex(d1r, d2r),
        nv=nv,
        row_perm=row_perm,
        col_perm=col_perm,
        L=block_l,
        T=block_t,
        S=block_s,
        R=block_r,
        d2_top=d2_top,
        d2_bot=d2_bot,
    )


def hexagonal_reduce(rc: ReorderedComplex) -> tuple[TruncatedComplex, ReductionTriple]:
    """Eliminate the paired cells of a reordered complex in one block step.

    Returns the critical complex (D1' = R + S L^-1 T over the unpaired
    cells, D2' = the critical rows of the reordered D2) and the reduction
    triple from the reordered complex onto it. D1 . D2 = 0 forces the
    paired rows of D2 to equal L^-1 T D2', which is why dropping them is a
    chain map. The triple's identities are checked by verify_reduction.
    """
    nv = rc.nv
    s0 = rc.original.c0 - nv  # critical vertices
    s1 = rc.original.c1 - nv  # critical edges
    c2 = rc.original.c2
    linv = rc.L.inv_unit_lower_triangular()
    s_linv = rc.S.mul(linv)
    linv_t = linv.mul(rc.T)
    d1_small = rc.R + s_linv.mul(rc.T)
    small_t = TruncatedComplex(d1_small, rc.d2_bot)
    big = from_truncated(rc.reordered)
    small = from_truncated(small_t)
    f = {
        0: hstack(s_linv, Gf2Matrix.identity(s0)),
        1: hstack(Gf2Matrix.zeros(s1, nv), Gf2Matrix.identity(s1)),
        2: Gf2Matrix.identity(c2),
    }
    g = {
        0: vstack(Gf2Matrix.zeros(nv, s0), Gf2Matrix.identity(s0)),
        1: vstack(linv_t, Gf2Matrix.identity(s1)),
        2: Gf2Matrix.identity(c2),
    }
    h = {
        0: join4(
            linv,
            Gf2Matrix.zeros(nv, s0),
            Gf2Matrix.zeros(s1, nv),
            Gf2Matrix.zeros(s1, s0),
        ),
        1: Gf2Matrix.zeros(c2, nv + s1),
    }
    return small_t, ReductionTriple(big, small, f, g, h)
