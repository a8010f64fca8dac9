"""Finitely generated chain complexes over GF(2) and reductions between them.

A complex stores one free module per degree in a window [lo, hi] and the
boundary matrices between consecutive degrees, in the column convention:
d(k) has dim(k-1) rows and dim(k) columns, and chains are column vectors.
Everything outside the window is the zero module.
"""

from __future__ import annotations

from collections.abc import Mapping

from .gf2 import Gf2Matrix
from .verification import VerificationReport

__all__ = [
    "BoundaryViolation",
    "FGChainComplex",
    "TruncatedComplex",
    "ReductionTriple",
    "from_truncated",
    "betti",
    "verify_reduction",
]


class BoundaryViolation(Exception):
    """Raised when claimed boundary matrices do not compose to zero."""


class FGChainComplex:
    """A chain complex concentrated in degrees lo..hi with d(k) . d(k+1) = 0."""

    __slots__ = ("lo", "hi", "_dims", "_d")

    def __init__(
        self,
        lo: int,
        hi: int,
        dims: Mapping[int, int],
        d: Mapping[int, Gf2Matrix] | None = None,
    ):
        if lo > hi:
            raise ValueError(f"empty degree window [{lo}, {hi}]")
        self._dims: dict[int, int] = {}
        for k, n in dims.items():
            if not lo <= k <= hi:
                if n:
                    raise ValueError(f"degree {k} outside window [{lo}, {hi}]")
                continue
            if n < 0:
                raise ValueError(f"negative dimension {n} in degree {k}")
            self._dims[k] = n
        self.lo = lo
        self.hi = hi
        self._d: dict[int, Gf2Matrix] = {}
        for k, m in (d or {}).items():
            if k <= lo or k > hi:
                if not m.is_zero():
                    raise ValueError(f"nonzero differential at degree {k} outside ({lo}, {hi}]")
                continue
            if m.rows != self.dim(k - 1) or m.cols != self.dim(k):
                raise ValueError(
                    f"d({k}) is {m.rows}x{m.cols}, expected {self.dim(k - 1)}x{self.dim(k)}"
                )
            self._d[k] = m
        for k in range(lo + 1, hi):
            if not self.d(k).mul(self.d(k + 1)).is_zero():
                raise BoundaryViolation(f"d({k}) . d({k + 1}) != 0")

    def dim(self, k: int) -> int:
        return self._dims.get(k, 0)

    def d(self, k: int) -> Gf2Matrix:
        """Boundary matrix in degree k; implicit zero outside the stored range."""
        stored = self._d.get(k)
        if stored is not None:
            return stored
        return Gf2Matrix.zeros(self.dim(k - 1), self.dim(k))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FGChainComplex):
            return NotImplemented
        return (
            self.lo == other.lo
            and self.hi == other.hi
            and all(self.dim(k) == other.dim(k) for k in self.degrees())
            and all(self.d(k) == other.d(k) for k in self.degrees())
        )

    def __repr__(self) -> str:
        dims = ", ".join(f"{k}: {self.dim(k)}" for k in self.degrees())
        return f"<FGChainComplex [{self.lo}, {self.hi}] dims {{{dims}}}>"


class TruncatedComplex:
    """The degree-[0, 2] data of a cell complex: just D1 and D2 with D1 . D2 = 0."""

    __slots__ = ("d1", "d2")

    def __init__(self, d1: Gf2Matrix, d2: Gf2Matrix):
        if d1.cols != d2.rows:
            raise ValueError(f"D1 is {d1.rows}x{d1.cols} but D2 is {d2.rows}x{d2.cols}")
        if not d1.mul(d2).is_zero():
            raise BoundaryViolation("D1 . D2 != 0")
        self.d1 = d1
        self.d2 = d2

    @property
    def c0(self) -> int:
        return self.d1.rows

    @property
    def c1(self) -> int:
        return self.d1.cols

    @property
    def c2(self) -> int:
        return self.d2.cols

    def dims(self) -> tuple[int, int, int]:
        return (self.c0, self.c1, self.c2)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedComplex):
            return NotImplemented
        return self.d1 == other.d1 and self.d2 == other.d2

    def __repr__(self) -> str:
        return f"<TruncatedComplex {self.c0}/{self.c1}/{self.c2}>"


def from_truncated(t: TruncatedComplex) -> FGChainComplex:
    return FGChainComplex(0, 2, {0: t.c0, 1: t.c1, 2: t.c2}, {1: t.d1, 2: t.d2})


def betti(c: FGChainComplex) -> dict[int, int]:
    """Betti numbers over GF(2): dim(k) - rank d(k) - rank d(k+1) per degree."""
    ranks = {k: c.d(k).rank() for k in range(c.lo, c.hi + 2)}
    out = {}
    for k in c.degrees():
        b = c.dim(k) - ranks[k] - ranks.get(k + 1, 0)
        if b < 0:
            raise BoundaryViolation(f"negative betti number in degree {k}")
        out[k] = b
    return out


class ReductionTriple:
    """A strong deformation retract (f, g, h) from a big complex onto a small one.

    f(k): big_k -> small_k and g(k): small_k -> big_k are chain maps, and
    h(k): big_k -> big_(k+1) is the homotopy; verify_reduction checks the
    five defining identities plus both chain-map conditions.
    """

    __slots__ = ("big", "small", "_f", "_g", "_h")

    def __init__(
        self,
        big: FGChainComplex,
        small: FGChainComplex,
        f: Mapping[int, Gf2Matrix],
        g: Mapping[int, Gf2Matrix],
        h: Mapping[int, Gf2Matrix],
    ):
        if (big.lo, big.hi) != (small.lo, small.hi):
            raise ValueError("big and small complexes must share a degree window")
        self.big = big
        self.small = small
        self._f = dict(f)
        self._g = dict(g)
        self._h = dict(h)
        for k, m in self._f.items():
            if (m.rows, m.cols) != (small.dim(k), big.dim(k)):
                raise ValueError(f"f({k}) is {m.rows}x{m.cols}, expected {small.dim(k)}x{big.dim(k)}")
        for k, m in self._g.items():
            if (m.rows, m.cols) != (big.dim(k), small.dim(k)):
                raise ValueError(f"g({k}) is {m.rows}x{m.cols}, expected {big.dim(k)}x{small.dim(k)}")
        for k, m in self._h.items():
            if (m.rows, m.cols) != (big.dim(k + 1), big.dim(k)):
                raise ValueError(
                    f"h({k}) is {m.rows}x{m.cols}, expected {big.dim(k + 1)}x{big.dim(k)}"
                )

    def f(self, k: int) -> Gf2Matrix:
        stored = self._f.get(k)
        if stored is not None:
            return stored
        return Gf2Matrix.zeros(self.small.dim(k), self.big.dim(k))

    def g(self, k: int) -> Gf2Matrix:
        stored = self._g.get(k)
        if stored is not None:
            return stored
        return Gf2Matrix.zeros(self.big.dim(k), self.small.dim(k))

    def h(self, k: int) -> Gf2Matrix:
        stored = self._h.get(k)
        if stored is not None:
            return stored
        return Gf2Matrix.zeros(self.big.dim(k + 1), self.big.dim(k))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReductionTriple):
            return NotImplemented
        if self.big != other.big or self.small != other.small:
            return False
        ks = self.big.degrees()
        return all(
            self.f(k) == other.f(k) and self.g(k) == other.g(k) and self.h(k) == other.h(k)
            for k in ks
        )


def verify_reduction(r: ReductionTriple) -> VerificationReport:
    """Check every identity a reduction must satisfy, degree by degree.

    In each degree: f g = I, g f + d h + h d = I, f h = 0, h g = 0, h h = 0,
    f d_big = d_small f, and d_big g = g d_small. All comparisons are exact.
    """
    report = VerificationReport()
    big, small = r.big, r.small
    for k in big.degrees():
        f_k, g_k, h_k = r.f(k), r.g(k), r.h(k)
        eye_small = Gf2Matrix.identity(small.dim(k))
        eye_big = Gf2Matrix.identity(big.dim(k))
        report.add("f_g_identity", f_k.mul(g_k) == eye_small, k)
        gf = g_k.mul(f_k)
        dh = big.d(k + 1).mul(h_k)
        hd = r.h(k - 1).mul(big.d(k))
        report.add("g_f_plus_dh_plus_hd_identity", gf + dh + hd == eye_big, k)
        report.add("f_h_zero", r.f(k + 1).mul(h_k).is_zero(), k)
        report.add("h_g_zero", h_k.mul(g_k).is_zero(), k)
        report.add("h_h_zero", r.h(k + 1).mul(h_k).is_zero(), k)
        report.add("f_chain_map", r.f(k - 1).mul(big.d(k)) == small.d(k).mul(f_k), k)
        report.add("g_chain_map", big.d(k).mul(g_k) == r.g(k - 1).mul(small.d(k)), k)
    return report
