"""Dense linear algebra over GF(2) on bit-packed rows.

Vectors are Python ints: bit ``j`` is coordinate ``j``.  A matrix is a tuple
of row ints, so ``m @ x`` has bit ``i`` equal to the parity of
``rows[i] & x``.  Python ints are arbitrary-length words, which gives the
packed XOR row operations without any extra dependency.

Echelon forms use the highest set bit of a row as its pivot and are kept
fully reduced, so two equal subspaces always have identical bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class DimensionError(ValueError):
    """Operand sizes do not agree."""


class ContainmentError(ValueError):
    """A subspace that was required to be contained in another is not."""


def _mask(n: int) -> int:
    return (1 << n) - 1


def parse_bits(text: str) -> int:
    """``"101"`` -> vector with coordinates 0 and 2 set."""
    v = 0
    for j, ch in enumerate(text):
        if ch == "1":
            v |= 1 << j
        elif ch != "0":
            raise ValueError(f"not a bit string: {text!r}")
    return v


def format_bits(v: int, n: int) -> str:
    return "".join("1" if (v >> j) & 1 else "0" for j in range(n))


def bits(v: int):
    """Yield the set coordinates of ``v`` in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


@dataclass(frozen=True)
class BitMatrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise DimensionError(f"expected {self.rows} rows, got {len(self.data)}")
        full = _mask(self.cols)
        for r in self.data:
            if r < 0 or r & ~full:
                raise DimensionError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows: Sequence, cols: Optional[int] = None) -> "BitMatrix":
        """Build from bit strings, 0/1 sequences or ints (ints need ``cols``)."""
        data = []
        width = cols
        for row in rows:
            if isinstance(row, str):
                width = len(row) if width is None else width
                data.append(parse_bits(row))
            elif isinstance(row, int):
                data.append(row)
            else:
                row = list(row)
                width = len(row) if width is None else width
                data.append(sum(1 << j for j, b in enumerate(row) if b))
        if width is None:
            raise DimensionError("cannot infer column count")
        return cls(len(data), width, tuple(data))

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "BitMatrix":
        return cls(rows, len(columns), _transpose(columns, rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def columns(self) -> tuple[int, ...]:
        return _transpose(self.data, self.cols)

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.cols, self.rows, self.columns())

    def apply(self, x: int) -> int:
        if x >> self.cols:
            raise DimensionError("vector longer than column count")
        out = 0
        for i, row in enumerate(self.data):
            if (row & x).bit_count() & 1:
                out |= 1 << i
        return out

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        cols = other.columns()
        return BitMatrix.from_columns([self.apply(c) for c in cols], self.rows)

    def is_zero(self) -> bool:
        return not any(self.data)

    def __str__(self):
        return "\n".join(format_bits(r, self.cols) for r in self.data)


def _transpose(vectors: Sequence[int], length: int) -> tuple[int, ...]:
    out = [0] * length
    for i, v in enumerate(vectors):
        for j in bits(v):
            out[j] |= 1 << i
    return tuple(out)


def _echelon(vectors: Iterable[int]) -> dict[int, int]:
    """Pivot bit -> row, rows with distinct top bits (not yet back-reduced)."""
    piv: dict[int, int] = {}
    for v in vectors:
        while v:
            p = v.bit_length() - 1
            row = piv.get(p)
            if row is None:
                piv[p] = v
                break
            v ^= row
    return piv


def _back_reduce(piv: dict[int, int]) -> dict[int, int]:
    done: dict[int, int] = {}
    for p in sorted(piv):
        row = piv[p]
        for q in bits(row & _mask(p)):
            if q in done:
                row ^= done[q]
        done[p] = row
    return done


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``GF(2)^ambient_dim`` held in reduced row echelon form.

    ``basis`` is sorted by decreasing pivot; no pivot bit appears in any
    other basis row.
    """

    ambient_dim: int
    basis: tuple[int, ...]

    def __post_init__(self):
        seen = set()
        for row in self.basis:
            if row <= 0 or row >> self.ambient_dim:
                raise DimensionError("basis row is zero or outside the ambient space")
            seen.add(row.bit_length() - 1)
        if len(seen) != len(self.basis):
            raise ValueError("basis rows must have distinct pivots")

    @classmethod
    def span(cls, vectors: Iterable[int], ambient_dim: int) -> "Subspace":
        piv = _back_reduce(_echelon(vectors))
        if piv and max(piv) >= ambient_dim:
            raise DimensionError("vector outside the ambient space")
        return cls(ambient_dim, tuple(piv[p] for p in sorted(piv, reverse=True)))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(1 << i for i in reversed(range(ambient_dim))))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(r.bit_length() - 1 for r in self.basis)

    def reduce(self, v: int) -> int:
        """Remainder of ``v`` after clearing every pivot bit."""
        for row in self.basis:
            if (v >> (row.bit_length() - 1)) & 1:
                v ^= row
        return v

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def issubspace(self, other: "Subspace") -> bool:
        return all(row in other for row in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionError("ambient dimensions differ")
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def extend(self, vectors: Iterable[int]) -> "Subspace":
        return Subspace.span(list(self.basis) + list(vectors), self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: kernel of [A; B] -> A+B restricted to the A block.
        n = self.ambient_dim
        rows = [(a << n) | a for a in self.basis] + [b << n for b in other.basis]
        piv = _back_reduce(_echelon(rows))
        low = [r for p, r in piv.items() if p < n]
        return Subspace.span(low, n)


def rank(m: BitMatrix) -> int:
    return len(_echelon(m.data))


def row_space(m: BitMatrix) -> Subspace:
    return Subspace.span(m.data, m.cols)


def image(m: BitMatrix) -> Subspace:
    """Column space of ``m`` inside ``GF(2)^rows``."""
    return Subspace.span(m.columns(), m.rows)


def kernel_basis(m: BitMatrix) -> Subspace:
    """All ``x`` with ``m @ x == 0``."""
    rowspace = _back_reduce(_echelon(m.data))
    vectors = []
    for f in range(m.cols):
        if f in rowspace:
            continue
        v = 1 << f
        for p, row in rowspace.items():
            if (row >> f) & 1:
                v |= 1 << p
        vectors.append(v)
    return Subspace.span(vectors, m.cols)


def solve(m: BitMatrix, b: int) -> Optional[int]:
    """Some ``x`` with ``m @ x == b``, or ``None`` when ``b`` is not in the image."""
    if b < 0 or b >> m.rows:
        raise DimensionError(f"right-hand side does not fit {m.rows} rows")
    piv: dict[int, tuple[int, int]] = {}
    for j, col in enumerate(m.columns()):
        combo = 1 << j
        while col:
            p = col.bit_length() - 1
            hit = piv.get(p)
            if hit is None:
                piv[p] = (col, combo)
                break
            col ^= hit[0]
            combo ^= hit[1]
    x = 0
    while b:
        hit = piv.get(b.bit_length() - 1)
        if hit is None:
            return None
        b ^= hit[0]
        x ^= hit[1]
    return x


def quotient_reps(sub: Subspace, whole: Subspace) -> list[int]:
    """Vectors of ``whole`` projecting to a basis of ``whole / sub``.

    The representatives are reduced against ``sub`` and against each other,
    so the choice is canonical for the pair.
    """
    if sub.ambient_dim != whole.ambient_dim:
        raise DimensionError("ambient dimensions differ")
    for row in sub.basis:
        if row not in whole:
            raise ContainmentError("sub is not contained in whole")
    reduced = [sub.reduce(w) for w in whole.basis]
    piv = _back_reduce(_echelon(r for r in reduced if r))
    reps = []
    for p in sorted(piv, reverse=True):
        reps.append(sub.reduce(piv[p]))
    return reps


class Quotient:
    """Coordinates on ``whole / sub`` with respect to ``quotient_reps``."""

    def __init__(self, sub: Subspace, whole: Subspace, reps: Optional[Sequence[int]] = None):
        self.sub = sub
        self.whole = whole
        self.reps = tuple(quotient_reps(sub, whole) if reps is None else reps)
        # Combined echelon: each rep tagged with its coordinate bit.
        rows: dict[int, tuple[int, int]] = {}
        for row in sub.basis:
            rows[row.bit_length() - 1] = (row, 0)
        for i, rep in enumerate(self.reps):
            v, tag = rep, 1 << i
            while v:
                p = v.bit_length() - 1
                hit = rows.get(p)
                if hit is None:
                    rows[p] = (v, tag)
                    break
                v ^= hit[0]
                tag ^= hit[1]
            else:
                raise ValueError("representatives are dependent modulo sub")
        self._rows = rows

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, v: int) -> int:
        """Coordinates of the class of ``v``; raises if ``v`` is not in ``whole``."""
        tag = 0
        while v:
            hit = self._rows.get(v.bit_length() - 1)
            if hit is None:
                raise ContainmentError("vector is not in the numerator subspace")
            v ^= hit[0]
            tag ^= hit[1]
        return tag

    def lift(self, c: int) -> int:
        v = 0
        for i in bits(c):
            v ^= self.reps[i]
        return v


__all__ = [
    "BitMatrix",
    "ContainmentError",
    "DimensionError",
    "Quotient",
    "Subspace",
    "bits",
    "format_bits",
    "image",
    "kernel_basis",
    "parse_bits",
    "quotient_reps",
    "rank",
    "row_space",
    "solve",
]
