"""Dense matrices over the supported rings, plus the lattice flattening that
reduces ring-linear problems to exact integer linear algebra.

Matrices act on column vectors; composition is right-to-left everywhere.
"""
from __future__ import annotations

from . import intlinalg
from .rings import Ring, RingElement, RingMismatch, UnsupportedRing


class ShapeError(ValueError):
    """Matrix dimensions are not conformable."""


class Mat:
    """An immutable rows x cols matrix of RingElements over one ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, rows: int, cols: int, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        for e in entries:
            if not isinstance(e, RingElement) or e.ring != ring:
                raise RingMismatch("entry over the wrong ring")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    # --- constructors -----------------------------------------------------
    @classmethod
    def from_rows(cls, ring: Ring, rows_data) -> "Mat":
        """Build from nested lists; plain ints are coerced through the ring."""
        rows = len(rows_data)
        cols = len(rows_data[0]) if rows else 0
        flat = []
        for r in rows_data:
            if len(r) != cols:
                raise ShapeError("ragged rows")
            for x in r:
                flat.append(x if isinstance(x, RingElement) else ring.from_int(x))
        return cls(ring, rows, cols, flat)

    @classmethod
    def zero(cls, ring: Ring, rows: int, cols: int) -> "Mat":
        z = ring.zero
        return cls(ring, rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Mat":
        z, o = ring.zero, ring.one
        return cls(ring, n, n, [o if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def block(cls, grid) -> "Mat":
        """Glue a grid of blocks with consistent edge dimensions."""
        if not grid or not grid[0]:
            raise ShapeError("empty block grid")
        ring = grid[0][0].ring
        col_widths = [b.cols for b in grid[0]]
        entries = []
        for row_blocks in grid:
            h = row_blocks[0].rows
            for j, b in enumerate(row_blocks):
                if b.ring != ring:
                    raise RingMismatch("blocks over different rings")
                if b.rows != h or b.cols != col_widths[j]:
                    raise ShapeError("inconsistent block dimensions")
            for i in range(h):
                for b in row_blocks:
                    entries.extend(b.entries[i * b.cols:(i + 1) * b.cols])
        return cls(ring, sum(rb[0].rows for rb in grid), sum(col_widths), entries)

    # --- access -------------------------------------------------------------
    def __getitem__(self, ij) -> RingElement:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def submatrix(self, rows, cols) -> "Mat":
        ents = [self[i, j] for i in rows for j in cols]
        return Mat(self.ring, len(rows), len(cols), ents)

    # --- arithmetic -----------------------------------------------------
    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(self.ring, self.rows, self.cols,
                   [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(self.ring, self.rows, self.cols,
                   [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Mat":
        return Mat(self.ring, self.rows, self.cols, [-a for a in self.entries])

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ring != other.ring:
            raise RingMismatch("matrix product over different rings")
        if self.cols != other.rows:
            raise ShapeError(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        z = self.ring.zero
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = ri[k]
                    if not a.is_zero:
                        acc = acc + a * other[k, j]
                out.append(acc)
        return Mat(self.ring, self.rows, other.cols, out)

    def scale(self, c: RingElement) -> "Mat":
        return Mat(self.ring, self.rows, self.cols, [c * a for a in self.entries])

    def transpose(self) -> "Mat":
        return Mat(self.ring, self.cols, self.rows,
                   [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def map_entries(self, fn, ring: Ring | None = None) -> "Mat":
        return Mat(ring or self.ring, self.rows, self.cols,
                   [fn(a) for a in self.entries])

    def _check_same_shape(self, other: "Mat") -> None:
        if self.ring != other.ring:
            raise RingMismatch("matrices over different rings")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.ring == other.ring and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    @property
    def is_zero(self) -> bool:
        return all(a.is_zero for a in self.entries)

    def is_idempotent(self) -> bool:
        return self.rows == self.cols and (self @ self) == self

    def __repr__(self):
        body = "; ".join(
            ", ".join(self.ring.format(a) for a in self.row(i)) for i in range(self.rows)
        )
        return f"Mat({self.rows}x{self.cols} over {self.ring!r}: [{body}])"

    # --- lattice flattening -----------------------------------------------
    def flatten(self) -> list[list[int]]:
        """Block regular representation: an rows*k x cols*k integer matrix.

        flatten(A) @ coords(x) == coords(A @ x) for ring column vectors x.
        """
        k = self.ring.flat_rank
        if k is None:
            raise UnsupportedRing(f"{self.ring.kind} has no finite flattening")
        out = intlinalg.zeros(self.rows * k, self.cols * k)
        for i in range(self.rows):
            for j in range(self.cols):
                blk = self.ring.regular_representation(self[i, j])
                for a in range(k):
                    row = out[i * k + a]
                    for b in range(k):
                        row[j * k + b] = blk[a][b]
        return out

    def column_coords(self, j: int) -> list[int]:
        v: list[int] = []
        for i in range(self.rows):
            v.extend(self.ring.coords(self[i, j]))
        return v

    @classmethod
    def from_column_coords(cls, ring: Ring, v: list[int]) -> "Mat":
        k = ring.flat_rank
        if k is None or len(v) % k:
            raise UnsupportedRing("cannot unflatten over this ring")
        ents = [ring.from_coords(v[i:i + k]) for i in range(0, len(v), k)]
        return cls(ring, len(ents), 1, ents)


def solve_linear(m: Mat, b: Mat) -> Mat | None:
    """One solution x of m @ x = b over the ring, or None when there is none.

    Decided exactly through the Smith normal form of the integer flattening.
    Laurent rings are unsupported.
    """
    return MatrixSolver(m).solve(b)


class MatrixSolver:
    """Factored flattening of a matrix for repeated ring-linear solves."""

    def __init__(self, m: Mat):
        if m.ring.flat_rank is None:
            raise UnsupportedRing(f"solving over {m.ring.kind} is unsupported")
        self.m = m
        self._solver = intlinalg.IntegerSolver(m.flatten(), m.cols * m.ring.flat_rank)

    def solve(self, b: Mat) -> Mat | None:
        if b.ring != self.m.ring:
            raise RingMismatch("right-hand side over the wrong ring")
        if b.rows != self.m.rows or b.cols != 1:
            raise ShapeError("right-hand side must be a conformable column")
        x = self._solver.solve(b.column_coords(0))
        if x is None:
            return None
        return Mat.from_column_coords(self.m.ring, x)

    def solve_matrix(self, rhs: Mat) -> Mat | None:
        """One X with m @ X = rhs, solved column by column; None if any fails."""
        if rhs.rows != self.m.rows:
            raise ShapeError("right-hand side has wrong height")
        cols = []
        for j in range(rhs.cols):
            x = self._solver.solve(
                Mat(self.m.ring, rhs.rows, 1, rhs.column(j)).column_coords(0))
            if x is None:
                return None
            cols.append(Mat.from_column_coords(self.m.ring, x))
        if not cols:
            return Mat.zero(self.m.ring, self.m.cols, 0)
        return Mat.block([cols])


def kernel_lattice(m: Mat) -> Mat:
    """Columns forming a Z-basis of the integer kernel of a matrix over Z."""
    from .rings import IntegerRing
    if not isinstance(m.ring, IntegerRing):
        raise UnsupportedRing("kernel_lattice expects an integer matrix")
    basis = intlinalg.IntegerSolver(m.flatten(), m.cols).kernel_basis()
    z = m.ring
    cols = len(basis)
    ents = [z.from_int(basis[j][i]) for i in range(m.cols) for j in range(cols)]
    return Mat(z, m.cols, cols, ents)


def ring_kernel_coords(m: Mat) -> list[list[int]]:
    """Z-basis (in flattened coords) of the ring-column-vector kernel of m."""
    k = m.ring.flat_rank
    if k is None:
        raise UnsupportedRing("no finite flattening over this ring")
    return intlinalg.IntegerSolver(m.flatten(), m.cols * k).kernel_basis()


def smith_normal_form(m: Mat) -> tuple[Mat, Mat, Mat]:
    """(D, U, V) with U @ m @ V = D over the integers; U, V unimodular."""
    from .rings import IntegerRing
    if not isinstance(m.ring, IntegerRing):
        raise UnsupportedRing("Smith normal form expects an integer matrix")
    s = intlinalg.smith_normal_form(m.flatten())

    def lift(rows):
        return Mat.from_rows(m.ring, rows) if rows else Mat.zero(m.ring, 0, 0)

    return lift(s.d), lift(s.u), lift(s.v)
