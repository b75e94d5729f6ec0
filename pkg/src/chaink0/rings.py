"""Exact arithmetic in the supported coefficient rings.

Four rings are supported: the integers, group rings Z[G] for a finite group
given by an explicit multiplication table, Laurent extensions R[t, t^-1] of
the first two, and imaginary quadratic rings Z[sqrt(d)] with d < 0 squarefree.
All coefficients are arbitrary-precision integers; no operation ever divides.

Elements are immutable and kept in canonical form (support sorted, no zero
coefficients), so equality is structural.
"""
from __future__ import annotations

from functools import cached_property


class RingMismatch(ValueError):
    """Operands belong to different rings."""


class UnsupportedRing(ValueError):
    """The operation is not defined over this ring."""


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        while n % p == 0:
            n //= p
        p += 1
    return True


class RingElement:
    """A canonical element of one of the supported rings.

    Arithmetic is delegated to the owning ring; mixing rings raises
    RingMismatch.  Python ints are accepted on either side of + - * and are
    coerced through the ring's canonical Z -> R map.
    """

    __slots__ = ("ring", "data")

    def __init__(self, ring: "Ring", data):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("ring elements are immutable")

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(self.data, o.data))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(self.data, self.ring._neg(o.data)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(o.data, self.ring._neg(self.data)))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring._mul(self.data, o.data))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.data))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.data == other.data

    def __hash__(self):
        return hash((self.ring, self.data))

    @property
    def is_zero(self) -> bool:
        return self.ring._is_zero(self.data)

    def __repr__(self):
        return f"<{self.ring.kind} {self.ring.format(self)}>"


class Ring:
    """Descriptor of a coefficient ring; also the factory for its elements."""

    kind: str = ""

    # --- element construction -------------------------------------------
    def element(self, data) -> RingElement:
        return RingElement(self, self._canon(data))

    def from_int(self, n: int) -> RingElement:
        raise NotImplementedError

    @cached_property
    def zero(self) -> RingElement:
        return self.from_int(0)

    @cached_property
    def one(self) -> RingElement:
        return self.from_int(1)

    # --- raw-data arithmetic --------------------------------------------
    def _canon(self, data):
        raise NotImplementedError

    def _add(self, x, y):
        raise NotImplementedError

    def _mul(self, x, y):
        raise NotImplementedError

    def _neg(self, x):
        raise NotImplementedError

    def _is_zero(self, x) -> bool:
        raise NotImplementedError

    # --- integer-lattice structure --------------------------------------
    # flat_rank is the rank of the ring as a Z-lattice; None when unbounded.
    flat_rank: int | None = None

    def coords(self, a: RingElement) -> list[int]:
        """Coordinates of a on the canonical integer basis."""
        raise UnsupportedRing(f"{self.kind} has no finite integer basis")

    def from_coords(self, v: list[int]) -> RingElement:
        raise UnsupportedRing(f"{self.kind} has no finite integer basis")

    def regular_representation(self, a: RingElement) -> list[list[int]]:
        """Matrix of left multiplication by a on the canonical basis."""
        raise UnsupportedRing(f"{self.kind} has no finite regular representation")

    # --- units -----------------------------------------------------------
    def is_unit(self, a: RingElement) -> bool:
        raise NotImplementedError

    # --- literals ---------------------------------------------------------
    def literal(self, a: RingElement):
        """JSON-compatible literal; parse_literal round-trips bit-exactly."""
        raise NotImplementedError

    def parse_literal(self, lit) -> RingElement:
        raise NotImplementedError

    def format(self, a: RingElement) -> str:
        raise NotImplementedError

    def descriptor(self) -> dict:
        """JSON-compatible ring descriptor (used by the document format)."""
        raise NotImplementedError


class IntegerRing(Ring):
    kind = "integers"
    flat_rank = 1

    def _canon(self, data):
        if not isinstance(data, int):
            raise TypeError("integer ring data must be int")
        return data

    def from_int(self, n: int) -> RingElement:
        return RingElement(self, n)

    def _add(self, x, y):
        return x + y

    def _mul(self, x, y):
        return x * y

    def _neg(self, x):
        return -x

    def _is_zero(self, x):
        return x == 0

    def coords(self, a):
        return [a.data]

    def from_coords(self, v):
        return RingElement(self, v[0])

    def regular_representation(self, a):
        return [[a.data]]

    def is_unit(self, a):
        return a.data in (1, -1)

    def literal(self, a):
        return str(a.data)

    def parse_literal(self, lit):
        if not isinstance(lit, str):
            raise ValueError("integer literal must be a decimal string")
        return RingElement(self, int(lit))

    def format(self, a):
        return str(a.data)

    def descriptor(self):
        return {"kind": "integers"}

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("integers")

    def __repr__(self):
        return "Z"


ZZ = IntegerRing()


class GroupRing(Ring):
    """Z[G] for a finite group given by a multiplication table on indices.

    table[i][j] is the index of g_i * g_j; index 0 must be the identity.
    Elements are stored as sorted tuples of (index, coeff) with coeff != 0.
    """

    kind = "group_ring"

    def __init__(self, table):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self._validate_table()
        self.flat_rank = self.order
        self.inverse = [0] * self.order
        for i in range(self.order):
            for j in range(self.order):
                if self.table[i][j] == 0:
                    self.inverse[i] = j

    def _validate_table(self):
        n = self.order
        idx = set(range(n))
        for row in self.table:
            if len(row) != n or set(row) != idx:
                raise ValueError("multiplication table rows must be permutations")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != idx:
                raise ValueError("multiplication table columns must be permutations")
        for i in range(n):
            if self.table[0][i] != i or self.table[i][0] != i:
                raise ValueError("index 0 must be the group identity")
        for i in range(n):
            if 0 not in self.table[i]:
                raise ValueError(f"element {i} has no inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("multiplication table is not associative")

    def _canon(self, data):
        acc: dict[int, int] = {}
        for idx, coeff in data:
            if not (0 <= idx < self.order):
                raise ValueError(f"group index {idx} out of range")
            acc[idx] = acc.get(idx, 0) + coeff
        return tuple(sorted((i, c) for i, c in acc.items() if c != 0))

    def from_int(self, n):
        return RingElement(self, ((0, n),) if n != 0 else ())

    def generator(self, idx: int) -> RingElement:
        return self.element([(idx, 1)])

    def _add(self, x, y):
        return self._canon(list(x) + list(y))

    def _mul(self, x, y):
        acc: dict[int, int] = {}
        for i, c in x:
            row = self.table[i]
            for j, d in y:
                k = row[j]
                acc[k] = acc.get(k, 0) + c * d
        return tuple(sorted((i, c) for i, c in acc.items() if c != 0))

    def _neg(self, x):
        return tuple((i, -c) for i, c in x)

    def _is_zero(self, x):
        return x == ()

    def coords(self, a):
        v = [0] * self.order
        for i, c in a.data:
            v[i] = c
        return v

    def from_coords(self, v):
        return RingElement(self, tuple((i, c) for i, c in enumerate(v) if c != 0))

    def regular_representation(self, a):
        m = [[0] * self.order for _ in range(self.order)]
        for i, c in a.data:
            row = self.table[i]
            for k in range(self.order):
                m[row[k]][k] += c
        return m

    def is_unit(self, a):
        # Trivial units only: +-g for a group element g.
        return len(a.data) == 1 and a.data[0][1] in (1, -1)

    def augment(self, a: RingElement) -> int:
        return sum(c for _, c in a.data)

    def literal(self, a):
        return [[c, i] for i, c in a.data]

    def parse_literal(self, lit):
        if not isinstance(lit, list):
            raise ValueError("group ring literal must be a list of [coeff, index]")
        return self.element([(int(i), int(c)) for c, i in lit])

    def format(self, a):
        if not a.data:
            return "0"
        return " + ".join(f"{c}*g{i}" for i, c in a.data)

    def descriptor(self):
        return {"kind": "group_ring", "table": [list(r) for r in self.table]}

    def __eq__(self, other):
        return isinstance(other, GroupRing) and self.table == other.table

    def __hash__(self):
        return hash(("group_ring", self.table))

    def __repr__(self):
        return f"Z[G{self.order}]"


class LaurentRing(Ring):
    """R[t, t^-1] over an integer or group-ring base.

    Elements are sorted tuples of (exponent, base_data) with nonzero base
    coefficients.  There is no finite integer basis, so the lattice-flattening
    operations are unsupported here.
    """

    kind = "laurent"
    flat_rank = None

    def __init__(self, base: Ring):
        if not isinstance(base, (IntegerRing, GroupRing)):
            raise UnsupportedRing(
                "Laurent base must be the integers or a group ring")
        self.base = base

    def _canon(self, data):
        acc: dict[int, object] = {}
        for exp, bd in data:
            cur = acc.get(exp)
            acc[exp] = self.base._add(cur, bd) if cur is not None else bd
        return tuple(
            sorted((e, bd) for e, bd in acc.items() if not self.base._is_zero(bd))
        )

    def from_int(self, n):
        b = self.base.from_int(n)
        return RingElement(self, () if b.is_zero else ((0, b.data),))

    def t(self, exp: int = 1) -> RingElement:
        return RingElement(self, ((exp, self.base.one.data),))

    def include(self, a: RingElement) -> RingElement:
        """The canonical inclusion of the base ring as Laurent constants."""
        if a.ring != self.base:
            raise RingMismatch("element is not over the Laurent base")
        return RingElement(self, () if a.is_zero else ((0, a.data),))

    def _add(self, x, y):
        return self._canon(list(x) + list(y))

    def _mul(self, x, y):
        acc: dict[int, object] = {}
        for e1, b1 in x:
            for e2, b2 in y:
                e = e1 + e2
                p = self.base._mul(b1, b2)
                cur = acc.get(e)
                acc[e] = self.base._add(cur, p) if cur is not None else p
        return tuple(
            sorted((e, bd) for e, bd in acc.items() if not self.base._is_zero(bd))
        )

    def _neg(self, x):
        return tuple((e, self.base._neg(bd)) for e, bd in x)

    def _is_zero(self, x):
        return x == ()

    def evaluate(self, a: RingElement, u: RingElement) -> RingElement:
        """Substitute t -> u for a unit u of the base ring."""
        if a.ring != self:
            raise RingMismatch("element is not over this Laurent ring")
        if u.ring != self.base or not self.base.is_unit(u):
            raise ValueError("evaluation point must be a unit of the base ring")
        # u_inverse: units here are +-1 or +-g, so invert by sign/group inverse.
        result = self.base.zero
        for e, bd in a.data:
            term = RingElement(self.base, bd)
            power = self._unit_power(u, e)
            result = result + term * power
        return result

    def _unit_power(self, u: RingElement, e: int) -> RingElement:
        if e >= 0:
            p = self.base.one
            for _ in range(e):
                p = p * u
            return p
        uinv = self._unit_inverse(u)
        p = self.base.one
        for _ in range(-e):
            p = p * uinv
        return p

    def _unit_inverse(self, u: RingElement) -> RingElement:
        if isinstance(self.base, IntegerRing):
            return u  # +-1 are self-inverse
        (idx, c), = u.data
        return self.base.element([(self.base.inverse[idx], c)])

    def is_unit(self, a):
        # Monomials u*t^k with u a unit of the base.
        return len(a.data) == 1 and self.base.is_unit(RingElement(self.base, a.data[0][1]))

    def literal(self, a):
        return [[self.base.literal(RingElement(self.base, bd)), e] for e, bd in a.data]

    def parse_literal(self, lit):
        if not isinstance(lit, list):
            raise ValueError("Laurent literal must be a list of [base-literal, exponent]")
        return self.element(
            [(int(e), self.base.parse_literal(bl).data) for bl, e in lit]
        )

    def format(self, a):
        if not a.data:
            return "0"
        return " + ".join(
            f"({self.base.format(RingElement(self.base, bd))})t^{e}" for e, bd in a.data
        )

    def descriptor(self):
        return {"kind": "laurent", "base": self.base.descriptor()}

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and self.base == other.base

    def __hash__(self):
        return hash(("laurent", self.base))

    def __repr__(self):
        return f"{self.base!r}[t,t^-1]"


class QuadraticRing(Ring):
    """Z[sqrt(d)] for squarefree d < 0; elements are pairs (a, b) = a + b*sqrt(d).

    The restriction to imaginary d keeps the norm form positive definite, so
    principality testing by bounded norm enumeration terminates.
    """

    kind = "quadratic"
    flat_rank = 2

    def __init__(self, d: int):
        if d >= 0:
            raise ValueError("only imaginary quadratic rings (d < 0) are supported")
        if d == 1 or not _is_squarefree(d):
            raise ValueError("d must be squarefree and != 0, 1")
        self.d = d

    def _canon(self, data):
        a, b = data
        return (int(a), int(b))

    def from_int(self, n):
        return RingElement(self, (n, 0))

    def sqrt_d(self) -> RingElement:
        return RingElement(self, (0, 1))

    def _add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def _mul(self, x, y):
        a, b = x
        c, e = y
        return (a * c + self.d * b * e, a * e + b * c)

    def _neg(self, x):
        return (-x[0], -x[1])

    def _is_zero(self, x):
        return x == (0, 0)

    def norm(self, a: RingElement) -> int:
        x, y = a.data
        return x * x - self.d * y * y

    def conjugate(self, a: RingElement) -> RingElement:
        return RingElement(self, (a.data[0], -a.data[1]))

    def coords(self, a):
        return [a.data[0], a.data[1]]

    def from_coords(self, v):
        return RingElement(self, (v[0], v[1]))

    def regular_representation(self, a):
        x, y = a.data
        return [[x, self.d * y], [y, x]]

    def is_unit(self, a):
        return self.norm(a) == 1

    def literal(self, a):
        return [a.data[0], a.data[1]]

    def parse_literal(self, lit):
        if not isinstance(lit, list) or len(lit) != 2:
            raise ValueError("quadratic literal must be [a, b]")
        return RingElement(self, (int(lit[0]), int(lit[1])))

    def format(self, a):
        return f"{a.data[0]} + {a.data[1]}*sqrt({self.d})"

    def descriptor(self):
        return {"kind": "quadratic", "d": self.d}

    def __eq__(self, other):
        return isinstance(other, QuadraticRing) and self.d == other.d

    def __hash__(self):
        return hash(("quadratic", self.d))

    def __repr__(self):
        return f"Z[sqrt({self.d})]"


def ring_from_descriptor(desc: dict) -> Ring:
    kind = desc.get("kind")
    if kind == "integers":
        return ZZ
    if kind == "group_ring":
        return GroupRing(desc["table"])
    if kind == "laurent":
        return LaurentRing(ring_from_descriptor(desc["base"]))
    if kind == "quadratic":
        return QuadraticRing(desc["d"])
    raise ValueError(f"unknown ring kind: {kind!r}")


def augment(a: RingElement) -> int:
    """Sum of coefficients Z[G] -> Z; a ring homomorphism."""
    if not isinstance(a.ring, GroupRing):
        raise UnsupportedRing("augmentation is defined on group rings only")
    return a.ring.augment(a)


def laurent_evaluate(a: RingElement, u: RingElement) -> RingElement:
    """Evaluate a Laurent element at a unit of the base ring (t -> u)."""
    if not isinstance(a.ring, LaurentRing):
        raise UnsupportedRing("evaluation is defined on Laurent rings only")
    return a.ring.evaluate(a, u)


def regular_representation(a: RingElement) -> list[list[int]]:
    """Integer matrix of left multiplication by a on the canonical basis."""
    return a.ring.regular_representation(a)


# The cyclic group of order two, used throughout the tests and fixtures.
C2 = GroupRing(((0, 1), (1, 0)))
