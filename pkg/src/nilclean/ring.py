"""Finite unital rings with canonical element indexing.

Every ring is stored as ``order`` integer indices ``0..order-1`` together with
the index-level operations ``add``, ``neg`` and ``mul``.  Rings of order at most
:data:`TABLE_LIMIT` get full Cayley tables at construction time; larger rings
evaluate their operations structurally on each call.

The index-level API on :class:`Ring` is what the algorithms use.  The
:class:`Elem` wrapper and the module-level helpers (``add``, ``mul``,
``is_idempotent`` ...) give a checked, element-valued surface on top of it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Union

from .errors import InvalidSpec, OrderCapExceeded, RingMismatch

TABLE_LIMIT = 256
DEFAULT_ORDER_CAP = 65536


# ---------------------------------------------------------------------------
# Ring descriptions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Zn:
    n: int


@dataclass(frozen=True)
class Product:
    left: "RingSpec"
    right: "RingSpec"


@dataclass(frozen=True)
class Matrix:
    k: int
    base: "RingSpec"


@dataclass(frozen=True)
class NilQuotient:
    base: "RingSpec"


RingSpec = Union[Zn, Product, Matrix, NilQuotient]


# ---------------------------------------------------------------------------
# Rings
# ---------------------------------------------------------------------------

BinOp = Callable[[int, int], int]


class Ring:
    """A finite unital ring on the indices ``0..order-1``.

    ``spec`` is the description the ring was built from, or ``None`` for rings
    produced by quotients and corners; ``label`` is a human-readable name.
    """

    def __init__(
        self,
        order: int,
        add: BinOp,
        mul: BinOp,
        neg: Callable[[int], int],
        zero: int,
        one: int,
        spec: Optional[RingSpec] = None,
        label: str = "",
    ):
        if order < 1:
            raise InvalidSpec("a ring needs at least one element")
        self.order = order
        self.zero = zero
        self.one = one
        self.spec = spec
        self.label = label
        self.tabulated = order <= TABLE_LIMIT
        if self.tabulated:
            elems = range(order)
            at = tuple(tuple(add(x, y) for y in elems) for x in elems)
            mt = tuple(tuple(mul(x, y) for y in elems) for x in elems)
            nt = tuple(neg(x) for x in elems)
            self.add = lambda x, y: at[x][y]
            self.mul = lambda x, y: mt[x][y]
            self.neg = nt.__getitem__
            self.add_table, self.mul_table = at, mt
        else:
            self.add, self.mul, self.neg = add, mul, neg
            self.add_table = self.mul_table = None

    def __repr__(self) -> str:
        return f"Ring({self.label or '?'}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    def elements(self) -> range:
        return range(self.order)

    def elem(self, index: int) -> "Elem":
        if not 0 <= index < self.order:
            raise IndexError(f"element index {index} outside 0..{self.order - 1}")
        return Elem(self, index)

    # -- index-level arithmetic --------------------------------------------

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def of_int(self, m: int) -> int:
        """Image of the integer ``m`` under the unital map Z -> R."""
        char = self.characteristic
        m %= char
        # double-and-add on one
        acc, base = self.zero, self.one
        while m:
            if m & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            m >>= 1
        return acc

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            raise ValueError("negative exponent")
        acc = self.one
        while k:
            if k & 1:
                acc = self.mul(acc, x)
            x = self.mul(x, x)
            k >>= 1
        return acc

    @cached_property
    def characteristic(self) -> int:
        """Additive order of ``one`` (1 for the zero ring)."""
        c, t = 1, self.one
        while t != self.zero:
            t = self.add(t, self.one)
            c += 1
        return c

    # -- predicates ----------------------------------------------------------

    def is_idempotent(self, x: int) -> bool:
        return self.mul(x, x) == x

    def nilpotency_index(self, x: int) -> Optional[int]:
        """Least ``n`` with ``x**n == 0``, or ``None`` if there is none."""
        seen = set()
        p, n = x, 1
        while p != self.zero:
            if p in seen:
                return None
            seen.add(p)
            p = self.mul(p, x)
            n += 1
        return n

    def is_nilpotent(self, x: int) -> bool:
        return self.nil_indices[x] is not None

    def is_unit(self, x: int) -> bool:
        return x in self.unit_set

    def try_inverse(self, x: int) -> Optional[int]:
        """Two-sided inverse by exhaustive search."""
        for y in self.elements():
            if self.mul(x, y) == self.one and self.mul(y, x) == self.one:
                return y
        return None

    def unipotent_inverse(self, q: int) -> int:
        """Inverse of ``one + q`` for nilpotent ``q`` via sum of (-q)**i."""
        n = self.nilpotency_index(q)
        if n is None:
            raise ValueError("element is not nilpotent")
        mq = self.neg(q)
        acc, term = self.zero, self.one
        for _ in range(n):
            acc = self.add(acc, term)
            term = self.mul(term, mq)
        return acc

    def is_central(self, x: int) -> bool:
        return all(self.mul(x, y) == self.mul(y, x) for y in self.elements())

    # -- cached element sets ---------------------------------------------------

    @cached_property
    def nil_indices(self) -> tuple:
        return tuple(self.nilpotency_index(x) for x in self.elements())

    @cached_property
    def idempotents(self) -> tuple:
        return tuple(x for x in self.elements() if self.is_idempotent(x))

    @cached_property
    def nilpotents(self) -> tuple:
        return tuple(x for x, n in enumerate(self.nil_indices) if n is not None)

    @cached_property
    def unit_set(self) -> frozenset:
        # x is a unit iff some positive power of x equals one
        units = set()
        for x in self.elements():
            seen = set()
            p = x
            while p not in seen:
                if p == self.one:
                    units.add(x)
                    break
                seen.add(p)
                p = self.mul(p, x)
        return frozenset(units)

    @cached_property
    def units(self) -> tuple:
        return tuple(sorted(self.unit_set))

    @cached_property
    def involutions(self) -> tuple:
        return tuple(x for x in self.elements() if self.mul(x, x) == self.one)

    @cached_property
    def central_idempotents(self) -> tuple:
        return tuple(e for e in self.idempotents if self.is_central(e))


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Elem:
    """An element of a specific ring; arithmetic refuses to mix rings."""

    ring: Ring
    index: int

    def __repr__(self) -> str:
        return f"Elem({self.index} in {self.ring.label or '?'})"

    def _other(self, other) -> int:
        if isinstance(other, Elem):
            if other.ring is not self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other.index
        if isinstance(other, int):
            return self.ring.of_int(other)
        return NotImplemented

    def __add__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Elem(self.ring, self.ring.add(self.index, y))

    __radd__ = __add__

    def __sub__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Elem(self.ring, self.ring.sub(self.index, y))

    def __rsub__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Elem(self.ring, self.ring.sub(y, self.index))

    def __neg__(self):
        return Elem(self.ring, self.ring.neg(self.index))

    def __mul__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Elem(self.ring, self.ring.mul(self.index, y))

    def __rmul__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return Elem(self.ring, self.ring.mul(y, self.index))

    def __pow__(self, k: int):
        return Elem(self.ring, self.ring.pow(self.index, k))


def _same_ring(x: Elem, y: Elem) -> Ring:
    if x.ring is not y.ring:
        raise RingMismatch(f"{x.ring!r} vs {y.ring!r}")
    return x.ring


def add(x: Elem, y: Elem) -> Elem:
    return Elem(_same_ring(x, y), x.ring.add(x.index, y.index))


def neg(x: Elem) -> Elem:
    return Elem(x.ring, x.ring.neg(x.index))


def mul(x: Elem, y: Elem) -> Elem:
    return Elem(_same_ring(x, y), x.ring.mul(x.index, y.index))


def of_int(R: Ring, m: int) -> Elem:
    return Elem(R, R.of_int(m))


def pow(x: Elem, k: int) -> Elem:  # noqa: A001 - mirrors the ring operation name
    return Elem(x.ring, x.ring.pow(x.index, k))


def is_idempotent(x: Elem) -> bool:
    return x.ring.is_idempotent(x.index)


def nilpotency_index(x: Elem) -> Optional[int]:
    return x.ring.nilpotency_index(x.index)


def try_inverse(x: Elem) -> Optional[Elem]:
    y = x.ring.try_inverse(x.index)
    return None if y is None else Elem(x.ring, y)


def is_central(x: Elem) -> bool:
    return x.ring.is_central(x.index)


class Subset(enum.Enum):
    IDEMPOTENTS = "idempotents"
    NILPOTENTS = "nilpotents"
    UNITS = "units"
    INVOLUTIONS = "involutions"
    CENTRAL_IDEMPOTENTS = "central_idempotents"


def special_subset(R: Ring, kind: Subset) -> list[Elem]:
    """Elements of one of the distinguished subsets, ascending by index."""
    return [Elem(R, x) for x in getattr(R, Subset(kind).value)]


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def spec_order(spec: RingSpec, max_order: int = DEFAULT_ORDER_CAP) -> int:
    """Order of the ring described by ``spec`` without building tables.

    ``NilQuotient`` has to build its base to find the radical.
    """
    if isinstance(spec, Zn):
        if spec.n < 1:
            raise InvalidSpec("modulus must be positive")
        order = spec.n
    elif isinstance(spec, Product):
        order = spec_order(spec.left, max_order) * spec_order(spec.right, max_order)
    elif isinstance(spec, Matrix):
        if spec.k < 1:
            raise InvalidSpec("matrix size must be positive")
        order = spec_order(spec.base, max_order) ** (spec.k * spec.k)
    elif isinstance(spec, NilQuotient):
        order = construct_ring(spec, max_order).order
    else:
        raise InvalidSpec(f"not a ring description: {spec!r}")
    if order > max_order:
        raise OrderCapExceeded(f"ring order {order} exceeds cap {max_order}")
    return order


def construct_ring(spec: RingSpec, max_order: int = DEFAULT_ORDER_CAP) -> Ring:
    """Build the ring described by ``spec`` with canonical indexing.

    Raises :class:`InvalidSpec` for a zero modulus or matrix size and
    :class:`OrderCapExceeded` when the ring would exceed ``max_order``.
    """
    if not isinstance(spec, NilQuotient):
        spec_order(spec, max_order)
    if isinstance(spec, Zn):
        return _zn(spec)
    if isinstance(spec, Product):
        return _product(spec, construct_ring(spec.left, max_order),
                        construct_ring(spec.right, max_order))
    if isinstance(spec, Matrix):
        return _matrix(spec, construct_ring(spec.base, max_order))
    if isinstance(spec, NilQuotient):
        from .radical import quotient_by_ideal, upper_nilradical

        base = construct_ring(spec.base, max_order)
        Q = quotient_by_ideal(base, upper_nilradical(base))
        Q.spec = spec
        Q.label = _label(spec)
        return Q
    raise InvalidSpec(f"not a ring description: {spec!r}")


def _label(spec: RingSpec) -> str:
    from .expr import format_spec

    return format_spec(spec)


def _zn(spec: Zn) -> Ring:
    n = spec.n
    return Ring(
        n,
        lambda x, y: (x + y) % n,
        lambda x, y: (x * y) % n,
        lambda x: (-x) % n,
        0,
        1 % n,
        spec=spec,
        label=_label(spec),
    )


def _product(spec: Product, A: Ring, B: Ring) -> Ring:
    m = B.order

    def add(x, y):
        (xa, xb), (ya, yb) = divmod(x, m), divmod(y, m)
        return A.add(xa, ya) * m + B.add(xb, yb)

    def mul(x, y):
        (xa, xb), (ya, yb) = divmod(x, m), divmod(y, m)
        return A.mul(xa, ya) * m + B.mul(xb, yb)

    def neg(x):
        xa, xb = divmod(x, m)
        return A.neg(xa) * m + B.neg(xb)

    return Ring(A.order * m, add, mul, neg, A.zero * m + B.zero, A.one * m + B.one,
                spec=spec, label=_label(spec))


def matrix_entries(index: int, k: int, base_order: int) -> tuple:
    """Row-major entries of a matrix index; entry (0, 0) is most significant."""
    out = []
    for _ in range(k * k):
        index, d = divmod(index, base_order)
        out.append(d)
    return tuple(reversed(out))


def matrix_index(entries, base_order: int) -> int:
    idx = 0
    for d in entries:
        idx = idx * base_order + d
    return idx


def _matrix(spec: Matrix, B: Ring) -> Ring:
    k, b = spec.k, B.order
    order = b ** (k * k)
    decoded = [matrix_entries(i, k, b) for i in range(order)]
    badd, bmul, bneg, bzero = B.add, B.mul, B.neg, B.zero

    def add(x, y):
        return matrix_index(map(badd, decoded[x], decoded[y]), b)

    def neg(x):
        return matrix_index(map(bneg, decoded[x]), b)

    def mul(x, y):
        u, v = decoded[x], decoded[y]
        idx = 0
        for i in range(k):
            row = i * k
            for col in range(k):
                s = bzero
                for j in range(k):
                    s = badd(s, bmul(u[row + j], v[j * k + col]))
                idx = idx * b + s
        return idx

    ident = [B.one if i == j else bzero for i in range(k) for j in range(k)]
    return Ring(order, add, mul, neg, matrix_index([bzero] * (k * k), b),
                matrix_index(ident, b), spec=spec, label=_label(spec))


def subset_ring(R: Ring, members, one: int, label: str = "") -> Ring:
    """Ring on a subset of ``R`` closed under R's operations, with identity ``one``.

    Indices follow ascending ambient index.  Used for corner rings ``eR``.
    """
    members = sorted(members)
    pos = {x: i for i, x in enumerate(members)}
    return Ring(
        len(members),
        lambda x, y: pos[R.add(members[x], members[y])],
        lambda x, y: pos[R.mul(members[x], members[y])],
        lambda x: pos[R.neg(members[x])],
        pos[R.zero],
        pos[one],
        label=label,
    )


def corner_ring(R: Ring, e: int) -> tuple[Ring, list[int]]:
    """The corner ring ``eR`` for a central idempotent ``e``.

    Returns the ring and the ambient index of each of its elements.
    """
    members = sorted({R.mul(e, x) for x in R.elements()})
    return subset_ring(R, members, e, label=f"{e}*({R.label})"), members
