"""Two-sided ideals, the upper nilradical, and quotient rings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .errors import NotAnIdeal, RingMismatch
from .ring import Elem, Ring


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    members: tuple  # ascending element indices

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        if isinstance(x, Elem):
            return x.ring is self.ring and x.index in self._set
        return x in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_memo")
        if s is None:
            s = frozenset(self.members)
            object.__setattr__(self, "_memo", s)
        return s


def _additive_span(R: Ring, members: set, y: int) -> set:
    """Additive subgroup generated by the subgroup ``members`` and ``y``."""
    multiples = [R.zero]
    t = y
    while t != R.zero:
        multiples.append(t)
        t = R.add(t, y)
    return {R.add(s, t) for s in members for t in multiples}


def _closure(R: Ring, generators: Iterable[int],
             reject: Optional[Callable[[int], bool]] = None) -> Optional[set]:
    # Grows the additive span of accepted generators.  Each accepted generator
    # g queues r*g and g*r for every r, so the span ends up closed under
    # multiplication on both sides.  Every acceptance at least doubles the
    # span, so at most log2(order) generators are ever accepted.
    members = {R.zero}
    pending = list(generators)
    while pending:
        g = pending.pop()
        if g in members:
            continue
        grown = _additive_span(R, members, g)
        if reject is not None and any(reject(x) for x in grown - members):
            return None
        members = grown
        for r in R.elements():
            pending.append(R.mul(r, g))
            pending.append(R.mul(g, r))
    return members


def ideal_closure(R: Ring, generators: Iterable[Elem]) -> Ideal:
    """Smallest two-sided ideal of ``R`` containing ``generators``."""
    idx = []
    for g in generators:
        if g.ring is not R:
            raise RingMismatch(f"generator from {g.ring!r}, expected {R!r}")
        idx.append(g.index)
    return Ideal(R, tuple(sorted(_closure(R, idx))))


def ideal_violations(R: Ring, members: Iterable[int]) -> list[str]:
    """Reasons ``members`` fails to be a two-sided ideal (empty if it is one)."""
    S = set(members)
    problems = []
    if R.zero not in S:
        problems.append("missing zero")
    for x in S:
        if R.neg(x) not in S:
            problems.append(f"not closed under negation at {x}")
            break
    if any(R.add(x, y) not in S for x in S for y in S):
        problems.append("not closed under addition")
    for x in S:
        bad = next((r for r in R.elements()
                    if R.mul(r, x) not in S or R.mul(x, r) not in S), None)
        if bad is not None:
            problems.append(f"not closed under multiplication: {x} by {bad}")
            break
    return problems


def is_ideal(R: Ring, members: Iterable[int]) -> bool:
    return not ideal_violations(R, members)


def is_nil_ideal(I: Ideal) -> bool:
    return all(I.ring.is_nilpotent(x) for x in I.members)


def upper_nilradical(R: Ring) -> Ideal:
    """Largest nil ideal: the elements whose principal ideal is nil."""
    inside: set = set()
    outside: set = set()
    for x in R.nilpotents:
        if x in inside or x in outside:
            continue
        principal = _closure(R, [x], reject=lambda y: not R.is_nilpotent(y))
        if principal is None:
            outside.add(x)
        else:
            # members of a nil ideal have nil principal ideals too
            inside |= principal
    inside.add(R.zero)
    return Ideal(R, tuple(sorted(inside)))


def jacobson_radical(R: Ring) -> Ideal:
    """Elements ``x`` with ``one - r*x`` a unit for every ``r``."""
    units = R.unit_set
    members = tuple(
        x for x in R.elements()
        if all(R.sub(R.one, R.mul(r, x)) in units for r in R.elements())
    )
    return Ideal(R, members)


def quotient_by_ideal(R: Ring, I: Ideal) -> Ring:
    """The ring of cosets ``R/I``, indexed by ascending least coset member."""
    if I.ring is not R:
        raise RingMismatch("ideal belongs to a different ring")
    problems = ideal_violations(R, I.members)
    if problems:
        raise NotAnIdeal("; ".join(problems))
    rep_of = [min(R.add(x, i) for i in I.members) for x in R.elements()]
    reps = sorted(set(rep_of))
    pos = {r: k for k, r in enumerate(reps)}
    coset = [pos[r] for r in rep_of]
    return Ring(
        len(reps),
        lambda x, y: coset[R.add(reps[x], reps[y])],
        lambda x, y: coset[R.mul(reps[x], reps[y])],
        lambda x: coset[R.neg(reps[x])],
        coset[R.zero],
        coset[R.one],
        label=f"({R.label})/I",
    )


def is_z3(R: Ring) -> bool:
    # a unital ring of order 3 is additively generated by one, hence Z_3
    return R.order == 3 and R.one != R.zero
