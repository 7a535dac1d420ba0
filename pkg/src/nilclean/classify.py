"""Nil-clean decompositions, ring classification, and instance verifiers.

An element ``a`` is nil clean when ``a = e + q`` with ``e`` idempotent and
``q`` nilpotent; a ring is weakly nil clean when every element is ``q + e`` or
``q - e``.  The verifiers here check, ring by ring, that:

* every nil-clean involution decomposes with ``e = 1`` (:func:`verify_prop1`),
* weakly nil-clean rings with 2 a unit collapse onto Z_3 modulo their upper
  nilradical (:func:`verify_lemma2`),
* the brute-force weakly-nil-clean test agrees with the structural split
  into a nil-clean factor times a factor that is Z_3 modulo its nilradical
  (:func:`verify_theorem`),
* the quadratic generalisation for ``alpha*a^2 + beta*a + gamma = 0`` holds
  with integer scalars (:func:`verify_remark`, :func:`remark_scan`).
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import PreconditionViolated, RingMismatch
from .radical import ideal_violations, is_z3, quotient_by_ideal, upper_nilradical
from .ring import Elem, Ring, corner_ring

PLUS = 1
MINUS = -1


class Signs(enum.Enum):
    PLUS_ONLY = "plus"
    BOTH = "both"


@dataclass(frozen=True)
class NilCleanDecomp:
    a: Elem
    e: Elem
    q: Elem
    sign: int  # +1: a = q + e, -1: a = q - e


def _decomps(R: Ring, a: int, signs: Signs):
    out = []
    for sign in (PLUS, MINUS) if signs is Signs.BOTH else (PLUS,):
        for e in R.idempotents:
            q = R.sub(a, e) if sign == PLUS else R.add(a, e)
            if R.is_nilpotent(q):
                out.append((e, q, sign))
    return out


def decompositions(a: Elem, signs: Signs = Signs.PLUS_ONLY) -> list[NilCleanDecomp]:
    """All ways to write ``a`` as nilpotent plus (or minus) idempotent.

    Ordered sign +1 first, then by ascending idempotent index.
    """
    R = a.ring
    return [NilCleanDecomp(a, Elem(R, e), Elem(R, q), s)
            for e, q, s in _decomps(R, a.index, Signs(signs))]


def _first_failure(R: Ring, signs: Signs) -> Optional[int]:
    nil = R.nil_indices
    ids = R.idempotents
    for a in R.elements():
        if any(nil[R.sub(a, e)] is not None for e in ids):
            continue
        if signs is Signs.BOTH and any(nil[R.add(a, e)] is not None for e in ids):
            continue
        return a
    return None


def is_nil_clean_ring(R: Ring) -> tuple[bool, Optional[Elem]]:
    """``(True, None)`` or ``(False, least element with no decomposition)``."""
    w = _first_failure(R, Signs.PLUS_ONLY)
    return (True, None) if w is None else (False, Elem(R, w))


def is_weakly_nil_clean_ring(R: Ring) -> tuple[bool, Optional[Elem]]:
    """Brute-force oracle: every element is ``q + e`` or ``q - e``."""
    w = _first_failure(R, Signs.BOTH)
    return (True, None) if w is None else (False, Elem(R, w))


# ---------------------------------------------------------------------------
# Structural classification
# ---------------------------------------------------------------------------


class Verdict(enum.Enum):
    NIL_CLEAN = "nil_clean"
    WEAKLY_NIL_CLEAN_ONLY = "weakly_nil_clean_only"
    NOT_WEAKLY_NIL_CLEAN = "not_weakly_nil_clean"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    e_nil: Optional[Elem] = None
    e_z3: Optional[Elem] = None
    witness: Optional[Elem] = None

    @property
    def weakly_nil_clean(self) -> bool:
        return self.verdict is not Verdict.NOT_WEAKLY_NIL_CLEAN


def z3_modulo_radical(R: Ring) -> bool:
    return is_z3(quotient_by_ideal(R, upper_nilradical(R)))


def classify_structural(R: Ring) -> Classification:
    """Nil clean, or ``eR x (1-e)R`` with ``eR`` nil clean and ``(1-e)R`` Z_3
    modulo its upper nilradical, or neither.

    The first central idempotent ``e`` (ascending index) that works is
    reported as ``e_nil``; ``e_nil = 0`` means the nil-clean factor is the
    zero ring.
    """
    ok, _ = is_nil_clean_ring(R)
    if ok:
        return Classification(Verdict.NIL_CLEAN)
    for e in R.central_idempotents:
        f = R.sub(R.one, e)
        z3_part, _ = corner_ring(R, f)
        if not z3_modulo_radical(z3_part):
            continue
        nil_part, _ = corner_ring(R, e)
        if is_nil_clean_ring(nil_part)[0]:
            return Classification(Verdict.WEAKLY_NIL_CLEAN_ONLY, Elem(R, e), Elem(R, f))
    _, witness = is_weakly_nil_clean_ring(R)
    return Classification(Verdict.NOT_WEAKLY_NIL_CLEAN, witness=witness)


@dataclass
class TheoremReport:
    ring: Ring
    oracle_weakly: bool
    oracle_witness: Optional[Elem]
    nil_clean: bool
    classification: Classification

    @property
    def agree(self) -> bool:
        return self.oracle_weakly == self.classification.weakly_nil_clean

    @property
    def violations(self) -> list[str]:
        if self.agree:
            return []
        return [f"oracle says weakly={self.oracle_weakly}, "
                f"structural says {self.classification.verdict.value}"]


def verify_theorem(R: Ring) -> TheoremReport:
    weakly, witness = is_weakly_nil_clean_ring(R)
    cls = classify_structural(R)
    return TheoremReport(R, weakly, witness, cls.verdict is Verdict.NIL_CLEAN, cls)


# ---------------------------------------------------------------------------
# Involutions
# ---------------------------------------------------------------------------


@dataclass
class Prop1Report:
    ring: Ring
    involutions: list[int]
    decomposition_counts: dict[int, int]
    violations: list[tuple[int, int, int]] = field(default_factory=list)  # (a, e, q)


def verify_prop1(R: Ring) -> Prop1Report:
    """Every ``a`` with ``a*a == 1`` and ``a = e + q`` must have ``e == 1``."""
    counts, bad = {}, []
    for a in R.involutions:
        ds = _decomps(R, a, Signs.PLUS_ONLY)
        counts[a] = len(ds)
        bad.extend((a, e, q) for e, q, _ in ds if e != R.one)
    return Prop1Report(R, list(R.involutions), counts, bad)


@dataclass(frozen=True)
class ProofTrace:
    a: Elem
    e: Elem
    q: Elem
    f: Elem
    r: Elem
    involution: bool
    fq_eq_fa: bool
    fr_formula: bool
    rf_formula: bool
    # the remaining flags are None unless a*a == 1
    fr_eq_rf: Optional[bool] = None
    r_commutes_with_e: Optional[bool] = None
    r_commutes_with_f: Optional[bool] = None
    r_commutes_with_q: Optional[bool] = None
    r_commutes_with_a: Optional[bool] = None
    f_final_identity: Optional[bool] = None
    f_nilpotency_index: Optional[int] = None
    f_is_zero: Optional[bool] = None

    def failures(self) -> list[str]:
        names = ["fq_eq_fa", "fr_formula", "rf_formula"]
        if self.involution:
            names += ["fr_eq_rf", "r_commutes_with_e", "r_commutes_with_f",
                      "r_commutes_with_q", "r_commutes_with_a",
                      "f_final_identity", "f_is_zero"]
        out = [n for n in names if not getattr(self, n)]
        if self.involution and self.f_nilpotency_index is None:
            out.append("f_nilpotent")
        return out


def proof_trace(a: Elem, e: Elem, q: Elem) -> ProofTrace:
    """Evaluate the identities behind ``e = 1`` for one decomposition.

    With ``f = 1 - e`` and ``r = q(1 + q)``, the identities ``fq = fa``,
    ``fr = faf + f a^2`` and ``rf = faf + a^2 f`` hold for any ``a = e + q``.
    When ``a^2 = 1`` the trace also records that ``r`` commutes with
    ``e, f, q, a``, that ``f = f (1+q)^-1 a r``, and that ``f`` is nilpotent
    and therefore zero.
    """
    R = a.ring
    if e.ring is not R or q.ring is not R:
        raise RingMismatch("a, e, q must come from one ring")
    A, E, Q = a.index, e.index, q.index
    if not R.is_idempotent(E):
        raise PreconditionViolated(f"{E} is not idempotent")
    if R.nilpotency_index(Q) is None:
        raise PreconditionViolated(f"{Q} is not nilpotent")
    if R.add(E, Q) != A:
        raise PreconditionViolated(f"{A} != {E} + {Q}")
    m, ad = R.mul, R.add
    F = R.sub(R.one, E)
    Rr = m(Q, ad(R.one, Q))
    a2 = m(A, A)
    faf = m(m(F, A), F)
    fr, rf = m(F, Rr), m(Rr, F)
    kw = dict(
        fq_eq_fa=m(F, Q) == m(F, A),
        fr_formula=fr == ad(faf, m(F, a2)),
        rf_formula=rf == ad(faf, m(a2, F)),
    )
    involution = a2 == R.one
    if involution:
        inv = R.unipotent_inverse(Q)

        def commutes(x):
            return m(Rr, x) == m(x, Rr)

        kw.update(
            fr_eq_rf=fr == rf,
            r_commutes_with_e=commutes(E),
            r_commutes_with_f=commutes(F),
            r_commutes_with_q=commutes(Q),
            r_commutes_with_a=commutes(A),
            f_final_identity=F == m(m(m(F, inv), A), Rr),
            f_nilpotency_index=R.nilpotency_index(F),
            f_is_zero=F == R.zero,
        )
    return ProofTrace(a, e, q, Elem(R, F), Elem(R, Rr), involution, **kw)


@dataclass
class ProofChainReport:
    ring: Ring
    exhaustive: bool
    checked: int
    involution_cases: int
    failures: list[tuple[int, int, list[str]]] = field(default_factory=list)  # (e, q, names)


def proof_chain_scan(R: Ring, samples: int = 1000, seed: int = 0,
                     exhaustive_limit: int = 16) -> ProofChainReport:
    """Run :func:`proof_trace` over decompositions ``a = e + q`` of ``R``.

    All (idempotent, nilpotent) pairs are used when ``R.order <=
    exhaustive_limit``; otherwise ``samples`` seeded random pairs.  Every
    decomposition of every involution is traced in both regimes.
    """
    ids, nils = R.idempotents, R.nilpotents
    exhaustive = R.order <= exhaustive_limit
    if exhaustive:
        pairs = list(itertools.product(ids, nils))
    else:
        rng = random.Random(seed)
        pairs = [(rng.choice(ids), rng.choice(nils)) for _ in range(samples)]
    pairs += [(e, q) for a in R.involutions for e, q, _ in _decomps(R, a, Signs.PLUS_ONLY)]
    report = ProofChainReport(R, exhaustive, 0, 0)
    for e, q in pairs:
        t = proof_trace(Elem(R, R.add(e, q)), Elem(R, e), Elem(R, q))
        report.checked += 1
        report.involution_cases += t.involution
        bad = t.failures()
        if bad:
            report.failures.append((e, q, bad))
    return report


# ---------------------------------------------------------------------------
# Rings where 2 is a unit
# ---------------------------------------------------------------------------


@dataclass
class Lemma2Report:
    ring: Ring
    trivial_idempotents: bool
    three_cosets_of_nil: bool
    nilpotents_form_ideal: bool
    quotient_order: int
    quotient_is_z3: bool

    @property
    def violations(self) -> list[str]:
        checks = ("trivial_idempotents", "three_cosets_of_nil",
                  "nilpotents_form_ideal", "quotient_is_z3")
        return [c for c in checks if not getattr(self, c)]


def lemma2_applies(R: Ring) -> tuple[bool, str]:
    if not R.is_unit(R.of_int(2)):
        return False, "2 is not a unit"
    if not is_weakly_nil_clean_ring(R)[0]:
        return False, "ring is not weakly nil clean"
    return True, ""


def verify_lemma2(R: Ring) -> Lemma2Report:
    ok, why = lemma2_applies(R)
    if not ok:
        raise PreconditionViolated(why)
    nil = set(R.nilpotents)
    one, mone = R.one, R.neg(R.one)
    covered = all(
        x in nil or R.sub(x, one) in nil or R.sub(x, mone) in nil
        for x in R.elements()
    )
    Q = quotient_by_ideal(R, upper_nilradical(R))
    return Lemma2Report(
        R,
        trivial_idempotents=set(R.idempotents) == {R.zero, R.one},
        three_cosets_of_nil=covered,
        nilpotents_form_ideal=not ideal_violations(R, nil),
        quotient_order=Q.order,
        quotient_is_z3=is_z3(Q),
    )


# ---------------------------------------------------------------------------
# Quadratic elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RemarkInstance:
    alpha: int
    beta: int
    gamma: int
    a: Elem
    e: Elem
    q: Elem
    r: Elem
    n: int
    conclusion: Elem
    r_nilpotent: bool
    r_commutes_with_e: bool
    conclusion_nilpotent: bool

    @property
    def ok(self) -> bool:
        return self.r_nilpotent and self.r_commutes_with_e and self.conclusion_nilpotent


def satisfies_quadratic(R: Ring, a: int, alpha: int, beta: int, gamma: int) -> bool:
    lhs = R.add(R.add(R.mul(R.of_int(alpha), R.mul(a, a)), R.mul(R.of_int(beta), a)),
                R.of_int(gamma))
    return lhs == R.zero


def verify_remark(a: Elem, e: Elem, q: Elem, alpha: int, beta: int, gamma: int) -> RemarkInstance:
    """Check one instance of the quadratic generalisation.

    For ``alpha a^2 + beta a + gamma = 0`` and ``a = e + q`` with ``q^n = 0``
    (``n`` minimal): ``r = q(alpha q + alpha + beta)`` is nilpotent and
    commutes with ``e``, and ``(alpha+beta)^n e + (alpha+beta)^(n-1) gamma``
    is nilpotent.  Integer scalars act through the unital map Z -> R.
    """
    R = a.ring
    if e.ring is not R or q.ring is not R:
        raise RingMismatch("a, e, q must come from one ring")
    A, E, Q = a.index, e.index, q.index
    if not satisfies_quadratic(R, A, alpha, beta, gamma):
        raise PreconditionViolated(f"{alpha}a^2 + {beta}a + {gamma} != 0 at a={A}")
    if not R.is_idempotent(E):
        raise PreconditionViolated(f"{E} is not idempotent")
    n = R.nilpotency_index(Q)
    if n is None:
        raise PreconditionViolated(f"{Q} is not nilpotent")
    if R.add(E, Q) != A:
        raise PreconditionViolated(f"{A} != {E} + {Q}")
    s = R.of_int(alpha + beta)
    r = R.mul(Q, R.add(R.mul(R.of_int(alpha), Q), s))
    conclusion = R.add(R.mul(R.pow(s, n), E), R.mul(R.pow(s, n - 1), R.of_int(gamma)))
    return RemarkInstance(
        alpha, beta, gamma, a, e, q, Elem(R, r), n, Elem(R, conclusion),
        r_nilpotent=R.nilpotency_index(r) is not None,
        r_commutes_with_e=R.mul(r, E) == R.mul(E, r),
        conclusion_nilpotent=R.nilpotency_index(conclusion) is not None,
    )


@dataclass
class RemarkScanReport:
    ring: Ring
    scalar_bound: int
    instances: int = 0
    involution_reductions: int = 0
    violations: list[RemarkInstance] = field(default_factory=list)
    reduction_failures: list[RemarkInstance] = field(default_factory=list)


def remark_scan(R: Ring, scalar_bound: int = 2) -> RemarkScanReport:
    """Run :func:`verify_remark` over every element, every ``a = e + q`` and
    every scalar triple in ``[-scalar_bound, scalar_bound]^3`` that annihilates
    ``a``.

    Instances with ``(alpha, beta, gamma) = (1, 0, -1)`` are the involutions;
    for them the conclusion ``e - 1`` must be nilpotent and ``e`` must be one.
    """
    rng = range(-scalar_bound, scalar_bound + 1)
    report = RemarkScanReport(R, scalar_bound)
    for a in R.elements():
        triples = [t for t in itertools.product(rng, rng, rng)
                   if satisfies_quadratic(R, a, *t)]
        for e, q, _ in _decomps(R, a, Signs.PLUS_ONLY):
            for alpha, beta, gamma in triples:
                inst = verify_remark(Elem(R, a), Elem(R, e), Elem(R, q), alpha, beta, gamma)
                report.instances += 1
                if not inst.ok:
                    report.violations.append(inst)
                if (alpha, beta, gamma) == (1, 0, -1):
                    report.involution_reductions += 1
                    if not (inst.conclusion_nilpotent and e == R.one):
                        report.reduction_failures.append(inst)
    return report
