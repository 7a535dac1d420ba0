"""Nil-clean and weakly nil-clean decompositions in small finite rings."""

from .classify import (
    Classification,
    NilCleanDecomp,
    Signs,
    Verdict,
    classify_structural,
    decompositions,
    is_nil_clean_ring,
    is_weakly_nil_clean_ring,
    proof_trace,
    remark_scan,
    verify_lemma2,
    verify_prop1,
    verify_remark,
    verify_theorem,
)
from .errors import (
    InvalidSpec,
    NotAnIdeal,
    OrderCapExceeded,
    PreconditionViolated,
    RingError,
    RingMismatch,
    SpecSyntaxError,
)
from .expr import format_spec, parse_spec
from .radical import (
    Ideal,
    ideal_closure,
    is_nil_ideal,
    is_z3,
    jacobson_radical,
    quotient_by_ideal,
    upper_nilradical,
)
from .ring import Elem, Matrix, NilQuotient, Product, Ring, Subset, Zn, construct_ring, special_subset

__version__ = "0.1.0"
