"""Closed-form predictions for the associating hypergraph of M(D_n, 2).

Each expression is transcribed term by term as printed, without algebraic
simplification, so it can be audited against its source line by line.
``C(a, b)`` is the binomial coefficient.  Expressions that divide by 2 or 4
are evaluated with :class:`fractions.Fraction`; a prediction that is not an
integer is kept as a Fraction and can never match an enumerated count.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb as C, floor
from typing import Optional, Union

from .errors import DomainError

Number = Union[int, Fraction]

# (alpha_1, alpha_2, alpha_3) for case ids 1..8
CASE_PATTERNS = {
    1: (0, 0, 0),
    2: (0, 0, 1),
    3: (0, 1, 0),
    4: (1, 0, 0),
    5: (0, 1, 1),
    6: (1, 0, 1),
    7: (1, 1, 0),
    8: (1, 1, 1),
}
PATTERN_TO_CASE = {p: k for k, p in CASE_PATTERNS.items()}

DEGREE_CLASSES = (
    ("A", 0, "Z"),
    ("B", 0, "R"),
    ("C", 0, "S"),
    ("D", 1, "Z"),
    ("E", 1, "R"),
    ("F", 1, "S"),
)


def _check_n(n):
    if n < 3:
        raise DomainError("predictions need n >= 3")


def parity(n):
    return "even" if n % 2 == 0 else "odd"


def _normalise(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


@dataclass(frozen=True)
class CasePrediction:
    case_id: int
    pattern: tuple
    count: int
    parity: str


def _case_2_to_4(n):
    if n % 2:
        return C(n - 1, 1) * C(n - 2, 1) * C(2 * n, 1) + 2 * (C(1, 1) * C(2 * n - 1, 1) * C(2 * n, 1))
    return (C(n - 2, 1) * C(n - 3, 1) * C(2 * n, 1)
            + 4 * (C(1, 1) * C(2 * n - 1, 1) * C(2 * n, 1))
            + 2 * C(2 * n, 1)
            + n * C(2 * n, 1))


def _case_2_to_4_simplified(n):
    """The simplified right-hand side printed after the binomial form."""
    if n % 2:
        return (2 * n * (n - 1) * (n - 2)) + (4 * n * (2 * n - 1))
    return (2 * n * (n - 2) * (n - 3)) + (8 * n * (2 * n - 1)) + 4 * n + 2 * n ** 2


def _case_5_to_7(n):
    if n % 2:
        return (2 * n * (2 * n - 1)) + ((n - 1) * (n - 1) * 2 * n) + (n * 2 * n)
    return (2 * 2 * n * (2 * n - 1)) + ((n - 2) * (n - 1) * 2 * n) + (n * 3 * 2 * n)


def _case_8(n):
    if n % 2:
        return (1 * ((n - 1) * (n - 2))
                + (n - 1) * ((n - 1) * (n - 2) + 1 * n)
                + n * (1 * (n - 2)))
    return (2 * ((n - 2) * (n - 3) + 1 * n + 2 * (2 * n - 2))
            + (n - 2) * ((n - 1) * (n - 2) + 1 * n + 2 * n + 1 * n)
            + n * (2 * (n - 2) + 2 + 1 * n + 1 * n + 1 * n))


def predict_case_counts(n):
    """Predicted directed-edge counts for the eight alpha-patterns."""
    _check_n(n)
    counts = {
        1: 6 * C(2 * n, 3),
        2: _case_2_to_4(n),
        3: _case_2_to_4(n),
        4: _case_2_to_4(n),
        5: _case_5_to_7(n),
        6: _case_5_to_7(n),
        7: _case_5_to_7(n),
        8: _case_8(n),
    }
    p = parity(n)
    return [CasePrediction(k, CASE_PATTERNS[k], counts[k], p) for k in range(1, 9)]


def predict_total_edges(n):
    return sum(c.count for c in predict_case_counts(n))


@dataclass(frozen=True)
class DegreePrediction:
    label: str  # "A".."F"
    alpha: int
    part: str  # "Z", "R" or "S"
    value: Number
    alternate: Optional[Number] = None  # proof-text variant where it differs

    @property
    def key(self):
        return f"({self.part},{self.alpha})"


def _degrees_odd(n):
    A = 3 * (2 * n - 1) + 3 * (2 * (2 * n - 1) * (2 * n)) + 3 * (2 * n * (2 * n - 1))
    B = 3 * (2 * n - 1) + 3 * (2 * (n - 2) + 2 * (2 * n)) + 3 * ((n - 1) * (2 * n))
    Cc = 3 * (2 * n - 1) + 3 * (2 * (2 * n)) + 3 * (2 * n)
    alpha1_common = (3 * ((n - 1) * (n - 2) + 2 * (2 * n - 1))
                     + 3 * (2 * (2 * n - 1) + 2 * (n - 1) * (n - 1) + 2 * n))
    D = alpha1_common + (n - 1) * (n - 2) + 2 * (n - 1) * (n - 2)
    E = alpha1_common + 2 * (n - 2) + (n - 2) * ((n - 1) + 2) + n
    F = alpha1_common + 1 * (n - 1) + 1 * (n - 1)
    return {"A": (A, None), "B": (B, None), "C": (Cc, None),
            "D": (D, None), "E": (E, None), "F": (F, None)}


def _degrees_even(n):
    A = (3 * C(2 * n - 1, 2)
         + 3 * (2 * (C(2 * n - 1, 1) * C(2 * n, 1)) + 2 * C(2 * n, 1))
         + 3 * ((2 * n) * (2 * n - 1)))
    B = (3 * C(2 * n - 1, 2)
         + 3 * (2 * C(n - 3, 1) + 4 * C(2 * n, 1))
         + 3 * ((n - 1) * 2 * n))
    Cc = (3 * C(2 * n - 1, 2)
          + 3 * (4 * C(2 * n, 1) + C(2 * n, 1))
          + 3 * (3 * 2 * n))
    alpha1_common = (3 * (C(n - 2, 1) * C(n - 3, 1) + 4 * C(2 * n - 1, 1) + 2 + n)
                     + 3 * (2 * (2 * (2 * n - 1)) + (n - 2) * (2 * (n - 1)) + n * (3 * 2)))
    # statement: "+ 1(n) + 1(2n-2)"; proof: "+ 2(n) + 1(2n-2)"
    D = alpha1_common + (n - 2) * (n - 3) + 1 * n + 1 * (2 * n - 2) + (n - 2) * 2 * (n - 2) + n * (2 + 1 + 1)
    D_proof = alpha1_common + (n - 2) * (n - 3) + 2 * n + 1 * (2 * n - 2) + (n - 2) * 2 * (n - 2) + n * (2 + 1 + 1)
    # The bracket opened after "2 x (" is never closed in print; it is closed
    # before the trailing "n x (...)" term in both variants.
    E = (alpha1_common + 2 * (2 * (n - 3))
         + 2 * (2 * (2 * n - 2) + (n - 1) * (n - 2) + 1 * n + 2 * n + 1 * n)
         + n * (2 * 2 + 1 + 1))
    E_proof = (alpha1_common + 2 * (2 * (n - 3))
               + 2 * (2 * (2 * n - 2) + (n - 1) * (n - 2) + (n - 3) * (2 * (n - 2)) + 1 * n + 2 * n + 2 * n)
               + n * (2 * 2 + 1 + 1))
    F = alpha1_common + 2 * (2 + 2) + (n - 2) * (1 + 2 + 1) + 1 * (2 * (n - 2) + 2 + 1 * n + 1 * n + 1 * n)
    F_proof = (alpha1_common + 2 * (2 + 2) + (n - 2) * (1 + 2 + 1) + 1 * ((n - 2) * (n - 3)) + 1 * 2
               + 1 * n + 2 * (n - 1) + 2 * n + 2 * n)

    def alt(stmt, proof):
        return (stmt, None if proof == stmt else proof)

    return {"A": (A, None), "B": (B, None), "C": (Cc, None),
            "D": alt(D, D_proof), "E": alt(E, E_proof), "F": alt(F, F_proof)}


def predict_degrees(n):
    """Predicted directed degree for each of the six vertex classes."""
    _check_n(n)
    table = _degrees_even(n) if n % 2 == 0 else _degrees_odd(n)
    return [DegreePrediction(label, a, part, *table[label]) for label, a, part in DEGREE_CLASSES]


@dataclass(frozen=True)
class InvariantPrediction:
    alpha: Number
    tau: Number
    rho: Number
    nu: Number
    chi: Number
    chi_strong: Number
    alpha_alternate: Optional[Number] = None  # value reached at the end of the even-n proof

    def as_dict(self):
        return {"alpha": self.alpha, "tau": self.tau, "rho": self.rho, "nu": self.nu,
                "chi": self.chi, "chi_strong": self.chi_strong}

    def alternates(self):
        return {"alpha": self.alpha_alternate} if self.alpha_alternate is not None else {}


def predict_invariants(n):
    _check_n(n)
    rho = n + ceil(Fraction(n, 3))
    nu = n + floor(Fraction(n, 3))
    chi_strong = 4 * n
    if n % 2 == 0:
        return InvariantPrediction(
            alpha=_normalise(Fraction(n, 2) + 4),
            tau=_normalise(Fraction(7 * n, 2) - 4),
            rho=rho,
            nu=nu,
            chi=_normalise(Fraction(7 * n, 4) - 1),
            chi_strong=chi_strong,
            alpha_alternate=_normalise(Fraction(n, 4) + 4),
        )
    return InvariantPrediction(
        alpha=n + 2,
        tau=3 * n - 2,
        rho=rho,
        nu=nu,
        chi=3 * n - 1,
        chi_strong=chi_strong,
    )


def class_sizes(n):
    """``{(alpha, part): size}`` for the vertex classes of M(D_n, 2)."""
    z = 1 if n % 2 else 2
    sizes = {"Z": z, "R": n - z, "S": n}
    return {(a, part): sizes[part] for _, a, part in DEGREE_CLASSES}


def degree_sum_check(n, use_alternates=False):
    """``(sum over classes of size * predicted degree, 3 * predicted total edges)``.

    Equal sides mean the degree and edge-count predictions are mutually
    consistent; this is a report item, not an assertion.
    """
    sizes = class_sizes(n)
    total = 0
    for d in predict_degrees(n):
        value = d.alternate if (use_alternates and d.alternate is not None) else d.value
        total += sizes[(d.alpha, d.part)] * value
    return _normalise(total), 3 * predict_total_edges(n)
