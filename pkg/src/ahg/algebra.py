"""Finite groups, loops, and the Moufang doubling M(G, 2).

Elements are always integer indices into a Cayley table; display names are
carried alongside.  Tables are read-only numpy arrays, so every object here
is safe to share between threads.
"""

from dataclasses import dataclass
import itertools
from typing import NamedTuple, Optional

import numpy as np

from . import kernels
from .errors import DomainError, LoopValidationError

__all__ = [
    "Group",
    "GroupPartition",
    "Loop",
    "MoufangElement",
    "MoufangCheck",
    "dihedral_group",
    "validate_loop",
    "builtin_order5_loop",
    "moufang_extension",
    "associates",
    "check_moufang_identities",
    "is_associative",
    "nonassociative_witness",
    "loop_from_group",
]

# The order-5 loop from Pflugfelder's list (1.78); identity 0.
ORDER5_TABLE = (
    (0, 1, 2, 3, 4),
    (1, 0, 3, 4, 2),
    (2, 4, 0, 1, 3),
    (3, 2, 4, 0, 1),
    (4, 3, 1, 2, 0),
)


def _frozen_table(table):
    t = np.array(table, dtype=np.int64)
    t.setflags(write=False)
    return t


def _first_repeat(line, m):
    """Position of the first entry that repeats an earlier one or is out of range."""
    seen = set()
    for k, v in enumerate(line.tolist()):
        if not 0 <= v < m or v in seen:
            return k
        seen.add(v)
    return None


def _latin_violation(t):
    """``(row, column)`` of the first cell breaking the Latin property, or None."""
    m = t.shape[0]
    for i in range(m):
        j = _first_repeat(t[i], m)
        if j is not None:
            return i, j
    for j in range(m):
        i = _first_repeat(t[:, j], m)
        if i is not None:
            return i, j
    return None


def _find_identity(t):
    m = t.shape[0]
    ar = np.arange(m)
    for e in range(m):
        if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar):
            return e
    return None


@dataclass(frozen=True, eq=False)
class Group:
    """A finite group given by its Cayley table on ``0..order-1``."""

    table: np.ndarray
    identity: int
    names: tuple
    label: str = "G"

    def __post_init__(self):
        t = _frozen_table(self.table)
        object.__setattr__(self, "table", t)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise LoopValidationError(f"group table must be square and non-empty, got shape {t.shape}")
        bad = _latin_violation(t)
        if bad is not None:
            raise LoopValidationError(f"group table is not a Latin square at row {bad[0]}, column {bad[1]}")
        ar = np.arange(t.shape[0])
        if not (np.array_equal(t[self.identity], ar) and np.array_equal(t[:, self.identity], ar)):
            raise LoopValidationError(f"{self.identity} is not a two-sided identity")
        if kernels.first_nonassociative(t) is not None:
            raise DomainError("table is not associative, so it is not a group")
        if len(self.names) != t.shape[0]:
            raise DomainError("one name per element required")
        inv = np.argmax(t == self.identity, axis=1)
        inv.setflags(write=False)
        object.__setattr__(self, "_inverse", inv)

    @property
    def order(self):
        return self.table.shape[0]

    @property
    def elements(self):
        return tuple(range(self.order))

    def mul(self, a, b):
        return int(self.table[a, b])

    def inverse(self, a):
        """Inverse by table lookup."""
        return int(self._inverse[a])

    def center(self):
        t = self.table
        return frozenset(g for g in range(self.order) if np.array_equal(t[g], t[:, g]))

    def power_closure(self, g):
        """Elements of the cyclic subgroup generated by ``g``, in order g^0, g^1, ..."""
        out = [self.identity]
        h = g
        while h != self.identity:
            out.append(h)
            h = self.mul(h, g)
        return out


@dataclass(frozen=True)
class GroupPartition:
    """Center, non-central rotations (R) and reflections (S) of a dihedral group."""

    center: frozenset
    R: frozenset
    S: frozenset

    def sizes(self):
        return len(self.center), len(self.R), len(self.S)

    def label(self, g):
        if g in self.center:
            return "Z"
        if g in self.R:
            return "R"
        if g in self.S:
            return "S"
        raise DomainError(f"element {g} outside the partition")


def _dihedral_name(i, s):
    if s == 0:
        return "e" if i == 0 else ("x" if i == 1 else f"x^{i}")
    return "y" if i == 0 else ("xy" if i == 1 else f"x^{i}y")


def dihedral_group(n):
    """D_n = <x, y | x^n = y^2 = 1, xy = yx^-1> of order 2n, with its partition.

    Element ``i`` is ``x^i`` and element ``n + i`` is ``x^i y``.
    """
    if not isinstance(n, (int, np.integer)) or n < 3:
        raise DomainError("D_n nonabelian requires n >= 3")
    n = int(n)
    m = 2 * n
    idx = np.arange(m)
    i, s = idx % n, idx // n
    # (x^i y^s)(x^j y^t) = x^(i + (-1)^s j) y^(s + t)
    sign = np.where(s == 0, 1, -1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    table = rot + n * ((s[:, None] + s[None, :]) % 2)
    names = tuple(_dihedral_name(int(a), int(b)) for a, b in zip(i, s))
    group = Group(table=table, identity=0, names=names, label=f"D_{n}")

    center = group.center()
    rotations = set(group.power_closure(1))
    partition = GroupPartition(
        center=frozenset(center),
        R=frozenset(rotations - center),
        S=frozenset(set(range(m)) - rotations - center),
    )
    return group, partition


@dataclass(frozen=True, eq=False)
class Loop:
    """A loop: Latin-square Cayley table with a two-sided identity."""

    table: np.ndarray
    identity: int
    names: tuple
    provenance: str = "user_table"

    def __post_init__(self):
        object.__setattr__(self, "table", _frozen_table(self.table))

    @property
    def order(self):
        return self.table.shape[0]

    def mul(self, a, b):
        return int(self.table[a, b])


class MoufangElement(NamedTuple):
    """An element ``(g, alpha)`` of M(G, 2)."""

    g: int
    alpha: int

    def index(self, group_order):
        return self.alpha * group_order + self.g

    @classmethod
    def from_index(cls, index, group_order):
        alpha, g = divmod(int(index), group_order)
        if alpha not in (0, 1):
            raise DomainError(f"index {index} outside M(G,2) of base order {group_order}")
        return cls(g, alpha)


def validate_loop(table, identity=None, names=None, provenance="user_table"):
    """Check Latin-square and identity axioms, returning a :class:`Loop`.

    Raises :class:`LoopValidationError` naming the first bad row or column.
    If ``identity`` is ``None`` the table is searched for one.
    """
    t = np.array(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise LoopValidationError(f"table must be square and non-empty, got shape {t.shape}")
    bad = _latin_violation(t)
    if bad is not None:
        i, j = bad
        raise LoopValidationError(
            f"not a Latin square: entry {int(t[i, j])} at row {i}, column {j} repeats or is out of range",
            row=i,
            column=j,
        )
    m = t.shape[0]
    if identity is None:
        identity = _find_identity(t)
        if identity is None:
            raise LoopValidationError("no two-sided identity element")
    else:
        if not 0 <= identity < m:
            raise LoopValidationError(f"identity {identity} out of range")
        ar = np.arange(m)
        if not np.array_equal(t[identity], ar):
            raise LoopValidationError(f"{identity} is not a left identity", row=identity)
        if not np.array_equal(t[:, identity], ar):
            raise LoopValidationError(f"{identity} is not a right identity", column=identity)
    if names is None:
        names = tuple(str(k) for k in range(m))
    return Loop(table=t, identity=int(identity), names=tuple(names), provenance=provenance)


def loop_from_group(group):
    return Loop(table=group.table, identity=group.identity, names=group.names, provenance="group")


def builtin_order5_loop():
    return validate_loop(ORDER5_TABLE, identity=0, provenance="builtin_order5")


def moufang_extension(group):
    """Chein's doubling M(G, 2).

    ``(g1, a1) o (g2, a2) = (g1^(1-a2) * g2^((-1)^a1) * g1^a2, a1 + a2 mod 2)``,
    laid out with the alpha=0 block first (see :class:`MoufangElement`).
    """
    m = group.order
    gt = group.table
    inv = np.array([group.inverse(g) for g in range(m)])
    g = np.arange(m)

    table = np.empty((2 * m, 2 * m), dtype=np.int64)
    for a1 in (0, 1):
        h = g if a1 == 0 else inv[g]  # g2^((-1)^a1), indexed by g2
        for a2 in (0, 1):
            if a2 == 0:
                prod = gt[g[:, None], h[None, :]]  # g1 * g2'
            else:
                prod = gt[h[None, :], g[:, None]]  # g2' * g1
            block = prod + m * ((a1 + a2) % 2)
            table[a1 * m:(a1 + 1) * m, a2 * m:(a2 + 1) * m] = block

    names = tuple(f"({group.names[k % m]},{k // m})" for k in range(2 * m))
    return Loop(table=table, identity=group.identity, names=names,
                provenance=f"moufang_extension({group.label})")


def _check_index(loop, *elements):
    for v in elements:
        if not 0 <= v < loop.order:
            raise DomainError(f"element {v} out of range for loop of order {loop.order}")


def associates(loop, x, y, z):
    """``True`` iff ``(x y) z == x (y z)``."""
    _check_index(loop, x, y, z)
    t = loop.table
    return bool(t[t[x, y], z] == t[x, t[y, z]])


class MoufangCheck(NamedTuple):
    holds: bool
    counterexample: Optional[tuple]  # (identity_id, x, y, z)


def check_moufang_identities(loop):
    """Exhaustively test all three Moufang identities over ``|L|^3`` triples."""
    hit = kernels.moufang_violation(loop.table)
    return MoufangCheck(hit is None, hit)


def is_associative(loop):
    return kernels.first_nonassociative(loop.table) is None


def nonassociative_witness(loop):
    """A triple ``(x, y, z)`` with ``(xy)z != x(yz)``, or ``None``.

    Preference order, each scanned lexicographically: a distinct 3-set that
    associates in some ordering but not in another (the failing ordering is
    returned); any distinct failing triple; any failing triple.
    """
    t = loop.table
    m = loop.order

    def fails(a, b, c):
        return t[t[a, b], c] != t[a, t[b, c]]

    first_distinct = None
    for triple in itertools.combinations(range(m), 3):
        outcomes = [(p, fails(*p)) for p in itertools.permutations(triple)]
        failing = [p for p, f in outcomes if f]
        if failing and len(failing) < 6:
            return failing[0]
        if failing and first_distinct is None:
            first_distinct = failing[0]
    if first_distinct is not None:
        return first_distinct
    return kernels.first_nonassociative(t)
