"""Kernels, minimal one-sided ideals, the idempotent poset, Rees quotients,
and the Swelling-Lemma check."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .core import (
    FiniteSemigroup,
    SemigroupMorphism,
    SubsetHandle,
    idempotents,
    is_group,
    subsemigroup_table,
)
from .errors import (
    ElementNotInSubset,
    InvariantViolation,
    NotAnIdeal,
    NotIdempotent,
)
from .greens import (
    _left_ideal_members,
    _right_ideal_members,
    _two_sided_ideal_members,
)

# Exhaustive sub-ideal search (the oracle) runs for semigroups up to this
# order and candidate sets up to _BRUTE_SET_LIMIT elements; the one-element
# generation criterion takes over beyond that.
BRUTE_ORDER_LIMIT = 64
_BRUTE_SET_LIMIT = 16
# Full ideal enumeration walks 2^n subsets.
IDEAL_ENUM_LIMIT = 6


def _is_left_ideal(T: np.ndarray, members) -> bool:
    mem = np.asarray(members, dtype=np.int64)
    inside = np.zeros(T.shape[0], dtype=bool)
    inside[mem] = True
    return bool(inside[T[:, mem]].all())


def _is_right_ideal(T: np.ndarray, members) -> bool:
    mem = np.asarray(members, dtype=np.int64)
    inside = np.zeros(T.shape[0], dtype=bool)
    inside[mem] = True
    return bool(inside[T[mem, :]].all())


def _is_two_sided_ideal(T: np.ndarray, members) -> bool:
    return _is_left_ideal(T, members) and _is_right_ideal(T, members)


def is_minimal_one_sided_ideal(
    S: FiniteSemigroup, members: Sequence[int], side: str, method: Optional[str] = None
) -> bool:
    """Decide minimality of a one-sided ideal.

    method "exhaustive": scan all proper nonempty subsets for a sub-ideal
    (the oracle; only feasible for small sets).  method "criterion": the
    ideal L is minimal iff S^1 x = L for every x in L.  None picks by size.
    """
    T = S.table
    mem = sorted(set(int(m) for m in members))
    check = _is_left_ideal if side == "left" else _is_right_ideal
    if not check(T, mem):
        raise NotAnIdeal(f"{mem} is not a {side} ideal")
    if method is None:
        method = (
            "exhaustive"
            if S.order <= BRUTE_ORDER_LIMIT and len(mem) <= _BRUTE_SET_LIMIT
            else "criterion"
        )
    if method == "exhaustive":
        for size in range(1, len(mem)):
            for sub in combinations(mem, size):
                if check(T, sub):
                    return False
        return True
    principal = _left_ideal_members if side == "left" else _right_ideal_members
    return all(np.array_equal(principal(T, x), mem) for x in mem)


class MinimalIdealVerdict(NamedTuple):
    """The four equivalent statements of the minimal-ideal proposition at e."""

    se_minimal_left: bool
    ese_group: bool
    es_minimal_right: bool
    kernel_is_ses: bool

    @property
    def verdict(self) -> bool:
        return self.se_minimal_left


def minimal_ideal_equivalences(S: FiniteSemigroup, e: int) -> MinimalIdealVerdict:
    """Evaluate, independently, the four statements (Se minimal left ideal;
    eSe a group; eS minimal right ideal; K = SeS) and assert they agree."""
    T = S.table
    if S.product(e, e) != e:
        raise NotIdempotent(f"{e} is not idempotent")
    se = np.unique(T[:, e])
    es = np.unique(T[e, :])
    ese = np.unique(T[T[e, :], e])
    ses = np.unique(T[se, :].ravel())

    p1 = is_minimal_one_sided_ideal(S, se, "left")
    sub, _ = subsemigroup_table(S, ese)
    p2 = is_group(sub)
    p3 = is_minimal_one_sided_ideal(S, es, "right")
    K = kernel_members(S)
    p4 = np.array_equal(np.asarray(K, dtype=np.int64), ses)
    verdict = MinimalIdealVerdict(p1, p2, p3, p4)
    if len({p1, p2, p3, p4}) != 1:
        raise InvariantViolation(f"minimal-ideal equivalences disagree at e={e}: {verdict}")
    return verdict


def kernel_members(S: FiniteSemigroup) -> tuple[int, ...]:
    """The unique minimal ideal as the intersection of all principal
    two-sided ideals."""
    T = S.table
    n = S.order
    mask = np.ones(n, dtype=bool)
    for s in range(n):
        ideal = _two_sided_ideal_members(T, s)
        m = np.zeros(n, dtype=bool)
        m[ideal] = True
        mask &= m
    members = tuple(int(x) for x in np.flatnonzero(mask))
    if not members:
        raise InvariantViolation("empty kernel on a finite semigroup")
    return members


@dataclass(frozen=True)
class KernelReport:
    kernel: SubsetHandle
    idempotents: tuple[int, ...]
    witnesses: dict  # e in E(K) -> MinimalIdealVerdict
    min_left: tuple[SubsetHandle, ...]
    min_right: tuple[SubsetHandle, ...]

    def to_dict(self) -> dict:
        return {
            "kernel": list(self.kernel.members),
            "kernel_idempotents": list(self.idempotents),
            "min_left": [list(h.members) for h in self.min_left],
            "min_right": [list(h.members) for h in self.min_right],
            "verdicts": {
                str(e): list(v) for e, v in sorted(self.witnesses.items())
            },
        }


def kernel(S: FiniteSemigroup) -> KernelReport:
    """Kernel K with its idempotents and the minimal one-sided ideals
    Se / eS for e in E(K); everything is re-verified after computation."""
    T = S.table
    members = kernel_members(S)
    handle = SubsetHandle(S, members, "kernel")  # validates ideal closure
    mem_arr = np.asarray(members, dtype=np.int64)
    # minimality: every x in K generates K as a two-sided ideal
    for x in members:
        if not np.array_equal(_two_sided_ideal_members(T, x), mem_arr):
            raise InvariantViolation(f"kernel not minimal: witness {x}")
    ek = tuple(int(e) for e in members if S.product(e, e) == e)
    if not ek:
        raise InvariantViolation("kernel of a finite semigroup has no idempotent")

    witnesses = {}
    left_sets: dict[tuple[int, ...], SubsetHandle] = {}
    right_sets: dict[tuple[int, ...], SubsetHandle] = {}
    for e in ek:
        verdict = minimal_ideal_equivalences(S, e)
        if not verdict.verdict:
            raise InvariantViolation(f"minimal-ideal proposition fails at e={e} in E(K)")
        witnesses[e] = verdict
        se = tuple(int(x) for x in np.unique(T[:, e]))
        es = tuple(int(x) for x in np.unique(T[e, :]))
        left_sets.setdefault(se, SubsetHandle(S, se, "left-ideal"))
        right_sets.setdefault(es, SubsetHandle(S, es, "right-ideal"))

    min_left = tuple(left_sets[k] for k in sorted(left_sets))
    min_right = tuple(right_sets[k] for k in sorted(right_sets))
    for part, label in ((min_left, "left"), (min_right, "right")):
        seen: set[int] = set()
        for h in part:
            if seen & h.member_set:
                raise InvariantViolation(f"minimal {label} ideals overlap")
            seen |= h.member_set
        if seen != set(members):
            raise InvariantViolation(f"minimal {label} ideals do not cover K")
    return KernelReport(handle, ek, witnesses, min_left, min_right)


def enumerate_ideals(S: FiniteSemigroup) -> list[tuple[int, ...]]:
    """All nonempty two-sided ideals, by subset scan (order-capped)."""
    n = S.order
    if n > IDEAL_ENUM_LIMIT:
        raise InvariantViolation(
            f"ideal enumeration capped at order {IDEAL_ENUM_LIMIT} (2^n subsets)"
        )
    out = []
    for bits in range(1, 1 << n):
        sub = tuple(x for x in range(n) if bits >> x & 1)
        if _is_two_sided_ideal(S.table, sub):
            out.append(sub)
    return out


@dataclass(frozen=True)
class IdempotentPoset:
    """The natural partial order e <= f iff ef = fe = e on E(S)."""

    parent: FiniteSemigroup
    elements: tuple[int, ...]
    leq: np.ndarray  # k x k bool, leq[i, j] <=> elements[i] <= elements[j]
    primitives: tuple[int, ...]


def idempotent_poset(S: FiniteSemigroup) -> IdempotentPoset:
    E = idempotents(S).members
    k = len(E)
    leq = np.zeros((k, k), dtype=bool)
    for i, e in enumerate(E):
        for j, f in enumerate(E):
            leq[i, j] = S.product(e, f) == e and S.product(f, e) == e
    # partial-order sanity: reflexive, antisymmetric, transitive
    if not leq.diagonal().all():
        raise InvariantViolation("idempotent order not reflexive")
    if (leq & leq.T & ~np.eye(k, dtype=bool)).any():
        raise InvariantViolation("idempotent order not antisymmetric")
    closure = leq @ leq
    if (closure.astype(bool) & ~leq).any():
        raise InvariantViolation("idempotent order not transitive")
    primitives = tuple(
        E[i] for i in range(k) if all(not leq[j, i] or j == i for j in range(k))
    )
    return IdempotentPoset(S, E, leq, primitives)


def rees_quotient(S: FiniteSemigroup, I: SubsetHandle):
    """Collapse the two-sided ideal I to a zero at index 0.

    Surviving elements keep their relative order at indices 1..|S|-|I|.
    Returns (quotient, projection); the quotient is re-validated and the
    projection verified to be a homomorphism.
    """
    if not _is_two_sided_ideal(S.table, I.members):
        raise NotAnIdeal(f"{list(I.members)} is not a two-sided ideal")
    inside = np.zeros(S.order, dtype=bool)
    inside[list(I.members)] = True
    survivors = [x for x in range(S.order) if not inside[x]]
    proj = np.zeros(S.order, dtype=np.int64)
    for i, x in enumerate(survivors, start=1):
        proj[x] = i
    m = len(survivors) + 1
    table = np.zeros((m, m), dtype=np.int64)
    for i, a in enumerate(survivors, start=1):
        for j, b in enumerate(survivors, start=1):
            table[i, j] = proj[S.product(a, b)]
    quotient = FiniteSemigroup(table, name=f"{S.name}/I" if S.name else None)
    pi = SemigroupMorphism(S, quotient, tuple(int(v) for v in proj))
    if not pi.is_homomorphism:
        raise InvariantViolation("Rees projection is not a homomorphism")
    return quotient, pi


class SwellingVerdict(NamedTuple):
    hypothesis_held: bool  # A subset of tA
    equal: Optional[bool]  # A == tA, only claimed when the hypothesis held


def swelling_check(S: FiniteSemigroup, A: SubsetHandle, t: int) -> SwellingVerdict:
    """If A is a subset of tA then A = tA (must hold: |tA| <= |A|)."""
    if t not in A:
        raise ElementNotInSubset(f"t={t} not in A")
    mem = np.asarray(A.members, dtype=np.int64)
    tA = set(int(x) for x in np.unique(S.table[t, mem]))
    if not A.member_set <= tA:
        return SwellingVerdict(False, None)
    equal = tA == A.member_set
    if not equal:
        raise InvariantViolation("Swelling implication failed on a finite semigroup")
    return SwellingVerdict(True, True)
