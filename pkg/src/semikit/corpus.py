"""Fixture generators, the small-order census up to isomorphism, and the
verification harness that replays the structure theorems over every
generated instance."""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .core import (
    FiniteSemigroup,
    SubsetHandle,
    closure,
    direct_product,
    from_table,
    idempotents,
    is_cancellative,
    is_group,
    is_monoid,
    monogenic,
    subsemigroup_table,
)
from .errors import CensusLimitExceeded, SemigroupError, UnknownGenerator
from .greens import (
    greens_structure,
    greens_restriction_check,
    is_regular,
    is_stable,
)
from .ideals import (
    IDEAL_ENUM_LIMIT,
    enumerate_ideals,
    kernel,
    minimal_ideal_equivalences,
    swelling_check,
)
from .simple import (
    enumerate_subsemigroups,
    is_completely_simple,
    rees_construct,
    rees_decompose,
    subsemigroup_decompose,
    subsemigroup_of_group_check,
    ReesMatrixSemigroup,
)

CENSUS_LIMIT = 4
RNG_ALGORITHM = "splitmix64"
SWELLING_EXHAUSTIVE_LIMIT = 4


class SplitMix64:
    """Deterministic 64-bit stream; identical across platforms."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        # rejection sampling keeps the draw unbiased
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % bound


# ---------------------------------------------------------------------------
# standard fixtures


def _cyclic(k: int) -> FiniteSemigroup:
    table = (np.arange(k)[:, None] + np.arange(k)[None, :]) % k
    return FiniteSemigroup(table, name=f"Z{k}", validate=False)


def _sym3() -> FiniteSemigroup:
    perms = sorted(itertools.permutations(range(3)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [
        [pos[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms
    ]
    return from_table(6, table, name="S3")


def _left_zero(k: int) -> FiniteSemigroup:
    table = np.repeat(np.arange(k)[:, None], k, axis=1)
    return FiniteSemigroup(table, name=f"LZ{k}", validate=False)


def _right_zero(k: int) -> FiniteSemigroup:
    table = np.repeat(np.arange(k)[None, :], k, axis=0)
    return FiniteSemigroup(table, name=f"RZ{k}", validate=False)


def _rect_band(a: int, b: int) -> FiniteSemigroup:
    # element (i, lam) at index i*b + lam; (i,lam)(j,mu) = (i,mu)
    n = a * b
    idx = np.arange(n)
    i_part = (idx // b)[:, None]
    mu_part = (idx % b)[None, :]
    return FiniteSemigroup(i_part * b + mu_part, name=f"RB{a}{b}", validate=False)


def _t2() -> FiniteSemigroup:
    return from_table(
        4, [[0, 1, 2, 3], [1, 0, 3, 2], [2, 2, 2, 2], [3, 3, 3, 3]], name="T2"
    )


def _paper_band() -> FiniteSemigroup:
    # {0,1} x {x,y} with (a,b)*(c,d) = (a*c, b); element (a,b) at index a*2+b?
    # Matches the pinned rows: (a,b) at index 2a+b with product (ac, b).
    table = [[0, 0, 0, 0], [1, 1, 1, 1], [0, 0, 2, 2], [1, 1, 3, 3]]
    return from_table(4, table, name="PB")


_GENERATORS: dict[str, Callable[..., FiniteSemigroup]] = {
    "trivial": lambda: _cyclic(1),
    "cyclic": _cyclic,
    "sym3": _sym3,
    "left_zero": _left_zero,
    "right_zero": _right_zero,
    "rect_band": _rect_band,
    "t2": _t2,
    "paper_band": _paper_band,
}


def gen_standard(name: str, *params: int) -> FiniteSemigroup:
    if name not in _GENERATORS:
        raise UnknownGenerator(f"unknown generator {name!r}")
    try:
        return _GENERATORS[name](*params)
    except TypeError as exc:
        raise UnknownGenerator(f"bad parameters for {name!r}: {exc}") from exc


_GROUPS: dict[str, Callable[[], FiniteSemigroup]] = {
    "trivial": lambda: _cyclic(1),
    "z2": lambda: _cyclic(2),
    "z3": lambda: _cyclic(3),
    "z4": lambda: _cyclic(4),
    "z5": lambda: _cyclic(5),
    "z6": lambda: _cyclic(6),
    "z2xz2": lambda: direct_product(_cyclic(2), _cyclic(2)),
    "s3": _sym3,
}


def resolve_group(name: str) -> FiniteSemigroup:
    key = name.lower()
    if key in _GROUPS:
        return _GROUPS[key]()
    raise UnknownGenerator(f"unknown group {name!r}")


def gen_random_rees(
    i_size: int, lambda_size: int, group, seed: int
) -> ReesMatrixSemigroup:
    """Seeded random sandwich matrix over the given group (name or table)."""
    if isinstance(group, str):
        group = resolve_group(group)
    rng = SplitMix64(seed)
    sandwich = [
        [rng.below(group.order) for _ in range(i_size)] for _ in range(lambda_size)
    ]
    return rees_construct(i_size, lambda_size, group, sandwich)


def gen_transformation_closure(degree: int, n_maps: int, seed: int) -> FiniteSemigroup:
    """Close seeded random self-maps of [0, degree) under composition.

    The product of maps f and g is x -> f[g[x]].
    """
    from .core import max_order

    rng = SplitMix64(seed)
    maps = [
        tuple(rng.below(degree) for _ in range(degree)) for _ in range(n_maps)
    ]
    index: dict[tuple[int, ...], int] = {}
    rows: list[tuple[int, ...]] = []
    for m in maps:
        if m not in index:
            index[m] = len(rows)
            rows.append(m)
    frontier = list(range(len(rows)))
    cap = max_order()
    while frontier:
        known = np.asarray(rows, dtype=np.int64)
        fresh: list[int] = []
        for a in frontier:
            f = known[a]
            for comp in (f[known], known[:, f]):  # f o g and g o f over all g
                for row in comp:
                    key = tuple(int(v) for v in row)
                    if key not in index:
                        if len(rows) >= cap:
                            from .errors import Overflow

                            raise Overflow(
                                f"transformation closure exceeds max order {cap}"
                            )
                        index[key] = len(rows)
                        rows.append(key)
                        fresh.append(index[key])
        frontier = fresh
    n = len(rows)
    known = np.asarray(rows, dtype=np.int64)
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        comp = known[a][known]  # f_a o g_b over all b
        table[a] = [index[tuple(int(v) for v in row)] for row in comp]
    return FiniteSemigroup(table, name=f"T({degree},{n_maps},{seed})", validate=False)


# ---------------------------------------------------------------------------
# census up to isomorphism


def _enumerate_associative_python(n: int) -> list[tuple[int, ...]]:
    """DFS over Cayley tables with incremental associativity pruning."""
    total = n * n
    t = [-1] * total
    out: list[tuple[int, ...]] = []
    triples = [(a, b, c) for a in range(n) for b in range(n) for c in range(n)]

    def consistent() -> bool:
        for a, b, c in triples:
            ab = t[a * n + b]
            if ab < 0:
                continue
            bc = t[b * n + c]
            if bc < 0:
                continue
            x = t[ab * n + c]
            y = t[a * n + bc]
            if x >= 0 and y >= 0 and x != y:
                return False
        return True

    def rec(pos: int):
        if pos == total:
            out.append(tuple(t))
            return
        for v in range(n):
            t[pos] = v
            if consistent():
                rec(pos + 1)
            t[pos] = -1

    rec(0)
    return out


try:
    from numba import njit

    @njit(cache=True)
    def _enumerate_associative_numba(n, out):  # pragma: no cover - jitted
        total = n * n
        t = np.full(total, -1, dtype=np.int64)
        choice = np.zeros(total, dtype=np.int64)
        count = 0
        pos = 0
        while pos >= 0:
            if pos == total:
                if count < out.shape[0]:
                    out[count, :] = t
                count += 1
                pos -= 1
                choice[pos] += 1
                continue
            v = choice[pos]
            if v >= n:
                choice[pos] = 0
                t[pos] = -1
                pos -= 1
                if pos >= 0:
                    choice[pos] += 1
                continue
            t[pos] = v
            ok = True
            for a in range(n):
                if not ok:
                    break
                for b in range(n):
                    if not ok:
                        break
                    ab = t[a * n + b]
                    if ab < 0:
                        continue
                    for c in range(n):
                        bc = t[b * n + c]
                        if bc < 0:
                            continue
                        x = t[ab * n + c]
                        y = t[a * n + bc]
                        if x >= 0 and y >= 0 and x != y:
                            ok = False
                            break
            if ok:
                pos += 1
            else:
                t[pos] = -1
                choice[pos] += 1
        return count

    def _enumerate_associative(n: int) -> list[tuple[int, ...]]:
        capacity = 200_000
        out = np.zeros((capacity, n * n), dtype=np.int64)
        count = _enumerate_associative_numba(n, out)
        if count > capacity:  # retry with room to spare
            out = np.zeros((count, n * n), dtype=np.int64)
            count = _enumerate_associative_numba(n, out)
        return [tuple(int(v) for v in row) for row in out[:count]]

except ImportError:  # pragma: no cover
    _enumerate_associative = _enumerate_associative_python


def canonical_form(S: FiniteSemigroup, fold_opposites: bool = False) -> tuple[int, ...]:
    """Lexicographically minimal flattened table over all relabelings."""
    forms = [_min_relabeling(S.table)]
    if fold_opposites:
        forms.append(_min_relabeling(np.ascontiguousarray(S.table.T)))
    return min(forms)


def _min_relabeling(table: np.ndarray) -> tuple[int, ...]:
    n = table.shape[0]
    best = None
    for perm in itertools.permutations(range(n)):
        p = np.asarray(perm, dtype=np.int64)
        inv = np.empty(n, dtype=np.int64)
        inv[p] = np.arange(n)
        relab = tuple(int(v) for v in p[table[np.ix_(inv, inv)]].ravel())
        if best is None or relab < best:
            best = relab
    return best


def census(
    max_order: int, limit: int = CENSUS_LIMIT, fold_opposites: bool = False
) -> list[FiniteSemigroup]:
    """All semigroups of order <= max_order up to isomorphism.

    Opposite (anti-isomorphic) semigroups are counted separately unless
    fold_opposites is set.
    """
    if max_order > limit:
        raise CensusLimitExceeded(f"census max_order {max_order} exceeds limit {limit}")
    result = []
    for n in range(1, max_order + 1):
        canon: dict[tuple[int, ...], None] = {}
        for flat in _enumerate_associative(n):
            table = np.asarray(flat, dtype=np.int64).reshape(n, n)
            S = FiniteSemigroup(table, validate=False)
            canon.setdefault(canonical_form(S, fold_opposites=fold_opposites))
        for i, key in enumerate(sorted(canon)):
            table = np.asarray(key, dtype=np.int64).reshape(n, n)
            result.append(FiniteSemigroup(table, name=f"census-{n}-{i}", validate=False))
    return result


def fingerprint(semigroups: Iterable[FiniteSemigroup]) -> str:
    """SHA-256 over the concatenated table encodings."""
    h = hashlib.sha256()
    for S in semigroups:
        h.update(str(S.order).encode())
        h.update(b":")
        h.update(",".join(str(int(v)) for v in S.table.ravel()).encode())
        h.update(b";")
    return h.hexdigest()


# ---------------------------------------------------------------------------
# corpus specification


@dataclass(frozen=True)
class CorpusSpec:
    """Reproducible corpus description: generator descriptor strings plus
    limits.  Descriptors: "cyclic:3", "rect_band:2,2", "sym3", "t2",
    "paper_band", "left_zero:2", "right_zero:3",
    "random_rees:I,L,group,seed", "transformation:degree,maps,seed",
    "census:N"."""

    generators: tuple[str, ...]
    max_order: int = 4096
    census_limit: int = CENSUS_LIMIT
    subset_cap: int = 16

    def __post_init__(self):
        if self.max_order <= 0 or self.census_limit <= 0 or self.subset_cap <= 0:
            raise ValueError("limits must be positive")


def build_corpus(spec: CorpusSpec) -> list[tuple[str, FiniteSemigroup]]:
    out: list[tuple[str, FiniteSemigroup]] = []
    for desc in spec.generators:
        head, _, tail = desc.partition(":")
        args = [a for a in tail.split(",") if a] if tail else []
        if head == "census":
            for S in census(int(args[0]), limit=spec.census_limit):
                out.append((S.name, S))
        elif head == "random_rees":
            i_size, lam, group_name, seed = args
            rms = gen_random_rees(int(i_size), int(lam), group_name, int(seed))
            out.append((desc, rms.realized))
        elif head == "transformation":
            degree, maps, seed = (int(a) for a in args)
            out.append((desc, gen_transformation_closure(degree, maps, seed)))
        else:
            out.append((desc, gen_standard(head, *(int(a) for a in args))))
    for name, S in out:
        if S.order > spec.max_order:
            raise CensusLimitExceeded(f"{name} exceeds max order {spec.max_order}")
    return out


# ---------------------------------------------------------------------------
# verification harness


@dataclass(frozen=True)
class CheckResult:
    semigroup: str
    check: str
    status: str  # "pass" | "fail"
    witness: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "semigroup": self.semigroup,
            "check": self.check,
            "status": self.status,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class VerificationReport:
    entries: tuple[CheckResult, ...]
    fingerprint: str
    rng_algorithm: str = RNG_ALGORITHM

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(e for e in self.entries if e.status == "fail")

    @property
    def summary(self) -> dict[str, int]:
        counts = {"pass": 0, "fail": 0}
        for e in self.entries:
            counts[e.status] += 1
        return counts

    def to_json(self) -> str:
        doc = {
            "fingerprint": self.fingerprint,
            "rng_algorithm": self.rng_algorithm,
            "summary": self.summary,
            "entries": [e.to_dict() for e in self.entries],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _check_idempotent_existence(S):
    if len(idempotents(S)) < 1:
        return "no idempotent"


def _check_kernel(S):
    report = kernel(S)  # raises on any internal inconsistency
    if S.order <= IDEAL_ENUM_LIMIT:
        K = report.kernel.member_set
        for ideal in enumerate_ideals(S):
            if not K <= set(ideal):
                return f"ideal {ideal} does not contain K"


def _check_minimal_ideal_equivalences(S):
    for e in idempotents(S).members:
        minimal_ideal_equivalences(S, e)  # raises when the four disagree


def _check_cancellative_iff_group(S):
    c = is_cancellative(S)
    if (c.left and c.right) != is_group(S):
        return f"cancellative={c.left and c.right} but group={is_group(S)}"


def _check_single_idempotent_monoid(S):
    if is_monoid(S) is not None and len(idempotents(S)) == 1 and not is_group(S):
        return "monoid with E(S)={1} is not a group"


def _check_subsemigroups_of_groups(S):
    if not is_group(S):
        return None
    for T in enumerate_subsemigroups(S, cap=max(16, S.order), verify=False):
        subsemigroup_of_group_check(S, T)


def _check_swelling(S):
    if S.order > SWELLING_EXHAUSTIVE_LIMIT:
        return None
    n = S.order
    for bits in range(1, 1 << n):
        members = tuple(x for x in range(n) if bits >> x & 1)
        A = SubsetHandle(S, members, "generic")
        for t in members:
            swelling_check(S, A, t)  # raises if the implication fails


def _check_d_composition(S):
    greens_structure(S)  # egg-box completeness enforces D = RL = LR


def _check_h_meet(S):
    G = greens_structure(S)
    for a in range(S.order):
        for b in range(S.order):
            same_h = G.h_class[a] == G.h_class[b]
            meet = G.l_class[a] == G.l_class[b] and G.r_class[a] == G.r_class[b]
            if same_h != meet:
                return f"H != L^R at ({a},{b})"


def _check_kernel_rees_roundtrip(S):
    K = kernel(S).kernel
    sub, _ = subsemigroup_table(S, K.members)
    if not is_completely_simple(sub):
        return "kernel not completely simple"
    rees_decompose(sub)  # raises unless phi is an isomorphism


def _check_green_restriction(S):
    if S.order > 8:
        return None
    for T in enumerate_subsemigroups(S, cap=max(16, S.order), verify=False):
        sub, _ = subsemigroup_table(S, T.members)
        if all(is_regular(sub, x) for x in range(sub.order)):
            report = greens_restriction_check(S, T)
            if not report.ok:
                return f"restriction fails on {list(T.members)}: {report.violations[:1]}"


def _check_subsemigroup_classification(S):
    if not is_completely_simple(S):
        return None
    for T in enumerate_subsemigroups(S, cap=max(16, S.order), verify=False):
        subsemigroup_decompose(S, T)  # raises when the classification fails


def _check_stability(S):
    result = is_stable(S)
    if not (result.right and result.left):
        return f"unstable witness {result.witness}"


def _check_monogenic_idempotent(S):
    for s in range(S.order):
        result = monogenic(S, s)
        idems = [x for x in result.subset if S.product(x, x) == x]
        if len(idems) != 1:
            return f"<{s}> has {len(idems)} idempotents"


CHECKS: tuple[tuple[str, Callable], ...] = (
    ("idempotent_existence", _check_idempotent_existence),
    ("kernel_unique_minimal", _check_kernel),
    ("minimal_ideal_equivalences", _check_minimal_ideal_equivalences),
    ("cancellative_iff_group", _check_cancellative_iff_group),
    ("single_idempotent_monoid_is_group", _check_single_idempotent_monoid),
    ("subsemigroup_of_group_is_subgroup", _check_subsemigroups_of_groups),
    ("swelling_implication", _check_swelling),
    ("d_equals_rl_equals_lr", _check_d_composition),
    ("h_equals_l_meet_r", _check_h_meet),
    ("kernel_rees_roundtrip", _check_kernel_rees_roundtrip),
    ("regular_green_restriction", _check_green_restriction),
    ("subsemigroup_classification", _check_subsemigroup_classification),
    ("stability", _check_stability),
    ("monogenic_unique_idempotent", _check_monogenic_idempotent),
)


def verify_suite(corpus) -> VerificationReport:
    """Run every theorem check over each instance; failures become report
    entries, never aborts."""
    if isinstance(corpus, CorpusSpec):
        instances = build_corpus(corpus)
    else:
        instances = [
            (S.name or f"instance-{i}", S) if isinstance(S, FiniteSemigroup) else S
            for i, S in enumerate(corpus)
        ]
    entries = []
    for name, S in instances:
        for check_name, fn in CHECKS:
            try:
                witness = fn(S)
            except SemigroupError as exc:
                witness = str(exc)
            except AssertionError as exc:
                witness = f"assertion: {exc}"
            status = "pass" if witness is None else "fail"
            entries.append(CheckResult(name, check_name, status, witness))
    return VerificationReport(tuple(entries), fingerprint(S for _, S in instances))
