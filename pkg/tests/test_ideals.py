import numpy as np
import pytest

import semikit as sk
from semikit.errors import ElementNotInSubset, NotAnIdeal, NotIdempotent
from semikit.ideals import (
    enumerate_ideals,
    is_minimal_one_sided_ideal,
    kernel_members,
    minimal_ideal_equivalences,
)


def test_kernel_group_is_simple(z3):
    report = sk.kernel(z3)
    assert report.kernel.members == (0, 1, 2)


def test_kernel_pb(pb):
    report = sk.kernel(pb)
    assert report.kernel.members == (0, 1)
    assert [h.members for h in report.min_left] == [(0, 1)]
    assert [h.members for h in report.min_right] == [(0,), (1,)]
    assert report.idempotents == (0, 1)


def test_kernel_t2(t2):
    report = sk.kernel(t2)
    assert report.kernel.members == (2, 3)
    assert [h.members for h in report.min_left] == [(2, 3)]
    assert [h.members for h in report.min_right] == [(2,), (3,)]


def test_kernel_contained_in_every_ideal(t2, pb, l2):
    for S in (t2, pb, l2):
        K = set(kernel_members(S))
        for ideal in enumerate_ideals(S):
            assert K <= set(ideal)


def test_kernel_equals_ses_for_kernel_idempotents(t2, pb):
    for S in (t2, pb):
        report = sk.kernel(S)
        K = np.asarray(report.kernel.members)
        for e in report.idempotents:
            se = np.unique(S.table[:, e])
            ses = np.unique(S.table[se, :])
            assert np.array_equal(ses, K)


def test_minimal_ideal_equivalences_t2(t2):
    assert tuple(minimal_ideal_equivalences(t2, 2)) == (True, True, True, True)
    assert tuple(minimal_ideal_equivalences(t2, 0)) == (False, False, False, False)


def test_minimal_ideal_equivalences_z3(z3):
    assert minimal_ideal_equivalences(z3, 0).verdict


def test_minimal_ideal_equivalences_rejects_non_idempotent(t2):
    with pytest.raises(NotIdempotent):
        minimal_ideal_equivalences(t2, 1)


def test_minimality_methods_agree(t2, pb, rb22, z3):
    for S in (t2, pb, rb22, z3):
        for e in sk.idempotents(S):
            se = sorted(set(int(x) for x in S.table[:, e]))
            es = sorted(set(int(x) for x in S.table[e, :]))
            for members, side in ((se, "left"), (es, "right")):
                brute = is_minimal_one_sided_ideal(S, members, side, "exhaustive")
                crit = is_minimal_one_sided_ideal(S, members, side, "criterion")
                assert brute == crit


def test_minimal_left_ideals_have_stated_form(t2, pb):
    # every minimal left ideal is Se for an idempotent of K, and each of its
    # elements generates it
    for S in (t2, pb):
        report = sk.kernel(S)
        for h in report.min_left:
            assert any(
                set(h.members) == set(int(v) for v in S.table[:, e])
                for e in report.idempotents
            )
            for x in h.members:
                left = set(int(v) for v in S.table[:, x]) | {x}
                assert left == set(h.members)


def test_idempotent_poset_pb(pb):
    poset = sk.idempotent_poset(pb)
    assert poset.elements == (0, 1, 2, 3)
    leq_pairs = {
        (poset.elements[i], poset.elements[j])
        for i in range(4)
        for j in range(4)
        if poset.leq[i, j] and i != j
    }
    assert leq_pairs == {(0, 2), (1, 3)}
    assert poset.primitives == (0, 1)


def test_idempotent_poset_z3(z3):
    poset = sk.idempotent_poset(z3)
    assert poset.elements == (0,)
    assert poset.primitives == (0,)


def test_idempotent_poset_rb22_antichain(rb22):
    poset = sk.idempotent_poset(rb22)
    assert poset.primitives == (0, 1, 2, 3)
    assert np.array_equal(poset.leq, np.eye(4, dtype=bool))


def test_rees_quotient_pb(pb):
    K = sk.kernel(pb).kernel
    Q, pi = sk.rees_quotient(pb, K)
    assert Q.order == 3
    # derived cell by cell from the collapse rule on the PB table
    expected = [[0, 0, 0], [0, 1, 1], [0, 2, 2]]
    assert Q.table.tolist() == expected
    assert pi.is_homomorphism
    # projection restricted to the survivors is injective
    survivors = [x for x in range(pb.order) if x not in K]
    assert len({pi(x) for x in survivors}) == len(survivors)


def test_rees_quotient_whole_semigroup(pb):
    ideal = sk.SubsetHandle(pb, (0, 1, 2, 3), "two-sided-ideal")
    Q, _ = sk.rees_quotient(pb, ideal)
    assert Q.order == 1


def test_rees_quotient_t2(t2):
    ideal = sk.SubsetHandle(t2, (2, 3), "two-sided-ideal")
    Q, pi = sk.rees_quotient(t2, ideal)
    assert Q.order == 3
    survivors = sorted({pi(0), pi(1)})
    sub, _ = sk.subsemigroup_table(Q, survivors)
    assert sk.is_group(sub)


def test_rees_quotient_rejects_non_ideal(t2):
    subset = sk.SubsetHandle(t2, (0, 1), "generic")
    with pytest.raises(NotAnIdeal):
        sk.rees_quotient(t2, subset)


def test_rees_quotient_size_invariant(t2, pb):
    for S in (t2, pb):
        for ideal in enumerate_ideals(S):
            Q, _ = sk.rees_quotient(S, sk.SubsetHandle(S, ideal, "two-sided-ideal"))
            assert Q.order == S.order - len(ideal) + 1


def test_swelling_group_translation(z3):
    A = sk.SubsetHandle(z3, (0, 1, 2), "generic")
    assert sk.swelling_check(z3, A, 1) == (True, True)


def test_swelling_hypothesis_fails(t2):
    A = sk.SubsetHandle(t2, (2, 3), "generic")
    assert sk.swelling_check(t2, A, 2) == (False, None)


def test_swelling_requires_membership(z3):
    A = sk.SubsetHandle(z3, (0, 1), "generic")
    with pytest.raises(ElementNotInSubset):
        sk.swelling_check(z3, A, 2)


def test_swelling_exhaustive_small(t2, pb):
    for S in (t2, pb):
        n = S.order
        for bits in range(1, 1 << n):
            members = tuple(x for x in range(n) if bits >> x & 1)
            A = sk.SubsetHandle(S, members, "generic")
            for t in members:
                sk.swelling_check(S, A, t)  # raises if the implication fails
