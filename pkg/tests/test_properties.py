"""Property-based checks over random tables and corpus instances."""

import numpy as np
from hypothesis import given, settings, strategies as st

import semikit as sk
from semikit.core import associativity_witness
from semikit.corpus import census
from semikit.errors import NotAssociative


def brute_associative(table):
    n = len(table)
    return all(
        table[table[a][b]][c] == table[a][table[b][c]]
        for a in range(n)
        for b in range(n)
        for c in range(n)
    )


@st.composite
def random_tables(draw, max_n=4):
    n = draw(st.integers(min_value=1, max_value=max_n))
    flat = draw(
        st.lists(
            st.integers(min_value=0, max_value=n - 1),
            min_size=n * n,
            max_size=n * n,
        )
    )
    return n, [flat[i * n : (i + 1) * n] for i in range(n)]


@given(random_tables())
@settings(max_examples=300, deadline=None)
def test_from_table_accepts_iff_brute_force_agrees(tn):
    n, table = tn
    expected = brute_associative(table)
    try:
        sk.from_table(n, table)
        accepted = True
    except NotAssociative:
        accepted = False
    assert accepted == expected


_CORPUS = None


def corpus3():
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = census(3)
    return _CORPUS


@given(st.data())
@settings(max_examples=100, deadline=None)
def test_closure_idempotence_and_leastness(data):
    S = data.draw(st.sampled_from(corpus3()))
    gens = data.draw(
        st.lists(st.integers(0, S.order - 1), min_size=1, max_size=S.order)
    )
    closed = sk.closure(S, gens)
    again = sk.closure(S, list(closed.members))
    assert again.members == closed.members
    # least closed superset of gens, against subset enumeration
    n = S.order
    for bits in range(1, 1 << n):
        members = {x for x in range(n) if bits >> x & 1}
        if set(gens) <= members and all(
            S.product(a, b) in members for a in members for b in members
        ):
            assert set(closed.members) <= members


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_monogenic_unique_idempotent(data):
    S = data.draw(st.sampled_from(corpus3()))
    s = data.draw(st.integers(0, S.order - 1))
    members = sk.monogenic(S, s).subset.members
    assert sum(1 for x in members if S.product(x, x) == x) == 1


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_cancellative_iff_group(data):
    S = data.draw(st.sampled_from(corpus3()))
    c = sk.is_cancellative(S)
    assert (c.left and c.right) == sk.is_group(S)


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_greens_refinement_chain(data):
    S = data.draw(st.sampled_from(corpus3()))
    G = sk.greens_structure(S)

    def refines(fine, coarse):
        seen = {}
        return all(
            seen.setdefault(int(f), int(c)) == c for f, c in zip(fine, coarse)
        )

    assert refines(G.h_class, G.l_class)
    assert refines(G.h_class, G.r_class)
    assert refines(G.l_class, G.d_class)
    assert refines(G.r_class, G.d_class)
    assert refines(G.d_class, G.j_class)


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_relabeling_preserves_validation(data):
    S = data.draw(st.sampled_from(corpus3()))
    n = S.order
    perm = data.draw(st.permutations(range(n)))
    p = np.asarray(perm, dtype=np.int64)
    inv = np.empty(n, dtype=np.int64)
    inv[p] = np.arange(n)
    relab = p[S.table[np.ix_(inv, inv)]]
    assert associativity_witness(relab) is None
