import pytest

from singer.errors import DomainError, BoundedFailure
from singer.groups import Cyclic, Abelian, Integers, Free
from singer import diffsets as ds


def pds(G, els):
    return ds.PartialDifferenceSet(G, tuple(els))


def test_differences_examples():
    assert ds.differences(pds(Cyclic(7), [0, 1, 3])) == {1, 2, 3, 4, 5, 6}
    assert ds.differences(pds(Integers(), [0])) == set()
    assert ds.differences(pds(Integers(), [0, 1])) == {1, -1}


def test_verify_partial():
    assert ds.verify_partial(pds(Cyclic(7), [0, 1, 3])).ok
    c = ds.verify_partial(pds(Integers(), [0, 1, 2]))
    assert not c.ok and c.detail["difference"] in ("1", "-1")
    assert not ds.verify_partial(pds(Integers(), [0, 1, 3, 5])).ok


def test_verify_perfect():
    assert ds.verify_perfect(pds(Cyclic(7), [0, 1, 3])).ok
    assert ds.verify_perfect(pds(Cyclic(13), [0, 1, 3, 9])).ok
    c = ds.verify_perfect(pds(Cyclic(7), [0, 1, 2]))
    assert not c.ok
    with pytest.raises(DomainError):
        ds.verify_perfect(pds(Integers(), [0, 1]))


@pytest.mark.parametrize("q,k", [(2, 3), (3, 4), (4, 5), (5, 6), (7, 8),
                                 (8, 9), (9, 10)])
def test_classical_singer_planes(q, k):
    G, S = ds.classical_singer(q, 2)
    assert G.order == q * q + q + 1
    assert len(S.elements) == k
    assert S.certified
    assert ds.verify_perfect(S).ok


def test_classical_higher_dim_not_partial():
    G, S = ds.classical_singer(2, 3)
    assert G.order == 15
    assert len(S.elements) == 7
    assert not S.certified
    assert not ds.verify_partial(S).ok  # hyperplane sets have lambda = 3


def test_hughes_step_integers_trace():
    G = Integers()
    state = ds.BuilderState(ds.certify(pds(G, [0])))
    state = ds.hughes_step(state, 1)
    assert state.current.elements == (0, 1)
    state = ds.hughes_step(state, 2)
    assert state.current.elements == (0, 1, 3)   # x=2 collides, x=3 works
    state = ds.hughes_step(state, -1)            # already a difference
    assert state.current.elements == (0, 1, 3)
    assert state.log[-1]["chosen_x"] is None


def test_hughes_step_free():
    F = Free(2)
    state = ds.BuilderState(ds.certify(pds(F, [()])))
    state = ds.hughes_step(state, F.parse("a"))
    assert state.current.elements == ((), F.parse("a"))


def test_hughes_step_rejects_identity_target():
    state = ds.BuilderState(ds.certify(pds(Integers(), [0])))
    with pytest.raises(DomainError):
        ds.hughes_step(state, 0)


def test_hughes_build_integers():
    st = ds.hughes_build(Integers(), 4)
    assert st.current.elements == (0, 1, 3)
    assert st.targets_consumed == 4
    d = ds.differences(st.current)
    for t in (1, -1, 2, -2):
        assert t in d


def test_hughes_build_deterministic():
    a = ds.hughes_build(Integers(), 30)
    b = ds.hughes_build(Integers(), 30)
    assert a.log_hash() == b.log_hash()
    f1 = ds.hughes_build(Free(2), 20)
    f2 = ds.hughes_build(Free(2), 20)
    assert f1.log_hash() == f2.log_hash()


def test_hughes_refusals():
    with pytest.raises(DomainError, match="involution"):
        ds.hughes_build(Cyclic(4), 2)
    with pytest.raises(DomainError, match="involution"):
        ds.hughes_build(Abelian((2, 6)), 2)


def test_hughes_accepts_odd_cyclic():
    st = ds.hughes_build(Cyclic(7), 2)
    assert ds.verify_partial(st.current).ok


def test_finite_group_bounded_failure_surfaces():
    # consuming more targets than the group can support must not loop
    with pytest.raises((BoundedFailure, DomainError)):
        ds.hughes_build(Cyclic(5), 4)


def test_replay_chain():
    st = ds.hughes_build(Integers(), 25)
    sizes = ds.replay_chain(st)
    assert len(sizes) == len(st.log)
    assert sizes == sorted(sizes)


def test_step_growth_bound():
    st = ds.BuilderState(ds.certify(pds(Integers(), [0])))
    for d in Integers().enumerate(16)[1:]:
        prev = len(st.current.elements)
        st = ds.hughes_step(st, d)
        assert len(st.current.elements) - prev in (0, 1, 2)
        assert ds.verify_partial(st.current).ok
        assert d in ds.differences(st.current)


def test_json_roundtrip():
    S = ds.certify(pds(Cyclic(7), [0, 1, 3]))
    obj = S.to_json()
    assert obj == {"group": "cyclic:7", "elements": ["0", "1", "3"],
                   "certified": True}
    back = ds.PartialDifferenceSet.from_json(obj)
    assert back.elements == S.elements and back.group == S.group
