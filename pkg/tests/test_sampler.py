import pytest
from hypothesis import given
from hypothesis import strategies as st

from geninv.core import ind
from geninv.errors import InvalidSpec
from geninv.ids import ROL_IDS, SIGNATURE, TheoremId
from geninv.matrix import Matrix, is_invertible, is_positive_definite, rank
from geninv.sampler import (Kind, SampleSpec, SplitMix64, adapted_weight, derive_seed, index_one,
                            nilpotent_heavy, rational_unitary, rol_hypotheses, sample, sample_instance,
                            sample_rol_pair)
from geninv.weighted import one_3m, one_4n

seeds = st.integers(0, 2 ** 64 - 1)


def test_splitmix64_reference_vectors():
    # published reference outputs for seeds 0 and 1234567
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF
    r = SplitMix64(1234567)
    assert [r.next_u64() for _ in range(5)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423,
        4593380528125082431, 16408922859458223821]


def test_derive_seed_frozen():
    assert derive_seed(0, "T3_7", 2, 0) == 558754648387338958
    assert derive_seed("a") == 14598278634844962250


@given(seeds, st.integers(1, 1000))
def test_below_in_range(seed, n):
    r = SplitMix64(seed)
    assert all(0 <= r.below(n) < n for _ in range(20))


def test_below_rejects_bad_bound():
    with pytest.raises(ValueError):
        SplitMix64(1).below(0)


@given(seeds, st.integers(1, 5), st.data())
def test_index_one_postconditions(seed, n, data):
    r = data.draw(st.integers(0, n))
    rng = SplitMix64(seed)
    A, S = index_one(rng, n, r, cplx=data.draw(st.booleans()))
    assert rank(A) == r and ind(A) <= 1 and is_invertible(S)


@given(seeds, st.integers(1, 4), st.booleans())
def test_structured_kinds(seed, n, cplx):
    H = sample(SampleSpec(n, Kind.HERMITIAN_INVERTIBLE, seed, complex_entries=cplx))
    assert H.is_hermitian() and is_invertible(H)
    P = sample(SampleSpec(n, Kind.POSITIVE_DEFINITE, seed, complex_entries=cplx))
    assert is_positive_definite(P)
    U = rational_unitary(SplitMix64(seed), n, cplx)
    assert U.H @ U == Matrix.identity(n)
    assert is_invertible(sample(SampleSpec(n, Kind.INVERTIBLE, seed)))


@given(seeds, st.integers(2, 5))
def test_nilpotent_heavy_has_index_two_or_more(seed, n):
    assert ind(nilpotent_heavy(SplitMix64(seed), n)) >= 2


@given(seeds, st.integers(3, 5), st.data())
def test_isotropic_weights_empty_the_classes(seed, n, data):
    r = data.draw(st.integers(1, n - 1))
    rng = SplitMix64(seed)
    A, S = index_one(rng, n, r)
    M = adapted_weight(rng, S, r, "isotropic")
    N = adapted_weight(rng, S, r, "dual_isotropic")
    assert M.is_hermitian() and N.is_hermitian()
    assert one_3m(A, M) is None and one_4n(A, N) is None


def test_spec_validation():
    with pytest.raises(InvalidSpec):
        sample(SampleSpec(0, Kind.INVERTIBLE))
    with pytest.raises(InvalidSpec):
        sample(SampleSpec(3, Kind.INDEX_ONE, r=4))
    with pytest.raises(InvalidSpec):
        sample(SampleSpec(3, Kind.INDEX_ONE))


@pytest.mark.parametrize("tid", list(TheoremId))
def test_sample_instance_is_deterministic(tid):
    a = sample_instance(tid, 3, 42)
    b = sample_instance(tid, 3, 42)
    assert a == b
    assert set(SIGNATURE[tid]) <= set(a)


@pytest.mark.parametrize("tid", ROL_IDS)
def test_rol_pairs_meet_hypotheses(tid):
    for seed in range(5):
        A, B, W = sample_rol_pair(tid, 3, seed)
        assert rol_hypotheses(tid, A, B, W)
