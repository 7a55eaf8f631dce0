"""Hypothesis strategies for small exact matrices."""

from fractions import Fraction

from hypothesis import strategies as st

from geninv.matrix import Matrix
from geninv.sampler import SplitMix64, index_one, random_weight
from geninv.scalar import make

rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))
gaussians = st.builds(lambda a, b, c: make(Fraction(a), Fraction(b)) if c else Fraction(a),
                      rationals, rationals, st.booleans())


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=4, entries=rationals):
    m = draw(st.integers(1, max_dim)) if rows is None else rows
    n = draw(st.integers(1, max_dim)) if cols is None else cols
    return Matrix([[draw(entries) for _ in range(n)] for _ in range(m)])


@st.composite
def square(draw, max_dim=4, entries=rationals):
    n = draw(st.integers(1, max_dim))
    return draw(matrices(rows=n, cols=n, entries=entries))


@st.composite
def index_one_with_weights(draw, max_dim=4, pd=False):
    """(A, M, N): A of index at most one plus Hermitian invertible weights."""
    n = draw(st.integers(1, max_dim))
    rng = SplitMix64(draw(st.integers(0, 2 ** 64 - 1)))
    cplx = draw(st.booleans())
    A, _ = index_one(rng, n, rng.randint(0, n), cplx=cplx)
    mode = "pd" if pd else rng.choice(["pd", "indefinite"])
    return A, random_weight(rng, n, mode, cplx=cplx), random_weight(rng, n, mode, cplx=cplx)
