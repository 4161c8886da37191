from fractions import Fraction

from hypothesis import strategies as st

from vstlab.ring import GaussianRational, LaurentPoly

small_ints = st.integers(-6, 6)
rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
gaussians = st.builds(GaussianRational, rationals, rationals)
nonzero_gaussians = gaussians.filter(lambda z: not z.is_zero())

laurents = st.builds(
    LaurentPoly,
    st.dictionaries(st.integers(-3, 3), small_ints, max_size=4),
)
units = st.builds(
    LaurentPoly.monomial, st.sampled_from([1, -1]), st.integers(-3, 3)
)


def rational_points():
    """Nonzero specialization points avoiding the trivial ones."""
    return st.sampled_from(
        [GaussianRational(3), GaussianRational(5), GaussianRational(Fraction(1, 2)),
         GaussianRational(-2), GaussianRational(Fraction(2, 3), 1)]
    )
