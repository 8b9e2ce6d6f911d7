from __future__ import annotations

import sys
from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from algebraic_sho.exponentials import AffineForm
from algebraic_sho.operators import FockKetExpansion, OperatorPoly
from algebraic_sho.scalars import FieldScalar, ScalarPoly

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)

field_scalars = st.builds(FieldScalar, rationals, rationals, rationals, rationals)
nonzero_field_scalars = field_scalars.filter(bool)

scalar_polys = st.lists(field_scalars, max_size=4).map(ScalarPoly)

# complex rationals with real and imaginary parts in [-1/2, 1/2]
small_field_scalars = st.builds(
    FieldScalar,
    st.fractions(min_value=Fraction(-1, 2), max_value=Fraction(1, 2), max_denominator=8),
    st.fractions(min_value=Fraction(-1, 2), max_value=Fraction(1, 2), max_denominator=8),
)


def operators(max_degree: int = 3, max_terms: int = 4, coefficients=field_scalars):
    @st.composite
    def build(draw):
        out = OperatorPoly()
        for _ in range(draw(st.integers(0, max_terms))):
            r = draw(st.integers(0, max_degree))
            s = draw(st.integers(0, max_degree - r))
            out = out + OperatorPoly.word(r, s, draw(coefficients))
        return out

    return build()


affine_forms = st.builds(AffineForm, field_scalars, field_scalars, field_scalars)
xi_affine_forms = st.builds(AffineForm, scalar_polys, scalar_polys, scalar_polys)

kets = st.dictionaries(st.integers(0, 8), field_scalars, max_size=5).map(FockKetExpansion)

generator_words = st.lists(st.sampled_from(["a", "ad"]), min_size=1, max_size=10)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
