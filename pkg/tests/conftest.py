from fractions import Fraction

import pytest
from hypothesis import assume, strategies as st

from models.exactfield import FieldSpec, Matrix
from models.params import ParameterData, QRacahInput, qracah_params, validate_parameter_array

QQ_FIELD = FieldSpec.rational()


def params_over(field, theta, theta_star, varphi, phi) -> ParameterData:
    return ParameterData.from_sequences(field, theta, theta_star, varphi, phi)


@pytest.fixture
def rational():
    return QQ_FIELD


@pytest.fixture
def small_params():
    """d = 1: theta = theta* = (0, 1), varphi = (2), phi = (3)."""
    return params_over(QQ_FIELD, [0, 1], [0, 1], [2], [3])


@pytest.fixture
def qracah_reference_input():
    return QRacahInput(QQ_FIELD, 3, q=2, h=1, h_star=1, r1=-1, r2=-16, s=1, s_star=1)


@pytest.fixture
def qracah_reference(qracah_reference_input):
    return qracah_params(qracah_reference_input)


@pytest.fixture
def krawtchouk_pair():
    A = Matrix.from_rows(QQ_FIELD, [[0, 3, 0, 0], [1, 0, 2, 0], [0, 2, 0, 1], [0, 0, 3, 0]])
    A_star = Matrix.diagonal(QQ_FIELD, [3, 1, -1, -3])
    return A, A_star


@pytest.fixture
def krawtchouk_transition():
    return Matrix.from_rows(QQ_FIELD, [[1, 3, 3, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -3, 3, -1]])


# Strategies

small_rationals = st.builds(
    Fraction,
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=1, max_value=4),
)
nonzero_rationals = small_rationals.filter(lambda v: v != 0)
q_values = st.sampled_from([Fraction(2), Fraction(3), Fraction(-2), Fraction(1, 2), Fraction(3, 2), Fraction(-3)])

fields = st.sampled_from([QQ_FIELD, FieldSpec.prime(2), FieldSpec.prime(5), FieldSpec.prime(7)])


def elements_of(field):
    if field.characteristic:
        return st.integers(min_value=0, max_value=field.modulus - 1).map(field)
    return small_rationals.map(field)


def square_matrices(field, n):
    row = st.lists(elements_of(field), min_size=n, max_size=n)
    return st.lists(row, min_size=n, max_size=n).map(lambda rows: Matrix.from_rows(field, rows))


@st.composite
def qracah_inputs(draw, min_d=1, max_d=5):
    """Admissible q-Racah data: r2 is forced by r1 r2 = s s* q^(d+1)."""
    d = draw(st.integers(min_value=min_d, max_value=max_d))
    q = draw(q_values)
    h, h_star, s, s_star, r1 = (draw(nonzero_rationals) for _ in range(5))
    r2 = s * s_star * q ** (d + 1) / r1
    inp = QRacahInput(QQ_FIELD, d, q=q, h=h, h_star=h_star, r1=r1, r2=r2, s=s, s_star=s_star,
                      theta0=draw(small_rationals), theta_star0=draw(small_rationals))
    return inp


@st.composite
def valid_qracah(draw, min_d=1, max_d=5):
    inp = draw(qracah_inputs(min_d=min_d, max_d=max_d))
    p = qracah_params(inp)
    assume(validate_parameter_array(p).valid)
    return inp, p
