from dataclasses import replace

import pytest
from hypothesis import given, settings

from conftest import params_over, valid_qracah
from models.errors import InconsistentData, IndexOutOfRange, InvalidParameters
from models.exactfield import FieldSpec, Poly
from models.params import QRacahInput, qracah_params
from models.polys import (
    build_poly_bundle, duality_table, matrix_identity_residuals, orthogonality_check, qracah_cross_check,
    qracah_u_table, qracah_u_value, recurrence_data, recurrence_residuals,
)
from models.system import build_split_form

QQ_FIELD = FieldSpec.rational()


def values(*entries):
    return tuple(QQ_FIELD(v) for v in entries)


@pytest.fixture
def qracah_d1():
    return QRacahInput(QQ_FIELD, 1, q=2, h=1, h_star=1, r1=-1, r2=-4, s=1, s_star=1)


# d = 1 by hand

def test_small_bundle(small_params):
    bundle = build_poly_bundle(small_params)
    assert bundle.p[1] == Poly(QQ_FIELD, (2, 1))
    assert bundle.p[2] == Poly.from_roots(QQ_FIELD, [0, 1])
    assert bundle.u[0] == Poly.constant(QQ_FIELD, 1)
    assert bundle.u[1] == Poly(QQ_FIELD, (1, "1/2"))
    assert bundle.u[1](1) == bundle.u_star[1](1) == QQ_FIELD("3/2")


def test_small_recurrence_data(small_params):
    rec = recurrence_data(build_split_form(small_params), small_params)
    assert rec.a == values(-2, 3)
    assert rec.b == values(2)
    assert rec.c == values(-3)
    assert rec.x == values(-6)
    assert rec.n == QQ_FIELD("1/3")
    assert rec.k == values(1, "-2/3")
    assert rec.m[0] == rec.m_star[0] == QQ_FIELD(3)


def test_bundle_needs_valid_parameters():
    with pytest.raises(InvalidParameters) as excinfo:
        build_poly_bundle(params_over(QQ_FIELD, [0, 1], [0, 1], [2], [0]))
    assert excinfo.value.field == QQ_FIELD


def test_recurrence_data_rejects_a_foreign_system(small_params, qracah_reference):
    with pytest.raises(InconsistentData):
        recurrence_data(build_split_form(small_params), qracah_reference)


# Reference array

def test_last_polynomial_vanishes_on_the_eigenvalues(qracah_reference):
    bundle = build_poly_bundle(qracah_reference)
    d = qracah_reference.d
    assert all(bundle.p[d + 1](t) == 0 for t in qracah_reference.theta)
    assert all(bundle.p_star[d + 1](t) == 0 for t in qracah_reference.theta_star)
    assert all(bundle.p[i].degree == i and bundle.p[i].leading == 1 for i in range(d + 2))


def test_reference_identities(qracah_reference):
    params = qracah_reference
    rep = build_split_form(params)
    bundle = build_poly_bundle(params)
    rec = recurrence_data(rep, params)
    assert orthogonality_check(bundle, rec, params).ok
    assert recurrence_residuals(bundle, rec, params).ok
    assert duality_table(bundle, params).symmetric
    assert matrix_identity_residuals(bundle, rep).ok
    assert rec.n == QQ_FIELD.sum(rec.k)


@settings(max_examples=15, deadline=None)
@given(data=valid_qracah(max_d=5))
def test_identities_for_qracah_arrays(data):
    _, params = data
    rep = build_split_form(params)
    bundle = build_poly_bundle(params)
    rec = recurrence_data(rep, params)
    assert orthogonality_check(bundle, rec, params).ok
    assert recurrence_residuals(bundle, rec, params).ok
    assert duality_table(bundle, params).symmetric
    assert matrix_identity_residuals(bundle, rep).ok


def test_matrix_identities_catch_a_wrong_bundle(small_params):
    rep = build_split_form(small_params)
    other = build_poly_bundle(params_over(QQ_FIELD, [0, 2], [0, 1], [4], [6]))
    assert not matrix_identity_residuals(other, rep).ok
    assert matrix_identity_residuals(build_poly_bundle(small_params), rep).ok


def test_d0_bundle():
    params = params_over(QQ_FIELD, [4], [9], [], [])
    bundle = build_poly_bundle(params)
    assert bundle.u == (Poly.constant(QQ_FIELD, 1),)
    assert bundle.p[1] == Poly.from_roots(QQ_FIELD, [4])
    rec = recurrence_data(build_split_form(params), params)
    assert rec.n == QQ_FIELD(1)
    assert orthogonality_check(bundle, rec, params).ok


# q-Racah 4phi3 values

def test_qracah_d1_value(qracah_d1):
    params = qracah_params(qracah_d1)
    assert params.varphi == values("-27/4")
    assert params.phi == values("-9/2")
    assert build_poly_bundle(params).u[1](params.theta[1]) == QQ_FIELD("2/3")
    assert qracah_u_value(qracah_d1, 1, 1) == QQ_FIELD("2/3")


def test_qracah_first_row_is_one(qracah_reference_input):
    assert qracah_u_table(qracah_reference_input)[0] == [QQ_FIELD(1)] * 4


def test_qracah_index_range(qracah_reference_input):
    with pytest.raises(IndexOutOfRange):
        qracah_u_value(qracah_reference_input, 4, 0)
    with pytest.raises(IndexOutOfRange):
        qracah_u_value(qracah_reference_input, 0, -1)


def test_qracah_cross_check_reference(qracah_reference_input):
    assert qracah_cross_check(qracah_reference_input)


@settings(max_examples=15, deadline=None)
@given(data=valid_qracah(max_d=4))
def test_qracah_values_are_symmetric_under_duality(data):
    inp, _ = data
    dual = replace(inp, h=inp.h_star, h_star=inp.h, s=inp.s_star, s_star=inp.s,
                   theta0=inp.theta_star0, theta_star0=inp.theta0)
    for i in range(inp.d + 1):
        for j in range(inp.d + 1):
            assert qracah_u_value(inp, i, j) == qracah_u_value(dual, j, i)


@settings(max_examples=15, deadline=None)
@given(data=valid_qracah(max_d=4))
def test_qracah_cross_check(data):
    inp, _ = data
    assert qracah_cross_check(inp)
