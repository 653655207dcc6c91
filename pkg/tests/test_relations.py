from dataclasses import replace

import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import nonzero_rationals, params_over, valid_qracah
from models.errors import FieldMismatch, IndexOutOfRange, InvalidParameters, ParseError
from models.exactfield import FieldSpec
from models.params import vartheta_sequence
from models.relations import (
    commutator_entry_formulas, commutator_span_coefficients, compute_relation_scalars, cubic_relation_holds,
    preset_scalars, recurrence_conditions, split_vartheta, vanishing_products_check,
    verify_tridiagonal_relations,
)
from models.system import build_split_form

QQ_FIELD = FieldSpec.rational()
SCALAR_NAMES = ("beta", "gamma", "gamma_star", "rho", "rho_star")


@st.composite
def perturbed_varphi(draw, min_d=2, max_d=6):
    """A valid q-Racah array and a copy with one varphi entry moved."""
    _, p = draw(valid_qracah(min_d=min_d, max_d=max_d))
    k = draw(st.integers(min_value=0, max_value=p.d - 1))
    varphi = list(p.varphi)
    varphi[k] += p.field(draw(nonzero_rationals))
    assume(not p.field.is_zero(varphi[k]))
    return p, params_over(p.field, p.theta, p.theta_star, varphi, p.phi)


@pytest.fixture
def krawtchouk_like():
    """theta = theta* = (0, 1, 2, 3)."""
    return params_over(QQ_FIELD, [0, 1, 2, 3], [0, 1, 2, 3], [3, 4, 3], [6, 8, 6])


@pytest.fixture
def arithmetic_d2():
    return params_over(QQ_FIELD, [0, 1, 2], [0, 1, 2], [2, 2], [4, 4])


# Scalars

def test_reference_scalars(qracah_reference):
    s = compute_relation_scalars(qracah_reference)
    assert s.unique
    assert s.beta == QQ_FIELD("5/2")
    assert s.gamma == s.gamma_star == QQ_FIELD("3/2")
    assert s.rho == s.rho_star == QQ_FIELD(0)


def test_arithmetic_scalars(krawtchouk_like):
    s = compute_relation_scalars(krawtchouk_like)
    assert (s.beta, s.gamma, s.rho) == (QQ_FIELD(2), QQ_FIELD(0), QQ_FIELD(1))


def test_small_diameter_scalars_are_not_unique(arithmetic_d2):
    s = compute_relation_scalars(arithmetic_d2)
    assert not s.unique
    assert s.beta == QQ_FIELD(-1)
    assert s.gamma == QQ_FIELD(3)
    assert s.rho == QQ_FIELD(-2)
    assert verify_tridiagonal_relations(build_split_form(arithmetic_d2), s).holds


def test_scalars_need_valid_parameters():
    with pytest.raises(InvalidParameters):
        compute_relation_scalars(params_over(QQ_FIELD, [0, 1], [0, 1], [2], [0]))


# Tridiagonal relations

def test_reference_relations_hold(qracah_reference):
    rep = build_split_form(qracah_reference)
    report = verify_tridiagonal_relations(rep, compute_relation_scalars(qracah_reference))
    assert report.holds
    assert report.residual.is_zero() and report.residual_star.is_zero()


@settings(max_examples=25, deadline=None)
@given(data=valid_qracah(max_d=5))
def test_relations_hold_for_qracah_arrays(data):
    _, p = data
    assert verify_tridiagonal_relations(build_split_form(p), compute_relation_scalars(p)).holds


def test_d0_relations_are_trivial():
    p = params_over(QQ_FIELD, [4], [9], [], [])
    assert verify_tridiagonal_relations(build_split_form(p), compute_relation_scalars(p)).holds


@pytest.mark.parametrize("name", ["beta", "gamma", "rho"])
def test_perturbed_scalars_break_the_relation(qracah_reference, name):
    s = compute_relation_scalars(qracah_reference)
    wrong = replace(s, **{name: getattr(s, name) + 1})
    report = verify_tridiagonal_relations(build_split_form(qracah_reference), wrong)
    assert not report.holds
    assert report.nonzero


@settings(max_examples=20, deadline=None)
@given(data=valid_qracah(min_d=3, max_d=6))
def test_each_perturbed_scalar_breaks_a_relation(data):
    _, p = data
    rep = build_split_form(p)
    s = compute_relation_scalars(p)
    for name in SCALAR_NAMES:
        wrong = replace(s, **{name: getattr(s, name) + 1})
        assert not verify_tridiagonal_relations(rep, wrong).holds, name


def test_scalars_from_another_field():
    rep = build_split_form(params_over(QQ_FIELD, [0, 1], [0, 1], [2], [3]))
    with pytest.raises(FieldMismatch):
        verify_tridiagonal_relations(rep, preset_scalars("dolan-grady", FieldSpec.prime(5)))


# Entrywise formulas

def test_entry_formulas_match(qracah_reference):
    s = compute_relation_scalars(qracah_reference)
    table = commutator_entry_formulas(qracah_reference, s.beta, s.gamma, s.rho)
    assert table.all_match
    assert all(e.computed == 0 for e in table.entries)


def test_entry_formulas_track_a_wrong_beta(qracah_reference):
    s = compute_relation_scalars(qracah_reference)
    table = commutator_entry_formulas(qracah_reference, s.beta + 1, s.gamma, s.rho)
    assert table.all_match
    [corner] = table.family("i")
    assert (corner.row, corner.col) == (3, 0)
    assert corner.predicted == QQ_FIELD("15/4")


@settings(max_examples=15, deadline=None)
@given(data=valid_qracah(max_d=5))
def test_entry_formulas_match_for_any_scalars(data):
    _, p = data
    table = commutator_entry_formulas(p, 3, 1, -2)
    assert table.all_match


# Vanishing products and recurrences

def test_vanishing_products_on_reference(qracah_reference):
    report = vanishing_products_check(build_split_form(qracah_reference), qracah_reference)
    assert report.matrix_side and report.recursion_side
    assert report.single_product
    assert not report.vacuous


def test_vanishing_products_agree_off_the_variety(qracah_reference):
    p = qracah_reference
    perturbed = params_over(QQ_FIELD, p.theta, p.theta_star, (p.varphi[0] + 1,) + p.varphi[1:], p.phi)
    report = vanishing_products_check(build_split_form(perturbed, check=False), perturbed)
    assert not report.recursion_side
    assert report.agree


@settings(max_examples=25, deadline=None)
@given(data=perturbed_varphi())
def test_vanishing_products_agree_on_perturbed_arrays(data):
    _, perturbed = data
    report = vanishing_products_check(build_split_form(perturbed, check=False), perturbed)
    assert not report.recursion_side
    assert report.agree


def test_vanishing_products_vacuous_for_small_d(small_params):
    report = vanishing_products_check(build_split_form(small_params), small_params)
    assert report.vacuous and report.agree


@settings(max_examples=20, deadline=None)
@given(data=valid_qracah(max_d=6))
def test_split_vartheta_is_a_multiple_of_the_sums(data):
    _, p = data
    sums = vartheta_sequence(p.theta, p.field)
    assert split_vartheta(p) == tuple(p.phi[0] * v for v in sums)


def test_recurrence_conditions(qracah_reference):
    assert recurrence_conditions(qracah_reference, "5/2").all_hold
    wrong = recurrence_conditions(qracah_reference, 0)
    assert not wrong.theta and not wrong.all_hold


def test_cubic_relation(qracah_reference, krawtchouk_like):
    assert cubic_relation_holds(qracah_reference, "5/2")
    assert cubic_relation_holds(krawtchouk_like, 2)
    assert not cubic_relation_holds(qracah_reference, 0)


@settings(max_examples=25, deadline=None)
@given(data=perturbed_varphi(min_d=3), shift=st.sampled_from([0, 1]))
def test_recurrences_match_the_cubic_relation(data, shift):
    p, perturbed = data
    beta = compute_relation_scalars(p).beta + shift
    for arr in (p, perturbed):
        assert recurrence_conditions(arr, beta).all_hold == cubic_relation_holds(arr, beta)
    assert cubic_relation_holds(p, beta) == (shift == 0)


# Span of the commutators

def test_span_coefficients_recover_scalars(qracah_reference):
    span = commutator_span_coefficients(build_split_form(qracah_reference))
    s = compute_relation_scalars(qracah_reference)
    assert (span.beta, span.gamma, span.rho) == (s.beta, s.gamma, s.rho)


@settings(max_examples=15, deadline=None)
@given(data=valid_qracah(min_d=3, max_d=6))
def test_span_coefficients_for_qracah_arrays(data):
    _, p = data
    span = commutator_span_coefficients(build_split_form(p))
    s = compute_relation_scalars(p)
    assert (span.beta, span.gamma, span.rho) == (s.beta, s.gamma, s.rho)
    assert len(span.alpha) == p.d
    assert all(a == 0 for a in span.alpha[3:])


def test_span_coefficients_need_positive_d():
    with pytest.raises(IndexOutOfRange):
        commutator_span_coefficients(build_split_form(params_over(QQ_FIELD, [4], [9], [], [])))


# Presets

def test_presets():
    serre = preset_scalars("q-serre", QQ_FIELD, "2")
    assert serre.beta == QQ_FIELD("17/4")
    assert serre.gamma == serre.rho == QQ_FIELD(0)
    dolan_grady = preset_scalars("dolan-grady", QQ_FIELD)
    assert (dolan_grady.beta, dolan_grady.rho, dolan_grady.rho_star) == (QQ_FIELD(2), QQ_FIELD(16), QQ_FIELD(16))


def test_preset_errors():
    with pytest.raises(ParseError):
        preset_scalars("q-serre", QQ_FIELD)
    with pytest.raises(ParseError):
        preset_scalars("askey-wilson", QQ_FIELD)
