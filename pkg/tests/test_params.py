from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import params_over, valid_qracah
from models.errors import (
    ConstraintViolated, DegenerateDenominator, IndexOutOfRange, InconsistentSequence, NoQInField,
    ParseError, SizeMismatch,
)
from models.exactfield import FieldSpec
from models.params import (
    ClosedFormCase, ConditionStatus, D4Element, D4_LABELS, ParameterData, QRacahInput, RecurrenceKind,
    classify_recurrence, d4_elements, d4_transform, fit_closed_form, is_beta_recurrent, phi_from_varphi,
    qracah_params, validate_parameter_array, vartheta_converse_check, vartheta_closed_form,
    vartheta_from_recursion, vartheta_identity_residuals, vartheta_recursion_residuals, vartheta_sequence,
    vartheta_sum,
)

QQ_FIELD = FieldSpec.rational()
GF2 = FieldSpec.prime(2)


def values(field, seq):
    return tuple(field(v) for v in seq)


# Parameter data

def test_sequence_lengths_are_checked():
    with pytest.raises(SizeMismatch):
        ParameterData(QQ_FIELD, 1, (0, 1), (0, 1), (2,), ())
    with pytest.raises(SizeMismatch):
        ParameterData(QQ_FIELD, -1, (), (), (), ())


def test_sentinels(small_params):
    assert small_params.varphi_at(0) == 0
    assert small_params.varphi_at(2) == 0
    assert small_params.phi_at(1) == QQ_FIELD(3)


# Validation

def test_small_example_is_valid(small_params):
    report = validate_parameter_array(small_params)
    assert report.valid
    assert report.condition("v").status is ConditionStatus.vacuous
    assert report.condition("iii").status is ConditionStatus.passed


def test_zero_phi_fails_first_condition():
    report = validate_parameter_array(params_over(QQ_FIELD, [0, 1], [0, 1], [2], [0]))
    assert not report.valid
    failed = [c.name for c in report.conditions if c.status is ConditionStatus.failed]
    assert "i" in failed
    assert report.condition("i").indices == (1,)


def test_repeated_eigenvalue_fails_distinctness():
    report = validate_parameter_array(params_over(QQ_FIELD, [0, 0], [0, 1], [2], [3]))
    assert report.condition("ii").status is ConditionStatus.failed


def test_d0_is_vacuously_valid():
    report = validate_parameter_array(params_over(QQ_FIELD, [5], [7], [], []))
    assert report.valid
    assert all(c.status is ConditionStatus.vacuous for c in report.conditions)


def test_qracah_reference(qracah_reference):
    assert qracah_reference.theta == values(QQ_FIELD, [0, "3/2", "21/4", "105/8"])
    report = validate_parameter_array(qracah_reference)
    assert report.valid
    assert report.common_value == QQ_FIELD("7/2")


def test_qracah_small_values():
    p = qracah_params(QRacahInput(QQ_FIELD, 1, q=2, h=1, h_star=1, r1=-1, r2=-4, s=1, s_star=1))
    assert p.varphi == (QQ_FIELD("-27/4"),)
    assert p.phi == (QQ_FIELD("-9/2"),)
    assert validate_parameter_array(p).valid


def test_qracah_constraint():
    with pytest.raises(ConstraintViolated):
        qracah_params(QRacahInput(QQ_FIELD, 3, q=2, h=1, h_star=1, r1=-1, r2=-15, s=1, s_star=1))


def test_broken_common_ratio_is_reported(qracah_reference):
    theta = list(qracah_reference.theta)
    theta[3] += 1
    p = ParameterData(QQ_FIELD, 3, tuple(theta), qracah_reference.theta_star,
                      qracah_reference.varphi, qracah_reference.phi)
    report = validate_parameter_array(p)
    assert report.condition("v").status is ConditionStatus.failed
    assert report.common_value is None


@settings(max_examples=40, deadline=None)
@given(data=valid_qracah(min_d=3, max_d=6))
def test_qracah_common_value(data):
    inp, p = data
    report = validate_parameter_array(p)
    assert report.common_value == inp.q + QQ_FIELD.inv(inp.q) + 1


# Vartheta sums

def test_vartheta_ends_and_symmetry(qracah_reference):
    vt = vartheta_sequence(qracah_reference.theta, QQ_FIELD)
    d = qracah_reference.d
    assert vt[0] == 0 and vt[1] == 1 and vt[d] == 1 and vt[d + 1] == 0
    assert all(vt[i] == vt[d - i + 1] for i in range(d + 2))


def test_vartheta_arithmetic_case():
    theta = [3 - 2 * i for i in range(5)]
    assert vartheta_sum(values(QQ_FIELD, theta), 2, QQ_FIELD) == QQ_FIELD("3/2")


def test_vartheta_index_and_denominator_errors():
    with pytest.raises(IndexOutOfRange):
        vartheta_sum(values(QQ_FIELD, [0, 1]), 3, QQ_FIELD)
    with pytest.raises(DegenerateDenominator):
        vartheta_sum(values(QQ_FIELD, [1, 0, 1]), 1, QQ_FIELD)


def test_vartheta_d0_convention():
    assert vartheta_sequence(values(QQ_FIELD, [4]), QQ_FIELD) == (QQ_FIELD(0), QQ_FIELD(1))


@settings(max_examples=30, deadline=None)
@given(data=valid_qracah(min_d=2, max_d=6))
def test_vartheta_recursions_and_identities(data):
    _, p = data
    forward, backward = vartheta_recursion_residuals(p.theta, QQ_FIELD)
    assert all(r == 0 for r in forward + backward)
    assert all(r == 0 for _, r in vartheta_identity_residuals(p.theta, QQ_FIELD))
    vt = vartheta_sequence(p.theta, QQ_FIELD)
    scaled = vartheta_from_recursion(p.theta, 3, QQ_FIELD)
    assert scaled == tuple(3 * v for v in vt)
    beta = validate_parameter_array(p).common_value - 1 if p.d >= 3 else None
    if beta is not None:
        assert is_beta_recurrent(vt, beta, QQ_FIELD)


def test_vartheta_converse(qracah_reference):
    theta = qracah_reference.theta
    vt = vartheta_sequence(theta, QQ_FIELD)
    beta = QQ_FIELD("5/2")
    assert vartheta_converse_check(theta, [2 * v for v in vt], beta, QQ_FIELD) is True
    assert vartheta_converse_check(theta, [1] + [0] * 4, beta, QQ_FIELD) is None


# Recurrences

def test_arithmetic_sequence_is_recurrent():
    rc = classify_recurrence(values(QQ_FIELD, range(5)), QQ_FIELD)
    assert rc.kind is RecurrenceKind.recurrent
    assert rc.beta == QQ_FIELD(2)
    assert rc.gamma == QQ_FIELD(0)
    assert rc.rho == QQ_FIELD(1)


def test_geometric_sequence_is_recurrent():
    rc = classify_recurrence(values(QQ_FIELD, [1, 2, 4, 8, 16]), QQ_FIELD)
    assert rc.kind is RecurrenceKind.recurrent
    assert rc.common_ratio == QQ_FIELD("7/2")
    assert rc.beta == QQ_FIELD("5/2")
    assert rc.gamma == 0 and rc.rho == 0


def test_constant_sequence_witnesses():
    rc = classify_recurrence(values(QQ_FIELD, [1, 1, 1, 1, 1]), QQ_FIELD)
    assert not rc.satisfies(RecurrenceKind.recurrent)
    assert rc.kind is RecurrenceKind.beta_recurrent
    gamma_witness = rc.witness(RecurrenceKind.beta_gamma_recurrent)
    assert gamma_witness.beta == 2 and gamma_witness.gamma == 0
    rho_witness = rc.witness(RecurrenceKind.beta_gamma_rho_recurrent)
    assert rho_witness.rho == 0


def test_irregular_sequence_is_not_recurrent():
    rc = classify_recurrence(values(QQ_FIELD, [0, 1, 5, 2, 9, 4]), QQ_FIELD)
    assert rc.kind is RecurrenceKind.none
    assert rc.beta is None


def test_classify_rejects_empty():
    with pytest.raises(SizeMismatch):
        classify_recurrence((), QQ_FIELD)


@settings(max_examples=25, deadline=None)
@given(data=valid_qracah(min_d=3, max_d=7))
def test_common_value_is_beta_plus_one(data):
    _, p = data
    report = validate_parameter_array(p)
    for seq in (p.theta, p.theta_star):
        rc = classify_recurrence(seq, QQ_FIELD)
        assert rc.kind is RecurrenceKind.recurrent
        assert rc.beta + 1 == report.common_value


# Closed forms

def test_fit_arithmetic_progression():
    fit = fit_closed_form(values(QQ_FIELD, [0, 1, 2, 3]), 2, QQ_FIELD)
    assert fit.case is ClosedFormCase.polynomial
    assert fit.alpha == values(QQ_FIELD, [0, 1, 0])


def test_fit_q_power():
    seq = [Fraction((1 - 2 ** i) * (1 - 2 ** (i + 1)), 2 ** i) for i in range(4)]
    fit = fit_closed_form(values(QQ_FIELD, seq), "5/2", QQ_FIELD)
    assert fit.case is ClosedFormCase.q_power
    assert fit.q == QQ_FIELD(2)
    assert fit.alpha == values(QQ_FIELD, [-3, 2, 1])
    assert fit.distinctness_holds(3)


def test_fit_binomial_in_characteristic_two():
    fit = fit_closed_form(values(GF2, [0, 1, 1, 0]), 0, GF2)
    assert fit.case is ClosedFormCase.binomial
    assert fit.alpha == values(GF2, [0, 1, 1])


def test_fit_inconsistent():
    with pytest.raises(InconsistentSequence):
        fit_closed_form(values(QQ_FIELD, [0, 1, 2, 4]), 2, QQ_FIELD)


def test_fit_without_root_needs_extension():
    seq = values(QQ_FIELD, [2, -1, -1, 2])
    with pytest.raises(NoQInField):
        fit_closed_form(seq, -1, QQ_FIELD, allow_extension=False)
    fit = fit_closed_form(seq, -1, QQ_FIELD)
    assert fit.in_extension
    assert [fit.value(i) for i in range(4)] == list(seq)


@pytest.mark.parametrize("field, theta, beta", [
    (QQ_FIELD, [3, 1, -1, -3, -5], 2),
    (QQ_FIELD, [1, 2, 4, 8, 16, 32], "5/2"),
    (QQ_FIELD, [0, -1, 2, -3, 4], -2),
    (QQ_FIELD, [0, -1, 2, -3, 4, -5], -2),
    (GF2, [0, 0, 1, 1], 0),
])
def test_vartheta_closed_forms(field, theta, beta):
    theta = values(field, theta)
    fit = fit_closed_form(theta, beta, field)
    assert vartheta_closed_form(fit, len(theta) - 1) == vartheta_sequence(theta, field)


def test_vartheta_closed_form_in_extension():
    # theta_i = q^i + q^-i with q^2 = q - 1 (beta = 1) is periodic with period 6.
    theta = values(QQ_FIELD, [2, 1, -1, -2])
    fit = fit_closed_form(theta, 1, QQ_FIELD)
    assert fit.in_extension
    assert vartheta_closed_form(fit, 3) == vartheta_sequence(theta, QQ_FIELD)


def test_vartheta_closed_form_needs_d3():
    fit = fit_closed_form(values(QQ_FIELD, [0, 1, 2]), 2, QQ_FIELD)
    with pytest.raises(IndexOutOfRange):
        vartheta_closed_form(fit, 2)


def test_binomial_distinctness_limit():
    fit = fit_closed_form(values(GF2, [0, 1, 1, 0]), 0, GF2)
    assert fit.distinctness_holds(3)
    assert not fit.distinctness_holds(4)


# D4 action

def test_labels_round_trip():
    assert [g.label for g in d4_elements()] == list(D4_LABELS)
    assert len(set(d4_elements())) == 8


def test_unicode_labels():
    assert D4Element.from_label("↓⇓*") == D4Element.from_label("dD*")


def test_unknown_generator():
    with pytest.raises(ParseError):
        D4Element.from_label("dx")


def test_generators_are_involutions():
    identity = D4Element.identity()
    for label in ("d", "D", "*"):
        g = D4Element.from_label(label)
        assert g * g == identity


def test_down_arrow_on_small_example(small_params):
    p = d4_transform(small_params, D4Element.from_label("d"))
    assert p.theta == small_params.theta
    assert p.theta_star == values(QQ_FIELD, [1, 0])
    assert p.varphi == (QQ_FIELD(3),)
    assert p.phi == (QQ_FIELD(2),)


def test_star_swaps_sequences(qracah_reference):
    p = d4_transform(qracah_reference, D4Element.from_label("*"))
    assert p.theta == qracah_reference.theta_star
    assert p.theta_star == qracah_reference.theta
    assert p.varphi == qracah_reference.varphi
    assert p.phi == tuple(reversed(qracah_reference.phi))
    assert d4_transform(p, D4Element.from_label("*")) == qracah_reference


def test_group_law(qracah_reference):
    for g in d4_elements():
        assert g * g.inverse() == D4Element.identity()
        for h in d4_elements():
            once = d4_transform(d4_transform(qracah_reference, g), h)
            assert once == d4_transform(qracah_reference, h * g)


@settings(max_examples=20, deadline=None)
@given(data=valid_qracah(max_d=5))
def test_relatives_stay_valid(data):
    _, p = data
    for g in d4_elements():
        assert validate_parameter_array(d4_transform(p, g)).valid


# phi from varphi

def test_phi_from_varphi_small():
    assert phi_from_varphi(QQ_FIELD, values(QQ_FIELD, [0, 1]), values(QQ_FIELD, [0, 1]), [2]) == (QQ_FIELD(3),)


def test_palindromic_theta_keeps_varphi():
    theta = values(QQ_FIELD, [1, 0, 1])
    varphi = values(QQ_FIELD, [5, 7])
    assert phi_from_varphi(QQ_FIELD, theta, values(QQ_FIELD, [0, 1, 2]), varphi) == varphi
