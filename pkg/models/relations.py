"""The tridiagonal relations satisfied by a Leonard pair and the checks around them."""
import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

from models.errors import FieldMismatch, IndexOutOfRange, InvalidParameters, ParseError
from models.exactfield import FieldSpec, Matrix, solve_linear
from models.params import (
    ParameterData, RecurrenceKind, classify_recurrence, is_beta_recurrent, rho_values,
    validate_parameter_array,
)
from models.system import LeonardSystemRep, build_split_form

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RelationScalars:
    field: FieldSpec
    beta: Any
    gamma: Any
    gamma_star: Any
    rho: Any
    rho_star: Any
    unique: bool


def _gamma_rho(seq, beta, field: FieldSpec):
    d = len(seq) - 1
    if d >= 2:
        gamma = seq[0] - beta * seq[1] + seq[2]
    else:
        gamma = field.zero
    rho = rho_values(seq, beta, gamma, field)[0] if d >= 1 else field.zero
    return gamma, rho


def compute_relation_scalars(p: ParameterData) -> RelationScalars:
    report = validate_parameter_array(p)
    if not report.valid:
        raise InvalidParameters("parameter array fails validation", report, p.field)
    field = p.field
    if p.d >= 3:
        beta = report.common_value - field.one
        unique = True
    else:
        beta = -field.one
        unique = False
    gamma, rho = _gamma_rho(p.theta, beta, field)
    gamma_star, rho_star = _gamma_rho(p.theta_star, beta, field)
    return RelationScalars(field, beta, gamma, gamma_star, rho, rho_star, unique)


def preset_scalars(preset: str, field: FieldSpec, q=None) -> RelationScalars:
    """q-Serre (beta = q^2 + q^-2, the rest 0) or Dolan-Grady (beta = 2, rho = rho* = 16)."""
    if preset == "q-serre":
        if q is None:
            raise ParseError("the q-serre preset needs a value for q")
        q = field(q)
        beta = field.power(q, 2) + field.power(q, -2)
        zero = field.zero
        return RelationScalars(field, beta, zero, zero, zero, zero, False)
    if preset == "dolan-grady":
        return RelationScalars(field, field(2), field.zero, field.zero, field(16), field(16), False)
    raise ParseError(f"unknown preset {preset!r}")


# Commutators

def _commutator(X: Matrix, Y: Matrix) -> Matrix:
    return X @ Y - Y @ X


def _cubic(X: Matrix, Y: Matrix, beta, gamma, rho) -> Matrix:
    """X^2 Y - beta X Y X + Y X^2 - gamma (X Y + Y X) - rho Y."""
    XY, YX = X @ Y, Y @ X
    return (X @ XY) - (XY @ X).scale(beta) + (YX @ X) - (XY + YX).scale(gamma) - Y.scale(rho)


@dataclass(frozen=True)
class CommutatorReport:
    residual: Matrix
    residual_star: Matrix
    nonzero: Tuple[Tuple[int, int], ...]
    nonzero_star: Tuple[Tuple[int, int], ...]

    @property
    def holds(self) -> bool:
        return not self.nonzero and not self.nonzero_star


def relation_residual(A: Matrix, A_star: Matrix, beta, gamma, rho) -> Matrix:
    return _commutator(A, _cubic(A, A_star, beta, gamma, rho))


def verify_tridiagonal_relations(rep: LeonardSystemRep, s: RelationScalars) -> CommutatorReport:
    if rep.field != s.field:
        raise FieldMismatch(f"system over {rep.field}, scalars over {s.field}")
    residual = relation_residual(rep.A, rep.A_star, s.beta, s.gamma, s.rho)
    residual_star = relation_residual(rep.A_star, rep.A, s.beta, s.gamma_star, s.rho_star)
    report = CommutatorReport(
        residual, residual_star,
        tuple(residual.nonzero_entries()), tuple(residual_star.nonzero_entries()),
    )
    logger.debug("tridiagonal relations hold: %s", report.holds)
    return report


def split_vartheta(p: ParameterData) -> Tuple[Any, ...]:
    """vartheta_i = varphi_i - (ts_i - ts_0)(t_{i-1} - t_d), zero at 0 and d+1."""
    field, d, t, ts = p.field, p.d, p.theta, p.theta_star
    values = [field.zero]
    for i in range(1, d + 1):
        values.append(p.varphi_at(i) - (ts[i] - ts[0]) * (t[i - 1] - t[d]))
    values.append(field.zero)
    return tuple(values)


@dataclass(frozen=True)
class EntryFormula:
    family: str
    index: int
    row: int
    col: int
    predicted: Any
    computed: Any

    @property
    def matches(self) -> bool:
        return self.predicted == self.computed


@dataclass(frozen=True)
class EntryTable:
    entries: Tuple[EntryFormula, ...]
    stray: Tuple[Tuple[int, int], ...]

    @property
    def all_match(self) -> bool:
        return not self.stray and all(e.matches for e in self.entries)

    def family(self, name: str) -> List[EntryFormula]:
        return [e for e in self.entries if e.family == name]


def commutator_entry_formulas(p: ParameterData, beta, gamma, rho) -> EntryTable:
    """Entries of [A, A^2 A* - beta A A* A + A* A^2 - gamma(AA* + A*A) - rho A*]
    on the split pair, predicted from the sequences and compared with the
    directly computed commutator.
    """
    field, d = p.field, p.d
    beta, gamma, rho = field(beta), field(gamma), field(rho)
    rep = build_split_form(p, check=False)
    computed = relation_residual(rep.A, rep.A_star, beta, gamma, rho)
    vt = split_vartheta(p)
    b1 = beta + field.one

    # Out-of-range terms only ever meet a zero coefficient.
    def t(i):
        return p.theta[i] if 0 <= i <= d else field.zero

    def ts(i):
        return p.theta_star[i] if 0 <= i <= d else field.zero

    def phi(i):
        return p.varphi_at(i) if 0 <= i <= d + 1 else field.zero

    def quad(i):
        return t(i - 1) ** 2 - beta * t(i - 1) * t(i) + t(i) ** 2 - gamma * (t(i - 1) + t(i)) - rho

    def lin(i):
        return t(i - 1) - beta * t(i) + t(i + 1) - gamma

    entries = []

    def add(family, i, row, col, value):
        entries.append(EntryFormula(family, i, row, col, value, computed[row, col]))

    for i in range(2, d):
        add("i", i, i + 1, i - 2, ts(i - 2) - b1 * ts(i - 1) + b1 * ts(i) - ts(i + 1))
    for i in range(2, d + 1):
        add("ii", i, i, i - 2,
            vt[i - 2] - b1 * vt[i - 1] + b1 * vt[i] - vt[i + 1]
            + (ts(i - 2) - ts(0)) * (t(i - 3) - b1 * t(i - 2) + b1 * t(i - 1) - t(i))
            + (t(i) - t(d)) * (ts(i - 2) - b1 * ts(i - 1) + b1 * ts(i) - ts(i + 1))
            + (ts(i - 2) - ts(i)) * (t(i - 2) - beta * t(i - 1) + t(i) - gamma))
    for i in range(1, d + 1):
        add("iii", i, i, i - 1,
            phi(i - 1) * lin(i - 1) - phi(i + 1) * lin(i) + (ts(i - 1) - ts(i)) * quad(i))
    for i in range(0, d + 1):
        add("iv", i, i, i, phi(i) * quad(i) - phi(i + 1) * quad(i + 1))
    for i in range(1, d + 1):
        add("v", i, i - 1, i, phi(i) * (t(i - 1) - t(i)) * quad(i))

    covered = {(e.row, e.col) for e in entries}
    stray = tuple(pos for pos in computed.nonzero_entries() if pos not in covered)
    return EntryTable(tuple(entries), stray)


# Vanishing products

@dataclass(frozen=True)
class VanishingReport:
    matrix_side: bool
    recursion_side: bool
    recursion_residuals: Tuple[Any, ...]
    single_product: bool
    vacuous: bool

    @property
    def agree(self) -> bool:
        return self.matrix_side == self.recursion_side


def vanishing_products_check(rep: LeonardSystemRep, p: ParameterData) -> VanishingReport:
    """E_d A* E_i = 0 for i <= d-2 against the vartheta recursion."""
    field, d = p.field, p.d
    if d <= 1:
        return VanishingReport(True, True, (), True, True)
    t = p.theta
    vt = split_vartheta(p)
    residuals = tuple(
        vt[i + 1] - vt[i] * field.div(t[i] - t[d - 1], t[i - 1] - t[d]) - vt[1]
        for i in range(1, d)
    )
    E_d = rep.E[d]
    matrix_side = all((E_d @ rep.A_star @ rep.E[i]).is_zero() for i in range(d - 1))
    a_star_d = (rep.A_star @ E_d).trace()
    single = (E_d @ rep.A_star.shift(a_star_d) @ rep.A.shift(t[d - 1])).is_zero()
    return VanishingReport(
        matrix_side=matrix_side,
        recursion_side=all(field.is_zero(r) for r in residuals),
        recursion_residuals=residuals,
        single_product=single,
        vacuous=False,
    )


@dataclass(frozen=True)
class RecurrenceConditions:
    theta: bool
    theta_star: bool
    vartheta: bool

    @property
    def all_hold(self) -> bool:
        return self.theta and self.theta_star and self.vartheta


def recurrence_conditions(p: ParameterData, beta) -> RecurrenceConditions:
    field = p.field
    return RecurrenceConditions(
        theta=is_beta_recurrent(p.theta, beta, field),
        theta_star=is_beta_recurrent(p.theta_star, beta, field),
        vartheta=is_beta_recurrent(split_vartheta(p), beta, field),
    )


def cubic_relation_holds(p: ParameterData, beta) -> bool:
    """Relation on the split pair with gamma and rho read off theta."""
    field = p.field
    beta = field(beta)
    classified = classify_recurrence(p.theta, field, beta)
    witness = classified.witness(RecurrenceKind.beta_gamma_rho_recurrent)
    if witness is None:
        return False
    gamma = witness.gamma if witness.gamma is not None else field.zero
    if witness.rho is not None:
        rho = witness.rho
    else:
        rho = rho_values(p.theta, beta, gamma, field)[0] if p.d >= 1 else field.zero
    rep = build_split_form(p, check=False)
    return relation_residual(rep.A, rep.A_star, beta, gamma, rho).is_zero()


@dataclass(frozen=True)
class SpanCoefficients:
    alpha: Tuple[Any, ...]
    beta: Any
    gamma: Any
    rho: Any


def _flatten(m: Matrix) -> List[Any]:
    return [v for row in m.rows for v in row]


def commutator_span_coefficients(rep: LeonardSystemRep) -> Optional[SpanCoefficients]:
    """Solve A^2 A* A - A A* A^2 = sum_i alpha_i (A^i A* - A* A^i).

    For d >= 3 all alpha_1..alpha_d are unknowns; otherwise alpha_3 is fixed
    to 1 and alpha_1, alpha_2 are solved for. Returns None when no solution
    exists.
    """
    field, d, A, As = rep.field, rep.d, rep.A, rep.A_star
    if d == 0:
        raise IndexOutOfRange("the span identity needs d >= 1")
    lhs = A @ A @ As @ A - A @ As @ A @ A
    powers = [A.power(i) for i in range(max(d, 3) + 1)]
    terms = [powers[i] @ As - As @ powers[i] for i in range(1, max(d, 3) + 1)]
    if d >= 3:
        unknowns, target = terms[:d], lhs
    else:
        unknowns, target = terms[:2], lhs - terms[2]
    columns = [_flatten(m) for m in unknowns]
    rows = [list(col[k] for col in columns) for k in range(len(columns[0]))]
    solution = solve_linear(field, rows, _flatten(target))
    if solution is None:
        return None
    alpha = tuple(solution) if d >= 3 else tuple(solution) + (field.one,)
    a1, a2, a3 = alpha[0], alpha[1], alpha[2]
    inv3 = field.inv(a3)
    return SpanCoefficients(alpha, inv3 - field.one, -a2 * inv3, -a1 * inv3)
