"""Parameter arrays of Leonard systems and the sequence-level computations on them."""
import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, List, Optional, Sequence, Tuple

from models.errors import (
    ConstraintViolated, DegenerateDenominator, DivisionByZero, IndexOutOfRange,
    InconsistentSequence, NoQInField, ParseError, SizeMismatch,
)
from models.exactfield import ExtElement, FieldSpec, Poly, field_roots

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParameterData:
    """Diameter d with the eigenvalue, dual eigenvalue, varphi and phi sequences.

    ``varphi`` and ``phi`` hold the entries with indices 1..d; use
    ``varphi_at`` / ``phi_at`` for the zero sentinels at 0 and d+1.
    """

    field: FieldSpec
    d: int
    theta: Tuple[Any, ...]
    theta_star: Tuple[Any, ...]
    varphi: Tuple[Any, ...]
    phi: Tuple[Any, ...]

    def __post_init__(self):
        if self.d < 0:
            raise SizeMismatch(f"diameter must be nonnegative, got {self.d}")
        expected = {"theta": self.d + 1, "theta_star": self.d + 1, "varphi": self.d, "phi": self.d}
        for name, length in expected.items():
            values = tuple(self.field(v) for v in getattr(self, name))
            if len(values) != length:
                raise SizeMismatch(f"{name} has {len(values)} entries, expected {length} for d={self.d}")
            object.__setattr__(self, name, values)

    @classmethod
    def from_sequences(cls, field: FieldSpec, theta, theta_star, varphi, phi) -> "ParameterData":
        return cls(field, len(theta) - 1, tuple(theta), tuple(theta_star), tuple(varphi), tuple(phi))

    def varphi_at(self, i: int):
        if i == 0 or i == self.d + 1:
            return self.field.zero
        return self.varphi[i - 1]

    def phi_at(self, i: int):
        if i == 0 or i == self.d + 1:
            return self.field.zero
        return self.phi[i - 1]


# Validation

class ConditionStatus(str, Enum):
    passed = "passed"
    failed = "failed"
    vacuous = "vacuous"


@dataclass(frozen=True)
class ConditionResult:
    name: str
    status: ConditionStatus
    indices: Tuple[int, ...] = ()
    failures: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status is not ConditionStatus.failed


@dataclass(frozen=True)
class ValidationReport:
    conditions: Tuple[ConditionResult, ...]
    common_value: Optional[Any] = None

    @property
    def valid(self) -> bool:
        return all(c.ok for c in self.conditions)

    def condition(self, name: str) -> ConditionResult:
        return next(c for c in self.conditions if c.name == name)


def _status(failures: Sequence, empty_range: bool) -> ConditionStatus:
    if failures:
        return ConditionStatus.failed
    return ConditionStatus.vacuous if empty_range else ConditionStatus.passed


def _check_nonzero(p: ParameterData) -> ConditionResult:
    indices, failures = [], []
    for i in range(1, p.d + 1):
        for name, value in (("varphi", p.varphi_at(i)), ("phi", p.phi_at(i))):
            if p.field.is_zero(value):
                failures.append(f"{name}_{i} = 0")
                if i not in indices:
                    indices.append(i)
    return ConditionResult("i", _status(failures, p.d == 0), tuple(indices), tuple(failures))


def _check_distinct(p: ParameterData) -> ConditionResult:
    indices, failures = [], []
    for name, seq in (("theta", p.theta), ("theta_star", p.theta_star)):
        for j in range(len(seq)):
            for i in range(j):
                if seq[i] == seq[j]:
                    failures.append(f"{name}_{i} = {name}_{j}")
                    if j not in indices:
                        indices.append(j)
    return ConditionResult("ii", _status(failures, p.d == 0), tuple(sorted(indices)), tuple(failures))


def _check_identity(p: ParameterData, name: str) -> ConditionResult:
    # (iii): varphi_i = phi_1 vt_i + (ts_i - ts_0)(t_{i-1} - t_d)
    # (iv):  phi_i = varphi_1 vt_i + (ts_i - ts_0)(t_{d-i+1} - t_0)
    if p.d == 0:
        return ConditionResult(name, ConditionStatus.vacuous)
    field, t, ts = p.field, p.theta, p.theta_star
    try:
        sums = vartheta_sequence(t, field)
    except DegenerateDenominator:
        return ConditionResult(name, ConditionStatus.failed, tuple(range(1, p.d + 1)),
                               ("theta_0 = theta_d, the vartheta sums are undefined",))
    indices, failures = [], []
    for i in range(1, p.d + 1):
        if name == "iii":
            lhs = p.varphi_at(i)
            rhs = p.phi_at(1) * sums[i] + (ts[i] - ts[0]) * (t[i - 1] - t[p.d])
        else:
            lhs = p.phi_at(i)
            rhs = p.varphi_at(1) * sums[i] + (ts[i] - ts[0]) * (t[p.d - i + 1] - t[0])
        if lhs != rhs:
            indices.append(i)
            failures.append(f"index {i}: {field.format(lhs)} != {field.format(rhs)}")
    return ConditionResult(name, _status(failures, False), tuple(indices), tuple(failures))


def _check_common_ratio(p: ParameterData) -> Tuple[ConditionResult, Optional[Any]]:
    if p.d <= 2:
        return ConditionResult("v", ConditionStatus.vacuous), None
    field = p.field
    values, indices, failures = [], [], []
    for i in range(2, p.d):
        for name, seq in (("theta", p.theta), ("theta_star", p.theta_star)):
            den = seq[i - 1] - seq[i]
            if field.is_zero(den):
                failures.append(f"{name}_{i - 1} = {name}_{i}")
                indices.append(i)
                continue
            values.append((i, name, field.div(seq[i - 2] - seq[i + 1], den)))
    common = values[0][2] if values else None
    for i, name, value in values:
        if value != common:
            failures.append(f"{name} ratio at {i} is {field.format(value)}, expected {field.format(common)}")
            if i not in indices:
                indices.append(i)
    result = ConditionResult("v", _status(failures, False), tuple(sorted(set(indices))), tuple(failures))
    return result, (common if result.ok else None)


def validate_parameter_array(p: ParameterData) -> ValidationReport:
    ratio_result, common = _check_common_ratio(p)
    report = ValidationReport(
        conditions=(
            _check_nonzero(p),
            _check_distinct(p),
            _check_identity(p, "iii"),
            _check_identity(p, "iv"),
            ratio_result,
        ),
        common_value=common,
    )
    logger.debug("validated d=%d parameter array over %s: valid=%s", p.d, p.field, report.valid)
    return report


# Vartheta sums

def vartheta_sum(theta: Sequence, i: int, field: FieldSpec):
    """sum_{h<i} (theta_h - theta_{d-h}) / (theta_0 - theta_d)."""
    d = len(theta) - 1
    if not 0 <= i <= d + 1:
        raise IndexOutOfRange(f"vartheta index {i} outside 0..{d + 1}")
    if i == 0:
        return field.zero
    if d == 0:
        # By convention vartheta_1 = 1 when d = 0.
        return field.one
    den = theta[0] - theta[d]
    if field.is_zero(den):
        raise DegenerateDenominator("theta_0 = theta_d")
    return field.div(field.sum(theta[h] - theta[d - h] for h in range(i)), den)


def vartheta_sequence(theta: Sequence, field: FieldSpec) -> Tuple[Any, ...]:
    return tuple(vartheta_sum(theta, i, field) for i in range(len(theta) + 1))


def vartheta_recursion_residuals(theta: Sequence, field: FieldSpec) -> Tuple[List[Any], List[Any]]:
    """Residuals of the forward and backward recursions of the vartheta sums."""
    d = len(theta) - 1
    vt = vartheta_sequence(theta, field)
    forward = [
        vt[i + 1] - vt[i] * field.div(theta[i] - theta[d - 1], theta[i - 1] - theta[d]) - field.one
        for i in range(1, d + 1)
    ]
    backward = [
        vt[i] - vt[i + 1] * field.div(theta[i] - theta[1], theta[i + 1] - theta[0]) - field.one
        for i in range(0, d)
    ]
    return forward, backward


def vartheta_from_recursion(theta: Sequence, vartheta1, field: FieldSpec) -> Tuple[Any, ...]:
    """Run x_{i+1} = x_i (theta_i - theta_{d-1}) / (theta_{i-1} - theta_d) + x_1 from x_1.

    Returns (0, x_1, ..., x_{d+1}).
    """
    d = len(theta) - 1
    x1 = field(vartheta1)
    values = [field.zero, x1]
    for i in range(1, d + 1):
        values.append(values[i] * field.div(theta[i] - theta[d - 1], theta[i - 1] - theta[d]) + x1)
    return tuple(values)


def vartheta_identity_residuals(theta: Sequence, field: FieldSpec) -> List[Tuple[int, Any]]:
    d = len(theta) - 1
    vt = vartheta_sequence(theta, field)
    t = theta
    residuals = []
    for i in range(1, d + 1):
        if t[0] == t[i]:
            continue
        lhs = field.div(t[0] - t[1] + t[i - 1] - t[i], t[0] - t[i]) * vt[i]
        rhs = field.div(t[0] + t[i - 1] - t[d - i + 1] - t[d], t[0] - t[d])
        residuals.append((i, lhs - rhs))
    return residuals


def vartheta_converse_check(theta: Sequence, candidate: Sequence, beta, field: FieldSpec) -> Optional[bool]:
    """Directed converse: a beta-recurrent candidate with zero ends and equal
    second and second-to-last terms equals candidate_1 times the vartheta sums.

    Returns None when the hypotheses do not hold.
    """
    d = len(theta) - 1
    if len(candidate) != d + 2:
        raise SizeMismatch(f"candidate needs {d + 2} entries")
    candidate = [field(v) for v in candidate]
    if candidate[0] != field.zero or candidate[d + 1] != field.zero or candidate[1] != candidate[d]:
        return None
    if not (is_beta_recurrent(theta, beta, field) and is_beta_recurrent(candidate, beta, field)):
        return None
    sums = vartheta_sequence(theta, field)
    return all(c == candidate[1] * s for c, s in zip(candidate, sums))


# Recurrent sequences

class RecurrenceKind(str, Enum):
    recurrent = "recurrent"
    beta_recurrent = "beta-recurrent"
    beta_gamma_recurrent = "beta-gamma-recurrent"
    beta_gamma_rho_recurrent = "beta-gamma-rho-recurrent"
    none = "none"


@dataclass(frozen=True)
class RecurrenceWitness:
    kind: RecurrenceKind
    beta: Optional[Any] = None
    gamma: Optional[Any] = None
    rho: Optional[Any] = None


@dataclass(frozen=True)
class RecurrenceClass:
    kind: RecurrenceKind
    beta: Optional[Any] = None
    gamma: Optional[Any] = None
    rho: Optional[Any] = None
    common_ratio: Optional[Any] = None
    witnesses: Tuple[RecurrenceWitness, ...] = ()

    def satisfies(self, kind: RecurrenceKind) -> bool:
        return any(w.kind is kind for w in self.witnesses)

    def witness(self, kind: RecurrenceKind) -> Optional[RecurrenceWitness]:
        return next((w for w in self.witnesses if w.kind is kind), None)


def beta_recurrence_residuals(seq: Sequence, beta, field: FieldSpec) -> List[Any]:
    beta1 = field(beta) + field.one
    return [seq[i - 2] - beta1 * seq[i - 1] + beta1 * seq[i] - seq[i + 1] for i in range(2, len(seq) - 1)]


def is_beta_recurrent(seq: Sequence, beta, field: FieldSpec) -> bool:
    return all(field.is_zero(r) for r in beta_recurrence_residuals(seq, beta, field))


def gamma_values(seq: Sequence, beta, field: FieldSpec) -> List[Any]:
    beta = field(beta)
    return [seq[i - 1] - beta * seq[i] + seq[i + 1] for i in range(1, len(seq) - 1)]


def rho_values(seq: Sequence, beta, gamma, field: FieldSpec) -> List[Any]:
    beta, gamma = field(beta), field(gamma)
    return [
        seq[i - 1] * seq[i - 1] - beta * seq[i - 1] * seq[i] + seq[i] * seq[i] - gamma * (seq[i - 1] + seq[i])
        for i in range(1, len(seq))
    ]


def common_ratios(seq: Sequence, field: FieldSpec) -> Optional[List[Any]]:
    """(s_{i-2} - s_{i+1}) / (s_{i-1} - s_i) for 2 <= i <= d-1, None if a denominator vanishes."""
    ratios = []
    for i in range(2, len(seq) - 1):
        den = seq[i - 1] - seq[i]
        if field.is_zero(den):
            return None
        ratios.append(field.div(seq[i - 2] - seq[i + 1], den))
    return ratios


def _solve_beta(seq: Sequence, field: FieldSpec):
    for i in range(2, len(seq) - 1):
        den = seq[i - 1] - seq[i]
        if not field.is_zero(den):
            return field.div(seq[i - 2] - seq[i + 1], den) - field.one
    # Every beta works; report beta = 2 as witness when there is something to witness.
    return field(2) if len(seq) >= 4 else None


def _solve_gamma(seq: Sequence, beta, field: FieldSpec):
    gammas = gamma_values(seq, beta, field)
    for i in range(1, len(seq) - 1):
        if seq[i - 1] != seq[i + 1]:
            return gammas[i - 1]
    return gammas[0] if gammas else None


def classify_recurrence(seq: Sequence, field: FieldSpec, beta=None) -> RecurrenceClass:
    if not seq:
        raise SizeMismatch("an empty sequence has no recurrence class")
    seq = [field(v) for v in seq]
    witnesses = []

    ratios = common_ratios(seq, field)
    recurrent = ratios is not None and all(r == ratios[0] for r in ratios)
    common = ratios[0] if recurrent and ratios else None
    if recurrent:
        witnesses.append(RecurrenceWitness(
            RecurrenceKind.recurrent, beta=common - field.one if common is not None else None))

    if beta is None:
        beta = common - field.one if common is not None else _solve_beta(seq, field)
    else:
        beta = field(beta)

    gamma = rho = None
    if beta is None:
        # Too short for any scalar to be pinned down; every condition holds vacuously.
        witnesses.extend(RecurrenceWitness(kind) for kind in (
            RecurrenceKind.beta_recurrent,
            RecurrenceKind.beta_gamma_recurrent,
            RecurrenceKind.beta_gamma_rho_recurrent,
        ))
    else:
        if is_beta_recurrent(seq, beta, field):
            witnesses.append(RecurrenceWitness(RecurrenceKind.beta_recurrent, beta=beta))
            gammas = gamma_values(seq, beta, field)
            if all(g == gammas[0] for g in gammas):
                witnesses.append(RecurrenceWitness(
                    RecurrenceKind.beta_gamma_recurrent, beta=beta, gamma=gammas[0] if gammas else None))
        gamma = _solve_gamma(seq, beta, field)
        if gamma is not None:
            rhos = rho_values(seq, beta, gamma, field)
            if all(r == rhos[0] for r in rhos):
                rho = rhos[0]
                witnesses.append(RecurrenceWitness(
                    RecurrenceKind.beta_gamma_rho_recurrent, beta=beta, gamma=gamma, rho=rho))
            else:
                gamma = None
        elif len(seq) <= 2:
            witnesses.append(RecurrenceWitness(RecurrenceKind.beta_gamma_rho_recurrent, beta=beta))

    order = (
        RecurrenceKind.recurrent,
        RecurrenceKind.beta_recurrent,
        RecurrenceKind.beta_gamma_recurrent,
        RecurrenceKind.beta_gamma_rho_recurrent,
    )
    kind = next((k for k in order if any(w.kind is k for w in witnesses)), RecurrenceKind.none)
    if kind is RecurrenceKind.none:
        beta = None
    return RecurrenceClass(kind, beta, gamma, rho, common, tuple(witnesses))


# Closed forms of beta-recurrent sequences

class ClosedFormCase(str, Enum):
    q_power = "q-power"          # 1, q^i, q^-i
    polynomial = "polynomial"    # 1, i, i^2
    alternating = "alternating"  # 1, (-1)^i, i (-1)^i
    binomial = "binomial"        # 1, i, C(i, 2) in characteristic 2


def closed_form_case(beta, field: FieldSpec) -> ClosedFormCase:
    beta = field(beta)
    if field.characteristic == 2:
        return ClosedFormCase.binomial if field.is_zero(beta) else ClosedFormCase.q_power
    if beta == field(2):
        return ClosedFormCase.polynomial
    if beta == field(-2):
        return ClosedFormCase.alternating
    return ClosedFormCase.q_power


@dataclass(frozen=True)
class ClosedFormFit:
    field: FieldSpec
    case: ClosedFormCase
    beta: Any
    alpha: Tuple[Any, Any, Any]
    q: Optional[Any] = None
    in_extension: bool = False

    def _one(self):
        if self.in_extension:
            return ExtElement(self.field, self.beta, self.field.one, self.field.zero)
        return self.field.one

    def basis(self, i: int) -> Tuple[Any, Any, Any]:
        field, one = self.field, self._one()
        if self.case is ClosedFormCase.q_power:
            if self.in_extension:
                return one, self.q ** i, self.q ** (-i)
            return one, field.power(self.q, i), field.power(self.q, -i)
        if self.case is ClosedFormCase.polynomial:
            return one, field(i), field(i * i)
        if self.case is ClosedFormCase.alternating:
            sign = 1 if i % 2 == 0 else -1
            return one, field(sign), field(sign * i)
        return one, field(i), field(i * (i - 1) // 2)

    def value(self, i: int):
        a1, a2, a3 = self.alpha
        b1, b2, b3 = self.basis(i)
        return a1 * b1 + a2 * b2 + a3 * b3

    def distinctness_holds(self, d: int) -> bool:
        """The necessary condition for theta_0..theta_d of this shape to be distinct."""
        char = self.field.characteristic
        if self.case is ClosedFormCase.q_power:
            one = self._one()
            power = one
            for _ in range(d):
                power = power * self.q
                if power == one:
                    return False
            return True
        if self.case is ClosedFormCase.polynomial:
            return char == 0 or char > d
        if self.case is ClosedFormCase.alternating:
            return char == 0 or 2 * char > d
        return d <= 3


def _solve_square(matrix: List[List[Any]], rhs: List[Any]) -> List[Any]:
    # Plain arithmetic operators only; works in F and in F[q].
    n = len(rhs)
    rows = [list(row) + [value] for row, value in zip(matrix, rhs)]
    zero = rhs[0] - rhs[0]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != zero), None)
        if pivot is None:
            raise InconsistentSequence("closed-form basis is singular at i = 0, 1, 2")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [v / lead for v in rows[col]]
        for r in range(n):
            factor = rows[r][col]
            if r != col and factor != zero:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [row[-1] for row in rows]


def fit_closed_form(seq: Sequence, beta, field: FieldSpec, allow_extension: bool = True) -> ClosedFormFit:
    if not seq:
        raise SizeMismatch("cannot fit an empty sequence")
    beta = field(beta)
    case = closed_form_case(beta, field)
    q, in_extension = None, False
    values = [field(v) for v in seq]
    if case is ClosedFormCase.q_power:
        roots = field_roots(Poly(field, (field.one, -beta, field.one)))
        if roots:
            q = roots[-1]
        elif allow_extension:
            q, in_extension = ExtElement.generator(field, beta), True
            values = [ExtElement(field, beta, v, field.zero) for v in values]
        else:
            raise NoQInField(f"lambda^2 - {field.format(beta)} lambda + 1 has no root in {field}")

    draft = ClosedFormFit(field, case, beta, (field.zero,) * 3, q, in_extension)
    k = min(3, len(values))
    matrix = [list(draft.basis(i)[:k]) for i in range(k)]
    solved = _solve_square(matrix, values[:k])
    zero = values[0] - values[0]
    alpha = tuple(solved) + (zero,) * (3 - k)
    fit = replace(draft, alpha=alpha)
    for i, value in enumerate(values):
        if fit.value(i) != value:
            raise InconsistentSequence(f"closed form disagrees with the sequence at index {i}")
    logger.debug("fitted %s closed form over %s", case.value, field)
    return fit


def vartheta_closed_form(fit: ClosedFormFit, d: int) -> Tuple[Any, ...]:
    """The vartheta sums 0..d+1 predicted by the closed form, d >= 3."""
    if d < 3:
        raise IndexOutOfRange("closed forms of the vartheta sums need d >= 3")
    field = fit.field
    values = []
    for i in range(d + 2):
        if fit.case is ClosedFormCase.q_power:
            one = fit._one()
            q = fit.q
            num = (q ** i - one) * (q ** (d - i + 1) - one) if fit.in_extension else \
                (field.power(q, i) - one) * (field.power(q, d - i + 1) - one)
            den = (q - one) * (q ** d - one) if fit.in_extension else \
                (q - one) * (field.power(q, d) - one)
            if den == 0:
                raise DivisionByZero("q^d = 1 or q = 1")
            value = num / den
            values.append(value.to_base() if fit.in_extension else value)
        elif fit.case is ClosedFormCase.polynomial:
            values.append(field.div(field(i * (d - i + 1)), field(d)))
        elif fit.case is ClosedFormCase.alternating:
            if d % 2 == 1:
                values.append(field(i % 2))
            elif i % 2 == 0:
                values.append(field.div(field(i), field(d)))
            else:
                values.append(field.div(field(d - i + 1), field(d)))
        else:
            if d != 3:
                raise IndexOutOfRange("the characteristic 2 closed form needs d = 3")
            values.append(field(i % 2))
    return tuple(values)


# D4 action

_GENERATOR_ALIASES = {"d": "d", "↓": "d", "D": "D", "⇓": "D", "*": "*"}


@dataclass(frozen=True)
class D4Element:
    """A group element, stored as the relative it produces from a system.

    ``star`` swaps the roles of A and A*; ``reverse_e`` / ``reverse_estar``
    reverse the orderings of the idempotents of A and of A*.
    """

    star: bool = False
    reverse_e: bool = False
    reverse_estar: bool = False

    @classmethod
    def identity(cls) -> "D4Element":
        return cls()

    @classmethod
    def from_label(cls, label: str) -> "D4Element":
        text = "".join(label.split())
        if text in ("", "1", "e", "id"):
            return cls.identity()
        element = cls.identity()
        for char in text:
            if char not in _GENERATOR_ALIASES:
                raise ParseError(f"unknown D4 generator {char!r} in {label!r}")
            element = element.apply(_GENERATOR_ALIASES[char])
        return element

    def apply(self, generator: str) -> "D4Element":
        """Right action of one generator: d is the down arrow, D the double arrow."""
        if generator == "*":
            return replace(self, star=not self.star)
        # d reverses the second idempotent sequence, D the first.
        flip_e = (generator == "D") != self.star
        if flip_e:
            return replace(self, reverse_e=not self.reverse_e)
        return replace(self, reverse_estar=not self.reverse_estar)

    def word(self) -> str:
        return ("D" if self.reverse_e else "") + ("d" if self.reverse_estar else "") + ("*" if self.star else "")

    def __mul__(self, other: "D4Element") -> "D4Element":
        result = self
        for generator in other.word():
            result = result.apply(generator)
        return result

    def inverse(self) -> "D4Element":
        return next(g for g in d4_elements() if self * g == D4Element.identity())

    @property
    def label(self) -> str:
        return next(label for label in D4_LABELS if D4Element.from_label(label) == self)


D4_LABELS = ("1", "d", "D", "dD", "*", "d*", "D*", "dD*")


def d4_elements() -> List[D4Element]:
    return [D4Element.from_label(label) for label in D4_LABELS]


def _apply_generator_to_params(p: ParameterData, generator: str) -> ParameterData:
    rev = lambda seq: tuple(reversed(seq))  # noqa: E731
    if generator == "d":
        return replace(p, theta_star=rev(p.theta_star), varphi=rev(p.phi), phi=rev(p.varphi))
    if generator == "D":
        return replace(p, theta=rev(p.theta), varphi=p.phi, phi=p.varphi)
    return replace(p, theta=p.theta_star, theta_star=p.theta, phi=rev(p.phi))


def d4_transform(p: ParameterData, g: D4Element) -> ParameterData:
    """Parameters f^g = f(Phi^{g^-1}) of the table row labelled g."""
    result = p
    for generator in g.inverse().word():
        result = _apply_generator_to_params(result, generator)
    return result


def phi_from_varphi(field: FieldSpec, theta: Sequence, theta_star: Sequence, varphi: Sequence) -> Tuple[Any, ...]:
    """phi_i = varphi_i - (ts_i - ts_{i-1}) sum_{h<i} (t_h - t_{d-h}); not normalized."""
    d = len(theta) - 1
    if len(theta_star) != d + 1 or len(varphi) != d:
        raise SizeMismatch("theta, theta_star and varphi lengths do not match")
    phi = []
    for i in range(1, d + 1):
        partial = field.sum(theta[h] - theta[d - h] for h in range(i))
        phi.append(field(varphi[i - 1]) - (theta_star[i] - theta_star[i - 1]) * partial)
    return tuple(phi)


# q-Racah family

@dataclass(frozen=True)
class QRacahInput:
    field: FieldSpec
    d: int
    q: Any
    h: Any
    h_star: Any
    r1: Any
    r2: Any
    s: Any
    s_star: Any
    theta0: Any = 0
    theta_star0: Any = 0

    def __post_init__(self):
        if self.d < 0:
            raise SizeMismatch(f"diameter must be nonnegative, got {self.d}")
        for name in ("q", "h", "h_star", "r1", "r2", "s", "s_star", "theta0", "theta_star0"):
            object.__setattr__(self, name, self.field(getattr(self, name)))

    @property
    def constraint_holds(self) -> bool:
        field = self.field
        return self.r1 * self.r2 == self.s * self.s_star * field.power(self.q, self.d + 1)


def qracah_params(inp: QRacahInput) -> ParameterData:
    field = inp.field
    if field.is_zero(inp.q):
        raise DivisionByZero("q must be nonzero")
    if field.is_zero(inp.s_star):
        raise DivisionByZero("s* must be nonzero")
    if not inp.constraint_holds:
        raise ConstraintViolated("r1 r2 must equal s s* q^(d+1)")
    q, d, one = inp.q, inp.d, field.one
    qp = lambda k: field.power(q, k)  # noqa: E731

    def eigen(base, h, s, i):
        return base + field.div(h * (one - qp(i)) * (one - s * qp(i + 1)), qp(i))

    def shared(i):
        return inp.h * inp.h_star * qp(1 - 2 * i) * (one - qp(i)) * (one - qp(i - d - 1))

    theta = [eigen(inp.theta0, inp.h, inp.s, i) for i in range(d + 1)]
    theta_star = [eigen(inp.theta_star0, inp.h_star, inp.s_star, i) for i in range(d + 1)]
    varphi = [shared(i) * (one - inp.r1 * qp(i)) * (one - inp.r2 * qp(i)) for i in range(1, d + 1)]
    phi = [field.div(shared(i) * (inp.r1 - inp.s_star * qp(i)) * (inp.r2 - inp.s_star * qp(i)), inp.s_star)
           for i in range(1, d + 1)]
    return ParameterData(field, d, tuple(theta), tuple(theta_star), tuple(varphi), tuple(phi))
