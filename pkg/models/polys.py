"""Polynomials attached to a Leonard system: the MPS, the normalized u_i,
their recurrence coefficients, orthogonality, and the q-Racah 4phi3 values.
"""
import logging
from dataclasses import dataclass
from typing import Any, List, Tuple

from models.errors import InconsistentData, IndexOutOfRange, InvalidParameters, ZeroDenominator
from models.exactfield import Matrix, Poly
from models.params import ParameterData, QRacahInput, qracah_params, validate_parameter_array
from models.system import LeonardSystemRep, tau_eta_basis, trace_coefficients_from_params

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolySeqBundle:
    p: Tuple[Poly, ...]
    p_star: Tuple[Poly, ...]
    u: Tuple[Poly, ...]
    u_star: Tuple[Poly, ...]


def build_poly_bundle(params: ParameterData) -> PolySeqBundle:
    report = validate_parameter_array(params)
    if not report.valid:
        raise InvalidParameters("parameter array fails validation", report, params.field)
    field, d = params.field, params.d
    basis = tau_eta_basis(params)
    prefix = [field.product(params.varphi[:k]) for k in range(d + 1)]

    def monic(tau, tau_other, other_eigs, i):
        total = Poly(field)
        t = other_eigs[i]
        for h in range(i + 1):
            total = total + tau[h] * field.div(prefix[i] * tau_other[h](t), prefix[h] * tau_other[i](t))
        return total

    def normalized(tau, tau_other, other_eigs, i):
        total = Poly(field)
        for h in range(i + 1):
            total = total + tau[h] * field.div(tau_other[h](other_eigs[i]), prefix[h])
        return total

    t, ts = params.theta, params.theta_star
    p = tuple(monic(basis.tau, basis.tau_star, ts, i) for i in range(d + 1)) + (basis.tau[d + 1],)
    p_star = tuple(monic(basis.tau_star, basis.tau, t, i) for i in range(d + 1)) + (basis.tau_star[d + 1],)
    u = tuple(normalized(basis.tau, basis.tau_star, ts, i) for i in range(d + 1))
    u_star = tuple(normalized(basis.tau_star, basis.tau, t, i) for i in range(d + 1))
    logger.debug("built polynomial bundle for d=%d", d)
    return PolySeqBundle(p, p_star, u, u_star)


@dataclass(frozen=True)
class RecurrenceData:
    a: Tuple[Any, ...]
    x: Tuple[Any, ...]
    b: Tuple[Any, ...]
    c: Tuple[Any, ...]
    k: Tuple[Any, ...]
    m: Tuple[Any, ...]
    n: Any
    a_star: Tuple[Any, ...]
    x_star: Tuple[Any, ...]
    b_star: Tuple[Any, ...]
    c_star: Tuple[Any, ...]
    k_star: Tuple[Any, ...]
    m_star: Tuple[Any, ...]


def _require(condition: bool, detail: str):
    if not condition:
        raise InconsistentData(detail)


def recurrence_data(rep: LeonardSystemRep, params: ParameterData) -> RecurrenceData:
    """Trace definitions checked against the closed forms in the parameters."""
    field, d = params.field, params.d
    if rep.field != field or rep.d != d:
        raise InconsistentData("system and parameter array disagree on field or diameter")
    A, As, E, Es = rep.A, rep.A_star, rep.E, rep.E_star
    t, ts = params.theta, params.theta_star
    basis = tau_eta_basis(params)

    a = tuple((Es[i] @ A).trace() for i in range(d + 1))
    a_star = tuple((E[i] @ As).trace() for i in range(d + 1))
    closed = trace_coefficients_from_params(params)
    _require(a == closed.a and a_star == closed.a_star, "trace coefficients disagree with their closed form")

    x = tuple((Es[i] @ A @ Es[i - 1] @ A).trace() for i in range(1, d + 1))
    x_star = tuple((E[i] @ As @ E[i - 1] @ As).trace() for i in range(1, d + 1))

    b = tuple(params.varphi_at(i + 1) * field.div(basis.tau_star[i](ts[i]), basis.tau_star[i + 1](ts[i + 1]))
              for i in range(d))
    b_star = tuple(params.varphi_at(i + 1) * field.div(basis.tau[i](t[i]), basis.tau[i + 1](t[i + 1]))
                   for i in range(d))
    c = tuple(params.phi_at(i) * field.div(basis.eta_star[d - i](ts[i]), basis.eta_star[d - i + 1](ts[i - 1]))
              for i in range(1, d + 1))
    c_star = tuple(params.phi_at(d - i + 1) * field.div(basis.eta[d - i](t[i]), basis.eta[d - i + 1](t[i - 1]))
                   for i in range(1, d + 1))

    for i in range(1, d + 1):
        _require(x[i - 1] == b[i - 1] * c[i - 1], f"x_{i} != b_{i - 1} c_{i}")
        _require(x_star[i - 1] == b_star[i - 1] * c_star[i - 1], f"x*_{i} != b*_{i - 1} c*_{i}")
    for i in range(d + 1):
        ci = c[i - 1] if i > 0 else field.zero
        bi = b[i] if i < d else field.zero
        _require(t[0] == ci + a[i] + bi, f"theta_0 != c_{i} + a_{i} + b_{i}")
        ci = c_star[i - 1] if i > 0 else field.zero
        bi = b_star[i] if i < d else field.zero
        _require(ts[0] == ci + a_star[i] + bi, f"theta*_0 != c*_{i} + a*_{i} + b*_{i}")

    m = tuple((E[i] @ Es[0]).trace() for i in range(d + 1))
    m_star = tuple((Es[i] @ E[0]).trace() for i in range(d + 1))
    _require(all(not field.is_zero(v) for v in m), "some m_i vanishes")
    _require(m[0] == m_star[0], "m_0 != m*_0")
    n = field.div(basis.eta[d](t[0]) * basis.eta_star[d](ts[0]), field.product(params.phi))
    _require(n * m[0] == field.one, "n m_0 != 1")
    k = tuple(v * n for v in m_star)
    k_star = tuple(v * n for v in m)
    for i in range(d + 1):
        _require(k[i] == field.div(field.product(b[:i]), field.product(c[:i])), f"k_{i} disagrees with b/c")
        _require(k_star[i] == field.div(field.product(b_star[:i]), field.product(c_star[:i])),
                 f"k*_{i} disagrees with b*/c*")
    _require(n == field.sum(k), "n != sum of k_i")

    return RecurrenceData(a, x, b, c, k, m, n, a_star, x_star, b_star, c_star, k_star, m_star)


@dataclass(frozen=True)
class OrthogonalityReport:
    p_rows: Tuple[Tuple[Any, ...], ...]
    p_columns: Tuple[Tuple[Any, ...], ...]
    u_rows: Tuple[Tuple[Any, ...], ...]
    u_columns: Tuple[Tuple[Any, ...], ...]

    @property
    def ok(self) -> bool:
        grids = (self.p_rows, self.p_columns, self.u_rows, self.u_columns)
        return all(v == 0 for grid in grids for row in grid for v in row)


def orthogonality_check(bundle: PolySeqBundle, rec: RecurrenceData, params: ParameterData) -> OrthogonalityReport:
    """Residuals of the four orthogonality relations; all zero on valid input."""
    field, d, t = params.field, params.d, params.theta
    rng = range(d + 1)
    pv = [[bundle.p[i](t[r]) for r in rng] for i in rng]
    uv = [[bundle.u[i](t[r]) for r in rng] for i in rng]
    xprod = [field.product(rec.x[:i]) for i in rng]
    delta = lambda i, j: field.one if i == j else field.zero  # noqa: E731

    p_rows = tuple(tuple(
        field.sum(pv[i][r] * pv[j][r] * rec.m[r] for r in rng) - delta(i, j) * xprod[i]
        for j in rng) for i in rng)
    p_columns = tuple(tuple(
        field.sum(field.div(pv[i][r] * pv[i][s], xprod[i]) for i in rng) - delta(r, s) * field.inv(rec.m[r])
        for s in rng) for r in rng)
    u_rows = tuple(tuple(
        field.sum(uv[i][r] * uv[j][r] * rec.m[r] for r in rng) - delta(i, j) * field.inv(rec.k[i])
        for j in rng) for i in rng)
    u_columns = tuple(tuple(
        field.sum(uv[i][r] * uv[i][s] * rec.k[i] for i in rng) - delta(r, s) * field.inv(rec.m[r])
        for s in rng) for r in rng)
    return OrthogonalityReport(p_rows, p_columns, u_rows, u_columns)


@dataclass(frozen=True)
class RecurrenceResiduals:
    p: Tuple[Poly, ...]
    p_star: Tuple[Poly, ...]
    u: Tuple[Poly, ...]
    u_star: Tuple[Poly, ...]
    u_tail: Tuple[Any, ...]
    u_star_tail: Tuple[Any, ...]

    @property
    def ok(self) -> bool:
        polys = self.p + self.p_star + self.u + self.u_star
        return all(r.is_zero for r in polys) and all(v == 0 for v in self.u_tail + self.u_star_tail)


def recurrence_residuals(bundle: PolySeqBundle, rec: RecurrenceData, params: ParameterData) -> RecurrenceResiduals:
    field, d = params.field, params.d
    lam = Poly.x(field)
    zero = Poly(field)

    def monic_residuals(seq, a, x):
        return tuple(
            lam * seq[i] - seq[i + 1] - seq[i] * a[i] - (seq[i - 1] * x[i - 1] if i > 0 else zero)
            for i in range(d + 1))

    def normalized_residuals(seq, a, b, c):
        return tuple(
            lam * seq[i] - (seq[i - 1] * c[i - 1] if i > 0 else zero) - seq[i] * a[i] - seq[i + 1] * b[i]
            for i in range(d))

    def tail(seq, a, c, eigs):
        poly = lam * seq[d] - seq[d] * a[d] - (seq[d - 1] * c[d - 1] if d > 0 else zero)
        return tuple(poly(v) for v in eigs)

    return RecurrenceResiduals(
        p=monic_residuals(bundle.p, rec.a, rec.x),
        p_star=monic_residuals(bundle.p_star, rec.a_star, rec.x_star),
        u=normalized_residuals(bundle.u, rec.a, rec.b, rec.c),
        u_star=normalized_residuals(bundle.u_star, rec.a_star, rec.b_star, rec.c_star),
        u_tail=tail(bundle.u, rec.a, rec.c, params.theta),
        u_star_tail=tail(bundle.u_star, rec.a_star, rec.c_star, params.theta_star),
    )


@dataclass(frozen=True)
class DualityTable:
    u_values: Tuple[Tuple[Any, ...], ...]
    u_star_values: Tuple[Tuple[Any, ...], ...]

    @property
    def symmetric(self) -> bool:
        return self.u_values == self.u_star_values


def duality_table(bundle: PolySeqBundle, params: ParameterData) -> DualityTable:
    """Row i, column j: u_i(theta_j) against u*_j(theta*_i)."""
    rng = range(params.d + 1)
    return DualityTable(
        u_values=tuple(tuple(bundle.u[i](params.theta[j]) for j in rng) for i in rng),
        u_star_values=tuple(tuple(bundle.u_star[j](params.theta_star[i]) for j in rng) for i in rng),
    )


@dataclass(frozen=True)
class MatrixIdentityReport:
    failures: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def matrix_identity_residuals(bundle: PolySeqBundle, rep: LeonardSystemRep) -> MatrixIdentityReport:
    """p_i(A) E*_0 = E*_i A^i E*_0 and p_{d+1}(A) = 0, with the starred versions."""
    failures = []
    d = rep.d
    for name, X, Es0, Es, seq in (
        ("p", rep.A, rep.E_star[0], rep.E_star, bundle.p),
        ("p*", rep.A_star, rep.E[0], rep.E, bundle.p_star),
    ):
        for i in range(d + 1):
            if seq[i].evaluate_matrix(X) @ Es0 != Es[i] @ X.power(i) @ Es0:
                failures.append(f"{name}_{i} fails the defining identity")
        if not seq[d + 1].evaluate_matrix(X).is_zero():
            failures.append(f"{name}_{d + 1} does not annihilate")
    return MatrixIdentityReport(tuple(failures))


# q-Racah hypergeometric values

def _pochhammer(field, a, q, n):
    return field.product(field.one - a * field.power(q, k) for k in range(n))


def qracah_u_value(inp: QRacahInput, i: int, j: int):
    """The terminating 4phi3 sum equal to u_i(theta_j) = u*_j(theta*_i)."""
    field, d, q = inp.field, inp.d, inp.q
    if not (0 <= i <= d and 0 <= j <= d):
        raise IndexOutOfRange(f"({i}, {j}) outside 0..{d}")
    total = field.zero
    for n in range(d + 1):
        den = (_pochhammer(field, inp.r1 * q, q, n) * _pochhammer(field, inp.r2 * q, q, n)
               * _pochhammer(field, field.power(q, -d), q, n) * _pochhammer(field, q, q, n))
        if field.is_zero(den):
            raise ZeroDenominator(f"Pochhammer denominator vanishes at n = {n}")
        num = (_pochhammer(field, field.power(q, -i), q, n)
               * _pochhammer(field, inp.s_star * field.power(q, i + 1), q, n)
               * _pochhammer(field, field.power(q, -j), q, n)
               * _pochhammer(field, inp.s * field.power(q, j + 1), q, n)
               * field.power(q, n))
        total += field.div(num, den)
    return total


def qracah_u_table(inp: QRacahInput) -> List[List[Any]]:
    rng = range(inp.d + 1)
    return [[qracah_u_value(inp, i, j) for j in rng] for i in rng]


def qracah_cross_check(inp: QRacahInput) -> bool:
    """The 4phi3 grid against u_i(theta_j) from the generated parameter array."""
    params = qracah_params(inp)
    table = duality_table(build_poly_bundle(params), params)
    grid = qracah_u_table(inp)
    return all(grid[i][j] == table.u_values[i][j] for i in range(inp.d + 1) for j in range(inp.d + 1))
