"""Matrix-level Leonard systems: the split form, idempotents, traces and recognition."""
import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple, Union

from models.errors import (
    DimensionMismatch, FieldMismatch, IndexOutOfRange, InvalidParameters,
    NotALeonardPair, NotALeonardSystem, NotAnEigenvalue, NotMultiplicityFree,
    NotTridiagonalizable, RepeatedEigenvalue, SizeMismatch,
)
from models.exactfield import FieldSpec, Matrix, Poly, char_poly, field_roots, rank_of
from models.params import (
    D4Element, ParameterData, phi_from_varphi, validate_parameter_array, vartheta_sequence,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LeonardSystemRep:
    field: FieldSpec
    d: int
    A: Matrix
    A_star: Matrix
    E: Tuple[Matrix, ...]
    E_star: Tuple[Matrix, ...]
    theta: Tuple[Any, ...]
    theta_star: Tuple[Any, ...]


@dataclass(frozen=True)
class TauEtaBasis:
    tau: Tuple[Poly, ...]
    tau_star: Tuple[Poly, ...]
    eta: Tuple[Poly, ...]
    eta_star: Tuple[Poly, ...]


@dataclass(frozen=True)
class TraceCoeffs:
    a: Tuple[Any, ...]
    a_star: Tuple[Any, ...]


def lower_bidiagonal(field: FieldSpec, diagonal: Sequence, sub: Sequence) -> Matrix:
    """``sub[i-1]`` sits at (i, i-1)."""
    return Matrix.from_function(field, len(diagonal), lambda i, j: (
        diagonal[i] if i == j else sub[j] if i == j + 1 else field.zero))


def upper_bidiagonal(field: FieldSpec, diagonal: Sequence, sup: Sequence) -> Matrix:
    """``sup[i-1]`` sits at (i-1, i)."""
    return Matrix.from_function(field, len(diagonal), lambda i, j: (
        diagonal[i] if i == j else sup[i] if j == i + 1 else field.zero))


def _split_setup_holds(p: ParameterData) -> bool:
    return (len(set(p.theta)) == len(p.theta)
            and len(set(p.theta_star)) == len(p.theta_star)
            and all(not p.field.is_zero(v) for v in p.varphi))


def idempotents_lagrange(A: Matrix, eigs: Sequence) -> List[Matrix]:
    """E_i = prod_{j != i} (A - theta_j I) / (theta_i - theta_j)."""
    field = A.field
    eigs = [field(v) for v in eigs]
    if len(eigs) != A.n:
        raise SizeMismatch(f"{len(eigs)} eigenvalues given for a {A.n}x{A.n} matrix")
    if len(set(eigs)) != len(eigs):
        raise RepeatedEigenvalue("eigenvalues must be distinct")
    idempotents = []
    for i, ti in enumerate(eigs):
        E = Matrix.identity(field, A.n)
        for j, tj in enumerate(eigs):
            if j != i:
                E = (E @ A.shift(tj)).scale(field.inv(ti - tj))
        if A @ E != E.scale(ti):
            raise NotAnEigenvalue(f"{field.format(ti)} is not an eigenvalue of A")
        idempotents.append(E)
    total = idempotents[0]
    for E in idempotents[1:]:
        total = total + E
    if total != Matrix.identity(field, A.n):
        raise NotAnEigenvalue("the idempotents do not sum to the identity")
    return idempotents


def tau_eta_basis(p: ParameterData) -> TauEtaBasis:
    field, d = p.field, p.d

    def products(seq):
        polys = [Poly.constant(field, field.one)]
        for k in range(d + 1):
            polys.append(polys[-1] * Poly(field, (-seq[k], field.one)))
        return tuple(polys)

    return TauEtaBasis(
        tau=products(p.theta),
        tau_star=products(p.theta_star),
        eta=products(tuple(reversed(p.theta))),
        eta_star=products(tuple(reversed(p.theta_star))),
    )


def idempotent_entries_closed(p: ParameterData, r: int, dual: bool = False) -> Matrix:
    if not 0 <= r <= p.d:
        raise IndexOutOfRange(f"idempotent index {r} outside 0..{p.d}")
    field, d = p.field, p.d
    basis = tau_eta_basis(p)
    if not dual:
        t = p.theta[r]
        den = basis.tau[r](t) * basis.eta[d - r](t)
        return Matrix.from_function(field, d + 1, lambda i, j: field.div(
            basis.tau[j](t) * basis.eta[d - i](t), den))
    t = p.theta_star[r]
    den = basis.tau_star[r](t) * basis.eta_star[d - r](t)
    prefix = [field.product(p.varphi[:k]) for k in range(d + 1)]
    return Matrix.from_function(field, d + 1, lambda i, j: field.div(
        prefix[j] * basis.tau_star[i](t) * basis.eta_star[d - j](t), prefix[i] * den))


def build_split_form(p: ParameterData, check: bool = True) -> LeonardSystemRep:
    if check:
        report = validate_parameter_array(p)
        if not report.valid:
            raise InvalidParameters("parameter array fails validation", report, p.field)
    elif not _split_setup_holds(p):
        raise InvalidParameters("split form needs distinct eigenvalues and nonzero varphi")
    field = p.field
    A = lower_bidiagonal(field, p.theta, [field.one] * p.d)
    A_star = upper_bidiagonal(field, p.theta_star, p.varphi)
    E = tuple(idempotents_lagrange(A, p.theta))
    E_star = tuple(idempotents_lagrange(A_star, p.theta_star))
    for r in range(p.d + 1):
        if E[r] != idempotent_entries_closed(p, r) or E_star[r] != idempotent_entries_closed(p, r, dual=True):
            raise NotALeonardSystem(f"closed-form idempotent {r} disagrees with the Lagrange product")
    logger.debug("built split form for d=%d over %s", p.d, field)
    return LeonardSystemRep(field, p.d, A, A_star, E, E_star, p.theta, p.theta_star)


def trace_coefficients(rep: LeonardSystemRep) -> TraceCoeffs:
    return TraceCoeffs(
        a=tuple((rep.A @ Es).trace() for Es in rep.E_star),
        a_star=tuple((rep.A_star @ E).trace() for E in rep.E),
    )


def trace_coefficients_from_params(p: ParameterData) -> TraceCoeffs:
    field, d = p.field, p.d

    def coefficients(t, ts):
        values = []
        for i in range(d + 1):
            value = t[i]
            if i > 0:
                value += field.div(p.varphi_at(i), ts[i] - ts[i - 1])
            if i < d:
                value += field.div(p.varphi_at(i + 1), ts[i] - ts[i + 1])
            values.append(value)
        return tuple(values)

    return TraceCoeffs(a=coefficients(p.theta, p.theta_star), a_star=coefficients(p.theta_star, p.theta))


def varphi_four_ways(source: Union[ParameterData, LeonardSystemRep], mode: str = "varphi") -> List[Tuple[Any, ...]]:
    """The four trace expressions for varphi_i (or phi_i), one quadruple per 1 <= i <= d."""
    if isinstance(source, LeonardSystemRep):
        field, d, t, ts = source.field, source.d, source.theta, source.theta_star
        traces = trace_coefficients(source)
    else:
        field, d, t, ts = source.field, source.d, source.theta, source.theta_star
        traces = trace_coefficients_from_params(source)
    a, a_star = traces.a, traces.a_star
    if mode == "phi":
        # phi is varphi of the relative with the eigenvalue order of A reversed.
        t = tuple(reversed(t))
        a_star = tuple(reversed(a_star))
    elif mode != "varphi":
        raise ValueError(f"unknown mode {mode!r}")
    rows = []
    for i in range(1, d + 1):
        head = field.sum(t[h] - a[h] for h in range(i))
        head_star = field.sum(ts[h] - a_star[h] for h in range(i))
        tail = field.sum(t[h] - a[h] for h in range(i, d + 1))
        tail_star = field.sum(ts[h] - a_star[h] for h in range(i, d + 1))
        rows.append((
            (ts[i] - ts[i - 1]) * head,
            (t[i] - t[i - 1]) * head_star,
            (ts[i - 1] - ts[i]) * tail,
            (t[i - 1] - t[i]) * tail_star,
        ))
    return rows


def _varphi_along(field: FieldSpec, d: int, A: Matrix, A_star: Matrix, E_star0: Matrix,
                  theta: Sequence, theta_star: Sequence) -> Tuple[Any, ...]:
    v = next((E_star0.column(j) for j in range(E_star0.n)
              if any(not field.is_zero(x) for x in E_star0.column(j))), None)
    if v is None:
        raise NotALeonardSystem("E*_0 is zero")
    basis = [v]
    for i in range(d):
        nxt = A.shift(theta[i]).apply(basis[-1])
        if all(field.is_zero(x) for x in nxt):
            raise NotALeonardSystem(f"split basis degenerates at v_{i + 1}")
        basis.append(nxt)
    values = []
    for i in range(1, d + 1):
        image = A_star.shift(theta_star[i]).apply(basis[i])
        prev = basis[i - 1]
        k = next(k for k, x in enumerate(prev) if not field.is_zero(x))
        scalar = field.div(image[k], prev[k])
        if any(x != scalar * y for x, y in zip(image, prev)):
            raise NotALeonardSystem(f"(A* - theta*_{i} I) v_{i} is not a multiple of v_{i - 1}")
        values.append(scalar)
    return tuple(values)


def extract_parameters(rep: LeonardSystemRep) -> ParameterData:
    field, d = rep.field, rep.d
    varphi = _varphi_along(field, d, rep.A, rep.A_star, rep.E_star[0], rep.theta, rep.theta_star)
    phi = _varphi_along(field, d, rep.A, rep.A_star, rep.E_star[0],
                        tuple(reversed(rep.theta)), rep.theta_star)
    return ParameterData(field, d, rep.theta, rep.theta_star, varphi, phi)


def relative_system(rep: LeonardSystemRep, g: D4Element) -> LeonardSystemRep:
    """The relative Phi^g; its parameters are d4_transform(p, g.inverse())."""
    E, theta = rep.E, rep.theta
    E_star, theta_star = rep.E_star, rep.theta_star
    if g.reverse_e:
        E, theta = tuple(reversed(E)), tuple(reversed(theta))
    if g.reverse_estar:
        E_star, theta_star = tuple(reversed(E_star)), tuple(reversed(theta_star))
    if g.star:
        return LeonardSystemRep(rep.field, rep.d, rep.A_star, rep.A, E_star, E, theta_star, theta)
    return LeonardSystemRep(rep.field, rep.d, rep.A, rep.A_star, E, E_star, theta, theta_star)


# Recognition

@dataclass(frozen=True)
class RecognizedOrdering:
    label: str
    system: LeonardSystemRep
    params: ParameterData


@dataclass(frozen=True)
class RecognitionResult:
    field: FieldSpec
    d: int
    orderings: Tuple[RecognizedOrdering, ...]


def _eigenvalues(m: Matrix, name: str) -> List[Any]:
    roots = field_roots(char_poly(m))
    if len(roots) != m.n or len(set(roots)) != m.n:
        raise NotMultiplicityFree(f"{name} does not have {m.n} distinct eigenvalues in {m.field}")
    return roots


def _path_order(idempotents: Sequence[Matrix], other: Matrix, name: str) -> List[int]:
    n = len(idempotents)
    if n == 1:
        return [0]
    products = {(i, j): (idempotents[i] @ other @ idempotents[j]).is_zero()
                for i in range(n) for j in range(n) if i != j}
    neighbours = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            vanish_ij, vanish_ji = products[(i, j)], products[(j, i)]
            if vanish_ij != vanish_ji:
                raise NotTridiagonalizable(f"{name}: only one of E_{i} X E_{j}, E_{j} X E_{i} vanishes")
            if not vanish_ij:
                neighbours[i].append(j)
                neighbours[j].append(i)
    ends = [i for i in range(n) if len(neighbours[i]) == 1]
    if any(len(v) > 2 for v in neighbours.values()) or len(ends) != 2:
        raise NotTridiagonalizable(f"{name}: support graph is not a path")
    order, previous = [ends[0]], None
    while len(order) < n:
        current = order[-1]
        following = [j for j in neighbours[current] if j != previous]
        if not following:
            raise NotTridiagonalizable(f"{name}: support graph is disconnected")
        previous = current
        order.append(following[0])
    return order


def recognize_leonard_pair(A: Matrix, A_star: Matrix) -> RecognitionResult:
    if A.field != A_star.field:
        raise FieldMismatch(f"A is over {A.field}, A* over {A_star.field}")
    if A.n != A_star.n:
        raise DimensionMismatch(f"A is {A.n}x{A.n}, A* is {A_star.n}x{A_star.n}")
    field, d = A.field, A.n - 1
    theta = _eigenvalues(A, "A")
    theta_star = _eigenvalues(A_star, "A*")
    E = idempotents_lagrange(A, theta)
    E_star = idempotents_lagrange(A_star, theta_star)
    order = _path_order(E, A_star, "A")
    order_star = _path_order(E_star, A, "A*")

    traversals = [("f", order), ("r", order[::-1])] if d > 0 else [("f", order)]
    traversals_star = [("f", order_star), ("r", order_star[::-1])] if d > 0 else [("f", order_star)]
    orderings = []
    for tag, o in traversals:
        for tag_star, os in traversals_star:
            rep = LeonardSystemRep(
                field, d, A, A_star,
                tuple(E[i] for i in o), tuple(E_star[i] for i in os),
                tuple(theta[i] for i in o), tuple(theta_star[i] for i in os),
            )
            params = extract_parameters(rep)
            if not validate_parameter_array(params).valid:
                raise NotALeonardPair(f"ordering {tag}{tag_star} yields an invalid parameter array")
            orderings.append(RecognizedOrdering(tag + tag_star, rep, params))
    logger.debug("recognized Leonard pair of diameter %d with %d orderings", d, len(orderings))
    return RecognitionResult(field, d, tuple(orderings))


# Auxiliary constructions

@dataclass(frozen=True)
class SplitTransform:
    name: str
    computed: Matrix
    predicted: Matrix

    @property
    def holds(self) -> bool:
        return self.computed == self.predicted


def split_form_transforms(p: ParameterData) -> List[SplitTransform]:
    field, d = p.field, p.d
    ones = [field.one] * d
    A = lower_bidiagonal(field, p.theta, ones)
    A_star = upper_bidiagonal(field, p.theta_star, p.varphi)
    G = Matrix.diagonal(field, [field.product(p.varphi[:i]) for i in range(d + 1)])
    G_inv = G.inverse()
    Z = Matrix.from_function(field, d + 1, lambda i, j: field.one if i + j == d else field.zero)
    rev = lambda seq: tuple(reversed(seq))  # noqa: E731
    return [
        SplitTransform("G^-1 A*^T G", G_inv @ A_star.transpose() @ G,
                       lower_bidiagonal(field, p.theta_star, ones)),
        SplitTransform("G^-1 A^T G", G_inv @ A.transpose() @ G,
                       upper_bidiagonal(field, p.theta, p.varphi)),
        SplitTransform("Z A^T Z", Z @ A.transpose() @ Z,
                       lower_bidiagonal(field, rev(p.theta), ones)),
        SplitTransform("Z A*^T Z", Z @ A_star.transpose() @ Z,
                       upper_bidiagonal(field, rev(p.theta_star), rev(p.varphi))),
        SplitTransform("Z G A* G^-1 Z", Z @ G @ A_star @ G_inv @ Z,
                       lower_bidiagonal(field, rev(p.theta_star), ones)),
        SplitTransform("Z G A G^-1 Z", Z @ G @ A @ G_inv @ Z,
                       upper_bidiagonal(field, rev(p.theta), rev(p.varphi))),
    ]


@dataclass(frozen=True)
class IrreducibilityReport:
    phi: Tuple[Any, ...]
    invariant_levels: Tuple[int, ...]

    @property
    def irreducible(self) -> bool:
        return not self.invariant_levels


def module_irreducibility(field: FieldSpec, theta: Sequence, theta_star: Sequence,
                          varphi: Sequence) -> IrreducibilityReport:
    """Levels r where sum_{h >= r} E*_h V is A-invariant for the split pair."""
    theta = [field(v) for v in theta]
    theta_star = [field(v) for v in theta_star]
    varphi = [field(v) for v in varphi]
    d = len(theta) - 1
    if len(theta_star) != d + 1 or len(varphi) != d:
        raise SizeMismatch("theta, theta_star and varphi lengths do not match")
    A = lower_bidiagonal(field, theta, [field.one] * d)
    A_star = upper_bidiagonal(field, theta_star, varphi)
    E_star = idempotents_lagrange(A_star, theta_star)
    levels = []
    for r in range(1, d + 1):
        S = E_star[r]
        for h in range(r + 1, d + 1):
            S = S + E_star[h]
        AS = A @ S
        joined = [list(S.rows[i]) + list(AS.rows[i]) for i in range(d + 1)]
        if rank_of(field, joined) == S.rank():
            levels.append(r)
    return IrreducibilityReport(phi_from_varphi(field, theta, theta_star, varphi), tuple(levels))


NINTH_KINDS = ("varphi1", "phi1", "varphi_d", "phi_d")


def reconstruct_from_nine(field: FieldSpec, d: int, theta_head: Sequence, theta_star_head: Sequence,
                          eighth: Optional[Tuple[str, Any]], ninth: Tuple[str, Any]) -> ParameterData:
    """Rebuild a parameter array from d, three leading theta and theta*, one of
    theta_3 / theta*_3, and one of varphi_1, phi_1, varphi_d, phi_d.

    For d <= 2 the heads carry d+1 entries and ``eighth`` is ignored.
    """
    if d < 0:
        raise SizeMismatch(f"diameter must be nonnegative, got {d}")
    head_len = min(d, 2) + 1
    theta = [field(v) for v in theta_head]
    theta_star = [field(v) for v in theta_star_head]
    if len(theta) != head_len or len(theta_star) != head_len:
        raise SizeMismatch(f"theta and theta_star heads need {head_len} entries for d={d}")
    if d >= 3:
        if eighth is None or eighth[0] not in ("theta3", "theta_star3"):
            raise SizeMismatch("d >= 3 needs theta3 or theta_star3 as the eighth parameter")
        kind, value = eighth[0], field(eighth[1])
        if kind == "theta3":
            c = field.div(theta[0] - value, theta[1] - theta[2])
        else:
            c = field.div(theta_star[0] - value, theta_star[1] - theta_star[2])
        # With only d = 3 the common value is pinned down by the one given entry.
        for seq in (theta, theta_star):
            for i in range(2, d):
                seq.append(seq[i - 2] - c * (seq[i - 1] - seq[i]))
    if d == 0:
        return ParameterData(field, 0, tuple(theta), tuple(theta_star), (), ())
    kind, value = ninth[0], field(ninth[1])
    if kind not in NINTH_KINDS:
        raise SizeMismatch(f"ninth parameter must be one of {', '.join(NINTH_KINDS)}")
    t, ts = theta, theta_star
    vt = vartheta_sequence(t, field)
    if kind == "varphi1":
        phi1 = value - (ts[1] - ts[0]) * (t[0] - t[d])
    elif kind == "phi1":
        phi1 = value
    elif kind == "varphi_d":
        phi1 = value - (ts[d] - ts[0]) * (t[d - 1] - t[d])
    else:
        varphi1 = value - (ts[d] - ts[0]) * (t[1] - t[0])
        phi1 = varphi1 - (ts[1] - ts[0]) * (t[0] - t[d])
    varphi = [phi1 * vt[i] + (ts[i] - ts[0]) * (t[i - 1] - t[d]) for i in range(1, d + 1)]
    varphi1 = varphi[0]
    phi = [varphi1 * vt[i] + (ts[i] - ts[0]) * (t[d - i + 1] - t[0]) for i in range(1, d + 1)]
    return ParameterData(field, d, tuple(t), tuple(ts), tuple(varphi), tuple(phi))


@dataclass(frozen=True)
class SystemCheck:
    failures: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_system(rep: LeonardSystemRep) -> SystemCheck:
    failures = []
    n, field = rep.d + 1, rep.field
    identity = Matrix.identity(field, n)
    for name, X, Es, eigs in (("A", rep.A, rep.E, rep.theta), ("A*", rep.A_star, rep.E_star, rep.theta_star)):
        if len(Es) != n or len(eigs) != n:
            raise DimensionMismatch(f"{name}: expected {n} idempotents")
        total = Matrix.zeros(field, n)
        for i, (E, t) in enumerate(zip(Es, eigs)):
            if X @ E != E.scale(t) or E @ X != E.scale(t):
                failures.append(f"{name} E_{i} != theta_{i} E_{i}")
            for j, F in enumerate(Es):
                expected = E if i == j else Matrix.zeros(field, n)
                if E @ F != expected:
                    failures.append(f"{name}: E_{i} E_{j} wrong")
            total = total + E
        if total != identity:
            failures.append(f"{name}: idempotents do not sum to I")
    return SystemCheck(tuple(failures))
