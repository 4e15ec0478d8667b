"""Centralizers, regularity and slice points of the generalized Hilbert scheme."""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ_I

from algebra import (commutator, identity, is_zero_matrix, mat_mul, nullspace_exact, rank_exact,
                     scalar_text, solve_exact, to_scalar, to_sympy, zeros)
from core.errors import ConstraintError, DegenerateStructureError, NotPrincipalError, UsageError
from .types import (LieType, Matrix, algebra_basis, contains, dn_S, family_charpoly, mat_add, mat_pow,
                    mat_scale, matrix_to_json, principal_nilpotent, require_in_algebra,
                    simple_root_positions, sl2_triple, slice_matrix, transpose)

logger = logging.getLogger(__name__)


def _flat(M: Matrix) -> List[Any]:
    return [v for row in M for v in row]


@dataclass
class Centralizer:
    dimension: int
    basis: List[Matrix] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {'dimension': self.dimension, 'basis': [matrix_to_json(M) for M in self.basis]}


def centralizer(A: Matrix, T: LieType, B: Optional[Matrix] = None) -> Centralizer:
    """Z(A) or Z(A, B) inside the algebra, by an exact nullspace over the algebra basis."""
    require_in_algebra(T, A, 'A')
    if B is not None:
        require_in_algebra(T, B, 'B')
    basis = algebra_basis(T)
    columns = []
    for G in basis:
        column = _flat(commutator(A, G))
        if B is not None:
            column += _flat(commutator(B, G))
        columns.append(column)
    kernel = nullspace_exact(transpose(columns), len(basis))
    elements = []
    for vector in kernel:
        X = zeros(T.m)
        for c, G in zip(vector, basis):
            if c:
                X = mat_add(X, mat_scale(c, G))
        elements.append(X)
    logger.debug("dim Z in %s: %d", T.name, len(elements))
    return Centralizer(len(elements), elements)


def is_regular(A: Matrix, T: LieType) -> bool:
    return centralizer(A, T).dimension == T.rank


def in_hilb(A: Matrix, B: Matrix, T: LieType) -> bool:
    """[A, B] = 0 and dim Z(A, B) = rank."""
    if not is_zero_matrix(commutator(A, B)):
        return False
    return centralizer(A, T, B).dimension == T.rank


def power_span_dimension(A: Matrix) -> int:
    """Dimension of C[A], the degree of the minimal polynomial."""
    m = len(A)
    rows = [_flat(mat_pow(A, k)) for k in range(m + 1)]
    return rank_exact(rows)


def is_cyclic_matrix(A: Matrix) -> bool:
    return power_span_dimension(A) == len(A)


def minimal_polynomial(A: Matrix) -> List[Any]:
    """Monic minimal polynomial, highest degree first."""
    m = len(A)
    powers = [_flat(mat_pow(A, k)) for k in range(m + 1)]
    for d in range(1, m + 1):
        coeffs = solve_exact(transpose(powers[:d]), powers[d])
        if coeffs is not None:
            return [QQ_I.one] + [-c for c in reversed(coeffs)]
    raise DegenerateStructureError("minimal polynomial of degree above the matrix size")


def char_polynomial(A: Matrix) -> List[Any]:
    """Monic characteristic polynomial, highest degree first."""
    x = sympy.Symbol('x')
    M = sympy.Matrix([[to_sympy(v) for v in row] for row in A])
    poly = M.charpoly(x)
    return [to_scalar(sympy.expand(c)) for c in poly.all_coeffs()]


def _poly_text(coeffs: Sequence[Any]) -> List[str]:
    return [scalar_text(c) for c in coeffs]


def principal_slice(T: LieType, t: Sequence[Any], tau: Optional[Any] = None) -> Tuple[Matrix, Dict[str, Any]]:
    """Slice matrix together with its characteristic polynomial check."""
    if tau is not None and T.family != 'D':
        raise UsageError(f"tau is a D-family parameter, {T.name} has none")
    A = slice_matrix(T, t, tau)
    actual = char_polynomial(A)
    expected = family_charpoly(T, t, tau)
    match = actual == expected
    if not match:
        logger.warning("Characteristic polynomial of the %s slice differs from the family formula", T.name)
    return A, {'type': T.name, 'charpoly': _poly_text(actual), 'expected': _poly_text(expected), 'match': match}


@dataclass
class SlicePoint:
    """Slice coordinates t (and tau for D) with centralizer coordinates mu (and sigma for D).

    For D_n the centralizer part is sum mu_2k A^(2k-1) plus sigma S_t when
    tau = 0; a further mu_2n entry multiplies A^(2n-1) when tau != 0.
    """
    type: LieType
    t: List[Any]
    mu: List[Any]
    tau: Any = None
    sigma: Any = None

    def __post_init__(self):
        self.t = [to_scalar(v) for v in self.t]
        self.mu = [to_scalar(v) for v in self.mu]
        if self.type.family == 'D':
            self.tau = to_scalar(self.tau if self.tau is not None else 0)
            self.sigma = to_scalar(self.sigma if self.sigma is not None else 0)
        elif self.tau is not None or self.sigma is not None:
            raise UsageError(f"tau and sigma are D-family parameters, {self.type.name} has none")

    @property
    def is_zero_fiber(self) -> bool:
        return not any(self.t) and not (self.type.family == 'D' and self.tau)

    def slice(self) -> Matrix:
        return slice_matrix(self.type, self.t, self.tau)

    def s_t(self) -> Matrix:
        """S + t_(2n-2) S^T, the extra centralizer direction of a D slice with tau = 0."""
        S = dn_S(self.type)
        return mat_add(S, mat_scale(self.t[-1], transpose(S)))

    def matrices(self) -> Tuple[Matrix, Matrix]:
        T = self.type
        A = self.slice()
        m, r = T.m, T.rank
        B = zeros(m)
        if T.family == 'A':
            if len(self.mu) != r:
                raise ConstraintError(f"A slice point needs {r} mu parameters, got {len(self.mu)}")
            for k, mk in enumerate(self.mu, start=2):
                B = mat_add(B, mat_scale(mk, mat_pow(A, k - 1)))
            trace = sum((B[i][i] for i in range(m)), QQ_I.zero)
            B = mat_add(B, mat_scale(-trace / QQ_I(m, 0), identity(m)))
        else:
            allowed = (r - 1, r) if T.family == 'D' else (r,)
            if len(self.mu) not in allowed:
                raise ConstraintError(f"{T.name} slice point needs {allowed[-1]} mu parameters, got {len(self.mu)}")
            for k, mk in enumerate(self.mu, start=1):
                B = mat_add(B, mat_scale(mk, mat_pow(A, 2 * k - 1)))
            if T.family == 'D' and self.sigma:
                B = mat_add(B, mat_scale(self.sigma, self.s_t()))
        if not is_zero_matrix(commutator(A, B)):
            raise ConstraintError("centralizer parameters do not commute with the slice point",
                                  {'type': T.name, 'tau': scalar_text(self.tau) if self.tau is not None else None})
        return A, B

    def to_dict(self) -> Dict[str, Any]:
        data = {'type': self.type.name,
                't': [scalar_text(v) for v in self.t],
                'mu': [scalar_text(v) for v in self.mu]}
        if self.type.family == 'D':
            data['tau'] = scalar_text(self.tau)
            data['sigma'] = scalar_text(self.sigma)
        return data


def extract_mu2(A: Matrix, B: Matrix, T: LieType) -> Any:
    """mu_2 with B - mu_2 A irregular, read off the simple-root entries of A and B."""
    require_in_algebra(T, A, 'A')
    require_in_algebra(T, B, 'B')
    positions = simple_root_positions(T)
    if any(not A[i][j] for i, j in positions):
        raise NotPrincipalError(f"A has a vanishing simple-root entry in {T.name}")
    if not is_zero_matrix(commutator(A, B)):
        raise ConstraintError("B does not commute with A")
    ratios = [B[i][j] / A[i][j] for i, j in positions]
    candidates = list(dict.fromkeys(ratios))
    if len(candidates) > 1:
        logger.warning("Simple-root ratios disagree in %s: %s", T.name, [scalar_text(c) for c in candidates])
    for mu2 in candidates:
        shifted = mat_add(B, mat_scale(-mu2, A))
        if centralizer(shifted, T).dimension > T.rank:
            return mu2
    raise DegenerateStructureError(f"no simple-root ratio leaves B - mu2 A irregular in {T.name}",
                                   {'candidates': [scalar_text(c) for c in candidates]})


DOCUMENTED_S2_CONSTANT = 2
_DOCUMENTED = QQ_I(DOCUMENTED_S2_CONSTANT, 0)


def _sym(M: Matrix) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(v) for v in row] for row in M])


def dn_relations(T: LieType) -> Dict[str, Any]:
    """fS = Sf, S in the algebra, S^2 = c f^(2n-2) and the nu coefficients of B^2."""
    if T.family != 'D':
        raise UsageError(f"dn_relations needs a D-family type, got {T.name}")
    n = T.rank
    f = principal_nilpotent(T)
    S = dn_S(T)
    commute = is_zero_matrix(commutator(f, S))
    fS_zero = is_zero_matrix(mat_mul(f, S))
    S_in = contains(T, S)
    S2 = mat_mul(S, S)
    top = mat_pow(f, 2 * n - 2)
    pivot = next(((i, j) for i in range(T.m) for j in range(T.m) if top[i][j]), None)
    constant = S2[pivot[0]][pivot[1]] / top[pivot[0]][pivot[1]] if pivot else None
    proportional = constant is not None and is_zero_matrix(
        [[a - constant * b for a, b in zip(ra, rb)] for ra, rb in zip(S2, top)])
    if proportional and constant != _DOCUMENTED:
        logger.warning("In this basis S^2 = %s f^(%d), not %d f^(%d)", scalar_text(constant),
                       2 * n - 2, DOCUMENTED_S2_CONSTANT, 2 * n - 2)

    mu = sympy.symbols(' '.join(f'mu{2 * k}' for k in range(1, n)))
    mu = list(mu) if isinstance(mu, tuple) else [mu]
    sigma = sympy.Symbol(f'sigma{n}')
    fs, Ss = _sym(f), _sym(S)
    B = sympy.zeros(T.m)
    for k, mk in enumerate(mu, start=1):
        B += mk * fs ** (2 * k - 1)
    B += sigma * Ss
    c = to_sympy(constant) if constant is not None else sympy.Integer(0)
    N = sympy.zeros(T.m)
    M = sympy.zeros(T.m)
    for k in range(1, n):
        nu = sum((mu[i - 1] * mu[k - i] for i in range(1, k + 1)), sympy.Integer(0))
        if k == n - 1:
            nu += c * sigma ** 2
        N += nu * fs ** (2 * k)
        M += mu[k - 1] * fs ** (2 * k)
    nu_ok = (B * B - N).expand() == sympy.zeros(T.m)
    xy_ok = (fs * B - M).expand() == sympy.zeros(T.m)
    ok = commute and S_in and proportional and nu_ok and xy_ok
    return {
        'type': T.name,
        'fS_equals_Sf': commute,
        'fS_zero': fS_zero,
        'S_in_algebra': S_in,
        'S2_constant': scalar_text(constant) if constant is not None else None,
        'S2_documented_constant': DOCUMENTED_S2_CONSTANT,
        'S2_matches_documented': proportional and constant == _DOCUMENTED,
        'nu_identities': nu_ok,
        'xy_identity': xy_ok,
        'status': 'pass' if ok else 'fail'
    }


def principal_copy(T: LieType, t: Any, b: Any) -> Dict[str, Any]:
    """Image of the sl2 point (f + t e, b (f + t e)) under the principal embedding."""
    e, f, h = sl2_triple(T)
    A = mat_add(f, mat_scale(t, e))
    B = mat_scale(b, A)
    regular = is_regular(A, T)
    member = in_hilb(A, B, T)
    if not member:
        logger.warning("Principal copy of (t, b) = (%s, %s) left Hilb(%s)", t, b, T.name)
    return {'type': T.name, 'A': A, 'B': B, 'e': e, 'h': h, 'regular': regular, 'in_hilb': member}
