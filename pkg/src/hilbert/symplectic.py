"""Complex symplectic form tr dM_x ^ dM_y on the big cell, Poisson table, Haiman chart coordinates."""
import logging
from typing import Any, Dict, List, Sequence, Tuple

import sympy

from algebra import to_scalar, to_sympy
from core.errors import InternalError, NonGenericConfigurationError, UsageError, WrongChartError
from .bigcell import BigCellPoint, mu_symbols, reduced_mu1, t_symbols
from .ideal import Ideal
from .pairs import mult_ops

logger = logging.getLogger(__name__)

Box = Tuple[int, int]


def _form_from_matrices(Mx: sympy.Matrix, My: sympy.Matrix, coords: Sequence[sympy.Symbol]) -> sympy.Matrix:
    """Matrix of tr(dX ^ dY) in the basis dc_a; entry (a, b) is the coefficient of dc_a ^ dc_b."""
    dX = [Mx.diff(c) for c in coords]
    dY = [My.diff(c) for c in coords]
    size = len(coords)
    omega = sympy.zeros(size, size)
    for a in range(size):
        for b in range(a + 1, size):
            value = sympy.expand((dX[a] * dY[b]).trace() - (dX[b] * dY[a]).trace())
            omega[a, b] = value
            omega[b, a] = -value
    return omega


def symplectic_matrix(pt: BigCellPoint) -> sympy.Matrix:
    """omega = tr dM_x ^ dM_y in the coordinates (t_1..t_n, mu_1..mu_n), evaluated at pt."""
    n = pt.n
    generic = BigCellPoint.symbolic(n)
    Mx, My = generic.matrices()
    coords = t_symbols(n) + mu_symbols(n)
    omega = _form_from_matrices(Mx, My, coords)
    values = dict(zip(coords, pt.t + pt.mu))
    omega = omega.subs(values, simultaneous=True).applyfunc(sympy.expand)
    if omega + omega.T != sympy.zeros(2 * n, 2 * n):
        raise InternalError("symplectic matrix is not antisymmetric")
    return omega


def poisson_bivector(n: int) -> sympy.Matrix:
    """pi = -omega^(-1) on the symbolic big cell."""
    omega = symplectic_matrix(BigCellPoint.symbolic(n))
    tt = omega[:n, :n]
    mm = omega[n:, n:]
    if tt.is_zero_matrix and mm.is_zero_matrix:
        block = omega[:n, n:]
        inv = block.inv(method='LU').applyfunc(lambda e: sympy.expand(sympy.cancel(e)))
        pi = sympy.zeros(2 * n, 2 * n)
        pi[:n, n:] = inv.T
        pi[n:, :n] = -inv
        return pi
    logger.debug("Symplectic matrix has diagonal blocks; inverting in full")
    return (-omega.inv(method='LU')).applyfunc(lambda e: sympy.expand(sympy.cancel(e)))


def expected_bracket(n: int, i: int, j: int, t0: int = -1) -> sympy.Expr:
    """{mu_i, t_j} = t_(j-i) with t_0 given by t0 and t_(<0) = 0."""
    d = j - i
    if d < 0:
        return sympy.Integer(0)
    if d == 0:
        return sympy.Integer(t0)
    return sympy.Symbol(f't{d}')


def expected_bracket_printed(n: int, i: int, j: int) -> sympy.Expr:
    """The same table with t_0 = +1, as commonly printed.

    With the companion convention of the big cell the diagonal brackets come
    out as -1, so this variant is kept only to report the disagreement.
    """
    return expected_bracket(n, i, j, t0=1)


def _table_mismatches(pi: sympy.Matrix, n: int, oracle) -> List[Dict[str, str]]:
    coords = t_symbols(n) + mu_symbols(n)
    mismatches = []
    for a in range(2 * n):
        for b in range(2 * n):
            value = pi[a, b]
            if a < n and b < n or a >= n and b >= n:
                expected = sympy.Integer(0)
            elif a >= n:
                expected = oracle(n, a - n + 1, b + 1)
            else:
                expected = -oracle(n, b - n + 1, a + 1)
            if sympy.expand(value - expected) != 0:
                mismatches.append({'left': str(coords[a]), 'right': str(coords[b]),
                                   'value': str(value), 'expected': str(expected)})
    return mismatches


def poisson_table(n: int) -> Dict[str, Any]:
    """All brackets of coordinate functions and their comparison with the closed table."""
    pi = poisson_bivector(n)
    coords = t_symbols(n) + mu_symbols(n)
    mismatches = _table_mismatches(pi, n, expected_bracket)
    printed = _table_mismatches(pi, n, expected_bracket_printed)
    if not mismatches and printed:
        logger.warning("Poisson table for n=%d has t_0 = -1; the printed t_0 = +1 table misses %d bracket(s)",
                       n, len(printed))
    brackets = {f"{{{coords[a]},{coords[b]}}}": str(pi[a, b])
                for a in range(2 * n) for b in range(2 * n) if pi[a, b] != 0}
    return {'n': n, 'brackets': brackets, 'mismatches': mismatches,
            'printed_mismatches': len(printed), 'status': 'pass' if not mismatches else 'fail'}


class YoungDiagram:
    """Boxes (i, j) standing for x^i y^j; rows[j] is the length of row j."""

    def __init__(self, rows: Sequence[int]):
        rows = [int(r) for r in rows if int(r) > 0]
        if not rows or any(a < b for a, b in zip(rows, rows[1:])):
            raise UsageError(f"row lengths must be positive and non-increasing, got {list(rows)}")
        self.rows = rows

    @classmethod
    def from_boxes(cls, boxes: Sequence[Box]) -> 'YoungDiagram':
        boxes = set(tuple(b) for b in boxes)
        rows = []
        j = 0
        while any(b[1] == j for b in boxes):
            rows.append(sum(1 for b in boxes if b[1] == j))
            j += 1
        diagram = cls(rows)
        if set(diagram.boxes()) != boxes:
            raise UsageError(f"boxes {sorted(boxes)} do not form a Young diagram")
        return diagram

    def boxes(self) -> List[Box]:
        return [(i, j) for j, length in enumerate(self.rows) for i in range(length)]

    def column_height(self, i: int) -> int:
        return sum(1 for length in self.rows if length > i)

    def __len__(self) -> int:
        return sum(self.rows)


def haiman_coords(ideal: Ideal, diagram: YoungDiagram) -> Dict[Box, Tuple[sympy.Expr, sympy.Expr]]:
    """Haiman coordinates (b_{x,r}, b_{x,b}) of every box of the diagram.

    For a box x, r is the rightmost box of its row and b the bottommost box
    of its column. b_{x,r} is the coefficient of b in the expansion of the
    box right of r; b_{x,b} is the coefficient of r in the expansion of the
    box below b.
    """
    pair = mult_ops(ideal)
    if len(diagram) != pair.n:
        raise WrongChartError(f"diagram has {len(diagram)} boxes, ideal has colength {pair.n}")
    Mx, My = pair.to_sympy()
    e1 = sympy.zeros(pair.n, 1)
    e1[0] = 1

    def image(i: int, j: int) -> sympy.Matrix:
        return (Mx ** i) * (My ** j) * e1

    boxes = diagram.boxes()
    V = sympy.Matrix.hstack(*[image(i, j) for i, j in boxes])
    if sympy.expand(V.det()) == 0:
        raise WrongChartError("basis of the diagram does not span the quotient",
                              {'rows': diagram.rows})
    index = {b: k for k, b in enumerate(boxes)}

    def expansion(i: int, j: int) -> sympy.Matrix:
        return V.LUsolve(image(i, j)).applyfunc(sympy.cancel)

    coords = {}
    for i, j in boxes:
        right = (diagram.rows[j] - 1, j)
        bottom = (i, diagram.column_height(i) - 1)
        b_r = expansion(right[0] + 1, right[1])[index[bottom]]
        b_b = expansion(bottom[0], bottom[1] + 1)[index[right]]
        coords[(i, j)] = (sympy.expand(b_r), sympy.expand(b_b))
    logger.debug("Haiman coordinates for %d boxes", len(coords))
    return coords


def haiman_canonical_defect(n: int) -> sympy.Matrix:
    """omega minus sum db_{x,r} ^ db_{x,b} for the single-row chart of the symbolic big cell."""
    pt = BigCellPoint.symbolic(n)
    coords = t_symbols(n) + mu_symbols(n)
    chart = haiman_coords(pt.ideal(), YoungDiagram([n]))
    canonical = sympy.zeros(2 * n, 2 * n)
    for b_r, b_b in chart.values():
        gr = sympy.Matrix([[sympy.diff(b_r, c) for c in coords]])
        gb = sympy.Matrix([[sympy.diff(b_b, c) for c in coords]])
        canonical += gr.T * gb - gb.T * gr
    return (symplectic_matrix(pt) - canonical).applyfunc(sympy.expand)


def _configuration_jacobian(xs: List[sympy.Expr], ys: List[sympy.Expr]):
    """Jacobian of (x_i, y_i) -> (t, mu) at an exact configuration, plus the image point."""
    n = len(xs)
    X = sympy.symbols(f'X1:{n + 1}')
    x = sympy.Symbol('x')
    char = sympy.Poly(sympy.prod([x - Xi for Xi in X]), x)
    coeffs = char.all_coeffs()
    t_exprs = [-coeffs[k] for k in range(1, n + 1)]
    at = dict(zip(X, xs))
    dt = sympy.Matrix([[sympy.diff(tk, Xi).subs(at) for Xi in X] for tk in t_exprs])
    t_vals = [tk.subs(at) for tk in t_exprs]

    V = sympy.Matrix([[xi ** k for k in range(n)] for xi in xs])
    Vinv = V.inv()
    mu_vals = list(Vinv * sympy.Matrix(ys))
    dQ = lambda xi: sum(k * mu_vals[k] * xi ** (k - 1) for k in range(1, n))
    dmu_dx = sympy.zeros(n, n)
    for i, xi in enumerate(xs):
        dmu_dx[:, i] = -dQ(xi) * Vinv[:, i]

    J = sympy.zeros(2 * n, 2 * n)
    J[:n, :n] = dt
    J[n:, :n] = dmu_dx
    J[n:, n:] = Vinv
    return J, t_vals, mu_vals


def pullback_check(points: Sequence[Tuple[Any, Any]]) -> Dict[str, Any]:
    """Pull omega back along the configuration map; expect sum dx_i ^ dy_i."""
    xs = [to_sympy(to_scalar(p[0])) for p in points]
    ys = [to_sympy(to_scalar(p[1])) for p in points]
    if len(set(xs)) != len(xs):
        raise NonGenericConfigurationError("points share an x-coordinate")
    n = len(points)
    J, t_vals, mu_vals = _configuration_jacobian(xs, ys)
    omega = symplectic_matrix(BigCellPoint(n, t_vals, mu_vals))
    pullback = (J.T * omega * J).applyfunc(sympy.expand)
    canonical = sympy.zeros(2 * n, 2 * n)
    canonical[:n, n:] = sympy.eye(n)
    canonical[n:, :n] = -sympy.eye(n)
    defect = (pullback - canonical).applyfunc(sympy.simplify)
    return {'n': n, 'match': defect.is_zero_matrix, 'defect': [[str(v) for v in row] for row in defect.tolist()]}


def zero_fiber_isotropy(n: int) -> sympy.Matrix:
    """omega restricted to mu-directions of the reduced zero fiber (t = 0)."""
    reduced = BigCellPoint.symbolic(n, reduced=True)
    free_mu = mu_symbols(n)[1:]
    omega = symplectic_matrix(BigCellPoint.symbolic(n))
    coords = t_symbols(n) + mu_symbols(n)
    embedding = [sympy.Integer(0)] * n + [reduced.mu[0]] + free_mu
    J = sympy.Matrix([[sympy.diff(e, m) for m in free_mu] for e in embedding])
    at_zero = {c: 0 for c in t_symbols(n)}
    at_zero.update({mu_symbols(n)[0]: reduced_mu1(n, [0] * n, [0] + free_mu)})
    restricted = (J.T * omega * J).subs(at_zero, simultaneous=True).applyfunc(sympy.expand)
    return restricted
