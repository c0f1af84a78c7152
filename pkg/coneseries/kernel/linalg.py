"""
Exact linear algebra: row echelon forms and right kernels over the rationals and over Q(T).
"""

from fractions import Fraction
from functools import reduce
from typing import List, Sequence, Tuple

from coneseries.kernel.polynomial import RatFun, UniPoly
from coneseries.kernel.rational import primitive
from coneseries.standalone.errors import UsageError


def _is_zero(value) -> bool:
    if isinstance(value, (UniPoly, RatFun)):
        return value.is_zero()
    return value == 0


def form_echelon(m: List[list]) -> Tuple[List[int], List[int]]:
    """
    Bring the matrix m into row echelon form in place using field division.

    Args:
        m (list): list of rows with entries supporting +, -, * and /

    Returns:
        Tuple[list, list]: pivot columns and free columns
    """
    free_cols: List[int] = []
    pivot_cols: List[int] = []
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows > 0 else 0
    piv_r = 0
    for piv_c in range(n_cols):
        i_row = next((r for r in range(piv_r, n_rows) if not _is_zero(m[r][piv_c])), None)
        if i_row is None:
            free_cols.append(piv_c)
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            if _is_zero(fr):
                continue
            frp = fr / fp
            for c in range(piv_c, n_cols):
                m[r][c] = m[r][c] - m[piv_r][c] * frp
        pivot_cols.append(piv_c)
        piv_r += 1
    return pivot_cols, free_cols


def _form_echelon_fraction_free(m: List[List[UniPoly]]) -> Tuple[List[int], List[int]]:
    """
    Polynomial row echelon form with cross multiplication; every updated row is divided by the gcd of its entries
    so the degrees stay bounded.
    """
    free_cols: List[int] = []
    pivot_cols: List[int] = []
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows > 0 else 0
    piv_r = 0
    for piv_c in range(n_cols):
        i_row = next((r for r in range(piv_r, n_rows) if not m[r][piv_c].is_zero()), None)
        if i_row is None:
            free_cols.append(piv_c)
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            if fr.is_zero():
                continue
            m[r] = [fp * m[r][c] - fr * m[piv_r][c] for c in range(n_cols)]
            content = reduce(lambda a, b: a.gcd(b), m[r], UniPoly())
            if content.degree > 0:
                m[r] = [entry // content for entry in m[r]]
        pivot_cols.append(piv_c)
        piv_r += 1
    return pivot_cols, free_cols


def back_substitution(m: List[list], pivot_cols: List[int], free_col: int, zero, one) -> list:
    """
    Kernel vector of an echelon matrix with the free variable ``free_col`` set to one and all other free variables
    set to zero.
    """
    n_cols = len(m[0])
    sol = [zero] * n_cols
    sol[free_col] = one
    for r in range(len(pivot_cols) - 1, -1, -1):
        piv_c = pivot_cols[r]
        s = zero
        for c in range(piv_c + 1, n_cols):
            if not _is_zero(sol[c]):
                s = s + m[r][c] * sol[c]
        sol[piv_c] = -s / m[r][piv_c]
    return sol


def rational_kernel(rows: Sequence[Sequence]) -> List[Tuple[Fraction, ...]]:
    """
    Basis of the right kernel of a rational matrix, one vector per free column, each with its free entry equal to 1.
    """
    if len(rows) == 0:
        raise UsageError("The kernel of an empty row list needs an explicit dimension.")
    m = [[Fraction(v) for v in row] for row in rows]
    pivot_cols, free_cols = form_echelon(m)
    return [
        tuple(back_substitution(m, pivot_cols, c, Fraction(0), Fraction(1)))
        for c in free_cols
    ]


def orthogonal_complement(vectors: Sequence[Sequence], n: int) -> List[Tuple[int, ...]]:
    """
    Primitive integer basis of the subspace orthogonal to all given vectors in dimension n.
    """
    rows = [list(v) for v in vectors if any(a != 0 for a in v)]
    if not rows:
        return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return [primitive(v) for v in rational_kernel(rows)]


def rank(rows: Sequence[Sequence]) -> int:
    if len(rows) == 0:
        return 0
    m = [[Fraction(v) for v in row] for row in rows]
    pivot_cols, _ = form_echelon(m)
    return len(pivot_cols)


def row_space_basis(rows: Sequence[Sequence]) -> List[Tuple[int, ...]]:
    """
    Canonical basis of the row space: reduced row echelon form with every row scaled to a primitive integer vector
    whose pivot entry is positive.
    """
    m = [[Fraction(v) for v in row] for row in rows if any(a != 0 for a in row)]
    if not m:
        return []
    pivot_cols, _ = form_echelon(m)
    m = m[: len(pivot_cols)]
    for r in range(len(pivot_cols) - 1, -1, -1):
        piv_c = pivot_cols[r]
        lead = m[r][piv_c]
        m[r] = [v / lead for v in m[r]]
        for above in range(r):
            factor = m[above][piv_c]
            if factor != 0:
                m[above] = [a - factor * b for a, b in zip(m[above], m[r])]
    return [primitive(row) for row in m]


def ratfun_kernel(matrix: Sequence[Sequence[RatFun]]) -> List[Tuple[RatFun, ...]]:
    """
    Basis of the right kernel of a matrix over Q(T).

    Rows are cleared of denominators and eliminated fraction free over Q[T]; the kernel vectors are then solved over
    Q(T) and normalised so that their first nonzero entry is 1.

    Args:
        matrix (list): rows of RatFun entries, at least one column

    Returns:
        list: kernel basis, empty when the kernel is trivial
    """
    rows = [[e if isinstance(e, RatFun) else RatFun.from_poly(e) for e in row] for row in matrix]
    if not rows or not rows[0]:
        raise UsageError("ratfun_kernel needs at least one row and one column.")
    poly_rows = []
    for row in rows:
        den = reduce(lambda a, b: (a * b) // a.gcd(b), (e.den for e in row), UniPoly.constant(1))
        poly_rows.append([e.num * (den // e.den) for e in row])
    pivot_cols, free_cols = _form_echelon_fraction_free(poly_rows)
    m = [[RatFun(e) for e in row] for row in poly_rows]
    zero, one = RatFun(UniPoly()), RatFun(UniPoly.constant(1))
    basis = []
    for c in free_cols:
        vector = back_substitution(m, pivot_cols, c, zero, one)
        lead = next(e for e in vector if not e.is_zero())
        basis.append(tuple(e / lead for e in vector))
    return basis
