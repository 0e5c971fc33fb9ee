"""Exact rational linear algebra and a small tableau simplex.

Everything runs over fractions.Fraction.  The simplex uses Bland's rule, so
it terminates without any perturbation; infeasibility comes with a Farkas
certificate that callers can re-verify independently.
"""

from __future__ import annotations

from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rref(rows):
    """Reduced row echelon form; returns (new_rows, pivot_columns).

    rows are lists of Fractions (any width); input is not mutated.
    """
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, nvars):
    """Basis of the kernel of the homogeneous system rows * x = 0."""
    if not rows:
        return [[_ONE if j == i else _ZERO for j in range(nvars)] for i in range(nvars)]
    mat, pivots = rref(rows)
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for f in free:
        vec = [_ZERO] * nvars
        vec[f] = _ONE
        for r, p in enumerate(pivots):
            vec[p] = -mat[r][f]
        basis.append(vec)
    return basis


def in_span(basis, vec) -> bool:
    """Exact membership of vec in the span of basis vectors."""
    rows = [list(b) for b in basis]
    return rank(rows) == rank(rows + [list(vec)])


class BoxLP:
    """Equalities A x = b with every variable constrained to [0, 1].

    Internally: standard form over x (n vars) and upper-bound slacks s
    (n vars) with rows [A 0; I I], then a two-phase tableau simplex with
    Bland's rule.  Artificial columns are kept during phase 1 so the final
    tableau holds B^-1 and duals (Farkas certificates) fall out.
    """

    def __init__(self, A, b):
        self.n = len(A[0]) if A else 0
        self.m = len(A)
        self.A = [[Fraction(v) for v in row] for row in A]
        self.b = [Fraction(v) for v in b]

    def _standard(self):
        n, m = self.n, self.m
        rows = []
        rhs = []
        for i in range(m):
            rows.append(self.A[i] + [_ZERO] * n)
            rhs.append(self.b[i])
        for j in range(n):
            row = [_ZERO] * (2 * n)
            row[j] = _ONE
            row[n + j] = _ONE
            rows.append(row)
            rhs.append(_ONE)
        return rows, rhs

    @staticmethod
    def _pivot(tab, rhs, basis, r, c):
        pv = tab[r][c]
        tab[r] = [v / pv for v in tab[r]]
        rhs[r] /= pv
        for i in range(len(tab)):
            if i != r and tab[i][c] != 0:
                f = tab[i][c]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[r])]
                rhs[i] -= f * rhs[r]
        basis[r] = c

    @staticmethod
    def _simplex(tab, rhs, basis, cost, allowed):
        """Maximize cost over the current tableau; Bland's rule; in place."""
        nrows = len(tab)
        while True:
            y = [sum(cost[basis[i]] * tab[i][j] for i in range(nrows)) for j in allowed]
            enter = None
            for idx, j in enumerate(allowed):
                if j not in basis and cost[j] - y[idx] > 0:
                    enter = j
                    break
            if enter is None:
                return OPTIMAL
            leave = None
            best = None
            for i in range(nrows):
                if tab[i][enter] > 0:
                    ratio = rhs[i] / tab[i][enter]
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return UNBOUNDED
            BoxLP._pivot(tab, rhs, basis, leave, enter)

    def solve(self, objective=None, maximize=True):
        """Returns (status, x, value, farkas).

        status OPTIMAL: x is a vertex of the box polytope (objective zero
        vector when only feasibility is wanted) and value its objective.
        status INFEASIBLE: farkas is a row-multiplier vector y over the
        m + n equations with y.A_std <= 0 componentwise and y.b_std > 0.
        """
        rows, rhs = self._standard()
        nrows = len(rows)
        width = 2 * self.n
        tab = []
        for i in range(nrows):
            if rhs[i] < 0:
                rows[i] = [-v for v in rows[i]]
                rhs[i] = -rhs[i]
            art = [_ONE if k == i else _ZERO for k in range(nrows)]
            tab.append(rows[i] + art)
        rhs = list(rhs)
        basis = [width + i for i in range(nrows)]
        cost1 = [_ZERO] * width + [Fraction(-1)] * nrows
        allowed = list(range(width + nrows))
        self._simplex(tab, rhs, basis, cost1, allowed)
        value1 = sum(cost1[basis[i]] * rhs[i] for i in range(nrows))
        if value1 < 0:
            y = [sum(cost1[basis[r]] * tab[r][width + i] for r in range(nrows))
                 for i in range(nrows)]
            # undo the sign flips applied to make rhs nonnegative
            signs = []
            srows, srhs = self._standard()
            for i in range(nrows):
                signs.append(-1 if srhs[i] < 0 else 1)
            farkas = [-y[i] * signs[i] for i in range(nrows)]
            return INFEASIBLE, None, None, farkas
        # drive leftover artificials out of the basis
        for r in range(nrows):
            if basis[r] >= width and rhs[r] == 0:
                c = next((j for j in range(width) if tab[r][j] != 0), None)
                if c is not None:
                    self._pivot(tab, rhs, basis, r, c)
        live = [r for r in range(nrows) if basis[r] < width]
        tab = [tab[r][:width] for r in live]
        rhs = [rhs[r] for r in live]
        basis = [basis[r] for r in live]
        if objective is None:
            cost2 = [_ZERO] * width
        else:
            sign = _ONE if maximize else Fraction(-1)
            cost2 = [sign * Fraction(v) for v in objective] + [_ZERO] * self.n
        status = self._simplex(tab, rhs, basis, cost2, list(range(width)))
        if status == UNBOUNDED:
            return UNBOUNDED, None, None, None
        x = [_ZERO] * self.n
        for r, bvar in enumerate(basis):
            if bvar < self.n:
                x[bvar] = rhs[r]
        value = sum((objective[j] if objective else _ZERO) * x[j] for j in range(self.n))
        if objective is not None and not maximize:
            value = sum(Fraction(objective[j]) * x[j] for j in range(self.n))
        return OPTIMAL, x, value, None

    def verify_farkas(self, farkas) -> bool:
        """Independent exact check that the certificate proves emptiness."""
        rows, rhs = self._standard()
        comb = [_ZERO] * (2 * self.n)
        total = _ZERO
        for y, row, r in zip(farkas, rows, rhs):
            for j in range(2 * self.n):
                comb[j] += y * row[j]
            total += y * r
        return all(v <= 0 for v in comb) and total > 0
