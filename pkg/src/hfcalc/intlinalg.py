"""Exact integer and rational linear algebra.

Everything here works over plain Python ints (arbitrary precision) or
fractions.Fraction; no floating point is ever used.  Matrices are lists of
lists, row-major.  The workhorses are the Smith normal form with its
unimodular transforms, integer kernels / solvers built on it, and a Hermite
form used to make lattice bases canonical across runs.
"""

from fractions import Fraction


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                oi = out[i]
                for j in range(m):
                    oi[j] += a * Bt[j]
    return out


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def smith_normal_form(M):
    """Smith normal form with transforms.

    Returns (U, D, V) with U @ M @ V == D, U and V unimodular, and D diagonal
    with d1 | d2 | ... (nonnegative entries).  Works for any shape, including
    empty matrices.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    D = [list(r) for r in M]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        # row dst += c * row src
        D[dst] = [x + c * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for r in D:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < rows and t < cols:
        # find a pivot
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t with row ops
            done = True
            for i in range(t + 1, rows):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if D[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain
    n = min(rows, cols)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if b % (a if a else 1) != 0 or (a == 0 and b != 0):
                # fold entry i+1 into entry i and re-reduce
                add_col(i + 1, i, 1)
                while True:
                    if D[i + 1][i]:
                        q = D[i + 1][i] // D[i][i] if D[i][i] else 0
                        if D[i][i]:
                            add_row(i, i + 1, -q)
                        if D[i + 1][i]:
                            swap_rows(i, i + 1)
                    elif D[i][i + 1]:
                        q = D[i][i + 1] // D[i][i] if D[i][i] else 0
                        if D[i][i]:
                            add_col(i, i + 1, -q)
                        if D[i][i + 1]:
                            swap_cols(i, i + 1)
                    else:
                        break
                if D[i][i] < 0:
                    negate_row(i)
                if D[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
    return U, D, V


def det_sign(A):
    """Sign of det of a square integer matrix (0 if singular)."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    sign = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        if M[c][c] < 0:
            sign = -sign
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return sign


def solve_int(A, b):
    """One integer solution x of A x = b, or None if there is none."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if rows == 0:
        return [0] * cols
    U, D, V = smith_normal_form(A)
    c = mat_vec(U, b)
    y = [0] * cols
    for i in range(rows):
        d = D[i][i] if i < cols else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    return mat_vec(V, y)


def kernel_basis(A):
    """Basis (list of vectors) of the integer kernel of A."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if rows == 0:
        return [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    _, D, V = smith_normal_form(A)
    basis = []
    for j in range(cols):
        d = D[j][j] if j < rows else 0
        if d == 0:
            basis.append([V[i][j] for i in range(cols)])
    return basis


def hermite_rows(B):
    """Row-style Hermite normal form of the lattice spanned by the rows of B.

    Returns a canonical basis: echelon rows with positive pivots and entries
    above each pivot reduced to [0, pivot).  Zero rows are dropped.
    """
    rows = [list(r) for r in B if any(r)]
    if not rows:
        return []
    cols = len(rows[0])
    out = []
    col = 0
    while rows and col < cols:
        rows.sort(key=lambda r: (r[col] == 0, abs(r[col]) if r[col] else 0))
        if rows[0][col] == 0:
            col += 1
            continue
        # gcd-reduce all rows against the smallest leading entry
        while True:
            lead = rows[0]
            reduced = False
            for r in rows[1:]:
                if r[col]:
                    q = r[col] // lead[col]
                    for j in range(cols):
                        r[j] -= q * lead[j]
                    reduced = True
            rows.sort(key=lambda r: (r[col] == 0, abs(r[col]) if r[col] else 0))
            if not reduced or all(r[col] == 0 for r in rows[1:]):
                if all(r[col] == 0 for r in rows[1:]):
                    break
        lead = rows.pop(0)
        if lead[col] < 0:
            lead = [-x for x in lead]
        out.append(lead)
        col += 1
    # reduce entries above pivots
    for i in reversed(range(len(out))):
        piv_col = next(j for j, x in enumerate(out[i]) if x)
        for k in range(i):
            q = out[k][piv_col] // out[i][piv_col]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return out


class QuotientGroup:
    """Finitely generated abelian group Z^n / (row span of R), in Smith form.

    Coordinates of a vector are reported in the Smith basis: one coordinate
    per nontrivial invariant factor (taken mod the factor; factor 0 means a
    free Z summand).
    """

    def __init__(self, n, relation_rows):
        self.n = n
        if relation_rows:
            U, D, V = smith_normal_form(transpose(relation_rows))
            # columns of relations live in Z^n, so relations^T is n x k and
            # U maps Z^n to Smith coordinates
            self._U = U
            factors = []
            k = len(relation_rows)
            for i in range(n):
                d = D[i][i] if i < min(n, k) else 0
                factors.append(d)
        else:
            self._U = identity(n)
            factors = [0] * n
        # keep only factors != 1 (trivial summands drop out)
        self.slots = [(i, d) for i, d in enumerate(factors) if d != 1]
        self.invariants = tuple(d for _, d in self.slots)

    @property
    def is_trivial(self):
        return not self.slots

    @property
    def free_rank(self):
        return sum(1 for d in self.invariants if d == 0)

    @property
    def torsion(self):
        return tuple(d for d in self.invariants if d != 0)

    @property
    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def coords(self, v):
        """Smith coordinates of the class of v, canonical per class."""
        u = mat_vec(self._U, list(v))
        out = []
        for i, d in self.slots:
            out.append(u[i] % d if d else u[i])
        return tuple(out)


def solve_rational(A, b):
    """One rational solution of A x = b, or None; A, b over int/Fraction."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    piv_cols = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if M[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(piv_cols):
        x[c] = M[i][cols]
    return x


def congruent_diagonalization(Q):
    """Inertia of a symmetric integer/rational matrix by Lagrange reduction.

    Returns (n_plus, n_minus, n_zero).  Pure rational arithmetic: symmetric
    row/column operations, with the standard pivot fallback when the whole
    diagonal vanishes on the remaining block.
    """
    n = len(Q)
    M = [[Fraction(x) for x in row] for row in Q]
    plus = minus = zero = 0
    idx = list(range(n))
    k = 0
    while k < n:
        # find a nonzero diagonal entry in the remaining block
        piv = next((i for i in range(k, n) if M[i][i] != 0), None)
        if piv is None:
            off = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if M[i][j] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                zero += n - k
                break
            i, j = off
            # row/col i += row/col j creates 2*M[i][j] on the diagonal
            for t in range(n):
                M[i][t] += M[j][t]
            for t in range(n):
                M[t][i] += M[t][j]
            piv = i
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            for row in M:
                row[k], row[piv] = row[piv], row[k]
        d = M[k][k]
        if d > 0:
            plus += 1
        else:
            minus += 1
        for i in range(k + 1, n):
            if M[i][k]:
                f = M[i][k] / d
                for t in range(n):
                    M[i][t] -= f * M[k][t]
                for t in range(n):
                    M[t][i] -= f * M[t][k]
        k += 1
    del idx
    return plus, minus, zero
