"""Small exact linear algebra over Fraction, used by the polytope kernel."""

from fractions import Fraction


def rank(rows):
    """Rank of a list of equal-length Fraction tuples (Gaussian elimination)."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pr = m[r]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col] / pr[col]
                m[i] = [a - f * b for a, b in zip(m[i], pr)]
        r += 1
        if r == len(m):
            break
    return r


def independent_rows(rows, stop_at=None):
    """Indices of a maximal linearly independent subset, greedy in order.

    Keeps an eliminated copy of the chosen rows so each candidate is reduced
    once. ``stop_at`` truncates the search once that many rows are found.
    """
    chosen = []
    eliminated = []  # rows in echelon form, paired with their pivot column
    for i, row in enumerate(rows):
        work = list(row)
        for erow, pivot_col in eliminated:
            factor = work[pivot_col]
            if factor != 0:
                work = [a - factor * b for a, b in zip(work, erow)]
        pivot = next((j for j, a in enumerate(work) if a != 0), None)
        if pivot is None:
            continue
        inv = 1 / work[pivot]
        eliminated.append(([a * inv for a in work], pivot))
        chosen.append(i)
        if stop_at is not None and len(chosen) == stop_at:
            break
    return chosen


def solve(columns, target):
    """Solve sum_j x_j * columns[j] = target exactly.

    Returns the coefficient tuple, or None when the system is inconsistent.
    Columns must be linearly independent (unique solution on the span).
    """
    ncols = len(columns)
    nrows = len(target)
    aug = [[columns[j][i] for j in range(ncols)] + [target[i]] for i in range(nrows)]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pr = aug[r]
        inv = 1 / pr[col]
        aug[r] = [a * inv for a in pr]
        pr = aug[r]
        for i in range(nrows):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], pr)]
        pivots.append(col)
        r += 1
    # inconsistency: a zero row with nonzero rhs
    for i in range(r, nrows):
        if any(aug[i][j] != 0 for j in range(ncols)):
            # should not happen once pivoting is done; defensive
            continue
        if aug[i][ncols] != 0:
            return None
    if len(pivots) < ncols:
        # dependent columns; caller promised independence
        raise ValueError("solve() requires independent columns")
    x = [Fraction(0)] * ncols
    for row, col in enumerate(pivots):
        x[col] = aug[row][ncols]
    return tuple(x)
