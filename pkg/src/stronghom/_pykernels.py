"""Pure-Python reference kernels.

These mirror ``_native.pyx`` operation for operation, so both backends return
bit-identical results.  Python integers never overflow, which makes this module
the exact fallback whenever the native int64 kernel reports an overflow.
"""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b, m, k, n):
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        row = a[i]
        acc = out[i]
        for t in range(k):
            x = row[t]
            if x:
                brow = b[t]
                for j in range(n):
                    y = brow[j]
                    if y:
                        acc[j] += x * y
    return out


def snf(rows, m, n):
    """Smith normal form ``U @ M @ V = D`` with ``Uinv = U^-1``.

    Returns ``(U, Uinv, D, V)`` as lists of lists.  Pivots are the smallest
    nonzero absolute value, ties broken in row-major order.
    """
    A = [list(r) for r in rows]
    U = _identity(m)
    Ui = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    def row_axpy(i, q, t):
        # row_i -= q * row_t
        ai, at = A[i], A[t]
        for j in range(n):
            if at[j]:
                ai[j] -= q * at[j]
        ui, ut = U[i], U[t]
        for j in range(m):
            if ut[j]:
                ui[j] -= q * ut[j]
        for r in Ui:
            if r[i]:
                r[t] += q * r[i]

    def col_axpy(j, q, t):
        # col_j -= q * col_t
        for r in A:
            if r[t]:
                r[j] -= q * r[t]
        for r in V:
            if r[t]:
                r[j] -= q * r[t]

    def row_add(t, i):
        # row_t += row_i
        at, ai = A[t], A[i]
        for j in range(n):
            if ai[j]:
                at[j] += ai[j]
        ut, ui = U[t], U[i]
        for j in range(m):
            if ui[j]:
                ut[j] += ui[j]
        for r in Ui:
            if r[t]:
                r[i] -= r[t]

    t = 0
    while t < m and t < n:
        best = 0
        bi = bj = -1
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x:
                    ax = x if x > 0 else -x
                    if best == 0 or ax < best:
                        best, bi, bj = ax, i, j
        if best == 0:
            break
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        if A[t][t] < 0:
            negate_row(t)

        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                a = A[i][t]
                if a:
                    q = a // p
                    if q:
                        row_axpy(i, q, t)
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                a = A[t][j]
                if a:
                    q = a // p
                    if q:
                        col_axpy(j, q, t)
                    if A[t][j]:
                        clean = False
            if not clean:
                # remainders are in [0, p): a strictly smaller pivot exists
                best = 0
                bi = bj = -1
                row = A[t]
                for j in range(t + 1, n):
                    x = row[j]
                    if x and (best == 0 or x < best):
                        best, bi, bj = x, t, j
                for i in range(t + 1, m):
                    x = A[i][t]
                    if x and (best == 0 or x < best):
                        best, bi, bj = x, i, t
                if bi != t:
                    swap_rows(t, bi)
                if bj != t:
                    swap_cols(t, bj)
                if A[t][t] < 0:
                    negate_row(t)
                continue
            fi = -1
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        fi = i
                        break
                if fi >= 0:
                    break
            if fi < 0:
                break
            row_add(t, fi)
        t += 1
    return U, Ui, A, V


def hnf(rows, m, n):
    """Column Hermite form of the lattice spanned by the columns of an ``m x n`` matrix.

    Returns the nonzero basis columns (as a list of columns).  Pivot rows
    increase left to right, pivots are positive, entries left of a pivot lie
    in ``[0, pivot)``.
    """
    cols = [[rows[i][j] for i in range(m)] for j in range(n)]
    cols = [c for c in cols if any(c)]
    k = len(cols)
    c = 0
    for i in range(m):
        if c == k:
            break
        while True:
            piv = -1
            best = 0
            for j in range(c, k):
                x = cols[j][i]
                if x:
                    ax = x if x > 0 else -x
                    if piv < 0 or ax < best:
                        piv, best = j, ax
            if piv < 0:
                break
            cols[c], cols[piv] = cols[piv], cols[c]
            pc = cols[c]
            p = pc[i]
            done = True
            for j in range(c + 1, k):
                cj = cols[j]
                if cj[i]:
                    q = cj[i] // p
                    for r in range(m):
                        if pc[r]:
                            cj[r] -= q * pc[r]
                    if cj[i]:
                        done = False
            if done:
                break
        if piv < 0:
            continue
        pc = cols[c]
        if pc[i] < 0:
            for r in range(m):
                pc[r] = -pc[r]
        p = pc[i]
        for j in range(c):
            cj = cols[j]
            q = cj[i] // p
            if q:
                for r in range(m):
                    if pc[r]:
                        cj[r] -= q * pc[r]
        c += 1
    return cols[:c]


def hsolve(h, y, m, r, n):
    """Solve ``H X = Y`` for ``H`` (``m x r``) in column Hermite form.

    Forward substitution down the pivot rows; returns ``X`` as rows, or
    ``None`` when no integer solution exists.
    """
    R = [list(row) for row in y]
    X = [[0] * n for _ in range(r)]
    i = 0
    for j in range(r):
        while h[i][j] == 0:
            i += 1
        p = h[i][j]
        xs = X[j]
        Ri = R[i]
        for t in range(n):
            v = Ri[t]
            if v:
                if v % p:
                    return None
                xs[t] = v // p
        for rr in range(i, m):
            hv = h[rr][j]
            if hv:
                Rr = R[rr]
                for t in range(n):
                    if xs[t]:
                        Rr[t] -= hv * xs[t]
        i += 1
    for row in R:
        if any(row):
            return None
    return X
