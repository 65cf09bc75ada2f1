# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Native int64 kernels with checked arithmetic.

Every arithmetic step is overflow-checked; on overflow ``OverflowError`` is
raised and the caller reruns the pure-Python kernel, so results stay exact.
The Hermite kernel first retries in 128-bit arithmetic, since its
intermediate entries often outgrow int64 while the result stays small.
The control flow matches ``_pykernels`` step for step.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int chk_mulsub(long long a, long long q, long long b, long long *out) {
        long long t;
        if (__builtin_mul_overflow(q, b, &t)) return 1;
        if (__builtin_sub_overflow(a, t, out)) return 1;
        return 0;
    }
    static inline int chk_muladd(long long a, long long q, long long b, long long *out) {
        long long t;
        if (__builtin_mul_overflow(q, b, &t)) return 1;
        if (__builtin_add_overflow(a, t, out)) return 1;
        return 0;
    }
    static inline int chk_add(long long a, long long b, long long *out) {
        return __builtin_add_overflow(a, b, out);
    }
    static inline int chk_sub(long long a, long long b, long long *out) {
        return __builtin_sub_overflow(a, b, out);
    }
    static inline long long floordiv(long long a, long long p) {
        long long q = a / p;
        if ((a % p != 0) && ((a < 0) != (p < 0))) q -= 1;
        return q;
    }
    static inline long long floormod(long long a, long long p) {
        long long r = a % p;
        if (r != 0 && ((r < 0) != (p < 0))) r += p;
        return r;
    }

    /* Column Hermite form in 128-bit arithmetic, for inputs whose int64
       elimination overflows although the final entries are small.  Same
       pivoting as the int64 kernel.  Returns 0 ok, 1 overflow, 2 no memory. */
    typedef __int128 i128;
    static inline int mulsub128(i128 a, i128 q, i128 b, i128 *out) {
        i128 t;
        if (__builtin_mul_overflow(q, b, &t)) return 1;
        return __builtin_sub_overflow(a, t, out);
    }
    static inline i128 floordiv128(i128 a, i128 p) {
        i128 q = a / p;
        if ((a % p != 0) && ((a < 0) != (p < 0))) q -= 1;
        return q;
    }
    static int hnf128(const long long *in, Py_ssize_t m, Py_ssize_t k, long long *res, Py_ssize_t *out) {
        i128 *C = (i128 *) malloc((m * k > 0 ? m * k : 1) * sizeof(i128));
        Py_ssize_t i, j, r, c = 0, piv;
        i128 x, ax, best, p, q, y, lo = (i128) LLONG_MIN, hi = (i128) LLONG_MAX;
        int done, status = 0;
        if (!C) return 2;
        for (i = 0; i < m * k; i++) C[i] = in[i];
        for (i = 0; i < m && c < k && !status; i++) {
            for (;;) {
                piv = -1; best = 0;
                for (j = c; j < k; j++) {
                    x = C[j * m + i];
                    if (x != 0) {
                        ax = x > 0 ? x : -x;
                        if (piv < 0 || ax < best) { piv = j; best = ax; }
                    }
                }
                if (piv < 0) break;
                if (piv != c)
                    for (r = 0; r < m; r++) { y = C[c * m + r]; C[c * m + r] = C[piv * m + r]; C[piv * m + r] = y; }
                p = C[c * m + i];
                done = 1;
                for (j = c + 1; j < k && !status; j++) {
                    x = C[j * m + i];
                    if (x != 0) {
                        q = floordiv128(x, p);
                        for (r = 0; r < m; r++) {
                            y = C[c * m + r];
                            if (y != 0 && mulsub128(C[j * m + r], q, y, &C[j * m + r])) { status = 1; break; }
                        }
                        if (C[j * m + i] != 0) done = 0;
                    }
                }
                if (done || status) break;
            }
            if (status || piv < 0) continue;
            if (C[c * m + i] < 0)
                for (r = 0; r < m; r++) C[c * m + r] = -C[c * m + r];
            p = C[c * m + i];
            for (j = 0; j < c && !status; j++) {
                q = floordiv128(C[j * m + i], p);
                if (q != 0)
                    for (r = 0; r < m; r++) {
                        y = C[c * m + r];
                        if (y != 0 && mulsub128(C[j * m + r], q, y, &C[j * m + r])) { status = 1; break; }
                    }
            }
            c++;
        }
        for (i = 0; i < c * m && !status; i++) {
            if (C[i] < lo || C[i] > hi) status = 1;
            else res[i] = (long long) C[i];
        }
        free(C);
        *out = c;
        return status;
    }
    """
    int chk_mulsub(long long a, long long q, long long b, long long *out) nogil
    int chk_muladd(long long a, long long q, long long b, long long *out) nogil
    int chk_add(long long a, long long b, long long *out) nogil
    int chk_sub(long long a, long long b, long long *out) nogil
    long long floordiv(long long a, long long p) nogil
    long long floormod(long long a, long long p) nogil
    int hnf128(const long long* inp, Py_ssize_t m, Py_ssize_t k, long long* res, Py_ssize_t* out) nogil

cdef extern from "limits.h":
    long long LLONG_MIN

cdef long long LLMIN = LLONG_MIN


cdef long long* _alloc(Py_ssize_t size) except NULL:
    cdef long long* p = <long long*> malloc((size if size > 0 else 1) * sizeof(long long))
    if p == NULL:
        raise MemoryError()
    return p


cdef void _eye(long long* a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(n * n):
        a[i] = 0
    for i in range(n):
        a[i * n + i] = 1


cdef list _tolist(long long* a, Py_ssize_t m, Py_ssize_t n):
    cdef Py_ssize_t i, j
    return [[a[i * n + j] for j in range(n)] for i in range(m)]


def matmul(a, b, Py_ssize_t m, Py_ssize_t k, Py_ssize_t n):
    cdef long long* A = _alloc(m * k)
    cdef long long* B = _alloc(k * n)
    cdef long long* C = _alloc(m * n)
    cdef Py_ssize_t i, j, t
    cdef long long x, y
    cdef int bad = 0
    try:
        for i in range(m):
            row = a[i]
            for t in range(k):
                A[i * k + t] = row[t]
        for t in range(k):
            row = b[t]
            for j in range(n):
                B[t * n + j] = row[j]
        with nogil:
            for i in range(m * n):
                C[i] = 0
            for i in range(m):
                for t in range(k):
                    x = A[i * k + t]
                    if x == 0:
                        continue
                    for j in range(n):
                        y = B[t * n + j]
                        if y != 0:
                            if chk_muladd(C[i * n + j], x, y, &C[i * n + j]):
                                bad = 1
                                break
                    if bad:
                        break
                if bad:
                    break
        if bad:
            raise OverflowError("int64 overflow in matmul")
        return _tolist(C, m, n)
    finally:
        free(A)
        free(B)
        free(C)


cdef int _snf(long long* A, long long* U, long long* Ui, long long* V,
              Py_ssize_t m, Py_ssize_t n) noexcept nogil:
    """Returns 0 on success, 1 on overflow."""
    cdef Py_ssize_t t = 0, i, j, bi, bj, fi, r
    cdef long long best, x, ax, p, a, q, tmp
    cdef int clean
    while t < m and t < n:
        best = 0
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, n):
                x = A[i * n + j]
                if x != 0:
                    if x == LLMIN:
                        return 1
                    ax = x if x > 0 else -x
                    if best == 0 or ax < best:
                        best = ax
                        bi = i
                        bj = j
        if best == 0:
            break
        if bi != t:
            _swap_rows(A, U, Ui, m, n, t, bi)
        if bj != t:
            _swap_cols(A, V, m, n, t, bj)
        if A[t * n + t] < 0:
            if _negate_row(A, U, Ui, m, n, t):
                return 1

        while True:
            p = A[t * n + t]
            clean = 1
            for i in range(t + 1, m):
                a = A[i * n + t]
                if a != 0:
                    q = floordiv(a, p)
                    if q != 0:
                        if _row_axpy(A, U, Ui, m, n, i, q, t):
                            return 1
                    if A[i * n + t] != 0:
                        clean = 0
            for j in range(t + 1, n):
                a = A[t * n + j]
                if a != 0:
                    q = floordiv(a, p)
                    if q != 0:
                        if _col_axpy(A, V, m, n, j, q, t):
                            return 1
                    if A[t * n + j] != 0:
                        clean = 0
            if not clean:
                best = 0
                bi = -1
                bj = -1
                for j in range(t + 1, n):
                    x = A[t * n + j]
                    if x != 0 and (best == 0 or x < best):
                        best = x
                        bi = t
                        bj = j
                for i in range(t + 1, m):
                    x = A[i * n + t]
                    if x != 0 and (best == 0 or x < best):
                        best = x
                        bi = i
                        bj = t
                if bi != t:
                    _swap_rows(A, U, Ui, m, n, t, bi)
                if bj != t:
                    _swap_cols(A, V, m, n, t, bj)
                if A[t * n + t] < 0:
                    if _negate_row(A, U, Ui, m, n, t):
                        return 1
                continue
            fi = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if floormod(A[i * n + j], p) != 0:
                        fi = i
                        break
                if fi >= 0:
                    break
            if fi < 0:
                break
            if _row_add(A, U, Ui, m, n, t, fi):
                return 1
        t += 1
    return 0


cdef void _swap_rows(long long* A, long long* U, long long* Ui,
                     Py_ssize_t m, Py_ssize_t n, Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t c
    cdef long long tmp
    for c in range(n):
        tmp = A[i * n + c]
        A[i * n + c] = A[j * n + c]
        A[j * n + c] = tmp
    for c in range(m):
        tmp = U[i * m + c]
        U[i * m + c] = U[j * m + c]
        U[j * m + c] = tmp
    for c in range(m):
        tmp = Ui[c * m + i]
        Ui[c * m + i] = Ui[c * m + j]
        Ui[c * m + j] = tmp


cdef void _swap_cols(long long* A, long long* V,
                     Py_ssize_t m, Py_ssize_t n, Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t r
    cdef long long tmp
    for r in range(m):
        tmp = A[r * n + i]
        A[r * n + i] = A[r * n + j]
        A[r * n + j] = tmp
    for r in range(n):
        tmp = V[r * n + i]
        V[r * n + i] = V[r * n + j]
        V[r * n + j] = tmp


cdef int _negate_row(long long* A, long long* U, long long* Ui,
                     Py_ssize_t m, Py_ssize_t n, Py_ssize_t i) noexcept nogil:
    cdef Py_ssize_t c
    for c in range(n):
        if A[i * n + c] == LLMIN:
            return 1
    for c in range(m):
        if U[i * m + c] == LLMIN or Ui[c * m + i] == LLMIN:
            return 1
    for c in range(n):
        A[i * n + c] = -A[i * n + c]
    for c in range(m):
        U[i * m + c] = -U[i * m + c]
    for c in range(m):
        Ui[c * m + i] = -Ui[c * m + i]
    return 0


cdef int _row_axpy(long long* A, long long* U, long long* Ui,
                   Py_ssize_t m, Py_ssize_t n, Py_ssize_t i, long long q, Py_ssize_t t) noexcept nogil:
    cdef Py_ssize_t c
    cdef long long y
    for c in range(n):
        y = A[t * n + c]
        if y != 0:
            if chk_mulsub(A[i * n + c], q, y, &A[i * n + c]):
                return 1
    for c in range(m):
        y = U[t * m + c]
        if y != 0:
            if chk_mulsub(U[i * m + c], q, y, &U[i * m + c]):
                return 1
    for c in range(m):
        y = Ui[c * m + i]
        if y != 0:
            if chk_muladd(Ui[c * m + t], q, y, &Ui[c * m + t]):
                return 1
    return 0


cdef int _col_axpy(long long* A, long long* V,
                   Py_ssize_t m, Py_ssize_t n, Py_ssize_t j, long long q, Py_ssize_t t) noexcept nogil:
    cdef Py_ssize_t r
    cdef long long y
    for r in range(m):
        y = A[r * n + t]
        if y != 0:
            if chk_mulsub(A[r * n + j], q, y, &A[r * n + j]):
                return 1
    for r in range(n):
        y = V[r * n + t]
        if y != 0:
            if chk_mulsub(V[r * n + j], q, y, &V[r * n + j]):
                return 1
    return 0


cdef int _row_add(long long* A, long long* U, long long* Ui,
                  Py_ssize_t m, Py_ssize_t n, Py_ssize_t t, Py_ssize_t i) noexcept nogil:
    cdef Py_ssize_t c
    cdef long long y
    for c in range(n):
        y = A[i * n + c]
        if y != 0:
            if chk_add(A[t * n + c], y, &A[t * n + c]):
                return 1
    for c in range(m):
        y = U[i * m + c]
        if y != 0:
            if chk_add(U[t * m + c], y, &U[t * m + c]):
                return 1
    for c in range(m):
        y = Ui[c * m + t]
        if y != 0:
            if chk_sub(Ui[c * m + i], y, &Ui[c * m + i]):
                return 1
    return 0


def snf(rows, Py_ssize_t m, Py_ssize_t n):
    """Same contract as ``_pykernels.snf``; raises ``OverflowError`` on int64 overflow."""
    cdef long long* A = _alloc(m * n)
    cdef long long* U = _alloc(m * m)
    cdef long long* Ui = _alloc(m * m)
    cdef long long* V = _alloc(n * n)
    cdef Py_ssize_t i, j
    cdef int status
    try:
        for i in range(m):
            row = rows[i]
            for j in range(n):
                A[i * n + j] = row[j]
        _eye(U, m)
        _eye(Ui, m)
        _eye(V, n)
        with nogil:
            status = _snf(A, U, Ui, V, m, n)
        if status:
            raise OverflowError("int64 overflow in snf")
        return _tolist(U, m, m), _tolist(Ui, m, m), _tolist(A, m, n), _tolist(V, n, n)
    finally:
        free(A)
        free(U)
        free(Ui)
        free(V)


cdef int _hnf(long long* C, Py_ssize_t m, Py_ssize_t k, Py_ssize_t* out) noexcept nogil:
    # C is column-major: column j occupies C[j*m : (j+1)*m]
    cdef Py_ssize_t i, j, r, c = 0, piv
    cdef long long x, ax, best, p, q, y
    cdef bint done
    for i in range(m):
        if c == k:
            break
        while True:
            piv = -1
            best = 0
            for j in range(c, k):
                x = C[j * m + i]
                if x != 0:
                    if x == LLMIN:
                        return 1
                    ax = x if x > 0 else -x
                    if piv < 0 or ax < best:
                        piv = j
                        best = ax
            if piv < 0:
                break
            if piv != c:
                for r in range(m):
                    y = C[c * m + r]
                    C[c * m + r] = C[piv * m + r]
                    C[piv * m + r] = y
            p = C[c * m + i]
            done = True
            for j in range(c + 1, k):
                x = C[j * m + i]
                if x != 0:
                    q = floordiv(x, p)
                    for r in range(m):
                        y = C[c * m + r]
                        if y != 0:
                            if chk_mulsub(C[j * m + r], q, y, &C[j * m + r]):
                                return 1
                    if C[j * m + i] != 0:
                        done = False
            if done:
                break
        if piv < 0:
            continue
        if C[c * m + i] < 0:
            for r in range(m):
                if C[c * m + r] == LLMIN:
                    return 1
                C[c * m + r] = -C[c * m + r]
        p = C[c * m + i]
        for j in range(c):
            q = floordiv(C[j * m + i], p)
            if q != 0:
                for r in range(m):
                    y = C[c * m + r]
                    if y != 0:
                        if chk_mulsub(C[j * m + r], q, y, &C[j * m + r]):
                            return 1
        c += 1
    out[0] = c
    return 0


def hnf(rows, Py_ssize_t m, Py_ssize_t n):
    """Same contract as ``_pykernels.hnf``; raises ``OverflowError`` on int64 overflow."""
    cdef long long* C = _alloc(m * n)
    cdef long long* D = NULL
    cdef Py_ssize_t i, j, k = 0, c = 0
    cdef int status
    try:
        for j in range(n):
            nz = False
            for i in range(m):
                C[k * m + i] = rows[i][j]
                if C[k * m + i] != 0:
                    nz = True
            if nz:
                k += 1
        D = _alloc(m * k)
        for i in range(m * k):
            D[i] = C[i]
        with nogil:
            status = _hnf(C, m, k, &c)
            if status:
                # retry in 128-bit arithmetic from the saved input
                status = hnf128(D, m, k, C, &c)
        if status == 2:
            raise MemoryError()
        if status:
            raise OverflowError("128-bit overflow in hnf")
        return [[C[j * m + i] for i in range(m)] for j in range(c)]
    finally:
        free(C)
        free(D)


def hsolve(h, y, Py_ssize_t m, Py_ssize_t r, Py_ssize_t n):
    """Same contract as ``_pykernels.hsolve``; raises ``OverflowError`` on int64 overflow."""
    cdef long long* H = _alloc(m * r)
    cdef long long* R = _alloc(m * n)
    cdef long long* X = _alloc(r * n)
    cdef Py_ssize_t i, j, t, rr
    cdef long long p, v, hv
    cdef int status = 0
    try:
        for i in range(m):
            row = h[i]
            for j in range(r):
                H[i * r + j] = row[j]
            row = y[i]
            for t in range(n):
                R[i * n + t] = row[t]
        with nogil:
            for i in range(r * n):
                X[i] = 0
            i = 0
            for j in range(r):
                while H[i * r + j] == 0:
                    i += 1
                p = H[i * r + j]
                for t in range(n):
                    v = R[i * n + t]
                    if v != 0:
                        if v % p != 0:
                            status = 2
                            break
                        if v == LLMIN and p == -1:
                            status = 1
                            break
                        X[j * n + t] = v / p
                if status:
                    break
                for rr in range(i, m):
                    hv = H[rr * r + j]
                    if hv != 0:
                        for t in range(n):
                            if X[j * n + t] != 0:
                                if chk_mulsub(R[rr * n + t], hv, X[j * n + t], &R[rr * n + t]):
                                    status = 1
                                    break
                        if status:
                            break
                if status:
                    break
                i += 1
            if not status:
                for i in range(m * n):
                    if R[i] != 0:
                        status = 2
                        break
        if status == 1:
            raise OverflowError("int64 overflow in hsolve")
        if status == 2:
            return None
        return _tolist(X, r, n)
    finally:
        free(H)
        free(R)
        free(X)
