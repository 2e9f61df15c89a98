# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same signatures and array layout as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def word_offsets(Py_ssize_t n_letters, Py_ssize_t max_len):
    offs = [0]
    cdef i64 p = 1
    cdef i64 acc = 0
    for _ in range(max_len + 1):
        acc += p
        offs.append(acc)
        p *= n_letters
    return offs


cdef i64[::1] _offsets(Py_ssize_t n_letters, Py_ssize_t max_len):
    cdef i64[::1] offs = np.empty(max_len + 2, dtype=np.int64)
    cdef i64 p = 1
    cdef Py_ssize_t n
    offs[0] = 0
    for n in range(max_len + 1):
        offs[n + 1] = offs[n] + p
        p *= n_letters
    return offs


cdef i64[::1] _powers(i64 base, Py_ssize_t top):
    cdef i64[::1] out = np.empty(top + 1, dtype=np.int64)
    cdef Py_ssize_t i
    out[0] = 1
    for i in range(1, top + 1):
        out[i] = out[i - 1] * base
    return out


def extend_free(const i64[::1] d, const i64[::1] s, Py_ssize_t n_states, Py_ssize_t n_in,
                Py_ssize_t n_out, Py_ssize_t max_len):
    cdef i64[::1] offs = _offsets(n_in, max_len)
    cdef Py_ssize_t n_words = offs[max_len + 1]
    fd_arr = np.zeros((n_states, n_words), dtype=np.int64)
    fs_arr = np.zeros((n_states, n_words), dtype=np.int64)
    cdef i64[:, ::1] fd = fd_arr
    cdef i64[:, ::1] fs = fs_arr
    cdef Py_ssize_t e, n, r, p, x, base, prev, count
    cdef i64 cur
    for e in range(n_states):
        fd[e, 0] = e
        for n in range(1, max_len + 1):
            base = offs[n]
            prev = offs[n - 1]
            count = offs[n + 1] - base
            for r in range(count):
                p = prev + r // n_in
                x = r % n_in
                cur = fd[e, p]
                fd[e, base + r] = d[cur * n_in + x]
                fs[e, base + r] = fs[e, p] * n_out + s[cur * n_in + x]
    return fd_arr, fs_arr


def extend_fold(const i64[::1] d, const i64[::1] s, const i64[::1] mul, i64 unit,
                Py_ssize_t n_states, Py_ssize_t n_in, Py_ssize_t n_car, Py_ssize_t max_len):
    cdef i64[::1] offs = _offsets(n_in, max_len)
    cdef Py_ssize_t n_words = offs[max_len + 1]
    fd_arr = np.zeros((n_states, n_words), dtype=np.int64)
    fs_arr = np.full((n_states, n_words), unit, dtype=np.int64)
    cdef i64[:, ::1] fd = fd_arr
    cdef i64[:, ::1] fs = fs_arr
    cdef Py_ssize_t e, n, r, p, x, base, prev, count
    cdef i64 cur
    for e in range(n_states):
        fd[e, 0] = e
        for n in range(1, max_len + 1):
            base = offs[n]
            prev = offs[n - 1]
            count = offs[n + 1] - base
            for r in range(count):
                p = prev + r // n_in
                x = r % n_in
                cur = fd[e, p]
                fd[e, base + r] = d[cur * n_in + x]
                fs[e, base + r] = mul[fs[e, p] * n_car + s[cur * n_in + x]]
    return fd_arr, fs_arr


def split_violation_free(const i64[:, ::1] fd, const i64[:, ::1] fs, const i64[:, ::1] fl,
                         Py_ssize_t n_states, Py_ssize_t n_in, Py_ssize_t n_out, Py_ssize_t max_len):
    cdef i64[::1] offs = _offsets(n_in, max_len)
    cdef i64[::1] pin = _powers(n_in, max_len)
    cdef i64 top = 0
    cdef Py_ssize_t e, n, r, k, w, u, v, base
    cdef i64 q, e2, lv, sw, lw
    for e in range(n_states):
        for w in range(fl.shape[1]):
            if fl[e, w] > top:
                top = fl[e, w]
    cdef i64[::1] pout = _powers(n_out, top)
    for e in range(n_states):
        for n in range(max_len + 1):
            base = offs[n]
            for r in range(offs[n + 1] - base):
                w = base + r
                sw = fs[e, w]
                lw = fl[e, w]
                for k in range(n + 1):
                    q = pin[n - k]
                    u = offs[k] + r // q
                    v = offs[n - k] + r % q
                    e2 = fd[e, u]
                    lv = fl[e2, v]
                    if lw != fl[e, u] + lv or sw != fs[e, u] * pout[lv] + fs[e2, v]:
                        return (e, w, k)
    return None


def split_violation_table(const i64[:, ::1] fd, const i64[:, ::1] fs, const i64[::1] mul,
                          Py_ssize_t n_states, Py_ssize_t n_in, Py_ssize_t n_car, Py_ssize_t max_len):
    cdef i64[::1] offs = _offsets(n_in, max_len)
    cdef i64[::1] pin = _powers(n_in, max_len)
    cdef Py_ssize_t e, n, r, k, w, u, v, base
    cdef i64 q, sw
    for e in range(n_states):
        for n in range(max_len + 1):
            base = offs[n]
            for r in range(offs[n + 1] - base):
                w = base + r
                sw = fs[e, w]
                for k in range(n + 1):
                    q = pin[n - k]
                    u = offs[k] + r // q
                    v = offs[n - k] + r % q
                    if sw != mul[fs[e, u] * n_car + fs[fd[e, u], v]]:
                        return (e, w, k)
    return None


def diamond_mismatch(const i64[:, ::1] fd1, const i64[:, ::1] fs1, const i64[:, ::1] fd2,
                     const i64[:, ::1] fs2, const i64[:, ::1] fdc, const i64[:, ::1] fsc,
                     Py_ssize_t n_e, Py_ssize_t n_f, Py_ssize_t n_in, Py_ssize_t n_mid, Py_ssize_t max_len):
    cdef i64[::1] offs = _offsets(n_in, max_len)
    cdef i64[::1] offs_mid = _offsets(n_mid, max_len)
    cdef Py_ssize_t f, e, c, n, r, w, base
    cdef i64 mid
    for f in range(n_f):
        for e in range(n_e):
            c = f * n_e + e
            for n in range(max_len + 1):
                base = offs[n]
                for r in range(offs[n + 1] - base):
                    w = base + r
                    mid = offs_mid[n] + fs1[e, w]
                    if fsc[c, w] != fs2[f, mid]:
                        return (c, w, 0)
                    if fdc[c, w] != fd2[f, mid] * n_e + fd1[e, w]:
                        return (c, w, 1)
    return None


cdef inline unsigned long long _compose_rows(unsigned long long e_mask, unsigned long long[::1] i_rows,
                                             int n_a, int n_b):
    cdef unsigned long long row_mask = (1ULL << n_b) - 1
    cdef unsigned long long out = 0, acc, succ
    cdef int a, j
    for a in range(n_a):
        succ = i_rows[a]
        acc = 0
        j = 0
        while succ:
            if succ & 1:
                acc |= (e_mask >> (j * n_b)) & row_mask
            succ >>= 1
            j += 1
        out |= acc << (a * n_b)
    return out


def rel_compose_rows(e_mask, i_rows, int n_a, int n_b):
    cdef unsigned long long[::1] rows = np.asarray([int(x) for x in i_rows] or [0], dtype=np.uint64)
    return int(_compose_rows(e_mask, rows, n_a, n_b))


def rel_enumerate(i_rows, o_mask, int n_a, int n_b, bint mealy, r_mask):
    if n_a * n_b > 62:
        raise OverflowError("relation too large for a 64-bit mask")
    cdef unsigned long long[::1] rows = np.asarray([int(x) for x in i_rows] or [0], dtype=np.uint64)
    cdef unsigned long long om = o_mask, rm = r_mask
    cdef unsigned long long e, ei, union = 0
    cdef unsigned long long top = 1ULL << (n_a * n_b)
    cdef long long count = 0
    cdef long long first_bad = -1
    e = 0
    while e < top:
        ei = _compose_rows(e, rows, n_a, n_b)
        if ei & ~e:
            e += 1
            continue
        if mealy:
            if ei & ~om:
                e += 1
                continue
        elif e & ~om:
            e += 1
            continue
        count += 1
        union |= e
        if first_bad < 0 and e & ~rm:
            first_bad = <long long>e
        e += 1
    return int(count), int(union), int(first_bad)
