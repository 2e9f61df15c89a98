"""Pure-Python kernels.

Layout shared with the compiled module ``_ckernels``:

* a machine table ``t`` over states x letters is a flat int64 array with
  ``t[e * n_letters + a]``;
* a monoid table is flat with ``mul[x * n + y]``;
* words of length <= L over an alphabet of size ``a`` are numbered in
  shortlex order: ``offset(n) + rank`` where ``rank`` reads the word as a
  big-endian base-``a`` numeral;
* per-word tables are 2-D arrays of shape (n_states, n_words);
* a relation between A and B is a bitmask with bit ``i * n_b + j``.
"""

import numpy as np


def word_offsets(n_letters, max_len):
    """offsets[n] = number of words shorter than n, for n = 0..max_len+1."""
    offs = [0]
    p = 1
    for _ in range(max_len + 1):
        offs.append(offs[-1] + p)
        p *= n_letters
    return offs


def _powers(base, top):
    out = [1]
    for _ in range(top):
        out.append(out[-1] * base)
    return out


def extend_free(d, s, n_states, n_in, n_out, max_len):
    """Iterated transition and letter-by-letter output on every bounded word.

    Returns (FD, FS): the state reached and the base-``n_out`` rank of the
    output word (whose length equals the input length).
    """
    d = d.tolist()
    s = s.tolist()
    offs = word_offsets(n_in, max_len)
    n_words = offs[max_len + 1]
    fd = [[0] * n_words for _ in range(n_states)]
    fs = [[0] * n_words for _ in range(n_states)]
    for e in range(n_states):
        row_d, row_s = fd[e], fs[e]
        row_d[0] = e
        for n in range(1, max_len + 1):
            base, prev = offs[n], offs[n - 1]
            count = offs[n + 1] - base
            for r in range(count):
                p = prev + r // n_in
                x = r % n_in
                cur = row_d[p]
                row_d[base + r] = d[cur * n_in + x]
                row_s[base + r] = row_s[p] * n_out + s[cur * n_in + x]
    return np.array(fd, dtype=np.int64).reshape(n_states, n_words), np.array(fs, dtype=np.int64).reshape(n_states, n_words)


def extend_fold(d, s, mul, unit, n_states, n_in, n_car, max_len):
    """Like :func:`extend_free` but folds the letter outputs in a finite monoid."""
    d = d.tolist()
    s = s.tolist()
    mul = mul.tolist()
    offs = word_offsets(n_in, max_len)
    n_words = offs[max_len + 1]
    fd = [[0] * n_words for _ in range(n_states)]
    fs = [[unit] * n_words for _ in range(n_states)]
    for e in range(n_states):
        row_d, row_s = fd[e], fs[e]
        row_d[0] = e
        for n in range(1, max_len + 1):
            base, prev = offs[n], offs[n - 1]
            count = offs[n + 1] - base
            for r in range(count):
                p = prev + r // n_in
                x = r % n_in
                cur = row_d[p]
                row_d[base + r] = d[cur * n_in + x]
                row_s[base + r] = mul[row_s[p] * n_car + s[cur * n_in + x]]
    return np.array(fd, dtype=np.int64).reshape(n_states, n_words), np.array(fs, dtype=np.int64).reshape(n_states, n_words)


def split_violation_free(fd, fs, fl, n_states, n_in, n_out, max_len):
    """First (e, word, k) where output(e, uv) != output(e, u) ++ output(e.u, v).

    ``u`` is the length-k prefix.  Output words are given by rank ``fs`` and
    length ``fl``.  Returns None when the law holds everywhere.
    """
    fd = fd.tolist()
    fs = fs.tolist()
    fl = fl.tolist()
    offs = word_offsets(n_in, max_len)
    pin = _powers(n_in, max_len)
    top = max((max(row) for row in fl), default=0)
    pout = _powers(n_out, top)
    for e in range(n_states):
        rs, rl, rd = fs[e], fl[e], fd[e]
        for n in range(max_len + 1):
            base = offs[n]
            for r in range(offs[n + 1] - base):
                w = base + r
                sw, lw = rs[w], rl[w]
                for k in range(n + 1):
                    q = pin[n - k]
                    u = offs[k] + r // q
                    v = offs[n - k] + r % q
                    e2 = rd[u]
                    lv = fl[e2][v]
                    if lw != rl[u] + lv or sw != rs[u] * pout[lv] + fs[e2][v]:
                        return (e, w, k)
    return None


def split_violation_table(fd, fs, mul, n_states, n_in, n_car, max_len):
    """First (e, word, k) where output(e, uv) != output(e, u) * output(e.u, v)."""
    fd = fd.tolist()
    fs = fs.tolist()
    mul = mul.tolist()
    offs = word_offsets(n_in, max_len)
    pin = _powers(n_in, max_len)
    for e in range(n_states):
        rs, rd = fs[e], fd[e]
        for n in range(max_len + 1):
            base = offs[n]
            for r in range(offs[n + 1] - base):
                w = base + r
                sw = rs[w]
                for k in range(n + 1):
                    q = pin[n - k]
                    u = offs[k] + r // q
                    v = offs[n - k] + r % q
                    if sw != mul[rs[u] * n_car + fs[rd[u]][v]]:
                        return (e, w, k)
    return None


def diamond_mismatch(fd1, fs1, fd2, fs2, fdc, fsc, n_e, n_f, n_in, n_mid, max_len):
    """Compare a composite's word tables against feeding machine 1 into machine 2.

    Composite state (f, e) has index ``f * n_e + e``.  Returns the first
    (state, word, 0) where outputs differ or (state, word, 1) where states
    differ, else None.
    """
    fd1 = fd1.tolist()
    fs1 = fs1.tolist()
    fd2 = fd2.tolist()
    fs2 = fs2.tolist()
    fdc = fdc.tolist()
    fsc = fsc.tolist()
    offs = word_offsets(n_in, max_len)
    offs_mid = word_offsets(n_mid, max_len)
    for f in range(n_f):
        for e in range(n_e):
            c = f * n_e + e
            for n in range(max_len + 1):
                base = offs[n]
                for r in range(offs[n + 1] - base):
                    w = base + r
                    mid = offs_mid[n] + fs1[e][w]
                    if fsc[c][w] != fs2[f][mid]:
                        return (c, w, 0)
                    if fdc[c][w] != fd2[f][mid] * n_e + fd1[e][w]:
                        return (c, w, 1)
    return None


def rel_compose_rows(e_mask, i_rows, n_a, n_b):
    """Bitmask of E o I (apply I first): row a is the union of E's rows at I-successors of a."""
    row_mask = (1 << n_b) - 1
    out = 0
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


def rel_enumerate(i_rows, o_mask, n_a, n_b, mealy, r_mask):
    """Enumerate every relation E between A and B and keep the machines.

    Moore machines satisfy E o I <= E and E <= O; Mealy machines E o I <= E
    and E o I <= O.  Returns (machine count, union of machines, first machine
    not contained in ``r_mask`` or -1).
    """
    i_rows = [int(x) for x in i_rows]
    count = 0
    union = 0
    first_bad = -1
    for e in range(1 << (n_a * n_b)):
        ei = rel_compose_rows(e, i_rows, n_a, n_b)
        if ei & ~e:
            continue
        if mealy:
            if ei & ~o_mask:
                continue
        elif e & ~o_mask:
            continue
        count += 1
        union |= e
        if first_bad < 0 and e & ~r_mask:
            first_bad = e
    return count, union, first_bad
