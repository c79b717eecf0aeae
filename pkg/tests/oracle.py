"""Textbook Gauss-Jordan over Gaussian rationals, kept independent of the library.

Scalars are ``(re, im)`` pairs of Fractions.  Nothing here imports entcert.
"""

from fractions import Fraction


def c(re, im=0):
    return (Fraction(re), Fraction(im))


def add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def div(a, b):
    den = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / den, (a[1] * b[0] - a[0] * b[1]) / den)


def is_zero(a):
    return a[0] == 0 and a[1] == 0


def rref(rows):
    """Reduced row echelon form and pivot columns."""
    m = [[c(*x) if isinstance(x, tuple) else c(x) for x in r] for r in rows]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if not is_zero(m[i][col])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        m[r] = [div(x, p) for x in m[r]]
        for i in range(nrows):
            if i != r and not is_zero(m[i][col]):
                f = m[i][col]
                m[i] = [sub(x, mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def matvec(rows, vec):
    out = []
    for r in rows:
        acc = c(0)
        for x, y in zip(r, vec):
            acc = add(acc, mul(c(*x) if isinstance(x, tuple) else c(x), y))
        out.append(acc)
    return out


def partial_trace_direct(vectors, dims, traced):
    """``Tr_traced sum_v |v><v|`` by explicit index loops (vectors are dicts index->pair)."""
    kept = [p for p in range(len(dims)) if p != traced]
    kdims = [dims[p] for p in kept]
    size = 1
    for d in kdims:
        size *= d
    out = [[c(0) for _ in range(size)] for _ in range(size)]

    def comp(idx):
        k = 0
        for p, d in zip(kept, kdims):
            k = k * d + idx[p]
        return k

    for v in vectors:
        for i1, a in v.items():
            for i2, b in v.items():
                if i1[traced] != i2[traced]:
                    continue
                r, s = comp(i1), comp(i2)
                out[r][s] = add(out[r][s], mul(a, (b[0], -b[1])))
    return out
