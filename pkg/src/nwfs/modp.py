"""Row reduction and linear solving over Z/q for prime q.

Matrices are tuples of row tuples. Nothing here knows about categories.
"""

from itertools import product


def rref(rows, q, ncols):
    """Reduced row echelon form of ``rows`` (list of lists) mod ``q``.

    Returns (nonzero rows, pivot columns). Pivots are chosen left to right,
    which fixes the normal form.
    """
    m = [[x % q for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], q - 2, q)
        m[r] = [(x * inv) % q for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                t = m[i][c]
                m[i] = [(a - t * b) % q for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def sparse_rows(a):
    """Per row, the list of (column, nonzero entry)."""
    return [[(k, x) for k, x in enumerate(row) if x] for row in a]


def matmul(a, b, q, m, sparse_a=None, sparse_b=None):
    """Product of an (n x k) and a (k x m) matrix mod q.

    Entries of b must already be reduced mod q. Structure maps are mostly
    0/1 with one entry per row, so those rows are copied straight from b.
    Optional ``sparse_rows`` forms of a and b save rescanning; the result's
    sparse form is returned alongside it.
    """
    if sparse_a is None:
        sparse_a = sparse_rows(a)
    zero = (0,) * m
    out, sp = [], []
    for nz in sparse_a:
        if not nz:
            out.append(zero)
            sp.append([])
        elif len(nz) == 1 and nz[0][1] == 1:
            k = nz[0][0]
            out.append(b[k])
            sp.append(sparse_b[k] if sparse_b is not None else [(j, y) for j, y in enumerate(b[k]) if y])
        else:
            acc = [0] * m
            for k, x in nz:
                for j, y in (sparse_b[k] if sparse_b is not None else enumerate(b[k])):
                    if y:
                        acc[j] += x * y
            row = tuple(v % q for v in acc)
            out.append(row)
            sp.append([(j, y) for j, y in enumerate(row) if y])
    return tuple(out), sp


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n, m):
    return tuple(tuple(0 for _ in range(m)) for _ in range(n))


def inverse(a, q):
    """Inverse of a square matrix mod q, or None."""
    n = len(a)
    aug = [list(row) + list(e) for row, e in zip(a, identity(n))]
    red, piv = rref(aug, q, 2 * n)
    if piv[:n] != list(range(n)) or len(red) < n:
        return None
    return tuple(tuple(row[n:]) for row in red)


def solve_affine(eqs, rhs, q, nvars):
    """All solutions of the linear system ``eqs . x = rhs`` mod q.

    Returns (particular, basis) with basis spanning the null space, or None
    when the system is inconsistent.
    """
    aug = [list(e) + [b] for e, b in zip(eqs, rhs)]
    red, piv = rref(aug, q, nvars + 1)
    if nvars in piv:
        return None
    particular = [0] * nvars
    for row, c in zip(red, piv):
        particular[c] = row[nvars]
    free = [c for c in range(nvars) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * nvars
        v[fc] = 1
        for row, c in zip(red, piv):
            v[c] = (-row[fc]) % q
        basis.append(v)
    return particular, basis


def span_points(particular, basis, q):
    """Iterate the affine subspace particular + span(basis)."""
    for coeffs in product(range(q), repeat=len(basis)):
        v = list(particular)
        for c, b in zip(coeffs, basis):
            if c:
                v = [(x + c * y) % q for x, y in zip(v, b)]
        yield v
