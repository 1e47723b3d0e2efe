"""2x2 matrices over a coefficient ring, stored as tuples of rows.

Column convention throughout the package: the columns of an action matrix
are the images of the basis vectors e1, e2.
"""

from __future__ import annotations

from .errors import NotInvertible, UsageError
from .ring import Ring


def mat(ring: Ring, rows):
    (a, b), (c, d) = rows
    n = ring.normalize
    return ((n(a), n(b)), (n(c), n(d)))


def mident(ring: Ring):
    return mat(ring, ((1, 0), (0, 1)))


def mzero(ring: Ring):
    return mat(ring, ((0, 0), (0, 0)))


def madd(ring: Ring, A, B):
    return tuple(
        tuple(ring.add(A[i][j], B[i][j]) for j in range(2)) for i in range(2)
    )


def mscale(ring: Ring, k, A):
    k = ring.normalize(k)
    return tuple(tuple(ring.mul(k, A[i][j]) for j in range(2)) for i in range(2))


def mmul(ring: Ring, A, B):
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            s = ring.add(ring.mul(A[i][0], B[0][j]), ring.mul(A[i][1], B[1][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mdet(ring: Ring, A):
    return ring.sub(ring.mul(A[0][0], A[1][1]), ring.mul(A[0][1], A[1][0]))


def mapply(ring: Ring, A, v):
    x, y = ring.normalize(v[0]), ring.normalize(v[1])
    return (
        ring.add(ring.mul(A[0][0], x), ring.mul(A[0][1], y)),
        ring.add(ring.mul(A[1][0], x), ring.mul(A[1][1], y)),
    )


def minv(ring: Ring, A):
    d = mdet(ring, A)
    if not ring.is_unit(d):
        raise NotInvertible(f"matrix determinant {d} is not a unit")
    di = ring.inv(d)
    return mat(
        ring,
        (
            (ring.mul(di, A[1][1]), ring.mul(di, ring.neg(A[0][1]))),
            (ring.mul(di, ring.neg(A[1][0])), ring.mul(di, A[0][0])),
        ),
    )


def mat_to_json(ring: Ring, A):
    return [[ring.elem_to_json(A[i][j]) for j in range(2)] for i in range(2)]


def mat_from_json(ring: Ring, obj):
    if (
        not isinstance(obj, list)
        or len(obj) != 2
        or any(not isinstance(r, list) or len(r) != 2 for r in obj)
    ):
        raise UsageError(f"expected a 2x2 matrix, got {obj!r}")
    return mat(
        ring,
        tuple(tuple(ring.elem_from_json(x) for x in row) for row in obj),
    )
