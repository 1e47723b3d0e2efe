"""Even Clifford algebras of binary forms, their bimodules, the standard
involution, and the rank-4 quaternion algebra attached to a trivially
valued form.

The even algebra of q = (a, b, c) is free on (1, tau) with
tau^2 = b*tau - a*c; the odd part is the underlying rank-2 module with
tau acting on the left by [[b, c], [-a, 0]] and on the right by
[[0, -c], [a, b]] (columns are images of basis vectors).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NonScalarNorm, NotAModule, UnsupportedRing, UsageError
from .form import BinaryQuadraticForm
from .mat2 import madd, mat, mat_from_json, mat_to_json, mident, mmul, mscale
from .ring import Ring, RingHom, ring_from_json


@dataclass(frozen=True)
class QuadraticAlgebra:
    """Free rank-2 algebra <1, tau> with tau^2 = t*tau - nm."""

    ring: Ring
    t: object
    nm: object

    def __post_init__(self):
        object.__setattr__(self, "t", self.ring.normalize(self.t))
        object.__setattr__(self, "nm", self.ring.normalize(self.nm))

    def disc(self):
        R = self.ring
        return R.sub(R.mul(self.t, self.t), R.mul(R.normalize(4), self.nm))

    def elem(self, x, y=0):
        R = self.ring
        return (R.normalize(x), R.normalize(y))

    def mul(self, z, w):
        """(x1 + y1*tau)(x2 + y2*tau) with tau^2 = t*tau - nm."""
        R = self.ring
        x1, y1 = z
        x2, y2 = w
        yy = R.mul(y1, y2)
        return (
            R.sub(R.mul(x1, x2), R.mul(self.nm, yy)),
            R.add(R.add(R.mul(x1, y2), R.mul(y1, x2)), R.mul(self.t, yy)),
        )

    def add(self, z, w):
        R = self.ring
        return (R.add(z[0], w[0]), R.add(z[1], w[1]))

    def conj(self, z):
        """Standard involution: x + y*tau -> (x + y*t) - y*tau."""
        R = self.ring
        x, y = z
        return (R.add(x, R.mul(y, self.t)), R.neg(y))

    def trace(self, z):
        R = self.ring
        return R.add(R.add(z[0], z[0]), R.mul(z[1], self.t))

    def norm(self, z):
        """x^2 + t*x*y + nm*y^2, the value of z * conj(z)."""
        R = self.ring
        x, y = z
        return R.add(
            R.add(R.mul(x, x), R.mul(self.t, R.mul(x, y))),
            R.mul(self.nm, R.mul(y, y)),
        )

    def regular_matrix(self):
        """Left multiplication by tau on the algebra itself."""
        R = self.ring
        return mat(R, ((0, R.neg(self.nm)), (1, self.t)))

    def map(self, hom: RingHom) -> "QuadraticAlgebra":
        return QuadraticAlgebra(hom.dst, hom(self.t), hom(self.nm))

    def to_json(self) -> dict:
        e = self.ring.elem_to_json
        return {"t": e(self.t), "nm": e(self.nm), "ring": self.ring.to_json()}

    @staticmethod
    def from_json(obj, default_ring: Optional[Ring] = None) -> "QuadraticAlgebra":
        if not isinstance(obj, dict) or not {"t", "nm"} <= set(obj):
            raise UsageError(f"expected an algebra object with t, nm, got {obj!r}")
        ring = ring_from_json(obj["ring"]) if "ring" in obj else default_ring
        if ring is None:
            raise UsageError("algebra JSON carries no ring and no default was given")
        return QuadraticAlgebra(ring, ring.elem_from_json(obj["t"]), ring.elem_from_json(obj["nm"]))

    def __str__(self):
        return f"<1,tau | tau^2 = {self.t}*tau - {self.nm}> over {self.ring!r}"


def even_clifford(q: BinaryQuadraticForm) -> QuadraticAlgebra:
    """tau = e1*e2 satisfies tau^2 = b*tau - a*c."""
    R = q.ring
    return QuadraticAlgebra(R, q.b, R.mul(q.a, q.c))


def alg_discriminant(C: QuadraticAlgebra):
    return C.disc()


def m_left(q: BinaryQuadraticForm):
    """tau*e1 = b*e1 - a*e2, tau*e2 = c*e1."""
    R = q.ring
    return mat(R, ((q.b, q.c), (R.neg(q.a), 0)))


def m_right(q: BinaryQuadraticForm):
    """e1*tau = a*e2, e2*tau = b*e2 - c*e1."""
    R = q.ring
    return mat(R, ((0, R.neg(q.c)), (q.a, q.b)))


@dataclass(frozen=True)
class CliffordModule:
    alg: QuadraticAlgebra
    left: tuple
    right: Optional[tuple] = None


def clifford_bimodule(q: BinaryQuadraticForm) -> CliffordModule:
    return CliffordModule(even_clifford(q), m_left(q), m_right(q))


def module_axiom_holds(C: QuadraticAlgebra, M) -> bool:
    """M^2 == t*M - nm*I, i.e. M extends to an action of the algebra."""
    R = C.ring
    M = mat(R, M)
    lhs = mmul(R, M, M)
    rhs = madd(R, mscale(R, C.t, M), mscale(R, R.neg(C.nm), mident(R)))
    return lhs == rhs


def is_traceable(C: QuadraticAlgebra, M) -> bool:
    """Whether the action matrix has the same trace as tau on the algebra."""
    R = C.ring
    M = mat(R, M)
    if not module_axiom_holds(C, M):
        raise NotAModule(f"matrix {M} does not satisfy the relation of {C}")
    return R.add(M[0][0], M[1][1]) == C.t


@dataclass(frozen=True)
class AlgebraWitness:
    """Isomorphism data tau' -> k + eps*tau for a unit eps.

    A witness returned by algebra_isomorphic(C, D) describes the map
    D -> C; it is valid when t_D = eps*t_C + 2k and nm_D = norm_C(k + eps*tau).
    algebra_isomorphic itself only produces eps = +1 or -1; pair witnesses
    over modular rings may carry other units.
    """

    k: object
    eps: object

    def verify(self, C: QuadraticAlgebra, D: QuadraticAlgebra) -> bool:
        R = C.ring
        e = R.normalize(self.eps)
        if not R.is_unit(e):
            return False
        t_ok = D.t == R.add(R.mul(e, C.t), R.add(self.k, self.k))
        nm_ok = D.nm == C.norm((self.k, e))
        return t_ok and nm_ok

    def apply_elem(self, ring: Ring, z):
        """Image in C of the element x + y*tau' of D: (x + k*y, eps*y)."""
        x, y = z
        return (ring.add(x, ring.mul(self.k, y)), ring.mul(ring.normalize(self.eps), y))

    def to_json(self, ring: Ring) -> dict:
        return {"k": ring.elem_to_json(self.k), "eps": ring.elem_to_json(ring.normalize(self.eps))}


def _witness_for_eps(C: QuadraticAlgebra, D: QuadraticAlgebra, eps: int) -> Optional[AlgebraWitness]:
    R = C.ring
    k = R.half(R.sub(D.t, R.mul(R.normalize(eps), C.t)))
    if k is None:
        return None
    w = AlgebraWitness(k, eps)
    return w if w.verify(C, D) else None


def algebra_isomorphic(C: QuadraticAlgebra, D: QuadraticAlgebra) -> Optional[AlgebraWitness]:
    """Witness for D = C via a generator shift, preferring eps = +1.

    Exists iff the discriminants agree and the trace congruence
    t_D = eps*t_C + 2k is solvable; requires 2 regular in the ring.
    """
    if C.ring != D.ring:
        raise UsageError(f"algebras over different rings: {C.ring!r} vs {D.ring!r}")
    if not C.ring.two_is_regular():
        raise UnsupportedRing(f"2 is a zero divisor in {C.ring!r}")
    for eps in (1, -1):
        w = _witness_for_eps(C, D, eps)
        if w is not None:
            return w
    return None


def automorphisms(C: QuadraticAlgebra, oriented: bool = False):
    """The automorphism group: identity and conjugation tau -> t - tau.

    An orientation pins the generator of C modulo scalars, which kills
    conjugation and leaves only the identity.  Rings where 2 is a zero
    divisor are refused.
    """
    if not C.ring.two_is_regular():
        raise UnsupportedRing(f"2 is a zero divisor in {C.ring!r}")
    auts = [AlgebraWitness(C.ring.zero, 1)]
    if not oriented:
        auts.append(AlgebraWitness(C.t, -1))
    for w in auts:
        if not w.verify(C, C):
            raise AssertionError(f"automorphism {w} failed relation transport on {C}")
    return auts


# -- quaternion structure -------------------------------------------------
#
# For q with values in the base ring the full rank-4 algebra on the basis
# (1, tau, e1, e2) has multiplication table
#   tau^2 = b*tau - ac      e1^2 = a          e2^2 = c
#   e1*e2 = tau             e2*e1 = b - tau
#   tau*e1 = b*e1 - a*e2    tau*e2 = c*e1
#   e1*tau = a*e2           e2*tau = b*e2 - c*e1


def quat_elem(q: BinaryQuadraticForm, x0, x1=0, y1=0, y2=0):
    R = q.ring
    return (R.normalize(x0), R.normalize(x1), R.normalize(y1), R.normalize(y2))


def _basis_product(q: BinaryQuadraticForm, i: int, j: int):
    a, b, c = q.coeffs()
    R = q.ring
    one, zero = R.one, R.zero
    table = {
        (1, 1): (R.neg(R.mul(a, c)), b, zero, zero),
        (1, 2): (zero, zero, b, R.neg(a)),
        (1, 3): (zero, zero, c, zero),
        (2, 1): (zero, zero, zero, a),
        (3, 1): (zero, zero, R.neg(c), b),
        (2, 2): (a, zero, zero, zero),
        (2, 3): (zero, one, zero, zero),
        (3, 2): (b, R.neg(one), zero, zero),
        (3, 3): (c, zero, zero, zero),
    }
    if i == 0 or j == 0:
        out = [zero, zero, zero, zero]
        out[max(i, j)] = one
        return tuple(out)
    return table[(i, j)]


def quat_mul(q: BinaryQuadraticForm, z, w):
    R = q.ring
    out = [R.zero] * 4
    for i, zi in enumerate(z):
        if zi == R.zero:
            continue
        for j, wj in enumerate(w):
            if wj == R.zero:
                continue
            coeff = R.mul(zi, wj)
            prod = _basis_product(q, i, j)
            for k in range(4):
                out[k] = R.add(out[k], R.mul(coeff, prod[k]))
    return tuple(out)


def quat_conj(q: BinaryQuadraticForm, z):
    """x0 + x1*b - x1*tau - y1*e1 - y2*e2."""
    R = q.ring
    x0, x1, y1, y2 = z
    return (R.add(x0, R.mul(x1, q.b)), R.neg(x1), R.neg(y1), R.neg(y2))


def quat_trace(q: BinaryQuadraticForm, z):
    R = q.ring
    s = tuple(R.add(z[i], quat_conj(q, z)[i]) for i in range(4))
    if s[1] != R.zero or s[2] != R.zero or s[3] != R.zero:
        raise NonScalarNorm(f"trace of {z} is not scalar")
    return s[0]


def quat_norm(q: BinaryQuadraticForm, z):
    R = q.ring
    p = quat_mul(q, z, quat_conj(q, z))
    if p[1] != R.zero or p[2] != R.zero or p[3] != R.zero:
        raise NonScalarNorm(f"norm of {z} is not scalar: {p}")
    return p[0]


def quat_to_json(q: BinaryQuadraticForm, z) -> list:
    return [q.ring.elem_to_json(v) for v in z]


def quat_from_json(q: BinaryQuadraticForm, obj):
    if not isinstance(obj, list) or len(obj) != 4:
        raise UsageError(f"expected a 4-entry quaternion element, got {obj!r}")
    return tuple(q.ring.elem_from_json(v) for v in obj)


def map_matrix(hom: RingHom, M):
    return mat(hom.dst, tuple(tuple(hom(x) for x in row) for row in M))


def matrix_json(ring: Ring, M):
    return mat_to_json(ring, M)


def matrix_from_json(ring: Ring, obj):
    return mat_from_json(ring, obj)
