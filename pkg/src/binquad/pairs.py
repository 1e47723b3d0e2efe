"""Pairs (quadratic algebra, traceable rank-2 module) and their exact
correspondence with binary quadratic forms, plus the duality operations:
Wood's alternative normalization, the dual form on the dual module, and
dual conics over the rationals.

The correspondence: a traceable pair normalizes (by shifting the
generator) to an action matrix [[b, c], [-a, 0]], whose read-off is the
form (a, b, c); conversely a form yields (even algebra, left action
matrix).  Pair isomorphism is decided through form similarity, with an
independent bounded matrix search kept as a cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Optional

from .clifford import (
    AlgebraWitness,
    QuadraticAlgebra,
    _witness_for_eps,
    even_clifford,
    m_left,
    module_axiom_holds,
)
from .errors import (
    InconsistentPair,
    NotAModule,
    NotAPerfectSquare,
    NotTraceable,
    UsageError,
)
from .form import BinaryQuadraticForm, similar
from .mat2 import madd, mat, mat_from_json, mat_to_json, mdet, mident, mmul, mscale
from .ring import IntegerRing, ModularRing, QQ, RationalRing, Ring, RingHom, ring_from_json


@dataclass(frozen=True)
class CliffordPair:
    alg: QuadraticAlgebra
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", mat(self.alg.ring, self.m))
        if not module_axiom_holds(self.alg, self.m):
            raise NotAModule(f"action matrix {self.m} violates the relation of {self.alg}")

    @property
    def ring(self) -> Ring:
        return self.alg.ring

    def is_traceable(self) -> bool:
        R = self.ring
        return R.add(self.m[0][0], self.m[1][1]) == self.alg.t

    def map(self, hom: RingHom) -> "CliffordPair":
        return CliffordPair(
            self.alg.map(hom),
            tuple(tuple(hom(x) for x in row) for row in self.m),
        )

    def to_json(self) -> dict:
        e = self.ring.elem_to_json
        return {
            "alg": {"t": e(self.alg.t), "nm": e(self.alg.nm)},
            "m": mat_to_json(self.ring, self.m),
            "ring": self.ring.to_json(),
        }

    @staticmethod
    def from_json(obj, default_ring: Optional[Ring] = None) -> "CliffordPair":
        if not isinstance(obj, dict) or not {"alg", "m"} <= set(obj):
            raise UsageError(f"expected a pair object with alg, m, got {obj!r}")
        ring = ring_from_json(obj["ring"]) if "ring" in obj else default_ring
        if ring is None:
            raise UsageError("pair JSON carries no ring and no default was given")
        alg = QuadraticAlgebra.from_json(obj["alg"], default_ring=ring)
        return CliffordPair(alg, mat_from_json(ring, obj["m"]))


def normalize_pair(p: CliffordPair):
    """Shift the generator so the action matrix gets a zero lower-right entry.

    tau' = tau - m with m the lower-right entry; the algebra data moves to
    t' = t - 2m, nm' = nm - t*m + m^2.  Returns (normalized pair, m).
    """
    if not p.is_traceable():
        raise NotTraceable(f"pair {p} is not traceable")
    R = p.ring
    shift = p.m[1][1]
    M2 = madd(R, p.m, mscale(R, R.neg(shift), mident(R)))
    t2 = R.sub(p.alg.t, R.add(shift, shift))
    nm2 = R.add(R.sub(p.alg.nm, R.mul(p.alg.t, shift)), R.mul(shift, shift))
    return CliffordPair(QuadraticAlgebra(R, t2, nm2), M2), shift


def pair_to_form(p: CliffordPair) -> BinaryQuadraticForm:
    """Read (a, b, c) off the normalized action matrix [[b, c], [-a, 0]]."""
    n, _ = normalize_pair(p)
    R = p.ring
    a = R.neg(n.m[1][0])
    b = n.m[0][0]
    c = n.m[0][1]
    if b != n.alg.t or R.mul(a, c) != n.alg.nm:
        raise InconsistentPair(
            f"normalized pair {n} does not arise from a form: "
            f"read-off ({a}, {b}, {c}) vs algebra ({n.alg.t}, {n.alg.nm})"
        )
    return BinaryQuadraticForm(R, a, b, c)


def form_to_pair(q: BinaryQuadraticForm) -> CliffordPair:
    return CliffordPair(even_clifford(q), m_left(q))


@dataclass(frozen=True)
class PairWitness:
    """psi in GL2 and an algebra witness phi with psi*M = phi(tau)'*psi."""

    psi: tuple
    phi: AlgebraWitness

    def verify(self, p: CliffordPair, p2: CliffordPair) -> bool:
        R = p.ring
        if not R.is_unit(mdet(R, self.psi)):
            return False
        if not self.phi.verify(p2.alg, p.alg):
            return False
        lhs = mmul(R, self.psi, p.m)
        image = madd(
            R,
            mscale(R, self.phi.k, mident(R)),
            mscale(R, R.normalize(self.phi.eps), p2.m),
        )
        return lhs == mmul(R, image, self.psi)


@dataclass(frozen=True)
class PairVerdict:
    verdict: str  # "isomorphic" | "not_isomorphic" | "unknown"
    witness: Optional[PairWitness] = None
    reason: Optional[str] = None
    bound: Optional[int] = None

    @property
    def is_isomorphic(self) -> bool:
        return self.verdict == "isomorphic"

    def to_json(self, ring: Ring) -> dict:
        out = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = {
                "psi": mat_to_json(ring, self.witness.psi),
                "k": ring.elem_to_json(self.witness.phi.k),
                "eps": ring.elem_to_json(ring.normalize(self.witness.phi.eps)),
            }
        if self.reason is not None:
            out["reason"] = self.reason
        if self.bound is not None:
            out["bound"] = self.bound
        return out


def _algebra_map_candidates(p: CliffordPair, p2: CliffordPair):
    """Witnesses for maps alg(p) -> alg(p2).

    Over Z and Q the units that can appear are +-1; over a modular ring
    every unit is a possible twist, so all of them are tried."""
    out = []
    if not p.ring.two_is_regular():
        return out
    if isinstance(p.ring, ModularRing):
        units = p.ring.units()
    else:
        units = (1, -1)
    for eps in units:
        w = _witness_for_eps(p2.alg, p.alg, eps)
        if w is not None:
            out.append(w)
    return out


def _witness_from_similarity(p, p2, shift1, shift2, q2, simw) -> Optional[PairWitness]:
    """Pair witness transported from a form-similarity witness.

    With q2(Wv) = u*q1(v), the module map is W itself and the algebra
    generator goes to u^{-1} * W(e1)W(e2) computed in the rank-4 algebra
    of q2, i.e. k0 + eps*tau with eps = det(W)/u; the normalization
    shifts of the two pairs then move k0 back to the original
    generators."""
    R = p.ring
    if not R.is_unit(simw.u):
        return None
    ui = R.inv(simw.u)
    W = simw.m
    v1, v2 = W[0][0], W[1][0]
    w1, w2 = W[0][1], W[1][1]
    a2, b2, c2 = q2.coeffs()
    # W(e1) * W(e2) = [v1 w1 a2 + v2 w2 c2 + v2 w1 b2] + det(W) tau
    scal = R.add(
        R.add(R.mul(R.mul(v1, w1), a2), R.mul(R.mul(v2, w2), c2)),
        R.mul(R.mul(v2, w1), b2),
    )
    k0 = R.mul(ui, scal)
    eps = R.mul(ui, mdet(R, W))
    k = R.add(k0, R.sub(shift1, R.mul(eps, shift2)))
    witness = PairWitness(W, AlgebraWitness(k, eps))
    return witness if witness.verify(p, p2) else None


def _integer_kernel(rows):
    """Basis of the integer kernel of an integer matrix, by unimodular
    column reduction (so the basis spans all integer solutions, not just
    a finite-index sublattice)."""
    m, n = len(rows), len(rows[0])
    A = [list(r) for r in rows]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def colop_sub(j, k, q):
        for i in range(m):
            A[i][j] -= q * A[i][k]
        for i in range(n):
            U[i][j] -= q * U[i][k]

    def colswap(j, k):
        for i in range(m):
            A[i][j], A[i][k] = A[i][k], A[i][j]
        for i in range(n):
            U[i][j], U[i][k] = U[i][k], U[i][j]

    col = 0
    for row in range(m):
        while True:
            nz = [j for j in range(col, n) if A[row][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(A[row][j]))
            colswap(col, j0)
            done = True
            for j in range(col + 1, n):
                if A[row][j] != 0:
                    q = A[row][j] // A[row][col]
                    colop_sub(j, col, q)
                    if A[row][j] != 0:
                        done = False
            if done:
                col += 1
                break
        if col >= n:
            break
    kernel = []
    for j in range(n):
        if all(A[i][j] == 0 for i in range(m)):
            kernel.append([U[i][j] for i in range(n)])
    return kernel


def _intertwiner_basis(p: CliffordPair, p2: CliffordPair, phi: AlgebraWitness):
    """Basis of {psi : psi*M = (k + eps*M')*psi} over the ring, as flat
    (p00, p01, p10, p11) vectors; integral basis over Z."""
    R = p.ring
    M = p.m
    N = madd(
        R,
        mscale(R, phi.k, mident(R)),
        mscale(R, R.normalize(phi.eps), p2.m),
    )
    # Linear system in psi entries (p00, p01, p10, p11): psi*M - N*psi = 0.
    m00, m01, m10, m11 = M[0][0], M[0][1], M[1][0], M[1][1]
    n00, n01, n10, n11 = N[0][0], N[0][1], N[1][0], N[1][1]
    rows = [
        [m00 - n00, m10, -n01, 0],
        [m01, m11 - n00, 0, -n01],
        [-n10, 0, m00 - n11, m10],
        [0, -n10, m01, m11 - n11],
    ]
    # Over Q, scale rows to integers; the kernel is unchanged.
    scaled = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            den = den * x.denominator // _gcd(den, x.denominator)
        scaled.append([int(x * den) for x in fr])
    return _integer_kernel(scaled)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _witness_from_basis(p, p2, phi, basis, span: int = 10) -> Optional[PairWitness]:
    """Search small combinations of the intertwiner basis for a unit det."""
    R = p.ring
    if not basis:
        return None
    ordered = [0]
    for k in range(1, span + 1):
        ordered.extend((k, -k))
    for coeffs in product(ordered, repeat=len(basis)):
        if all(c == 0 for c in coeffs):
            continue
        flat = [0, 0, 0, 0]
        for c, vec in zip(coeffs, basis):
            for i in range(4):
                flat[i] += c * vec[i]
        psi = mat(R, ((flat[0], flat[1]), (flat[2], flat[3])))
        if R.is_unit(mdet(R, psi)):
            w = PairWitness(psi, phi)
            if w.verify(p, p2):
                return w
    return None


def _pair_witness(p: CliffordPair, p2: CliffordPair) -> Optional[PairWitness]:
    R = p.ring
    if isinstance(R, (IntegerRing, RationalRing)):
        for phi in _algebra_map_candidates(p, p2):
            w = _witness_from_basis(p, p2, phi, _intertwiner_basis(p, p2, phi))
            if w is not None:
                return w
        return None
    return pairs_isomorphic_search(p, p2, bound=12)


def pairs_isomorphic_search(p: CliffordPair, p2: CliffordPair, bound: int = 12) -> Optional[PairWitness]:
    """Brute-force oracle: enumerate psi with entries up to the bound."""
    R = p.ring
    candidates = _algebra_map_candidates(p, p2)
    if not candidates:
        return None
    if isinstance(R, ModularRing) and R.n <= 2 * bound + 1:
        rng = range(R.n)
    else:
        rng = range(-bound, bound + 1)
    images = []
    for phi in candidates:
        images.append(
            (
                phi,
                madd(
                    R,
                    mscale(R, phi.k, mident(R)),
                    mscale(R, R.normalize(phi.eps), p2.m),
                ),
            )
        )
    M = p.m
    for e00, e01, e10, e11 in product(rng, repeat=4):
        psi = mat(R, ((e00, e01), (e10, e11)))
        if not R.is_unit(mdet(R, psi)):
            continue
        lhs = mmul(R, psi, M)
        for phi, N in images:
            if lhs == mmul(R, N, psi):
                return PairWitness(psi, phi)
    return None


def pairs_isomorphic(p: CliffordPair, p2: CliffordPair, bound: int = 12) -> PairVerdict:
    """Decide pair isomorphism by converting to forms.

    Both pairs must be traceable.  A positive form-similarity verdict is
    transported into an explicit (psi, phi) witness (with the intertwiner
    solve kept as a fallback); Unknown form verdicts fall back to the
    direct bounded search.
    """
    if not p.is_traceable() or not p2.is_traceable():
        raise NotTraceable("pair isomorphism is defined for traceable pairs")
    if p == p2:
        return PairVerdict(
            "isomorphic",
            witness=PairWitness(mident(p.ring), AlgebraWitness(p.ring.zero, 1)),
        )
    _, shift1 = normalize_pair(p)
    _, shift2 = normalize_pair(p2)
    q2 = pair_to_form(p2)
    verdict = similar(pair_to_form(p), q2, bound=bound)
    if verdict.verdict == "not_similar":
        return PairVerdict("not_isomorphic", reason=verdict.reason)
    if verdict.verdict == "similar":
        w = None
        if verdict.witness is not None:
            w = _witness_from_similarity(p, p2, shift1, shift2, q2, verdict.witness)
        if w is None:
            w = _pair_witness(p, p2)
        if w is not None:
            return PairVerdict("isomorphic", witness=w)
        return PairVerdict("isomorphic")
    w = pairs_isomorphic_search(p, p2, bound=bound)
    if w is not None:
        return PairVerdict("isomorphic", witness=w)
    return PairVerdict("unknown", bound=bound)


# -- Wood normalization and duality ---------------------------------------


def clifford_form_to_wood_form(q: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """(a, b, c) -> (c, -b, a): the same pair read in the normalization
    tau*x = -c'*y - b'*x, tau*y = a'*x, tau^2 = -b'*tau - a'*c'."""
    R = q.ring
    return BinaryQuadraticForm(R, q.c, R.neg(q.b), q.a)


def wood_pair(w: BinaryQuadraticForm) -> CliffordPair:
    """The pair carved out of a form read as Wood data [A, B, C]."""
    R = w.ring
    A, B, C = w.coeffs()
    alg = QuadraticAlgebra(R, R.neg(B), R.mul(A, C))
    m = mat(R, ((R.neg(B), A), (R.neg(C), 0)))
    return CliffordPair(alg, m)


def dual_form(q: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """The induced form (c, -b, a) on the dual module; an exact involution."""
    R = q.ring
    return BinaryQuadraticForm(R, q.c, R.neg(q.b), q.a)


@dataclass(frozen=True)
class TraceStage:
    label: str
    module: str  # "E" or "E_dual"
    form: BinaryQuadraticForm
    pair: Optional[CliffordPair] = None

    def to_json(self) -> dict:
        out = {"stage": self.label, "module": self.module, "form": self.form.to_json()}
        if self.pair is not None:
            pj = self.pair.to_json()
            out["algebra"] = pj["alg"]
            out["action"] = pj["m"]
        return out


def dual_form_trace(q: BinaryQuadraticForm):
    """The five stages carrying q to its dual and back.

    1. q on E with its Clifford pair;
    2. the Wood reading (c, -b, a) on E;
    3. (c, -b, a) as a form on the dual module, with the shifted
       generator's relations (its own Clifford pair);
    4. the Wood reading of stage 3, which is (a, b, c) on the dual;
    5. (a, b, c) back on the double dual = E.
    """
    w = clifford_form_to_wood_form(q)
    dual = dual_form(q)
    stages = [
        TraceStage("classical", "E", q, form_to_pair(q)),
        TraceStage("wood", "E", w),
        TraceStage("kneser_dual", "E_dual", dual, form_to_pair(dual)),
        TraceStage("wood_dual", "E_dual", clifford_form_to_wood_form(dual)),
        TraceStage("classical_double_dual", "E", dual_form(dual)),
    ]
    return stages


def _fraction_sqrt(v: Fraction) -> Optional[Fraction]:
    if v < 0:
        return None
    p, q = v.numerator, v.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def dual_conic(q: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """The form cut out by the tangent lines of the conic q = 0.

    Nondegenerate case: (c, -b, a) scaled by 1/det with det = ac - b^2/4.
    Degenerate case q = (alpha*x + beta*y)^2: the exact limit of duals of
    nearby nondegenerate forms, (beta*x - alpha*y)^2.
    """
    R = q.ring
    if isinstance(R, IntegerRing):
        q = q.map(RingHom(R, QQ))
        R = QQ
    if not isinstance(R, RationalRing):
        raise UsageError("dual conics are computed over the rationals")
    a, b, c = q.coeffs()
    det = a * c - b * b / 4
    if det != 0:
        return BinaryQuadraticForm(R, c / det, -b / det, a / det)
    alpha = _fraction_sqrt(a)
    if alpha is None:
        raise NotAPerfectSquare(f"{q} has zero determinant but {a} is not a square")
    if alpha != 0:
        beta = b / (2 * alpha)
        if beta * beta != c:
            raise NotAPerfectSquare(f"{q} is not the square of a linear form")
    else:
        # a = 0 and det = 0 force b = 0
        beta = _fraction_sqrt(c)
        if beta is None:
            raise NotAPerfectSquare(f"{q} has zero determinant but {c} is not a square")
    return BinaryQuadraticForm(R, beta * beta, -2 * alpha * beta, alpha * alpha)
