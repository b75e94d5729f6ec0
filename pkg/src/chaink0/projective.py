"""Projective-module calculus: complements, ranks, K0 bookkeeping, the
(chi, sigma) splitting, stable-freeness certificates, and the principality
oracle for imaginary quadratic coefficient rings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import intlinalg
from .complexes import ProjComplex, ProjModule
from .matrices import Mat, ShapeError
from .rings import GroupRing, IntegerRing, QuadraticRing, RingElement, UnsupportedRing
from .verdicts import Report


def make_projective(e: Mat) -> ProjModule:
    """Wrap an idempotent matrix as a module; reject non-idempotents."""
    if e.rows != e.cols:
        raise ShapeError("idempotent must be square")
    diff = (e @ e) - e
    if not diff.is_zero:
        for i in range(diff.rows):
            for j in range(diff.cols):
                if not diff[i, j].is_zero:
                    raise ValueError(
                        f"not idempotent: (e@e - e)[{i},{j}] = "
                        f"{e.ring.format(diff[i, j])}")
    return ProjModule(e)


def complement(p: ProjModule) -> ProjModule:
    """The module with idempotent 1 - e; p + complement(p) is free."""
    return ProjModule(Mat.identity(p.ring, p.ambient_rank) - p.idem)


def rank(p: ProjModule) -> int:
    """The K0(Z) coordinate of [p]: a nonnegative integer, additive on sums."""
    ring = p.ring
    e = p.idem
    if isinstance(ring, IntegerRing):
        return sum(ring.coords(e[i, i])[0] for i in range(e.rows))
    if isinstance(ring, GroupRing):
        return sum(ring.augment(e[i, i]) for i in range(e.rows))
    if isinstance(ring, QuadraticRing):
        return sum(ring.coords(e[i, i])[0] for i in range(e.rows))
    raise UnsupportedRing(f"rank over {ring.kind} is unsupported")


class K0Class:
    """A formal difference of projective modules over one ring."""

    __slots__ = ("ring", "plus", "minus")

    def __init__(self, ring, plus=(), minus=()):
        plus, minus = tuple(plus), tuple(minus)
        for m in plus + minus:
            if m.ring != ring:
                raise ValueError("module over the wrong ring")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    def __setattr__(self, name, value):
        raise AttributeError("K0 classes are immutable")

    def rank_plus(self) -> int:
        return sum(rank(m) for m in self.plus)

    def rank_minus(self) -> int:
        return sum(rank(m) for m in self.minus)

    def negate(self) -> "K0Class":
        return K0Class(self.ring, self.minus, self.plus)

    @property
    def is_structurally_free(self) -> bool:
        return all(m.is_free or m.is_zero for m in self.plus + self.minus)

    def __repr__(self):
        return (f"K0Class(+{[m.ambient_rank for m in self.plus]}, "
                f"-{[m.ambient_rank for m in self.minus]})")


def k0_class_of_complex(x: ProjComplex) -> K0Class:
    """Alternating sum of the modules, split by absolute degree parity."""
    plus, minus = [], []
    for n in x.degrees():
        m = x.module(n)
        if m.ambient_rank == 0:
            continue
        (plus if n % 2 == 0 else minus).append(m)
    return K0Class(x.ring, plus, minus)


@dataclass(frozen=True)
class StableFreenessWitness:
    """An explicit isomorphism P + R^a = R^b.

    iso is b x (m + a) and iso_inverse is (m + a) x b, where m is the
    ambient rank of P; the first m coordinates of the middle term carry the
    idempotent e and the last a carry the identity.
    """

    a: int
    b: int
    iso: Mat
    iso_inverse: Mat

    @classmethod
    def trivial(cls, p: ProjModule) -> "StableFreenessWitness":
        """The identity witness for an honestly free module."""
        m = p.ambient_rank
        return cls(0, m, Mat.identity(p.ring, m), Mat.identity(p.ring, m))


def verify_stable_freeness(p: ProjModule, w: StableFreenessWitness) -> Report:
    """Check the two-sided inverse identities of the witness exactly."""
    rep = Report()
    ring = p.ring
    m = p.ambient_rank
    if w.iso.rows != w.b or w.iso.cols != m + w.a:
        rep.add("witness.iso_shape")
        return rep
    if w.iso_inverse.rows != m + w.a or w.iso_inverse.cols != w.b:
        rep.add("witness.iso_inverse_shape")
        return rep
    if w.a == 0 and m == 0:
        stab = Mat.zero(ring, 0, 0)
    else:
        stab = Mat.block([
            [p.idem, Mat.zero(ring, m, w.a)],
            [Mat.zero(ring, w.a, m), Mat.identity(ring, w.a)],
        ]) if w.a else p.idem
    if (w.iso @ w.iso_inverse) != Mat.identity(ring, w.b):
        rep.add("witness.not_right_inverse")
    if (w.iso_inverse @ w.iso) != stab:
        rep.add("witness.not_left_inverse")
    if (w.iso @ stab) != w.iso:
        rep.add("witness.iso_ignores_summand")
    if (stab @ w.iso_inverse) != w.iso_inverse:
        rep.add("witness.inverse_escapes_summand")
    return rep


@dataclass(frozen=True)
class ObstructionReport:
    """The split class [P_*] = (chi, sigma) with an optional freeness witness.

    sigma is rank-normalized (plus and minus ranks agree).  When present,
    sigma_zero_witness certifies stable freeness of witness_module, the
    block direct sum of sigma's plus-side idempotents, which forces sigma
    to vanish in reduced K0.
    """

    chi: int
    sigma: K0Class
    sigma_zero_witness: StableFreenessWitness | None = None
    witness_module: ProjModule | None = None

    @property
    def sigma_is_witnessed_zero(self) -> bool:
        if self.sigma_zero_witness is None or self.witness_module is None:
            return False
        return verify_stable_freeness(self.witness_module,
                                      self.sigma_zero_witness).ok


def sigma_module(sigma: K0Class) -> ProjModule:
    """Block direct sum of the plus-side idempotents of a normalized class."""
    mats = [m.idem for m in sigma.plus if m.ambient_rank]
    if not mats:
        return ProjModule(Mat.zero(sigma.ring, 0, 0))
    grid = [[mats[i] if i == j else Mat.zero(sigma.ring, mats[i].rows, mats[j].cols)
             for j in range(len(mats))] for i in range(len(mats))]
    return ProjModule(Mat.block(grid))


def split_k0(c: K0Class) -> ObstructionReport:
    """chi = rank difference; sigma = the class with free summands stripped
    and the smaller side padded free so its rank vanishes."""
    chi = c.rank_plus() - c.rank_minus()
    plus = [m for m in c.plus if not (m.is_free or m.is_zero)]
    minus = [m for m in c.minus if not (m.is_free or m.is_zero)]
    rp = sum(rank(m) for m in plus)
    rm = sum(rank(m) for m in minus)
    if rp > rm:
        minus.append(ProjModule.free(c.ring, rp - rm))
    elif rm > rp:
        plus.append(ProjModule.free(c.ring, rm - rp))
    sigma = K0Class(c.ring, plus, minus)
    witness = module = None
    if not plus and not minus:
        module = ProjModule(Mat.zero(c.ring, 0, 0))
        witness = StableFreenessWitness(0, 0, Mat.zero(c.ring, 0, 0),
                                        Mat.zero(c.ring, 0, 0))
    return ObstructionReport(chi, sigma, witness, module)


# --- imaginary quadratic ideal-class oracle --------------------------------

@dataclass(frozen=True)
class IdealLattice:
    """An ideal of Z[sqrt(d)] given by a Z-basis of (a, b)-coordinate pairs."""

    ring: QuadraticRing
    basis: tuple  # two columns, each a pair [a, b]

    @property
    def norm(self) -> int:
        (a0, b0), (a1, b1) = self.basis
        return abs(a0 * b1 - a1 * b0)

    def contains(self, elem: RingElement) -> bool:
        cols = [list(self.basis[0]), list(self.basis[1])]
        m = [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]]
        return intlinalg.solve_int(m, self.ring.coords(elem)) is not None

    def elements(self) -> tuple[RingElement, RingElement]:
        return (self.ring.from_coords(list(self.basis[0])),
                self.ring.from_coords(list(self.basis[1])))


def ideal_of_module(p: ProjModule) -> IdealLattice:
    """The fractional-ideal representative of a rank-one quadratic module.

    Projects the image lattice of the idempotent onto one ambient coordinate
    where the projection is injective; the image is an ideal of the ring.
    """
    ring = p.ring
    if not isinstance(ring, QuadraticRing):
        raise UnsupportedRing("ideal extraction needs a quadratic ring")
    if rank(p) != 1:
        raise UnsupportedRing("ideal extraction needs a rank-one module")
    cols = p.image_lattice_basis()
    if len(cols) != 2:
        raise ArithmeticError("rank-one module with lattice rank != 2")
    for i in range(p.ambient_rank):
        u = (cols[0][2 * i], cols[0][2 * i + 1])
        v = (cols[1][2 * i], cols[1][2 * i + 1])
        if u[0] * v[1] - v[0] * u[1] != 0:
            return IdealLattice(ring, (u, v))
    raise ArithmeticError("no injective coordinate projection found")


def ideal_product(x: IdealLattice, y: IdealLattice) -> IdealLattice:
    """The product ideal, as the lattice spanned by pairwise products."""
    ring = x.ring
    prods = []
    for a in x.elements():
        for b in y.elements():
            prods.append(ring.coords(a * b))
    m = intlinalg.columns_to_matrix(prods, 2)
    basis = intlinalg.image_basis(m)
    if len(basis) != 2:
        raise ArithmeticError("degenerate ideal product")
    return IdealLattice(ring, (tuple(basis[0]), tuple(basis[1])))


def minkowski_bound(ring: QuadraticRing) -> int:
    """Norm bound covering every ideal class of Z[sqrt(d)], d < 0."""
    disc = 4 * abs(ring.d)
    return math.ceil((2.0 / math.pi) * math.sqrt(disc))


@dataclass(frozen=True)
class ClassVerdict:
    """Outcome of the principality search for an ideal."""

    status: str  # "principal" | "non_principal" | "inconclusive"
    norm: int
    bound: int
    minkowski: int
    generator: RingElement | None = None
    detail: str = ""

    @property
    def is_principal(self) -> bool:
        return self.status == "principal"


def principality(ideal: IdealLattice, bound: int | None = None) -> ClassVerdict:
    """Exhaustive norm search: principal iff some element has norm = N(ideal).

    Conclusive only when the search bound covers both the Minkowski bound
    and the ideal norm, so a non_principal verdict is a finite proof.
    """
    ring = ideal.ring
    mk = minkowski_bound(ring)
    n = ideal.norm
    if bound is None:
        bound = max(mk, n)
    if bound < mk or bound < n:
        return ClassVerdict("inconclusive", n, bound, mk,
                            detail="bound below the Minkowski/norm threshold")
    dd = abs(ring.d)
    best = None
    for b in range(0, math.isqrt(n // dd) + 1 if n >= dd else 1):
        rem = n - dd * b * b
        if rem < 0:
            continue
        a = math.isqrt(rem)
        if a * a != rem:
            continue
        for sa in ((a, -a) if a else (0,)):
            for sb in ((b, -b) if b else (0,)):
                cand = ring.from_coords([sa, sb])
                if ideal.contains(cand):
                    best = cand
                    break
            if best is not None:
                break
        if best is not None:
            break
    if best is not None:
        a0, b0 = ring.coords(best)
        if a0 < 0 or (a0 == 0 and b0 < 0):
            best = -best
        return ClassVerdict("principal", n, bound, mk, generator=best)
    return ClassVerdict(
        "non_principal", n, bound, mk,
        detail=f"no element of norm {n} in the ideal; search covered "
               f"norms up to {bound} >= Minkowski {mk}")


def quadratic_class_oracle(p: ProjModule, bound: int | None = None) -> ClassVerdict:
    """Decide principality of the class of a rank-one quadratic module."""
    return principality(ideal_of_module(p), bound)
