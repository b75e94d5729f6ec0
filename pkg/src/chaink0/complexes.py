"""Bounded chain complexes of projective modules, chain maps, homotopies,
mapping cones, and homology of the underlying integer lattices.

A projective module is the image of an idempotent matrix; free modules are
the identity-idempotent special case.  Boundaries lower degree by one and
matrices act on column vectors.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import intlinalg
from .matrices import Mat, ShapeError
from .rings import Ring, RingMismatch, UnsupportedRing
from .verdicts import Report


class ProjModule:
    """A finitely generated projective module: im(e) for an idempotent e."""

    __slots__ = ("ring", "ambient_rank", "idem")

    def __init__(self, idem: Mat):
        if idem.rows != idem.cols:
            raise ShapeError("idempotent must be square")
        object.__setattr__(self, "ring", idem.ring)
        object.__setattr__(self, "ambient_rank", idem.rows)
        object.__setattr__(self, "idem", idem)

    def __setattr__(self, name, value):
        raise AttributeError("modules are immutable")

    @classmethod
    def free(cls, ring: Ring, rank: int) -> "ProjModule":
        return cls(Mat.identity(ring, rank))

    @property
    def is_free(self) -> bool:
        return self.idem == Mat.identity(self.ring, self.ambient_rank)

    @property
    def is_zero(self) -> bool:
        return self.idem.is_zero

    def validate(self) -> Report:
        rep = Report()
        if not self.idem.is_idempotent():
            rep.add("module.not_idempotent")
        return rep

    def lattice_rank(self) -> int:
        """Z-rank of the image of the flattened idempotent."""
        if self.ring.flat_rank is None:
            raise UnsupportedRing("no finite lattice over this ring")
        return intlinalg.smith_normal_form(
            self.idem.flatten(), self.ambient_rank * self.ring.flat_rank).rank

    def image_lattice_basis(self) -> list[list[int]]:
        """Columns forming a Z-basis of the flattened image lattice."""
        if self.ring.flat_rank is None:
            raise UnsupportedRing("no finite lattice over this ring")
        return intlinalg.image_basis(self.idem.flatten())

    def __eq__(self, other):
        if not isinstance(other, ProjModule):
            return NotImplemented
        return self.idem == other.idem

    def __hash__(self):
        return hash(self.idem)

    def __repr__(self):
        tag = "free" if self.is_free else "proj"
        return f"ProjModule({tag}, ambient={self.ambient_rank}, ring={self.ring!r})"


class ProjComplex:
    """A bounded complex; modules[j] sits in degree bottom_degree + j."""

    __slots__ = ("ring", "bottom_degree", "modules", "boundaries")

    def __init__(self, ring: Ring, bottom_degree: int, modules, boundaries):
        modules = tuple(modules)
        boundaries = tuple(boundaries)
        if modules and len(boundaries) != len(modules) - 1:
            raise ShapeError("need one boundary per adjacent pair of modules")
        if not modules and boundaries:
            raise ShapeError("boundaries without modules")
        for m in modules:
            if m.ring != ring:
                raise RingMismatch("module over the wrong ring")
        for j, d in enumerate(boundaries):
            if d.ring != ring:
                raise RingMismatch("boundary over the wrong ring")
            if d.rows != modules[j].ambient_rank or d.cols != modules[j + 1].ambient_rank:
                raise ShapeError(f"boundary {j} has shape {d.rows}x{d.cols}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "bottom_degree", bottom_degree)
        object.__setattr__(self, "modules", modules)
        object.__setattr__(self, "boundaries", boundaries)

    def __setattr__(self, name, value):
        raise AttributeError("complexes are immutable")

    @classmethod
    def free_complex(cls, ring: Ring, bottom_degree: int, ranks, boundaries) -> "ProjComplex":
        mods = [ProjModule.free(ring, r) for r in ranks]
        return cls(ring, bottom_degree, mods, boundaries)

    @classmethod
    def zero(cls, ring: Ring) -> "ProjComplex":
        return cls(ring, 0, (), ())

    @property
    def top_degree(self) -> int:
        return self.bottom_degree + len(self.modules) - 1

    def degrees(self) -> range:
        return range(self.bottom_degree, self.bottom_degree + len(self.modules))

    def module(self, n: int) -> ProjModule:
        j = n - self.bottom_degree
        if 0 <= j < len(self.modules):
            return self.modules[j]
        return ProjModule(Mat.zero(self.ring, 0, 0))

    def rank_at(self, n: int) -> int:
        return self.module(n).ambient_rank

    def boundary(self, n: int) -> Mat:
        """The map out of degree n, into degree n - 1 (zero off the support)."""
        j = n - self.bottom_degree
        if 1 <= j < len(self.modules):
            return self.boundaries[j - 1]
        return Mat.zero(self.ring, self.rank_at(n - 1), self.rank_at(n))

    def idem(self, n: int) -> Mat:
        return self.module(n).idem

    def euler_rank(self) -> int:
        """Alternating sum of ambient ranks (free complexes: the usual chi)."""
        return sum((-1) ** n * self.rank_at(n) for n in self.degrees())

    def __eq__(self, other):
        if not isinstance(other, ProjComplex):
            return NotImplemented
        return (self.ring == other.ring and self.bottom_degree == other.bottom_degree
                and self.modules == other.modules and self.boundaries == other.boundaries)

    def __repr__(self):
        ranks = ", ".join(str(m.ambient_rank) for m in self.modules)
        return (f"ProjComplex(bottom={self.bottom_degree}, ranks=[{ranks}], "
                f"ring={self.ring!r})")


def validate_complex(x: ProjComplex) -> Report:
    """Check d@d = 0 and that boundaries respect the projective summands."""
    rep = Report()
    for n in x.degrees():
        if not x.module(n).validate().ok:
            rep.add("complex.module_not_idempotent", degree=n)
    for n in x.degrees():
        d = x.boundary(n)
        if n - 1 in x.degrees() and n + 1 in x.degrees():
            if not (x.boundary(n) @ x.boundary(n + 1)).is_zero:
                rep.add("complex.dd_nonzero", degree=n + 1)
        if n - 1 in x.degrees():
            if (x.idem(n - 1) @ d @ x.idem(n)) != d:
                rep.add("complex.boundary_escapes_summand", degree=n)
    return rep


class ChainMap:
    """A degreewise map f_n between two complexes; absent degrees are zero."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: ProjComplex, target: ProjComplex, components: dict):
        if source.ring != target.ring:
            raise RingMismatch("chain map between different rings")
        comps = {}
        for n, m in components.items():
            if m.ring != source.ring:
                raise RingMismatch(f"component {n} over the wrong ring")
            if m.rows != target.rank_at(n) or m.cols != source.rank_at(n):
                raise ShapeError(f"component {n} has shape {m.rows}x{m.cols}")
            if not m.is_zero:
                comps[n] = m
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("chain maps are immutable")

    def component(self, n: int) -> Mat:
        c = self.components.get(n)
        if c is not None:
            return c
        return Mat.zero(self.source.ring, self.target.rank_at(n), self.source.rank_at(n))

    @classmethod
    def identity(cls, x: ProjComplex) -> "ChainMap":
        """The identity on a projective complex: components are the idempotents."""
        return cls(x, x, {n: x.idem(n) for n in x.degrees()})

    @classmethod
    def zero(cls, source: ProjComplex, target: ProjComplex) -> "ChainMap":
        return cls(source, target, {})

    def compose(self, first: "ChainMap") -> "ChainMap":
        """self after first (right-to-left)."""
        if first.target is not self.source and first.target != self.source:
            raise ShapeError("composition through mismatched complexes")
        degs = set(self.components) | set(first.components)
        return ChainMap(first.source, self.target,
                        {n: self.component(n) @ first.component(n) for n in degs})

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        degs = set(self.components) | set(other.components)
        return all(self.component(n) == other.component(n) for n in degs)

    def __repr__(self):
        return f"ChainMap(degrees={sorted(self.components)})"


def verify_chain_map(f: ChainMap) -> Report:
    """Exactness of every commuting square plus idempotent compatibility."""
    rep = Report()
    degs = set(f.source.degrees()) | set(f.target.degrees())
    for n in sorted(degs):
        fn = f.component(n)
        if (f.target.idem(n) @ fn @ f.source.idem(n)) != fn:
            rep.add("map.escapes_summand", degree=n)
        lhs = f.target.boundary(n) @ fn
        rhs = f.component(n - 1) @ f.source.boundary(n)
        if lhs != rhs:
            rep.add("map.square_fails", degree=n)
    return rep


class Homotopy:
    """A degreewise s_n: X_n -> Y_{n+1} between two complexes."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: ProjComplex, target: ProjComplex, components: dict):
        if source.ring != target.ring:
            raise RingMismatch("homotopy between different rings")
        comps = {}
        for n, m in components.items():
            if m.rows != target.rank_at(n + 1) or m.cols != source.rank_at(n):
                raise ShapeError(f"homotopy component {n} has shape {m.rows}x{m.cols}")
            if not m.is_zero:
                comps[n] = m
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("homotopies are immutable")

    def component(self, n: int) -> Mat:
        c = self.components.get(n)
        if c is not None:
            return c
        return Mat.zero(self.source.ring, self.target.rank_at(n + 1),
                        self.source.rank_at(n))

    @classmethod
    def zero(cls, source: ProjComplex, target: ProjComplex | None = None) -> "Homotopy":
        return cls(source, target or source, {})

    def __repr__(self):
        return f"Homotopy(degrees={sorted(self.components)})"


def verify_homotopy(s: Homotopy, f: ChainMap, g: ChainMap) -> Report:
    """Check s d + d s = f - g degreewise, plus idempotent compatibility."""
    rep = Report()
    if f.source != g.source or f.target != g.target:
        rep.add("homotopy.map_pair_mismatch")
        return rep
    src, tgt = f.source, f.target
    if s.source != src or s.target != tgt:
        rep.add("homotopy.wrong_complexes")
        return rep
    degs = set(src.degrees()) | set(tgt.degrees())
    for n in sorted(degs):
        sn = s.component(n)
        if (tgt.idem(n + 1) @ sn @ src.idem(n)) != sn:
            rep.add("homotopy.escapes_summand", degree=n)
        lhs = s.component(n - 1) @ src.boundary(n) + tgt.boundary(n + 1) @ sn
        rhs = f.component(n) - g.component(n)
        if lhs != rhs:
            rep.add("homotopy.identity_fails", degree=n)
    return rep


@dataclass(frozen=True)
class HomologyResult:
    """Underlying-abelian-group homology: per-degree betti and torsion chain."""

    groups: tuple  # of (degree, betti, torsion-tuple), nontrivial entries only

    @classmethod
    def from_dict(cls, by_degree: dict) -> "HomologyResult":
        items = tuple((n, b, tuple(t)) for n, (b, t) in sorted(by_degree.items())
                      if b or t)
        return cls(items)

    def at(self, n: int) -> tuple[int, tuple[int, ...]]:
        for deg, b, t in self.groups:
            if deg == n:
                return b, t
        return 0, ()

    def betti(self, n: int) -> int:
        return self.at(n)[0]

    def torsion(self, n: int) -> tuple[int, ...]:
        return self.at(n)[1]

    @property
    def is_trivial(self) -> bool:
        return not self.groups

    def as_dict(self) -> dict:
        return {str(n): {"betti": b, "torsion": list(t)} for n, b, t in self.groups}

    def __repr__(self):
        if not self.groups:
            return "HomologyResult(0)"
        parts = []
        for n, b, t in self.groups:
            pieces = ["Z"] * b + [f"Z/{k}" for k in t]
            parts.append(f"H{n}=" + "+".join(pieces))
        return "HomologyResult(" + ", ".join(parts) + ")"


def _lattice_boundaries(x: ProjComplex) -> tuple[dict, dict]:
    """Flattened boundary matrices expressed in image-lattice bases.

    Returns ({degree: Z-rank of the degree-n lattice},
             {degree: integer matrix of d_n in those bases}).
    """
    if x.ring.flat_rank is None:
        raise UnsupportedRing(f"homology over {x.ring.kind} is unsupported")
    bases = {}
    ranks = {}
    solvers = {}
    for n in x.degrees():
        mod = x.module(n)
        cols = mod.image_lattice_basis()
        ranks[n] = len(cols)
        m = intlinalg.columns_to_matrix(cols, mod.ambient_rank * x.ring.flat_rank)
        bases[n] = m
        solvers[n] = intlinalg.IntegerSolver(m, len(cols))
    mats = {}
    for n in x.degrees():
        if n - 1 not in ranks:
            continue
        flat = x.boundary(n).flatten()
        cols = []
        for j in range(ranks[n]):
            col = [bases[n][i][j] for i in range(len(bases[n]))]
            img = [sum(flat[i][k] * col[k] for k in range(len(col)))
                   for i in range(len(flat))]
            sol = solvers[n - 1].solve(img)
            if sol is None:
                raise ArithmeticError("boundary leaves the image lattice")
            cols.append(sol)
        mats[n] = intlinalg.columns_to_matrix(cols, ranks[n - 1])
    return ranks, mats


def homology(x: ProjComplex) -> HomologyResult:
    """Homology of the underlying integer lattice, inside idempotent images."""
    rep = validate_complex(x)
    if not rep.ok:
        raise ValueError(f"invalid complex: {rep.as_dict()['violations']}")
    ranks, mats = _lattice_boundaries(x)
    out = {}
    for n in x.degrees():
        r = ranks[n]
        d_out = mats.get(n)
        if d_out is None:
            kern = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
            kern = intlinalg.matrix_columns(kern)
        else:
            kern = intlinalg.IntegerSolver(d_out, r).kernel_basis()
        z = len(kern)
        d_in = mats.get(n + 1)
        if d_in is None or not z:
            out[n] = (z, ())
            continue
        kmat = intlinalg.columns_to_matrix(kern, r)
        ksolve = intlinalg.IntegerSolver(kmat, z)
        img_cols = []
        for col in intlinalg.matrix_columns(d_in):
            y = ksolve.solve(col)
            if y is None:
                raise ArithmeticError("image does not land in the kernel")
            img_cols.append(y)
        out[n] = intlinalg.quotient_invariants(z, img_cols)
    return HomologyResult.from_dict(out)


def mapping_cone(f: ChainMap) -> ProjComplex:
    """Cone_n = target_n + source_{n-1} with boundary [[d', f], [0, -d]]."""
    rep = verify_chain_map(f)
    if not rep.ok:
        raise ValueError(f"invalid chain map: {rep.as_dict()['violations']}")
    src, tgt = f.source, f.target
    ring = src.ring
    if not src.modules and not tgt.modules:
        return ProjComplex.zero(ring)
    degs = sorted(set(tgt.degrees()) | {n + 1 for n in src.degrees()})
    lo, hi = degs[0], degs[-1]
    mods = []
    for n in range(lo, hi + 1):
        mods.append(ProjModule(Mat.block([
            [tgt.idem(n), Mat.zero(ring, tgt.rank_at(n), src.rank_at(n - 1))],
            [Mat.zero(ring, src.rank_at(n - 1), tgt.rank_at(n)), src.idem(n - 1)],
        ])))
    bnds = []
    for n in range(lo + 1, hi + 1):
        bnds.append(Mat.block([
            [tgt.boundary(n), f.component(n - 1)],
            [Mat.zero(ring, src.rank_at(n - 2), tgt.rank_at(n)),
             -src.boundary(n - 1)],
        ]))
    return ProjComplex(ring, lo, mods, bnds)


def shift(x: ProjComplex, k: int) -> ProjComplex:
    return ProjComplex(x.ring, x.bottom_degree + k, x.modules, x.boundaries)


def direct_sum(x: ProjComplex, y: ProjComplex) -> ProjComplex:
    if x.ring != y.ring:
        raise RingMismatch("direct sum over different rings")
    if not x.modules:
        return y
    if not y.modules:
        return x
    ring = x.ring
    lo = min(x.bottom_degree, y.bottom_degree)
    hi = max(x.top_degree, y.top_degree)
    mods = []
    for n in range(lo, hi + 1):
        mods.append(ProjModule(Mat.block([
            [x.idem(n), Mat.zero(ring, x.rank_at(n), y.rank_at(n))],
            [Mat.zero(ring, y.rank_at(n), x.rank_at(n)), y.idem(n)],
        ])))
    bnds = []
    for n in range(lo + 1, hi + 1):
        bnds.append(Mat.block([
            [x.boundary(n), Mat.zero(ring, x.rank_at(n - 1), y.rank_at(n))],
            [Mat.zero(ring, y.rank_at(n - 1), x.rank_at(n)), y.boundary(n)],
        ]))
    return ProjComplex(ring, lo, mods, bnds)


def tensor_with_laurent(x: ProjComplex) -> ProjComplex:
    """Base change along the canonical inclusion into the Laurent extension."""
    from .rings import LaurentRing
    ext = LaurentRing(x.ring)
    mods = [ProjModule(m.idem.map_entries(ext.include, ext)) for m in x.modules]
    bnds = [d.map_entries(ext.include, ext) for d in x.boundaries]
    return ProjComplex(ext, x.bottom_degree, mods, bnds)
