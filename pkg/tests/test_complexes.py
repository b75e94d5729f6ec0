"""Complexes, chain maps, homotopies, cones, and lattice homology."""
import random

import pytest

from chaink0.complexes import (ChainMap, Homotopy, ProjComplex, ProjModule,
                               direct_sum, homology, mapping_cone, shift,
                               tensor_with_laurent, validate_complex,
                               verify_chain_map, verify_homotopy)
from chaink0.corpus import random_free_complex
from chaink0.matrices import Mat
from chaink0.rings import C2, ZZ, QuadraticRing, UnsupportedRing

Q5 = QuadraticRing(-5)


def circle():
    return ProjComplex.free_complex(ZZ, 0, [1, 1], [Mat.from_rows(ZZ, [[0]])])


def cone_point():
    return ProjComplex.free_complex(ZZ, 0, [1, 1], [Mat.from_rows(ZZ, [[1]])])


def test_validate_complex():
    assert validate_complex(circle()).ok
    assert validate_complex(cone_point()).ok
    bad = ProjComplex.free_complex(
        ZZ, 0, [1, 1, 1], [Mat.from_rows(ZZ, [[1]]), Mat.from_rows(ZZ, [[1]])])
    rep = validate_complex(bad)
    assert not rep.ok
    assert any(v.code == "complex.dd_nonzero" and v.degree == 2
               for v in rep.violations)


def test_verify_chain_map():
    c = circle()
    assert verify_chain_map(ChainMap.identity(c)).ok
    assert verify_chain_map(ChainMap.zero(c, cone_point())).ok
    broken = ChainMap(c, cone_point(), {1: Mat.from_rows(ZZ, [[1]])})
    rep = verify_chain_map(broken)
    assert not rep.ok


def test_verify_homotopy():
    c = cone_point()
    ident, zero = ChainMap.identity(c), ChainMap.zero(c, c)
    assert verify_homotopy(Homotopy.zero(c), ident, ident).ok
    contraction = Homotopy(c, c, {0: Mat.from_rows(ZZ, [[1]])})
    assert verify_homotopy(contraction, ident, zero).ok
    wrong = Homotopy(c, c, {0: Mat.from_rows(ZZ, [[2]])})
    assert not verify_homotopy(wrong, ident, zero).ok


def test_homology_circle():
    h = homology(circle())
    assert h.at(0) == (1, ()) and h.at(1) == (1, ())


def test_homology_mod_two():
    x = ProjComplex.free_complex(ZZ, 0, [1, 1], [Mat.from_rows(ZZ, [[2]])])
    h = homology(x)
    assert h.at(0) == (0, (2,)) and h.at(1) == (0, ())


def test_homology_projective_plane():
    rp2 = ProjComplex.free_complex(
        ZZ, 0, [1, 1, 1], [Mat.from_rows(ZZ, [[0]]), Mat.from_rows(ZZ, [[2]])])
    h = homology(rp2)
    assert h.at(0) == (1, ())
    assert h.at(1) == (0, (2,))
    assert h.at(2) == (0, ())


def test_homology_inside_idempotent_image():
    e = Mat.from_rows(Q5, [[Q5.from_coords([-2, 0]), Q5.from_coords([-1, -1])],
                           [Q5.from_coords([1, -1]), Q5.from_coords([3, 0])]])
    x = ProjComplex(Q5, 0, [ProjModule(e)], [])
    assert homology(x).at(0) == (2, ())  # ideal lattice has Z-rank two


def test_homology_rejects_laurent():
    with pytest.raises(UnsupportedRing):
        homology(tensor_with_laurent(circle()))


def test_cone_of_identity_is_acyclic():
    rng = random.Random(4)
    for ring in (ZZ, C2):
        for _ in range(50):
            x = random_free_complex(rng, ring)
            cone = mapping_cone(ChainMap.identity(x))
            assert validate_complex(cone).ok
            assert homology(cone).is_trivial


def test_cone_of_zero_shifts():
    x = circle()
    cone = mapping_cone(ChainMap.zero(x, ProjComplex.zero(ZZ)))
    h = homology(cone)
    assert h.at(1) == (1, ()) and h.at(2) == (1, ())


def test_cone_of_multiplication():
    pt = ProjComplex.free_complex(ZZ, 0, [1], [])
    f = ChainMap(pt, pt, {0: Mat.from_rows(ZZ, [[2]])})
    assert homology(mapping_cone(f)).at(0) == (0, (2,))


def test_shift_round_trip():
    x = circle()
    assert shift(shift(x, 1), -1) == x
    assert shift(x, 2).bottom_degree == 2


def test_direct_sum_homology_adds():
    rng = random.Random(5)
    for _ in range(20):
        x = random_free_complex(rng, ZZ)
        y = random_free_complex(rng, ZZ)
        hx, hy, hs = homology(x), homology(y), homology(direct_sum(x, y))
        for n in range(-1, 6):
            assert hs.betti(n) == hx.betti(n) + hy.betti(n)
            # torsion multisets agree after re-normalization to divisor chains
            merged = sorted(hx.torsion(n) + hy.torsion(n))
            assert _divisor_chain(merged) == _divisor_chain(sorted(hs.torsion(n)))


def _divisor_chain(values):
    """Normal form of a finite abelian torsion multiset as a divisor chain."""
    import math
    vals = [v for v in values if v > 1]
    chain = []
    while vals:
        acc = 1
        rest = []
        for v in vals:
            g = math.gcd(acc, v)
            acc = acc * v // g
            if g > 1:
                rest.append(g)
        chain.append(acc)
        vals = [v for v in rest if v > 1]
    return sorted(chain)


def test_direct_sum_with_zero():
    x = circle()
    assert direct_sum(x, ProjComplex.zero(ZZ)) == x


def test_euler_characteristic_matches_betti():
    rng = random.Random(6)
    for _ in range(30):
        x = random_free_complex(rng, ZZ)
        h = homology(x)
        chi_rank = sum((-1) ** n * x.rank_at(n) for n in x.degrees())
        chi_betti = sum((-1) ** n * h.betti(n) for n in range(-1, 8))
        assert chi_rank == chi_betti


def test_tensor_with_laurent_keeps_constants():
    x = ProjComplex.free_complex(ZZ, 0, [1, 1], [Mat.from_rows(ZZ, [[2]])])
    xl = tensor_with_laurent(x)
    assert xl.ring.kind == "laurent"
    assert validate_complex(xl).ok
    assert xl.boundary(1)[0, 0] == xl.ring.from_int(2)
