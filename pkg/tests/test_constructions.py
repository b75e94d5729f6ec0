"""Laurent resolution windows, swindle prefixes, mapping tori, realization."""
import pytest

from chaink0 import intlinalg

from chaink0.complexes import (ChainMap, Homotopy, ProjComplex, ProjModule,
                               homology, validate_complex)
from chaink0.constructions import (algebraic_mapping_torus,
                                   laurent_resolution, laurent_window_check,
                                   realize, swindle_prefix,
                                   torus_invariance_check)
from chaink0.instant import finiteness_obstruction, verify_domination
from chaink0.matrices import Mat
from chaink0.projective import quadratic_class_oracle, rank
from chaink0.rings import C2, ZZ, QuadraticRing, UnsupportedRing

Q5 = QuadraticRing(-5)


def split_line():
    return ProjModule(Mat.from_rows(ZZ, [[1, 1], [0, 0]]))


def c2_half():
    # the augmentation-like idempotent does not exist over Z[C2] with
    # integer coefficients, so use a coordinate projection instead
    return ProjModule(Mat.from_rows(C2, [[1, 0], [0, 0]]))


def test_window_check_full_idempotent():
    chk = laurent_window_check(ProjModule.free(ZZ, 2), 2)
    assert chk.ok and chk.cokernel_rank == 2


def test_window_check_zero_idempotent():
    chk = laurent_window_check(ProjModule(Mat.zero(ZZ, 2, 2)), 2)
    assert chk.ok and chk.cokernel_rank == 0


def test_window_check_various_windows():
    for p in (split_line(), c2_half()):
        for n in (2, 4, 8):
            chk = laurent_window_check(p, n)
            assert chk.ok, chk.as_dict()
            assert chk.cokernel_rank == len(
                intlinalg.image_basis(p.idem.flatten()))


def test_laurent_resolution_shape():
    cx, chk = laurent_resolution(split_line(), window=4)
    assert chk.ok
    assert cx.ring.kind == "laurent"
    assert cx.rank_at(0) == cx.rank_at(1) == 2
    assert validate_complex(cx).ok
    # at t = 1 the boundary degenerates to the complementary idempotent
    one = ZZ.from_int(1)
    ev = cx.boundary(1).map_entries(
        lambda v: cx.ring.evaluate(v, one), ZZ)
    assert ev == Mat.identity(ZZ, 2) - split_line().idem


def test_laurent_resolution_rejects_quadratic():
    e = Mat.identity(Q5, 1)
    with pytest.raises(UnsupportedRing):
        laurent_resolution(ProjModule(e))


def test_swindle_prefix_interior_vanishes():
    for p in (split_line(), c2_half(),
              ProjModule.free(ZZ, 1), ProjModule(Mat.zero(ZZ, 1, 1))):
        for n in (2, 4, 8):
            cx = swindle_prefix(p, n)
            assert validate_complex(cx).ok
            h = homology(cx)
            flat_rank = len(intlinalg.image_basis(p.idem.flatten()))
            assert h.at(0) == (flat_rank, ())
            for j in range(1, n):
                assert h.at(j) == (0, ())


def test_swindle_prefix_rejects_empty():
    with pytest.raises(ValueError):
        swindle_prefix(split_line(), 0)


def test_torus_of_point_boundaries():
    pt = ProjComplex.free_complex(ZZ, 0, [1], [])
    ident = algebraic_mapping_torus(ChainMap.identity(pt))
    ext = ident.ring
    one = ext.from_int(1)
    assert ident.boundary(1)[0, 0] == one - ext.t()
    zero_map = algebraic_mapping_torus(ChainMap.zero(pt, pt))
    assert zero_map.boundary(1)[0, 0] == one


def test_torus_invariance_identity_factorization():
    pt = ProjComplex.free_complex(ZZ, 0, [1], [])
    u = ChainMap.identity(pt)
    t1 = algebraic_mapping_torus(u)
    fwd = ChainMap.identity(t1)
    h = Homotopy.zero(t1)
    rep = torus_invariance_check(u, u, fwd, fwd, h, h)
    assert rep.ok


def test_torus_invariance_rejects_corrupted_homotopy():
    pt = ProjComplex.free_complex(ZZ, 0, [1], [])
    u = ChainMap.identity(pt)
    t1 = algebraic_mapping_torus(u)
    fwd = ChainMap.identity(t1)
    good = Homotopy.zero(t1)
    bad = Homotopy(t1, t1, {0: Mat.identity(t1.ring, 1)})
    rep = torus_invariance_check(u, u, fwd, fwd, bad, good)
    assert not rep.ok
    assert any(v.code.startswith("round_trip_1.") and v.degree == 0
               for v in rep.violations)


def test_realize_free_round_trip():
    for ring in (ZZ, C2):
        for k in (0, 1, 2):
            p = ProjModule.free(ring, 2)
            a, dom = realize(p, k)
            assert verify_domination(dom).ok
            rep = finiteness_obstruction(dom)
            assert rep.chi == (-1) ** k * 2
            assert rep.sigma_is_witnessed_zero


def test_realize_ideal_round_trip():
    e = Mat.from_rows(Q5, [[Q5.from_coords([-2, 0]), Q5.from_coords([-1, -1])],
                           [Q5.from_coords([1, -1]), Q5.from_coords([3, 0])]])
    p = ProjModule(e)
    for k in (0, 1, 2):
        a, dom = realize(p, k)
        assert verify_domination(dom).ok
        rep = finiteness_obstruction(dom)
        assert rep.chi == (-1) ** k * rank(p)
        nonfree = [m for m in rep.sigma.plus + rep.sigma.minus
                   if not m.is_free]
        assert len(nonfree) == 1
        # the residual class survives realization with the same oracle verdict
        assert quadratic_class_oracle(nonfree[0]).status == "non_principal"


def test_realize_rejects_negative_degree():
    with pytest.raises(ValueError):
        realize(split_line(), -1)
