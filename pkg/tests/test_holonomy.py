import numpy as np
import pytest
from scipy.linalg import expm

from trinion.errors import (ConstraintViolated, GeometryError, PoleTooClose,
                            SchemaError, SpectralMismatch)
from trinion.holonomy import (ArcSegment, Contour, LineSegment, RationalConnection,
                              builtin_catalogue, goldman_function,
                              hole_conjugacy_check, holonomy, holonomy_batch,
                              load_catalogue, rebased_from_prefix,
                              resolved_segments, sigma_check, word_segments, xi_map)
from trinion.lie_core import build_algebra, weyl_normalize
from trinion.orbits import solve_moment_zero

RNG = np.random.default_rng(17)
CTX2 = build_algebra(2)
CTX3 = build_algebra(3)
CAT = builtin_catalogue()


def su2_triple(theta=0.3, seed=0):
    h = weyl_normalize([theta, -theta])
    sol = solve_moment_zero(CTX2, h, h, h, seed=seed)
    return sol, h


# ---------------------------------------------------------------------------
# xi map
# ---------------------------------------------------------------------------

def test_xi_zero_residues():
    conn = xi_map(np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((2, 2)))
    for name in ("gamma1", "gamma2", "gamma3"):
        h = holonomy(conn, CAT.contours[name])
        assert np.max(np.abs(h - np.eye(2))) < 1e-12


def test_xi_sigma_condition_pointwise():
    x1 = CTX3.random_compact(RNG, 0.4)
    x2 = CTX3.random_compact(RNG, 0.4)
    conn = xi_map(x1, x2, -(x1 + x2), t=1.3)
    zs = RNG.normal(size=50) + 1j * RNG.normal(size=50)
    assert conn.sigma_residual(zs) < 1e-12


def test_xi_rejects_bad_inputs():
    x = CTX2.random_compact(RNG)
    with pytest.raises(ConstraintViolated):
        xi_map(x, x, x)  # sum not zero
    with pytest.raises(ConstraintViolated):
        xi_map(np.diag([1.0, -1.0]), x, None)  # not anti-Hermitian


def test_xi_equivariance_conjugates_holonomies():
    x1 = CTX2.random_compact(RNG, 0.3)
    x2 = CTX2.random_compact(RNG, 0.3)
    k = CTX2.random_unitary(RNG)
    conn = xi_map(x1, x2, None)
    moved = xi_map(k @ x1 @ k.conj().T, k @ x2 @ k.conj().T, None)
    for name in ("gamma1", "eight_narrow"):
        h = holonomy(conn, CAT.contours[name], 1e-11)
        hk = holonomy(moved, CAT.contours[name], 1e-11)
        assert np.linalg.norm(hk - k @ h @ k.conj().T) < 1e-8


# ---------------------------------------------------------------------------
# transport basics
# ---------------------------------------------------------------------------

def test_single_pole_exact_exponential():
    x = CTX2.random_compact(RNG, 0.4)
    conn = RationalConnection(X1=x, X2=np.zeros((2, 2)), scale=1.0)
    cw = holonomy(conn, CAT.contours["gamma1"], 1e-11)
    assert np.linalg.norm(cw - expm(2j * np.pi * x)) < 1e-9
    ccw = holonomy(conn, CAT.contours["gamma1_inv"], 1e-11)
    assert np.linalg.norm(ccw - expm(-2j * np.pi * x)) < 1e-9


def test_reversal_and_concatenation_and_det():
    x1 = CTX3.random_compact(RNG, 0.08)
    x2 = CTX3.random_compact(RNG, 0.08)
    conn = xi_map(x1, x2, None)
    c = CAT.contours["eight_narrow"]
    h = holonomy(conn, c, 1e-11)
    hinv = holonomy(conn, c.reversed(), 1e-11)
    assert np.linalg.norm(hinv - np.linalg.inv(h)) < 1e-10
    assert abs(np.linalg.det(h) - 1.0) < 1e-10
    two = holonomy(conn, list(c.segments) + list(c.segments), 1e-11)
    assert np.linalg.norm(two - h @ h) < 1e-8


def test_word_product_identity():
    sol, _ = su2_triple()
    conn = xi_map(*sol.points)
    segs = word_segments(CAT, ("gamma1", "gamma2", "gamma3"))
    h = holonomy(conn, segs, 1e-11)
    assert np.linalg.norm(h - np.eye(2)) <= 1e-8


def test_integrator_order():
    """Halving the tolerance must not increase the observed error."""
    x = CTX2.random_compact(RNG, 0.5)
    conn = RationalConnection(X1=x, X2=np.zeros((2, 2)), scale=1.0)
    exact = expm(2j * np.pi * x)
    errs = []
    for tol in (1e-6, 1e-8, 1e-10):
        h = holonomy(conn, CAT.contours["gamma1"], tol)
        errs.append(np.linalg.norm(h - exact))
    assert errs[2] < errs[0]
    assert errs[2] < 1e-8


def test_batch_matches_single_and_checkpoints():
    x1 = CTX2.random_compact(RNG, 0.3)
    x2 = CTX2.random_compact(RNG, 0.3)
    conn = RationalConnection(X1=x1, X2=x2, scale=1.0)
    c = CAT.contours["circle_plus"]
    single = holonomy(conn, c, 1e-11)
    batch = holonomy_batch(x1[None], x2[None], 1.0, c, 1e-11)
    assert np.linalg.norm(batch[0] - single) < 1e-10
    # prefix re-basing equals integrating the re-based contour directly
    d = [i for i in c.intersections if i.other == "circle_minus"][0]
    full, prefs = holonomy_batch(x1[None], x2[None], 1.0, c, 1e-11,
                                 checkpoints=[d.seg_param])
    reb = rebased_from_prefix(full[0], prefs[0][0])
    from trinion.holonomy import _rebase

    direct = holonomy(conn, _rebase(c.segments, *d.seg_param), 1e-11)
    assert np.linalg.norm(reb - direct) < 1e-9


def test_pole_too_close():
    x = CTX2.random_compact(RNG)
    conn = RationalConnection(X1=x, X2=np.zeros((2, 2)), scale=1.0)
    with pytest.raises(PoleTooClose):
        holonomy(conn, [LineSegment(1.05, 2.0)])


# ---------------------------------------------------------------------------
# spectral and reflection checks
# ---------------------------------------------------------------------------

def test_hole_conjugacy_trivial_and_su2():
    conn = xi_map(np.zeros((2, 2)), np.zeros((2, 2)), None)
    rep = hole_conjugacy_check(conn, 1, weyl_normalize([0.0 + 1e-9, -1e-9]), 0.0)
    assert np.max(np.abs(rep["eigenvalues"] - 1.0)) < 1e-9

    sol, h = su2_triple()
    conn = xi_map(*sol.points, t=np.pi)
    rep = hole_conjugacy_check(conn, 1, h, np.pi)
    want = np.sort([np.exp(-0.6 * np.pi), np.exp(0.6 * np.pi)])
    assert np.max(np.abs(rep["eigenvalues"] - want)) < 1e-7
    assert rep["hyperbolic"]


def test_hole_conjugacy_mismatch_raises():
    sol, h = su2_triple()
    conn = xi_map(*sol.points, t=np.pi)
    wrong = weyl_normalize([0.5, -0.5])
    with pytest.raises(SpectralMismatch):
        hole_conjugacy_check(conn, 1, wrong, np.pi)


def test_sigma_check_and_negative_control():
    sol, _ = su2_triple(seed=3)
    conn = xi_map(*sol.points, t=np.pi)
    for name in ("gamma1", "gamma2", "gamma3", "eight_narrow", "circle_both"):
        assert sigma_check(conn, CAT.contours[name], 1e-11) <= 1e-9
    broken = RationalConnection(X1=np.diag([0.3, -0.3]).astype(complex),
                                X2=sol.points[1].X, scale=1.0)
    assert sigma_check(broken, CAT.contours["gamma1"]) > 1e-3


def test_goldman_function_invariance():
    x1 = CTX3.random_compact(RNG, 0.3)
    x2 = CTX3.random_compact(RNG, 0.3)
    conn = xi_map(x1, x2, None)
    assert abs(goldman_function(xi_map(np.zeros((3, 3)), np.zeros((3, 3)), None),
                                CAT.contours["gamma1"]) - 3.0) < 1e-10
    base = goldman_function(conn, CAT.contours["eight_narrow"], 1e-11)
    for _ in range(5):
        k = CTX3.random_unitary(RNG)
        moved = xi_map(k @ x1 @ k.conj().T, k @ x2 @ k.conj().T, None)
        assert abs(goldman_function(moved, CAT.contours["eight_narrow"], 1e-11)
                   - base) < 1e-8 * max(1.0, abs(base))


def test_goldman_homotopy_invariance():
    """Two geometric realizations of the same free word have equal traces."""
    x1 = CTX2.random_compact(RNG, 0.25)
    x2 = CTX2.random_compact(RNG, 0.25)
    conn = xi_map(x1, x2, None)
    circle = goldman_function(conn, CAT.contours["circle_plus"], 1e-11)
    loop = goldman_function(conn, CAT.contours["gamma1"], 1e-11)
    assert abs(circle - loop) < 1e-8 * max(1.0, abs(circle))


# ---------------------------------------------------------------------------
# catalogue
# ---------------------------------------------------------------------------

def test_catalogue_validates_and_holes_disjoint():
    cat = builtin_catalogue()
    cat.validate()
    g1 = cat.contours["gamma1"]
    assert not [d for d in g1.intersections if d.other == "gamma2"]
    from trinion.holonomy import arc_crossings

    assert not arc_crossings(g1, cat.contours["gamma2"])


def test_catalogue_tau_pairing():
    g1 = CAT.contours["gamma1"]
    refl = g1.reflected()
    inv = CAT.contours[g1.tau_image]
    x = CTX2.random_compact(RNG, 0.3)
    conn = RationalConnection(X1=x, X2=np.zeros((2, 2)), scale=1.0)
    assert np.linalg.norm(holonomy(conn, refl, 1e-11) - holonomy(conn, inv, 1e-11)) < 1e-9


def test_resolution_words_realize_geometrically():
    rng = np.random.default_rng(5)
    x1 = CTX3.random_compact(rng, 0.1)
    x2 = CTX3.random_compact(rng, 0.1)
    conn = RationalConnection(X1=x1, X2=x2, scale=1.0)
    for pa, pb in CAT.pair_names[:-1]:
        ca, cb = CAT.contours[pa], CAT.contours[pb]
        for d in [i for i in ca.intersections if i.other == pb]:
            geo = np.trace(holonomy(conn, resolved_segments(ca, d, cb), 1e-12))
            if d.resolution_word:
                word = np.trace(holonomy(conn, word_segments(CAT, d.resolution_word), 1e-12))
            else:
                word = complex(CTX3.n)
            assert abs(geo - word) <= 1e-8 * max(1.0, abs(geo))


def test_catalogue_roundtrip_json(tmp_path):
    import json

    path = tmp_path / "cat.json"
    with open(path, "w") as fh:
        json.dump(builtin_catalogue().to_dict(), fh)
    cat = load_catalogue(str(path))
    assert set(cat.contours) == set(CAT.contours)
    x = CTX2.random_compact(RNG, 0.3)
    conn = RationalConnection(X1=x, X2=np.zeros((2, 2)), scale=1.0)
    a = holonomy(conn, cat.contours["gamma1"], 1e-11)
    b = holonomy(conn, CAT.contours["gamma1"], 1e-11)
    assert np.linalg.norm(a - b) < 1e-12


def test_load_catalogue_schema_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"contours": [{"name": "x"}]}')
    with pytest.raises(SchemaError):
        load_catalogue(str(path))


def test_geometry_margin_error():
    c = Contour(name="bad", word=("gamma1",),
                segments=[LineSegment(0, 0.95), ArcSegment(1.0, 0.05, np.pi, -np.pi),
                          LineSegment(0.95, 0)])
    with pytest.raises(GeometryError):
        c.validate()
