"""Rational flat connections on the three-holed sphere and their holonomy.

The surface is the plane with holes at +1, -1 and infinity, basepoint 0.
Connections have the form ``A(z) = s (X1/(z-1) + X2/(z+1)) dz`` with
anti-Hermitian residues and ``s = t/pi``; the residue at infinity is
``X3 = -(X1+X2)``.  Transport solves ``dPsi = -A(z(s)) z'(s) Psi`` with an
adaptive embedded Runge-Kutta 5(4) pair and per-step determinant
renormalization, so constant gauge transformations conjugate holonomies.

Orientation conventions, fixed by the spectral targets: the catalogue hole
loops around +1 and -1 run clockwise and the outer loop counterclockwise,
which places ``Hol(A, Gamma_j)`` in the conjugacy class of ``exp(2 i t H_j)``
and makes the catalogue-order word ``gamma1 gamma2 gamma3`` contractible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (ConstraintViolated, GeometryError, PoleTooClose,
                     SchemaError, SpectralMismatch, ToleranceNotMet)

__all__ = [
    "LineSegment",
    "ArcSegment",
    "Contour",
    "IntersectionDatum",
    "RationalConnection",
    "xi_map",
    "holonomy",
    "holonomy_batch",
    "hole_conjugacy_check",
    "sigma_check",
    "goldman_function",
    "builtin_catalogue",
    "load_catalogue",
    "word_segments",
    "resolved_segments",
]

POLES = (1.0, -1.0)
POLE_MARGIN = 0.1


# ---------------------------------------------------------------------------
# geometric segments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LineSegment:
    start: complex
    end: complex

    def z(self, s):
        return self.start + s * (self.end - self.start)

    def dz(self, s):
        return self.end - self.start

    def reflect(self):
        return LineSegment(np.conj(self.start), np.conj(self.end))

    def reverse(self):
        return LineSegment(self.end, self.start)

    def pole_distance(self):
        d = self.end - self.start
        out = []
        for p in POLES:
            if abs(d) < 1e-14:
                out.append(abs(self.start - p))
                continue
            s = np.clip(((p - self.start) * np.conj(d)).real / abs(d) ** 2, 0.0, 1.0)
            out.append(abs(self.z(s) - p))
        return min(out)

    def to_dict(self):
        return {"type": "line", "start": [self.start.real, self.start.imag],
                "end": [self.end.real, self.end.imag]}


@dataclass(frozen=True)
class ArcSegment:
    """Circular arc ``center + radius exp(i angle)``, angle from a0 to a1."""

    center: complex
    radius: float
    a0: float
    a1: float

    def z(self, s):
        return self.center + self.radius * np.exp(1j * (self.a0 + s * (self.a1 - self.a0)))

    def dz(self, s):
        return 1j * (self.a1 - self.a0) * self.radius * np.exp(
            1j * (self.a0 + s * (self.a1 - self.a0)))

    def reflect(self):
        return ArcSegment(np.conj(self.center), self.radius, -self.a0, -self.a1)

    def reverse(self):
        return ArcSegment(self.center, self.radius, self.a1, self.a0)

    def pole_distance(self):
        out = []
        lo, hi = min(self.a0, self.a1), max(self.a0, self.a1)
        for p in POLES:
            ang = np.angle(p - self.center)
            radial = abs(abs(p - self.center) - self.radius)
            hits = any(lo - 1e-12 <= ang + 2 * np.pi * k <= hi + 1e-12
                       for k in range(int(np.floor((lo - ang) / (2 * np.pi))) - 1,
                                      int(np.ceil((hi - ang) / (2 * np.pi))) + 2))
            if hits:
                out.append(radial)
            else:
                out.append(min(abs(self.z(0.0) - p), abs(self.z(1.0) - p)))
        return min(out)

    def to_dict(self):
        return {"type": "arc", "center": [self.center.real, self.center.imag],
                "radius": self.radius, "a0": self.a0, "a1": self.a1}


def _segment_from_dict(d):
    if d["type"] == "line":
        return LineSegment(complex(*d["start"]), complex(*d["end"]))
    if d["type"] == "arc":
        return ArcSegment(complex(*d["center"]), float(d["radius"]),
                          float(d["a0"]), float(d["a1"]))
    raise SchemaError(f"unknown segment type {d.get('type')!r}")


@dataclass
class IntersectionDatum:
    """One transversal crossing with another contour.

    ``sign`` is +1 for a right-handed crossing (the partner tangent lies
    counterclockwise from ours) and -1 otherwise.  ``resolution_word`` is the
    free-homotopy word of the contour obtained by inserting the partner loop
    at the crossing; ``seg_param`` / ``other_seg_param`` locate the crossing
    on each contour as (segment index, parameter).
    """

    other: str
    point: complex
    sign: int
    resolution_word: tuple
    seg_param: tuple = None
    other_seg_param: tuple = None

    def to_dict(self):
        return {"with": self.other, "point": [self.point.real, self.point.imag],
                "sign": self.sign, "resolution_word": list(self.resolution_word)}


@dataclass
class Contour:
    """Named piecewise path avoiding the poles, with curated crossing data."""

    name: str
    word: tuple
    segments: list
    orientation: str = "ccw"
    tau_image: str = None
    intersections: list = field(default_factory=list)

    def start(self):
        return self.segments[0].z(0.0)

    def end(self):
        return self.segments[-1].z(1.0)

    def is_loop(self):
        return abs(self.start() - self.end()) < 1e-12

    def reversed(self, name=None):
        return Contour(name=name or self.name + "_inv",
                       word=tuple(_invert_letter(w) for w in reversed(self.word)),
                       segments=[s.reverse() for s in reversed(self.segments)],
                       orientation={"cw": "ccw", "ccw": "cw"}.get(self.orientation, self.orientation),
                       tau_image=None)

    def reflected(self):
        """Pointwise complex conjugate of the path (same parameter order)."""
        return Contour(name=self.name + "_tau", word=self.word,
                       segments=[s.reflect() for s in self.segments],
                       orientation=self.orientation, tau_image=self.name)

    def validate(self, margin=POLE_MARGIN):
        for a, b in zip(self.segments[:-1], self.segments[1:]):
            if abs(a.z(1.0) - b.z(0.0)) > 1e-10:
                raise GeometryError(f"{self.name}: segments do not concatenate")
        bad = min(s.pole_distance() for s in self.segments)
        if bad < margin - 1e-12:
            raise GeometryError(f"{self.name}: pole margin {bad:.3f} < {margin}")
        return self

    def to_dict(self):
        return {"name": self.name, "word": list(self.word),
                "segments": [s.to_dict() for s in self.segments],
                "orientation": self.orientation, "tau_image": self.tau_image,
                "intersections": [i.to_dict() for i in self.intersections]}


def _invert_letter(w):
    return w[:-4] if w.endswith("_inv") else w + "_inv"


# ---------------------------------------------------------------------------
# connections
# ---------------------------------------------------------------------------

@dataclass
class RationalConnection:
    """Residue data for ``A(z) = scale (X1/(z-1) + X2/(z+1)) dz``."""

    X1: np.ndarray
    X2: np.ndarray
    scale: float = 1.0

    @property
    def X3(self):
        return -(self.X1 + self.X2)

    @property
    def n(self):
        return self.X1.shape[0]

    def __call__(self, z):
        return self.scale * (self.X1 / (z - 1.0) + self.X2 / (z + 1.0))

    def sigma_residual(self, zs):
        """Max of ``|A(conj z) + bar(A(z))|`` over the sample points."""
        worst = 0.0
        for z in np.atleast_1d(zs):
            worst = max(worst, float(np.max(np.abs(self(np.conj(z)) + self(z).conj().T))))
        return worst


def xi_map(x1, x2, x3=None, t=np.pi, tol=1e-8):
    """Build the rational connection attached to a zero-sum orbit triple.

    ``scale = t/pi``; the default ``t = pi`` gives the bare residue form.
    Raises ``ConstraintViolated`` when the residues do not sum to zero
    within ``tol`` or are not anti-Hermitian.
    """
    x1 = x1.X if hasattr(x1, "X") else np.asarray(x1)
    x2 = x2.X if hasattr(x2, "X") else np.asarray(x2)
    if x3 is not None:
        x3 = x3.X if hasattr(x3, "X") else np.asarray(x3)
        if np.linalg.norm(x1 + x2 + x3) > tol:
            raise ConstraintViolated("residues do not sum to zero")
    for x in (x1, x2):
        if np.max(np.abs(x + x.conj().T)) > 1e-10 * max(1.0, np.max(np.abs(x))):
            raise ConstraintViolated("residues must be anti-Hermitian")
    return RationalConnection(X1=x1, X2=x2, scale=t / np.pi)


# ---------------------------------------------------------------------------
# transport
# ---------------------------------------------------------------------------

_DP_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_DP_B5 = np.array([35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0])
_DP_B4 = np.array([5179 / 57600, 0, 7571 / 16695, 393 / 640, -92097 / 339200,
                   187 / 2100, 1 / 40])
_DP_C = np.array([0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1, 1])


def _transport(rhs, psi, tol):
    """Advance Psi' = rhs(s) @ Psi over s in [0, 1]; error per unit length <= tol."""
    n = psi.shape[-1]
    s, h = 0.0, 0.1
    while s < 1.0 - 1e-13:
        h = min(h, 1.0 - s)
        ks = []
        for i in range(7):
            y = psi
            for j, a in enumerate(_DP_A[i]):
                if a:
                    y = y + (h * a) * ks[j]
            ks.append(rhs(s + _DP_C[i] * h) @ y)
        p5 = psi + h * sum(b * k for b, k in zip(_DP_B5, ks) if b)
        p4 = psi + h * sum(b * k for b, k in zip(_DP_B4, ks) if b)
        err = np.max(np.abs(p5 - p4)) / max(1.0, np.max(np.abs(p5)))
        target = tol * h
        if not np.isfinite(err):
            h *= 0.2
            if h < 1e-12:
                raise ToleranceNotMet("non-finite transport state")
            continue
        if err <= target:
            s += h
            det = np.linalg.det(p5)
            # det drift correction is meaningful only while det is resolvable
            if p5.ndim == 3:
                good = np.isfinite(det) & (np.abs(det - 1.0) < 0.5)
                det = np.where(good, det, 1.0)
                psi = p5 / det[..., None, None] ** (1.0 / n)
            else:
                psi = p5 / det ** (1.0 / n) if np.isfinite(det) and abs(det - 1.0) < 0.5 else p5
        fac = 0.9 * (target / err) ** 0.2 if err > 0 else 4.0
        h *= min(4.0, max(0.2, fac))
        if h < 1e-12:
            raise ToleranceNotMet("adaptive step size underflow")
    return psi


def _check_pole(z):
    for p in POLES:
        if abs(z - p) < 0.9 * POLE_MARGIN:
            raise PoleTooClose(f"contour point {z:.4f} within margin of pole {p}")


def holonomy(conn, contour, tol=1e-10):
    """Path-ordered transport of the connection along the contour.

    ``contour`` may be a ``Contour`` or a bare segment list.  The result has
    unit determinant; reversing the contour inverts it and concatenation
    composes as ``Hol(c2 o c1) = Hol(c2) Hol(c1)``.
    """
    segs = contour.segments if isinstance(contour, Contour) else contour
    n = conn.n
    psi = np.eye(n, dtype=complex)
    for seg in segs:
        _check_pole(seg.z(0.0))

        def rhs(s, seg=seg):
            z = seg.z(s)
            return -conn(z) * seg.dz(s)

        psi = _transport(rhs, psi, tol)
    return psi


def _slice_segment(seg, sa, sb):
    if isinstance(seg, LineSegment):
        return LineSegment(seg.z(sa), seg.z(sb))
    return ArcSegment(seg.center, seg.radius,
                      seg.a0 + sa * (seg.a1 - seg.a0), seg.a0 + sb * (seg.a1 - seg.a0))


def _split_at_checkpoints(segs, checkpoints):
    """Expand the segment list so every checkpoint is a segment boundary.

    Returns the refined list plus, per checkpoint (in input order), the
    number of refined segments before its location.
    """
    marks = {}
    for i, (idx, s) in enumerate(checkpoints):
        marks.setdefault(idx, []).append((s, i))
    refined = []
    positions = [0] * len(checkpoints)
    for idx, seg in enumerate(segs):
        cuts = sorted(marks.get(idx, []))
        prev = 0.0
        for s, which in cuts:
            refined.append(_slice_segment(seg, prev, s))
            positions[which] = len(refined)
            prev = s
        refined.append(_slice_segment(seg, prev, 1.0))
    return refined, positions


def holonomy_batch(x1s, x2s, scale, contour, tol=1e-10, checkpoints=None):
    """Transport a stack of connections (shared contour) in one adaptive run.

    With ``checkpoints`` (a list of ``(segment index, parameter)`` pairs) the
    prefix transports up to each checkpoint are returned as well, so one pass
    provides the holonomy re-based at every marked point.
    """
    segs = contour.segments if isinstance(contour, Contour) else list(contour)
    x1s = np.asarray(x1s)
    x2s = np.asarray(x2s)
    b, n, _ = x1s.shape
    if checkpoints:
        segs, positions = _split_at_checkpoints(segs, checkpoints)
    psi = np.broadcast_to(np.eye(n, dtype=complex), (b, n, n)).copy()
    prefixes = {}
    for si, seg in enumerate(segs):
        _check_pole(seg.z(0.0))

        def rhs(s, seg=seg):
            z = seg.z(s)
            return (-scale * seg.dz(s)) * (x1s / (z - 1.0) + x2s / (z + 1.0))

        psi = _transport(rhs, psi, tol)
        if checkpoints:
            for which, pos in enumerate(positions):
                if pos == si + 1:
                    prefixes[which] = psi.copy()
    if checkpoints:
        return psi, [prefixes[i] for i in range(len(checkpoints))]
    return psi


def rebased_from_prefix(full, prefix):
    """Holonomy re-based at a checkpoint: ``T Hol T^{-1}`` with T the prefix."""
    return prefix @ full @ np.linalg.inv(prefix)


# ---------------------------------------------------------------------------
# checks and observables
# ---------------------------------------------------------------------------

def sigma_check(conn, contour, tol=1e-10):
    """Residual of ``Hol(tau(c)) = bar(Hol(c))^{-1}`` for the reflected path."""
    h = holonomy(conn, contour, tol)
    href = holonomy(conn, contour.reflected() if isinstance(contour, Contour)
                    else [s.reflect() for s in contour], tol)
    return float(np.linalg.norm(href - np.linalg.inv(h.conj().T)))


def hole_conjugacy_check(conn, j, H, t, tol=1e-7, ode_tol=1e-10, catalogue=None):
    """Compare the spectrum of the j-th hole holonomy with ``exp(2 i t H)``.

    Returns a report dict with the sorted eigenvalues, targets, and maximum
    relative error; raises ``SpectralMismatch`` beyond ``tol``.  Also checks
    hyperbolicity (positive real spectrum).
    """
    cat = catalogue or builtin_catalogue()
    loop = cat.contours[f"gamma{j}"]
    ev = np.linalg.eigvals(holonomy(conn, loop, ode_tol))
    target = np.sort(np.exp(-2.0 * t * np.array(H.theta)))
    ev_sorted = np.sort(ev.real)
    hyperbolic = bool(np.all(ev.real > 0) and np.max(np.abs(ev.imag)) < tol * np.max(np.abs(ev)))
    rel = float(np.max(np.abs(ev_sorted - target) / target))
    report = {"hole": j, "eigenvalues": ev_sorted, "target": target,
              "max_rel_err": rel, "hyperbolic": hyperbolic}
    if rel > tol or not hyperbolic:
        raise SpectralMismatch(f"hole {j}: relative error {rel:.2e}, "
                               f"hyperbolic={hyperbolic}")
    return report


def goldman_function(conn, contour, tol=1e-10):
    """Trace of the holonomy in the defining representation (gauge invariant)."""
    return complex(np.trace(holonomy(conn, contour, tol)))


# ---------------------------------------------------------------------------
# catalogue
# ---------------------------------------------------------------------------

class Catalogue:
    """Named contours plus curated intersection data for bracket evaluation."""

    def __init__(self, contours, pair_names, hole_names=("gamma1", "gamma2", "gamma3")):
        self.contours = contours
        self.pair_names = pair_names
        self.hole_names = hole_names

    def pairs(self):
        return [(self.contours[a], self.contours[b]) for a, b in self.pair_names]

    def validate(self):
        for c in self.contours.values():
            c.validate()
        for a, b in self.pair_names:
            ca = self.contours[a]
            if not any(i.other == b for i in ca.intersections) and ca.intersections:
                raise SchemaError(f"pair ({a}, {b}) missing intersection records")
        return self

    def to_dict(self):
        return {"contours": [c.to_dict() for c in self.contours.values()],
                "pairs": [list(p) for p in self.pair_names],
                "holes": list(self.hole_names)}


def word_segments(catalogue, word):
    """Concatenate catalogue loops (based at 0) realizing a word."""
    segs = []
    for w in word:
        if w.endswith("_inv"):
            base = catalogue.contours[w[:-4]]
            segs.extend(s.reverse() for s in reversed(base.segments))
        else:
            segs.extend(catalogue.contours[w].segments)
    return segs


def _rebase(segments, idx, s_split):
    """Closed all-arc contour re-based at parameter s_split of segment idx."""
    seg = segments[idx]
    if not isinstance(seg, ArcSegment):
        raise GeometryError("re-basing is supported on arc segments only")
    mid = seg.a0 + s_split * (seg.a1 - seg.a0)
    head = ArcSegment(seg.center, seg.radius, mid, seg.a1)
    tail = ArcSegment(seg.center, seg.radius, seg.a0, mid)
    return [head] + list(segments[idx + 1:]) + list(segments[:idx]) + [tail]


def resolved_segments(contour_a, datum, contour_b):
    """Geometric resolution at a crossing: follow A from p, then B from p."""
    ia, sa = datum.seg_param
    ib, sb = datum.other_seg_param
    return _rebase(contour_a.segments, ia, sa) + _rebase(contour_b.segments, ib, sb)


def _arc_params_at(seg, p):
    """All parameters s in (0,1) with seg.z(s) = p, for full or multiple turns."""
    ang = np.angle(p - seg.center)
    da = seg.a1 - seg.a0
    out = []
    k0 = int(np.floor((min(seg.a0, seg.a1) - ang) / (2 * np.pi))) - 1
    for k in range(k0, k0 + int(abs(da) / (2 * np.pi)) + 3):
        s = (ang + 2 * np.pi * k - seg.a0) / da
        if 1e-9 < s < 1 - 1e-9:
            out.append(float(s))
    return out


def arc_crossings(contour_a, contour_b):
    """Exact transversal crossings between two all-arc contours.

    Returns tuples ``(point, (ia, sa), (ib, sb), sign)`` with the sign of
    ``Im(conj(za') zb')`` at the crossing.
    """
    out = []
    for ia, a in enumerate(contour_a.segments):
        for ib, b in enumerate(contour_b.segments):
            if not (isinstance(a, ArcSegment) and isinstance(b, ArcSegment)):
                continue
            d = abs(b.center - a.center)
            if d < 1e-12 or d > a.radius + b.radius - 1e-12 or d < abs(a.radius - b.radius) + 1e-12:
                continue
            al = (a.radius ** 2 - b.radius ** 2 + d ** 2) / (2 * d)
            hh = np.sqrt(max(a.radius ** 2 - al ** 2, 0.0))
            base = a.center + al * (b.center - a.center) / d
            offs = 1j * (b.center - a.center) / d * hh
            for pt in (base + offs, base - offs):
                for sa in _arc_params_at(a, pt):
                    for sb in _arc_params_at(b, pt):
                        sign = int(np.sign(np.imag(np.conj(a.dz(sa)) * b.dz(sb))))
                        out.append((pt, (ia, sa), (ib, sb), sign))
    return out


def _hole_loop(j):
    if j == 1:
        return [LineSegment(0, 0.5), ArcSegment(1.0, 0.5, np.pi, -np.pi),
                LineSegment(0.5, 0)]
    if j == 2:
        return [LineSegment(0, -0.5), ArcSegment(-1.0, 0.5, 0.0, -2 * np.pi),
                LineSegment(-0.5, 0)]
    return [LineSegment(0, 1.8j), ArcSegment(0.0, 1.8, np.pi / 2, np.pi / 2 + 2 * np.pi),
            LineSegment(1.8j, 0)]


def _eight(radius, senses, winds=(1, 1)):
    """Closed two-arc contour through i sqrt(r^2-1): around +1 then around -1.

    ``senses`` gives the traversal sense around (+1, -1) as +1 = ccw,
    -1 = cw; ``winds`` the number of turns.
    """
    p0 = 1j * np.sqrt(radius ** 2 - 1.0)
    a1 = float(np.angle(p0 - 1.0))
    a2 = float(np.angle(p0 + 1.0))
    return [ArcSegment(1.0, radius, a1, a1 + senses[0] * winds[0] * 2 * np.pi),
            ArcSegment(-1.0, radius, a2, a2 + senses[1] * winds[1] * 2 * np.pi)]


# Free-homotopy words of the spliced contours at each curated crossing,
# indexed by (contour, partner, crossing index in discovery order).  Verified
# against the geometric splices by trace comparison; empty tuple = trivial.
_RESOLUTION_WORDS = {
    ("eight_narrow", "eight_wide_rev", 0): ("gamma2_inv", "gamma1", "gamma2", "gamma1_inv"),
    ("eight_narrow", "eight_wide_rev", 1): (),
    ("eight_narrow", "eight_wide_rev", 2): (),
    ("eight_narrow", "eight_wide_rev", 3): ("gamma2_inv", "gamma1_inv", "gamma2", "gamma1"),
    ("eight_narrow", "double_wind", 0): ("gamma1", "gamma1", "gamma2"),
    ("eight_narrow", "double_wind", 1): ("gamma2_inv", "gamma1", "gamma2", "gamma2", "gamma1"),
    ("eight_narrow", "double_wind", 2): ("gamma1", "gamma2", "gamma1"),
    ("eight_narrow", "double_wind", 3): ("gamma1", "gamma1", "gamma2"),
    ("eight_narrow", "double_wind", 4): ("gamma2_inv", "gamma1", "gamma2", "gamma2", "gamma1"),
    ("eight_narrow", "double_wind", 5): ("gamma2", "gamma1", "gamma1"),
    ("eight_wide_rev", "double_wind", 0): ("gamma2", "gamma2", "gamma2"),
    ("eight_wide_rev", "double_wind", 1): ("gamma1_inv", "gamma2", "gamma2", "gamma1", "gamma2"),
    ("eight_wide_rev", "double_wind", 2): ("gamma1_inv", "gamma2", "gamma2", "gamma1", "gamma2"),
    ("eight_wide_rev", "double_wind", 3): ("gamma2", "gamma2", "gamma2"),
    ("eight_wide_rev", "double_wind", 4): ("gamma1_inv", "gamma2", "gamma1", "gamma2", "gamma2"),
    ("eight_wide_rev", "double_wind", 5): ("gamma2", "gamma1_inv", "gamma2", "gamma2", "gamma1"),
    ("eight_wide", "circle_both", 0): ("gamma2_inv", "gamma1", "gamma2", "gamma1"),
    ("eight_wide", "circle_both", 1): ("gamma1", "gamma2", "gamma1", "gamma2_inv"),
    ("eight_wide", "circle_both", 2): ("gamma1", "gamma1"),
    ("eight_wide", "circle_both", 3): ("gamma1", "gamma1"),
    ("circle_plus", "circle_minus", 0): ("gamma2", "gamma1"),
    ("circle_plus", "circle_minus", 1): ("gamma2", "gamma1"),
}


def builtin_catalogue():
    """The shipped contour set: hole loops, products, and crossing pairs."""
    cont = {}
    for j, word, orient in ((1, ("gamma1",), "cw"), (2, ("gamma2",), "cw"),
                            (3, ("gamma3",), "ccw")):
        cont[f"gamma{j}"] = Contour(name=f"gamma{j}", word=(f"gamma{j}",),
                                    segments=_hole_loop(j), orientation=orient,
                                    tau_image=f"gamma{j}_inv")
    for j in (1, 2, 3):
        cont[f"gamma{j}_inv"] = cont[f"gamma{j}"].reversed()
        cont[f"gamma{j}_inv"].tau_image = f"gamma{j}"

    cont["eight_narrow"] = Contour(
        name="eight_narrow", word=("gamma1", "gamma2_inv"),
        segments=_eight(1.0, (-1, +1)), orientation="mixed")
    cont["eight_wide_rev"] = Contour(
        name="eight_wide_rev", word=("gamma2", "gamma1_inv"),
        segments=[s.reverse() for s in reversed(_eight(1.25, (-1, +1)))],
        orientation="mixed")
    cont["eight_wide"] = Contour(
        name="eight_wide", word=("gamma1", "gamma2_inv"),
        segments=_eight(1.25, (-1, +1)), orientation="mixed")
    cont["double_wind"] = Contour(
        name="double_wind", word=("gamma1", "gamma2", "gamma2"),
        segments=_eight(1.45, (-1, -1), winds=(1, 2)), orientation="cw")
    cont["circle_both"] = Contour(
        name="circle_both", word=("gamma1", "gamma2"),
        segments=[ArcSegment(0.0, 1.5, np.pi / 2, np.pi / 2 - 2 * np.pi)],
        orientation="cw")
    cont["circle_plus"] = Contour(
        name="circle_plus", word=("gamma1",),
        segments=[ArcSegment(1.0, 1.3, np.pi / 2, np.pi / 2 - 2 * np.pi)],
        orientation="cw")
    cont["circle_minus"] = Contour(
        name="circle_minus", word=("gamma2",),
        segments=[ArcSegment(-1.0, 1.3, np.pi / 2, np.pi / 2 - 2 * np.pi)],
        orientation="cw")

    pair_names = [("eight_narrow", "eight_wide_rev"),
                  ("eight_narrow", "double_wind"),
                  ("eight_wide_rev", "double_wind"),
                  ("eight_wide", "circle_both"),
                  ("circle_plus", "circle_minus"),
                  ("gamma1", "gamma2")]

    for a, b in pair_names[:-1]:
        ca, cb = cont[a], cont[b]
        found = arc_crossings(ca, cb)
        for idx, (pt, spa, spb, sign) in enumerate(found):
            word = _RESOLUTION_WORDS.get((a, b, idx), ca.word + cb.word)
            ca.intersections.append(IntersectionDatum(
                other=b, point=pt, sign=sign, resolution_word=tuple(word),
                seg_param=spa, other_seg_param=spb))
    return Catalogue(cont, pair_names).validate()


def load_catalogue(path=None):
    """Load a contour catalogue from JSON, or the built-in set when no path."""
    if path is None:
        return builtin_catalogue()
    import json

    try:
        with open(path) as fh:
            data = json.load(fh)
        contours = {}
        for cd in data["contours"]:
            c = Contour(name=cd["name"], word=tuple(cd["word"]),
                        segments=[_segment_from_dict(s) for s in cd["segments"]],
                        orientation=cd.get("orientation", "ccw"),
                        tau_image=cd.get("tau_image"))
            for idt in cd.get("intersections", []):
                c.intersections.append(IntersectionDatum(
                    other=idt["with"], point=complex(*idt["point"]),
                    sign=int(idt["sign"]),
                    resolution_word=tuple(idt["resolution_word"])))
            contours[c.name] = c
        pairs = [tuple(p) for p in data.get("pairs", [])]
        cat = Catalogue(contours, pairs, tuple(data.get("holes", ("gamma1", "gamma2", "gamma3"))))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed catalogue file: {exc}") from exc
    return cat.validate()
