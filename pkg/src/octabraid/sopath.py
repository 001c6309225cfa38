"""Numeric paths in SO(n): generating-path matrices, path products, the
trace distance, tangential gradient flow, and nearest-element word recovery.

Paths are sampled; the flow moves every interior sample down the tangential
projection of the distance gradient and re-orthonormalizes with a polar
retraction, so a closed path in the trivial class shrinks pointwise to the
identity while symmetric samples (half-turn rotations) are fixed points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import hyperocta
from .words import PlaneLetter, Word, standard_to_plane

ORTHO_TOL = 1e-10
FLOW_ORTHO_TOL = 1e-8
CLOSED_TOL = 1e-8
ENDPOINT_TOL = 1e-8
REL_PROGRESS = 1e-12
JITTER_MAGNITUDE = 1e-3
LOCAL_TOL = 1e-10


class CoarseSamplingError(ValueError):
    """Sampling too coarse: a nearest-element switch skipped a generator step."""


def _check_orthogonal(m: np.ndarray, tol: float = ORTHO_TOL) -> None:
    n = m.shape[0]
    err = np.abs(m.T @ m - np.eye(n)).max()
    if err > tol:
        raise ValueError(f"matrix is not orthogonal within {tol} (defect {err:.2e})")
    if np.linalg.det(m) < 0:
        raise ValueError("matrix has determinant -1")


@dataclass
class RotationPath:
    """Sampled path in SO(n): orthogonal matrices plus parameter values."""

    samples: np.ndarray
    params: np.ndarray

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=float)
        self.params = np.asarray(self.params, dtype=float)
        if self.samples.ndim != 3 or self.samples.shape[1] != self.samples.shape[2]:
            raise ValueError("samples must be a stack of square matrices")
        if len(self.params) != len(self.samples):
            raise ValueError("params and samples must have equal length")
        if np.any(np.diff(self.params) <= 0):
            raise ValueError("params must be strictly increasing")
        if self.params[0] < 0.0 or self.params[-1] > 1.0:
            raise ValueError("params must lie in [0, 1]")
        n = self.samples.shape[1]
        if np.abs(self.samples[0] - np.eye(n)).max() > ORTHO_TOL:
            raise ValueError("path must start at the identity")
        defect = np.abs(
            np.einsum("qji,qjk->qik", self.samples, self.samples) - np.eye(n)
        ).max()
        if defect > ORTHO_TOL:
            raise ValueError(f"samples not orthogonal within {ORTHO_TOL} (defect {defect:.2e})")
        if np.any(np.linalg.det(self.samples) < 0):
            raise ValueError("samples must have determinant +1")

    @property
    def n(self) -> int:
        return self.samples.shape[1]

    def endpoint(self) -> np.ndarray:
        return self.samples[-1]

    def to_csv(self) -> str:
        n = self.n
        header = "t," + ",".join(f"m{r+1}{c+1}" for r in range(n) for c in range(n))
        lines = [header]
        for t, m in zip(self.params, self.samples):
            lines.append(f"{t:.12g}," + ",".join(f"{v:.17g}" for v in m.ravel()))
        return "\n".join(lines) + "\n"


def _snap_exact(v: float) -> float:
    # Quarter-turn multiples are exactly known; drop the trig roundoff there
    # so letter boundaries are exact signed permutation matrices.
    for target in (0.0, 1.0, -1.0):
        if abs(v - target) < 1e-15:
            return target
    return v


def generator_matrix(i: int, j: int, n: int, t: float) -> np.ndarray:
    """Rotation by ``t * pi/2`` in plane ``(i, j)``; at t=1 sends e_i to e_j
    and e_j to -e_i."""
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"bad plane ({i},{j}) for n={n}")
    angle = t * np.pi / 2.0
    m = np.eye(n)
    c = _snap_exact(float(np.cos(angle)))
    s = _snap_exact(float(np.sin(angle)))
    m[i - 1, i - 1] = c
    m[j - 1, j - 1] = c
    m[j - 1, i - 1] = s
    m[i - 1, j - 1] = -s
    return m


def plane_matrix(pl: PlaneLetter, n: int) -> np.ndarray:
    return generator_matrix(pl.i, pl.j, n, 1.0)


def compile_path(pw: Sequence[PlaneLetter], n: int,
                 samples_per_letter: int = 16) -> RotationPath:
    """Sampled product path of a plane-letter word (leftmost letter last).

    Each successive generating path is translated by the accumulated
    endpoint; consecutive letters share their boundary sample, giving a
    uniform parameter grid.
    """
    if samples_per_letter < 2:
        raise ValueError("need at least 2 samples per letter")
    k = len(pw)
    if k == 0:
        return RotationPath(np.eye(n)[None, :, :], np.array([0.0]))
    seg = samples_per_letter - 1
    total = k * seg + 1
    samples = np.empty((total, n, n))
    samples[0] = np.eye(n)
    base = np.eye(n)
    pos = 0
    for m, letter in enumerate(reversed(pw)):
        for s in range(1, seg + 1):
            t_local = s / seg
            samples[pos + s] = generator_matrix(letter.i, letter.j, n, t_local) @ base
        pos += seg
        base = samples[pos]
    params = np.linspace(0.0, 1.0, total)
    return RotationPath(samples, params)


def compile_word(w: Word, samples_per_letter: int = 16) -> RotationPath:
    """Compile a standard-generator word through its plane-letter expansion."""
    return compile_path(standard_to_plane(w), w.rank, samples_per_letter)


def distance(x: np.ndarray, y: np.ndarray) -> float:
    """The squared-chord distance ``trace(1 - X^T Y)``; zero iff X == Y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("shape mismatch")
    _check_orthogonal(x)
    _check_orthogonal(y)
    n = x.shape[0]
    return float(n - np.trace(x.T @ y))


def is_local(p: RotationPath) -> bool:
    """True when every sample keeps all diagonal entries nonnegative, i.e.
    no hyperoctahedron vertex leaves its starting closed half-space."""
    diags = np.einsum("qii->qi", p.samples)
    return bool(diags.min() >= -LOCAL_TOL)


@dataclass(frozen=True)
class FlowParams:
    step: float = 0.05
    max_iters: int = 20000
    tol: float = 1e-6
    stall_window: int = 500

    def __post_init__(self) -> None:
        if self.step <= 0 or self.tol <= 0:
            raise ValueError("step and tol must be positive")


@dataclass
class FlowResult:
    verdict: str  # contracted | stalled | budget-exhausted
    iterations: int
    final_max_d: float
    trace: list[float] = field(repr=False)
    jitters_used: int = 0

    def trace_csv(self) -> str:
        lines = ["iter,max_d"]
        lines += [f"{i},{v:.17g}" for i, v in enumerate(self.trace)]
        return "\n".join(lines) + "\n"


def _polar(stack: np.ndarray) -> np.ndarray:
    u, _, vt = np.linalg.svd(stack)
    return u @ vt


def _max_d(samples: np.ndarray) -> float:
    n = samples.shape[1]
    return float(n - np.einsum("qii->q", samples).min())


def contract(p: RotationPath, fp: FlowParams | None = None,
             jitter_retries: int = 0, seed: int = 0) -> FlowResult:
    """Flow a closed path toward the identity along -grad of the distance.

    Each interior sample moves along the tangential projection
    ``X * skew(X^T)`` and is re-orthonormalized by a polar retraction;
    endpoints stay fixed.  When progress of the max distance stalls, up to
    ``jitter_retries`` seeded tangent perturbations of magnitude 1e-3 are
    applied before declaring a stall.
    """
    fp = fp or FlowParams()
    n = p.n
    if distance(p.samples[-1], np.eye(n)) > CLOSED_TOL:
        raise ValueError("path is not closed at the identity")
    x = p.samples.copy()
    if len(x) <= 2:
        return FlowResult("contracted", 0, _max_d(x), [_max_d(x)])
    rng = np.random.default_rng(seed)
    trace = [_max_d(x)]
    if trace[0] < fp.tol:
        return FlowResult("contracted", 0, trace[0], trace)
    jitters = 0
    cooldown = 0
    step = fp.step
    for it in range(1, fp.max_iters + 1):
        interior = x[1:-1]
        skew = (np.transpose(interior, (0, 2, 1)) - interior) / 2.0
        x[1:-1] = _polar(interior + step * (interior @ skew))
        max_d = _max_d(x)
        trace.append(max_d)
        if max_d < fp.tol:
            return FlowResult("contracted", it, max_d, trace, jitters)
        if cooldown > 0:
            cooldown -= 1
        elif len(trace) > fp.stall_window:
            past = trace[-fp.stall_window - 1]
            if past - max_d < REL_PROGRESS * max(1.0, past):
                if jitters < jitter_retries:
                    jitters += 1
                    cooldown = fp.stall_window
                    g = rng.standard_normal(x[1:-1].shape)
                    omega = (g - np.transpose(g, (0, 2, 1))) / 2.0
                    norms = np.sqrt(np.einsum("qij,qij->q", omega, omega))
                    omega /= np.maximum(norms, 1e-30)[:, None, None]
                    x[1:-1] = _polar(x[1:-1] + JITTER_MAGNITUDE * (x[1:-1] @ omega))
                else:
                    return FlowResult("stalled", it, max_d, trace, jitters)
    return FlowResult("budget-exhausted", fp.max_iters, trace[-1], trace, jitters)


def stall_witness(p: RotationPath, fp: FlowParams | None = None) -> FlowResult:
    """Run the flow with no jitter, exhibiting its symmetric fixed points.

    On the full half-turn path the sample at the half-turn rotation is a
    fixed point with distance 4 (in three dimensions), so the flow stalls;
    this witnesses the obstruction without proving non-contractibility.
    """
    return contract(p, fp, jitter_retries=0)


def rotation_elements(n: int) -> list[hyperocta.SignedPerm]:
    """All determinant +1 signed permutations of rank ``n``, fixed order."""
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            sp = hyperocta.SignedPerm(tuple(p * s for p, s in zip(perm, signs)))
            if hyperocta.determinant(sp) == 1:
                out.append(sp)
    return out


def _element_stack(elements: Sequence[hyperocta.SignedPerm]) -> np.ndarray:
    return np.stack([hyperocta.as_matrix(p) for p in elements])


def _plane_lookup(n: int) -> dict[tuple[int, ...], PlaneLetter]:
    table = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                key = tuple(int(v) for v in np.rint(plane_matrix(PlaneLetter(i, j), n)).ravel())
                table[key] = PlaneLetter(i, j)
    return table


def _interp(a: np.ndarray, b: np.ndarray, s: float) -> np.ndarray:
    u, _, vt = np.linalg.svd((1.0 - s) * a + s * b)
    return u @ vt


def snap_to_word(p: RotationPath,
                 elements: Sequence[hyperocta.SignedPerm] | None = None
                 ) -> tuple[PlaneLetter, ...]:
    """Recover a plane-letter word from a path by nearest-element crossings.

    Walks the samples tracking the nearest element of ``elements`` (default:
    the full rotational hyperoctahedral group of the path's rank); each
    switch must be a single generator step and appends that plane letter.
    Crossings inside one sampling gap are ordered by bisection; equidistant
    candidates resolve to the lexicographically smallest plane pair.
    """
    n = p.n
    if elements is None:
        elements = rotation_elements(n)
    stack = _element_stack(elements)
    lookup = _plane_lookup(n)

    def dists(x: np.ndarray) -> np.ndarray:
        return n - np.einsum("mij,ij->m", stack, x)

    end_d = dists(p.endpoint())
    if end_d.min() > ENDPOINT_TOL:
        raise ValueError("path endpoint is not a rotational hyperoctahedral element")

    current = int(np.argmin(dists(p.samples[0])))
    letters_applied: list[PlaneLetter] = []
    tie_eps = 1e-9

    for q in range(1, len(p.samples)):
        prev = p.samples[q - 1]
        here = p.samples[q]
        while True:
            d = dists(here)
            if d[current] - d.min() <= tie_eps:
                break
            closer = [m for m in range(len(elements))
                      if d[m] < d[current] - tie_eps]
            # Order candidate crossings within the gap by bisection on the
            # interpolated path.
            best: tuple[float, tuple[int, int], int] | None = None
            for m in closer:
                lo, hi = 0.0, 1.0
                for _ in range(40):
                    mid = (lo + hi) / 2.0
                    xm = _interp(prev, here, mid)
                    dm = dists(xm)
                    if dm[m] < dm[current] - tie_eps:
                        hi = mid
                    else:
                        lo = mid
                step_mat = stack[m] @ stack[current].T
                rounded = np.rint(step_mat)
                if np.abs(step_mat - rounded).max() > 1e-6:
                    continue
                letter = lookup.get(tuple(int(v) for v in rounded.ravel()))
                if letter is None:
                    continue
                key = (hi, (letter.i, letter.j), m)
                if best is None or key < best:
                    best = key
            if best is None:
                raise CoarseSamplingError(
                    "nearest-element switch is not a single generator step; "
                    "sample the path more densely")
            _, (i, j), m = best
            letters_applied.append(PlaneLetter(i, j))
            current = m

    word = tuple(reversed(letters_applied))
    endpoint = np.eye(n)
    for letter in letters_applied:
        endpoint = plane_matrix(letter, n) @ endpoint
    if np.abs(endpoint - p.endpoint()).max() > ENDPOINT_TOL:
        raise CoarseSamplingError("recovered word endpoint mismatch; "
                                  "sample the path more densely")
    return word


def compile_and_snap(pw: Sequence[PlaneLetter], n: int,
                     samples_per_letter: int = 16) -> tuple[PlaneLetter, ...]:
    """Round-trip helper: compile then snap, doubling the sampling on a
    coarse-sampling failure (up to four times)."""
    spl = samples_per_letter
    for _ in range(5):
        try:
            return snap_to_word(compile_path(pw, n, spl))
        except CoarseSamplingError:
            spl *= 2
    raise CoarseSamplingError(f"snap failed even at {spl} samples per letter")
