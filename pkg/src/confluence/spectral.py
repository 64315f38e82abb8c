"""Eigenvalue flow of one-parameter families ``H(lam) = A + lam * B``.

Real levels are labelled 1..N by ascending order at ``lam = 0`` and followed
by continuity as the coupling grows. When two labelled levels meet and
leave the real axis as a conjugate pair, that is recorded as a confluence;
the set of confluent pairs is the merger pattern realised by the family.
"""
from __future__ import annotations

import io
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .matchings import MergerPattern, is_centrally_symmetric, is_noncrossing

log = logging.getLogger(__name__)

MAX_DIMENSION = 64


class SpectralError(Exception):
    """Base class for failures of the eigenvalue-flow analysis."""


class NumericalFailure(SpectralError):
    """Eigensolver did not converge or the tracked spectrum became inconsistent."""


class DegenerateStart(SpectralError):
    """``H(0)`` does not have N distinct real eigenvalues."""


class DegenerateMerger(SpectralError):
    """More than two levels coalesce at one coupling, or events share a level."""


class IncompleteSweep(SpectralError):
    def __init__(self, alive: Sequence[int], lam_max: float):
        self.alive = tuple(alive)
        self.lam_max = lam_max
        super().__init__(f"levels {list(self.alive)} are still real at lambda_max={lam_max}")


class CrossingPattern(SpectralError, ValueError):
    def __init__(self, message: str, events: Sequence[ConfluenceEvent] = ()):
        self.events = tuple(events)
        super().__init__(message)


class NotSymmetric(SpectralError, ValueError):
    """Pattern is not invariant under the level reflection."""


@dataclass(frozen=True)
class Tolerances:
    """Scale-aware thresholds; ``radius`` is the spectral radius in play."""

    rel_im: float = 1e-8
    rel_gap: float = 1e-8
    lam: float = 1e-6

    def eps_im(self, radius: float) -> float:
        return self.rel_im * (1.0 + radius)

    def eps_gap(self, radius: float) -> float:
        return self.rel_gap * (1.0 + radius)

    def coalescence_radius(self, radius: float) -> float:
        # a k-fold coalescence spreads like dlam**(1/k); at dlam = lam this is
        # the smallest distance that separates 4-fold from disjoint 2-fold mergers
        return 2.0 * (self.lam * (1.0 + radius)) ** 0.25


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True, eq=False)
class MatrixFamily:
    A: np.ndarray
    B: np.ndarray
    symmetric_hint: bool = False

    def __post_init__(self) -> None:
        A = np.array(self.A, dtype=float)
        B = np.array(self.B, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"A must be square, got shape {A.shape}")
        if B.shape != A.shape:
            raise ValueError(f"B has shape {B.shape}, expected {A.shape}")
        if A.shape[0] == 0:
            raise ValueError("matrices must be non-empty")
        if not (np.isfinite(A).all() and np.isfinite(B).all()):
            raise ValueError("matrix entries must be finite")
        A.flags.writeable = False
        B.flags.writeable = False
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def dimension(self) -> int:
        return self.A.shape[0]

    def at(self, lam: float) -> np.ndarray:
        return self.A + lam * self.B

    def to_config(self) -> dict:
        return {
            "dimension": self.dimension,
            "A": self.A.tolist(),
            "B": self.B.tolist(),
            "symmetric_hint": bool(self.symmetric_hint),
        }

    @classmethod
    def from_config(cls, cfg: dict) -> MatrixFamily:
        try:
            fam = cls(cfg["A"], cfg["B"], bool(cfg.get("symmetric_hint", False)))
        except KeyError as exc:
            raise ValueError(f"family config is missing {exc}") from None
        if "dimension" in cfg and int(cfg["dimension"]) != fam.dimension:
            raise ValueError(f"dimension {cfg['dimension']} does not match {fam.dimension}x{fam.dimension} matrices")
        return fam

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_config(), indent=2) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> MatrixFamily:
        return cls.from_config(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class EigenPath:
    """Trajectory of one labelled level.

    ``samples`` holds ``(lam, eigenvalue)`` at every grid point, including the
    complex values after the level has merged. ``death_interval`` brackets the
    coupling at which the level left the real axis; ``partner`` is the level
    it merged with.
    """

    path_id: int
    samples: tuple[tuple[float, complex], ...]
    alive_until: float
    death_interval: tuple[float, float] | None = None
    partner: int | None = None
    death_value: complex | None = None

    @property
    def died(self) -> bool:
        return self.partner is not None


@dataclass(frozen=True)
class ConfluenceEvent:
    lambda_star: float
    pair: tuple[int, int]
    value: float

    def to_json(self) -> dict:
        return {"lambda_star": self.lambda_star, "pair": list(self.pair), "value": self.value}


@dataclass(frozen=True)
class ObservedPattern:
    pattern: MergerPattern
    events: tuple[ConfluenceEvent, ...]


@dataclass(frozen=True)
class SpectrumCenter:
    c_lower: float
    c_upper: float

    @property
    def center(self) -> float:
        return 0.5 * (self.c_lower + self.c_upper)


def spectrum(H: np.ndarray) -> np.ndarray:
    """All eigenvalues of a real square matrix, sorted by real then imaginary part."""
    H = np.asarray(H, dtype=float)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    if H.shape[0] > MAX_DIMENSION:
        raise ValueError(f"dimension {H.shape[0]} exceeds {MAX_DIMENSION}")
    if not np.isfinite(H).all():
        raise NumericalFailure("matrix has non-finite entries")
    try:
        w = np.linalg.eigvals(H)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(str(exc)) from exc
    w = np.asarray(w, dtype=complex)
    return w[np.lexsort((w.imag, w.real))]


def _radius(w: np.ndarray) -> float:
    return float(np.abs(w).max()) if len(w) else 0.0


def _real_count(fam: MatrixFamily, lam: float, tol: Tolerances) -> tuple[int, np.ndarray, np.ndarray]:
    w = spectrum(fam.at(lam))
    real = np.abs(w.imag) < tol.eps_im(_radius(w))
    return int(real.sum()), w, real


def _conjugate_pairs(z: np.ndarray) -> list[tuple[complex, complex]]:
    """Split complex eigenvalues into (upper, lower) conjugate pairs, sorted by real part."""
    upper = z[z.imag > 0]
    lower = z[z.imag <= 0]
    if len(upper) != len(lower):
        raise NumericalFailure(f"{len(z)} new complex eigenvalues do not form conjugate pairs")
    if not len(upper):
        return []
    r, c = linear_sum_assignment(np.abs(upper[:, None] - np.conj(lower)[None, :]))
    pairs = [(complex(upper[i]), complex(lower[j])) for i, j in zip(r, c)]
    return sorted(pairs, key=lambda p: (p[0].real, p[0].imag))


class _Tracker:
    def __init__(self, fam: MatrixFamily, tol: Tolerances, start: np.ndarray):
        self.fam = fam
        self.tol = tol
        n = fam.dimension
        self.values = {k + 1: complex(start[k]) for k in range(n)}
        self.alive = set(self.values)
        self.partner: dict[int, int] = {}
        self.interval: dict[int, tuple[float, float]] = {}
        self.death_value: dict[int, complex] = {}

    def advance(self, lam_a: float, lam_b: float) -> None:
        n_real, w, real = _real_count(self.fam, lam_b, self.tol)
        drop = len(self.alive) - n_real
        if drop < 0:
            raise NumericalFailure(
                f"real eigenvalue count rose from {len(self.alive)} to {n_real} "
                f"between lambda={lam_a:.9g} and {lam_b:.9g}"
            )
        if drop > 2 and lam_b - lam_a > self.tol.lam:
            mid = 0.5 * (lam_a + lam_b)
            self.advance(lam_a, mid)
            self.advance(mid, lam_b)
            return
        if drop % 2:
            raise NumericalFailure(f"odd drop {drop} in the real eigenvalue count at lambda={lam_b:.9g}")
        self._assign(lam_a, lam_b, w[real], w[~real], drop)

    def _assign(self, lam_a: float, lam_b: float, reals: np.ndarray, cplx: np.ndarray, drop: int) -> None:
        dead = sorted(set(self.values) - self.alive)
        fresh = cplx
        if dead:
            prev = np.array([self.values[k] for k in dead])
            r, c = linear_sum_assignment(np.abs(prev[:, None] - cplx[None, :]))
            for i, j in zip(r, c):
                self.values[dead[i]] = complex(cplx[j])
            fresh = np.delete(cplx, c)
        if len(fresh) != drop:
            raise NumericalFailure(f"expected {drop} newly complex eigenvalues at lambda={lam_b:.9g}, found {len(fresh)}")

        alive = sorted(self.alive)
        prev = np.array([self.values[k].real for k in alive])
        pairs = _conjugate_pairs(fresh)
        if pairs:
            # each new conjugate pair claims the two living levels closest to its real part
            centres = np.repeat([p[0].real for p in pairs], 2)
            r, c = linear_sum_assignment(np.abs(prev[:, None] - centres[None, :]))
            claimed: dict[int, list[int]] = {}
            for i, j in zip(r, c):
                claimed.setdefault(j // 2, []).append(i)
            for s, (up, down) in enumerate(pairs):
                lo_i, hi_i = sorted(claimed[s], key=lambda i: prev[i])
                p_lo, p_hi = alive[lo_i], alive[hi_i]
                self.values[p_hi], self.values[p_lo] = up, down
                self.death_value[p_hi], self.death_value[p_lo] = up, down
                self.partner[p_hi], self.partner[p_lo] = p_lo, p_hi
                self.interval[p_hi] = self.interval[p_lo] = (lam_a, lam_b)
                self.alive -= {p_lo, p_hi}

        alive = sorted(self.alive)
        if alive:
            prev = np.array([self.values[k].real for k in alive])
            r, c = linear_sum_assignment(np.abs(prev[:, None] - reals.real[None, :]))
            for i, j in zip(r, c):
                self.values[alive[i]] = complex(reals[j])


def initial_levels(fam: MatrixFamily, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Ascending real spectrum of ``H(0)``; raises DegenerateStart if it is not simple and real."""
    w = spectrum(fam.A)
    radius = _radius(w)
    if (np.abs(w.imag) >= tol.eps_im(radius)).any():
        raise DegenerateStart(f"H(0) has non-real eigenvalues: {w[np.abs(w.imag) >= tol.eps_im(radius)]}")
    levels = np.sort(w.real)
    gaps = np.diff(levels)
    if len(gaps) and gaps.min() <= tol.eps_gap(radius):
        k = int(gaps.argmin())
        raise DegenerateStart(f"levels {k + 1} and {k + 2} of H(0) coincide ({levels[k]:.12g})")
    return levels


def track_paths(
    fam: MatrixFamily,
    lam_max: float,
    grid_steps: int = 1000,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[EigenPath]:
    """Follow every level of ``fam`` over a uniform grid on ``[0, lam_max]``.

    Real eigenvalues are matched to the living levels by minimal total
    displacement from the previous step. When the number of real eigenvalues
    drops, each new conjugate pair retires the two levels nearest to its real
    part. Steps where more than one pair appears are bisected until the
    pairs separate or the step is narrower than ``tol.lam``.
    """
    if grid_steps < 2:
        raise ValueError(f"grid_steps must be >= 2, got {grid_steps}")
    if not lam_max > 0:
        raise ValueError(f"lam_max must be positive, got {lam_max}")
    if fam.dimension % 2:
        raise ValueError(f"level tracking needs an even dimension, got {fam.dimension}")
    tracker = _Tracker(fam, tol, initial_levels(fam, tol))
    grid = np.linspace(0.0, lam_max, grid_steps + 1)
    samples: dict[int, list[tuple[float, complex]]] = {k: [(0.0, v)] for k, v in tracker.values.items()}
    for lam_a, lam_b in zip(grid[:-1], grid[1:]):
        tracker.advance(float(lam_a), float(lam_b))
        for k, v in tracker.values.items():
            samples[k].append((float(lam_b), v))

    paths = []
    for k in sorted(samples):
        interval = tracker.interval.get(k)
        paths.append(
            EigenPath(
                path_id=k,
                samples=tuple(samples[k]),
                alive_until=interval[1] if interval else float(lam_max),
                death_interval=interval,
                partner=tracker.partner.get(k),
                death_value=tracker.death_value.get(k),
            )
        )
    return paths


def _bisect_count(fam: MatrixFamily, lo: float, hi: float, threshold: int, tol: Tolerances) -> tuple[float, float]:
    """Shrink ``[lo, hi]`` around the point where the real count falls to ``threshold``."""
    while hi - lo > tol.lam:
        mid = 0.5 * (lo + hi)
        if _real_count(fam, mid, tol)[0] <= threshold:
            hi = mid
        else:
            lo = mid
    return lo, hi


def _fresh_pairs(fam: MatrixFamily, lo: float, hi: float, tol: Tolerances) -> list[tuple[complex, complex]]:
    """Conjugate pairs that are complex at ``hi`` but not yet at ``lo``."""
    _, w_lo, real_lo = _real_count(fam, lo, tol)
    _, w_hi, real_hi = _real_count(fam, hi, tol)
    old, new = w_lo[~real_lo], w_hi[~real_hi]
    if len(old):
        _, c = linear_sum_assignment(np.abs(old[:, None] - new[None, :]))
        new = np.delete(new, c)
    return _conjugate_pairs(new)


def detect_confluences(
    paths: Sequence[EigenPath],
    fam: MatrixFamily,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[ConfluenceEvent]:
    """Localise each merger recorded by :func:`track_paths`.

    ``lambda_star`` is the midpoint of a bracket no wider than ``tol.lam``
    found by bisection on the number of real eigenvalues; ``value`` is the
    real part of the new conjugate pair just past the merger.
    """
    by_id = {p.path_id: p for p in paths}
    groups: dict[tuple[float, float], list[tuple[int, int]]] = {}
    for p in paths:
        if p.partner is None or p.partner < p.path_id:
            continue
        q = by_id.get(p.partner)
        if q is None or q.partner != p.path_id or q.death_interval != p.death_interval:
            raise DegenerateMerger(f"level {p.path_id} and {p.partner} disagree about their merger")
        groups.setdefault(p.death_interval, []).append((p.path_id, q.path_id))

    events = []
    for (lo, hi), pairs in sorted(groups.items()):
        n_lo = _real_count(fam, lo, tol)[0]
        if len(pairs) == 1:
            lo, hi = _bisect_count(fam, lo, hi, n_lo - 2, tol)
        fresh = _fresh_pairs(fam, lo, hi, tol)
        if len(fresh) != len(pairs):
            raise NumericalFailure(
                f"expected {len(pairs)} new conjugate pairs near lambda={hi:.9g}, found {len(fresh)}"
            )
        centres = np.array([f[0].real for f in fresh])
        for a, b in pairs:
            guess = by_id[a].death_value
            j = int(np.abs(centres - guess.real).argmin()) if len(pairs) > 1 else 0
            events.append(ConfluenceEvent(0.5 * (lo + hi), (a, b), float(centres[j])))

    radius = max(_radius(spectrum(fam.at(e.lambda_star))) for e in events) if events else 0.0
    return _order_events(events, tol, radius)


def _order_events(events: list[ConfluenceEvent], tol: Tolerances, radius: float) -> list[ConfluenceEvent]:
    """Sort by coupling; events within ``tol.lam`` of each other are ordered by value."""
    events = sorted(events, key=lambda e: e.lambda_star)
    clusters: list[list[ConfluenceEvent]] = []
    for e in events:
        if clusters and e.lambda_star - clusters[-1][-1].lambda_star <= tol.lam:
            clusters[-1].append(e)
        else:
            clusters.append([e])
    ordered = []
    near = tol.coalescence_radius(radius)
    for cluster in clusters:
        cluster.sort(key=lambda e: e.value)
        levels = [n for e in cluster for n in e.pair]
        if len(levels) != len(set(levels)):
            raise DegenerateMerger(f"simultaneous events share a level: {[e.pair for e in cluster]}")
        for e1, e2 in zip(cluster, cluster[1:]):
            if e2.value - e1.value <= near:
                raise DegenerateMerger(
                    f"levels {e1.pair} and {e2.pair} coalesce together near "
                    f"lambda={e1.lambda_star:.9g}, value={e1.value:.9g}"
                )
        ordered.extend(cluster)
    return ordered


def classify(
    fam: MatrixFamily,
    lam_max: float,
    grid_steps: int = 1000,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ObservedPattern:
    """Merger pattern realised by ``fam`` on ``[0, lam_max]``."""
    paths = track_paths(fam, lam_max, grid_steps, tol)
    alive = [p.path_id for p in paths if not p.died]
    if alive:
        raise IncompleteSweep(alive, lam_max)
    events = detect_confluences(paths, fam, tol)
    pattern = MergerPattern(fam.dimension, tuple(e.pair for e in events))
    if not is_noncrossing(pattern):
        raise CrossingPattern(f"observed pattern {pattern} is crossing", events)
    if fam.symmetric_hint and not is_centrally_symmetric(pattern):
        raise NotSymmetric(f"family is flagged symmetric but realises {pattern}")
    return ObservedPattern(pattern, tuple(events))


def _enclosing(p: MergerPattern) -> dict[tuple[int, int], tuple[int, int] | None]:
    parent: dict[tuple[int, int], tuple[int, int] | None] = {}
    stack: list[tuple[int, int]] = []
    for a, b in p.pairs:
        while stack and stack[-1][1] < a:
            stack.pop()
        parent[(a, b)] = stack[-1] if stack else None
        stack.append((a, b))
    return parent


def merge_schedule(p: MergerPattern) -> dict[tuple[int, int], float]:
    """Coupling at which each arch of a witness family merges.

    Outermost arches merge at 1. An arch nested in a parent merges at half
    the coupling where the parent's levels would first reach the child's
    endpoints, so the parent's paths never cross a still-real child level.
    """
    if not is_noncrossing(p):
        raise CrossingPattern(f"{p} is crossing")
    parent = _enclosing(p)
    schedule: dict[tuple[int, int], float] = {}
    for a, b in p.pairs:
        up = parent[(a, b)]
        if up is None:
            schedule[(a, b)] = 1.0
            continue
        half = (up[1] - up[0]) / 2
        gap = min(a - up[0], up[1] - b)
        reach = np.sqrt(1.0 - ((half - gap) / half) ** 2)
        schedule[(a, b)] = 0.5 * reach * schedule[up]
    return schedule


def block_family(
    p: MergerPattern,
    scale: float = 1.0,
    rng: np.random.Generator | None = None,
    symmetric_hint: bool = False,
) -> MatrixFamily:
    """Block-diagonal family realising any non-crossing pattern ``p``.

    Each arch ``[a, b]`` gets a 2x2 block with eigenvalues
    ``mu +- sqrt(c**2 - g**2 lam**2)``, where ``mu`` is the arch midpoint and
    ``c`` its half-width, both measured from the spectral centre in units of
    ``scale``. The block merges at ``c / g``, taken from
    :func:`merge_schedule`. With ``rng`` the family is conjugated by a random
    orthogonal matrix, which leaves every spectrum unchanged.
    """
    if not scale > 0:
        raise ValueError(f"scale must be positive, got {scale}")
    n = p.size
    schedule = merge_schedule(p)
    A = np.zeros((n, n))
    B = np.zeros((n, n))
    centre = (n + 1) / 2
    for k, (a, b) in enumerate(p.pairs):
        mu = ((a + b) / 2 - centre) * scale
        c = (b - a) / 2 * scale
        g = c / schedule[(a, b)]
        i = 2 * k
        A[i, i], A[i + 1, i + 1] = mu + c, mu - c
        B[i, i + 1], B[i + 1, i] = g, -g
    if rng is not None:
        q, r = np.linalg.qr(rng.standard_normal((n, n)))
        q = q * np.sign(np.diag(r))
        A, B = q @ A @ q.T, q @ B @ q.T
    return MatrixFamily(A, B, symmetric_hint=symmetric_hint)


def build_witness(
    p: MergerPattern,
    scale: float = 1.0,
    rng: np.random.Generator | None = None,
) -> MatrixFamily:
    """Centrally symmetric family whose eigenvalue flow realises ``p``.

    Mirror arches get mirrored centres and identical widths and couplings,
    so the spectrum stays symmetric about 0 for every ``lam``.
    """
    if not is_noncrossing(p):
        raise CrossingPattern(f"{p} is crossing")
    if not is_centrally_symmetric(p):
        raise NotSymmetric(f"{p} is not centrally symmetric")
    return block_family(p, scale, rng, symmetric_hint=True)


def suggested_lambda_max(p: MergerPattern) -> float:
    return 1.25 * max(merge_schedule(p).values())


def spectrum_center(fam: MatrixFamily) -> SpectrumCenter:
    mean = float(np.trace(fam.A)) / fam.dimension
    return SpectrumCenter(mean, mean)


def central_symmetry_defects(
    fam: MatrixFamily,
    lam_samples: Iterable[float],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[tuple[float, float, float]]:
    """``(lam, deviation, allowed)`` for each sample.

    ``deviation`` is the largest distance between an eigenvalue and its
    partner under ``z -> 2 * centre - z`` after optimal matching.
    """
    centre = spectrum_center(fam).center
    out = []
    for lam in lam_samples:
        w = spectrum(fam.at(lam))
        mirrored = 2 * centre - w
        cost = np.abs(w[:, None] - mirrored[None, :])
        r, c = linear_sum_assignment(cost)
        out.append((float(lam), float(cost[r, c].max()), tol.eps_im(_radius(w))))
    return out


def check_central_symmetry(
    fam: MatrixFamily,
    lam_samples: Iterable[float],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> bool:
    defects = central_symmetry_defects(fam, lam_samples, tol)
    if not defects:
        return True
    worst = max(defects, key=lambda d: d[1] / d[2])
    ok = all(dev <= allowed for _, dev, allowed in defects)
    if not ok:
        log.info("central symmetry violated: deviation %.3g > %.3g at lambda=%.9g", worst[1], worst[2], worst[0])
    return ok


def _fmt(x: float) -> str:
    return repr(float(x) + 0.0)


def paths_to_csv(paths: Sequence[EigenPath]) -> str:
    buf = io.StringIO()
    buf.write("lambda,path_id,re,im\n")
    for p in paths:
        for lam, z in p.samples:
            buf.write(f"{lam:.9f},{p.path_id},{_fmt(z.real)},{_fmt(z.imag)}\n")
    return buf.getvalue()


def events_to_json(events: Sequence[ConfluenceEvent]) -> str:
    return json.dumps([e.to_json() for e in events], indent=2)
