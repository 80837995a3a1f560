"""Second moment of zeta on the critical line, with checkpointing.

J(T) = integral of |zeta(1/2+it)|^2 over [0, T], evaluated by panelized
Gauss-Legendre quadrature on Z(t)^2. Panels never exceed half the local
oscillation wavelength pi/ln t, so a 15-node rule resolves each arch; a
7-node embedded rule provides the error estimate. The engine's Z error
bound is folded into the estimate via Cauchy-Schwarz on each panel.

J is expensive enough that ladder solves want checkpoints: a
CheckpointCache holds J at a fixed stride so any J(T) costs one cached
lookup plus a tail segment shorter than the stride.
"""

from __future__ import annotations

import io
import math
import os
import threading
from dataclasses import dataclass, field

import numpy as np

from .constants import EULER_GAMMA, LN_TWO_PI
from .errors import CacheCorruptionError, DomainError, ToleranceError
from .zeta import z_array, z_error_bound

_X15, _W15 = np.polynomial.legendre.leggauss(15)
_X7, _W7 = np.polynomial.legendre.leggauss(7)
_NODES_PER_PANEL = _X15.size + _X7.size

ENGINE_VERSION = "1"
# Default absolute tolerance per unit of integration length. The engine's
# own error bound contributes ~6e-6 per unit in the worst band, so this
# is the tightest default that cannot trip the infeasibility guard.
AUTO_TOL_RATE = 3e-5
DEFAULT_STRIDE = 50.0


def _auto_tol(a: float, b: float) -> float:
    return AUTO_TOL_RATE * max(b - a, 1.0)


@dataclass(frozen=True)
class IntegralResult:
    """One evaluated segment of the second moment."""

    a: float
    b: float
    value: float
    abs_error_estimate: float
    node_count: int

    def merge(self, other: "IntegralResult") -> "IntegralResult":
        """Concatenate with an adjacent segment on the right."""
        if other.a != self.b:
            raise DomainError(f"segments not adjacent: [{self.a},{self.b}] + [{other.a},{other.b}]")
        return IntegralResult(
            a=self.a,
            b=other.b,
            value=self.value + other.value,
            abs_error_estimate=self.abs_error_estimate + other.abs_error_estimate,
            node_count=self.node_count + other.node_count,
        )


def _panel_edges(a: float, b: float) -> np.ndarray:
    """Greedy left-to-right panel boundaries with the oscillation cap.

    Boundaries depend only on a (and the cap rule), so subdividing a
    fixed range is deterministic regardless of how callers batch work.
    """
    edges = [a]
    cur = a
    while cur < b:
        cap = math.pi / math.log(max(cur, 20.0))
        cur = min(b, cur + cap)
        edges.append(cur)
    return np.asarray(edges)


def _eval_panels(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """15- and 7-node values plus engine error for a batch of panels."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    t15 = (mid[:, None] + half[:, None] * _X15[None, :]).ravel()
    t7 = (mid[:, None] + half[:, None] * _X7[None, :]).ravel()
    n15 = _X15.size
    z_all = z_array(np.concatenate([t15, t7]))
    f15 = (z_all[: t15.size] ** 2).reshape(-1, n15)
    f7 = (z_all[t15.size:] ** 2).reshape(-1, _X7.size)
    v15 = (f15 @ _W15) * half
    v7 = (f7 @ _W7) * half
    # engine contribution: |d integral| <= 2 int |Z| eps <= 2 eps sqrt(I w)
    eng = 2.0 * z_error_bound(mid) * np.sqrt(np.maximum(v15, 0.0) * (hi - lo))
    return v15, v7, eng


def _kahan_sum(values: np.ndarray) -> float:
    total = 0.0
    comp = 0.0
    for v in values:
        y = float(v) - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def integrate_segment(a: float, b: float, tol: float | None = None) -> IntegralResult:
    """Quadrature of Z^2 over [a, b] with |error| <= estimate <= tol.

    tol is absolute over the whole segment; None picks a width-scaled
    default that the engine error floor can always meet. Panels whose embedded-rule
    discrepancy exceeds their share of tol are bisected, up to a fixed
    refinement budget; exhaustion raises with the best result attached.
    The engine-bound part of the estimate is a floor no refinement can
    cross, so impossible tolerances fail fast.
    """
    if not 0.0 <= a <= b:
        raise DomainError("integrate_segment requires 0 <= a <= b")
    if tol is None:
        tol = _auto_tol(a, b)
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    if a == b:
        return IntegralResult(a=a, b=b, value=0.0, abs_error_estimate=0.0, node_count=0)
    edges = _panel_edges(a, b)
    lo, hi = edges[:-1], edges[1:]
    v15, v7, eng = _eval_panels(lo, hi)
    nodes = lo.size * _NODES_PER_PANEL
    for _ in range(24):
        quad_err = np.abs(v15 - v7)
        if float(np.sum(quad_err + eng)) <= tol:
            break
        if float(np.sum(eng)) > 0.5 * tol:
            raise ToleranceError(
                f"engine error floor exceeds tol={tol:g} on [{a},{b}]",
                best_value=_kahan_sum(v15),
                best_error=float(np.sum(quad_err + eng)),
            )
        bad = quad_err > 0.25 * tol * (hi - lo) / (b - a)
        if not bad.any():
            bad = quad_err >= np.max(quad_err)
        mid = 0.5 * (lo[bad] + hi[bad])
        new_lo = np.concatenate([lo[~bad], lo[bad], mid])
        new_hi = np.concatenate([hi[~bad], mid, hi[bad]])
        order = np.argsort(new_lo, kind="stable")
        lo, hi = new_lo[order], new_hi[order]
        v15, v7, eng = _eval_panels(lo, hi)
        nodes += int(np.sum(bad)) * 2 * _NODES_PER_PANEL
    else:
        raise ToleranceError(
            f"refinement budget exhausted on [{a},{b}] at tol={tol:g}",
            best_value=_kahan_sum(v15),
            best_error=float(np.sum(np.abs(v15 - v7) + eng)),
        )
    return IntegralResult(
        a=a,
        b=b,
        value=_kahan_sum(v15),
        abs_error_estimate=float(np.sum(np.abs(v15 - v7) + eng)),
        node_count=nodes,
    )


@dataclass
class CheckpointCache:
    """Ordered checkpoints T -> (J(T), error estimate), strictly monotone.

    Writes are serialized by an internal lock; reads see an append-only
    prefix, so concurrent readers are safe and each checkpoint value is
    independent of evaluation order (every stride cell integrates the
    same fixed interval).
    """

    stride: float = DEFAULT_STRIDE
    tol: float = AUTO_TOL_RATE * DEFAULT_STRIDE
    engine_version: str = ENGINE_VERSION
    ts: list[float] = field(default_factory=list)
    js: list[float] = field(default_factory=list)
    errs: list[float] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False, compare=False)

    def _validate(self) -> None:
        for i in range(1, len(self.ts)):
            if not (self.ts[i] > self.ts[i - 1] and self.js[i] > self.js[i - 1]):
                raise CacheCorruptionError(
                    f"cache not strictly increasing at row {i}: "
                    f"T {self.ts[i-1]}->{self.ts[i]}, J {self.js[i-1]}->{self.js[i]}"
                )
        if any(e < 0 for e in self.errs):
            raise CacheCorruptionError("negative error estimate in cache")

    def nearest_below(self, T: float) -> tuple[float, float, float]:
        """Largest checkpoint (T0, J0, err0) with T0 <= T; (0,0,0) if none."""
        best = (0.0, 0.0, 0.0)
        for t, j, e in zip(self.ts, self.js, self.errs):
            if t <= T:
                best = (t, j, e)
            else:
                break
        return best

    def extend_to(self, T: float, tol: float | None = None) -> None:
        """Add checkpoints at stride multiples up to T."""
        tol = self.tol if tol is None else tol
        with self._lock:
            cur_t, cur_j, cur_e = (self.ts[-1], self.js[-1], self.errs[-1]) if self.ts else (0.0, 0.0, 0.0)
            k = int(math.floor(cur_t / self.stride)) + 1
            while k * self.stride <= T:
                nxt = k * self.stride
                seg = integrate_segment(cur_t, nxt, tol=tol)
                cur_t, cur_j, cur_e = nxt, cur_j + seg.value, cur_e + seg.abs_error_estimate
                self.ts.append(cur_t)
                self.js.append(cur_j)
                self.errs.append(cur_e)
                k += 1
            self._validate()

    def save(self, path: str) -> None:
        buf = io.StringIO()
        buf.write(f"# ladderlab cache v{self.engine_version} stride={self.stride:.17g} tol={self.tol:.17g}\n")
        buf.write("T,J,abs_err\n")
        for t, j, e in zip(self.ts, self.js, self.errs):
            buf.write(f"{t:.17g},{j:.17g},{e:.17g}\n")
        with open(path, "w", newline="\n") as fh:
            fh.write(buf.getvalue())

    @classmethod
    def load(cls, path: str) -> "CheckpointCache":
        with open(path) as fh:
            lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
        if not lines:
            raise CacheCorruptionError(f"empty cache file {path}")
        stride, tol, version = DEFAULT_STRIDE, AUTO_TOL_RATE * DEFAULT_STRIDE, ENGINE_VERSION
        if lines[0].startswith("#"):
            for tokpair in lines[0].split():
                if tokpair.startswith("stride="):
                    stride = float(tokpair[7:])
                elif tokpair.startswith("tol="):
                    tol = float(tokpair[4:])
                elif tokpair.startswith("v") and tokpair[1:].isdigit():
                    version = tokpair[1:]
            lines = lines[1:]
        if not lines or lines[0] != "T,J,abs_err":
            raise CacheCorruptionError(f"bad cache header in {path}")
        cache = cls(stride=stride, tol=tol, engine_version=version)
        for ln in lines[1:]:
            parts = ln.split(",")
            if len(parts) != 3:
                raise CacheCorruptionError(f"bad cache row {ln!r} in {path}")
            cache.ts.append(float(parts[0]))
            cache.js.append(float(parts[1]))
            cache.errs.append(float(parts[2]))
        cache._validate()
        return cache


def hl_integral(T: float, cache: CheckpointCache | None = None, tol: float | None = None) -> IntegralResult:
    """J(T): cached checkpoint plus a fresh tail segment.

    With a cache, checkpoints at the cache stride are computed (and
    memoized) on the way; the caller owns writer serialization.
    """
    if T < 0.0:
        raise DomainError("hl_integral requires T >= 0")
    if T == 0.0:
        return IntegralResult(a=0.0, b=0.0, value=0.0, abs_error_estimate=0.0, node_count=0)
    if cache is None:
        seg = integrate_segment(0.0, T, tol=tol)
        return IntegralResult(a=0.0, b=T, value=seg.value, abs_error_estimate=seg.abs_error_estimate, node_count=seg.node_count)
    cache.extend_to(T)
    t0, j0, e0 = cache.nearest_below(T)
    tail = integrate_segment(t0, T, tol=tol)
    return IntegralResult(
        a=0.0, b=T, value=j0 + tail.value,
        abs_error_estimate=e0 + tail.abs_error_estimate,
        node_count=tail.node_count,
    )


def hl_representation(phi: float) -> float:
    """The almost-exact closed form phi*ln(phi) + (c - ln 2pi)*phi.

    Strictly increasing for phi >= 2; equals J at the descended
    ordinate by construction of the ladder. The integration constant of
    the underlying representation is fixed at 0 (recorded in report
    metadata as c0_convention).
    """
    if phi <= 1.0:
        raise DomainError("hl_representation requires phi > 1")
    return phi * math.log(phi) + (EULER_GAMMA - LN_TWO_PI) * phi


def default_cache_path() -> str | None:
    """Cache file from the HL_CACHE environment variable, if set."""
    return os.environ.get("HL_CACHE") or None
