"""Parabolic representations rho(a) = (1 1; 0 1), rho(b) = (1 0; w 1) of H(r;n)
and trace certificates refuting conjugacy, peripherality and torsion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .presentation import riley_word
from .rational import Slope, SlopeLike
from .word import check_letters

WORK_DPS = 40
DEFAULT_TOL = 1e-8


# Polynomials in w with integer coefficients, lowest degree first.

def _padd(f, g):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] += c
    return _trim(out)


def _pmul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim(out)


def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


_GEN = {
    "a": (([1], [1]), ([], [1])),
    "A": (([1], [-1]), ([], [1])),
    "b": (([1], []), ([0, 1], [1])),
    "B": (([1], []), ([0, -1], [1])),
}


def _mat_mul(X, Y):
    return (
        (_padd(_pmul(X[0][0], Y[0][0]), _pmul(X[0][1], Y[1][0])), _padd(_pmul(X[0][0], Y[0][1]), _pmul(X[0][1], Y[1][1]))),
        (_padd(_pmul(X[1][0], Y[0][0]), _pmul(X[1][1], Y[1][0])), _padd(_pmul(X[1][0], Y[0][1]), _pmul(X[1][1], Y[1][1]))),
    )


def word_matrix_polynomial(w: str):
    """rho(w) as a 2x2 matrix of integer polynomials in w."""
    check_letters(w)
    M = (([1], []), ([], [1]))
    for c in w:
        M = _mat_mul(M, _GEN[c])
    return M


@lru_cache(maxsize=4096)
def word_trace_polynomial(w: str) -> Tuple[int, ...]:
    M = word_matrix_polynomial(w)
    return tuple(_padd(M[0][0], M[1][1]))


def trace_polynomial(r: SlopeLike, n: Optional[int] = None) -> Tuple[int, ...]:
    """tr rho(u_r) as integer coefficients in w, lowest degree first.

    The trace does not depend on n; the argument is accepted for symmetry
    with the representation solver.
    """
    return word_trace_polynomial(riley_word(r).word)


def format_polynomial(coeffs: Sequence[int], var: str = "w") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and abs(c) == 1:
            coef = "-" if c < 0 else ""
        else:
            coef = str(c)
        terms.append(f"{coef}{mono}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def _np_gen(omega: complex):
    return {
        "a": np.array([[1, 1], [0, 1]], dtype=complex),
        "A": np.array([[1, -1], [0, 1]], dtype=complex),
        "b": np.array([[1, 0], [omega, 1]], dtype=complex),
        "B": np.array([[1, 0], [-omega, 1]], dtype=complex),
    }


@dataclass(frozen=True)
class ParabolicRepresentation:
    omega: complex
    omega_hp: mpmath.mpc = field(repr=False, compare=False)
    r: Slope
    n: int
    order: int  # tr rho(u_r) = 2 cos(order * pi / n)
    target_trace: float
    residual: float
    power_residual: float

    def matrix(self, w: str) -> np.ndarray:
        g = _np_gen(self.omega)
        M = np.eye(2, dtype=complex)
        for c in w:
            M = M @ g[c]
        return M

    def trace(self, w: str) -> complex:
        return complex(np.trace(self.matrix(w)))

    def trace_hp(self, w: str):
        """tr rho(w) by exact polynomial evaluated at the high-precision root."""
        with mpmath.workdps(WORK_DPS):
            return mpmath.polyval(list(reversed(word_trace_polynomial(w))), self.omega_hp)

    def to_json(self):
        return {
            "omega": [self.omega.real, self.omega.imag],
            "order": self.order,
            "target_trace": self.target_trace,
            "residual": self.residual,
            "power_residual": self.power_residual,
        }


class RootFindingError(RuntimeError):
    pass


def _polish(coeffs_hp, z0, steps=60):
    """Newton iteration at WORK_DPS digits; coefficients highest degree first."""
    deriv = [c * (len(coeffs_hp) - 1 - i) for i, c in enumerate(coeffs_hp[:-1])]
    z = mpmath.mpc(z0)
    for _ in range(steps):
        fz = mpmath.polyval(coeffs_hp, z)
        dz = mpmath.polyval(deriv, z)
        if dz == 0:
            break
        step = fz / dz
        z -= step
        if abs(step) < mpmath.mpf(10) ** (-(WORK_DPS - 5)):
            break
    return z


def solve_representations(r: SlopeLike, n: int, tol: float = DEFAULT_TOL, orders: Sequence[int] = (1,)) -> List[ParabolicRepresentation]:
    """All roots of tr rho(u_r) = 2 cos(k pi / n) for k in ``orders``.

    Roots come from companion-matrix eigenvalues, then Newton polishing at
    WORK_DPS digits. Each returned representation has rho(u_r)^n = +-I.
    """
    r = Slope.of(r)
    if n < 2:
        raise ValueError("n must be >= 2")
    poly = trace_polynomial(r)
    u = riley_word(r).word
    reps = []
    with mpmath.workdps(WORK_DPS):
        for k in orders:
            if not 0 < k < n:
                raise ValueError(f"order k must satisfy 0 < k < n, got {k}")
            target_hp = 2 * mpmath.cos(k * mpmath.pi / n)
            coeffs_hp = [mpmath.mpf(c) for c in reversed(poly)]
            coeffs_hp[-1] -= target_hp
            companion_roots = np.roots([float(c) for c in coeffs_hp])
            for z0 in companion_roots:
                z = _polish(coeffs_hp, complex(z0))
                residual = float(abs(mpmath.polyval(list(reversed(poly)), z) - target_hp))
                omega = complex(z)
                M = np.linalg.matrix_power(_hp_matrix(u, z), n)
                sign = 1 if k % 2 == 0 else -1
                power_residual = float(max(abs(M[0, 0] - sign), abs(M[1, 1] - sign), abs(M[0, 1]), abs(M[1, 0])))
                if residual > tol or power_residual > 1e3 * tol:
                    raise RootFindingError(
                        f"root {omega} of the trace equation for {r}, n={n} did not converge "
                        f"(residual {residual:.2e}, power residual {power_residual:.2e})"
                    )
                reps.append(
                    ParabolicRepresentation(omega, z, r, n, k, float(target_hp), residual, power_residual)
                )
    reps.sort(key=lambda rep: (round(rep.omega.real, 9), round(rep.omega.imag, 9), rep.order))
    return reps


def _hp_matrix(w: str, z):
    """rho(w) at WORK_DPS digits, returned as a numpy object array of mpc."""
    one, zero = mpmath.mpc(1), mpmath.mpc(0)
    gens = {
        "a": np.array([[one, one], [zero, one]], dtype=object),
        "A": np.array([[one, -one], [zero, one]], dtype=object),
        "b": np.array([[one, zero], [z, one]], dtype=object),
        "B": np.array([[one, zero], [-z, one]], dtype=object),
    }
    M = np.array([[one, zero], [zero, one]], dtype=object)
    for c in w:
        M = M.dot(gens[c])
    return M


@lru_cache(maxsize=256)
def cached_representations(r: Slope, n: int, tol: float = DEFAULT_TOL, orders: Tuple[int, ...] = (1,)):
    return tuple(solve_representations(r, n, tol, orders))


def trace_of_slope(s: SlopeLike, rep: ParabolicRepresentation) -> complex:
    """tr rho(u_s); defined up to sign since the representation is projective."""
    return rep.trace(riley_word(s).word)


@dataclass
class TraceCertificate:
    kind: str
    slopes: Tuple[str, ...]
    traces: List
    margin: float
    omega: complex

    def to_json(self):
        return {
            "kind": self.kind,
            "slopes": list(self.slopes),
            "margin": self.margin,
            "omega": [self.omega.real, self.omega.imag],
            "traces": [[t.real, t.imag] for t in self.traces],
        }


def sign_separation(t1: complex, t2: complex) -> float:
    """Distance between {t1, -t1} and {t2, -t2}."""
    return min(abs(t1 - t2), abs(t1 + t2))


def parabolic_distance(t: complex) -> float:
    """||t| - 2|, a lower bound for the distance from t to {2, -2}.

    Powers of a meridian map to parabolics or the identity, with trace +-2.
    """
    return abs(abs(t) - 2)


def torsion_distance(t: complex, n: int) -> float:
    """Distance from t to {+-2 cos(k pi / n) : 0 <= k <= n}."""
    vals = [2 * math.cos(k * math.pi / n) for k in range(n + 1)]
    return min(abs(t - v) for v in vals + [-v for v in vals])


def certify(kind: str, slopes: Sequence[SlopeLike], reps: Sequence[ParabolicRepresentation], tol: float = DEFAULT_TOL) -> Optional[TraceCertificate]:
    """A trace certificate of the requested kind, or None when inconclusive.

    kind is "non-conjugate" (two slopes), "non-peripheral" or "non-torsion"
    (one slope). A certificate needs a margin of at least 10 * tol.
    """
    slopes = [Slope.of(s) for s in slopes]
    words = [riley_word(s).word for s in slopes]
    best = None
    for rep in reps:
        traces = [rep.trace(w) for w in words]
        if kind == "non-conjugate":
            if len(slopes) != 2:
                raise ValueError("non-conjugate needs two slopes")
            margin = sign_separation(traces[0], traces[1])
        elif kind == "non-peripheral":
            margin = parabolic_distance(traces[0])
        elif kind == "non-torsion":
            margin = torsion_distance(traces[0], rep.n)
        else:
            raise ValueError(f"unknown certificate kind {kind!r}")
        if best is None or margin > best.margin:
            best = TraceCertificate(kind, tuple(str(s) for s in slopes), traces, margin, rep.omega)
    if best is None or best.margin <= 10 * tol:
        return None
    return best


def recheck_certificate(cert: TraceCertificate, reps: Sequence[ParabolicRepresentation], n: int) -> float:
    """Recompute a certificate's margin from exact trace polynomials at high precision."""
    rep = min(reps, key=lambda x: abs(x.omega - cert.omega))
    words = [riley_word(s).word for s in cert.slopes]
    with mpmath.workdps(WORK_DPS):
        traces = [rep.trace_hp(w) for w in words]
        if cert.kind == "non-conjugate":
            m = min(abs(traces[0] - traces[1]), abs(traces[0] + traces[1]))
        elif cert.kind == "non-peripheral":
            m = abs(abs(traces[0]) - 2)
        else:
            vals = [2 * mpmath.cos(k * mpmath.pi / n) for k in range(n + 1)]
            m = min(abs(traces[0] - v) for v in vals + [-v for v in vals])
        return float(m)
