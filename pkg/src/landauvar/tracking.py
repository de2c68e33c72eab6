"""Numerical monodromy of one-dimensional root families along parameter loops.

The family f(x; t) = 0 is followed while one chosen parameter traverses a
circle; all other parameters stay frozen.  Roots are continued by a
predictor-corrector scheme (Newton corrector, adaptive step halving near
close approaches) and matched back at the end, giving the permutation of the
roots and the winding number of each tracked root around marked points.  The
discrete outputs are the contract; residuals are diagnostics.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .poly import Polynomial


class TrackingError(ValueError):
    pass


@dataclass(frozen=True)
class Loop:
    parameter: str
    center: complex
    radius: float
    orientation: int = 1     # +1 counter-clockwise
    steps: int = 256
    turns: int = 1           # number of revolutions

    def point(self, theta: float) -> complex:
        return self.center + self.radius * cmath.exp(
            2j * cmath.pi * self.orientation * self.turns * theta
        )

    def reversed(self) -> "Loop":
        return Loop(self.parameter, self.center, self.radius,
                    -self.orientation, self.steps, self.turns)


@dataclass(frozen=True)
class ParametricRootSystem:
    f: Polynomial
    fiber_var: str
    basepoint: dict          # parameter -> complex value (loop parameter at theta=0)
    loop: Loop

    def coefficient_polys(self):
        return self.f.coefficients_in(self.fiber_var)


@dataclass
class TrackResult:
    permutation: tuple       # sigma[i] = index of the start root where root i ends
    windings: list           # windings[i][k] = winding of root i around marked[k]
    steps: int
    max_residual: float
    start_roots: list = field(default_factory=list)
    end_roots: list = field(default_factory=list)

    @property
    def is_identity(self) -> bool:
        return all(s == i for i, s in enumerate(self.permutation))

    def describe(self) -> dict:
        return {
            "permutation": list(self.permutation),
            "windings": [list(w) for w in self.windings],
            "steps": self.steps,
            "max_residual": self.max_residual,
        }


def _poly_eval(coeffs, x):
    # ascending coefficient order
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _coeffs_at(coeff_polys, assignment):
    return [c.evaluate(assignment) for c in coeff_polys]


def _newton(coeffs, dcoeffs, x0, tol, scale, max_iter=20):
    x = x0
    for _ in range(max_iter):
        fx = _poly_eval(coeffs, x)
        if abs(fx) <= tol * scale:
            return x, abs(fx)
        dfx = _poly_eval(dcoeffs, x)
        if dfx == 0:
            return None
        x = x - fx / dfx
    fx = _poly_eval(coeffs, x)
    if abs(fx) <= tol * scale:
        return x, abs(fx)
    return None


def track(sys: ParametricRootSystem, marked=(), tol: float = 1e-10,
          disc_threshold: float = 1e-8) -> TrackResult:
    """Continue all roots of f around the loop and report the induced
    permutation and windings around the marked points."""
    coeff_polys = sys.coefficient_polys()
    if len(coeff_polys) < 2:
        raise TrackingError("family must have positive degree in the fiber variable")
    loop = sys.loop
    params = dict(sys.basepoint)
    expected_base = loop.point(0.0)
    if loop.parameter in params:
        if abs(params[loop.parameter] - expected_base) > 1e-9 * max(1.0, abs(expected_base)):
            raise TrackingError("basepoint value disagrees with the loop at theta=0")
    params[loop.parameter] = expected_base

    def coeffs_at_theta(theta):
        assignment = dict(params)
        assignment[loop.parameter] = loop.point(theta)
        cs = _coeffs_at(coeff_polys, assignment)
        scale = max(abs(c) for c in cs)
        if abs(cs[-1]) <= 1e-12 * max(1.0, scale):
            raise TrackingError(f"leading coefficient vanishes at theta={theta}")
        return cs

    cs0 = coeffs_at_theta(0.0)
    start = [complex(r) for r in np.roots(list(reversed(cs0)))]
    degree = len(start)
    scale0 = max(abs(c) for c in cs0)
    for r in start:
        if abs(_poly_eval(cs0, r)) > 1e-6 * scale0:
            raise TrackingError("basepoint roots failed the residual check")
    # basepoint must sit off the Landau variety: |discriminant| above threshold
    lc = cs0[-1]
    disc = lc ** (2 * degree - 2)
    for i in range(degree):
        for j in range(i + 1, degree):
            disc *= (start[i] - start[j]) ** 2
    if abs(disc) <= disc_threshold:
        raise TrackingError("basepoint lies too close to the Landau variety")

    marked = [complex(z) for z in marked]
    roots = list(start)
    windings = [[0.0] * len(marked) for _ in range(degree)]
    theta = 0.0
    base_step = 1.0 / loop.steps
    step = base_step
    n_steps = 0
    max_residual = 0.0
    min_sep = min(
        abs(a - b) for i, a in enumerate(start) for b in start[i + 1:]
    ) if degree > 1 else float("inf")

    while theta < 1.0 - 1e-15:
        h = min(step, 1.0 - theta)
        target = theta + h
        cs = coeffs_at_theta(target)
        dcs = [(k + 1) * c for k, c in enumerate(cs[1:])]
        scale = max(abs(c) for c in cs)
        new_roots = []
        ok = True
        for r in roots:
            corrected = _newton(cs, dcs, r, tol, scale)
            if corrected is None:
                ok = False
                break
            new_roots.append(corrected)
        if ok and degree > 1:
            sep = min(
                abs(a[0] - b[0])
                for i, a in enumerate(new_roots)
                for b in new_roots[i + 1:]
            )
            if sep < 10 * tol:
                ok = False
            else:
                move = max(abs(a[0] - b) for a, b in zip(new_roots, roots))
                if move > 0.4 * sep:
                    ok = False
        if not ok:
            step /= 2
            if step < 1e-13:
                raise TrackingError("step underflow: loop passes too near a singularity")
            continue
        for i, (val, res) in enumerate(new_roots):
            max_residual = max(max_residual, res)
            for k, z in enumerate(marked):
                windings[i][k] += cmath.phase((val - z) / (roots[i] - z))
        roots = [val for val, _ in new_roots]
        theta = target
        n_steps += 1
        if step < base_step:
            step = min(base_step, step * 2)

    # match final roots back to the start configuration
    permutation = []
    for i, r in enumerate(roots):
        dists = sorted(range(degree), key=lambda j: abs(r - start[j]))
        j = dists[0]
        if degree > 1 and abs(r - start[j]) > 0.49 * min_sep:
            raise TrackingError("root matching is ambiguous; refine the loop")
        permutation.append(j)
    if len(set(permutation)) != degree:
        raise TrackingError("root collision: two tracked roots matched one start root")

    int_windings = [
        [round(w / (2 * cmath.pi)) for w in per_root] for per_root in windings
    ]
    return TrackResult(
        permutation=tuple(permutation),
        windings=int_windings,
        steps=n_steps,
        max_residual=max_residual,
        start_roots=start,
        end_roots=roots,
    )
