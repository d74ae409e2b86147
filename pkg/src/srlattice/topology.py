"""Dirac points, chirality, and Chern numbers of the effective bands.

Four independent routes to the topological invariant:

* dp_counting  - C = (1/2) sum over band touchings of sgn(h_z) * chi
* small_f      - sign of the sine product of pairwise modulation-phase
                 differences (weak-modulation closed form)
* bessel_sum   - sign of the Bessel-weighted phase-difference series
                 (general closed form for the two-event regime)
* fhs_wilson   - plaquette lattice-gauge (Wilson loop) Berry-flux sum

The lattice-gauge sum runs in the periodic Bloch gauge, i.e. on the
off-diagonal field reduced by exp(-i k_1 . r), which is strictly periodic
on the zone torus.  Its loop orientation is fixed once so that it equals
the DP-counting value with this package's sublattice convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.special import jv

from .config import LatticeConfig
from .errors import DegenerateConeError, GridTooCoarseError, ParameterError
from .lattice import heff_fields, quasienergy_bands

GAP_TOL_REL = 1e-3          # gap below this fraction of Omega: hz sign unreliable
FHS_RESIDUAL_TOL = 1e-3     # max distance of the plaquette sum from an integer
_ZERO_RESIDUAL_REL = 1e-6   # in-plane residual bound for an accepted Dirac point


@dataclass(frozen=True)
class DiracPoint:
    """A band-touching point of the in-plane effective field."""

    position: np.ndarray      # cartesian r in the fundamental cell
    chirality: int            # winding sign of the in-plane field
    hz_sign: int              # sign of h_z at the point; 0 when gap < tolerance
    gap: float                # 2 |h_z| (MHz)
    in_plane_residual: float  # |h_x + i h_y| at the located point (MHz)


@dataclass(frozen=True)
class DiracScan:
    points: tuple             # located DiracPoint instances
    unresolved: tuple         # cartesian seeds where Newton failed to settle


@dataclass(frozen=True)
class ChernResult:
    value: float              # integer when reliable (exact int for fhs/dp)
    method: str               # dp_counting | small_f | bessel_sum | fhs_wilson
    min_gap: float            # minimum band splitting encountered (MHz)
    reliable: bool
    residual: float = 0.0     # fhs: distance of the raw sum from the integer


def _in_plane(cfg: LatticeConfig, R, order: int = 2):
    """(h_x, h_y) stacked on the last axis, shape (..., 2)."""
    h_minus, _, _ = heff_fields(cfg, R, order=order)
    return np.stack([h_minus.real, -h_minus.imag], axis=-1)


def _jacobian(cfg: LatticeConfig, r, step: float, order: int = 2) -> np.ndarray:
    """Central-difference Jacobian of the in-plane field at r."""
    r = np.asarray(r, dtype=float)
    stencil = np.array([
        r + [step, 0], r - [step, 0],
        r + [0, step], r - [0, step],
    ])
    F = _in_plane(cfg, stencil, order=order)
    return np.stack([
        (F[0] - F[1]) / (2 * step),
        (F[2] - F[3]) / (2 * step),
    ], axis=1)


def chirality(cfg: LatticeConfig, p, order: int = 2) -> int:
    """Winding sign of the in-plane field at a located zero.

    chi = sgn det d(h_x, h_y)/d(x, y), evaluated by central differences at
    two step sizes which must agree.
    """
    dets = []
    for step in (1e-4, 1e-5):
        det = float(np.linalg.det(_jacobian(cfg, p, step, order=order)))
        if abs(det) < 1e-8:
            raise DegenerateConeError(f"cone Jacobian determinant {det:.2e} below 1e-8 at {p}")
        dets.append(det)
    if np.sign(dets[0]) != np.sign(dets[1]):
        raise DegenerateConeError(f"chirality differs between finite-difference steps at {p}: {dets}")
    return int(np.sign(dets[0]))


def _newton_zero(cfg: LatticeConfig, r0, order: int, max_iter: int = 100):
    """Damped (line-searched) Newton iteration on the in-plane field.

    The Newton direction descends |F|^2, so backtracking either reaches a
    root or stalls at a genuine nonzero minimum of the field magnitude.
    Returns (r, status) with status in {"zero", "stationary", "stuck"}.
    """
    geo = cfg.geometry
    tol = 1e-9 * cfg.omega
    clamp = 0.1 * geo.cell_diameter()
    r = np.asarray(r0, dtype=float).copy()
    F = _in_plane(cfg, r, order=order)
    for _ in range(max_iter):
        fnorm = float(np.linalg.norm(F))
        if fnorm < tol:
            return r, "zero"
        J = _jacobian(cfg, r, 1e-5, order=order)
        step = -np.linalg.pinv(J) @ F
        norm = np.linalg.norm(step)
        if norm > clamp:
            step *= clamp / norm
        lam = 1.0
        for _ in range(12):
            F_new = _in_plane(cfg, r + lam * step, order=order)
            if np.linalg.norm(F_new) < fnorm * (1.0 - 1e-4 * lam):
                r = r + lam * step
                F = F_new
                break
            lam *= 0.5
        else:
            # no descent left: a stationary nonzero minimum, not a root
            return r, "stationary"
    return r, ("zero" if np.linalg.norm(F) < tol else "stuck")


def find_dirac_points(cfg: LatticeConfig, grid: int = 96, order: int = 2) -> DiracScan:
    """All zeros of the in-plane effective field in one fundamental cell.

    Grid scan for local minima of |h_x + i h_y|^2, then damped Newton
    refinement; converged zeros are deduplicated across periodic images.
    Seeds where Newton stalls without settling are reported as unresolved.
    """
    geo = cfg.geometry
    s = np.arange(grid) / grid
    frac = np.stack(np.meshgrid(s, s, indexing="ij"), axis=-1)
    R = geo.frac_to_cart(frac)
    F = _in_plane(cfg, R, order=order)
    mag = np.einsum("...i,...i->...", F, F)

    local_min = np.ones_like(mag, dtype=bool)
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            if dx == 0 and dy == 0:
                continue
            local_min &= mag <= np.roll(np.roll(mag, dx, axis=0), dy, axis=1)

    zeros = []
    unresolved = []
    for i, j in np.argwhere(local_min):
        r, status = _newton_zero(cfg, R[i, j], order)
        if status == "zero":
            r = geo.wrap(r)
            if not any(geo.min_image_distance(r, q) < 1e-4 for q in zeros):
                zeros.append(r)
        elif status == "stuck":
            unresolved.append(R[i, j])
        # "stationary": a genuine nonzero minimum of the field, not a candidate

    points = []
    for r in zeros:
        h_minus, h_z, _ = heff_fields(cfg, r, order=order)
        gap = 2.0 * abs(float(h_z))
        points.append(DiracPoint(
            position=r,
            chirality=chirality(cfg, r, order=order),
            hz_sign=int(np.sign(h_z)) if gap > GAP_TOL_REL * cfg.omega else 0,
            gap=gap,
            in_plane_residual=float(abs(h_minus)),
        ))
    points.sort(key=lambda p: tuple(np.round(cfg.geometry.cart_to_frac(p.position) % 1.0, 6)))
    return DiracScan(points=tuple(points), unresolved=tuple(map(tuple, unresolved)))


def chern_dp_counting(cfg: LatticeConfig, grid: int = 96) -> ChernResult:
    """C = (1/2) sum over located band touchings of sgn(h_z) chi."""
    scan = find_dirac_points(cfg, grid=grid)
    if not scan.points:
        return ChernResult(value=0.0, method="dp_counting", min_gap=0.0, reliable=False)
    min_gap = min(p.gap for p in scan.points)
    value = 0.5 * sum(p.hz_sign * p.chirality for p in scan.points)
    reliable = min_gap > GAP_TOL_REL * cfg.omega and not scan.unresolved
    return ChernResult(value=value, method="dp_counting", min_gap=min_gap, reliable=reliable)


def chern_small_f(phi) -> int:
    """Sign of sin[(p1-p2)/2] sin[(p2-p3)/2] sin[(p3-p1)/2]; 0 on a boundary."""
    p1, p2, p3 = phi
    prod = math.sin((p1 - p2) / 2) * math.sin((p2 - p3) / 2) * math.sin((p3 - p1) / 2)
    if abs(prod) < 1e-12:
        return 0
    return 1 if prod > 0 else -1


def chern_bessel(phi, f: float, n_terms: int | None = None) -> int:
    """Sign of sum_{n>=1} sum_j J_n(f)^2 sin[n(phi_{j+1} - phi_j)]/n, cyclic in j."""
    if n_terms is None:
        n_terms = math.ceil(f) + 6
    if n_terms < 1:
        raise ParameterError(f"n_terms must be >= 1, got {n_terms}")
    phi = np.asarray(phi, dtype=float)
    diffs = np.array([phi[1] - phi[0], phi[2] - phi[1], phi[0] - phi[2]])
    n = np.arange(1, n_terms + 1)
    total = float(np.sum(jv(n, f)[:, None] ** 2 * np.sin(np.outer(n, diffs)) / n[:, None]))
    if abs(total) < 1e-10:
        return 0
    return 1 if total > 0 else -1


def _lower_band_vectors(h_minus_t: np.ndarray, h_z: np.ndarray):
    """Normalized lower eigenvector of [[h_z, hm],[hm*, -h_z]], gauge chosen per point."""
    habs = np.sqrt(np.abs(h_minus_t) ** 2 + h_z ** 2)
    nA = np.sqrt(np.abs(h_minus_t) ** 2 + (h_z + habs) ** 2)
    nB = np.sqrt((h_z - habs) ** 2 + np.abs(h_minus_t) ** 2)
    use_a = nA >= nB
    safeA = np.where(nA == 0, 1.0, nA)
    safeB = np.where(nB == 0, 1.0, nB)
    u0 = np.where(use_a, -h_minus_t / safeA, (h_z - habs) / safeB)
    u1 = np.where(use_a, (h_z + habs) / safeA, np.conj(h_minus_t) / safeB)
    return np.stack([u0, u1]), habs


def _plaquette_chern(u: np.ndarray) -> tuple[float, float]:
    """Plaquette Berry-flux sum of eigenvector field u, shape (dim, N, N) periodic.

    Returns (raw value, residual from nearest integer).  The loop
    orientation matches the DP-counting convention of this package.
    """
    Ux = np.einsum("k...,k...->...", np.conj(u), np.roll(u, -1, axis=1))
    Uy = np.einsum("k...,k...->...", np.conj(u), np.roll(u, -1, axis=2))
    loop = Ux * np.roll(Uy, -1, axis=0) * np.conj(np.roll(Ux, -1, axis=1)) * np.conj(Uy)
    flux = np.angle(loop)
    raw = -float(flux.sum()) / (2.0 * np.pi)
    return raw, float(abs(raw - round(raw)))


def chern_fhs(cfg: LatticeConfig, grid: int = 60, exact_floquet: bool = False) -> ChernResult:
    """Lattice-gauge (Fukui-Hatsugai-Suzuki) Chern number of the lower band.

    Default operates on the two-band effective Hamiltonian; the
    exact_floquet option rebuilds the eigenvectors from the full Floquet
    matrix (central bands by m = 0 weight) as a perturbation-free check.
    """
    if grid < 12:
        raise ParameterError(f"grid must be >= 12, got {grid}")
    geo = cfg.geometry
    s = np.arange(grid) / grid
    frac = np.stack(np.meshgrid(s, s, indexing="ij"), axis=-1)
    R = geo.frac_to_cart(frac)

    if exact_floquet:
        twist = np.exp(-1j * (R @ geo.k[0]))
        dim = 2 * (2 * cfg.n_max + 1)
        u = np.empty((dim, grid, grid), dtype=complex)
        min_gap = np.inf
        for i in range(grid):
            for j in range(grid):
                bands = quasienergy_bands(cfg, R[i, j])
                vec = bands.states[:, 0]
                vec = vec.copy()
                vec[0::2] *= twist[i, j]  # b components into the periodic gauge
                u[:, i, j] = vec
                min_gap = min(min_gap, bands.gap)
    else:
        h_minus, h_z, _ = heff_fields(cfg, R, order=2)
        h_minus_t = h_minus * np.exp(-1j * (R @ geo.k[0]))
        u, habs = _lower_band_vectors(h_minus_t, h_z)
        min_gap = 2.0 * float(habs.min())

    raw, residual = _plaquette_chern(u)
    reliable = min_gap > 1e-6 * cfg.omega
    if reliable and residual > FHS_RESIDUAL_TOL:
        raise GridTooCoarseError(
            f"plaquette sum {raw:.6f} is {residual:.2e} from an integer; refine the grid"
        )
    return ChernResult(
        value=float(round(raw)),
        method="fhs_wilson",
        min_gap=float(min_gap),
        reliable=reliable,
        residual=residual,
    )


def band_polarization(cfg: LatticeConfig, path):
    """Band energies and sublattice polarization <sigma_z> along a zone path.

    Returns (energies, sigma_z), each (n_points, 2) with the lower band first.
    """
    R = np.asarray(path, dtype=float)
    h_minus, h_z, e0 = heff_fields(cfg, R, order=2)
    habs = np.sqrt(np.abs(h_minus) ** 2 + h_z ** 2)
    energies = np.stack([e0 - habs, e0 + habs], axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        pol = np.where(habs > 0, h_z / np.where(habs == 0, 1.0, habs), 0.0)
    sigma_z = np.stack([-pol, pol], axis=-1)
    return energies, sigma_z


def min_bandgap(cfg: LatticeConfig, grid: int = 48) -> tuple[float, np.ndarray]:
    """Minimum splitting of the two effective bands over the zone.

    Grid scan followed by a local derivative-free refinement from the
    grid argmin.  Returns (gap in MHz, location).
    """
    if grid < 24:
        raise ParameterError(f"grid must be >= 24, got {grid}")
    geo = cfg.geometry
    s = np.arange(grid) / grid
    frac = np.stack(np.meshgrid(s, s, indexing="ij"), axis=-1)
    R = geo.frac_to_cart(frac)
    h_minus, h_z, _ = heff_fields(cfg, R, order=2)
    gap = 2.0 * np.sqrt(np.abs(h_minus) ** 2 + h_z ** 2)
    i, j = np.unravel_index(np.argmin(gap), gap.shape)

    def objective(r):
        hm, hz, _ = heff_fields(cfg, r, order=2)
        return 2.0 * float(np.sqrt(abs(hm) ** 2 + hz ** 2))

    res = minimize(objective, R[i, j], method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 400})
    r_best, g_best = (res.x, float(res.fun)) if res.fun <= gap[i, j] else (R[i, j], float(gap[i, j]))
    return g_best, geo.wrap(r_best)
