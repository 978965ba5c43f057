"""Integration of a Leibniz 2-cocycle into a local augmented Lie rack.

The group G0 is realized concretely as matrices inside Aut(g) (exponentials
of the left-adjoint realization of g0), with a chart gate ||g - I|| < r in
the induced 1-norm.  All numerics on this side are floats; the exact layer
stops at the extension data.

The two path integrals:

    i1(beta)(g) = integral_0^1  exp(s X).beta(X) ds,        X = log g
    i2(omega)(g,h) = integral_0^1 phi_{exp(tY)}( i1(tau omega)(g)(Y) ) dt,
                                                            Y = log(g |> h)

use the reduction that along the canonical path exp(sX) the left-logarithmic
derivative is constantly X, so the pulled-back equivariant form needs no
path differentiation.  A slow general-path evaluator (finite differences on
the path) is kept behind ``IntegratorConfig.general_path`` as a cross-check.

The local rack product on G0 x a is then

    (g, a) |> (h, b) = (g h g^-1, g.b + i2(omega)(g, h)),

with neutral element (1, 0), and the projection to the first factor makes it
a local augmented rack.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from .algebra import CentralExtensionData, bracket
from .cohomology import Cochain, hom_representation, tau
from .linalg import (
    Matrix,
    OutOfChartError,
    QuadratureRule,
    gauss_legendre_01,
    integrate_01,
    matrix_log,
)


class NotLieCocycleError(ValueError):
    """iota2 was fed a cochain that is not an anti-symmetric Lie cocycle."""


def _expm(m: np.ndarray) -> np.ndarray:
    return scipy.linalg.expm(m) if m.size else np.zeros_like(m)


def _logm(m: np.ndarray) -> np.ndarray:
    return np.asarray(matrix_log(Matrix.from_array(m)).data)


def _norm1(m: np.ndarray) -> float:
    return float(np.abs(m).sum(axis=0).max()) if m.size else 0.0


# ---------------------------------------------------------------------------
# chart and configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalGroupChart:
    """Matrix chart for G0 inside Aut(g): the span of ad_basis is the
    realized g0, rho_basis acts on the center, ad0_basis is the adjoint of
    g0 on itself.  Group elements are n x n arrays with ||g - I|| < radius."""

    dim: int
    g0_dim: int
    center_dim: int
    chart_radius: float
    ad_basis: tuple[np.ndarray, ...]
    rho_basis: tuple[np.ndarray, ...]
    ad0_basis: tuple[np.ndarray, ...]
    coord_pinv: np.ndarray  # least-squares inverse of the flattened ad basis

    def identity(self) -> np.ndarray:
        return np.eye(self.dim)

    def combo(self, basis, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        shape = basis[0].shape if basis else (0, 0)
        acc = np.zeros(shape)
        for c, b in zip(xi, basis):
            acc = acc + c * b
        return acc

    def ad_of(self, xi) -> np.ndarray:
        m = self.combo(self.ad_basis, xi)
        return m if self.g0_dim else np.zeros((self.dim, self.dim))

    def rho_of(self, xi) -> np.ndarray:
        m = self.combo(self.rho_basis, xi)
        return m if self.g0_dim else np.zeros((self.center_dim, self.center_dim))

    def ad0_of(self, xi) -> np.ndarray:
        return self.combo(self.ad0_basis, xi)


def chart_from_extension(ext: CentralExtensionData, chart_radius: float = 0.5) -> LocalGroupChart:
    if chart_radius <= 0:
        raise ValueError("chart radius must be positive")
    n, d, m = ext.parent.dim, ext.g0_dim, ext.center_dim
    ad_basis = tuple(mat.to_numpy() for mat in ext.g0_matrices)
    rho_basis = tuple(mat.to_numpy() for mat in ext.rho)
    ad0_basis = tuple(
        np.array([[float(ext.g0.c[p][q][r]) for q in range(d)] for r in range(d)])
        for p in range(d))
    flat = np.stack([b.flatten() for b in ad_basis], axis=1) if d else np.zeros((n * n, 0))
    pinv = np.linalg.pinv(flat)
    return LocalGroupChart(n, d, m, chart_radius, ad_basis, rho_basis, ad0_basis, pinv)


@dataclass(frozen=True)
class IntegratorConfig:
    quad: QuadratureRule
    fd_step: float = 1e-3
    tol_identity: float = 1e-9
    general_path: bool = False

    def __post_init__(self):
        if self.quad.order < 3:
            raise ValueError("quadrature order must be >= 3")
        if not 0 < self.fd_step:
            raise ValueError("fd_step must be positive")


def default_config(quad_order: int = 8, fd_step: float = 1e-3,
                   tol_identity: float = 1e-9, general_path: bool = False) -> IntegratorConfig:
    return IntegratorConfig(gauss_legendre_01(quad_order), fd_step,
                            tol_identity, general_path)


@dataclass(frozen=True, eq=False)
class LocalRackElement:
    """A pair (group element of G0, coefficient vector in the center)."""

    g: np.ndarray
    a: np.ndarray


@dataclass(frozen=True)
class SymmetricModule:
    """A symmetric coefficient module presented infinitesimally: one carrier
    action matrix per g0 basis element; the group acts through exp."""

    dim: int
    generators: tuple[np.ndarray, ...]


@dataclass(frozen=True)
class LocalRackSystem:
    """Everything the integration of one algebra needs: the exact extension
    data, the float chart, the Hom(g0, a) module, and tau^2(omega) as a
    (center_dim * g0_dim) x g0_dim matrix."""

    ext: CentralExtensionData
    chart: LocalGroupChart
    hom_module: SymmetricModule
    center_module: SymmetricModule
    tau_matrix: np.ndarray

    @property
    def g0_dim(self) -> int:
        return self.chart.g0_dim

    @property
    def center_dim(self) -> int:
        return self.chart.center_dim

    def neutral(self) -> LocalRackElement:
        return LocalRackElement(self.chart.identity(), np.zeros(self.center_dim))


def _tau_matrix(omega: Cochain) -> np.ndarray:
    """Columns are the flattened Hom(g0, a) values of tau(omega) on basis
    elements; shape (m*d, d)."""
    t = tau(omega)
    d, q = t.domain_dim, t.coeff_dim
    if d == 0:
        return np.zeros((0, 0))
    return np.stack([np.array([float(v) for v in t.at(p)]) for p in range(d)], axis=1)


def build_rack_system(ext: CentralExtensionData,
                      chart_radius: float = 0.5) -> LocalRackSystem:
    chart = chart_from_extension(ext, chart_radius)
    d, m = ext.g0_dim, ext.center_dim
    if d:
        hom_rep = hom_representation(ext.rep)
        hom_gens = tuple(mat.to_numpy() for mat in hom_rep.left)
    else:
        hom_gens = ()
    hom_mod = SymmetricModule(m * d, hom_gens)
    center_mod = SymmetricModule(m, chart.rho_basis)
    return LocalRackSystem(ext, chart, hom_mod, center_mod, _tau_matrix(ext.omega))


# ---------------------------------------------------------------------------
# chart operations
# ---------------------------------------------------------------------------

def in_chart(chart: LocalGroupChart, g: np.ndarray) -> bool:
    return _norm1(g - chart.identity()) < chart.chart_radius


def require_in_chart(chart: LocalGroupChart, g: np.ndarray, what: str = "group element"):
    if not in_chart(chart, g):
        raise OutOfChartError(
            f"{what}: ||g - I|| = {_norm1(g - chart.identity()):.4g} "
            f">= chart radius {chart.chart_radius}")


def log_coords(chart: LocalGroupChart, g: np.ndarray, strict: bool = True) -> np.ndarray:
    """g0 coordinates of log(g); raises OutOfChartError if log(g) does not
    lie in the realized subalgebra (cannot happen for chart-gated input)."""
    ell = _logm(g)
    xi = chart.coord_pinv @ ell.flatten()
    if strict:
        resid = np.abs(chart.ad_of(xi) - ell).max() if ell.size else 0.0
        if resid > 1e-7 * (1.0 + np.abs(ell).max()):
            raise OutOfChartError(f"log(g) leaves the realized g0 (residual {resid:.3g})")
    return xi


def group_from_coords(chart: LocalGroupChart, xi) -> np.ndarray:
    return _expm(chart.ad_of(xi))


def group_action(chart: LocalGroupChart, g: np.ndarray) -> np.ndarray:
    """phi_g = exp(rho_{log g}), the integrated action of G0 on the center."""
    return _expm(chart.rho_of(log_coords(chart, g)))


def canonical_path(chart: LocalGroupChart, g: np.ndarray, s: float) -> np.ndarray:
    """gamma_g(s) = exp(s log g); s=0 is the identity, s=1 is g."""
    require_in_chart(chart, g)
    return _expm(s * _logm(g))


def conjugate(chart: LocalGroupChart, g: np.ndarray, h: np.ndarray) -> np.ndarray:
    """g |> h = g h g^-1, gated so the result stays in the chart (the
    dynamic U_loc gate: every conjugation must land in the neighborhood)."""
    require_in_chart(chart, g, "conjugator")
    require_in_chart(chart, h, "conjugated element")
    r = g @ h @ np.linalg.inv(g)
    require_in_chart(chart, r, "conjugation result")
    return r


def group_product(chart: LocalGroupChart, g: np.ndarray, h: np.ndarray) -> np.ndarray:
    require_in_chart(chart, g)
    require_in_chart(chart, h)
    r = g @ h
    require_in_chart(chart, r, "group product")
    return r


# ---------------------------------------------------------------------------
# the path integrals
# ---------------------------------------------------------------------------

def _beta_matrix(beta, q: int, d: int) -> np.ndarray:
    if isinstance(beta, Cochain):
        if beta.degree != 1 or beta.domain_dim != d or beta.coeff_dim != q:
            raise ValueError("beta must be a degree-1 cochain on g0 valued in the module")
        return np.stack([np.array([float(v) for v in beta.at(p)]) for p in range(d)],
                        axis=1) if d else np.zeros((q, 0))
    b = np.asarray(beta, dtype=float)
    if b.shape != (q, d):
        raise ValueError(f"beta matrix must be {q} x {d}")
    return b


def _pullback_1form_general(chart, mod: SymmetricModule, alpha: np.ndarray,
                            path: Callable[[float], np.ndarray], cfg,
                            eps: float = 1e-6) -> np.ndarray:
    """Integral over [0,1] of the equivariant 1-form of a constant
    Hom-valued alpha along an arbitrary path, differentiating the path by
    central differences.  Slow; cross-check only."""
    def integrand(s):
        p = path(s)
        dp = (path(s + eps) - path(s - eps)) / (2 * eps)
        v = chart.coord_pinv @ (np.linalg.inv(p) @ dp).flatten()
        xi = log_coords(chart, p)
        gen = chart.combo(mod.generators, xi) if mod.generators \
            else np.zeros((mod.dim, mod.dim))
        return _expm(gen) @ (alpha @ v)
    return integrate_01(cfg.quad, integrand)


def i1(sys: LocalRackSystem, module: SymmetricModule, beta, g: np.ndarray,
       cfg: IntegratorConfig) -> np.ndarray:
    """Path integral of a Leibniz 1-cocycle beta (valued in a symmetric
    module) along the canonical path to g; vanishes at the identity."""
    chart = sys.chart
    require_in_chart(chart, g)
    d = chart.g0_dim
    bmat = _beta_matrix(beta, module.dim, d)
    xi = log_coords(chart, g)
    if d == 0 or not np.abs(xi).max():
        return np.zeros(module.dim)
    if cfg.general_path:
        ell = chart.ad_of(xi)
        return _pullback_1form_general(chart, module, bmat,
                                       lambda s: _expm(s * ell), cfg)
    gen = chart.combo(module.generators, xi) if module.generators \
        else np.zeros((module.dim, module.dim))
    bx = bmat @ xi
    return integrate_01(cfg.quad, lambda s: _expm(s * gen) @ bx)


def i2(sys: LocalRackSystem, g: np.ndarray, h: np.ndarray,
       cfg: IntegratorConfig, omega: Cochain | None = None) -> np.ndarray:
    """The rack 2-cocycle integrating omega (defaults to the extension's):
    the equivariant form of i1(tau omega)(g) integrated along the canonical
    path to g |> h."""
    chart = sys.chart
    m, d = sys.center_dim, sys.g0_dim
    gh = conjugate(chart, g, h)
    if d == 0:
        return np.zeros(m)
    bmat = sys.tau_matrix if omega is None else _tau_matrix(omega)
    hom_value = i1(sys, sys.hom_module, bmat, g, cfg).reshape(m, d)
    eta = log_coords(chart, gh)
    v = hom_value @ eta
    if v.size == 0 or not np.abs(v).max():
        return np.zeros(m)
    if cfg.general_path:
        ell = chart.ad_of(eta)
        return _pullback_1form_general(chart, sys.center_module,
                                       hom_value, lambda t: _expm(t * ell), cfg)
    rho_eta = chart.rho_of(eta)
    return integrate_01(cfg.quad, lambda t: _expm(t * rho_eta) @ v)


# ---------------------------------------------------------------------------
# the local augmented Lie rack on G0 x a
# ---------------------------------------------------------------------------

def rack_product(sys: LocalRackSystem, u: LocalRackElement, v: LocalRackElement,
                 cfg: IntegratorConfig) -> LocalRackElement:
    """(g,a) |> (h,b) = (g |> h, g.b + i2(omega)(g,h))."""
    gh = conjugate(sys.chart, u.g, v.g)
    a = group_action(sys.chart, u.g) @ v.a + i2(sys, u.g, v.g, cfg)
    return LocalRackElement(gh, a)


def augmented_action(sys: LocalRackSystem, g: np.ndarray, v: LocalRackElement,
                     cfg: IntegratorConfig) -> LocalRackElement:
    """The local G0-action rho(g, (h,b)) = (g |> h, g.b + i2(omega)(g,h));
    (1,0) is a fixed point and rho(g, rho(h, w)) = rho(gh, w) in-chart."""
    gh = conjugate(sys.chart, g, v.g)
    a = group_action(sys.chart, g) @ v.a + i2(sys, g, v.g, cfg)
    return LocalRackElement(gh, a)


def ghost_identity_defect(sys: LocalRackSystem, g, h, k,
                          cfg: IntegratorConfig, omega: Cochain | None = None) -> np.ndarray:
    """g.f(h,k) - f(gh,k) + f(g,h|>k) for f = i2(omega); zero for cocycles.
    Note gh is the group product, not a conjugation."""
    gh = group_product(sys.chart, g, h)
    hk = conjugate(sys.chart, h, k)
    return (group_action(sys.chart, g) @ i2(sys, h, k, cfg, omega)
            - i2(sys, gh, k, cfg, omega) + i2(sys, g, hk, cfg, omega))


def delta2(sys: LocalRackSystem, f: Callable[[np.ndarray, np.ndarray], np.ndarray],
           x, y, cfg: IntegratorConfig) -> np.ndarray:
    """Differentiate a rack 2-cochain at the unit: central second mixed
    finite difference of (s,t) -> f(exp(s x), exp(t y)); O(fd_step^2)."""
    chart = sys.chart
    hstep = cfg.fd_step
    if not 0 < hstep < chart.chart_radius / 4:
        raise ValueError("fd_step must lie in (0, chart_radius/4)")
    x = np.asarray([float(c) for c in x])
    y = np.asarray([float(c) for c in y])

    def probe(s, t):
        return f(group_from_coords(chart, s * x), group_from_coords(chart, t * y))
    return (probe(hstep, hstep) - probe(hstep, -hstep)
            - probe(-hstep, hstep) + probe(-hstep, -hstep)) / (4.0 * hstep * hstep)


def tangent_bracket(sys: LocalRackSystem, u, v, cfg: IntegratorConfig) -> np.ndarray:
    """Recover the Leibniz bracket of g0 (+) a from the rack product by a
    second mixed finite difference at (1,0); coordinates are (g0, center)."""
    chart = sys.chart
    d, m = sys.g0_dim, sys.center_dim
    hstep = cfg.fd_step
    if not 0 < hstep < chart.chart_radius / 4:
        raise ValueError("fd_step must lie in (0, chart_radius/4)")
    u = np.asarray([float(c) for c in u])
    v = np.asarray([float(c) for c in v])
    if u.shape != (d + m,) or v.shape != (d + m,):
        raise ValueError("tangent vectors live in g0 (+) a")

    def elem(w, s):
        return LocalRackElement(group_from_coords(chart, s * w[:d]), s * w[d:])

    def probe(s, t):
        r = rack_product(sys, elem(u, s), elem(v, t), cfg)
        return r.g, r.a

    gpp, app = probe(hstep, hstep)
    gpm, apm = probe(hstep, -hstep)
    gmp, amp = probe(-hstep, hstep)
    gmm, amm = probe(-hstep, -hstep)
    scale = 4.0 * hstep * hstep
    gmix = (gpp - gpm - gmp + gmm) / scale
    amix = (app - apm - amp + amm) / scale
    # the group-part difference quotient lies in the realized g0 only up to
    # O(h^2), so project without the strict residual gate
    xi = chart.coord_pinv @ gmix.flatten()
    return np.concatenate([xi, amix])


# ---------------------------------------------------------------------------
# the Lie specialization: iota^2 and the local group product
# ---------------------------------------------------------------------------

_BERNOULLI_PLUS = None


def _bernoulli_plus_over_factorial(count: int):
    """Coefficients of x / (1 - e^(-x)) = sum b_k x^k (Bernoulli^+ / k!)."""
    global _BERNOULLI_PLUS
    if _BERNOULLI_PLUS is None or len(_BERNOULLI_PLUS) < count:
        from fractions import Fraction
        from math import comb, factorial
        bern = [Fraction(1)]
        for mdeg in range(1, count):
            s = sum(comb(mdeg + 1, j) * bern[j] for j in range(mdeg))
            bern.append(-s / (mdeg + 1))
        bern[1] = -bern[1]  # second-kind convention: B1 = +1/2
        _BERNOULLI_PLUS = [float(b / factorial(k)) for k, b in enumerate(bern)]
    return _BERNOULLI_PLUS[:count]


def _dexp_inv(ad: np.ndarray, vec: np.ndarray, terms: int = 24) -> np.ndarray:
    """(ad / (1 - e^(-ad)))  vec; exact cutoff for nilpotent ad."""
    coeffs = _bernoulli_plus_over_factorial(terms)
    acc = np.zeros_like(vec)
    p = vec.copy()
    for k, c in enumerate(coeffs):
        if c:
            acc = acc + c * p
        p = ad @ p
        if not np.abs(p).max():
            break
    return acc


def _dexp(ad: np.ndarray, vec: np.ndarray, terms: int = 24) -> np.ndarray:
    """((1 - e^(-ad)) / ad)  vec = sum (-ad)^k vec / (k+1)!."""
    from math import factorial
    acc = np.zeros_like(vec)
    p = vec.copy()
    for k in range(terms):
        acc = acc + p / factorial(k + 1)
        p = -(ad @ p)
        if not np.abs(p).max():
            break
    return acc


def lie_cocycle_defect(ext: CentralExtensionData, omega: Cochain):
    """Exact Chevalley-Eilenberg 3-cochain d omega (with the rho action);
    returns the max absolute entry as a Fraction, plus antisymmetry defect."""
    from fractions import Fraction
    g0, rep = ext.g0, ext.rep
    d = g0.dim
    anti = Fraction(0)
    for p in range(d):
        for q in range(d):
            for k, (a, b) in enumerate(zip(omega.at(p, q), omega.at(q, p))):
                anti = max(anti, abs(a + b))
    worst = Fraction(0)
    for p in range(d):
        for q in range(d):
            for r in range(d):
                ep, eq, er = (g0.basis_vector(i) for i in (p, q, r))
                val = list(rep.left_of(ep).mat_vec(omega.evaluate(eq, er)))
                for k, c in enumerate(rep.left_of(eq).mat_vec(omega.evaluate(ep, er))):
                    val[k] -= c
                for k, c in enumerate(rep.left_of(er).mat_vec(omega.evaluate(ep, eq))):
                    val[k] += c
                for k, c in enumerate(omega.evaluate(bracket(g0, ep, eq), er)):
                    val[k] -= c
                for k, c in enumerate(omega.evaluate(bracket(g0, ep, er), eq)):
                    val[k] += c
                for k, c in enumerate(omega.evaluate(bracket(g0, eq, er), ep)):
                    val[k] -= c
                worst = max(worst, max((abs(c) for c in val), default=Fraction(0)))
    return worst, anti


def iota2(sys: LocalRackSystem, g: np.ndarray, h: np.ndarray,
          cfg: IntegratorConfig, omega: Cochain | None = None) -> np.ndarray:
    """Group-cocycle integral of an anti-symmetric Lie cocycle over the
    2-chain gamma_{g,h}(t,s) = exp(t log(g exp(s log h))), whose boundary is
    gamma_g - gamma_{gh} + g gamma_h."""
    chart = sys.chart
    m = sys.center_dim
    omega = sys.ext.omega if omega is None else omega
    cocycle, anti = lie_cocycle_defect(sys.ext, omega)
    if anti != 0:
        raise NotLieCocycleError("omega is not anti-symmetric")
    if cocycle != 0:
        raise NotLieCocycleError("omega fails the Lie cocycle identity")
    require_in_chart(chart, g)
    require_in_chart(chart, h)
    require_in_chart(chart, g @ h, "group product")
    if sys.g0_dim == 0:
        return np.zeros(m)
    omega_np = omega.to_numpy()  # (d, d, m)
    big_h = _logm(h)
    eta_h = log_coords(chart, h)

    nodes, weights = cfg.quad.nodes, cfg.quad.weights
    total = np.zeros(m)
    for s, ws in zip(nodes, weights):
        a_s = log_coords(chart, g @ _expm(s * big_h))
        ad_a = chart.ad0_of(a_s)
        aprime = _dexp_inv(ad_a, eta_h)
        for t, wt in zip(nodes, weights):
            w_ts = _dexp(t * ad_a, t * aprime)
            val = np.einsum("p,q,pqk->k", a_s, w_ts, omega_np)
            total = total + ws * wt * (_expm(chart.rho_of(t * a_s)) @ val)
    return total


def lie_group_product(sys: LocalRackSystem, u: LocalRackElement, v: LocalRackElement,
                      cfg: IntegratorConfig, omega: Cochain | None = None) -> LocalRackElement:
    """(g,a)(h,b) = (gh, a + b + iota2(omega)(g,h)), the local Lie group
    structure carried by G0 x a when the input algebra is Lie."""
    gh = group_product(sys.chart, u.g, v.g)
    return LocalRackElement(gh, u.a + v.a + iota2(sys, u.g, v.g, cfg, omega))


def lie_group_inverse(sys: LocalRackSystem, u: LocalRackElement,
                      cfg: IntegratorConfig, omega: Cochain | None = None) -> LocalRackElement:
    ginv = np.linalg.inv(u.g)
    require_in_chart(sys.chart, ginv, "group inverse")
    return LocalRackElement(ginv, -u.a - iota2(sys, u.g, ginv, cfg, omega))
