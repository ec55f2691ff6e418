"""Proximal and smooth oracles for the benchmark objectives.

Proximal oracles expose ``value(v)`` and ``prox(v, t)`` with
prox_t(v) = argmin_u value(u) + ||u - v||^2 / (2 t); a step of t = 0 is the
identity. Conjugate proxes are always derived through the Moreau
decomposition (``moreau_conjugate_prox``) rather than hand-coded per
function. Smooth oracles expose ``value``, ``grad`` and a cached gradient
Lipschitz bound ``lipschitz()``.
"""

from __future__ import annotations

import numpy as np
from scipy.special import expit

from .errors import DataError, DimensionError, ParameterError
from .linops import DenseOperator, estimate_operator_norm


def _check_step(t, lam=0.0):
    if t < 0 or lam < 0:
        raise ParameterError("prox step and regularization weight must be >= 0")


def prox_l1(v, t, lam):
    """Soft thresholding: sign(v_i) * max(|v_i| - t*lam, 0)."""
    _check_step(t, lam)
    return np.sign(v) * np.maximum(np.abs(v) - t * lam, 0.0)


def prox_sq_l2(v, t, weight=1.0, b=None):
    """Prox of weight/2 * ||. - b||^2, closed form (v + t*weight*b) / (1 + t*weight)."""
    _check_step(t)
    if weight <= 0:
        raise ParameterError("weight must be positive")
    if b is None:
        return v / (1.0 + t * weight)
    return (v + t * weight * b) / (1.0 + t * weight)


def prox_group_l21(v, t, lam, n_pixels):
    """Pixelwise shrinkage of a 2-channel field toward the group-l21 ball.

    The field stacks n_pixels horizontal components before n_pixels
    vertical ones; pixel p pairs (v[p], v[n_pixels + p]). Zero-norm pixels
    map to zero.
    """
    _check_step(t, lam)
    if v.shape != (2 * n_pixels,):
        raise DimensionError(
            f"group_l21 field must have length {2 * n_pixels}, got {v.shape}"
        )
    vh = v[:n_pixels]
    vv = v[n_pixels:]
    norms = np.hypot(vh, vv)
    threshold = t * lam
    scale = np.zeros_like(norms)
    # dividing only where the norm exceeds the threshold keeps the ratio
    # in [0, 1) and avoids overflow on subnormal pixel norms
    keep = norms > threshold
    scale[keep] = 1.0 - threshold / norms[keep]
    return np.concatenate([vh * scale, vv * scale])


class ProxOracle:
    """Base class: a convex function with an easy proximal map."""

    kind = "abstract"

    def value(self, v):
        raise NotImplementedError

    def prox(self, v, t):
        raise NotImplementedError


class ZeroProx(ProxOracle):
    """The zero function; its prox is the identity for every step."""

    kind = "zero"

    def value(self, v):
        return 0.0

    def prox(self, v, t):
        _check_step(t)
        return v


class L1Prox(ProxOracle):
    """lam * ||.||_1 with the soft-thresholding prox."""

    kind = "l1"

    def __init__(self, lam):
        if lam < 0:
            raise ParameterError("l1 weight must be >= 0")
        self.lam = lam

    def value(self, v):
        return self.lam * float(np.abs(v).sum())

    def prox(self, v, t):
        return prox_l1(v, t, self.lam)


class GroupL21Prox(ProxOracle):
    """Isotropic group penalty lam * sum_p ||(v_h[p], v_v[p])||_2."""

    kind = "group_l21"

    def __init__(self, lam, n_pixels):
        if lam < 0:
            raise ParameterError("group_l21 weight must be >= 0")
        self.lam = lam
        self.n_pixels = n_pixels

    def value(self, v):
        if v.shape != (2 * self.n_pixels,):
            raise DimensionError("group_l21 field has wrong length")
        return self.lam * float(np.hypot(v[: self.n_pixels], v[self.n_pixels :]).sum())

    def prox(self, v, t):
        return prox_group_l21(v, t, self.lam, self.n_pixels)


class SquaredL2Prox(ProxOracle):
    """weight/2 * ||. - offset||^2; offset None means the origin."""

    def __init__(self, weight=1.0, offset=None):
        if weight <= 0:
            raise ParameterError("weight must be positive")
        self.weight = weight
        self.offset = None if offset is None else np.asarray(offset, dtype=np.float64)

    @property
    def kind(self):
        return "sq_l2_translated" if self.offset is not None else "scaled_sq_l2"

    def value(self, v):
        d = v if self.offset is None else v - self.offset
        return 0.5 * self.weight * float(d @ d)

    def prox(self, v, t):
        return prox_sq_l2(v, t, self.weight, self.offset)


def moreau_conjugate_prox(g, v, sigma):
    """prox of sigma * g^* via Moreau: v - sigma * prox_{g/sigma}(v / sigma)."""
    if sigma <= 0:
        raise ParameterError("sigma must be positive")
    return v - sigma * g.prox(v / sigma, 1.0 / sigma)


def _as_operator(A):
    if isinstance(A, np.ndarray):
        return DenseOperator(A)
    return A


class SmoothOracle:
    """Base class: a convex differentiable function with known smoothness."""

    kind = "abstract"

    def value(self, x):
        raise NotImplementedError

    def grad(self, x):
        raise NotImplementedError

    def lipschitz(self):
        """A bound on the gradient Lipschitz constant (0 for constant gradients)."""
        raise NotImplementedError


class ZeroSmooth(SmoothOracle):
    """h = 0."""

    kind = "zero"

    def value(self, x):
        return 0.0

    def grad(self, x):
        return np.zeros_like(x)

    def lipschitz(self):
        return 0.0


class LeastSquares(SmoothOracle):
    """scale * 1/2 * ||A x - b||^2 with gradient scale * A^T (A x - b).

    The smoothness bound scale * ||A||^2 is estimated by power iteration on
    first use and cached; pass ``op_norm`` to skip the estimation.
    """

    kind = "least_squares"

    def __init__(self, A, b, scale=1.0, op_norm=None):
        self.A = _as_operator(A)
        self.b = np.asarray(b, dtype=np.float64)
        if self.b.shape != (self.A.shape.codomain_dim,):
            raise DimensionError("response length does not match the design matrix")
        self.scale = scale
        self._op_norm = op_norm

    def value(self, x):
        r = self.A.matvec(x) - self.b
        return 0.5 * self.scale * float(r @ r)

    def grad(self, x):
        return self.scale * self.A.rmatvec(self.A.matvec(x) - self.b)

    def lipschitz(self):
        if self._op_norm is None:
            self._op_norm = estimate_operator_norm(self.A)
        return self.scale * self._op_norm**2


class MaskedLeastSquares(SmoothOracle):
    """1/2 * ||M .* (x - b)||^2 for a binary mask M; the gradient is M .* (x - b)."""

    kind = "masked_least_squares"

    def __init__(self, mask, b):
        mask = np.asarray(mask, dtype=np.float64)
        if not np.all((mask == 0.0) | (mask == 1.0)):
            raise DataError("mask entries must be 0 or 1")
        self.mask = mask
        self.b = np.asarray(b, dtype=np.float64)
        if self.mask.shape != self.b.shape:
            raise DimensionError("mask and reference image differ in shape")

    def value(self, x):
        r = self.mask * (x - self.b)
        return 0.5 * float(r @ r)

    def grad(self, x):
        return self.mask * (x - self.b)

    def lipschitz(self):
        return 1.0


class Logistic(SmoothOracle):
    """sum_i log(1 + exp(-b_i a_i^T x)) over rows a_i of A and labels b_i.

    Values use the numerically stable log-sum-exp form; no overflow occurs
    for arbitrarily large margins. The gradient is -A^T (b .* s) with
    s_i = 1 / (1 + exp(b_i a_i^T x)), and the smoothness bound is
    ||A||^2 / 4.
    """

    kind = "logistic"

    def __init__(self, A, labels, op_norm=None):
        self.A = _as_operator(A)
        labels = np.asarray(labels, dtype=np.float64)
        if not np.all(np.isin(labels, (-1.0, 1.0))):
            raise DataError("logistic labels must be -1 or +1")
        if labels.shape != (self.A.shape.codomain_dim,):
            raise DimensionError("label count does not match the design matrix")
        self.labels = labels
        self._op_norm = op_norm

    def value(self, x):
        margins = self.labels * self.A.matvec(x)
        return float(np.logaddexp(0.0, -margins).sum())

    def grad(self, x):
        margins = self.labels * self.A.matvec(x)
        s = expit(-margins)
        return -self.A.rmatvec(self.labels * s)

    def lipschitz(self):
        if self._op_norm is None:
            self._op_norm = estimate_operator_norm(self.A)
        return 0.25 * self._op_norm**2


class QuadraticRidge(SmoothOracle):
    """1/2 * ||A x - b||^2 + ridge/2 * ||x||^2; strongly convex with modulus >= ridge."""

    kind = "quadratic_ridge"

    def __init__(self, A, b, ridge, op_norm=None):
        if ridge <= 0:
            raise ParameterError("ridge must be positive")
        self.A = _as_operator(A)
        self.b = np.asarray(b, dtype=np.float64)
        self.ridge = ridge
        self._op_norm = op_norm

    def value(self, x):
        r = self.A.matvec(x) - self.b
        return 0.5 * float(r @ r) + 0.5 * self.ridge * float(x @ x)

    def grad(self, x):
        return self.A.rmatvec(self.A.matvec(x) - self.b) + self.ridge * x

    def lipschitz(self):
        if self._op_norm is None:
            self._op_norm = estimate_operator_norm(self.A)
        return self._op_norm**2 + self.ridge


class SumSmooth(SmoothOracle):
    """Sum of smooth oracles."""

    kind = "sum"

    def __init__(self, parts):
        self.parts = list(parts)

    def value(self, x):
        return sum(p.value(x) for p in self.parts)

    def grad(self, x):
        g = np.zeros_like(x)
        for p in self.parts:
            g = g + p.grad(x)
        return g

    def lipschitz(self):
        return sum(p.lipschitz() for p in self.parts)
