"""Independent oracle implementations used by the tests.

Everything here is deliberately written straight-line from the math, with
no calls into the package's own operators, proxes or solvers, so that
agreement between the two is meaningful.
"""

import numpy as np


def materialize(op):
    """Dense matrix of an operator, one basis vector at a time."""
    n = op.shape.domain_dim
    m = op.shape.codomain_dim
    out = np.zeros((m, n))
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        out[:, i] = op.matvec(e)
    return out


def central_difference_grad(fn, x, h=1e-6):
    g = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (fn(x + e) - fn(x - e)) / (2.0 * h)
    return g


def golden_section(fn, lo, hi, tol=1e-12, max_iter=300):
    inv = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = fn(d)
    return 0.5 * (a + b)


def gradient_descent_prox(value_fn, grad_fn, v, t, iters=5000):
    """Minimize value_fn(u) + ||u - v||^2 / (2t) by plain gradient descent."""
    u = v.copy()
    step = t / (1.0 + t) * 0.9
    for _ in range(iters):
        u = u - step * (grad_fn(u) + (u - v) / t)
    return u


# ---------------------------------------------------------------------------
# straight-line transcriptions of the seven schemes on the 2-variable toy:
# f = lam |.|_1, g = 0.5 ||. - b||^2, K = I, h = 0


def _soft(v, t):
    return np.sign(v) * np.maximum(np.abs(v) - t, 0.0)


def _proxg(v, t, b):
    return (v + t * b) / (1.0 + t)


def pgrpda_toy(x0, y0, b, lam, tau0, psi, mu, mu_prime, beta, iters):
    x, z, y = x0.copy(), x0.copy(), y0.copy()
    tau = tau0
    w = np.zeros_like(y0)
    for _ in range(iters):
        z = ((psi - 1.0) * x + z) / psi
        x_new = _soft(z - tau * y, tau * lam)
        ndx = np.linalg.norm(x_new - x)
        cands = [tau]
        if ndx > 0:
            cands.append(mu * ndx / (np.sqrt(beta) * ndx))  # ||K dx|| = ||dx||
        tau = min(cands)
        sigma = beta * tau
        w = _proxg(y / sigma + x_new, 1.0 / sigma, b)
        y = y + sigma * (x_new - w)
        x = x_new
    return x, y, tau, w


def aegrpda_toy(x0, y0, b, lam, tau0, psi, beta, theta0, tau_max, iters):
    rho = 1.0 / psi + 1.0 / psi**2
    x, z, y = x0.copy(), x0.copy(), y0.copy()
    tau, theta = tau0, theta0
    w = np.zeros_like(y0)
    for _ in range(iters):
        z = ((psi - 1.0) * x + z) / psi
        x_new = _soft(z - tau * y, tau * lam)
        ndx = np.linalg.norm(x_new - x)
        if ndx > 0:
            mid = psi * theta / (9.0 * (0.0 + beta * psi * 1.0)) / tau
            tau_new = min(rho * tau, mid, tau_max)
        else:
            tau_new = min(rho * tau, tau_max)
        theta = psi * tau_new / tau
        tau = tau_new
        sigma = beta * tau
        w = _proxg(y / sigma + x_new, 1.0 / sigma, b)
        y = y + sigma * (x_new - w)
        x = x_new
    return x, y, tau, theta, w


def egrpda_toy(x0, y0, b, lam, tau, sigma, psi, iters):
    x, z, y = x0.copy(), x0.copy(), y0.copy()
    w = np.zeros_like(y0)
    for _ in range(iters):
        z = ((psi - 1.0) * x + z) / psi
        x = _soft(z - tau * y, tau * lam)
        w = _proxg(y / sigma + x, 1.0 / sigma, b)
        y = y + sigma * (x - w)
    return x, y, w


def grpda_toy(x0, y0, b, lam, tau, sigma, psi, iters):
    return egrpda_toy(x0, y0, b, lam, tau, sigma, psi, iters)


def condat_vu_toy(x0, y0, b, lam, tau, sigma, iters):
    x, y = x0.copy(), y0.copy()
    w = np.zeros_like(y0)
    for _ in range(iters):
        x_new = _soft(x - tau * y, tau * lam)
        xt = 2.0 * x_new - x
        w = _proxg(y / sigma + xt, 1.0 / sigma, b)
        y = y + sigma * (xt - w)
        x = x_new
    return x, y, w


def agraal_toy(x0, y0, b, lam_reg, lam0, psi, theta0, lam_max, iters):
    rho = 1.0 / psi + 1.0 / psi**2
    x, y = x0.copy(), y0.copy()
    xb, yb = x0.copy(), y0.copy()
    x_prev, y_prev = x0.copy(), y0.copy()
    Fx_prev, Fy_prev = y0.copy(), -x0.copy()
    lam, theta = lam0, theta0
    w = np.zeros_like(y0)
    for _ in range(iters):
        Fx, Fy = y.copy(), -x.copy()
        du2 = np.linalg.norm(x - x_prev) ** 2 + np.linalg.norm(y - y_prev) ** 2
        dF2 = np.linalg.norm(Fx - Fx_prev) ** 2 + np.linalg.norm(Fy - Fy_prev) ** 2
        cands = [rho * lam, lam_max]
        if du2 > 0 and dF2 > 0:
            cands.append(psi * theta / (4.0 * lam) * du2 / dF2)
        lam_new = min(cands)
        xb = ((psi - 1.0) * x + xb) / psi
        x_next = _soft(xb - lam_new * Fx, lam_new * lam_reg)
        yb = ((psi - 1.0) * y + yb) / psi
        w = _proxg(yb / lam_new + x, 1.0 / lam_new, b)
        y_next = yb + lam_new * (x - w)
        x_prev, y_prev = x, y
        Fx_prev, Fy_prev = Fx, Fy
        theta = psi * lam_new / lam
        lam = lam_new
        x, y = x_next, y_next
    return x, y, lam, w
