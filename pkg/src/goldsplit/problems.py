"""Benchmark instance generators, LIBSVM ingestion and instance manifests.

Generators are deterministic in their seed: the same parameters and seed
reproduce the instance bit-for-bit within one build. Randomness comes from
numpy's default PCG64 generator seeded with the 64-bit ``seed`` argument.

Manifest layout: ``manifest.json`` records the generation spec, seed,
dimensions, regularization weights and the provenance of any stored
reference optimum; array payloads live in flat little-endian binary
sidecars (float64, row-major; CSR index payloads are int64).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .errors import (
    ContractError,
    DataError,
    DimensionError,
    ParameterError,
    ParseError,
)
from .linops import (
    CsrOperator,
    DenseOperator,
    DiscreteGradient2D,
    FirstDifference,
    GridIncidence,
    IdentityOperator,
    LinearOperator,
    Shape,
    graph_laplacian,
)
from .prox import (
    GroupL21Prox,
    L1Prox,
    LeastSquares,
    Logistic,
    MaskedLeastSquares,
    QuadraticRidge,
    SquaredL2Prox,
    ZeroProx,
    ZeroSmooth,
)

FAMILIES = (
    "lasso",
    "fused_lasso",
    "logistic1",
    "logistic2",
    "graphnet",
    "inpainting",
    "strongly_convex",
)


@dataclass
class ProblemInstance:
    """The quadruple (f, g, K, h) plus optional ground truth and metadata."""

    f: object
    g: object
    K: LinearOperator
    h: object
    x_true: np.ndarray | None = None
    F_star: float | None = None
    F_star_provenance: str | None = None
    name: str = ""
    dims: dict = field(default_factory=dict)
    seed: int | None = None
    meta: dict = field(default_factory=dict)


@dataclass
class GenSpec:
    """Family selector plus family-specific generation parameters."""

    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0


def gen_lasso(m, n, s, scheme="gaussian", q=0.5, lam=0.1, noise_sd=0.1, seed=0):
    """l1-regularized least squares with a planted s-sparse signal.

    ``scheme`` selects the design matrix: ``gaussian`` draws iid standard
    normal entries; ``correlated`` builds columns K_1 = B_1 / sqrt(1 - q^2),
    K_j = q K_{j-1} + B_j from iid normal B, giving neighbouring columns
    correlation q. Nonzero signal entries are uniform on [-10, 10]; the
    response is K x_true plus N(0, noise_sd^2) noise.
    """
    if s > n or s < 0:
        raise ParameterError(f"sparsity s={s} must lie in [0, n={n}]")
    if scheme not in ("gaussian", "correlated"):
        raise ParameterError(f"unknown lasso scheme {scheme!r}")
    if scheme == "correlated" and not (0.0 < q < 1.0):
        raise ParameterError(f"correlated scheme needs q in (0, 1), got {q}")
    rng = np.random.default_rng(seed)
    if scheme == "correlated":
        B = rng.standard_normal((m, n))
        K = np.empty((m, n))
        K[:, 0] = B[:, 0] / np.sqrt(1.0 - q * q)
        for j in range(1, n):
            K[:, j] = q * K[:, j - 1] + B[:, j]
    else:
        K = rng.standard_normal((m, n))
    x_true = np.zeros(n)
    if s > 0:
        support = rng.choice(n, size=s, replace=False)
        x_true[support] = rng.uniform(-10.0, 10.0, size=s)
    noise = rng.normal(0.0, noise_sd, size=m)
    b = K @ x_true + noise
    return ProblemInstance(
        f=L1Prox(lam),
        g=SquaredL2Prox(1.0, b),
        K=DenseOperator(K),
        h=ZeroSmooth(),
        x_true=x_true,
        name=f"lasso-{scheme}-m{m}-n{n}-s{s}-seed{seed}",
        dims={"m": m, "n": n, "s": s},
        seed=seed,
        meta={"scheme": scheme, "q": q, "lam": lam, "noise_sd": noise_sd, "b": b},
    )


def gen_fused_lasso(m, n, lam1=0.001, lam2=0.03, noise_sd=0.01, seed=0):
    """l1 + total-variation regularized regression on a dense Gaussian signal.

    Design-matrix entries and the response noise share the N(0, 0.01^2)
    scale; the signal is dense standard normal (no planted sparsity).
    """
    rng = np.random.default_rng(seed)
    A = rng.normal(0.0, noise_sd, size=(m, n))
    x_true = rng.standard_normal(n)
    noise = rng.normal(0.0, noise_sd, size=m)
    b = A @ x_true + noise
    return ProblemInstance(
        f=L1Prox(lam1),
        g=L1Prox(lam2),
        K=FirstDifference(n),
        h=LeastSquares(A, b),
        x_true=x_true,
        name=f"fused_lasso-m{m}-n{n}-seed{seed}",
        dims={"m": m, "n": n},
        seed=seed,
        meta={"lam1": lam1, "lam2": lam2, "noise_sd": noise_sd, "A": A, "b": b},
    )


def build_logistic(A, labels, setting=1, lam1=1.0, lam2=150.0):
    """Regularized logistic regression from a design matrix and +-1 labels.

    Setting 1 pairs the plain l1 penalty lam ||x||_1 with K = I, where
    lam = 0.005 ||A^T labels||_inf. Setting 2 uses lam1 ||x||_1 +
    lam2 ||D x||_1 with the first-difference operator as K.
    """
    op = A if isinstance(A, LinearOperator) else DenseOperator(np.asarray(A, float))
    labels = np.asarray(labels, dtype=np.float64)
    h = Logistic(op, labels)
    n = op.shape.domain_dim
    if setting == 1:
        lam = 0.005 * float(np.max(np.abs(op.rmatvec(labels))))
        f = ZeroProx()
        g = L1Prox(lam)
        K = IdentityOperator(n)
        meta = {"setting": 1, "lam": lam}
    elif setting == 2:
        f = L1Prox(lam1)
        g = L1Prox(lam2)
        K = FirstDifference(n)
        meta = {"setting": 2, "lam1": lam1, "lam2": lam2}
    else:
        raise ParameterError(f"setting must be 1 or 2, got {setting}")
    return ProblemInstance(
        f=f,
        g=g,
        K=K,
        h=h,
        name=f"logistic{setting}-m{op.shape.codomain_dim}-n{n}",
        dims={"m": op.shape.codomain_dim, "n": n},
        meta=meta,
    )


def parse_libsvm(path, n_features=None):
    """Read a sparse design matrix and labels from LIBSVM text.

    Each line is ``label idx:val idx:val ...`` with 1-based, strictly
    positive feature indices. The column count is the largest index seen
    unless ``n_features`` overrides it. Labels are remapped to {-1, +1}:
    values already in that set pass through, otherwise the smaller of two
    distinct values maps to -1. Malformed lines raise ParseError with
    their line number.
    """
    rows, cols, vals, raw_labels = [], [], [], []
    max_col = 0
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            tokens = line.split()
            if not tokens:
                continue
            try:
                label = float(tokens[0])
            except ValueError:
                raise ParseError(f"bad label {tokens[0]!r}", lineno) from None
            row = len(raw_labels)
            raw_labels.append(label)
            for tok in tokens[1:]:
                idx, sep, val = tok.partition(":")
                if not sep:
                    raise ParseError(f"missing ':' in {tok!r}", lineno)
                try:
                    col = int(idx)
                    value = float(val)
                except ValueError:
                    raise ParseError(f"bad feature entry {tok!r}", lineno) from None
                if col < 1:
                    raise ParseError(f"indices are 1-based, got {col}", lineno)
                max_col = max(max_col, col)
                rows.append(row)
                cols.append(col - 1)
                vals.append(value)
    m = len(raw_labels)
    n = max_col if n_features is None else n_features
    if n_features is not None and max_col > n_features:
        raise ParseError(f"index {max_col} exceeds n_features={n_features}")
    labels = _remap_labels(np.asarray(raw_labels))
    mat = sp.coo_matrix(
        (np.asarray(vals, dtype=np.float64), (rows, cols)), shape=(m, n)
    ).tocsr()
    return CsrOperator(mat), labels


def _remap_labels(raw):
    if raw.size == 0:
        return raw
    uniq = np.unique(raw)
    if np.all(np.isin(uniq, (-1.0, 1.0))):
        return raw.astype(np.float64)
    if uniq.size == 2:
        out = np.where(raw == uniq[0], -1.0, 1.0)
        return out
    raise DataError(f"cannot map labels {uniq.tolist()} onto -1/+1")


def write_libsvm(path, op, labels):
    """Write a CSR design matrix and labels in LIBSVM text (1-based indices)."""
    labels = np.asarray(labels)
    if labels.shape != (op.shape.codomain_dim,):
        raise DimensionError("label count does not match the matrix")
    with open(path, "w") as fh:
        indptr, indices, data = op.indptr, op.indices, op.data
        for i, lab in enumerate(labels):
            parts = [repr(float(lab))]
            for k in range(indptr[i], indptr[i + 1]):
                parts.append(f"{indices[k] + 1}:{repr(float(data[k]))}")
            fh.write(" ".join(parts) + "\n")


def conjugate_gradient_solve(op, rhs, tol=1e-8, max_iter=1000, check_symmetry=True):
    """Conjugate gradients for a symmetric positive semidefinite system.

    Returns x with ||op(x) - rhs|| <= tol ||rhs|| or after ``max_iter``
    sweeps. The symmetry contract is probed on one seeded random pair and
    a violation raises ContractError.
    """
    if tol <= 0:
        raise ParameterError("tol must be positive")
    rhs = np.asarray(rhs, dtype=np.float64)
    if check_symmetry:
        probe = np.random.default_rng(0)
        u = probe.standard_normal(rhs.shape[0])
        v = probe.standard_normal(rhs.shape[0])
        lhs = float(op.matvec(u) @ v)
        rht = float(u @ op.matvec(v))
        if abs(lhs - rht) > 1e-8 * (1.0 + abs(lhs)):
            raise ContractError("operator is not symmetric; CG needs op = op^T")
    x = np.zeros_like(rhs)
    r = rhs.copy()
    rhs_norm = float(np.linalg.norm(rhs))
    if rhs_norm == 0.0:
        return x
    p = r.copy()
    rs = float(r @ r)
    for _ in range(max_iter):
        Ap = op.matvec(p)
        denom = float(p @ Ap)
        if denom <= 0.0:
            break
        alpha = rs / denom
        x = x + alpha * p
        r = r - alpha * Ap
        rs_new = float(r @ r)
        if np.sqrt(rs_new) <= tol * rhs_norm:
            break
        p = r + (rs_new / rs) * p
        rs = rs_new
    return x


class _TikhonovSystem(LinearOperator):
    """The shifted Laplacian system x -> x + alpha * W x used for smoothing."""

    kind = "tikhonov_system"

    def __init__(self, alpha, laplacian):
        self.alpha = alpha
        self.W = laplacian
        n = laplacian.shape.domain_dim
        super().__init__(Shape(n, n))

    def matvec(self, x):
        return x + self.alpha * self.W.matvec(x)

    def rmatvec(self, y):
        return self.matvec(y)


def gen_graphnet(
    n1,
    n2,
    m,
    alpha=2.0,
    sparsity_fraction=0.05,
    lam1=6.64e-6,
    lam2=1e-6,
    noise_sd=0.01,
    seed=0,
):
    """Smooth-plus-sparse recovery on an n1 x n2 grid graph.

    A standard normal node signal is low-pass filtered by solving
    (I + alpha W) x_smth = x_0 with conjugate gradients (W the grid
    Laplacian, tol 1e-8, at most 1000 sweeps); the ground truth keeps the
    entries whose magnitude reaches the k-th largest, k = floor(fraction
    * n). Ties keep every entry at the threshold, which can exceed k.
    Measurements are Gaussian with variance 1/m per entry.
    """
    if not (0.0 < sparsity_fraction <= 1.0):
        raise ParameterError("sparsity_fraction must lie in (0, 1]")
    n = n1 * n2
    k = int(np.floor(sparsity_fraction * n))
    if k == 0:
        raise ParameterError("sparsity_fraction keeps zero entries")
    rng = np.random.default_rng(seed)
    D = GridIncidence(n1, n2)
    W = graph_laplacian(D)
    x0 = rng.standard_normal(n)
    x_smth = conjugate_gradient_solve(
        _TikhonovSystem(alpha, W), x0, tol=1e-8, max_iter=1000, check_symmetry=False
    )
    magnitudes = np.abs(x_smth)
    threshold = np.partition(magnitudes, n - k)[n - k]
    x_true = np.where(magnitudes >= threshold, x_smth, 0.0)
    A = rng.normal(0.0, np.sqrt(1.0 / m), size=(m, n))
    noise = rng.normal(0.0, noise_sd, size=m)
    b = A @ x_true + noise
    return ProblemInstance(
        f=L1Prox(lam1),
        g=SquaredL2Prox(weight=lam2),
        K=D,
        h=LeastSquares(A, b, scale=1.0 / m),
        x_true=x_true,
        name=f"graphnet-{n1}x{n2}-m{m}-seed{seed}",
        dims={"n1": n1, "n2": n2, "m": m, "n": n},
        seed=seed,
        meta={
            "alpha": alpha,
            "sparsity_fraction": sparsity_fraction,
            "lam1": lam1,
            "lam2": lam2,
            "noise_sd": noise_sd,
            "A": A,
            "b": b,
            "x_smth": x_smth,
        },
    )


def gen_inpainting(image, missing_fraction=0.3, lam=1e-2, seed=0):
    """Isotropic-TV inpainting of an image with pixels in [0, 1].

    Exactly floor(fraction * pixels) mask entries are zeroed at positions
    sampled uniformly without replacement; the observation is the masked
    image and the data term only sees known pixels.
    """
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2:
        raise DimensionError("inpainting expects a 2-D image")
    if image.min() < 0.0 or image.max() > 1.0:
        raise DataError("pixel values must lie in [0, 1]")
    if not (0.0 <= missing_fraction < 1.0):
        raise ParameterError("missing_fraction must lie in [0, 1)")
    rows, cols = image.shape
    p = rows * cols
    n_missing = int(np.floor(missing_fraction * p))
    rng = np.random.default_rng(seed)
    mask = np.ones(p)
    if n_missing > 0:
        holes = rng.choice(p, size=n_missing, replace=False)
        mask[holes] = 0.0
    x_true = image.ravel().copy()
    b = mask * x_true
    return ProblemInstance(
        f=ZeroProx(),
        g=GroupL21Prox(lam, p),
        K=DiscreteGradient2D(rows, cols),
        h=MaskedLeastSquares(mask, b),
        x_true=x_true,
        name=f"inpainting-{rows}x{cols}-seed{seed}",
        dims={"rows": rows, "cols": cols},
        seed=seed,
        meta={
            "missing_fraction": missing_fraction,
            "lam": lam,
            "mask": mask,
            "damaged": b,
        },
    )


def gen_strongly_convex(m, n, ridge=1.0, lam=0.1, noise_sd=0.1, seed=0):
    """Instance whose smooth part and dual-side quadratic are strongly convex.

    h gains an explicit ridge (modulus >= ridge) and g is a unit-weight
    translated quadratic, whose conjugate is 1-strongly convex. K is a
    dense square Gaussian. The minimizer is unique; no ground truth is
    stored (compute one with a long reference run).
    """
    if m < n:
        warnings.warn("m < n: the design may be rank deficient", stacklevel=2)
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((m, n))
    x_sig = rng.standard_normal(n)
    b = A @ x_sig + rng.normal(0.0, noise_sd, size=m)
    K = rng.standard_normal((n, n))
    b_dual = K @ x_sig + rng.normal(0.0, noise_sd, size=n)
    return ProblemInstance(
        f=L1Prox(lam),
        g=SquaredL2Prox(1.0, b_dual),
        K=DenseOperator(K),
        h=QuadraticRidge(A, b, ridge),
        name=f"strongly_convex-m{m}-n{n}-seed{seed}",
        dims={"m": m, "n": n},
        seed=seed,
        meta={"ridge": ridge, "lam": lam, "noise_sd": noise_sd, "A": A, "b": b,
              "b_dual": b_dual},
    )


def synthetic_blocks_image(rows=32, cols=32):
    """Deterministic piecewise-constant test image with values in [0, 1]."""
    img = np.full((rows, cols), 0.2)
    img[rows // 8 : rows // 2, cols // 8 : cols // 2] = 0.8
    img[rows // 2 : 7 * rows // 8, cols // 2 : 7 * cols // 8] = 0.5
    img[rows // 8 : 3 * rows // 8, 5 * cols // 8 : 7 * cols // 8] = 1.0
    return img


def generate_instance(spec: GenSpec):
    """Dispatch a GenSpec to its family generator."""
    family = spec.family
    params = dict(spec.params)
    if family == "lasso":
        return gen_lasso(seed=spec.seed, **params)
    if family == "fused_lasso":
        return gen_fused_lasso(seed=spec.seed, **params)
    if family == "graphnet":
        return gen_graphnet(seed=spec.seed, **params)
    if family == "inpainting":
        image = params.pop("image", None)
        if image is None:
            rows = params.pop("rows", 32)
            cols = params.pop("cols", 32)
            image = synthetic_blocks_image(rows, cols)
        return gen_inpainting(image, seed=spec.seed, **params)
    if family == "strongly_convex":
        return gen_strongly_convex(seed=spec.seed, **params)
    raise ParameterError(f"unknown or non-generable family {family!r}")


# ---------------------------------------------------------------------------
# manifest and payload serialization


def _write_payload(directory, stem, array):
    array = np.asarray(array)
    if array.dtype.kind == "i":
        data = array.astype("<i8")
        dtype = "int64"
    else:
        data = array.astype("<f8")
        dtype = "float64"
    fname = f"{stem}.bin"
    data.tofile(directory / fname)
    return {"file": fname, "dtype": dtype, "shape": list(array.shape)}


def _read_payload(directory, entry):
    dtype = "<i8" if entry["dtype"] == "int64" else "<f8"
    arr = np.fromfile(directory / entry["file"], dtype=dtype)
    return arr.reshape(entry["shape"]).astype(
        np.int64 if entry["dtype"] == "int64" else np.float64
    )


_PAYLOAD_KEYS = {
    "lasso": ("b", "x_true"),
    "fused_lasso": ("A", "b", "x_true"),
    "graphnet": ("A", "b", "x_true"),
    "inpainting": ("x_true", "mask", "damaged"),
    "strongly_convex": ("A", "b", "b_dual"),
}


def save_instance(directory, problem, spec):
    """Write manifest.json plus binary payloads; returns the manifest path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    family = spec.family
    payloads = {}
    sources = {"x_true": problem.x_true, **problem.meta}
    for key in _PAYLOAD_KEYS.get(family, ()):
        if sources.get(key) is not None:
            payloads[key] = _write_payload(directory, key, sources[key])
    if family == "lasso":
        payloads["K"] = _write_payload(directory, "K", problem.K.matrix)
    elif family == "strongly_convex":
        payloads["K"] = _write_payload(directory, "K", problem.K.matrix)
    # record every effective scalar (weights, noise scales, ...) even when
    # the caller relied on generator defaults; explicit spec values win
    params = {
        k: v for k, v in problem.meta.items() if not isinstance(v, np.ndarray)
    }
    params.update(
        {k: v for k, v in spec.params.items() if not isinstance(v, np.ndarray)}
    )
    manifest = {
        "format": "goldsplit-instance-v1",
        "family": family,
        "params": params,
        "seed": spec.seed,
        "name": problem.name,
        "dims": problem.dims,
        "F_star": None
        if problem.F_star is None
        else {"value": problem.F_star, "provenance": problem.F_star_provenance},
        "payloads": payloads,
    }
    path = directory / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def load_instance(manifest_path):
    """Rebuild a ProblemInstance from a manifest and its payload sidecars."""
    manifest_path = Path(manifest_path)
    directory = manifest_path.parent
    manifest = json.loads(manifest_path.read_text())
    if manifest.get("format") != "goldsplit-instance-v1":
        raise DataError(f"unrecognized manifest format in {manifest_path}")
    family = manifest["family"]
    params = manifest["params"]
    arrays = {
        key: _read_payload(directory, entry)
        for key, entry in manifest["payloads"].items()
    }
    dims = manifest["dims"]

    if family == "lasso":
        problem = ProblemInstance(
            f=L1Prox(params.get("lam", 0.1)),
            g=SquaredL2Prox(1.0, arrays["b"]),
            K=DenseOperator(arrays["K"]),
            h=ZeroSmooth(),
            x_true=arrays.get("x_true"),
        )
    elif family == "fused_lasso":
        problem = ProblemInstance(
            f=L1Prox(params.get("lam1", 0.001)),
            g=L1Prox(params.get("lam2", 0.03)),
            K=FirstDifference(dims["n"]),
            h=LeastSquares(arrays["A"], arrays["b"]),
            x_true=arrays.get("x_true"),
        )
    elif family == "graphnet":
        problem = ProblemInstance(
            f=L1Prox(params.get("lam1", 6.64e-6)),
            g=SquaredL2Prox(weight=params.get("lam2", 1e-6)),
            K=GridIncidence(dims["n1"], dims["n2"]),
            h=LeastSquares(arrays["A"], arrays["b"], scale=1.0 / dims["m"]),
            x_true=arrays.get("x_true"),
        )
    elif family == "inpainting":
        rows, cols = dims["rows"], dims["cols"]
        problem = ProblemInstance(
            f=ZeroProx(),
            g=GroupL21Prox(params.get("lam", 1e-2), rows * cols),
            K=DiscreteGradient2D(rows, cols),
            h=MaskedLeastSquares(arrays["mask"], arrays["damaged"]),
            x_true=arrays.get("x_true"),
        )
    elif family == "strongly_convex":
        problem = ProblemInstance(
            f=L1Prox(params.get("lam", 0.1)),
            g=SquaredL2Prox(1.0, arrays["b_dual"]),
            K=DenseOperator(arrays["K"]),
            h=QuadraticRidge(arrays["A"], arrays["b"], params.get("ridge", 1.0)),
        )
    else:
        raise DataError(f"cannot rebuild family {family!r}")

    # keep payload arrays reachable under their generator-time names so
    # consumers (e.g. the -b warm start) behave the same on loaded instances
    problem.meta.update(params)
    problem.meta.update(
        {k: v for k, v in arrays.items() if k not in ("K", "x_true")}
    )
    problem.name = manifest.get("name", family)
    problem.dims = dims
    problem.seed = manifest.get("seed")
    fs = manifest.get("F_star")
    if fs is not None:
        problem.F_star = fs["value"]
        problem.F_star_provenance = fs.get("provenance")
    return problem


def update_manifest_f_star(manifest_path, value, provenance):
    """Record a reference optimum and its provenance in an existing manifest."""
    manifest_path = Path(manifest_path)
    manifest = json.loads(manifest_path.read_text())
    manifest["F_star"] = {"value": value, "provenance": provenance}
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# PGM image I/O (binary P5, 8-bit)


def read_pgm(path):
    """Load a binary 8-bit PGM image as floats in [0, 1]."""
    data = Path(path).read_bytes()
    tokens = []
    i = 0
    while len(tokens) < 4:
        if i >= len(data):
            raise ParseError("truncated PGM header")
        if data[i : i + 1] == b"#":
            while i < len(data) and data[i : i + 1] != b"\n":
                i += 1
            i += 1
            continue
        if data[i : i + 1].isspace():
            i += 1
            continue
        j = i
        while j < len(data) and not data[j : j + 1].isspace():
            j += 1
        tokens.append(data[i:j])
        i = j
    if tokens[0] != b"P5":
        raise ParseError(f"unsupported PGM magic {tokens[0]!r}")
    cols, rows, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    if maxval <= 0 or maxval > 255:
        raise ParseError(f"only 8-bit PGM supported (maxval {maxval})")
    i += 1  # single whitespace byte after the header
    pixels = np.frombuffer(data, dtype=np.uint8, count=rows * cols, offset=i)
    if pixels.size != rows * cols:
        raise ParseError("truncated PGM pixel data")
    return pixels.reshape(rows, cols).astype(np.float64) / maxval


def write_pgm(path, image):
    """Write floats in [0, 1] as a binary 8-bit PGM image."""
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2:
        raise DimensionError("PGM writer expects a 2-D image")
    rows, cols = image.shape
    pixels = np.clip(np.rint(image * 255.0), 0, 255).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{cols} {rows}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes())
