"""NumPy reference implementations of the hot kernels.

These are the import-time fallback when the compiled extension is missing
(or when GMCS_PURE_PYTHON is set).  They must match `_kernels` exactly:
the parity test suite compares both paths.
"""

import math

import numpy as np

from ..errors import NumericError, ValidationError

COMPILED = False

_EPS = 1e-15
_TINY = 1e-300
_CF_MAX_ITER = 300
_SERIES_MAX_ITER = 2000


def _check_beta_domain(x, a, b):
    if not (a > 0.0 and b > 0.0):
        raise ValidationError(f"beta parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"beta argument must lie in [0,1], got x={x}")


def _log_beta(a, b):
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def _beta_cf(a, b, x):
    """Continued fraction for the incomplete beta (modified Lentz scheme).

    Returns (value, converged).
    """
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h, True
    return h, False


def _beta_series(a, b, x):
    """Power series fallback: I_x(a,b) = front * sum_n t_n with
    t_0 = 1, t_{n+1} = t_n * x * (a+b+n) / (a+1+n)."""
    term = 1.0
    total = 1.0
    for n in range(_SERIES_MAX_ITER):
        term *= x * (a + b + n) / (a + 1.0 + n)
        total += term
        if abs(term) < _EPS * abs(total):
            return total, True
    return total, False


def _reg_inc_beta_raw(x, a, b):
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    front = math.exp(a * math.log(x) + b * math.log1p(-x) - _log_beta(a, b))
    if x < (a + 1.0) / (a + b + 2.0):
        h, ok = _beta_cf(a, b, x)
        if not ok:
            h, ok = _beta_series(a, b, x)
            if not ok:
                raise NumericError(
                    f"incomplete beta did not converge for x={x}, a={a}, b={b}"
                )
        return front * h / a
    h, ok = _beta_cf(b, a, 1.0 - x)
    if not ok:
        h, ok = _beta_series(b, a, 1.0 - x)
        if not ok:
            raise NumericError(
                f"incomplete beta did not converge for x={x}, a={a}, b={b}"
            )
    return 1.0 - front * h / b


def reg_inc_beta(x, a, b):
    """Regularized incomplete beta function I_x(a, b)."""
    x, a, b = float(x), float(a), float(b)
    _check_beta_domain(x, a, b)
    return min(1.0, max(0.0, _reg_inc_beta_raw(x, a, b)))


def reg_inc_beta_many(xs, a, b):
    """Elementwise I_x(a, b) for an array of x and fixed (a, b)."""
    a, b = float(a), float(b)
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    if not (a > 0.0 and b > 0.0):
        raise ValidationError(f"beta parameters must be positive, got a={a}, b={b}")
    if xs.size and (xs.min() < 0.0 or xs.max() > 1.0):
        raise ValidationError("beta arguments must lie in [0,1]")
    out = np.empty_like(xs)
    flat_in, flat_out = xs.ravel(), out.ravel()
    for k in range(flat_in.size):
        flat_out[k] = min(1.0, max(0.0, _reg_inc_beta_raw(float(flat_in[k]), a, b)))
    return out


def closure_scan(p, thresholds):
    """Brute-force scan of every intersection hypothesis over disjoint index
    pairs (J1, J2), marking which per-edge rejections survive.

    ``p`` holds the M hypothesis p-values; the alternative p-values are 1-p.
    ``thresholds[L-1]`` is the per-test level used for an intersection of
    total size L.  A combined hypothesis is rejected when some hypothesis
    p-value over J1 is <= the threshold t, or some alternative over J2 has
    hypothesis p-value >= 1 - t.  Both cuts are boundary inclusive and
    evaluated in exactly the float form of the single-step cuts, so boundary
    ties agree bit for bit.  Returns uint8 arrays (reject_h, reject_k).
    """
    p = np.ascontiguousarray(p, dtype=np.float64)
    thr = np.ascontiguousarray(thresholds, dtype=np.float64)
    m = p.shape[0]
    if thr.shape[0] != m:
        raise ValidationError("need one threshold per intersection size 1..M")
    if m > 16:
        raise ValidationError(f"closure scan limited to 16 tests, got {m}")
    powers = 3 ** np.arange(m, dtype=np.int64)
    total = 3**m
    survive_h = np.zeros(m, dtype=bool)
    survive_k = np.zeros(m, dtype=bool)
    chunk = 65536
    for lo in range(1, total, chunk):  # index 0 is the empty assignment
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % 3
        in1 = digits == 1
        in2 = digits == 2
        lowest_h = np.where(in1, p[None, :], np.inf).min(axis=1)
        highest_k = np.where(in2, p[None, :], -np.inf).max(axis=1)
        t = thr[(digits != 0).sum(axis=1) - 1]
        rejected = (lowest_h <= t) | (highest_k >= 1.0 - t)
        alive = ~rejected
        if alive.any():
            survive_h |= (in1 & alive[:, None]).any(axis=0)
            survive_k |= (in2 & alive[:, None]).any(axis=0)
    reject_h = (~survive_h).astype(np.uint8)
    reject_k = (~survive_k).astype(np.uint8)
    return reject_h, reject_k
