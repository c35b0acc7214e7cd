"""Hot loops: box-vertex suprema and pairwise ratio maxima.

Each kernel has a numba implementation and a pure-numpy one.  The numba path
is used when numba imports and ``EXTLIP_DISABLE_NUMBA`` is unset (or "0").
Both paths break ties toward the lowest index so witnesses agree.
"""

import os

import numpy as np

_CHUNK = 1 << 14


def _numba_requested():
    return os.environ.get("EXTLIP_DISABLE_NUMBA", "0").strip().lower() in ("", "0", "false", "no")


try:
    if not _numba_requested():
        raise ImportError("disabled by EXTLIP_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _signs(masks, m):
    # bit (m-1-j) of the mask set -> coordinate j negative; mask 0 is all-plus
    shifts = np.arange(m - 1, -1, -1, dtype=np.int64)
    bits = (masks[:, None] >> shifts[None, :]) & 1
    return 1.0 - 2.0 * bits


def vertex_sup_numpy(A, r, p):
    """Maximize ``||A @ (sigma * r)||_p`` over sign vectors ``sigma``.

    Returns ``(value, mask)``.  For finite ``p`` the value is the p-th power
    sum before the root is taken; callers apply the root.
    """
    A = np.ascontiguousarray(A, dtype=np.float64)
    r = np.ascontiguousarray(r, dtype=np.float64)
    m = r.shape[0]
    total = 1 << m
    best = -1.0
    best_mask = 0
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        w = _signs(masks, m) * r[None, :]
        vals = np.abs(w @ A.T)
        if np.isinf(p):
            obj = vals.max(axis=1) if vals.shape[1] else np.zeros(len(masks))
        else:
            obj = (vals**p).sum(axis=1)
        k = int(np.argmax(obj))
        if obj[k] > best:
            best = float(obj[k])
            best_mask = int(masks[k])
    return best, best_mask


def pair_ratio_max_numpy(num, den):
    """Largest ``num[i, j] / den[i, j]`` over ``i < j``; ``(0.0, -1, -1)`` if none."""
    n = num.shape[0]
    if n < 2:
        return 0.0, -1, -1
    iu, ju = np.triu_indices(n, 1)
    ratios = num[iu, ju] / den[iu, ju]
    k = int(np.argmax(ratios))
    return float(ratios[k]), int(iu[k]), int(ju[k])


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def vertex_sup_numba(A, r, p):
        nrow, m = A.shape
        total = 1 << m
        w = np.empty(m)
        best = -1.0
        best_mask = 0
        p_inf = np.isinf(p)
        for mask in range(total):
            for j in range(m):
                if (mask >> (m - 1 - j)) & 1:
                    w[j] = -r[j]
                else:
                    w[j] = r[j]
            obj = 0.0
            for i in range(nrow):
                s = 0.0
                for j in range(m):
                    s += A[i, j] * w[j]
                s = abs(s)
                if p_inf:
                    if s > obj:
                        obj = s
                elif p == 1.0:
                    obj += s
                elif p == 2.0:
                    obj += s * s
                else:
                    obj += s**p
            if obj > best:
                best = obj
                best_mask = mask
        return best, best_mask

    @njit(cache=True, nogil=True)
    def pair_ratio_max_numba(num, den):
        n = num.shape[0]
        best = -1.0
        bi = -1
        bj = -1
        for i in range(n):
            for j in range(i + 1, n):
                q = num[i, j] / den[i, j]
                if q > best:
                    best = q
                    bi = i
                    bj = j
        if bi < 0:
            return 0.0, -1, -1
        return best, bi, bj

else:
    vertex_sup_numba = None
    pair_ratio_max_numba = None


def vertex_sup(A, r, p):
    A = np.ascontiguousarray(A, dtype=np.float64)
    r = np.ascontiguousarray(r, dtype=np.float64)
    if HAVE_NUMBA:
        value, mask = vertex_sup_numba(A, r, float(p))
        return float(value), int(mask)
    return vertex_sup_numpy(A, r, float(p))


def pair_ratio_max(num, den):
    num = np.ascontiguousarray(num, dtype=np.float64)
    den = np.ascontiguousarray(den, dtype=np.float64)
    if HAVE_NUMBA:
        value, i, j = pair_ratio_max_numba(num, den)
        return float(value), int(i), int(j)
    return pair_ratio_max_numpy(num, den)


def mask_to_signs(mask, m):
    return _signs(np.array([mask], dtype=np.int64), m)[0]
