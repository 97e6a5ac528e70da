"""Backend selection for the brute-force product kernel.

The compiled extension (ngontower._fastmul) is used when importable; otherwise
a vectorized numpy implementation of the same quadratic loop takes over.  Set
NGONTOWER_PURE=1 to force the numpy path (used by the benchmark and tests).
"""

import os

import numpy as np

try:
    from . import _fastmul as _ext
except ImportError:  # pragma: no cover - depends on build environment
    _ext = None

_FORCE_PURE = os.environ.get("NGONTOWER_PURE", "") not in ("", "0")

# Rows per scatter batch in the numpy path; bounds temporary memory to a few MB.
_CHUNK_ENTRIES = 1 << 22


def active_backend() -> str:
    return "numpy" if _ext is None or _FORCE_PURE else "compiled"


def pair_mul_accumulate(a_idx, a_val, b_idx, b_val, n, out, force_pure=False):
    """out[pair] += sum of all p_k*p_m contributions; returns the constant part.

    a_idx/a_val etc. are the nonzero pair numbers and coefficients of the two
    factors; out is a dense int64 array of length npairs+1 (slot 0 unused).
    """
    if _ext is not None and not _FORCE_PURE and not force_pure:
        return _ext.pair_mul_accumulate(a_idx, a_val, b_idx, b_val, n, out)
    return _pair_mul_numpy(a_idx, a_val, b_idx, b_val, n, out)


def _pair_mul_numpy(a_idx, a_val, b_idx, b_val, n, out):
    half = (n - 1) // 2
    const = 0
    nb = b_idx.shape[0]
    if nb == 0 or a_idx.shape[0] == 0:
        return 0
    rows_per_chunk = max(1, _CHUNK_ENTRIES // nb)
    for lo in range(0, a_idx.shape[0], rows_per_chunk):
        ai = a_idx[lo : lo + rows_per_chunk]
        av = a_val[lo : lo + rows_per_chunk]
        vals = av[:, None] * b_val[None, :]
        s = ai[:, None] + b_idx[None, :]
        np.minimum(s, n - s, out=s)
        d = np.abs(ai[:, None] - b_idx[None, :])
        flat_vals = vals.ravel()
        flat_s = s.ravel()
        flat_d = d.ravel()
        sq = flat_d == 0
        if sq.any():
            const += 2 * int(flat_vals[sq].sum())
            keep = ~sq
            out += np.bincount(
                flat_d[keep], weights=flat_vals[keep], minlength=out.shape[0]
            ).astype(np.int64)
        else:
            out += np.bincount(flat_d, weights=flat_vals, minlength=out.shape[0]).astype(np.int64)
        out += np.bincount(flat_s, weights=flat_vals, minlength=out.shape[0]).astype(np.int64)
    return const
