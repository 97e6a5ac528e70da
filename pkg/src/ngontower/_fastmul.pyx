# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop for brute-force period products.

Accumulates every pairwise product p_k * p_m of two coefficient vectors into a
dense output using the two-pair multiplication rule (square rule when k == m).
This is intentionally the plain quadratic loop: the oracle must stay free of
the symbolic shortcuts it referees.
"""


def pair_mul_accumulate(long long[:] a_idx, long long[:] a_val,
                        long long[:] b_idx, long long[:] b_val,
                        long long n, long long[:] out):
    """Scatter all pair products into out (1-based pair slots); returns the
    constant accumulated from squared pairs."""
    cdef Py_ssize_t i, j
    cdef long long k, m, av, v, s, d, const = 0
    cdef long long half = (n - 1) // 2
    for i in range(a_idx.shape[0]):
        k = a_idx[i]
        av = a_val[i]
        for j in range(b_idx.shape[0]):
            m = b_idx[j]
            v = av * b_val[j]
            if k == m:
                s = 2 * k
                if s > half:
                    s = n - s
                out[s] += v
                const += 2 * v
            else:
                d = k - m
                if d < 0:
                    d = -d
                out[d] += v
                s = k + m
                if s > half:
                    s = n - s
                out[s] += v
    return const
