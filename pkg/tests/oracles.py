"""Loop-based reference implementations used only by the tests."""

import itertools

import numpy as np


def brute_partial_trace(rho, dims, keep):
    """Partial trace by explicit index summation; ``keep`` are axis positions."""
    dims = list(dims)
    n = len(dims)
    kept = sorted(keep)
    traced = [k for k in range(n) if k not in kept]
    kdims = [dims[k] for k in kept]
    size = int(np.prod(kdims)) if kdims else 1
    out = np.zeros((size, size), dtype=complex)
    full = np.asarray(rho).reshape(dims + dims)
    for a in itertools.product(*(range(d) for d in kdims)):
        for b in itertools.product(*(range(d) for d in kdims)):
            total = 0j
            for t in itertools.product(*(range(dims[k]) for k in traced)):
                row = [0] * n
                col = [0] * n
                for pos, k in enumerate(kept):
                    row[k], col[k] = a[pos], b[pos]
                for pos, k in enumerate(traced):
                    row[k] = col[k] = t[pos]
                total += full[tuple(row) + tuple(col)]
            out[np.ravel_multi_index(a, kdims), np.ravel_multi_index(b, kdims)] = total
    return out


def brute_partial_transpose(rho, dims, axis):
    """Swap row/column indices of subsystem ``axis`` entry by entry."""
    dims = list(dims)
    size = int(np.prod(dims))
    out = np.zeros((size, size), dtype=complex)
    for r in range(size):
        ri = list(np.unravel_index(r, dims))
        for c in range(size):
            ci = list(np.unravel_index(c, dims))
            ri2, ci2 = ri.copy(), ci.copy()
            ri2[axis], ci2[axis] = ci[axis], ri[axis]
            out[np.ravel_multi_index(ri2, dims), np.ravel_multi_index(ci2, dims)] = rho[r, c]
    return out


def dense_trace_norm(m):
    """Sum of singular values (no Hermitian assumption)."""
    return float(np.linalg.svd(m, compute_uv=False).sum())


def random_pure(rng, dims):
    psi = rng.standard_normal(dims) + 1j * rng.standard_normal(dims)
    return psi / np.linalg.norm(psi)


def projector(psi):
    """Dense ``|psi><psi|`` from a flattened amplitude tensor."""
    v = np.asarray(psi).reshape(-1)
    return np.outer(v, v.conj())
