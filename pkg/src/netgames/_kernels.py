"""Hot numeric kernels with numba and pure-numpy implementations.

Three scans dominate the package's runtime:

* the principal-minor scan behind the P-matrix test,
* support enumeration for small linear complementarity problems,
* the complementary pivoting loop.

Each of the first two has a sequential implementation (compiled with numba
when the backend is active) and a batched pure-numpy implementation.  Both
walk index subsets in the same canonical order, smallest subsets first and
lexicographic within a size, so failure witnesses and solution orderings are
identical across backends.  The pivoting loop is written against numpy array
operations and is compiled when numba is active; un-compiled it is already
vectorized, so no second implementation is needed.

Use :func:`netgames._accel.backend_name` to see which path is live.
"""

from itertools import combinations, islice

import numpy as np

from ._accel import USE_NUMBA, njit_or_noop

#: Absolute pivot tolerance used by pivoting and singularity detection.
TOL_PIV = 1e-10

#: Batch size for the numpy support/minor scans (bounds peak memory).
_CHUNK = 2048


# ---------------------------------------------------------------------------
# sequential (numba) implementations
# ---------------------------------------------------------------------------


@njit_or_noop(cache=True)
def _det_destructive(a, k):
    """Determinant of the leading k-by-k block of ``a`` by in-place LU."""
    det = 1.0
    for c in range(k):
        p = c
        big = abs(a[c, c])
        for r in range(c + 1, k):
            v = abs(a[r, c])
            if v > big:
                big = v
                p = r
        if big == 0.0:
            return 0.0
        if p != c:
            for t in range(c, k):
                tmp = a[p, t]
                a[p, t] = a[c, t]
                a[c, t] = tmp
            det = -det
        piv = a[c, c]
        det *= piv
        for r in range(c + 1, k):
            f = a[r, c] / piv
            if f != 0.0:
                for t in range(c + 1, k):
                    a[r, t] -= f * a[c, t]
    return det


@njit_or_noop(cache=True)
def _minor_scan_seq(m, eps):
    """Scan principal minors in (size, lex) order.

    Returns (all_positive, witness_buffer, witness_len); the buffer holds the
    index set of the first minor with determinant <= eps when one exists.
    """
    d = m.shape[0]
    witness = np.full(d, -1, np.int64)
    scratch = np.empty((d, d))
    idx = np.empty(d, np.int64)
    for k in range(1, d + 1):
        for t in range(k):
            idx[t] = t
        while True:
            for r in range(k):
                for c in range(k):
                    scratch[r, c] = m[idx[r], idx[c]]
            if _det_destructive(scratch, k) <= eps:
                for t in range(k):
                    witness[t] = idx[t]
                return False, witness, k
            j = k - 1
            while j >= 0 and idx[j] == d - k + j:
                j -= 1
            if j < 0:
                break
            idx[j] += 1
            for t in range(j + 1, k):
                idx[t] = idx[t - 1] + 1
    return True, witness, 0


@njit_or_noop(cache=True)
def _support_scan_seq(m, b, tol, piv_tol, max_keep):
    """Enumerate complementary supports in (size, lex) order.

    Returns (solutions, n_solutions, singular_masks, n_singular, overflow).
    Supports whose subsystem is numerically singular are reported as bitmasks
    for the caller to post-process; regular supports are solved and kept when
    the induced point is feasible within ``tol``.
    """
    d = b.shape[0]
    sols = np.empty((max_keep, d))
    nsol = 0
    sing = np.empty(max_keep, np.int64)
    nsing = 0
    overflow = False

    feasible = True
    for i in range(d):
        if b[i] < -tol:
            feasible = False
            break
    if feasible:
        for j in range(d):
            sols[0, j] = 0.0
        nsol = 1

    aug = np.empty((d, d + 1))
    idx = np.empty(d, np.int64)
    zs = np.empty(d)
    z = np.empty(d)
    for k in range(1, d + 1):
        for t in range(k):
            idx[t] = t
        while True:
            scale = 0.0
            for r in range(k):
                for c in range(k):
                    v = m[idx[r], idx[c]]
                    aug[r, c] = v
                    if abs(v) > scale:
                        scale = abs(v)
                aug[r, k] = -b[idx[r]]
            if scale == 0.0:
                scale = 1.0

            singular = False
            for c in range(k):
                p = c
                big = abs(aug[c, c])
                for r in range(c + 1, k):
                    v = abs(aug[r, c])
                    if v > big:
                        big = v
                        p = r
                if big <= piv_tol * scale:
                    singular = True
                    break
                if p != c:
                    for t in range(c, k + 1):
                        tmp = aug[p, t]
                        aug[p, t] = aug[c, t]
                        aug[c, t] = tmp
                piv = aug[c, c]
                for r in range(c + 1, k):
                    f = aug[r, c] / piv
                    if f != 0.0:
                        for t in range(c + 1, k + 1):
                            aug[r, t] -= f * aug[c, t]

            if singular:
                if nsing < max_keep:
                    mask = np.int64(0)
                    for t in range(k):
                        mask |= np.int64(1) << idx[t]
                    sing[nsing] = mask
                    nsing += 1
                else:
                    overflow = True
            else:
                for r in range(k - 1, -1, -1):
                    s = aug[r, k]
                    for c in range(r + 1, k):
                        s -= aug[r, c] * zs[c]
                    zs[r] = s / aug[r, r]
                feasible = True
                for t in range(k):
                    if zs[t] < -tol:
                        feasible = False
                        break
                if feasible:
                    for j in range(d):
                        z[j] = 0.0
                    for t in range(k):
                        z[idx[t]] = zs[t]
                    for i in range(d):
                        in_support = False
                        for t in range(k):
                            if idx[t] == i:
                                in_support = True
                                break
                        if in_support:
                            continue
                        w = b[i]
                        for j in range(d):
                            w += m[i, j] * z[j]
                        if w < -tol:
                            feasible = False
                            break
                    if feasible:
                        if nsol < max_keep:
                            for j in range(d):
                                sols[nsol, j] = z[j]
                            nsol += 1
                        else:
                            overflow = True

            j = k - 1
            while j >= 0 and idx[j] == d - k + j:
                j -= 1
            if j < 0:
                break
            idx[j] += 1
            for t in range(j + 1, k):
                idx[t] = idx[t - 1] + 1
    return sols, nsol, sing, nsing, overflow


@njit_or_noop(cache=True)
def _lemke_tableau(m, b, max_pivots, piv_tol):
    """Complementary pivoting with an all-ones covering vector.

    Tableau columns: 0..d-1 slacks, d..2d-1 efforts, 2d the covering
    variable, 2d+1 the right-hand side.  Ties in the minimum-ratio test are
    broken lexicographically over (rhs, slack columns), which rules out
    cycling.  Returns (status, z, w, pivots) with status 0 solved, 1 ray
    termination, 2 pivot budget exhausted.
    """
    d = b.shape[0]
    ncol = 2 * d + 2
    rhs = 2 * d + 1
    z = np.zeros(d)
    w = np.zeros(d)

    T = np.zeros((d, ncol))
    for i in range(d):
        T[i, i] = 1.0
        for j in range(d):
            T[i, d + j] = -m[i, j]
        T[i, 2 * d] = -1.0
        T[i, rhs] = b[i]
    basis = np.empty(d, np.int64)
    for i in range(d):
        basis[i] = i

    r0 = 0
    bmin = b[0]
    for i in range(1, d):
        if b[i] < bmin:
            bmin = b[i]
            r0 = i
    if bmin >= 0.0:
        for i in range(d):
            w[i] = b[i]
        return 0, z, w, 0

    # special first pivot: covering variable enters at the most negative row
    row = T[r0] / T[r0, 2 * d]
    for i in range(d):
        if i != r0:
            f = T[i, 2 * d]
            if f != 0.0:
                T[i] -= f * row
    T[r0] = row
    leaving = basis[r0]
    basis[r0] = 2 * d
    entering = leaving + d  # complement of the leaving slack

    pivots = 1
    while pivots <= max_pivots:
        # lexicographic minimum ratio test over rows with positive column
        best = -1
        for i in range(d):
            if T[i, entering] > piv_tol:
                if best < 0:
                    best = i
                else:
                    # compare row i against current best lexicographically
                    better = False
                    done = False
                    c = rhs
                    while not done:
                        ri = T[i, c] / T[i, entering]
                        rb = T[best, c] / T[best, entering]
                        if ri < rb:
                            better = True
                            done = True
                        elif ri > rb:
                            done = True
                        else:
                            c = 0 if c == rhs else c + 1
                            if c >= d:
                                done = True
                    if better:
                        best = i
        if best < 0:
            return 1, z, w, pivots  # unblocked ray

        row = T[best] / T[best, entering]
        for i in range(d):
            if i != best:
                f = T[i, entering]
                if f != 0.0:
                    T[i] -= f * row
        T[best] = row
        leaving = basis[best]
        basis[best] = entering
        pivots += 1

        if leaving == 2 * d:
            for i in range(d):
                val = T[i, rhs]
                if basis[i] < d:
                    w[basis[i]] = val
                elif basis[i] < 2 * d:
                    z[basis[i] - d] = val
            return 0, z, w, pivots
        entering = leaving + d if leaving < d else leaving - d

    return 2, z, w, pivots


# ---------------------------------------------------------------------------
# batched (numpy) implementations
# ---------------------------------------------------------------------------


def _index_chunks(d, k):
    """Yield (chunk, k)-shaped index arrays in lexicographic order."""
    it = combinations(range(d), k)
    while True:
        block = list(islice(it, _CHUNK))
        if not block:
            return
        yield np.asarray(block, dtype=np.int64)


def _minor_scan_np(m, eps):
    d = m.shape[0]
    witness = np.full(d, -1, np.int64)
    for k in range(1, d + 1):
        for combos in _index_chunks(d, k):
            sub = m[combos[:, :, None], combos[:, None, :]]
            dets = np.linalg.det(sub)
            bad = np.flatnonzero(dets <= eps)
            if bad.size:
                witness[:k] = combos[bad[0]]
                return False, witness, k
    return True, witness, 0


def _support_scan_np(m, b, tol, piv_tol, max_keep):
    d = b.shape[0]
    sols = np.empty((max_keep, d))
    nsol = 0
    sing = np.empty(max_keep, np.int64)
    nsing = 0
    overflow = False

    if (b >= -tol).all():
        sols[0] = 0.0
        nsol = 1

    off_mask_row = np.ones(d, dtype=bool)
    for k in range(1, d + 1):
        for combos in _index_chunks(d, k):
            nc = combos.shape[0]
            sub = m[combos[:, :, None], combos[:, None, :]]
            scale = np.abs(sub).reshape(nc, -1).max(axis=1)
            scale[scale == 0.0] = 1.0
            dets = np.linalg.det(sub)
            regular = np.abs(dets) > piv_tol * scale**k

            for ci in np.flatnonzero(~regular):
                if nsing < max_keep:
                    mask = np.int64(0)
                    for t in combos[ci]:
                        mask |= np.int64(1) << np.int64(t)
                    sing[nsing] = mask
                    nsing += 1
                else:
                    overflow = True

            reg_idx = np.flatnonzero(regular)
            if reg_idx.size == 0:
                continue
            zs = np.linalg.solve(sub[reg_idx], -b[combos[reg_idx]][..., None])[..., 0]
            keep = (zs >= -tol).all(axis=1)
            if not keep.any():
                continue
            reg_idx = reg_idx[keep]
            zs = zs[keep]
            zfull = np.zeros((reg_idx.size, d))
            np.put_along_axis(zfull, combos[reg_idx], zs, axis=1)
            wfull = zfull @ m.T + b
            offs = np.empty((reg_idx.size, d), dtype=bool)
            for row, ci in enumerate(reg_idx):
                off_mask_row[:] = True
                off_mask_row[combos[ci]] = False
                offs[row] = off_mask_row
            ok = ((wfull >= -tol) | ~offs).all(axis=1)
            for row in np.flatnonzero(ok):
                if nsol < max_keep:
                    sols[nsol] = zfull[row]
                    nsol += 1
                else:
                    overflow = True
    return sols, nsol, sing, nsing, overflow


# ---------------------------------------------------------------------------
# dispatchers
# ---------------------------------------------------------------------------


def minor_scan(m, eps):
    """All principal minors of ``m`` > ``eps``?  Returns (ok, witness).

    ``witness`` is the index tuple of the first failing minor in
    (size, lexicographic) order, or None when all minors pass.
    """
    m = np.ascontiguousarray(m, dtype=np.float64)
    if USE_NUMBA:
        ok, buf, wlen = _minor_scan_seq(m, float(eps))
    else:
        ok, buf, wlen = _minor_scan_np(m, float(eps))
    if ok:
        return True, None
    return False, tuple(int(i) for i in buf[:wlen])


def support_scan(m, b, tol, piv_tol=TOL_PIV, max_keep=4096):
    """Enumerate feasible complementary supports of LCP(m, b).

    Returns (solutions, singular_supports, overflow): a list of z vectors
    from regular supports in canonical order, the index tuples of supports
    whose subsystem looked singular, and whether any output cap was hit.
    """
    m = np.ascontiguousarray(m, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if USE_NUMBA:
        sols, nsol, sing, nsing, overflow = _support_scan_seq(
            m, b, float(tol), float(piv_tol), int(max_keep)
        )
    else:
        sols, nsol, sing, nsing, overflow = _support_scan_np(
            m, b, float(tol), float(piv_tol), int(max_keep)
        )
    out = [sols[i].copy() for i in range(nsol)]
    singular = []
    for i in range(nsing):
        mask = int(sing[i])
        singular.append(tuple(j for j in range(len(b)) if mask >> j & 1))
    return out, singular, bool(overflow)


def lemke_pivot(m, b, max_pivots, piv_tol=TOL_PIV):
    """Run the complementary pivoting kernel; see :func:`_lemke_tableau`."""
    m = np.ascontiguousarray(m, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    status, z, w, pivots = _lemke_tableau(m, b, int(max_pivots), float(piv_tol))
    return int(status), z, w, int(pivots)
