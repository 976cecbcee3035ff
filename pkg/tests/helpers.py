"""Brute-force oracles and shared fixed matrices for the test suite.

The oracles recompute everything from first principles (explicit minor
enumeration, exhaustive support solves) so that library results are checked
against code that cannot share an implementation bug with the package.
"""

import itertools

import numpy as np

# Two-layer pair on two agents whose equal-weight blend loses uniqueness:
# the blended game has exactly the equilibria (1, 0) and (0, 0.5).
NONUNIQUE_LAYER1 = np.array([[0.0, 4.0], [0.2, 0.0]])
NONUNIQUE_LAYER2 = np.array([[0.0, 0.0], [1.0, 0.0]])
NONUNIQUE_TARGETS = np.array([1.0, 0.5])

# Directed 5-agent pair where the perturbation-bound certificate claims
# uniqueness although the blended matrix is not a P-matrix (kappa = 0.75).
PERT_FALSE_FIRE_LAYER1 = np.array(
    [
        [0.0, -0.20, 0.20, 0.39, 0.16],
        [0.91, 0.0, -0.85, -0.88, 0.89],
        [-0.95, -0.32, 0.0, -0.65, 0.68],
        [-0.37, -0.93, -0.46, 0.0, 0.29],
        [0.57, -0.02, -0.73, -0.15, 0.0],
    ]
)
PERT_FALSE_FIRE_LAYER2 = np.array(
    [
        [0.0, 0.11, -0.08, 0.05, -0.09],
        [-0.08, 0.0, -0.07, -0.06, 0.0],
        [-0.05, -0.10, 0.0, -0.10, 0.08],
        [0.06, -0.09, 0.12, 0.0, 0.07],
        [-0.02, -0.05, -0.09, 0.07, 0.0],
    ]
)
PERT_FALSE_FIRE_KAPPA = 0.75

# Directed 3-agent pair where the two-sidedness certificate denies
# uniqueness although the blended matrix is a P-matrix (kappa = 0.5).
TWOSIDED_FALSE_FIRE_LAYER1 = np.array(
    [
        [0.0, 0.92, -0.78],
        [-0.96, 0.0, -0.93],
        [0.95, 0.79, 0.0],
    ]
)
TWOSIDED_FALSE_FIRE_LAYER2 = np.array(
    [
        [0.0, -0.09, -0.08],
        [-2.40, 0.0, -3.24],
        [-1.85, -1.71, 0.0],
    ]
)
TWOSIDED_FALSE_FIRE_KAPPA = 0.5

# Two-dimension cross-layer instance with identity spillover both ways and
# three equilibria under targets (3, 6, 1, 0.5).
CROSS_LAYER1 = np.array([[0.0, 2.0], [3.0, 0.0]])
CROSS_LAYER2 = np.array([[0.0, 0.6], [0.8, 0.0]])
CROSS_INTER = np.eye(2)
CROSS_TARGETS = np.array([3.0, 6.0, 1.0, 0.5])


def oracle_is_p(m):
    """Every principal minor strictly positive, by direct enumeration."""
    m = np.asarray(m, dtype=float)
    d = m.shape[0]
    for size in range(1, d + 1):
        for idx in itertools.combinations(range(d), size):
            if np.linalg.det(m[np.ix_(idx, idx)]) <= 0.0:
                return False
    return True


def oracle_enum_lcp(m, b, tol=1e-8):
    """Exhaustive LCP solve over all 2^d complementary supports.

    Returns a lexicographically sorted, deduplicated list of z vectors that
    satisfy z >= 0, w = M z + b >= 0 and z_i w_i = 0 within ``tol``.
    """
    m = np.asarray(m, dtype=float)
    b = np.asarray(b, dtype=float)
    d = m.shape[0]
    found = []
    for mask in range(2**d):
        support = [i for i in range(d) if (mask >> i) & 1]
        z = np.zeros(d)
        if support:
            sub = m[np.ix_(support, support)]
            if abs(np.linalg.det(sub)) < 1e-12:
                continue
            z[support] = np.linalg.solve(sub, -b[support])
        w = m @ z + b
        if z.min() < -tol or w.min() < -tol:
            continue
        if np.max(np.abs(z * w)) > tol:
            continue
        z = np.where(np.abs(z) <= tol, 0.0, z)
        if not any(np.allclose(z, other, atol=1e-7) for other in found):
            found.append(z)
    found.sort(key=lambda v: tuple(v))
    return found


def random_layer(rng, n, half_width=1.0, symmetric=False):
    """Uniform(-half_width, half_width) off-diagonal draw, zero diagonal."""
    g = rng.uniform(-half_width, half_width, (n, n))
    if symmetric:
        upper = np.triu(g, 1)
        g = upper + upper.T
    np.fill_diagonal(g, 0.0)
    return g
