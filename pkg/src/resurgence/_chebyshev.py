"""Spectral cumulative integration on [-1, 1] at Chebyshev-Lobatto nodes.

Given samples of an integrand at the nodes x_j = -cos(pi j / n), we
interpolate by the degree-n Chebyshev polynomial, integrate the interpolant
exactly in coefficient space, and evaluate the antiderivative back at the
same nodes.  For integrands analytic in a neighbourhood of [-1, 1] the
error decays geometrically in n, so iterated integrals can be built level
by level: the cumulative values of one level are exact polynomial data for
the next.

All arithmetic happens at the caller's current mpmath precision; the
cosine tables are cached per (n, precision).

Used by the iterated contour integrals of :mod:`resurgence.hyperlog` and
the iterated simplex integrals of :mod:`resurgence.mzv`.
"""

from __future__ import annotations

import mpmath

_TABLES: dict = {}


def _tables(n: int):
    """Node list and cosine table cos(pi j k / n), j <= n, k <= n + 1."""
    key = (n, mpmath.mp.prec)
    if key not in _TABLES:
        pi = +mpmath.pi
        cos = [
            [mpmath.cos(pi * j * k / n) for k in range(n + 2)]
            for j in range(n + 1)
        ]
        nodes = [-cos[j][1] for j in range(n + 1)]
        _TABLES[key] = (nodes, cos)
    return _TABLES[key]


def chebyshev_nodes(n: int):
    """The n + 1 Chebyshev-Lobatto nodes of [-1, 1], increasing."""
    return _tables(n)[0]


def chebyshev_cumulative(values):
    """Cumulative integral of a sampled integrand, at the sample nodes.

    ``values`` are the integrand at ``chebyshev_nodes(n)`` with
    n = len(values) - 1.  Returns the list F(x_j) = integral from -1 to x_j
    of the interpolant, so F[0] = 0 and F[-1] is the full integral.
    """
    n = len(values) - 1
    if n < 1:
        raise ValueError("need at least two samples")
    _nodes, cos = _tables(n)
    # values are ordered by increasing x_j = -cos(pi j/n); the classical
    # transform below is written for g_j = f(cos(pi j/n)), so reverse.
    g = list(reversed(values))
    # interpolant f = c_0 T_0 + ... + c_n T_n via the type-I cosine transform
    c = []
    for k in range(n + 1):
        s = g[0] / 2 + g[n] * ((-1) ** k) / 2
        for j in range(1, n):
            s = s + g[j] * cos[j][k]
        c.append(s * 2 / n)
    c[0] = c[0] / 2
    c[n] = c[n] / 2
    # antiderivative sum(b_k T_k): b_1 = c_0 - c_2/2 and, for k >= 2,
    # b_k = (c_{k-1} - c_{k+1}) / (2k), from int T_k = (T_{k+1}/(k+1)
    # - T_{k-1}/(k-1)) / 2
    b = [None] * (n + 2)
    b[1] = c[0] - (c[2] / 2 if n >= 2 else 0)
    for k in range(2, n + 2):
        lower = c[k - 1] if k - 1 <= n else 0
        upper = c[k + 1] if k + 1 <= n else 0
        b[k] = (lower - upper) / (2 * k)
    # F(x_j) = sum_k b_k (T_k(x_j) - T_k(-1)); on Lobatto nodes
    # T_k(x_j) = (-1)^k cos(pi j k / n)
    out = []
    for j in range(n + 1):
        s = 0
        for k in range(1, n + 2):
            s = s + b[k] * ((-1) ** k) * (cos[j][k] - 1)
        out.append(s)
    return out
