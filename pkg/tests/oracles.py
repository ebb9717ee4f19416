"""Independent closed-form and series oracles used to freeze expected values.

These stay decoupled from the library: everything here is evaluated from
textbook formulas (separation-of-variables series, circumscribed-polygon
trigonometry, annulus harmonics) so tests can check the numerical pipeline
against values computed by a different route.
"""

import numpy as np

# frozen series values (odd terms to n=99, see functions below)
SQUARE_U_CENTER = 0.0736713532815138
SQUARE_G_MAX = 0.3376572416567838
SQUARE_J = SQUARE_G_MAX           # area 1
SQUARE_JP = SQUARE_G_MAX / 4.0    # perimeter 4

DISC_J = 1.0 / (2.0 * np.sqrt(np.pi))    # 0.28209479...
DISC_JP = 1.0 / (4.0 * np.pi)            # 0.07957747...


def square_torsion(x, y, n_terms: int = 99):
    """Torsion function of the unit square [-1/2, 1/2]^2 by Fourier series.

    u = X(1-X)/2 - sum over odd n of 4/(n pi)^3 sin(n pi X) cosh(n pi (Y-1/2))
    / cosh(n pi / 2), with X = x + 1/2, Y = y + 1/2.
    """
    X = np.asarray(x, dtype=float) + 0.5
    Y = np.asarray(y, dtype=float) + 0.5
    total = X * (1.0 - X) / 2.0
    for n in range(1, n_terms + 1, 2):
        total = total - (4.0 / (n * np.pi) ** 3) * np.sin(n * np.pi * X) \
            * np.cosh(n * np.pi * (Y - 0.5)) / np.cosh(n * np.pi / 2.0)
    return total


def square_boundary_gradient_max(n_terms: int = 99) -> float:
    """|grad u| of the unit square at an edge midpoint (the global max)."""
    g = 0.5
    for n in range(1, n_terms + 1, 2):
        g -= 4.0 / (n * np.pi) ** 2 / np.cosh(n * np.pi / 2.0)
    return g


def disc_torsion(r, R: float = 1.0):
    """u = (R^2 - r^2)/4 for the disc of radius R."""
    return (R * R - np.asarray(r, dtype=float) ** 2) / 4.0


def disc_gradient(r):
    """|grad u| = r/2 on the disc."""
    return np.asarray(r, dtype=float) / 2.0


def circumscribed_ngon_area(n: int, r: float = 1.0) -> float:
    return n * np.tan(np.pi / n) * r * r


def circumscribed_ngon_perimeter(n: int, r: float = 1.0) -> float:
    return 2.0 * n * np.tan(np.pi / n) * r


def annulus_hitting_probability(r: float, rho: float, R: float = 1.0) -> float:
    """Harmonic function with value 1 on r=rho, 0 on r=R: ln(r/R)/ln(rho/R)."""
    return np.log(r / R) / np.log(rho / R)
