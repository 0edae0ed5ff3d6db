"""Independent reference implementations used as test oracles.

Nothing here imports hybridsim.  Each routine takes a different numerical
route from the library (series instead of scipy, brute-force scans instead
of bisection / golden section, quadrature instead of FFT).
"""

import math
from fractions import Fraction

# CODATA 2018 exact / recommended values, typed in by hand
E = 1.602176634e-19
HBAR = 1.054571817e-34
K_B = 1.380649e-23
MU_B = 9.2740100783e-24
EPS0 = 8.8541878128e-12
U = 1.66053906660e-27
M_E = 9.1093837015e-31


def bessel_j(n: int, x: float, terms: int = 50) -> float:
    """Ascending series sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)."""
    total = 0.0
    half = x / 2
    for k in range(terms):
        total += (-1) ** k * half ** (2 * k + n) / (math.factorial(k) * math.factorial(k + n))
    return total


def carrier_plus_first(m: float) -> float:
    return bessel_j(0, m) ** 2 + 2 * bessel_j(1, m) ** 2


def scan_max_index(threshold: float, stop: float = 3.8) -> float:
    """Walk upward in fixed steps until the fraction drops below threshold.

    A 1e-3 walk finds the crossing, a 1e-6 walk from there refines it.
    """
    m = 0.0
    for step in (1e-3, 1e-6):
        while m + step <= stop and carrier_plus_first(m + step) >= threshold:
            m += step
    return m


def ion_height(a, b, c):
    # same closed form written out via the half-perimeter-like grouping
    s = a + b + c
    return math.sqrt(a * b * c * s) / (b + c)


def dipole_optimum(h: float) -> float:
    """Argmax of d / (h^2 + d^2/4)^1.5 by dense scan."""
    best, arg = -1.0, 0.0
    n = 200000
    for i in range(1, n):
        d = 4 * h * i / n
        v = d / (h * h + d * d / 4) ** 1.5
        if v > best:
            best, arg = v, d
    return arg


def nearest_fraction(r: float, max_den: int = 5):
    """Brute-force scan over p/q with p, q <= max_den."""
    best = None
    for p in range(1, max_den + 1):
        for q in range(1, max_den + 1):
            err = abs(r / (p / q) - 1)
            if best is None or err < best[0]:
                best = (err, Fraction(p, q))
    return best


def paired_capacitance(eta: float, phase: float) -> float:
    return 0.5 * (1 / (1 + eta * math.sin(phase)) + 1 / (1 + eta * math.cos(phase)))


def single_capacitance(eta: float, phase: float) -> float:
    return 1 / (1 + eta * math.sin(phase))


def fourier_amplitude(f, k: int, n: int = 20000) -> float:
    """Peak amplitude of the k-th harmonic of a 2pi-periodic f by midpoint quadrature."""
    if k == 0:
        return sum(f(2 * math.pi * (i + 0.5) / n) for i in range(n)) / n
    c = s = 0.0
    for i in range(n):
        x = 2 * math.pi * (i + 0.5) / n
        v = f(x)
        c += v * math.cos(k * x)
        s += v * math.sin(k * x)
    return 2 * math.hypot(c, s) / n


def two_level_transfer(G: float, delta: float, t: float, n: int = 20000) -> float:
    """|1,0> -> |0,1> probability from a hand-written 2x2 RK4 in the lab frame.

    i d/dt (c10, c01) = H (c10, c01) with H01 = -i G e^{i delta t} coupling.
    Written independently of the library's Kronecker-product construction.
    """
    def rhs(tt, c1, c2):
        ph = complex(math.cos(delta * tt), -math.sin(delta * tt))  # e^{-i delta t}
        # H = i G e^{-i d t} a b^dag + h.c.; on |1,0>: a b^dag |1,0> = |0,1>
        h21 = 1j * G * ph
        h12 = h21.conjugate()
        return -1j * h12 * c2, -1j * h21 * c1

    dt = t / n
    c1, c2 = 1 + 0j, 0j
    tt = 0.0
    for _ in range(n):
        k1 = rhs(tt, c1, c2)
        k2 = rhs(tt + dt / 2, c1 + dt / 2 * k1[0], c2 + dt / 2 * k1[1])
        k3 = rhs(tt + dt / 2, c1 + dt / 2 * k2[0], c2 + dt / 2 * k2[1])
        k4 = rhs(tt + dt, c1 + dt * k3[0], c2 + dt * k3[1])
        c1 += dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        c2 += dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        tt += dt
    return abs(c2) ** 2


def flexural_root(mode: int) -> float:
    """n-th root of cos(x) cosh(x) = 1 by bisection near (n + 1/2) pi."""
    f = lambda x: math.cos(x) * math.cosh(x) - 1
    lo, hi = (mode + 0.5) * math.pi - 0.5, (mode + 0.5) * math.pi + 0.5
    for _ in range(200):
        mid = (lo + hi) / 2
        if f(lo) * f(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2
