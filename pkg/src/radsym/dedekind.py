"""Exact classical arithmetic: sawtooth, Dedekind sums, the Dedekind symbol
Phi and Rademacher symbol Psi on SL2(Z), and the cocycle machinery.

All values are exact rationals (fractions.Fraction).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .modgroup import Cusp, Family, GroupElement, GroupId


def sign(x) -> int:
    """sign with sign(0) = 0 (Rademacher's convention)."""
    return (x > 0) - (x < 0)


def sawtooth(x) -> Fraction:
    """((x)) = x - floor(x) - 1/2 for non-integer x, and 0 on integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def dedekind_sum(a: int, c: int) -> Fraction:
    """s(a, c) for coprime a, c with c >= 1, by reciprocity descent."""
    if c < 1:
        raise ValueError("c must be >= 1")
    if gcd(a, c) != 1:
        raise ValueError(f"gcd({a}, {c}) != 1")
    a %= c
    # s(a,c) = -1/4 + (a/c + c/a + 1/(ac))/12 - s(c mod a, a), unwound
    # iteratively; each reciprocity term collapses to one fraction
    total = Fraction(0)
    neg = False
    while a:
        num = a * a + c * c + 1 - 3 * a * c
        total += Fraction(-num if neg else num, 12 * a * c)
        neg = not neg
        a, c = c % a, a
    return total


def dedekind_sum_direct(a: int, c: int) -> Fraction:
    """Definitional sum s(a,c) = sum_k ((k/c))((ak/c)); O(c) oracle for
    dedekind_sum.  ((k/c)) = (2k - c)/(2c) for 0 < k < c, so the sum is
    accumulated in exact integer arithmetic over 4c^2."""
    if c < 1 or gcd(a, c) != 1:
        raise ValueError("need coprime a, c with c >= 1")
    total = 0
    for k in range(1, c):
        t = (a * k) % c
        if t:
            total += (2 * k - c) * (2 * t - c)
    return Fraction(total, 4 * c * c)


def phi_classical(g: GroupElement) -> Fraction:
    """Classical Dedekind symbol Phi on SL2(Z); integer-valued."""
    if g.e != 1:
        raise ValueError("Phi is defined on SL2(Z) elements (e = 1)")
    a, b, c, d = g.entries()
    if c == 0:
        return Fraction(b, d)
    return Fraction(a + d, c) - 12 * sign(c) * dedekind_sum(a, abs(c))


def psi_classical(g: GroupElement) -> Fraction:
    """Classical Rademacher symbol: Psi = Phi - 3 sign(c(a+d))."""
    return phi_classical(g) - 3 * sign(g.c * (g.a + g.d))


def pi_over_volume(G: GroupId) -> Fraction:
    """pi / V for the group G; equals 3 / (index in PSL2(Z))."""
    return Fraction(3) / G.psl2z_index()


def cocycle_defect(
    G: GroupId,
    cusp: Cusp,
    g1: GroupElement,
    g2: GroupElement,
    phi1: Fraction,
    phi2: Fraction,
    phi12,
):
    """Defect of the composition law
    Phi(g1 g2) = Phi(g1) + Phi(g2) - (pi/V) sign(c1 c2 c3);
    zero for any consistent Dedekind symbol.  The c_i are the lower-left
    entries of the cusp-normalized conjugates.
    """
    binv = cusp.base_matrix().inverse()
    c1 = g1.conjugate_by(binv).c
    c2 = g2.conjugate_by(binv).c
    c3 = (g1 * g2).conjugate_by(binv).c
    return phi12 - phi1 - phi2 + pi_over_volume(G) * sign(c1 * c2 * c3)
