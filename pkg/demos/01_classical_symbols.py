"""Classical Dedekind sums and the Rademacher symbol on SL2(Z).

Walks through: reciprocity, the eta-multiplier origin of the Dedekind
symbol, and the conjugacy-invariant Rademacher symbol.
"""

from fractions import Fraction

from radsym import (
    GroupElement,
    dedekind_sum,
    phi_classical,
    phi_from_eta,
    psi_classical,
)

print("== Dedekind sums and reciprocity ==")
a, c = 5, 7
s1, s2 = dedekind_sum(a, c), dedekind_sum(c, a)
rhs = Fraction(-1, 4) + (Fraction(a, c) + Fraction(c, a)
                         + Fraction(1, a * c)) / 12
print(f"s({a},{c}) = {s1},  s({c},{a}) = {s2}")
print(f"s({a},{c}) + s({c},{a}) = {s1 + s2}  (reciprocity rhs: {rhs})")
assert s1 + s2 == rhs

print()
print("== The Dedekind symbol from the eta function ==")
for entries in [(2, 1, 1, 1), (3, 2, 4, 3), (7, 3, 9, 4)]:
    g = GroupElement(*entries)
    print(f"matrix {entries}:  Phi = {phi_classical(g)}  "
          f"(eta multiplier extraction: {phi_from_eta(g)})")

print()
print("== The Rademacher symbol is a class function ==")
g = GroupElement(3, 2, 1, 1)
h = GroupElement(2, 1, 1, 1)
print(f"Psi(g)        = {psi_classical(g)}")
print(f"Psi(h g h^-1) = {psi_classical(g.conjugate_by(h))}")
print(f"Psi(g^-1)     = {psi_classical(g.inverse())}   (inverse law: -Psi(g))")
