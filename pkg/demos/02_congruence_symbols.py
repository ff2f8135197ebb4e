"""Rademacher symbols on congruence subgroups.

Shows the width-normalized cusp convention, the exact level-N engine, the
coset-sum identity down to SL2(Z), and symbols on Gamma0(N)+.
"""

from radsym import (
    Cusp,
    GroupElement,
    GroupId,
    lift_coset_sum,
    psi_classical,
    psi_general,
    takada_C,
    takada_phi,
)
from radsym.symbols import psi_gamma, takada_C_row_exact

INF = Cusp.infinity()

print("== Width-normalized convention ==")
T = GroupElement(1, 1, 0, 1)
for n in [2, 5]:
    v = takada_phi(n, T ** n)
    print(f"Gamma({n}): symbol of the stabilizer generator T^{n} at inf = {v}")

print()
print("== The cosine-sum constants are rational ==")
for n in [5, 7]:
    print(f"C_{{{n},j}} = {[str(x) for x in takada_C_row_exact(n)]}")
    print(f"   (60-digit float check, j=1: {takada_C(n, 1).value:.15f})")

print()
print("== Coset-sum identity: Gamma(2) symbols assemble the classical one ==")
g = GroupElement(3, 2, 4, 3)
total = lift_coset_sum(GroupId.gamma(2), GroupId.sl2z(),
                       lambda x: psi_gamma(2, INF, x), g)
print(f"sum over the 6 cosets of Psi^Gamma(2)(t g t^-1) = {total}")
print(f"classical Psi(g)                                = {psi_classical(g)}")

print()
print("== Symbols at both cusps of Gamma0(11), and on Gamma0(11)+ ==")
G = GroupId.gamma0(11)
g = GroupElement(4, 1, 11, 3)
print(f"Psi_inf(g) = {psi_general(G, INF, g)}")
print(f"Psi_0(g)   = {psi_general(G, Cusp(0, 1), g)}")
Gp = GroupId.gamma0_plus(11)
print(f"Psi^+(g)   = {psi_general(Gp, INF, g)}   "
      "(the Fricke extension merges the two cusps)")
