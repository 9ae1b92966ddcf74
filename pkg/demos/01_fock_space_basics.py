"""Walkthrough: the finite symplectic Fock space and its quadratic operators.

Run with  python3 demos/01_fock_space_basics.py
"""

from fractions import Fraction

from focklab import (
    E_map,
    ExactMatrix,
    FockVector,
    ebar_monomial,
    inner_product,
    rho_apply,
    rho_vector,
    standard_space,
    tau,
    tau_hat,
)

# A genus-2 symplectic space with (e_i, e_j) = i delta_{i+j,0}; the labels
# 1, 2 span the maximal isotropic F, the labels -1, -2 its conjugate.
sp = standard_space(2)
print("pairing (e_1, e_-1) =", sp.pairing_labels(1, -1))
print("pairing (e_2, e_-2) =", sp.pairing_labels(2, -2))

# The Fock module is Sym of the conjugate side; modes act by creation and by
# the pairing derivation, and the commutator is the Heisenberg relation.
v = FockVector.vacuum(sp)
v = rho_vector(sp, sp.basis_vector(-1), v)
v = rho_vector(sp, sp.basis_vector(-2), v)
print("\ne_{-2} e_{-1} v_o =", v)
print("e_2 then acts by the pairing:", rho_vector(sp, sp.basis_vector(2), v))

# Inner products are permanents of generator pairings.
w = ebar_monomial(sp, (1, 1))
print("\n<e1bar e1bar, e1bar e1bar> =", inner_product(w, w))

# The quadratic realization of sp(H): tau is a Lie homomorphism, and the
# normally ordered variant differs from it by -1/2 trace(A^{F'}).
c = ExactMatrix([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 1, 0, 0]])
a = E_map(sp, ExactMatrix([[c[i, j] + c[j, i] for j in range(4)] for i in range(4)]).map(lambda x: x * Fraction(1, 2)))
print("\ntau(A)     =", tau(sp, a))
print("tau_hat(A) =", tau_hat(sp, a))
print("deviation  =", tau_hat(sp, a) - tau(sp, a))
print("trace(A^{F'}) =", a.trace_on_complement())

# For A stabilizing F the normally ordered operator kills the vacuum.
print("\ntau_hat(A) v_o =", rho_apply(tau_hat(sp, a), FockVector.vacuum(sp)))
