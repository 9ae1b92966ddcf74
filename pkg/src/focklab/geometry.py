"""One-puncture hyperelliptic models at a Weierstrass point.

The affine curve y^2 = f(x), deg f = 2g+1 with distinct roots, is expanded in
the local coordinate t with x = t^{-2} and y = t^{-1-2g} u(t^2)^{-1}, where
u = (t^{2g+1} f(1/t))^{-1/2} is a unit.  From the expansions:

    A_p      = C[x] + C[x] y                      (functions on the affine curve)
    omega(C) = <1, t^2, ..., t^{2g-2}> u(t^2) dt  (holomorphic differentials)
    phi_{2i-1} primitives with phi' = u(t^2) t^{2i-2}, i = 1-g .. g
    K^-      = A_p + span(phi_{-1}, phi_{-3}, ..., phi_{1-2g})

The tangent field 2y d/dx + f'(x) d/dy reads D(t) = -t^{2-2g} u(t^2)^{-1} and
preserves A_p; its A_p-multiples supply vertical derivations for the FT4 and
scalar-action checks.  The residue Gram of a vertical derivation against the
holomorphic basis is symmetric by selfadjointness, and with de_j = j omega_j
the per-entry sign identity is res(e_j d(D e_i)) = -i j res(<D,omega_i> omega_j).
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import (
    Derivation,
    LaurentSeries,
    integrate,
    pairing_with_form,
    residue,
    residue_form,
)
from .linalg import ExactMatrix
from .scalars import GaussianRational, PiScaled, WZW_PREFACTOR
from .subalgebra import FockSubalgebra, KMinusVector, QuotientSymplectic, echelon_reduce, echelonize


class WrongDegree(ValueError):
    pass


class RepeatedRoots(ValueError):
    pass


class IdentityFailed(AssertionError):
    """An exact identity the construction certifies came out false."""


# -- univariate polynomial helpers over Q(sqrt(-1)) -------------------------------


def _poly_clean(p: dict) -> dict:
    return {k: GaussianRational.coerce(c) for k, c in p.items() if c}


def _poly_deg(p: dict) -> int:
    return max(p) if p else -1


def _poly_derivative(p: dict) -> dict:
    return {k - 1: c * k for k, c in p.items() if k}


def _poly_divmod(a: dict, b: dict):
    a = dict(a)
    q: dict = {}
    db, lb = _poly_deg(b), b[_poly_deg(b)]
    while a and _poly_deg(a) >= db:
        da = _poly_deg(a)
        c = a[da] / lb
        q[da - db] = c
        for k, bk in b.items():
            kk = k + da - db
            s = a.get(kk, GaussianRational(0)) - c * bk
            if s:
                a[kk] = s
            else:
                a.pop(kk, None)
    return q, a


def _poly_gcd(a: dict, b: dict) -> dict:
    a, b = _poly_clean(a), _poly_clean(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, _poly_clean(r)
    if a:
        lead = a[_poly_deg(a)]
        a = {k: c / lead for k, c in a.items()}
    return a


# -- the model ---------------------------------------------------------------------


class HyperellipticModel:
    def __init__(self, f_coeffs, genus: int, window: int):
        """f_coeffs[k] is the x^k coefficient of f; deg f = 2g+1 and the
        leading coefficient must be an exact square (1 for monic f)."""
        self.f = _poly_clean({k: c for k, c in enumerate(f_coeffs)})
        self.g = genus
        self.window = window
        if _poly_deg(self.f) != 2 * genus + 1:
            raise WrongDegree(
                f"deg f = {_poly_deg(self.f)}, expected {2 * genus + 1}"
            )
        gcd = _poly_gcd(self.f, _poly_derivative(self.f))
        if _poly_deg(gcd) > 0:
            raise RepeatedRoots("gcd(f, f') is not constant")
        # w = t^{2g+1} f(1/t): exact polynomial with w(0) = leading coefficient
        w = LaurentSeries.polynomial(
            {2 * genus + 1 - k: c for k, c in self.f.items()}
        )
        self.u = w.sqrt_unit(prec=window).inv(prec=window)
        self.u2 = self.u.compose_monomial(2).truncate(window)
        self.x = LaurentSeries.t_power(-2)
        self.y = self.u2.inv(prec=window).shift(-1 - 2 * genus)
        self._validate()

    def _validate(self):
        fx = LaurentSeries.zero()
        for k, c in self.f.items():
            fx = fx + LaurentSeries.t_power(-2 * k).scale(c)
        if not (self.y * self.y - fx).is_zero():
            raise IdentityFailed("y(t)^2 != f(x(t)) within the window")
        if self.u.coefficient(0) * self.u.coefficient(0) * self.f[2 * self.g + 1] != 1:
            raise IdentityFailed("u(0)^2 * lead(f) != 1")

    def omega_coefficient(self, i: int) -> LaurentSeries:
        """Coefficient series of omega_i = u(t^2) t^{2i-2} dt."""
        return self.u2.shift(2 * i - 2)

    def phi(self, i: int) -> LaurentSeries:
        """phi_{2i-1}: the primitive of u(t^2) t^{2i-2} with zero constant."""
        return integrate(self.omega_coefficient(i))

    def tangent_field(self) -> Derivation:
        """The vector field 2y d/dx + f'(x) d/dy in the local coordinate."""
        gd = self.u2.inv(prec=self.window).shift(2 - 2 * self.g).scale(-1)
        return Derivation.from_series(gd)


def build_model(f_coeffs, genus: int, window: int) -> HyperellipticModel:
    return HyperellipticModel(f_coeffs, genus, window)


# -- derived bases ------------------------------------------------------------------


class CurveFockData:
    """Graded bases of A_p, omega(C), the phi-primitives and K^-."""

    def __init__(self, model: HyperellipticModel, degree_bound: int):
        self.model = model
        self.degree_bound = degree_bound
        g = model.g
        self.a_basis = []
        k = 0
        while 2 * k <= degree_bound:
            self.a_basis.append(LaurentSeries.t_power(-2 * k).truncate(model.window))
            k += 1
        k = 0
        while 2 * k + 2 * g + 1 <= degree_bound:
            self.a_basis.append(model.y * LaurentSeries.t_power(-2 * k))
            k += 1
        self.phis = {2 * i - 1: model.phi(i) for i in range(1 - g, g + 1)}
        self.omega_curve = [model.omega_coefficient(i) for i in range(1, g + 1)]
        self.kminus_extra = [self.phis[1 - 2 * i] for i in range(1, g + 1)]
        self.b_basis = self.a_basis + list(self.phis.values())

    def subalgebra(self) -> FockSubalgebra:
        return FockSubalgebra(self.a_basis, self.model.window, self.degree_bound)

    def residue_gram_mod_A(self) -> ExactMatrix:
        """Residue Gram on the phi-classes modulo A_p (rank 2g, antisymmetric,
        with the holomorphic part isotropic)."""
        phis = [self.phis[k] for k in sorted(self.phis)]
        return ExactMatrix(
            [[residue_form(a, b) for b in phis] for a in phis]
        )

    def intersection_gram(self) -> ExactMatrix:
        """The residue Gram rescaled by the formal bridge constant
        -2 pi sqrt(-1), representing the topological intersection form."""
        from .scalars import INTERSECTION_BRIDGE

        return self.residue_gram_mod_A().map(
            lambda c: INTERSECTION_BRIDGE * GaussianRational.coerce(c)
        )

    def natural_quotient(self) -> QuotientSymplectic:
        """Quotient lifts from the phi-basis: e_{-i} from phi_{1-2i} made
        isotropic and normalized, e_i from the holomorphic primitives."""
        from .subalgebra import build_quotient

        return build_quotient(self.subalgebra())


def curve_fock_data(model: HyperellipticModel, degree_bound: int) -> CurveFockData:
    data = CurveFockData(model, degree_bound)
    # A_p pairs to zero with every B_p element (Fock-type isotropy statement)
    for a in data.a_basis:
        for b in data.b_basis:
            if residue_form(b, a):
                raise IdentityFailed("A_p is not perpendicular to B_p")
    return data


# -- non-closure witness -------------------------------------------------------------


def closure_falsifier(model: HyperellipticModel, data: CurveFockData | None = None):
    """Search K^- products for one that leaves K^-.

    Returns a dict witness with the factor descriptions and the certified
    remainder, or None when the bounded search finds nothing (reported as
    skipped upstream, never as a silent pass).
    """
    if model.g < 1:
        raise ValueError("genus must be >= 1")
    if data is None:
        data = curve_fock_data(model, degree_bound=4 * model.g + 4)
    kminus = echelonize(data.a_basis + data.kminus_extra)
    candidates = []
    for i in range(1, model.g + 1):
        candidates.append((f"phi_{1 - 2 * i}", data.phis[1 - 2 * i]))
    for k, a in enumerate(data.a_basis[:3]):
        candidates.append((f"A_basis[{k}]", a))
    for idx1, (n1, f1) in enumerate(candidates):
        for n2, f2 in candidates[idx1:]:
            prod = f1 * f2
            rem, _ = echelon_reduce(prod, kminus)
            # a nonzero remainder of positive order is a certificate: every
            # nonzero element of K^- has order <= 0
            if rem and rem.ord >= 1:
                return {
                    "left": n1,
                    "right": n2,
                    "remainder_order": rem.ord,
                    "remainder_leading": rem.coeffs[rem.ord],
                    "window": rem.prec,
                }
    return None


# -- the residue Gram of the connection operator --------------------------------------


def wzw_gram(model: HyperellipticModel, D: Derivation, omegas=None) -> ExactMatrix:
    """M_ij = res(<D, omega_i> omega_j) / (i j) for a vertical derivation.

    Certifies symmetry (selfadjointness of D for the residue pairing) and the
    per-entry sign identity res(e_j d(D e_i)) = -i j res(<D,omega_i> omega_j)
    with e_j = j phi_{2j-1} (so that de_j = j omega_j).
    """
    if not D.is_vertical:
        raise ValueError("wzw_gram takes a vertical derivation")
    g = model.g
    if omegas is None:
        omegas = [model.omega_coefficient(i) for i in range(1, g + 1)]
    e = [model.phi(j).scale(j) for j in range(1, g + 1)]
    m = [[None] * g for _ in range(g)]
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            raw = residue(pairing_with_form(D, omegas[i - 1]) * omegas[j - 1])
            m[i - 1][j - 1] = raw * Fraction(1, i * j)
            lhs = residue(e[j - 1] * D.apply(e[i - 1]).derivative())
            if lhs + Fraction(i * j) * raw:
                raise IdentityFailed(
                    f"sign identity failed at entry ({i},{j}): "
                    f"res(e_j d(De_i)) = {lhs}, -ij res(<D,w_i>w_j) = {-Fraction(i*j)*raw}"
                )
    mat = ExactMatrix(m)
    if not (mat - mat.transpose()).is_zero():
        raise IdentityFailed("residue Gram is not symmetric")
    return mat


def wzw_vector_prefactor() -> PiScaled:
    """The formal pi*sqrt(-1) tag multiplying the Gram in the image of the
    residue operator on the covariant generator."""
    return WZW_PREFACTOR
