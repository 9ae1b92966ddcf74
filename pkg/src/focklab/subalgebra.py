"""Fock-type subalgebras A of K = R((t)), symplectic quotients and covariants.

A subalgebra is stored as an order-echelon basis: one element per occurring
order, which makes per-degree independence structural and membership testing
a certified leading-term reduction.  All claims carry the window they were
proved in; a nonzero remainder coefficient inside a valid window certifies
non-membership exactly.

The symplectic quotient H_A = A-perp / A is built following the lift recipe:
choose negative lifts spanning K/(A+O), correct them to make A + sum(R e_{-i})
totally isotropic (the correction lives in A-perp intersect m, which pairs
nondegenerately with the lifts), then normalize positive lifts e_i in m with
(e_i, e_j) = i delta_{i+j,0}.  Covariants kill every A-factor; the induced
operators of vertical derivations preserving A act on them by a certified,
probe-independent scalar.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import (
    Derivation,
    LaurentSeries,
    WindowTooNarrow,
    residue_form,
)
from .linalg import ExactMatrix, Inconsistent
from .fock import FockVector, standard_space
from .oscillator import OscFockVector, series_multiply, tau_hat_D


class NoIsotropicLift(ValueError):
    """Quotient construction failed; signals an FT-condition failure upstream."""


class NotReduced(ValueError):
    """Vector contains positive modes; apply the module action first."""


class NotScalar(ValueError):
    """The induced action on covariants is not a scalar; carries witnesses."""


# -- order-echelon bookkeeping --------------------------------------------------


def echelonize(elements):
    """Return dict ord -> series with distinct orders, reducing collisions."""
    by_ord: dict = {}
    queue = list(elements)
    while queue:
        f = queue.pop()
        while f and f.ord in by_ord:
            b = by_ord[f.ord]
            f = f - b.scale(f.coeffs[f.ord] / b.coeffs[b.ord])
        if f:
            by_ord[f.ord] = f
    return by_ord


def echelon_reduce(f: LaurentSeries, by_ord: dict):
    """Subtract echelon elements to push ord(f) out of the order set.

    Returns (remainder, coefficients used per order).  A nonzero remainder
    coefficient inside its window certifies that f is not in the span.
    """
    coeffs: dict = {}
    while f and f.ord in by_ord:
        b = by_ord[f.ord]
        q = f.coeffs[f.ord] / b.coeffs[b.ord]
        f = f - b.scale(q)
        coeffs[b.ord] = coeffs.get(b.ord, 0) + q
    return f, coeffs


def in_span(f: LaurentSeries, by_ord: dict) -> bool:
    rem, _ = echelon_reduce(f, by_ord)
    return rem.is_zero()


def span_membership(f: LaurentSeries, by_ord: dict):
    """True / False / None: None when the remainder's order is deeper than
    the stored echelon reaches, so the window cannot decide."""
    rem, _ = echelon_reduce(f, by_ord)
    if rem.is_zero():
        return True
    if rem.ord < min(by_ord):
        return None
    return False


class FockSubalgebra:
    """Subalgebra given by an order-echelon basis within a window.

    degree_bound is the largest represented pole order; window the ambient
    prec used for arithmetic.  Certification is produced by `certify`.
    """

    def __init__(self, basis, window: int, degree_bound: int):
        self.by_ord = echelonize(basis)
        if any(o > 0 for o in self.by_ord):
            raise ValueError("subalgebra elements must have order <= 0")
        if 0 not in self.by_ord:
            raise ValueError("the unit (order 0) must be present")
        self.window = window
        self.degree_bound = degree_bound
        self.certification: dict = {}

    def basis_elements(self):
        return [self.by_ord[o] for o in sorted(self.by_ord, reverse=True)]

    def missing_orders(self):
        """Negative orders not realized by A within the degree bound; these
        index a basis of K/(A+O)."""
        return [
            -d for d in range(1, self.degree_bound + 1) if -d not in self.by_ord
        ]

    def quotient_rank(self) -> int:
        return len(self.missing_orders())

    # -- FT certification ------------------------------------------------------

    def certify(self, derivations=(), perp_reps=()) -> dict:
        """Certified FT checks within the window.

        FT1 is not machine-checkable (flatness / finite type); the surrogate
        verifies per-degree independence (structural for an order echelon)
        and multiplicative stability of the stored basis.  FT4 is checked for
        the supplied derivations only, on the supplied A-perp representatives.
        """
        record = {
            "window": self.window,
            "degree_bound": self.degree_bound,
            "ft1_surrogate": {"independent_per_degree": True, "products_in_A": True},
            "ft2": {},
            "ft3": True,
            "ft4": {},
        }
        elems = self.basis_elements()
        # multiplicative stability where the product stays within the bound
        for i, a in enumerate(elems):
            for b in elems[i:]:
                if a.ord is None or b.ord is None:
                    continue
                if -(a.ord + b.ord) > self.degree_bound:
                    continue
                if not in_span(a * b, self.by_ord):
                    record["ft1_surrogate"]["products_in_A"] = False
        # FT2: A cap O = R (echelon has exactly the unit at order >= 0)
        record["ft2"] = {
            "A_cap_O_is_R": set(o for o in self.by_ord if o >= 0) == {0},
            "quotient_rank": self.quotient_rank(),
        }
        # FT3: total isotropy on the stored basis
        for i, a in enumerate(elems):
            for b in elems[i:]:
                if residue_form(a, b):
                    record["ft3"] = False
        # FT4 for the supplied derivations; images whose pole order exceeds
        # the stored bound are recorded as unchecked, never as passes
        for name, d in (
            derivations.items() if isinstance(derivations, dict) else enumerate(derivations)
        ):
            entry = {"preserves_A": True, "maps_perp_to_A": True, "unchecked": 0}
            for a in elems:
                if a.ord is None:
                    continue
                verdict = span_membership(d.apply(a), self.by_ord)
                if verdict is None:
                    entry["unchecked"] += 1
                elif not verdict:
                    entry["preserves_A"] = False
            for rep in perp_reps:
                verdict = span_membership(d.apply(rep), self.by_ord)
                if verdict is None:
                    entry["unchecked"] += 1
                elif not verdict:
                    entry["maps_perp_to_A"] = False
            record["ft4"][str(name)] = entry
        self.certification = record
        return record

    def to_json(self) -> dict:
        return {
            "window": self.window,
            "degree_bound": self.degree_bound,
            "orders": sorted(self.by_ord),
            "quotient_rank": self.quotient_rank(),
            "certification": self.certification,
        }


def genus0_subalgebra(window: int, degree_bound: int) -> FockSubalgebra:
    """The polynomial subalgebra C[t^{-1}] of the one-point genus-0 model."""
    basis = [LaurentSeries.t_power(-k) for k in range(degree_bound + 1)]
    return FockSubalgebra(basis, window, degree_bound)


class SemiLocalSubalgebra:
    """Fock-type certification over a finite puncture set.

    Generators are SemiLocalSeries; membership and corank are decided by
    exact linear algebra on the stacked coordinate windows, and the residue
    form is the sum of the component residues.  The quotient construction
    itself ships only for the one-puncture models.
    """

    def __init__(self, basis, window: int, degree_bound: int):
        from .laurent import SemiLocalSeries

        if not basis or not isinstance(basis[0], SemiLocalSeries):
            raise TypeError("SemiLocalSubalgebra takes SemiLocalSeries generators")
        self.basis = list(basis)
        self.punctures = basis[0].punctures
        self.window = window
        self.degree_bound = degree_bound
        self.certification: dict = {}

    def _common_prec(self, extra=()):
        precs = [
            f.parts[p].prec for f in list(self.basis) + list(extra) for p in self.punctures
        ]
        return min([self.window] + precs)

    def _coords(self, f, hi: int) -> list:
        out = []
        for p in self.punctures:
            comp = f.parts[p]
            for e in range(-self.degree_bound, hi):
                out.append(comp.coeffs.get(e, 0))
        return out

    def member(self, f) -> bool:
        """Membership on the common knowledge window of all participants."""
        hi = self._common_prec(extra=[f])
        cols = [self._coords(b, hi) for b in self.basis]
        target = self._coords(f, hi)
        m = ExactMatrix([[cols[j][i] for j in range(len(cols))] for i in range(len(target))])
        try:
            m.solve(target)
            return True
        except Inconsistent:
            return False

    def quotient_rank(self) -> int:
        """Corank of the negative part of A + O within the degree bound."""
        neg_len = self.degree_bound * len(self.punctures)

        def neg_coords(f):
            out = []
            for p in self.punctures:
                comp = f.parts[p]
                for e in range(-self.degree_bound, 0):
                    out.append(comp.coeffs.get(e, 0))
            return out

        rows = [neg_coords(b) for b in self.basis]
        rank = ExactMatrix(rows).rank() if rows else 0
        return neg_len - rank

    def certify(self, derivations=(), perp_reps=()) -> dict:
        from .laurent import semilocal_residue_form

        record = {
            "window": self.window,
            "degree_bound": self.degree_bound,
            "punctures": list(self.punctures),
            "ft1_surrogate": {"products_in_A": True},
            "ft2": {"quotient_rank": self.quotient_rank()},
            "ft3": True,
            "ft4": {},
        }
        for i, a in enumerate(self.basis):
            for b in self.basis[i:]:
                if semilocal_residue_form(a, b):
                    record["ft3"] = False
                prod = a * b
                if all(
                    c.ord is None or -c.ord <= self.degree_bound
                    for c in prod.parts.values()
                ):
                    if not self.member(prod):
                        record["ft1_surrogate"]["products_in_A"] = False
        for name, d in (
            derivations.items() if isinstance(derivations, dict) else enumerate(derivations)
        ):
            entry = {"preserves_A": True, "maps_perp_to_A": True}
            for a in self.basis:
                img = d(a) if callable(d) else None
                if img is not None and not self.member(img):
                    entry["preserves_A"] = False
            for rep in perp_reps:
                img = d(rep) if callable(d) else None
                if img is not None and not self.member(img):
                    entry["maps_perp_to_A"] = False
            record["ft4"][str(name)] = entry
        self.certification = record
        return record


# -- A-perp ----------------------------------------------------------------------


def compute_perp(a_sub: FockSubalgebra, lo: int, hi: int, guard: int = 2):
    """Degree-filtered basis of the A-perp solution space on the coordinate
    window [lo, hi).

    Constraints come from basis elements whose pole order is below hi (deeper
    elements pair with the unknown tail, so including them would wrongly
    discard truncations of genuine A-perp elements); the returned basis drops
    leading orders inside the top guard zone, where the window cannot
    distinguish junk from truncations.
    """
    unknowns = list(range(lo, hi))
    rows = []
    for o in sorted(a_sub.by_ord):
        a = a_sub.by_ord[o]
        if -o > hi - 1:
            continue
        if a.prec <= -lo:
            raise WindowTooNarrow(
                f"basis window prec={a.prec} too small for perp range [{lo},{hi})"
            )
        # (f, a) = res(a df) = sum_e c_e * e * [coeff of t^{-e} in a]
        rows.append([Fraction(e) * a.coeffs.get(-e, 0) for e in unknowns])
    kernel = ExactMatrix(rows).kernel() if rows else []
    series = [
        LaurentSeries(lo, hi, {e: c for e, c in zip(unknowns, vec)}) for vec in kernel
    ]
    filtered = [
        f for f in echelonize(series).values() if f.ord is not None and f.ord < hi - guard
    ]
    return sorted(filtered, key=lambda f: f.ord)


# -- the symplectic quotient ------------------------------------------------------


class QuotientSymplectic:
    """Lifts e_{-g}..e_{-1}, e_1..e_g in A-perp with (e_i, e_j) = i d_{i+j,0},
    e_i in m for i > 0, and A + span(e_{-i}) totally isotropic."""

    def __init__(self, a_sub: FockSubalgebra, neg_lifts, pos_lifts):
        self.a_sub = a_sub
        self.neg_lifts = list(neg_lifts)  # e_{-1} first
        self.pos_lifts = list(pos_lifts)
        self.g = len(neg_lifts)
        self._verify()
        # the K^- echelon uses A-reduced representatives (same classes; the
        # choice of lift only changes them by A-elements)
        self.kminus_by_ord = dict(a_sub.by_ord)
        self._lift_order: dict = {}
        for i, e in enumerate(self.neg_lifts):
            rep, _ = echelon_reduce(e, a_sub.by_ord)
            if rep.ord is None or rep.ord in self.kminus_by_ord or rep.ord > 0:
                raise NoIsotropicLift("negative lifts must fill the missing orders")
            self.kminus_by_ord[rep.ord] = rep
            self._lift_order[rep.ord] = i + 1

    def _verify(self):
        g = self.g
        def lift(i):
            return self.pos_lifts[i - 1] if i > 0 else self.neg_lifts[-i - 1]
        for i in list(range(-g, 0)) + list(range(1, g + 1)):
            for j in list(range(-g, 0)) + list(range(1, g + 1)):
                want = i if i + j == 0 else 0
                got = residue_form(lift(i), lift(j))
                if got - want:
                    raise NoIsotropicLift(
                        f"Gram entry ({i},{j}) is {got}, expected {want}"
                    )
        for i in range(1, g + 1):
            if self.pos_lifts[i - 1].ord is None or self.pos_lifts[i - 1].ord < 1:
                raise NoIsotropicLift("positive lifts must lie in m")
            for a in self.a_sub.basis_elements():
                if residue_form(lift(i), a) or residue_form(lift(-i), a):
                    raise NoIsotropicLift("lifts must be perpendicular to A")

    def gram(self) -> ExactMatrix:
        g = self.g
        idx = list(range(-g, 0)) + list(range(1, g + 1))
        def lift(i):
            return self.pos_lifts[i - 1] if i > 0 else self.neg_lifts[-i - 1]
        return ExactMatrix(
            [[residue_form(lift(i), lift(j)) for j in idx] for i in idx]
        )

    def perp_spans_check(self, lo: int, hi: int, guard: int = 2) -> bool:
        """A-perp = A + span(lifts) within the window: reduce each computed
        perp basis element by A and the lifts; remainders must vanish."""
        perp = compute_perp(self.a_sub, lo, hi, guard)
        span = dict(self.kminus_by_ord)
        for e in self.pos_lifts:
            span[e.ord] = e
        span = echelonize(list(span.values()))
        return all(in_span(f, span) for f in perp)


def build_quotient(a_sub: FockSubalgebra, lo: int | None = None, hi: int | None = None,
                   guard: int = 2) -> QuotientSymplectic:
    """Construct the quotient lifts from A alone, per the explicit recipe."""
    if lo is None:
        lo = -a_sub.degree_bound
    if hi is None:
        hi = min(a_sub.window, a_sub.degree_bound + 1)
    perp = compute_perp(a_sub, lo, hi, guard)
    neg, pos = [], []
    for f in perp:
        rem, _ = echelon_reduce(f, a_sub.by_ord)
        if rem.is_zero():
            continue  # in A
        (neg if rem.ord < 0 else pos).append(rem)
    neg = [echelonize(neg)[o] for o in sorted(echelonize(neg), reverse=True)]
    pos = [echelonize(pos)[o] for o in sorted(echelonize(pos))]
    g = a_sub.quotient_rank()
    if len(neg) != g:
        raise NoIsotropicLift(
            f"found {len(neg)} negative classes, expected quotient rank {g}"
        )
    if len(pos) < g:
        raise NoIsotropicLift(f"found {len(pos)} positive classes, need {g}")
    pos = pos[:g]
    if g == 0:
        return QuotientSymplectic(a_sub, [], [])
    # isotropy correction of the negative lifts by positive ones
    b = ExactMatrix([[residue_form(x, y) for y in neg] for x in neg])
    p = ExactMatrix([[residue_form(x, f) for f in pos] for x in neg])
    gamma = (b * p.inverse().transpose()).map(lambda v: v * Fraction(1, 2))
    corrected = []
    for i in range(g):
        e = neg[i]
        for k in range(g):
            e = e + pos[k].scale(gamma[i, k])
        corrected.append(e)
    # normalize positive lifts: (e_i, e_{-j}) = i delta_{ij}
    q = ExactMatrix([[residue_form(f, e) for e in corrected] for f in pos])
    mu = ExactMatrix(
        [[Fraction(i + 1) if i == j else Fraction(0) for j in range(g)] for i in range(g)]
    ) * q.inverse()
    pos_norm = []
    for i in range(g):
        e = LaurentSeries.zero(pos[0].prec)
        for k in range(g):
            e = e + pos[k].scale(mu[i, k])
        pos_norm.append(e)
    return QuotientSymplectic(a_sub, corrected, pos_norm)


# -- covariants --------------------------------------------------------------------


class KMinusVector:
    """Element of Sym(K^-): multisets over labels ('a', ord) and ('q', i)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {}
        for key, c in (terms or {}).items():
            if not c:
                continue
            key = tuple(sorted(key))
            s = self.terms.get(key, 0) + c
            if s:
                self.terms[key] = s
            else:
                self.terms.pop(key, None)

    @staticmethod
    def vacuum(coeff=1):
        return KMinusVector({(): coeff})

    def __add__(self, other):
        out = KMinusVector()
        out.terms = dict(self.terms)
        for k, c in other.terms.items():
            s = out.terms.get(k, 0) + c
            if s:
                out.terms[k] = s
            else:
                out.terms.pop(k, None)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        out = KMinusVector()
        if c:
            out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    def prepend(self, label):
        out = KMinusVector()
        out.terms = {tuple(sorted(k + (label,))): c for k, c in self.terms.items()}
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return not (self - other)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})·{'·'.join(map(str, k)) or 'v_0'}" for k, c in sorted(self.terms.items())
        )


def label_series(q: QuotientSymplectic, label) -> LaurentSeries:
    kind, v = label
    if kind == "a":
        return q.a_sub.by_ord[v]
    return q.neg_lifts[v - 1]


def realize_kminus(q: QuotientSymplectic, kv: KMinusVector) -> OscFockVector:
    """Multiply out the label series in the Fock module (t-mode model)."""
    out = OscFockVector()
    for key, c in kv.terms.items():
        v = OscFockVector.vacuum(c)
        for lab in key:
            v = series_multiply(label_series(q, lab), v)
        out = out + v
    return out


def mode_reduce(q: QuotientSymplectic, v: OscFockVector) -> KMinusVector:
    """Rewrite a t-mode Fock vector in the Sym(K^-) model, exactly within the
    stored windows.

    Each mode t^{-k} splits as (K^- part) + (m part); the m part kills v_0 and
    contributes only mode commutators, which lowers the grade, so the
    recursion terminates.
    """
    for key in v.terms:
        if any(m >= 0 for m in key):
            raise NotReduced("apply the module action to positive modes first")
    out = KMinusVector()
    for key, c in v.terms.items():
        out = out + _reduce_monomial(q, key, c)
    return out


def _reduce_monomial(q: QuotientSymplectic, key, coeff) -> KMinusVector:
    if not key:
        return KMinusVector.vacuum(coeff)
    k0 = key[0]  # most negative mode
    rest = key[1:]
    mode = LaurentSeries.t_power(k0)
    mu, used = echelon_reduce(mode, q.kminus_by_ord)
    # mu is the m-part: echelon orders cover every order <= 0
    if mu and mu.ord is not None and mu.ord <= 0:
        raise NoIsotropicLift("K^- echelon does not complement m")
    out = KMinusVector()
    reduced_rest = _reduce_monomial(q, rest, coeff)
    for o, c in used.items():
        label = ("q", q._lift_order[o]) if o in q._lift_order else ("a", o)
        out = out + reduced_rest.scale(c).prepend(label)
    # m-part: commutators with the remaining modes
    if mu:
        for idx in range(len(rest)):
            m = rest[idx]
            pair = residue_form(mu, LaurentSeries.t_power(m))
            if pair:
                out = out + _reduce_monomial(
                    q, rest[:idx] + rest[idx + 1:], coeff * pair
                )
    return out


def covariants(q: QuotientSymplectic, kv: KMinusVector) -> FockVector:
    """Functorial quotient map to F(H_A, F_A): A-factors kill the monomial,
    quotient labels map to the corresponding generators of Sym(F_A-bar)."""
    space = standard_space(max(q.g, 1))
    out = FockVector(space)
    for key, c in kv.terms.items():
        if any(kind == "a" for kind, _v in key):
            continue
        fock_key = tuple(sorted(-idx for _kind, idx in key))
        cur = out.terms.get(fock_key, 0) + c
        if cur:
            out.terms[fock_key] = cur
        else:
            out.terms.pop(fock_key, None)
    return out


def covariants_of_modes(q: QuotientSymplectic, v: OscFockVector) -> FockVector:
    return covariants(q, mode_reduce(q, v))


def scalar_action(D: Derivation, q: QuotientSymplectic, probes):
    """Certified scalar of the induced action of tau_hat(D) on covariants.

    D must be vertical and is expected to preserve A (certify with FT4).
    Probes are KMinusVector instances with nonzero covariant image; the same
    scalar must work for all of them, else NotScalar reports two witnesses.
    """
    if not D.is_vertical:
        raise ValueError("scalar_action takes a vertical derivation")
    op = tau_hat_D(D)
    scalar = None
    witness = None
    for probe in probes:
        realized = realize_kminus(q, probe)
        image = covariants_of_modes(q, op.apply(realized))
        base = covariants(q, probe)
        if not base:
            continue
        # solve image == lam * base on the leading key
        key = next(iter(base.terms))
        lam = image.terms.get(key, 0) / base.terms[key]
        if image != base.scale(lam):
            raise NotScalar(f"action is not scalar on probe {probe}")
        if scalar is None:
            scalar, witness = lam, probe
        elif lam - scalar:
            raise NotScalar(
                f"probe {witness} gives {scalar} but probe {probe} gives {lam}"
            )
    if scalar is None:
        raise ValueError("no probe had nonzero covariant image")
    return scalar
