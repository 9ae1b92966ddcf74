"""Finite symplectic Fock spaces: normal ordering, tau / tau-hat, inner product.

The space H has basis labels 1..g (spanning the maximal isotropic F) and
-1..-g (spanning the chosen complement F'), with a stored exact Gram matrix;
the default convention is (e_i, e_j) = i*delta_{i+j,0} times an optional
level scalar.  Conjugation is an antilinear involution given by a matrix;
the default is e_{-i} = sqrt(-1) * conj(e_i), which makes F' = conj(F) and
the induced Hermitian form positive definite.

Elements of the enveloping algebra U(H^) are kept in normal form with modes
sorted in nondecreasing label order and explicit hbar powers; the rewriting
rule is a.b - b.a = (a,b)*hbar.  The Fock space Sym(F') is modelled by
finitely supported maps from multisets of negative labels to scalars;
hbar acts as 1 there.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import ExactMatrix
from .scalars import GaussianRational, conj as _conj


class NotSymmetric(ValueError):
    """A Sym^2 coefficient matrix that is not symmetric."""


class HodgePositivityError(ValueError):
    """The induced Hermitian form is not positive definite on F."""


class SymplecticSpace:
    """2g-dimensional symplectic space with splitting H = F + F'.

    Coordinates are ordered (e_1, ..., e_g, e_{-1}, ..., e_{-g}).
    """

    def __init__(self, g: int, gram: ExactMatrix, conj_matrix: ExactMatrix,
                 check_positivity: bool = True, two_pi_normalized: bool = False):
        self.g = g
        self.gram = gram
        self.conj_matrix = conj_matrix
        # the alternative normalization <z,w> = (2 pi)^{-1} sqrt(-1)(w, conj z);
        # pi stays a formal tag on the inner-product values
        self.two_pi_normalized = two_pi_normalized
        n = 2 * g
        if gram.nrows != n or gram.ncols != n:
            raise ValueError("Gram matrix has wrong size")
        # antisymmetry and isotropy of F and F'
        if not (gram + gram.transpose()).is_zero():
            raise ValueError("Gram matrix is not antisymmetric")
        for i in range(g):
            for j in range(g):
                if gram[i, j] or gram[g + i, g + j]:
                    raise ValueError("F and F' must be totally isotropic")
        if not gram.det():
            raise ValueError("degenerate symplectic form")
        # conj is an antilinear involution respecting the real form
        cc = conj_matrix * conj_matrix.map(_conj)
        if not (cc - ExactMatrix.identity(n, one=self._one())).is_zero():
            raise ValueError("conjugation is not an involution")
        real = conj_matrix.transpose() * gram * conj_matrix - gram.map(_conj)
        if not real.is_zero():
            raise ValueError("symplectic form is not real for the conjugation")
        self._lmul_cache: dict = {}
        self._gram_inv = None
        self._hermitian = self._hermitian_gram()
        if check_positivity:
            self._check_positive()

    def _lmul(self, label: int, modes: tuple):
        """Normal form of e_label * (normal monomial): tuple of
        (modes, hbar-shift, coefficient)."""
        key = (label, modes)
        hit = self._lmul_cache.get(key)
        if hit is not None:
            return hit
        if not modes or label <= modes[0]:
            out = (((label,) + modes, 0, 1),)
        else:
            head, rest = modes[0], modes[1:]
            # e_a e_b = e_b e_a + (a, b) hbar  for a > b
            out = [((head,) + m2, dh, c) for m2, dh, c in self._lmul(label, rest)]
            pair = self.pairing_labels(label, head)
            if pair:
                out.append((rest, 1, pair))
            out = tuple(out)
        self._lmul_cache[key] = out
        return out

    def _one(self):
        entry = next(e for row in self.gram.rows for e in row if e)
        return entry / entry

    # -- label bookkeeping ----------------------------------------------------

    def pos(self, label: int) -> int:
        if label > 0:
            return label - 1
        return self.g - label - 1

    def labels(self):
        return list(range(1, self.g + 1)) + [-i for i in range(1, self.g + 1)]

    def pairing_labels(self, a: int, b: int):
        return self.gram[self.pos(a), self.pos(b)]

    @property
    def gram_inverse(self) -> ExactMatrix:
        if self._gram_inv is None:
            self._gram_inv = self.gram.inverse()
        return self._gram_inv

    def pairing(self, u, v):
        """Symplectic form on coordinate vectors."""
        gv = self.gram.apply(v)
        return sum(x * y for x, y in zip(u, gv))

    def conj_vector(self, coords):
        """Antilinear conjugation on coordinate vectors."""
        return self.conj_matrix.apply([_conj(c) for c in coords])

    def basis_vector(self, label: int):
        v = [0] * (2 * self.g)
        v[self.pos(label)] = 1
        return v

    # -- Hermitian structure ---------------------------------------------------

    def _hermitian_gram(self) -> ExactMatrix:
        """h[i][j] = <e_{-i}, e_{-j}> = sqrt(-1)(conj(e_{-j}), e_{-i})."""
        i_unit = GaussianRational(0, 1)
        rows = []
        for a in range(1, self.g + 1):
            row = []
            ea = self.basis_vector(-a)
            for b in range(1, self.g + 1):
                cb = self.conj_vector(self.basis_vector(-b))
                row.append(i_unit * self.pairing(cb, ea))
            rows.append(row)
        return ExactMatrix(rows)

    def _check_positive(self):
        h = self._hermitian
        if not (h - h.transpose().map(_conj)).is_zero():
            raise HodgePositivityError("induced form is not Hermitian")
        for m in h.leading_principal_minors():
            if isinstance(m, (int, Fraction)):
                m = GaussianRational.coerce(m)
            if not isinstance(m, GaussianRational):
                raise HodgePositivityError(
                    "positivity is only decidable for numeric scalars; "
                    "construct with check_positivity=False and certify at a sample point"
                )
            if not (m.is_real and m.re > 0):
                raise HodgePositivityError(f"principal minor {m} is not positive")

    def hermitian_pair(self, a: int, b: int):
        """<e_a, e_b> for negative labels a, b."""
        from .scalars import PiScaled

        val = self._hermitian[-a - 1, -b - 1]
        if self.two_pi_normalized:
            return PiScaled(val * Fraction(1, 2), -1)
        return val


def standard_space(g: int, level=1, weights=None,
                   two_pi_normalized: bool = False) -> SymplecticSpace:
    """The convention (e_i, e_j) = w_i * level * delta_{i+j,0} (w_i = i by
    default) with conjugation e_{-i} = sqrt(-1) * conj(e_i)."""
    if weights is None:
        weights = list(range(1, g + 1))
    n = 2 * g
    zero = GaussianRational(0)
    gram = [[zero] * n for _ in range(n)]
    cm = [[zero] * n for _ in range(n)]
    mi = GaussianRational(0, -1)
    for i in range(1, g + 1):
        w = GaussianRational.coerce(weights[i - 1]) * GaussianRational.coerce(level)
        gram[i - 1][g + i - 1] = w
        gram[g + i - 1][i - 1] = -w
        # conj(e_i) = -sqrt(-1) e_{-i};  conj(e_{-i}) = -sqrt(-1) e_i
        cm[g + i - 1][i - 1] = mi
        cm[i - 1][g + i - 1] = mi
    return SymplecticSpace(
        g, ExactMatrix(gram), ExactMatrix(cm), two_pi_normalized=two_pi_normalized
    )


# -- enveloping algebra -------------------------------------------------------


class UElement:
    """Normal-form element of U(H^)[hbar^{-1}] over a SymplecticSpace."""

    __slots__ = ("space", "terms")

    def __init__(self, space: SymplecticSpace, terms: dict | None = None):
        self.space = space
        self.terms = {}
        for (modes, h), c in (terms or {}).items():
            if not c:
                continue
            self._accumulate(list(modes), h, c)

    def _accumulate(self, modes, h, coeff):
        """Rewrite into normal form (nondecreasing labels) and add."""
        words = {((), 0): coeff}
        for x in reversed(list(modes)):
            nxt: dict = {}
            for (m, dh), c in words.items():
                for m2, dh2, c2 in self.space._lmul(x, m):
                    key = (m2, dh + dh2)
                    s = nxt.get(key, 0) + (c * c2 if c2 != 1 else c)
                    if s:
                        nxt[key] = s
                    else:
                        nxt.pop(key, None)
            words = nxt
        for (m, dh), c in words.items():
            key = (m, h + dh)
            s = self.terms.get(key, 0) + c
            if s:
                self.terms[key] = s
            else:
                self.terms.pop(key, None)

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zero(space):
        return UElement(space)

    @staticmethod
    def monomial(space, modes, hpow=0, coeff=1):
        return UElement(space, {(tuple(modes), hpow): coeff})

    @staticmethod
    def from_vector(space, coords):
        u = UElement(space)
        for label in space.labels():
            c = coords[space.pos(label)]
            if c:
                u._accumulate([label], 0, c)
        return u

    @staticmethod
    def from_tensor(space, tensor: ExactMatrix, hpow=0):
        """Image of sum tensor[u,v] e_u (x) e_v under the hat map."""
        u = UElement(space)
        for a in space.labels():
            for b in space.labels():
                c = tensor[space.pos(a), space.pos(b)]
                if c:
                    u._accumulate([a, b], hpow, c)
        return u

    # -- algebra ----------------------------------------------------------------

    def __add__(self, other):
        out = UElement(self.space)
        out.terms = dict(self.terms)
        for key, c in other.terms.items():
            s = out.terms.get(key, 0) + c
            if s:
                out.terms[key] = s
            else:
                out.terms.pop(key, None)
        return out

    def __neg__(self):
        out = UElement(self.space)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        out = UElement(self.space)
        if c:
            out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, UElement):
            return self.scale(other)
        out = UElement(self.space)
        for (m1, h1), c1 in self.terms.items():
            for (m2, h2), c2 in other.terms.items():
                out._accumulate(list(m1) + list(m2), h1 + h2, c1 * c2)
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def bracket(self, other):
        return self * other - other * self

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, UElement):
            return NotImplemented
        return not (self - other)

    def bar(self):
        """The anti-involution: conjugate entries, reverse factor order."""
        out = UElement(self.space)
        for (modes, h), c in self.terms.items():
            expansions = [(list(), _conj(c))]
            for label in reversed(modes):
                coords = self.space.conj_vector(self.space.basis_vector(label))
                new = []
                for prefix, cc in expansions:
                    for lab2 in self.space.labels():
                        w = coords[self.space.pos(lab2)]
                        if w:
                            new.append((prefix + [lab2], cc * w))
                expansions = new
            for m, cc in expansions:
                out._accumulate(m, h, cc)
        return out

    def parity(self):
        parities = {len(m) % 2 for (m, _h) in self.terms}
        if len(parities) > 1:
            raise ValueError("mixed Z/2 parity")
        return parities.pop() if parities else 0

    def scalar_part(self):
        """Coefficient of the empty monomial with hbar specialized to 1."""
        return sum(c for (m, _h), c in self.terms.items() if not m)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (m, h), c in sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]), kv[0])):
            mono = "∘".join(f"e_{{{i}}}" for i in m) or "1"
            if h:
                mono += f"·ħ^{h}"
            bits.append(f"({c})·{mono}")
        return " + ".join(bits)


# -- sp(H) and the E-correspondence -------------------------------------------


class SpElement:
    """Infinitesimally symplectic endomorphism in the (F, F') coordinates."""

    __slots__ = ("space", "matrix")

    def __init__(self, space: SymplecticSpace, matrix: ExactMatrix, check=True):
        self.space = space
        self.matrix = matrix
        if check:
            j = space.gram
            if not (matrix.transpose() * j + j * matrix).is_zero():
                raise ValueError("matrix does not lie in sp(H)")

    def __add__(self, other):
        return SpElement(self.space, self.matrix + other.matrix, check=False)

    def __sub__(self, other):
        return SpElement(self.space, self.matrix - other.matrix, check=False)

    def scale(self, c):
        return SpElement(self.space, self.matrix * c, check=False)

    def bracket(self, other):
        return SpElement(
            self.space,
            self.matrix * other.matrix - other.matrix * self.matrix,
            check=False,
        )

    def apply_label(self, label):
        """Image of a basis vector, as coordinates."""
        return [self.matrix[r, self.space.pos(label)] for r in range(2 * self.space.g)]

    def trace_on_complement(self):
        """trace(A^{F'}): restriction to F' followed by projection onto F'."""
        g = self.space.g
        return sum(self.matrix[g + i, g + i] for i in range(g))

    def trace_on_f(self):
        g = self.space.g
        return sum(self.matrix[i, i] for i in range(g))

    def stabilizes_f(self) -> bool:
        g = self.space.g
        return all(not self.matrix[g + i, j] for i in range(g) for j in range(g))


def E_map(space: SymplecticSpace, tensor: ExactMatrix) -> SpElement:
    """E(sum C[u,v] e_u (x) e_v)(x) = 2 (e_v, x) e_u; requires C symmetric."""
    if not (tensor - tensor.transpose()).is_zero():
        raise NotSymmetric("coefficient matrix is not symmetric")
    return SpElement(space, (tensor * space.gram) * 2)


def E_inverse(space: SymplecticSpace, a: SpElement) -> ExactMatrix:
    tensor = a.matrix * space.gram_inverse
    tensor = tensor.map(lambda v: v * Fraction(1, 2))
    if not (tensor - tensor.transpose()).is_zero():
        raise NotSymmetric("endomorphism is not in sp(H)")
    return tensor


def normal_order_tensor(space: SymplecticSpace, tensor: ExactMatrix) -> ExactMatrix:
    """Projector on H (x) H: transposition on F (x) F', identity elsewhere."""
    g = space.g
    out = [[tensor[i, j] for j in range(2 * g)] for i in range(2 * g)]
    for i in range(g):          # F rows
        for j in range(g, 2 * g):  # F' cols
            c = out[i][j]
            if c:
                out[i][j] = 0
                out[j][i] = out[j][i] + c
    return ExactMatrix(out)


def tau(space: SymplecticSpace, a: SpElement) -> UElement:
    """tau(A) = hbar^{-1} * hat(E^{-1}(A)); a Lie homomorphism into U(H^)."""
    return UElement.from_tensor(space, E_inverse(space, a), hpow=-1)


def tau_hat(space: SymplecticSpace, a: SpElement) -> UElement:
    """Normally ordered variant; differs from tau by -1/2 trace(A^{F'})."""
    return UElement.from_tensor(
        space, normal_order_tensor(space, E_inverse(space, a)), hpow=-1
    )


def tau_hat_wrt_complement(space: SymplecticSpace, a: SpElement, complement) -> UElement:
    """tau-hat computed with a second isotropic complement W = span(w_1..w_g).

    `complement` is a list of g coordinate vectors.  Used to verify that for
    A stabilizing F the operator does not depend on the choice of complement.
    """
    g = space.g
    for i in range(g):
        for j in range(g):
            if space.pairing(complement[i], complement[j]):
                raise ValueError("complement is not isotropic")
    cols = [space.basis_vector(i) for i in range(1, g + 1)] + list(complement)
    p = ExactMatrix([[cols[j][i] for j in range(2 * g)] for i in range(2 * g)])
    p_inv = p.inverse()
    c_e = E_inverse(space, a)
    c_f = p_inv * c_e * p_inv.transpose()
    # transpose the F (x) W part in the f-coordinates
    c_f = normal_order_tensor(space, c_f)
    c_back = p * c_f * p.transpose()
    return UElement.from_tensor(space, c_back, hpow=-1)


# -- the Fock module ----------------------------------------------------------


class FockVector:
    """Finitely supported map from multisets of negative labels to scalars."""

    __slots__ = ("space", "terms")

    def __init__(self, space: SymplecticSpace, terms: dict | None = None):
        self.space = space
        self.terms = {}
        for key, c in (terms or {}).items():
            if c:
                key = tuple(sorted(key))
                if any(l >= 0 for l in key):
                    raise ValueError("Fock keys are multisets of negative labels")
                s = self.terms.get(key, 0) + c
                if s:
                    self.terms[key] = s
                else:
                    self.terms.pop(key, None)

    @staticmethod
    def vacuum(space):
        return FockVector(space, {(): 1})

    @staticmethod
    def basis(space, key):
        return FockVector(space, {tuple(sorted(key)): 1})

    def __add__(self, other):
        out = FockVector(self.space)
        out.terms = dict(self.terms)
        for k, c in other.terms.items():
            s = out.terms.get(k, 0) + c
            if s:
                out.terms[k] = s
            else:
                out.terms.pop(k, None)
        return out

    def __neg__(self):
        out = FockVector(self.space)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        out = FockVector(self.space)
        if c:
            out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    __rmul__ = scale
    __mul__ = scale

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return not (self - other)

    def grade_components(self):
        out: dict = {}
        for k, c in self.terms.items():
            out.setdefault(len(k), FockVector(self.space)).terms[k] = c
        return out

    def max_grade(self):
        return max((len(k) for k in self.terms), default=0)

    def map_coefficients(self, fn):
        out = FockVector(self.space)
        for k, c in self.terms.items():
            v = fn(c)
            if v:
                out.terms[k] = v
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            mono = "".join(f"e_{{{i}}}" for i in k)
            bits.append(f"({c})·{mono}v_o" if mono else f"({c})·v_o")
        return " + ".join(bits)


def rho_apply(u: UElement, v: FockVector) -> FockVector:
    """Left action of U(H^) with hbar = 1: negative labels multiply, positive
    labels act by the pairing derivation, the empty monomial scales."""
    space = v.space
    out = FockVector(space)
    for (modes, _h), coeff in u.terms.items():
        current = {k: c * coeff for k, c in v.terms.items()}
        for m in reversed(modes):
            nxt: dict = {}
            if m < 0:
                for k, c in current.items():
                    kk = tuple(sorted(k + (m,)))
                    s = nxt.get(kk, 0) + c
                    if s:
                        nxt[kk] = s
                    else:
                        nxt.pop(kk, None)
            else:
                for k, c in current.items():
                    seen = set()
                    for j in k:
                        if j in seen:
                            continue
                        seen.add(j)
                        pair = space.pairing_labels(m, j)
                        if pair:
                            lst = list(k)
                            lst.remove(j)
                            kk = tuple(lst)
                            s = nxt.get(kk, 0) + c * pair * k.count(j)
                            if s:
                                nxt[kk] = s
                            else:
                                nxt.pop(kk, None)
            current = nxt
            if not current:
                break
        for k, c in current.items():
            s = out.terms.get(k, 0) + c
            if s:
                out.terms[k] = s
            else:
                out.terms.pop(k, None)
    return out


def rho_vector(space: SymplecticSpace, coords, v: FockVector) -> FockVector:
    return rho_apply(UElement.from_vector(space, coords), v)


def endomorphism_action(space: SymplecticSpace, m: ExactMatrix, v: FockVector) -> FockVector:
    """Derivation action of M in End(F') (e_{-coordinates}) on Sym F'."""
    out = FockVector(space)
    for key, c in v.terms.items():
        for idx, j in enumerate(key):
            col = -j - 1
            for a in range(1, space.g + 1):
                w = m[a - 1, col]
                if w:
                    kk = tuple(sorted(key[:idx] + (-a,) + key[idx + 1:]))
                    s = out.terms.get(kk, 0) + c * w
                    if s:
                        out.terms[kk] = s
                    else:
                        out.terms.pop(kk, None)
    return out


# -- inner product ------------------------------------------------------------


def permanent(m: ExactMatrix):
    """Ryser's formula with exact scalars (desk scale: n <= ~8)."""
    n = m.nrows
    if n == 0:
        return 1
    if n != m.ncols:
        raise ValueError("permanent of a non-square matrix")
    total = 0
    row_sums = [0] * n
    subset = 0
    sign = 1 if n % 2 == 0 else -1
    # iterate over subsets by Gray code
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        changed = (gray ^ ((k - 1) ^ ((k - 1) >> 1))).bit_length() - 1
        if gray & (1 << changed):
            for i in range(n):
                row_sums[i] = row_sums[i] + m[i, changed]
        else:
            for i in range(n):
                row_sums[i] = row_sums[i] - m[i, changed]
        prod = 1
        for i in range(n):
            prod = prod * row_sums[i]
        bits = bin(gray).count("1")
        total = total + prod * ((-1) ** (n - bits))
    return total


def inner_product(v: FockVector, w: FockVector):
    """Hermitian pairing: graded pieces orthogonal, permanents on each grade.

    Linear in the first slot, conjugate-linear in the second.
    """
    space = v.space
    total = 0
    for kv, cv in v.terms.items():
        for kw, cw in w.terms.items():
            if len(kv) != len(kw):
                continue
            n = len(kv)
            mat = ExactMatrix(
                [[space.hermitian_pair(a, b) for b in kw] for a in kv]
            )
            total = total + cv * _conj(cw) * permanent(mat)
    return total


def ebar_monomial(space: SymplecticSpace, indices) -> FockVector:
    """The vector conj(e_{i_1}) ... conj(e_{i_n}) v_o for positive indices."""
    v = FockVector.vacuum(space)
    for i in indices:
        coords = space.conj_vector(space.basis_vector(i))
        v = rho_vector(space, coords, v)
    return v


# -- named checks -------------------------------------------------------------


def adjoint_check(space, coords, v: FockVector, w: FockVector) -> bool:
    """<rho(a) v, w> == <v, rho(sqrt(-1) conj(a)) w>."""
    left = inner_product(rho_vector(space, coords, v), w)
    adj = [GaussianRational(0, 1) * c for c in space.conj_vector(coords)]
    right = inner_product(v, rho_vector(space, adj, w))
    return not (left - right)


def sym2F_tensor(space, c_f: ExactMatrix) -> ExactMatrix:
    """Embed a symmetric g x g matrix over F into a full H (x) H tensor."""
    g = space.g
    zero = c_f[0, 0] - c_f[0, 0]
    out = [[zero] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        for j in range(g):
            out[i][j] = c_f[i, j]
    return ExactMatrix(out)


def conj_tensor(space, tensor: ExactMatrix) -> ExactMatrix:
    """bar(sum C[u,v] e_u (x) e_v) = sum conj(C[u,v]) conj(e_v) (x) conj(e_u)."""
    cm = space.conj_matrix
    return cm * tensor.map(_conj).transpose() * cm.transpose()


def bracket_TT(space, alpha_f: ExactMatrix, beta_f: ExactMatrix, probe: FockVector):
    """For alpha, beta in Sym^2 F: the bracket [rho(bar alpha), rho(beta)]
    equals the evident action of E_{F'}(bar alpha) E_F(beta) in End(F') plus
    the central scalar 1/2 trace of it.  Returns (endomorphism, scalar,
    certified-on-probe)."""
    if not (alpha_f - alpha_f.transpose()).is_zero() or not (
        beta_f - beta_f.transpose()
    ).is_zero():
        raise NotSymmetric("inputs must be symmetric")
    g = space.g
    alpha_bar = conj_tensor(space, sym2F_tensor(space, alpha_f))
    beta_t = sym2F_tensor(space, beta_f)
    a_big = (alpha_bar * space.gram) * 2   # E of the conjugated tensor
    b_big = (beta_t * space.gram) * 2
    # blocks: E_{F'}(bar alpha): F -> F' lives in rows F', cols F
    m1 = ExactMatrix([[a_big[g + i, j] for j in range(g)] for i in range(g)])
    m2 = ExactMatrix([[b_big[i, g + j] for j in range(g)] for i in range(g)])
    end = m1 * m2
    scalar = end.trace() * Fraction(1, 2)
    u_alpha_bar = UElement.from_tensor(space, alpha_bar)
    u_beta = UElement.from_tensor(space, beta_t)
    lhs = rho_apply(u_alpha_bar, rho_apply(u_beta, probe)) - rho_apply(
        u_beta, rho_apply(u_alpha_bar, probe)
    )
    rhs = endomorphism_action(space, end, probe) + probe.scale(scalar)
    return end, scalar, lhs == rhs


def fock_basis(space, max_grade: int):
    """All multiset basis keys of grade <= max_grade."""
    labels = [-i for i in range(1, space.g + 1)]

    def rec(start, depth):
        if depth == 0:
            yield ()
            return
        for idx in range(start, len(labels)):
            for rest in rec(idx, depth - 1):
                yield (labels[idx],) + rest

    out = []
    for d in range(max_grade + 1):
        out.extend(tuple(sorted(k)) for k in rec(0, d))
    return out
