"""The group of order preserving automorphisms of the operator ring.

Two kinds of building blocks appear:

* shift automorphisms, parameterized by a vector s of truncated p-adic
  integers; they fix every Laurent polynomial and send d_i to
  d_i + s_i x_i^{-1}.  The image of a divided power d_i^[k] is the
  binomial operator expansion

      sum_{j=0}^{k} C(s_i, k - j) x_i^{j-k} d_i^[j],

  whose action on x^m is C(m + s_i, k) x^{m-k} (certified in the tests);

* monomial automorphisms x_j -> lambda_j x^{A e_j} with A an integer
  matrix of determinant +-1, acting on operators by conjugation.

Every order preserving automorphism factors uniquely as a shift times a
monomial automorphism; `extract_digits` recovers the p-adic digits one
level at a time and `factorize` produces the full factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

from .diffop import DiffOp, divided_image_from_levels, normal_form_from_action
from .errors import (
    InsufficientPrecision,
    MismatchError,
    NotAUnit,
    NotGL,
    NotInStabilizer,
    NotSigmaForm,
    PrecisionMismatch,
)
from .laurent import LaurentPoly
from .report import CheckReport
from .scalars import (
    FpScalar,
    PadicInt,
    Prime,
    _digit_binom_table,
    as_prime,
    padic_length,
)

# ---------------------------------------------------------------------------
# shift automorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftVector:
    """A vector of truncated p-adic integers, one per variable; the
    parameter of a shift automorphism."""

    components: tuple[PadicInt, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("need at least one component")
        first = self.components[0]
        for c in self.components[1:]:
            if c.p != first.p:
                raise MismatchError("components disagree on the prime")
            if c.precision != first.precision:
                raise MismatchError("components disagree on precision")

    @property
    def p(self) -> Prime:
        return self.components[0].p

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def precision(self) -> int:
        return self.components[0].precision

    @classmethod
    def from_ints(cls, values, p, precision) -> "ShiftVector":
        p = as_prime(p)
        return cls(tuple(PadicInt.from_int(v, p, precision) for v in values))

    @classmethod
    def from_digits(cls, digit_rows, p) -> "ShiftVector":
        p = as_prime(p)
        return cls(tuple(PadicInt(tuple(row), p) for row in digit_rows))

    @classmethod
    def zeros(cls, p, n, precision) -> "ShiftVector":
        return cls.from_ints([0] * n, p, precision)

    def digit_rows(self) -> list[list[int]]:
        return [list(c.digits) for c in self.components]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "ShiftVector") -> "ShiftVector":
        if self.n != other.n:
            raise MismatchError("length mismatch")
        return ShiftVector(tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "ShiftVector":
        return ShiftVector(tuple(-a for a in self.components))


def matrix_shift(matrix, s: ShiftVector) -> ShiftVector:
    """Matrix-vector product over the p-adics at the vector's precision."""
    n = s.n
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise MismatchError("matrix shape does not match the shift vector")
    vals = [c.to_int() for c in s.components]
    out = [sum(matrix[i][j] * vals[j] for j in range(n)) for i in range(n)]
    return ShiftVector.from_ints(out, s.p, s.precision)


@lru_cache(maxsize=4096)
def _shift_expansion(digits: tuple[int, ...], p: int, k: int) -> tuple[tuple[int, int], ...]:
    """Nonzero pairs (w, C(s, k - w) mod p) for w in [0, k].

    `digits` must be the first padic_length(k) digits of s.  Candidates
    m = k - w are enumerated by digit domination (m_r <= s_r for every
    position), which visits exactly the nonzero binomials.
    """
    table = _digit_binom_table(p)
    partial = [(0, 1)]
    pw = 1
    for dr in digits:
        row = table[dr]
        partial = [
            (m + mr * pw, c * row[mr] % p)
            for m, c in partial
            for mr in range(dr + 1)
        ]
        pw *= p
    return tuple((k - m, c) for m, c in partial if m <= k)


def shift_apply(s: ShiftVector, op: DiffOp) -> DiffOp:
    """Apply the shift automorphism with parameter s to an operator.

    Laurent coefficients are fixed; each d^[beta] becomes the product of
    the per-variable binomial operator expansions.  Requires the precision
    of s to cover the p-adic length of every divided index in `op`.
    """
    if op.p != s.p or op.n != s.n:
        raise MismatchError("operand mismatch in shift application")
    pp = s.p.p
    n = s.n
    prec = s.precision
    acc: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    for beta, f in op.parts.items():
        expansions = []
        for i in range(n):
            length = padic_length(beta[i], pp)
            if length > prec:
                raise InsufficientPrecision(
                    f"index {beta[i]} needs {length} digits, precision is {prec}"
                )
            expansions.append(
                _shift_expansion(s.components[i].digits[:length], pp, beta[i])
            )
        fterms = f.terms
        for combo in iproduct(*expansions):
            coeff = 1
            for _, c in combo:
                coeff = coeff * c % pp
            w = tuple(pair[0] for pair in combo)
            shift = tuple(w[i] - beta[i] for i in range(n))
            bucket = acc.setdefault(w, {})
            for gam, cf in fterms.items():
                key = tuple(gam[i] + shift[i] for i in range(n))
                v = (bucket.get(key, 0) + cf * coeff) % pp
                if v:
                    bucket[key] = v
                elif key in bucket:
                    del bucket[key]
    proto = LaurentPoly.zero(s.p, n)
    parts = {w: proto._wrap(terms) for w, terms in acc.items() if terms}
    return DiffOp(s.p, n, parts)


def shift_divided_image(s: ShiftVector, i: int, k: int) -> DiffOp:
    """Image of d_i^[k] under the shift automorphism with parameter s."""
    return shift_apply(s, DiffOp.partial(s.p, s.n, i, k))


# ---------------------------------------------------------------------------
# monomial automorphisms
# ---------------------------------------------------------------------------


def int_det(matrix) -> int:
    """Exact integer determinant by fraction-free elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for col in range(n - 1):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) // prev
            m[r][col] = 0
        prev = m[col][col]
    return sign * m[-1][-1]


def int_inverse_unimodular(matrix) -> tuple[tuple[int, ...], ...]:
    """Inverse of an integer matrix with determinant +-1, via the adjugate."""
    n = len(matrix)
    det = int_det(matrix)
    if det not in (1, -1):
        raise NotGL(f"determinant {det} is not +-1")
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [matrix[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            cof = int_det(minor)
            if (i + j) % 2:
                cof = -cof
            inv[j][i] = cof * det
    return tuple(tuple(row) for row in inv)


@dataclass(frozen=True)
class MonomialAut:
    """x_j -> scalars[j] * x^(column j of matrix), a Laurent algebra
    automorphism; acts on operators by conjugation."""

    matrix: tuple[tuple[int, ...], ...]
    scalars: tuple[FpScalar, ...]

    def __post_init__(self):
        n = len(self.scalars)
        if n < 1:
            raise ValueError("need at least one variable")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise MismatchError("matrix must be n x n")
        if int_det(self.matrix) not in (1, -1):
            raise NotGL(f"matrix {self.matrix} has determinant != +-1")
        p = self.scalars[0].p
        for lam in self.scalars:
            if lam.p != p:
                raise MismatchError("scalars disagree on the prime")
            if lam.value == 0:
                raise ValueError("scalars must be nonzero")

    @property
    def p(self) -> Prime:
        return self.scalars[0].p

    @property
    def n(self) -> int:
        return len(self.scalars)

    @classmethod
    def create(cls, matrix, scalars, p) -> "MonomialAut":
        p = as_prime(p)
        return cls(
            tuple(tuple(int(e) for e in row) for row in matrix),
            tuple(FpScalar(int(v) % p.p, p) for v in scalars),
        )

    @classmethod
    def identity(cls, p, n) -> "MonomialAut":
        p = as_prime(p)
        eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        return cls(eye, tuple(FpScalar(1, p) for _ in range(n)))

    def is_identity(self) -> bool:
        n = self.n
        return all(
            self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
        ) and all(lam.value == 1 for lam in self.scalars)

    def apply_exponents(self, gamma) -> tuple[int, tuple[int, ...]]:
        """Image of the monomial x^gamma as (coefficient, exponent vector)."""
        pp = self.p.p
        n = self.n
        coeff = 1
        for j in range(n):
            if gamma[j]:
                coeff = coeff * pow(self.scalars[j].value, gamma[j], pp) % pp
        exps = tuple(
            sum(self.matrix[i][j] * gamma[j] for j in range(n)) for i in range(n)
        )
        return coeff, exps

    def apply_laurent(self, f: LaurentPoly) -> LaurentPoly:
        if f.p != self.p or f.n != self.n:
            raise MismatchError("operand mismatch in monomial automorphism")
        out: dict[tuple[int, ...], int] = {}
        pp = self.p.p
        for gamma, c in f.terms.items():
            coeff, exps = self.apply_exponents(gamma)
            v = (out.get(exps, 0) + c * coeff) % pp
            if v:
                out[exps] = v
            elif exps in out:
                del out[exps]
        return LaurentPoly.zero(self.p, self.n)._wrap(out)

    def compose(self, other: "MonomialAut") -> "MonomialAut":
        """self after other."""
        if self.p != other.p or self.n != other.n:
            raise MismatchError("automorphism mismatch")
        n = self.n
        pp = self.p.p
        a, b = self.matrix, other.matrix
        prod = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        scal = []
        for j in range(n):
            v = other.scalars[j].value
            for k in range(n):
                v = v * pow(self.scalars[k].value, b[k][j], pp) % pp
            scal.append(FpScalar(v % pp, self.p))
        return MonomialAut(prod, tuple(scal))

    def inverse(self) -> "MonomialAut":
        n = self.n
        pp = self.p.p
        binv = int_inverse_unimodular(self.matrix)
        scal = []
        for j in range(n):
            v = 1
            for k in range(n):
                v = v * pow(self.scalars[k].value, -binv[k][j], pp) % pp
            scal.append(FpScalar(v, self.p))
        return MonomialAut(binv, tuple(scal))


def monomial_apply(tau: MonomialAut, op: DiffOp, *, bound: int | None = None,
                   extra_probes: int = 8, seed: int = 0) -> DiffOp:
    """Conjugate an operator by a monomial automorphism.

    Goes through the generic normal-form recovery with the oracle
    f -> tau(op * tau^{-1}(f)); conjugation preserves the order, so the
    recovery bound defaults to the order of `op`.
    """
    if op.p != tau.p or op.n != tau.n:
        raise MismatchError("operand mismatch in conjugation")
    if op.is_zero():
        return op
    if tau.is_identity():
        return op
    inv = tau.inverse()
    if bound is None:
        bound = op.order()

    def oracle(exps):
        probe = inv.apply_laurent(LaurentPoly.monomial(op.p, op.n, exps))
        return tau.apply_laurent(op.act(probe))

    return normal_form_from_action(
        oracle, op.p, op.n, bound, extra_probes=extra_probes, seed=seed
    )


# ---------------------------------------------------------------------------
# truncated generator images
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorImages:
    """A truncated presentation of an automorphism: images of x_i, of
    x_i^{-1}, and of the divided-power levels d_i^[p^k] for k < precision."""

    p: Prime
    n: int
    precision: int
    x_images: tuple[DiffOp, ...]
    xinv_images: tuple[DiffOp, ...]
    d_images: tuple[tuple[DiffOp, ...], ...]

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError("precision must be at least 1")
        if len(self.x_images) != self.n or len(self.xinv_images) != self.n:
            raise MismatchError("need one x image and one inverse image per variable")
        if len(self.d_images) != self.n or any(
            len(row) != self.precision for row in self.d_images
        ):
            raise MismatchError("divided-power images must form an n x precision grid")
        for img in (*self.x_images, *self.xinv_images, *(d for row in self.d_images for d in row)):
            if img.p != self.p or img.n != self.n:
                raise MismatchError("image operator mismatch")

    @classmethod
    def identity(cls, p, n, precision) -> "GeneratorImages":
        p = as_prime(p)
        return cls(
            p,
            n,
            precision,
            tuple(DiffOp.from_laurent(LaurentPoly.variable(p, n, i)) for i in range(1, n + 1)),
            tuple(DiffOp.from_laurent(LaurentPoly.variable(p, n, i, -1)) for i in range(1, n + 1)),
            tuple(
                tuple(DiffOp.partial(p, n, i, p.p ** k) for k in range(precision))
                for i in range(1, n + 1)
            ),
        )

    def divided_image(self, i: int, j: int) -> DiffOp:
        """Image of d_i^[j], reassembled p-adically from the level images."""
        return divided_image_from_levels(self.d_images[i - 1], j)

    def restriction(self) -> MonomialAut:
        """The monomial automorphism read off from the x images."""
        cols = []
        scal = []
        for i in range(self.n):
            xi = self.x_images[i]
            if not xi.is_laurent():
                raise NotAUnit(f"image of x{i + 1} has positive order")
            lam, exps = xi.to_laurent().unit_decompose()
            prod = (xi * self.xinv_images[i]).to_laurent() if self.xinv_images[i].is_laurent() else None
            if prod is None or not prod.is_one():
                raise NotAUnit(f"x{i + 1} image and its declared inverse do not multiply to 1")
            cols.append(exps)
            scal.append(lam)
        matrix = tuple(tuple(cols[j][i] for j in range(self.n)) for i in range(self.n))
        if int_det(matrix) not in (1, -1):
            raise NotGL(f"exponent matrix {matrix} is not invertible over the integers")
        return MonomialAut(matrix, tuple(scal))

    def fixes_variables(self) -> bool:
        for i in range(1, self.n + 1):
            if self.x_images[i - 1] != DiffOp.from_laurent(LaurentPoly.variable(self.p, self.n, i)):
                return False
            if self.xinv_images[i - 1] != DiffOp.from_laurent(
                LaurentPoly.variable(self.p, self.n, i, -1)
            ):
                return False
        return True


def shift_generator_images(s: ShiftVector) -> GeneratorImages:
    """Generator images of the shift automorphism with parameter s."""
    p, n, prec = s.p, s.n, s.precision
    return GeneratorImages(
        p,
        n,
        prec,
        tuple(DiffOp.from_laurent(LaurentPoly.variable(p, n, i)) for i in range(1, n + 1)),
        tuple(DiffOp.from_laurent(LaurentPoly.variable(p, n, i, -1)) for i in range(1, n + 1)),
        tuple(
            tuple(shift_divided_image(s, i, p.p ** k) for k in range(prec))
            for i in range(1, n + 1)
        ),
    )


def monomial_generator_images(tau: MonomialAut, precision: int) -> GeneratorImages:
    """Generator images of a monomial automorphism acting by conjugation."""
    p, n = tau.p, tau.n
    return GeneratorImages(
        p,
        n,
        precision,
        tuple(
            DiffOp.from_laurent(tau.apply_laurent(LaurentPoly.variable(p, n, i)))
            for i in range(1, n + 1)
        ),
        tuple(
            DiffOp.from_laurent(tau.apply_laurent(LaurentPoly.variable(p, n, i, -1)))
            for i in range(1, n + 1)
        ),
        tuple(
            tuple(monomial_apply(tau, DiffOp.partial(p, n, i, p.p ** k)) for k in range(precision))
            for i in range(1, n + 1)
        ),
    )


def apply_images(g: GeneratorImages, op: DiffOp) -> DiffOp:
    """Apply the automorphism presented by g to an arbitrary operator.

    Coefficients map through the Laurent restriction of g; each divided
    power maps through the p-adic factorization of its index into level
    images.  Needs every index's p-adic length to fit inside g.precision.
    """
    if op.p != g.p or op.n != g.n:
        raise MismatchError("operand mismatch")
    tau = g.restriction()
    ident = tau.is_identity()
    cache: dict[tuple[int, int], DiffOp] = {}
    result = DiffOp.zero(g.p, g.n)
    for beta, f in op.parts.items():
        img = None
        for i in range(g.n):
            if beta[i]:
                key = (i, beta[i])
                if key not in cache:
                    cache[key] = g.divided_image(i + 1, beta[i])
                img = cache[key] if img is None else img * cache[key]
        coeff = DiffOp.from_laurent(f if ident else tau.apply_laurent(f))
        result = result + (coeff if img is None else coeff * img)
    return result


def compose_images(g: GeneratorImages, h: GeneratorImages) -> GeneratorImages:
    """Images of the composite automorphism g after h."""
    if g.p != h.p or g.n != h.n:
        raise MismatchError("automorphism mismatch")
    if g.precision != h.precision:
        raise PrecisionMismatch(f"precision mismatch: {g.precision} vs {h.precision}")
    return GeneratorImages(
        g.p,
        g.n,
        g.precision,
        tuple(apply_images(g, img) for img in h.x_images),
        tuple(apply_images(g, img) for img in h.xinv_images),
        tuple(tuple(apply_images(g, img) for img in row) for row in h.d_images),
    )


def shift_compose_images(s: ShiftVector, h: GeneratorImages) -> GeneratorImages:
    """Images of (shift s) after h, using the closed-form shift action."""
    if s.p != h.p or s.n != h.n:
        raise MismatchError("automorphism mismatch")
    if s.precision != h.precision:
        raise PrecisionMismatch("precision mismatch")
    return GeneratorImages(
        h.p,
        h.n,
        h.precision,
        tuple(shift_apply(s, img) for img in h.x_images),
        tuple(shift_apply(s, img) for img in h.xinv_images),
        tuple(tuple(shift_apply(s, img) for img in row) for row in h.d_images),
    )


def monomial_compose_images(tau: MonomialAut, h: GeneratorImages) -> GeneratorImages:
    """Images of tau after h, conjugating every image of h."""
    if tau.p != h.p or tau.n != h.n:
        raise MismatchError("automorphism mismatch")

    def push(img: DiffOp) -> DiffOp:
        if img.is_laurent():
            return DiffOp.from_laurent(tau.apply_laurent(img.to_laurent()))
        return monomial_apply(tau, img)

    return GeneratorImages(
        h.p,
        h.n,
        h.precision,
        tuple(push(img) for img in h.x_images),
        tuple(push(img) for img in h.xinv_images),
        tuple(tuple(push(img) for img in row) for row in h.d_images),
    )


def validate_generator_images(g: GeneratorImages) -> CheckReport:
    """Check the defining relations on a truncated set of generator images.

    Exactly: x images are two-sided units against their declared inverses;
    x images commute; level images commute; [d_i^[p^k], x_j] equals
    delta_ij times the assembled image of d_i^[p^k - 1]; and every level
    image has vanishing p-th power.
    """
    report = CheckReport("generator image relations")
    p, n, prec = g.p, g.n, g.precision
    one = DiffOp.one(p, n)
    for i in range(n):
        ok = (
            g.x_images[i] * g.xinv_images[i] == one
            and g.xinv_images[i] * g.x_images[i] == one
        )
        report.add(f"unit x[{i + 1}]", ok)
    for i in range(n):
        for j in range(i + 1, n):
            ok = g.x_images[i] * g.x_images[j] == g.x_images[j] * g.x_images[i]
            report.add(f"commute x[{i + 1}] x[{j + 1}]", ok)
    levels = [(i, k) for i in range(n) for k in range(prec)]
    for a in range(len(levels)):
        for b in range(a + 1, len(levels)):
            (i, k), (j, l) = levels[a], levels[b]
            di = g.d_images[i][k]
            dj = g.d_images[j][l]
            ok = di * dj == dj * di
            report.add(f"commute d[{i + 1}]^[p^{k}] d[{j + 1}]^[p^{l}]", ok)
    for i in range(n):
        for k in range(prec):
            dik = g.d_images[i][k]
            for j in range(n):
                com = dik * g.x_images[j] - g.x_images[j] * dik
                if i == j:
                    expect = g.divided_image(i + 1, p.p ** k - 1)
                else:
                    expect = DiffOp.zero(p, n)
                report.add(
                    f"bracket [d[{i + 1}]^[p^{k}], x[{j + 1}]]",
                    com == expect,
                )
    for i in range(n):
        for k in range(prec):
            ok = (g.d_images[i][k] ** p.p).is_zero()
            report.add(f"p-th power d[{i + 1}]^[p^{k}]", ok)
    return report


# ---------------------------------------------------------------------------
# digit extraction and factorization
# ---------------------------------------------------------------------------


def extract_digits(g: GeneratorImages) -> ShiftVector:
    """Recover the shift parameter from images that fix every variable.

    Level by level: the difference between the residual image of
    d_i^[p^k] and d_i^[p^k] itself must be a scalar multiple of
    x_i^{-p^k}; that scalar is digit k of s_i.  Composing with the shift
    by -p^k (digit vector) then fixes the level exactly, and the residual
    images of higher levels are updated for the next round.
    """
    p, n, prec = g.p, g.n, g.precision
    if not g.fixes_variables():
        raise NotInStabilizer("images do not fix the variables pointwise")
    levels = [list(row) for row in g.d_images]
    digits: list[list[int]] = [[0] * prec for _ in range(n)]
    for k in range(prec):
        target = p.p ** k
        found = [0] * n
        for i in range(n):
            b = levels[i][k] - DiffOp.partial(p, n, i + 1, target)
            if b.is_zero():
                continue
            if not b.is_laurent():
                raise NotSigmaForm(
                    f"perturbation of d{i + 1}^[{target}] has positive order"
                )
            try:
                c, exps = b.to_laurent().unit_decompose()
            except NotAUnit as exc:
                raise NotSigmaForm(
                    f"perturbation of d{i + 1}^[{target}] is not a monomial"
                ) from exc
            expected = tuple(-target if j == i else 0 for j in range(n))
            if exps != expected:
                raise NotSigmaForm(
                    f"perturbation of d{i + 1}^[{target}] sits on x^{exps}, "
                    f"expected x^{expected}"
                )
            found[i] = c.value
            digits[i][k] = c.value
        if any(found):
            corrector = ShiftVector.from_ints(
                [-target * found[i] for i in range(n)], p, prec
            )
            for i in range(n):
                for u in range(k, prec):
                    levels[i][u] = shift_apply(corrector, levels[i][u])
    return ShiftVector.from_digits(digits, p)


@dataclass(frozen=True)
class FactoredAut:
    """An order preserving automorphism in factored form: a shift followed
    after a monomial automorphism (apply tau first, then the shift)."""

    shift: ShiftVector
    tau: MonomialAut

    def __post_init__(self):
        if self.shift.p != self.tau.p or self.shift.n != self.tau.n:
            raise MismatchError("factors disagree on prime or variable count")

    @property
    def p(self) -> Prime:
        return self.shift.p

    @property
    def n(self) -> int:
        return self.shift.n

    @property
    def precision(self) -> int:
        return self.shift.precision

    @classmethod
    def identity(cls, p, n, precision) -> "FactoredAut":
        return cls(ShiftVector.zeros(p, n, precision), MonomialAut.identity(p, n))

    def is_identity(self) -> bool:
        return self.shift.is_zero() and self.tau.is_identity()

    def compose(self, other: "FactoredAut") -> "FactoredAut":
        """self after other.  The monomial factor twists the shift of the
        right operand by its exponent matrix."""
        if self.precision != other.precision:
            raise PrecisionMismatch("precision mismatch in composition")
        return FactoredAut(
            self.shift + matrix_shift(self.tau.matrix, other.shift),
            self.tau.compose(other.tau),
        )

    def inverse(self) -> "FactoredAut":
        tinv = self.tau.inverse()
        return FactoredAut(-matrix_shift(tinv.matrix, self.shift), tinv)

    def to_images(self) -> GeneratorImages:
        """Truncated generator images of the factored automorphism."""
        base = monomial_generator_images(self.tau, self.precision)
        return shift_compose_images(self.shift, base)


def factorize(g: GeneratorImages) -> FactoredAut:
    """Factor generator images into a shift and a monomial automorphism.

    The monomial factor is read off from the x images; composing with its
    inverse lands in the stabilizer of the variables and digit extraction
    finishes the job.
    """
    tau = g.restriction()
    if tau.is_identity():
        return FactoredAut(extract_digits(g), tau)
    residual = compose_images(g, monomial_generator_images(tau.inverse(), g.precision))
    return FactoredAut(extract_digits(residual), tau)
