"""Normal-form arithmetic in the ring of divided-power differential
operators on Laurent polynomials.

An operator is stored as a finite sum  sum_beta f_beta * d^[beta]  with
Laurent coefficients on the left and beta a multi-index of naturals.
This direct-sum form is the unique normal form; multiplication rewrites
products back into it with the rule

    (x^gamma d^[beta]) (x^delta d^[eps])
        = sum_{j <= beta} C(delta, j) C(beta - j + eps, eps)
          x^{gamma + delta - j} d^[beta - j + eps]

where C(delta, j) may have negative upper entries.  The rule is a
consequence of the commutation relations; the test suite certifies it
against the module action, which is the ground truth.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product as iproduct
from typing import Callable, Sequence

from .errors import InconsistentAction, InsufficientPrecision, MismatchError
from .laurent import LaurentPoly, term_string
from .scalars import Prime, _lucas, as_prime, padic_length

MonomialAction = Callable[[tuple[int, ...]], LaurentPoly]


@lru_cache(maxsize=65536)
def _nonzero_binoms(delta: int, bound: int, p: int) -> tuple[tuple[int, int], ...]:
    """Pairs (j, C(delta, j) mod p) for j in [0, bound] with nonzero value."""
    out = []
    for j in range(bound + 1):
        c = _lucas(delta, j, p)
        if c:
            out.append((j, c))
    return tuple(out)


class DiffOp:
    """A differential operator in normal form sum_beta f_beta d^[beta]."""

    __slots__ = ("p", "n", "_parts")

    def __init__(self, p: int | Prime, n: int, parts=None):
        if n < 1:
            raise ValueError("need at least one variable")
        self.p = as_prime(p)
        self.n = n
        clean: dict[tuple[int, ...], LaurentPoly] = {}
        if parts:
            items = parts.items() if isinstance(parts, dict) else parts
            for beta, f in items:
                beta = tuple(beta)
                if len(beta) != n or any(b < 0 for b in beta):
                    raise MismatchError(f"bad divided index {beta}")
                if f.p != self.p or f.n != n:
                    raise MismatchError("coefficient polynomial mismatch")
                if f:
                    if beta in clean:
                        g = clean[beta] + f
                        if g:
                            clean[beta] = g
                        else:
                            del clean[beta]
                    else:
                        clean[beta] = f
        self._parts = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p, n) -> "DiffOp":
        return cls(p, n)

    @classmethod
    def one(cls, p, n) -> "DiffOp":
        return cls.from_laurent(LaurentPoly.one(p, n))

    @classmethod
    def from_laurent(cls, f: LaurentPoly) -> "DiffOp":
        return cls(f.p, f.n, {(0,) * f.n: f} if f else {})

    @classmethod
    def partial(cls, p, n, i: int, k: int = 1) -> "DiffOp":
        """The divided power d_i^[k] (1-based variable index)."""
        if not 1 <= i <= n:
            raise MismatchError(f"variable index {i} out of range 1..{n}")
        if k < 0:
            raise ValueError("divided power index must be a natural")
        beta = [0] * n
        beta[i - 1] = k
        return cls(p, n, {tuple(beta): LaurentPoly.one(p, n)})

    @classmethod
    def monomial(cls, p, n, exps, coeff: int = 1) -> "DiffOp":
        return cls.from_laurent(LaurentPoly.monomial(p, n, exps, coeff))

    def _wrap(self, parts: dict) -> "DiffOp":
        d = DiffOp.__new__(DiffOp)
        d.p = self.p
        d.n = self.n
        d._parts = parts
        return d

    # -- inspection --------------------------------------------------------

    @property
    def parts(self) -> dict[tuple[int, ...], LaurentPoly]:
        """Divided index -> coefficient polynomial; treat as read-only."""
        return self._parts

    def sorted_parts(self) -> list[tuple[tuple[int, ...], LaurentPoly]]:
        """Parts in canonical order: total degree descending, then lex descending."""
        return sorted(self._parts.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def order(self) -> int | None:
        """Maximal |beta| over nonzero parts; None for the zero operator."""
        if not self._parts:
            return None
        return max(sum(b) for b in self._parts)

    def is_zero(self) -> bool:
        return not self._parts

    def __bool__(self) -> bool:
        return bool(self._parts)

    def is_laurent(self) -> bool:
        """True when the operator is multiplication by a Laurent polynomial."""
        o = self.order()
        return o is None or o == 0

    def to_laurent(self) -> LaurentPoly:
        if self.is_zero():
            return LaurentPoly.zero(self.p, self.n)
        if not self.is_laurent():
            raise MismatchError(f"{self} has positive order, not a Laurent polynomial")
        return self._parts[(0,) * self.n]

    def is_polynomial_coefficient(self) -> bool:
        """True when every coefficient exponent is nonnegative, i.e. the
        operator lies in the polynomial-coefficient subring."""
        return all(
            all(e >= 0 for e in exps)
            for f in self._parts.values()
            for exps in f.exponents()
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.p == other.p and self.n == other.n and self._parts == other._parts

    def __hash__(self):
        return hash((self.p, self.n, frozenset((b, hash(f)) for b, f in self._parts.items())))

    def __str__(self) -> str:
        if not self._parts:
            return "0"
        chunks = []
        for beta, f in self.sorted_parts():
            for exps, c in f.sorted_terms():
                chunks.append(term_string(c, exps, beta))
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"DiffOp(p={self.p.p}, n={self.n}, {self})"

    def _check(self, other: "DiffOp"):
        if self.p != other.p or self.n != other.n:
            raise MismatchError(
                f"operand mismatch: (p={self.p.p}, n={self.n}) vs (p={other.p.p}, n={other.n})"
            )

    # -- additive structure --------------------------------------------------

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        out = dict(self._parts)
        for beta, f in other._parts.items():
            if beta in out:
                g = out[beta] + f
                if g:
                    out[beta] = g
                else:
                    del out[beta]
            else:
                out[beta] = f
        return self._wrap(out)

    def __neg__(self) -> "DiffOp":
        return self._wrap({b: -f for b, f in self._parts.items()})

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, c: int) -> "DiffOp":
        c %= self.p.p
        if c == 0:
            return self._wrap({})
        out = {}
        for b, f in self._parts.items():
            g = f.scale(c)
            if g:
                out[b] = g
        return self._wrap(out)

    # -- multiplication ------------------------------------------------------

    def __mul__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        pp = self.p.p
        n = self.n
        acc: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
        for beta, f in self._parts.items():
            fterms = f.terms
            for eps, g in other._parts.items():
                for delta, cg in g.terms.items():
                    # per-variable Leibniz choices with nonzero C(delta_i, j_i)
                    choices = [
                        _nonzero_binoms(delta[i], beta[i], pp) for i in range(n)
                    ]
                    for combo in iproduct(*choices):
                        cj = cg
                        for _, c in combo:
                            cj = cj * c % pp
                        newbeta = []
                        comp = 1
                        for i in range(n):
                            bi = beta[i] - combo[i][0] + eps[i]
                            comp = comp * _lucas(bi, eps[i], pp) % pp
                            newbeta.append(bi)
                        if comp == 0:
                            continue
                        cj = cj * comp % pp
                        newbeta = tuple(newbeta)
                        shift = tuple(delta[i] - combo[i][0] for i in range(n))
                        bucket = acc.setdefault(newbeta, {})
                        for gam, cf in fterms.items():
                            key = tuple(gam[i] + shift[i] for i in range(n))
                            s = (bucket.get(key, 0) + cf * cj) % pp
                            if s:
                                bucket[key] = s
                            elif key in bucket:
                                del bucket[key]
        proto = LaurentPoly.zero(self.p, n)
        parts = {}
        for beta, terms in acc.items():
            if terms:
                parts[beta] = proto._wrap(terms)
        return self._wrap(parts)

    def __pow__(self, k: int) -> "DiffOp":
        """Naive repeated multiplication; exponents stay small here."""
        if k < 0:
            raise ValueError("operator powers need natural exponents")
        result = DiffOp.one(self.p, self.n)
        for _ in range(k):
            result = result * self
        return result

    # -- module action -------------------------------------------------------

    def act(self, f: LaurentPoly) -> LaurentPoly:
        """Apply the operator to a Laurent polynomial."""
        if f.p != self.p or f.n != self.n:
            raise MismatchError("operand mismatch in action")
        pp = self.p.p
        n = self.n
        out: dict[tuple[int, ...], int] = {}
        for beta, g in self._parts.items():
            for delta, c in f.terms.items():
                b = 1
                for i in range(n):
                    b = b * _lucas(delta[i], beta[i], pp) % pp
                    if b == 0:
                        break
                if b == 0:
                    continue
                cb = c * b % pp
                for gam, cg in g.terms.items():
                    key = tuple(gam[i] + delta[i] - beta[i] for i in range(n))
                    s = (out.get(key, 0) + cg * cb) % pp
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
        return LaurentPoly.zero(self.p, n)._wrap(out)

    def act_monomial(self, exps: tuple[int, ...], coeff: int = 1) -> LaurentPoly:
        return self.act(LaurentPoly.monomial(self.p, self.n, exps, coeff))

    def action(self) -> MonomialAction:
        """The operator as a black-box action on monomial exponent vectors."""
        return lambda exps: self.act_monomial(tuple(exps))


def divided_image_from_levels(levels: Sequence[DiffOp], j: int) -> DiffOp:
    """Assemble the image of d^[j] from images of the levels d^[p^k].

    Writing j = sum j_k p^k in base p, the divided power factors as
    prod_k (d^[p^k])^{j_k} / j_k!, so the same product of the level images
    gives the image of d^[j] under any ring homomorphism.
    """
    if not levels:
        raise ValueError("need at least one level image")
    if j < 0:
        raise ValueError("divided power index must be a natural")
    p = levels[0].p
    n = levels[0].n
    if padic_length(j, p.p) > len(levels):
        raise InsufficientPrecision(
            f"index {j} needs {padic_length(j, p.p)} levels, have {len(levels)}"
        )
    result = DiffOp.one(p, n)
    k = 0
    while j:
        jk = j % p.p
        if jk:
            factor = (levels[k] ** jk).scale(_inverse_factorial(jk, p.p))
            result = result * factor
        j //= p.p
        k += 1
    return result


@lru_cache(maxsize=None)
def _inverse_factorial(k: int, p: int) -> int:
    """(k!)^{-1} mod p for 0 <= k < p."""
    f = 1
    for i in range(2, k + 1):
        f = f * i % p
    return pow(f, -1, p)


def normal_form_from_action(
    action: MonomialAction,
    p: int | Prime,
    n: int,
    bound: int,
    *,
    extra_probes: int = 8,
    seed: int = 0,
) -> DiffOp:
    """Recover the unique normal form of an operator of order <= bound from
    its action on monomials.

    Probing x^delta for delta in the box [0, bound]^n gives a triangular
    system with unit diagonal:

        action(x^delta) = f_delta + sum_{delta' < delta} C(delta, delta')
                          f_{delta'} x^{delta - delta'}

    which is solved by increasing total degree.  A configurable number of
    random extra monomials (negative exponents included) is then replayed
    against the recovered operator; any disagreement raises
    InconsistentAction.
    """
    p = as_prime(p)
    pp = p.p
    if bound < 0:
        raise ValueError("order bound must be a natural")
    recovered: dict[tuple[int, ...], LaurentPoly] = {}
    for delta in sorted(iproduct(*[range(bound + 1)] * n), key=lambda t: (sum(t), t)):
        corr = LaurentPoly.zero(p, n)
        for dprime, f in recovered.items():
            if all(dprime[i] <= delta[i] for i in range(n)):
                c = 1
                for i in range(n):
                    c = c * _lucas(delta[i], dprime[i], pp) % pp
                    if c == 0:
                        break
                if c:
                    corr = corr + f.times_monomial(
                        c, tuple(delta[i] - dprime[i] for i in range(n))
                    )
        got = action(delta)
        f_delta = got - corr
        if f_delta:
            recovered[delta] = f_delta
    result = DiffOp(p, n, recovered)
    rng = random.Random(seed)
    lo, hi = -bound - 2, bound + 2
    for _ in range(extra_probes):
        gamma = tuple(rng.randint(lo, hi) for _ in range(n))
        if result.act_monomial(gamma) != action(gamma):
            raise InconsistentAction(
                f"action disagrees with recovered operator at x^{gamma}"
            )
    return result
