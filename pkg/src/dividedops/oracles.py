"""Independent brute-force verifiers.

These are the ground-truth side of every derived formula in the package:
a window-restricted kernel computation for the map d^{p-1} + Frobenius,
an action-equivalence sampler, and a randomized suite for the defining
relations of the operator ring.  Everything is exact and deterministic
under a seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable

import numpy as np

from .diffop import DiffOp
from .errors import MismatchError, WindowTooLarge
from .laurent import LaurentPoly
from .report import CheckReport
from .scalars import as_prime, binom_nat_mod_p

MAX_WINDOW_MONOMIALS = 10_000


@dataclass(frozen=True)
class ExponentWindow:
    """A box of exponent vectors, per-variable bounds inclusive."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise MismatchError("window bounds disagree on dimension")
        if any(l > h for l, h in zip(self.lo, self.hi)):
            raise ValueError(f"empty window {self.lo}..{self.hi}")

    @classmethod
    def cube(cls, lo: int, hi: int, n: int) -> "ExponentWindow":
        return cls((lo,) * n, (hi,) * n)

    @property
    def n(self) -> int:
        return len(self.lo)

    def count(self) -> int:
        c = 1
        for l, h in zip(self.lo, self.hi):
            c *= h - l + 1
        return c

    def monomials(self):
        """Exponent vectors in lexicographic order."""
        return iproduct(*[range(l, h + 1) for l, h in zip(self.lo, self.hi)])

    def sample(self, rng: random.Random) -> tuple[int, ...]:
        return tuple(rng.randint(l, h) for l, h in zip(self.lo, self.hi))

    def __contains__(self, exps) -> bool:
        return all(l <= e <= h for e, l, h in zip(exps, self.lo, self.hi))


def nullspace_mod_p(matrix: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of the right null space of an integer matrix mod p.

    Row reduction is done in place over F_p; the returned basis is the
    canonical one read off the reduced row echelon form (one vector per
    free column, deterministic).
    """
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pivot_rows = np.nonzero(a[r:, c])[0]
        if pivot_rows.size == 0:
            continue
        pr = r + int(pivot_rows[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        hits = np.nonzero(a[:, c])[0]
        for rr in hits:
            if rr != r:
                a[rr] = (a[rr] - a[rr, c] * a[r]) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-a[i, fc]) % p
        basis.append(v)
    return basis


def kernel_bruteforce(i: int, window: ExponentWindow, p, n: int) -> list[LaurentPoly]:
    """Kernel of f -> d_i^{p-1} f + f^p restricted to a monomial window.

    The ordinary power d_i^{p-1} equals -(p-1)! times the divided power,
    i.e. minus d_i^[p-1].  The map is assembled exactly as a matrix over
    F_p from the window monomials into all monomials it reaches, so any
    kernel vector found here is a kernel element of the unrestricted map.
    """
    p = as_prime(p)
    if window.n != n:
        raise MismatchError("window dimension does not match variable count")
    if not 1 <= i <= n:
        raise MismatchError(f"variable index {i} out of range 1..{n}")
    if window.count() > MAX_WINDOW_MONOMIALS:
        raise WindowTooLarge(
            f"window holds {window.count()} monomials, budget is {MAX_WINDOW_MONOMIALS}"
        )
    columns = sorted(window.monomials())
    images = []
    row_index: dict[tuple[int, ...], int] = {}
    for exps in columns:
        f = LaurentPoly.monomial(p, n, exps)
        image = (-f.divided_partial(i, p.p - 1)) + f.frobenius()
        images.append(image)
        for e in image.exponents():
            if e not in row_index:
                row_index[e] = len(row_index)
    mat = np.zeros((max(len(row_index), 1), len(columns)), dtype=np.int64)
    for c, image in enumerate(images):
        for e, v in image.terms.items():
            mat[row_index[e], c] = v
    basis = []
    for vec in nullspace_mod_p(mat, p.p):
        terms = {columns[j]: int(vec[j]) for j in range(len(columns)) if vec[j]}
        basis.append(LaurentPoly(p, n, terms))
    return basis


def action_equiv_check(
    op: DiffOp,
    reference: Callable[[tuple[int, ...]], LaurentPoly],
    probes: int,
    window: ExponentWindow,
    seed: int,
) -> bool:
    """Compare an operator against a black-box action on random monomials."""
    rng = random.Random(seed)
    for _ in range(probes):
        exps = window.sample(rng)
        if op.act_monomial(exps) != reference(exps):
            return False
    return True


def relation_suite(
    p,
    n: int,
    max_index: int,
    trials: int,
    seed: int,
    product: Callable[[DiffOp, DiffOp], DiffOp] | None = None,
) -> CheckReport:
    """Exhaustive defining relations up to max_index plus randomized checks.

    `product` is a mutation hook for testing the tester: it replaces the
    ring multiplication used by the checks, so a corrupted product rule
    must surface as a counterexample.
    """
    p = as_prime(p)
    rng = random.Random(seed)
    mul = product if product is not None else (lambda a, b: a * b)
    report = CheckReport(f"defining relations p={p.p} n={n}")

    def x(i):
        return DiffOp.from_laurent(LaurentPoly.variable(p, n, i))

    def dd(i, k):
        return DiffOp.partial(p, n, i, k)

    # [x_i, x_j] = 0
    count, bad = 0, None
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            count += 1
            if mul(x(i), x(j)) != mul(x(j), x(i)):
                bad = bad or f"[x{i}, x{j}] != 0"
    report.add("x commutators", bad is None, bad or f"{count} instances")

    # d_i^[k] d_i^[l] = C(k+l, k) d_i^[k+l]
    count, bad = 0, None
    for i in range(1, n + 1):
        for k in range(1, max_index + 1):
            dik = dd(i, k)
            for l in range(1, max_index + 1):
                count += 1
                c = binom_nat_mod_p(k + l, k, p)
                if mul(dik, dd(i, l)) != dd(i, k + l).scale(c.value):
                    bad = bad or f"d{i}^[{k}] d{i}^[{l}]"
                    break
            if bad:
                break
    report.add("divided power composition", bad is None, bad or f"{count} instances")

    # [d_i^[k], d_j^[l]] = 0 for i != j
    count, bad = 0, None
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, max_index + 1):
                dik = dd(i, k)
                for l in range(1, max_index + 1):
                    count += 1
                    djl = dd(j, l)
                    if mul(dik, djl) != mul(djl, dik):
                        bad = bad or f"[d{i}^[{k}], d{j}^[{l}]] != 0"
                        break
                if bad:
                    break
    report.add("divided power commutators", bad is None, bad or f"{count} instances")

    # [d_i^[k], x_j] = delta_ij d_i^[k-1]
    count, bad = 0, None
    one = DiffOp.one(p, n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, max_index + 1):
                count += 1
                com = mul(dd(i, k), x(j)) - mul(x(j), dd(i, k))
                if i == j:
                    expect = dd(i, k - 1) if k > 1 else one
                else:
                    expect = DiffOp.zero(p, n)
                if com != expect:
                    bad = bad or f"[d{i}^[{k}], x{j}]"
                    break
            if bad:
                break
    report.add("variable brackets", bad is None, bad or f"{count} instances")

    # random multi-index instances of the composition rule
    count, bad = 0, None
    for _ in range(trials):
        alpha = tuple(rng.randint(0, max_index) for _ in range(n))
        beta = tuple(rng.randint(0, max_index) for _ in range(n))
        count += 1
        da = DiffOp(p, n, {alpha: LaurentPoly.one(p, n)})
        db = DiffOp(p, n, {beta: LaurentPoly.one(p, n)})
        c = 1
        for a, b in zip(alpha, beta):
            c = c * binom_nat_mod_p(a + b, a, p).value % p.p
        gamma = tuple(a + b for a, b in zip(alpha, beta))
        expect = DiffOp(p, n, {gamma: LaurentPoly.one(p, n)}).scale(c)
        if mul(da, db) != expect:
            bad = bad or f"d^{alpha} d^{beta}"
    report.add("multi-index composition", bad is None, bad or f"{count} instances")

    # (d_i + f)^p = d_i^{p-1} f + f^p, a Weyl algebra identity
    count, bad = 0, None
    for _ in range(trials):
        i = rng.randint(1, n)
        terms = {}
        for _ in range(rng.randint(0, 4)):
            exps = tuple(rng.randint(-2, 2) for _ in range(n))
            terms[exps] = rng.randint(1, p.p - 1)
        f = LaurentPoly(p, n, terms)
        count += 1
        base = dd(i, 1) + DiffOp.from_laurent(f)
        power = one
        for _ in range(p.p):
            power = mul(power, base)
        rhs = DiffOp.from_laurent((-f.divided_partial(i, p.p - 1)) + f.frobenius())
        if power != rhs:
            bad = bad or f"(d{i} + {f})^{p.p}"
    report.add("binomial p-th power", bad is None, bad or f"{count} instances")

    return report
