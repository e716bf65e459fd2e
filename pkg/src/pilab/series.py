"""Nice rational functions p(t)/prod(1 - t^h_j): expansion, pole order at
t = 1, quasi-polynomial extraction and prefix fitting.

The univariate theory is complete; several variables are supported only as
a container expandable over a truncation box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Sequence

from .errors import InsufficientData, InvalidParams

_ZERO = Fraction(0)


def _trim(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


def _poly_divmod(num: Sequence, den: Sequence) -> tuple[list, list]:
    num = list(num)
    den = list(den)
    out = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = Fraction(den[-1])
    while len(num) >= len(den) and any(num):
        if num[-1] == 0:
            num.pop()
            continue
        shift = len(num) - len(den)
        factor = Fraction(num[-1]) / lead
        out[shift] = factor
        for i, d in enumerate(den):
            num[shift + i] -= factor * d
        num.pop()
    return out, num


def _one_minus_t_pow(h: int) -> list[int]:
    out = [0] * (h + 1)
    out[0] = 1
    out[h] = -1
    return out


class NiceRational:
    """p(t) / prod_j (1 - t^{h_j}) with integer numerator, normalized so no
    denominator factor divides the numerator exactly."""

    def __init__(self, numerator: Iterable[int], denominator_exponents: Iterable[int]):
        numer = _trim([Fraction(c) for c in numerator])
        if any(c.denominator != 1 for c in numer):
            raise InvalidParams("numerator must have integer coefficients")
        denom = sorted(int(h) for h in denominator_exponents)
        if any(h < 1 for h in denom):
            raise InvalidParams("denominator exponents must be positive")
        numer, denom = _cancel(list(numer), denom)
        self.numerator: tuple[int, ...] = tuple(int(c) for c in numer)
        self.denominator_exponents: tuple[int, ...] = tuple(denom)

    def __eq__(self, other):
        return (isinstance(other, NiceRational)
                and self.numerator == other.numerator
                and self.denominator_exponents == other.denominator_exponents)

    def __hash__(self):
        return hash((self.numerator, self.denominator_exponents))

    def __repr__(self):
        return (f"NiceRational({list(self.numerator)}, "
                f"{list(self.denominator_exponents)})")

    def to_json_dict(self) -> dict:
        return {"numerator": list(self.numerator),
                "denominator_exponents": list(self.denominator_exponents)}


def _cancel(numer: list[Fraction], denom: list[int]) -> tuple[list, list[int]]:
    changed = True
    while changed and numer:
        changed = False
        for h in sorted(set(denom), reverse=True):
            quotient, rem = _poly_divmod(numer, _one_minus_t_pow(h))
            if not any(rem) and any(quotient):
                numer = _trim(quotient)
                denom.remove(h)
                numer = list(numer)
                changed = True
                break
    return list(numer), denom


def expand(f: NiceRational, count: int) -> list[int]:
    """First ``count`` power-series coefficients, exact integers."""
    if count < 1:
        raise InvalidParams("count must be >= 1")
    out = [0] * count
    for i, c in enumerate(f.numerator[:count]):
        out[i] = int(c)
    for h in f.denominator_exponents:
        # multiply by the geometric series of (1 - t^h)^{-1} in place
        for k in range(h, count):
            out[k] += out[k - h]
    return out


def dimension(f: NiceRational) -> int:
    """Order of the pole at t = 1 after exact cancellation."""
    if not f.numerator:
        return 0
    numer = [Fraction(c) for c in f.numerator]
    order = len(f.denominator_exponents)
    while order > 0:
        quotient, rem = _poly_divmod(numer, [1, -1])
        if any(rem):
            break
        numer = list(_trim(quotient))
        order -= 1
    return order


@dataclass(frozen=True)
class QuasiPolynomial:
    """Eventual coefficient law of a nice rational function: one polynomial
    in k per residue class mod ``modulus``, valid from ``valid_from`` on."""

    modulus: int
    polynomials: tuple[tuple[Fraction, ...], ...]
    valid_from: int

    def value(self, k: int) -> Fraction:
        coeffs = self.polynomials[k % self.modulus]
        acc = _ZERO
        for c in reversed(coeffs):
            acc = acc * k + c
        return acc

    @property
    def degree(self) -> int:
        return max((len(p) - 1 for p in self.polynomials if p), default=-1)


def quasi_polynomial(f: NiceRational) -> QuasiPolynomial:
    """Partial fractions in powers of (1 - t^M), M = lcm of the exponents."""
    if not f.numerator:
        return QuasiPolynomial(1, ((),), 0)
    exps = f.denominator_exponents
    if not exps:
        return QuasiPolynomial(1, ((),), len(f.numerator))
    m = lcm(*exps)
    n = len(exps)
    # rewrite with denominator (1 - t^M)^N
    numer = [Fraction(c) for c in f.numerator]
    for h in exps:
        cofactor = [1 if i % h == 0 else 0 for i in range(m - h + 1)]
        numer = _poly_mul(numer, cofactor)
    den = [1]
    for _ in range(n):
        den = _poly_mul(den, _one_minus_t_pow(m))
    correction, rem = _poly_divmod(numer, den)
    # rem / (1 - t^M)^N: write rem in base (1 - t^M); the digit produced at
    # step i (starting from i = N) is the numerator over (1 - t^M)^i
    digits: list[tuple[int, list[Fraction]]] = []
    rest = list(_trim(rem))
    for power in range(n, 0, -1):
        quotient, digit = _poly_divmod(rest, _one_minus_t_pow(m))
        digits.append((power, list(digit)))
        rest = list(_trim(quotient))
    if any(rest):
        raise ArithmeticError("partial fraction peeling failed")
    polys: list[list[Fraction]] = [[_ZERO] * n for _ in range(m)]
    for power, digit in digits:
        # t^j/(1-t^M)^power has coefficient binom(power-1 + (k-j)/M, power-1)
        # at t^k for k = j mod M
        for j, c in enumerate(digit):
            if not c:
                continue
            base = _binomial_in_k(power - 1, j, m)
            for deg, coef in enumerate(base):
                polys[j % m][deg] += c * coef
    poly_tuple = tuple(_trim(polys[r]) for r in range(m))
    correction = _trim(correction)
    valid_from = len(correction)
    return QuasiPolynomial(m, poly_tuple, valid_from)


def _binomial_in_k(r: int, j: int, m: int) -> list[Fraction]:
    """Coefficients (in k) of binom(r + (k - j)/m, r) as a polynomial of
    degree r, valid on the coset k = j mod m."""
    # product_{i=1..r} ((k - j)/m + i) / r!
    poly = [Fraction(1)]
    for i in range(1, r + 1):
        poly = _poly_mul(poly, [Fraction(i) - Fraction(j, m), Fraction(1, m)])
    fact = 1
    for i in range(2, r + 1):
        fact *= i
    return [c / fact for c in poly]


NoFit = None


def fit(prefix: Sequence[int], denominator_exponents: Iterable[int],
        margin: int = 5) -> NiceRational | None:
    """Solve for an integer numerator reproducing ``prefix`` over the given
    denominator; the last ``margin`` entries are held out as verification.
    Returns None (NoFit) when the held-out terms disagree."""
    exps = sorted(int(h) for h in denominator_exponents)
    prefix = [int(c) for c in prefix]
    degree_bound = len(prefix) - margin - 1
    if degree_bound < 0:
        raise InsufficientData(
            f"prefix of length {len(prefix)} cannot support margin {margin}")
    base = NiceRational([1], exps)
    geom = expand(base, len(prefix)) if exps else [1] + [0] * (len(prefix) - 1)
    numer = [0] * (degree_bound + 1)
    for k in range(degree_bound + 1):
        acc = prefix[k]
        for j in range(k):
            acc -= numer[j] * geom[k - j]
        numer[k] = acc
    candidate = NiceRational(numer, exps)
    if expand(candidate, len(prefix)) == prefix:
        return candidate
    return NoFit


# -- multivariate container --------------------------------------------------


class MultiNiceRational:
    """p(x)/prod(1 - x^{a_i}) in several variables, as a data container.

    Only expansion over a truncation box is provided, and only for
    componentwise-nonnegative nonzero denominator vectors (which is what
    graded Hilbert series produce).
    """

    def __init__(self, nvars: int, numerator: dict[tuple[int, ...], int],
                 denominator_vectors: Iterable[tuple[int, ...]]):
        self.nvars = nvars
        self.numerator = {tuple(e): int(c) for e, c in numerator.items() if c}
        self.denominator_vectors = sorted(tuple(v) for v in denominator_vectors)
        for v in self.denominator_vectors:
            if len(v) != nvars or any(c < 0 for c in v) or not any(v):
                raise InvalidParams("denominator vectors must be nonzero and nonnegative")
        for e in self.numerator:
            if len(e) != nvars or any(c < 0 for c in e):
                raise InvalidParams("numerator exponents must be nonnegative")

    def box_expand(self, box: Sequence[int]) -> dict[tuple[int, ...], int]:
        """Coefficients on {0..box_1-1} x ... x {0..box_p-1}."""
        from itertools import product

        if len(box) != self.nvars:
            raise InvalidParams("box arity mismatch")
        coeffs: dict[tuple[int, ...], int] = {}
        for e, c in self.numerator.items():
            if all(ei < bi for ei, bi in zip(e, box)):
                coeffs[e] = c
        points = sorted(product(*[range(b) for b in box]))
        for v in self.denominator_vectors:
            for b in points:
                prev = tuple(x - y for x, y in zip(b, v))
                if all(c >= 0 for c in prev) and prev in coeffs:
                    coeffs[b] = coeffs.get(b, 0) + coeffs[prev]
        return {b: c for b, c in coeffs.items() if c}
