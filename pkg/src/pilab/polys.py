"""Sparse multivariate polynomials over Q with a fixed variable count.

Monomials are exponent tuples; used by the generic-element machinery
(polynomials in the lambda_{i,j}) and by partition-function
quasi-polynomials (polynomials in the lattice coordinates).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

_ZERO = Fraction(0)
_ONE = Fraction(1)


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        t: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[tuple(e)] = Fraction(c)
        self.terms = t

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MPoly":
        c = Fraction(c)
        return cls(nvars, {(0,) * nvars: c} if c else None)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): _ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, MPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            nv = out.get(e, _ZERO) + c
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)
        res = MPoly(self.nvars)
        res.terms = out
        return res

    def __neg__(self) -> "MPoly":
        res = MPoly(self.nvars)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nv = out.get(e, _ZERO) + c1 * c2
                if nv:
                    out[e] = nv
                else:
                    out.pop(e, None)
        res = MPoly(self.nvars)
        res.terms = out
        return res

    def scale(self, c) -> "MPoly":
        c = Fraction(c)
        res = MPoly(self.nvars)
        if c:
            res.terms = {e: v * c for e, v in self.terms.items()}
        return res

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        acc = _ZERO
        for e, c in self.terms.items():
            term = c
            for exp, x in zip(e, point):
                if exp:
                    term *= x ** exp
            acc += term
        return acc

    def shift(self, offsets: Sequence[int]) -> "MPoly":
        """Substitute x_i -> x_i - offsets[i]."""
        out = MPoly.constant(self.nvars, 0)
        for e, c in self.terms.items():
            term = MPoly.constant(self.nvars, c)
            for i, exp in enumerate(e):
                if not exp:
                    continue
                base = MPoly(self.nvars, {
                    tuple(1 if j == i else 0 for j in range(self.nvars)): _ONE,
                    (0,) * self.nvars: Fraction(-offsets[i]),
                })
                for _ in range(exp):
                    term = term * base
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "MPoly(0)"
        bits = []
        for e in sorted(self.terms):
            mono = "*".join(f"v{i}^{x}" if x > 1 else f"v{i}"
                            for i, x in enumerate(e) if x)
            bits.append(f"{self.terms[e]}{'*' + mono if mono else ''}")
        return "MPoly(" + " + ".join(bits) + ")"


def interpolate_grid(nvars: int, points: Sequence[Sequence[int]],
                     values: Sequence[Fraction], per_var_degree: int) -> MPoly:
    """Exact polynomial through a tensor-product grid of points.

    Solves for coefficients over the monomial basis with each variable's
    degree <= per_var_degree; the linear system must be square and
    uniquely solvable (a product grid of size (d+1)^nvars is).
    """
    from itertools import product as iproduct

    from .linalg import RowReducer

    exps = sorted(iproduct(range(per_var_degree + 1), repeat=nvars))
    if len(points) != len(exps):
        raise ValueError("grid size does not match coefficient count")
    red = RowReducer()
    rows = []
    for p, val in zip(points, values):
        row = {}
        for j, e in enumerate(exps):
            coeff = _ONE
            for x, exp in zip(p, e):
                if exp:
                    coeff *= Fraction(x) ** exp
            if coeff:
                row[j] = coeff
        row[len(exps)] = -Fraction(val)
        rows.append(row)
    for row in rows:
        red.add_row(row)
    pivots = dict(zip(red.pivot_cols, red.rows))
    if len(exps) in pivots:
        raise ValueError("inconsistent interpolation system")
    coeffs = {}
    for col, row in pivots.items():
        c = -row.get(len(exps), _ZERO)
        if c:
            coeffs[exps[col]] = c
    if len(pivots) != len(exps):
        raise ValueError("interpolation grid is degenerate")
    return MPoly(nvars, coeffs)
