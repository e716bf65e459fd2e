"""Finite-dimensional associative algebras over Q presented by structure
constants: construction, validation, radical / Wedderburn structure and the
t,s-index.

The structure analysis is computed once per algebra behind a lock and then
cached; everything downstream (identity engine, trace maps) reads the cached
report.  Only algebras whose semisimple quotient splits into full matrix
algebras over Q are supported; anything else raises NotSplit.
"""

from __future__ import annotations

import random
import threading
from fractions import Fraction
from math import isqrt
from typing import Callable, Sequence

from . import linalg
from .errors import (DimensionMismatch, InvalidParams, NotAssociative,
                     NotSplit, ParseError, TooLarge)
from .linalg import QVector, RowReducer, SpanSolver
from .rationals import rat_from_json, rat_to_json

_ZERO = Fraction(0)
_ONE = Fraction(1)

Table = list[list[dict[int, Fraction]]]


class FDAlgebra:
    """An algebra given by products b_i * b_j = sum_k c[i][j][k] b_k."""

    def __init__(self, dim: int, basis_names: Sequence[str], table: Table,
                 unit_coords: Sequence[Fraction] | None = None,
                 validate: bool = True):
        self.dim = dim
        self.basis_names = list(basis_names)
        self.table = table
        self.unit_coords = tuple(unit_coords) if unit_coords is not None else None
        self.has_unit = self.unit_coords is not None
        if len(self.basis_names) != dim or len(table) != dim:
            raise DimensionMismatch("basis/table size != dim")
        self._report: StructureReport | None = None
        self._report_lock = threading.Lock()
        if validate:
            self.check_associativity()
            if self.has_unit:
                self._check_unit()

    # -- construction ----------------------------------------------------

    @classmethod
    def from_dense_table(cls, basis_names: Sequence[str], dense,
                         unit_coords=None, validate: bool = True) -> "FDAlgebra":
        dim = len(basis_names)
        table: Table = []
        for i in range(dim):
            row = []
            for j in range(dim):
                row.append({k: Fraction(v) for k, v in enumerate(dense[i][j]) if v})
            table.append(row)
        unit = None if unit_coords is None else [Fraction(v) for v in unit_coords]
        return cls(dim, basis_names, table, unit, validate=validate)

    # -- validation --------------------------------------------------------

    def check_associativity(self) -> None:
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.table[i][j]
                for k in range(self.dim):
                    left: dict[int, Fraction] = {}
                    for l, c in ij.items():
                        for m, d in self.table[l][k].items():
                            nv = left.get(m, _ZERO) + c * d
                            if nv:
                                left[m] = nv
                            else:
                                left.pop(m, None)
                    right: dict[int, Fraction] = {}
                    for l, c in self.table[j][k].items():
                        for m, d in self.table[i][l].items():
                            nv = right.get(m, _ZERO) + c * d
                            if nv:
                                right[m] = nv
                            else:
                                right.pop(m, None)
                    if left != right:
                        names = (self.basis_names[i], self.basis_names[j],
                                 self.basis_names[k])
                        raise NotAssociative(
                            f"associativity fails on triple {names}")

    def _check_unit(self) -> None:
        u = self.unit_coords
        for i in range(self.dim):
            e = basis_vector(self.dim, i)
            if multiply(self, u, e) != e or multiply(self, e, u) != e:
                raise InvalidParams("declared unit is not a two-sided identity")

    # -- cached structure --------------------------------------------------

    @property
    def structure(self) -> "StructureReport":
        report = self._report
        if report is None:
            with self._report_lock:
                report = self._report
                if report is None:
                    report = self._report = _analyze(self)
        return report

    def __repr__(self):
        return f"FDAlgebra(dim={self.dim})"


def basis_vector(dim: int, i: int) -> QVector:
    return tuple(_ONE if j == i else _ZERO for j in range(dim))


def zero_vector(dim: int) -> QVector:
    return (_ZERO,) * dim


def multiply(a: FDAlgebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> QVector:
    """Bilinear product through the structure-constant table."""
    if len(x) != a.dim or len(y) != a.dim:
        raise DimensionMismatch("operand length != algebra dimension")
    out = [_ZERO] * a.dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = a.table[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            s = xi * yj
            for k, c in row[j].items():
                out[k] += s * c
    return tuple(out)


def _mult_sparse(a: FDAlgebra, x: dict[int, Fraction], y: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, xi in x.items():
        row = a.table[i]
        for j, yj in y.items():
            s = xi * yj
            for k, c in row[j].items():
                nv = out.get(k, _ZERO) + s * c
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
    return out


def left_mult_trace(a: FDAlgebra, i: int) -> Fraction:
    return sum((a.table[i][k].get(k, _ZERO) for k in range(a.dim)), _ZERO)


class StructureReport:
    """Radical, Wedderburn blocks and t,s-index of one algebra.

    Also carries the split quotient and per-block trace data that the
    generic-element machinery needs.
    """

    def __init__(self, algebra: FDAlgebra):
        self.algebra = algebra
        self.radical_basis: list[QVector] = []
        self.block_sizes: list[int] = []
        self.t = 0
        self.s = 0
        self.q = 0
        # internals
        self.quotient: FDAlgebra | None = None
        self.project: Callable[[Sequence[Fraction]], QVector] | None = None
        self.idempotents: list[QVector] = []
        self.block_bases: list[list[QVector]] = []
        self.block_traces: list[tuple[Fraction, ...]] = []

    def block_trace_of(self, coords: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Traces of left multiplication by ``coords`` on each simple block."""
        out = [_ZERO] * self.q
        for k, c in enumerate(coords):
            if not c:
                continue
            tk = self.block_traces[k]
            for i in range(self.q):
                out[i] += c * tk[i]
        return tuple(out)


def _analyze(a: FDAlgebra) -> StructureReport:
    report = StructureReport(a)
    report.radical_basis = _radical_basis(a)
    # nilpotency exponent of J
    report.s = _nilpotency(a, report.radical_basis)
    quotient, project = _quotient_by(a, report.radical_basis)
    report.quotient = quotient
    report.project = project
    report.t = quotient.dim
    if quotient.dim == 0:
        return report
    idems = _central_idempotents(quotient)
    blocks = []
    for e in idems:
        rows = RowReducer()
        basis = []
        for j in range(quotient.dim):
            prod = multiply(quotient, e, basis_vector(quotient.dim, j))
            if rows.add_row(dict(enumerate(prod))):
                basis.append(prod)
        blocks.append((e, basis))
    # deterministic block order: big blocks first, then by idempotent coords
    blocks.sort(key=lambda eb: (-len(eb[1]), eb[0]))
    sizes = []
    for e, basis in blocks:
        d = len(basis)
        n = isqrt(d)
        if n * n != d:
            raise NotSplit(f"simple block of dimension {d} is not square")
        _certify_block_splits(quotient, basis, n)
        sizes.append(n)
    report.idempotents = [e for e, _ in blocks]
    report.block_bases = [basis for _, basis in blocks]
    report.block_sizes = sizes
    report.q = len(sizes)
    solvers = [SpanSolver([dict(enumerate(v)) for v in basis])
               for basis in report.block_bases]
    for k in range(a.dim):
        image = project(basis_vector(a.dim, k))
        traces = []
        for basis, solver in zip(report.block_bases, solvers):
            tr = _ZERO
            for j, u in enumerate(basis):
                prod = multiply(quotient, image, u)
                coords = solver.coords(dict(enumerate(prod)))
                if coords is None:
                    raise NotSplit("block is not invariant under left multiplication")
                tr += coords[j]
            traces.append(tr)
        report.block_traces.append(tuple(traces))
    return report


def _radical_basis(a: FDAlgebra) -> list[QVector]:
    """Kernel of the trace form of the regular representation (Dickson,
    char 0), computed on the unitalization."""
    tl = [left_mult_trace(a, i) for i in range(a.dim)]
    rows = []
    for j in range(a.dim):
        row = {}
        for i in range(a.dim):
            v = sum((c * tl[l] for l, c in a.table[i][j].items()), _ZERO)
            if v:
                row[i] = v
        rows.append(row)
    rows.append({i: tl[i] for i in range(a.dim) if tl[i]})
    m = linalg.QMatrix(len(rows), a.dim, rows)
    return linalg.nullspace(m)


def _nilpotency(a: FDAlgebra, radical: list[QVector]) -> int:
    if not radical:
        return 0
    rad_sparse = [dict((i, v) for i, v in enumerate(vec) if v) for vec in radical]
    current = rad_sparse
    s = 1
    while True:
        red = RowReducer()
        nxt = []
        for r in rad_sparse:
            for v in current:
                prod = _mult_sparse(a, r, v)
                if prod and red.add_row(dict(prod)):
                    nxt.append(prod)
        if not nxt:
            return s
        current = nxt
        s += 1
        if s > a.dim + 1:
            raise NotAssociative("radical powers fail to terminate")


def _quotient_by(a: FDAlgebra, ideal: list[QVector]):
    """Quotient algebra A/span(ideal) plus the projection map."""
    red = RowReducer()
    for vec in ideal:
        red.add_row(dict((i, v) for i, v in enumerate(vec) if v))
    pivot_cols = set(red.pivot_cols)
    free_cols = [j for j in range(a.dim) if j not in pivot_cols]

    def project(vec: Sequence[Fraction]) -> QVector:
        row = {i: v for i, v in enumerate(vec) if v}
        residue, _ = red.reduce(row, None)
        return tuple(residue.get(j, _ZERO) for j in free_cols)

    dim = len(free_cols)
    table: Table = []
    for i in free_cols:
        row = []
        for j in free_cols:
            prod = multiply(a, basis_vector(a.dim, i), basis_vector(a.dim, j))
            image = project(prod)
            row.append({k: v for k, v in enumerate(image) if v})
        table.append(row)
    names = [a.basis_names[j] for j in free_cols]
    quotient = FDAlgebra(dim, names, table, validate=False)
    unit = _find_unit(quotient)
    if unit is not None:
        quotient = FDAlgebra(dim, names, table, unit, validate=False)
    return quotient, project


def _find_unit(a: FDAlgebra) -> QVector | None:
    """Solve u*b_j = b_j = b_j*u for all j; None when no unit exists."""
    if a.dim == 0:
        return None
    # unknowns u_i; one equation per (j, output coordinate k, side), with the
    # right-hand side carried in an extra affine column a.dim
    red = RowReducer()
    for j in range(a.dim):
        for k in range(a.dim):
            for table_at in (lambda i: a.table[i][j], lambda i: a.table[j][i]):
                row = {}
                for i in range(a.dim):
                    v = table_at(i).get(k, _ZERO)
                    if v:
                        row[i] = v
                if j == k:
                    row[a.dim] = -_ONE
                red.add_row(row)
    pivots = dict(zip(red.pivot_cols, red.rows))
    if a.dim in pivots:
        return None  # inconsistent system
    u = [_ZERO] * a.dim
    for col, row in pivots.items():
        u[col] = -row.get(a.dim, _ZERO)
    for j in range(a.dim):
        e = basis_vector(a.dim, j)
        if multiply(a, u, e) != e or multiply(a, e, u) != e:
            return None
    return tuple(u)


def _center(a: FDAlgebra) -> list[QVector]:
    rows = []
    for j in range(a.dim):
        for k in range(a.dim):
            row = {}
            for i in range(a.dim):
                v = a.table[i][j].get(k, _ZERO) - a.table[j][i].get(k, _ZERO)
                if v:
                    row[i] = v
            rows.append(row)
    m = linalg.QMatrix(len(rows), a.dim, rows)
    return linalg.nullspace(m)


def _min_poly(a: FDAlgebra, z: QVector) -> list[Fraction]:
    """Monic minimal polynomial of z in a unital algebra, low degree first."""
    red = RowReducer(track=True)
    power = a.unit_coords
    while True:
        fresh = red.add_row(dict((i, v) for i, v in enumerate(power) if v))
        if not fresh:
            combo = red.kernel[-1]
            deg = max(combo)
            inv = _ONE / combo[deg]
            return [combo.get(i, _ZERO) * inv for i in range(deg + 1)]
        power = multiply(a, power, z)


def _rational_roots(poly: list[Fraction]) -> list[Fraction] | None:
    """All rational roots with multiplicity; None when an irreducible
    non-linear factor remains."""
    from math import lcm

    coeffs = list(poly)
    roots: list[Fraction] = []
    while len(coeffs) > 1:
        if coeffs[0] == 0:
            roots.append(_ZERO)
            coeffs = coeffs[1:]
            continue
        if len(coeffs) == 2:
            roots.append(-coeffs[0] / coeffs[1])
            return roots
        denom = lcm(*[c.denominator for c in coeffs])
        ints = [int(c * denom) for c in coeffs]
        found = None
        for p in _divisors(abs(ints[0])):
            for q in _divisors(abs(ints[-1])):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if _poly_eval(coeffs, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        roots.append(found)
        coeffs = _deflate(coeffs, found)
    return roots


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = _ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: Sequence[Fraction], root: Fraction) -> list[Fraction]:
    """Synthetic division of a polynomial by (x - root)."""
    out = [_ZERO] * (len(coeffs) - 1)
    acc = coeffs[-1]
    for i in range(len(coeffs) - 2, -1, -1):
        out[i] = acc
        acc = coeffs[i] + acc * root
    return out


_IDEMPOTENT_RETRIES = 24


def _central_idempotents(ab: FDAlgebra) -> list[QVector]:
    """Primitive central idempotents of a split semisimple algebra."""
    center = _center(ab)
    qdim = len(center)
    if qdim == 0:
        raise NotSplit("semisimple quotient has empty center")
    if qdim == 1:
        return [ab.unit_coords]
    rng = random.Random(0)
    for _ in range(_IDEMPOTENT_RETRIES):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(qdim)]
        z = tuple(sum((c * vec[i] for c, vec in zip(coeffs, center)), _ZERO)
                  for i in range(ab.dim))
        mp = _min_poly(ab, z)
        roots = _rational_roots(mp)
        if roots is None:
            raise NotSplit("center has irrational spectrum")
        if len(set(roots)) != len(roots) or len(roots) != qdim:
            continue  # z does not generate the center; retry
        idems = []
        for r in sorted(roots):
            e = ab.unit_coords
            for other in sorted(roots):
                if other == r:
                    continue
                # e <- e * (z - other)/(r - other)
                shifted = tuple(zi - other * ui for zi, ui in zip(z, ab.unit_coords))
                e = tuple(v / (r - other) for v in multiply(ab, e, shifted))
            idems.append(e)
        # sanity: orthogonal idempotents summing to 1
        total = tuple(sum(col) for col in zip(*idems))
        if total != ab.unit_coords:
            continue
        ok = all(multiply(ab, e, e) == e for e in idems)
        if ok:
            return idems
    raise NotSplit("could not decompose the center with the retry budget")


def _certify_block_splits(ab: FDAlgebra, block_basis: list[QVector], n: int) -> None:
    """A split block M_n must contain x != 0 whose left ideal A*x has dim n.

    In M_k(D) with dim D = d*d the possible dims of left ideals are
    multiples of k*d*d > n for d > 1, so finding one of dimension exactly n
    certifies the block is a full matrix algebra over Q.
    """
    if n == 1:
        return

    def left_ideal_dim(x: QVector) -> int:
        red = RowReducer()
        for u in block_basis:
            prod = multiply(ab, u, x)
            red.add_row(dict((i, v) for i, v in enumerate(prod) if v))
        return red.rank

    candidates = list(block_basis)
    for u in block_basis:
        for v in block_basis:
            candidates.append(multiply(ab, u, v))
    for x in candidates:
        if any(x) and left_ideal_dim(x) == n:
            return
    raise NotSplit(
        f"block of dimension {n * n} has no left ideal of dimension {n}; "
        "it may be a division algebra")


# -- public structure queries -------------------------------------------


def radical(a: FDAlgebra) -> list[QVector]:
    """Basis of the Jacobson radical."""
    return list(a.structure.radical_basis)


def wedderburn_blocks(a: FDAlgebra) -> list[int]:
    """Block sizes [n_1, ..., n_q] of the split semisimple quotient,
    largest first."""
    return list(a.structure.block_sizes)


def ts_index(a: FDAlgebra) -> tuple[int, int]:
    """(dim A/J, largest s with J^s != 0)."""
    rep = a.structure
    return rep.t, rep.s


def quotient_by_ideal(a: FDAlgebra, ideal: list[QVector]) -> FDAlgebra:
    """Quotient of A by the span of the given ideal vectors."""
    quotient, _ = _quotient_by(a, ideal)
    return quotient


# -- constructors ---------------------------------------------------------


def matrix_algebra(n: int) -> FDAlgebra:
    """M_n over Q with the matrix-unit basis e11, e12, ..., enn."""
    if n < 1:
        raise InvalidParams("matrix_algebra requires n >= 1")
    units = [(r, c) for r in range(n) for c in range(n)]
    index = {rc: i for i, rc in enumerate(units)}
    names = [f"e{r + 1}{c + 1}" for r, c in units]
    dim = n * n
    table: Table = []
    for (r1, c1) in units:
        row = []
        for (r2, c2) in units:
            if c1 == r2:
                row.append({index[(r1, c2)]: _ONE})
            else:
                row.append({})
        table.append(row)
    unit = [_ONE if r == c else _ZERO for r, c in units]
    return FDAlgebra(dim, names, table, unit)


def direct_sum(a: FDAlgebra, b: FDAlgebra) -> FDAlgebra:
    dim = a.dim + b.dim
    names = [f"1:{s}" for s in a.basis_names] + [f"2:{s}" for s in b.basis_names]
    table: Table = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if i < a.dim and j < a.dim:
                row.append(dict(a.table[i][j]))
            elif i >= a.dim and j >= a.dim:
                row.append({k + a.dim: v
                            for k, v in b.table[i - a.dim][j - a.dim].items()})
            else:
                row.append({})
        table.append(row)
    unit = None
    if a.has_unit and b.has_unit:
        unit = list(a.unit_coords) + list(b.unit_coords)
    return FDAlgebra(dim, names, table, unit)


def block_triangular(*sizes: int) -> FDAlgebra:
    """UT(n_1, ..., n_q): block upper triangular matrices.

    Basis ordering puts the diagonal (semisimple) matrix units first, then
    the strictly upper radical part.
    """
    if not sizes or any(n < 1 for n in sizes):
        raise InvalidParams("block sizes must be positive")
    bounds = [0]
    for n in sizes:
        bounds.append(bounds[-1] + n)
    total = bounds[-1]

    def block_of(r: int) -> int:
        for bi in range(len(sizes)):
            if r < bounds[bi + 1]:
                return bi
        raise AssertionError

    diagonal = [(r, c) for r in range(total) for c in range(total)
                if block_of(r) == block_of(c)]
    upper = [(r, c) for r in range(total) for c in range(total)
             if block_of(r) < block_of(c)]
    units = diagonal + upper
    index = {rc: i for i, rc in enumerate(units)}
    names = [f"e{r + 1}{c + 1}" for r, c in units]
    table: Table = []
    for (r1, c1) in units:
        row = []
        for (r2, c2) in units:
            if c1 == r2 and (r1, c2) in index:
                row.append({index[(r1, c2)]: _ONE})
            else:
                row.append({})
        table.append(row)
    unit = [_ONE if r == c else _ZERO for r, c in units]
    return FDAlgebra(len(units), names, table, unit)


def nilpotent_free(generators: int, nilpotency: int) -> FDAlgebra:
    """Free nilpotent algebra on g generators with J^(s+1) = 0: basis all
    words of length 1..s, products concatenate and truncate."""
    if generators < 1 or nilpotency < 1:
        raise InvalidParams("need g >= 1 and s >= 1")
    words: list[tuple[int, ...]] = []
    current: list[tuple[int, ...]] = [(g,) for g in range(generators)]
    for _ in range(nilpotency):
        words.extend(current)
        current = [word + (g,) for word in current for g in range(generators)]
    index = {word: i for i, word in enumerate(words)}
    names = ["".join(f"x{g + 1}" for g in word) for word in words]
    table: Table = []
    for w1 in words:
        row = []
        for w2 in words:
            cat = w1 + w2
            if len(cat) <= nilpotency:
                row.append({index[cat]: _ONE})
            else:
                row.append({})
        table.append(row)
    return FDAlgebra(len(words), names, table)


def unitalize(a: FDAlgebra) -> FDAlgebra:
    """Q*1 + A with an adjoined unit in coordinate 0."""
    dim = a.dim + 1
    names = ["1"] + list(a.basis_names)
    table: Table = [[{} for _ in range(dim)] for _ in range(dim)]
    table[0][0] = {0: _ONE}
    for i in range(a.dim):
        table[0][i + 1] = {i + 1: _ONE}
        table[i + 1][0] = {i + 1: _ONE}
        for j in range(a.dim):
            table[i + 1][j + 1] = {k + 1: v for k, v in a.table[i][j].items()}
    unit = [_ONE] + [_ZERO] * a.dim
    return FDAlgebra(dim, names, table, unit)


# -- universal fundamental algebra ----------------------------------------


def monoid_words(max_b: int) -> list[str]:
    """Words over {a, b} with no 'aa' factor and at most max_b letters b,
    ordered by length then lexicographically.  These index the grading of
    the universal fundamental algebra."""
    out = []
    frontier = ["a", "b"]
    while frontier:
        nxt = []
        for word in frontier:
            if word.count("b") <= max_b:
                out.append(word)
                for letter in "ab":
                    if not (letter == "a" and word.endswith("a")):
                        nxt.append(word + letter)
        frontier = nxt
    return sorted(out, key=lambda w: (len(w), w))


def monoid_word_count(i: int, j: int) -> int:
    """Number of no-'aa' words with i letters a and j letters b."""
    return sum(1 for w in monoid_words(j) if w.count("a") == i and w.count("b") == j)


class UniversalGrading:
    """Monoid-word grading data returned next to the algebra itself."""

    def __init__(self, words: list[str], counts: dict[tuple[int, int], int],
                 abar_dim: int, nvars: int, dimension: int):
        self.words = words
        self.counts = counts
        self.abar_dim = abar_dim
        self.nvars = nvars
        self.dimension = dimension


def universal_fundamental(blocks: Sequence[int], s: int, m: int,
                          max_dim: int = 512) -> tuple[FDAlgebra, UniversalGrading]:
    """The finite-dimensional free product of Abar = (+) M_{n_i} with m
    radical generators, truncated past degree s in the generators.

    Basis elements are monoid words (a-slots filled with an Abar basis
    element, b-slots with a generator); multiplication concatenates words
    and contracts a.a through the Abar table.
    """
    if m < 1 or s < 0 or not blocks or any(n < 1 for n in blocks):
        raise InvalidParams("need m >= 1, s >= 0, nonempty positive blocks")
    abar = matrix_algebra(blocks[0])
    for n in blocks[1:]:
        abar = direct_sum(abar, matrix_algebra(n))
    if s == 0:
        words = ["a"]
    else:
        words = monoid_words(s)
    d = abar.dim
    counts: dict[tuple[int, int], int] = {}
    for word in words:
        key = (word.count("a"), word.count("b"))
        counts[key] = counts.get(key, 0) + 1
    dim = sum(d ** w.count("a") * m ** w.count("b") for w in words)
    if dim > max_dim:
        raise TooLarge(f"universal fundamental algebra dimension {dim} > {max_dim}")

    from itertools import product as iproduct

    basis: list[tuple[str, tuple[int, ...]]] = []
    for word in words:
        slots = [range(d) if ch == "a" else range(m) for ch in word]
        for filling in iproduct(*slots):
            basis.append((word, filling))
    index = {be: i for i, be in enumerate(basis)}

    def slot_name(ch: str, v: int) -> str:
        if ch == "a":
            return abar.basis_names[v] if d > 1 else "e"
        return f"x{v + 1}" if m > 1 else "x"

    names = ["".join(slot_name(ch, v) for ch, v in zip(word, filling))
             for word, filling in basis]

    max_b = s
    table: Table = [[{} for _ in range(dim)] for _ in range(dim)]
    for i1, (w1, f1) in enumerate(basis):
        for i2, (w2, f2) in enumerate(basis):
            if w1.count("b") + w2.count("b") > max_b:
                continue
            if w1.endswith("a") and w2.startswith("a"):
                word = w1 + w2[1:]
                left, right = f1[-1], f2[0]
                prods = abar.table[left][right]
                cell: dict[int, Fraction] = {}
                for k, c in prods.items():
                    filling = f1[:-1] + (k,) + f2[1:]
                    cell[index[(word, filling)]] = c
                table[i1][i2] = cell
            else:
                word = w1 + w2
                table[i1][i2] = {index[(word, f1 + f2)]: _ONE}
    unit = None
    if s == 0:
        unit = [_ZERO] * dim
        for i, (word, filling) in enumerate(basis):
            unit[i] = abar.unit_coords[filling[0]]
    algebra_obj = FDAlgebra(dim, names, table, unit)
    grading = UniversalGrading(words, counts, d, m, dim)
    return algebra_obj, grading


# -- JSON structure-constant format ----------------------------------------


def to_json_dict(a: FDAlgebra) -> dict:
    dense = [[[rat_to_json(a.table[i][j].get(k, _ZERO)) for k in range(a.dim)]
              for j in range(a.dim)]
             for i in range(a.dim)]
    unit = None
    if a.has_unit:
        unit = [rat_to_json(v) for v in a.unit_coords]
    return {"dim": a.dim, "basis": list(a.basis_names), "unit": unit,
            "table": dense}


def from_json_dict(doc: dict) -> FDAlgebra:
    try:
        dim = doc["dim"]
        basis = doc["basis"]
        unit = doc["unit"]
        dense = doc["table"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"missing field in algebra document: {exc}") from exc
    if not isinstance(dim, int) or dim < 0:
        raise ParseError("dim must be a nonnegative integer")
    if len(basis) != dim or len(dense) != dim:
        raise ParseError("basis/table length disagrees with dim")
    table: Table = []
    for i in range(dim):
        if len(dense[i]) != dim:
            raise ParseError("table row length disagrees with dim")
        row = []
        for j in range(dim):
            if len(dense[i][j]) != dim:
                raise ParseError("table cell length disagrees with dim")
            row.append({k: v for k, v in
                        ((k, rat_from_json(x)) for k, x in enumerate(dense[i][j]))
                        if v})
        table.append(row)
    unit_coords = None if unit is None else [rat_from_json(v) for v in unit]
    return FDAlgebra(dim, [str(s) for s in basis], table, unit_coords)


def load_algebra(path) -> FDAlgebra:
    import json

    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return from_json_dict(doc)


def dump_algebra(a: FDAlgebra, path) -> None:
    import json

    with open(path, "w") as fh:
        json.dump(to_json_dict(a), fh, indent=1)
        fh.write("\n")
