"""Vector partition functions and Dahmen-Micchelli checks: brute-force
counting, cocircuits, zonotope volume, big-cell decomposition, and exact
recovery of the per-cell quasi-polynomial by interpolation against the
counting oracle.

The quasi-polynomial is recovered rather than solved for: samples deep
inside a cell pin down the polynomial on each residue class, held-out
points validate it, and the difference equations nabla_Y f = 0 over all
cocircuits are verified a posteriori.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import (DegenerateCone, InsufficientData, InvalidParams,
                     NotPointed, Overflow, ValidationFailed)
from .linalg import QMatrix, RowReducer, nullspace, rank, solve_coords
from .polys import MPoly, interpolate_grid

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_SUBSET_BOUND = 12
CELL_RANK_BOUND = 3

IntVector = tuple[int, ...]


def _feasible_point(constraints: list[tuple[tuple[Fraction, ...], Fraction]],
                    nvars: int) -> list[Fraction] | None:
    """Fourier-Motzkin: a point with coeffs . x >= rhs for every row."""
    if nvars == 0:
        return [] if all(rhs <= 0 for _, rhs in constraints) else None
    lowers = []   # x_last >= bound(rest)
    uppers = []   # x_last <= bound(rest)
    kept = []
    for coeffs, rhs in constraints:
        c = coeffs[-1]
        rest = coeffs[:-1]
        if c == 0:
            kept.append((rest, rhs))
        elif c > 0:
            lowers.append((tuple(-x / c for x in rest), rhs / c))
        else:
            uppers.append((tuple(-x / c for x in rest), rhs / c))
    for lo_rest, lo_rhs in lowers:
        for up_rest, up_rhs in uppers:
            # lo_rhs + lo_rest.x <= x_last <= up_rhs + up_rest.x
            coeffs = tuple(u - l for u, l in zip(up_rest, lo_rest))
            kept.append((coeffs, lo_rhs - up_rhs))
    point = _feasible_point(kept, nvars - 1)
    if point is None:
        return None
    lo = None
    for rest, rhs in lowers:
        val = rhs + sum(r * x for r, x in zip(rest, point))
        lo = val if lo is None or val > lo else lo
    hi = None
    for rest, rhs in uppers:
        val = rhs + sum(r * x for r, x in zip(rest, point))
        hi = val if hi is None or val < hi else hi
    if lo is None and hi is None:
        last = _ZERO
    elif lo is None:
        last = hi - 1
    elif hi is None:
        last = lo + 1
    else:
        last = (lo + hi) / 2
    return point + [last]


def _primitive(vec: Sequence[Fraction]) -> IntVector:
    denom = lcm(*[x.denominator for x in vec]) if vec else 1
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


class VectorList:
    """Integer vectors spanning a pointed cone in Q^p.

    Construction certifies pointedness by finding an exact rational
    functional positive on every vector, and checks that the list spans.
    """

    def __init__(self, p: int, vectors: Iterable[Sequence[int]]):
        self.p = p
        self.vectors: list[IntVector] = [tuple(int(x) for x in v) for v in vectors]
        if any(len(v) != p for v in self.vectors):
            raise InvalidParams("vector arity disagrees with p")
        if any(not any(v) for v in self.vectors):
            raise NotPointed("the zero vector makes the cone unpointed")
        m = QMatrix.from_rows([[Fraction(x) for x in v] for v in self.vectors])
        if rank(m) != p:
            raise DegenerateCone("vectors do not span Q^p")
        constraints = [(tuple(Fraction(x) for x in v), _ONE) for v in self.vectors]
        f = _feasible_point(constraints, p)
        if f is None:
            raise NotPointed("no functional is positive on every vector")
        self.functional: tuple[Fraction, ...] = tuple(f)
        denom = lcm(*[x.denominator for x in f])
        self.int_functional: IntVector = tuple(int(x * denom) for x in f)

    @property
    def m(self) -> int:
        return len(self.vectors)

    def f_value(self, b: Sequence[int]) -> Fraction:
        return sum((c * x for c, x in zip(self.functional, b)), _ZERO)

    def to_json_dict(self) -> dict:
        return {"p": self.p, "vectors": [list(v) for v in self.vectors]}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "VectorList":
        return cls(doc["p"], doc["vectors"])


class PartitionCounter:
    """Memoized exact counter of nonnegative representations sum t_i a_i = b.

    Internally the vectors are visited in descending order of the
    pointedness functional (fewer branches at the top); the count is
    order-independent, so the public result is unchanged.
    """

    def __init__(self, s: VectorList):
        self.s = s
        f = s.int_functional
        fvals = [sum(x * y for x, y in zip(f, v)) for v in s.vectors]
        self.order = sorted(range(s.m), key=lambda i: (-fvals[i], i))
        self.ordered = [s.vectors[i] for i in self.order]
        self.fvals = [fvals[i] for i in self.order]
        self.f = f
        self.memo: dict[tuple[int, IntVector], int] = {}

    def count(self, b: Sequence[int]) -> int:
        b = tuple(int(x) for x in b)
        if sum(x * y for x, y in zip(self.f, b)) < 0:
            return 0
        return self._count(0, b)

    def _count(self, idx: int, b: IntVector) -> int:
        # precondition: f(b) >= 0
        if not any(b):
            return 1
        if idx == self.s.m:
            return 0
        if idx == self.s.m - 1:
            # closed form: b must be a nonnegative multiple of the last vector
            a = self.ordered[idx]
            pivot = next(i for i, x in enumerate(a) if x)
            t, r = divmod(b[pivot], a[pivot])
            if r or t < 0:
                return 0
            return 1 if all(x == t * y for x, y in zip(b, a)) else 0
        key = (idx, b)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        a = self.ordered[idx]
        fa = self.fvals[idx]
        fb = sum(x * y for x, y in zip(self.f, b))
        total = 0
        current = b
        while fb >= 0:
            total += self._count(idx + 1, current)
            current = tuple(x - y for x, y in zip(current, a))
            fb -= fa
        self.memo[key] = total
        return total


def count_bruteforce(s: VectorList, b: Sequence[int]) -> int:
    """P_S(b): the number of N-representations of b in the list."""
    return PartitionCounter(s).count(b)


def cocircuits(s: VectorList, bound: int = DEFAULT_SUBSET_BOUND) -> list[tuple[int, ...]]:
    """Minimal index subsets Y with S \\ Y of deficient rank, by size then
    lexicographic order."""
    if s.m > bound:
        raise Overflow(f"m = {s.m} exceeds subset enumeration bound {bound}")
    rows = [[Fraction(x) for x in v] for v in s.vectors]
    found: list[tuple[int, ...]] = []
    for size in range(1, s.m + 1):
        for subset in combinations(range(s.m), size):
            if any(set(prev) <= set(subset) for prev in found):
                continue
            rest = [rows[i] for i in range(s.m) if i not in subset]
            deficient = (not rest) or rank(QMatrix.from_rows(rest)) < s.p
            if deficient:
                found.append(subset)
    return found


def zonotope_volume(s: VectorList) -> int:
    """delta(S): sum of |det| over the p-subsets that form bases."""
    total = 0
    for subset in combinations(range(s.m), s.p):
        total += abs(_int_det([s.vectors[i] for i in subset]))
    return total


def dm_dimension(s: VectorList) -> int:
    """Rank of the Dahmen-Micchelli space DM(S); equals delta(S)."""
    return zonotope_volume(s)


def _int_det(rows: Sequence[IntVector]) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    # fraction-free expansion for larger p
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _int_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def zonotope_support(s: VectorList, n: Sequence[int]) -> int:
    """max_{z in Z(S)} n . z = sum of the positive parts."""
    return sum(max(0, sum(x * y for x, y in zip(n, v))) for v in s.vectors)


# -- big cells -----------------------------------------------------------------


@dataclass
class BigCell:
    representative: IntVector        # integer interior point
    inequalities: list[IntVector]    # n . x >= 0 descriptions (primitive)

    def to_json_dict(self) -> dict:
        return {"representative": list(self.representative),
                "inequalities": [list(n) for n in self.inequalities]}


@dataclass
class CellDecomposition:
    singular_normals: list[IntVector]
    cells: list[BigCell]

    def to_json_dict(self) -> dict:
        return {"singular_normals": [list(n) for n in self.singular_normals],
                "cells": [c.to_json_dict() for c in self.cells]}


def singular_hyperplanes(s: VectorList) -> list[IntVector]:
    """Primitive normals of the spans of independent (p-1)-subsets."""
    normals = set()
    if s.p == 1:
        return []
    for subset in combinations(range(s.m), s.p - 1):
        rows = [[Fraction(x) for x in s.vectors[i]] for i in subset]
        m = QMatrix.from_rows(rows)
        if rank(m) != s.p - 1:
            continue
        kernel = nullspace(m)
        if len(kernel) != 1:
            continue
        normals.add(_primitive(kernel[0]))
    return sorted(normals)


def big_cells(s: VectorList, bound: int = DEFAULT_SUBSET_BOUND) -> CellDecomposition:
    """Chambers of the pointed cone cut by the singular hyperplanes.

    Works on the cross-section polytope in the hyperplane f = 1 (a point,
    segment, or polygon for p <= 3), splitting it by the singular lines.
    """
    if s.p > CELL_RANK_BOUND:
        raise Overflow(f"cell decomposition restricted to p <= {CELL_RANK_BOUND}")
    if s.m > bound:
        raise Overflow(f"m = {s.m} exceeds bound {bound}")
    normals = singular_hyperplanes(s)
    f = s.functional
    if s.p == 1:
        sign = 1 if s.vectors[0][0] > 0 else -1
        cell = BigCell((sign,), [(sign,)])
        return CellDecomposition(normals, [cell])
    # chart of the cross-section hyperplane {f . x = 1}
    fm = QMatrix.from_rows([[x for x in f]])
    chart_basis = nullspace(fm)            # p-1 rational vectors
    i0 = next(i for i, x in enumerate(f) if x)
    x0 = tuple(_ONE / f[i0] if i == i0 else _ZERO for i in range(s.p))
    basis_rows = [dict(enumerate(u)) for u in chart_basis]

    def to_chart(q: Sequence[Fraction]) -> tuple[Fraction, ...]:
        diff = {i: v - x0[i] for i, v in enumerate(q) if v - x0[i]}
        coords = solve_coords(basis_rows, diff)
        if coords is None:
            raise DegenerateCone("point escapes the cross-section chart")
        return tuple(coords)

    def from_chart(c: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = list(x0)
        for coeff, u in zip(c, chart_basis):
            for i, v in enumerate(u):
                out[i] += coeff * v
        return tuple(out)

    points = [to_chart(tuple(Fraction(x) / s.f_value(v) for x in v))
              for v in s.vectors]
    # each singular hyperplane n.x = 0 restricts to a chart line l(c) = 0
    lines = []
    for n in normals:
        coeffs = tuple(sum(Fraction(x) * u[i] for i, x in enumerate(n))
                       for u in chart_basis)
        offset = sum(Fraction(x) * x0[i] for i, x in enumerate(n))
        lines.append((n, coeffs, offset))

    if s.p == 2:
        cells = _cells_interval(s, points, lines, from_chart)
    else:
        cells = _cells_polygon(s, points, lines, from_chart)
    return CellDecomposition(normals, cells)


def _cone_normal_through(s: VectorList, ray1: Sequence[Fraction],
                         ray2: Sequence[Fraction] | None,
                         inside: Sequence[Fraction]) -> IntVector:
    """Primitive normal of the hyperplane through the given ray(s), oriented
    so the interior point is on the positive side."""
    rows = [list(ray1)] + ([list(ray2)] if ray2 is not None else [])
    kernel = nullspace(QMatrix.from_rows(rows))
    n = _primitive(kernel[0])
    side = sum(Fraction(x) * y for x, y in zip(n, inside))
    if side < 0:
        n = tuple(-x for x in n)
    return n


def _cells_interval(s, points, lines, from_chart) -> list[BigCell]:
    coords = [c[0] for c in points]
    lo, hi = min(coords), max(coords)
    cuts = {lo, hi}
    for _n, coeffs, offset in lines:
        if coeffs[0] == 0:
            continue
        c = -offset / coeffs[0]
        if lo < c < hi:
            cuts.add(c)
    sorted_cuts = sorted(cuts)
    cells = []
    for a, b in zip(sorted_cuts, sorted_cuts[1:]):
        mid = (a + b) / 2
        rep_pt = from_chart((mid,))
        rep = _primitive(rep_pt)
        bounds = []
        for endpoint in (a, b):
            ray = from_chart((endpoint,))
            bounds.append(_cone_normal_through(s, ray, None, rep_pt))
        cells.append(BigCell(rep, sorted(set(bounds))))
    cells.sort(key=lambda c: c.representative)
    return cells


def _convex_hull_2d(pts: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _split_polygon(poly, coeffs, offset):
    """Split a CCW convex polygon by the line coeffs . c + offset = 0."""
    values = [coeffs[0] * x + coeffs[1] * y + offset for x, y in poly]
    if all(v >= 0 for v in values) or all(v <= 0 for v in values):
        return [poly]
    pos, neg = [], []
    npts = len(poly)
    for i in range(npts):
        j = (i + 1) % npts
        vi, vj = values[i], values[j]
        if vi >= 0:
            pos.append(poly[i])
        if vi <= 0:
            neg.append(poly[i])
        if (vi > 0 > vj) or (vi < 0 < vj):
            t = vi / (vi - vj)
            cut = (poly[i][0] + t * (poly[j][0] - poly[i][0]),
                   poly[i][1] + t * (poly[j][1] - poly[i][1]))
            pos.append(cut)
            neg.append(cut)
    out = []
    for part in (pos, neg):
        if len(part) >= 3 and _polygon_area2(part) != 0:
            out.append(part)
    return out


def _polygon_area2(poly) -> Fraction:
    acc = _ZERO
    for i in range(len(poly)):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % len(poly)]
        acc += x1 * y2 - x2 * y1
    return acc


def _cells_polygon(s, points, lines, from_chart) -> list[BigCell]:
    hull = _convex_hull_2d([(c[0], c[1]) for c in points])
    if len(hull) < 3:
        raise DegenerateCone("cross-section polygon is degenerate")
    regions = [hull]
    for _n, coeffs, offset in lines:
        nxt = []
        for poly in regions:
            nxt.extend(_split_polygon(poly, coeffs, offset))
        regions = nxt
    cells = []
    for poly in regions:
        cx = sum((p[0] for p in poly), _ZERO) / len(poly)
        cy = sum((p[1] for p in poly), _ZERO) / len(poly)
        rep_pt = from_chart((cx, cy))
        rep = _primitive(rep_pt)
        bounds = set()
        for i in range(len(poly)):
            v1 = from_chart(poly[i])
            v2 = from_chart(poly[(i + 1) % len(poly)])
            bounds.add(_cone_normal_through(s, v1, v2, rep_pt))
        cells.append(BigCell(rep, sorted(bounds)))
    cells.sort(key=lambda c: c.representative)
    return cells


# -- per-cell quasi-polynomials ---------------------------------------------------


@dataclass
class CellQuasiPolynomial:
    """P_S on one big cell: a polynomial per coset of the lattice M*Z^p."""
    s: VectorList
    cell: BigCell
    modulus: int
    coset_polys: dict[IntVector, MPoly]

    def value(self, b: Sequence[int]) -> Fraction:
        kappa = tuple(int(x) % self.modulus for x in b)
        poly = self.coset_polys.get(kappa)
        if poly is None:
            return _ZERO
        return poly.evaluate([Fraction(x) for x in b])

    @property
    def degree(self) -> int:
        return max((p.total_degree() for p in self.coset_polys.values()),
                   default=-1)

    def to_json_dict(self) -> dict:
        out = []
        for kappa in sorted(self.coset_polys):
            poly = self.coset_polys[kappa]
            terms = [[list(e), str(c)] for e, c in sorted(poly.terms.items())]
            out.append({"coset": list(kappa), "terms": terms})
        return {"modulus": self.modulus, "cell": self.cell.to_json_dict(),
                "cosets": out}


def _wall_normals_for(s: VectorList, cell: BigCell) -> list[IntVector]:
    """Every arrangement wall, oriented positively on the cell."""
    rep = cell.representative
    walls = []
    for n in singular_hyperplanes(s) + cell.inequalities:
        side = sum(x * y for x, y in zip(n, rep))
        if side == 0:
            raise ValidationFailed("cell representative lies on a wall")
        walls.append(n if side > 0 else tuple(-x for x in n))
    return sorted(set(walls))


def _is_deep(s: VectorList, walls: Sequence[IntVector], b: Sequence[int]) -> bool:
    for n in walls:
        if sum(x * y for x, y in zip(n, b)) <= zonotope_support(s, n):
            return False
    return True


def _deep_scale(s: VectorList, walls, rep, offsets) -> int:
    """Smallest L with L*rep + off strictly past every wall margin."""
    scale = 1
    for n in walls:
        n_rep = sum(x * y for x, y in zip(n, rep))
        h = zonotope_support(s, n)
        worst = min(sum(x * y for x, y in zip(n, off)) for off in offsets)
        # need scale * n_rep + worst > h
        need = (h - worst) // n_rep + 1
        scale = max(scale, int(need))
    return scale


def cell_quasipolynomial(s: VectorList, cell: BigCell, seed: int = 0,
                         retries: int = 3,
                         counter: PartitionCounter | None = None) -> CellQuasiPolynomial:
    """Interpolate P_S deep inside the cell, one polynomial per coset.

    Samples lie on a product grid of span (deg+1)^p per coset of M*Z^p,
    with M the lcm of the basis determinants and deg = m - p the
    Dahmen-Micchelli degree bound; held-out deep points validate the fit,
    and failure pushes the base point deeper before giving up.
    """
    p = s.p
    deg = s.m - p
    dets = [abs(_int_det([s.vectors[i] for i in subset]))
            for subset in combinations(range(s.m), p)]
    dets = [d for d in dets if d]
    modulus = lcm(*dets) if dets else 1
    walls = _wall_normals_for(s, cell)
    rep = cell.representative
    if counter is None:
        counter = PartitionCounter(s)
    rng = random.Random(seed)
    grid = list(product(range(deg + 1), repeat=p))
    cosets = list(product(range(modulus), repeat=p))
    offsets = [tuple(k + modulus * g for k, g in zip(kappa, gpt))
               for kappa in cosets for gpt in grid]
    holdout_shifts = [tuple(modulus * (deg + 1 + rng.randint(0, 2)) for _ in range(p))
                      for _ in range(3)]
    all_offsets = offsets + [tuple(k + h for k, h in zip(kappa, shift))
                             for kappa in cosets for shift in holdout_shifts]
    scale = _deep_scale(s, walls, rep, all_offsets)
    for _ in range(retries):
        base = tuple(scale * x for x in rep)
        polys: dict[IntVector, MPoly] = {}
        ok = True
        for kappa in cosets:
            pts = []
            vals = []
            for gpt in grid:
                b = tuple(bb + k + modulus * g
                          for bb, k, g in zip(base, kappa, gpt))
                assert _is_deep(s, walls, b)
                pts.append(b)
                vals.append(Fraction(counter.count(b)))
            poly = interpolate_grid(p, pts, vals, deg)
            coset_key = tuple((base[i] + kappa[i]) % modulus for i in range(p))
            polys[coset_key] = poly
            for shift in holdout_shifts:
                b = tuple(bb + k + h for bb, k, h in zip(base, kappa, shift))
                if poly.evaluate([Fraction(x) for x in b]) != counter.count(b):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return CellQuasiPolynomial(s, cell, modulus, polys)
        scale *= 2
    raise ValidationFailed("held-out points disagree; sampling region suspect")


def nabla_apply(qp: CellQuasiPolynomial, y: Sequence[int]) -> CellQuasiPolynomial:
    """The difference (nabla_y f)(x) = f(x) - f(x - y) as a quasi-polynomial."""
    m = qp.modulus
    out: dict[IntVector, MPoly] = {}
    for kappa, poly in qp.coset_polys.items():
        prev_kappa = tuple((k - yy) % m for k, yy in zip(kappa, y))
        prev = qp.coset_polys.get(prev_kappa)
        shifted = prev.shift(list(y)) if prev is not None else MPoly.zero(qp.s.p)
        out[kappa] = poly - shifted
    return CellQuasiPolynomial(qp.s, qp.cell, m, out)


def verify_dm_relations(qp: CellQuasiPolynomial,
                        bound: int = DEFAULT_SUBSET_BOUND) -> bool:
    """nabla_Y f = 0 for every cocircuit Y: the recovered quasi-polynomial
    really lies in the Dahmen-Micchelli space."""
    for subset in cocircuits(qp.s, bound):
        current = qp
        for idx in subset:
            current = nabla_apply(current, qp.s.vectors[idx])
        if any(not poly.is_zero() for poly in current.coset_polys.values()):
            return False
    return True


def deep_sample_points(s: VectorList, cell: BigCell, count: int,
                       seed: int = 0) -> list[IntVector]:
    """Fresh deterministic deep-interior lattice points of a cell."""
    walls = _wall_normals_for(s, cell)
    rng = random.Random(seed)
    rep = cell.representative
    base_scale = _deep_scale(s, walls, rep, [(0,) * s.p])
    out: list[IntVector] = []
    seen = set()
    attempts = 0
    spread = base_scale + 4 + 2 * count
    while len(out) < count:
        attempts += 1
        if attempts > 10_000:
            raise InsufficientData("could not find enough deep points")
        scale = base_scale + rng.randint(0, spread)
        jitter = tuple(rng.randint(0, max(2, base_scale // 2)) for _ in range(s.p))
        b = tuple(scale * x + j for x, j in zip(rep, jitter))
        if b not in seen and _is_deep(s, walls, b):
            seen.add(b)
            out.append(b)
    return out
