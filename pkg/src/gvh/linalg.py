"""Sparse exact Gaussian elimination over an arbitrary field.

Field elements only need ``+ - * /`` and truthiness for zero tests, so the same
code runs over ``Fraction``, ``QuadraticNumber`` and ``RationalFunction``.

Rows are dictionaries ``column -> coefficient`` with integer columns.  An affine
row ``sum_j a_j x_j + b = 0`` additionally carries the constant ``b`` and the
combination of original equations it was derived from, so an inconsistent
system yields a certificate ``sum_r y_r * row_r == (0, nonzero)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["Echelon", "AffineSystem", "Solution", "Witness", "SolveResult"]


def _axpy(target: dict, factor, source: dict):
    """target -= factor * source, dropping zeros."""
    for j, v in source.items():
        cur = target.get(j)
        nv = -(factor * v) if cur is None else cur - factor * v
        if nv:
            target[j] = nv
        elif cur is not None:
            del target[j]


class Echelon:
    """Incremental row-echelon form; each pivot row has its pivot as minimum column.

    ``track`` enables bookkeeping of constants and source combinations.
    """

    def __init__(self, one=1, track: bool = False):
        self.one = one
        self.track = track
        self.pivots: dict = {}  # col -> (row, const, combo)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict, const=None, combo=None):
        row = dict(row)
        combo = dict(combo) if combo is not None else None
        while True:
            hit = [k for k in row if k in self.pivots]
            if not hit:
                return row, const, combo
            k = min(hit)
            f = row.pop(k)
            prow, pconst, pcombo = self.pivots[k]
            _axpy(row, f, {j: v for j, v in prow.items() if j != k})
            if const is not None and pconst is not None and pconst:
                const = const - f * pconst
            if combo is not None and pcombo is not None:
                _axpy(combo, f, pcombo)

    def insert(self, row: dict, const=None, combo=None):
        """Reduce and add; returns ``(pivot_col or None, reduced_row, const, combo)``."""
        row, const, combo = self.reduce(row, const, combo)
        if not row:
            return None, row, const, combo
        k = min(row)
        inv = self.one / row[k]
        row = {j: v * inv for j, v in row.items()}
        if const is not None:
            const = const * inv
        if combo is not None:
            combo = {j: v * inv for j, v in combo.items()}
        self.pivots[k] = (row, const, combo)
        return k, row, const, combo

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)[0]


@dataclass
class Witness:
    """Combination ``sum_r multipliers[r] * equation_r`` equal to ``0 = constant``."""

    multipliers: dict
    constant: object


@dataclass
class Solution:
    particular: dict
    nullspace: list  # list of (free column, {col: value})
    pivot_columns: list
    free_columns: list

    def value(self, col, zero=0):
        return self.particular.get(col, zero)


@dataclass
class SolveResult:
    rank: int
    equations: int
    unknowns: int
    solution: Solution | None = None
    witness: Witness | None = None
    inconsistent_rows: list = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.witness is None


class AffineSystem:
    """Equations ``sum_j a_j x_j + b = 0`` with exact coefficients."""

    def __init__(self, zero=0, one=1):
        self.zero = zero
        self.one = one
        self.rows: list = []
        self.labels: list = []

    def add(self, coeffs: dict, const=None, label=None) -> int:
        coeffs = {j: v for j, v in coeffs.items() if v}
        self.rows.append((coeffs, const if const is not None else self.zero))
        self.labels.append(label)
        return len(self.rows) - 1

    def __len__(self):
        return len(self.rows)

    def solve(self, columns=None) -> SolveResult:
        ech = Echelon(self.one, track=True)
        witness = None
        bad = []
        for idx, (coeffs, const) in enumerate(self.rows):
            pivot, row, c, combo = ech.insert(coeffs, const, {idx: self.one})
            if pivot is None and c:
                bad.append(idx)
                if witness is None:
                    witness = Witness(multipliers=combo, constant=c)
        cols = set(columns) if columns is not None else set()
        for coeffs, _ in self.rows:
            cols.update(coeffs)
        result = SolveResult(rank=ech.rank, equations=len(self.rows), unknowns=len(cols))
        if witness is not None:
            result.witness = witness
            result.inconsistent_rows = bad
            return result
        result.solution = self._back_substitute(ech, sorted(cols))
        return result

    def _back_substitute(self, ech: Echelon, cols: list) -> Solution:
        pivots = sorted(ech.pivots, reverse=True)
        free = [c for c in cols if c not in ech.pivots]
        # expr[k] = (constant part, {free col: coefficient})
        expr: dict = {}
        for k in pivots:
            row, const, _ = ech.pivots[k]
            base = -const if const else self.zero
            lin: dict = {}
            for j, a in row.items():
                if j == k:
                    continue
                if j in expr:
                    jc, jl = expr[j]
                    if jc:
                        base = base - a * jc
                    _axpy(lin, a, jl)
                else:
                    _axpy(lin, a, {j: self.one})
            expr[k] = (base, lin)
        particular = {k: c for k, (c, _) in expr.items() if c}
        nullspace = []
        for f in free:
            vec = {f: self.one}
            for k, (_, lin) in expr.items():
                if f in lin:
                    vec[k] = lin[f]
            nullspace.append((f, vec))
        return Solution(particular, nullspace, sorted(ech.pivots), free)
