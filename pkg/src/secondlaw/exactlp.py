"""Exact rational-arithmetic linear programming.

Two-phase primal simplex with Bland's anti-cycling pivot rule over exact
rationals.  Every outcome carries a certificate that re-verifies by direct
substitution: an optimal primal/dual pair with zero duality gap, a Farkas
ray for infeasible programs, or a feasible point plus improving ray for
unbounded ones.  No tolerances exist anywhere in this module.

Dual conventions, with all programs stated as maximizations: a multiplier
is >= 0 on a "<=" row, <= 0 on a ">=" row, and free on an "=" row.  The
dual vector of an outcome is indexed by the program's augmented row list:
explicit constraints first, then one row per finite lower bound (as a ">="
row), then one per finite upper bound (as a "<=" row), both in variable
order.  ``augmented_rows`` materializes that list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .measures import _as_fraction

LE, GE, EQ = "<=", ">=", "="
_RELS = (LE, GE, EQ)

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def __post_init__(self) -> None:
        if self.rel not in _RELS:
            raise ValueError(f"relation must be one of {_RELS}, got {self.rel!r}")
        object.__setattr__(self, "coeffs", tuple(_as_fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", _as_fraction(self.rhs))


@dataclass(frozen=True)
class LinearProgram:
    """Maximize objective . x subject to constraints and variable bounds."""

    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    lower: tuple[Fraction | None, ...]
    upper: tuple[Fraction | None, ...]

    def __post_init__(self) -> None:
        n = len(self.objective)
        object.__setattr__(self, "objective", tuple(_as_fraction(c) for c in self.objective))
        for c in self.constraints:
            if len(c.coeffs) != n:
                raise ValueError(
                    f"constraint has {len(c.coeffs)} coefficients for {n} variables"
                )
        if len(self.lower) != n or len(self.upper) != n:
            raise ValueError("bounds must have one (lower, upper) entry per variable")
        object.__setattr__(
            self, "lower", tuple(None if b is None else _as_fraction(b) for b in self.lower)
        )
        object.__setattr__(
            self, "upper", tuple(None if b is None else _as_fraction(b) for b in self.upper)
        )

    @property
    def num_vars(self) -> int:
        return len(self.objective)


def linear_program(
    objective: Sequence,
    constraints: Sequence[tuple[Sequence, str, object]],
    bounds: Sequence[tuple[object, object]] | None = None,
) -> LinearProgram:
    """Convenience constructor; bounds default to fully free variables."""
    n = len(objective)
    if bounds is None:
        bounds = [(None, None)] * n
    return LinearProgram(
        objective=tuple(objective),
        constraints=tuple(Constraint(tuple(g), rel, rhs) for g, rel, rhs in constraints),
        lower=tuple(lo for lo, _ in bounds),
        upper=tuple(hi for _, hi in bounds),
    )


@dataclass(frozen=True)
class Optimal:
    solution: tuple[Fraction, ...]
    value: Fraction
    dual: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    ray: tuple[Fraction, ...]


@dataclass(frozen=True)
class Unbounded:
    point: tuple[Fraction, ...]
    ray: tuple[Fraction, ...]


LPOutcome = Optimal | Infeasible | Unbounded


def augmented_rows(lp: LinearProgram) -> list[tuple[tuple[Fraction, ...], str, Fraction]]:
    """Constraints plus bounds rewritten as rows, in the documented dual order."""
    n = lp.num_vars
    rows = [(c.coeffs, c.rel, c.rhs) for c in lp.constraints]
    for j in range(n):
        if lp.lower[j] is not None:
            unit = tuple(_F1 if k == j else _F0 for k in range(n))
            rows.append((unit, GE, lp.lower[j]))
    for j in range(n):
        if lp.upper[j] is not None:
            unit = tuple(_F1 if k == j else _F0 for k in range(n))
            rows.append((unit, LE, lp.upper[j]))
    return rows


class _Simplex:
    """One solve.  Builds a standard-form tableau and runs both phases.

    Variables with a finite lower bound are shifted to nonnegative ones;
    fully free variables are split into positive/negative parts.  Upper
    bounds become internal rows.  Each row keeps the column that started
    as its unit vector, so final duals are read off as c_B . B^-1 without
    re-factorizing.
    """

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        n = lp.num_vars

        # Exact-duplicate constraints are solved once; the removed copies
        # get multiplier zero on the way out.
        seen: dict = {}
        self.kept: list[Constraint] = []
        self.dup_of: list[int] = []
        for c in lp.constraints:
            key = (c.coeffs, c.rel, c.rhs)
            if key in seen:
                self.dup_of.append(seen[key])
            else:
                seen[key] = len(self.kept)
                self.dup_of.append(len(self.kept))
                self.kept.append(c)

        self.shift = [lo if lo is not None else _F0 for lo in lp.lower]
        self.col_var: list[tuple[int, int]] = []  # struct col -> (var, sign)
        self.var_cols: list[tuple[int, int | None]] = []
        for j in range(n):
            if lp.lower[j] is not None:
                self.var_cols.append((len(self.col_var), None))
                self.col_var.append((j, 1))
            else:
                self.var_cols.append((len(self.col_var), len(self.col_var) + 1))
                self.col_var.append((j, 1))
                self.col_var.append((j, -1))
        self.nstruct = len(self.col_var)

        # Internal rows in original orientation: kept constraints,
        # then one "<=" row per finite upper bound.
        self.int_rows: list[tuple[list[Fraction], str, Fraction]] = [
            (list(c.coeffs), c.rel, c.rhs) for c in self.kept
        ]
        self.ub_rows: list[tuple[int, int]] = []  # (var, internal row index)
        for j in range(n):
            if lp.upper[j] is not None:
                g = [_F0] * n
                g[j] = _F1
                self.ub_rows.append((j, len(self.int_rows)))
                self.int_rows.append((g, LE, lp.upper[j]))

        self._build_tableau()

    def _build_tableau(self) -> None:
        n = self.lp.num_vars
        R = len(self.int_rows)
        self.mu = [1] * R
        kinds = []
        for r, (g, rel, h) in enumerate(self.int_rows):
            h2 = h - sum((g[j] * self.shift[j] for j in range(n) if g[j]), _F0)
            m = 1
            krel = rel
            if krel == GE:
                m, krel = -1, LE
            if m * h2 < 0:
                m = -m
                if krel == LE:
                    krel = GE
            self.mu[r] = m
            kinds.append((krel, m * h2))

        nslack = sum(1 for krel, _ in kinds if krel != EQ)
        nart = sum(1 for krel, _ in kinds if krel != LE)
        self.ncols = self.nstruct + nslack + nart
        self.art_start = self.nstruct + nslack

        self.T: list[list[Fraction]] = []
        self.rhs: list[Fraction] = []
        self.basis: list[int] = []
        self.unit_col: list[int] = [0] * R
        s_next, a_next = self.nstruct, self.art_start
        for r, (g, _rel, _h) in enumerate(self.int_rows):
            krel, b = kinds[r]
            m = self.mu[r]
            row = [_F0] * self.ncols
            for t, (j, sgn) in enumerate(self.col_var):
                if g[j]:
                    row[t] = m * sgn * g[j]
            if krel == LE:
                row[s_next] = _F1
                self.unit_col[r] = s_next
                self.basis.append(s_next)
                s_next += 1
            elif krel == GE:
                row[s_next] = -_F1
                s_next += 1
                row[a_next] = _F1
                self.unit_col[r] = a_next
                self.basis.append(a_next)
                a_next += 1
            else:
                row[a_next] = _F1
                self.unit_col[r] = a_next
                self.basis.append(a_next)
                a_next += 1
            self.T.append(row)
            self.rhs.append(b)
        self.has_artificials = nart > 0

    def _pivot(self, k: int, j: int, obj: list[Fraction]) -> None:
        T, rhs = self.T, self.rhs
        piv = T[k][j]
        if piv != 1:
            inv = _F1 / piv
            T[k] = [x * inv if x else x for x in T[k]]
            rhs[k] *= inv
        prow, pb = T[k], rhs[k]
        for i in range(len(T)):
            if i == k:
                continue
            f = T[i][j]
            if f:
                T[i] = [a - f * b if b else a for a, b in zip(T[i], prow)]
                if pb:
                    rhs[i] -= f * pb
        f = obj[j]
        if f:
            obj[:] = [a - f * b if b else a for a, b in zip(obj, prow)]
        self.basis[k] = j

    def _priced_objective(self, cost: list[Fraction]) -> list[Fraction]:
        obj = list(cost)
        for k, bcol in enumerate(self.basis):
            f = cost[bcol]
            if f:
                row = self.T[k]
                obj = [a - f * b if b else a for a, b in zip(obj, row)]
        return obj

    def _bland(self, obj: list[Fraction], entering_limit: int) -> int | None:
        """Run Bland pivots to optimality; return entering column if unbounded."""
        T, rhs, basis = self.T, self.rhs, self.basis
        while True:
            j_star = -1
            for j in range(entering_limit):
                if obj[j] > 0:
                    j_star = j
                    break
            if j_star < 0:
                return None
            k_star = -1
            best = None
            for k in range(len(T)):
                a = T[k][j_star]
                if a > 0:
                    ratio = rhs[k] / a
                    if best is None or ratio < best or (ratio == best and basis[k] < basis[k_star]):
                        best = ratio
                        k_star = k
            if k_star < 0:
                return j_star
            self._pivot(k_star, j_star, obj)

    def _phase_one(self) -> bool:
        """Drive artificials to zero; False means the program is infeasible."""
        cost = [_F0] * self.ncols
        for a in range(self.art_start, self.ncols):
            cost[a] = -_F1
        obj = self._priced_objective(cost)
        j = self._bland(obj, self.art_start)
        assert j is None, "phase-1 objective is bounded by construction"
        z1 = sum(
            (cost[b] * v for b, v in zip(self.basis, self.rhs) if cost[b]), _F0
        )
        if z1 < 0:
            self._phase_cost = cost
            return False
        # Pivot remaining zero-level artificials out; rows that cannot be
        # pivoted are linearly dependent and get dropped.
        k = 0
        while k < len(self.T):
            if self.basis[k] >= self.art_start:
                j_piv = -1
                for j in range(self.art_start):
                    if self.T[k][j]:
                        j_piv = j
                        break
                if j_piv >= 0:
                    self._pivot(k, j_piv, obj)
                    k += 1
                else:
                    del self.T[k]
                    del self.rhs[k]
                    del self.basis[k]
            else:
                k += 1
        return True

    def _phase_two_cost(self) -> list[Fraction]:
        cost = [_F0] * self.ncols
        for t, (j, sgn) in enumerate(self.col_var):
            c = self.lp.objective[j]
            if c:
                cost[t] = sgn * c
        return cost

    def _solution(self) -> tuple[Fraction, ...]:
        vals = [_F0] * self.ncols
        for b, v in zip(self.basis, self.rhs):
            vals[b] = v
        x = list(self.shift)
        for t, (j, sgn) in enumerate(self.col_var):
            if vals[t]:
                x[j] += sgn * vals[t]
        return tuple(x)

    def _row_multipliers(self, cost: list[Fraction]) -> list[Fraction]:
        """w_r per internal row: c_B . B^-1 read from the unit columns."""
        cb = [(k, cost[b]) for k, b in enumerate(self.basis) if cost[b]]
        w = []
        for r in range(len(self.int_rows)):
            uc = self.unit_col[r]
            y = sum((f * self.T[k][uc] for k, f in cb if self.T[k][uc]), _F0)
            w.append(self.mu[r] * y)
        return w

    def _public_dual(self, cost: list[Fraction], homogeneous: bool) -> tuple[Fraction, ...]:
        lp = self.lp
        n = lp.num_vars
        w = self._row_multipliers(cost)
        dual: list[Fraction] = []
        emitted: set[int] = set()
        for i in range(len(lp.constraints)):
            r = self.dup_of[i]
            if r in emitted:
                dual.append(_F0)
            else:
                emitted.add(r)
                dual.append(w[r])
        for j in range(n):
            if lp.lower[j] is None:
                continue
            acc = _F0 if homogeneous else lp.objective[j]
            for r, (g, _rel, _h) in enumerate(self.int_rows):
                if g[j] and w[r]:
                    acc -= w[r] * g[j]
            dual.append(acc)
        ub_w = {j: w[r] for j, r in self.ub_rows}
        for j in range(n):
            if lp.upper[j] is not None:
                dual.append(ub_w[j])
        return tuple(dual)

    def _ray(self, j_star: int) -> tuple[Fraction, ...]:
        d_std = [_F0] * self.ncols
        d_std[j_star] = _F1
        for k, b in enumerate(self.basis):
            a = self.T[k][j_star]
            if a:
                d_std[b] = -a
        d = [_F0] * self.lp.num_vars
        for t, (j, sgn) in enumerate(self.col_var):
            if d_std[t]:
                d[j] += sgn * d_std[t]
        return tuple(d)

    def run(self) -> LPOutcome:
        if self.has_artificials and not self._phase_one():
            return Infeasible(ray=self._public_dual(self._phase_cost, homogeneous=True))
        cost = self._phase_two_cost()
        obj = self._priced_objective(cost)
        j_star = self._bland(obj, self.art_start)
        if j_star is not None:
            return Unbounded(point=self._solution(), ray=self._ray(j_star))
        x = self._solution()
        value = sum((c * v for c, v in zip(self.lp.objective, x) if c), _F0)
        return Optimal(solution=x, value=value, dual=self._public_dual(cost, homogeneous=False))


def solve(lp: LinearProgram) -> LPOutcome:
    """Exact outcome with a substitution-checkable certificate."""
    return _Simplex(lp).run()


def _feasible(rows, x) -> bool:
    for g, rel, h in rows:
        lhs = sum((gj * xj for gj, xj in zip(g, x) if gj), _F0)
        if rel == LE and lhs > h:
            return False
        if rel == GE and lhs < h:
            return False
        if rel == EQ and lhs != h:
            return False
    return True


def verify_outcome(lp: LinearProgram, outcome: LPOutcome) -> bool:
    """Re-check every claim of an outcome by exact substitution.

    Independent of solver internals: works from the program data and the
    outcome's own numbers alone.
    """
    rows = augmented_rows(lp)
    n = lp.num_vars

    def dual_ok(w, want_cost) -> bool:
        if len(w) != len(rows):
            return False
        for wr, (_g, rel, _h) in zip(w, rows):
            if rel == LE and wr < 0:
                return False
            if rel == GE and wr > 0:
                return False
        for j in range(n):
            station = sum((wr * g[j] for wr, (g, _r, _h) in zip(w, rows) if wr and g[j]), _F0)
            if station != want_cost[j]:
                return False
        return True

    if isinstance(outcome, Optimal):
        x, w = outcome.solution, outcome.dual
        if len(x) != n or not _feasible(rows, x):
            return False
        value = sum((c * v for c, v in zip(lp.objective, x)), _F0)
        if value != outcome.value:
            return False
        if not dual_ok(w, lp.objective):
            return False
        dual_value = _F0
        for wr, (g, _rel, h) in zip(w, rows):
            if wr:
                slack = h - sum((gj * xj for gj, xj in zip(g, x) if gj), _F0)
                if slack != 0:  # complementary slackness
                    return False
                dual_value += wr * h
        return dual_value == value  # strong duality, exactly

    if isinstance(outcome, Infeasible):
        w = outcome.ray
        if not dual_ok(w, [_F0] * n):
            return False
        return sum((wr * h for wr, (_g, _r, h) in zip(w, rows) if wr), _F0) < 0

    if isinstance(outcome, Unbounded):
        x, d = outcome.point, outcome.ray
        if len(x) != n or len(d) != n or not _feasible(rows, x):
            return False
        for g, rel, _h in rows:
            push = sum((gj * dj for gj, dj in zip(g, d) if gj), _F0)
            if rel == LE and push > 0:
                return False
            if rel == GE and push < 0:
                return False
            if rel == EQ and push != 0:
                return False
        gain = sum((c * dj for c, dj in zip(lp.objective, d) if c), _F0)
        return gain > 0

    return False
