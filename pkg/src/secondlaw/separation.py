"""Kelvin-Planck compliance decision and entropy/temperature synthesis.

For a finitely generated theory, compliance with the Kelvin-Planck Second
Law is decided by a pair of mutually exclusive linear programs:

* the violation program looks for nonnegative weights on the generators
  whose combination is a cyclic process with nonzero, nonnegative heating
  (normalized to unit total heat, the simplex cross-section of the
  forbidden cone);
* the synthesis program looks for a separating per-state entropy eta and
  coldness beta = 1/T with eta . delta_m >= beta . q on every generator,
  maximizing a uniform positivity margin t <= beta_s within a box so that
  strict positivity of T becomes an ordinary LP optimum.

Exactly one succeeds, and each side hands back a certificate that
re-verifies by substitution alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlp import Infeasible, Optimal, linear_program, solve
from .measures import (
    SignedMeasure,
    SpaceMismatch,
    StateSpace,
    combine,
    l1_norm,
    negative_part,
    positive_part,
    total,
)
from .theory import Process, TheorySpec

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class ClausiusDuhemPair:
    """Per-state specific entropy and coldness (1/T).

    Synthesized pairs always have strictly positive coldness; a pair read
    from elsewhere is only as good as its verification, so positivity is
    judged by verify_cd_pair rather than enforced at construction.
    """

    space: StateSpace
    eta: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.eta) != len(self.space) or len(self.beta) != len(self.space):
            raise ValueError("eta and beta must have one entry per state")

    def beta_positive(self) -> bool:
        return all(b > 0 for b in self.beta)

    @property
    def temperature(self) -> tuple[Fraction, ...]:
        """Per-state 1/beta; only meaningful when beta is strictly positive."""
        return tuple(_F1 / b for b in self.beta)

    def shifted(self, c: Fraction) -> "ClausiusDuhemPair":
        """Gauge shift eta -> eta + c; margins are unchanged by it."""
        return ClausiusDuhemPair(self.space, tuple(e + c for e in self.eta), self.beta)

    def scaled(self, c: Fraction) -> "ClausiusDuhemPair":
        """Joint rescaling (c*eta, c*beta) for positive c."""
        if c <= 0:
            raise ValueError(f"joint scaling requires c > 0, got {c}")
        return ClausiusDuhemPair(
            self.space, tuple(c * e for e in self.eta), tuple(c * b for b in self.beta)
        )


@dataclass(frozen=True)
class ViolationCertificate:
    """Nonnegative generator weights whose combination is forbidden.

    The witness is the combination itself: delta_m part zero, q part
    nonnegative with total exactly one.
    """

    weights: tuple[Fraction, ...]
    witness: Process


@dataclass(frozen=True)
class Compliant:
    pair: ClausiusDuhemPair


@dataclass(frozen=True)
class Violated:
    certificate: ViolationCertificate


KPVerdict = Compliant | Violated


class NotKelvinPlanck(ValueError):
    """Synthesis was requested for a theory that violates the Second Law."""

    def __init__(self, certificate: ViolationCertificate):
        super().__init__("theory is not Kelvin-Planck: no Clausius-Duhem pair exists")
        self.certificate = certificate


@dataclass(frozen=True)
class MarginReport:
    """Exact per-generator margins eta . delta_m - beta . q."""

    margins: tuple[Fraction, ...]
    process_ids: tuple[str | None, ...]
    beta_positive: bool
    passed: bool


@dataclass(frozen=True)
class DirectionReport:
    """Forbidden-distance profile of a process family.

    Each process is normalized to unit L1 norm of the concatenated
    (delta_m, q) vector; the distance is the L1 mass that has to be
    removed to land in the forbidden cone: |delta_m| plus the negative
    part of q.  Zero distance means the direction itself is forbidden.
    """

    distances: tuple[Fraction, ...]
    strictly_decreasing: bool
    final_delta_m: SignedMeasure
    final_q: SignedMeasure
    nearest_forbidden: SignedMeasure


def _violation_lp(theory: TheorySpec):
    k = len(theory.processes)
    m = len(theory.space)
    rows = []
    for s in range(m):
        rows.append(([p.delta_m.values[s] for p in theory.processes], "=", _F0))
    for s in range(m):
        rows.append(([p.q.values[s] for p in theory.processes], ">=", _F0))
    rows.append(([total(p.q) for p in theory.processes], "=", _F1))
    return linear_program([_F0] * k, rows, bounds=[(_F0, None)] * k)


def find_violation(theory: TheorySpec) -> ViolationCertificate | None:
    """A forbidden conic combination of the generators, if one exists."""
    outcome = solve(_violation_lp(theory))
    if isinstance(outcome, Infeasible):
        return None
    assert isinstance(outcome, Optimal)
    weights = outcome.solution
    witness = Process(
        combine(weights, [p.delta_m for p in theory.processes], space=theory.space),
        combine(weights, [p.q for p in theory.processes], space=theory.space),
    )
    return ViolationCertificate(weights=weights, witness=witness)


def _generator_rows(theory: TheorySpec, num_vars: int):
    """Rows eta . delta_m_i - beta . q_i >= 0 over variables (eta..., beta..., rest)."""
    m = len(theory.space)
    rows = []
    for p in theory.processes:
        g = [_F0] * num_vars
        for s in range(m):
            if p.delta_m.values[s]:
                g[s] = p.delta_m.values[s]
            if p.q.values[s]:
                g[m + s] = -p.q.values[s]
        rows.append((g, ">=", _F0))
    return rows


def max_uniform_coldness(theory: TheorySpec) -> Fraction:
    """Optimum of the normalized synthesis program.

    Strictly positive exactly when a Clausius-Duhem pair exists; zero
    exactly when the violation program is feasible.
    """
    return _synthesis_stage_one(theory)[0]


def _synthesis_stage_one(theory: TheorySpec) -> tuple[Fraction, tuple[Fraction, ...], tuple[Fraction, ...]]:
    m = len(theory.space)
    nv = 2 * m + 1
    t_col = 2 * m
    rows = _generator_rows(theory, nv)
    for s in range(m):
        g = [_F0] * nv
        g[t_col] = _F1
        g[m + s] = -_F1
        rows.append((g, "<=", _F0))
    objective = [_F0] * nv
    objective[t_col] = _F1
    bounds = [(-_F1, _F1)] * m + [(_F0, _F1)] * m + [(_F0, None)]
    outcome = solve(linear_program(objective, rows, bounds))
    assert isinstance(outcome, Optimal), "synthesis program is feasible and bounded"
    eta = outcome.solution[:m]
    beta = outcome.solution[m : 2 * m]
    return outcome.value, eta, beta


def _synthesis_stage_two(theory: TheorySpec, t_star: Fraction) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Among optima of the first stage, pick the eta of least L1 norm.

    This makes the returned pair canonical enough to document: with no
    generators at all it is eta = 0, beta = 1.
    """
    m = len(theory.space)
    nv = 3 * m
    rows = _generator_rows(theory, nv)
    for s in range(m):
        g = [_F0] * nv
        g[2 * m + s] = _F1
        g[s] = -_F1
        rows.append((g, ">=", _F0))  # u_s >= eta_s
        g2 = [_F0] * nv
        g2[2 * m + s] = _F1
        g2[s] = _F1
        rows.append((g2, ">=", _F0))  # u_s >= -eta_s
    objective = [_F0] * nv
    for s in range(m):
        objective[2 * m + s] = -_F1
    bounds = [(-_F1, _F1)] * m + [(t_star, _F1)] * m + [(_F0, None)] * m
    outcome = solve(linear_program(objective, rows, bounds))
    assert isinstance(outcome, Optimal), "stage two inherits feasibility from stage one"
    return outcome.solution[:m], outcome.solution[m : 2 * m]


def synthesize_cd_pair(theory: TheorySpec, gauge_state: str | None = None) -> ClausiusDuhemPair:
    """Construct a Clausius-Duhem pair, gauged to eta = 0 at one state.

    Raises NotKelvinPlanck, carrying a violation certificate, when the
    theory admits no pair at all.
    """
    if gauge_state is None:
        gauge_state = theory.space.states[0]
    gauge_idx = theory.space.index(gauge_state)
    t_star, _, _ = _synthesis_stage_one(theory)
    if t_star == 0:
        cert = find_violation(theory)
        assert cert is not None, "zero coldness optimum must come with a violation"
        raise NotKelvinPlanck(cert)
    eta, beta = _synthesis_stage_two(theory, t_star)
    shift = eta[gauge_idx]
    eta = tuple(e - shift for e in eta)
    return ClausiusDuhemPair(theory.space, eta, beta)


def check_kelvin_planck(theory: TheorySpec, gauge_state: str | None = None) -> KPVerdict:
    """Decide the Second Law for the theory, certificate in hand either way."""
    cert = find_violation(theory)
    if cert is not None:
        return Violated(cert)
    try:
        pair = synthesize_cd_pair(theory, gauge_state)
    except NotKelvinPlanck as exc:  # pragma: no cover - duality exclusivity
        raise AssertionError(
            "violation program infeasible but synthesis failed; "
            "exact duality exclusivity was broken"
        ) from exc
    return Compliant(pair)


def cd_margin(pair: ClausiusDuhemPair, p: Process) -> Fraction:
    if p.space != pair.space:
        raise SpaceMismatch("process and pair live on different state spaces")
    acc = _F0
    for e, b, dm, qv in zip(pair.eta, pair.beta, p.delta_m.values, p.q.values):
        if dm:
            acc += e * dm
        if qv:
            acc -= b * qv
    return acc


def verify_cd_pair(theory: TheorySpec, pair: ClausiusDuhemPair) -> MarginReport:
    """Exact margin of every generator; pass iff all >= 0 and beta > 0."""
    if pair.space != theory.space:
        raise SpaceMismatch("pair and theory live on different state spaces")
    margins = tuple(cd_margin(pair, p) for p in theory.processes)
    beta_positive = pair.beta_positive()
    passed = beta_positive and all(mg >= 0 for mg in margins)
    return MarginReport(
        margins=margins,
        process_ids=tuple(p.id for p in theory.processes),
        beta_positive=beta_positive,
        passed=passed,
    )


def verify_violation(theory: TheorySpec, cert: ViolationCertificate) -> bool:
    """Re-check the certificate by substitution, independent of any solver."""
    if len(cert.weights) != len(theory.processes):
        return False
    if any(w < 0 for w in cert.weights):
        return False
    dm = combine(cert.weights, [p.delta_m for p in theory.processes], space=theory.space)
    qq = combine(cert.weights, [p.q for p in theory.processes], space=theory.space)
    if not dm.is_zero():
        return False
    if not qq.is_nonnegative() or total(qq) != 1:
        return False
    return cert.witness.delta_m == dm and cert.witness.q == qq


def analyze_directions(processes: list[Process]) -> DirectionReport:
    """Forbidden-distance of each normalized family member.

    Rejects empty families and zero processes (a zero process has no
    direction to analyze).
    """
    if not processes:
        raise ValueError("direction analysis needs a nonempty family")
    space = processes[0].space
    distances = []
    final_dm = final_q = None
    for p in processes:
        if p.space != space:
            raise SpaceMismatch("family members live on different state spaces")
        norm = l1_norm(p.delta_m) + l1_norm(p.q)
        if norm == 0:
            raise ValueError("zero process has no direction")
        dm_hat = p.delta_m.scaled(_F1 / norm)
        q_hat = p.q.scaled(_F1 / norm)
        distances.append(l1_norm(dm_hat) + l1_norm(negative_part(q_hat)))
        final_dm, final_q = dm_hat, q_hat
    decreasing = all(a > b for a, b in zip(distances, distances[1:]))
    return DirectionReport(
        distances=tuple(distances),
        strictly_decreasing=decreasing,
        final_delta_m=final_dm,
        final_q=final_q,
        nearest_forbidden=positive_part(final_q),
    )
