"""Truncated Fock-space matrix realizations and cutoff experiments.

Operators act on one or two truncated oscillator modes (cutoff N per mode,
mode 1 tensor mode 2 ordering).  Identity checks always exclude the top two
excitation levels through an interior projector, since finite ladder
matrices necessarily violate the commutation relations at the edge.

Experiments:

* ``joint_null_experiment`` measures how close the pseudo-boson lowering
  pair comes to a joint null vector as the cutoff grows (it cannot have one
  as a function, only as a distribution, so the least singular value decays
  and the minimizer drifts toward the cutoff);
* ``squeeze_factored_action`` produces the exact Fock amplitudes of the
  factored squeeze action on the ground state as radical pairs;
* ``squeeze_truncated_norms`` evaluates exp(theta(c^2 + c+^2)) |0> at finite
  cutoffs, whose norms grow without bound because the untruncated image is
  not square integrable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np
import scipy.linalg

from .field import Coeff
from .operators import PolyGauss
from .radicals import SqrtRational

SIGMA_FLOOR_RATIO = 1e-13  # singular values below this (relative) are numerical zeros


@dataclass(frozen=True)
class FockOp:
    """Dense matrix realization of an operator on truncated Fock space."""

    modes: int
    cutoff: int
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.cutoff**self.modes


def _annihilation(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1.0, cutoff)), 1)


def _mode_op(op: np.ndarray, mode: int, cutoff: int) -> np.ndarray:
    eye = np.eye(cutoff)
    return np.kron(op, eye) if mode == 0 else np.kron(eye, op)


SINGLE_MODE_SPECS = ("a", "adag", "x", "p", "n", "X_squeeze")
TWO_MODE_SPECS = ("a1", "a2", "adag1", "adag2", "A1", "A2", "B1", "B2", "H")


def build_fock(
    op_spec: str,
    cutoff: int,
    params=None,
    form: Literal["bosonic", "pseudo"] = "bosonic",
) -> FockOp:
    """Matrix for a named operator at the given per-mode cutoff (N >= 2).

    Single mode: a, adag, x, p, n, X_squeeze = a^2 + adag^2.
    Two modes:   a1, a2, adag1, adag2, the pseudo-boson pairs A1, A2, B1, B2,
    and H (requires ``params``; ``form`` picks the bosonic or pseudo-boson
    assembly, which agree up to rounding).
    """
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    a = _annihilation(cutoff)
    if op_spec in SINGLE_MODE_SPECS:
        if op_spec == "a":
            m = a
        elif op_spec == "adag":
            m = a.T.copy()
        elif op_spec == "x":
            m = (a + a.T) / np.sqrt(2.0)
        elif op_spec == "p":
            m = (a - a.T) / (1j * np.sqrt(2.0))
        elif op_spec == "n":
            m = np.diag(np.arange(float(cutoff)))
        else:  # X_squeeze
            m = a @ a + a.T @ a.T
        return FockOp(1, cutoff, m.astype(complex))

    if op_spec not in TWO_MODE_SPECS:
        raise ValueError(f"unknown operator spec {op_spec!r}")
    a1 = _mode_op(a, 0, cutoff)
    a2 = _mode_op(a, 1, cutoff)
    s = np.sqrt(2.0)
    if op_spec == "a1":
        m = a1
    elif op_spec == "a2":
        m = a2
    elif op_spec == "adag1":
        m = a1.T.copy()
    elif op_spec == "adag2":
        m = a2.T.copy()
    elif op_spec == "A1":
        m = (a1 - a2.T) / s
    elif op_spec == "A2":
        m = (-a1.T + a2) / s
    elif op_spec == "B1":
        m = (a1.T + a2) / s
    elif op_spec == "B2":
        m = (a1 + a2.T) / s
    else:  # H
        if params is None:
            raise ValueError("H needs oscillator parameters")
        return _hamiltonian_fock(params, cutoff, form)
    return FockOp(2, cutoff, m.astype(complex))


def _hamiltonian_fock(params, cutoff: int, form: str) -> FockOp:
    omega = params.omega
    g2m = float(params.gamma) / (2.0 * float(params.m))
    if form == "bosonic":
        a1 = build_fock("a1", cutoff).matrix
        a2 = build_fock("a2", cutoff).matrix
        h = omega * (a1.conj().T @ a1 - a2.conj().T @ a2) + 1j * g2m * (
            a1 @ a2 - a1.conj().T @ a2.conj().T
        )
    elif form == "pseudo":
        big_a1 = build_fock("A1", cutoff).matrix
        big_a2 = build_fock("A2", cutoff).matrix
        big_b1 = build_fock("B1", cutoff).matrix
        big_b2 = build_fock("B2", cutoff).matrix
        n1 = big_b1 @ big_a1
        n2 = big_b2 @ big_a2
        h = omega * (n1 - n2) + 1j * g2m * (n1 + n2 + np.eye(cutoff * cutoff))
    else:
        raise ValueError(f"unknown Hamiltonian form {form!r}")
    return FockOp(2, cutoff, h)


def total_excitations(modes: int, cutoff: int) -> np.ndarray:
    """Total excitation number per basis index, mode-1-major ordering."""
    if modes == 1:
        return np.arange(cutoff)
    n1 = np.repeat(np.arange(cutoff), cutoff)
    n2 = np.tile(np.arange(cutoff), cutoff)
    return n1 + n2


def interior_projector(modes: int, cutoff: int, bound: int) -> np.ndarray:
    """Projector onto total excitation < bound."""
    mask = total_excitations(modes, cutoff) < bound
    return np.diag(mask.astype(float))


def _check_interior(cutoff: int, bound: int) -> None:
    if bound > cutoff - 2:
        raise ValueError("interior bound must not exceed cutoff - 2")
    if bound < 1:
        raise ValueError("interior bound must be positive")


def commutator_residual(x: FockOp, y: FockOp, expected: complex, bound: int) -> float:
    """Spectral norm of P([X, Y] - expected * 1) P on the interior subspace."""
    if x.modes != y.modes or x.cutoff != y.cutoff:
        raise ValueError("operators live on different truncated spaces")
    _check_interior(x.cutoff, bound)
    comm = x.matrix @ y.matrix - y.matrix @ x.matrix
    delta = comm - expected * np.eye(x.dim)
    proj = interior_projector(x.modes, x.cutoff, bound)
    return float(np.linalg.norm(proj @ delta @ proj, 2))


def hamiltonian_equiv_residual(params, cutoff: int, bound: int) -> float:
    """Spectral norm of P(H_bosonic - H_pseudo)P at the given cutoff."""
    _check_interior(cutoff, bound)
    h1 = build_fock("H", cutoff, params=params, form="bosonic").matrix
    h2 = build_fock("H", cutoff, params=params, form="pseudo").matrix
    proj = interior_projector(2, cutoff, bound)
    return float(np.linalg.norm(proj @ (h1 - h2) @ proj, 2))


# ---------------------------------------------------------------------------
# joint null-vector experiment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NullRecord:
    cutoff: int
    sigma_min: float
    tail_mass: float
    minimizer: np.ndarray  # normalized, over the interior basis


@dataclass(frozen=True)
class NullExperimentReport:
    """Least singular value of the stacked lowering pair, per cutoff.

    The domain is the interior subspace (total excitation < N - 2), ordered
    by total excitation; lowering operators map it without truncation error.
    ``tail_mass`` is the minimizer mass at total excitation at or above half
    the interior bound; for the pseudo-boson pair it tracks the migration of
    the minimizer toward the cutoff.  Singular values below the numerical
    zero floor are clamped to exactly 0.
    """

    family: str
    records: tuple[NullRecord, ...]

    def sigma_mins(self) -> list[float]:
        return [r.sigma_min for r in self.records]

    def tail_masses(self) -> list[float]:
        return [r.tail_mass for r in self.records]


def joint_null_experiment(
    cutoffs: Sequence[int], family: Literal["pseudo", "bosonic"] = "pseudo"
) -> NullExperimentReport:
    """SVD sweep of the stacked pair ([A1; A2] or [a1; a2]) over cutoffs."""
    cutoffs = list(cutoffs)
    if not cutoffs or any(b <= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise ValueError("cutoffs must be strictly increasing and nonempty")
    if any(c < 8 for c in cutoffs):
        raise ValueError("cutoffs below 8 give a degenerate interior")
    if family == "pseudo":
        names = ("A1", "A2")
    elif family == "bosonic":
        names = ("a1", "a2")
    else:
        raise ValueError(f"unknown family {family!r}")

    records = []
    for cutoff in cutoffs:
        bound = cutoff - 2
        tot = total_excitations(2, cutoff)
        inside = np.where(tot < bound)[0]
        order = np.lexsort((inside, tot[inside]))
        inside = inside[order]
        embed = np.zeros((cutoff * cutoff, len(inside)))
        embed[inside, np.arange(len(inside))] = 1.0
        stacked = np.vstack([build_fock(n, cutoff).matrix @ embed for n in names])
        _, svals, vh = np.linalg.svd(stacked, full_matrices=False)
        sigma = float(svals[-1])
        if sigma < SIGMA_FLOOR_RATIO * float(svals[0]):
            sigma = 0.0
        minimizer = vh[-1].conj()
        tail = tot[inside] >= bound / 2
        tail_mass = float(np.sum(np.abs(minimizer[tail]) ** 2))
        records.append(NullRecord(cutoff, sigma, tail_mass, minimizer))
    return NullExperimentReport(family=family, records=tuple(records))


def null_experiment_csv(report: NullExperimentReport) -> str:
    lines = ["cutoff,sigma_min,tail_mass"]
    for r in report.records:
        lines.append(f"{r.cutoff},{r.sigma_min!r},{r.tail_mass!r}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# squeeze-type experiments
# ---------------------------------------------------------------------------

def squeeze_factored_action(kmax: int) -> list[SqrtRational]:
    """Exact Fock amplitudes of the factored squeeze action on the ground state.

    Computed by iterating the squared raising operator: the amplitude on
    basis state 2k gains a factor -1/2 * sqrt(2k+1) * sqrt(2k+2) / (k+1) per
    step.  Odd basis states carry exactly zero.  The global factor 2^(1/4)
    is carried symbolically by callers; index k of the result is the
    amplitude of basis state 2k.
    """
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    coeffs = [SqrtRational(Fraction(1))]
    current = SqrtRational(Fraction(1))
    for k in range(kmax):
        step = (
            SqrtRational.sqrt_int(2 * k + 1)
            * SqrtRational.sqrt_int(2 * k + 2)
            * Fraction(-1, 2 * (k + 1))
        )
        current = current * step
        coeffs.append(current)
    return coeffs


@dataclass(frozen=True)
class SqueezeNormRecord:
    cutoff: int
    norm: float
    log_norm: float
    coeff_gaps: tuple[float, ...]  # relative gap to the factored amplitudes, k = 0..3


@dataclass(frozen=True)
class SqueezeReport:
    theta: float
    generator: str
    records: tuple[SqueezeNormRecord, ...]

    def norms(self) -> list[float]:
        return [r.norm for r in self.records]

    def log_norms(self) -> list[float]:
        return [r.log_norm for r in self.records]


def squeeze_truncated_norms(
    theta: float,
    cutoffs: Sequence[int],
    generator: Literal["hermitian", "antihermitian"] = "hermitian",
) -> SqueezeReport:
    """Norms of exp(theta X_N)|0> per cutoff, with amplitude comparisons.

    ``hermitian`` is the unbounded generator a^2 + adag^2: the matrix
    exponential is evaluated through the symmetric eigendecomposition (the
    scaling-and-squaring route overflows for the larger cutoffs) and the
    norms grow without bound.  ``antihermitian`` is the control a^2 - adag^2
    whose exponential is orthogonal, so the norm stays 1.

    ``coeff_gaps`` reports, per cutoff, the relative gap between the
    truncated-exponential amplitudes on basis states 0, 2, 4, 6 and the
    exact factored amplitudes times 2^(1/4).  The two sides agree only for
    the untruncated operators; truncation breaks them differently, so the
    gaps are reported, never asserted.
    """
    cutoffs = list(cutoffs)
    if not cutoffs or any(b <= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise ValueError("cutoffs must be strictly increasing and nonempty")
    if any(c < 8 for c in cutoffs):
        raise ValueError("cutoffs below 8 cannot hold the compared amplitudes")

    factored = squeeze_factored_action(3)
    reference = [float(c) * 2.0 ** 0.25 for c in factored]

    records = []
    for cutoff in cutoffs:
        if generator == "hermitian":
            x = np.real(build_fock("X_squeeze", cutoff).matrix)
            evals, evecs = np.linalg.eigh(x)
            overlap = evecs[0, :]
            log_terms = theta * evals + np.log(np.abs(overlap) + 1e-300)
            peak = float(np.max(log_terms))
            amplitudes = evecs @ (np.sign(overlap) * np.exp(log_terms))
            log_norm = peak + 0.5 * float(
                np.log(np.sum(np.exp(2.0 * (log_terms - peak))))
            )
            norm = float(np.exp(log_norm)) if log_norm < 700 else float("inf")
        elif generator == "antihermitian":
            a = _annihilation(cutoff)
            gen = a @ a - a.T @ a.T
            amplitudes = scipy.linalg.expm(theta * gen)[:, 0]
            norm = float(np.linalg.norm(amplitudes))
            log_norm = float(np.log(norm))
        else:
            raise ValueError(f"unknown generator {generator!r}")
        gaps = tuple(
            float(abs(amplitudes[2 * k] - reference[k]) / abs(reference[k]))
            for k in range(4)
        )
        records.append(SqueezeNormRecord(cutoff, norm, log_norm, gaps))
    return SqueezeReport(theta=theta, generator=generator, records=tuple(records))


def squeeze_csv(report: SqueezeReport) -> str:
    lines = ["cutoff,norm,log_norm"]
    for r in report.records:
        lines.append(f"{r.cutoff},{r.norm!r},{r.log_norm!r}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Hermite-basis isomorphism (cross-validation against the symbolic layer)
# ---------------------------------------------------------------------------

def hermite_coefficients(n: int) -> dict[int, int]:
    """Integer coefficients of the physicists' Hermite polynomial H_n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    prev: dict[int, int] = {0: 1}
    if n == 0:
        return prev
    cur: dict[int, int] = {1: 2}
    for m in range(1, n):
        nxt: dict[int, int] = {}
        for p, c in cur.items():
            nxt[p + 1] = nxt.get(p + 1, 0) + 2 * c
        for p, c in prev.items():
            nxt[p] = nxt.get(p, 0) - 2 * m * c
        prev, cur = cur, {p: c for p, c in nxt.items() if c}
    return cur


def hermite_state(coeffs: dict[tuple[int, int], Coeff | int | Fraction]) -> PolyGauss:
    """sum c[(n1,n2)] H_n1(x1) H_n2(x2) exp(-(x1^2+x2^2)/2), exactly."""
    poly: dict[tuple[int, int], Coeff] = {}
    for (n1, n2), c in coeffs.items():
        c = Coeff.coerce(c)
        h1 = hermite_coefficients(n1)
        h2 = hermite_coefficients(n2)
        for p1, c1 in h1.items():
            for p2, c2 in h2.items():
                key = (p1, p2)
                cur = poly.get(key)
                add = c * (c1 * c2)
                poly[key] = add if cur is None else cur + add
    return PolyGauss(2, poly, [[1, 0], [0, 1]])


def hermite_decompose(f: PolyGauss) -> dict[tuple[int, int], Coeff]:
    """Exact expansion of f in the unnormalized Hermite-Gaussian product basis.

    Requires the standard weight exp(-(x1^2+x2^2)/2).  Works by peeling the
    top-degree monomial: the leading coefficient of H_n1 H_n2 is 2^(n1+n2).
    """
    expected = PolyGauss.standard_vacuum(2)
    if not f.same_weight(expected):
        raise ValueError("decomposition needs the standard Gaussian weight")
    residue = f
    out: dict[tuple[int, int], Coeff] = {}
    while not residue.is_zero():
        idx = max(residue.poly, key=lambda i: (sum(i), i))
        coeff = residue.poly[idx] * Fraction(1, 2 ** sum(idx))
        out[idx] = coeff
        residue = residue - hermite_state({idx: coeff})
    return out
