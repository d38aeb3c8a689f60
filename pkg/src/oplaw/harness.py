"""Random instance generation and suite execution.

Every random draw comes from a :class:`~oplaw.rng.Stream` keyed by
``(seed, trial, tag)`` with ``tag = "<suite>|d<dim>|n<count>|<variant>|<role>"``,
so a report is a pure function of the configuration.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import identities as ids
from . import inequalities as ineq
from .functions import ScalarFn
from .identities import AlphaField, QuadratureMeasure, WeightVector
from .linalg import (
    InvalidInput,
    as_cmatrix,
    as_cvector,
    hermitian_eig,
    is_psd,
    matrix_from_literal,
    matrix_to_literal,
    rank_one,
    vector_from_literal,
    vector_to_literal,
)
from .norms import norm_family
from .rng import MASK64, Stream

SCHEMA_VERSION = 1
DEFAULT_DIMS = (1, 2, 4, 8)
DEFAULT_COUNTS = (1, 2, 3, 6)
DEFAULT_TRIALS = 250
DEFAULT_P_GRID = (0.5, 1.0, 1.5, 2.0, 3.0, 4.0)
MAX_SERIALIZED_FAILURES = 5


# -- generators -----------------------------------------------------------------

MATRIX_KINDS = ("ginibre", "hermitian", "psd", "unitary", "rank_one")


def gen_matrix(kind: str, dim: int, stream: Stream) -> np.ndarray:
    """Random ``dim x dim`` matrix of the given ensemble.

    ``unitary`` is the eigenvector matrix of a random Hermitian matrix,
    which is unitary but not Haar distributed.
    """
    if kind == "ginibre":
        return as_cmatrix(stream.complex_normal((dim, dim)))
    if kind == "hermitian":
        g = stream.complex_normal((dim, dim))
        return as_cmatrix((g + np.conj(g).T) / 2)
    if kind == "psd":
        g = stream.complex_normal((dim, dim))
        return as_cmatrix(np.conj(g).T @ g)
    if kind == "unitary":
        return hermitian_eig(gen_matrix("hermitian", dim, stream)).vectors
    if kind == "rank_one":
        return rank_one(gen_vector(dim, stream), gen_vector(dim, stream))
    raise InvalidInput(f"unknown matrix kind {kind!r}; expected one of {MATRIX_KINDS}")


def gen_vector(dim: int, stream: Stream) -> np.ndarray:
    return as_cvector(stream.complex_normal(dim))


def gen_weights(n: int, constrained: bool, stream: Stream) -> WeightVector:
    """Constrained: ``r_i = (sum u) / u_i`` with ``u_i`` in ``[0.1, 1)``,
    so ``sum 1/r_i = 1`` up to rounding. Free: log-uniform in ``(0.1, 10)``."""
    if constrained:
        u = stream.uniform(n, 0.1, 1.0)
        return WeightVector(u.sum() / u, sum_reciprocal_one=True)
    return WeightVector(10.0 ** stream.uniform(n, -1.0, 1.0))


def gen_alpha(m: int, mode: str, stream: Stream) -> AlphaField:
    """Random table with ``conj(alpha[k, l]) * alpha[l, k] = 1``.

    ``free``: off-diagonal moduli log-uniform in ``[0.25, 4]`` with uniform
    phases, mirrored by ``alpha[l, k] = 1 / conj(alpha[k, l])``; unimodular
    diagonal. ``phase_weight``: ``sqrt(r_k / r_l)`` for random free weights.
    """
    if mode == "phase_weight":
        return AlphaField.from_weights(gen_weights(m, False, stream))
    if mode != "free":
        raise InvalidInput(f"unknown alpha mode {mode!r}")
    a = np.empty((m, m), dtype=np.complex128)
    a[np.diag_indices(m)] = np.exp(2j * np.pi * stream.uniform(m))
    for k in range(m):
        for l in range(k + 1, m):
            mod = 4.0 ** stream.uniform(None, -1.0, 1.0)
            z = mod * np.exp(2j * np.pi * stream.uniform())
            a[k, l] = z
            a[l, k] = 1.0 / np.conj(z)
    return AlphaField(a)


def gen_measure(m: int, stream: Stream) -> QuadratureMeasure:
    """Node weights in ``(0, 2]``."""
    return QuadratureMeasure(2.0 * (1.0 - stream.uniform(m)))


# -- suites ---------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    value: float  # passes iff value <= tol
    passed: bool

    @classmethod
    def judge(cls, name: str, value: float, tol: float) -> "Check":
        value = float(value)
        return cls(name, value, bool(value <= tol))


@dataclass
class Evaluation:
    checks: list
    # name -> (lhs, rhs): the two compared quantities of each check
    sides: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class Roles:
    """Hands out one independent stream per named role of a trial."""

    def __init__(self, seed: int, trial: int, prefix: str):
        self.seed, self.trial, self.prefix = seed, trial, prefix

    def __call__(self, role: str) -> Stream:
        return Stream(self.seed, self.trial, f"{self.prefix}|{role}")

    def matrices(self, role: str, kind: str, dim: int, n: int) -> list:
        s = self(role)
        return [gen_matrix(kind, dim, s) for _ in range(n)]


@dataclass(frozen=True)
class Suite:
    id: str
    anchor: str
    build: Callable  # (roles, dim, count, variant) -> instance dict
    evaluate: Callable  # (instance, tol) -> Evaluation
    variants: Callable = lambda config: ("-",)


def _identity_eval(op, *keys):
    def evaluate(inst, tol):
        res = op(*(inst[k] for k in keys), tol=tol)
        checks = [Check.judge("identity", res.residual, tol)]
        checks += [Check.judge(k, v, tol) for k, v in res.extras.items()]
        return Evaluation(checks, {"identity": (res.lhs, res.rhs)})
    return evaluate


def _psd_check(gap, tol) -> Check:
    _, lam_min = is_psd(gap, tol)
    return Check.judge("psd", -lam_min / max(1.0, float(np.linalg.norm(gap, 2))), tol)


def _eval_bohr(inst, tol):
    gap, _, _ = ids.bohr_gap(inst["As"], inst["r"], tol)
    zf = ids.zhang_fu_identity(inst["As"], inst["r"], tol)
    link = ids.residual(gap, zf.lhs)
    return Evaluation(
        [_psd_check(gap, tol), Check.judge("gap=zf-lhs", link, tol)],
        {"gap": (gap, zf.lhs)},
    )


def _eval_bohr_field(inst, tol):
    args = (inst["A"], inst["B"], inst["mu"], inst["alpha"])
    gap, _, _ = ids.field_bohr_gap(*args, tol=tol)
    field_law = ids.field_parallelogram(*args, tol=tol)
    link = ids.residual(2 * gap, field_law.lhs)
    return Evaluation(
        [_psd_check(gap, tol), Check.judge("gap=half-field-lhs", link, tol)],
        {"gap": (2 * gap, field_law.lhs)},
    )


def _margin_eval(fn):
    def evaluate(inst, tol):
        margins = fn(inst, tol)
        if not isinstance(margins, list):
            margins = [margins]
        return Evaluation(
            [Check.judge(m.spec, m.violation, tol) for m in margins],
            {m.spec: (m.lhs, m.rhs) for m in margins},
        )
    return evaluate


def _fn_variants(*labels):
    return lambda config: labels


def _p_variants(config):
    return tuple(f"p={p:g}" for p in config.p_grid)


def _b_lemma(roles, dim, n, variant):
    return {"A": roles.matrices("A", "ginibre", dim, 1)[0],
            "B": roles.matrices("B", "ginibre", dim, 1)[0]}


def _b_field(roles, dim, m, variant):
    return {"A": roles.matrices("A", "ginibre", dim, m),
            "B": roles.matrices("B", "ginibre", dim, m),
            "mu": gen_measure(m, roles("mu")),
            "alpha": gen_alpha(m, "free", roles("alpha"))}


def _b_oit(roles, dim, n, variant):
    return {"As": roles.matrices("A", "ginibre", dim, n),
            "Bs": roles.matrices("B", "ginibre", dim, n),
            "r": gen_weights(n, False, roles("r"))}


def _b_zf(roles, dim, n, variant):
    return {"As": roles.matrices("A", "ginibre", dim, n),
            "r": gen_weights(n, True, roles("r"))}


def _b_remark(roles, dim, n, variant):
    return {"A1": roles.matrices("A1", "ginibre", dim, 1)[0],
            "A2": roles.matrices("A2", "ginibre", dim, 1)[0],
            "t": 10.0 ** roles("t").uniform(None, -1.0, 1.0)}


def _b_eq4(roles, dim, n, variant):
    As = roles.matrices("A", "ginibre", dim, n)
    Bs = roles.matrices("B", "ginibre", dim, n)
    drift = sum(a - b for a, b in zip(As, Bs))
    Bs[-1] = as_cmatrix(Bs[-1] + drift)
    return {"As": As, "Bs": Bs}


def _b_vectors(weighted):
    def build(roles, dim, n, variant):
        xs, ys = roles("x"), roles("y")
        inst = {"xs": [gen_vector(dim, xs) for _ in range(n)],
                "ys": [gen_vector(dim, ys) for _ in range(n)]}
        if weighted:
            inst["r"] = gen_weights(n, False, roles("r"))
            e = gen_vector(dim, roles("e"))
            inst["e"] = as_cvector(e / np.linalg.norm(e))
        return inst
    return build


def _b_psd_combo(roles, dim, n, variant):
    u = roles("alphas").uniform(n, 0.1, 1.0)
    return {"As": roles.matrices("A", "psd", dim, n),
            "alphas": u / u.sum(),
            "g": ScalarFn.parse(variant)}


def _b_psd_sum(roles, dim, n, variant):
    return {"As": roles.matrices("A", "psd", dim, n), "g": ScalarFn.parse(variant)}


def _b_thm31(roles, dim, n, variant):
    return {"As": roles.matrices("A", "ginibre", dim, n),
            "r": gen_weights(n, True, roles("r")),
            "g": ScalarFn.parse(variant)}


def _b_cor33(roles, dim, n, variant):
    return {"As": roles.matrices("A", "ginibre", dim, n),
            "r": gen_weights(n, True, roles("r")),
            "p": float(variant[2:])}


def _family(inst):
    return norm_family(np.asarray(inst["As"][0]).shape[0])


SUITES: dict[str, Suite] = {s.id: s for s in (
    Suite("lemma-a", "Lemma 2.1(a): operator parallelogram law",
          _b_lemma, _identity_eval(ids.lemma_parallelogram, "A", "B")),
    Suite("lemma-b", "Lemma 2.1(b): |A+B|^2 - |A-B|^2 = 4 Re(A*B)",
          _b_lemma, _identity_eval(ids.lemma_polarization, "A", "B")),
    Suite("thm22", "Theorem 2.2: continuous-field parallelogram law",
          _b_field, _identity_eval(ids.field_parallelogram, "A", "B", "mu", "alpha")),
    Suite("cor-oit", "Corollary 2.3: generalized parallelogram law",
          _b_oit, _identity_eval(ids.generalized_parallelogram, "As", "Bs", "r")),
    Suite("cor-zf", "Corollary 2.4: weighted law under sum 1/r_i = 1",
          _b_zf, _identity_eval(ids.zhang_fu_identity, "As", "r")),
    Suite("remark-n2", "Remark after Corollary 2.4: two-term form",
          _b_remark, _identity_eval(ids.two_term_identity, "A1", "A2", "t")),
    Suite("bohr", "Operator Bohr inequality |sum A_i|^2 <= sum r_i |A_i|^2",
          _b_zf, _eval_bohr),
    Suite("bohr-field", "Generalized operator Bohr inequality for fields",
          _b_field, _eval_bohr_field),
    Suite("eq4", "Eq. (4): Hilbert-Schmidt law with sum (A_i - B_i) = 0",
          _b_eq4, _identity_eval(ids.hilbert_schmidt_identity, "As", "Bs")),
    Suite("cor26", "Corollary 2.6: weighted vector law",
          _b_vectors(True), _identity_eval(ids.vector_weighted_identity, "xs", "ys", "r", "e")),
    Suite("eq00", "Eq. (00): vector law in an inner product space",
          _b_vectors(False), _identity_eval(ids.vector_identity, "xs", "ys")),
    Suite("ineq-41", "Inequality (4.1): convex combinations of PSD operators",
          _b_psd_combo,
          _margin_eval(lambda i, tol: ineq.convex_combination_ineq(
              i["As"], i["alphas"], i["g"], _family(i), tol)),
          _fn_variants("power:2", "power:3", "hinge:0.5")),
    Suite("ineq-42", "Inequality (4.2): superadditivity for convex g, g(0) = 0",
          _b_psd_sum,
          _margin_eval(lambda i, tol: ineq.superadditivity_ineq(i["As"], i["g"], _family(i), tol)),
          _fn_variants("power:2", "power:3", "hinge:0.5")),
    Suite("thm31-convex", "Theorem 3.1: convex g",
          _b_thm31,
          _margin_eval(lambda i, tol: ineq.theorem_main_margin(
              i["As"], i["r"], i["g"], _family(i), tol)),
          _fn_variants("power:1.5", "power:2", "power:3")),
    Suite("thm31-concave", "Theorem 3.1: concave g (reverse inequality)",
          _b_thm31,
          _margin_eval(lambda i, tol: ineq.theorem_main_margin(
              i["As"], i["r"], i["g"], _family(i), tol)),
          _fn_variants("power:0.3", "power:0.5", "power:0.9")),
    Suite("cor33", "Corollary 3.3: Schatten p-norm inequality and its reverse",
          _b_cor33,
          _margin_eval(lambda i, tol: ineq.schatten_weighted_ineq(i["As"], i["r"], i["p"], tol)),
          _p_variants),
)}


# -- instance codec ---------------------------------------------------------------

def encode(obj):
    """Convert an instance value into JSON-ready data (matrix literals etc.)."""
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2:
            return matrix_to_literal(obj)
        if np.iscomplexobj(obj):
            return vector_to_literal(obj)
        return [float(v) for v in obj]
    if isinstance(obj, WeightVector):
        return {"type": "weights", "values": [float(v) for v in obj.values],
                "sum_reciprocal_one": obj.sum_reciprocal_one}
    if isinstance(obj, QuadratureMeasure):
        return {"type": "measure", "weights": [float(v) for v in obj.weights]}
    if isinstance(obj, AlphaField):
        return {"type": "alpha", "table": matrix_to_literal(obj.values)}
    if isinstance(obj, ScalarFn):
        return {"type": "fn", "label": obj.label}
    if isinstance(obj, dict):
        return {k: encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    return obj


def decode(data):
    if isinstance(data, list):
        if data and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in data):
            return np.array(data, dtype=float)
        return [decode(v) for v in data]
    if not isinstance(data, dict):
        return data
    if "entries" in data:
        return matrix_from_literal(data)
    if "vector" in data:
        return vector_from_literal(data)
    kind = data.get("type")
    try:
        if kind == "weights":
            return WeightVector(data["values"], bool(data.get("sum_reciprocal_one", False)))
        if kind == "measure":
            return QuadratureMeasure(data["weights"])
        if kind == "alpha":
            return AlphaField(matrix_from_literal(data["table"]))
        if kind == "fn":
            return ScalarFn.parse(data["label"])
    except KeyError as exc:
        raise InvalidInput(f"{kind} object lacks field {exc}") from exc
    if kind is not None:
        raise InvalidInput(f"unknown object type {kind!r}")
    return {k: decode(v) for k, v in data.items()}


# -- configuration and runs -----------------------------------------------------

@dataclass
class TrialConfig:
    suites: list = field(default_factory=lambda: list(SUITES))
    dims: list = field(default_factory=lambda: list(DEFAULT_DIMS))
    counts: list = field(default_factory=lambda: list(DEFAULT_COUNTS))
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    tol: float = ids.DEFAULT_TOL
    p_grid: list = field(default_factory=lambda: list(DEFAULT_P_GRID))

    def validate(self) -> "TrialConfig":
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown or not self.suites:
            raise InvalidInput(
                f"unknown suite id(s) {unknown}; known: {', '.join(SUITES)}"
            )
        if not self.dims or any(not 1 <= d <= 32 for d in self.dims):
            raise InvalidInput("dims must lie in [1, 32]")
        if not self.counts or any(not 1 <= c <= 8 for c in self.counts):
            raise InvalidInput("counts must lie in [1, 8]")
        if self.trials < 1:
            raise InvalidInput("trials must be positive")
        if not 0 <= self.seed <= MASK64:
            raise InvalidInput("seed must be an unsigned 64-bit integer")
        if not self.tol > 0:
            raise InvalidInput("tolerance must be positive")
        if not self.p_grid or any(not p > 0 for p in self.p_grid):
            raise InvalidInput("p grid must contain positive values")
        return self

    def to_json(self) -> dict:
        return asdict(self)


def cells(suite: Suite, config: TrialConfig):
    for dim in config.dims:
        for count in config.counts:
            for variant in suite.variants(config):
                yield dim, count, variant


def build_instance(suite: Suite, seed: int, trial: int, dim: int, count: int, variant: str):
    roles = Roles(seed, trial, f"{suite.id}|d{dim}|n{count}|{variant}")
    return suite.build(roles, dim, count, variant)


def run_one(suite_id: str, config: TrialConfig) -> dict:
    suite = SUITES[suite_id]
    t0 = time.perf_counter()
    n_trials = n_checks = failures = 0
    worst = -np.inf
    failing = []
    for dim, count, variant in cells(suite, config):
        for trial in range(config.trials):
            inst = build_instance(suite, config.seed, trial, dim, count, variant)
            ev = suite.evaluate(inst, config.tol)
            n_trials += 1
            n_checks += len(ev.checks)
            worst = max([worst] + [c.value for c in ev.checks])
            if not ev.passed:
                failures += 1
                if len(failing) < MAX_SERIALIZED_FAILURES:
                    failing.append(replay_record(
                        suite_id, inst, config.seed, trial, dim, count, variant, config.tol,
                        [asdict(c) for c in ev.checks if not c.passed]))
    return {
        "suite": suite_id,
        "anchor": suite.anchor,
        "trials": n_trials,
        "checks": n_checks,
        "failures": failures,
        "worst": float(worst),
        "passed": failures == 0,
        "failing_instances": failing,
        "wall_ms": round((time.perf_counter() - t0) * 1000.0, 3),
    }


def run_suite(config: TrialConfig) -> dict:
    """Run every configured suite; returns the versioned report dict."""
    config.validate()
    started = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    t0 = time.perf_counter()
    suites = [run_one(s, config) for s in config.suites]
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config.to_json(),
        "suites": suites,
        "failures": sum(s["failures"] for s in suites),
        "passed": all(s["passed"] for s in suites),
        "started_at": started,
        "wall_ms": round((time.perf_counter() - t0) * 1000.0, 3),
    }


# -- replay ---------------------------------------------------------------------

def replay_record(suite_id, inst, seed, trial, dim, count, variant, tol, failed_checks=()):
    return {
        "suite": suite_id,
        "instance": encode(inst),
        "seed_info": {"seed": seed, "trial": trial, "dim": dim, "count": count,
                      "variant": variant, "tol": tol},
        "failed_checks": list(failed_checks),
    }


def replay(record: dict, tol: float | None = None) -> Evaluation:
    """Re-evaluate one serialized instance."""
    try:
        suite = SUITES[record["suite"]]
        inst = decode(record["instance"])
        if tol is None:
            tol = float(record.get("seed_info", {}).get("tol", ids.DEFAULT_TOL))
    except (KeyError, TypeError, AttributeError) as exc:
        raise InvalidInput(f"malformed replay record: {exc!r}") from exc
    if not isinstance(inst, dict):
        raise InvalidInput("replay instance must be an object")
    try:
        return suite.evaluate(inst, tol)
    except KeyError as exc:
        raise InvalidInput(f"replay instance lacks field {exc}") from exc
    except (AttributeError, TypeError, IndexError) as exc:
        raise InvalidInput(f"replay instance has a malformed field: {exc}") from exc
