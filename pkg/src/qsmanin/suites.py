"""Named verification suites and the run configuration shared with the CLI.

Each suite maps to acceptance criteria:

* tensor: swap operator and symmetrizer algebra
* relations: relation equivalence, comodule and bialgebra structure
* macmahon: symmetrizer compression and the MacMahon identities
* newton: generating series and Newton's identities
* traces: explicit supertrace formulas and permutation-action weights
* berezinian: Berezinian core identities and the classical oracle
* minors: Jacobi, Schur, permutation, Cayley and Muir
* sylvester: the psi_k lemma and Sylvester's theorem

On the modular backend every check runs on each (prime, q-point) field and
passes only if all fields agree.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction

from .berezinian import (HypothesisError, ber, ber_inverse_check, ber_permutation_check,
                         cayley, cofactor_det, decomposition_rhs, jacobi_ratio_check,
                         jacobi_seed, left_quantum_morphism_check, minor_identity_check, muir,
                         permuted_decomposition_check, pi_st_relation_check,
                         quasidet_decomposition_check, schur_complement_check,
                         schur_corollary, sylvester_check)
from .freesuper import NcPoly
from .quotient import (RIGHT, AlgebraSpec, DegreeOverflow, comodule_morphism_check,
                       coproduct_morphism_check, default_degree_cap, get_context,
                       relation_equivalence_check)
from .report import SCHEMA_VERSION, CheckResult, failed, from_residual, passed, skipped, summarize
from .scalars import (DEFAULT_PRIMES, EXACT, BadEvaluationPoint, ModField, SpecialField,
                      default_modular_fields)
from .series import SeriesRing, generic_manin_series, newton_check, scalar_matrix
from .tensorcalc import (EndTensor, compression_check, eps_weight, explicit_trace_formula,
                         local_swap, macmahon_sum, omega_weight, p_act_check, perm_inverse,
                         symmetrizer_recursions_check, symmetrizers, trace_of_symmetrized)

__all__ = ["SUITES", "SuiteConfig", "ConfigError", "run_suite", "run", "build_report",
           "classical_oracle", "MAX_SIZE"]

SUITES = ("tensor", "relations", "macmahon", "newton", "traces", "berezinian", "minors",
          "sylvester")
MAX_SIZE = 4


class ConfigError(ValueError):
    """Invalid run configuration (usage error)."""


@dataclass(frozen=True)
class SuiteConfig:
    m: int = 1
    n: int = 1
    k: int = 3
    trunc: int | None = None
    backend: str = "exact"
    primes: tuple = DEFAULT_PRIMES
    seed: int = 0
    suites: tuple = SUITES
    degree_cap: int | None = None

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise ConfigError("need m, n >= 0 and m + n >= 1")
        if self.backend not in ("exact", "modular"):
            raise ConfigError("backend must be 'exact' or 'modular'")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suites: {', '.join(bad)}")
        if self.k < 1:
            raise ConfigError("k must be at least 1")
        if self.trunc is not None and self.trunc < 1:
            raise ConfigError("trunc must be at least 1")
        if self.degree_cap is None:
            if self.m + self.n > MAX_SIZE:
                raise ConfigError(f"m + n = {self.m + self.n} exceeds the size table (<= {MAX_SIZE})")
            if self.k > self.cap:
                raise ConfigError(f"k = {self.k} exceeds the degree cap {self.cap} at "
                                  f"({self.m}|{self.n})")
            if self.D > self.cap:
                raise ConfigError(f"trunc = {self.D} exceeds the degree cap {self.cap} at "
                                  f"({self.m}|{self.n})")
        elif self.degree_cap < 1:
            raise ConfigError("degree cap must be positive")
        if self.backend == "modular" and not self.primes:
            raise ConfigError("modular backend needs at least one prime")

    @property
    def cap(self) -> int:
        if self.degree_cap is not None:
            return self.degree_cap
        return default_degree_cap(self.m, self.n, self.backend)

    @property
    def D(self) -> int:
        """Truncation order: the flag, or k capped by the degree cap minus one."""
        if self.trunc is not None:
            return self.trunc
        return max(1, min(self.k, self.cap - 1))

    def fields(self) -> list:
        if self.backend == "exact":
            return [EXACT]
        return default_modular_fields(self.seed, tuple(self.primes))

    def context(self, field, m: int | None = None, n: int | None = None):
        m = self.m if m is None else m
        n = self.n if n is None else n
        return get_context(AlgebraSpec(RIGHT, m, n), field, self.degree_cap)

    def to_json(self) -> dict:
        out = asdict(self)
        out["primes"] = list(self.primes)
        out["suites"] = list(self.suites)
        out["trunc"] = self.D
        return out


# -- helpers -------------------------------------------------------------------------

def _operator_residual(T: EndTensor) -> list:
    return [v for v in T.entries.values() if (v.terms if isinstance(v, NcPoly) else v)]


def _bool_check(name: str, ok: bool, detail: str, **params) -> CheckResult:
    return passed(name, **params) if ok else failed(name, detail, detail, **params)


# -- suites ------------------------------------------------------------------------

def tensor_suite(cfg: SuiteConfig, F) -> list[CheckResult]:
    m, n = cfg.m, cfg.n
    out = []
    Id2 = EndTensor.identity(2, m, n, F.one)
    P = local_swap(1, 2, m, n, F)
    out.append(_bool_check("swap_square", P @ P == Id2, "P^2 != 1", m=m, n=n))
    for k in range(3, cfg.k + 1):
        for a in range(1, k - 1):
            P1, P2 = local_swap(a, k, m, n, F), local_swap(a + 1, k, m, n, F)
            out.append(_bool_check("braid", P1 @ P2 @ P1 == P2 @ P1 @ P2,
                                   "braid relation fails", m=m, n=n, k=k, a=a))
    for k in range(1, cfg.k + 1):
        A, H = symmetrizers(k, m, n, F)
        out.append(_bool_check("antisymmetrizer_idempotent", A @ A == A, "A_k^2 != A_k",
                               m=m, n=n, k=k))
        out.append(_bool_check("symmetrizer_idempotent", H @ H == H, "H_k^2 != H_k",
                               m=m, n=n, k=k))
        if k == 2:
            out.append(_bool_check("antisym_sym_orthogonal", not (A @ H).entries,
                                   "A_2 H_2 != 0", m=m, n=n))
    for k in range(2, cfg.k + 1):
        for r in range(1, k):
            res = symmetrizer_recursions_check(k, r, m, n, F)
            for key, ok in res.items():
                out.append(_bool_check(f"recursion_{key}", ok, f"{key} recursion fails",
                                       m=m, n=n, k=k, r=r))
    return out


def relations_suite(cfg: SuiteConfig, F) -> list[CheckResult]:
    m, n = cfg.m, cfg.n
    out = [relation_equivalence_check(m, n, F)]
    out.append(comodule_morphism_check(m, n, "sym", F))
    out.append(comodule_morphism_check(m, n, "ext", F))
    out.extend(coproduct_morphism_check(m, n, F))
    return out


def macmahon_suite(cfg: SuiteConfig, F) -> list[CheckResult]:
    ctx = cfg.context(F)
    out = []
    for k in range(1, cfg.k + 1):
        res = compression_check(k, ctx)
        for key, T in res.items():
            out.append(from_residual(f"compression_{key}", _operator_residual(T),
                                     m=cfg.m, n=cfg.n, k=k))
    for k in range(1, cfg.k + 1):
        for flavor in ("HA", "AH"):
            out.append(from_residual("macmahon", macmahon_sum(k, ctx, flavor),
                                     m=cfg.m, n=cfg.n, k=k, flavor=flavor))
    return out


def newton_suite(cfg: SuiteConfig, F) -> list[CheckResult]:
    ctx = cfg.context(F)
    D = cfg.D
    if D + 1 > ctx.degree_cap:
        raise DegreeOverflow(D + 1, ctx.degree_cap)
    res = newton_check(ctx, D)
    out = []
    for key in ("AS=1", "SA=1", "dA=-AT", "dS=TS"):
        out.append(from_residual(f"newton[{key}]", res[key], m=cfg.m, n=cfg.n, D=D))
    for k, r in enumerate(res["recursion"], 1):
        out.append(from_residual("newton_recursion", r, m=cfg.m, n=cfg.n, k=k))
    return out


def traces_suite(cfg: SuiteConfig, F) -> list[CheckResult]:
    ctx = cfg.context(F)
    m, n = cfg.m, cfg.n
    out = []
    for k in range(1, cfg.k + 1):
        for flavor in ("A", "H"):
            r = explicit_trace_formula(k, ctx, flavor) - trace_of_symmetrized(k, ctx, flavor)
            out.append(from_residual("explicit_trace", ctx.normal_form(r), m=m, n=n, k=k,
                                     flavor=flavor))
    # permutation-action weights on seeded samples of elementary tensors
    rng = random.Random(cfg.seed)
    N = m + n
    for k in range(2, min(cfg.k, 3) + 1):
        for s in itertools.permutations(range(1, k + 1)):
            for _ in range(4):
                I = tuple(rng.randint(1, N) for _ in range(k))
                J = tuple(rng.randint(1, N) for _ in range(k))
                left, right = p_act_check(s, I, J, m, n, F)
                params = dict(m=m, n=n, sigma=list(s), I=list(I), J=list(J))
                out.append(_bool_check("perm_action_eps", left, "weight mismatch", **params))
                out.append(_bool_check("perm_action_omega", right, "weight mismatch", **params))
    return out


def classical_oracle(seed: int) -> list[CheckResult]:
    """ber_q at q = 1 with n = 0 on scalar matrices against cofactor expansion."""
    F = SpecialField()
    ring = SeriesRing(F, 1)
    out = []
    bad = []
    vals = (-1, 0, 1, 2)
    count = 0
    for a, b, c, d in itertools.product(vals, repeat=4):
        A = [[Fraction(a), Fraction(b)], [Fraction(c), Fraction(d)]]
        count += 1
        got = ber(scalar_matrix(A, ring)).coeffs[0].constant_term()
        if got != cofactor_det(A):
            bad.append(f"{A}: {got} != {cofactor_det(A)}")
    out.append(_bool_check("classical_oracle_2x2", not bad, "; ".join(bad[:3]), instances=count))
    rng = random.Random(seed)
    bad = []
    for _ in range(25):
        A = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)]
             for _ in range(3)]
        got = ber(scalar_matrix(A, ring)).coeffs[0].constant_term()
        if got != cofactor_det(A):
            bad.append(f"{A}: {got} != {cofactor_det(A)}")
    out.append(_bool_check("classical_oracle_3x3", not bad, "; ".join(bad[:3]), instances=25))
    return out


def _q_one_routes(m: int, n: int, D: int) -> CheckResult:
    """At q = 1 the explicit formula, decomposition and Schur corollary still agree."""
    F = SpecialField()
    ctx = get_context(AlgebraSpec(RIGHT, m, n), F)
    M = generic_manin_series(ctx, D)
    B = ber(M)
    return from_residual("q_one_routes", [B - decomposition_rhs(M), B - schur_corollary(M)],
                         m=m, n=n, D=D)


def berezinian_suite(cfg: SuiteConfig, F) -> list[CheckResult]:
    m, n, D = cfg.m, cfg.n, cfg.D
    out = []
    out.extend(quasidet_decomposition_check(m, n, D, F))
    out.extend(pi_st_relation_check(m, n, D, F))
    out.append(ber_inverse_check(m, n, D, F))
    out.append(left_quantum_morphism_check(m, n, F))
    if not isinstance(F, ModField) or F == cfg.fields()[0]:
        # field-independent checks run once
        out.append(_q_one_routes(m, n, min(D, 2)))
        out.extend(classical_oracle(cfg.seed))
    return out


def _subsets(items) -> list[tuple]:
    items = tuple(items)
    return [c for r in range(len(items) + 1) for c in itertools.combinations(items, r)]


def _permutation_pairs(m: int, n: int, seed: int, limit: int = 12) -> list[tuple]:
    pairs = list(itertools.product(itertools.product(range(1, m + 1), repeat=m),
                                   itertools.product(range(1, n + 1), repeat=n)))
    if len(pairs) <= limit:
        return pairs
    rng = random.Random(seed)
    ident = (tuple(range(1, m + 1)), tuple(range(1, n + 1)))
    rep = ((1,) * m, (1,) * n)
    rest = [p for p in pairs if p not in (ident, rep)]
    return [ident, rep] + rng.sample(rest, limit - 2)


def minors_suite(cfg: SuiteConfig, F) -> list[CheckResult]:
    m, n, D = cfg.m, cfg.n, cfg.D
    N = m + n
    full = tuple(range(1, N + 1))
    odd = tuple(range(m + 1, N + 1))
    out = []
    for I in _subsets(full):
        try:
            out.append(jacobi_ratio_check(I, m, n, D, F))
        except HypothesisError as exc:
            out.append(skipped("jacobi_ratio", str(exc), m=m, n=n, D=D, I=list(I)))
    for k in range(N + 1):
        out.append(schur_complement_check(k, m, n, D, F))
    for I, J in _permutation_pairs(m, n, cfg.seed):
        out.append(ber_permutation_check(I, J, m, n, D, F))
    for I1 in itertools.permutations(range(1, m + 1)):
        for I2 in itertools.permutations(odd):
            out.append(permuted_decomposition_check(I1, I1, I2, I2, m, n, D, F))
    # Cayley and Muir on every admissible Jacobi seed
    for A in _subsets(full):
        if not A:
            continue
        for I in _subsets(A):
            try:
                seed = jacobi_seed(I, m, n, A)
            except HypothesisError:
                continue
            params = dict(A=list(A), I=list(I))
            for stage in ("dual", "final"):
                try:
                    ident = cayley(seed, m, n, stage)
                except HypothesisError:
                    continue
                out.append(minor_identity_check(ident, m, n, D, F, name=f"cayley_{stage}",
                                                **params))
            if set(A) <= set(odd):
                for J in _subsets(odd):
                    if J and set(A) <= set(J):
                        out.append(minor_identity_check(muir(seed, J, m, n), m, n, D, F,
                                                        name="muir", muir_I=list(J), **params))
    return out


def sylvester_suite(cfg: SuiteConfig, F) -> list[CheckResult]:
    m, n, D = cfg.m, cfg.n, cfg.D
    out = []
    for k in (0, 1):
        if k + m + n > MAX_SIZE:
            continue
        if D > default_degree_cap(k + m, n, cfg.backend) and cfg.degree_cap is None:
            continue
        out.extend(sylvester_check(k, m, n, D, F))
    return out


_SUITE_FUNCS = {
    "tensor": tensor_suite,
    "relations": relations_suite,
    "macmahon": macmahon_suite,
    "newton": newton_suite,
    "traces": traces_suite,
    "berezinian": berezinian_suite,
    "minors": minors_suite,
    "sylvester": sylvester_suite,
}


def _key(r: CheckResult):
    return r.name, repr(sorted(r.params.items()))


def _combine(per_field: list[tuple[str, list[CheckResult]]]) -> list[CheckResult]:
    """Merge per-field results; a check passes only if every field passes."""
    if len(per_field) == 1:
        return per_field[0][1]
    order, groups = [], {}
    for fname, results in per_field:
        for r in results:
            k = _key(r)
            if k not in groups:
                order.append(k)
                groups[k] = []
            groups[k].append((fname, r))
    out = []
    for k in order:
        items = groups[k]
        first = items[0][1]
        params = dict(first.params, fields=[f for f, _ in items])
        fails = [(f, r) for f, r in items if r.status == "fail"]
        statuses = {r.status for _, r in items}
        if fails:
            f, r = fails[0]
            res = CheckResult(first.name, params, "fail", witness=r.witness,
                              detail=f"fails on {f}" + (f": {r.detail}" if r.detail else ""))
        elif statuses == {"skip"}:
            res = CheckResult(first.name, params, "skip", detail=first.detail)
        elif statuses == {"pass"}:
            res = CheckResult(first.name, params, "pass", detail=first.detail)
        else:
            res = CheckResult(first.name, params, "fail", witness="status disagreement",
                              detail=", ".join(f"{f}: {r.status}" for f, r in items))
        res.time_ms = sum(r.time_ms for _, r in items)
        out.append(res)
    return out


def run_suite(name: str, cfg: SuiteConfig) -> list[CheckResult]:
    """Run one suite on every configured field and merge the outcomes."""
    import time

    func = _SUITE_FUNCS[name]
    per_field = []
    for F in cfg.fields():
        t0 = time.perf_counter()
        try:
            results = func(cfg, F)
        except BadEvaluationPoint as exc:
            results = [skipped(name, f"bad evaluation point: {exc}", field=F.name)]
        ms = int(round((time.perf_counter() - t0) * 1000))
        for r in results:
            r.time_ms = ms // max(1, len(results))
        per_field.append((F.name, results))
    return _combine(per_field)


def run(cfg: SuiteConfig) -> list[tuple[str, CheckResult]]:
    out = []
    for name in SUITES:
        if name in cfg.suites:
            out.extend((name, r) for r in run_suite(name, cfg))
    return out


def build_report(cfg: SuiteConfig, results: list[tuple[str, CheckResult]]) -> dict:
    checks = []
    for suite, r in results:
        rec = {"suite": suite}
        rec.update(r.to_json())
        checks.append(rec)
    return {
        "version": SCHEMA_VERSION,
        "config": cfg.to_json(),
        "checks": checks,
        "summary": summarize([r for _, r in results]),
    }
