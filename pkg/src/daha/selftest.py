"""The acceptance suite as a library.

Each criterion function runs one numbered acceptance criterion at a
configurable grid size and reports what it checked; the pytest
acceptance module and the command-line selftest both drive these.
Grid size semantics: None means the full mandated sample counts,
0 means only the fixed structural samples, any other value replaces
the per-parity random sample count.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .analysis import (
    burnside_irreducible,
    criterion_E,
    criterion_O,
    classify,
    det_fingerprint,
    find_intertwiner,
    is_intertwiner,
    l_matrix_routes,
    twist,
    INDETERMINATE,
)
from .modrep import (
    SparseVec,
    commutation_check,
    central_character,
    ladder_check,
    make_E,
    make_O,
    poly_apply,
    raising_product_annihilates,
    sparse_to_poly,
    verify_relations,
    verma_apply,
    verma_basis_image,
    verma_ladder_check,
    w_basis_check,
)
from .params import PARITY_EVEN, PARITY_ODD, ParamQuadruple, canonical_orbit_rep
from .sampling import adversarial_even, adversarial_odd, sample_even, sample_odd, sample_free
from .scalar import QQ, QQ_Q, scalar_pow

EVEN_DS = (1, 3, 5, 7)
ODD_DS = (0, 2, 4, 6)

_F = Fraction

FIXED_EVEN = (
    (1, (_F(1, 2), _F(1), _F(3), _F(1))),
    (3, (_F(1, 4), _F(2, 3), _F(3), _F(5, 7))),
    (5, (_F(1, 8), _F(2), _F(3), _F(5))),
    (7, (_F(1, 16), _F(1), _F(1), _F(1))),
)

FIXED_ODD = (
    (0, (_F(1), _F(1), _F(1), _F(1, 2))),
    (2, (_F(1), _F(1), _F(3), _F(1, 24))),
    (4, (_F(3, 2), _F(1, 3), _F(5), _F(1, 80))),
    (6, (_F(1), _F(2), _F(2), _F(1, 512))),
)


@dataclass
class CriterionResult:
    index: int
    name: str
    passed: bool
    checks: int
    elapsed: float
    failures: list = dc_field(default_factory=list)

    @property
    def detail(self) -> str:
        msg = f"{self.checks} checks, {len(self.failures)} failures, {self.elapsed:.1f}s"
        if self.failures:
            msg += "; first: " + self.failures[0]
        return msg

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.index}: {self.name} ({self.detail})"

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures[:20],
        }


def _rng(seed, tag: str) -> random.Random:
    return random.Random(f"{seed}:{tag}")


def _count(grid, default: int) -> int:
    return default if grid is None else max(int(grid), 0)


def _fixed_params(parity: str, max_d: int = 99, field=QQ):
    fixed = FIXED_EVEN if parity == PARITY_EVEN else FIXED_ODD
    q = field.default_q()
    out = []
    for d, ks in fixed:
        if d > max_d:
            continue
        if field is QQ_Q:
            if parity == PARITY_EVEN:
                ks = (scalar_pow(q, -(d + 1) // 2), ks[1], ks[2], ks[3])
            else:
                ks = (
                    ks[0],
                    ks[1],
                    ks[2],
                    scalar_pow(q, -d - 1) / (ks[0] * ks[1] * ks[2]),
                )
        out.append(ParamQuadruple(q, *ks, d=d, parity=parity))
    return out


def _grid_params(rng, parity: str, count: int, ds, field=QQ):
    """Fixed structural samples plus `count` random samples spread over ds."""
    out = _fixed_params(parity, max_d=max(ds), field=field)
    sampler = sample_even if parity == PARITY_EVEN else sample_odd
    for n in range(count):
        d = ds[n % len(ds)]
        out.append(sampler(rng, d, field=field))
    return out


def _construct(p: ParamQuadruple):
    return make_E(p) if p.parity == PARITY_EVEN else make_O(p)


def _criterion(index: int, name: str):
    def wrap(fn):
        def run(seed=0, grid=None, **kw) -> CriterionResult:
            start = time.monotonic()
            checks, failures = fn(seed, grid, **kw)
            return CriterionResult(
                index=index,
                name=name,
                passed=not failures,
                checks=checks,
                elapsed=time.monotonic() - start,
                failures=failures,
            )

        run.__name__ = fn.__name__
        return run

    return wrap


# -- criterion 1: relation suite -------------------------------------------

def _relation_sweep(params_list):
    checks = 0
    failures = []
    for p in params_list:
        module = _construct(p)
        report = verify_relations(module)
        checks += len(report.items)
        if not report.ok:
            failures.append(f"{module.label}: {report.failed()[0].name}")
    return checks, failures


@_criterion(1, "defining relations on random valid quadruples")
def criterion_1(seed, grid, field=QQ):
    count = _count(grid, 100)
    even = _grid_params(_rng(seed, "c1e"), PARITY_EVEN, count, EVEN_DS, field)
    odd = _grid_params(_rng(seed, "c1o"), PARITY_ODD, count, ODD_DS, field)
    c1, f1 = _relation_sweep(even)
    c2, f2 = _relation_sweep(odd)
    return c1 + c2, f1 + f2


# -- criterion 2: central characters and determinant fingerprints ----------

def _character_sweep(params_list):
    checks = 0
    failures = []
    for p in params_list:
        module = _construct(p)
        expected_c = tuple(k + 1 / k for k in p.k)
        got_c = central_character(module)
        checks += 1
        if got_c != expected_c:
            failures.append(f"{module.label}: central character {got_c}")
        if p.parity == PARITY_EVEN:
            one = p.q ** 0
            expected_fp = (scalar_pow(p.q, -p.d - 1), one, one, one)
        else:
            expected_fp = p.k
        got_fp = det_fingerprint(module)
        checks += 1
        if got_fp != expected_fp:
            failures.append(f"{module.label}: fingerprint {got_fp}")
    return checks, failures


@_criterion(2, "central characters and determinant fingerprints")
def criterion_2(seed, grid, field=QQ):
    count = _count(grid, 100)
    even = _grid_params(_rng(seed, "c2e"), PARITY_EVEN, count, EVEN_DS, field)
    odd = _grid_params(_rng(seed, "c2o"), PARITY_ODD, count, ODD_DS, field)
    c1, f1 = _character_sweep(even)
    c2, f2 = _character_sweep(odd)
    return c1 + c2, f1 + f2


# -- criterion 3: closed-form criteria against the Burnside oracle ---------

@_criterion(3, "irreducibility criteria match the Burnside oracle")
def criterion_3(seed, grid):
    count = _count(grid, 200)
    n_adv = _count(grid if grid is None else max(grid // 10, 0), 20)
    checks = 0
    failures = []

    rng = _rng(seed, "c3e")
    even = _grid_params(rng, PARITY_EVEN, count, (1, 3, 5))
    even += [adversarial_even(rng, (1, 3, 5)[n % 3]) for n in range(n_adv)]
    for p in even:
        expected = criterion_E(p)
        got = burnside_irreducible(make_E(p))
        checks += 1
        if expected != got:
            failures.append(f"even {p.to_json()} criterion={expected} oracle={got}")

    rng = _rng(seed, "c3o")
    odd = _grid_params(rng, PARITY_ODD, count, (0, 2, 4))
    odd += [adversarial_odd(rng, (2, 4)[n % 2]) for n in range(n_adv)]
    for p in odd:
        expected = criterion_O(p)
        got = burnside_irreducible(make_O(p))
        checks += 1
        if expected != got:
            failures.append(f"odd {p.to_json()} criterion={expected} oracle={got}")
    return checks, failures


# -- criterion 4: triangular coefficient matrix routes ---------------------

def _l_sweep(params_list):
    checks = 0
    failures = []
    for p in params_list:
        crit = criterion_E(p) if p.parity == PARITY_EVEN else criterion_O(p)
        try:
            routes = l_matrix_routes(p)
        except Exception as exc:  # route disagreement is a failure, not a crash
            failures.append(f"{p.to_json()}: {exc}")
            continue
        checks += len(routes)
        reference = routes["operator"].entries
        n = p.d + 1
        upper_ok = all(
            not reference.entries[i][j] for i in range(n) for j in range(i + 1, n)
        )
        checks += 1
        if not upper_ok:
            failures.append(f"{p.to_json()}: nonzero entry above the diagonal")
        diag_nonzero = all(reference.entries[i][i] for i in range(n))
        checks += 1
        if diag_nonzero != crit:
            failures.append(
                f"{p.to_json()}: diagonal nonvanishing {diag_nonzero} vs criterion {crit}"
            )
    return checks, failures


@_criterion(4, "coefficient matrix: three routes, triangularity, diagonal")
def criterion_4(seed, grid):
    count = _count(grid, 20)
    n_adv = max(count // 4, 1)
    rng = _rng(seed, "c4e")
    even = _grid_params(rng, PARITY_EVEN, count, (1, 3, 5))
    even += [adversarial_even(rng, (1, 3, 5)[n % 3]) for n in range(n_adv)]
    rng = _rng(seed, "c4o")
    odd = _grid_params(rng, PARITY_ODD, count, (0, 2, 4))
    odd += [adversarial_odd(rng, (2, 4)[n % 2]) for n in range(n_adv)]
    c1, f1 = _l_sweep(even)
    c2, f2 = _l_sweep(odd)
    return c1 + c2, f1 + f2


# -- criterion 5: isomorphism theorems as computations ----------------------

def _sample_irreducible(rng, parity, d):
    sampler = sample_even if parity == PARITY_EVEN else sample_odd
    crit = criterion_E if parity == PARITY_EVEN else criterion_O
    for _ in range(200):
        p = sampler(rng, d)
        if crit(p):
            return p
    raise RuntimeError("could not sample an irreducible quadruple")


def _irreducible_params(rng, parity, count, ds):
    """Fixed irreducible quadruples plus `count` sampled irreducible ones."""
    crit = criterion_E if parity == PARITY_EVEN else criterion_O
    out = [p for p in _fixed_params(parity, max_d=max(ds)) if crit(p)]
    for n in range(count):
        out.append(_sample_irreducible(rng, parity, ds[n % len(ds)]))
    return out


@_criterion(5, "isomorphism theorems realized by invertible intertwiners")
def criterion_5(seed, grid):
    count = _count(grid, 20)
    checks = 0
    failures = []

    rng = _rng(seed, "c5e")
    for p in _irreducible_params(rng, PARITY_EVEN, count, (1, 3, 5)):
        module = make_E(p)
        for variant in (
            p.with_k(k1=1 / p.k1),
            p.with_k(k2=1 / p.k2),
            p.with_k(k3=1 / p.k3),
        ):
            other = make_E(variant)
            cert = find_intertwiner(module, other)
            checks += 1
            if cert is None or cert is INDETERMINATE or not is_intertwiner(cert, module, other):
                failures.append(f"even {p.to_json()}: missing intertwiner")
        negative = twist(module, 1)
        checks += 1
        if det_fingerprint(negative) == det_fingerprint(module):
            failures.append(f"even {p.to_json()}: twisted fingerprint collision")
        elif find_intertwiner(module, negative) is not None:
            failures.append(f"even {p.to_json()}: intertwiner to a twisted module")

    rng = _rng(seed, "c5o")
    for p in _irreducible_params(rng, PARITY_ODD, count, (0, 2, 4)):
        module = make_O(p)
        k0, k1, k2, k3 = p.k
        for e, cycled in ((3, (k1, k2, k3, k0)), (2, (k2, k3, k0, k1)), (1, (k3, k0, k1, k2))):
            other = twist(
                make_O(ParamQuadruple(p.q, *cycled, d=p.d, parity=PARITY_ODD)), e
            )
            cert = find_intertwiner(module, other)
            checks += 1
            if cert is None or cert is INDETERMINATE or not is_intertwiner(cert, module, other):
                failures.append(f"odd {p.to_json()}: missing twist-{e} intertwiner")
        if p.d >= 2:
            negative = twist(module, 1)
            checks += 1
            if det_fingerprint(negative) == det_fingerprint(module):
                failures.append(f"odd {p.to_json()}: twisted fingerprint collision")
            elif find_intertwiner(module, negative) is not None:
                failures.append(f"odd {p.to_json()}: intertwiner to a twisted module")
    return checks, failures


# -- criterion 6: classification round trips --------------------------------

@_criterion(6, "classification round trips")
def criterion_6(seed, grid):
    count = _count(grid, 50)
    checks = 0
    failures = []

    rng = _rng(seed, "c6e")
    for p in _irreducible_params(rng, PARITY_EVEN, count, (1, 1, 3, 3, 5)):
        module = make_E(p)
        canonical = canonical_orbit_rep(p)
        for e in range(4):
            result = classify(twist(module, e))
            checks += 1
            if result.twist.value != e or result.params != canonical:
                failures.append(f"even {p.to_json()} twist {e}: got {result.to_json()}")

    rng = _rng(seed, "c6o")
    for p in _irreducible_params(rng, PARITY_ODD, count, (0, 2, 2, 4)):
        result = classify(make_O(p))
        checks += 1
        if result.params != p or result.twist.value != 0:
            failures.append(f"odd {p.to_json()}: got {result.to_json()}")
    return checks, failures


# -- criterion 7: the infinite module, operator identities, polynomials -----

def _poly_intertwining(p: ParamQuadruple, max_i: int):
    failures = []
    for i in range(max_i + 1):
        image_i = verma_basis_image(i, p)
        mi = SparseVec.unit(i, p.q ** 0)
        for gen in range(4):
            left = poly_apply(gen, image_i, p)
            right = sparse_to_poly(verma_apply(gen, mi, p), p)
            if left != right:
                failures.append(f"{p.to_json()}: generator {gen} at index {i}")
    return failures


def _infinite_suite(params_list, max_ladder=12, max_poly=10):
    checks = 0
    failures = []
    for p in params_list:
        ladder = verma_ladder_check(p, max_ladder)
        checks += len(ladder.items)
        if not ladder.ok:
            failures.append(f"{p.to_json()}: {ladder.failed()[0].name}")

        poly_failures = _poly_intertwining(p, max_poly)
        checks += 4 * (max_poly + 1)
        failures.extend(poly_failures)

        if p.parity in (PARITY_EVEN, PARITY_ODD):
            module = _construct(p)
            for mod in (module, twist(module, 1), twist(module, 3)):
                rep = commutation_check(mod)
                checks += len(rep.items)
                if not rep.ok:
                    failures.append(f"{mod.label}: {rep.failed()[0].name}")
            checks += 1
            if not raising_product_annihilates(module):
                failures.append(f"{module.label}: raising product misses zero")
            for which in ("X", "Y"):
                rep = ladder_check(module, which)
                checks += len(rep.items)
                if not rep.ok:
                    failures.append(f"{module.label}: {rep.failed()[0].name}")
            if p.parity == PARITY_EVEN:
                rep = w_basis_check(module)
                checks += len(rep.items)
                if not rep.ok:
                    failures.append(f"{module.label}: {rep.failed()[0].name}")
    return checks, failures


@_criterion(7, "infinite-module ladders, operator identities, polynomial realization")
def criterion_7(seed, grid, field=QQ, max_d=99, sets_per_parity=None):
    count = _count(grid, 4) if sets_per_parity is None else sets_per_parity
    rng_e = _rng(seed, "c7e")
    rng_o = _rng(seed, "c7o")
    even_ds = tuple(d for d in EVEN_DS if d <= max_d)
    odd_ds = tuple(d for d in ODD_DS if d <= max_d)
    params = _grid_params(rng_e, PARITY_EVEN, count, even_ds, field)
    params += _grid_params(rng_o, PARITY_ODD, count, odd_ds, field)
    if field is QQ:
        rng_f = _rng(seed, "c7f")
        params += [sample_free(rng_f) for _ in range(max(count // 2, 1))]
    return _infinite_suite(params)


# -- criterion 8: the symbolic-q subset --------------------------------------

@_criterion(8, "symbolic-q backend: relations, characters, infinite module")
def criterion_8(seed, grid):
    count = _count(grid, 100)
    checks = 0
    failures = []

    even = _grid_params(_rng(seed, "c8e1"), PARITY_EVEN, count, (1, 3), QQ_Q)
    odd = _grid_params(_rng(seed, "c8o1"), PARITY_ODD, count, (0, 2), QQ_Q)
    c, f = _relation_sweep(even + odd)
    checks += c
    failures += f
    c, f = _character_sweep(even + odd)
    checks += c
    failures += f

    infinite_sets = _grid_params(_rng(seed, "c8e7"), PARITY_EVEN, 1, (3,), QQ_Q)
    infinite_sets += _grid_params(_rng(seed, "c8o7"), PARITY_ODD, 1, (2,), QQ_Q)
    infinite_sets = [p for p in infinite_sets if p.d <= 3]
    c, f = _infinite_suite(infinite_sets)
    checks += c
    failures += f
    return checks, failures


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
)


def run_all(seed=0, grid=None, backend="both", report=print):
    """Run the acceptance criteria, printing one pass/fail line each."""
    results = []
    for crit in CRITERIA:
        index = len(results) + 1
        if backend == "rational" and crit is criterion_8:
            continue
        if backend == "ratfun" and crit is not criterion_8:
            continue
        result = crit(seed=seed, grid=grid)
        results.append(result)
        if report:
            report(result.line())
    return results
