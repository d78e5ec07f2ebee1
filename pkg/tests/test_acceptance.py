"""Acceptance suite: one test per criterion, each with its runtime budget.

A PASS/FAIL line per criterion is printed in the pytest terminal summary,
or directly when run as ``python3 tests/test_acceptance.py``.
"""

import json
import tempfile
import time

from semicover.algebra import Homomorphism, check_homomorphism, check_semi_abelian_witness
from semicover.clone import MAX_TABLE_SIZE, check_constant_preservation, enumerate_clone
from semicover.covering import (actions_equal, build_coset_action, canonical_action, check_cover,
                                cover_isomorphism, gamma, lift_structure, phi, semidirect, underlying)
from semicover.errors import CharacteristicGroupNotSubalgebra, NotASubgroup
from semicover.fixtures import adversarial_z2, cyclic_group, group_fixtures, klein_group, swap_klein
from semicover.groupoid import characteristic_group, check_covering, check_subgroup, coset_space, is_isomorphism
from semicover.internal import (InternalGroupoid, check_internal, discrete_internal, interchange_converse_failures,
                                interchange_failures, one_object_internal, pair_internal, transitive_internal)

import oracles
import test_cli

RESULTS = {}


def record(number, title, ok, seconds, budget, note=""):
    within = budget is None or seconds < budget
    RESULTS[number] = (title, ok and within, seconds, budget, note)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def _transitive(m, k):
    return one_object_internal(k) if m == 1 else transitive_internal(cyclic_group(m), k)


# 1 ------------------------------------------------------------------------------------------

def test_criterion_1_semi_abelian_axioms():
    groups = {n: a for n, a in group_fixtures().items() if n != "S3"}
    with Timer() as t:
        passing = {n: bool(check_semi_abelian_witness(a)) for n, a in groups.items()}
        mutants = [
            cyclic_group(2).with_table("add", [0, 0, 0, 0]),
            cyclic_group(2).with_table("add", [0, 1, 1, 1]),
            cyclic_group(3).with_table("sub", [1] + list(cyclic_group(3).tables["sub"][1:])),
            cyclic_group(4).with_table("add", [0, 1, 2, 3, 1, 2, 3, 0, 2, 3, 0, 1, 3, 0, 1, 1]),
            klein_group().with_table("sub", [0] * 16),
        ]
        verdicts = [check_semi_abelian_witness(a) for a in mutants]
    ok = all(passing.values()) and all(not v and v.counterexample for v in verdicts)
    # the oracle agrees on every case
    ok = ok and all(oracles.semi_abelian_holds(a.tables["sub"], a.tables["add"], a.size) == bool(v)
                    for a, v in zip(list(groups.values()) + mutants, list(passing.values()) + verdicts))
    record(1, "semi-abelian witness suite", ok, t.seconds, 1.0, f"{len(mutants)} mutants rejected")
    assert ok and t.seconds < 1.0


# 2 ------------------------------------------------------------------------------------------

def _guard_bound(a, want=3):
    d = want
    while a.size ** d > MAX_TABLE_SIZE:
        d -= 1
    return d


def test_criterion_2_constant_preservation():
    with Timer() as t:
        failures = {}
        bounds = {}
        for name, a in group_fixtures().items():
            bounds[name] = _guard_bound(a)
            verdict = check_constant_preservation(enumerate_clone(a, bounds[name]))
            if not verdict:
                failures[name] = verdict.counterexample
        adv = check_constant_preservation(enumerate_clone(adversarial_z2(), 3))
        if not adv:
            failures["adversarial"] = adv.counterexample
    # the offending derived operation is u itself: arity 1, table [1, 0]
    ok = list(failures) == ["adversarial"] and failures["adversarial"] == (1, tuple(adversarial_z2().tables["u"]))
    record(2, "derived operations fix (e,...,e)", ok, t.seconds, 10.0, f"bounds {bounds}")
    assert ok and t.seconds < 10.0


# 3 ------------------------------------------------------------------------------------------

def test_criterion_3_coset_cover_oracle():
    groups = {"Z2": cyclic_group(2), "Z4": cyclic_group(4), "Z2xZ2": klein_group()}
    cases = 0
    ok = True
    with Timer() as t:
        for m in (1, 2):
            for name, k in groups.items():
                g = _transitive(m, k)
                for sub in oracles.subgroups(k.tables["add"], k.size):
                    arrows = sorted(oracles.fixture_arrow(m, k.size, 0, c, 0) for c in sub)
                    act = build_coset_action(g, arrows)
                    cov = semidirect(g, act)
                    base = act.cosets.coset_of(g.gpd.id[0])
                    expected = oracles.right_cosets(m, k.tables["add"], k.size, sub)
                    ok &= bool(check_covering(cov.p))
                    ok &= set(characteristic_group(cov.p, base)) == set(arrows)
                    ok &= cov.dom.gpd.n_objects == m * (k.size // len(sub))
                    ok &= {frozenset(c) for c in coset_space(g.gpd, 0, arrows).cosets} == expected
                    cases += 1
    record(3, "coset cover against brute-force cosets", ok, t.seconds, 10.0, f"{cases} (m, K, C) cases")
    assert ok and t.seconds < 10.0


# 4 ------------------------------------------------------------------------------------------

def _mutations():
    """Deterministic single-cell mutations of passing internal groupoids."""
    out = []
    for base in (pair_internal(cyclic_group(2)), pair_internal(cyclic_group(3)), discrete_internal(cyclic_group(4)),
                 one_object_internal(cyclic_group(4)), pair_internal(klein_group())):
        for op in ("add", "sub"):
            table = list(base.arrow_alg.tables[op])
            for cell in (1, len(table) - 2):
                table2 = list(table)
                table2[cell] = (table2[cell] + 1) % base.gpd.n_arrows
                out.append(InternalGroupoid(base.gpd, base.arrow_alg.with_table(op, table2), base.object_alg))
    return out


def test_criterion_4_internal_groupoids():
    algebras = {**group_fixtures(), "swap_klein": swap_klein(), "adversarial": adversarial_z2()}
    with Timer() as t:
        ok = True
        for a in algebras.values():
            for ig in (pair_internal(a), discrete_internal(a)):
                ok &= check_internal(ig) == []
                # both definedness directions of the exhaustive interchange scan are empty
                ok &= interchange_failures(ig) == []
                ok &= all(oracles.interchange_holds(ig.gpd.n_arrows, ig.gpd.comp, ig.arrow_alg.tables[op], n)
                          for op, n in ig.sig.ops)
        mutants = _mutations()
        detected = [bool(check_internal(ig)) for ig in mutants]
        ok &= all(detected)
        # the converse (right side defined forces every g_i∘h_i defined) fails on genuine
        # internal groupoids; it is reported for information only
        converse = len(interchange_converse_failures(pair_internal(cyclic_group(2))))
    record(4, "internal groupoid suite", ok, t.seconds, 5.0,
           f"{sum(detected)}/{len(mutants)} mutations caught; converse-only tuples on pair(Z/2): {converse}")
    assert ok and len(mutants) >= 10 and t.seconds < 5.0


# 5 ------------------------------------------------------------------------------------------

def test_criterion_5_equivalence_round_trips():
    z4 = one_object_internal(cyclic_group(4))
    g2 = _transitive(2, cyclic_group(2))
    k = one_object_internal(klein_group())
    actions = [canonical_action(z4), build_coset_action(z4, [0]), build_coset_action(z4, [0, 2]),
               canonical_action(g2), build_coset_action(g2, [0]), build_coset_action(g2.gpd, [0, 1]),
               build_coset_action(k, [0, 1]), build_coset_action(k, [0, 3])]
    with Timer() as t:
        act_ok = [actions_equal(phi(gamma(act)), act) for act in actions]
        cov_ok = []
        for act in actions:
            cov = gamma(act)
            back = gamma(phi(cov))
            iso = cover_isomorphism(cov, back)
            cov_ok.append(iso is not None and is_isomorphism(iso) and iso.then(back.p) == cov.p)
    ok = all(act_ok) and all(cov_ok) and len(act_ok) >= 5 and len(cov_ok) >= 5
    record(5, "action/cover round trips", ok, t.seconds, 10.0, f"{len(act_ok)} actions, {len(cov_ok)} covers")
    assert ok and t.seconds < 10.0


# 6 ------------------------------------------------------------------------------------------

def test_criterion_6_lifting():
    z4 = one_object_internal(cyclic_group(4))
    with Timer() as t:
        model = semidirect(z4.gpd, build_coset_action(z4.gpd, [0, 2]))
        h, p = underlying(model.dom), model.p
        lifted = lift_structure(h, z4, p, 0)
        ok = check_internal(lifted.dom) == [] and check_cover(lifted) == []
        ok &= bool(check_homomorphism(Homomorphism(lifted.dom.arrow_alg, z4.arrow_alg, p.arr_map)))
        ok &= bool(check_homomorphism(Homomorphism(lifted.dom.object_alg, z4.object_alg, p.obj_map)))
        # a {0,1}-style characteristic group that is a subgroup but not a subalgebra
        sk = one_object_internal(swap_klein())
        bad = semidirect(sk.gpd, build_coset_action(sk.gpd, [0, 1]))
        try:
            lift_structure(underlying(bad.dom), sk, bad.p, 0)
            refused = False
        except CharacteristicGroupNotSubalgebra:
            refused = True
        # in Z/4 itself {0,1} is not even a subgroup, so no covering has it as characteristic group
        try:
            check_subgroup(z4.gpd, 0, [0, 1])
            literal = False
        except NotASubgroup:
            literal = True
    ok = ok and refused and literal
    record(6, "lifting along coverings", ok, t.seconds, 5.0, "Z/4 C={0,2} lifts; swap-Klein C={0,1} refused")
    assert ok and t.seconds < 5.0


# 7 ------------------------------------------------------------------------------------------

def test_criterion_7_cli_golden():
    mismatches = []
    with Timer() as t:
        for name in sorted(test_cli.CASES):
            with tempfile.TemporaryDirectory() as tmp:
                code, text = test_cli.run_case(name, tmp)
            golden = (test_cli.GOLDEN / f"{name}.json").read_text()
            status = json.loads(text)["status"]
            if text != golden or code != test_cli.CASES[name][1] or code != {"pass": 0, "fail": 1, "error": 2}[status]:
                mismatches.append(name)
        subcommands = {argv[0] for argv, _ in test_cli.CASES.values()}
    ok = not mismatches and subcommands == {"check", "build", "lift", "equiv", "clone", "export-dot"}
    record(7, "CLI golden reports and exit codes", ok, t.seconds, None,
           f"{len(test_cli.CASES)} cases" + (f", mismatched {mismatches}" if mismatches else ""))
    assert ok


def summary_lines():
    lines = []
    for number in sorted(RESULTS):
        title, ok, seconds, budget, note = RESULTS[number]
        verdict = "PASS" if ok else "FAIL"
        limit = "no budget" if budget is None else f"budget {budget:.0f}s"
        lines.append(f"ACCEPTANCE {number} {verdict}: {title} ({seconds:.2f}s, {limit}) {note}")
    return lines


if __name__ == "__main__":
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except AssertionError:
            pass
    print("\n".join(summary_lines()))
