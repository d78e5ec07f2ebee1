import itertools

import pytest
from hypothesis import given, strategies as st

from semicover.algebra import (FiniteAlgebra, Homomorphism, Signature, Witness, check_closed, check_homomorphism,
                               check_semi_abelian_witness, generate_subalgebra, identity_homomorphism,
                               iter_semi_abelian_witnesses, product_algebra, search_semi_abelian_witness,
                               validate_algebra)
from semicover.errors import MissingWitness, SignatureError, SignatureMismatch
from semicover.fixtures import GROUP_SIG, cyclic_group, group_fixtures, klein_group, unary_only

from oracles import semi_abelian_holds

FIXTURES = group_fixtures()


# -- signatures ---------------------------------------------------------------

@pytest.mark.parametrize("ops, constant, witness", [
    ((("add", 2), ("add", 2), ("zero", 0)), "zero", None),
    ((("add", 2),), "zero", None),
    ((("add", 2), ("one", 0), ("zero", 0)), "zero", None),
    ((("add", 2), ("zero", 1)), "zero", None),
    ((("add", 2), ("zero", 0)), "zero", Witness(("neg",), "add")),
    ((("add", 2), ("zero", 0)), "zero", Witness(("add",), "zero")),
    ((("add", 2), ("zero", 0)), "zero", Witness((), "add")),
])
def test_bad_signatures_rejected(ops, constant, witness):
    with pytest.raises(SignatureError):
        Signature(ops, constant, witness)


# -- validate_algebra ----------------------------------------------------------

def test_z2_valid():
    assert validate_algebra(cyclic_group(2)) == []


def test_short_table_reported():
    a = cyclic_group(2).with_table("add", [0, 1, 1])
    [v] = validate_algebra(a)
    assert v.kind == "table-length"
    assert "table length 3 != 4" in v.message


def test_entry_out_of_range():
    a = cyclic_group(4).with_table("add", [5] + list(cyclic_group(4).tables["add"][1:]))
    [v] = validate_algebra(a)
    assert v.kind == "entry-range"
    assert v.location == ("add", 0)


def test_missing_table_and_wrong_constant():
    a = FiniteAlgebra(GROUP_SIG, 2, {"add": [0, 1, 1, 0], "zero": [0]})
    assert [v.kind for v in validate_algebra(a)] == ["missing-table"]


# -- semi-abelian witness --------------------------------------------------------

def test_z2_witness_holds():
    a = cyclic_group(2)
    assert list(a.tables["sub"]) == [0, 1, 1, 0]
    assert list(a.tables["add"]) == [0, 1, 1, 0]
    assert check_semi_abelian_witness(a)


def test_z4_witness_holds():
    assert check_semi_abelian_witness(cyclic_group(4))


def test_constant_theta_counterexample():
    a = cyclic_group(2).with_table("add", [0, 0, 0, 0])
    verdict = check_semi_abelian_witness(a)
    assert not verdict
    assert verdict.counterexample == ("theta", 1, 0)


def test_alpha_counterexample():
    a = cyclic_group(3)
    verdict = check_semi_abelian_witness(a, Witness(("add",), "add"))
    assert verdict.counterexample == ("alpha", 0, 1)


def test_missing_witness_raises():
    with pytest.raises(MissingWitness):
        check_semi_abelian_witness(unary_only())


def test_search_z2_prefers_add():
    assert search_semi_abelian_witness(cyclic_group(2), 1) == Witness(("add",), "add")


def test_search_z3_finds_sub_add():
    assert search_semi_abelian_witness(cyclic_group(3), 1) == Witness(("sub",), "add")


def test_search_unary_only_none():
    assert search_semi_abelian_witness(unary_only(), 3) is None


def test_all_witnesses_surfaced_in_order():
    found = list(iter_semi_abelian_witnesses(cyclic_group(2), 1))
    assert found == [Witness(("add",), "add"), Witness(("add",), "sub"),
                     Witness(("sub",), "add"), Witness(("sub",), "sub")]


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_witness_matches_oracle(name):
    a = FIXTURES[name]
    expected = semi_abelian_holds(a.tables["sub"], a.tables["add"], a.size)
    assert bool(check_semi_abelian_witness(a)) == expected


@given(st.lists(st.integers(0, 2), min_size=9, max_size=9))
def test_witness_agrees_with_oracle_on_random_theta(theta):
    a = cyclic_group(3).with_table("add", theta)
    assert bool(check_semi_abelian_witness(a)) == semi_abelian_holds(a.tables["sub"], theta, 3)


# -- homomorphisms -------------------------------------------------------------

def test_identity_on_z4():
    assert check_homomorphism(identity_homomorphism(cyclic_group(4)))


def test_mod2_reduction():
    assert check_homomorphism(Homomorphism(cyclic_group(4), cyclic_group(2), (0, 1, 0, 1)))


def test_swap_breaks_constant():
    verdict = check_homomorphism(Homomorphism(cyclic_group(2), cyclic_group(2), (1, 0)))
    assert not verdict
    assert verdict.counterexample == ("zero", ())


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        check_homomorphism(Homomorphism(cyclic_group(2), unary_only(), (0, 1)))


def _endomorphisms(a):
    return [f for f in itertools.product(range(a.size), repeat=a.size)
            if check_homomorphism(Homomorphism(a, a, f))]


@given(st.sampled_from(sorted(FIXTURES)), st.data())
def test_composite_of_homs_is_hom(name, data):
    a = FIXTURES[name]
    if a.size > 4:
        a = FIXTURES["Z4"]
    homs = _endomorphisms(a)
    f = data.draw(st.sampled_from(homs))
    g = data.draw(st.sampled_from(homs))
    assert check_homomorphism(Homomorphism(a, a, f).then(Homomorphism(a, a, g)))


@given(st.sampled_from(sorted(FIXTURES)))
def test_identity_always_hom(name):
    assert check_homomorphism(identity_homomorphism(FIXTURES[name]))


# -- subalgebras -----------------------------------------------------------------

@pytest.mark.parametrize("seed, members", [({2}, (0, 2)), (set(), (0,)), ({1}, (0, 1, 2, 3))])
def test_generate_z4(seed, members):
    assert generate_subalgebra(cyclic_group(4), seed).members == members


@given(st.sampled_from(sorted(FIXTURES)), st.data())
def test_generate_idempotent(name, data):
    a = FIXTURES[name]
    seed = data.draw(st.sets(st.integers(0, a.size - 1)))
    once = generate_subalgebra(a, seed)
    assert generate_subalgebra(a, once.members) == once
    assert check_closed(a, once.members)


def test_check_closed_counterexample():
    verdict = check_closed(cyclic_group(4), [0, 1])
    assert verdict.counterexample == ("add", (1, 1))


def test_product_indexing():
    k = klein_group()
    assert k.apply("add", (1, 2)) == 3
    assert product_algebra(cyclic_group(2), cyclic_group(3)).size == 6
