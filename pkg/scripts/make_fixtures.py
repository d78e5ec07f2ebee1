"""Regenerate the JSON documents under fixtures/.

    python3 scripts/make_fixtures.py [OUTDIR]
"""

import sys
from pathlib import Path

from semicover import jsonio
from semicover.covering import CoveringOfInternal, build_coset_action, semidirect
from semicover.fixtures import adversarial_z2, cyclic_group, klein_group, swap_klein, symmetric_group_3
from semicover.groupoid import relabel
from semicover.internal import InternalGroupoid, check_internal, one_object_internal


def reversed_cover(cov: CoveringOfInternal, cod) -> dict:
    """Plain-groupoid cover with objects and arrows renamed in reverse, so lifting has to search."""
    h = cov.p.dom
    renamed, back = relabel(h, list(range(h.n_objects))[::-1], list(range(h.n_arrows))[::-1])
    p = back.then(cov.p)
    return jsonio.cover_to_doc(CoveringOfInternal(renamed, cod, p))


def broken_internal() -> InternalGroupoid:
    """Z/4 as a one-object internal groupoid with one cell of the arrow addition changed."""
    ig = one_object_internal(cyclic_group(4))
    add = list(ig.arrow_alg.tables["add"])
    add[1 * 4 + 2] = 0
    broken = InternalGroupoid(ig.gpd, ig.arrow_alg.with_table("add", add), ig.object_alg)
    assert any(v.kind == "interchange" for v in check_internal(broken))
    return broken


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    docs = {}
    for name, alg in [("z2", cyclic_group(2)), ("z3", cyclic_group(3)), ("z4", cyclic_group(4)),
                      ("z2xz2", klein_group()), ("s3", symmetric_group_3()), ("swap_klein", swap_klein()),
                      ("adversarial", adversarial_z2())]:
        docs[name] = jsonio.algebra_to_doc(alg)
    bad = cyclic_group(2)
    docs["z2_bad_theta"] = jsonio.algebra_to_doc(bad.with_table("add", [0, 1, 1, 1]))

    z4 = one_object_internal(cyclic_group(4))
    docs["z4_internal"] = jsonio.internal_to_doc(z4)
    docs["z4_groupoid"] = jsonio.groupoid_to_doc(z4.gpd)
    docs["broken_internal"] = jsonio.internal_to_doc(broken_internal())

    act = build_coset_action(z4, [0, 2])
    docs["z4_action_c02"] = jsonio.action_to_doc(act)
    docs["z4_cover_c02"] = reversed_cover(semidirect(z4.gpd, build_coset_action(z4.gpd, [0, 2])), z4)

    sk = one_object_internal(swap_klein())
    docs["swap_klein_internal"] = jsonio.internal_to_doc(sk)
    docs["swap_klein_cover_c01"] = reversed_cover(semidirect(sk.gpd, build_coset_action(sk.gpd, [0, 1])), sk)

    for name, doc in docs.items():
        jsonio.write_json(out / f"{name}.json", doc)
        print(f"wrote {out / name}.json")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures")
