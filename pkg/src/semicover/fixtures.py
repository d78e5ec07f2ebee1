"""Small standard algebras used by tests, the CLI fixtures and examples.

All groups share :data:`GROUP_SIG` so they can be combined into products and
internal groupoids: ``add`` is the group law (written additively even for
S3), ``sub(x, y) = x - y`` and ``zero`` the identity.
"""

import itertools

from .algebra import FiniteAlgebra, Signature, Witness, product_algebra

GROUP_SIG = Signature((("add", 2), ("sub", 2), ("zero", 0)), "zero", Witness(("sub",), "add"))

# groups with one extra unary operator (an Omega-group)
OPERATOR_SIG = Signature((("add", 2), ("sub", 2), ("swap", 1), ("zero", 0)), "zero", Witness(("sub",), "add"))

# same shape as OPERATOR_SIG but the unary op need not fix zero
ADVERSARIAL_SIG = Signature((("add", 2), ("sub", 2), ("u", 1), ("zero", 0)), "zero", Witness(("sub",), "add"))


def cyclic_group(n: int) -> FiniteAlgebra:
    return FiniteAlgebra.from_functions(GROUP_SIG, n, {
        "add": lambda x, y: (x + y) % n,
        "sub": lambda x, y: (x - y) % n,
        "zero": lambda: 0,
    })


def klein_group() -> FiniteAlgebra:
    """Z/2 x Z/2 with ``(a, b)`` at index ``2a + b``."""
    return product_algebra(cyclic_group(2), cyclic_group(2))


def symmetric_group_3() -> FiniteAlgebra:
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}

    def mul(i, j):
        p, q = perms[i], perms[j]
        return index[tuple(p[q[k]] for k in range(3))]

    def inv(i):
        p = perms[i]
        r = [0] * 3
        for k, v in enumerate(p):
            r[v] = k
        return index[tuple(r)]

    return FiniteAlgebra.from_functions(GROUP_SIG, 6, {
        "add": mul,
        "sub": lambda x, y: mul(x, inv(y)),
        "zero": lambda: index[(0, 1, 2)],
    })


def swap_klein() -> FiniteAlgebra:
    """Z/2 x Z/2 with the coordinate swap as an extra operator.

    ``{0, 1}`` is a subgroup that is not closed under ``swap``.
    """
    k = klein_group()
    return FiniteAlgebra.from_functions(OPERATOR_SIG, 4, {
        "add": lambda x, y: k.apply("add", (x, y)),
        "sub": lambda x, y: k.apply("sub", (x, y)),
        "swap": lambda x: (x % 2) * 2 + x // 2,
        "zero": lambda: 0,
    })


def adversarial_z2() -> FiniteAlgebra:
    """Z/2 plus ``u(x) = x + 1``; ``u(zero) != zero`` so the constant is not unique."""
    return FiniteAlgebra.from_functions(ADVERSARIAL_SIG, 2, {
        "add": lambda x, y: (x + y) % 2,
        "sub": lambda x, y: (x - y) % 2,
        "u": lambda x: (x + 1) % 2,
        "zero": lambda: 0,
    })


def unary_only() -> FiniteAlgebra:
    sig = Signature((("u", 1), ("zero", 0)), "zero")
    return FiniteAlgebra.from_functions(sig, 2, {"u": lambda x: x, "zero": lambda: 0})


def trivial_algebra(sig: Signature = GROUP_SIG) -> FiniteAlgebra:
    return FiniteAlgebra(sig, 1, {name: (0,) for name in sig.names})


def group_fixtures() -> dict:
    return {
        "Z2": cyclic_group(2),
        "Z3": cyclic_group(3),
        "Z4": cyclic_group(4),
        "Z2xZ2": klein_group(),
        "S3": symmetric_group_3(),
    }
