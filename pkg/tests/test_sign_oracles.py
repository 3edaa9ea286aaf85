"""Independent oracles for the sign conventions.

The merge-based Koszul product and the path differential carry every other
computation, so both are checked here against slow reference implementations
(explicit adjacent transpositions; term-by-term Leibniz), and the structural
path maps are checked to be algebra morphisms, not just linear identities.
"""

import random

from helpers import ms2
from hodgepath import (FreeCdga, Generator, coproduct, coproduct_prime, folding,
                       interchange, keyed, path_of, symmetry)
from hodgepath.scalars import Scalar


def reference_product(A, k1, k2):
    """Sort the concatenated factor sequence by adjacent swaps, counting signs."""
    seq = []
    for gi, e in k1 + k2:
        seq.extend([gi] * e)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] > seq[i + 1]:
                d1 = A.gens[seq[i]].degree
                d2 = A.gens[seq[i + 1]].degree
                if (d1 * d2) % 2:
                    sign = -sign
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                changed = True
    key = []
    for gi in seq:
        if key and key[-1][0] == gi:
            key[-1][1] += 1
        else:
            key.append([gi, 1])
    for gi, e in key:
        if A.gens[gi].degree % 2 and e > 1:
            return {}, 1
    return {tuple((gi, e) for gi, e in key): A.field.scalar(sign)}, sign


def test_free_product_against_transposition_oracle():
    A = FreeCdga([Generator("a1", 1), Generator("b1", 1), Generator("c2", 2),
                  Generator("d3", 3), Generator("e3", 3)], N=12, name="mixed")
    rng = random.Random(99)
    keys = []
    for n in range(1, 7):
        keys.extend(A.basis_keys(n))
    for _ in range(300):
        k1 = rng.choice(keys)
        k2 = rng.choice(keys)
        got = A.mul_keys(k1, k2)
        want, _ = reference_product(A, k1, k2)
        assert got == want, (k1, k2)


def test_path_differential_squares_to_zero_randomly():
    M = ms2()
    P = path_of(M, budget=5)
    P2 = path_of(P)
    rng = random.Random(7)
    for _ in range(40):
        x = P.random_element(rng.randint(0, 5), rng)
        assert x.d().d().is_zero
        L = P2.random_element(rng.randint(0, 5), rng)
        assert L.d().d().is_zero


def test_path_leibniz_randomly():
    M = ms2()
    P = path_of(M, budget=8)
    rng = random.Random(8)
    for _ in range(30):
        n1, n2 = rng.randint(0, 3), rng.randint(0, 3)
        x = P.random_element(n1, rng)
        y = P.random_element(n2, rng)
        sign = -1 if n1 % 2 else 1
        assert (x * y).d() == x.d() * y + (x * y.d()) * sign


def test_structural_maps_are_multiplicative():
    M = ms2()
    P = path_of(M, budget=8)
    P2 = path_of(P)
    rng = random.Random(9)
    tau = symmetry(P)
    c = coproduct(P)
    cp = coproduct_prime(P)
    mu = interchange(P2)
    nab = folding(P2)
    for _ in range(20):
        n1, n2 = rng.randint(0, 3), rng.randint(0, 3)
        x = P.random_element(n1, rng, density=0.4)
        y = P.random_element(n2, rng, density=0.4)
        assert tau(x * y) == tau(x) * tau(y)
        assert c(x * y) == c(x) * c(y)
        assert cp(x * y) == cp(x) * cp(y)
        L = P2.random_element(n1, rng, density=0.35)
        K = P2.random_element(n2, rng, density=0.35)
        assert mu(L * K) == mu(L) * mu(K)
        assert nab(L * K) == nab(L) * nab(K)


def test_structural_maps_commute_with_d():
    M = ms2()
    P = path_of(M, budget=8)
    P2 = path_of(P)
    rng = random.Random(10)
    for f, space in ((symmetry(P), P), (coproduct(P), P), (coproduct_prime(P), P),
                     (interchange(P2), P2), (folding(P2), P2)):
        for _ in range(12):
            x = space.random_element(rng.randint(0, 4), rng, density=0.4)
            assert f(x.d()) == f(x).d(), f.name
