from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from torusdyn import corpus
from torusdyn.automorphism import TorusAut
from torusdyn.groups import (
    MatrixGroup,
    UnsupportedGroup,
    WordEvaluator,
    common_eigenray,
    derived_series_probe,
    exponent_vector,
    invariant_chain,
    phi_bound_check,
    phi_map,
    ping_pong_certificate,
    rank_bound_check,
    reduced_words,
    zero_entropy_kernel_check,
)
from torusdyn.intervals import Interval

GOLDEN = Fraction("1.618033988749894848204586834365638117720")  # (1 + sqrt 5)/2
SQRT2 = Fraction("1.414213562373095048801688724209698078570")
CAT_HA = Fraction("1.924847300238413789991035653697473692541")  # 2 log((3 + sqrt 5)/2)
SQRT2_D1 = Fraction("33.97056274847714058562026469051637694284")


def near(iv: Interval, x: Fraction, tol=Fraction(1, 10**38)) -> bool:
    return iv.lo - tol <= x <= iv.hi + tol


def ratio_close(v, a, b, ref, tol=Fraction(1, 10**12)):
    return abs(Fraction(v[a]) / Fraction(v[b]) - ref) <= tol


def test_cat_eigenray():
    ray = common_eigenray(corpus.bundled_groups()["cat"])
    assert ratio_close(ray.vector, 0, 1, GOLDEN)
    assert near(ray.characters[0], Fraction("6.854101966249684544613760503096914353161"))


def test_sqrt2_eigenray_direction():
    ray = common_eigenray(corpus.bundled_groups()["sqrt2"])
    assert ratio_close(ray.vector, 1, 0, SQRT2)
    assert near(ray.characters[0], SQRT2_D1)


def test_identity_group_eigenray():
    from torusdyn.cohomology import TorusModel, standard_kahler

    m = TorusModel(2)
    assert common_eigenray(None, m).cls == standard_kahler(m)


def test_heisenberg_flag_is_exact():
    G = corpus.bundled_groups()["heisenberg"]
    chain = invariant_chain(G)
    assert chain.route == "rational"
    assert chain.verify_exact_invariance()
    assert all(c.is_point and c.lo == 1 for c in common_eigenray(G).characters)


def test_cat_phi_is_entropy():
    G = corpus.bundled_groups()["cat"]
    chain = invariant_chain(G)
    (phi,) = chain.phi(G.generators[0].A)
    assert near(phi, CAT_HA)
    assert phi.hi - phi.lo < Fraction(1, 10**9)


@pytest.mark.parametrize("name", sorted(corpus.bundled_groups()))
def test_bundled_group_checks(name):
    G = corpus.bundled_groups()[name]
    chain = invariant_chain(G)
    assert chain.verify_exact_invariance()
    img = phi_map(G, chain, 3)
    assert rank_bound_check(img, G.k)
    assert phi_bound_check(img)
    assert zero_entropy_kernel_check(img)
    assert all(w.homomorphism_ok and w.multiplicative_ok for w in img.words)


def test_expected_ranks():
    expected = {"cat": 1, "sqrt2": 1, "sqrt3": 1, "cubic": 2, "cat_times_involution": 1, "cat_pair_k4": 2, "parabolic": 0, "heisenberg": 0}
    for name, G in corpus.bundled_groups().items():
        img = phi_map(G, invariant_chain(G), 2)
        assert (img.rank_lower, img.rank_upper) == (expected[name],) * 2, name


def test_phi_is_additive_on_powers():
    G = corpus.bundled_groups()["sqrt3"]
    chain = invariant_chain(G)
    A = G.generators[0].A
    (p1,) = chain.phi(A)
    (p3,) = chain.phi(A**3)
    assert (p1 * 3).overlaps(p3)


def test_non_commuting_hyperbolic_pair_is_unsupported():
    g, h = corpus.conjugate_cat_pair()
    with pytest.raises(UnsupportedGroup):
        invariant_chain(MatrixGroup([g, h], ["g", "h"]))


def test_words():
    words = reduced_words(2, 2)
    # 4 letters, then each letter followed by one of the 3 that do not cancel it
    assert len(words) == 4 + 12
    assert len(set(words)) == len(words)
    G = corpus.bundled_groups()["cat"]
    ev = WordEvaluator(G)
    f = G.generators[0]
    for w in reduced_words(1, 3):
        (e,) = exponent_vector(w, 1)
        assert ev.matrix(w) == (f.power(e) if e >= 0 else f.inverse().power(-e)).A


def test_group_json_roundtrip():
    G = corpus.bundled_groups()["cubic"]
    H = MatrixGroup.from_dict(G.to_dict())
    assert [g.A for g in H.generators] == [g.A for g in G.generators]


@settings(max_examples=10)
@given(st.integers(1, 4), st.integers(1, 4))
def test_diagonal_commuting_cat_powers(a, b):
    cat = TorusAut([[2, 1], [1, 1]])
    G = MatrixGroup([cat.power(a), cat.power(b)], ["x", "y"])
    img = phi_map(G, invariant_chain(G), 2)
    assert img.rank_lower == img.rank_upper == 1
    assert img.relations


def test_ping_pong():
    g, h = corpus.conjugate_cat_pair()
    cert = ping_pong_certificate(g, h)
    assert cert is not None and cert.delta == Fraction(1, 64) and cert.N == 4
    assert ping_pong_certificate(g, g) is None
    assert ping_pong_certificate(g, g @ g) is None


def test_solvability_probes():
    ex = corpus.solvability_examples()
    ab = derived_series_probe(ex["abelian"])
    assert (ab.status, ab.depth) == ("solvable", 1)
    he = derived_series_probe(ex["heisenberg"])
    assert (he.status, he.depth) == ("solvable", 2)
    pp = derived_series_probe(ex["ping_pong"])
    assert pp.status == "inconclusive" and pp.free_subgroup is not None


def test_sup_norm_interval():
    from torusdyn.groups import sup_norm

    n = sup_norm([Interval(-3, -2), Interval(1, 2)])
    assert (n.lo, n.hi) == (2, 3)
