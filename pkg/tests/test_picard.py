import random
from itertools import product

import pytest

from bunpic.exact_algebra import FGAbelianGroup, Lattice
from bunpic.family import CurveFamily, family_from_preset
from bunpic.invariant_forms import basic_inner_product
from bunpic.picard import (
    GenusZero,
    HypothesisNotSatisfied,
    TautClass,
    WrongGenus,
    base_component,
    relation_3_4_check,
    reductive_picard,
    taut_gamma,
    taut_rho,
    taut_weight,
    torus_picard,
    torus_picard_genus0,
)
from bunpic.root_datum import Pi1Element, SimpleType, build_group


# ---------------------------------------------------------------------------
# tautological invariants


def test_taut_weight_vanishing():
    c = TautClass.of(det_terms=[((1,), 0, 1)])
    assert taut_weight(1, (0,), 1, c) == (0,)


def test_taut_weight_det_term():
    # chi(d) = 3, deg M = 0, g = 2: weight (3 + 0 + 1 - 2) chi = 2 chi
    c = TautClass.of(det_terms=[((1,), 0, 1)])
    assert taut_weight(1, (3,), 2, c) == (2,)


def test_taut_weight_pair_term():
    # chi = e1*, mu = e2*, mu(d) = 1, deg N = 0, chi(d) = 0, deg M = 2
    c = TautClass.of(pair_terms=[((1, 0), (0, 1), 2, 0, 1)])
    assert taut_weight(2, (0, 1), 3, c) == (1, 2)  # chi + 2 mu


def test_taut_gamma_det():
    c = TautClass.of(det_terms=[((1, 0), 0, 1)])
    assert taut_gamma(2, c).gram.to_lists() == [[1, 0], [0, 0]]


def test_taut_gamma_pair():
    c = TautClass.of(pair_terms=[((1, 0), (0, 1), 0, 0, 1)])
    assert taut_gamma(2, c).gram.to_lists() == [[0, 1], [1, 0]]


def test_taut_gamma_relation_kills():
    # a_i + 2 b_ii = 0 kills gamma
    c = TautClass.of(det_terms=[((1,), 0, -2)], pair_terms=[((1,), (1,), 0, 0, 1)])
    assert taut_gamma(1, c).gram.to_lists() == [[0]]


def test_taut_gamma_genus_zero_raises():
    with pytest.raises(GenusZero):
        taut_gamma(0, TautClass.of())


def test_taut_rho():
    c = TautClass.of(det_terms=[((1, 0), 0, 1)])
    assert taut_rho(1, c) == (1, 0)
    p = TautClass.of(pair_terms=[((1, 0), (0, 1), 0, 0, 1)])
    assert taut_rho(1, p) == (0, 0)
    assert taut_rho(1, TautClass.of()) == ()


def test_rho_is_epsilon_of_gamma():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randint(1, 3)
        det = [(tuple(rng.randint(-2, 2) for _ in range(n)), rng.randint(-3, 3),
                rng.randint(-2, 2)) for _ in range(rng.randint(0, 3))]
        pair = [(tuple(rng.randint(-2, 2) for _ in range(n)),
                 tuple(rng.randint(-2, 2) for _ in range(n)),
                 rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-2, 2))
                for _ in range(rng.randint(0, 3))]
        if not det and not pair:
            continue
        c = TautClass.of(det_terms=det, pair_terms=pair)
        gamma = taut_gamma(2, c)
        rho = taut_rho(2, c)
        for i in range(c.rank()):
            assert rho[i] == gamma.gram[i, i] % 2


def test_relation_3_4_trivial():
    assert relation_3_4_check((0,), (0,), 0, 0, (0,), 1)


def test_relation_3_4_random_and_corrupted():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(1, 3)
        chi = tuple(rng.randint(-3, 3) for _ in range(n))
        mu = tuple(rng.randint(-3, 3) for _ in range(n))
        dm, dn = rng.randint(-3, 3), rng.randint(-3, 3)
        d = tuple(rng.randint(-3, 3) for _ in range(n))
        gg = rng.choice([1, 2, 3])
        assert relation_3_4_check(chi, mu, dm, dn, d, gg)
        assert not relation_3_4_check(chi, mu, dm, dn, d, gg, corrupt=True)


def test_step1_kernel_classes_match_omega_pairing():
    # classes with vanishing form component reduce to pairings against the
    # relative dualizing sheaf: <L_chi, L_chi> - 2 d(L_chi) has the same
    # computable invariants as <L_chi, omega> - 2 d(O)
    rng = random.Random(8)
    for _ in range(40):
        n = rng.randint(1, 3)
        chi = tuple(rng.randint(-3, 3) for _ in range(n))
        g = rng.choice([1, 2, 3])
        d = tuple(rng.randint(-3, 3) for _ in range(n))
        zero = tuple(0 for _ in range(n))
        lhs = TautClass.of(det_terms=[(chi, 0, -2)],
                           pair_terms=[(chi, chi, 0, 0, 1)])
        rhs = TautClass.of(det_terms=[(zero, 0, -2)],
                           pair_terms=[(chi, zero, 0, 2 * g - 2, 1)])
        assert taut_gamma(g, lhs).gram == taut_gamma(g, rhs).gram
        assert taut_rho(g, lhs) == taut_rho(g, rhs)
        assert taut_weight(n, d, g, lhs) == taut_weight(n, d, g, rhs)
        assert base_component(lhs) == base_component(rhs)


def test_base_component_detects_constant():
    lhs = TautClass.of(pair_terms=[((1,), (0,), 2, 3, 1)])
    rhs_full = TautClass.of(det_terms=[((1,), 5, 1), ((1,), 2, -1), ((0,), 3, -1), ((0,), 0, 1)])
    rhs_cut = TautClass.of(det_terms=[((1,), 5, 1), ((1,), 2, -1), ((0,), 3, -1)])
    assert base_component(lhs) == base_component(rhs_full)
    assert base_component(lhs) != base_component(rhs_cut)


# ---------------------------------------------------------------------------
# torus, genus zero


def test_torus_genus0_d_zero_full():
    t = build_group("T(1)")
    f = family_from_preset("genus0_nontrivial")
    rep = torus_picard_genus0(t, (0,), f)
    assert rep.image_lattice == Lattice.full(1)


def test_torus_genus0_nontrivial_index_two():
    t = build_group("T(1)")
    f = family_from_preset("genus0_nontrivial")
    rep = torus_picard_genus0(t, (1,), f)
    assert rep.image_lattice == Lattice.from_columns(1, [(2,)])
    assert rep.cokernel == FGAbelianGroup.cyclic(2)


def test_torus_genus0_trivial_full():
    t = build_group("T(2)")
    f = family_from_preset("genus0_trivial")
    rep = torus_picard_genus0(t, (1, 0), f)
    assert rep.image_lattice == Lattice.full(2)


def test_torus_genus0_parity_set_matches_enumeration():
    rng = random.Random(9)
    f = family_from_preset("genus0_nontrivial")
    for _ in range(20):
        n = rng.randint(1, 3)
        t = build_group(f"T({n})")
        d = tuple(rng.randint(-4, 4) for _ in range(n))
        rep = torus_picard_genus0(t, d, f)
        for chi in product(range(-4, 5), repeat=n):
            parity_ok = sum(a * b for a, b in zip(chi, d)) % 2 == 0
            assert rep.image_lattice.contains(chi) == parity_ok


def test_torus_genus0_wrong_genus():
    t = build_group("T(1)")
    with pytest.raises(WrongGenus):
        torus_picard_genus0(t, (1,), family_from_preset("universal", 2, 0))


# ---------------------------------------------------------------------------
# torus, positive genus


def synthetic_family(genus, delta):
    return CurveFamily(genus=genus, delta=delta, end_jacobian_trivial=True,
                       rpic_surjective=True, rpic0_torsion_free=True,
                       label=f"synthetic(g={genus},delta={delta})")


def test_torus_picard_delta_one_full():
    t = build_group("T(1)")
    rep = torus_picard(t, (5,), synthetic_family(1, 1))
    assert rep.image_lattice == Lattice.full(2)
    assert rep.cokernel.is_trivial


def test_torus_picard_g2_delta2_d0():
    t = build_group("T(1)")
    rep = torus_picard(t, (0,), synthetic_family(2, 2))
    # image = {(chi, b): chi + b even}, index 2
    assert rep.image_index == 2
    assert rep.image_lattice.contains((1, 1))
    assert not rep.image_lattice.contains((1, 0))


def test_torus_picard_g3_delta4_d2():
    t = build_group("T(1)")
    rep = torus_picard(t, (2,), synthetic_family(3, 4))
    # condition 4 | chi - 2b + 2b = chi
    assert rep.image_index == 4
    assert rep.image_lattice.contains((4, 0))
    assert rep.image_lattice.contains((0, 1))
    assert not rep.image_lattice.contains((2, 0))


def test_torus_picard_image_matches_enumeration():
    rng = random.Random(31)
    for _ in range(15):
        n = rng.randint(1, 2)
        t = build_group(f"T({n})")
        g = rng.randint(1, 4)
        divisors = [d for d in range(1, 2 * g - 1) if (2 * g - 2) % d == 0] or [1]
        delta = rng.choice(divisors + ([0] if g == 1 else []))
        d = tuple(rng.randint(-3, 3) for _ in range(n))
        rep = torus_picard(t, d, synthetic_family(g, delta))
        pairs = [(i, j) for i in range(n) for j in range(i, n)]
        for _ in range(25):
            chi = tuple(rng.randint(-4, 4) for _ in range(n))
            coeffs = tuple(rng.randint(-4, 4) for _ in range(len(pairs)))
            gram = [[0] * n for _ in range(n)]
            for (i, j), cval in zip(pairs, coeffs):
                gram[i][j] = cval
                gram[j][i] = cval
            ok = True
            for x in product(range(-2, 3), repeat=n):
                bdx = sum(d[i] * gram[i][j] * x[j] for i in range(n) for j in range(n))
                bxx = sum(x[i] * gram[i][j] * x[j] for i in range(n) for j in range(n))
                val = sum(a * b for a, b in zip(chi, x)) - bdx + (g - 1) * bxx
                if (delta and val % delta) or (delta == 0 and val != 0):
                    ok = False
                    break
            assert rep.image_lattice.contains(chi + coeffs) == ok


def test_torus_picard_image_laws():
    # image contains delta * chars x {0} and projects onto all of Bil^s
    t = build_group("T(2)")
    f = synthetic_family(3, 4)
    rep = torus_picard(t, (1, 2), f)
    for i in range(2):
        chi = [0, 0]
        chi[i] = f.delta
        assert rep.image_lattice.contains(tuple(chi) + (0, 0, 0))
    # second projection surjective: every pure form lifts into the image
    for coeffs in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        found = False
        for chi in product(range(-4, 5), repeat=2):
            if rep.image_lattice.contains(tuple(chi) + coeffs):
                found = True
                break
        assert found


def test_torus_picard_functoriality_subtorus():
    # restriction of characters along T(1) -> T(2) respects the images
    f = synthetic_family(2, 2)
    rep2 = torus_picard(build_group("T(2)"), (1, 0), f)
    rep1 = torus_picard(build_group("T(1)"), (1,), f)
    # (chi1, chi2, b11, b12, b22) restricted to the first coordinate
    for chi1 in range(-3, 4):
        for b11 in range(-3, 4):
            # pick chi2/b12/b22 freely; restriction only sees (chi1, b11)
            if rep1.image_lattice.contains((chi1, b11)):
                assert any(
                    rep2.image_lattice.contains((chi1, chi2, b11, b12, b22))
                    for chi2 in range(-2, 3) for b12 in range(-2, 3) for b22 in range(-2, 3)
                )


def test_torus_picard_wrong_genus():
    with pytest.raises(WrongGenus):
        torus_picard(build_group("T(1)"), (1,), family_from_preset("genus0_trivial"))


# ---------------------------------------------------------------------------
# reductive


def test_reductive_e8_faltings():
    g = build_group("E8")
    rep = reductive_picard(g, Pi1Element.zero(g), family_from_preset("universal", 2, 1))
    assert rep.cokernel == FGAbelianGroup.free(1)
    assert rep.cokernel_generators[0].gram == basic_inner_product(SimpleType("E", 8)).gram
    assert rep.splitting_known is True


def test_reductive_gl2():
    g = build_group("GL(2)")
    rep = reductive_picard(g, Pi1Element.from_coords(g, (1,)),
                           family_from_preset("universal", 2, 1))
    assert rep.cokernel == FGAbelianGroup.free(1)
    assert rep.splitting_known is True
    assert rep.image_lattice is not None  # NS-level hypotheses hold


def test_reductive_hypothesis_failure():
    g = build_group("PGL(2)")
    with pytest.raises(HypothesisNotSatisfied) as exc:
        reductive_picard(g, Pi1Element.from_coords(g, (1,)),
                         family_from_preset("fixed_curve", 2))
    assert exc.value.theorem == "ThmB"
    assert any("torsion-free" in m for m in exc.value.missing)


def test_reductive_genus0_gl2_index_two():
    g = build_group("GL(2)")
    rep = reductive_picard(g, Pi1Element.from_coords(g, (1,)),
                           family_from_preset("genus0_nontrivial"))
    assert rep.image_index == 2
    assert rep.cokernel == FGAbelianGroup.cyclic(2)


def test_reductive_genus0_pgl2_index_two():
    g = build_group("PGL(2)")
    rep = reductive_picard(g, Pi1Element.from_coords(g, (1,)),
                           family_from_preset("genus0_nontrivial"))
    assert rep.image_index == 2


def test_reductive_genus0_sl2_surjective():
    # D(SL2) is simply connected and delta^ab = 0: the parity functional is
    # identically even, so c is onto NS Bun(P^1) (Lemma 3.15 route)
    g = build_group("SL(2)")
    rep = reductive_picard(g, Pi1Element.zero(g), family_from_preset("genus0_nontrivial"))
    assert rep.image_index == 1


def test_reductive_genus0_trivial_family_full():
    g = build_group("GL(2)")
    rep = reductive_picard(g, Pi1Element.from_coords(g, (1,)),
                           family_from_preset("genus0_trivial"))
    assert rep.image_index == 1


def test_reductive_positive_semisimple_cor_c():
    for name, t in [("SL(4)", SimpleType("A", 3)), ("Sp(6)", SimpleType("C", 3)),
                    ("Spin(7)", SimpleType("B", 3))]:
        g = build_group(name)
        rep = reductive_picard(g, Pi1Element.zero(g), family_from_preset("universal", 2, 1))
        assert rep.cokernel == FGAbelianGroup.free(1)
        assert rep.cokernel_generators[0].gram == basic_inner_product(t).gram
