"""String C-group / rotation-group validation, reflection recovery,
direct regularity, self-duality, and medial-graph construction."""

import pytest

from medial.catalog import (
    ToroidalParams,
    coxeter_string,
    universal_locally_toroidal,
)
from medial.eisenstein import parse_eisenstein
from medial.fpgroup import coset_enumeration
from medial.matgroup import generate_group
from medial.permgroup import Permutation
from medial.polytope import (
    PolytopeValidationError,
    handle_from_matrix_group,
    handle_from_presentation,
    is_directly_regular,
    medial_layer_graph,
    reflection_recovery,
    self_duality_test,
    validate_rotation_group,
    validate_string_cgroup,
)

CHIRAL_M = parse_eisenstein("1-w") * parse_eisenstein("1+3w")


def simplex_rhos():
    table = coset_enumeration(coxeter_string(3, 3, 3))
    return table.generator_permutations()


def universal_rhos(s, t):
    pres = universal_locally_toroidal(ToroidalParams(*s), ToroidalParams(*t))
    return coset_enumeration(pres).generator_permutations()


def test_simplex_cgroup_valid():
    c = validate_string_cgroup(simplex_rhos())
    assert (c.schlafli.p1, c.schlafli.p2, c.schlafli.p3) == (3, 3, 3)
    assert c.group.order() == 120


def test_universal_54_cgroup_valid():
    c = validate_string_cgroup(universal_rhos((1, 1), (3, 0)))
    assert (c.schlafli.p1, c.schlafli.p2, c.schlafli.p3) == (3, 6, 3)
    assert c.group.order() == 324


def test_commuting_relation_violation_rejected():
    rhos = simplex_rhos()
    # Swapping rho2 into rho1's slot breaks (rho0 rho2)^2 = identity.
    broken = (rhos[0], rhos[2], rhos[1], rhos[3])
    with pytest.raises(PolytopeValidationError, match="rho0 rho"):
        validate_string_cgroup(broken)


def test_non_involution_rejected():
    rhos = simplex_rhos()
    broken = (rhos[0] * rhos[1], rhos[1], rhos[2], rhos[3])
    with pytest.raises(PolytopeValidationError, match="involution"):
        validate_string_cgroup(broken)


def test_intersection_condition_failure_detected():
    # Z2^4 on disjoint transpositions satisfies all string relations
    # (everything commutes, p_i = 2) and the intersection condition, but
    # breaking independence by repeating a generator must be caught.
    a = Permutation.from_cycles(8, [(0, 1)])
    b = Permutation.from_cycles(8, [(2, 3)])
    c = Permutation.from_cycles(8, [(4, 5)])
    validate_string_cgroup((a, b, c, Permutation.from_cycles(8, [(6, 7)])))
    with pytest.raises(PolytopeValidationError, match="intersection"):
        validate_string_cgroup((a, b, c, a))


def simplex_sigmas():
    rhos = simplex_rhos()
    return (rhos[0] * rhos[1], rhos[1] * rhos[2], rhos[2] * rhos[3])


def test_simplex_rotation_group_valid():
    r = validate_rotation_group(simplex_sigmas())
    assert (r.schlafli.p1, r.schlafli.p2, r.schlafli.p3) == (3, 3, 3)
    assert r.group.order() == 60


def test_eisenstein_sigmas_valid():
    for m, p in ((parse_eisenstein("3"), (3, 6, 3)),
                 (CHIRAL_M, (3, 6, 3))):
        mg = generate_group(m)
        r = validate_rotation_group(mg.sigma_permutations())
        assert (r.schlafli.p1, r.schlafli.p2, r.schlafli.p3) == p


def test_degenerate_rotation_input_rejected():
    # Transpositions of S3 extended trivially: (s1 s2 s3)^2 != identity.
    s1 = Permutation.from_cycles(3, [(0, 1)])
    s2 = Permutation.from_cycles(3, [(1, 2)])
    s3 = Permutation.from_cycles(3, [(0, 2)])
    with pytest.raises(PolytopeValidationError):
        validate_rotation_group((s1, s2, s3))


def test_reflection_recovery_in_full_cayley_group():
    mg = generate_group(parse_eisenstein("3"))
    sigmas = mg.sigma_permutations()
    r = validate_rotation_group(sigmas)
    # The reflection lies outside the rotation subgroup; searching only
    # there must fail, searching the full Cayley action must succeed.
    assert reflection_recovery(r) is None
    ambient = mg.cayley_group().elements(limit=400)
    c = reflection_recovery(r, candidates=ambient)
    assert c is not None
    assert c.group.order() == 324
    assert (c.schlafli.p1, c.schlafli.p2, c.schlafli.p3) == (3, 6, 3)


def test_directly_regular_simplex_true():
    assert is_directly_regular(validate_rotation_group(simplex_sigmas())) is True


def test_directly_regular_eisenstein_regular_true():
    # The reflection twist exists and is outer (conjugation-linear).
    mg = generate_group(parse_eisenstein("3"))
    r = validate_rotation_group(mg.sigma_permutations())
    assert is_directly_regular(r) is True


def test_directly_regular_chiral_false():
    mg = generate_group(CHIRAL_M)
    r = validate_rotation_group(mg.sigma_permutations())
    assert is_directly_regular(r) is False


def test_self_duality():
    assert self_duality_test(
        validate_string_cgroup(universal_rhos((1, 1), (1, 1)))) is True
    assert self_duality_test(
        validate_string_cgroup(universal_rhos((1, 1), (3, 0)))) is False
    assert self_duality_test(validate_string_cgroup(simplex_rhos())) is True


@pytest.mark.parametrize("s,t,order,n", [
    ((1, 1), (1, 1), 108, 18),
    ((1, 1), (3, 0), 324, 54),
    ((2, 0), (2, 0), 240, 40),
])
def test_presentation_handles(s, t, order, n):
    pres = universal_locally_toroidal(ToroidalParams(*s), ToroidalParams(*t))
    h = handle_from_presentation(pres, f"{s}-{t}")
    assert h.group_order == order
    assert h.kind == "regular"
    g = medial_layer_graph(h)
    assert g.n == n
    assert g.n == 2 * order // 12


def test_matrix_handles_regular_and_chiral():
    h = handle_from_matrix_group(generate_group(parse_eisenstein("3")))
    assert (h.kind, h.group_order) == ("regular", 324)
    assert h.self_dual is False
    assert medial_layer_graph(h).n == 54

    h = handle_from_matrix_group(generate_group(CHIRAL_M))
    assert (h.kind, h.group_order) == ("chiral", 2016)
    g = medial_layer_graph(h)
    assert g.n == 672
    assert g.n == 2 * 2016 // 6


def test_two_pipelines_agree_on_54_vertex_graph():
    from medial.graphsym import is_isomorphic
    pres = universal_locally_toroidal(ToroidalParams(1, 1), ToroidalParams(3, 0))
    g1 = medial_layer_graph(handle_from_presentation(pres, "p"))
    g2 = medial_layer_graph(
        handle_from_matrix_group(generate_group(parse_eisenstein("3"))))
    ok, witness = is_isomorphic(g1, g2)
    assert ok and witness is not None
