"""Symmetry groups of 4-polytopes and their medial layer graphs.

A regular 4-polytope is encoded by a string C-group: four involutions
rho0..rho3 satisfying the string relations

    rho_i^2 = (rho0 rho2)^2 = (rho0 rho3)^2 = (rho1 rho3)^2 = identity,
    (rho0 rho1)^p1 = (rho1 rho2)^p2 = (rho2 rho3)^p3 = identity,       (R)

together with the intersection condition

    <rho_i : i in I> ^ <rho_i : i in J> = <rho_i : i in I^J>            (C)

for all I, J subsets of {0,1,2,3}.  A chiral (or directly regular)
polytope is encoded by its rotation group: sigma1..sigma3 with

    sigma_j^{p_j} = (s1 s2)^2 = (s2 s3)^2 = (s1 s2 s3)^2 = identity,    (R')
    <s1> ^ <s2> = 1 = <s2> ^ <s3>,  <s1,s2> ^ <s2,s3> = <s2>.           (C')

The medial layer graph has the 1-faces and 2-faces as vertices and
face incidence as adjacency; faces are realized as cosets of the standard
stabilizer subgroups and incidence as the orbit of the base coset pair
under simultaneous right multiplication by the group generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .catalog import SchlafliType
from .fpgroup import Presentation, coset_enumeration, gen_word
from .matgroup import MatrixGroup, OverflowResult, recover_reflection_codes
from .permgroup import Permutation, PermutationGroup, naive_closure

DEFAULT_ORDER_CAP = 10**5


class PolytopeValidationError(ValueError):
    """A generator system fails its defining relations or intersections."""


@dataclass(frozen=True)
class StringCGroup:
    """Validated regular-polytope generators rho0..rho3."""

    rhos: tuple[Permutation, Permutation, Permutation, Permutation]
    group: PermutationGroup
    schlafli: SchlafliType


@dataclass(frozen=True)
class RotationGroup:
    """Validated rotation generators sigma1..sigma3."""

    sigmas: tuple[Permutation, Permutation, Permutation]
    group: PermutationGroup
    schlafli: SchlafliType


def _closure_set(perms: Sequence[Permutation], limit: int) -> frozenset[Permutation]:
    if not perms:
        raise ValueError("empty generating set")
    return frozenset(naive_closure(list(perms), limit=limit))


def validate_string_cgroup(
        rhos: Sequence[Permutation],
        check_intersections: bool = True,
        limit: int = DEFAULT_ORDER_CAP) -> StringCGroup:
    """Check relations (R) and, unless disabled, intersections (C).

    The intersection condition only needs checking for proper subsets I, J
    (a full-index side intersects trivially), so the group itself is never
    enumerated here.
    """
    rhos = tuple(rhos)
    if len(rhos) != 4:
        raise PolytopeValidationError(f"need 4 generators, got {len(rhos)}")
    for i, r in enumerate(rhos):
        if r.is_identity() or (r * r) != Permutation.identity(r.degree):
            raise PolytopeValidationError(f"rho{i} is not an involution")
    for i, j in ((0, 2), (0, 3), (1, 3)):
        p = rhos[i] * rhos[j]
        if (p * p) != Permutation.identity(p.degree):
            raise PolytopeValidationError(
                f"(rho{i} rho{j})^2 != identity (commuting relation fails)")
    p1 = (rhos[0] * rhos[1]).order()
    p2 = (rhos[1] * rhos[2]).order()
    p3 = (rhos[2] * rhos[3]).order()
    if check_intersections:
        _check_intersections(rhos, range(4), limit)
    return StringCGroup(rhos, PermutationGroup(rhos), SchlafliType(p1, p2, p3))


def _check_intersections(gens: Sequence[Permutation], indices: Iterable[int],
                         limit: int) -> None:
    """Condition (C) over all pairs of proper index subsets."""
    indices = tuple(indices)
    ident = Permutation.identity(gens[0].degree)
    subsets = [frozenset(c) for k in range(len(indices))
               for c in itertools.combinations(indices, k)]
    closures: dict[frozenset, frozenset[Permutation]] = {
        frozenset(): frozenset([ident])}
    for s in subsets:
        if s:
            closures[s] = _closure_set([gens[i] for i in sorted(s)], limit)
    for I in subsets:
        for J in subsets:
            inter = closures[I] & closures[J]
            expected = closures[I & J]
            if inter != expected:
                raise PolytopeValidationError(
                    f"intersection condition fails for I={sorted(I)},"
                    f" J={sorted(J)}: |<I> ^ <J>| = {len(inter)},"
                    f" |<I^J>| = {len(expected)}")


def validate_rotation_group(
        sigmas: Sequence[Permutation],
        limit: int = DEFAULT_ORDER_CAP) -> RotationGroup:
    """Check relations (R') and intersections (C')."""
    sigmas = tuple(sigmas)
    if len(sigmas) != 3:
        raise PolytopeValidationError(f"need 3 generators, got {len(sigmas)}")
    ident = Permutation.identity(sigmas[0].degree)
    s1, s2, s3 = sigmas
    for name, w in (("(sigma1 sigma2)^2", s1 * s2),
                    ("(sigma2 sigma3)^2", s2 * s3),
                    ("(sigma1 sigma2 sigma3)^2", s1 * s2 * s3)):
        if w * w != ident:
            raise PolytopeValidationError(f"{name} != identity")
    p1, p2, p3 = (s.order() for s in sigmas)
    c1 = _closure_set([s1], limit)
    c2 = _closure_set([s2], limit)
    c3 = _closure_set([s3], limit)
    if c1 & c2 != {ident} or c2 & c3 != {ident}:
        raise PolytopeValidationError(
            "<sigma1> ^ <sigma2> or <sigma2> ^ <sigma3> is nontrivial")
    c12 = _closure_set([s1, s2], limit)
    c23 = _closure_set([s2, s3], limit)
    if c12 & c23 != c2:
        raise PolytopeValidationError(
            f"<sigma1,sigma2> ^ <sigma2,sigma3> has order {len(c12 & c23)},"
            f" expected |<sigma2>| = {len(c2)}")
    return RotationGroup(sigmas, PermutationGroup(sigmas),
                         SchlafliType(p1, p2, p3))


def reflection_recovery(
        R: RotationGroup,
        candidates: Iterable[Permutation] | None = None,
        limit: int = DEFAULT_ORDER_CAP) -> StringCGroup | None:
    """Search for an involution r with r sigma1 r = sigma1^-1 and
    r sigma2 r = sigma2^-1; when found, return the string C-group

        rho1 = r,  rho0 = sigma1 r,  rho2 = r sigma2,  rho3 = r sigma2 sigma3

    validated in full.  ``candidates`` widens the search beyond R.group
    (needed when the reflection lies outside the rotation subgroup, e.g. in
    a Cayley action of the full symmetry group); None means no recovery is
    possible, which is the expected outcome for chiral instances.
    """
    s1, s2, s3 = R.sigmas
    ident = Permutation.identity(s1.degree)
    s1i, s2i = s1.inverse(), s2.inverse()
    pool = candidates if candidates is not None else R.group.elements(limit)
    for r in pool:
        if r * r != ident or r.is_identity():
            continue
        if r * s1 * r != s1i or r * s2 * r != s2i:
            continue
        rhos = (s1 * r, r, r * s2, r * s2 * s3)
        try:
            return validate_string_cgroup(rhos, limit=limit)
        except PolytopeValidationError:
            continue
    return None


def generator_map_homomorphism(
        gens: Sequence[Permutation],
        images: Sequence[Permutation],
        limit: int = DEFAULT_ORDER_CAP) -> dict[Permutation, Permutation] | None:
    """The homomorphism <gens> -> <images> with gens[i] |-> images[i], as an
    element map, or None when the assignment does not extend to one."""
    ident = Permutation.identity(gens[0].degree)
    ident2 = Permutation.identity(images[0].degree)
    mapping = {ident: ident2}
    frontier = [(ident, ident2)]
    while frontier:
        g, h = frontier.pop()
        for a, b in zip(gens, images):
            g2, h2 = g * a, h * b
            known = mapping.get(g2)
            if known is None:
                if len(mapping) >= limit:
                    raise PolytopeValidationError(
                        f"group order exceeds limit {limit}")
                mapping[g2] = h2
                frontier.append((g2, h2))
            elif known != h2:
                return None
    return mapping


def is_directly_regular(R: RotationGroup,
                        limit: int = DEFAULT_ORDER_CAP) -> bool | str:
    """Whether the rotation group admits the involutory reflection twist

        sigma1 |-> sigma1^-1,  sigma2 |-> sigma1^2 sigma2,  sigma3 |-> sigma3

    as an automorphism NOT induced by conjugation with a group element
    (an inner twist would not enlarge the symmetry group).  Returns
    "undecided" when the group exceeds the search budget.
    """
    s1, s2, s3 = R.sigmas
    targets = [s1.inverse(), s1 * s1 * s2, s3]
    try:
        mapping = generator_map_homomorphism(R.sigmas, targets, limit)
    except PolytopeValidationError:
        return "undecided"
    if mapping is None:
        return False
    if len(set(mapping.values())) != len(mapping):
        return False
    # Involutory: applying the twist to each target must give the generator.
    for s, t in zip(R.sigmas, targets):
        if mapping[t] != s:
            return False
    # Inner check: conjugation by some group element realizing the twist.
    for h in mapping:
        hi = h.inverse()
        if all(hi * s * h == t for s, t in zip(R.sigmas, targets)):
            return False
    return True


def self_duality_test(C: StringCGroup,
                      limit: int = DEFAULT_ORDER_CAP) -> bool | str:
    """Whether rho_j |-> rho_{3-j} extends to a group automorphism."""
    try:
        mapping = generator_map_homomorphism(
            C.rhos, tuple(reversed(C.rhos)), limit)
    except PolytopeValidationError:
        return "undecided"
    if mapping is None:
        return False
    return len(set(mapping.values())) == len(mapping)


# ---------------------------------------------------------------------------
# Handles: face-coset actions feeding the medial layer graph
# ---------------------------------------------------------------------------

#: Parabolic subgroup generator indices (regular route): the stabilizer of
#: the base j-face omits rho_j.
_PARABOLIC = {0: (1, 2, 3), 1: (0, 2, 3), 2: (0, 1, 3), 3: (0, 1, 2)}


@dataclass
class PolytopeHandle:
    """Coset actions of the symmetry group on 1-faces and 2-faces.

    ``rank1_images``/``rank2_images`` hold, per group generator, the image
    list of the corresponding face-coset action; the base faces are the
    cosets of the identity and are incident by construction.
    """

    label: str
    kind: str  # "regular" | "chiral"
    schlafli: SchlafliType
    group_order: int
    rank1_images: list[list[int]]
    rank2_images: list[list[int]]
    base1: int = 0
    base2: int = 0
    cgroup: StringCGroup | None = field(default=None, repr=False)
    rotation: RotationGroup | None = field(default=None, repr=False)
    self_dual: bool | str | None = None

    def __post_init__(self):
        n1, n2 = len(self.rank1_images[0]), len(self.rank2_images[0])
        stab = 12 if self.kind == "regular" else 6
        expect1 = self.group_order // stab
        if n1 != expect1 or n2 != expect1:
            raise PolytopeValidationError(
                f"{self.label}: face counts ({n1}, {n2}) inconsistent with"
                f" group order {self.group_order} and stabilizer order {stab}")

    @property
    def n_vertices(self) -> int:
        return len(self.rank1_images[0]) + len(self.rank2_images[0])


def handle_from_presentation(
        pres: Presentation,
        label: str,
        max_cosets: int = 10**7,
        time_budget: float | None = None,
        validate_cap: int = 5000) -> PolytopeHandle:
    """Regular route: enumerate the group and the two face-coset actions.

    Full relation + intersection validation runs when the group order is at
    most ``validate_cap``; larger groups get relation checks via the face
    actions only (the coset postconditions still apply).
    """
    full = coset_enumeration(pres, (), max_cosets=max_cosets,
                             time_budget=time_budget)
    if not full.is_complete:
        raise OverflowResult(f"{label}: group enumeration overflow"
                             f" ({full.reason})")
    order = full.num_cosets
    tables = {}
    for rank in (1, 2):
        sub = [gen_word(i) for i in _PARABOLIC[rank]]
        tables[rank] = coset_enumeration(pres, sub, max_cosets=max_cosets,
                                         time_budget=time_budget)
        if not tables[rank].is_complete:
            raise OverflowResult(
                f"{label}: rank-{rank} face enumeration overflow"
                f" ({tables[rank].reason})")
    cgroup = None
    if order <= validate_cap:
        rhos = full.generator_permutations()
        cgroup = validate_string_cgroup(rhos, limit=max(order, 1) + 1)
        schlafli = cgroup.schlafli
    else:
        perms1 = tables[1].generator_permutations()
        schlafli = SchlafliType((perms1[0] * perms1[1]).order(),
                                (perms1[1] * perms1[2]).order(),
                                (perms1[2] * perms1[3]).order())
    handle = PolytopeHandle(
        label=label, kind="regular", schlafli=schlafli, group_order=order,
        rank1_images=[p.images.tolist()
                      for p in tables[1].generator_permutations()],
        rank2_images=[p.images.tolist()
                      for p in tables[2].generator_permutations()],
        cgroup=cgroup)
    if cgroup is not None:
        handle.self_dual = self_duality_test(cgroup)
    if order <= 2000:
        _diamond_check(pres, order, max_cosets, label)
    return handle


def _diamond_check(pres: Presentation, order: int, max_cosets: int,
                   label: str) -> None:
    """Small-instance sanity gate: between any two incident faces two ranks
    apart there are exactly 2 intermediate faces, and every 1-face (2-face)
    lies in exactly 2 vertices (cells, respectively)."""
    actions = {}
    for rank in range(4):
        sub = [gen_word(i) for i in _PARABOLIC[rank]]
        t = coset_enumeration(pres, sub, max_cosets=max_cosets)
        actions[rank] = [p.images.tolist() for p in t.generator_permutations()]

    def incidence(r1: int, r2: int) -> set[tuple[int, int]]:
        return _pair_orbit(actions[r1], actions[r2], 0, 0)

    inc = {(a, b): incidence(a, b)
           for a, b in ((0, 1), (1, 2), (2, 3), (0, 2), (1, 3))}
    for low, mid, high in ((0, 1, 2), (1, 2, 3)):
        below = {}
        for f, g in inc[(low, mid)]:
            below.setdefault(g, set()).add(f)
        above = {}
        for g, h in inc[(mid, high)]:
            above.setdefault(g, set()).add(h)
        for f, h in inc[(low, high)]:
            middles = sum(1 for g in range(len(actions[mid][0]))
                          if f in below.get(g, ()) and h in above.get(g, ()))
            if middles != 2:
                raise PolytopeValidationError(
                    f"{label}: diamond condition fails between ranks"
                    f" {low} and {high}: {middles} middle faces")
    for rank, neighbor in ((1, 0), (2, 3)):
        key = (neighbor, rank) if neighbor < rank else (rank, neighbor)
        counts: dict[int, int] = {}
        for pair in inc[key]:
            f = pair[0] if key == (rank, neighbor) else pair[1]
            counts[f] = counts.get(f, 0) + 1
        if set(counts.values()) != {2}:
            raise PolytopeValidationError(
                f"{label}: rank-{rank} faces do not have exactly 2 incident"
                f" rank-{neighbor} faces")


def handle_from_matrix_group(mg: MatrixGroup, label: str | None = None) -> PolytopeHandle:
    """Eisenstein route: face-coset actions computed on matrix elements.

    Regular instances first recover the four reflections; failure to do so
    is an error (the full symmetry group would not be reachable from the
    rotations alone).  Chiral instances use the rotation stabilizers.
    """
    if label is None:
        label = f"eisenstein m={mg.modulus}"
    if mg.kind == "regular":
        rhos = recover_reflection_codes(mg)
        if rhos is None:
            raise PolytopeValidationError(
                f"{label}: no reflection recovery in a regular instance")
        gens = rhos
        sub1 = mg.subgroup_codes([rhos[0], rhos[2], rhos[3]])
        sub2 = mg.subgroup_codes([rhos[0], rhos[1], rhos[3]])
    else:
        s1, s2, s3 = mg.sigma_codes
        gens = mg.sigma_codes
        sub1 = mg.subgroup_codes([mg.multiply(s1, s2), s3])
        sub2 = mg.subgroup_codes([s1, mg.multiply(s2, s3)])
    act1, base1 = mg.coset_action(sub1, gens)
    act2, base2 = mg.coset_action(sub2, gens)
    cgroup = None
    if mg.kind == "regular" and mg.order <= 5000:
        cgroup = validate_string_cgroup(mg.code_permutations(rhos),
                                        limit=mg.order + 1)
    handle = PolytopeHandle(
        label=label, kind=mg.kind, schlafli=SchlafliType(3, 6, 3),
        group_order=mg.order,
        rank1_images=act1, rank2_images=act2, base1=base1, base2=base2,
        cgroup=cgroup)
    if cgroup is not None:
        handle.self_dual = self_duality_test(cgroup)
    return handle


def _pair_orbit(images1: Sequence[Sequence[int]],
                images2: Sequence[Sequence[int]],
                base1: int, base2: int) -> set[tuple[int, int]]:
    """Orbit of the base pair under simultaneous generator action."""
    seen = {(base1, base2)}
    stack = [(base1, base2)]
    while stack:
        x, y = stack.pop()
        for g1, g2 in zip(images1, images2):
            p = (g1[x], g2[y])
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def medial_layer_graph(handle: PolytopeHandle):
    """The bipartite cubic incidence graph of 1-faces (type 1) and 2-faces
    (type 2), with 2-face vertices numbered after the 1-face block."""
    from . import graphsym

    n1 = len(handle.rank1_images[0])
    n2 = len(handle.rank2_images[0])
    pairs = _pair_orbit(handle.rank1_images, handle.rank2_images,
                        handle.base1, handle.base2)
    neighbors: list[list[int]] = [[] for _ in range(n1 + n2)]
    for x, y in pairs:
        neighbors[x].append(n1 + y)
        neighbors[n1 + y].append(x)
    types = [1] * n1 + [2] * n2
    try:
        graph = graphsym.validate(neighbors, types)
    except graphsym.GraphError as exc:
        raise PolytopeValidationError(
            f"{handle.label}: medial construction inconsistent: {exc}") from exc
    base_edge = (handle.base1, n1 + handle.base2)
    if not _has_cycle_through(graph, base_edge, 2 * handle.schlafli.p2):
        raise PolytopeValidationError(
            f"{handle.label}: no {2 * handle.schlafli.p2}-cycle through the"
            " base edge")
    return graph


def _has_cycle_through(graph, edge: tuple[int, int], length: int) -> bool:
    """Whether a simple cycle of the given length passes through the edge."""
    u, v = edge
    target = length - 1

    def dfs(current: int, depth: int, visited: set[int]) -> bool:
        if depth == target:
            return current == u
        for w in graph.adj[current]:
            w = int(w)
            if w == u and depth + 1 == target:
                return True
            if w not in visited and w != u:
                if dfs(w, depth + 1, visited | {w}):
                    return True
        return False

    return dfs(v, 0, {v})
