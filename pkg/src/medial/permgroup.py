"""Permutation groups on finite domains.

Backed by numpy image arrays and a deterministic Schreier-Sims stabilizer
chain (base points chosen in ascending domain order, or as prescribed).
Provides exact orders, membership, orbits on points and tuples, and
pointwise stabilizers.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


class Permutation:
    """A permutation of {0, ..., n-1}, stored as its image array."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int] | np.ndarray):
        arr = np.asarray(images, dtype=np.int32)
        self.images = arr
        self.images.setflags(write=False)
        self._hash: int | None = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n, dtype=np.int32))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = np.arange(n, dtype=np.int32)
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return int(self.images[point])

    def __mul__(self, other: "Permutation") -> "Permutation":
        """self * other: apply self first, then other."""
        return Permutation(other.images[self.images])

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(len(self.images), dtype=np.int32)
        return Permutation(inv)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(len(self.images))))

    def is_valid(self) -> bool:
        return bool(np.array_equal(np.sort(self.images), np.arange(len(self.images))))

    def apply_tuple(self, points: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(int(self.images[p]) for p in points)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.images, other.images)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images.tobytes())
        return self._hash

    def order(self) -> int:
        seen = np.zeros(self.degree, dtype=bool)
        result = 1
        for start in range(self.degree):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = int(self.images[x])
                length += 1
            result = _lcm(result, length)
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = int(self.images[x])
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def one_line(self) -> str:
        return "[" + " ".join(map(str, self.images.tolist())) + "]"

    def __repr__(self) -> str:
        return f"Permutation{self.cycle_string()}"


def _lcm(a: int, b: int) -> int:
    import math

    return a * b // math.gcd(a, b)


class _ChainLevel:
    """One level of a stabilizer chain: base point, orbit and transversal."""

    __slots__ = ("base", "orbit", "transversal", "gens")

    def __init__(self, base: int, gens: list[Permutation], n: int):
        self.base = base
        self.gens = gens
        self.orbit: dict[int, None] = {base: None}
        self.transversal: dict[int, Permutation] = {base: Permutation.identity(n)}
        self.extend_orbit(gens)

    def extend_orbit(self, new_gens: list[Permutation]) -> list[int]:
        added = []
        frontier = list(self.orbit)
        gens = self.gens
        while frontier:
            nxt = []
            for p in frontier:
                t = self.transversal[p]
                for g in gens:
                    q = g(p)
                    if q not in self.orbit:
                        self.orbit[q] = None
                        self.transversal[q] = t * g
                        nxt.append(q)
                        added.append(q)
            frontier = nxt
        return added


class PermutationGroup:
    """Group generated by permutations, with a lazily built stabilizer chain."""

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None,
                 base: Sequence[int] = ()):  # base: prescribed prefix of base points
        gens = [g for g in generators if not g.is_identity()]
        if degree is None:
            if not generators:
                raise ValueError("degree required for a trivial group with no generators")
            degree = generators[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("generators act on different domains")
        self.degree = degree
        self.generators = gens
        self._base_prefix = list(base)
        self._levels: list[_ChainLevel] | None = None

    # -- stabilizer chain ----------------------------------------------------

    def _build_chain(self) -> list[_ChainLevel]:
        if self._levels is not None:
            return self._levels
        n = self.degree
        levels: list[_ChainLevel] = []
        gens = list(self.generators)
        prescribed = list(self._base_prefix)

        def next_base(current_gens: list[Permutation]) -> int | None:
            # Prescribed points become base points unconditionally and in
            # order, so a prescribed prefix maps onto a chain prefix (needed
            # by pointwise_stabilizer and transporter).
            if prescribed:
                return prescribed.pop(0)
            for b in range(n):
                if any(g(b) != b for g in current_gens):
                    return b
            return None

        def sift(levels_from: int, g: Permutation) -> Permutation | None:
            """Reduce g through levels; None when g sifts to identity."""
            h = g
            for lvl in levels[levels_from:]:
                img = h(lvl.base)
                if img not in lvl.orbit:
                    return h
                h = h * lvl.transversal[img].inverse()
            return None if h.is_identity() else h

        def add_generator(idx: int, g: Permutation) -> None:
            # Incremental Schreier-Sims: add g at level idx, close with
            # Schreier generators.
            if idx == len(levels):
                b = next_base([g])
                assert b is not None
                levels.append(_ChainLevel(b, [g], n))
                lvl = levels[idx]
                new_pts = list(lvl.orbit)
            else:
                lvl = levels[idx]
                lvl.gens.append(g)
                new_pts = lvl.extend_orbit(lvl.gens)
                # Old orbit points also yield new Schreier generators with g.
                new_pairs = [(p, h) for p in lvl.orbit for h in (g,)]
                for p, h in new_pairs:
                    _schreier(idx, p, h)
            for p in new_pts:
                for h in lvl.gens:
                    _schreier(idx, p, h)

        def _schreier(idx: int, p: int, g: Permutation) -> None:
            lvl = levels[idx]
            u = lvl.transversal[p]
            q = g(p)
            sg = u * g * lvl.transversal[q].inverse()
            rest = sift(idx + 1, sg)
            if rest is not None:
                add_generator(idx + 1, rest)

        for g in gens:
            rest = sift(0, g)
            if rest is not None:
                add_generator(0, rest)
        self._levels = levels
        return levels

    # -- queries ---------------------------------------------------------

    def order(self) -> int:
        result = 1
        for lvl in self._build_chain():
            result *= len(lvl.orbit)
        return result

    def base(self) -> list[int]:
        return [lvl.base for lvl in self._build_chain()]

    def __contains__(self, g: Permutation) -> bool:
        return self.is_member(g)

    def is_member(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        h = g
        for lvl in self._build_chain():
            img = h(lvl.base)
            if img not in lvl.orbit:
                return False
            h = h * lvl.transversal[img].inverse()
        return h.is_identity()

    def orbit(self, seed) -> set:
        """Orbit of a point or tuple of points under the group."""
        if isinstance(seed, int) or isinstance(seed, np.integer):
            return self._point_orbit(int(seed))
        return self.tuple_orbit(tuple(seed))

    def _point_orbit(self, p: int) -> set[int]:
        seen = {p}
        frontier = [p]
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                y = g(x)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    def tuple_orbit(self, seed: tuple[int, ...]) -> set[tuple[int, ...]]:
        seen = {seed}
        frontier = [seed]
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                y = g.apply_tuple(x)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    def orbits_count(self, seeds: Iterable) -> int:
        remaining = [s if isinstance(s, tuple) else int(s) for s in seeds]
        count = 0
        covered: set = set()
        for s in remaining:
            if s in covered:
                continue
            count += 1
            covered |= self.orbit(s) if isinstance(s, tuple) else self._point_orbit(s)
        return count

    def point_orbits(self) -> list[set[int]]:
        out = []
        covered: set[int] = set()
        for p in range(self.degree):
            if p in covered:
                continue
            orb = self._point_orbit(p)
            covered |= orb
            out.append(orb)
        return out

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermutationGroup":
        """Subgroup fixing each listed point."""
        pts = list(points)
        sub = PermutationGroup(self.generators, degree=self.degree, base=pts)
        levels = sub._build_chain()
        # Descend past the levels whose base points are among the fixed ones.
        idx = 0
        for lvl in levels:
            if lvl.base in pts:
                idx += 1
            else:
                break
        if idx == len(levels):
            gens: list[Permutation] = []
        else:
            gens = levels[idx].gens
        stab = PermutationGroup(gens, degree=self.degree)
        return stab

    def prefix_stabilizer_orders(self, points: Sequence[int]) -> list[int]:
        """Orders of the pointwise stabilizers of points[:k] for k = 0..len,
        from a single chain built with the points as a prescribed base."""
        pts = list(points)
        sub = PermutationGroup(self.generators, degree=self.degree, base=pts)
        levels = sub._build_chain()
        cur = sub.order()
        orders = [cur]
        for k in range(len(pts)):
            if k < len(levels) and levels[k].base == pts[k]:
                cur //= len(levels[k].orbit)
            orders.append(cur)
        return orders

    def elements(self, limit: int = 100000) -> list[Permutation]:
        """All elements, via the chain; raises when the order exceeds limit."""
        if self.order() > limit:
            raise ValueError(f"group order {self.order()} exceeds limit {limit}")
        # g = s * t with s in the stabilizer (deeper levels) and t a
        # transversal element of the current level, composing left-to-right.
        result = [Permutation.identity(self.degree)]
        for lvl in reversed(self._build_chain()):
            result = [r * t for r in result for t in lvl.transversal.values()]
        return result

    def transporter(self, src: tuple[int, ...], dst: tuple[int, ...]) -> Permutation | None:
        """Some g in the group with src[i]^g = dst[i] for all i, or None."""
        sub = PermutationGroup(self.generators, degree=self.degree, base=list(src))
        return _transporter_search(sub._build_chain(), self.degree, list(src), list(dst))


def _transporter_search(levels: list[_ChainLevel], n: int,
                        src: list[int], dst: list[int]) -> Permutation | None:
    """Backtracking over a chain built with base prefix src."""

    def rec(idx: int, g: Permutation) -> Permutation | None:
        if idx == len(src):
            return g
        p, want = src[idx], dst[idx]
        if idx >= len(levels):
            # Stabilizer of the earlier points is trivial from here on.
            return rec(idx + 1, g) if g(p) == want else None
        lvl = levels[idx]
        assert lvl.base == p
        for q in lvl.orbit:
            if g(q) == want:
                found = rec(idx + 1, lvl.transversal[q] * g)
                if found is not None:
                    return found
        return None

    return rec(0, Permutation.identity(n))


def naive_closure(generators: Sequence[Permutation], limit: int = 2000000) -> list[Permutation]:
    """Brute-force closure; the oracle against which chain orders are checked."""
    if not generators:
        return []
    n = generators[0].degree
    ident = Permutation.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        x = frontier.pop()
        for g in generators:
            y = x * g
            if y not in seen:
                if len(seen) >= limit:
                    raise ValueError("closure exceeds limit")
                seen.add(y)
                frontier.append(y)
    return sorted(seen, key=lambda p: p.images.tobytes())
