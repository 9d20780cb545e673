"""Local modules over the regular algebra of a Tannakian current subgroup.

A weight orbit under the subgroup H supports local modules exactly when the
exact twist angle is constant along the orbit (monodromy test; current-fixed
weights pass trivially).  A free orbit of size |H| gives one simple; an orbit
with stabilizer of order s splits into s simples of equal dimension.  Data of
individual split pieces beyond dimension and twist (fixed-point resolution)
is deliberately out of scope; aggregate quantities never need it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .currents import CurrentGroup
from .modular import ModularData, RationalAngle

_POINTED_TOL = 1e-6


@dataclass(frozen=True)
class LocalSimple:
    orbit: tuple          # alcove indices, sorted
    rep: int              # smallest index in the orbit
    qdim: float           # dimension of this piece
    twist: RationalAngle
    split: int            # number of pieces over this orbit (= stabilizer order)
    piece: int            # 0 .. split-1


class LocalCategoryData:
    """Census of the modular category of local modules C(g,k)_R^0."""

    def __init__(self, md: ModularData, subgroup=None, currents=None):
        self.md = md
        self.currents = currents if currents is not None else CurrentGroup(md)
        if subgroup is None:
            subgroup = self.currents.maximal_tannakian()
        subgroup = tuple(sorted(subgroup))
        cg = self.currents
        if any(j not in cg.indices for j in subgroup):
            raise ValueError("subgroup contains non-invertible indices")
        if any(cg.product(a, b) not in subgroup
               for a in subgroup for b in subgroup):
            raise ValueError("subgroup is not closed under fusion")
        bad = [j for j in subgroup if not cg.twist(j).is_trivial]
        if bad:
            raise ValueError(f"subgroup is not Tannakian; twists != 1 at {bad}")
        self.subgroup = subgroup
        self._build()

    def _build(self):
        md, cg, sub = self.md, self.currents, self.subgroup
        seen = [False] * md.rank
        orbits, local_orbits = [], []
        for i in range(md.rank):
            if seen[i]:
                continue
            orb = cg.orbit(sub, i)
            for x in orb:
                seen[x] = True
            orbits.append(orb)
            if len({md.twists[x] for x in orb}) == 1:
                local_orbits.append(orb)
        self.orbits = tuple(orbits)
        self.local_orbits = tuple(local_orbits)
        simples = []
        for orb in local_orbits:
            split = len(sub) // len(orb)
            rep = orb[0]
            d = float(md.qdims[rep]) / split
            for piece in range(split):
                simples.append(LocalSimple(orb, rep, d, md.twists[rep],
                                           split, piece))
        self.simples = tuple(simples)

    @property
    def subgroup_order(self) -> int:
        return len(self.subgroup)

    @property
    def local_weight_count(self) -> int:
        return sum(len(o) for o in self.local_orbits)

    @property
    def rank(self) -> int:
        return len(self.simples)

    @property
    def qdims(self):
        return [s.qdim for s in self.simples]

    @property
    def twists(self):
        return [s.twist for s in self.simples]

    @property
    def global_dim(self) -> float:
        return self.md.global_dim / self.subgroup_order ** 2

    @property
    def closure_residual(self) -> float:
        """Relative defect of sum(d^2) against dim(C)/|H|^2."""
        total = sum(d * d for d in self.qdims)
        return abs(total - self.global_dim) / self.global_dim

    @property
    def pointed_indices(self) -> tuple:
        return tuple(i for i, s in enumerate(self.simples)
                     if abs(s.qdim - 1.0) < _POINTED_TOL)

    @property
    def pointed_rank(self) -> int:
        return len(self.pointed_indices)

    def _free_invertible_reps(self):
        """Alcove reps of invertible local simples coming from free orbits."""
        reps, split_pieces = [], 0
        for i in self.pointed_indices:
            s = self.simples[i]
            if s.split == 1:
                reps.append(s.rep)
            else:
                split_pieces += 1
        return reps, split_pieces

    def pointed_part(self) -> dict:
        """Group structure and twists of the invertible simples.

        Free invertibles multiply through free_fusion.  Split pieces cannot
        be multiplied individually here, so when any occur the structure is
        deduced from the order and the twist quadratic form; None means the
        deduction was inconclusive.
        """
        idxs = self.pointed_indices
        twists = tuple(sorted(self.simples[i].twist.t for i in idxs))
        _, split_pieces = self._free_invertible_reps()
        if split_pieces == 0:
            structure = self._free_pointed_structure(idxs)
        else:
            structure = _deduce_abelian_structure(len(idxs), twists)
        return {"rank": len(idxs), "structure": structure, "twists": twists}

    def _free_pointed_structure(self, idxs) -> tuple:
        reps = [self.simples[i].rep for i in idxs]

        def mul(x, y):
            prod = self.free_fusion(x, y)
            assert len(prod) == 1 and next(iter(prod.values())) == 1
            return next(iter(prod))

        orders = []
        for r in reps:
            n, cur = 1, r
            while cur != 0:
                cur = mul(cur, r)
                n += 1
            orders.append(n)
        return _invariant_factors(len(idxs), orders)

    def monodromy(self, current_rep: int, simple: LocalSimple) -> RationalAngle:
        """Double-braiding scalar of an invertible free module with a simple,
        from exact twists: theta(J.mu)/theta(J)theta(mu)."""
        md = self.md
        act = self.currents.actions[current_rep]
        target = act[simple.rep]
        return (md.twists[target]
                / md.twists[current_rep] / md.twists[simple.rep])

    def adjoint_rank(self) -> int:
        """Rank of the trivial component of the grading by invertibles.

        Counts simples whose monodromy with every invertible is trivial.
        Split pieces inherit their orbit's monodromy scalar.  Raises if some
        invertible is itself a split piece, since grading by those would need
        fixed-point resolution.
        """
        reps, split_pieces = self._free_invertible_reps()
        if split_pieces:
            raise ValueError("pointed part contains split pieces; "
                             "orbit-level grading is not resolvable")
        count = 0
        for s in self.simples:
            if all(self.monodromy(j, s).is_trivial for j in reps):
                count += 1
        return count

    def self_dual_count(self) -> int:
        """Simples fixed by duality at orbit level; split pieces count with
        their orbit (equal-split convention)."""
        alc = self.md.alcove
        count = 0
        for s in self.simples:
            dual_orbit = tuple(sorted(alc.dual_index(x) for x in s.orbit))
            if dual_orbit == s.orbit:
                count += 1
        return count

    def free_fusion(self, a: int, b: int) -> dict:
        """Aggregate product of two free modules, {orbit rep: multiplicity}.

        a and b are alcove indices whose H-stabilizers must be trivial.
        The free-module functor is monoidal, so the multiplicity of the
        modules over the orbit of nu -- summed across the split pieces
        when the target orbit has a stabilizer -- is the plain fusion
        number summed over the orbit, scaled by the stabilizer order.
        """
        cg, md = self.currents, self.md
        for x in (a, b):
            if cg.stabilizer_order(self.subgroup, x) != 1:
                raise ValueError(
                    "free_fusion needs weights with trivial stabilizer")
        rep_of, stab_of = {}, {}
        for orb in self.orbits:
            s = len(self.subgroup) // len(orb)
            for x in orb:
                rep_of[x] = orb[0]
                stab_of[x] = s
        from .fusion import fuse_weights
        out = {}
        prod = fuse_weights(md.alcove, md.weights[a], md.weights[b])
        for nu, c in prod.items():
            i = md.alcove.index[nu]
            out[rep_of[i]] = out.get(rep_of[i], 0) + c * stab_of[i]
        return {r: c for r, c in sorted(out.items())}

    def census(self) -> dict:
        """Plain serializable summary."""
        md = self.md
        return {
            "subgroup": [list(md.weights[j]) for j in self.subgroup],
            "subgroup_order": self.subgroup_order,
            "local_weight_count": self.local_weight_count,
            "rank": self.rank,
            "pointed_rank": self.pointed_rank,
            "global_dim": self.global_dim,
            "closure_residual": self.closure_residual,
            "simples": [
                {
                    "orbit": [list(md.weights[x]) for x in s.orbit],
                    "qdim": s.qdim,
                    "twist": [s.twist.t.numerator, s.twist.t.denominator],
                    "split": s.split,
                    "piece": s.piece,
                }
                for s in self.simples
            ],
        }


def _invariant_factors(n: int, orders) -> tuple:
    """Invariant factors of a small abelian group from its element orders."""
    if n == 1:
        return ()
    m = max(orders)
    if m == n:
        return (n,)
    if n == 4 and m == 2:
        return (2, 2)
    if n == 8 and m == 2:
        return (2, 2, 2)
    if n == 8 and m == 4:
        return (4, 2)
    if n == 9 and m == 3:
        return (3, 3)
    raise NotImplementedError(f"order-{n} group with exponent {m}")


def _deduce_abelian_structure(n: int, twists) -> tuple | None:
    """Best-effort structure of a pointed part that contains split pieces.

    The twist is a quadratic form q on the group: q(m*x) = m^2 q(x).  For
    order 4 that pins the multiset {0, t, 4t, t} for a Z/4 generator t,
    which is enough to separate Z/4 from Z/2 x Z/2 in the cases in scope.
    """
    if n == 1:
        return ()
    if n in (2, 3, 5, 7):
        return (n,)
    if n == 4:
        observed = sorted(Fraction(t) % 2 for t in twists)
        for t in observed:
            if t == 0:
                continue
            if sorted([Fraction(0), t, (4 * t) % 2, (9 * t) % 2]) == observed:
                return None  # Z/4 consistent; cannot decide here
        return (2, 2)
    return None


def local_category(series: str, rank: int, k: int,
                   subgroup=None) -> LocalCategoryData:
    return LocalCategoryData(ModularData(series, rank, k), subgroup=subgroup)
