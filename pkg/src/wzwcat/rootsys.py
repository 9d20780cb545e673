"""Root systems of the simple Lie types in Bourbaki numbering.

Weights are tuples of Dynkin labels, roots are tuples of coordinates in the
simple-root basis.  The symmetric form is normalized so short roots have
squared length 2; ``d[i]`` is half the squared length of the simple root
``alpha_i``, so d = 1 on short roots and d = lacing on long ones.

The Cartan matrix convention is ``a[i][j] = <alpha_i, alpha_j^vee>``.  With
that choice the Dynkin labels of a root ``sum_j c_j alpha_j`` are
``sum_j c_j a[j][i]`` and the pairing of a weight with a root is the integer
``sum_j c_j * lambda_j * d_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Weight = tuple  # Dynkin labels, ints
Root = tuple    # simple-root coordinates, ints

DIMENSION_CAP = 10_000_000

_SERIES_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 3,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


class DimensionCapError(ValueError):
    """Classical dimension of a requested representation exceeds the cap."""


def _simply_laced_edges(series: str, n: int):
    if series in ("A",):
        return [(i, i + 1) for i in range(n - 1)]
    if series == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if series == "E":
        # Bourbaki: chain 1-3-4-5-6(-7-8), node 2 hangs off node 4.
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        edges = [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
        edges.append((1, 3))
        return edges
    raise ValueError(series)


def _cartan_and_d(series: str, n: int):
    a = [[2 * (i == j) for j in range(n)] for i in range(n)]

    def bond(i, j, aij, aji):
        a[i][j] = aij
        a[j][i] = aji

    if series in ("A", "D", "E"):
        for i, j in _simply_laced_edges(series, n):
            bond(i, j, -1, -1)
        d = [1] * n
    elif series == "B":
        # long chain, short final node
        for i in range(n - 2):
            bond(i, i + 1, -1, -1)
        bond(n - 2, n - 1, -2, -1)
        d = [2] * (n - 1) + [1]
    elif series == "C":
        for i in range(n - 2):
            bond(i, i + 1, -1, -1)
        bond(n - 2, n - 1, -1, -2)
        d = [1] * (n - 1) + [2]
    elif series == "F":
        bond(0, 1, -1, -1)
        bond(1, 2, -2, -1)
        bond(2, 3, -1, -1)
        d = [2, 2, 1, 1]
    elif series == "G":
        bond(0, 1, -1, -3)
        d = [1, 3]
    else:
        raise ValueError(series)
    return tuple(tuple(r) for r in a), tuple(d)


def _positive_roots(cartan, n):
    """Closure of the simple roots under root strings, sorted by height."""
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    out = list(simple)
    while layer:
        nxt = []
        for c in layer:
            labels = [sum(c[j] * cartan[j][i] for j in range(n)) for i in range(n)]
            for i in range(n):
                # depth p of the down-string through c in direction alpha_i
                p = 0
                probe = list(c)
                while True:
                    probe[i] -= 1
                    if probe[i] < 0 or tuple(probe) not in found:
                        break
                    p += 1
                if p - labels[i] >= 1:
                    cand = list(c)
                    cand[i] += 1
                    cand = tuple(cand)
                    if cand not in found:
                        found.add(cand)
                        nxt.append(cand)
                        out.append(cand)
        layer = nxt
    out.sort(key=lambda c: (sum(c), c))
    return tuple(out)


def _invert_fraction_matrix(a):
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [[m[i][n + j] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class RootSystem:
    series: str
    rank: int
    cartan: tuple
    d: tuple
    pos_roots: tuple
    highest_root: Root
    marks: tuple
    comarks: tuple
    lacing: int
    h_dual: int
    rho: Weight
    quad_form: tuple  # <omega_i, omega_j> as Fractions
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def name(self):
        return f"{self.series}{self.rank}"

    def root_labels(self, root: Root) -> Weight:
        a = self.cartan
        return tuple(sum(root[j] * a[j][i] for j in range(self.rank))
                     for i in range(self.rank))

    def pairing(self, labels: Weight, root: Root):
        """<lambda, alpha> for a weight and a root; integer on integer labels."""
        d = self.d
        return sum(root[j] * labels[j] * d[j] for j in range(self.rank))

    def inner(self, a: Weight, b: Weight) -> Fraction:
        f = self.quad_form
        n = self.rank
        return sum(Fraction(a[i]) * f[i][j] * b[j]
                   for i in range(n) for j in range(n) if a[i] and b[j])

    def norm_plus_2rho(self, lam: Weight) -> Fraction:
        """<lambda, lambda + 2 rho>, the twist numerator."""
        shifted = tuple(x + 2 for x in lam)
        return self.inner(lam, shifted)

    def level(self, lam: Weight) -> int:
        return sum(c * x for c, x in zip(self.comarks, lam))

    def simple_reflection(self, w: Weight, i: int) -> Weight:
        wi = w[i]
        row = self.cartan[i]
        return tuple(w[j] - wi * row[j] for j in range(self.rank))


def build_root_system(series: str, rank: int) -> RootSystem:
    series = series.upper()
    if series not in _SERIES_RANK_OK or not _SERIES_RANK_OK[series](rank):
        raise ValueError(f"unsupported type {series}{rank}")
    cartan, d = _cartan_and_d(series, rank)
    pos = _positive_roots(cartan, rank)
    theta = pos[-1]
    lacing = max(d)
    comarks = []
    for i in range(rank):
        num = theta[i] * d[i]
        if num % lacing:
            raise AssertionError("comark not integral")
        comarks.append(num // lacing)
    inv = _invert_fraction_matrix(cartan)
    quad = tuple(tuple(inv[j][i] * d[i] for j in range(rank)) for i in range(rank))
    for i in range(rank):
        for j in range(rank):
            assert quad[i][j] == quad[j][i]
    return RootSystem(
        series=series,
        rank=rank,
        cartan=cartan,
        d=d,
        pos_roots=pos,
        highest_root=theta,
        marks=theta,
        comarks=tuple(comarks),
        lacing=lacing,
        h_dual=1 + sum(comarks),
        rho=(1,) * rank,
        quad_form=quad,
    )


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    num = 1
    den = 1
    shifted = tuple(x + 1 for x in lam)
    for alpha in rs.pos_roots:
        num *= rs.pairing(shifted, alpha)
        den *= rs.pairing(rs.rho, alpha)
    if num % den:
        raise AssertionError("Weyl dimension not integral")
    return num // den


def dominant(lam: Weight) -> bool:
    return all(x >= 0 for x in lam)


def dominate(rs: RootSystem, w: Weight):
    """Weyl-translate w into the dominant chamber; returns (weight, det sign)."""
    w = tuple(w)
    sign = 1
    while True:
        i = next((j for j, x in enumerate(w) if x < 0), None)
        if i is None:
            return w, sign
        w = rs.simple_reflection(w, i)
        sign = -sign


def dual_weight(rs: RootSystem, lam: Weight) -> Weight:
    """Highest weight of the dual representation, -w0(lambda)."""
    neg = tuple(-x for x in lam)
    w, _ = dominate(rs, neg)
    return w


def weight_system(rs: RootSystem, lam: Weight) -> dict:
    """Weights of the irreducible representation with multiplicities.

    Freudenthal recursion in exact integer arithmetic, descending from the
    highest weight one simple-root layer at a time.  Raises DimensionCapError
    beyond DIMENSION_CAP to keep runaway requests loud.
    """
    lam = tuple(int(x) for x in lam)
    if not dominant(lam):
        raise ValueError(f"weight system wants a dominant weight, got {lam}")
    key = ("wsys", lam)
    if key in rs._cache:
        return rs._cache[key]
    if weyl_dimension(rs, lam) > DIMENSION_CAP:
        raise DimensionCapError(f"dim {rs.name} {lam} exceeds {DIMENSION_CAP}")
    n = rs.rank
    d = rs.d
    root_data = [(tuple(c * dj for c, dj in zip(alpha, d)), rs.root_labels(alpha))
                 for alpha in rs.pos_roots]
    simple_labels = [rs.cartan[i] for i in range(n)]
    mult = {lam: 1}
    coords = {lam: (0,) * n}  # coordinates of lam - mu in the root basis
    lam2 = tuple(x + 2 for x in lam)
    layer = [lam]
    while layer:
        cands = {}
        for mu in layer:
            base = coords[mu]
            for i in range(n):
                nxt = tuple(m - s for m, s in zip(mu, simple_labels[i]))
                if nxt not in cands and nxt not in mult:
                    c = list(base)
                    c[i] += 1
                    cands[nxt] = tuple(c)
        layer = []
        for mu, cmu in cands.items():
            num = 0
            for cd, alab in root_data:
                x = tuple(m + a for m, a in zip(mu, alab))
                while x in mult:
                    num += mult[x] * sum(ci * xi for ci, xi in zip(cd, x))
                    x = tuple(m + a for m, a in zip(x, alab))
            if num == 0:
                continue
            lam_mu = tuple(a + b for a, b in zip(lam2, mu))
            den = sum(ci * di * li for ci, di, li in zip(cmu, d, lam_mu))
            if (2 * num) % den:
                raise AssertionError("Freudenthal division failed")
            mult[mu] = (2 * num) // den
            coords[mu] = cmu
            layer.append(mu)
    assert sum(mult.values()) == weyl_dimension(rs, lam)
    rs._cache[key] = mult
    return mult


def weight_multiplicity(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    return weight_system(rs, lam).get(tuple(mu), 0)


def weyl_orbit_signs(rs: RootSystem, x: Weight, cap: int = 10_000_000) -> dict:
    """Free Weyl orbit of a strictly dominant weight with det signs."""
    if any(v <= 0 for v in x):
        raise ValueError("orbit seed must be strictly dominant")
    orbit = {tuple(x): 1}
    layer = [tuple(x)]
    while layer:
        nxt = []
        for w in layer:
            s = orbit[w]
            for i in range(rs.rank):
                if w[i] == 0:
                    raise AssertionError("orbit hit a wall")
                y = rs.simple_reflection(w, i)
                if y not in orbit:
                    orbit[y] = -s
                    nxt.append(y)
                    if len(orbit) > cap:
                        raise DimensionCapError(f"Weyl orbit exceeds {cap}")
        layer = nxt
    return orbit
