"""Integer matrix group infrastructure for congruence subgroups.

Elements are integer 2x2 matrices [[a,b],[c,d]] with det = e >= 1,
representing the real matrix e^{-1/2}*[[a,b],[c,d]] in SL2(R).  Ordinary
elements have e = 1; Atkin-Lehner elements of Gamma0(N)+ have e || N.
Everything is projective: g and -g are the same motion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd


def _igcd(*xs: int) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


@dataclass(frozen=True, order=True)
class GroupElement:
    a: int
    b: int
    c: int
    d: int
    e: int = 1

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("scale e must be a positive integer")
        if self.a * self.d - self.b * self.c != self.e:
            raise ValueError(
                f"determinant {self.a * self.d - self.b * self.c} != e = {self.e}"
            )

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def identity() -> "GroupElement":
        return GroupElement(1, 0, 0, 1)

    @staticmethod
    def from_row(row) -> "GroupElement":
        a, b, c, d = row[:4]
        e = row[4] if len(row) > 4 else 1
        return GroupElement(a, b, c, d, e)

    def reduced(self) -> "GroupElement":
        """Divide out the content; (t*M, t^2*e) and (M, e) are the same motion."""
        t = _igcd(self.a, self.b, self.c, self.d)
        if t > 1 and self.e % (t * t) == 0:
            return GroupElement(
                self.a // t, self.b // t, self.c // t, self.d // t, self.e // (t * t)
            )
        return self

    # -- group operations -----------------------------------------------------

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.e * other.e,
        ).reduced()

    def inverse(self) -> "GroupElement":
        return GroupElement(self.d, -self.b, -self.c, self.a, self.e).reduced()

    def __neg__(self) -> "GroupElement":
        return GroupElement(-self.a, -self.b, -self.c, -self.d, self.e)

    def __pow__(self, n: int) -> "GroupElement":
        if n < 0:
            return self.inverse() ** (-n)
        r = GroupElement.identity()
        g = self
        while n:
            if n & 1:
                r = r * g
            g = g * g
            n >>= 1
        return r

    def conjugate_by(self, h: "GroupElement") -> "GroupElement":
        return (h * self) * h.inverse()

    # -- views ----------------------------------------------------------------

    @property
    def trace(self) -> int:
        return self.a + self.d

    def canonical(self) -> "GroupElement":
        """Projective sign normal form: c > 0, or c = 0 and d > 0."""
        if self.c < 0 or (self.c == 0 and self.d < 0):
            return -self
        return self

    def is_identity(self) -> bool:
        g = self.reduced()
        return g.b == 0 and g.c == 0 and g.a == g.d and g.e == 1

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def apply(self, z: complex) -> complex:
        """Fractional linear action on the upper half-plane (e cancels in the quotient)."""
        return (self.a * z + self.b) / (self.c * z + self.d)

    def apply_cusp(self, cusp: "Cusp") -> "Cusp":
        p = self.a * cusp.p + self.b * cusp.q
        q = self.c * cusp.p + self.d * cusp.q
        return Cusp(p, q)

    def __str__(self):
        s = f"{self.a},{self.b},{self.c},{self.d}"
        return s if self.e == 1 else s + f";{self.e}"


S = GroupElement(0, -1, 1, 0)
T = GroupElement(1, 1, 0, 1)
I2 = GroupElement.identity()


def parse_matrix(text: str) -> GroupElement:
    """Parse "a,b,c,d" or "a,b,c,d;e"."""
    text = text.strip()
    e = 1
    if ";" in text:
        text, etext = text.split(";", 1)
        e = int(etext)
    parts = [int(p) for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"expected 4 comma-separated entries, got {text!r}")
    return GroupElement(parts[0], parts[1], parts[2], parts[3], e)


# ---------------------------------------------------------------------------
# cusps


@dataclass(frozen=True, order=True)
class Cusp:
    """Projective rational point p/q with gcd(p,q)=1, q >= 0; (1:0) is infinity."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if q == 0:
            p = 1
        else:
            g = gcd(p, q)
            if g:
                p, q = p // g, q // g
            if q < 0:
                p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    def base_matrix(self) -> GroupElement:
        """A determinant-1 integer matrix sending infinity to this cusp."""
        if self.q == 0:
            return I2
        u, v = _bezout(self.p, self.q)
        return GroupElement(self.p, -v, self.q, u)

    @staticmethod
    def infinity() -> "Cusp":
        return Cusp(1, 0)

    @staticmethod
    def from_str(text: str) -> "Cusp":
        text = text.strip().lower()
        if text in ("inf", "infinity", "oo"):
            return Cusp(1, 0)
        if "/" in text:
            p, q = text.split("/", 1)
            return Cusp(int(p), int(q))
        return Cusp(int(text), 1)

    def __str__(self):
        return "inf" if self.q == 0 else (f"{self.p}/{self.q}" if self.q != 1 else str(self.p))


def _bezout(p: int, q: int):
    """Return (u, v) with u*p + v*q = 1 for coprime p, q."""
    old_r, r = p, q
    old_u, u = 1, 0
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_u, u = u, old_u - k * u
    if old_r == -1:
        old_r, old_u = 1, -old_u
    assert old_r == 1, "bezout requires coprime inputs"
    v = (1 - old_u * p) // q if q else 0
    return (old_u, v)


# ---------------------------------------------------------------------------
# groups


class Family(Enum):
    SL2Z = "sl2z"
    GAMMA_N = "gamma"
    GAMMA0_N = "gamma0"
    GAMMA1_N = "gamma1"
    GAMMA0N_PLUS = "gamma0+"


@dataclass(frozen=True, order=True)
class GroupId:
    family: Family
    level: int = 1

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be >= 1")
        if self.family is Family.SL2Z and self.level != 1:
            raise ValueError("SL2Z has level 1")
        if self.family is Family.GAMMA0N_PLUS and not _squarefree(self.level):
            raise ValueError("Gamma0(N)+ requires squarefree N")

    @staticmethod
    def sl2z() -> "GroupId":
        return GroupId(Family.SL2Z)

    @staticmethod
    def gamma(n: int) -> "GroupId":
        return GroupId(Family.GAMMA_N, n)

    @staticmethod
    def gamma0(n: int) -> "GroupId":
        return GroupId(Family.GAMMA0_N, n)

    @staticmethod
    def gamma1(n: int) -> "GroupId":
        return GroupId(Family.GAMMA1_N, n)

    @staticmethod
    def gamma0_plus(n: int) -> "GroupId":
        return GroupId(Family.GAMMA0N_PLUS, n)

    def psl2z_index(self) -> Fraction:
        """Index of the image in PSL2(Z); rational "index" for Gamma0(N)+."""
        n = self.level
        if self.family is Family.SL2Z or n == 1:
            return Fraction(1)
        if self.family is Family.GAMMA0_N:
            mu = n
            for p in _prime_divisors(n):
                mu = mu * (p + 1) // p
            return Fraction(mu)
        if self.family is Family.GAMMA_N:
            mu = n ** 3
            for p in _prime_divisors(n):
                mu = mu * (p * p - 1) // (p * p)
            return Fraction(mu, 1) if n == 2 else Fraction(mu, 2)
        if self.family is Family.GAMMA1_N:
            mu = n * n
            for p in _prime_divisors(n):
                mu = mu * (p * p - 1) // (p * p)
            return Fraction(mu, 1) if n == 2 else Fraction(mu, 2)
        if self.family is Family.GAMMA0N_PLUS:
            return GroupId.gamma0(n).psl2z_index() / (1 << len(_prime_divisors(n)))
        raise ValueError(self.family)

    def __str__(self):
        if self.family is Family.SL2Z:
            return "SL2(Z)"
        name = {
            Family.GAMMA_N: "Gamma({})",
            Family.GAMMA0_N: "Gamma0({})",
            Family.GAMMA1_N: "Gamma1({})",
            Family.GAMMA0N_PLUS: "Gamma0({})+",
        }[self.family]
        return name.format(self.level)


def _prime_divisors(n: int):
    ps = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            ps.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        ps.append(n)
    return ps


def _squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def member(g: GroupElement, G: GroupId) -> bool:
    """Membership test, projective (g and -g are equivalent)."""
    n = G.level
    if G.family is Family.SL2Z:
        return g.e == 1
    if G.family is Family.GAMMA0_N:
        return g.e == 1 and g.c % n == 0
    if G.family is Family.GAMMA1_N:
        if g.e != 1 or g.c % n != 0:
            return False
        return (g.a % n == 1 % n and g.d % n == 1 % n) or (
            g.a % n == (-1) % n and g.d % n == (-1) % n
        )
    if G.family is Family.GAMMA_N:
        if g.e != 1:
            return False
        for s in (1, -1):
            if (
                (s * g.a) % n == 1 % n
                and (s * g.d) % n == 1 % n
                and g.b % n == 0
                and g.c % n == 0
            ):
                return True
        return False
    if G.family is Family.GAMMA0N_PLUS:
        e = g.e
        if n % e != 0 or gcd(e, n // e) != 1:
            return False
        return g.a % e == 0 and g.d % e == 0 and g.c % n == 0
    raise ValueError(G.family)


# ---------------------------------------------------------------------------
# element classification


class Motion(Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class MotionClass:
    tag: Motion
    order: int | None = None  # elliptic order in the projective group

    def __str__(self):
        if self.tag is Motion.ELLIPTIC:
            return f"elliptic(order {self.order})"
        return self.tag.value


def classify(g: GroupElement) -> MotionClass:
    """Trace classification of the determinant-1 normalization e^{-1/2} g."""
    g = g.reduced()
    if g.is_identity():
        return MotionClass(Motion.IDENTITY)
    t2, e4 = g.trace * g.trace, 4 * g.e
    if t2 < e4:
        return MotionClass(Motion.ELLIPTIC, _elliptic_order(g))
    if t2 == e4:
        return MotionClass(Motion.PARABOLIC)
    return MotionClass(Motion.HYPERBOLIC)


def _elliptic_order(g: GroupElement) -> int:
    h = g
    for m in range(2, 25):
        h = h * g
        if h.is_identity():
            return m
    raise ValueError(f"no elliptic order <= 24 for {g}")


# ---------------------------------------------------------------------------
# word decomposition in S, T


def word_decompose(g: GroupElement):
    """Decompose g in SL2(Z) as a word in S, T, valid up to overall sign.

    Returns a list of (letter, exponent) pairs with letter "S" or "T";
    evaluate_word of the result equals g or -g.
    """
    if g.e != 1:
        raise ValueError("word decomposition needs e = 1")
    word = []
    a, b, c, d = g.entries()
    while c != 0:
        q = round(Fraction(a, c))  # nearest integer, exactly
        # peel T^q * S from the left; |a - q*c| <= |c|/2 forces termination
        a, b = a - q * c, b - q * d
        word.append(("T", q))
        a, b, c, d = c, d, -a, -b
        word.append(("S", 1))
    # now the matrix is +-[[1, b'],[0, 1]]
    word.append(("T", b * d))
    return [(sym, n) for sym, n in word if n != 0]


def evaluate_word(word) -> GroupElement:
    g = I2
    for sym, n in word:
        base = S if sym == "S" else T
        g = g * base ** n
    return g


def word_str(word) -> str:
    if not word:
        return "1"
    parts = []
    for sym, n in word:
        parts.append(sym if n == 1 else f"{sym}^{n}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# coset enumeration for finite-index subgroups of SL2(Z)

_TABLE_FAMILIES = (Family.SL2Z, Family.GAMMA_N, Family.GAMMA0_N, Family.GAMMA1_N)


def _coset_invariant(G: GroupId, g: GroupElement):
    """A value identifying the right coset G*g, for G a subgroup of SL2(Z)."""
    n = G.level
    if G.family is Family.SL2Z:
        return 0
    a, b, c, d = (x % n for x in g.entries())
    if G.family is Family.GAMMA_N:
        return min((a, b, c, d), ((-a) % n, (-b) % n, (-c) % n, (-d) % n))
    if G.family is Family.GAMMA1_N:
        return min((c, d), ((-c) % n, (-d) % n))
    if G.family is Family.GAMMA0_N:
        # point (c : d) of P^1(Z/N), canonicalized over units
        best = None
        for u in range(1, n):
            if gcd(u, n) != 1:
                continue
            cand = ((u * c) % n, (u * d) % n)
            if best is None or cand < best:
                best = cand
        return best
    raise ValueError(G.family)


class CosetTable:
    """Right cosets G\\SL2(Z) with the permutation action of S and T.

    Built by breadth-first search from the identity coset; representatives
    and the induced actions are deterministic.
    """

    def __init__(self, G: GroupId):
        if G.family not in _TABLE_FAMILIES:
            raise ValueError(f"no SL2(Z) coset table for {G}")
        self.group = G
        reps = [I2]
        index = {_coset_invariant(G, I2): 0}
        queue = [0]
        while queue:
            i = queue.pop(0)
            for gen in (T, S):
                h = reps[i] * gen
                key = _coset_invariant(G, h)
                if key not in index:
                    index[key] = len(reps)
                    reps.append(self._shrink(h))
                    queue.append(index[key])
        # canonical order: sort by invariant key
        order = sorted(range(len(reps)), key=lambda i: _coset_invariant(G, reps[i]))
        self.reps = [reps[i] for i in order]
        self._index = {_coset_invariant(G, r): i for i, r in enumerate(self.reps)}
        self.act_T = [self.coset_of(r * T) for r in self.reps]
        self.act_S = [self.coset_of(r * S) for r in self.reps]

    def _shrink(self, g: GroupElement) -> GroupElement:
        """Left-multiply by elements of G to keep representative entries small."""
        G = self.group
        n = G.level
        if G.family is Family.SL2Z or n == 1:
            return I2
        # translation steps staying inside G
        t_step = n if G.family is Family.GAMMA_N else 1
        l_step = n
        best = g
        for _ in range(12):
            improved = False
            a, b, c, d = best.entries()
            # T^{k*t_step} from the left: row1 += k*t_step*row2
            if c or d:
                k = -round((a * c + b * d) / (t_step * (c * c + d * d)))
                if k:
                    cand = (T ** (k * t_step)) * best
                    if _size(cand) < _size(best):
                        best, improved = cand, True
            a, b, c, d = best.entries()
            # [[1,0],[l_step,1]]^k from the left: row2 += k*l_step*row1
            if a or b:
                k = -round((a * c + b * d) / (l_step * (a * a + b * b)))
                if k:
                    L = GroupElement(1, 0, l_step, 1)
                    cand = (L ** k) * best
                    if _size(cand) < _size(best):
                        best, improved = cand, True
            if not improved:
                break
        return best.canonical()

    def __len__(self):
        return len(self.reps)

    def coset_of(self, g: GroupElement) -> int:
        key = _coset_invariant(self.group, g)
        try:
            return self._index[key]
        except KeyError:
            raise ValueError(f"{g} does not lie in a known coset") from None

    def act(self, i: int, letter: str) -> int:
        return (self.act_T if letter == "T" else self.act_S)[i]


def _size(g: GroupElement) -> int:
    a, b, c, d = g.entries()
    return a * a + b * b + c * c + d * d


_table_cache: dict[GroupId, CosetTable] = {}


def coset_table(G: GroupId) -> CosetTable:
    if G not in _table_cache:
        _table_cache[G] = CosetTable(G)
    return _table_cache[G]


# ---------------------------------------------------------------------------
# Atkin-Lehner involutions


def atkin_lehner(N: int, e: int) -> GroupElement:
    """The involution W_e of Gamma0(N), for e || N; determinant-e matrix."""
    if N % e != 0 or gcd(e, N // e) != 1:
        raise ValueError(f"need e || N, got e={e}, N={N}")
    if e == 1:
        return I2
    if e == N:
        return GroupElement(0, -1, N, 0, N)
    # solve x*e + y*(N/e) = 1, then [[e, -y],[N, x*e]] has determinant e
    f = N // e
    x, y = 0, 0
    # extended gcd
    r0, r1, s0, s1 = e, f, 1, 0
    while r1:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
    x = s0 if r0 == 1 else -s0
    y = (1 - x * e) // f
    return GroupElement(e, -y, N, x * e, e)


def atkin_lehner_exponents(N: int):
    """All e || N in increasing order."""
    return sorted(
        e for e in range(1, N + 1) if N % e == 0 and gcd(e, N // e) == 1
    )


# ---------------------------------------------------------------------------
# cusp sets, widths, scaling maps


@dataclass(frozen=True)
class ScalingMap:
    """sigma_a = base * diag(sqrt(w), 1/sqrt(w)); base is an integer matrix of det 1."""

    base: GroupElement
    width: Fraction

    def cusp(self) -> Cusp:
        return self.base.apply_cusp(Cusp.infinity())

    def conjugate_integer(self, g: GroupElement) -> GroupElement:
        """base^{-1} g base: same c-sign and trace as the true sigma-conjugate."""
        return g.conjugate_by(self.base.inverse())

    def apply(self, z: complex) -> complex:
        return self.base.apply(float(self.width) * z)


def cusps(G: GroupId):
    """Complete irredundant list of (Cusp, width, ScalingMap), deterministic order."""
    if G.family is Family.SL2Z or G.level == 1 or G.family is Family.GAMMA0N_PLUS:
        c = Cusp.infinity()
        return [(c, Fraction(1), ScalingMap(c.base_matrix(), Fraction(1)))]
    tab = coset_table(G)
    seen = set()
    out = []
    for i in range(len(tab)):
        if i in seen:
            continue
        orbit = [i]
        j = tab.act_T[i]
        while j != i:
            orbit.append(j)
            j = tab.act_T[j]
        seen.update(orbit)
        cusp = tab.reps[i].apply_cusp(Cusp.infinity())
        out.append((cusp, Fraction(len(orbit))))
    # one representative per equivalence class (T-orbits are already classes,
    # but distinct orbits can only carry equivalent cusp labels through reps;
    # orbits of the T-action on cosets biject with cusp classes)
    out.sort(key=lambda t: (t[0].q, t[0].p))
    return [(c, w, ScalingMap(c.base_matrix(), w)) for c, w in out]


def cusp_equivalent(G: GroupId, c1: Cusp, c2: Cusp) -> GroupElement | None:
    """A witness tau in G with tau*c1 = c2, or None."""
    g1 = c1.base_matrix()
    g2 = c2.base_matrix()
    n = G.level
    if G.family is Family.GAMMA0N_PLUS:
        G0 = GroupId.gamma0(n)
        for e in atkin_lehner_exponents(n):
            w = atkin_lehner(n, e)
            tau = cusp_equivalent(G0, w.apply_cusp(c1), c2)
            if tau is not None:
                witness = tau * w
                assert witness.apply_cusp(c1) == c2
                return witness
        return None
    g1inv = g1.inverse()
    for k in range(max(n, 1)):
        tau = g2 * (T ** k) * g1inv
        if member(tau, G):
            assert tau.apply_cusp(c1) == c2
            return tau
    return None


def cusp_class_index(G: GroupId, c: Cusp) -> int:
    """Index of the equivalence class of c in cusps(G)."""
    for i, (rep, _w, _s) in enumerate(cusps(G)):
        if cusp_equivalent(G, c, rep) is not None:
            return i
    raise ValueError(f"{c} is not a cusp class of {G}")


def cusp_width(G: GroupId, c: Cusp) -> Fraction:
    """Width of the cusp c for G: least w >= 1 with base T^w base^{-1} in G."""
    base = c.base_matrix()
    bound = int(G.psl2z_index() * max(G.level, 1)) + G.level + 2
    for w in range(1, bound + 1):
        if member(base * (T ** w) * base.inverse(), G):
            return Fraction(w)
    raise ValueError(f"no width <= {bound} found for {c} in {G}")


def cusp_stabilizer_generator(G: GroupId, c: Cusp) -> GroupElement:
    """Generator of the (projective) stabilizer of c in G."""
    base = c.base_matrix()
    w = cusp_width(G, c)
    return base * (T ** int(w)) * base.inverse()


def parabolic_cusp(g: GroupElement) -> Cusp:
    """The unique fixed cusp of a parabolic element."""
    if classify(g).tag is not Motion.PARABOLIC:
        raise ValueError("element is not parabolic")
    if g.c == 0:
        return Cusp.infinity()
    # fixed point (a - d) / (2c)
    return Cusp(g.a - g.d, 2 * g.c)


def parabolic_power(G: GroupId, g: GroupElement) -> tuple[Cusp, int]:
    """Write a parabolic g as +-(stabilizer generator)^k; returns (cusp, k)."""
    c = parabolic_cusp(g)
    gen = cusp_stabilizer_generator(G, c)
    base = c.base_matrix()
    h = g.conjugate_by(base.inverse())      # +-T^m
    t = h.b * h.d                           # translation length, sign included
    gref = gen.conjugate_by(base.inverse())
    w = gref.b * gref.d
    if t % w != 0:
        raise ValueError(f"{g} is not a power of the stabilizer generator of {c}")
    return c, t // w


# ---------------------------------------------------------------------------
# coset representatives between groups


def cosets(G1: GroupId, G: GroupId):
    """Representatives for G1 \\ G within the supported lattice."""
    _check_containment(G1, G)
    if G1 == G:
        return [I2]
    if G.family is Family.SL2Z:
        return list(coset_table(G1).reps)
    if G.family is Family.GAMMA0N_PLUS:
        n = G.level
        als = [atkin_lehner(n, e) for e in atkin_lehner_exponents(n)]
        if G1.family is Family.GAMMA0_N:
            return als
        inner = cosets(G1, GroupId.gamma0(n))
        return [t * w for w in als for t in inner]
    # G1 and G both subgroups of SL2(Z): filter the SL2(Z) table of G1
    reps = [r for r in coset_table(G1).reps if member(r, G)]
    expected = G1.psl2z_index() / G.psl2z_index()
    if len(reps) != expected:
        raise ValueError(f"coset filtering failed: {len(reps)} != {expected}")
    return reps


def _check_containment(G1: GroupId, G: GroupId):
    if G1 == G:
        return
    n1, n = G1.level, G.level
    ok = False
    if G.family is Family.SL2Z:
        ok = G1.family in _TABLE_FAMILIES
    elif G1.family is Family.GAMMA_N and n1 == n:
        ok = G.family in (Family.GAMMA0_N, Family.GAMMA1_N, Family.GAMMA0N_PLUS)
    elif G1.family is Family.GAMMA1_N and n1 == n:
        ok = G.family in (Family.GAMMA0_N, Family.GAMMA0N_PLUS)
    elif G1.family is Family.GAMMA0_N and n1 == n:
        ok = G.family is Family.GAMMA0N_PLUS
    if not ok:
        raise ValueError(f"unsupported containment {G1} <= {G}")


# ---------------------------------------------------------------------------
# Schreier generators


def schreier_generators(G: GroupId):
    """Generating set for G via Reidemeister-Schreier over {S, T}."""
    if G.family is Family.SL2Z or G.level == 1:
        return [S, T]
    if G.family is Family.GAMMA0N_PLUS:
        n = G.level
        gens = list(schreier_generators(GroupId.gamma0(n)))
        gens.extend(atkin_lehner(n, e) for e in atkin_lehner_exponents(n) if e > 1)
        return gens
    tab = coset_table(G)
    gens = []
    seen = set()
    for i, rep in enumerate(tab.reps):
        for letter, gen in (("T", T), ("S", S)):
            j = tab.act(i, letter)
            g = rep * gen * tab.reps[j].inverse()
            key = g.canonical()
            if key.is_identity() or key in seen or key.inverse().canonical() in seen:
                continue
            seen.add(key)
            gens.append(key)
    return gens


def schreier_rewrite(G: GroupId, g: GroupElement):
    """Rewrite g in G as a product of Schreier generators.

    Returns the list of factors; their product equals +-g.  Raises if g is
    not in G.
    """
    if not member(g, G):
        raise ValueError(f"{g} is not in {G}")
    if G.family is Family.SL2Z or G.level == 1:
        return [evaluate_word([p]) for p in word_decompose(g)]
    tab = coset_table(G)
    factors = []
    state = tab.coset_of(I2)
    for sym, n in word_decompose(g):
        gen = S if sym == "S" else T
        step = range(n) if n > 0 else range(-n)
        use = gen if n > 0 else gen.inverse()
        for _ in step:
            if n > 0:
                j = tab.act(state, sym)
                factors.append(tab.reps[state] * use * tab.reps[j].inverse())
            else:
                # find predecessor state under the generator
                j = (tab.act_T if sym == "T" else tab.act_S).index(state)
                factors.append(tab.reps[state] * use * tab.reps[j].inverse())
            state = j
    if state != tab.coset_of(I2):
        raise ValueError("rewriting did not return to the identity coset")
    return [f for f in factors if not f.is_identity()]
