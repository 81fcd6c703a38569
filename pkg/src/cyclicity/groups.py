"""Finite group families built as immutable multiplication structures.

Every group is represented by its construction parameters; multiplication,
inversion and element enumeration are computed on demand, never from a stored
Cayley table.  Elements are fixed-width tuples of small nonnegative integers,
so equality and hashing are structural and canonicalization is total.  All
operations are pure and instances are safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import prod

Element = tuple[int, ...]

# Hard construction cap; analyses below impose their own smaller defaults.
ORDER_CAP = 2**14


class CapExceeded(RuntimeError):
    """A construction or analysis request exceeds the configured order cap."""


class InternalInconsistency(RuntimeError):
    """Two evaluation routes that must agree exactly did not.

    Raised instead of silently returning a value when an exactness assumption
    (exact division, breakpoint agreement, dual evaluation) fails.  Signals a
    transcription bug in the code, never a property of the input.
    """


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class AbelianShape:
    """Isomorphism type of a finite abelian p-group, Z_{p^d1} x ... x Z_{p^dk}.

    The partition is nondecreasing, so it is a complete isomorphism invariant.
    """

    p: int
    partition: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if not self.partition:
            raise ValueError("partition must be nonempty")
        if any(d < 1 for d in self.partition):
            raise ValueError(f"partition entries must be >= 1, got {self.partition}")
        if any(a > b for a, b in zip(self.partition, self.partition[1:])):
            raise ValueError(f"partition must be nondecreasing, got {self.partition}")

    @property
    def order(self) -> int:
        return self.p ** sum(self.partition)

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(self.p**d for d in self.partition)


class Group:
    """Immutable finite group with fixed-width tuple-encoded elements.

    Subclasses fix ``order``, ``width`` (encoding length), the optional
    ``central_involution`` used by central products, and implement
    ``multiply``, ``invert``, ``_iter_elements`` and ``contains``.
    """

    kind: str = "group"
    order: int
    width: int
    central_involution: Element | None = None

    def multiply(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def invert(self, a: Element) -> Element:
        raise NotImplementedError

    def _iter_elements(self):
        raise NotImplementedError

    def contains(self, e: Element) -> bool:
        raise NotImplementedError

    @property
    def identity(self) -> Element:
        return (0,) * self.width

    @cached_property
    def _elements(self) -> tuple[Element, ...]:
        elems = tuple(self._iter_elements())
        if len(elems) != self.order:
            raise InternalInconsistency(
                f"enumerated {len(elems)} elements of a group of order {self.order}"
            )
        return elems

    def elements(self) -> tuple[Element, ...]:
        """All elements, enumerated once and cached."""
        return self._elements

    def power(self, g: Element, k: int) -> Element:
        """g**k by square-and-multiply; negative k uses the inverse."""
        if k < 0:
            g, k = self.invert(g), -k
        acc = self.identity
        while k:
            if k & 1:
                acc = self.multiply(acc, g)
            g = self.multiply(g, g)
            k >>= 1
        return acc

    @cached_property
    def is_abelian(self) -> bool:
        elems = self.elements()
        for i, a in enumerate(elems):
            for b in elems[i + 1 :]:
                if self.multiply(a, b) != self.multiply(b, a):
                    return False
        return True

    def __repr__(self) -> str:
        return f"<{self.kind} group of order {self.order}>"


def _check_cap(order: int) -> None:
    if order > ORDER_CAP:
        raise CapExceeded(f"group order {order} exceeds the cap {ORDER_CAP}")


class AbelianGroup(Group):
    """Direct sum of cyclic groups; elements are residue tuples under addition."""

    kind = "abelian"

    def __init__(self, moduli: tuple[int, ...]):
        moduli = tuple(int(m) for m in moduli)
        if not moduli:
            raise ValueError("at least one cyclic factor is required")
        if any(m < 1 for m in moduli):
            raise ValueError(f"cyclic factor moduli must be positive, got {moduli}")
        order = prod(moduli)
        _check_cap(order)
        self.moduli = moduli
        self.order = order
        self.width = len(moduli)
        self.central_involution = self._designated_involution()

    def _designated_involution(self) -> Element | None:
        # Involution of the largest-modulus factor (last occurrence); None
        # when that modulus is odd.
        largest = max(self.moduli)
        if largest % 2 != 0:
            return None
        idx = len(self.moduli) - 1 - self.moduli[::-1].index(largest)
        enc = [0] * self.width
        enc[idx] = largest // 2
        return tuple(enc)

    def multiply(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def invert(self, a: Element) -> Element:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def _iter_elements(self):
        return itertools.product(*(range(m) for m in self.moduli))

    def contains(self, e: Element) -> bool:
        return (
            isinstance(e, tuple)
            and len(e) == self.width
            and all(isinstance(x, int) and 0 <= x < m for x, m in zip(e, self.moduli))
        )

    is_abelian = True


class Metacyclic2Group(Group):
    """Index-2 extension of a cyclic group: <x, y | x^m = 1, y^2 = x^s, y^-1 x y = x^t>.

    Elements are pairs (i, eps) encoding x^i y^eps.  The presentation is
    consistent only when t^2 = 1 and s*t = s modulo m, which is validated at
    construction.
    """

    kind = "metacyclic2"

    def __init__(self, m: int, s: int, t: int):
        m = int(m)
        if m < 1:
            raise ValueError(f"cyclic part modulus must be positive, got {m}")
        s, t = int(s) % m, int(t) % m
        if (t * t) % m != 1 % m:
            raise ValueError(f"invalid presentation: t^2 = {t*t % m} != 1 (mod {m})")
        if (s * t) % m != s:
            raise ValueError(f"invalid presentation: s*t != s (mod {m}); conjugation breaks y^2 = x^s")
        order = 2 * m
        _check_cap(order)
        self.m, self.s, self.t = m, s, t
        self.order = order
        self.width = 2
        # x^(m/2) is central: t is odd whenever m is even, so it commutes with y.
        self.central_involution = (m // 2, 0) if m % 2 == 0 else None

    def multiply(self, a: Element, b: Element) -> Element:
        i, e = a
        j, f = b
        if e == 0:
            return ((i + j) % self.m, f)
        return ((i + self.t * j + self.s * f) % self.m, (1 + f) % 2)

    def invert(self, a: Element) -> Element:
        i, e = a
        if e == 0:
            return ((-i) % self.m, 0)
        return ((self.t * (-i - self.s)) % self.m, 1)

    def _iter_elements(self):
        return itertools.product(range(self.m), (0, 1))

    def contains(self, e: Element) -> bool:
        return (
            isinstance(e, tuple)
            and len(e) == 2
            and all(isinstance(x, int) for x in e)
            and 0 <= e[0] < self.m
            and e[1] in (0, 1)
        )


class GeneralizedDihedralGroup(Group):
    """Extension of an abelian group by an inverting involution y.

    Elements are (a, eps) encoding a*y^eps with y a y = a^-1.
    """

    kind = "gen-dihedral"

    def __init__(self, base: Group):
        if not base.is_abelian:
            raise ValueError("generalized dihedral construction requires an abelian base")
        order = 2 * base.order
        _check_cap(order)
        self.base = base
        self.order = order
        self.width = base.width + 1
        z = base.central_involution
        self.central_involution = z + (0,) if z is not None else None

    def multiply(self, a: Element, b: Element) -> Element:
        base = self.base
        x, e = a[:-1], a[-1]
        y, f = b[:-1], b[-1]
        if e == 0:
            return base.multiply(x, y) + (f,)
        return base.multiply(x, base.invert(y)) + ((1 + f) % 2,)

    def invert(self, a: Element) -> Element:
        x, e = a[:-1], a[-1]
        if e == 0:
            return self.base.invert(x) + (0,)
        return a

    def _iter_elements(self):
        for x in self.base.elements():
            yield x + (0,)
            yield x + (1,)

    def contains(self, e: Element) -> bool:
        return (
            isinstance(e, tuple)
            and len(e) == self.width
            and e[-1] in (0, 1)
            and self.base.contains(e[:-1])
        )


class GeneralizedDicyclicGroup(Group):
    """Extension of an abelian group by gamma with gamma^2 a fixed involution.

    Elements are (a, eps) encoding a*gamma^eps with gamma a gamma^-1 = a^-1;
    every twisted element (a, 1) has order 4.
    """

    kind = "gen-dicyclic"

    def __init__(self, base: Group, twist: Element):
        if not base.is_abelian:
            raise ValueError("generalized dicyclic construction requires an abelian base")
        if not base.contains(twist):
            raise ValueError("gamma^2 must be an element of the base group")
        if twist == base.identity or base.multiply(twist, twist) != base.identity:
            raise ValueError("gamma^2 must be an involution of the base group")
        order = 2 * base.order
        _check_cap(order)
        self.base = base
        self.twist = twist
        self.order = order
        self.width = base.width + 1
        self.central_involution = twist + (0,)

    def multiply(self, a: Element, b: Element) -> Element:
        base = self.base
        x, e = a[:-1], a[-1]
        y, f = b[:-1], b[-1]
        if e == 0:
            return base.multiply(x, y) + (f,)
        w = base.multiply(x, base.invert(y))
        if f == 0:
            return w + (1,)
        return base.multiply(w, self.twist) + (0,)

    def invert(self, a: Element) -> Element:
        x, e = a[:-1], a[-1]
        if e == 0:
            return self.base.invert(x) + (0,)
        return self.base.multiply(x, self.twist) + (1,)

    def _iter_elements(self):
        for x in self.base.elements():
            yield x + (0,)
            yield x + (1,)

    def contains(self, e: Element) -> bool:
        return (
            isinstance(e, tuple)
            and len(e) == self.width
            and e[-1] in (0, 1)
            and self.base.contains(e[:-1])
        )


class DirectProductGroup(Group):
    """Componentwise product; element encodings are concatenated."""

    kind = "direct-product"

    def __init__(self, left: Group, right: Group):
        order = left.order * right.order
        _check_cap(order)
        self.left = left
        self.right = right
        self.order = order
        self.width = left.width + right.width
        self.central_involution = self._designated_involution()

    def _designated_involution(self) -> Element | None:
        if self.right.central_involution is not None:
            return self.left.identity + self.right.central_involution
        if self.left.central_involution is not None:
            return self.left.central_involution + self.right.identity
        return None

    def multiply(self, a: Element, b: Element) -> Element:
        w = self.left.width
        return self.left.multiply(a[:w], b[:w]) + self.right.multiply(a[w:], b[w:])

    def invert(self, a: Element) -> Element:
        w = self.left.width
        return self.left.invert(a[:w]) + self.right.invert(a[w:])

    def _iter_elements(self):
        for x in self.left.elements():
            for y in self.right.elements():
                yield x + y

    def contains(self, e: Element) -> bool:
        if not isinstance(e, tuple) or len(e) != self.width:
            return False
        w = self.left.width
        return self.left.contains(e[:w]) and self.right.contains(e[w:])

    @cached_property
    def is_abelian(self) -> bool:
        return self.left.is_abelian and self.right.is_abelian


class QuotientGroup(Group):
    """Quotient by a normal subgroup; elements are lex-least coset representatives.

    Construct through :func:`quotient` or :func:`central_product`, which
    validate the kernel; the class itself trusts it.
    """

    kind = "central-quotient"

    def __init__(self, parent: Group, kernel: frozenset[Element]):
        self.parent = parent
        self.kernel = kernel
        self._kernel_list = sorted(kernel)
        self.order = parent.order // len(kernel)
        self.width = parent.width
        self.central_involution = None
        self._canon: dict[Element, Element] = {}

    def canonical(self, e: Element) -> Element:
        """Lex-least representative of the coset of e; memoized per coset."""
        rep = self._canon.get(e)
        if rep is None:
            coset = [self.parent.multiply(e, n) for n in self._kernel_list]
            rep = min(coset)
            for member in coset:
                self._canon[member] = rep
        return rep

    def multiply(self, a: Element, b: Element) -> Element:
        return self.canonical(self.parent.multiply(a, b))

    def invert(self, a: Element) -> Element:
        return self.canonical(self.parent.invert(a))

    def _iter_elements(self):
        seen = set()
        for g in self.parent.elements():
            rep = self.canonical(g)
            if rep not in seen:
                seen.add(rep)
                yield rep

    def contains(self, e: Element) -> bool:
        return (
            isinstance(e, tuple)
            and len(e) == self.width
            and self.parent.contains(e)
            and self.canonical(e) == e
        )


def build_cyclic(m: int) -> Group:
    """Cyclic group of order m; elements {0..m-1} under addition mod m."""
    if m < 1:
        raise ValueError(f"cyclic group order must be positive, got {m}")
    return AbelianGroup((m,))


def build_abelian(moduli) -> Group:
    """Direct sum of cyclic groups of the given moduli."""
    return AbelianGroup(tuple(moduli))


def build_abelian_2group(partition) -> Group:
    """Abelian 2-group Z_{2^d1} x ... x Z_{2^dk} from an exponent partition."""
    return AbelianGroup(tuple(2**d for d in partition))


def direct_product(g: Group, h: Group) -> Group:
    """Direct product; two abelian factors collapse back into one abelian group."""
    if isinstance(g, AbelianGroup) and isinstance(h, AbelianGroup):
        return AbelianGroup(g.moduli + h.moduli)
    return DirectProductGroup(g, h)


def build_metacyclic2(m: int, s: int, t: int) -> Group:
    """Order-2m group <x, y | x^m = 1, y^2 = x^s, y^-1 x y = x^t>."""
    return Metacyclic2Group(m, s, t)


def _two_power_exponent(order: int, minimum: int, family: str) -> int:
    n = order.bit_length() - 1
    if order < 2 or 2**n != order:
        raise ValueError(f"{family} groups require a power-of-two order, got {order}")
    if n < minimum:
        raise ValueError(f"{family} groups require order >= {2**minimum}, got {order}")
    return n


def dihedral(order: int) -> Group:
    """Dihedral 2-group of the given total order (at least 8)."""
    _two_power_exponent(order, 3, "dihedral")
    m = order // 2
    return Metacyclic2Group(m, 0, m - 1)


def generalized_quaternion(order: int) -> Group:
    """Generalized quaternion 2-group of the given total order (at least 8)."""
    _two_power_exponent(order, 3, "generalized quaternion")
    m = order // 2
    return Metacyclic2Group(m, m // 2, m - 1)


def semidihedral(order: int) -> Group:
    """Semidihedral (quasi-dihedral) 2-group of the given total order (at least 16)."""
    _two_power_exponent(order, 4, "semidihedral")
    m = order // 2
    return Metacyclic2Group(m, 0, m // 2 - 1)


def modular_maximal_cyclic(order: int) -> Group:
    """Modular maximal-cyclic 2-group of the given total order (at least 16)."""
    _two_power_exponent(order, 4, "modular maximal-cyclic")
    m = order // 2
    return Metacyclic2Group(m, 0, m // 2 + 1)


def build_generalized_dihedral(a: Group) -> Group:
    """Generalized dihedral group over an abelian group a."""
    return GeneralizedDihedralGroup(a)


def build_generalized_dicyclic(a: Group, z: Element) -> Group:
    """Generalized dicyclic group over an abelian group a with gamma^2 = z."""
    return GeneralizedDicyclicGroup(a, z)


def element_order(g: Group, e: Element) -> int:
    """Least k >= 1 with e^k = identity, by repeated multiplication."""
    if not g.contains(e):
        raise ValueError(f"element {e!r} is not in the group")
    identity = g.identity
    k = 1
    x = e
    while x != identity:
        x = g.multiply(x, e)
        k += 1
    return k


def _verify_central_involution(g: Group) -> Element:
    z = g.central_involution
    if z is None:
        raise ValueError("central product factor lacks a designated central involution")
    if z == g.identity or g.multiply(z, z) != g.identity:
        raise ValueError("designated element is not an involution")
    for h in g.elements():
        if g.multiply(z, h) != g.multiply(h, z):
            raise ValueError("designated involution is not central")
    return z


def central_product(g: Group, h: Group) -> Group:
    """Quotient of g x h identifying the designated central involutions.

    The resulting group keeps the image of g's involution as its own
    designated central involution, so products can be chained.
    """
    zg = _verify_central_involution(g)
    zh = _verify_central_involution(h)
    parent = direct_product(g, h)
    kernel = frozenset({parent.identity, zg + zh})
    result = QuotientGroup(parent, kernel)
    result.central_involution = result.canonical(zg + h.identity)
    return result


def quotient(g: Group, normal) -> Group:
    """Quotient of g by a normal subgroup given as a collection of elements.

    The collection is checked exhaustively for membership, closure and
    normality before the quotient is formed.
    """
    members = []
    seen = set()
    for e in normal:
        e = tuple(e)
        if not g.contains(e):
            raise ValueError(f"element {e!r} is not in the group")
        if e not in seen:
            seen.add(e)
            members.append(e)
    kernel = frozenset(members)
    if g.identity not in kernel:
        raise ValueError("not a subgroup: identity is missing")
    for a in kernel:
        for b in kernel:
            if g.multiply(a, b) not in kernel:
                raise ValueError("not a subgroup: set is not closed under multiplication")
    for x in g.elements():
        xinv = g.invert(x)
        for n in kernel:
            if g.multiply(g.multiply(x, n), xinv) not in kernel:
                raise ValueError("not normal: a conjugate leaves the subgroup")
    return QuotientGroup(g, kernel)


def _quotient_trusted(g: Group, kernel: frozenset[Element]) -> Group:
    # Internal fast path for kernels that are subgroups and normal by
    # construction (centers, verified closures).
    return QuotientGroup(g, kernel)
