"""Group-descriptor DSL: parsing, canonical strings, and group construction.

Grammar (case-insensitive, whitespace-insensitive)::

    expr := term ("x" term)*          direct product
    term := atom ("*" atom)*          central product, binds tighter than "x"
    atom := Z NUM ["^" NUM]           cyclic group / repeated direct factors
          | D NUM | Q NUM | SD NUM | M NUM
          | ES+ "(" NUM ")" | ES- "(" NUM ")" | AES "(" NUM ")"
          | Dih "(" expr ")"
          | Dic "(" expr ["," NUM] ")"

Family atoms take the total group order.  Canonical strings sort direct
product operands lexicographically and merge repeated cyclic factors into
powers, so they are stable cache keys.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import prod

from . import groups
from .groups import CapExceeded, Element, Group

__all__ = [
    "Node",
    "Cyclic",
    "CyclicPower",
    "NamedFamily",
    "Dihedralization",
    "Dicyclization",
    "DirectProduct",
    "CentralProduct",
    "DescriptorSyntaxError",
    "parse_descriptor",
    "canonicalize",
    "canonical_string",
    "canonical_key",
    "predicted_order",
    "build_from_descriptor",
    "build",
    "shape_descriptor",
]


class Node:
    """Base class for descriptor AST nodes."""


@dataclass(frozen=True)
class Cyclic(Node):
    modulus: int


@dataclass(frozen=True)
class CyclicPower(Node):
    modulus: int
    copies: int


@dataclass(frozen=True)
class NamedFamily(Node):
    family: str  # one of D, Q, SD, M, ES+, ES-, AES
    order: int


@dataclass(frozen=True)
class Dihedralization(Node):
    base: Node


@dataclass(frozen=True)
class Dicyclization(Node):
    base: Node
    involution_index: int | None = None


@dataclass(frozen=True)
class DirectProduct(Node):
    factors: tuple[Node, ...]


@dataclass(frozen=True)
class CentralProduct(Node):
    factors: tuple[Node, ...]


class DescriptorSyntaxError(ValueError):
    """Parse failure with byte offset and the token set expected there."""

    def __init__(self, position: int, expected: set[str], found: str):
        self.position = position
        self.expected = frozenset(expected)
        self.found = found
        wanted = ", ".join(sorted(expected))
        super().__init__(f"at offset {position}: expected {wanted}, found {found}")


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z]+)|(?P<sym>[-+^*(),]))")

_FAMILY_ATOMS = {"D", "Q", "SD", "M"}
_FAMILY_MIN_ORDER = {"D": 8, "Q": 8, "SD": 16, "M": 16}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            offset = len(text) - len(stripped)
            raise DescriptorSyntaxError(offset, {"atom"}, repr(stripped[0]))
        if m.group("num"):
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name").upper(), m.start("name")))
        else:
            tokens.append(("sym", m.group("sym"), m.start("sym")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def fail(self, expected: set[str]):
        kind, value, pos = self.peek()
        found = "end of input" if kind == "end" else repr(value)
        raise DescriptorSyntaxError(pos, expected, found)

    def expect_sym(self, sym: str) -> None:
        kind, value, _ = self.peek()
        if kind != "sym" or value != sym:
            self.fail({repr(sym)})
        self.advance()

    def expect_number(self, what: str) -> int:
        kind, value, _ = self.peek()
        if kind != "num":
            self.fail({what})
        self.advance()
        return int(value)

    def parse(self) -> Node:
        node = self.expr()
        kind, _, _ = self.peek()
        if kind != "end":
            self.fail({"'x'", "'*'", "end of input"})
        return node

    def expr(self) -> Node:
        factors = [self.term()]
        while True:
            kind, value, _ = self.peek()
            if kind == "name" and value == "X":
                self.advance()
                factors.append(self.term())
            else:
                break
        if len(factors) == 1:
            return factors[0]
        return DirectProduct(tuple(factors))

    def term(self) -> Node:
        factors = [self.atom()]
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value == "*":
                self.advance()
                factors.append(self.atom())
            else:
                break
        if len(factors) == 1:
            return factors[0]
        return CentralProduct(tuple(factors))

    def atom(self) -> Node:
        kind, value, pos = self.peek()
        if kind != "name" or value == "X":
            self.fail({"atom name"})
        self.advance()
        if value == "Z":
            modulus = self.expect_number("cyclic group order")
            if modulus < 1:
                raise DescriptorSyntaxError(pos, {"positive order"}, str(modulus))
            nk, nv, _ = self.peek()
            if nk == "sym" and nv == "^":
                self.advance()
                copies = self.expect_number("number of copies")
                if copies < 1:
                    self.fail({"positive exponent"})
                if copies == 1:
                    return Cyclic(modulus)
                return CyclicPower(modulus, copies)
            return Cyclic(modulus)
        if value in _FAMILY_ATOMS:
            order = self.expect_number("group order")
            self._check_family_order(value, order, pos)
            return NamedFamily(value, order)
        if value == "ES":
            sk, sv, _ = self.peek()
            if sk != "sym" or sv not in {"+", "-"}:
                self.fail({"'+'", "'-'"})
            self.advance()
            family = "ES" + sv
            self.expect_sym("(")
            order = self.expect_number("group order")
            self.expect_sym(")")
            self._check_family_order(family, order, pos)
            return NamedFamily(family, order)
        if value == "AES":
            self.expect_sym("(")
            order = self.expect_number("group order")
            self.expect_sym(")")
            self._check_family_order("AES", order, pos)
            return NamedFamily("AES", order)
        if value == "DIH":
            self.expect_sym("(")
            base = self.expr()
            self.expect_sym(")")
            return Dihedralization(base)
        if value == "DIC":
            self.expect_sym("(")
            base = self.expr()
            index = None
            nk, nv, _ = self.peek()
            if nk == "sym" and nv == ",":
                self.advance()
                index = self.expect_number("involution index")
            self.expect_sym(")")
            return Dicyclization(base, index)
        raise DescriptorSyntaxError(pos, {"known atom name"}, repr(value))

    def _check_family_order(self, family: str, order: int, pos: int) -> None:
        n = order.bit_length() - 1
        if order < 2 or 2**n != order:
            raise DescriptorSyntaxError(pos, {f"power-of-two order for {family}"}, str(order))
        if family in _FAMILY_MIN_ORDER:
            if order < _FAMILY_MIN_ORDER[family]:
                raise DescriptorSyntaxError(
                    pos, {f"order >= {_FAMILY_MIN_ORDER[family]} for {family}"}, str(order)
                )
        elif family in {"ES+", "ES-"}:
            if n < 3 or n % 2 == 0:
                raise DescriptorSyntaxError(
                    pos, {f"order 2^(2r+1), r >= 1, for {family}"}, str(order)
                )
        elif family == "AES":
            if n < 4 or n % 2 == 1:
                raise DescriptorSyntaxError(pos, {"order 2^(2r+2), r >= 1, for AES"}, str(order))


def parse_descriptor(text: str) -> Node:
    """Parse a descriptor string to its AST, or raise a positioned syntax error."""
    return _Parser(text).parse()


def canonicalize(node: Node) -> Node:
    """Canonical AST: flattened products, sorted direct factors, merged cyclic powers."""
    if isinstance(node, (Cyclic, NamedFamily)):
        return node
    if isinstance(node, CyclicPower):
        return Cyclic(node.modulus) if node.copies == 1 else node
    if isinstance(node, Dihedralization):
        return Dihedralization(canonicalize(node.base))
    if isinstance(node, Dicyclization):
        return Dicyclization(canonicalize(node.base), node.involution_index)
    if isinstance(node, CentralProduct):
        flat: list[Node] = []
        for f in node.factors:
            f = canonicalize(f)
            if isinstance(f, CentralProduct):
                flat.extend(f.factors)
            else:
                flat.append(f)
        return flat[0] if len(flat) == 1 else CentralProduct(tuple(flat))
    if isinstance(node, DirectProduct):
        flat = []
        for f in node.factors:
            f = canonicalize(f)
            if isinstance(f, DirectProduct):
                flat.extend(f.factors)
            else:
                flat.append(f)
        merged: dict[int, int] = {}
        rest: list[Node] = []
        for f in flat:
            if isinstance(f, Cyclic):
                merged[f.modulus] = merged.get(f.modulus, 0) + 1
            elif isinstance(f, CyclicPower):
                merged[f.modulus] = merged.get(f.modulus, 0) + f.copies
            else:
                rest.append(f)
        for modulus, copies in merged.items():
            rest.append(Cyclic(modulus) if copies == 1 else CyclicPower(modulus, copies))
        rest.sort(key=canonical_string)
        return rest[0] if len(rest) == 1 else DirectProduct(tuple(rest))
    raise TypeError(f"not a descriptor node: {node!r}")


def canonical_string(node: Node) -> str:
    """Render a node; canonical when the node itself is canonical."""
    if isinstance(node, Cyclic):
        return f"Z{node.modulus}"
    if isinstance(node, CyclicPower):
        return f"Z{node.modulus}^{node.copies}"
    if isinstance(node, NamedFamily):
        if node.family in {"ES+", "ES-", "AES"}:
            return f"{node.family}({node.order})"
        return f"{node.family}{node.order}"
    if isinstance(node, Dihedralization):
        return f"Dih({canonical_string(node.base)})"
    if isinstance(node, Dicyclization):
        if node.involution_index is None:
            return f"Dic({canonical_string(node.base)})"
        return f"Dic({canonical_string(node.base)}, {node.involution_index})"
    if isinstance(node, DirectProduct):
        return " x ".join(canonical_string(f) for f in node.factors)
    if isinstance(node, CentralProduct):
        return "*".join(canonical_string(f) for f in node.factors)
    raise TypeError(f"not a descriptor node: {node!r}")


def canonical_key(text: str) -> str:
    """Canonical string form of a descriptor given as text; used as cache key."""
    return canonical_string(canonicalize(parse_descriptor(text)))


def predicted_order(node: Node) -> int:
    """Group order implied by the descriptor, before any construction."""
    if isinstance(node, Cyclic):
        return node.modulus
    if isinstance(node, CyclicPower):
        return node.modulus**node.copies
    if isinstance(node, NamedFamily):
        return node.order
    if isinstance(node, (Dihedralization, Dicyclization)):
        return 2 * predicted_order(node.base)
    if isinstance(node, DirectProduct):
        return prod(predicted_order(f) for f in node.factors)
    if isinstance(node, CentralProduct):
        total = prod(predicted_order(f) for f in node.factors)
        return total // 2 ** (len(node.factors) - 1)
    raise TypeError(f"not a descriptor node: {node!r}")


def _build_extraspecial(family: str, order: int) -> Group:
    n = order.bit_length() - 1
    if family == "AES":
        r = (n - 2) // 2
        g = _build_extraspecial("ES+", 2 ** (2 * r + 1))
        return groups.central_product(g, groups.build_cyclic(4))
    r = (n - 1) // 2
    g = groups.dihedral(8) if family == "ES+" else groups.generalized_quaternion(8)
    for _ in range(r - 1):
        g = groups.central_product(g, groups.dihedral(8))
    return g


def _dicyclic_twist(base: Group, index: int | None) -> Element:
    identity = base.identity
    if index is None:
        z = base.central_involution
        if z is None:
            raise ValueError("base group has no designated involution; pass an explicit index")
        return z
    invs = [
        e
        for e in sorted(base.elements())
        if e != identity and base.multiply(e, e) == identity
    ]
    if not 0 <= index < len(invs):
        raise ValueError(
            f"involution index {index} out of range; base has {len(invs)} involutions"
        )
    return invs[index]


def build(node: Node) -> Group:
    """Construct the group described by an AST node."""
    expected = predicted_order(node)
    if expected > groups.ORDER_CAP:
        raise CapExceeded(f"descriptor order {expected} exceeds the cap {groups.ORDER_CAP}")
    g = _build(node)
    if g.order != expected:
        raise groups.InternalInconsistency(
            f"descriptor predicts order {expected} but construction gives {g.order}"
        )
    return g


def _build(node: Node) -> Group:
    if isinstance(node, Cyclic):
        return groups.build_cyclic(node.modulus)
    if isinstance(node, CyclicPower):
        return groups.build_abelian((node.modulus,) * node.copies)
    if isinstance(node, NamedFamily):
        if node.family == "D":
            return groups.dihedral(node.order)
        if node.family == "Q":
            return groups.generalized_quaternion(node.order)
        if node.family == "SD":
            return groups.semidihedral(node.order)
        if node.family == "M":
            return groups.modular_maximal_cyclic(node.order)
        return _build_extraspecial(node.family, node.order)
    if isinstance(node, Dihedralization):
        return groups.build_generalized_dihedral(_build(node.base))
    if isinstance(node, Dicyclization):
        base = _build(node.base)
        return groups.build_generalized_dicyclic(base, _dicyclic_twist(base, node.involution_index))
    if isinstance(node, DirectProduct):
        acc = _build(node.factors[0])
        for f in node.factors[1:]:
            acc = groups.direct_product(acc, _build(f))
        return acc
    if isinstance(node, CentralProduct):
        acc = _build(node.factors[0])
        for f in node.factors[1:]:
            acc = groups.central_product(acc, _build(f))
        return acc
    raise TypeError(f"not a descriptor node: {node!r}")


def build_from_descriptor(text: str) -> Group:
    """Parse and construct in one step."""
    return build(parse_descriptor(text))


def shape_descriptor(partition, p: int = 2) -> str:
    """Canonical descriptor of the abelian p-group with the given exponent partition."""
    factors: list[Node] = []
    for d in partition:
        factors.append(Cyclic(p**d))
    node = factors[0] if len(factors) == 1 else DirectProduct(tuple(factors))
    return canonical_string(canonicalize(node))
