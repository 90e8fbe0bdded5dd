"""Ground sets, bitset element sets, implications, set families and relations.

Elements are interned to dense 0-based indices at parse time; every algorithm
works on indices (int bitmasks), labels appear only at I/O boundaries.  All
types are immutable after construction and safe to share across threads.

Text formats
------------
IB file: first non-comment line ``ground: <label>+``, then one implication per
non-comment line ``<label>+ -> <label>+`` (multi-conclusion lines expand to
unit implications).  ``#`` starts a comment.  Set-family file: ground line,
then one set per line as whitespace-separated labels; a line holding the
single token ``.`` denotes the empty set (which can genuinely occur, e.g. as a
meet-irreducible of a chain).  Labels may not be empty, contain whitespace or
``->``, or equal ``.``; the label ``_d`` is reserved for the dualization
gadget and rejected in user input.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    DuplicateGround,
    DuplicateSet,
    GroundTooLarge,
    ParseError,
    UnknownElement,
)

DEFAULT_MAX_GROUND = 64
RESERVED_DUAL_LABEL = "_d"
EMPTY_SET_TOKEN = "."


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``bits``, lowest first."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


class GroundSet:
    """Ordered universe of distinct element labels with dense indexing."""

    __slots__ = ("names", "index", "full_mask")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        index: dict[str, int] = {}
        for pos, name in enumerate(names):
            if not name or name == EMPTY_SET_TOKEN:
                raise ParseError(f"invalid element label {name!r}")
            if "->" in name or any(ch.isspace() for ch in name):
                raise ParseError(f"invalid element label {name!r}")
            if name in index:
                raise DuplicateGround(f"duplicate element label {name!r}")
            index[name] = pos
        self.names = names
        self.index = index
        self.full_mask = (1 << len(names)) - 1

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroundSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"GroundSet({' '.join(self.names)})"

    def label(self, pos: int) -> str:
        return self.names[pos]

    def position(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise UnknownElement(f"unknown element {label!r}") from None

    def empty(self) -> "ElementSet":
        return ElementSet(self, 0)

    def full(self) -> "ElementSet":
        return ElementSet(self, self.full_mask)

    def set_of(self, labels: Iterable[str]) -> "ElementSet":
        bits = 0
        for label in labels:
            bits |= 1 << self.position(label)
        return ElementSet(self, bits)


@dataclass(frozen=True, slots=True)
class ElementSet:
    """Immutable subset of a ground set backed by an int bitmask."""

    ground: GroundSet
    bits: int

    def __post_init__(self) -> None:
        if self.bits & ~self.ground.full_mask:
            raise ValueError("bits outside the ground set")

    def _check(self, other: "ElementSet") -> None:
        if self.ground != other.ground:
            raise ValueError("element sets over different ground sets")

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.ground, self.bits | other.bits)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.ground, self.bits & other.bits)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.ground, self.bits & ~other.bits)

    def __le__(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "ElementSet") -> bool:
        return self <= other and self.bits != other.bits

    def __contains__(self, pos: int) -> bool:
        return self.bits >> pos & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def labels(self) -> tuple[str, ...]:
        return tuple(self.ground.names[i] for i in self)

    def with_element(self, pos: int) -> "ElementSet":
        return ElementSet(self.ground, self.bits | 1 << pos)

    def without_element(self, pos: int) -> "ElementSet":
        return ElementSet(self.ground, self.bits & ~(1 << pos))

    def __repr__(self) -> str:
        return "{%s}" % " ".join(self.labels())


@dataclass(frozen=True, slots=True)
class Implication:
    """Unit implication: all of ``premise`` forces ``conclusion``."""

    premise: ElementSet
    conclusion: int

    def __post_init__(self) -> None:
        if self.conclusion in self.premise:
            raise ValueError("tautological implication")
        if not 0 <= self.conclusion < len(self.premise.ground):
            raise ValueError("conclusion outside the ground set")

    @property
    def is_binary(self) -> bool:
        return len(self.premise) == 1

    def sort_key(self) -> tuple:
        # Canonical order: binary first by (premise element, conclusion),
        # then non-binary by (sorted premise indices, conclusion).
        if self.is_binary:
            return (0, (next(iter(self.premise)),), self.conclusion)
        return (1, tuple(self.premise), self.conclusion)

    def format(self) -> str:
        names = self.premise.ground.names
        lhs = " ".join(names[i] for i in self.premise)
        return f"{lhs} -> {names[self.conclusion]}"

    def __repr__(self) -> str:
        return f"<{self.format()}>"


class ImplicationalBase:
    """Ordered, duplicate-free collection of unit implications."""

    __slots__ = ("ground", "implications")

    def __init__(self, ground: GroundSet, implications: Iterable[Implication]):
        seen: set[tuple[int, int]] = set()
        kept: list[Implication] = []
        for imp in implications:
            if imp.premise.ground != ground:
                raise ValueError("implication over a different ground set")
            key = (imp.premise.bits, imp.conclusion)
            if key not in seen:
                seen.add(key)
                kept.append(imp)
        self.ground = ground
        self.implications = tuple(kept)

    @classmethod
    def build(
        cls, ground: GroundSet, pairs: Iterable[tuple[int, int]]
    ) -> "ImplicationalBase":
        """Build from raw (premise bits, conclusion) pairs, dropping tautologies."""
        imps = [
            Implication(ElementSet(ground, bits), concl)
            for bits, concl in pairs
            if not bits >> concl & 1
        ]
        return cls(ground, imps)

    def __iter__(self) -> Iterator[Implication]:
        return iter(self.implications)

    def __len__(self) -> int:
        return len(self.implications)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ImplicationalBase)
            and self.ground == other.ground
            and self.implications == other.implications
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.implications))

    def __repr__(self) -> str:
        return f"ImplicationalBase({len(self.implications)} implications over {len(self.ground)} elements)"

    def binary(self) -> list[Implication]:
        return [imp for imp in self.implications if imp.is_binary]

    def nonbinary(self) -> list[Implication]:
        return [imp for imp in self.implications if not imp.is_binary]

    def canonicalize(self) -> "ImplicationalBase":
        return ImplicationalBase(
            self.ground, sorted(self.implications, key=Implication.sort_key)
        )


class SetFamily:
    """Ordered listing of subsets of one ground set."""

    __slots__ = ("ground", "sets")

    def __init__(self, ground: GroundSet, sets: Iterable[ElementSet]):
        sets = tuple(sets)
        for es in sets:
            if es.ground != ground:
                raise ValueError("member over a different ground set")
        self.ground = ground
        self.sets = sets

    @classmethod
    def from_bits(cls, ground: GroundSet, masks: Iterable[int]) -> "SetFamily":
        return cls(ground, [ElementSet(ground, m) for m in masks])

    def bit_list(self) -> list[int]:
        return [es.bits for es in self.sets]

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SetFamily)
            and self.ground == other.ground
            and self.sets == other.sets
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.sets))

    def __repr__(self) -> str:
        return f"SetFamily({', '.join(repr(s) for s in self.sets)})"

    def canonicalize(self) -> "SetFamily":
        masks = sorted(set(self.bit_list()), key=lambda m: tuple(iter_bits(m)))
        return SetFamily.from_bits(self.ground, masks)


class Relation:
    """Irreflexive binary relation over a ground set, stored as arcs (c, a)."""

    __slots__ = ("ground", "arcs")

    def __init__(self, ground: GroundSet, arcs: Iterable[tuple[int, int]]):
        arcs = frozenset(arcs)
        for c, a in arcs:
            if c == a:
                raise ValueError("relation must be irreflexive")
        self.ground = ground
        self.arcs = arcs

    def __len__(self) -> int:
        return len(self.arcs)

    def __contains__(self, arc: tuple[int, int]) -> bool:
        return arc in self.arcs

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Relation)
            and self.ground == other.ground
            and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.arcs))

    def __le__(self, other: "Relation") -> bool:
        return self.arcs <= other.arcs

    def pairs_sorted(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def __repr__(self) -> str:
        names = self.ground.names
        body = ", ".join(f"{names[c]}->{names[a]}" for c, a in self.pairs_sorted())
        return f"Relation({body})"


def _content_lines(text: str) -> list[list[str]]:
    """Tokenized non-empty lines with comments stripped."""
    lines = []
    for raw in text.splitlines():
        body = raw.split("#", 1)[0]
        tokens = body.split()
        if tokens:
            lines.append(tokens)
    return lines


def _parse_ground(
    lines: list[list[str]], max_ground: int
) -> tuple[GroundSet, list[list[str]]]:
    if not lines:
        raise ParseError("missing ground line")
    head = lines[0]
    if head[0] != "ground:":
        raise ParseError("first line must start with 'ground:'")
    labels = head[1:]
    if not labels:
        raise ParseError("ground line declares no elements")
    if len(labels) > max_ground:
        raise GroundTooLarge(f"{len(labels)} elements exceeds maximum {max_ground}")
    if RESERVED_DUAL_LABEL in labels:
        raise ParseError(f"label {RESERVED_DUAL_LABEL!r} is reserved")
    for tokens in lines[1:]:
        if tokens[0] == "ground:":
            raise DuplicateGround("more than one ground line")
    return GroundSet(labels), lines[1:]


def parse_ib(
    text: str,
    *,
    allow_empty_premise: bool = False,
    max_ground: int = DEFAULT_MAX_GROUND,
) -> ImplicationalBase:
    """Parse an implicational base; expands multi-conclusion lines to unit
    implications, drops tautologies and duplicates."""
    ground, body = _parse_ground(_content_lines(text), max_ground)
    pairs: list[tuple[int, int]] = []
    for tokens in body:
        arrows = [i for i, tok in enumerate(tokens) if tok == "->"]
        if any("->" in tok and tok != "->" for tok in tokens):
            raise ParseError(f"malformed arrow in line {' '.join(tokens)!r}")
        if len(arrows) != 1:
            raise ParseError(f"expected exactly one '->' in line {' '.join(tokens)!r}")
        split = arrows[0]
        premise_tokens, conclusion_tokens = tokens[:split], tokens[split + 1 :]
        if not premise_tokens and not allow_empty_premise:
            raise ParseError("empty premise (use allow_empty_premise to permit)")
        if not conclusion_tokens:
            raise ParseError(f"missing conclusion in line {' '.join(tokens)!r}")
        premise = 0
        for tok in premise_tokens:
            premise |= 1 << ground.position(tok)
        for tok in conclusion_tokens:
            pairs.append((premise, ground.position(tok)))
    return ImplicationalBase.build(ground, pairs)


def parse_set_family(
    text: str, *, max_ground: int = DEFAULT_MAX_GROUND
) -> SetFamily:
    """Parse a set family: one set per line; ``.`` denotes the empty set."""
    ground, body = _parse_ground(_content_lines(text), max_ground)
    masks: list[int] = []
    seen: set[int] = set()
    for tokens in body:
        if tokens == [EMPTY_SET_TOKEN]:
            bits = 0
        elif EMPTY_SET_TOKEN in tokens:
            raise ParseError("'.' must stand alone on its line")
        else:
            bits = 0
            for tok in tokens:
                bits |= 1 << ground.position(tok)
        if bits in seen:
            raise DuplicateSet(f"set {{{' '.join(tokens)}}} listed twice")
        seen.add(bits)
        masks.append(bits)
    return SetFamily.from_bits(ground, masks)


def serialize_ib(ib: ImplicationalBase) -> str:
    """Canonical text form: ground line, binary implications first."""
    out = ["ground: " + " ".join(ib.ground.names)]
    out.extend(imp.format() for imp in ib.canonicalize())
    return "\n".join(out) + "\n"


def serialize_set_family(family: SetFamily) -> str:
    """Canonical text form: ground line, members sorted by index tuple."""
    out = ["ground: " + " ".join(family.ground.names)]
    for es in family.canonicalize():
        out.append(" ".join(es.labels()) if es else EMPTY_SET_TOKEN)
    return "\n".join(out) + "\n"


def serialize_relation(rel: Relation) -> str:
    """Edge list, one ``c -> a`` line per arc, sorted by indices."""
    names = rel.ground.names
    out = [f"{names[c]} -> {names[a]}" for c, a in rel.pairs_sorted()]
    return "\n".join(out) + ("\n" if out else "")
