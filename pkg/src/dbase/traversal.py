"""D-base enumeration from an implicational base by solution-graph traversal.

For a target element c, the D-generators of c are exactly the D-minimal keys
of the reduced base (U_c, Sigma_c); the solution graph on them is traversed
breadth-first, with transitions obtained by substituting a premise of Sigma_c
into the binary closure of the current generator and re-minimizing greedily
(the Min procedure).  The whole D-base enumeration overlays those graphs and
restarts from a fresh Min(U_c) whenever a target's component is untouched,
which yields every implication exactly once with polynomial delay.  The
visited set may grow exponentially; ``max_states`` caps it.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .closure import ClosureContext, binary_part, is_standard
from .errors import (
    NoDGenerators,
    NotDGenerator,
    NotSpanning,
    NotStandard,
    StateLimitExceeded,
    TargetInSet,
)
from .model import ElementSet, Implication, ImplicationalBase, iter_bits

ORDER_POLICIES = ("size-label", "natural")


def is_d_generator(ctx: ClosureContext, aset: ElementSet, c: int) -> bool:
    """Test A in genD(c) with at most 2|U| closure calls.

    Characterization: c in cl(A) and, for every a in A, c not in
    cl(cl^b(A) minus a).
    """
    bits = aset.bits
    if bits >> c & 1:
        raise TargetInSet(f"target {ctx.ground.label(c)!r} belongs to the set")
    if not ctx.close_bits(bits) >> c & 1:
        return False
    clb = ctx.close_binary_bits(bits)
    for a in iter_bits(bits):
        if ctx.close_bits(clb & ~(1 << a)) >> c & 1:
            return False
    return True


def restricted_universe(ctx: ClosureContext, c: int) -> ElementSet:
    """U_c: the elements whose singleton closure avoids c."""
    bits = 0
    for a in range(len(ctx.ground)):
        if not ctx.singleton_closure(a) >> c & 1:
            bits |= 1 << a
    return ElementSet(ctx.ground, bits)


def has_d_generators(ctx: ClosureContext, c: int) -> bool:
    """True iff U_c is not closed, i.e. c in cl(U_c)."""
    return ctx.close_bits(restricted_universe(ctx, c).bits) >> c & 1 == 1


def element_order(ctx: ClosureContext, policy: str = "size-label") -> tuple[int, ...]:
    """Global linear order used by Min.

    ``size-label`` sorts by (|cl^b(a)|, label), a linear extension of the
    cl^b-containment order in standard systems.  ``natural`` is declaration
    order; it may not extend cl^b-containment, which only changes which
    D-generator Min picks, never the enumerated set.
    """
    if policy not in ORDER_POLICIES:
        raise ValueError(f"unknown order policy {policy!r}")
    names = ctx.ground.names
    if policy == "natural":
        return tuple(range(len(names)))
    return tuple(
        sorted(
            range(len(names)),
            key=lambda a: (ctx.singleton_closure(a).bit_count(), names[a]),
        )
    )


@dataclass(frozen=True)
class ReducedBase:
    """The restriction (U_c, Sigma_c) used to enumerate genD(c)."""

    target: int
    universe: ElementSet
    base: ImplicationalBase
    ordering: tuple[int, ...]


def build_reduced_base(
    ib: ImplicationalBase,
    c: int,
    *,
    order: str = "size-label",
    ctx: ClosureContext | None = None,
) -> ReducedBase:
    """Construct Sigma_c = Sigma_1 union Sigma_2 over U_c.

    Sigma_1 keeps the implications living inside U_c; Sigma_2 rewrites each
    A -> d with A inside U_c but d outside into A -> b for every
    b in U_c minus cl^b(A).
    """
    ctx = ctx or ClosureContext.from_ib(ib)
    std, witness = is_standard(ctx)
    if not std:
        raise NotStandard(f"cl({ib.ground.label(witness)}) minus itself is not closed")
    if not has_d_generators(ctx, c):
        raise NoDGenerators(f"{ib.ground.label(c)!r} has no D-generators")
    universe = restricted_universe(ctx, c)
    ubits = universe.bits
    pairs: list[tuple[int, int]] = []
    for imp in ib:
        pbits = imp.premise.bits
        if pbits & ~ubits:
            continue
        if ubits >> imp.conclusion & 1:
            pairs.append((pbits, imp.conclusion))
        else:
            for b in iter_bits(ubits & ~ctx.close_binary_bits(pbits)):
                pairs.append((pbits, b))
    base = ImplicationalBase.build(ib.ground, pairs)
    ordering = tuple(a for a in element_order(ctx, order) if ubits >> a & 1)
    return ReducedBase(target=c, universe=universe, base=base, ordering=ordering)


def reduced_context(rb: ReducedBase) -> ClosureContext:
    """Closure context of (U_c, Sigma_c); its cl^b equals the original cl^b
    on subsets of U_c."""
    return ClosureContext.from_ib(rb.base)


def _extreme_in_binary(ctx_c: ClosureContext, bits: int, x: int) -> bool:
    # x is cl^b-extreme in the cl^b-closed set iff no other member's
    # singleton closure contains it.
    return ctx_c.containers(x) & bits == 1 << x


def _min_reduce_bits(rb: ReducedBase, ctx_c: ClosureContext, fbits: int) -> int:
    """Greedy Min on a cl_c^b-closed generator; returns D-generator bits.

    An element that once fails the removability test stays unremovable
    (closures only shrink as the set does), so each element is closure-tested
    at most once: at most 2|U| closure calls per reduction.
    """
    ubits = rb.universe.bits
    cur = fbits
    dead = 0
    while True:
        for x in rb.ordering:
            bx = 1 << x
            if not cur & bx or dead & bx:
                continue
            if ctx_c.containers(x) & cur != bx:
                continue  # not extreme in the current set; may become so
            if ctx_c.close_bits(cur & ~bx) == ubits:
                cur &= ~bx
                break
            dead |= bx
        else:
            break
    kernel = 0
    for x in iter_bits(cur):
        if _extreme_in_binary(ctx_c, cur, x):
            kernel |= 1 << x
    return kernel


class _TargetEngine:
    """Transition machinery for one target: grouped windows plus a Min memo.

    Candidate windows obey cl^b(X union Y) = cl^b(X) | cl^b(Y), so each
    non-binary implication contributes one OR against a per-conclusion base;
    duplicates collapse before any Min work, and Min results are memoized by
    window across the whole traversal.
    """

    __slots__ = ("rb", "ctx", "ubits", "transitions", "memo")

    def __init__(self, rb: ReducedBase, ctx_c: ClosureContext):
        self.rb = rb
        self.ctx = ctx_c
        self.ubits = rb.universe.bits
        groups: dict[int, set[int]] = {}
        for imp in rb.base:
            if not imp.is_binary:
                groups.setdefault(imp.conclusion, set()).add(
                    ctx_c.close_binary_bits(imp.premise.bits)
                )
        self.transitions = [
            (ctx_c.singleton_closure(d), tuple(clbs)) for d, clbs in groups.items()
        ]
        self.memo: dict[int, int | None] = {}

    def neighbor_bits(self, abits: int) -> set[int]:
        ctx = self.ctx
        clb_a = ctx.close_binary_bits(abits)
        windows: set[int] = set()
        for cl_d, premise_closures in self.transitions:
            base = ctx.close_binary_bits(clb_a & ~cl_d)
            for clbp in premise_closures:
                windows.add(base | clbp)
        out: set[int] = set()
        memo = self.memo
        for window in windows:
            if window in memo:
                reduced = memo[window]
            else:
                if ctx.close_bits(window) == self.ubits:
                    reduced = _min_reduce_bits(self.rb, ctx, window)
                else:
                    reduced = None
                memo[window] = reduced
            if reduced is not None:
                out.add(reduced)
        return out


def min_reduce(rb: ReducedBase, ctx_c: ClosureContext, fset: ElementSet) -> ElementSet:
    """Min procedure: repeatedly drop the first removable extreme element of
    the current cl_c^b-closed set (first in the fixed ordering, removable
    when the remainder still generates U_c), then return the minimal spanning
    set of what is left, a D-generator of the target."""
    fbits = fset.bits
    if ctx_c.close_binary_bits(fbits) != fbits:
        raise NotSpanning(f"{fset!r} is not closed under the reduced binary part")
    if ctx_c.close_bits(fbits) != rb.universe.bits:
        raise NotSpanning(f"{fset!r} does not generate the restricted universe")
    return ElementSet(rb.base.ground, _min_reduce_bits(rb, ctx_c, fbits))


def _is_reduced_d_key(rb: ReducedBase, ctx_c: ClosureContext, bits: int) -> bool:
    # D-minimal key test inside (U_c, Sigma_c); mirrors is_d_generator with
    # "c in cl(.)" replaced by "cl_c(.) = U_c".
    ubits = rb.universe.bits
    if ctx_c.close_bits(bits) != ubits:
        return False
    clb = ctx_c.close_binary_bits(bits)
    for a in iter_bits(bits):
        if ctx_c.close_bits(clb & ~(1 << a)) == ubits:
            return False
    return True


def neighbors(rb: ReducedBase, ctx_c: ClosureContext, aset: ElementSet) -> list[ElementSet]:
    """Transition function N(A): one Min-reduced candidate per non-binary
    implication B -> d of Sigma_c, from cl_c^b((cl_c^b(A) minus cl_c^b(d))
    union B); deduplicated."""
    if not _is_reduced_d_key(rb, ctx_c, aset.bits):
        raise NotDGenerator(f"{aset!r} is not a D-generator of the target")
    ground = rb.base.ground
    engine = _TargetEngine(rb, ctx_c)
    return [ElementSet(ground, b) for b in sorted(engine.neighbor_bits(aset.bits))]


def enumerate_d_generators(
    ib: ImplicationalBase, c: int, *, order: str = "size-label"
) -> Iterator[ElementSet]:
    """All D-generators of c, each exactly once (BFS over the solution graph)."""
    ctx = ClosureContext.from_ib(ib)
    std, witness = is_standard(ctx)
    if not std:
        raise NotStandard(f"cl({ib.ground.label(witness)}) minus itself is not closed")
    if not has_d_generators(ctx, c):
        return
    rb = build_reduced_base(ib, c, order=order, ctx=ctx)
    engine = _TargetEngine(rb, reduced_context(rb))
    start = _min_reduce_bits(rb, engine.ctx, rb.universe.bits)
    visited = {start}
    queue = deque([start])
    while queue:
        bits = queue.popleft()
        yield ElementSet(ib.ground, bits)
        for nxt in engine.neighbor_bits(bits):
            if nxt not in visited:
                visited.add(nxt)
                queue.append(nxt)


class _DBaseRun:
    """Shared state for one full D-base enumeration."""

    def __init__(self, ib: ImplicationalBase, order: str, max_states: int | None):
        self.ib = ib
        self.ctx = ClosureContext.from_ib(ib)
        std, witness = is_standard(self.ctx)
        if not std:
            raise NotStandard(
                f"cl({ib.ground.label(witness)}) minus itself is not closed"
            )
        self.order = order
        self.max_states = max_states
        self.pending = [
            c for c in range(len(ib.ground)) if has_d_generators(self.ctx, c)
        ]
        self.pending_set = set(self.pending)
        self.engines: dict[int, _TargetEngine] = {}

    def engine_for(self, c: int) -> _TargetEngine:
        if c not in self.engines:
            rb = build_reduced_base(self.ib, c, order=self.order, ctx=self.ctx)
            self.engines[c] = _TargetEngine(rb, reduced_context(rb))
        return self.engines[c]

    def targets_of(self, bits: int) -> list[int]:
        aset = ElementSet(self.ib.ground, bits)
        closure = self.ctx.close_bits(bits)
        return [
            c
            for c in iter_bits(closure & ~bits)
            if c in self.pending_set and is_d_generator(self.ctx, aset, c)
        ]

    def run(self) -> Iterator[Implication]:
        ground = self.ib.ground
        for imp in binary_part(self.ctx):
            yield imp
        done: set[int] = set()
        visited: set[int] = set()
        for c in self.pending:
            if c in done:
                continue
            engine = self.engine_for(c)
            start = _min_reduce_bits(engine.rb, engine.ctx, engine.ubits)
            if start in visited:
                # The component holding genD(c) was fully explored already.
                done.add(c)
                continue
            queue = deque([start])
            visited.add(start)
            while queue:
                bits = queue.popleft()
                targets = self.targets_of(bits)
                aset = ElementSet(ground, bits)
                for t in targets:
                    done.add(t)
                    yield Implication(aset, t)
                for t in targets:
                    for nxt in self.engine_for(t).neighbor_bits(bits):
                        if nxt not in visited:
                            if (
                                self.max_states is not None
                                and len(visited) >= self.max_states
                            ):
                                raise StateLimitExceeded(
                                    f"visited-set cap {self.max_states} reached"
                                )
                            visited.add(nxt)
                            queue.append(nxt)


def iter_d_base(
    ib: ImplicationalBase,
    *,
    order: str = "size-label",
    max_states: int | None = None,
) -> Iterator[Implication]:
    """Stream the D-base: the full binary part first, then one implication
    A -> c per (D-generator, target) pair as the traversal visits A."""
    return _DBaseRun(ib, order, max_states).run()


def d_base(
    ib: ImplicationalBase,
    *,
    order: str = "size-label",
    max_states: int | None = None,
) -> ImplicationalBase:
    """The D-base as a canonical implicational base."""
    imps = list(iter_d_base(ib, order=order, max_states=max_states))
    return ImplicationalBase(ib.ground, imps).canonicalize()
