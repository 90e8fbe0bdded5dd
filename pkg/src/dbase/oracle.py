"""Exhaustive-scan reference implementations used as ground truth in tests.

Everything here enumerates all 2^|U| subsets (closure tables are vectorized
with numpy, the scan itself is exhaustive) and exists solely to cross-check
the real algorithms; nothing in the main code paths depends on this module.
"""
from __future__ import annotations

import numpy as np

from .closure import ClosureContext
from .errors import GroundTooLarge, NonBinaryImplication
from .model import ElementSet, ImplicationalBase, Relation, SetFamily

ORACLE_MAX_GROUND = 16


class BruteForce:
    """Full closure tables over all subsets, with generator scans on top."""

    def __init__(self, ctx: ClosureContext, *, max_ground: int = ORACLE_MAX_GROUND):
        n = len(ctx.ground)
        if n > max_ground:
            raise GroundTooLarge(f"{n} elements exceeds oracle maximum {max_ground}")
        self.ctx = ctx
        self.n = n
        self.masks = np.arange(1 << n, dtype=np.uint32)
        self.cl = self._closure_table()
        self.clb = self._binary_closure_table()

    def _closure_table(self) -> np.ndarray:
        ctx, masks = self.ctx, self.masks
        if ctx.mode == "mi":
            cl = np.full(len(masks), np.uint32(ctx.full_mask), dtype=np.uint32)
            for m in ctx._mi_masks:
                inside = (masks & np.uint32(~m & ctx.full_mask)) == 0
                cl[inside] &= np.uint32(m)
            return cl
        cl = masks.copy()
        if ctx._seed_bits:
            cl |= np.uint32(ctx._seed_bits)
        imps = [
            (np.uint32(p), np.uint32(1 << c))
            for p, c in zip(ctx._premises, ctx._concls)
        ]
        changed = True
        while changed:
            changed = False
            for pbits, cbit in imps:
                fire = ((cl & pbits) == pbits) & ((cl & cbit) == 0)
                if fire.any():
                    cl[fire] |= cbit
                    changed = True
        return cl

    def _binary_closure_table(self) -> np.ndarray:
        clb = np.zeros(len(self.masks), dtype=np.uint32)
        for a in range(self.n):
            abit = np.uint32(1 << a)
            clb[(self.masks & abit) != 0] |= np.uint32(self.ctx.singleton_closure(a))
        return clb

    def minimal_generator_masks(self, c: int) -> list[int]:
        """Non-trivial minimal generators of c by exhaustive scan."""
        cbit = np.uint32(1 << c)
        cand = ((self.cl & cbit) != 0) & ((self.masks & cbit) == 0)
        idx = np.flatnonzero(cand).astype(np.uint32)
        keep = np.ones(len(idx), dtype=bool)
        for a in range(self.n):
            abit = np.uint32(1 << a)
            with_a = (idx & abit) != 0
            reduced = idx[with_a] ^ abit
            keep[with_a] &= (self.cl[reduced] & cbit) == 0
        return [int(m) for m in idx[keep]]

    def d_generator_masks(self, c: int) -> list[int]:
        """Minimal generators filtered by the cl^b-minimality definition."""
        gens = self.minimal_generator_masks(c)
        cbit = 1 << c
        out = []
        for a_mask in gens:
            closure_b = int(self.clb[a_mask])
            if closure_b & cbit:
                continue
            if any(g != a_mask and g & ~closure_b == 0 for g in gens):
                continue
            out.append(a_mask)
        return out

    def minimal_generators(self, c: int) -> list[ElementSet]:
        return [ElementSet(self.ctx.ground, m) for m in self.minimal_generator_masks(c)]

    def d_generators(self, c: int) -> list[ElementSet]:
        return [ElementSet(self.ctx.ground, m) for m in self.d_generator_masks(c)]

    def canonical_direct_base(self) -> ImplicationalBase:
        pairs = []
        for c in range(self.n):
            pairs.extend((m, c) for m in self.minimal_generator_masks(c))
        return ImplicationalBase.build(self.ctx.ground, pairs).canonicalize()

    def _binary_pairs(self) -> list[tuple[int, int]]:
        pairs = []
        for a in range(self.n):
            rest = self.ctx.singleton_closure(a) & ~(1 << a)
            pairs.extend((1 << a, c) for c in ElementSet(self.ctx.ground, rest))
        return pairs

    def d_base(self) -> ImplicationalBase:
        pairs = self._binary_pairs()
        for c in range(self.n):
            pairs.extend((m, c) for m in self.d_generator_masks(c))
        return ImplicationalBase.build(self.ctx.ground, pairs).canonicalize()

    def d_relation(self) -> Relation:
        arcs = set()
        for c in range(self.n):
            for m in self.d_generator_masks(c):
                arcs.update((c, a) for a in ElementSet(self.ctx.ground, m))
        return Relation(self.ctx.ground, arcs)

    def delta_relation(self) -> Relation:
        arcs = set()
        for c in range(self.n):
            for m in self.minimal_generator_masks(c):
                arcs.update((c, a) for a in ElementSet(self.ctx.ground, m))
        return Relation(self.ctx.ground, arcs)

    def closed_masks(self) -> list[int]:
        eq = np.flatnonzero(self.cl == self.masks)
        return [int(m) for m in eq]


def brute_minimal_generators(
    ctx: ClosureContext, c: int, *, max_ground: int = ORACLE_MAX_GROUND
) -> list[ElementSet]:
    return BruteForce(ctx, max_ground=max_ground).minimal_generators(c)


def brute_canonical_direct_base(
    ctx: ClosureContext, *, max_ground: int = ORACLE_MAX_GROUND
) -> ImplicationalBase:
    return BruteForce(ctx, max_ground=max_ground).canonical_direct_base()


def brute_d_generators(
    ctx: ClosureContext, c: int, *, max_ground: int = ORACLE_MAX_GROUND
) -> list[ElementSet]:
    return BruteForce(ctx, max_ground=max_ground).d_generators(c)


def brute_d_base(
    ctx: ClosureContext, *, max_ground: int = ORACLE_MAX_GROUND
) -> ImplicationalBase:
    return BruteForce(ctx, max_ground=max_ground).d_base()


def brute_d_relation(
    ctx: ClosureContext, *, max_ground: int = ORACLE_MAX_GROUND
) -> Relation:
    return BruteForce(ctx, max_ground=max_ground).d_relation()


def brute_dual(
    binary_ib: ImplicationalBase,
    b_plus: SetFamily,
    *,
    max_ground: int = ORACLE_MAX_GROUND,
) -> SetFamily:
    """Dual antichain by scanning every closed set of the binary system."""
    for imp in binary_ib:
        if not imp.is_binary:
            raise NonBinaryImplication(f"non-binary implication {imp!r}")
    ctx = ClosureContext.from_ib(binary_ib)
    brute = BruteForce(ctx, max_ground=max_ground)
    uppers = b_plus.bit_list()
    escaping = [
        m for m in brute.closed_masks() if all(m & ~b for b in uppers)
    ]
    minimal: list[int] = []
    for m in sorted(escaping, key=int.bit_count):
        if not any(k & ~m == 0 for k in minimal):
            minimal.append(m)
    return SetFamily.from_bits(binary_ib.ground, minimal).canonicalize()
