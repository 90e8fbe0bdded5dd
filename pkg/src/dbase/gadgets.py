"""Generators for the two 1-in-3-SAT reduction instances and their checker.

Both reductions turn a positive 3-CNF into an implicational base whose
D-relation answers the question "does the target D the source?" exactly when
the formula has a 1-in-3 assignment.  ``verify_reduction`` replays the
biconditional with both sides brute-forced, plus the structural claims each
construction promises.  Gadget elements live in the reserved ``_`` namespace
so they never collide with variable labels.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .closure import ClosureContext, is_standard
from .errors import GroundTooLarge, ParseError
from .lattice import implication_graph_acyclic
from .model import (
    ElementSet,
    GroundSet,
    ImplicationalBase,
    iter_bits,
    _content_lines,
)
from .oracle import ORACLE_MAX_GROUND, BruteForce

MAX_CNF_VARS = 16


@dataclass(frozen=True)
class PositiveCnf:
    """A positive 3-CNF: clauses are 3-element subsets of the variables."""

    variables: GroundSet
    clauses: tuple[ElementSet, ...]

    def __post_init__(self) -> None:
        if not self.clauses:
            raise ValueError("a positive 3-CNF needs at least one clause")
        for clause in self.clauses:
            if clause.ground != self.variables:
                raise ValueError("clause over a different variable set")
            if len(clause) != 3:
                raise ValueError(f"clause {clause!r} must have exactly 3 variables")


def parse_cnf(text: str, *, max_vars: int = MAX_CNF_VARS) -> PositiveCnf:
    """Parse ``vars: <label>+`` then one clause of exactly 3 labels per line."""
    lines = _content_lines(text)
    if not lines or lines[0][0] != "vars:":
        raise ParseError("first line must start with 'vars:'")
    labels = lines[0][1:]
    if not labels:
        raise ParseError("vars line declares no variables")
    if len(labels) > max_vars:
        raise GroundTooLarge(f"{len(labels)} variables exceeds maximum {max_vars}")
    if any(label.startswith("_") for label in labels):
        raise ParseError("variable labels may not start with '_' (reserved)")
    variables = GroundSet(labels)
    clauses = []
    for tokens in lines[1:]:
        if len(tokens) != 3 or len(set(tokens)) != 3:
            raise ParseError(f"clause {' '.join(tokens)!r} must have 3 distinct variables")
        clauses.append(variables.set_of(tokens))
    if not clauses:
        raise ParseError("no clauses")
    return PositiveCnf(variables, tuple(clauses))


def serialize_cnf(cnf: PositiveCnf) -> str:
    out = ["vars: " + " ".join(cnf.variables.names)]
    out.extend(" ".join(clause.labels()) for clause in cnf.clauses)
    return "\n".join(out) + "\n"


def random_cnf(rng: random.Random, n_vars: int, n_clauses: int) -> PositiveCnf:
    """Uniform random positive 3-CNF on ``v1..vn`` (clauses may repeat)."""
    if n_vars < 3:
        raise ValueError("need at least 3 variables")
    variables = GroundSet([f"v{i + 1}" for i in range(n_vars)])
    clauses = []
    for _ in range(n_clauses):
        picks = rng.sample(range(n_vars), 3)
        clauses.append(ElementSet(variables, sum(1 << p for p in picks)))
    return PositiveCnf(variables, tuple(clauses))


def conflict_pairs(cnf: PositiveCnf) -> list[int]:
    """Bitmasks of the variable pairs appearing together in some clause."""
    pairs: set[int] = set()
    for clause in cnf.clauses:
        members = list(clause)
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                pairs.add(1 << u | 1 << v)
    return sorted(pairs)


def gen_acyclic_instance(cnf: PositiveCnf) -> tuple[ImplicationalBase, int, int]:
    """Acyclic reduction: ground C union V, premises of size 2, no binary
    implications.  Returns (base, source c_1, target c_{m+1})."""
    m = len(cnf.clauses)
    clause_labels = [f"_c{i + 1}" for i in range(m + 1)]
    ground = GroundSet(tuple(clause_labels) + cnf.variables.names)
    offset = m + 1

    def var_bit(v: int) -> int:
        return 1 << (offset + v)

    pairs: list[tuple[int, int]] = []
    for i, clause in enumerate(cnf.clauses):
        for v in clause:
            pairs.append((1 << i | var_bit(v), i + 1))
    target = m
    for pair in conflict_pairs(cnf):
        shifted = 0
        for v in iter_bits(pair):
            shifted |= var_bit(v)
        pairs.append((shifted, target))
    return ImplicationalBase.build(ground, pairs), 0, target


def gen_lower_bounded_instance(cnf: PositiveCnf) -> tuple[ImplicationalBase, int, int]:
    """Lower-bounded reduction: ground V union C union {a, b}.  Returns
    (base, a, b); the question is whether b D a."""
    m = len(cnf.clauses)
    n = len(cnf.variables)
    clause_labels = [f"_c{j + 1}" for j in range(m)]
    ground = GroundSet(cnf.variables.names + tuple(clause_labels) + ("_a", "_b"))
    a = n + m
    b = n + m + 1
    all_clauses = sum(1 << (n + j) for j in range(m))
    pairs: list[tuple[int, int]] = []
    for j, clause in enumerate(cnf.clauses):
        for v in clause:
            pairs.append((1 << a | 1 << v, n + j))
    pairs.append((all_clauses, b))
    for pair in conflict_pairs(cnf):
        pairs.append((pair, b))
    for j in range(m):
        pairs.append((1 << (n + j), a))
    return ImplicationalBase.build(ground, pairs), a, b


def one_in_three_assignments(
    cnf: PositiveCnf, *, max_vars: int = MAX_CNF_VARS
) -> list[ElementSet]:
    """All T with exactly one variable of every clause, by exhaustive search."""
    n = len(cnf.variables)
    if n > max_vars:
        raise GroundTooLarge(f"{n} variables exceeds maximum {max_vars}")
    clause_masks = [clause.bits for clause in cnf.clauses]
    out = []
    for mask in range(1 << n):
        if all((mask & cm).bit_count() == 1 for cm in clause_masks):
            out.append(ElementSet(cnf.variables, mask))
    return out


@dataclass(frozen=True)
class ReductionReport:
    reduction: str
    d_holds: bool
    assignment_exists: bool
    checks: dict[str, bool]

    @property
    def biconditional(self) -> bool:
        return self.d_holds == self.assignment_exists

    @property
    def structure_ok(self) -> bool:
        return all(self.checks.values())

    @property
    def ok(self) -> bool:
        return self.biconditional and self.structure_ok


def _longest_path_at_most(arcs: Iterable[tuple[int, int]], n: int, limit: int) -> bool:
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for c, a in arcs:
        succ[c].append(a)
        indeg[a] += 1
    # Longest-path DP over a topological order; only called on acyclic inputs.
    order = [v for v in range(n) if indeg[v] == 0]
    depth = [0] * n
    seen = 0
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        seen += 1
        for w in succ[v]:
            depth[w] = max(depth[w], depth[v] + 1)
            indeg[w] -= 1
            if indeg[w] == 0:
                order.append(w)
    if seen < n:
        return False  # cyclic
    return max(depth, default=0) <= limit


def verify_reduction(
    cnf: PositiveCnf,
    which: str,
    *,
    max_ground: int = ORACLE_MAX_GROUND,
) -> ReductionReport:
    """Brute-check the biconditional and the structural claims of a reduction.

    ``which`` is ``"acyclic"`` (premises of size 2, acyclic implication graph,
    question c_{m+1} D c_1) or ``"lower_bounded"`` (standard system, acyclic
    D-relation with paths of length at most 2, question b D a).
    """
    assignment_exists = bool(one_in_three_assignments(cnf))
    if which == "acyclic":
        ib, source, target = gen_acyclic_instance(cnf)
        ctx = ClosureContext.from_ib(ib)
        brute = BruteForce(ctx, max_ground=max_ground)
        d_holds = any(
            g >> source & 1 for g in brute.d_generator_masks(target)
        )
        checks = {
            "premises_of_size_2": all(len(i.premise) == 2 for i in ib),
            "no_binary_implications": not any(i.is_binary for i in ib),
            "implication_graph_acyclic": implication_graph_acyclic(ib),
        }
        return ReductionReport("acyclic", d_holds, assignment_exists, checks)
    if which == "lower_bounded":
        ib, a, b = gen_lower_bounded_instance(cnf)
        ctx = ClosureContext.from_ib(ib)
        brute = BruteForce(ctx, max_ground=max_ground)
        d_holds = any(g >> a & 1 for g in brute.d_generator_masks(b))
        d_rel = brute.d_relation()
        n = len(ib.ground)
        var_range = range(len(cnf.variables))
        checks = {
            "standard": is_standard(ctx)[0],
            "d_relation_acyclic": _longest_path_at_most(d_rel.arcs, n, n),
            "d_paths_at_most_2": _longest_path_at_most(d_rel.arcs, n, 2),
            "d_out_of_a_empty": not any(c == a for c, _ in d_rel.arcs),
            "d_out_of_vars_empty": not any(c in var_range for c, _ in d_rel.arcs),
        }
        return ReductionReport("lower_bounded", d_holds, assignment_exists, checks)
    raise ValueError(f"unknown reduction {which!r}")
