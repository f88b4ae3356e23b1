"""Weighted partition trees, the grouping axiom and the 2-cocycle equation.

A tree describes a total mass split in stages: each internal node partitions
its mass among its children. The entropy of the whole split is the sum of
the homogeneous entropies of the individual stages.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .core import (
    HatFunctional,
    ProbFunctional,
    as_probabilities,
    hat_entropy,
    shannon_entropy,
)
from .exceptions import DomainError
from .rationals import exact_sum, format_rational, parse_rational


@dataclass(frozen=True)
class Leaf:
    weight: Fraction

    def __post_init__(self):
        w = _exact(self.weight)
        if w < 0:
            raise DomainError(f"negative leaf weight {w}")
        object.__setattr__(self, "weight", w)


@dataclass(frozen=True)
class Node:
    children: tuple

    def __post_init__(self):
        children = tuple(self.children)
        if not children:
            raise DomainError("internal node needs at least one child")
        for c in children:
            if not isinstance(c, (Leaf, Node)):
                raise TypeError(f"not a tree node: {c!r}")
        object.__setattr__(self, "children", children)


PartitionTree = Union[Leaf, Node]


def node(*children) -> Node:
    """Shorthand: ``node(1, node(2, 3))``; bare numbers become leaves."""
    return Node(tuple(c if isinstance(c, (Leaf, Node)) else Leaf(c) for c in children))


def node_mass(t: PartitionTree) -> Fraction:
    if isinstance(t, Leaf):
        return t.weight
    return exact_sum(node_mass(c) for c in t.children)


def flatten(t: PartitionTree) -> tuple[Fraction, ...]:
    """Leaf weights in left-to-right order."""
    if isinstance(t, Leaf):
        return (t.weight,)
    return tuple(w for c in t.children for w in flatten(c))


def iter_internal(t: PartitionTree, path=()) -> Iterator[tuple[tuple[int, ...], Node]]:
    """Yield ``(path, node)`` for every internal node in preorder."""
    if isinstance(t, Node):
        yield path, t
        for i, c in enumerate(t.children):
            yield from iter_internal(c, path + (i,))


def node_entropies(t: PartitionTree, hat: HatFunctional = hat_entropy):
    """Per-internal-node stage entropies as ``(path, child masses, value)``.

    A node whose mass is zero contributes 0 without consulting ``hat``.
    """
    out = []
    for path, n in iter_internal(t):
        masses = tuple(node_mass(c) for c in n.children)
        value = hat(masses) if exact_sum(masses) > 0 else 0.0
        out.append((path, masses, value))
    return out


def tree_entropy(t: PartitionTree, hat: HatFunctional = hat_entropy) -> float:
    """Sum of the stage entropies over all internal nodes."""
    if node_mass(t) <= 0:
        raise DomainError("tree has zero total mass")
    return math.fsum(v for _, _, v in node_entropies(t, hat))


def _group_hat(group: Sequence[Fraction], hat: HatFunctional) -> float:
    return hat(group) if exact_sum(group) > 0 else 0.0


def cocycle_residual(groups: Sequence[Sequence], hat: HatFunctional = hat_entropy) -> float:
    """LHS minus RHS of the 2-cocycle equation for a one-level grouping.

    Returns ``hat(all weights) - [hat(group sums) + sum(hat(group))]``.
    A group of all-zero weights has zero mass and zero entropy.
    """
    if not groups:
        raise DomainError("grouping needs at least one group")
    gs = []
    for g in groups:
        g = tuple(_exact(x) for x in g)
        if not g:
            raise DomainError("groups must be nonempty")
        if any(x < 0 for x in g):
            raise DomainError("negative weight in grouping")
        gs.append(g)
    flat = tuple(x for g in gs for x in g)
    if exact_sum(flat) <= 0:
        raise DomainError("grouping has zero total mass")
    coarse = tuple(exact_sum(g) for g in gs)
    rhs = math.fsum([hat(coarse)] + [_group_hat(g, hat) for g in gs])
    return hat(flat) - rhs


def _exact(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"weights must be exact rationals, got float {x!r}")
    return parse_rational(x)


def grouping_residual(p: Sequence, conds: Sequence[Sequence], h: ProbFunctional = shannon_entropy) -> float:
    """LHS minus RHS of the grouping axiom for a functional on distributions.

    The joint vector lists ``conds[i][j] * p[i]`` for every i, j; the result is
    ``h(joint) - [h(p) + sum(p[i] * h(conds[i]))]``.
    """
    p = as_probabilities(p)
    if len(conds) != len(p):
        raise DomainError(f"need one conditional per outcome: {len(p)} != {len(conds)}")
    conds = [as_probabilities(c) for c in conds]
    joint = tuple(pi * cij for pi, c in zip(p, conds) for cij in c)
    rhs = math.fsum([h(p)] + [float(pi) * h(c) for pi, c in zip(p, conds)])
    return h(joint) - rhs


def grouping_as_cocycle(p: Sequence, conds: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """The weight grouping whose i-th group is ``conds[i]`` scaled by ``p[i]``."""
    return [tuple(Fraction(pi) * Fraction(c) for c in cond) for pi, cond in zip(p, conds)]


def tree_from_obj(obj) -> PartitionTree:
    """Build a tree from its decoded JSON form.

    A node is ``{"w": "p/q"}`` (or an integer) or ``{"children": [...]}``.
    """
    if not isinstance(obj, dict):
        raise ValueError(f"tree node must be an object, got {type(obj).__name__}")
    keys = set(obj)
    if keys == {"w"}:
        w = obj["w"]
        if isinstance(w, float):
            raise ValueError(f"float weight {w!r} not allowed; use p/q")
        return Leaf(parse_rational(w))
    if keys == {"children"}:
        kids = obj["children"]
        if not isinstance(kids, list) or not kids:
            raise ValueError("children must be a nonempty list")
        return Node(tuple(tree_from_obj(k) for k in kids))
    raise ValueError(f"tree node must have exactly one of 'w' or 'children', got {sorted(keys)}")


def _no_floats(text):
    raise ValueError(f"float literal {text!r} not allowed in tree files; use \"p/q\"")


def loads_tree(text: str) -> PartitionTree:
    """Parse tree JSON, rejecting float literals before they are rounded."""
    obj = json.loads(text, parse_float=_no_floats, parse_constant=_no_floats)
    return tree_from_obj(obj)


def tree_to_obj(t: PartitionTree):
    if isinstance(t, Leaf):
        return {"w": format_rational(t.weight)}
    return {"children": [tree_to_obj(c) for c in t.children]}


def dumps_tree(t: PartitionTree) -> str:
    return json.dumps(tree_to_obj(t))


def enumerate_shapes(n_leaves: int) -> list[tuple]:
    """All ordered tree shapes with ``n_leaves`` leaves and no unary nodes.

    A shape is ``None`` for a leaf or a tuple of child shapes. The counts are
    1, 1, 3, 11, 45, 197 for one to six leaves.
    """
    return list(_shapes(n_leaves))


def _compositions(n: int, min_parts: int):
    # ordered splits of n into >= min_parts positive parts
    if n == 0:
        if min_parts <= 0:
            yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first, min_parts - 1):
            yield (first,) + rest


def _shapes(n: int):
    if n == 1:
        yield None
        return
    for comp in _compositions(n, 2):
        yield from _product_shapes(comp)


def _product_shapes(comp):
    if not comp:
        yield ()
        return
    for head in _shapes(comp[0]):
        for tail in _product_shapes(comp[1:]):
            yield (head,) + tail


def fill_shape(shape, weights: Sequence) -> PartitionTree:
    """Place ``weights`` on the leaves of ``shape`` left to right."""
    it = iter(weights)

    def build(s):
        if s is None:
            return Leaf(next(it))
        return Node(tuple(build(c) for c in s))

    t = build(shape)
    if next(it, None) is not None:
        raise DomainError("more weights than leaves")
    return t
