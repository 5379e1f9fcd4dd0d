"""Ternary decision diagrams with a lazy-union middle branch.

``Node(a, l, m, r)`` denotes ``(a & l) | m | (not a & r)``.  Atoms must be
totally ordered and strictly increase along every root-to-leaf path.
Unions stay lazy (they accumulate in the middle branch); intersection and
difference fold the middle branch back into the two sides.
"""

from __future__ import annotations


class Bdd:
    __slots__ = ()


class _Leaf(Bdd):
    __slots__ = ("value",)

    def __init__(self, value: bool):
        self.value = value

    def __repr__(self):
        return "One" if self.value else "Zero"

    def __reduce__(self):
        return (_leaf, (self.value,))


def _leaf(v):
    return ONE if v else ZERO


ZERO = _Leaf(False)
ONE = _Leaf(True)


class Node(Bdd):
    __slots__ = ("atom", "left", "mid", "right", "_hash")

    def __init__(self, atom, left, mid, right):
        self.atom = atom
        self.left = left
        self.mid = mid
        self.right = right
        self._hash = hash((atom, left, mid, right))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Node) and self._hash == other._hash
                and self.atom == other.atom and self.left == other.left
                and self.mid == other.mid and self.right == other.right)

    def __repr__(self):
        return f"Node({self.atom!r}, {self.left!r}, {self.mid!r}, {self.right!r})"


def atom(a) -> Bdd:
    return Node(a, ONE, ZERO, ZERO)


def node(a, left, mid, right) -> Bdd:
    """Build a node, applying the two local simplifications."""
    if mid is ONE:
        return ONE
    if left == right:
        return union(left, mid)
    return Node(a, left, mid, right)


def union(b1: Bdd, b2: Bdd) -> Bdd:
    if b1 is ONE or b2 is ONE:
        return ONE
    if b1 is ZERO:
        return b2
    if b2 is ZERO or b1 == b2:
        return b1
    a1, a2 = b1.atom, b2.atom
    if a1 == a2:
        return node(a1, union(b1.left, b2.left), union(b1.mid, b2.mid),
                    union(b1.right, b2.right))
    if a1 < a2:
        return node(a1, b1.left, union(b1.mid, b2), b1.right)
    return node(a2, b2.left, union(b1, b2.mid), b2.right)


def inter(b1: Bdd, b2: Bdd) -> Bdd:
    if b1 is ZERO or b2 is ZERO:
        return ZERO
    if b1 is ONE:
        return b2
    if b2 is ONE or b1 == b2:
        return b1
    a1, a2 = b1.atom, b2.atom
    if a1 == a2:
        return node(a1,
                    inter(union(b1.left, b1.mid), union(b2.left, b2.mid)),
                    ZERO,
                    inter(union(b1.right, b1.mid), union(b2.right, b2.mid)))
    if a1 < a2:
        return node(a1, inter(b1.left, b2), inter(b1.mid, b2), inter(b1.right, b2))
    return node(a2, inter(b1, b2.left), inter(b1, b2.mid), inter(b1, b2.right))


def diff(b1: Bdd, b2: Bdd) -> Bdd:
    if b1 is ZERO or b2 is ONE or b1 == b2:
        return ZERO
    if b2 is ZERO:
        return b1
    if b1 is ONE:
        return node(b2.atom, diff(ONE, union(b2.left, b2.mid)), ZERO,
                    diff(ONE, union(b2.right, b2.mid)))
    a1, a2 = b1.atom, b2.atom
    if a1 == a2:
        if b1.mid is ZERO and b2.mid is ZERO:
            return node(a1, diff(b1.left, b2.left), ZERO, diff(b1.right, b2.right))
        return node(a1,
                    diff(union(b1.left, b1.mid), union(b2.left, b2.mid)),
                    ZERO,
                    diff(union(b1.right, b1.mid), union(b2.right, b2.mid)))
    if a1 < a2:
        return node(a1, diff(union(b1.left, b1.mid), b2), ZERO,
                    diff(union(b1.right, b1.mid), b2))
    return node(a2, diff(b1, union(b2.left, b2.mid)), ZERO,
                diff(b1, union(b2.right, b2.mid)))


def neg(b: Bdd) -> Bdd:
    return diff(ONE, b)


def simplify(b: Bdd) -> Bdd:
    """Rebuild ``b`` bottom-up so that no subtree is ``(a?B:C:B)`` or ``(a?_:One:_)``."""
    if not isinstance(b, Node):
        return b
    return node(b.atom, simplify(b.left), simplify(b.mid), simplify(b.right))


def paths(b: Bdd):
    """Yield ``(positives, negatives)`` atom tuples for every path reaching One."""
    stack = [(b, (), ())]
    while stack:
        cur, pos, negs = stack.pop()
        if cur is ONE:
            yield pos, negs
        elif cur is not ZERO:
            stack.append((cur.right, pos, negs + (cur.atom,)))
            stack.append((cur.mid, pos, negs))
            stack.append((cur.left, pos + (cur.atom,), negs))


def atoms(b: Bdd) -> set:
    out, stack = set(), [b]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Node):
            out.add(cur.atom)
            stack.extend((cur.left, cur.mid, cur.right))
    return out


def well_ordered(b: Bdd, lower=None) -> bool:
    if not isinstance(b, Node):
        return True
    if lower is not None and not lower < b.atom:
        return False
    return all(well_ordered(c, b.atom) for c in (b.left, b.mid, b.right))


def evaluate(b: Bdd, holds) -> bool:
    """Truth value of ``b`` when each atom's truth is given by ``holds(atom)``."""
    while isinstance(b, Node):
        if evaluate(b.mid, holds):
            return True
        b = b.left if holds(b.atom) else b.right
    return b is ONE
