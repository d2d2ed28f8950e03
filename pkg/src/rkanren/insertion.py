"""Insertion lists: binary-tree-backed lists with cheap local insertion.

An insertion list is either nil (empty), a non-pair element (leaf), or a
cons pair of two insertion lists. List order is the in-order traversal
of the tree. Elements must not themselves be cons pairs, since the leaf
test is the non-pair check.

Insertion replaces a single leaf with a pair, so a view traversing the
tree with imembero only sees a change at that leaf: one answer unmounts
and two mount, however long the list is. There is no rebalancing, so
repeated insertion at one end degrades the tree to a spine.
"""

from .goals import set_
from .reactive import UpdateError
from .terms import cons, is_pair, nil


def from_flat(xs):
    """Build a balanced insertion list whose traversal equals xs."""
    if not xs:
        return nil
    if len(xs) == 1:
        return xs[0]
    mid = len(xs) // 2
    return cons(from_flat(xs[:mid]), from_flat(xs[mid:]))


def flatten(s, t):
    """In-order traversal of an insertion list term, reified."""
    out = []
    stack = [t]
    while stack:
        node = s.walk(stack.pop())
        if node is nil:
            continue
        if is_pair(node):
            stack.append(node["cdr"])
            stack.append(node["car"])
        else:
            out.append(s.reify(node))
    return out


def insert_before(s, leaf_var, new_element):
    """A goal inserting new_element just before the leaf leaf_var names.

    The leaf becomes the pair (new_element . old_element); in-order, the
    new element lands immediately before the old one.
    """
    old = s.walk(leaf_var)
    if is_pair(old):
        raise UpdateError(
            "target-unbound",
            "insertion point %r holds the pair %r, not a leaf"
            % (leaf_var, old))
    return set_(leaf_var, cons(new_element, s.reify(leaf_var)))
