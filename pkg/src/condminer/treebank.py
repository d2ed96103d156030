"""Reader, writer and traversals for Penn-Treebank bracketed constituency trees.

A tree is written ``(LABEL child child ...)`` for internal nodes and
``(TAG word)`` for pre-terminals.  Pre-terminals are the leaves of
:class:`ParseTree`: they carry a ``token`` and no children.  Any run of
whitespace separates items; :func:`serialize` always emits single spaces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from condminer.errors import DataError

ROOT_LABEL = "ROOT"

_ITEM = re.compile(r"\(|\)|[^()\s]+")
_BAD_LABEL = re.compile(r"[()\s]")


class TreebankError(DataError):
    """Base class for malformed bracketed input."""


class UnbalancedParens(TreebankError):
    pass


class EmptyNode(TreebankError):
    pass


class TrailingContent(TreebankError):
    pass


class MalformedNode(TreebankError):
    """Structure that is balanced but not a tree: stray words, word plus subtrees, no input."""


@dataclass(frozen=True)
class ParseTree:
    label: str
    children: tuple[ParseTree, ...] = ()
    token: str | None = None

    def __post_init__(self):
        if not self.label or _BAD_LABEL.search(self.label):
            raise ValueError(f"invalid label {self.label!r}")
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))
        if (self.token is None) == (len(self.children) == 0):
            raise ValueError("a node carries a token exactly when it has no children")
        if self.token is not None and (not self.token or _BAD_LABEL.search(self.token)):
            raise ValueError(f"invalid token {self.token!r}")

    @property
    def is_leaf(self) -> bool:
        return self.token is not None

    def iter_preorder(self) -> Iterator[ParseTree]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def __len__(self) -> int:
        return sum(1 for _ in self.iter_preorder())

    def __str__(self) -> str:
        return serialize(self)


def leaf(label: str, token: str) -> ParseTree:
    return ParseTree(label, (), token)


def node(label: str, *children: ParseTree) -> ParseTree:
    return ParseTree(label, tuple(children))


def parse_ptb(text: str) -> ParseTree:
    """Parse one bracketed tree.

    An unlabeled outer wrapper, as in WSJ files (``( (S ...) )``), is read as
    a ``ROOT`` node.  Every malformed input raises exactly one
    :class:`TreebankError` subclass; no partial tree is ever returned.
    """
    # frame: [label, children, token]
    stack: list[list] = []
    root: ParseTree | None = None
    for m in _ITEM.finditer(text):
        item = m.group()
        if root is not None:
            if item == ")":
                raise UnbalancedParens(f"unmatched ')' at offset {m.start()}")
            raise TrailingContent(f"content after the tree closes at offset {m.start()}: {item!r}")
        if item == "(":
            if stack and stack[-1][2] is not None:
                raise MalformedNode(f"subtree after word {stack[-1][2]!r} at offset {m.start()}")
            stack.append([None, [], None])
        elif item == ")":
            if not stack:
                raise UnbalancedParens(f"unmatched ')' at offset {m.start()}")
            label, children, token = stack.pop()
            if label is None:
                if not children:
                    raise EmptyNode(f"empty node '()' at offset {m.start()}")
                if stack or len(children) != 1:
                    raise MalformedNode(f"unlabeled node at offset {m.start()}")
                label = ROOT_LABEL
            elif not children and token is None:
                raise EmptyNode(f"node {label!r} has neither word nor children")
            built = ParseTree(label, tuple(children), token)
            if stack:
                stack[-1][1].append(built)
            else:
                root = built
        else:
            if not stack:
                raise MalformedNode(f"word {item!r} outside brackets at offset {m.start()}")
            frame = stack[-1]
            if frame[0] is None and not frame[1]:
                frame[0] = item
            elif frame[1] or frame[2] is not None or frame[0] is None:
                raise MalformedNode(f"unexpected word {item!r} at offset {m.start()}")
            else:
                frame[2] = item
    if stack:
        raise UnbalancedParens(f"{len(stack)} unclosed '('")
    if root is None:
        raise MalformedNode("no tree in input")
    return root


def serialize(tree: ParseTree) -> str:
    """Canonical single-space bracketed form; ``parse_ptb(serialize(t)) == t``."""
    parts: list[str] = []
    stack: list[ParseTree | str] = [tree]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif item.is_leaf:
            parts.append(f"({item.label} {item.token})")
        else:
            parts.append(f"({item.label}")
            stack.append(")")
            stack.extend(reversed(item.children))
    # join with spaces, but no space before a closing bracket
    out = []
    for p in parts:
        if p == ")":
            out.append(")")
        else:
            if out:
                out.append(" ")
            out.append(p)
    return "".join(out)


def normalize_whitespace(text: str) -> str:
    """Collapse whitespace the way :func:`serialize` lays it out."""
    text = re.sub(r"\s+", " ", text.strip())
    text = re.sub(r"\(\s+", "(", text)
    return re.sub(r"\s+\)", ")", text)


def preorder_labels(tree: ParseTree, skip_root: bool = True) -> list[str]:
    """Depth-first labels, tokens excluded.

    A top-level ROOT wrapper is dropped when ``skip_root`` is set, so a whole
    sentence and its ``S`` child give the same sequence.
    """
    if skip_root and tree.label == ROOT_LABEL and tree.children:
        return [n.label for child in tree.children for n in child.iter_preorder()]
    return [n.label for n in tree.iter_preorder()]


def read_trees(path) -> list[ParseTree]:
    """One tree per line; blank lines are skipped."""
    trees = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                trees.append(parse_ptb(line))
    return trees
