"""Parse-tree nodes.

Two node kinds carry the grammaticality signal: ERROR (a region of input
the grammar could not place) and MISSING (a zero-width placeholder for a
required token the input lacks). A tree with neither is syntactically
clean. All other kinds are ordinary grammar productions; punctuation and
keyword leaves use their lexeme as the kind.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

ERROR = "ERROR"
MISSING = "MISSING"
IDENTIFIER = "identifier"
LITERAL = "literal"


@dataclass(repr=False)
class Node:
    kind: str
    start: int
    end: int
    children: list["Node"] = field(default_factory=list)
    text: str = ""

    @property
    def is_error(self) -> bool:
        return self.kind == ERROR or self.kind == MISSING

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def walk(self) -> Iterator["Node"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def error_nodes(self) -> list["Node"]:
        return [n for n in self.walk() if n.is_error]

    def sexp(self) -> str:
        """Compact s-expression form, used for golden comparisons."""
        out: list[str] = []
        stack: list[object] = [self]
        while stack:
            item = stack.pop()
            if isinstance(item, str):
                out.append(item)
                continue
            if item.is_leaf:
                label = item.text if item.text else item.kind
                out.append(f"({item.kind} {label!r} {item.start}:{item.end})")
                continue
            out.append(f"({item.kind}")
            stack.append(")")
            stack.extend(reversed(item.children))
        return " ".join(out)

    def __repr__(self) -> str:  # avoid recursing through deep trees
        return f"Node({self.kind!r}, {self.start}, {self.end}, {len(self.children)} children)"
