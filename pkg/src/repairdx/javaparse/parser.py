"""Error-recovering recursive-descent parser for Java.

Total over arbitrary input: regions the grammar cannot place become ERROR
nodes, required-but-absent tokens become zero-width MISSING nodes, and
every call yields a tree. Coverage targets method-level Java up to roughly
version 14: generics, lambdas, method references, anonymous classes,
try-with-resources, multi-catch, and both colon and arrow switch forms.
Deliberately out of scope: module declarations, records, sealed types, and
pattern matching in switch labels (see the flagged-constructs fixture).

The parser is deterministic: equal inputs yield equal trees. Instances are
single-use; `parse_java` constructs a fresh one per call.
"""

from __future__ import annotations

import sys

from .lexer import (
    BAD,
    CHAR,
    EOF,
    IDENT,
    KEYWORD,
    NUMBER,
    PRIMITIVE_TYPES,
    PUNCT,
    STRING,
    Token,
    tokenize,
)
from .nodes import ERROR, IDENTIFIER, LITERAL, MISSING, Node

_MODIFIERS = frozenset(
    [
        "public", "protected", "private", "static", "final", "abstract",
        "native", "synchronized", "transient", "volatile", "strictfp",
        "default",
    ]
)

_ASSIGN_OPS = frozenset(
    ["=", "+=", "-=", "*=", "/=", "&=", "|=", "^=", "%=", "<<=", ">>=", ">>>="]
)

# Binary operator precedence, loosest first. Relational/instanceof and
# shift get dedicated handling inside _parse_binary.
_BINARY_LEVELS: list[frozenset[str]] = [
    frozenset(["||"]),
    frozenset(["&&"]),
    frozenset(["|"]),
    frozenset(["^"]),
    frozenset(["&"]),
    frozenset(["==", "!="]),
    frozenset(["<", ">", "<=", ">=", "instanceof"]),
    frozenset(["<<", ">>", ">>>"]),
    frozenset(["+", "-"]),
    frozenset(["*", "/", "%"]),
]

_LITERAL_KINDS = frozenset([NUMBER, STRING, CHAR])
_LITERAL_KEYWORDS = frozenset(["true", "false", "null"])

_STATEMENT_KEYWORDS = frozenset(
    [
        "if", "while", "do", "for", "switch", "return", "throw", "try",
        "break", "continue", "synchronized", "assert", "class", "final",
        "new", "this", "super",
    ]
)

_UNARY_START_PUNCT = frozenset(["(", "!", "~", "+", "-", "++", "--", "{", ";", "@"])

# Tokens that may close one or more type-argument lists.
_GT_TOKENS = frozenset([">", ">>", ">>>", ">=", ">>=", ">>>="])

_MAX_DEPTH = 220


class JavaParser:
    """One-shot parser instance over a fixed token list."""

    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0
        self.depth = 0

    # ------------------------------------------------------------------
    # token plumbing

    def peek(self, k: int = 0) -> Token:
        j = self.i + k
        if j >= len(self.toks):
            return self.toks[-1]
        return self.toks[j]

    def at_eof(self) -> bool:
        return self.peek().kind == EOF

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.text == text and (t.kind == PUNCT or t.kind == KEYWORD)

    def at_any(self, texts) -> bool:
        t = self.peek()
        return t.text in texts and (t.kind == PUNCT or t.kind == KEYWORD)

    def at_ident(self) -> bool:
        return self.peek().kind == IDENT

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != EOF:
            self.i += 1
        return t

    def _leaf(self, tok: Token) -> Node:
        if tok.kind == IDENT:
            kind = IDENTIFIER
        elif tok.kind in _LITERAL_KINDS:
            kind = LITERAL
        elif tok.kind == BAD:
            kind = ERROR
        else:
            kind = tok.text
        return Node(kind, tok.start, tok.end, text=tok.text)

    def take(self) -> Node:
        return self._leaf(self.advance())

    def expect(self, text: str) -> Node:
        if self.at(text):
            return self.take()
        return self.missing(text)

    def expect_ident(self) -> Node:
        if self.at_ident():
            return self.take()
        return self.missing("identifier")

    def missing(self, what: str) -> Node:
        p = self.peek().start
        return Node(MISSING, p, p, text=what)

    def _node(self, kind: str, children: list[Node]) -> Node:
        children = [c for c in children if c is not None]
        if children:
            start = children[0].start
            end = max(c.end for c in children)
        else:
            start = end = self.peek().start
        return Node(kind, start, end, children)

    def _error_until(self, stop_texts: frozenset[str], stop_pred=None) -> Node:
        """Consume at least one token, then up to a synchronization point."""
        start = self.peek().start
        end = start
        first = True
        while not self.at_eof():
            t = self.peek()
            if not first:
                if t.text in stop_texts and t.kind in (PUNCT, KEYWORD):
                    break
                if stop_pred is not None and stop_pred():
                    break
            tok = self.advance()
            end = tok.end
            first = False
            if tok.kind == PUNCT and tok.text == ";":
                break
        return Node(ERROR, start, end)

    # ------------------------------------------------------------------
    # entry point

    def parse(self) -> Node:
        children: list[Node] = []
        if self.at("package"):
            children.append(self._parse_package())
        while self.at("import"):
            children.append(self._parse_import())
        while not self.at_eof():
            before = self.i
            if self.at(";"):
                children.append(self.take())
                continue
            children.append(self._parse_type_declaration())
            if self.i == before:
                children.append(
                    self._error_until(frozenset(["class", "interface", "enum", "@"]))
                )
        return self._node("compilation_unit", children) if children else Node(
            "compilation_unit", 0, len(self.src)
        )

    def _parse_package(self) -> Node:
        kids = [self.take(), self._parse_qualified_name()]
        kids.append(self.expect(";"))
        return self._node("package_declaration", kids)

    def _parse_import(self) -> Node:
        kids = [self.take()]
        if self.at("static"):
            kids.append(self.take())
        kids.append(self._parse_qualified_name())
        if self.at("."):
            kids.append(self.take())
            kids.append(self.expect("*"))
        kids.append(self.expect(";"))
        return self._node("import_declaration", kids)

    def _parse_qualified_name(self) -> Node:
        kids = [self.expect_ident()]
        while self.at(".") and self.peek(1).kind == IDENT:
            kids.append(self.take())
            kids.append(self.take())
        return self._node("qualified_name", kids)

    # ------------------------------------------------------------------
    # declarations

    def _parse_modifiers(self) -> list[Node]:
        mods: list[Node] = []
        while True:
            t = self.peek()
            if t.kind == KEYWORD and t.text in _MODIFIERS:
                mods.append(self.take())
            elif t.kind == PUNCT and t.text == "@" and self.peek(1).text != "interface":
                mods.append(self._parse_annotation())
            else:
                return mods

    def _parse_annotation(self) -> Node:
        kids = [self.take(), self.expect_ident()]
        while self.at(".") and self.peek(1).kind == IDENT:
            kids.append(self.take())
            kids.append(self.take())
        if self.at("("):
            kids.append(self._parse_annotation_arguments())
        return self._node("annotation", kids)

    def _parse_annotation_arguments(self) -> Node:
        kids = [self.take()]
        if not self.at(")") and not self.at_eof():
            while True:
                before = self.i
                kids.append(self._parse_annotation_value())
                if self.at(","):
                    kids.append(self.take())
                    continue  # a comma demands another value
                if self.at(")") or self.at_eof() or self.i == before:
                    break
        kids.append(self.expect(")"))
        return self._node("annotation_arguments", kids)

    def _parse_annotation_value(self) -> Node:
        if self.at("{"):
            return self._parse_array_initializer()
        if self.at("@"):
            return self._parse_annotation()
        return self.parse_expression()

    def _parse_type_declaration(self, mods: list[Node] | None = None) -> Node:
        if mods is None:
            mods = self._parse_modifiers()
        if self.at("class"):
            return self._parse_class(mods)
        if self.at("interface"):
            return self._parse_interface(mods)
        if self.at("enum"):
            return self._parse_enum(mods)
        if self.at("@") and self.peek(1).text == "interface":
            return self._parse_annotation_type(mods)
        kids = list(mods)
        kids.append(self.missing("type declaration"))
        return self._node("type_declaration", kids)

    def _parse_class(self, mods: list[Node]) -> Node:
        kids = list(mods)
        kids.append(self.take())  # class
        kids.append(self.expect_ident())
        if self.at("<"):
            kids.append(self._parse_type_parameters())
        if self.at("extends"):
            kids.append(self.take())
            kids.append(self.parse_type())
        if self.at("implements"):
            kids.append(self.take())
            kids.append(self._parse_type_list())
        kids.append(self._parse_class_body())
        return self._node("class_declaration", kids)

    def _parse_interface(self, mods: list[Node]) -> Node:
        kids = list(mods)
        kids.append(self.take())  # interface
        kids.append(self.expect_ident())
        if self.at("<"):
            kids.append(self._parse_type_parameters())
        if self.at("extends"):
            kids.append(self.take())
            kids.append(self._parse_type_list())
        kids.append(self._parse_class_body())
        return self._node("interface_declaration", kids)

    def _parse_enum(self, mods: list[Node]) -> Node:
        kids = list(mods)
        kids.append(self.take())  # enum
        kids.append(self.expect_ident())
        if self.at("implements"):
            kids.append(self.take())
            kids.append(self._parse_type_list())
        kids.append(self._parse_enum_body())
        return self._node("enum_declaration", kids)

    def _parse_enum_body(self) -> Node:
        kids = [self.expect("{")]
        while self.at_ident() or self.at("@"):
            const = self._parse_modifiers()
            const.append(self.expect_ident())
            if self.at("("):
                const.append(self._parse_arguments())
            if self.at("{"):
                const.append(self._parse_class_body())
            kids.append(self._node("enum_constant", const))
            if self.at(","):
                kids.append(self.take())
            else:
                break
        if self.at(";"):
            kids.append(self.take())
            kids.extend(self._parse_members_until_brace())
        kids.append(self.expect("}"))
        return self._node("enum_body", kids)

    def _parse_annotation_type(self, mods: list[Node]) -> Node:
        kids = list(mods)
        kids.append(self.take())  # @
        kids.append(self.take())  # interface
        kids.append(self.expect_ident())
        kids.append(self._parse_class_body())
        return self._node("annotation_declaration", kids)

    def _parse_type_list(self) -> Node:
        kids = [self.parse_type()]
        while self.at(","):
            kids.append(self.take())
            kids.append(self.parse_type())
        return self._node("type_list", kids)

    def _parse_class_body(self) -> Node:
        kids = [self.expect("{")]
        kids.extend(self._parse_members_until_brace())
        kids.append(self.expect("}"))
        return self._node("class_body", kids)

    def _parse_members_until_brace(self) -> list[Node]:
        members: list[Node] = []
        while not self.at("}") and not self.at_eof():
            before = self.i
            members.append(self._parse_member())
            if self.i == before:
                members.append(
                    self._error_until(
                        frozenset(["}", ";", "class", "interface", "enum"])
                    )
                )
        return members

    def _parse_member(self) -> Node:
        self.depth += 1
        try:
            if self.depth > _MAX_DEPTH:
                return self._error_until(frozenset(["}"]))
            return self._parse_member_inner()
        finally:
            self.depth -= 1

    def _parse_member_inner(self) -> Node:
        if self.at(";"):
            return self.take()
        mods = self._parse_modifiers()
        if self.at("{"):
            kids = list(mods)
            kids.append(self.parse_block())
            return self._node("initializer", kids)
        if self.at_any(("class", "interface", "enum")) or (
            self.at("@") and self.peek(1).text == "interface"
        ):
            return self._parse_type_declaration(mods)
        kids = list(mods)
        if self.at("<"):
            kids.append(self._parse_type_parameters())
        # Constructor: bare name directly followed by its parameter list.
        if self.at_ident() and self.peek(1).text == "(" and self.peek(1).kind == PUNCT:
            kids.append(self.take())
            kids.append(self._parse_formal_parameters())
            if self.at("throws"):
                kids.append(self.take())
                kids.append(self._parse_type_list())
            kids.append(self.parse_block() if self.at("{") else self.missing("{"))
            return self._node("constructor_declaration", kids)
        t = self.peek()
        can_start_type = self.at_ident() or (
            t.kind == KEYWORD and t.text in PRIMITIVE_TYPES
        )
        if not can_start_type:
            if kids:
                kids.append(self.missing("member declaration"))
                return self._node("member_declaration", kids)
            return self._error_until(
                frozenset(["}", ";", "class", "interface", "enum"])
            )
        kids.append(self.parse_type())
        name = self.expect_ident()
        if self.at("("):
            kids.append(name)
            kids.append(self._parse_formal_parameters())
            while self.at("[") and self.peek(1).text == "]":
                kids.append(self.take())
                kids.append(self.take())
            if self.at("throws"):
                kids.append(self.take())
                kids.append(self._parse_type_list())
            if self.at("default"):  # annotation-type element default
                kids.append(self.take())
                kids.append(self._parse_annotation_value())
                kids.append(self.expect(";"))
            elif self.at("{"):
                kids.append(self.parse_block())
            else:
                kids.append(self.expect(";"))
            return self._node("method_declaration", kids)
        kids.append(self._parse_declarator_rest(name))
        while self.at(","):
            kids.append(self.take())
            kids.append(self._parse_declarator_rest(self.expect_ident()))
        kids.append(self.expect(";"))
        return self._node("field_declaration", kids)

    def _parse_declarator_rest(self, name: Node) -> Node:
        kids = [name]
        while self.at("[") and self.peek(1).text == "]":
            kids.append(self.take())
            kids.append(self.take())
        if self.at("="):
            kids.append(self.take())
            kids.append(self._parse_variable_initializer())
        return self._node("variable_declarator", kids)

    def _parse_variable_initializer(self) -> Node:
        if self.at("{"):
            return self._parse_array_initializer()
        return self.parse_expression()

    def _parse_array_initializer(self) -> Node:
        kids = [self.take()]  # {
        while not self.at("}") and not self.at_eof():
            before = self.i
            kids.append(self._parse_variable_initializer())
            if self.at(","):
                kids.append(self.take())
            elif not self.at("}"):
                if self.i == before:
                    kids.append(self._error_until(frozenset(["}", ","])))
        kids.append(self.expect("}"))
        return self._node("array_initializer", kids)

    def _parse_formal_parameters(self) -> Node:
        kids = [self.expect("(")]
        if not self.at(")") and not self.at_eof():
            while True:
                before = self.i
                kids.append(self._parse_formal_parameter())
                if self.at(","):
                    kids.append(self.take())
                    continue  # a comma demands another parameter
                if self.at(")") or self.at_eof() or self.i == before:
                    break
        kids.append(self.expect(")"))
        return self._node("formal_parameters", kids)

    def _parse_formal_parameter(self) -> Node:
        kids = self._parse_modifiers()
        t = self.peek()
        if not (self.at_ident() or (t.kind == KEYWORD and t.text in PRIMITIVE_TYPES)):
            kids.append(self.missing("parameter"))
            return self._node("formal_parameter", kids)
        kids.append(self.parse_type())
        if self.at("..."):
            kids.append(self.take())
        kids.append(self.expect_ident())
        while self.at("[") and self.peek(1).text == "]":
            kids.append(self.take())
            kids.append(self.take())
        return self._node("formal_parameter", kids)

    # ------------------------------------------------------------------
    # types

    def _parse_type_parameters(self) -> Node:
        kids = [self.take()]  # <
        while not self._at_gt() and not self.at_eof():
            before = self.i
            tp = self._parse_modifiers()  # annotations
            tp.append(self.expect_ident())
            if self.at("extends"):
                tp.append(self.take())
                tp.append(self.parse_type())
                while self.at("&"):
                    tp.append(self.take())
                    tp.append(self.parse_type())
            kids.append(self._node("type_parameter", tp))
            if self.at(","):
                kids.append(self.take())
            elif not self._at_gt():
                if self.i == before:
                    break
        kids.append(self._expect_gt())
        return self._node("type_parameters", kids)

    def _at_gt(self) -> bool:
        t = self.peek()
        return t.kind == PUNCT and t.text in _GT_TOKENS

    def _expect_gt(self) -> Node:
        t = self.peek()
        if t.kind == PUNCT and t.text == ">":
            return self.take()
        if t.kind == PUNCT and t.text in _GT_TOKENS:
            # Split one '>' off a composite token (closes nested generics).
            self.toks[self.i] = Token(PUNCT, t.text[1:], t.start + 1, t.end)
            return Node(">", t.start, t.start + 1, text=">")
        return self.missing(">")

    def parse_type(self) -> Node:
        self.depth += 1
        try:
            if self.depth > _MAX_DEPTH:
                return self.missing("type")
            return self._parse_type_inner()
        finally:
            self.depth -= 1

    def _parse_type_inner(self) -> Node:
        t = self.peek()
        if t.kind == KEYWORD and t.text in PRIMITIVE_TYPES:
            base = self._node("primitive_type", [self.take()])
        else:
            kids = [self.expect_ident()]
            if self.at("<"):
                kids.append(self._parse_type_arguments())
            while self.at(".") and self.peek(1).kind == IDENT:
                kids.append(self.take())
                kids.append(self.take())
                if self.at("<"):
                    kids.append(self._parse_type_arguments())
            base = self._node("named_type", kids)
        dims: list[Node] = []
        while self.at("[") and self.peek(1).text == "]":
            dims.append(self.take())
            dims.append(self.take())
        if dims:
            return self._node("array_type", [base, *dims])
        return base

    def _parse_type_arguments(self) -> Node:
        kids = [self.take()]  # <
        if self._at_gt():  # diamond
            kids.append(self._expect_gt())
            return self._node("type_arguments", kids)
        while True:
            before = self.i
            if self.at("?"):
                wc = [self.take()]
                if self.at_any(("extends", "super")):
                    wc.append(self.take())
                    wc.append(self.parse_type())
                kids.append(self._node("wildcard", wc))
            else:
                kids.append(self.parse_type())
            if self.at(","):
                kids.append(self.take())
                continue
            if self.i == before:
                break
            break
        kids.append(self._expect_gt())
        return self._node("type_arguments", kids)

    # ------------------------------------------------------------------
    # speculative scanning (index-only, no node construction)

    def _scan_type(self) -> bool:
        t = self.peek()
        if t.kind == KEYWORD and t.text in PRIMITIVE_TYPES:
            self.advance()
            self._scan_dims()
            return True
        if t.kind != IDENT:
            return False
        self.advance()
        if self.at("<") and not self._scan_type_args():
            return False
        while self.at(".") and self.peek(1).kind == IDENT:
            self.advance()
            self.advance()
            if self.at("<") and not self._scan_type_args():
                return False
        self._scan_dims()
        return True

    def _scan_dims(self) -> None:
        while self.at("[") and self.peek(1).text == "]":
            self.advance()
            self.advance()

    def _scan_type_args(self) -> bool:
        depth = 0
        while not self.at_eof():
            t = self.peek()
            if t.kind == PUNCT:
                if t.text == "<":
                    depth += 1
                elif t.text in _GT_TOKENS:
                    closes = len(t.text) if t.text in (">", ">>", ">>>") else None
                    if closes is None or closes > depth:
                        return False
                    depth -= closes
                    self.advance()
                    if depth == 0:
                        return True
                    continue
                elif t.text not in (",", ".", "?", "[", "]", "@"):
                    return False
            elif t.kind == KEYWORD:
                if t.text not in ("extends", "super") and t.text not in PRIMITIVE_TYPES:
                    return False
            elif t.kind != IDENT:
                return False
            self.advance()
        return False

    def _local_declaration_ahead(self) -> bool:
        t = self.peek()
        if t.kind == PUNCT and t.text == "@":
            return True
        if t.kind == KEYWORD and t.text == "final":
            return True
        if t.kind == KEYWORD and t.text in PRIMITIVE_TYPES:
            return not (self.peek(1).text == "." and self.peek(1).kind == PUNCT)
        if t.kind != IDENT:
            return False
        mark = self.i
        ok = self._scan_type() and self.at_ident()
        self.i = mark
        return ok

    def _lambda_ahead(self) -> bool:
        t = self.peek()
        nxt = self.peek(1)
        if t.kind == IDENT and nxt.kind == PUNCT and nxt.text == "->":
            return True
        if t.kind == PUNCT and t.text == "(":
            depth = 0
            j = self.i
            while j < len(self.toks):
                tok = self.toks[j]
                if tok.kind == EOF:
                    return False
                if tok.kind == PUNCT:
                    if tok.text == "(":
                        depth += 1
                    elif tok.text == ")":
                        depth -= 1
                        if depth == 0:
                            k = self.toks[j + 1] if j + 1 < len(self.toks) else None
                            return (
                                k is not None
                                and k.kind == PUNCT
                                and k.text == "->"
                            )
                j += 1
        return False

    def _cast_ahead(self) -> bool:
        """At '(': does a cast `(Type) operand` start here?"""
        mark = self.i
        try:
            self.advance()  # (
            t = self.peek()
            primitive = t.kind == KEYWORD and t.text in PRIMITIVE_TYPES
            if not self._scan_type():
                return False
            if not self.at(")"):
                return False
            self.advance()
            nxt = self.peek()
            if nxt.kind in (IDENT, NUMBER, STRING, CHAR):
                return True
            if nxt.kind == KEYWORD:
                return nxt.text in ("this", "super", "new") or nxt.text in _LITERAL_KEYWORDS
            if nxt.kind == PUNCT:
                if nxt.text in ("(", "!", "~"):
                    return True
                if primitive and nxt.text in ("+", "-", "++", "--"):
                    return True
            return False
        finally:
            self.i = mark

    # ------------------------------------------------------------------
    # statements

    def parse_block(self) -> Node:
        kids = [self.expect("{")]
        while not self.at("}") and not self.at_eof():
            before = self.i
            kids.append(self.parse_statement())
            if self.i == before:
                kids.append(self._error_until(frozenset(["}"]), self._stmt_start))
        kids.append(self.expect("}"))
        return self._node("block", kids)

    def _stmt_start(self) -> bool:
        t = self.peek()
        if t.kind in (IDENT, NUMBER, STRING, CHAR):
            return True
        if t.kind == KEYWORD:
            return (
                t.text in _STATEMENT_KEYWORDS
                or t.text in PRIMITIVE_TYPES
                or t.text in _LITERAL_KEYWORDS
            )
        if t.kind == PUNCT:
            return t.text in _UNARY_START_PUNCT
        return False

    def parse_statement(self) -> Node:
        self.depth += 1
        try:
            if self.depth > _MAX_DEPTH:
                return self._error_until(frozenset(["}", ";"]))
            return self._parse_statement_inner()
        finally:
            self.depth -= 1

    def _parse_statement_inner(self) -> Node:
        t = self.peek()
        if t.kind == PUNCT:
            if t.text == "{":
                return self.parse_block()
            if t.text == ";":
                return self._node("empty_statement", [self.take()])
            if t.text == "@":
                return self._parse_local_declaration()
            if t.text in _UNARY_START_PUNCT:
                return self._parse_expression_statement()
            return self._error_until(frozenset(["}"]), self._stmt_start)
        if t.kind == KEYWORD:
            handler = _STATEMENT_DISPATCH.get(t.text)
            if handler is not None:
                return handler(self)
            if t.text == "final":
                return self._parse_local_declaration()
            if t.text == "class":
                return self._parse_type_declaration([])
            if t.text in PRIMITIVE_TYPES:
                if self._local_declaration_ahead():
                    return self._parse_local_declaration()
                return self._parse_expression_statement()
            if t.text in _LITERAL_KEYWORDS or t.text in ("new", "this", "super"):
                return self._parse_expression_statement()
            return self._error_until(frozenset(["}"]), self._stmt_start)
        if t.kind == IDENT:
            nxt = self.peek(1)
            if nxt.kind == PUNCT and nxt.text == ":":
                kids = [self.take(), self.take(), self.parse_statement()]
                return self._node("labeled_statement", kids)
            if t.text == "yield" and self._yield_statement_ahead():
                kids = [self.take(), self.parse_expression(), self.expect(";")]
                return self._node("yield_statement", kids)
            if self._local_declaration_ahead():
                return self._parse_local_declaration()
            return self._parse_expression_statement()
        if t.kind in _LITERAL_KINDS:
            return self._parse_expression_statement()
        return self._error_until(frozenset(["}"]), self._stmt_start)

    def _yield_statement_ahead(self) -> bool:
        """`yield <expr>` vs. `yield` the identifier (restricted since 14)."""
        nxt = self.peek(1)
        if nxt.kind in (IDENT, NUMBER, STRING, CHAR):
            return True
        if nxt.kind == KEYWORD:
            return (
                nxt.text in _LITERAL_KEYWORDS
                or nxt.text in ("this", "super", "new", "switch")
                or nxt.text in PRIMITIVE_TYPES
            )
        if nxt.kind == PUNCT:
            return nxt.text in ("(", "!", "~", "+", "-")
        return False

    def _parse_expression_statement(self) -> Node:
        kids = [self.parse_expression(), self.expect(";")]
        return self._node("expression_statement", kids)

    def _parse_local_declaration(self, with_semi: bool = True) -> Node:
        mods = self._parse_modifiers()
        if self.at("class"):
            return self._parse_class(mods)
        kids = list(mods)
        kids.append(self.parse_type())
        kids.append(self._parse_declarator_rest(self.expect_ident()))
        while self.at(","):
            kids.append(self.take())
            kids.append(self._parse_declarator_rest(self.expect_ident()))
        if with_semi:
            kids.append(self.expect(";"))
        return self._node("local_variable_declaration", kids)

    def _parse_if(self) -> Node:
        kids = [self.take(), self.expect("("), self.parse_expression(), self.expect(")")]
        kids.append(self.parse_statement())
        if self.at("else"):
            kids.append(self.take())
            kids.append(self.parse_statement())
        return self._node("if_statement", kids)

    def _parse_while(self) -> Node:
        kids = [self.take(), self.expect("("), self.parse_expression(), self.expect(")")]
        kids.append(self.parse_statement())
        return self._node("while_statement", kids)

    def _parse_do(self) -> Node:
        kids = [self.take(), self.parse_statement(), self.expect("while")]
        kids.append(self.expect("("))
        kids.append(self.parse_expression())
        kids.append(self.expect(")"))
        kids.append(self.expect(";"))
        return self._node("do_statement", kids)

    def _parse_for(self) -> Node:
        kids = [self.take(), self.expect("(")]
        if self._enhanced_for_ahead():
            kids.extend(self._parse_modifiers())
            kids.append(self.parse_type())
            kids.append(self.expect_ident())
            kids.append(self.expect(":"))
            kids.append(self.parse_expression())
            kids.append(self.expect(")"))
            kids.append(self.parse_statement())
            return self._node("enhanced_for_statement", kids)
        if not self.at(";"):
            if self._local_declaration_ahead():
                kids.append(self._parse_local_declaration(with_semi=False))
            else:
                kids.append(self._parse_expression_list())
        kids.append(self.expect(";"))
        if not self.at(";"):
            kids.append(self.parse_expression())
        kids.append(self.expect(";"))
        if not self.at(")"):
            kids.append(self._parse_expression_list())
        kids.append(self.expect(")"))
        kids.append(self.parse_statement())
        return self._node("for_statement", kids)

    def _enhanced_for_ahead(self) -> bool:
        mark = self.i
        try:
            while True:
                t = self.peek()
                if t.kind == KEYWORD and t.text == "final":
                    self.advance()
                elif t.kind == PUNCT and t.text == "@":
                    self.advance()
                    if self.at_ident():
                        self.advance()
                else:
                    break
            if not self._scan_type():
                return False
            if not self.at_ident():
                return False
            self.advance()
            return self.at(":")
        finally:
            self.i = mark

    def _parse_expression_list(self) -> Node:
        kids = [self.parse_expression()]
        while self.at(","):
            kids.append(self.take())
            kids.append(self.parse_expression())
        return self._node("expression_list", kids)

    def _parse_switch(self) -> Node:
        kids = [self.take(), self.expect("("), self.parse_expression(), self.expect(")")]
        kids.append(self._parse_switch_block())
        return self._node("switch_statement", kids)

    def _parse_switch_block(self) -> Node:
        kids = [self.expect("{")]
        while not self.at("}") and not self.at_eof():
            before = self.i
            if self.at("case") or self.at("default"):
                kids.append(self._parse_switch_label())
            else:
                kids.append(self.parse_statement())
            if self.i == before:
                kids.append(self._error_until(frozenset(["}", "case", "default"])))
        kids.append(self.expect("}"))
        return self._node("switch_block", kids)

    def _parse_switch_label(self) -> Node:
        kids = [self.take()]
        if kids[0].kind == "case":
            kids.append(self.parse_expression())
            while self.at(","):
                kids.append(self.take())
                kids.append(self.parse_expression())
        if self.at("->"):
            kids.append(self.take())
            if self.at("{"):
                kids.append(self.parse_block())
            elif self.at("throw"):
                kids.append(self._parse_throw())
            else:
                kids.append(self.parse_expression())
                kids.append(self.expect(";"))
            return self._node("switch_rule", kids)
        kids.append(self.expect(":"))
        return self._node("switch_label", kids)

    def _parse_return(self) -> Node:
        kids = [self.take()]
        if not self.at(";") and not self.at("}") and not self.at_eof():
            kids.append(self.parse_expression())
        kids.append(self.expect(";"))
        return self._node("return_statement", kids)

    def _parse_throw(self) -> Node:
        kids = [self.take(), self.parse_expression(), self.expect(";")]
        return self._node("throw_statement", kids)

    def _parse_break(self) -> Node:
        kids = [self.take()]
        if self.at_ident():
            kids.append(self.take())
        kids.append(self.expect(";"))
        return self._node("break_statement", kids)

    def _parse_continue(self) -> Node:
        kids = [self.take()]
        if self.at_ident():
            kids.append(self.take())
        kids.append(self.expect(";"))
        return self._node("continue_statement", kids)

    def _parse_assert(self) -> Node:
        kids = [self.take(), self.parse_expression()]
        if self.at(":"):
            kids.append(self.take())
            kids.append(self.parse_expression())
        kids.append(self.expect(";"))
        return self._node("assert_statement", kids)

    def _parse_synchronized(self) -> Node:
        kids = [self.take(), self.expect("("), self.parse_expression(), self.expect(")")]
        kids.append(self.parse_block() if self.at("{") else self.missing("{"))
        return self._node("synchronized_statement", kids)

    def _parse_try(self) -> Node:
        kids = [self.take()]
        has_resources = False
        if self.at("("):
            has_resources = True
            kids.append(self._parse_resources())
        kids.append(self.parse_block() if self.at("{") else self.missing("{"))
        handlers = 0
        while self.at("catch"):
            handlers += 1
            kids.append(self._parse_catch())
        if self.at("finally"):
            handlers += 1
            kids.append(self.take())
            kids.append(self.parse_block() if self.at("{") else self.missing("{"))
        if handlers == 0 and not has_resources:
            kids.append(self.missing("catch"))
        return self._node("try_statement", kids)

    def _parse_resources(self) -> Node:
        kids = [self.take()]  # (
        while not self.at(")") and not self.at_eof():
            before = self.i
            kids.append(self._parse_resource())
            if self.at(";"):
                kids.append(self.take())
            elif not self.at(")"):
                if self.i == before:
                    break
        kids.append(self.expect(")"))
        return self._node("resource_list", kids)

    def _parse_resource(self) -> Node:
        mark = self.i
        mods = self._parse_modifiers()
        if self._scan_type() and self.at_ident():
            self.i = mark
            kids = self._parse_modifiers()
            kids.append(self.parse_type())
            kids.append(self.expect_ident())
            kids.append(self.expect("="))
            kids.append(self.parse_expression())
            return self._node("resource", kids)
        self.i = mark
        kids = list(mods)
        kids.append(self.parse_expression())
        return self._node("resource", kids)

    def _parse_catch(self) -> Node:
        kids = [self.take(), self.expect("(")]
        kids.extend(self._parse_modifiers())
        kids.append(self.parse_type())
        while self.at("|"):
            kids.append(self.take())
            kids.append(self.parse_type())
        kids.append(self.expect_ident())
        kids.append(self.expect(")"))
        kids.append(self.parse_block() if self.at("{") else self.missing("{"))
        return self._node("catch_clause", kids)

    # ------------------------------------------------------------------
    # expressions

    def parse_expression(self) -> Node:
        self.depth += 1
        try:
            if self.depth > _MAX_DEPTH:
                return self.missing("expression")
            return self._parse_assignment()
        finally:
            self.depth -= 1

    def _parse_assignment(self) -> Node:
        if self._lambda_ahead():
            return self._parse_lambda()
        left = self._parse_ternary()
        t = self.peek()
        if t.kind == PUNCT and t.text in _ASSIGN_OPS:
            kids = [left, self.take(), self.parse_expression()]
            return self._node("assignment", kids)
        return left

    def _parse_ternary(self) -> Node:
        cond = self._parse_binary(0)
        if self.at("?"):
            kids = [cond, self.take(), self.parse_expression()]
            kids.append(self.expect(":"))
            kids.append(self.parse_expression())
            return self._node("ternary", kids)
        return cond

    def _parse_binary(self, level: int) -> Node:
        if level >= len(_BINARY_LEVELS):
            return self._parse_unary()
        ops = _BINARY_LEVELS[level]
        left = self._parse_binary(level + 1)
        while True:
            t = self.peek()
            if t.text not in ops or t.kind not in (PUNCT, KEYWORD):
                return left
            if t.text == "instanceof":
                kids = [left, self.take(), self.parse_type()]
                if self.at_ident():  # type-test pattern binding
                    kids.append(self.take())
                left = self._node("instanceof_expression", kids)
                continue
            op = self.take()
            right = self._parse_binary(level + 1)
            left = self._node("binary_expression", [left, op, right])

    def _parse_unary(self) -> Node:
        self.depth += 1
        try:
            if self.depth > _MAX_DEPTH:
                return self.missing("expression")
            t = self.peek()
            if t.kind == PUNCT and t.text in ("+", "-", "++", "--", "!", "~"):
                kids = [self.take(), self._parse_unary()]
                return self._node("unary_expression", kids)
            if t.kind == PUNCT and t.text == "(" and self._cast_ahead():
                kids = [self.take(), self.parse_type(), self.expect(")")]
                kids.append(self._parse_unary())
                return self._node("cast_expression", kids)
            return self._parse_postfix()
        finally:
            self.depth -= 1

    def _parse_postfix(self) -> Node:
        node = self._parse_primary()
        while True:
            t = self.peek()
            if t.kind != PUNCT:
                return node
            if t.text == ".":
                node = self._parse_dot(node)
            elif t.text == "(" and node.kind in (IDENTIFIER, "this", "super"):
                node = self._node("method_invocation", [node, self._parse_arguments()])
            elif t.text == "[" and self.peek(1).text != "]":
                kids = [node, self.take(), self.parse_expression(), self.expect("]")]
                node = self._node("array_access", kids)
            elif t.text in ("++", "--"):
                node = self._node("update_expression", [node, self.take()])
            elif t.text == "::":
                kids = [node, self.take()]
                if self.at("<"):
                    kids.append(self._parse_type_arguments())
                if self.at("new"):
                    kids.append(self.take())
                else:
                    kids.append(self.expect_ident())
                node = self._node("method_reference", kids)
            elif t.text == "[" and self.peek(1).text == "]":
                # Type-position dims reached through an expression: only
                # legal as part of `X[].class`.
                kids = [node]
                while self.at("[") and self.peek(1).text == "]":
                    kids.append(self.take())
                    kids.append(self.take())
                kids.append(self.expect("."))
                kids.append(self.expect("class"))
                return self._node("class_literal", kids)
            else:
                return node

    def _parse_dot(self, receiver: Node) -> Node:
        dot = self.take()
        if self.at("class"):
            return self._node("class_literal", [receiver, dot, self.take()])
        if self.at("this"):
            return self._node("field_access", [receiver, dot, self.take()])
        if self.at("super"):
            return self._node("field_access", [receiver, dot, self.take()])
        if self.at("new"):  # qualified inner-class creation
            return self._parse_creation(receiver, dot)
        kids: list[Node] = [receiver, dot]
        if self.at("<"):
            kids.append(self._parse_type_arguments())
        name = self.expect_ident()
        kids.append(name)
        if self.at("("):
            kids.append(self._parse_arguments())
            return self._node("method_invocation", kids)
        return self._node("field_access", kids)

    def _parse_arguments(self) -> Node:
        kids = [self.expect("(")]
        if not self.at(")") and not self.at_eof():
            while True:
                before = self.i
                kids.append(self.parse_expression())
                if self.at(","):
                    kids.append(self.take())
                    continue  # a comma demands another argument
                if self.at(")") or self.at_eof():
                    break
                if self.i == before:
                    kids.append(self._error_until(frozenset([")", ","])))
                    if self.at(","):
                        kids.append(self.take())
                        continue
                    break
        kids.append(self.expect(")"))
        return self._node("argument_list", kids)

    def _parse_lambda(self) -> Node:
        kids: list[Node] = []
        if self.at_ident():
            kids.append(self._node("lambda_parameters", [self.take()]))
        else:
            params = [self.expect("(")]
            if not self.at(")") and not self.at_eof():
                while True:
                    before = self.i
                    params.extend(self._parse_modifiers())
                    nxt = self.peek(1)
                    if self.at_ident() and nxt.kind == PUNCT and nxt.text in (",", ")"):
                        params.append(self.take())
                    else:
                        t = self.peek()
                        if self.at_ident() or (
                            t.kind == KEYWORD and t.text in PRIMITIVE_TYPES
                        ):
                            params.append(self.parse_type())
                            params.append(self.expect_ident())
                        else:
                            params.append(self.missing("parameter"))
                    if self.at(","):
                        params.append(self.take())
                        continue  # a comma demands another parameter
                    if self.at(")") or self.at_eof() or self.i == before:
                        break
            params.append(self.expect(")"))
            kids.append(self._node("lambda_parameters", params))
        kids.append(self.expect("->"))
        if self.at("{"):
            kids.append(self.parse_block())
        else:
            kids.append(self.parse_expression())
        return self._node("lambda_expression", kids)

    def _parse_creation(self, receiver: Node | None = None, dot: Node | None = None) -> Node:
        kids: list[Node] = []
        if receiver is not None:
            kids.append(receiver)
            kids.append(dot)
        kids.append(self.take())  # new
        if self.at("<"):
            kids.append(self._parse_type_arguments())
        t = self.peek()
        if t.kind == KEYWORD and t.text in PRIMITIVE_TYPES:
            base = self._node("primitive_type", [self.take()])
            kids.append(base)
            return self._parse_array_creation_rest(kids)
        kids.append(self._parse_creation_type())
        if self.at("["):
            return self._parse_array_creation_rest(kids)
        if self.at("("):
            kids.append(self._parse_arguments())
            if self.at("{"):
                kids.append(self._parse_class_body())
            return self._node("object_creation", kids)
        kids.append(self.missing("("))
        return self._node("object_creation", kids)

    def _parse_creation_type(self) -> Node:
        kids = [self.expect_ident()]
        if self.at("<"):
            kids.append(self._parse_type_arguments())
        while self.at(".") and self.peek(1).kind == IDENT:
            kids.append(self.take())
            kids.append(self.take())
            if self.at("<"):
                kids.append(self._parse_type_arguments())
        return self._node("named_type", kids)

    def _parse_array_creation_rest(self, kids: list[Node]) -> Node:
        while self.at("["):
            kids.append(self.take())
            if not self.at("]"):
                kids.append(self.parse_expression())
            kids.append(self.expect("]"))
        if self.at("{"):
            kids.append(self._parse_array_initializer())
        return self._node("array_creation", kids)

    def _parse_primary(self) -> Node:
        self.depth += 1
        try:
            if self.depth > _MAX_DEPTH:
                return self.missing("expression")
            return self._parse_primary_inner()
        finally:
            self.depth -= 1

    def _parse_primary_inner(self) -> Node:
        t = self.peek()
        if t.kind in _LITERAL_KINDS:
            return self.take()
        if t.kind == IDENT:
            return self.take()
        if t.kind == KEYWORD:
            if t.text in _LITERAL_KEYWORDS:
                tok = self.advance()
                return Node(LITERAL, tok.start, tok.end, text=tok.text)
            if t.text in ("this", "super"):
                return self.take()
            if t.text == "new":
                return self._parse_creation()
            if t.text == "switch":
                return self._parse_switch()
            if t.text in PRIMITIVE_TYPES:
                # Only as `int.class` / `int[].class`.
                kids = [self._node("primitive_type", [self.take()])]
                while self.at("[") and self.peek(1).text == "]":
                    kids.append(self.take())
                    kids.append(self.take())
                kids.append(self.expect("."))
                kids.append(self.expect("class"))
                return self._node("class_literal", kids)
            return self.missing("expression")
        if t.kind == PUNCT and t.text == "(":
            kids = [self.take(), self.parse_expression(), self.expect(")")]
            return self._node("parenthesized_expression", kids)
        if t.kind == BAD:
            return self.take()  # becomes an ERROR leaf
        return self.missing("expression")


_STATEMENT_DISPATCH = {
    "if": JavaParser._parse_if,
    "while": JavaParser._parse_while,
    "do": JavaParser._parse_do,
    "for": JavaParser._parse_for,
    "switch": JavaParser._parse_switch,
    "return": JavaParser._parse_return,
    "throw": JavaParser._parse_throw,
    "break": JavaParser._parse_break,
    "continue": JavaParser._parse_continue,
    "assert": JavaParser._parse_assert,
    "synchronized": JavaParser._parse_synchronized,
    "try": JavaParser._parse_try,
}


def parse_java(src: str) -> Node:
    """Parse a compilation unit; never raises on malformed input.

    The recursion limit is raised for the duration of the call so that the
    parser's own depth guard, not the interpreter's frame limit, is what
    bounds pathologically nested input.
    """
    old_limit = sys.getrecursionlimit()
    if old_limit < 20000:
        sys.setrecursionlimit(20000)
    try:
        return JavaParser(src).parse()
    finally:
        sys.setrecursionlimit(old_limit)
