"""Text configuration files.

A config is a sequence of statements separated by ``;`` or newlines
(``#`` starts a comment)::

    space nat
    map shift(1)
    partition P = [finite{0}, ap(1,1)]
    chain builtin example2 depth 4
    points 0, 5

Statements:

``space nat`` | ``space finite(N)``
``map identity`` | ``map shift(D)`` | ``map constant(X)`` | ``map table[a,b,...]``
    | ``map override{a:b, ...; TAIL}`` with TAIL one of identity/shift/constant
``partition [NAME =] [SET, SET, ...]``
``chain builtin example2 [depth K]`` | ``chain builtin filter_family U=SET [depth K]``
    | ``chain NAME <= NAME <= ...``
``poset NAME <= NAME, NAME <= NAME, ...`` | ``poset refinement``
``cofinal NAME, ...``
``points X, ...`` | ``depth K`` | ``format text|machine``

Set expressions: ``finite{a,b,...}``, ``ap(first, stride)``, ``all``,
``complement(SET)``, combined with ``∪`` or ``|``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .chains import (
    IndexPoset,
    PosetError,
    RefinementChain,
    example2,
    filter_family,
    partition_poset,
)
from .partitions import Partition, PartitionError, validate
from .sets import UPSet
from .state_space import (
    Constant,
    DomainError,
    FiniteOverride,
    FiniteSpace,
    Identity,
    NatSpace,
    Shift,
    TableMap,
)


class ConfigError(ValueError):
    """Base for config failures; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message, self.line, self.column = message, line, column
        super().__init__(f"line {line}, column {column}: {message}" if line else message)


class ConfigSyntaxError(ConfigError):
    pass


class ConfigSemanticError(ConfigError):
    pass


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)|(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<le><=)|(?P<punct>[;,()\[\]{}:=|∪])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # int, name, punct, sep, end
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    depth = 0
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        mo = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if mo is None:
            raise ConfigSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind, value = mo.lastgroup, mo.group()
        pos = mo.end()
        if kind == "nl":
            if depth == 0:
                tokens.append(Token("sep", "\\n", line, col))
            line, line_start = line + 1, pos
            continue
        if kind in ("ws", "comment"):
            continue
        if kind == "le":
            kind = "punct"
        if kind == "punct":
            if value in "([{":
                depth += 1
            elif value in ")]}":
                depth = max(depth - 1, 0)
            elif value == ";" and depth == 0:
                kind = "sep"
        tokens.append(Token(kind, value, line, col))
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


@dataclass
class Config:
    space: object = None
    transformation: object = None
    partitions: dict = field(default_factory=dict)
    chain: Optional[RefinementChain] = None
    cofinal: Optional[list] = None
    points: list = field(default_factory=list)
    depth: Optional[int] = None
    format: str = "text"


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.config = Config()
        self._pending_chain = None
        self._pending_poset = None
        self._space_token = None

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "name") and self.tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def expect_int(self) -> int:
        if self.tok.kind != "int":
            self.fail(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        return int(self.advance().text)

    def expect_nat(self) -> int:
        t = self.tok
        value = self.expect_int()
        if value < 0:
            raise ConfigSemanticError(f"expected a natural number, got {value}", t.line, t.column)
        return value

    def expect_name(self) -> str:
        if self.tok.kind != "name":
            self.fail(f"expected a name, found {self.tok.text or 'end of input'!r}")
        return self.advance().text

    def fail(self, message: str, token: Optional[Token] = None):
        t = token or self.tok
        raise ConfigSyntaxError(message, t.line, t.column)

    def semantic(self, message: str, token: Token):
        raise ConfigSemanticError(message, token.line, token.column)

    def int_list(self, close: str) -> list[int]:
        values = []
        if not self.at(close):
            values.append(self.expect_nat())
            while self.accept(","):
                values.append(self.expect_nat())
        self.expect(close)
        return values

    # statements

    def parse(self) -> Config:
        while self.tok.kind != "end":
            if self.tok.kind == "sep":
                self.advance()
                continue
            self.statement()
            if self.tok.kind not in ("sep", "end"):
                self.fail(f"unexpected {self.tok.text!r} after statement")
        self.finish()
        return self.config

    def statement(self):
        start = self.tok
        keyword = self.expect_name()
        handler = getattr(self, f"stmt_{keyword}", None)
        if handler is None:
            self.fail(f"unknown statement {keyword!r}", start)
        handler(start)

    def stmt_space(self, start: Token):
        if self.config.space is not None:
            self.semantic("space declared twice", start)
        if self.accept("nat"):
            self.config.space = NatSpace()
        else:
            self.expect("finite")
            self.expect("(")
            t = self.tok
            n = self.expect_int()
            self.expect(")")
            if n < 1:
                self.semantic("finite space needs at least one state", t)
            self.config.space = FiniteSpace(n)
        self._space_token = start

    def _need_space(self, start: Token):
        if self.config.space is None:
            self.semantic("declare the space before this statement", start)
        return self.config.space

    def map_expr(self, allow_table: bool = True):
        start = self.tok
        name = self.expect_name()
        if name == "identity":
            return Identity()
        if name in ("shift", "constant"):
            self.expect("(")
            t = self.tok
            value = self.expect_nat()
            self.expect(")")
            if name == "shift":
                if value < 1:
                    self.semantic("shift stride must be positive", t)
                return Shift(value)
            return Constant(value)
        if name == "table" and allow_table:
            self.expect("[")
            return TableMap(tuple(self.int_list("]")))
        if name == "override" and allow_table:
            self.expect("{")
            pairs = []
            if not self.at(";"):
                while True:
                    a = self.expect_nat()
                    self.expect(":")
                    b = self.expect_nat()
                    pairs.append((a, b))
                    if not self.accept(","):
                        break
            self.expect(";")
            tail = self.map_expr(allow_table=False)
            self.expect("}")
            if len({a for a, _ in pairs}) != len(pairs):
                self.semantic("override lists a state twice", start)
            return FiniteOverride(tuple(pairs), tail)
        self.fail(f"unknown map {name!r}", start)

    def stmt_map(self, start: Token):
        if self.config.transformation is not None:
            self.semantic("map declared twice", start)
        space = self._need_space(start)
        try:
            m = self.map_expr()
        except DomainError as exc:
            self.semantic(str(exc), start)
        if m.space != space:
            self.semantic(f"map acts on {m.space} but the space is {space}", start)
        self.config.transformation = m

    def set_expr(self):
        left = self.set_term()
        while self.at("∪") or self.at("|"):
            self.advance()
            left = left.union(self.set_term())
        return left

    def set_term(self):
        start = self.tok
        space = self._need_space(start)
        name = self.expect_name()
        if name == "finite":
            self.expect("{")
            values = self.int_list("}")
            if isinstance(space, FiniteSpace):
                bad = [v for v in values if v >= space.size]
                if bad:
                    self.semantic(f"state {bad[0]} outside 0..{space.size - 1}", start)
            return space.finite_set(values)
        if name == "ap":
            self.expect("(")
            first = self.expect_nat()
            self.expect(",")
            t = self.tok
            stride = self.expect_int()
            self.expect(")")
            if stride < 1:
                self.semantic("progression stride must be positive", t)
            if isinstance(space, FiniteSpace):
                return space.finite_set(range(first, space.size, stride))
            return UPSet.ap(first, stride)
        if name == "all":
            return space.full_set()
        if name == "complement":
            self.expect("(")
            inner = self.set_expr()
            self.expect(")")
            return inner.complement()
        self.fail(f"unknown set expression {name!r}", start)

    def stmt_partition(self, start: Token):
        space = self._need_space(start)
        name = None
        if self.tok.kind == "name":
            name = self.advance().text
            self.expect("=")
        if name is None:
            name = f"p{len(self.config.partitions)}"
        if name in self.config.partitions:
            self.semantic(f"partition {name!r} declared twice", start)
        self.expect("[")
        blocks = [self.set_expr()]
        while self.accept(","):
            blocks.append(self.set_expr())
        self.expect("]")
        try:
            self.config.partitions[name] = validate(blocks, space)
        except PartitionError as exc:
            self.semantic(f"partition {name!r}: {exc}", start)

    def stmt_chain(self, start: Token):
        if self._pending_chain is not None:
            self.semantic("chain declared twice", start)
        if self.accept("builtin"):
            name_tok = self.tok
            name = self.expect_name()
            params = {}
            while self.tok.kind == "name" and self.tok.text != "depth":
                key_tok = self.tok
                key = self.expect_name()
                self.expect("=")
                if key != "U":
                    self.semantic(f"unknown chain parameter {key!r}", key_tok)
                params[key] = (self.set_expr(), key_tok)
            depth = None
            if self.accept("depth"):
                depth = self.expect_nat()
            self._pending_chain = ("builtin", name, params, depth, start, name_tok)
        else:
            labels = [(self.tok, self.expect_name())]
            while self.accept("<="):
                labels.append((self.tok, self.expect_name()))
            self._pending_chain = ("explicit", labels, start)

    def stmt_poset(self, start: Token):
        if self._pending_poset is not None:
            self.semantic("poset declared twice", start)
        if self.accept("refinement"):
            self._pending_poset = ("refinement", start)
            return
        relations = []
        while True:
            a_tok = self.tok
            a = self.expect_name()
            self.expect("<=")
            b_tok = self.tok
            b = self.expect_name()
            relations.append(((a_tok, a), (b_tok, b)))
            if not self.accept(","):
                break
        self._pending_poset = ("relations", relations, start)

    def stmt_cofinal(self, start: Token):
        names = [(self.tok, self.expect_name())]
        while self.accept(","):
            names.append((self.tok, self.expect_name()))
        self.config.cofinal = names

    def stmt_points(self, start: Token):
        self.config.points.append(self.expect_nat())
        while self.accept(","):
            self.config.points.append(self.expect_nat())

    def stmt_depth(self, start: Token):
        self.config.depth = self.expect_nat()

    def stmt_format(self, start: Token):
        t = self.tok
        value = self.expect_name()
        if value not in ("text", "machine"):
            self.semantic("format must be text or machine", t)
        self.config.format = value

    # resolution

    def _named(self, tok: Token, name: str) -> Partition:
        try:
            return self.config.partitions[name]
        except KeyError:
            self.semantic(f"unknown partition {name!r}", tok)

    def finish(self):
        cfg = self.config
        if cfg.space is None:
            raise ConfigSemanticError("no space declared", 1, 1)
        if self._pending_chain is not None and self._pending_poset is not None:
            self.semantic("give either a chain or a poset, not both", self._pending_poset[-1])
        if self._pending_chain is not None:
            cfg.chain = self._resolve_chain()
        elif self._pending_poset is not None:
            cfg.chain = self._resolve_poset()
        if cfg.cofinal is not None:
            if cfg.chain is None:
                self.semantic("cofinal set given without a chain or poset", cfg.cofinal[0][0])
            for tok, name in cfg.cofinal:
                if name not in cfg.chain.index:
                    self.semantic(f"unknown index {name!r}", tok)
            cfg.cofinal = [name for _, name in cfg.cofinal]
        for x in cfg.points:
            if not cfg.space.contains(x):
                raise ConfigSemanticError(f"point {x} outside the space", 1, 1)

    def _resolve_chain(self) -> RefinementChain:
        cfg = self.config
        pending = self._pending_chain
        if pending[0] == "builtin":
            _, name, params, depth, start, name_tok = pending
            if not isinstance(cfg.space, NatSpace):
                self.semantic("built-in chains live on the space nat", start)
            if depth is None:
                depth = cfg.depth if cfg.depth is not None else 10
            if name == "example2":
                if params:
                    self.semantic("example2 takes no parameters", start)
                return example2(depth)
            if name == "filter_family":
                if "U" not in params:
                    self.semantic("filter_family needs U=<set>", name_tok)
                U, key_tok = params["U"]
                try:
                    return filter_family(U, depth)
                except ValueError as exc:
                    self.semantic(str(exc), key_tok)
            self.semantic(f"unknown built-in chain {name!r}", name_tok)
        _, labels, start = pending
        names = [name for _, name in labels]
        if len(set(names)) != len(names):
            self.semantic("chain repeats an index", start)
        assignment = {name: self._named(tok, name) for tok, name in labels}
        relation = list(zip(names, names[1:]))
        return RefinementChain(IndexPoset(names, relation), assignment)

    def _resolve_poset(self) -> RefinementChain:
        cfg = self.config
        pending = self._pending_poset
        if not cfg.partitions:
            self.semantic("poset needs named partitions", pending[-1])
        if pending[0] == "refinement":
            if len(set(cfg.partitions.values())) != len(cfg.partitions):
                self.semantic("two partitions are equal; refinement order needs distinct ones", pending[-1])
            return partition_poset(cfg.partitions)
        _, relations, start = pending
        pairs = []
        for (a_tok, a), (b_tok, b) in relations:
            self._named(a_tok, a)
            self._named(b_tok, b)
            pairs.append((a, b))
        try:
            index = IndexPoset(list(cfg.partitions), pairs)
        except PosetError as exc:
            self.semantic(str(exc), start)
        return RefinementChain(index, dict(cfg.partitions))


def parse_config(text: str) -> Config:
    """Parse config text into validated objects.

    Raises :class:`ConfigSyntaxError` or :class:`ConfigSemanticError`, both
    carrying line and column.
    """
    return _Parser(text).parse()
