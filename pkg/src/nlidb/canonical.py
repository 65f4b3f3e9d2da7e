"""SQL canonicalization and gold-query categorization.

The translator emits a small SQL subset (SELECT expr FROM tables
[WHERE conjuncts]). For exact-match scoring, both sides are normalized:
keywords uppercased, FROM tables sorted, join-condition operands
ordered, literals double-quoted, conjuncts sorted. Text outside the
subset grammar is flagged non-canonicalizable and falls back to raw
string comparison.
"""

from __future__ import annotations

import enum

from .errors import NlidbError


class Category(str, enum.Enum):
    SINGLE_TABLE = "single_table"
    MULTI_TABLE = "multi_table"
    AGGREGATE = "aggregate"
    NESTED = "nested"


class CanonicalizationError(NlidbError):
    stage = "canonicalize_sql"


AGG_FUNCS = {"sum", "count", "avg", "min", "max"}
CLAUSE_BREAKERS = {"where", "group", "order", "having", "limit"}


def _lex(sql: str):
    tokens = []
    i, n = 0, len(sql)
    while i < n:
        ch = sql[i]
        if ch.isspace():
            i += 1
        elif ch in "\"'":
            quote = ch
            j = i + 1
            buf = []
            terminated = False
            while j < n:
                c = sql[j]
                if c == "\\" and j + 1 < n:
                    buf.append(sql[j + 1])
                    j += 2
                elif c == quote:
                    terminated = True
                    break
                else:
                    buf.append(c)
                    j += 1
            if not terminated:
                raise CanonicalizationError("unterminated string literal")
            tokens.append(("lit", "".join(buf)))
            i = j + 1
        elif ch in "(),*":
            tokens.append(("punct", ch))
            i += 1
        elif ch in "<>=":
            if sql[i : i + 2] in (">=", "<="):
                tokens.append(("op", sql[i : i + 2]))
                i += 2
            else:
                tokens.append(("op", ch))
                i += 1
        elif ch.isalnum() or ch in "_.":
            j = i
            while j < n and (sql[j].isalnum() or sql[j] in "_."):
                j += 1
            tokens.append(("word", sql[i:j]))
            i = j
        else:
            raise CanonicalizationError(f"unexpected character {ch!r}")
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise CanonicalizationError("unexpected end of SQL")
        self.pos += 1
        return tok

    def expect_word(self, word):
        tok = self.next()
        if tok[0] != "word" or tok[1].lower() != word:
            raise CanonicalizationError(f"expected {word.upper()}, got {tok[1]!r}")

    def parse(self):
        self.expect_word("select")
        select = self._select_expr()
        self.expect_word("from")
        tables = self._table_list()
        conds = []
        tok = self.peek()
        if tok is not None:
            if tok[0] != "word" or tok[1].lower() != "where":
                raise CanonicalizationError(f"unexpected token {tok[1]!r}")
            self.next()
            conds = self._conditions()
        if self.peek() is not None:
            raise CanonicalizationError(
                f"trailing tokens after WHERE clause: {self.peek()[1]!r}"
            )
        return select, tables, conds

    def _select_expr(self):
        tok = self.next()
        if tok == ("punct", "*"):
            return "*"
        if tok[0] != "word":
            raise CanonicalizationError(f"bad select expression: {tok[1]!r}")
        func = tok[1].lower()
        if func not in AGG_FUNCS:
            raise CanonicalizationError(f"unsupported select expression: {tok[1]!r}")
        if self.next() != ("punct", "("):
            raise CanonicalizationError("expected ( after aggregate function")
        inner = self.next()
        if inner == ("punct", "*"):
            arg = "*"
        elif inner[0] == "word":
            arg = inner[1].lower()
        else:
            raise CanonicalizationError("bad aggregate argument")
        if self.next() != ("punct", ")"):
            raise CanonicalizationError("expected ) after aggregate argument")
        return f"{func.upper()}({arg})"

    def _table_list(self):
        tables = []
        while True:
            tok = self.next()
            if tok[0] != "word":
                raise CanonicalizationError(f"bad table name: {tok[1]!r}")
            tables.append(tok[1].lower())
            nxt = self.peek()
            if nxt == ("punct", ","):
                self.next()
                continue
            return tables

    def _conditions(self):
        conds = [self._condition()]
        while True:
            tok = self.peek()
            if tok is None:
                return conds
            if tok[0] == "word" and tok[1].lower() == "and":
                self.next()
                conds.append(self._condition())
            else:
                raise CanonicalizationError(f"expected AND, got {tok[1]!r}")

    def _condition(self):
        wrapped = False
        if self.peek() == ("punct", "("):
            self.next()
            wrapped = True
        left = self._operand()
        op_tok = self.next()
        if op_tok[0] != "op":
            raise CanonicalizationError(f"expected comparison, got {op_tok[1]!r}")
        right = self._operand()
        if wrapped:
            if self.next() != ("punct", ")"):
                raise CanonicalizationError("unbalanced parenthesis in condition")
        return (left, op_tok[1], right)

    def _operand(self):
        tok = self.next()
        if tok[0] == "lit":
            return ("lit", tok[1])
        if tok[0] == "word":
            word = tok[1]
            if word.replace(".", "", 1).isdigit():
                return ("lit", word)
            if "." in word:
                return ("col", word.lower())
            raise CanonicalizationError(f"bare identifier in condition: {word!r}")
        raise CanonicalizationError(f"bad operand: {tok[1]!r}")


def _render_condition(cond):
    left, op, right = cond
    if left[0] == "col" and right[0] == "col":
        a, b = left[1], right[1]
        if op == "=" and b < a:
            a, b = b, a
        return f"({a} {op} {b})"
    if left[0] == "lit" and right[0] == "col":
        left, right = right, left
        op = {">": "<", "<": ">", ">=": "<=", "<=": ">="}.get(op, op)
    escaped = right[1].replace('"', '\\"')
    return f'({left[1]} {op} "{escaped}")'


def canonicalize_sql(sql: str) -> str:
    """Canonical text for SQL in the subset grammar; raises
    CanonicalizationError otherwise."""
    select, tables, conds = _Parser(_lex(sql)).parse()
    out = f"SELECT {select} FROM " + ", ".join(sorted(tables))
    if conds:
        rendered = sorted(_render_condition(c) for c in conds)
        out += " WHERE " + " AND ".join(rendered)
    return out


def try_canonicalize(sql: str) -> tuple[str, bool]:
    """(canonical text, True) or (raw text, False) outside the grammar."""
    try:
        return canonicalize_sql(sql), True
    except CanonicalizationError:
        return sql, False


def sql_equivalent(a: str, b: str) -> bool:
    """Exact-match scoring: canonical equality, raw equality otherwise."""
    ca, ok_a = try_canonicalize(a)
    cb, ok_b = try_canonicalize(b)
    if ok_a and ok_b:
        return ca == cb
    return a.strip() == b.strip()


def categorize_gold_sql(sql: str) -> Category:
    """Nested > aggregate > single/multi table, by shallow inspection."""
    tokens = _lex(sql)
    if not tokens or tokens[0][0] != "word" or tokens[0][1].lower() != "select":
        raise CanonicalizationError("SQL must start with SELECT")
    depth = 0
    for kind, value in tokens[1:]:
        if kind == "punct" and value == "(":
            depth += 1
        elif kind == "punct" and value == ")":
            depth = max(0, depth - 1)
        elif kind == "word" and value.lower() == "select" and depth > 0:
            return Category.NESTED

    # Select list: tokens between SELECT and the top-level FROM.
    try:
        from_idx = next(
            i for i, (k, v) in enumerate(tokens)
            if k == "word" and v.lower() == "from"
        )
    except StopIteration:
        raise CanonicalizationError("SQL has no FROM clause")
    for kind, value in tokens[1:from_idx]:
        if kind == "word" and value.lower() in AGG_FUNCS:
            return Category.AGGREGATE

    tables = 0
    for kind, value in tokens[from_idx + 1 :]:
        if kind == "word" and value.lower() in CLAUSE_BREAKERS:
            break
        if kind == "word":
            tables += 1
    return Category.SINGLE_TABLE if tables == 1 else Category.MULTI_TABLE
