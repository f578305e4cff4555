"""Surface syntax and evaluation: S-expressions with index suffixes,
lambda parameter kinds, with-symbols scoping, and indexed definitions."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from . import symbolic, tensor
from .errors import ArityError, EvalError, ParseError
from .tensor import (KIND_INVERTED, KIND_SCALAR, KIND_TENSOR, NumberLabel,
                     SymbolLabel, Tensor)
from .values import (BraceValue, Builtin, Environment, FunctionValue,
                     format_value)

_MISSING = Environment.MISSING


# --- tokens -------------------------------------------------------------------

_DELIMS = "()[]{}';|"


@dataclass
class Token:
    kind: str  # "(" ")" "[" "]" "{" "}" "[|" "|]" "'" "atom"
    text: str
    line: int
    col: int
    glued: bool  # no whitespace between this token and the previous one


def tokenize(text):
    toks = []
    line, col = 1, 1
    i = 0
    glued = False

    def push(kind, s, ln, cl):
        toks.append(Token(kind, s, ln, cl, glued))

    while i < len(text):
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            glued = False
            continue
        if c in " \t\r":
            i += 1
            col += 1
            glued = False
            continue
        if c == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
            glued = False
            continue
        if c == "[" and i + 1 < len(text) and text[i + 1] == "|":
            push("[|", "[|", line, col)
            i += 2
            col += 2
            glued = True
            continue
        if c == "|":
            if i + 1 < len(text) and text[i + 1] == "]":
                push("|]", "|]", line, col)
                i += 2
                col += 2
                glued = True
                continue
            raise ParseError("stray '|'", line, col)
        if c in "()[]{}'":
            push(c, c, line, col)
            i += 1
            col += 1
            glued = True
            continue
        start = i
        ln, cl = line, col
        while i < len(text) and not text[i].isspace() and text[i] not in _DELIMS:
            if text[i] == "[" and i + 1 < len(text) and text[i + 1] == "|":
                break
            i += 1
            col += 1
        push("atom", text[start:i], ln, cl)
        glued = True
    return toks


# --- syntax tree --------------------------------------------------------------


@dataclass
class NumberLit:
    value: int
    pos: tuple


@dataclass
class Var:
    name: str
    pos: tuple


@dataclass
class ListForm:
    items: tuple
    pos: tuple


@dataclass
class BrackList:
    items: tuple
    pos: tuple


@dataclass
class BraceList:
    items: tuple
    pos: tuple


@dataclass
class TensorLit:
    items: tuple
    pos: tuple


@dataclass
class Quote:
    body: object
    pos: tuple


@dataclass
class IndexSpecAst:
    variance: int
    kind: str  # "num" | "name" | "dummy" | "empty"
    text: str
    pos: tuple


@dataclass
class Indexed:
    base: object
    specs: tuple
    pos: tuple


@dataclass
class ShorthandLambda:
    arity: int
    body: object
    pos: tuple


_INT_RE = re.compile(r"-?[0-9]+\Z")
_SHORTHAND_RE = re.compile(r"([0-9]+)#(.*)\Z", re.DOTALL)


def parse_index_chain(s, line, col):
    """Split an index suffix string like '~i_j' or '_#_2' into specs."""
    specs = []
    i = 0
    while i < len(s):
        c = s[i]
        pos = (line, col + i)
        if c == "~":
            if i + 1 < len(s) and s[i + 1] == "_" and i + 2 < len(s) and s[i + 2] not in "~_":
                variance = tensor.SUPSUB
                i += 2
            else:
                variance = tensor.SUP
                i += 1
        elif c == "_":
            variance = tensor.SUB
            i += 1
        else:
            raise ParseError(f"malformed index suffix {s!r}", line, col)
        j = i
        while j < len(s) and s[j] not in "~_":
            j += 1
        label = s[i:j]
        i = j
        if label == "":
            specs.append(IndexSpecAst(variance, "empty", "", pos))
        elif label == "#":
            specs.append(IndexSpecAst(variance, "dummy", "#", pos))
        elif _INT_RE.match(label):
            specs.append(IndexSpecAst(variance, "num", label, pos))
        else:
            specs.append(IndexSpecAst(variance, "name", label, pos))
    return specs


class Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.last_line = 1

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def advance(self):
        tok = self.toks[self.i]
        self.i += 1
        self.last_line = tok.line
        return tok

    def expect(self, kind, opener):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unbalanced '{opener.kind}'", opener.line, opener.col)
        return tok

    def parse_program(self):
        """Top-level forms with their (start_line, end_line) spans."""
        forms = []
        while self.peek() is not None:
            start = self.peek().line
            node = self.parse_expr()
            forms.append((node, start, self.last_line))
        return forms

    def parse_expr(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.last_line, 1)
        node = self._primary()
        while True:
            nxt = self.peek()
            if nxt is not None and nxt.kind == "atom" and nxt.glued and nxt.text[0] in "~_":
                self.advance()
                specs = parse_index_chain(nxt.text, nxt.line, nxt.col)
                if isinstance(node, Indexed):
                    node = Indexed(node.base, node.specs + tuple(specs), node.pos)
                else:
                    node = Indexed(node, tuple(specs), (nxt.line, nxt.col))
            else:
                return node

    def _sequence(self, opener, closer, build):
        items = []
        while True:
            tok = self.expect(None, opener)
            if tok.kind == closer:
                self.advance()
                return build(tuple(items), (opener.line, opener.col))
            items.append(self.parse_expr())

    def _primary(self):
        tok = self.advance()
        pos = (tok.line, tok.col)
        if tok.kind == "(":
            node = self._sequence(tok, ")", ListForm)
            self._check_special(node)
            return node
        if tok.kind == "[|":
            node = self._sequence(tok, "|]", TensorLit)
            if not node.items:
                raise ParseError("empty tensor literal", tok.line, tok.col)
            return node
        if tok.kind == "[":
            return self._sequence(tok, "]", BrackList)
        if tok.kind == "{":
            return self._sequence(tok, "}", BraceList)
        if tok.kind == "'":
            return Quote(self.parse_expr(), pos)
        if tok.kind == "atom":
            return self._atom(tok)
        raise ParseError(f"unexpected '{tok.text}'", tok.line, tok.col)

    def _atom(self, tok):
        text = tok.text
        pos = (tok.line, tok.col)
        if _INT_RE.match(text):
            return NumberLit(int(text), pos)
        m = _SHORTHAND_RE.match(text)
        if m and "~" not in m.group(1) and "_" not in m.group(1):
            arity = int(m.group(1))
            rest = m.group(2)
            if rest:
                body = self._classify_atom(rest, tok.line, tok.col + len(m.group(1)) + 1)
            else:
                nxt = self.peek()
                if nxt is None or not nxt.glued:
                    raise ParseError("shorthand lambda needs an attached body",
                                     tok.line, tok.col)
                body = self.parse_expr()
            return ShorthandLambda(arity, body, pos)
        if text[0] in "~_":
            raise ParseError(f"index suffix {text!r} has no target expression",
                             tok.line, tok.col)
        return self._classify_atom(text, tok.line, tok.col)

    def _classify_atom(self, text, line, col):
        pos = (line, col)
        if _INT_RE.match(text):
            return NumberLit(int(text), pos)
        cut = len(text)
        for i, c in enumerate(text):
            if c in "~_":
                cut = i
                break
        base, chain = text[:cut], text[cut:]
        if not base:
            raise ParseError(f"index suffix {text!r} has no target expression", line, col)
        node = NumberLit(int(base), pos) if _INT_RE.match(base) else Var(base, pos)
        if chain:
            specs = parse_index_chain(chain, line, col + cut)
            node = Indexed(node, tuple(specs), pos)
        return node

    def _check_special(self, node):
        items = node.items
        if not items or not isinstance(items[0], Var):
            return
        head = items[0].name
        if head == "lambda":
            if len(items) != 3 or not isinstance(items[1], BrackList):
                raise ParseError("lambda expects [parameters] and a body", *node.pos)
            for p in items[1].items:
                if not isinstance(p, Var) or not re.match(r"(\*\$|\$|%).+\Z", p.name):
                    got = getattr(p, "name", p)
                    raise ParseError(
                        f"bad parameter marker {got!r} (use $name, %name or *$name)",
                        *(p.pos if hasattr(p, "pos") else node.pos))
        elif head == "with-symbols":
            if len(items) != 3 or not isinstance(items[1], BraceList) or \
                    not all(isinstance(s, Var) for s in items[1].items):
                raise ParseError("with-symbols expects {names} and a body", *node.pos)
        elif head == "if":
            if len(items) != 4:
                raise ParseError("if expects a condition and two branches", *node.pos)
        elif head == "define":
            if len(items) != 3:
                raise ParseError("define expects a name and a body", *node.pos)
            target = items[1]
            ok = isinstance(target, Var) or (
                isinstance(target, Indexed) and isinstance(target.base, Var))
            if not ok:
                raise ParseError("define target must be a (possibly indexed) name",
                                 *node.pos)


def parse_program(text):
    return Parser(text).parse_program()


def parse_forms(text):
    return [node for node, _, _ in parse_program(text)]


# --- evaluation ---------------------------------------------------------------


class Evaluator:
    def __init__(self):
        self._local_ids = itertools.count(1)

    # value of a node in an environment
    def eval(self, node, env):
        if isinstance(node, NumberLit):
            return symbolic.Integer(node.value)
        if isinstance(node, Var):
            return self._var(node, env)
        if isinstance(node, Indexed):
            return self._indexed(node, env)
        if isinstance(node, TensorLit):
            return tensor.tensor_from_nested([self.eval(e, env) for e in node.items])
        if isinstance(node, BraceList):
            return BraceValue(tuple(self.eval(e, env) for e in node.items))
        if isinstance(node, Quote):
            return self.eval(node.body, env)
        if isinstance(node, ShorthandLambda):
            self._check_placeholders(node)
            params = tuple((KIND_TENSOR, f"%{k}") for k in range(1, node.arity + 1))
            return FunctionValue(params, node.body, env)
        if isinstance(node, BrackList):
            raise EvalError(f"unexpected [...] at line {node.pos[0]}")
        if isinstance(node, ListForm):
            return self._list_form(node, env)
        raise EvalError(f"cannot evaluate {node!r}")

    def _var(self, node, env):
        val = env.lookup(node.name)
        if val is not _MISSING:
            return val
        sigs = env.signatures_of(node.name)
        if sigs:
            raise EvalError(
                f"variable {node.name} is only bound with index signatures; "
                f"reference it with indices (line {node.pos[0]})")
        return symbolic.Symbol(node.name)

    def _indexed(self, node, env):
        specs = node.specs
        if isinstance(node.base, Var):
            name = node.base.name
            sig = tuple(s.variance for s in specs)
            val = env.lookup(name, sig)
            if val is _MISSING:
                val = env.lookup(name)
            if val is _MISSING:
                sigs = env.signatures_of(name)
                if sigs:
                    raise EvalError(
                        f"variable {name} is not bound with index signature "
                        f"{_sig_text(sig)} (line {node.pos[0]})")
                raise EvalError(
                    f"cannot index the unbound symbol {name} (line {node.pos[0]})")
        else:
            val = self.eval(node.base, env)
        ix = [self._eval_spec(s, env) for s in specs]
        return tensor.append_indices(val, ix)

    def _eval_spec(self, spec, env):
        if spec.kind == "empty":
            raise EvalError(
                f"index without a label at line {spec.pos[0]}, col {spec.pos[1]}")
        if spec.kind == "num":
            return tensor.Index(spec.variance, NumberLabel(int(spec.text)))
        if spec.kind == "dummy":
            return tensor.fresh_dummy(spec.variance)
        val = env.lookup(spec.text)
        if val is _MISSING:
            return tensor.Index(spec.variance, SymbolLabel(spec.text))
        if isinstance(val, symbolic.Symbol):
            return tensor.Index(spec.variance, SymbolLabel(val.name))
        if isinstance(val, symbolic.Integer):
            return tensor.Index(spec.variance, NumberLabel(val.value))
        raise EvalError(f"invalid index label {spec.text} (line {spec.pos[0]})")

    def _check_placeholders(self, node):
        def walk(n):
            if isinstance(n, ShorthandLambda):
                return  # its placeholders answer to its own arity
            if isinstance(n, Var) and re.match(r"%[0-9]+\Z", n.name):
                if int(n.name[1:]) > node.arity:
                    raise EvalError(
                        f"placeholder {n.name} exceeds shorthand arity {node.arity}")
            for attr in ("items", "specs"):
                for child in getattr(n, attr, ()):  # tuples on composite nodes
                    walk(child)
            for attr in ("base", "body"):
                child = getattr(n, attr, None)
                if child is not None and not isinstance(child, tuple):
                    walk(child)
        walk(node.body)

    def _list_form(self, node, env):
        items = node.items
        if not items:
            raise EvalError(f"empty application at line {node.pos[0]}")
        if isinstance(items[0], Var):
            head = items[0].name
            if head == "define":
                return self._define(node, env)
            if head == "lambda":
                return self._lambda(node, env)
            if head == "with-symbols":
                names = [v.name for v in items[1].items]
                return self.eval_with_symbols(names, items[2], env)
            if head == "if":
                cond = self.eval(items[1], env)
                if not isinstance(cond, bool):
                    raise EvalError(
                        f"if condition must be a boolean, got {format_value(cond)}")
                return self.eval(items[2] if cond else items[3], env)
        fv = self.eval(items[0], env)
        if not isinstance(fv, (FunctionValue, Builtin)):
            raise EvalError(f"not a function: {format_value(fv)} (line {node.pos[0]})")
        args = [self.eval(a, env) for a in items[1:]]
        return self.call(fv, args)

    def _lambda(self, node, env):
        params = []
        for p in node.items[1].items:
            name = p.name
            if name.startswith("*$"):
                params.append((KIND_INVERTED, name[2:]))
            elif name.startswith("$"):
                params.append((KIND_SCALAR, name[1:]))
            else:
                params.append((KIND_TENSOR, name[1:]))
        return FunctionValue(tuple(params), node.items[2], env)

    def _define(self, node, env):
        target, body = node.items[1], node.items[2]
        if isinstance(target, Var):
            env.define(_strip_marker(target.name), self.eval(body, env))
            return None
        base = _strip_marker(target.base.name)
        specs = target.specs
        sig = tuple(s.variance for s in specs)
        kinds = {s.kind for s in specs}
        if kinds == {"empty"}:
            env.define(base, self.eval(body, env), signature=sig)
        elif kinds == {"name"}:
            # desugars to with-symbols over the index names plus a transpose
            labels = BraceList(tuple(Var(s.text, s.pos) for s in specs), node.pos)
            wrapped = ListForm((Var("transpose", node.pos), labels, body), node.pos)
            value = self.eval_with_symbols([s.text for s in specs], wrapped, env)
            env.define(base, value, signature=sig)
        else:
            raise EvalError(
                f"define target must use all-symbolic or all-bare indices "
                f"(line {node.pos[0]})")
        return None

    # --- with-symbols ---------------------------------------------------------

    def eval_with_symbols(self, names, body, env):
        frame = Environment(env)
        local_names = set()
        for n in names:
            local = f"{n}%{next(self._local_ids)}"
            frame.define(n, symbolic.Symbol(local))
            local_names.add(local)
        return self._strip_locals(self.eval(body, frame), local_names)

    def _strip_locals(self, val, local_names):
        if isinstance(val, Tensor):
            new_ix = []
            for ix in val.indices:
                if ix is not None and isinstance(ix.label, SymbolLabel) \
                        and ix.label.name in local_names:
                    new_ix.append(tensor.fresh_dummy(ix.variance))
                else:
                    new_ix.append(ix)
            comps = [self._strip_locals(c, local_names) for c in val.components]
            return tensor.make_tensor(val.shape, comps, new_ix)
        if isinstance(val, symbolic.ScalarExpr):
            for name in symbolic.free_symbols(val) & local_names:
                repl = symbolic.Symbol(f"#{next(self._local_ids)}")
                val = symbolic.substitute(val, name, repl)
            return val
        return val

    # --- application ----------------------------------------------------------

    def call(self, fv, args):
        kinds = self._kinds_for(fv, len(args))
        if any(k != KIND_TENSOR for k in kinds):
            return tensor.scalar_apply(lambda xs: self._base_call(fv, xs), kinds, args)
        return self._base_call(fv, args)

    def _kinds_for(self, fv, nargs):
        if isinstance(fv, Builtin):
            if fv.variadic:
                if nargs < fv.min_args:
                    raise ArityError(
                        f"{fv.name} expects at least {fv.min_args} arguments, got {nargs}")
                return (fv.kinds[0],) * nargs
            if nargs != len(fv.kinds):
                raise ArityError(
                    f"{fv.name} expects {len(fv.kinds)} arguments, got {nargs}")
            return fv.kinds
        if nargs != len(fv.params):
            raise ArityError(
                f"function expects {len(fv.params)} arguments, got {nargs}")
        return tuple(k for k, _ in fv.params)

    def _base_call(self, fv, args):
        if isinstance(fv, Builtin):
            return fv.impl(self, list(args))
        frame = Environment(fv.env)
        for (_, name), a in zip(fv.params, args):
            frame.define(name, a)
        return self.eval(fv.body, frame)


def _strip_marker(name):
    return name[1:] if name.startswith("$") else name


def _sig_text(sig):
    return "".join({tensor.SUP: "~", tensor.SUB: "_", tensor.SUPSUB: "~_"}[v]
                   for v in sig)


# --- the interpreter front door -------------------------------------------------


class Interpreter:
    """One evaluation context: a global environment, the standard library,
    and private counters for dummy indices and local symbols."""

    def __init__(self, with_stdlib=True):
        self.globals = Environment()
        self.evaluator = Evaluator()
        if with_stdlib:
            from . import stdlib
            stdlib.install(self)

    def run_source(self, text):
        """Evaluate every top-level form; list of (span, value) in order.
        Definitions yield None."""
        out = []
        for node, start, end in parse_program(text):
            out.append(((start, end), self.evaluator.eval(node, self.globals)))
        return out

    def eval_source(self, text):
        """Value of the last top-level form."""
        result = None
        for _, value in self.run_source(text):
            result = value
        return result
