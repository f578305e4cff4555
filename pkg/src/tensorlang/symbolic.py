"""Exact symbolic scalars: integers, rationals, symbols, sums, products,
integer powers, and sin/cos applications, kept in a canonical form.

Canonical form: sums and products are flat, their numeric part is folded
into a single leading constant, non-numeric terms/factors are sorted by a
fixed total order, repeated factors are merged into integer powers, and
like terms are combined with rational coefficients.  Quotients are
represented as products with negative powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ComparisonError, EvalError


class ScalarExpr:
    __slots__ = ()


@dataclass(frozen=True)
class Integer(ScalarExpr):
    value: int


@dataclass(frozen=True)
class Rational(ScalarExpr):
    numerator: int
    denominator: int


@dataclass(frozen=True)
class Symbol(ScalarExpr):
    name: str


@dataclass(frozen=True)
class Sum(ScalarExpr):
    terms: tuple


@dataclass(frozen=True)
class Product(ScalarExpr):
    factors: tuple


@dataclass(frozen=True)
class Power(ScalarExpr):
    base: ScalarExpr
    exponent: int


@dataclass(frozen=True)
class Apply(ScalarExpr):
    fn: str  # "sin" or "cos"
    arg: ScalarExpr


ZERO = Integer(0)
ONE = Integer(1)
MINUS_ONE = Integer(-1)

_TAG = {Integer: 0, Rational: 1, Symbol: 2, Power: 3, Apply: 4, Sum: 5, Product: 6}


def is_numeric(e):
    return isinstance(e, (Integer, Rational))


def as_fraction(e):
    if isinstance(e, Integer):
        return Fraction(e.value)
    if isinstance(e, Rational):
        return Fraction(e.numerator, e.denominator)
    raise EvalError(f"not a numeric expression: {e!r}")


def from_fraction(q):
    q = Fraction(q)
    if q.denominator == 1:
        return Integer(q.numerator)
    return Rational(q.numerator, q.denominator)


def sort_key(e):
    """Total order on expressions: variant tag, then structural recursion."""
    if isinstance(e, Integer):
        return (0, e.value)
    if isinstance(e, Rational):
        return (1, (e.numerator, e.denominator))
    if isinstance(e, Symbol):
        return (2, e.name)
    if isinstance(e, Power):
        return (3, sort_key(e.base), e.exponent)
    if isinstance(e, Apply):
        return (4, e.fn, sort_key(e.arg))
    if isinstance(e, Sum):
        return (5, tuple(sort_key(t) for t in e.terms))
    if isinstance(e, Product):
        return (6, tuple(sort_key(f) for f in e.factors))
    raise EvalError(f"not a scalar expression: {e!r}")


# --- canonicalization -------------------------------------------------------


def canonicalize(e):
    """Normalize an arbitrarily built expression tree.  Idempotent."""
    if isinstance(e, Integer):
        return e
    if isinstance(e, Rational):
        if e.denominator == 0:
            raise ZeroDivisionError("rational with zero denominator")
        return from_fraction(Fraction(e.numerator, e.denominator))
    if isinstance(e, Symbol):
        return e
    if isinstance(e, Power):
        return _pow(canonicalize(e.base), e.exponent)
    if isinstance(e, Apply):
        if e.fn not in ("sin", "cos"):
            raise EvalError(f"unknown function symbol: {e.fn}")
        return Apply(e.fn, canonicalize(e.arg))
    if isinstance(e, Sum):
        return _sum([canonicalize(t) for t in e.terms])
    if isinstance(e, Product):
        return _product([canonicalize(f) for f in e.factors])
    raise EvalError(f"not a scalar expression: {e!r}")


def _pow(base, n):
    if not isinstance(n, int) or isinstance(n, bool):
        raise EvalError(f"power exponent must be an integer, got {n!r}")
    if n == 0:
        if base == ZERO:
            raise ZeroDivisionError("0 raised to the power 0")
        return ONE
    if n == 1:
        return base
    if is_numeric(base):
        q = as_fraction(base)
        if q == 0 and n < 0:
            raise ZeroDivisionError("0 raised to a negative power")
        return from_fraction(q ** n)
    if isinstance(base, Power):
        return _pow(base.base, base.exponent * n)
    if isinstance(base, Product):
        return _product([_pow(f, n) for f in base.factors])
    return Power(base, n)


def _product(factors):
    coeff = Fraction(1)
    powers = {}  # sort_key(base) -> [base, exponent]

    def push(base, exp):
        k = sort_key(base)
        if k in powers:
            powers[k][1] += exp
        else:
            powers[k] = [base, exp]

    todo = list(factors)
    while todo:
        f = todo.pop(0)
        if isinstance(f, Product):
            todo = list(f.factors) + todo
        elif is_numeric(f):
            coeff *= as_fraction(f)
        elif isinstance(f, Power):
            push(f.base, f.exponent)
        else:
            push(f, 1)
    if coeff == 0:
        return ZERO
    parts = []
    for base, exp in powers.values():
        if exp == 0:
            continue
        parts.append(base if exp == 1 else _pow(base, exp))
    parts.sort(key=sort_key)
    if not parts:
        return from_fraction(coeff)
    if coeff == 1:
        return parts[0] if len(parts) == 1 else Product(tuple(parts))
    if len(parts) == 1 and isinstance(parts[0], Sum):
        # distribute the constant so that s - s collapses term by term
        c = from_fraction(coeff)
        return _sum([_product([c, t]) for t in parts[0].terms])
    return Product((from_fraction(coeff), *parts))


def _split_term(t):
    """Split a canonical term into (rational coefficient, monomial | None)."""
    if is_numeric(t):
        return as_fraction(t), None
    if isinstance(t, Product) and is_numeric(t.factors[0]):
        rest = t.factors[1:]
        mono = rest[0] if len(rest) == 1 else Product(rest)
        return as_fraction(t.factors[0]), mono
    return Fraction(1), t


def _join_term(coeff, mono):
    if mono is None:
        return from_fraction(coeff)
    if coeff == 1:
        return mono
    if isinstance(mono, Product):
        return Product((from_fraction(coeff), *mono.factors))
    return Product((from_fraction(coeff), mono))


def _sum(terms):
    const = Fraction(0)
    by_mono = {}  # sort_key(monomial) -> [coeff, monomial]
    todo = list(terms)
    while todo:
        t = todo.pop(0)
        if isinstance(t, Sum):
            todo = list(t.terms) + todo
            continue
        coeff, mono = _split_term(t)
        if mono is None:
            const += coeff
            continue
        k = sort_key(mono)
        if k in by_mono:
            by_mono[k][0] += coeff
        else:
            by_mono[k] = [coeff, mono]
    parts = [_join_term(c, m) for c, m in by_mono.values() if c != 0]
    parts.sort(key=sort_key)
    if const != 0 or not parts:
        parts.insert(0, from_fraction(const))
    if not parts:
        return ZERO
    if len(parts) == 1:
        return parts[0]
    return Sum(tuple(parts))


# --- arithmetic -------------------------------------------------------------


def add(*es):
    return _sum([canonicalize(e) for e in es])


def mul(*es):
    parts = []
    for e in es:
        c = canonicalize(e)
        if isinstance(c, Product):
            parts.extend(c.factors)
        else:
            parts.append(c)
    return _product(parts)


def neg(e):
    return mul(MINUS_ONE, e)


def sub(first, *rest):
    if not rest:
        return neg(first)
    return add(first, *[neg(r) for r in rest])


def div(a, b):
    b = canonicalize(b)
    if b == ZERO:
        raise ZeroDivisionError("division by zero")
    if is_numeric(b):
        return mul(a, from_fraction(1 / as_fraction(b)))
    return mul(a, _pow(b, -1))


def powi(a, n):
    return _pow(canonicalize(a), n)


def sin(e):
    return Apply("sin", canonicalize(e))


def cos(e):
    return Apply("cos", canonicalize(e))


# --- differentiation --------------------------------------------------------


def differentiate(e, name):
    """Partial derivative with respect to the symbol called `name`."""
    e = canonicalize(e)
    return _diff(e, name)


def _diff(e, name):
    if is_numeric(e):
        return ZERO
    if isinstance(e, Symbol):
        return ONE if e.name == name else ZERO
    if isinstance(e, Sum):
        return add(*[_diff(t, name) for t in e.terms])
    if isinstance(e, Product):
        terms = []
        for i, f in enumerate(e.factors):
            rest = e.factors[:i] + e.factors[i + 1:]
            terms.append(mul(_diff(f, name), *rest))
        return add(*terms)
    if isinstance(e, Power):
        return mul(Integer(e.exponent), _pow(e.base, e.exponent - 1), _diff(e.base, name))
    if isinstance(e, Apply):
        inner = _diff(e.arg, name)
        if e.fn == "sin":
            return mul(Apply("cos", e.arg), inner)
        return mul(MINUS_ONE, Apply("sin", e.arg), inner)
    raise EvalError(f"cannot differentiate {e!r}")


# --- substitution and numeric evaluation ------------------------------------


def substitute(e, name, replacement):
    e = canonicalize(e)
    replacement = canonicalize(replacement)

    def go(x):
        if isinstance(x, Symbol):
            return replacement if x.name == name else x
        if isinstance(x, Sum):
            return add(*[go(t) for t in x.terms])
        if isinstance(x, Product):
            return mul(*[go(f) for f in x.factors])
        if isinstance(x, Power):
            return _pow(go(x.base), x.exponent)
        if isinstance(x, Apply):
            return Apply(x.fn, go(x.arg))
        return x

    return go(e)


def free_symbols(e):
    out = set()

    def go(x):
        if isinstance(x, Symbol):
            out.add(x.name)
        elif isinstance(x, Sum):
            for t in x.terms:
                go(t)
        elif isinstance(x, Product):
            for f in x.factors:
                go(f)
        elif isinstance(x, Power):
            go(x.base)
        elif isinstance(x, Apply):
            go(x.arg)

    go(e)
    return out


def eval_numeric(e, env):
    """IEEE double evaluation; every free symbol must be bound in `env`."""
    if isinstance(e, Integer):
        return float(e.value)
    if isinstance(e, Rational):
        return e.numerator / e.denominator
    if isinstance(e, Symbol):
        if e.name not in env:
            raise EvalError(f"unbound symbol in numeric evaluation: {e.name}")
        return float(env[e.name])
    if isinstance(e, Sum):
        return math.fsum(eval_numeric(t, env) for t in e.terms)
    if isinstance(e, Product):
        r = 1.0
        for f in e.factors:
            r *= eval_numeric(f, env)
        return r
    if isinstance(e, Power):
        return eval_numeric(e.base, env) ** e.exponent
    if isinstance(e, Apply):
        x = eval_numeric(e.arg, env)
        return math.sin(x) if e.fn == "sin" else math.cos(x)
    raise EvalError(f"not a scalar expression: {e!r}")


# --- expansion and the Pythagorean rewrite ----------------------------------


def expand_and_simplify(e):
    """Distribute products over sums, collect like terms, and apply
    sin^2(u) + cos^2(u) -> 1 wherever the two terms share coefficient
    and remaining factors."""
    return _pythagoras(_expand(canonicalize(e)))


def _terms_of(e):
    return list(e.terms) if isinstance(e, Sum) else [e]


def _expand(e):
    if is_numeric(e) or isinstance(e, Symbol):
        return e
    if isinstance(e, Apply):
        return Apply(e.fn, _pythagoras(_expand(e.arg)))
    if isinstance(e, Power):
        base = _pythagoras(_expand(e.base))
        if e.exponent > 1 and isinstance(base, Sum):
            acc = base
            for _ in range(e.exponent - 1):
                acc = add(*[mul(a, b) for a in _terms_of(acc) for b in _terms_of(base)])
            return acc
        return _pow(base, e.exponent)
    if isinstance(e, Sum):
        return add(*[_expand(t) for t in e.terms])
    if isinstance(e, Product):
        combos = [ONE]
        for f in e.factors:
            fe = _expand(f)
            combos = [mul(c, t) for c in combos for t in _terms_of(fe)]
        return add(*combos)
    raise EvalError(f"not a scalar expression: {e!r}")


def _monomial(mono):
    """Monomial as {sort_key(base): (base, exponent)}; mono may be None."""
    out = {}
    if mono is None:
        return out
    factors = mono.factors if isinstance(mono, Product) else (mono,)
    for f in factors:
        if isinstance(f, Power):
            out[sort_key(f.base)] = (f.base, f.exponent)
        else:
            out[sort_key(f)] = (f, 1)
    return out


def _mono_key(m):
    return tuple(sorted((k, be[1]) for k, be in m.items()))


def _mono_node(m):
    parts = [base if exp == 1 else Power(base, exp) for base, exp in m.values() if exp != 0]
    if not parts:
        return None
    parts.sort(key=sort_key)
    return parts[0] if len(parts) == 1 else Product(tuple(parts))


def _pythagoras(e):
    if not isinstance(e, Sum):
        return e
    terms = []  # [coeff, monomial-dict]
    for t in e.terms:
        coeff, mono = _split_term(t)
        terms.append([coeff, _monomial(mono)])

    def rebuild():
        return add(*[_join_term(c, _mono_node(m)) for c, m in terms])

    changed = True
    while changed:
        changed = False
        index = {}
        for i, (c, m) in enumerate(terms):
            index.setdefault(_mono_key(m), []).append(i)
        for i, (c1, m1) in enumerate(terms):
            if c1 == 0:
                continue
            for k, (base, exp) in list(m1.items()):
                if not (isinstance(base, Apply) and base.fn == "sin" and exp >= 2):
                    continue
                partner = dict(m1)
                partner[k] = (base, exp - 2)
                if partner[k][1] == 0:
                    del partner[k]
                cosb = Apply("cos", base.arg)
                ck = sort_key(cosb)
                old = partner.get(ck, (cosb, 0))
                partner[ck] = (cosb, old[1] + 2)
                for j in index.get(_mono_key(partner), []):
                    c2 = terms[j][0]
                    if j == i or c2 == 0 or c1 * c2 <= 0:
                        continue
                    amount = c1 if abs(c1) <= abs(c2) else c2
                    merged = dict(m1)
                    merged[k] = (base, exp - 2)
                    if merged[k][1] == 0:
                        del merged[k]
                    terms[i][0] -= amount
                    terms[j][0] -= amount
                    terms.append([amount, merged])
                    changed = True
                    break
                if changed:
                    break
            if changed:
                break
        if changed:
            # re-collect equal monomials before the next scan
            collected = {}
            for c, m in terms:
                if c == 0:
                    continue
                key = _mono_key(m)
                if key in collected:
                    collected[key][0] += c
                else:
                    collected[key] = [c, m]
            terms = [[c, m] for c, m in collected.values() if c != 0]
    return rebuild()


# --- printing ---------------------------------------------------------------


def format_scalar(e):
    """Prefix S-expression form, e.g. (* -1 r (sin θ))."""
    if isinstance(e, Integer):
        return str(e.value)
    if isinstance(e, Rational):
        return f"(/ {e.numerator} {e.denominator})"
    if isinstance(e, Symbol):
        return e.name
    if isinstance(e, Sum):
        return "(+ " + " ".join(format_scalar(t) for t in e.terms) + ")"
    if isinstance(e, Product):
        return "(* " + " ".join(format_scalar(f) for f in e.factors) + ")"
    if isinstance(e, Power):
        return f"(^ {format_scalar(e.base)} {e.exponent})"
    if isinstance(e, Apply):
        return f"({e.fn} {format_scalar(e.arg)})"
    raise EvalError(f"not a scalar expression: {e!r}")


# --- comparisons used by the language builtins ------------------------------


def numeric_less_than(a, b):
    if not (is_numeric(a) and is_numeric(b)):
        raise ComparisonError(
            f"cannot order symbolic values: {format_scalar(a)} vs {format_scalar(b)}")
    return as_fraction(a) < as_fraction(b)


def decide_equal(a, b):
    if is_numeric(a) and is_numeric(b):
        return as_fraction(a) == as_fraction(b)
    if a == b:
        return True
    raise ComparisonError(
        f"cannot decide equality of symbolic values: {format_scalar(a)} vs {format_scalar(b)}")
