"""Runtime values, environments with index-signature bindings, and the
printer that renders results in the surface notation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import symbolic, tensor
from .errors import EvalError
from .tensor import DummyLabel, NumberLabel, SymbolLabel, Tensor

_MISSING = object()


@dataclass
class FunctionValue:
    """A closure: parameter kinds and names, a body, a captured environment."""
    params: tuple  # of (kind, name)
    body: object  # parsed expression
    env: "Environment"
    name: Optional[str] = None


@dataclass
class Builtin:
    """A host-implemented function.  `kinds` is the per-parameter kind list,
    or a single kind applied variadically when `variadic` is set."""
    name: str
    kinds: tuple
    impl: Callable
    variadic: bool = False
    min_args: int = 0


@dataclass(frozen=True)
class BraceValue:
    """An evaluated `{...}` list; consumed by transpose/generate-tensor."""
    items: tuple


class Environment:
    """Chain of frames.  A name can be bound plainly or under an index-type
    signature (a tuple of variance codes), and the two kinds of bindings
    never shadow each other."""

    def __init__(self, parent=None):
        self.parent = parent
        self.bindings = {}

    def define(self, name, value, signature=None):
        self.bindings[(name, signature)] = value

    def lookup(self, name, signature=None):
        env = self
        while env is not None:
            if (name, signature) in env.bindings:
                return env.bindings[(name, signature)]
            env = env.parent
        return _MISSING

    def signatures_of(self, name):
        sigs = set()
        env = self
        while env is not None:
            for (n, sig) in env.bindings:
                if n == name and sig is not None:
                    sigs.add(sig)
            env = env.parent
        return sigs


Environment.MISSING = _MISSING


# --- printing ----------------------------------------------------------------


def format_label(label):
    if isinstance(label, SymbolLabel):
        return label.name
    if isinstance(label, NumberLabel):
        return str(label.value)
    if isinstance(label, DummyLabel):
        return "#"
    raise EvalError(f"unknown index label: {label!r}")


def format_index(ix):
    if ix is None:
        return ""
    mark = {tensor.SUP: "~", tensor.SUB: "_", tensor.SUPSUB: "~_"}[ix.variance]
    return mark + format_label(ix.label)


def _format_slices(t, axis, multi):
    if axis == t.rank:
        return format_value(tensor.component_at(t, tuple(multi)))
    parts = []
    for i in range(1, t.shape[axis] + 1):
        parts.append(_format_slices(t, axis + 1, multi + [i]))
    return "[|" + " ".join(parts) + "|]"


def format_value(v):
    """Render a runtime value the way source notation writes it."""
    if isinstance(v, symbolic.ScalarExpr):
        return symbolic.format_scalar(v)
    if isinstance(v, bool):
        return "#t" if v else "#f"
    if isinstance(v, Tensor):
        body = _format_slices(v, 0, [])
        return body + "".join(format_index(ix) for ix in v.indices)
    if isinstance(v, FunctionValue):
        return f"#<function{':' + v.name if v.name else ''}>"
    if isinstance(v, Builtin):
        return f"#<builtin:{v.name}>"
    if isinstance(v, BraceValue):
        return "{" + " ".join(format_value(x) for x in v.items) + "}"
    raise EvalError(f"cannot print value: {v!r}")
