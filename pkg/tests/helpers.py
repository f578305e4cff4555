"""Independent oracles shared by the test modules: a brute-force index
reducer that enumerates multi-indices, and small utilities for random
expressions and tensors."""

import itertools
import random

from tensorlang import symbolic, tensor
from tensorlang.symbolic import Integer
from tensorlang.tensor import Index, SymbolLabel, Tensor


def merge_variance(left, right):
    """Keep-left merge rule for clashing index variances."""
    if left == right:
        return left
    if left == 0 or right == 0:
        return left
    return 0


def brute_reduce(shape, components, labeled):
    """Reduce by enumerating every multi-index and keeping the positions
    where all axes sharing a label agree.

    `labeled` is a per-axis list of (label, variance).  Returns
    (shape, components, [(label, variance)]).  Raises ValueError when two
    axes with one label have different dimensions.
    """
    order = []  # (label, variance, dim) by first occurrence
    for axis, (lab, var) in enumerate(labeled):
        for entry in order:
            if entry[0] == lab:
                if entry[2] != shape[axis]:
                    raise ValueError("dimension mismatch for label")
                entry[1] = merge_variance(entry[1], var)
                break
        else:
            order.append([lab, var, shape[axis]])
    out_shape = tuple(e[2] for e in order)
    pos_of = {e[0]: i for i, e in enumerate(order)}
    comps = []
    for multi in itertools.product(*[range(1, d + 1) for d in out_shape]):
        old = tuple(multi[pos_of[lab]] for lab, _ in labeled)
        off = 0
        stride = 1
        for axis in range(len(shape) - 1, -1, -1):
            off += (old[axis] - 1) * stride
            stride *= shape[axis]
        comps.append(components[off])
    return out_shape, tuple(comps), [(e[0], e[1]) for e in order]


def random_labeled_tensor(rng, labels=("i", "j"), max_rank=4, max_dim=3):
    """A random integer tensor plus a per-axis (label, variance) assignment;
    axes sharing a label share a dimension."""
    rank = rng.randint(1, max_rank)
    dim_of = {lab: rng.randint(1, max_dim) for lab in labels}
    axes = [(rng.choice(labels), rng.choice((1, -1, 0))) for _ in range(rank)]
    shape = tuple(dim_of[lab] for lab, _ in axes)
    n = 1
    for d in shape:
        n *= d
    comps = tuple(Integer(rng.randint(-9, 9)) for _ in range(n))
    return shape, comps, axes


def as_engine_tensor(shape, comps, axes):
    idx = tuple(Index(var, SymbolLabel(lab)) for lab, var in axes)
    return tensor.make_tensor(shape, comps, idx)


def engine_summary(t):
    """(shape, components, [(label, variance)]) for reduced engine output."""
    labs = []
    for ix in t.indices:
        labs.append((ix.label.name if isinstance(ix.label, SymbolLabel) else ix.label,
                     ix.variance))
    return t.shape, t.components, labs


def random_scalar_expr(rng, names=("x", "y", "z"), depth=3):
    """Random expression over +, *, integer powers, sin, cos."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return symbolic.Symbol(rng.choice(names))
        return Integer(rng.randint(-3, 3))
    op = rng.choice(("add", "mul", "pow", "sin", "cos"))
    if op == "add":
        return symbolic.add(random_scalar_expr(rng, names, depth - 1),
                            random_scalar_expr(rng, names, depth - 1))
    if op == "mul":
        return symbolic.mul(random_scalar_expr(rng, names, depth - 1),
                            random_scalar_expr(rng, names, depth - 1))
    if op == "pow":
        base = random_scalar_expr(rng, names, depth - 1)
        if base == symbolic.ZERO:
            base = symbolic.Symbol(rng.choice(names))
        return symbolic.powi(base, rng.choice((2, 3, -1, -2)))
    if op == "sin":
        return symbolic.sin(random_scalar_expr(rng, names, depth - 1))
    return symbolic.cos(random_scalar_expr(rng, names, depth - 1))


def random_binding(rng, names=("x", "y", "z")):
    """Bindings kept away from zero so negative powers stay well-behaved."""
    return {n: rng.choice((-1, 1)) * rng.uniform(0.4, 1.8) for n in names}


def values_close(e1, e2, rng, names=("x", "y", "z"), trials=100, tol=1e-9):
    for _ in range(trials):
        env = random_binding(rng, names)
        try:
            v1 = symbolic.eval_numeric(e1, env)
            v2 = symbolic.eval_numeric(e2, env)
        except (ZeroDivisionError, OverflowError):
            continue
        if not (abs(v1 - v2) <= tol * (1 + max(abs(v1), abs(v2)))):
            return False
    return True
