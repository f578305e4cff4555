"""Acceptance gate: one test per criterion, each printing a PASS line with
its measured margin when it completes.  Tolerances are pinned here and
nowhere else."""

import io
import itertools
import random
import time

import pytest

from tensorlang import Interpreter, cli, format_value, golden
from tensorlang import tensor as T
from tensorlang.errors import (BoundsError, DimensionMismatchError, RankError,
                               ShapeError, SingularMatrixError)
from tensorlang.symbolic import Integer
from tensorlang.tensor import DummyLabel, SymbolLabel

from helpers import (as_engine_tensor, brute_reduce, random_binding,
                     random_labeled_tensor, random_scalar_expr)


def _report(n, label, detail=""):
    print(f"ACCEPTANCE {n} PASS — {label}{(': ' + detail) if detail else ''}")


def test_criterion_1_golden_corpus():
    t0 = time.monotonic()
    results = golden.run_suite()
    elapsed = time.monotonic() - t0
    failing = [(r.case.name, r.failures) for r in results if not r.passed]
    assert not failing, failing
    assert len(results) >= 30
    assert elapsed < 5.0
    _report(1, "golden corpus reproduced",
            f"{len(results)} cases, {sum(r.checks for r in results)} pinned outputs, "
            f"{elapsed:.2f}s")


def test_criterion_2_reduction_engine_equivalence():
    rng = random.Random(20260810)
    t0 = time.monotonic()
    for _ in range(1000):
        shape, comps, axes = random_labeled_tensor(rng, labels=("i", "j"),
                                                   max_rank=4, max_dim=3)
        engine = T.reduce_indices(as_engine_tensor(shape, comps, axes))
        want_shape, want_comps, want_axes = brute_reduce(shape, comps, axes)
        got_axes = [(ix.label.name, ix.variance) for ix in engine.indices]
        assert engine.shape == want_shape
        assert engine.components == want_comps
        assert got_axes == want_axes
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0
    _report(2, "index reduction equals brute-force enumeration",
            f"1000 random tensors, {elapsed:.2f}s")


FUNCTION_POOL = [
    "(lambda [$x $y] (+ (* 2 x) y))",
    "(lambda [$x $y] (* x y))",
    "(lambda [$x $y] (- (* x x) y))",
    "+",
    "*",
    "min",
]


def _random_arg(rng, serial, dim_of):
    """Random literal tensor/scalar source plus its per-axis oracle labels.
    Named labels take their dimension from `dim_of` so a label means one
    size everywhere in a case."""
    rank = rng.randint(0, 2)
    if rank == 0:
        v = rng.randint(-9, 9)
        return str(v), (), [Integer(v)], []
    axes = []
    indexed = rng.randint(0, rank)  # suffix indices bind to leading axes
    for a in range(rank):
        lab = rng.choice(("i", "j", "#")) if a < indexed else ""
        var = rng.choice(("~", "_"))
        dim = dim_of.get(lab, rng.randint(1, 3))
        axes.append((lab, var, dim))
    shape = tuple(d for _, _, d in axes)
    n = 1
    for d in shape:
        n *= d
    vals = [rng.randint(-9, 9) for _ in range(n)]

    def lit(axis, offset, block):
        if axis == len(shape):
            return str(vals[offset])
        step = block // shape[axis]
        inner = [lit(axis + 1, offset + k * step, step) for k in range(shape[axis])]
        return "[|" + " ".join(inner) + "|]"

    suffix = "".join(f"{var}{lab}" if lab else "" for lab, var, _ in axes)
    source = lit(0, 0, n) + suffix
    # oracle labels: shared names merge, everything else is unique;
    # a blank axis has no variance at all
    labels = []
    for a, (lab, var, _) in enumerate(axes):
        code = {"~": 1, "_": -1}[var] if lab else None
        if lab in ("i", "j"):
            labels.append((("shared", lab), code))
        else:
            labels.append(((serial, "unique", a), code))
    return source, shape, [Integer(v) for v in vals], labels


def _summary(value):
    if not isinstance(value, T.Tensor):
        return value
    labs = []
    for ix in value.indices:
        if ix is None:
            labs.append(("blank", None))
        elif isinstance(ix.label, SymbolLabel):
            labs.append((ix.label.name, ix.variance))
        elif isinstance(ix.label, DummyLabel):
            labs.append(("dummy", ix.variance))
    return (value.shape, value.components, labs)


def _oracle_apply(call2, sa, ca, la, sb, cb, lb):
    # arguments are values, so their own duplicate labels have already
    # merged before the application combines them
    if sa:
        sa, ca, la = brute_reduce(sa, ca, la)
    if sb:
        sb, cb, lb = brute_reduce(sb, cb, lb)
    grid_shape = tuple(sa) + tuple(sb)
    comps = []
    for p in itertools.product(*[range(d) for d in sa]) if sa else [()]:
        off_a = 0
        for d, k in zip(sa, p):
            off_a = off_a * d + k
        for q in itertools.product(*[range(d) for d in sb]) if sb else [()]:
            off_b = 0
            for d, k in zip(sb, q):
                off_b = off_b * d + k
            comps.append(call2(ca[off_a], cb[off_b]))
    if not grid_shape:
        return comps[0]
    shape, comps, axes = brute_reduce(grid_shape, tuple(comps), la + lb)
    return shape, comps, axes


def test_criterion_3_scalar_apply_equivalence():
    rng = random.Random(31415)
    it = Interpreter()
    it.run_source("""
        (define $mk-map (lambda [%f]
          (lambda [%x %y]
            (tensor-map (lambda [%x2] (tensor-map (lambda [%y2] (f x2 y2)) y)) x))))
    """)
    t0 = time.monotonic()
    for case in range(500):
        f_src = rng.choice(FUNCTION_POOL)
        it.run_source(f"(define $f {f_src}) (define $g (mk-map f))")
        fv = it.eval_source("f")
        dim_of = {"i": rng.randint(1, 3), "j": rng.randint(1, 3)}
        a_src, sa, ca, la = _random_arg(rng, "a", dim_of)
        b_src, sb, cb, lb = _random_arg(rng, "b", dim_of)

        direct = _summary(it.eval_source(f"(f {a_src} {b_src})"))
        desugared = _summary(it.eval_source(f"(g {a_src} {b_src})"))
        assert direct == desugared, (f_src, a_src, b_src)

        want = _oracle_apply(lambda x, y: it.evaluator.call(fv, [x, y]),
                             sa, ca, la, sb, cb, lb)
        if isinstance(want, tuple):
            w_shape, w_comps, w_axes = want
            got_shape, got_comps, got_axes = direct
            assert got_shape == w_shape and got_comps == w_comps, (f_src, a_src, b_src)
            # labels: shared names survive as themselves, others as dummies/blanks
            assert len(got_axes) == len(w_axes)
            for (g_lab, g_var), (w_lab, w_var) in zip(got_axes, w_axes):
                assert g_var == w_var
                if w_lab[0] == "shared":
                    assert g_lab == w_lab[1]
                else:
                    assert g_lab in ("dummy", "blank")
        else:
            assert direct == want
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0
    _report(3, "scalar broadcasting equals nested tensor-map and loops",
            f"500 random cases, {elapsed:.2f}s")


def test_criterion_4_einstein_summation_exact():
    rng = random.Random(271828)
    it = Interpreter()
    for _ in range(200):
        n = rng.randint(1, 5)
        xs = [rng.randint(-99, 99) for _ in range(n)]
        ys = [rng.randint(-99, 99) for _ in range(n)]
        lit = lambda vs: "[|" + " ".join(map(str, vs)) + "|]"
        got = it.eval_source(f"(contract + (* {lit(xs)}~i {lit(ys)}_i))")
        assert got == Integer(sum(a * b for a, b in zip(xs, ys)))
    _report(4, "contracted products equal the explicit summation loop",
            "200 random vectors, exact integer equality")


def test_criterion_5_torus_pipeline_vs_oracle():
    t0 = time.monotonic()
    out = io.StringIO()
    status = cli.demo_torus(seed=20260810, samples=20, out=out)
    elapsed = time.monotonic() - t0
    print(out.getvalue())
    assert status == 0, out.getvalue()
    assert elapsed < 60.0
    _report(5, "curvature pipeline matches the finite-difference oracle",
            f"16 components × 20 bindings, {elapsed:.2f}s")


def test_criterion_6_differentiation_vs_central_differences():
    from tensorlang import symbolic as s
    rng = random.Random(16180)
    h = 1e-5
    checked = 0
    worst = 0.0
    while checked < 100:
        e = random_scalar_expr(rng)
        name = rng.choice(("x", "y", "z"))
        d = s.differentiate(e, name)
        env = random_binding(rng)
        try:
            hi = dict(env, **{name: env[name] + h})
            lo = dict(env, **{name: env[name] - h})
            fd = (s.eval_numeric(e, hi) - s.eval_numeric(e, lo)) / (2 * h)
            exact = s.eval_numeric(d, env)
        except (ZeroDivisionError, OverflowError):
            continue
        if max(abs(fd), abs(exact)) > 1e6:
            continue
        gap = abs(exact - fd) / (1 + abs(fd))
        worst = max(worst, gap)
        assert gap <= 1e-6, s.format_scalar(e)
        checked += 1
    _report(6, "symbolic derivatives match central differences",
            f"100 expressions, worst relative gap {worst:.2e}")


def test_criterion_7_with_symbols_hygiene():
    printed = []
    for case in golden.load_cases():
        it = Interpreter()
        for _, value in it.run_source(case.source):
            if value is not None:
                printed.append(format_value(value))
    assert printed
    offenders = [p for p in printed if "%" in p]
    assert not offenders, offenders
    _report(7, "no local symbol leaks into printed results",
            f"{len(printed)} printed values scanned")


def test_criterion_8_designated_errors():
    it = Interpreter()
    cases = [
        ("[|1 2 3|]_1_2", RankError),
        ("[|[|1 2|] [|3|]|]", ShapeError),
        ("(+ [|1 2|]_i [|1 2 3|]_i)", DimensionMismatchError),
        ("(M.inverse [|[|1 2|] [|2 4|]|])", SingularMatrixError),
        ("[|1 2 3|]_9", BoundsError),
    ]
    for src, exc in cases:
        with pytest.raises(exc):
            it.eval_source(src)
    _report(8, "failure modes raise their designated errors",
            ", ".join(e.__name__ for _, e in cases))
