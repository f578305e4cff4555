"""Differentiation as a scalar function over whole tensors.

The partial-derivative operator takes the function components with a
scalar parameter and the coordinates with an inverted-scalar parameter:
the coordinate tensor's indices are flipped before mapping, so the result
of differentiating a vector field by a covector of coordinates carries the
index placement differential geometry expects.

Run with:  python3 demos/03_symbolic_differentiation.py
"""

from tensorlang import Interpreter, format_value
from tensorlang.symbolic import eval_numeric

it = Interpreter()


def show(src):
    print(f"{src}\n  => {format_value(it.eval_source(src))}\n")


print("Differentiating each of two components by each of two coordinates")
print("gives a 2x2 Jacobian; note the second index arrives flipped (~j):\n")
show("(∂/∂ [|(* r (sin θ)) (* r (cos θ))|]_i [|r θ|]_j)")

print("With identical index names the grid reduces to a supersubscripted")
print("diagonal — the divergence-style combination:\n")
show("(∂/∂ [|(* r (sin θ)) (* r (cos θ))|]_i [|r θ|]_i)")

print("Derivatives of scalars are plain calculus:\n")
show("(∂/∂ (* x (sin x)) x)")
show("(∂/∂ (^ (+ x 1) -1) x)")

print("flip swaps a function's two parameters together with their kinds.")
print("Flipping ∂/∂ maps coordinates on the outer axis, which is how a")
print("local-basis matrix is oriented:\n")
it.run_source("""
(define $x [|r θ|])
(define $X [|(* r (cos θ)) (* r (sin θ))|])
""")
show("((flip ∂/∂) x~# X_#)")

print("Everything stays exact and can be evaluated numerically afterwards:")
d = it.eval_source("(∂/∂ (* u (sin u)) u)")
print(f"  value at u=0.7: {eval_numeric(d, {'u': 0.7}):.12f}")
import math
print(f"  sin(0.7) + 0.7 cos(0.7): {math.sin(0.7) + 0.7 * math.cos(0.7):.12f}")
