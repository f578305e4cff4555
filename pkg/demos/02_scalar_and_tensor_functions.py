"""Scalar vs tensor parameters: broadcasting with index awareness.

A parameter marked $ receives tensor arguments componentwise; a parameter
marked % receives them whole.  The same user function therefore works on
scalars and on indexed tensors without any extra code.

Run with:  python3 demos/02_scalar_and_tensor_functions.py
"""

from tensorlang import Interpreter, format_value

it = Interpreter()


def show(src):
    print(f"{src}\n  => {format_value(it.eval_source(src))}\n")


print("min is an ordinary two-scalar function:\n")
it.run_source("(define $min (lambda [$x $y] (if (less-than? x y) x y)))")
show("(min 1 10)")

print("Applied to tensors with distinct indices it forms the whole grid")
print("(a tensor product with min as the combining operator); with identical")
print("indices the grid collapses to the diagonal:\n")
show("(min [|1 2 3|]_i [|10 20 30|]_j)")
show("(min [|1 2 3|]_i [|10 20 30|]_i)")

print("Arithmetic works the same way:\n")
show("(+ [|1 2 3|]_i [|10 20 30|]_i)")
show("(+ [|[|11 12|] [|21 22|] [|31 32|]|]_i_j [|100 200 300|]_i)")

print("The dummy index # makes every occurrence distinct, and omitting")
print("indices behaves the same way:\n")
show("(+ [|1 2 3|]_# [|10 20 30|]_#)")
show("(+ [|1 2 3|] [|10 20 30|])")

print("Tensor-parameter functions see indices and can contract.  The dot")
print("multiplies and then sums every supersubscript pair, so one function")
print("covers inner products, matrix products, and tensor products:\n")
show("(. [|1 2 3|]~i [|10 20 30|]_i)")
show("(. [|1 2 3|]_i [|10 20 30|]_j)")

print("with-symbols scopes index names; locals leaving the block become")
print("dummies, so index bookkeeping cannot leak:\n")
show("(with-symbols {i} (+ [|1 2 3|]_i [|10 20 30|]_i))")
show("(inner-product [|1 2 3|] [|10 20 30|])")
show("(mat-mul [|[|1 2|] [|3 4|]|] [|[|5 6|] [|7 8|]|])")
