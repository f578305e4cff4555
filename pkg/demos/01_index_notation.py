"""Tensors with indices: selection, diagonals, and supersubscripts.

Run with:  python3 demos/01_index_notation.py
"""

from tensorlang import Interpreter, format_value

it = Interpreter()


def show(src):
    print(f"{src}\n  => {format_value(it.eval_source(src))}\n")


print("A tensor is written [|...|]; natural-number indices select components")
print("(1-based), one axis per index:\n")
show("[|[|11 12 13|] [|21 22 23|] [|31 32 33|]|]_2")
show("[|[|11 12 13|] [|21 22 23|] [|31 32 33|]|]_2_1")

print("Symbolic indices declare axis names.  Distinct names keep the tensor")
print("as it is; a repeated name picks out the diagonal, keeping the")
print("leftmost occurrence:\n")
show("[|[|11 12 13|] [|21 22 23|] [|31 32 33|]|]_i_j")
show("[|[|11 12 13|] [|21 22 23|] [|31 32 33|]|]_i_i")
show("[|[|[|1 2|] [|3 4|]|] [|[|5 6|] [|7 8|]|]|]_i_j_i")
show("[|[|[|1 2|] [|3 4|]|] [|[|5 6|] [|7 8|]|]|]_i_i_i")

print("Superscripts (~) behave symmetrically to subscripts (_):\n")
show("[|[|[|1 2|] [|3 4|]|] [|[|5 6|] [|7 8|]|]|]~i~j~i")

print("When one name appears once up and once down, the merged axis becomes")
print("a supersubscript (~_): a diagonal waiting to be summed.  Nothing is")
print("summed automatically — contraction is explicit, and you choose the")
print("operator:\n")
show("[|[|11 12 13|] [|21 22 23|] [|31 32 33|]|]~i_i")
show("(contract + [|11 22 33|]~_i)")
show("(contract * [|11 22 33|]~_i)")
