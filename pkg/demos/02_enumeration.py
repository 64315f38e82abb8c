# Listing patterns and working with their symbols.

from confluence.matchings import (
    enumerate_noncrossing,
    enumerate_symmetric,
    format_symbol,
    is_centrally_symmetric,
    is_noncrossing,
    parse_symbol,
    reflect,
)

# Six levels: five admissible pairings, three of them symmetric.
print("all non-crossing pairings of 6 levels:")
for p in enumerate_noncrossing(3):
    mark = "symmetric" if is_centrally_symmetric(p) else ""
    print(f"  {format_symbol(p):<22} {mark}")

# Reflection n -> 2J + 1 - n pairs up the asymmetric ones.
p = parse_symbol("{[1,2],[3,6],[4,5]}")
print("\nreflect", p, "->", reflect(p))

# Crossing pairings parse fine but are not admissible.
q = parse_symbol("{[1,3],[2,4]}")
print(q, "non-crossing?", is_noncrossing(q))

# The parser normalises order and tolerates spaces.
print(parse_symbol(" { [4, 3], [2,1] } "))

# Symmetric catalogues grow like C(J, J//2).
for J in range(1, 9):
    print(f"J={J}: {len(enumerate_symmetric(J)):>3} symmetric of {len(enumerate_noncrossing(J)):>5}")
