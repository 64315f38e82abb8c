# Counting merger patterns three ways.
#
# T(J) counts every non-crossing pairing of 2J levels, P(J) only the
# centrally symmetric ones. Each is available from a recurrence, a closed
# form and a generating-function expansion; all three are exact integers.

from confluence.counting import (
    count_P_closed,
    count_T_closed,
    p_table,
    series_f,
    series_g,
    t_table,
)

# The first few values, side by side.
J_MAX = 12
T_rec, P_rec = t_table(J_MAX), p_table(J_MAX)
f, g = series_f(J_MAX + 1), series_g(J_MAX + 1)

print(f"{'J':>3} {'T rec':>8} {'T closed':>9} {'f coeff':>8}   {'P rec':>6} {'P closed':>9} {'g coeff':>8}")
for J in range(J_MAX + 1):
    print(f"{J:>3} {T_rec[J]:>8} {count_T_closed(J):>9} {f[J]:>8}   {P_rec[J]:>6} {count_P_closed(J):>9} {g[J]:>8}")

# The series come from functional equations, not from square roots:
#   f = 1 + x f^2      (Newton iteration on exact integer series)
#   g (1 - x - x^2 f(x^2)) = 1
# so f(x^2) is just f with zeros interleaved.
print("\nf(x)   =", list(series_f(8)))
print("f(x^2) =", list(series_f(4).compose_square()))

# Big integers are no problem.
print("\nT(100) =", count_T_closed(100))
print("P(100) =", count_P_closed(100))
print("symmetric share at J=100: %.3e" % (count_P_closed(100) / count_T_closed(100)))
