"""Reference values frozen into the C++ tests.

Computed with mpmath, independently of the library: 2F1 via mpmath.hyp2f1,
recurrence coefficients via Hankel determinants at 1024 bits.
Run: python3 tests/oracles/goldens.py
"""
from mpmath import mp, mpf, hyp2f1
from hankel_mpmath import coeffs, xy

mp.prec = 1024
D = 50


def x0(a, b, g, c):
    return (c * a * b / g) * hyp2f1(a + 1, b + 1, g + 1, c) / hyp2f1(a, b, g, c) \
        - ((a + b) * c - g) / (1 - c)


def show(label, v):
    print(f"{label} = {mp.nstr(v, D)}")


base_set = (mpf(3) / 2, mpf(3), mpf(1) / 3, mpf(1) / 2)
one = (mpf(1), mpf(1), mpf(2), mpf(1) / 2)

show("base_set m0", hyp2f1(*base_set))
show("base_set x0", x0(*base_set))
show("(1,1,2,1/2) x0", x0(*one))
a2, b, _ = coeffs(*base_set, 30)
xs, ys = xy(*base_set, a2, b)
for n in (1, 5, 30):
    show(f"base_set a2[{n}]", a2[n])
    show(f"base_set b[{n}]", b[n])
    show(f"base_set x[{n}]", xs[n])
    show(f"base_set y[{n}]", ys[n])
a, bb, g, c = base_set
n = 3
S3 = sum(xs[:n])
K = a * bb - (a + bb + n) ** 2 / 4
L = ((a + bb + g + 1) * n + a * a + bb * bb - (a + bb) * (g + 1) + 2 * g) / 4
show("base_set sigma_3(1/2)", (c - 1) * S3 + K * c + L)
a2, b, _ = coeffs(*one, 2)
xs, ys = xy(*one, a2, b)
show("(1,1,2,1/2) y[1]", ys[1])
show("(1,1,2,1/2) x[1]", xs[1])
