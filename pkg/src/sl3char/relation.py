"""Transcribed polynomials P and Q of the defining relation t5^2 - P t5 + Q.

Both are kept as text in the coordinate-ring polynomial syntax and parsed on
first use. Neither is trusted as typed: the test suite checks
``Q(chi(A, B)) == tr[A,B] * tr[B,A]`` and ``P == tr[A,B] + tr[B,A]`` on
random exact pairs.
"""

P_TEXT = """
  t(1)*t(-1)*t(2)*t(-2) - t(1)*t(2)*t(-3) - t(-1)*t(-2)*t(3)
- t(1)*t(-2)*t(-4) - t(-1)*t(2)*t(4)
+ t(1)*t(-1) + t(2)*t(-2) + t(3)*t(-3) + t(4)*t(-4) - 3
"""

Q_TEXT = """
9 - 6*t(1)*t(-1) - 6*t(2)*t(-2) - 6*t(3)*t(-3) - 6*t(4)*t(-4)
+ t(1)^3 + t(2)^3 + t(3)^3 + t(4)^3 + t(-1)^3 + t(-2)^3 + t(-3)^3 + t(-4)^3
- 3*t(-4)*t(-3)*t(-1) - 3*t(4)*t(3)*t(1) - 3*t(-4)*t(2)*t(3) - 3*t(4)*t(-2)*t(-3)
+ 3*t(-4)*t(-2)*t(1) + 3*t(4)*t(2)*t(-1) + 3*t(1)*t(2)*t(-3) + 3*t(-1)*t(-2)*t(3)
+ t(-2)*t(-1)*t(2)*t(1) + t(-3)*t(-2)*t(3)*t(2) + t(-4)*t(-1)*t(4)*t(1)
+ t(-4)*t(-2)*t(4)*t(2) + t(-3)*t(-1)*t(3)*t(1) + t(-3)*t(-4)*t(3)*t(4)
+ t(-4)^2*t(-3)*t(-2) + t(4)^2*t(3)*t(2) + t(-1)^2*t(-2)*t(-4) + t(1)^2*t(2)*t(4)
+ t(1)*t(-2)^2*t(-3) + t(-1)*t(2)^2*t(3) + t(-4)*t(-3)*t(1)^2 + t(4)*t(3)*t(-1)^2
+ t(-4)*t(2)*t(-3)^2 + t(4)*t(-2)*t(3)^2 + t(-1)^2*t(-3)*t(2) + t(1)^2*t(3)*t(-2)
+ t(-4)*t(1)*t(2)^2 + t(4)*t(-1)*t(-2)^2 + t(-4)*t(3)*t(-2)^2 + t(4)*t(-3)*t(2)^2
+ t(1)*t(3)*t(-4)^2 + t(-1)*t(-3)*t(4)^2 + t(-1)*t(-4)*t(3)^2 + t(1)*t(4)*t(-3)^2
- 2*t(-3)^2*t(-2)*t(-1) - 2*t(3)^2*t(2)*t(1) - 2*t(-4)^2*t(-1)*t(2)
- 2*t(4)^2*t(1)*t(-2) + t(-1)^2*t(-2)^2*t(-3) + t(1)^2*t(2)^2*t(3)
+ t(-4)*t(-1)^2*t(2)^2 + t(4)*t(1)^2*t(-2)^2 - t(-4)*t(-2)^2*t(2)*t(1)
- t(4)*t(2)^2*t(-2)*t(-1) - t(-3)*t(1)^2*t(-1)*t(2) - t(3)*t(-1)^2*t(1)*t(-2)
- t(-3)*t(2)^2*t(-2)*t(1) - t(3)*t(-2)^2*t(2)*t(-1) - t(-4)*t(-2)*t(-1)*t(1)^2
- t(4)*t(2)*t(1)*t(-1)^2 - t(-1)*t(-2)^3*t(1) - t(-1)*t(2)^3*t(1)
- t(-1)^3*t(-2)*t(2) - t(1)^3*t(-2)*t(2) - t(-4)*t(-3)*t(-2)*t(-1)*t(2)
- t(4)*t(3)*t(2)*t(1)*t(-2) - t(-1)*t(1)*t(2)*t(-4)*t(3) - t(-1)*t(1)*t(-2)*t(4)*t(-3)
+ t(-2)*t(-1)^2*t(1)^2*t(2) + t(-1)*t(-2)^2*t(2)^2*t(1)
"""

# symmetrizer seeds: P = S(p) - 3 and Q = S(q) + 9
P_SEED_TEXT = """
1/8*( t(1)*t(-1)*t(2)*t(-2) - 4*t(1)*t(-2)*t(-4) + 2*t(1)*t(-1) + 2*t(3)*t(-3) )
"""

Q_SEED_TEXT = """
1/8*( 2*t(-2)*t(-1)^2*t(1)^2*t(2) + 4*t(1)^2*t(2)^2*t(3) - 4*t(1)^3*t(-2)*t(2)
- 8*t(-4)*t(-2)*t(-1)*t(1)^2 - 4*t(4)*t(3)*t(2)*t(1)*t(-2)
+ 8*t(1)*t(3)*t(-4)^2 + 8*t(-4)*t(1)*t(2)^2 - 8*t(3)^2*t(2)*t(1) + 4*t(4)*t(-3)*t(2)^2
+ t(-2)*t(-1)*t(2)*t(1) + t(-3)*t(-4)*t(3)*t(4)
+ 4*t(-3)*t(-1)*t(3)*t(1) + 4*t(1)^3 + 4*t(3)^3 + 12*t(-4)*t(-2)*t(1)
- 12*t(-4)*t(2)*t(3) - 12*t(1)*t(-1) - 12*t(3)*t(-3) )
"""
