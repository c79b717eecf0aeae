# Exact rank over the Gaussian rationals.
#
# Every certificate in the package reduces to the rank of an exact matrix, so
# the first thing to see is that nothing here is floating point.

# %%
from fractions import Fraction

from entcert.exactla import ExactMatrix, ExactScalar, column_stack, kernel_basis, rank, vectorize

m = ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6], [Fraction(1, 3), 0, ExactScalar(0, 1)]])
print("rank:", rank(m))
for v in kernel_basis(m):
    print("kernel vector:", [str(x) for x in v])

# %%
# Vectorization is column-major.  Stacking vec(M_k) as columns turns "span
# dimension of a matrix family" into a single rank computation.
a = ExactMatrix.from_rows([[1, 2], [3, 4]])
print("vec:", [str(x) for x in vectorize(a)])
family = [a, a.T, a + a.T, ExactMatrix.identity(2)]
print("span dimension of the family:", rank(column_stack(family)))

# %%
# Floats would disagree with themselves on a nearly singular matrix; exact
# arithmetic never does.
eps = Fraction(1, 10**30)
near = ExactMatrix.from_rows([[1, 1], [1, 1 + eps]])
print("rank with a 1e-30 perturbation:", rank(near))
