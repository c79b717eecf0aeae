# A three-qubit unextendible biseparable basis and its entangled complement.

# %%
from entcert.constructions import family_222, omega_222, stopper
from entcert.entanglement import certify_ges, certify_ubb, product_forming_matrices
from entcert.states import flatten, inner_product, tripartite_groupings

fam = family_222()
for s in fam.U:
    print(s.label, "=", s)

# %%
# The stopper is the all-ones product state.  It is orthogonal to every
# minus-type state, which is what lets it replace the plus-type ones.
tau = stopper(2, 3)
print([str(inner_product(tau, s)) for s in fam.Gminus])

# %%
# The complement is spanned by two states.  Flattened across A|BC the first
# one is a 2x4 coefficient matrix.
om = omega_222()
a_bc = tripartite_groupings()[0]
print([[str(x) for x in row] for row in flatten(om[0], a_bc).to_lists()])
lams = product_forming_matrices(om, a_bc)
print("product-forming matrices:", len(lams))
print("Lambda_01|01 =", [[str(x) for x in row] for row in lams[0].to_lists()])

# %%
# The stacked map reaches full rank n^2 = 4 in every cut, so no product
# vector sits in the span and the span is genuinely entangled.
rep = certify_ges(om)
for c in rep.certificates:
    print(c.grouping.name, "span", c.span_dim, "of", c.n * c.n)
print(rep.verdict)

# %%
ubb = certify_ubb(fam.U)
print(ubb.verdict, "complement dimension", ubb.complement_dim)
