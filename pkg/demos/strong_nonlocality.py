# Local irreducibility of the 3x3x3 sets, and where the 2x2x2 set gives way.

# %%
from entcert.constructions import family_222, family_333
from entcert.nonlocality import certify_strong_nonlocality, reduced_feature_matrices, oplm_solution_space
from entcert.states import tripartite_groupings

a_bc, b_ca, c_ab = tripartite_groupings()
u000 = family_333((0, 0, 0)).U
fam = reduced_feature_matrices(u000, c_ab, "right")
print(len(fam.matrices), "feature matrices of size", fam.dim)
cert = oplm_solution_space(fam)
print("span", cert.span_dim, "solution dimension", cert.solution_dim)

# %%
rep = certify_strong_nonlocality(u000)
for c in rep.certificates:
    print(f"{c.side_name:>2} of {c.grouping.name}: span {c.span_dim:>2}, solutions {c.solution_dim}")
print(rep.verdict)

# %%
# The three-qubit set is not strongly nonlocal.  BC together can measure
# something other than the identity without breaking orthogonality.
rep = certify_strong_nonlocality(family_222().U)
print(rep.verdict)
w = rep.witness.witness
print("lambda =", w.lam)
for m in w.outcomes:
    print([[str(x) for x in row] for row in m.to_lists()])
