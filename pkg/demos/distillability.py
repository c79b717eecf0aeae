# Marginal ranks of every subset of the 8-state GES basis.

# %%
from entcert.constructions import family_333
from entcert.distillability import certify_one_distillable, projector_rank_check, subset_rank_table
from entcert.states import tripartite_groupings

basis = family_333((0, 0, 0)).ges_basis
table = subset_rank_table(basis)
print(len(table.rows), "rows,", len(table.violations), "violations")
print("smallest rank by subset size:", table.min_rank_by_size())
print(table.to_csv().splitlines()[:4])

# %%
for g in tripartite_groupings():
    r = projector_rank_check(basis, g)
    print(g.name, "rank P", r.rank_projector, "marginals", r.rank_left, r.rank_right, "holds" if r.holds else "fails")

# %%
rep = certify_one_distillable(basis)
print(rep.verdict)
