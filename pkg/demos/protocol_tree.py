# Discriminating the three-qubit set across A|BC with a two-round protocol.

# %%
from entcert.constructions import family_222
from entcert.fixtures import u_protocol_tree
from entcert.locc import dumps_tree, norm_bookkeeping, verify_tree
from entcert.states import tripartite_groupings

u = family_222().U
tree = u_protocol_tree()
print(dumps_tree(tree)[:400], "...")

# %%
# BC project onto the stopper or its complement.  On the complement branch A
# then measures in the computational basis; at each leaf one side sees
# reduced operators with disjoint supports.
out = verify_tree(u, tripartite_groupings()[0], tree)
for leaf in out.leaves:
    print(leaf.path, leaf.survivors, "told apart on", leaf.witness_group)
for path, gone in out.eliminated.items():
    print("eliminated at", path, gone)
print(out.verdict)

# %%
# Kraus completeness means no probability leaks at any node.
print(all(norm_bookkeeping(s, tree) for s in u))
