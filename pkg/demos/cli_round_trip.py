# The command line on a temporary directory.

# %%
import json
import tempfile
from pathlib import Path

from entcert.cli import main

tmp = Path(tempfile.mkdtemp())
main(["construct", "U", "--out", str(tmp / "u.json")])
main(["construct", "omega", "--out", str(tmp / "omega.json")])
print((tmp / "u.json").read_text()[:300], "...")

# %%
code = main(["certify", "ubb", str(tmp / "u.json"), "--complement", str(tmp / "omega.json"), "--out", str(tmp / "ubb.json")])
print("exit", code, json.loads((tmp / "ubb.json").read_text())["verdict"])
code = main(["certify", "strong-nonlocality", str(tmp / "u.json"), "--md", "--out", str(tmp / "snl.md")])
print("exit", code)
print((tmp / "snl.md").read_text()[:600])

# %%
code = main(["verify-protocol", str(tmp / "u.json"), "builtin:u-tree", "--cut", "A|BC", "--out", str(tmp / "p.json")])
print("exit", code, json.loads((tmp / "p.json").read_text())["verdict"])
