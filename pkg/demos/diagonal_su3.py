"""Walk through the two diagonal SU(3) quotients shipped with the package."""

from qale.cli import cohomology_report
from qale.group import close_group, conjugacy_classes
from qale.groupfile import parse_group_file

for name in ("joyce-9-3-5", "z2z2"):
    gf = parse_group_file(name)
    G = close_group(gf.generators)
    print(f"== {name}: |G| = {len(G)}")
    for c in conjugacy_classes(G):
        print(f"  class of element {c.rep_index}: age {c.age}, fixed dim {c.fixed_dim}")
    rep = cohomology_report(gf, G)
    print("  crepant betti:", rep["crepant_betti"])
    print("  L2 table:     ", rep["l2"] or "(zero)")
    print("  chi_L2 =", rep["chi_l2"], " MV consistent:", rep["mv_ok"])
