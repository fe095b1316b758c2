"""S3 permuting three points of C^2 summing to zero: an Sp(2) quotient of C^4."""

from qale.cli import cohomology_report
from qale.group import close_group
from qale.groupfile import parse_group_file
from qale.strata import stratification_report

gf = parse_group_file("s3-hilb3")
G = close_group(gf.generators)
report = stratification_report(G)
print("symplectic:", report.sp_status, " length:", report.length, " strata:", len(report.strata))
for k, s in enumerate(report.strata):
    print(f"  stratum {k}: dim {s.n_i}, |A| = {len(s.A_indices)}, |N| = {len(s.N_indices)}")

rep = cohomology_report(gf, G)
print("L2 table:", rep["l2"])
for banner in rep["banners"]:
    print("note:", banner)
