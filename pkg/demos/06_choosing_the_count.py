"""How many factors or components to keep?

The classic criteria (Kaiser, half the variable count, explained-variance
percentage, the scree plot) all look at the eigenvalues, i.e. at averages
over all variables, and they can disagree.  The minimum-per-variable rule
instead keeps adding factors until every single variable has most of its
variance explained; its per-prefix ledger shows exactly which variable is
the current bottleneck.
"""

from facpca import (
    eigen_symmetric,
    half_count,
    kaiser_count,
    minvar_count,
    percentage_count,
    scree_data,
)
from facpca.datasets import dataset1_corr_path
from facpca.reporting import read_correlation_csv

corr = read_correlation_csv(dataset1_corr_path())
eig = eigen_symmetric(corr.entries, correlation_input=True)

print("classic criteria:")
print(f"  kaiser (eigenvalue >= 1):        {kaiser_count(eig.eigenvalues)}")
print(f"  half the variable count:         {half_count(eig.size)}")
print(f"  explained variance >= 80%:       {percentage_count(eig.eigenvalues, 80.0)}")
print("  scree series (read the elbow yourself):")
print("   ", " ".join(f"{v:.3f}" for _, v in scree_data(eig.eigenvalues)))

report = minvar_count(eig, epsilon=0.51)
print(f"\nminimum-per-variable rule (threshold {report.threshold:.0%}):")
print("  factors   MinVar   AverVar   worst variable")
for i, (low, avg, nr) in enumerate(
    zip(report.min_var, report.aver_var, report.nr_min_var), start=1
):
    marker = " <- chosen" if i == report.chosen else ""
    print(f"  {i:>7}   {low * 100:6.2f}%  {avg * 100:6.2f}%   x{nr}{marker}")

print(f"\nchosen count: {report.chosen}")
print("raising the threshold can only increase the count:")
for epsilon in (0.51, 0.6, 0.75, 0.9):
    print(f"  threshold {epsilon:.2f} -> {minvar_count(eig, epsilon).chosen} factors")
