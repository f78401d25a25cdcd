"""Column summaries and standardization.

Every analysis in this package starts from an observation matrix: rows are
measurements, columns are variables.  This demo builds a small synthetic
weather-like table, summarizes each column, and standardizes the matrix so
every column has mean 0 and (biased) standard deviation 1.  Standardization
does not change any correlation, which is why the rest of the pipeline can
work with standardized variables throughout.
"""

import numpy as np

from facpca import DataMatrix, standardize, summarize

rng = np.random.default_rng(1)
m = 1000
pressure = rng.normal(1016.4, 8.4, m)
temperature = rng.normal(10.2, 9.0, m)
wind_speed = np.abs(rng.normal(3.4, 2.1, m))

data = DataMatrix(
    np.column_stack([pressure, temperature, wind_speed]),
    ("pressure", "temperature", "wind_speed"),
)

print("column summaries")
for i, label in enumerate(data.labels):
    s = summarize(data.column(i))
    print(
        f"  {label:>12}: mean={s.mean:9.3f}  median={s.median:9.3f} "
        f" std={s.std_dev:8.3f}  range=[{s.minimum:.2f}, {s.maximum:.2f}]"
    )

standardized = standardize(data)
print("\nafter standardization")
for i, label in enumerate(standardized.labels):
    column = standardized.column(i)
    print(
        f"  {label:>12}: mean={column.mean():+.2e}  "
        f"biased std={np.sqrt(np.mean(column**2)):.12f}"
    )

print("\nstandardizing twice changes nothing:")
again = standardize(standardized)
print(f"  max difference = {np.max(np.abs(again.values - standardized.values)):.2e}")
