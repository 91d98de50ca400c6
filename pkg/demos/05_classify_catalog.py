"""Classify every two-dimensional catalog metric.

Each metric gets the full predicate battery — constant one-form length,
Killing form, Berwald/Landsberg/Douglas, vanishing S, Riemannian — and a
final verdict from the fixed priority ladder.
"""

from finsler import get_metric
from finsler.classify import classify_metric

CASES = [("euclid", {}), ("euclid_randers", {"eps": 0.5}),
         ("lie_group", {}), ("fish_tank", {}),
         ("sphere_randers", {"eps": 0.5})]

for name, params in CASES:
    entry = get_metric(name, **params)
    report = classify_metric(entry.metric, entry.phi)
    flags = " ".join(f"{k}={'T' if v else 'f'}"
                     for k, v in report.predicates.items())
    print(f"{name:16s} -> {report.verdict:22s} [{flags}]")
