"""
CSV tables: degree distributions and alpha curves.
"""

import csv
from typing import List, Sequence

from app.adapters.base import GraphFormatError
from app.services.invasion import AlphaEvaluation
from app.services.metrics import DegreeDistribution

DEGREE_HEADER = ['k', 'count', 'fraction']
CURVE_HEADER = ['alpha', 'mean_k', 'std_k']


def write_degree_csv(distribution: DegreeDistribution, path: str) -> None:
    """Write `k,count,fraction` rows ascending in k."""
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(DEGREE_HEADER)
        for k, count, fraction in distribution.rows():
            writer.writerow([k, count, repr(float(fraction))])


def read_degree_csv(path: str) -> DegreeDistribution:
    """Read a degree CSV; only the k and count columns are used."""
    counts = {}
    try:
        with open(path, 'r', encoding='utf-8-sig', newline='') as handle:
            reader = csv.DictReader(handle)
            if reader.fieldnames is None or not {'k', 'count'} <= set(reader.fieldnames):
                raise GraphFormatError(f"{path}: degree CSV needs k and count columns")
            for row in reader:
                counts[int(row['k'])] = counts.get(int(row['k']), 0) + int(row['count'])
    except (ValueError, OSError) as e:
        raise GraphFormatError(f"{path}: {str(e)}")
    return DegreeDistribution.from_counts(counts)


def write_curve_csv(evaluations: Sequence[AlphaEvaluation], path: str) -> None:
    """Write `alpha,mean_k,std_k` rows ascending in alpha."""
    rows: List[AlphaEvaluation] = sorted(evaluations, key=lambda e: e.alpha)
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(CURVE_HEADER)
        for e in rows:
            writer.writerow([repr(float(e.alpha)), repr(float(e.mean_k)), repr(float(e.std_k))])
