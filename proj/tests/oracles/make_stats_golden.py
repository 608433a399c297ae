"""Freeze reference statistics from scipy into tests/golden/stats_reference.json.

Run from the repository root:  python3 tests/oracles/make_stats_golden.py
"""
import json
import pathlib

import numpy as np
from scipy import stats

OUT = pathlib.Path(__file__).resolve().parents[1] / "golden" / "stats_reference.json"


def sw_case(name, values):
    w, p = stats.shapiro(values)
    return {"name": name, "values": [float(v) for v in values], "w": float(w), "p": float(p)}


def main():
    cases = []
    rng = np.random.default_rng(42)
    cases.append(sw_case("normal_seed42_n25", np.round(rng.normal(10.0, 2.0, 25), 6)))
    rng = np.random.default_rng(7)
    cases.append(sw_case("exponential_seed7_n40", np.round(rng.exponential(1.5, 40), 6)))
    rng = np.random.default_rng(2024)
    cases.append(sw_case("uniform_seed2024_n60", np.round(rng.uniform(0.0, 1.0, 60), 6)))
    cases.append(sw_case("linear_n20", np.arange(1, 21, dtype=float)))
    cases.append(sw_case("squares_n50", np.arange(1, 51, dtype=float) ** 2))
    cases.append(sw_case("small_n3", np.array([1.0, 2.0, 4.0])))
    cases.append(sw_case("small_n5", np.array([2.1, 3.4, 1.9, 5.6, 4.0])))
    cases.append(sw_case("ties_n12", np.array([1, 1, 2, 2, 2, 3, 3, 4, 5, 5, 6, 9], dtype=float)))

    quantiles = [{"p": p, "z": float(stats.norm.ppf(p))}
                 for p in (1e-300, 1e-12, 1e-6, 0.001, 0.025, 0.1, 0.3, 0.5, 0.7, 0.975, 0.999999, 1 - 1e-12)]

    rank = []
    groups = [[2.9, 3.0, 2.5, 2.6, 3.2], [3.8, 2.7, 4.0, 2.4], [2.8, 3.4, 3.7, 2.2, 2.0]]
    h, p = stats.kruskal(*groups)
    rank.append({"test": "kruskal", "groups": groups, "statistic": float(h), "p": float(p)})
    groups = [[1, 1, 2, 3, 3, 3], [2, 4, 4, 5], [5, 6, 6, 7, 8]]
    h, p = stats.kruskal(*groups)
    rank.append({"test": "kruskal", "groups": groups, "statistic": float(h), "p": float(p)})
    a, b = [19, 22, 16, 29, 24, 30, 25, 27, 21, 18, 26, 28], [20, 11, 17, 12, 15, 13, 14, 23, 31, 10]
    u = stats.mannwhitneyu(a, b, alternative="two-sided", method="asymptotic", use_continuity=True)
    rank.append({"test": "mannwhitney", "groups": [a, b], "statistic": float(min(u.statistic, len(a) * len(b) - u.statistic)),
                 "p": float(u.pvalue)})
    a, b = [1, 2, 2, 3, 4, 4, 4, 7], [3, 4, 5, 5, 6, 8, 8, 9, 9]
    u = stats.mannwhitneyu(a, b, alternative="two-sided", method="asymptotic", use_continuity=True)
    rank.append({"test": "mannwhitney", "groups": [a, b], "statistic": float(min(u.statistic, len(a) * len(b) - u.statistic)),
                 "p": float(u.pvalue)})

    doc = {"generator": "scipy " + __import__("scipy").__version__, "shapiro_wilk": cases,
           "normal_quantile": quantiles, "rank_tests": rank}
    OUT.write_text(json.dumps(doc, indent=2) + "\n")
    print("wrote", OUT)


if __name__ == "__main__":
    main()
