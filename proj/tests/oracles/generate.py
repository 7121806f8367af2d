"""Reference values for the C++ tests, computed independently with numpy/scipy.

Run: python3 tests/oracles/generate.py > tests/oracles/oracles.json
"""
import itertools
import json
import math

import numpy as np
from scipy import stats


def paired(a, b):
    r = stats.ttest_rel(a, b)
    return {"a": a, "b": b, "t": float(r.statistic), "p": float(r.pvalue)}


def rx_dbm(tx_dbm, d_m):
    d_km = max(d_m, 35.0) / 1000.0
    return tx_dbm - (128.1 + 37.6 * math.log10(d_km))


def stationary(p):
    w, v = np.linalg.eig(np.array(p).T)
    x = np.real(v[:, np.argmin(abs(w - 1))])
    return list(x / x.sum())


def ucb_scores(q, n, t, c):
    return [qi + c * math.sqrt(math.log(t) / ni) for qi, ni in zip(q, n)]


def decile(hist, x):
    c = sum(1 for h in hist if h <= x)
    return min(10, max(1, math.ceil(10 * c / len(hist))))


CAP = {(0, 0): (0.4, 1.0), (0, 1): (1.7, 1.0), (1, 0): (4.5, 1.0), (1, 1): (3.8, 1.0)}
PRICES = (1.0, 3.0)


def util_batch(t, p):
    return t / p


def util_inter(t, p, thr=1.0, floor=0.01):
    return thr / p if t >= thr else floor


def testbed():
    means = [[np.mean([CAP[a][d] for a in CAP if a[d] == n]) for n in (0, 1)] for d in (0, 1)]
    utils = [[util_batch(means[0][n], PRICES[n]) for n in (0, 1)],
             [util_inter(means[1][n], PRICES[n]) for n in (0, 1)]]
    best, value = None, -1
    for a in sorted(CAP):
        v = util_batch(CAP[a][0], PRICES[a[0]]) + util_inter(CAP[a][1], PRICES[a[1]])
        if v > value:
            best, value = a, v
    return {"mean_throughput": means, "utility": utils,
            "optimal": [n + 1 for n in best], "optimal_utility": value}


def exact_success(s):
    """Probability that both DUTs pick the optimum after s uniform training
    steps, full-mean estimates, untried networks scored 0, ties split evenly."""
    total = 0.0
    for seq in itertools.product(sorted(CAP), repeat=s):
        h = [[[], []], [[], []]]
        for a in seq:
            for d in (0, 1):
                h[d][a[d]].append(CAP[a][d])
        scores = []
        for d, util in ((0, util_batch), (1, util_inter)):
            scores.append([util(np.mean(h[d][n]), PRICES[n]) if h[d][n] else 0.0 for n in (0, 1)])
        prob = 1.0
        for d, want in ((0, 1), (1, 0)):
            top = max(scores[d])
            winners = [n for n in (0, 1) if scores[d][n] == top]
            prob *= (1.0 / len(winners)) if want in winners else 0.0
        total += prob
    return total / 4 ** s


def main():
    out = {
        "ttest": [
            paired([12.1, 14.3, 11.8, 15.2, 13.7, 12.9, 14.8, 13.1, 12.4, 14.0],
                   [11.4, 13.9, 12.0, 14.1, 12.8, 12.5, 13.9, 12.2, 12.6, 13.1]),
            paired([1, 2, 3, 4, 5.5], [1.2, 1.9, 2.0, 3.1, 4.0]),
        ],
        "rx_dbm": {"tx_dbm": 30.0, "d500": rx_dbm(30, 500), "d35": rx_dbm(30, 35),
                   "d10": rx_dbm(30, 10)},
        "single_bs_sinr_500m": 10 ** ((rx_dbm(30, 500) - (-101.0)) / 10),
        "throughput_sinr3_10mhz": 10e6 * min(math.log2(1 + 3), 6) / 1e6,
        "decile": {"history": list(range(1, 101)),
                   "cases": [[x, decile(list(range(1, 101)), x)] for x in (55, 1, 100, 0, 100.5, 30)]},
        "unpopular": {
            "p_pop": [[0.2, 0.8], [0.6, 0.4]], "eps": [0.5, 0.5],
            "p_unp": (np.eye(2) - np.diag([0.5, 0.5]) + np.diag([0.5, 0.5]) @ np.array([[0.2, 0.8], [0.6, 0.4]])).tolist()},
        "stationary": [
            {"p": [[0.2, 0.8], [0.6, 0.4]], "pi": stationary([[0.2, 0.8], [0.6, 0.4]])},
            {"p": [[.5, .3, .2], [.1, .6, .3], [.4, .4, .2]],
             "pi": stationary([[.5, .3, .2], [.1, .6, .3], [.4, .4, .2]])},
            {"p": [[0.2, 0.8], [0.2, 0.8]], "pi": stationary([[0.2, 0.8], [0.2, 0.8]])},
        ],
        "ucb": {"q": [1.0, 0.9], "n": [10, 1], "t": 11, "c": 1.0,
                "scores": ucb_scores([1.0, 0.9], [10, 1], 11, 1.0)},
        "theoretical_success": {str(s): 1 - 0.5 ** (0.5 * s) for s in range(0, 9)},
        "exact_success_full_mean": {str(s): exact_success(s) for s in range(0, 9)},
        "testbed": testbed(),
        "q_fixed_point": 1 / (1 - 0.7),
        "gradient_step": {"h": [0.05, -0.05]},
        "softmax_log3_log1": [0.75, 0.25],
        "hex": {"radius": 1666.0, "isd": math.sqrt(3) * 1666.0,
                "offset_shift": [0.6 * 1666.0, 0.4 * 1666.0]},
    }
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
