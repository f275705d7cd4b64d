# Copyright 2026 The vrstars Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values frozen into the C++ unit tests.

Uses numpy, pandas and scikit-learn only; nothing here imports the native
module. Run: python3 tests/oracles/derive_values.py
"""

import itertools
import math

import numpy as np
import pandas as pd
from scipy.special import expit
from sklearn.metrics import accuracy_score, f1_score


def mamae(pred, truth):
    pred, truth = np.asarray(pred), np.asarray(truth)
    per_class = [np.abs(pred[truth == c] - c).mean() for c in np.unique(truth)]
    return float(np.mean(per_class))


def co_stay_weights(stays, kinds):
    df = pd.DataFrame(stays, columns=["guest", "prop"])
    df["kind"] = df["prop"].map(kinds)
    vr_guests = df[df.kind == "vr"][["guest", "prop"]].drop_duplicates()
    hotel_stays = df[df.kind == "hotel"].groupby(["guest", "prop"]).size()
    hotel_stays = hotel_stays.rename("n").reset_index()
    joined = vr_guests.merge(hotel_stays, on="guest", suffixes=("_vr", "_h"))
    return joined.groupby(["prop_vr", "prop_h"])["n"].sum().to_dict()


# Trees as nested tuples: ("split", feature, threshold, cover, left, right)
# or ("leaf", value, cover).
def tree_value(node, x, subset):
    if node[0] == "leaf":
        return node[1]
    _, f, t, cover, left, right = node
    if f in subset:
        return tree_value(left if x[f] < t else right, x, subset)
    lc, rc = left[-1] if left[0] == "leaf" else left[3], (
        right[-1] if right[0] == "leaf" else right[3])
    return (lc * tree_value(left, x, subset) + rc * tree_value(right, x, subset)) / cover


def shapley(trees, x, n_features):
    phi = np.zeros(n_features)
    features = range(n_features)
    for j in features:
        rest = [f for f in features if f != j]
        for size in range(len(rest) + 1):
            w = math.factorial(size) * math.factorial(n_features - size - 1) / math.factorial(n_features)
            for s in itertools.combinations(rest, size):
                s = set(s)
                phi[j] += w * sum(tree_value(t, x, s | {j}) - tree_value(t, x, s) for t in trees)
    return phi


TREE_A = ("split", 0, 0.5, 10.0,
          ("split", 1, 0.5, 6.0, ("leaf", -1.0, 4.0), ("leaf", 0.5, 2.0)),
          ("leaf", 2.0, 4.0))
TREE_B = ("split", 2, 3.0, 10.0,
          ("leaf", -0.3, 7.0),
          ("split", 0, 0.5, 3.0, ("leaf", 0.1, 1.0), ("leaf", 0.9, 2.0)))


def main():
    print("mamae (1,2,3,4,5) vs all 3:", repr(mamae([3] * 5, [1, 2, 3, 4, 5])))
    print("mamae (3,3,4) vs (4,2,4):", repr(mamae([4, 2, 4], [3, 3, 4])))
    t, p = [1, 1, 2, 2], [1, 1, 1, 1]
    print("weighted f1 (1,1,2,2)/(1,1,1,1):",
          repr(f1_score(t, p, average="weighted", zero_division=0)))
    print("accuracy (1,1,2,2)/(1,1,1,1):", repr(accuracy_score(t, p)))
    print("increment margins -1 -> +1:", repr(float(expit(1.0) - expit(-1.0))))

    kinds = {"v1": "vr", "v2": "vr", "h1": "hotel", "h2": "hotel"}
    print("weights g1:v1,h1,h1 g2:v1,h1:",
          co_stay_weights([("g1", "v1"), ("g1", "h1"), ("g1", "h1"),
                           ("g2", "v1"), ("g2", "h1")], kinds))
    print("weights disjoint:",
          co_stay_weights([("g1", "v1"), ("g1", "h1"),
                           ("g2", "v2"), ("g2", "h2")], kinds))

    single = ("split", 0, 0.5, 4.0, ("leaf", -1.0, 3.0), ("leaf", 2.0, 1.0))
    print("single split phi (x0=1):", shapley([single], [1.0], 1).tolist())

    for x in ([1.0, 0.0, 4.0], [0.0, 1.0, 1.0], [0.0, 0.0, 5.0]):
        phi = shapley([TREE_A, TREE_B], x, 3)
        base = 0.2 + tree_value(TREE_A, x, set()) + tree_value(TREE_B, x, set())
        full = 0.2 + tree_value(TREE_A, x, {0, 1, 2}) + tree_value(TREE_B, x, {0, 1, 2})
        print("fixture x=%s phi=%s base=%r margin=%r" % (
            x, [float(v) for v in phi], base, full))


if __name__ == "__main__":
    main()
