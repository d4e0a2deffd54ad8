#!/usr/bin/env python3
# Copyright 2026 The Surrogate Compiler Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Trains classifier_4x3.json and picks adversarial_cases.json.

A 4-6-3 ReLU network is fit to three Gaussian clusters in [0, 1]^4. Each
adversarial case is scored by enumerating all 2^6 activation patterns with
scipy's LP solver; only cases whose margin is at least 0.05 away from zero
are kept, half of them SAT and half UNSAT.
"""

import itertools
import json

import numpy as np
from scipy.optimize import linprog

SEED = 20261017
HIDDEN = 6
MIN_ABS_MARGIN = 0.05


def train(rng):
    centers = np.array([[0.2, 0.3, 0.7, 0.5],
                        [0.7, 0.2, 0.3, 0.6],
                        [0.5, 0.8, 0.5, 0.2]])
    xs, ys = [], []
    for label, c in enumerate(centers):
        pts = np.clip(c + 0.12 * rng.standard_normal((200, 4)), 0.0, 1.0)
        xs.append(pts)
        ys.append(np.full(200, label))
    x = np.vstack(xs)
    y = np.concatenate(ys)
    w1 = 0.5 * rng.standard_normal((HIDDEN, 4))
    b1 = np.zeros(HIDDEN)
    w2 = 0.5 * rng.standard_normal((3, HIDDEN))
    b2 = np.zeros(3)
    onehot = np.eye(3)[y]
    lr = 0.5
    for _ in range(3000):
        h_pre = x @ w1.T + b1
        h = np.maximum(h_pre, 0.0)
        logits = h @ w2.T + b2
        logits -= logits.max(axis=1, keepdims=True)
        p = np.exp(logits)
        p /= p.sum(axis=1, keepdims=True)
        g = (p - onehot) / len(x)
        gw2 = g.T @ h
        gb2 = g.sum(axis=0)
        gh = g @ w2 * (h_pre > 0)
        gw1 = gh.T @ x
        gb1 = gh.sum(axis=0)
        w1 -= lr * gw1
        b1 -= lr * gb1
        w2 -= lr * gw2
        b2 -= lr * gb2
    r = lambda a: np.round(a, 4)
    w1, b1, w2, b2 = r(w1), r(b1), r(w2), r(b2)
    pred = np.argmax(np.maximum(x @ w1.T + b1, 0) @ w2.T + b2, axis=1)
    print("train accuracy", (pred == y).mean())
    return w1, b1, w2, b2, x, y


def forward(w1, b1, w2, b2, x):
    return np.maximum(w1 @ x + b1, 0.0) @ w2.T + b2


def oracle_margin(w1, b1, w2, b2, x0, true, target, radius):
    lo = np.clip(x0 - radius, 0.0, 1.0)
    hi = np.clip(x0 + radius, 0.0, 1.0)
    c = w2[target] - w2[true]
    best = -np.inf
    for pattern in itertools.product([0, 1], repeat=HIDDEN):
        a_ub, b_ub = [], []
        obj = np.zeros(4)
        const = b2[target] - b2[true]
        for i, active in enumerate(pattern):
            if active:
                a_ub.append(-w1[i])
                b_ub.append(b1[i])
                obj += c[i] * w1[i]
                const += c[i] * b1[i]
            else:
                a_ub.append(w1[i])
                b_ub.append(-b1[i])
        res = linprog(-obj, A_ub=np.array(a_ub), b_ub=np.array(b_ub),
                      bounds=list(zip(lo, hi)), method="highs")
        if res.status == 0:
            best = max(best, -res.fun + const)
    return best


def main():
    rng = np.random.default_rng(SEED)
    w1, b1, w2, b2, x, y = train(rng)
    net = {
        "format_version": 1,
        "input_size": 4,
        "input_bounds": [[0.0, 1.0]] * 4,
        "scaling": {
            "input_offset": [0.0] * 4,
            "input_factor": [1.0] * 4,
            "output_offset": [0.0] * 3,
            "output_factor": [1.0] * 3,
        },
        "layers": [
            {"type": "dense", "weights": w1.tolist(), "bias": b1.tolist(),
             "activation": "relu"},
            {"type": "dense", "weights": w2.tolist(), "bias": b2.tolist(),
             "activation": "linear"},
        ],
    }
    with open("classifier_4x3.json", "w") as f:
        json.dump(net, f, indent=2)
        f.write("\n")

    radii = [0.02, 0.05, 0.1, 0.15, 0.2, 0.3]
    sat, unsat = [], []
    order = rng.permutation(len(x))
    for idx in order:
        if len(sat) >= 10 and len(unsat) >= 10:
            break
        x0 = np.round(x[idx], 3)
        scores = forward(w1, b1, w2, b2, x0)
        true = int(np.argmax(scores))
        target = int(rng.choice([k for k in range(3) if k != true]))
        radius = float(rng.choice(radii))
        m = oracle_margin(w1, b1, w2, b2, x0, true, target, radius)
        if abs(m) < MIN_ABS_MARGIN:
            continue
        case = {"x0": x0.tolist(), "true": true, "target": target,
                "radius": radius, "oracle_margin": round(float(m), 9)}
        (sat if m > 0 else unsat).append(case)
    cases = sat[:10] + unsat[:10]
    with open("adversarial_cases.json", "w") as f:
        json.dump({"model": "classifier_4x3.json", "cases": cases}, f, indent=2)
        f.write("\n")
    print("cases", len(cases), "sat", len(sat[:10]), "unsat", len(unsat[:10]))


if __name__ == "__main__":
    main()
