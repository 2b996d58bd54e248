#!/usr/bin/env python3
# Copyright 2026 The lapdp Authors
#
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
"""Plots lapdp CSV output.

The CLI emits curves; this script draws them. Typical recipes:

  # Profile-vs-Renyi comparison of two mechanisms (crossing curves):
  lapdp profile fixtures/rr3.json --eps-min -6 --eps-max 6 --steps 241 --output rr.csv
  lapdp profile fixtures/gauss45.json --eps-min -6 --eps-max 6 --steps 241 --output gauss.csv
  lapdp convert fixtures/rr3.json --to renyi --eps-min 1.1 --eps-max 10 --steps 90 --output rr_renyi.csv
  lapdp convert fixtures/gauss45.json --to renyi --eps-min 1.1 --eps-max 10 --steps 90 --output gauss_renyi.csv
  scripts/plot_curves.py compare rr.csv gauss.csv rr_renyi.csv gauss_renyi.csv -o crossing.png

  # Calibration curve eps(k) under a delta budget:
  lapdp calibrate fixtures/fig3.json --delta-budget 1e-6 --k-range 1..100 --output cal.csv
  scripts/plot_curves.py calibrate cal.csv -o calibration.png
"""

import argparse
import csv
import math
import sys


def read_csv(path):
    rows = []
    header = None
    with open(path, newline="") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append(line.split(","))
    return header, rows


def load_xy(path):
    header, rows = read_csv(path)
    xs, ys = [], []
    for row in rows:
        x = float(row[0])
        y = math.inf if row[1] == "inf" else float(row[1])
        xs.append(x)
        ys.append(y)
    return header, xs, ys


def cmd_compare(args):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(11, 4))
    for path in (args.renyi_a, args.renyi_b):
        _, q, rho = load_xy(path)
        axes[0].plot(q, rho, label=path)
    axes[0].set_xlabel("q")
    axes[0].set_ylabel("rho(q)")
    axes[0].set_title("Renyi curves")
    axes[0].legend(fontsize=7)

    for path in (args.profile_a, args.profile_b):
        _, eps, delta = load_xy(path)
        axes[1].plot(eps, delta, label=path)
    axes[1].set_xlabel("epsilon")
    axes[1].set_ylabel("delta(epsilon)")
    axes[1].set_title("Privacy profiles")
    axes[1].legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


def cmd_profile(args):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for path in args.csv:
        _, eps, delta = load_xy(path)
        ax.plot(eps, delta, label=path)
    if args.log:
        ax.set_yscale("log")
    ax.set_xlabel("epsilon")
    ax.set_ylabel("delta(epsilon)")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


def cmd_calibrate(args):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for path in args.csv:
        _, k, eps = load_xy(path)
        finite = [(a, b) for a, b in zip(k, eps) if math.isfinite(b)]
        ax.plot([a for a, _ in finite], [b for _, b in finite], label=path)
        missing = [a for a, b in zip(k, eps) if not math.isfinite(b)]
        if missing:
            print(f"{path}: budget unattainable at k = {missing}")
    ax.set_xlabel("k")
    ax.set_ylabel("epsilon(k)")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    sub = parser.add_subparsers(dest="mode", required=True)

    p = sub.add_parser("compare", help="profiles + Renyi curves side by side")
    p.add_argument("profile_a")
    p.add_argument("profile_b")
    p.add_argument("renyi_a")
    p.add_argument("renyi_b")
    p.add_argument("-o", "--output", default="compare.png")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("profile", help="overlay delta(eps) curves")
    p.add_argument("csv", nargs="+")
    p.add_argument("--log", action="store_true")
    p.add_argument("-o", "--output", default="profiles.png")
    p.set_defaults(fn=cmd_profile)

    p = sub.add_parser("calibrate", help="eps(k) calibration curves")
    p.add_argument("csv", nargs="+")
    p.add_argument("-o", "--output", default="calibration.png")
    p.set_defaults(fn=cmd_calibrate)

    args = parser.parse_args()
    args.fn(args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
