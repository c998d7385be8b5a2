"""Writes the bundled water fixtures under data/water/.

triangle_pipes.csv  three pipes, the first with C=100, d=0.5 m, L=1000 m
grid_pipes.csv      5x4 junction grid with varied pipe parameters
grid_heads.csv      nodal heads from a linearized flow solve per demand pattern
"""
import csv
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parents[2] / "data" / "water"
HEADER = ["from", "to", "roughness", "diameter_m", "length_m"]


def write_pipes(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HEADER)
        w.writerows(rows)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    write_pipes(OUT / "triangle_pipes.csv", [
        ("J1", "J2", 100, 0.5, 1000),
        ("J2", "J3", 120, 0.3, 500),
        ("J3", "J1", 130, 0.4, 800),
    ])

    rng = np.random.default_rng(7)
    rows, cols = 5, 4
    name = lambda r, c: f"N{r}{c}"
    pipes = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                pipes.append((name(r, c), name(r, c + 1)))
            if r + 1 < rows:
                pipes.append((name(r, c), name(r + 1, c)))
    table = []
    for a, b in pipes:
        table.append((a, b, int(rng.choice([90, 100, 110, 130, 140])),
                      float(rng.choice([0.15, 0.2, 0.3, 0.4, 0.6])),
                      float(round(rng.uniform(200, 1500), 1))))
    write_pipes(OUT / "grid_pipes.csv", table)

    # Vertex order = first appearance in the pipe table.
    order = []
    for a, b, *_ in table:
        for v in (a, b):
            if v not in order:
                order.append(v)
    idx = {v: i for i, v in enumerate(order)}
    n = len(order)
    lap = np.zeros((n, n))
    for a, b, C, d, L in table:
        k = 10.667 * C ** -1.852 * d ** -4.871 * L
        w = 1.0 / k
        i, j = idx[a], idx[b]
        lap[i, i] += w
        lap[j, j] += w
        lap[i, j] -= w
        lap[j, i] -= w
    src = idx[name(0, 0)]
    keep = [i for i in range(n) if i != src]
    with open(OUT / "grid_heads.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        fh.write("# nodal heads (m); reservoir at N00 held at 100 m\n")
        w.writerow(order)
        for _ in range(12):
            demand = rng.uniform(0.0, 0.02, n)
            demand[src] = 0.0
            h = np.full(n, 100.0)
            sub = lap[np.ix_(keep, keep)]
            h[keep] = 100.0 + np.linalg.solve(sub, -demand[keep])
            w.writerow([f"{x:.6f}" for x in h])


if __name__ == "__main__":
    main()
