#!/usr/bin/env python3
# Copyright 2026 The Grasp Forge Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the miniature Cornell and Jacquard trees used by the loader tests."""
import math
import os

import numpy as np
from PIL import Image

HERE = os.path.dirname(os.path.abspath(__file__))
W, H = 160, 120


def rect_corners(cx, cy, theta, width, height):
    # p0 -> p1 along the closing direction, p1 -> p2 across it.
    a = np.array([math.cos(theta), math.sin(theta)])
    b = np.array([-math.sin(theta), math.cos(theta)])
    c = np.array([cx, cy])
    return [c - a * width / 2 - b * height / 2, c + a * width / 2 - b * height / 2,
            c + a * width / 2 + b * height / 2, c - a * width / 2 + b * height / 2]


def scene(cx, cy, angle, length, thickness):
    """Bar-shaped object on a table: RGB image, depth in meters, object mask."""
    ys, xs = np.mgrid[0:H, 0:W]
    u = (xs - cx) * math.cos(angle) + (ys - cy) * math.sin(angle)
    v = -(xs - cx) * math.sin(angle) + (ys - cy) * math.cos(angle)
    mask = (np.abs(u) <= length / 2) & (np.abs(v) <= thickness / 2)
    rgb = np.zeros((H, W, 3), np.uint8)
    rgb[:] = (170, 160, 140)
    rgb[mask] = (40, 70, 200)
    depth = np.full((H, W), 0.62, np.float32)
    depth[mask] = 0.58
    return rgb, depth


def bar_grasps(cx, cy, angle, length, thickness, count):
    # Fingers close across the bar: closing direction is the bar normal.
    theta = angle + math.pi / 2
    rects = []
    for k in range(count):
        s = (k - (count - 1) / 2) * length / (count + 1)
        px, py = cx + s * math.cos(angle), cy + s * math.sin(angle)
        rects.append(rect_corners(px, py, theta, thickness + 10, (thickness + 10) / 2))
    return rects


def write_rects(path, rects):
    with open(path, "w") as f:
        for r in rects:
            for p in r:
                f.write(f"{p[0]:.2f} {p[1]:.2f}\n")


def write_pcd(path, depth, hole):
    lines = []
    for y in range(H):
        for x in range(W):
            if hole[y, x]:
                continue
            lines.append(f"0 0 {depth[y, x] * 1000:.1f} 0 {y * W + x}")
    header = ["# .PCD v.7 - Point Cloud Data file format", "VERSION .7", "FIELDS x y z rgb index",
              "SIZE 4 4 4 4 4", "TYPE F F F F U", "COUNT 1 1 1 1 1", f"WIDTH {len(lines)}", "HEIGHT 1",
              "VIEWPOINT 0 0 0 1 0 0 0", f"POINTS {len(lines)}", "DATA ascii"]
    with open(path, "w") as f:
        f.write("\n".join(header + lines) + "\n")


def cornell():
    root = os.path.join(HERE, "cornell_mini", "01")
    os.makedirs(root, exist_ok=True)
    specs = [(100, 80, 60, 0.0, 60, 12, 3), (101, 76, 62, 0.6, 56, 12, 4), (102, 84, 58, -1.2, 50, 14, 3)]
    with open(os.path.join(HERE, "cornell_mini", "z.txt"), "w") as f:
        f.write("100 7 stapler\n101 7 stapler\n102 12 marker\n")
    for number, cx, cy, angle, length, thick, count in specs:
        rgb, depth = scene(cx, cy, angle, length, thick)
        stem = os.path.join(root, f"pcd{number:04d}")
        Image.fromarray(rgb).save(stem + "r.png")
        if number == 101:
            Image.fromarray(depth, mode="F").save(stem + "d.tiff")
        else:
            hole = np.zeros((H, W), bool)
            hole[10:16, 20:30] = True
            write_pcd(stem + ".txt", depth, hole)
        write_rects(stem + "cpos.txt", bar_grasps(cx, cy, angle, length, thick, count))
        # Negative: closing along the bar.
        write_rects(stem + "cneg.txt", [rect_corners(cx, cy, angle, length + 10, 12)])


def jacquard():
    root = os.path.join(HERE, "jacquard_mini", "1a9e")
    os.makedirs(root, exist_ok=True)
    rgb, depth = scene(64, 64, math.pi / 2, 60, 12)
    stem = os.path.join(root, "0_1a9e")
    Image.fromarray(rgb[:, 16:144] if rgb.shape[1] > 128 else rgb).save(stem + "_RGB.png")
    Image.fromarray(np.ascontiguousarray(depth[:, 16:144]), mode="F").save(stem + "_perfect_depth.tiff")
    # x;y;theta_deg;opening;jaw_size
    with open(stem + "_grasps.txt", "w") as f:
        f.write("48.0;44.0;0.0;22.0;11.0\n48.0;64.0;0.0;22.0;11.0\n48.0;84.0;90.0;22.0;11.0\n")


if __name__ == "__main__":
    cornell()
    jacquard()
