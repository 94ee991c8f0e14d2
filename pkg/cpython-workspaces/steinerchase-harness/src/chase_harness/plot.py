"""Static SVG plots of planar runs.

Body requests are drawn as outlines, the chaser's path as a polyline from the
origin, and the offline optimum's final position as a star. The SVG carries
no date and a fixed hash salt, so the file depends only on its inputs.
"""

import matplotlib
import numpy as np
from matplotlib.figure import Figure
from steinerchase.error import ValidationError
from steinerchase.workfn.request import Body, Instance

from .report import RunReport

_HASH_SALT = "steinerchase"


def plot_run(report: RunReport, instance: Instance, path: str) -> None:
    """Writes the trajectory plot of a two-dimensional run.

    Args:
        report: The run report.
        instance: The served requests, for the body outlines.
        path: Output SVG path.

    Raises:
        ValidationError: If the run is not two-dimensional.
    """
    if report.dim != 2 or instance.dim != 2:
        raise ValidationError(f"trajectory plots need d = 2, got {report.dim}", field="svg")

    fig = Figure(figsize=(6.0, 6.0))
    ax = fig.add_subplot()
    for request in instance.requests:
        if not isinstance(request, Body):
            continue
        outline = request.polytope.polygon()
        if len(outline) >= 3:
            outline = np.vstack([outline, outline[:1]])
        ax.plot(outline[:, 0], outline[:, 1], color="0.6", linewidth=0.8, marker="." if len(outline) == 1 else "")

    positions = report.positions()
    ax.plot(positions[:, 0], positions[:, 1], color="tab:blue", marker="o", markersize=3, linewidth=1.2, label="chaser")
    opt_x, opt_y = report.opt_position
    ax.plot([opt_x], [opt_y], color="tab:red", marker="*", markersize=12, linestyle="none", label="OPT endpoint")
    ax.set_aspect("equal", adjustable="datalim")
    ax.legend(loc="best")
    ax.set_title(f"ratio {report.ratio:.3f}")

    with matplotlib.rc_context({"svg.hashsalt": _HASH_SALT}):
        fig.savefig(path, format="svg", metadata={"Date": None})
