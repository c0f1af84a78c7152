import csv
import os.path
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from coneseries.kernel.rational import as_rational_vector, format_rational
from coneseries.standalone.errors import UsageError
from coneseries.support.predicates import materialize, tau_classify
from coneseries.support.spec import SupportSpec


def generate_points_and_lines(s: SupportSpec, omega: Sequence, window: int) -> Tuple[list, list]:
    """
    Generate the points and boundary lines of a support plot.

    Args:
        s (SupportSpec): support
        omega (Sequence): strictly positive weight vector
        window (int): half width of the plotted box

    Returns:
        Tuple[list, list]: materialized exponents and the boundary levels lambda0 of u.omega = lambda0
    """
    omega = as_rational_vector(omega)
    point_lst = materialize(s, window)
    tau = tau_classify(s, omega)
    line_lst = [tau.boundary] if tau.kind == "Boundary" else []
    return point_lst, line_lst


def write_csv(point_lst: List[tuple], filename: str, omega: Optional[Sequence] = None):
    """
    Store exponents as exact rationals, one point per row, with the omega-value as last column when omega is given.

    Args:
        point_lst (list): exponents
        filename (str): name of the CSV file
        omega (Sequence, optional): weight vector
    """
    dim = len(point_lst[0]) if point_lst else (len(omega) if omega is not None else 0)
    header = ["u" + str(i + 1) for i in range(dim)]
    if omega is not None:
        header.append("omega_value")
    with open(filename, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for p in point_lst:
            row = [format_rational(x) for x in p]
            if omega is not None:
                row.append(format_rational(sum((Fraction(w) * x for w, x in zip(omega, p)), Fraction(0))))
            writer.writerow(row)


def draw(point_lst: List[tuple], line_lst: List[Fraction], omega: Sequence, window: int, filename: str):
    """
    Draw a two dimensional support as a scatter plot, with the lines u.omega = lambda0. Coordinates are rendered as
    floats and are not authoritative.

    Args:
        point_lst (list): exponents
        line_lst (list): boundary levels
        omega (Sequence): weight vector
        window (int): half width of the plotted box
        filename (str): name of the image file, the extension selects the format
    """
    if len(omega) != 2:
        raise UsageError("Support plots are two dimensional.")
    import matplotlib  # noqa

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt  # noqa

    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter([float(p[0]) for p in point_lst], [float(p[1]) for p in point_lst], s=8)
    w1, w2 = (float(w) for w in omega)
    for level in line_lst:
        xs = [-window, window]
        ax.plot(xs, [(float(level) - w1 * x) / w2 for x in xs], color="tab:red", linewidth=1)
    ax.set_xlim(-window - 0.5, window + 0.5)
    ax.set_ylim(-window - 0.5, window + 0.5)
    ax.set_xlabel("u1")
    ax.set_ylabel("u2")
    ax.set_aspect("equal")
    fig.savefig(filename, format=os.path.splitext(filename)[-1][1:] or "svg")
    plt.close(fig)
