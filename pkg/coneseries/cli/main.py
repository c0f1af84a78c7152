"""
Command line interface. Every command prints one canonical JSON document on standard output; errors are printed as
{"error": code, "detail": message} on standard error with exit status 1 for usage errors and 2 for domain errors.
"""

import argparse
import logging
import sys
from typing import Callable, List, Optional

from coneseries.base.executor import BatchExecutor
from coneseries.cli.documents import (
    load_document,
    read_bivariate,
    read_cone,
    read_ode,
    read_order,
    read_poly_over_series,
    read_ray_series,
    read_recurrence,
    read_series,
    read_support,
    write_document,
    write_document_file,
)
from coneseries.dfinite.ode import algebraic_to_ode
from coneseries.dfinite.recurrence import gap_constant, ode_to_recurrence
from coneseries.geometry.cone import cone_join, relint_dual_contains
from coneseries.kernel.rational import as_lattice_vector, format_rational, parse_rational, parse_vector
from coneseries.orders.order import compare, is_positive, refine_over_cone
from coneseries.roots.hensel import hensel_lift
from coneseries.roots.newton import newton_polygon_initials
from coneseries.roots.ray import certified_support
from coneseries.series.laurent import combine, initial_part, nu_omega, ray_part
from coneseries.standalone.config import get_settings
from coneseries.standalone.errors import ConeSeriesError, UsageError
from coneseries.standalone.plot import draw, generate_points_and_lines, write_csv
from coneseries.support.predicates import family_shift, in_field_family, min_support, nu_order, slab_count, tau_classify
from coneseries.transcendence.diophantine import dioph_a1_scan
from coneseries.transcendence.gap import gap_certificate
from coneseries.transcendence.liouville import liouville_certificate
from coneseries.transcendence.replay import replay_certificate

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _vector(text: str):
    return parse_vector(text)


def _rationals(values) -> List[str]:
    return [format_rational(x) for x in values]


def cmd_cone_dual(args: argparse.Namespace) -> dict:
    return read_cone(args.input).dual.to_json()


def cmd_cone_check(args: argparse.Namespace) -> dict:
    c = read_cone(args.input)
    return {
        "strongly_convex": c.strongly_convex,
        "dimension": c.dimension,
        "lineality": [list(b) for b in c.lineality_basis],
        "generators": [list(g) for g in c.generators],
    }


def cmd_cone_relint(args: argparse.Namespace) -> dict:
    return {"relint_dual_contains": relint_dual_contains(read_cone(args.input), args.omega)}


def cmd_cone_join(args: argparse.Namespace) -> dict:
    cones = [read_cone(source) for source in args.input]
    result = cones[0]
    for c in cones[1:]:
        result = cone_join(result, c)
    return result.to_json()


def cmd_order_compare(args: argparse.Namespace) -> dict:
    return {"comparison": compare(read_order(args.order), args.alpha, args.beta).name}


def cmd_order_positive(args: argparse.Namespace) -> dict:
    o = read_order(args.order)
    return {"positive": is_positive(o), "total": o.total}


def cmd_order_refine(args: argparse.Namespace) -> dict:
    return refine_over_cone(args.omega, read_cone(args.cone)).to_json()


def cmd_support_slab(args: argparse.Namespace) -> dict:
    return slab_count(read_support(args.support), args.omega, args.level).to_json()


def cmd_support_tau(args: argparse.Namespace) -> dict:
    return tau_classify(read_support(args.support), args.omega).to_json()


def cmd_support_family(args: argparse.Namespace) -> dict:
    s, o = read_support(args.support), read_order(args.order)
    if not in_field_family(s, o):
        return {"in_field_family": False}
    gamma, sigma = family_shift(s, o)
    return {"in_field_family": True, "gamma": _rationals(gamma), "sigma": sigma.to_json()}


def cmd_support_min(args: argparse.Namespace) -> dict:
    s, o = read_support(args.support), read_order(args.order)
    return {"min": _rationals(min_support(s, o)), "nu": _rationals(nu_order(s, o))}


def cmd_series_nu(args: argparse.Namespace) -> dict:
    return {"nu": format_rational(nu_omega(read_series(args.series), args.omega))}


def cmd_series_init(args: argparse.Namespace) -> dict:
    return initial_part(read_series(args.series), args.omega).to_json()


def cmd_series_ray(args: argparse.Namespace) -> dict:
    part = ray_part(read_series(args.series), as_lattice_vector(args.gamma), as_lattice_vector(args.v))
    return {"on_ray": part.on_ray, "coefficients": _rationals(part.prefix(args.count))}


def cmd_series_combine(args: argparse.Namespace) -> dict:
    if len(args.series) != 2:
        raise UsageError("series combine takes exactly two --series inputs.")
    f, g = (read_series(source) for source in args.series)
    return combine(f, g, args.op, args.omega, args.horizon).to_json()


def cmd_roots_initials(args: argparse.Namespace) -> list:
    return [r.to_json() for r in newton_polygon_initials(read_poly_over_series(args.poly), args.omega)]


def cmd_roots_lift(args: argparse.Namespace) -> dict:
    p = read_poly_over_series(args.poly)
    if args.alpha is not None:
        if args.c is None:
            raise UsageError("--alpha needs --c.")
        initial = (args.alpha, args.c)
    else:
        initials = newton_polygon_initials(p, args.omega)
        if not 0 <= args.root < len(initials):
            raise UsageError("There are " + str(len(initials)) + " initial roots, --root " + str(args.root) + ".")
        initial = initials[args.root]
    order = read_order(args.order) if args.order is not None else None
    lift = hensel_lift(p, initial, args.omega, args.horizon, order)
    document = lift.to_json()
    if args.certify:
        document["certified_support"] = certified_support(lift, p).to_json()
    return document


def _ode_from(args: argparse.Namespace):
    if args.q is not None:
        return algebraic_to_ode(read_bivariate(args.q), args.y0)
    if getattr(args, "ode", None) is not None:
        return read_ode(args.ode)
    raise UsageError("Give the minimal polynomial with --q or the equation with --ode.")


def cmd_dfinite_ode(args: argparse.Namespace) -> list:
    return algebraic_to_ode(read_bivariate(args.q), args.y0).to_json()


def cmd_dfinite_rec(args: argparse.Namespace) -> dict:
    return ode_to_recurrence(_ode_from(args)).to_json()


def cmd_dfinite_gapconst(args: argparse.Namespace) -> dict:
    if args.rec is not None:
        rec = read_recurrence(args.rec)
    else:
        rec = ode_to_recurrence(_ode_from(args))
    return gap_constant(rec, args.omega, as_lattice_vector(args.v), cauchy_bound=args.cauchy).to_json()


def _run_batch(fn: Callable, inputs: list, kwargs: dict, settings: dict):
    with BatchExecutor(max_workers=settings["max_workers"], cache_directory=settings["cache_directory"]) as exe:
        futures = [exe.submit(fn, item, **kwargs) for item in inputs]
        results = [f.result().to_json() for f in futures]
    return results[0] if len(results) == 1 else results


def cmd_check_gap(args: argparse.Namespace, settings: dict):
    supports = [read_support(source) for source in args.support]
    return _run_batch(gap_certificate, supports, {"omega": args.omega, "horizon": args.horizon}, settings)


def cmd_check_liouville(args: argparse.Namespace, settings: dict):
    rays = [read_ray_series(source) for source in args.ray]
    kwargs = {"omega": args.omega, "a_max": args.a_max, "n_max": args.n_max, "ramification": args.ramification}
    return _run_batch(liouville_certificate, rays, kwargs, settings)


def cmd_check_dioph(args: argparse.Namespace, settings: dict):
    rays = [read_ray_series(source) for source in args.ray]
    kwargs = {"omega": args.omega, "beta_box": args.box, "b_guess": args.b_guess, "max_workers": settings["max_workers"]}
    return _run_batch(dioph_a1_scan, rays, kwargs, settings)


def cmd_plot_support(args: argparse.Namespace) -> dict:
    s = read_support(args.support)
    point_lst, line_lst = generate_points_and_lines(s, args.omega, args.window)
    csv_name = args.out + ".csv"
    write_csv(point_lst, csv_name, args.omega)
    svg_name = None
    if s.dim == 2:
        try:
            draw(point_lst, line_lst, args.omega, args.window, args.out + ".svg")
            svg_name = args.out + ".svg"
        except ImportError:
            logger.warning("matplotlib is not installed, only the CSV file was written")
    return {"csv": csv_name, "svg": svg_name, "points": len(point_lst), "boundary": _rationals(line_lst)}


def cmd_certificate_replay(args: argparse.Namespace) -> dict:
    return {"identical": replay_certificate(load_document(args.input))}


def _add_omega(parser: argparse.ArgumentParser, required: bool = True):
    parser.add_argument("--omega", type=_vector, required=required, help="weight vector, comma separated rationals")


def get_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="coneseries", description="Exact analysis of Laurent series supported on cones.")
    parser.add_argument("--log-level", default=None, help="logging level on standard error")
    parser.add_argument("--workers", type=int, default=None, help="worker threads for batch checks")
    parser.add_argument("--cache-directory", default=None, help="directory of the HDF5 result cache")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=ArgumentParser)

    cone = groups.add_parser("cone").add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    p = cone.add_parser("dual")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_cone_dual)
    p = cone.add_parser("check")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_cone_check)
    p = cone.add_parser("relint")
    p.add_argument("--in", dest="input", required=True)
    _add_omega(p)
    p.set_defaults(func=cmd_cone_relint)
    p = cone.add_parser("join")
    p.add_argument("--in", dest="input", action="append", required=True)
    p.set_defaults(func=cmd_cone_join)

    order = groups.add_parser("order").add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    p = order.add_parser("compare")
    p.add_argument("--order", required=True)
    p.add_argument("--alpha", type=_vector, required=True)
    p.add_argument("--beta", type=_vector, required=True)
    p.set_defaults(func=cmd_order_compare)
    p = order.add_parser("positive")
    p.add_argument("--order", required=True)
    p.set_defaults(func=cmd_order_positive)
    p = order.add_parser("refine")
    _add_omega(p)
    p.add_argument("--cone", required=True)
    p.set_defaults(func=cmd_order_refine)

    support = groups.add_parser("support").add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    p = support.add_parser("slab")
    p.add_argument("--support", required=True)
    _add_omega(p)
    p.add_argument("--level", type=parse_rational, required=True)
    p.set_defaults(func=cmd_support_slab)
    p = support.add_parser("tau")
    p.add_argument("--support", required=True)
    _add_omega(p)
    p.set_defaults(func=cmd_support_tau)
    for action, func in (("family", cmd_support_family), ("min", cmd_support_min)):
        p = support.add_parser(action)
        p.add_argument("--support", required=True)
        p.add_argument("--order", required=True)
        p.set_defaults(func=func)

    series = groups.add_parser("series").add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    for action, func in (("nu", cmd_series_nu), ("init", cmd_series_init)):
        p = series.add_parser(action)
        p.add_argument("--series", required=True)
        _add_omega(p)
        p.set_defaults(func=func)
    p = series.add_parser("ray")
    p.add_argument("--series", required=True)
    p.add_argument("--gamma", type=_vector, required=True)
    p.add_argument("--v", type=_vector, required=True)
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(func=cmd_series_ray)
    p = series.add_parser("combine")
    p.add_argument("--series", action="append", required=True)
    p.add_argument("--op", choices=("add", "multiply"), required=True)
    _add_omega(p)
    p.add_argument("--horizon", type=parse_rational, required=True)
    p.set_defaults(func=cmd_series_combine)

    roots = groups.add_parser("roots").add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    p = roots.add_parser("initials")
    p.add_argument("--poly", required=True)
    _add_omega(p)
    p.set_defaults(func=cmd_roots_initials)
    p = roots.add_parser("lift")
    p.add_argument("--poly", required=True)
    _add_omega(p)
    p.add_argument("--horizon", type=parse_rational, required=True)
    p.add_argument("--root", type=int, default=0, help="index of the initial root from roots initials")
    p.add_argument("--alpha", type=_vector, default=None)
    p.add_argument("--c", type=parse_rational, default=None)
    p.add_argument("--order", default=None)
    p.add_argument("--certify", action="store_true", help="also report the certified support")
    p.set_defaults(func=cmd_roots_lift)

    dfinite = groups.add_parser("dfinite").add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    p = dfinite.add_parser("ode")
    p.add_argument("--q", required=True)
    p.add_argument("--y0", type=parse_rational, default=None)
    p.set_defaults(func=cmd_dfinite_ode)
    p = dfinite.add_parser("rec")
    p.add_argument("--q", default=None)
    p.add_argument("--y0", type=parse_rational, default=None)
    p.add_argument("--ode", default=None)
    p.set_defaults(func=cmd_dfinite_rec)
    p = dfinite.add_parser("gapconst")
    p.add_argument("--rec", default=None)
    p.add_argument("--q", default=None)
    p.add_argument("--y0", type=parse_rational, default=None)
    p.add_argument("--ode", default=None)
    _add_omega(p)
    p.add_argument("--v", type=_vector, required=True)
    p.add_argument("--cauchy", action="store_true")
    p.set_defaults(func=cmd_dfinite_gapconst)

    check = groups.add_parser("check").add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    p = check.add_parser("gap")
    p.add_argument("--support", nargs="+", required=True)
    _add_omega(p)
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(batch=cmd_check_gap)
    p = check.add_parser("liouville")
    p.add_argument("--ray", nargs="+", required=True)
    _add_omega(p)
    p.add_argument("--a-max", type=parse_rational, default=10)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--ramification", type=int, default=1)
    p.set_defaults(batch=cmd_check_liouville)
    p = check.add_parser("dioph")
    p.add_argument("--ray", nargs="+", required=True)
    _add_omega(p, required=False)
    p.add_argument("--box", type=int, default=20)
    p.add_argument("--b-guess", type=parse_rational, default=None)
    p.set_defaults(batch=cmd_check_dioph)
    for name in ("gap", "liouville", "dioph"):
        check.choices[name].add_argument("--out", default=None, help="write the certificates to this file")

    plot = groups.add_parser("plot").add_subparsers(dest="action", required=True, parser_class=ArgumentParser)
    p = plot.add_parser("support")
    p.add_argument("--support", required=True)
    _add_omega(p)
    p.add_argument("--window", type=int, default=10)
    p.add_argument("--out", required=True, help="file name prefix of the CSV and SVG files")
    p.set_defaults(func=cmd_plot_support)

    certificate = groups.add_parser("certificate").add_subparsers(
        dest="action", required=True, parser_class=ArgumentParser
    )
    p = certificate.add_parser("replay")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_certificate_replay)
    return parser


def _report(error: ConeSeriesError) -> None:
    write_document({"error": error.code, "detail": str(error)}, sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    Args:
        argv (list, optional): command line arguments without the program name, defaults to sys.argv[1:]

    Returns:
        int: exit status, 0 on success, 1 on usage errors, 2 on domain errors
    """
    try:
        args = get_parser().parse_args(argv)
        settings = get_settings(
            log_level=args.log_level, max_workers=args.workers, cache_directory=args.cache_directory
        )
        logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
        level = str(settings["log_level"]).upper()
        if not isinstance(logging.getLevelName(level), int):
            raise UsageError("Unknown log level " + repr(settings["log_level"]) + ".")
        logging.getLogger("coneseries").setLevel(level)
        if hasattr(args, "batch"):
            document = args.batch(args, settings)
            if args.out is not None:
                write_document_file(document, args.out)
        else:
            document = args.func(args)
        write_document(document, sys.stdout)
    except UsageError as error:
        _report(error)
        return 1
    except ConeSeriesError as error:
        _report(error)
        return 2
    if isinstance(document, dict) and document.get("identical") is False:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
