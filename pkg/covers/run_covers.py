"""Command-line front end: generate and transform graphs, print their matrices,
zeta polynomials and spectra, and run the verification harness.

    python -m covers.run_covers gen star 3 | python -m covers.run_covers transform gamma
    python -m covers.run_covers corpus --nmax 5 --jobs 4 -o reports.jsonl

Graphs travel as edge lists ("n m" header, one "u v" line per edge); ``-``
stands for stdin/stdout.
"""
import argparse
import json
import logging
import sys

from covers.constructions import (cover_of_line, edge_adjacency_matrix, gamma_iterate,
                                  kronecker_double_cover, line_graph, line_of_cover, symmetric_edge_graph)
from covers.errors import CoversError, InvalidParameter
from covers.graph_core import find_isomorphism, generate, random_relabeling
from covers.spectral import ENERGY_TOLERANCE, char_poly, energy, spectrum_of_graph
from covers.theorems import (GRAPH_TIME_BUDGET, check_gamma_injectivity, check_suite, enumerate_connected,
                             run_corpus, summarize)
from covers.zeta import BASS, HASHIMOTO, factorization_parts, zeta_reciprocal_bass, zeta_reciprocal_hashimoto
from utils.file_utils import read_graph, read_graphs, write_graph, write_items, write_matrix_csv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

FAMILIES = ["cycle", "path", "complete", "star", "complete_bipartite", "crown", "prism", "empty", "hypercube"]

_TRANSFORMS = {
    "gamma": symmetric_edge_graph,
    "line": line_graph,
    "kronecker2": lambda g: kronecker_double_cover(g)[0],
    "line_of_cover": line_of_cover,
    "cover_of_line": cover_of_line,
}

_VIEWS = {"graph": lambda g: g, "gamma": symmetric_edge_graph, "line": line_graph,
          "line_of_cover": line_of_cover, "cover_of_line": cover_of_line}


def _gen(args):
    write_graph(generate(args.family, *args.params), args.output)
    return EXIT_OK


def _transform(args):
    if args.iterate < 0:
        raise InvalidParameter("--iterate must be nonnegative, got {}".format(args.iterate))
    g = read_graph(args.input)
    if args.kind == "relabel":
        if args.seed is None:
            raise InvalidParameter("transform relabel needs --seed")
        for step in range(args.iterate):
            g = random_relabeling(g, args.seed + step)
    elif args.kind == "gamma":
        g = gamma_iterate(g, args.iterate)
    else:
        for _ in range(args.iterate):
            g = _TRANSFORMS[args.kind](g)
    write_graph(g, args.output)
    return EXIT_OK


def _matrix(args):
    g = read_graph(args.input)
    if args.kind == "labeling":
        _, labeling = kronecker_double_cover(g)
        write_items([json.dumps(labeling.to_json())], args.output)
        return EXIT_OK
    if args.kind == "M":
        matrix = edge_adjacency_matrix(g).entries
    elif args.kind == "gammaA":
        matrix = edge_adjacency_matrix(g).symmetrized()
    else:
        matrix = line_of_cover(g).adjacency_matrix()
    write_matrix_csv(matrix.tolist(), args.output)
    return EXIT_OK


def _zeta(args):
    g = read_graph(args.input)
    methods = [HASHIMOTO, BASS] if args.method == "both" else [args.method]
    compute = {HASHIMOTO: zeta_reciprocal_hashimoto, BASS: zeta_reciprocal_bass}
    lines = []
    for method in methods:
        zeta = compute[method](g)
        lines.append(json.dumps(zeta.to_json(), sort_keys=True) if args.json else str(zeta.poly))
    if args.factor:
        for name, poly in factorization_parts(g).items():
            if args.json:
                lines.append(json.dumps({"name": name, "coefficients": poly.to_json()["coefficients"]}))
            else:
                lines.append("{}: {}".format(name, poly))
    write_items(lines, args.output)
    return EXIT_OK


def _spectrum(args):
    g = _VIEWS[args.of](read_graph(args.input))
    if args.exact:
        record = char_poly(g.adjacency_matrix()).to_json()
    else:
        record = spectrum_of_graph(g).to_json()
    write_items([json.dumps(record, sort_keys=True)], args.output)
    return EXIT_OK


def _energy(args):
    g = _VIEWS[args.of](read_graph(args.input))
    write_items([json.dumps({"of": args.of, "energy": energy(g)}, sort_keys=True)], args.output)
    return EXIT_OK


def _iso(args):
    if args.first == "-" and args.second == "-":
        raise InvalidParameter("only one of the two graphs can come from stdin")
    g, h = read_graph(args.first), read_graph(args.second)
    witness = find_isomorphism(g, h, vertex_bound=max(g.n, h.n, 1))
    write_items([json.dumps({"isomorphic": witness is not None, "witness": witness})], args.output)
    return EXIT_OK if witness is not None else EXIT_FAILED


def _write_reports(reports, args):
    write_items([r.to_json_line(include_timing=args.timings) for r in reports], args.output)


def _verify(args):
    graphs = [g for path in args.inputs for g in read_graphs(path)]
    reports = [check_suite(g, time_budget=args.budget, tolerance=args.tolerance) for g in graphs]
    _write_reports(reports, args)
    failed = [r.graph_id for r in reports if not r.passed()]
    for graph_id in failed:
        logger.warning("verification failed for {}".format(graph_id))
    return EXIT_FAILED if failed else EXIT_OK


def _corpus(args):
    graphs = enumerate_connected(args.nmax, progress=not args.quiet)
    logger.info("{} connected graphs with at most {} vertices".format(len(graphs), args.nmax))
    reports = run_corpus(graphs, jobs=args.jobs, time_budget=args.budget, tolerance=args.tolerance,
                         progress=not args.quiet)
    _write_reports(reports, args)
    collisions = check_gamma_injectivity(graphs)
    failed = [r for r in reports if not r.passed()]
    sys.stderr.write(summarize(reports).to_string() + "\n")
    sys.stderr.write("graphs: {}  failed: {}  gamma collisions: {}\n".format(
        len(reports), len(failed), len(collisions)))
    for pair in collisions:
        logger.error("non-isomorphic graphs {} and {} have isomorphic gamma".format(*pair))
    return EXIT_FAILED if failed or collisions else EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-o', '--output', type=str, default='-', help='Output file, "-" for stdout')
    common.add_argument('--verbose', action='store_true', help='Log at DEBUG level')
    common.add_argument('--quiet', action='store_true', help='Log warnings only, no progress bars')

    parser = argparse.ArgumentParser(prog='run_covers.py', description='Double covers of line graphs')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    gen = commands.add_parser('gen', parents=[common], help='Write a named graph')
    gen.add_argument('family', choices=FAMILIES)
    gen.add_argument('params', nargs='+', type=int)
    gen.set_defaults(handler=_gen)

    transform = commands.add_parser('transform', parents=[common], help='Map an edge list to an edge list')
    transform.add_argument('kind', choices=sorted(list(_TRANSFORMS) + ["relabel"]))
    transform.add_argument('input', nargs='?', default='-')
    transform.add_argument('--iterate', type=int, default=1, help='Apply the transform k times')
    transform.add_argument('--seed', type=int, default=None, help='Seed for relabel')
    transform.set_defaults(handler=_transform)

    matrix = commands.add_parser('matrix', parents=[common], help='Write a matrix as CSV')
    matrix.add_argument('kind', choices=['M', 'gammaA', 'PQ', 'labeling'])
    matrix.add_argument('input', nargs='?', default='-')
    matrix.set_defaults(handler=_matrix)

    zeta = commands.add_parser('zeta', parents=[common], help='Reciprocal Ihara zeta polynomial')
    zeta.add_argument('input', nargs='?', default='-')
    zeta.add_argument('--method', choices=[HASHIMOTO, BASS, 'both'], default=HASHIMOTO)
    zeta.add_argument('--factor', action='store_true', help='Also print the cover factorization parts')
    zeta.add_argument('--json', action='store_true')
    zeta.set_defaults(handler=_zeta)

    spectrum = commands.add_parser('spectrum', parents=[common], help='Adjacency spectrum as JSON')
    spectrum.add_argument('input', nargs='?', default='-')
    spectrum.add_argument('--exact', action='store_true', help='Characteristic polynomial instead of floats')
    spectrum.add_argument('--of', choices=sorted(_VIEWS), default='graph')
    spectrum.set_defaults(handler=_spectrum)

    energy_cmd = commands.add_parser('energy', parents=[common], help='Graph energy as JSON')
    energy_cmd.add_argument('input', nargs='?', default='-')
    energy_cmd.add_argument('--of', choices=sorted(_VIEWS), default='graph')
    energy_cmd.set_defaults(handler=_energy)

    iso = commands.add_parser('iso', parents=[common], help='Exit 0 iff the two graphs are isomorphic')
    iso.add_argument('first')
    iso.add_argument('second')
    iso.set_defaults(handler=_iso)

    for name, handler, help_text in (('verify', _verify, 'Run every check on the given graphs'),
                                     ('corpus', _corpus, 'Run every check on all small connected graphs')):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument('--tolerance', type=float, default=ENERGY_TOLERANCE)
        sub.add_argument('--budget', type=float, default=GRAPH_TIME_BUDGET, help='Seconds per graph')
        sub.add_argument('--timings', action='store_true', help='Include per-check timings in the reports')
        sub.set_defaults(handler=handler)
    commands.choices['verify'].add_argument('inputs', nargs='*', default=['-'])
    commands.choices['corpus'].add_argument('--nmax', type=int, default=6)
    commands.choices['corpus'].add_argument('--jobs', type=int, default=1)
    return parser


def _configure_logging(args):
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(format='%(asctime)s - %(levelname)s - %(name)s -   %(message)s',
                        datefmt='%m/%d/%Y %H:%M:%S',
                        level=level,
                        stream=sys.stderr)
    logging.getLogger().setLevel(level)


def run(argv) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR
    _configure_logging(args)
    logger.debug("Input Arguments: {}".format(
        json.dumps({k: v for k, v in vars(args).items() if k != 'handler'}, indent=2, sort_keys=True)))
    try:
        return args.handler(args)
    except (CoversError, OSError) as e:
        sys.stderr.write("run_covers.py {}: error: {}\n".format(args.command, e))
        return EXIT_ERROR


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
