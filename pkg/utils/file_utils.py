from typing import List
import contextlib
import csv
import gzip
import json
import sys

from covers.graph_core import Graph, format_edge_list, parse_edge_list

STDIO = "-"


@contextlib.contextmanager
def open_text(filename, mode="r"):
    """Open ``filename`` for text IO; ``-`` means stdin or stdout."""
    if filename == STDIO:
        yield sys.stdin if "r" in mode else sys.stdout
        return
    fn = gzip.open if str(filename).endswith(".gz") else open
    with fn(filename, mode + "t" if fn is gzip.open else mode) as f:
        yield f


def write_items(items: List[str], output_file):
    with open_text(output_file, "w") as f:
        for item in items:
            f.write(str(item) + "\n")


def read_lines(input_file: str) -> List[str]:
    with open_text(input_file) as f:
        return [l.strip() for l in f]


def read_jsonl_lines(input_file: str) -> List[dict]:
    return [json.loads(l) for l in read_lines(input_file) if l]


def write_jsonl_lines(records, output_file):
    write_items([json.dumps(r, sort_keys=True) for r in records], output_file)


def read_graph(input_file: str, strict: bool = True) -> Graph:
    with open_text(input_file) as f:
        return parse_edge_list(f.read(), strict=strict)


def read_graphs(input_file: str, strict: bool = True) -> List[Graph]:
    """Several edge lists in one file, separated by blank lines."""
    with open_text(input_file) as f:
        blocks = f.read().split("\n\n")
    return [parse_edge_list(b, strict=strict) for b in blocks if b.strip()]


def write_graph(g: Graph, output_file):
    with open_text(output_file, "w") as f:
        f.write(format_edge_list(g))


def write_matrix_csv(matrix, output_file, header=None):
    with open_text(output_file, "w") as f:
        writer = csv.writer(f, lineterminator="\n")
        if header is not None:
            writer.writerow(header)
        for row in matrix:
            writer.writerow([int(x) for x in row])


class TsvIO(object):
    @staticmethod
    def read(filename, known_schema=None, sep="\t"):
        """
        Read a TSV file with schema in the first line.
        :param filename: TSV formatted file, gzipped if it ends in .gz
        :param known_schema: column names, when the file has no header line
        :param sep: Separator used in the file. Default is '\t`
        :return: A generator of records, each a dict keyed by column name
        """
        first = True
        with open_text(filename) as f:
            for line_num, line in enumerate(f):
                if first and known_schema is None:
                    first = False
                    known_schema = [s.strip() for s in line.split(sep)]
                    continue
                data = {k.strip(): v.strip() for k, v in zip(known_schema, line.split(sep))}
                data['line_num'] = line_num
                yield data

    @staticmethod
    def make_str(item, sub_sep=";"):
        if isinstance(item, (list, tuple)):
            return sub_sep.join([TsvIO.make_str(i) for i in item])
        if isinstance(item, dict):
            return json.dumps(item, sort_keys=True)
        return "" if item is None else str(item)

    @staticmethod
    def write(records: List[dict], filename, schema, sep='\t', append=False, sub_sep=';'):
        """
        Write a TSV formatted file with the provided schema
        :param records: List of records to be written to the file
        :param filename: Output filename, or '-' for stdout
        :param schema: Order in which fields of each record will be written
        :param append: Whether to use append mode or write a new file
        :param sub_sep: Separator for list-valued fields
        """
        mode = 'a' if append else 'w'
        with open_text(filename, mode) as f:
            if not append:
                f.write(sep.join(schema) + "\n")
            for record in records:
                f.write(sep.join([TsvIO.make_str(record.get(field), sub_sep=sub_sep) for field in schema]))
                f.write('\n')
