import argparse
import json

import pandas as pd

from utils.file_utils import TsvIO, read_jsonl_lines

SCHEMA = ["graph_id", "name", "status", "timing", "witness"]


def flatten_reports(reports):
    """One row per (graph, check) from JSON-lines verification reports."""
    rows = []
    for report in reports:
        for check in report["checks"]:
            rows.append({"graph_id": report["graph_id"], "name": check["name"], "status": check["status"],
                         "timing": check.get("timing"), "witness": check.get("witness")})
    return rows


def reports_to_tsv(jsonl_file, output_file, sep, failures_only=False):
    rows = flatten_reports(read_jsonl_lines(jsonl_file))
    if failures_only:
        rows = [r for r in rows if r["status"] == "fail"]
    if sep == "\t":
        TsvIO.write(rows, filename=output_file, schema=SCHEMA, sep=sep)
    else:
        df = pd.DataFrame(rows, columns=SCHEMA)
        df["witness"] = df["witness"].map(lambda w: None if w is None else json.dumps(w, sort_keys=True))
        df.to_csv(output_file, index=False)
    return rows


if __name__ == '__main__':
    parser = argparse.ArgumentParser(
        prog='reports_to_tsv.py',
        description='Flatten JSON-lines verification reports into one row per check'
    )
    parser.add_argument('--jsonl_file', type=str, help='Reports written by run_covers.py verify/corpus',
                        required=True)
    parser.add_argument('--output_file', type=str, help='Location of output file', default='-')
    parser.add_argument('--sep', type=str, help='Column separator; "," writes CSV through pandas',
                        default='\t')
    parser.add_argument('--failures_only', action='store_true')
    args = parser.parse_args()

    print('====Input Arguments====')
    print(json.dumps(vars(args), indent=2, sort_keys=True))
    print("=======================")
    reports_to_tsv(args.jsonl_file, args.output_file, args.sep, args.failures_only)
