"""
Output formatting for the CLI: CSV tables, JSON hardness reports, and atomic
file writes.

CSV floats carry 17 significant digits so every double survives the round
trip. JSON uses Python's float repr, the shortest string that parses back to
the same double.
"""

import csv
import io
import json
import os
import tempfile

from specmode.errors import ConfigError
from specmode.hardness.phard import DISCLAIMER, METHODS, HardnessResult

REPORT_FIELDS = ("p_hard", "method", "std_error", "seed", "disclaimer")


def format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "{:.17g}".format(value)
    return str(value)


def csv_text(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError("Row {} doesn't match header {}".format(row, header))
        writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()


def json_text(data):
    return json.dumps(data, indent=2) + "\n"


def hardness_report(result, **extra):
    report = {
        "p_hard": float(result.p_hard),
        "method": result.method,
        "std_error": None if result.std_error is None else float(result.std_error),
        "seed": result.seed,
        "disclaimer": DISCLAIMER,
    }
    report.update(extra)
    return report


def hardness_csv(report):
    header = list(report)
    return csv_text(header, [["" if report[k] is None else report[k] for k in header]])


def parse_hardness_report(text):
    """Read back a JSON hardness report into a HardnessResult."""
    try:
        data = json.loads(text)
    except ValueError as e:
        raise ConfigError("Not a JSON hardness report: {}".format(e))
    missing = [k for k in REPORT_FIELDS if k not in data]
    if missing:
        raise ConfigError("Hardness report lacks {}".format(", ".join(missing)))
    if data["method"] not in METHODS:
        raise ConfigError("Unknown method '{}'".format(data["method"]))
    if not 0 <= data["p_hard"] <= 1:
        raise ConfigError("p_hard {} outside [0, 1]".format(data["p_hard"]))
    return HardnessResult(data["p_hard"], data["method"], data["std_error"], data["seed"])


def distribution_rows(distribution):
    header = ["n_{}".format(i + 1) for i in range(distribution.m)] + ["probability"]
    rows = [list(config) + [p] for config, p in distribution.items()]
    return header, rows


def write_atomic(path, text):
    """Write text to path via a temporary file in the same directory and a rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, temp = tempfile.mkstemp(dir=directory, prefix=".specmode-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(temp, path)
    except BaseException:
        if os.path.exists(temp):
            os.remove(temp)
        raise
