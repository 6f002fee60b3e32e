"""Deterministic CSV emission.

Every file starts with a '#' comment block (full config echo, seed,
version string, and any measured wall times), then a header row, then
data rows. Floats are written in scientific notation with 17 significant
digits so values round-trip exactly. Re-running with the same config
reproduces the body (header + rows) byte for byte; anything measured or
time-dependent lives only in the comment block.
"""

import os
import subprocess

from . import __version__


def format_value(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return "%.16e" % v
    return str(v)


def version_string() -> str:
    """Package version plus the repository revision when available."""
    base = "geoprox-" + __version__
    try:
        here = os.path.dirname(os.path.abspath(__file__))
        rev = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=here, capture_output=True, text=True, timeout=10)
        if rev.returncode == 0 and rev.stdout.strip():
            return base + "+" + rev.stdout.strip()
    except Exception:
        pass
    return base


def write_csv(path, columns, rows, config=None, walltimes=None,
              extra_comments=None):
    """Write one CSV file with a deterministic body.

    config: mapping echoed as '# key=value' lines, sorted by key.
    walltimes: list of (label, seconds) measured entries, comments only.
    extra_comments: additional comment strings, written as given.
    """
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    lines = []
    lines.append("# version=" + version_string())
    if config:
        for key in sorted(config):
            lines.append("# %s=%s" % (key, format_value(config[key])))
    if extra_comments:
        for c in extra_comments:
            lines.append("# " + c)
    if walltimes:
        for label, seconds in walltimes:
            lines.append("# walltime,%s,%s" % (label, format_value(seconds)))
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def read_body(path) -> str:
    """The non-comment part of a CSV file, for determinism comparisons."""
    with open(path) as fh:
        return "".join(line for line in fh if not line.startswith("#"))
