"""Deterministic table emission: CSV, JSON and config sidecars.

All floats are written as %.12e with '.' as the decimal separator and
'\n' line endings regardless of locale or platform, so identical runs
produce byte-identical files.
"""

import json


def format_cell(value):
    if value is None or value == "":
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12e}"
    text = str(value)
    if "," in text or "\n" in text:
        raise ValueError(f"CSV cell may not contain separators: {text!r}")
    return text


def write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise ValueError("row length does not match header")
        lines.append(",".join(format_cell(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _json_cell(value):
    if value == "":
        return None
    return value


def write_json_table(path, header, rows):
    payload = {
        "columns": list(header),
        "rows": [[_json_cell(v) for v in row] for row in rows],
    }
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_sidecar(path, config_dict, metadata):
    """Config echo plus free-form metadata, making each table self-describing."""
    payload = {"config": config_dict, "metadata": metadata}
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def emit_table(out_dir, stem, header, rows, fmt, config_dict, metadata):
    """Write a table in the requested format(s) plus its sidecar.

    Returns the list of written file paths (sidecar last).
    """
    written = []
    if fmt in ("csv", "both"):
        path = out_dir / f"{stem}.csv"
        write_csv(path, header, rows)
        written.append(path)
    if fmt in ("json", "both"):
        path = out_dir / f"{stem}.json"
        write_json_table(path, header, rows)
        written.append(path)
    sidecar = out_dir / f"{stem}.meta.json"
    write_sidecar(sidecar, config_dict, metadata)
    written.append(sidecar)
    return written
