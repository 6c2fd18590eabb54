"""Per-check report records and their text/JSON rendering.

Every CLI subcommand assembles a list of records with the fixed keys
``name``, ``status``, ``expected``, ``actual`` (and ``witness`` on
failures), sorted by name, so the JSON output is schema-stable.
"""

import json

from . import __version__

_STATUSES = ("pass", "fail", "error")


def record(name, status, expected, actual, witness=None):
    if status not in _STATUSES:
        raise ValueError("status must be one of %s" % (_STATUSES,))
    rec = {
        "name": str(name),
        "status": status,
        "expected": str(expected),
        "actual": str(actual),
    }
    if status != "pass" and witness is None:
        witness = rec["actual"]
    if witness is not None:
        rec["witness"] = str(witness)
    return rec


def all_pass(records):
    return all(r["status"] == "pass" for r in records)


def render(command, records, fmt="text", elapsed_ms=0, extra=None):
    records = sorted(records, key=lambda r: r["name"])
    if fmt == "json":
        payload = {
            "command": command,
            "version": __version__,
            "elapsed_ms": int(elapsed_ms),
            "records": records,
        }
        if extra:
            payload.update(extra)
        return json.dumps(payload, indent=2)

    lines = ["finegrading %s: %s" % (__version__, command)]
    if extra:
        for key in sorted(extra):
            value = extra[key]
            if isinstance(value, (list, tuple)):
                lines.append("%s:" % key)
                lines.extend("  %s" % item for item in value)
            else:
                lines.append("%s: %s" % (key, value))
    width = max((len(r["name"]) for r in records), default=0)
    for r in records:
        lines.append(
            "%-5s %-*s  expected %s; got %s"
            % (r["status"].upper(), width, r["name"], r["expected"], r["actual"])
        )
        if r["status"] != "pass" and r.get("witness") != r["actual"]:
            lines.append("      witness: %s" % r["witness"])
    npass = sum(1 for r in records if r["status"] == "pass")
    lines.append(
        "%d/%d checks passed (%d ms)" % (npass, len(records), int(elapsed_ms))
    )
    return "\n".join(lines)
