"""Run artifacts: output directories, CSV/JSON writers, manifests.

Every command writes its data files into one output directory and then a
``manifest.json`` recording the command, its parameters, the seed, and a
sha256 per artifact. Re-running a command with the same parameters and
seed must reproduce the same hashes, figures included.
"""

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor


def worker_count():
    """Worker cap from EVOSOFT_THREADS (default 1 = run in-process)."""
    raw = os.environ.get("EVOSOFT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn, items, workers=None):
    """Map with an optional process pool; order-preserving, deterministic
    as long as each item carries its own seed."""
    if workers is None:
        workers = worker_count()
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def ensure_outdir(path):
    os.makedirs(path, exist_ok=True)
    return path


def sha256_file(path):
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_json(payload, path):
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_rows_csv(path, header, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_format_cell(x) for x in row) + "\n")


def _format_cell(x):
    if isinstance(x, float):
        return f"{x:.10g}"
    return str(x)


def read_samples_csv(path):
    """Single-column numeric CSV (optional header and comments tolerated)."""
    out = []
    with open(path) as fh:
        for line in fh:
            token = line.strip().split(",")[0]
            if not token or token.startswith("#"):
                continue
            try:
                out.append(float(token))
            except ValueError:
                continue
    if not out:
        raise ValueError(f"no numeric samples in {path}")
    return out


def write_manifest(outdir, command, parameters, seed, artifacts):
    """Hash the run's artifacts and write manifest.json beside them.

    ``artifacts`` is a list of paths inside ``outdir``; hashes are keyed
    by the path relative to the output directory.
    """
    entries = {}
    for path in artifacts:
        rel = os.path.relpath(path, outdir)
        entries[rel.replace(os.sep, "/")] = sha256_file(path)
    manifest = {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "artifacts": entries,
    }
    path = os.path.join(outdir, "manifest.json")
    write_json(manifest, path)
    return manifest
