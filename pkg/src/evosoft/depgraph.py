"""Dependency-network extraction from source trees.

Scans a directory for files matching a language profile, pulls reference
strings out of include/import lines with anchored regular expressions,
and resolves each reference to another scanned file (relative to the
referencing file first, then along the profile's search paths). Resolved
references become edges dependent -> dependency; unresolved ones become
external nodes or are reported, depending on the caller's choice.
Detection is lexical by design: include/import lines are regular enough
across the shipped profiles that full parsing buys nothing at file-level
granularity.
"""

import fnmatch
import json
import os
import re
import warnings
from dataclasses import dataclass, field

from .graphs import DirectedGraph

EXTERNAL = "<external>"


@dataclass
class LangProfile:
    name: str
    file_globs: list
    import_patterns: list          # each regex has one capture group
    search_paths: list = field(default_factory=list)
    ref_suffixes: list = field(default_factory=lambda: [""])
    dotted_refs: bool = False      # translate a.b.c -> a/b/c before resolving
    line_comment_prefixes: list = field(default_factory=list)
    block_comment: tuple | None = None   # (open, close)

    def __post_init__(self):
        if not self.file_globs:
            raise ValueError("profile needs at least one file glob")
        if not self.import_patterns:
            raise ValueError("profile needs at least one import pattern")
        self._compiled = [re.compile(p) for p in self.import_patterns]
        for rx in self._compiled:
            if rx.groups != 1:
                raise ValueError("each import pattern needs exactly one "
                                 "capture group")

    def matches(self, filename):
        return any(fnmatch.fnmatch(filename, g) for g in self.file_globs)


def builtin_profiles():
    c_like = LangProfile(
        name="c",
        file_globs=["*.c", "*.h", "*.cc", "*.cpp", "*.hpp", "*.cxx"],
        import_patterns=[r'^\s*#\s*include\s*"([^"]+)"',
                         r'^\s*#\s*include\s*<([^>]+)>'],
        line_comment_prefixes=["//"],
        block_comment=("/*", "*/"),
    )
    imports = LangProfile(
        name="imports",
        file_globs=["*.py"],
        import_patterns=[r'^\s*import\s+([A-Za-z_][\w.]*)',
                         r'^\s*from\s+([A-Za-z_][\w.]*)\s+import\b'],
        search_paths=[""],          # dotted modules resolve from the root
        ref_suffixes=[".py"],
        dotted_refs=True,
        line_comment_prefixes=["#"],
    )
    require = LangProfile(
        name="require",
        file_globs=["*.js", "*.ts"],
        import_patterns=[r'require\s*\(\s*["\']([^"\']+)["\']\s*\)',
                         r'^\s*import\b[^"\']*["\']([^"\']+)["\']'],
        ref_suffixes=["", ".js", ".ts"],
        line_comment_prefixes=["//"],
        block_comment=("/*", "*/"),
    )
    return {p.name: p for p in (c_like, imports, require)}


def load_profile(path):
    """Read a user profile from a JSON config file."""
    with open(path) as fh:
        cfg = json.load(fh)
    block = cfg.get("block_comment")
    return LangProfile(
        name=cfg["name"],
        file_globs=list(cfg["file_globs"]),
        import_patterns=list(cfg["import_patterns"]),
        search_paths=list(cfg.get("search_paths", [])),
        ref_suffixes=list(cfg.get("ref_suffixes", [""])),
        dotted_refs=bool(cfg.get("dotted_refs", False)),
        line_comment_prefixes=list(cfg.get("line_comment_prefixes", [])),
        block_comment=tuple(block) if block else None,
    )


@dataclass
class ExtractionReport:
    graph: DirectedGraph
    labels: list                   # node id -> relative path or ref string
    external_count: int
    unresolved: list               # (file, reference) pairs
    skipped: list                  # (file, reason) pairs


def _strip_comments(lines, profile: LangProfile):
    """Best-effort comment removal: line prefixes plus one block state."""
    out = []
    in_block = False
    opener, closer = profile.block_comment or (None, None)
    for line in lines:
        if in_block:
            end = line.find(closer)
            if end < 0:
                out.append("")
                continue
            line = line[end + len(closer):]
            in_block = False
        if opener:
            start = line.find(opener)
            while start >= 0:
                end = line.find(closer, start + len(opener))
                if end < 0:
                    line = line[:start]
                    in_block = True
                    break
                line = line[:start] + line[end + len(closer):]
                start = line.find(opener)
        stripped = line.lstrip()
        if any(stripped.startswith(p) for p in profile.line_comment_prefixes):
            out.append("")
            continue
        out.append(line)
    return out


def _candidate_paths(ref, profile: LangProfile):
    ref = ref.replace(".", "/") if profile.dotted_refs else ref
    return [ref + suffix for suffix in profile.ref_suffixes]


def resolve_reference(ref, current_file, profile, file_index):
    """Resolve a reference string to a scanned file's relative path.

    Tries the referencing file's directory first, then each profile
    search path in order; the first candidate present in ``file_index``
    wins. Returns the resolved relative path, or EXTERNAL on a miss
    (misses are data, not errors).
    """
    if not ref:
        raise ValueError("empty reference")
    bases = [os.path.dirname(current_file)] + list(profile.search_paths)
    for base in bases:
        for cand in _candidate_paths(ref, profile):
            rel = os.path.normpath(os.path.join(base, cand)) if base \
                else os.path.normpath(cand)
            rel = rel.replace(os.sep, "/")
            if rel in file_index:
                return rel
    return EXTERNAL


def scan_tree(root, profile: LangProfile, include_external=False):
    """Extract the dependency graph of a source tree.

    One node per matched file (ids assigned in lexicographic path order),
    plus one node per distinct external reference when include_external is
    set. Repeated references between the same pair of files collapse to a
    single edge. Unreadable files are skipped with a warning and recorded.
    """
    if not os.path.isdir(root):
        raise ValueError(f"unreadable root: {root}")
    matched = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for name in sorted(filenames):
            if profile.matches(name):
                rel = os.path.relpath(os.path.join(dirpath, name), root)
                matched.append(rel.replace(os.sep, "/"))
    matched.sort()
    file_index = {path: i for i, path in enumerate(matched)}

    graph = DirectedGraph(len(matched))
    labels = list(matched)
    externals = {}
    unresolved = []
    skipped = []

    for path in matched:
        src = file_index[path]
        try:
            with open(os.path.join(root, path), encoding="utf-8",
                      errors="replace") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            warnings.warn(f"skipping unreadable file {path}: {exc}")
            skipped.append((path, str(exc)))
            continue
        for line in _strip_comments(lines, profile):
            for rx in profile._compiled:
                for m in rx.finditer(line):
                    ref = m.group(1)
                    target = resolve_reference(ref, path, profile, file_index)
                    if target is EXTERNAL:
                        if include_external:
                            if ref not in externals:
                                externals[ref] = graph.add_node()
                                labels.append(ref)
                            graph.add_edge(src, externals[ref])
                        else:
                            unresolved.append((path, ref))
                    elif target != path:
                        graph.add_edge(src, file_index[target])
    return ExtractionReport(graph=graph, labels=labels,
                            external_count=len(externals),
                            unresolved=unresolved, skipped=skipped)


def write_labels_csv(report: ExtractionReport, path):
    with open(path, "w", newline="\n") as fh:
        fh.write("id,path\n")
        for i, label in enumerate(report.labels):
            fh.write(f"{i},{label}\n")


def write_unresolved_csv(report: ExtractionReport, path):
    with open(path, "w", newline="\n") as fh:
        fh.write("file,reference\n")
        for f, ref in report.unresolved:
            fh.write(f"{f},{ref}\n")
