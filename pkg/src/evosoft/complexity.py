"""Imitation and diversity metrics for code-like token streams.

The centerpiece is a desk-scale algorithmic-complexity estimator: an
exhaustively enumerated program space (elementary cellular automata over a
circular w-bit tape, all 256 rules x all 2^w seeds x all step counts up
to T) yields an output-frequency table, and a block's complexity is
K(b) = -log2 of its production probability. Long bit streams are scored
by block decomposition: sum of block complexities plus log2 of block
multiplicities, so repeated material is charged only once plus a
logarithmic repetition fee. LZ78 phrase counts and type-token ratios
provide cheaper redundancy proxies, and a sentence-by-symbol incidence
matrix supports bipartite views of source text.
"""

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy import sparse


@dataclass
class TokenStream:
    tokens: list
    mode: str   # "bytes", "words" or "bits"


def tokenize(data, mode):
    """Build a TokenStream from raw bytes or text.

    bytes: one token per byte value. words: whitespace-split, lowercased.
    bits: big-endian bit expansion of each byte.
    """
    if mode not in ("bytes", "words", "bits"):
        raise ValueError(f"unknown tokenize mode: {mode}")
    if isinstance(data, str):
        raw = data.encode("utf-8")
    else:
        raw = bytes(data)
    if len(raw) == 0:
        raise ValueError("empty input")
    if mode == "bytes":
        return TokenStream(list(raw), "bytes")
    if mode == "words":
        words = data.decode("utf-8", errors="replace").split() \
            if isinstance(data, (bytes, bytearray)) else data.split()
        if not words:
            raise ValueError("empty input")
        return TokenStream([w.lower() for w in words], "words")
    bits = []
    for byte in raw:
        for shift in range(7, -1, -1):
            bits.append((byte >> shift) & 1)
    return TokenStream(bits, "bits")


def type_token_ratio(stream: TokenStream):
    """Distinct tokens over total tokens."""
    if not stream.tokens:
        raise ValueError("empty stream")
    return len(set(stream.tokens)) / len(stream.tokens)


def lz78_phrase_count(stream: TokenStream):
    """Number of phrases in the LZ78 incremental parse.

    The dictionary starts empty; a trailing fragment that is already a
    dictionary entry counts as one final phrase.
    """
    if not stream.tokens:
        raise ValueError("empty stream")
    dictionary = set()
    phrases = 0
    current = ()
    for tok in stream.tokens:
        current = current + (tok,)
        if current not in dictionary:
            dictionary.add(current)
            phrases += 1
            current = ()
    if current:
        phrases += 1
    return phrases


@dataclass
class CtmTable:
    """Complexity table over all w-bit blocks.

    ``k_bits[b]`` approximates the algorithmic complexity of block b as
    -log2 of the fraction of enumerated programs producing b. Blocks never
    produced get one bit more than the worst attainable value.
    """
    width: int
    max_steps: int
    k_bits: np.ndarray
    total_programs: int

    def lookup(self, block):
        return float(self.k_bits[block])

    @property
    def produced_mask(self):
        ceiling = math.log2(self.total_programs) + 1.0
        return self.k_bits < ceiling


def build_ctm_table(width, max_steps):
    """Exhaustive program census for the complexity table.

    Programs are triples (rule, seed, steps): an elementary cellular
    automaton rule in 0..255 run from every w-bit seed on a circular tape
    for t = 1..max_steps steps; the output is the final tape. Every
    program yields exactly one output, so production frequencies sum to 1.
    """
    if not (4 <= width <= 12):
        raise ValueError("width must lie in [4, 12]")
    if not (1 <= max_steps <= 16):
        raise ValueError("max_steps must lie in [1, 16]")
    n_blocks = 1 << width
    seeds = np.arange(n_blocks, dtype=np.uint32)
    tape0 = ((seeds[:, None] >> np.arange(width - 1, -1, -1)[None, :]) & 1
             ).astype(np.uint8)
    weights = (1 << np.arange(width - 1, -1, -1)).astype(np.int64)
    hits = np.zeros(n_blocks, dtype=np.int64)
    for rule in range(256):
        rule_bits = np.array([(rule >> i) & 1 for i in range(8)],
                             dtype=np.uint8)
        tape = tape0.copy()
        for _ in range(max_steps):
            left = np.roll(tape, 1, axis=1)
            right = np.roll(tape, -1, axis=1)
            tape = rule_bits[4 * left + 2 * tape + right]
            blocks = tape.astype(np.int64) @ weights
            np.add.at(hits, blocks, 1)
    total = 256 * n_blocks * max_steps
    k = np.full(n_blocks, math.log2(total) + 1.0)
    seen = hits > 0
    k[seen] = -np.log2(hits[seen] / total)
    return CtmTable(width=width, max_steps=max_steps, k_bits=k,
                    total_programs=total)


def bdm(stream: TokenStream, block_size, table: CtmTable):
    """Block-decomposition complexity of a bit stream, in bits.

    The stream is cut into non-overlapping blocks of ``block_size`` bits
    (a trailing partial block is dropped) and scored as
    sum over distinct blocks of [K(block) + log2(multiplicity)].
    """
    if stream.mode != "bits":
        raise ValueError("bdm expects a bit stream")
    if table.width != block_size:
        raise ValueError("table width does not match block size")
    bits = stream.tokens
    if len(bits) < block_size:
        raise ValueError("stream shorter than one block")
    multiplicity = Counter()
    for start in range(0, len(bits) - block_size + 1, block_size):
        value = 0
        for b in bits[start:start + block_size]:
            value = (value << 1) | b
        multiplicity[value] += 1
    return float(sum(table.lookup(b) + math.log2(c)
                     for b, c in multiplicity.items()))


@dataclass
class ComplexityReport:
    bdm_bits: float
    lz78_phrases: int
    ttr: float

    def as_dict(self):
        return {"bdm_bits": self.bdm_bits, "lz78_phrases": self.lz78_phrases,
                "ttr": self.ttr}


def complexity_report(data, table: CtmTable):
    """BDM, LZ78 phrase count and type-token ratio of a byte payload."""
    bits = tokenize(data, "bits")
    as_bytes = tokenize(data, "bytes")
    return ComplexityReport(
        bdm_bits=bdm(bits, table.width, table),
        lz78_phrases=lz78_phrase_count(as_bytes),
        ttr=type_token_ratio(as_bytes),
    )


def bipartite_incidence(lines):
    """Binary line-by-symbol incidence matrix.

    ``lines`` is a sequence of TokenStreams; entry (i, s) is 1 iff symbol
    s occurs in line i. Columns are ordered by first appearance. Returns
    (csr_matrix, symbol_list).
    """
    lines = list(lines)
    symbols = {}
    rows, cols = [], []
    for i, line in enumerate(lines):
        seen = set()
        for tok in line.tokens:
            if tok not in symbols:
                symbols[tok] = len(symbols)
            j = symbols[tok]
            if j not in seen:
                seen.add(j)
                rows.append(i)
                cols.append(j)
    if not symbols:
        raise ValueError("all lines empty")
    matrix = sparse.csr_matrix(
        (np.ones(len(rows), dtype=np.int8), (rows, cols)),
        shape=(len(lines), len(symbols)))
    return matrix, list(symbols)


def write_ctm_csv(table: CtmTable, path):
    digits = (table.width + 3) // 4
    with open(path, "w", newline="\n") as fh:
        fh.write("block_hex,k_bits\n")
        for block, k in enumerate(table.k_bits):
            fh.write(f"{block:0{digits}x},{k:.10g}\n")


def read_ctm_csv(path, width, max_steps, total_programs):
    k = np.zeros(1 << width)
    with open(path) as fh:
        header = next(fh)
        for line in fh:
            hex_block, val = line.strip().split(",")
            k[int(hex_block, 16)] = float(val)
    return CtmTable(width=width, max_steps=max_steps, k_bits=k,
                    total_programs=total_programs)
