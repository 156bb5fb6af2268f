"""Length spectrum of the Bolza surface (and user-supplied genus-2
presentations) by breadth-first enumeration in the surface group.

The enumeration works on group *elements*: products of generator matrices
are deduplicated by a sign-normalized quantized matrix key, with a
hyperbolic-displacement cutoff so the search stays inside the ball that
can contain closed geodesics up to the requested length.  Conjugacy
classes (= oriented closed geodesics) are then the connected components
of the conjugation-by-generators graph on that ball, merged and labelled
by an exact canonical cyclic-word reduction (Dehn's algorithm with the
octagon relation plus equal-length chunk rewritings).

Words are bytes with letter values 0..7; letters 0..3 are the generators
'a'..'d' and 4..7 their inverses 'A'..'D'.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
import sympy as sp
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (BeyondHorizon, InsufficientData, NotHyperbolic,
                     StructureViolation, ToleranceCollision)

N_GENERATORS = 4
LETTERS = "abcdABCD"
_INVERSE = bytes((x + N_GENERATORS) % (2 * N_GENERATORS) for x in range(8))

# Quantization grid for matrix keys.  Distinct elements in the explored
# ball differ by >~1e-4 in some entry (discreteness of the group), while
# float products of <= 14 factors agree to ~1e-9; 1e-5 sits safely between.
KEY_QUANTUM = 1e-5

# A conjugacy class of translation length L has a representative whose
# axis meets the fundamental octagon, so its displacement at i is at most
# L + octagon diameter; the extra buffer keeps breadth-first prefixes that
# dip outside the ball before coming back.
FUNDAMENTAL_RADIUS = 1.529
PRUNE_BUFFER = 2.0


def inverse_letter(x):
    return _INVERSE[x]


def word_to_string(word):
    return "".join(LETTERS[x] for x in word)


def string_to_word(s):
    return bytes(LETTERS.index(ch) for ch in s)


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == _INVERSE[x]:
            out.pop()
        else:
            out.append(x)
    return bytes(out)


def cyclic_reduce(word):
    word = free_reduce(word)
    lo, hi = 0, len(word)
    while hi - lo >= 2 and word[lo] == _INVERSE[word[hi - 1]]:
        lo += 1
        hi -= 1
    return word[lo:hi]


def invert_word(word):
    return bytes(_INVERSE[x] for x in reversed(word))


# ---------------------------------------------------------------------------
# Presentations


@dataclass(frozen=True)
class SurfaceGroupPresentation:
    """Four hyperbolic generators with their exact and float matrices.

    ``matrices_exact`` are sympy 2x2 matrices; ``relation`` is the word
    (bytes of letter indices) whose product is the identity."""
    labels: tuple
    matrices_exact: tuple
    relation: bytes
    trace_field_note: str = ""

    def __post_init__(self):
        if len(self.labels) != N_GENERATORS:
            raise StructureViolation("exactly four generators expected")
        for lab, m in zip(self.labels, self.matrices_exact):
            if sp.simplify(m.det() - 1) != 0:
                raise StructureViolation(f"det({lab}) != 1 (exact check)")
            if not float(sp.Abs(m.trace()).evalf(30)) > 2:
                raise StructureViolation(f"generator {lab} is not hyperbolic")
        fl = self.float_generators()
        prod = np.eye(2)
        for x in self.relation:
            prod = prod @ fl[x]
        if min(np.abs(prod - np.eye(2)).max(),
               np.abs(prod + np.eye(2)).max()) > 1e-9:
            raise StructureViolation("relation word does not map to +-I")

    def float_generators(self):
        """(8, 2, 2) array: generators then inverses, double precision."""
        gens = np.array(
            [[[float(e.evalf(30)) for e in row] for row in m.tolist()]
             for m in self.matrices_exact])
        # inverse of an SL2 matrix is its adjugate: exact in floats
        invs = np.array([[[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]]
                         for g in gens])
        return np.concatenate([gens, invs])

    def relator_variants(self):
        """All cyclic rotations of the relation word and its inverse."""
        out = set()
        for base in (free_reduce(self.relation),
                     invert_word(free_reduce(self.relation))):
            for i in range(len(base)):
                out.add(base[i:] + base[:i])
        return tuple(sorted(out))

    def to_json(self):
        return json.dumps({
            "labels": list(self.labels),
            "matrices": [[[str(e) for e in row] for row in m.tolist()]
                         for m in self.matrices_exact],
            "relation": word_to_string(self.relation),
            "trace_field_note": self.trace_field_note,
        }, indent=2)

    @staticmethod
    def from_json(text):
        data = json.loads(text)
        mats = tuple(sp.Matrix([[sp.sympify(e) for e in row]
                                for row in rows])
                     for rows in data["matrices"])
        return SurfaceGroupPresentation(
            labels=tuple(data["labels"]),
            matrices_exact=mats,
            relation=string_to_word(data["relation"]),
            trace_field_note=data.get("trace_field_note", ""),
        )


def bolza_generators():
    """Side-pairing translations of the regular hyperbolic octagon.

    T_k conjugates T0 = [[1+sqrt2, sqrt(2+2 sqrt2)], [sqrt(2+2 sqrt2),
    1+sqrt2]] by the elliptic element fixing i that rotates the plane by
    k pi/4 (matrix angle k pi/8).  The four translations satisfy the
    alternating octagon relation a B c D A b C d = 1."""
    s2 = sp.sqrt(2)
    b = sp.sqrt(2 + 2 * s2)
    t0 = sp.Matrix([[1 + s2, b], [b, 1 + s2]])
    mats = []
    for k in range(4):
        th = sp.pi * k / 8
        rk = sp.Matrix([[sp.cos(th), sp.sin(th)],
                        [-sp.sin(th), sp.cos(th)]])
        mats.append(sp.simplify(rk * t0 * rk.T))
    note = ("entries lie in the field Q(sqrt(2), sqrt(2+2 sqrt(2))); "
            "all four generators share the trace 2+2 sqrt(2)")
    return SurfaceGroupPresentation(
        labels=("a", "b", "c", "d"),
        matrices_exact=tuple(mats),
        relation=string_to_word("aBcDAbCd"),
        trace_field_note=note,
    )


def length_from_trace(t):
    """Hyperbolic translation length 2 arccosh(|t|/2)."""
    if abs(t) <= 2:
        raise NotHyperbolic(f"|trace| = {abs(t)} <= 2")
    return 2.0 * math.acosh(abs(t) / 2.0)


# ---------------------------------------------------------------------------
# Dehn reduction / canonical cyclic words

_CHUNK_TABLES = {}


def _chunk_table(variants):
    """prefix (length 2..half) -> [(chunk length, variant), ...]."""
    if variants not in _CHUNK_TABLES:
        half = len(variants[0]) // 2
        table = {}
        for var in variants:
            for k in range(2, half + 1):
                table.setdefault(var[:k], []).append((k, var))
        _CHUNK_TABLES[variants] = (half, table)
    return _CHUNK_TABLES[variants]


def dehn_reduce(word, variants):
    """Cyclically reduced word with no relator chunk longer than half."""
    cyc = cyclic_reduce(word)
    half = len(variants[0]) // 2
    changed = True
    while changed and cyc:
        changed = False
        n = len(cyc)
        doubled = cyc + cyc
        for i in range(n):
            for var in variants:
                k = 0
                limit = min(len(var), n)
                while k < limit and doubled[i + k] == var[k]:
                    k += 1
                if k > half:
                    rest = doubled[i + k:i + n]
                    cyc = cyclic_reduce(rest + invert_word(var[k:]))
                    changed = True
                    break
            if changed:
                break
    return cyc


def canonical_cyclic_word(word, variants):
    """Lexicographically least shortest word over all rotations and
    equal-or-shorter relator chunk rewritings (conjugacy normal form).

    Chunks of length k are replaced by the inverse of the relator's
    complementary part (length relator-k); with the octagon relation,
    k >= 2 rewritings plus free cyclic reduction reach every conjugate
    of minimal length that rotations alone miss."""
    half, table = _chunk_table(variants)
    start = dehn_reduce(word, variants)
    if not start:
        return b""
    root, power = cyclic_root(start)
    if power > 1:
        # conjugate powers have conjugate roots; rewriting the power
        # directly would need intermediates longer than the word itself
        return canonical_cyclic_word(root, variants) * power
    seen = set()
    queue = [start]
    while queue:
        cur = queue.pop()
        if cur in seen:
            continue
        seen.add(cur)
        n = len(cur)
        doubled = cur + cur
        for i in range(1, n):
            rot = doubled[i:i + n]
            if rot not in seen:
                queue.append(rot)
        for i in range(n):
            for k in range(2, min(half, n) + 1):
                hits = table.get(doubled[i:i + k])
                if not hits:
                    continue
                for kk, var in hits:
                    cand = cyclic_reduce(doubled[i + kk:i + n]
                                         + invert_word(var[kk:]))
                    if len(cand) < n:
                        # found a shorter conjugate: restart from it
                        return canonical_cyclic_word(cand, variants)
                    if len(cand) == n and cand not in seen:
                        queue.append(cand)
    return min(seen)


def cyclic_root(word):
    """(root, k) with word = root^k as a cyclic word, k maximal."""
    n = len(word)
    for period in range(1, n + 1):
        if n % period:
            continue
        if word == word[period:] + word[:period]:
            return word[:period], n // period
    return word, 1


# ---------------------------------------------------------------------------
# Element-ball breadth-first search


def _normalize_sign(mats):
    """Flip each matrix so its largest-magnitude entry is positive."""
    flat = mats.reshape(len(mats), 4)
    idx = np.abs(flat).argmax(axis=1)
    signs = np.sign(flat[np.arange(len(flat)), idx])
    signs[signs == 0] = 1.0
    return mats * signs[:, None, None]


def _keys_of(mats):
    """Quantized sign-normalized keys, one structured row per matrix."""
    flat = _normalize_sign(mats).reshape(len(mats), 4)
    q = np.round(flat / KEY_QUANTUM).astype(np.int64)
    return np.ascontiguousarray(q).view([("", np.int64)] * 4).ravel()


@dataclass
class _ElementBall:
    mats: np.ndarray     # (N, 2, 2)
    keys: np.ndarray     # (N,) structured, unsorted
    parents: np.ndarray  # (N,) int64, -1 for generators
    letters: np.ndarray  # (N,) int8
    depths: np.ndarray   # (N,) int16, word length of the tree word
    det_drift: float

    def word_of(self, idx):
        out = []
        while idx >= 0:
            out.append(int(self.letters[idx]))
            idx = int(self.parents[idx])
        return bytes(reversed(out))


def _explore_ball(gens, max_word_length, radius):
    """All group elements of word length <= max_word_length whose
    displacement at i satisfies cosh d(i, g i) = |g|_F^2 / 2 <= cosh(radius)."""
    cosh_cut = math.cosh(radius)
    mats = gens.copy()
    keys = _keys_of(mats)
    sorted_keys = np.sort(keys)
    parents = np.full(len(gens), -1, dtype=np.int64)
    letters = np.arange(len(gens), dtype=np.int8)
    depths = np.ones(len(gens), dtype=np.int16)
    level = np.arange(len(gens))
    drift = 0.0
    for depth in range(2, max_word_length + 1):
        if len(level) == 0:
            break
        prod = mats[level][:, None] @ gens[None, :]
        # drop the immediate backtrack letter (free reduction at the tip)
        g_idx = np.broadcast_to(np.arange(len(gens)), prod.shape[:2])
        keep = g_idx != ((letters[level][:, None] + N_GENERATORS)
                         % (2 * N_GENERATORS))
        parent_idx = np.broadcast_to(level[:, None], prod.shape[:2])[keep]
        letter_new = g_idx[keep].astype(np.int8)
        cand = prod[keep]
        disp = (cand.reshape(len(cand), 4) ** 2).sum(axis=1) / 2.0
        inside = disp <= cosh_cut
        cand, parent_idx, letter_new = (cand[inside], parent_idx[inside],
                                        letter_new[inside])
        if len(cand) == 0:
            break
        dets = (cand[:, 0, 0] * cand[:, 1, 1]
                - cand[:, 0, 1] * cand[:, 1, 0])
        drift = max(drift, float(np.abs(dets - 1.0).max()))
        if drift > 1e-9:
            cand = cand / np.sqrt(dets)[:, None, None]
        ckeys = _keys_of(cand)
        _, first = np.unique(ckeys, return_index=True)
        cand, parent_idx, letter_new, ckeys = (
            cand[first], parent_idx[first], letter_new[first], ckeys[first])
        pos = np.clip(np.searchsorted(sorted_keys, ckeys),
                      0, len(sorted_keys) - 1)
        fresh = sorted_keys[pos] != ckeys
        cand, parent_idx, letter_new, ckeys = (
            cand[fresh], parent_idx[fresh], letter_new[fresh], ckeys[fresh])
        if len(cand) == 0:
            break
        start = len(mats)
        mats = np.concatenate([mats, cand])
        keys = np.concatenate([keys, ckeys])
        parents = np.concatenate([parents, parent_idx])
        letters = np.concatenate([letters, letter_new])
        depths = np.concatenate(
            [depths, np.full(len(cand), depth, dtype=np.int16)])
        # ckeys is already sorted (np.unique); merge instead of re-sorting
        sorted_keys = np.insert(sorted_keys,
                                np.searchsorted(sorted_keys, ckeys), ckeys)
        level = np.arange(start, len(mats))
    return _ElementBall(mats, keys, parents, letters, depths, drift)


# ---------------------------------------------------------------------------
# Conjugacy classes


@dataclass(frozen=True)
class ConjugacyClassRecord:
    canonical_word: str
    trace: float
    length: float
    primitive: bool
    power_of: str | None
    orientation_partner: str

    def word_length(self):
        return len(self.canonical_word)


@dataclass
class LengthSpectrum:
    records: list
    max_word_length: int
    max_geodesic_length: float
    dedup_tolerance: float
    det_drift: float
    collisions: list = field(default_factory=list)

    def lengths(self):
        return np.array([r.length for r in self.records])

    def shells(self, tol=1e-6):
        """Sorted distinct lengths with their oriented-class counts."""
        out = []
        for r in sorted(self.records, key=lambda r: r.length):
            if out and r.length - out[-1][0] <= tol:
                out[-1] = (out[-1][0], out[-1][1] + 1)
            else:
                out.append((r.length, 1))
        return out

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["canonical_word", "trace", "length", "primitive",
                    "orientation_partner"])
        for r in self.records:
            w.writerow([r.canonical_word, f"{r.trace:.12g}",
                        f"{r.length:.12g}", str(r.primitive).lower(),
                        r.orientation_partner])
        return buf.getvalue()


def _candidate_set(ball, max_geodesic_length):
    traces = np.abs(np.trace(ball.mats, axis1=1, axis2=2))
    hyp = traces > 2.0 + 1e-12
    lengths = np.zeros(len(traces))
    lengths[hyp] = 2.0 * np.arccosh(np.maximum(traces[hyp], 2.0) / 2.0)
    return np.flatnonzero(hyp & (lengths <= max_geodesic_length + 1e-12))


def _ball_radius(presentation, max_word_length, max_geodesic_length,
                 prune_buffer):
    gens = presentation.float_generators()
    per_letter = max(length_from_trace(np.trace(g)) for g in gens)
    return min(max_geodesic_length + 2 * FUNDAMENTAL_RADIUS + prune_buffer,
               per_letter * max_word_length + 1e-9)


def enumerate_classes(presentation, max_word_length,
                      max_geodesic_length=None, dedup_tolerance=1e-9,
                      prune_buffer=PRUNE_BUFFER, strict=False):
    """Oriented conjugacy classes with length <= max_geodesic_length found
    among elements of word length <= max_word_length.

    Completeness is geometric: every class of length L has a conjugate
    whose displacement at i is at most L + 2 * FUNDAMENTAL_RADIUS, so the
    search explores that displacement ball (plus a buffer) rather than
    the full exponential Cayley ball."""
    if max_word_length < 1:
        raise InsufficientData("max_word_length must be >= 1")
    gens = presentation.float_generators()
    per_letter = max(length_from_trace(np.trace(g)) for g in gens)
    if max_geodesic_length is None:
        # No word of <= max_word_length letters moves any point farther
        # than per_letter * max_word_length; the extra slack stays under
        # the length gap to the first class needing more letters.
        max_geodesic_length = per_letter * max_word_length + 0.5
    radius = _ball_radius(presentation, max_word_length,
                          max_geodesic_length, prune_buffer)
    ball = _explore_ball(gens, max_word_length, radius)
    cand = _candidate_set(ball, max_geodesic_length)
    variants = presentation.relator_variants()
    if len(cand) == 0:
        return LengthSpectrum([], max_word_length, max_geodesic_length,
                              dedup_tolerance, ball.det_drift)

    cand_keys = ball.keys[cand]
    order = np.argsort(cand_keys)
    sorted_cand_keys = cand_keys[order]

    def find_candidates(mats):
        """Local candidate indices matching each matrix, -1 if absent."""
        keys = _keys_of(mats)
        pos = np.clip(np.searchsorted(sorted_cand_keys, keys),
                      0, len(sorted_cand_keys) - 1)
        hit = sorted_cand_keys[pos] == keys
        out = np.full(len(mats), -1, dtype=np.int64)
        out[hit] = order[pos[hit]]
        return out

    rows, cols = [], []
    for g, ginv in zip(gens[:N_GENERATORS], gens[N_GENERATORS:]):
        conj = g @ ball.mats[cand] @ ginv
        target = find_candidates(conj)
        hit = target >= 0
        rows.append(np.flatnonzero(hit))
        cols.append(target[hit])
    graph = coo_matrix(
        (np.ones(sum(len(r) for r in rows)),
         (np.concatenate(rows), np.concatenate(cols))),
        shape=(len(cand), len(cand)))
    _, labels = connected_components(graph, directed=False)

    # one representative per component: smallest word length, then key
    key_rank = np.empty(len(cand), dtype=np.int64)
    key_rank[order] = np.arange(len(cand))
    by_comp = np.lexsort((key_rank, ball.depths[cand], labels))
    _, firsts = np.unique(labels[by_comp], return_index=True)
    comp_best = {int(labels[by_comp[f]]): int(cand[by_comp[f]])
                 for f in firsts}

    def word_trace(word):
        m = np.eye(2)
        for x in word:
            m = m @ gens[x]
        return float(abs(np.trace(m)))

    # exact canonical words; merge components the word form identifies,
    # and remember each component's inverse component for orientation
    inv_mats = np.empty_like(ball.mats[cand])
    inv_mats[:, 0, 0] = ball.mats[cand, 1, 1]
    inv_mats[:, 0, 1] = -ball.mats[cand, 0, 1]
    inv_mats[:, 1, 0] = -ball.mats[cand, 1, 0]
    inv_mats[:, 1, 1] = ball.mats[cand, 0, 0]
    inv_local = find_candidates(inv_mats)

    comp_word = {}
    for comp, node in sorted(comp_best.items()):
        comp_word[comp] = canonical_cyclic_word(ball.word_of(node), variants)
    by_word = {}
    for comp, node in sorted(comp_best.items()):
        word = comp_word[comp]
        tr = float(np.abs(np.trace(ball.mats[node])))
        if word not in by_word:
            by_word[word] = word_trace(word)
        # the short canonical product is the accurate trace; the deep
        # breadth-first product must agree to float accumulation level
        if abs(by_word[word] - tr) > 1e-6 * max(1.0, tr):
            raise ToleranceCollision(
                f"canonical word {word_to_string(word)} trace "
                f"{by_word[word]} disagrees with element trace {tr}")

    # orientation partners via inverse elements where available
    partner_word = {}
    local_of_cand = {int(c): local for local, c in enumerate(cand)}
    for comp, node in comp_best.items():
        loc = local_of_cand[int(node)]
        inv = inv_local[loc]
        if inv >= 0:
            partner_word[comp_word[comp]] = comp_word[labels[inv]]
    records = []
    for word, tr in by_word.items():
        root, k = cyclic_root(word)
        partner = partner_word.get(word)
        if partner is None:
            partner = canonical_cyclic_word(invert_word(word), variants)
        records.append(ConjugacyClassRecord(
            canonical_word=word_to_string(word),
            trace=tr,
            length=length_from_trace(tr),
            primitive=(k == 1),
            power_of=word_to_string(canonical_cyclic_word(root, variants))
            if k > 1 else None,
            orientation_partner=word_to_string(partner),
        ))
    records.sort(key=lambda r: (r.length, r.canonical_word))

    collisions = []
    by_trace = {}
    for r in records:
        by_trace.setdefault(round(r.trace / max(dedup_tolerance, 1e-12)),
                            []).append(r)
    for group in by_trace.values():
        if len(group) > 1:
            collisions.append([r.canonical_word for r in group])
    if strict and collisions:
        raise ToleranceCollision(
            f"{len(collisions)} trace shells contain multiple distinct "
            "canonical classes (expected for symmetric surfaces)")
    return LengthSpectrum(records, max_word_length, max_geodesic_length,
                          dedup_tolerance, ball.det_drift, collisions)


def counting_function(spectrum, ell):
    """Number of oriented classes with length <= ell."""
    if ell > spectrum.max_geodesic_length + 1e-9:
        raise BeyondHorizon(
            f"ell = {ell} exceeds the enumerated horizon "
            f"{spectrum.max_geodesic_length}")
    return int(np.count_nonzero(spectrum.lengths() <= ell + 1e-12))


@dataclass(frozen=True)
class EntropyFit:
    h_hat: float
    window: tuple
    shell_count: int

    def __float__(self):
        return self.h_hat


def entropy_fit(spectrum):
    """Least-squares slope of log N(l) over the upper half of the range."""
    shells = spectrum.shells()
    if len(shells) < 3:
        raise InsufficientData(
            f"{len(shells)} length shells; at least 3 required")
    lengths = np.array([s[0] for s in shells])
    counts = np.cumsum([s[1] for s in shells])
    lo = spectrum.max_geodesic_length / 2.0
    mask = lengths >= lo
    if mask.sum() < 2:
        raise InsufficientData("fewer than 2 shells in the fit window")
    slope = np.polyfit(lengths[mask], np.log(counts[mask]), 1)[0]
    return EntropyFit(h_hat=float(slope),
                      window=(float(lengths[mask][0]), float(lengths[-1])),
                      shell_count=int(mask.sum()))


def dedup_crosscheck(presentation, max_word_length=8,
                     max_geodesic_length=7.0):
    """Class counts from the trace-bucket/conjugation pipeline versus an
    exhaustive exact canonical-word dedup of every enumerated element."""
    spectrum = enumerate_classes(presentation, max_word_length,
                                 max_geodesic_length)
    gens = presentation.float_generators()
    radius = _ball_radius(presentation, max_word_length,
                          max_geodesic_length, PRUNE_BUFFER)
    ball = _explore_ball(gens, max_word_length, radius)
    cand = _candidate_set(ball, max_geodesic_length)
    variants = presentation.relator_variants()
    words = {canonical_cyclic_word(ball.word_of(int(i)), variants)
             for i in cand}
    return len(spectrum.records), len(words)


def load_spectrum_csv(text):
    """Inverse of LengthSpectrum.to_csv (records only; horizon inferred)."""
    rows = list(csv.DictReader(io.StringIO(text)))
    records = [ConjugacyClassRecord(
        canonical_word=r["canonical_word"],
        trace=float(r["trace"]),
        length=float(r["length"]),
        primitive=r["primitive"] == "true",
        power_of=None,
        orientation_partner=r["orientation_partner"],
    ) for r in rows]
    horizon = max((r.length for r in records), default=0.0)
    return LengthSpectrum(records, 0, horizon, 1e-9, 0.0)
