"""Deep (multi-level) category assignment.

Per-category TF vectors are built from each entry's URI tokens plus its
title and description words; the query is scored against every category by
mean cosine similarity, the top N categories become candidates, the
candidate set is pruned with the ancestor-assistance rule, and a Naive
Bayes model over the candidates picks the final path.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from . import nbayes
from .ontology import CategoryIndex, CategoryPath, OntologyEntry
from .uri import TokenBag, TokenMethod, tokenize

__all__ = [
    "GramScheme",
    "CandidateCategory",
    "CategoryVectorIndex",
    "PrunedTree",
    "DeepClassificationError",
    "entry_features",
    "expand_query",
    "cosine",
    "build_vector_index",
    "top_candidates",
    "prune_tree",
    "classify_deep",
    "evaluate_levels",
    "save_vector_index",
    "load_vector_index",
    "DeepEvalReport",
    "evaluate_deep",
]

_WORD_RUN = re.compile(r"[a-z]+")
_SCHEME_TOKENS = frozenset({"http", "https"})


class GramScheme(Enum):
    THREE_GRAM = "3"
    ALL_GRAM = "all"


class DeepClassificationError(Exception):
    """Deep stage could not produce a category (caller falls back to level 1)."""


def _text_tokens(text: str) -> list[str]:
    return [
        t for t in _WORD_RUN.findall(text.lower()) if len(t) > 2 and t not in _SCHEME_TOKENS
    ]


def _expand_token(token: str, grams: GramScheme) -> Iterable[str]:
    if grams is GramScheme.THREE_GRAM:
        n = 3
        if len(token) < n:
            yield token
            return
        for i in range(len(token) - n + 1):
            yield token[i : i + n]
        return
    if len(token) < 4:
        yield token
        return
    for n in range(4, 9):
        for i in range(len(token) - n + 1):
            yield token[i : i + n]


def _expand_tokens(tokens: Iterable[str], grams: GramScheme) -> list[str]:
    return [g for t in tokens for g in _expand_token(t, grams)]


def entry_features(entry: OntologyEntry, grams: GramScheme) -> list[str]:
    """Gram features of one ontology entry: URI tokens plus title and
    description words, all expanded with the same scheme."""
    tokens = list(tokenize(entry.uri, TokenMethod.TOKENS).features)
    for text in (entry.title, entry.description):
        if text:
            tokens.extend(_text_tokens(text))
    return _expand_tokens(tokens, grams)


def expand_query(query: TokenBag | Sequence[str], grams: GramScheme) -> list[str]:
    """Featurize the requested URI for the deep stage. A TOKENS bag is
    gram-expanded; anything else is taken as pre-expanded features."""
    if isinstance(query, TokenBag):
        if query.method is TokenMethod.TOKENS:
            return _expand_tokens(query.features, grams)
        return list(query.features)
    return list(query)


@dataclass(frozen=True)
class CandidateCategory:
    path: CategoryPath
    score: float


@dataclass
class CategoryVectorIndex:
    grams: GramScheme
    vectors: dict[str, list[Counter[str]]]
    excluded: int = 0


def build_vector_index(index: CategoryIndex, grams: GramScheme) -> CategoryVectorIndex:
    """TF vectors per deepest category path; entries with no extractable
    features are excluded (counted)."""
    if not len(index):
        raise ValueError("cannot build a vector index from an empty category index")
    vectors: dict[str, list[Counter[str]]] = {}
    excluded = 0
    for path in index.categories():
        rows: list[Counter[str]] = []
        for entry in index.entries_for(path):
            counts = Counter(entry_features(entry, grams))
            if counts:
                rows.append(counts)
            else:
                excluded += 1
        vectors[str(path)] = rows
    return CategoryVectorIndex(grams=grams, vectors=vectors, excluded=excluded)


def cosine(a: Counter[str], b: Counter[str]) -> float:
    if not a or not b:
        return 0.0
    if len(b) < len(a):
        a, b = b, a
    dot = sum(count * b[feature] for feature, count in a.items() if feature in b)
    if not dot:
        return 0.0
    norm_a = math.sqrt(sum(c * c for c in a.values()))
    norm_b = math.sqrt(sum(c * c for c in b.values()))
    return dot / (norm_a * norm_b)


def top_candidates(
    vindex: CategoryVectorIndex,
    query: TokenBag | Sequence[str],
    n: int = 10,
) -> list[CandidateCategory]:
    """Top-n categories by mean cosine similarity to the query; categories
    with zero similarity are omitted, so an orthogonal query yields []."""
    if n < 1:
        raise ValueError("n must be at least 1")
    qvec = Counter(expand_query(query, vindex.grams))
    if not qvec:
        return []
    scored: list[CandidateCategory] = []
    for path_text, rows in vindex.vectors.items():
        if not rows:
            continue
        score = sum(cosine(qvec, row) for row in rows) / len(rows)
        if score > 0.0:
            scored.append(CandidateCategory(CategoryPath.parse(path_text), score))
    scored.sort(key=lambda c: (-c.score, c.path))
    return scored[:n]


@dataclass(frozen=True)
class PrunedTree:
    nodes: frozenset[CategoryPath]
    candidates: frozenset[CategoryPath]

    def __post_init__(self):
        if not self.candidates:
            raise ValueError("pruned tree needs at least one candidate")
        if not self.candidates <= self.nodes:
            raise ValueError("every candidate must be a node")
        for node in self.nodes - self.candidates:
            if not any(node.is_prefix_of(c) and node != c for c in self.candidates):
                raise ValueError(f"non-candidate node {node} is not an ancestor of any candidate")


def _common_prefix_len(a: CategoryPath, b: CategoryPath) -> int:
    n = 0
    for x, y in zip(a.labels, b.labels):
        if x != y:
            break
        n += 1
    return n


def prune_tree(candidates: Sequence[CategoryPath]) -> PrunedTree:
    """Ancestor-assistance pruning.

    The implicit root is the shared level-1 label when all candidates agree
    on it, else the empty super-root. A candidate sharing an ancestor below
    the root with another candidate stands alone; an isolated candidate
    additionally retains its ancestor chain (everything below the root).
    """
    if not candidates:
        raise ValueError("no candidate categories to prune")
    ordered = list(dict.fromkeys(candidates))
    root_len = 1 if len({c.labels[0] for c in ordered}) == 1 else 0
    nodes: set[CategoryPath] = set(ordered)
    for candidate in ordered:
        supported = any(
            _common_prefix_len(candidate, other) > root_len
            for other in ordered
            if other != candidate
        )
        if not supported:
            for ancestor in candidate.ancestors():
                if len(ancestor) > root_len:
                    nodes.add(ancestor)
    return PrunedTree(nodes=frozenset(nodes), candidates=frozenset(ordered))


def classify_deep(
    tree: PrunedTree,
    index: CategoryIndex,
    query: TokenBag | Sequence[str],
    grams: GramScheme = GramScheme.ALL_GRAM,
    smoothing: float = 1.0,
) -> CategoryPath:
    """Final deep assignment: NB over the tree's candidate paths, trained on
    each candidate category's member entries."""
    corpus: list[tuple[Sequence[str], str]] = []
    usable_classes = 0
    for path in sorted(tree.candidates):
        documents = [
            features
            for entry in index.entries_for(path)
            if (features := entry_features(entry, grams))
        ]
        if not documents:
            continue
        usable_classes += 1
        corpus.extend((features, str(path)) for features in documents)
    if not usable_classes:
        raise DeepClassificationError("no candidate category has usable documents")
    model = nbayes.train(corpus, smoothing)
    outcome = nbayes.classify(model, expand_query(query, grams))
    if outcome.unclassifiable:
        raise DeepClassificationError("query shares no vocabulary with the candidates")
    return CategoryPath.parse(outcome.label)


def evaluate_levels(truth: CategoryPath, predicted: CategoryPath, level: int) -> bool:
    """True iff both paths reach `level` and agree on the first `level` labels."""
    if level < 1:
        raise ValueError("level must be at least 1")
    if len(truth) < level or len(predicted) < level:
        return False
    return truth.labels[:level] == predicted.labels[:level]


# ---------------------------------------------------------------------------
# Vector-index persistence (plain text; avoids re-tokenizing large ontologies)

_VEC_MAGIC = "archrec-vec 1"


def save_vector_index(vindex: CategoryVectorIndex, path: str | Path) -> None:
    lines = [_VEC_MAGIC, f"grams {vindex.grams.value}", f"excluded {vindex.excluded}"]
    for key in sorted(vindex.vectors):
        lines.append(f"cat\t{key}")
        for row in vindex.vectors[key]:
            pairs = " ".join(f"{feature}:{row[feature]}" for feature in sorted(row))
            lines.append(f"vec\t{pairs}")
    Path(path).write_text("\n".join(lines) + "\n", "utf-8")


def load_vector_index(path: str | Path) -> CategoryVectorIndex:
    lines = Path(path).read_text("utf-8").splitlines()
    if not lines or lines[0] != _VEC_MAGIC:
        raise ValueError(f"{path}: not a recognized vector index file")
    grams = GramScheme(lines[1].split(" ", 1)[1])
    excluded = int(lines[2].split(" ", 1)[1])
    vectors: dict[str, list[Counter[str]]] = {}
    current: list[Counter[str]] | None = None
    for line in lines[3:]:
        if not line.strip():
            continue
        kind, _, rest = line.partition("\t")
        if kind == "cat":
            current = vectors.setdefault(rest, [])
        elif kind == "vec":
            if current is None:
                raise ValueError(f"{path}: vector before any category")
            row: Counter[str] = Counter()
            if rest:
                for pair in rest.split(" "):
                    feature, _, count = pair.rpartition(":")
                    row[feature] = int(count)
            current.append(row)
        else:
            raise ValueError(f"{path}: unrecognized record {line!r}")
    return CategoryVectorIndex(grams=grams, vectors=vectors, excluded=excluded)


# ---------------------------------------------------------------------------
# Per-level evaluation harness


@dataclass
class DeepEvalReport:
    """Per-level Mi-F1 over a held-out slice, with full-path breakdowns.

    ``levels[k]`` = |items whose truth has ≥k labels and whose prediction
    matches the first k| / |all evaluated holdout items| — the denominator is
    fixed, so the curve is non-increasing in k by construction. Breakdown
    maps give the fraction of items predicted correctly to their truth's
    full depth, grouped by top category, URI depth, hostname dictionary-word
    composition, and long-string presence.
    """

    levels: dict[int, float]
    holdout: int
    failures: int
    skipped_categories: list[str]
    by_category: dict[str, float]
    by_depth: dict[int, float]
    by_dictionary: dict[str, float]
    by_long_strings: dict[bool, float]

    def to_records(self) -> list[dict]:
        records = [
            {"section": "level", "key": k, "mi_f1": round(v, 4)}
            for k, v in sorted(self.levels.items())
        ]
        records.append(
            {
                "section": "summary",
                "holdout": self.holdout,
                "failures": self.failures,
                "skipped_categories": len(self.skipped_categories),
            }
        )
        for section, mapping in (
            ("category", self.by_category),
            ("depth", self.by_depth),
            ("dictionary_words", self.by_dictionary),
            ("long_strings", self.by_long_strings),
        ):
            for key, value in sorted(mapping.items(), key=lambda kv: str(kv[0])):
                records.append(
                    {"section": section, "key": key, "full_path_accuracy": round(value, 4)}
                )
        return records

    def to_table(self) -> str:
        lines = ["level   Mi-F1"]
        for k, v in sorted(self.levels.items()):
            lines.append(f"{k:>5}   {v:.4f}")
        lines.append(f"holdout {self.holdout}   deep failures {self.failures}")
        if self.skipped_categories:
            lines.append(f"skipped categories: {', '.join(self.skipped_categories)}")
        for title, mapping in (
            ("full-path accuracy by top category", self.by_category),
            ("full-path accuracy by URI depth", self.by_depth),
            ("full-path accuracy by dictionary words", self.by_dictionary),
            ("full-path accuracy by long strings", self.by_long_strings),
        ):
            if mapping:
                lines.append(title)
                for key, value in sorted(mapping.items(), key=lambda kv: str(kv[0])):
                    lines.append(f"  {str(key):<24}{value:.4f}")
        return "\n".join(lines) + "\n"


def evaluate_deep(
    index: CategoryIndex,
    holdout_fraction: float = 0.1,
    grams: GramScheme = GramScheme.ALL_GRAM,
    n_candidates: int = 10,
    smoothing: float = 1.0,
) -> DeepEvalReport:
    """Hold out a deterministic stride of entries, treat each item's
    level-1 label as given, run the deep stage within that top category's
    training subtree, and score per level."""
    from .reports import registrable_letters
    from .uri import depth as uri_depth, detect_patterns, parse_uri
    from .words import WordLexicon, segment_words

    if not 0.0 < holdout_fraction < 1.0:
        raise ValueError("holdout_fraction must be in (0, 1)")
    entries = list(index.all_entries())
    stride = max(2, round(1.0 / holdout_fraction))
    holdout = [e for i, e in enumerate(entries) if i % stride == 0]
    training = [e for i, e in enumerate(entries) if i % stride != 0]
    training_index = CategoryIndex(training)

    vindex_cache: dict[str, CategoryVectorIndex] = {}
    lexicon = WordLexicon.bundled()

    skipped: set[str] = set()
    evaluated: list[tuple[OntologyEntry, CategoryPath]] = []
    failures = 0
    for entry in holdout:
        top = entry.category.top
        top_path = CategoryPath((top,))
        subtree = training_index.entries_under(top_path)
        if not subtree:
            skipped.add(top)
            continue
        if top not in vindex_cache:
            vindex_cache[top] = build_vector_index(CategoryIndex(subtree), grams)
        query = tokenize(entry.uri, TokenMethod.TOKENS)
        candidates = top_candidates(vindex_cache[top], query, n_candidates)
        predicted = top_path
        if candidates:
            try:
                predicted = classify_deep(
                    prune_tree([c.path for c in candidates]),
                    training_index,
                    query,
                    grams,
                    smoothing,
                )
            except DeepClassificationError:
                failures += 1
        else:
            failures += 1
        evaluated.append((entry, predicted))

    total = len(evaluated)
    max_level = max((len(e.category) for e, _ in evaluated), default=1)
    levels = {
        k: (
            sum(1 for e, p in evaluated if evaluate_levels(e.category, p, k)) / total
            if total
            else 0.0
        )
        for k in range(1, max_level + 1)
    }

    def full_match(entry: OntologyEntry, predicted: CategoryPath) -> bool:
        return evaluate_levels(entry.category, predicted, len(entry.category))

    tallies: dict[tuple[str, object], list[int]] = {}
    for entry, predicted in evaluated:
        correct = full_match(entry, predicted)
        parsed = parse_uri(entry.uri, assume_http=True)
        letters = registrable_letters(parsed.registered_domain, parsed.tld)
        pieces = segment_words(letters, lexicon) if letters else []
        if pieces and all(p.is_word for p in pieces):
            dictionary = "all"
        elif any(p.is_word for p in pieces):
            dictionary = "some"
        else:
            dictionary = "none"
        keys = (
            ("category", entry.category.top),
            ("depth", uri_depth(entry.uri)),
            ("dictionary", dictionary),
            ("long", detect_patterns(entry.uri).long_strings.hostname),
        )
        for section, key in keys:
            bucket = tallies.setdefault((section, key), [0, 0])
            bucket[0] += int(correct)
            bucket[1] += 1

    def ratios(section: str) -> dict:
        return {
            key: hit / seen
            for (s, key), (hit, seen) in sorted(tallies.items(), key=lambda kv: str(kv[0]))
            if s == section and seen
        }

    return DeepEvalReport(
        levels=levels,
        holdout=total,
        failures=failures,
        skipped_categories=sorted(skipped),
        by_category=ratios("category"),
        by_depth=ratios("depth"),
        by_dictionary=ratios("dictionary"),
        by_long_strings=ratios("long"),
    )
