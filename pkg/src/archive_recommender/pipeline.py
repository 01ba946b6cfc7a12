"""End-to-end recommendation pipeline.

Given a requested URI (and optional datetime), find the most similar
archived pages: look the URI up in the ontology; failing that, classify it
to a first-level category, refine with the deep classifier, collect the
winning category's member pages, drop everything the archives don't hold,
and rank the rest.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Iterable

from .archives import EvidenceService
from .deep import (
    CategoryVectorIndex,
    DeepClassificationError,
    GramScheme,
    build_vector_index,
    classify_deep,
    prune_tree,
    top_candidates,
)
from .metrics import EvalReport, cross_validate
from .nbayes import NaiveBayesModel, classify as nb_classify, train as nb_train
from .ontology import (
    CategoryIndex,
    CategoryPath,
    OntologyProvider,
    lookup_requested,
)
from .ranking import CandidatePage, RankWeights, Recommendation, rank
from .uri import TokenMethod, TokenVariant, canonicalize_surt, parse_uri, tokenize

__all__ = [
    "L1_METHOD",
    "L1_VARIANTS",
    "REASON_UNCLASSIFIABLE",
    "REASON_NO_CANDIDATES",
    "REASON_NO_ARCHIVED",
    "RecommendationRequest",
    "RecommendationResult",
    "Recommender",
    "build_l1_corpus",
    "train_l1",
    "evaluate_l1",
]

# Default first-level configuration: the best-performing tokenization found
# in evaluation — all-grams over the cleaned URI with the TLD and digits
# stripped first.
L1_METHOD = TokenMethod.ALL_GRAMS_URI
L1_VARIANTS = frozenset({TokenVariant.STRIP_TLD, TokenVariant.STRIP_NUMBERS})

REASON_UNCLASSIFIABLE = "unclassifiable"
REASON_NO_CANDIDATES = "no candidates"
REASON_NO_ARCHIVED = "no archived candidates"


@dataclass(frozen=True)
class RecommendationRequest:
    uri: str
    datetime: datetime | None = None
    top_n: int = 10
    weights: RankWeights = RankWeights()
    grams: GramScheme = GramScheme.ALL_GRAM
    temporal_as_similarity: bool = True

    def __post_init__(self):
        parse_uri(self.uri, assume_http=True)
        if self.top_n < 1:
            raise ValueError("top_n must be at least 1")


@dataclass
class RecommendationResult:
    request: RecommendationRequest
    route: str  # "ontology-hit" | "classified-deep" | "classified-shallow" | "none"
    category: str | None
    recommendations: list[Recommendation]
    trace: tuple[str, ...]
    reason: str | None = None
    dropped: tuple[tuple[str, str], ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def empty(self) -> bool:
        return not self.recommendations


def build_l1_corpus(index: CategoryIndex) -> list[tuple[str, str]]:
    """(uri, first-level label) pairs for training and cross-validation."""
    return [(entry.uri, entry.category.top) for entry in index.all_entries()]


def train_l1(
    index: CategoryIndex,
    method: TokenMethod = L1_METHOD,
    variants: Iterable[TokenVariant] = L1_VARIANTS,
    smoothing: float = 1.0,
) -> NaiveBayesModel:
    """Train the first-level classifier on every indexed entry's URI."""
    variant_set = frozenset(variants)
    corpus = [
        (tokenize(uri, method, variant_set), label)
        for uri, label in build_l1_corpus(index)
    ]
    return nb_train(corpus, smoothing)


def evaluate_l1(
    index: CategoryIndex,
    method: TokenMethod = L1_METHOD,
    variants: Iterable[TokenVariant] = L1_VARIANTS,
    folds: int = 10,
    smoothing: float = 1.0,
) -> EvalReport:
    """k-fold cross-validation of first-level classification over the index."""
    return cross_validate(build_l1_corpus(index), method, variants, folds, smoothing)


class Recommender:
    """Orchestrates the four pipeline steps against pluggable providers.

    The first-level model is trained lazily from the index when none is
    supplied; per-top-category vector indexes for the deep stage are built
    on first use and cached for the life of the instance.
    """

    def __init__(
        self,
        index: CategoryIndex,
        evidence: EvidenceService,
        model: NaiveBayesModel | None = None,
        secondary: OntologyProvider | None = None,
        n_deep_candidates: int = 10,
        smoothing: float = 1.0,
    ):
        self.index = index
        self.evidence = evidence
        self.model = model
        self.secondary = secondary
        self.n_deep_candidates = n_deep_candidates
        self.smoothing = smoothing
        self._subtrees: dict[tuple[str, GramScheme], tuple[CategoryIndex, CategoryVectorIndex]] = {}

    def _l1_model(self) -> NaiveBayesModel:
        if self.model is None:
            self.model = train_l1(self.index, smoothing=self.smoothing)
        return self.model

    def _subtree(self, top: str, grams: GramScheme) -> tuple[CategoryIndex, CategoryVectorIndex]:
        key = (top, grams)
        if key not in self._subtrees:
            entries = self.index.entries_under(CategoryPath((top,)))
            if not entries:
                raise DeepClassificationError(f"no indexed entries under {top}")
            sub_index = CategoryIndex(entries)
            self._subtrees[key] = (sub_index, build_vector_index(sub_index, grams))
        return self._subtrees[key]

    def recommend(self, request: RecommendationRequest, now: datetime | None = None) -> RecommendationResult:
        trace: list[str] = []
        warnings: list[str] = []
        now_dt = now or datetime.now(timezone.utc)
        requested_dt = request.datetime or now_dt
        requested_surt = canonicalize_surt(request.uri)

        def empty(route: str, category: CategoryPath | None, reason: str) -> RecommendationResult:
            return RecommendationResult(
                request=request,
                route=route,
                category=None if category is None else str(category),
                recommendations=[],
                trace=tuple(trace),
                reason=reason,
                warnings=tuple(warnings),
            )

        # Step 0: is the requested URI already categorized somewhere?
        outcome = lookup_requested(self.index, self.secondary, request.uri)
        if outcome.warning:
            warnings.append(outcome.warning)
        if outcome.found and any(e.surt != requested_surt for e in outcome.entries):
            route = "ontology-hit"
            category = outcome.category
            entries = outcome.entries
            trace.append(f"step0: found in {outcome.source} ontology under {category}")
        else:
            if outcome.found:
                trace.append(
                    f"step0: found in {outcome.source} ontology under {outcome.category} "
                    "but with no other members; classifying instead"
                )
            else:
                trace.append("step0: requested URI not in any ontology")

            # Step 1: first-level classification from the URI alone.
            model = self._l1_model()
            method = model.method or L1_METHOD
            variants = model.variants if model.method is not None else L1_VARIANTS
            outcome_l1 = nb_classify(model, tokenize(request.uri, method, variants))
            if outcome_l1.label is None:
                trace.append("step1: no known features; unclassifiable at the first level")
                return empty("none", None, REASON_UNCLASSIFIABLE)
            top = outcome_l1.label
            top_posterior = dict(outcome_l1.posteriors)[top]
            trace.append(f"step1: first-level category {top} (posterior {top_posterior:.6f})")

            # Step 2: refine within the first-level subtree.
            query = tokenize(request.uri, TokenMethod.TOKENS)
            try:
                sub_index, vindex = self._subtree(top, request.grams)
                candidates = top_candidates(vindex, query, self.n_deep_candidates)
                if not candidates:
                    raise DeepClassificationError("no category shares vocabulary with the query")
                tree = prune_tree([c.path for c in candidates])
                category = classify_deep(tree, sub_index, query, request.grams, self.smoothing)
                route = "classified-deep"
                trace.append(
                    f"step2: deep category {category} "
                    f"(from {len(candidates)} candidates, {len(tree.nodes)} tree nodes)"
                )
                entries = self.index.entries_for(category) or self.index.entries_under(category)
            except DeepClassificationError as exc:
                route = "classified-shallow"
                category = CategoryPath((top,))
                entries = self.index.entries_under(category)
                trace.append(f"step2: deep classification failed ({exc}); using all {top} entries")

        # The requested page must never recommend itself.
        before = len(entries)
        entries = [e for e in entries if e.surt != requested_surt]
        if len(entries) != before:
            trace.append("candidates: excluded the requested URI itself")
        if not entries:
            return empty(route, category, REASON_NO_CANDIDATES)

        # Step 3: keep only candidates the archives actually hold.
        evidence_list = self.evidence.gather([e.uri for e in entries], requested_dt)
        pages: list[CandidatePage] = []
        dropped: list[tuple[str, str]] = []
        for entry, ev in zip(entries, evidence_list):
            if ev.error is not None:
                dropped.append((entry.uri, f"evidence unavailable: {ev.error}"))
            elif not ev.archive.archived:
                dropped.append((entry.uri, "not archived"))
            else:
                pages.append(
                    CandidatePage(
                        uri=entry.uri,
                        archive=ev.archive,
                        popularity=ev.popularity,
                        damage=ev.damage,
                        entry=entry,
                    )
                )
        trace.append(f"step3: {len(pages)} of {len(entries)} candidates are archived")
        if not pages:
            return RecommendationResult(
                request=request,
                route=route,
                category=str(category),
                recommendations=[],
                trace=tuple(trace),
                reason=REASON_NO_ARCHIVED,
                dropped=tuple(dropped),
                warnings=tuple(warnings),
            )

        # Step 4: score and order.
        request_tokens = set(tokenize(request.uri, TokenMethod.TOKENS))
        recommendations = rank(
            pages,
            request.weights,
            request.top_n,
            request_tokens=request_tokens,
            requested=requested_dt,
            upper_bound=now_dt,
            temporal_as_similarity=request.temporal_as_similarity,
        )
        path_note = f"path: {route}"
        recommendations = [
            replace(r, explanations=r.explanations + (path_note,)) for r in recommendations
        ]
        trace.append(f"step4: ranked {len(pages)} candidates, returning {len(recommendations)}")
        return RecommendationResult(
            request=request,
            route=route,
            category=str(category),
            recommendations=recommendations,
            trace=tuple(trace),
            dropped=tuple(dropped),
            warnings=tuple(warnings),
        )
