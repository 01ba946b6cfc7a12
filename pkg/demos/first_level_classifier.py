"""Train the first-level URI classifier and cross-validate it.

The classifier never sees page content — only character n-grams drawn
from the URI string itself. Run from the repository root:

    python3 demos/first_level_classifier.py
"""
from pathlib import Path

from archive_recommender.metrics import majority_baseline
from archive_recommender.nbayes import classify
from archive_recommender.ontology import load_index
from archive_recommender.pipeline import build_l1_corpus, evaluate_l1, train_l1
from archive_recommender.uri import TokenMethod, TokenVariant, tokenize

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
VARIANTS = {TokenVariant.STRIP_TLD, TokenVariant.STRIP_NUMBERS}

PROBES = [
    "http://odu.edu/compsci",
    "http://littleleague-rosters.us/",
    "http://jazzfestival.example.org/lineup",
]


def main() -> None:
    index = load_index(FIXTURES / "index.tsv")
    model = train_l1(index)
    print(f"trained on {len(index)} URIs, {len(model.classes)} top-level categories\n")

    for uri in PROBES:
        bag = tokenize(uri, TokenMethod.ALL_GRAMS_URI, VARIANTS)
        outcome = classify(model, bag)
        top3 = ", ".join(f"{label} {p:.3f}" for label, p in outcome.posteriors[:3])
        print(f"{uri}\n  -> {outcome.label}   ({top3})\n")

    print("10-fold cross-validation over the bundled corpus:")
    report = evaluate_l1(index)
    baseline = majority_baseline(label for _, label in build_l1_corpus(index))
    print(report.to_table())
    print(f"majority baseline accuracy: {baseline:.4f}")


if __name__ == "__main__":
    main()
