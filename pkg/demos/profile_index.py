"""Load the bundled category index and look around in it.

Run from the repository root:

    python3 demos/profile_index.py
"""
from pathlib import Path

from archive_recommender.ontology import corpus_stats, load_index
from archive_recommender.uri import canonicalize_surt

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

VIRGINIA = (
    "Computers/Computer_Science/Academic_Departments/North_America/United_States/Virginia"
)


def main() -> None:
    index = load_index(FIXTURES / "index.tsv")
    print(f"loaded {len(index)} entries in {len(index.by_category)} categories\n")

    print("one category in full:")
    for entry in index.entries_for(VIRGINIA):
        print(f"  {entry.uri}")
    print()

    print("membership check by canonical (SURT) form:")
    for probe in ("https://CS.ODU.EDU:443/", "http://cs.odu.edu", "http://nowhere.example/"):
        hit = index.lookup_surt(canonicalize_surt(probe))
        where = hit.category if hit else "(not in the index)"
        print(f"  {probe:32} -> {where}")
    print()

    print(corpus_stats(index).to_table())


if __name__ == "__main__":
    main()
