"""Inspect the archive evidence gathered for candidate URIs.

A TimeMap lists every known memento (archived snapshot) of a URI; the
evidence layer adds a popularity estimate and a capture-damage score,
fetching all three per candidate. Run from the repository root:

    python3 demos/archive_evidence.py
"""
from datetime import datetime, timezone
from pathlib import Path

from archive_recommender.archives import (
    EvidenceService,
    FixtureArchiveSource,
    FixtureDamageProvider,
    FixturePopularityProvider,
    nearest_memento,
)

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

CANDIDATES = [
    "http://cs.odu.edu",        # paged TimeMap: the aggregator splits it in two
    "http://cs.gmu.edu",
    "http://radford.edu/content/csat/home/itec.html",  # never archived
]


def main() -> None:
    service = EvidenceService(
        FixtureArchiveSource(FIXTURES / "timemaps"),
        FixturePopularityProvider(FIXTURES / "popularity.tsv"),
        FixtureDamageProvider(FIXTURES / "damage.tsv"),
    )
    wanted = datetime(2014, 3, 1, tzinfo=timezone.utc)

    for evidence in service.gather(CANDIDATES, wanted):
        archive = evidence.archive
        print(evidence.uri)
        if not archive.archived:
            print("  not archived anywhere\n")
            continue
        print(f"  mementos: {archive.memento_count}" + (" (truncated)" if archive.truncated else ""))
        for when, memento_uri in archive.mementos:
            print(f"    {when:%Y-%m-%d %H:%M:%S}  {memento_uri}")
        when, uri = nearest_memento(archive, wanted)
        print(f"  nearest to {wanted:%Y-%m-%d}: {when:%Y-%m-%d %H:%M:%S}")
        rank = evidence.popularity.global_rank if evidence.popularity else None
        print(f"  popularity rank: {rank if rank is not None else 'unknown'}")
        damage = evidence.damage
        print(f"  damage: {damage.damage if damage else 'unknown'}"
              + (f" ({damage.source.value})" if damage else ""))
        print()


if __name__ == "__main__":
    main()
