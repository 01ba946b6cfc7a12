"""Turn a raw server access log into a clean stream of candidate requests.

Each line must survive a chain of checks — successful status, parseable
URI, HTML-ish extension, hostname rather than bare IP, English-speaking
TLD, first sighting of that exact URI — before it is worth asking an
archive about. Run from the repository root:

    python3 demos/filter_access_log.py
"""
from pathlib import Path

from archive_recommender.logs import analyze_requests, filter_log_file

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def main() -> None:
    log_path = FIXTURES / "access_log_sample.log"
    survivors, stats = filter_log_file(log_path)

    print(f"filtered {log_path.name}:")
    for name, value in stats.as_dict().items():
        print(f"  {name:16} {value}")
    print()

    print("surviving request URIs, in arrival order:")
    for uri in survivors:
        print(f"  {uri}")
    print()

    print(analyze_requests(survivors).to_table())


if __name__ == "__main__":
    main()
