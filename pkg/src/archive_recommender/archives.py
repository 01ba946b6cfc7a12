"""External evidence: archive presence via Memento TimeMaps, domain
popularity rank, and archival-damage scores.

Every source sits behind a small provider interface with a live client and
a file-backed fixture implementation, so the whole test suite runs offline.
A persistent append-only cache keyed by (provider, kind, SURT) makes
repeated lookups idempotent within a cache epoch.
"""
from __future__ import annotations

import json
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from email.utils import parsedate_to_datetime
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Protocol, Sequence
from urllib.parse import quote

import requests

from .uri import canonicalize_surt, parse_uri

__all__ = [
    "RANK_FLOOR_DEFAULT",
    "ARCHIVE_COUNT_CEILING_DEFAULT",
    "ArchiveFetchError",
    "ArchiveEvidence",
    "PopularityEvidence",
    "DamageEvidence",
    "DamageSource",
    "parse_timemap_links",
    "evidence_from_timemap",
    "fetch_timemap",
    "nearest_memento",
    "fetch_popularity",
    "fetch_damage",
    "TimemapSource",
    "FixtureArchiveSource",
    "MemGatorClient",
    "PopularityProvider",
    "FixturePopularityProvider",
    "DamageProvider",
    "FixtureDamageProvider",
    "MementoDamageClient",
    "EvidenceCache",
    "CandidateEvidence",
    "EvidenceService",
]

# Popularity normalization constants: the lowest global rank observed on the
# rank provider, and the memento count of its top-ranked site.
RANK_FLOOR_DEFAULT = 30_000_000
ARCHIVE_COUNT_CEILING_DEFAULT = 538_300


class ArchiveFetchError(Exception):
    """Transient or malformed-response failure; retry is the caller's call.
    Distinct from "not archived", which is a normal empty result."""


class DamageSource(Enum):
    PROVIDER = "provider"
    FIXTURE = "fixture"
    DEFAULT_MISSING = "default_missing"


@dataclass(frozen=True)
class ArchiveEvidence:
    uri: str
    archived: bool
    memento_count: int
    mementos: tuple[tuple[datetime, str], ...]  # (datetime UTC, memento URI), sorted
    truncated: bool = False
    nearest_memento_uri: str | None = None

    def __post_init__(self):
        if self.archived != (self.memento_count > 0):
            raise ValueError("archived flag must equal memento_count > 0")
        if len(self.mementos) != self.memento_count:
            raise ValueError("memento list length must equal memento_count")

    @property
    def memento_datetimes(self) -> tuple[datetime, ...]:
        return tuple(dt for dt, _ in self.mementos)

    def to_json_dict(self) -> dict:
        return {
            "uri": self.uri,
            "mementos": [[dt.strftime("%Y-%m-%dT%H:%M:%SZ"), m] for dt, m in self.mementos],
            "truncated": self.truncated,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ArchiveEvidence":
        mementos = tuple(
            (datetime.strptime(dt, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=timezone.utc), m)
            for dt, m in data["mementos"]
        )
        return cls(
            uri=data["uri"],
            archived=bool(mementos),
            memento_count=len(mementos),
            mementos=mementos,
            truncated=data.get("truncated", False),
        )


@dataclass(frozen=True)
class PopularityEvidence:
    global_rank: int | None
    rank_floor: int = RANK_FLOOR_DEFAULT
    archive_count: int = 0
    archive_count_ceiling: int = ARCHIVE_COUNT_CEILING_DEFAULT
    clamped: bool = False

    def __post_init__(self):
        if self.global_rank is not None and not 1 <= self.global_rank <= self.rank_floor:
            raise ValueError("global_rank must lie in [1, rank_floor]")
        if self.archive_count > self.archive_count_ceiling:
            raise ValueError("archive_count above ceiling must be clamped by the fetcher")

    def to_json_dict(self) -> dict:
        return {"rank": self.global_rank}


@dataclass(frozen=True)
class DamageEvidence:
    damage: float
    source: DamageSource

    def __post_init__(self):
        if not 0.0 <= self.damage <= 1.0:
            raise ValueError("damage must lie in [0, 1]")

    def to_json_dict(self) -> dict:
        return {"damage": self.damage, "source": self.source.value}


# ---------------------------------------------------------------------------
# TimeMap (link-format) parsing


def _split_quoted(text: str, separator: str) -> list[str]:
    """Split on a separator that does not bind inside <...> or "..."."""
    parts: list[str] = []
    buf: list[str] = []
    in_angle = in_quote = False
    i = 0
    while i < len(text):
        ch = text[i]
        if in_quote:
            buf.append(ch)
            if ch == "\\" and i + 1 < len(text):
                buf.append(text[i + 1])
                i += 1
            elif ch == '"':
                in_quote = False
        elif ch == '"':
            in_quote = True
            buf.append(ch)
        elif ch == "<":
            in_angle = True
            buf.append(ch)
        elif ch == ">":
            in_angle = False
            buf.append(ch)
        elif ch == separator and not in_angle:
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
        i += 1
    parts.append("".join(buf))
    return parts


@dataclass(frozen=True)
class TimemapLink:
    target: str
    rel: tuple[str, ...]
    params: dict[str, str]

    @property
    def datetime(self) -> datetime | None:
        raw = self.params.get("datetime")
        if raw is None:
            return None
        try:
            parsed = parsedate_to_datetime(raw)
        except (TypeError, ValueError) as exc:
            raise ArchiveFetchError(f"bad datetime {raw!r} in TimeMap") from exc
        if parsed.tzinfo is None:
            parsed = parsed.replace(tzinfo=timezone.utc)
        return parsed.astimezone(timezone.utc)


def parse_timemap_links(text: str) -> list[TimemapLink]:
    """Parse link-format (`<uri>; rel="memento"; datetime="..."`) into links.
    Raises ArchiveFetchError on malformed input."""
    links: list[TimemapLink] = []
    for chunk in _split_quoted(text.replace("\n", " "), ","):
        chunk = chunk.strip()
        if not chunk:
            continue
        fields = [f.strip() for f in _split_quoted(chunk, ";")]
        if not fields[0].startswith("<") or ">" not in fields[0]:
            raise ArchiveFetchError(f"malformed link target {fields[0]!r}")
        target = fields[0][1 : fields[0].index(">")]
        params: dict[str, str] = {}
        for param in fields[1:]:
            if not param:
                continue
            key, eq, value = param.partition("=")
            if not eq:
                raise ArchiveFetchError(f"malformed link parameter {param!r}")
            value = value.strip()
            if value.startswith('"') and value.endswith('"') and len(value) >= 2:
                value = value[1:-1]
            params[key.strip().lower()] = value
        rel = tuple(params.get("rel", "").split())
        links.append(TimemapLink(target=target, rel=rel, params=params))
    return links


def evidence_from_timemap(uri: str, pages: Iterable[str], truncated: bool = False) -> ArchiveEvidence:
    """Fold one or more TimeMap pages into archive evidence."""
    mementos: list[tuple[datetime, str]] = []
    for text in pages:
        for link in parse_timemap_links(text):
            if "memento" not in link.rel:
                continue
            dt = link.datetime
            if dt is None:
                raise ArchiveFetchError(f"memento link without datetime: {link.target!r}")
            mementos.append((dt, link.target))
    mementos.sort()
    return ArchiveEvidence(
        uri=uri,
        archived=bool(mementos),
        memento_count=len(mementos),
        mementos=tuple(mementos),
        truncated=truncated,
    )


class TimemapSource(Protocol):
    def get_timemap(self, uri: str) -> str | None: ...

    def get_page(self, page_uri: str) -> str | None: ...


def fetch_timemap(source: TimemapSource, uri: str, max_pages: int = 5) -> ArchiveEvidence:
    """Fetch and parse the TimeMap for a URI, following up to ``max_pages``
    continuation pages (rel="next"). A missing TimeMap means not archived."""
    first = source.get_timemap(uri)
    if first is None:
        return ArchiveEvidence(uri=uri, archived=False, memento_count=0, mementos=())
    pages = [first]
    seen: set[str] = set()
    truncated = False
    next_uri = _next_page_uri(first)
    followed = 0
    while next_uri:
        if next_uri in seen or followed >= max_pages:
            truncated = followed >= max_pages
            break
        seen.add(next_uri)
        page = source.get_page(next_uri)
        if page is None:
            break
        pages.append(page)
        followed += 1
        next_uri = _next_page_uri(page)
    return evidence_from_timemap(uri, pages, truncated=truncated)


def _next_page_uri(page_text: str) -> str | None:
    for link in parse_timemap_links(page_text):
        if "next" in link.rel:
            return link.target
    return None


def nearest_memento(evidence: ArchiveEvidence, requested: datetime) -> tuple[datetime, str]:
    """Memento closest to the requested datetime; equidistant pairs resolve
    to the earlier capture."""
    if not evidence.archived:
        raise ValueError(f"{evidence.uri} has no mementos")
    return min(evidence.mementos, key=lambda m: (abs(m[0] - requested), m[0]))


# ---------------------------------------------------------------------------
# Concrete TimeMap sources


class FixtureArchiveSource:
    """Reads recorded TimeMaps from a directory; filename = percent-encoded
    URI + ".link". A missing file plays the role of an aggregator 404."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def _read(self, uri: str) -> str | None:
        path = self.directory / (quote(uri, safe="") + ".link")
        if not path.exists():
            return None
        return path.read_text("utf-8")

    def get_timemap(self, uri: str) -> str | None:
        return self._read(uri)

    def get_page(self, page_uri: str) -> str | None:
        return self._read(page_uri)


class MemGatorClient:
    """Memento aggregator client (GET <base>/timemap/link/<uri>)."""

    def __init__(self, base_url: str, timeout: float = 10.0, session: requests.Session | None = None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.session = session or requests.Session()

    def _get(self, url: str) -> str | None:
        try:
            response = self.session.get(url, timeout=self.timeout)
        except requests.RequestException as exc:
            raise ArchiveFetchError(f"aggregator request failed: {exc}") from exc
        if response.status_code == 404:
            return None
        if response.status_code != 200:
            raise ArchiveFetchError(f"aggregator returned {response.status_code} for {url}")
        return response.text

    def get_timemap(self, uri: str) -> str | None:
        return self._get(f"{self.base_url}/timemap/link/{uri}")

    def get_page(self, page_uri: str) -> str | None:
        return self._get(page_uri)


# ---------------------------------------------------------------------------
# Popularity and damage providers


class PopularityProvider(Protocol):
    def get_rank(self, domain: str) -> int | None: ...


class FixturePopularityProvider:
    """TSV of `domain<TAB>rank`, matched by registered domain."""

    def __init__(self, path: str | Path):
        self._ranks: dict[str, int] = {}
        for line in Path(path).read_text("utf-8").splitlines():
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            domain, _, rank = line.partition("\t")
            self._ranks[domain.strip().lower()] = int(rank)

    def get_rank(self, domain: str) -> int | None:
        return self._ranks.get(domain.lower())


def fetch_popularity(
    provider: PopularityProvider | None,
    uri: str,
    evidence: ArchiveEvidence,
    rank_floor: int = RANK_FLOOR_DEFAULT,
    count_ceiling: int = ARCHIVE_COUNT_CEILING_DEFAULT,
) -> PopularityEvidence:
    """Popularity inputs for a candidate: provider rank (missing stays
    missing) and the memento count, clamped to the ceiling with a flag."""
    rank = None
    if provider is not None:
        rank = provider.get_rank(parse_uri(uri, assume_http=True).registered_domain)
        if rank is not None:
            rank = max(1, min(rank, rank_floor))
    count = evidence.memento_count
    clamped = count > count_ceiling
    return PopularityEvidence(
        global_rank=rank,
        rank_floor=rank_floor,
        archive_count=min(count, count_ceiling),
        archive_count_ceiling=count_ceiling,
        clamped=clamped,
    )


class DamageProvider(Protocol):
    def get_damage(self, memento_uri: str) -> float | None: ...


class FixtureDamageProvider:
    """TSV of `memento URI<TAB>damage in [0,1]`, matched exactly."""

    source = DamageSource.FIXTURE

    def __init__(self, path: str | Path):
        self._damage: dict[str, float] = {}
        for line in Path(path).read_text("utf-8").splitlines():
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            memento, _, value = line.partition("\t")
            self._damage[memento.strip()] = float(value)

    def get_damage(self, memento_uri: str) -> float | None:
        return self._damage.get(memento_uri)


class MementoDamageClient:
    """Client for a damage-scoring service exposing /api/damage/<uri>."""

    source = DamageSource.PROVIDER

    def __init__(self, base_url: str, timeout: float = 30.0, session: requests.Session | None = None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.session = session or requests.Session()

    def get_damage(self, memento_uri: str) -> float | None:
        url = f"{self.base_url}/api/damage/{quote(memento_uri, safe='')}"
        try:
            response = self.session.get(url, timeout=self.timeout)
        except requests.RequestException as exc:
            raise ArchiveFetchError(f"damage request failed: {exc}") from exc
        if response.status_code == 404:
            return None
        if response.status_code != 200:
            raise ArchiveFetchError(f"damage service returned {response.status_code}")
        value = response.json().get("total_damage")
        return None if value is None else max(0.0, min(1.0, float(value)))


def fetch_damage(provider: DamageProvider | None, memento_uri: str) -> DamageEvidence:
    """Damage for a memento; a miss falls back to the documented neutral 0.5."""
    if provider is not None:
        value = provider.get_damage(memento_uri)
        if value is not None:
            source = getattr(provider, "source", DamageSource.PROVIDER)
            return DamageEvidence(damage=value, source=source)
    return DamageEvidence(damage=0.5, source=DamageSource.DEFAULT_MISSING)


# ---------------------------------------------------------------------------
# Cache


class EvidenceCache:
    """Append-only JSON Lines cache keyed by (provider, kind, SURT).

    Later records supersede earlier ones; entries older than ``max_age``
    seconds are treated as misses so they get refetched.
    """

    def __init__(self, path: str | Path, max_age: float | None = None, clock: Callable[[], float] = time.time):
        self.path = Path(path)
        self.max_age = max_age
        self._clock = clock
        self._lock = threading.Lock()
        self._entries: dict[tuple[str, str, str], tuple[float, dict]] = {}
        if self.path.exists():
            for line in self.path.read_text("utf-8").splitlines():
                if not line.strip():
                    continue
                record = json.loads(line)
                key = (record["provider"], record["kind"], record["surt"])
                self._entries[key] = (record["fetched_at"], record["value"])

    def get(self, provider: str, kind: str, surt: str) -> dict | None:
        with self._lock:
            hit = self._entries.get((provider, kind, surt))
        if hit is None:
            return None
        fetched_at, value = hit
        if self.max_age is not None and self._clock() - fetched_at > self.max_age:
            return None
        return value

    def put(self, provider: str, kind: str, surt: str, value: dict) -> None:
        record = {
            "provider": provider,
            "kind": kind,
            "surt": surt,
            "fetched_at": self._clock(),
            "value": value,
        }
        line = json.dumps(record, sort_keys=True)
        with self._lock:
            self._entries[(provider, kind, surt)] = (record["fetched_at"], value)
            with open(self.path, "a", encoding="utf-8") as handle:
                handle.write(line + "\n")


# ---------------------------------------------------------------------------
# Evidence service: cached, concurrent fan-out over candidates


@dataclass
class CandidateEvidence:
    uri: str
    archive: ArchiveEvidence
    popularity: PopularityEvidence | None = None
    damage: DamageEvidence | None = None
    error: str | None = None


class EvidenceService:
    def __init__(
        self,
        archive_source: TimemapSource,
        popularity_provider: PopularityProvider | None = None,
        damage_provider: DamageProvider | None = None,
        cache: EvidenceCache | None = None,
        parallelism: int = 4,
        retries: int = 1,
        max_pages: int = 5,
        rank_floor: int = RANK_FLOOR_DEFAULT,
        count_ceiling: int = ARCHIVE_COUNT_CEILING_DEFAULT,
    ):
        self.archive_source = archive_source
        self.popularity_provider = popularity_provider
        self.damage_provider = damage_provider
        self.cache = cache
        self.parallelism = max(1, parallelism)
        self.retries = max(0, retries)
        self.max_pages = max_pages
        self.rank_floor = rank_floor
        self.count_ceiling = count_ceiling

    def _cached(self, kind: str, surt: str, fetch: Callable[[], dict]) -> dict:
        if self.cache is not None:
            hit = self.cache.get("gateway", kind, surt)
            if hit is not None:
                return hit
        value = fetch()
        if self.cache is not None:
            self.cache.put("gateway", kind, surt, value)
        return value

    def _with_retries(self, action: Callable[[], dict]) -> dict:
        attempt = 0
        while True:
            try:
                return action()
            except ArchiveFetchError:
                if attempt >= self.retries:
                    raise
                attempt += 1

    def evidence_for(self, uri: str, requested: datetime) -> CandidateEvidence:
        surt = canonicalize_surt(uri)
        try:
            timemap_value = self._cached(
                "timemap",
                surt,
                lambda: self._with_retries(
                    lambda: fetch_timemap(self.archive_source, uri, self.max_pages).to_json_dict()
                ),
            )
        except ArchiveFetchError as exc:
            empty = ArchiveEvidence(uri=uri, archived=False, memento_count=0, mementos=())
            return CandidateEvidence(uri=uri, archive=empty, error=str(exc))
        archive = ArchiveEvidence.from_json_dict(timemap_value)
        if not archive.archived:
            return CandidateEvidence(uri=uri, archive=archive)

        nearest_dt, nearest_uri = nearest_memento(archive, requested)
        archive = replace(archive, nearest_memento_uri=nearest_uri)

        rank_value = self._cached(
            "popularity",
            surt,
            lambda: {
                "rank": None
                if self.popularity_provider is None
                else self.popularity_provider.get_rank(
                    parse_uri(uri, assume_http=True).registered_domain
                )
            },
        )
        rank = rank_value.get("rank")
        count = archive.memento_count
        popularity = PopularityEvidence(
            global_rank=None if rank is None else max(1, min(int(rank), self.rank_floor)),
            rank_floor=self.rank_floor,
            archive_count=min(count, self.count_ceiling),
            archive_count_ceiling=self.count_ceiling,
            clamped=count > self.count_ceiling,
        )

        damage_value = self._cached(
            "damage",
            canonicalize_surt(nearest_uri),
            lambda: fetch_damage(self.damage_provider, nearest_uri).to_json_dict(),
        )
        damage = DamageEvidence(
            damage=damage_value["damage"], source=DamageSource(damage_value["source"])
        )
        return CandidateEvidence(uri=uri, archive=archive, popularity=popularity, damage=damage)

    def gather(self, uris: Sequence[str], requested: datetime) -> list[CandidateEvidence]:
        """Fetch evidence for every candidate concurrently; results come back
        in input order regardless of completion order."""
        if not uris:
            return []
        workers = min(self.parallelism, len(uris))
        if workers == 1:
            return [self.evidence_for(uri, requested) for uri in uris]
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(lambda u: self.evidence_for(u, requested), uris))
