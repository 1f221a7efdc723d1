"""Knowledge-base client: cached, rate-limited fetching of items and pages.

Every successful payload is cached on disk keyed by (identifier, language,
snapshot tag), so a pipeline with a warm cache runs fully offline and
replays byte-identically.
"""

import hashlib
import json
import logging
import os
import re
import tempfile
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Protocol

from ..errors import NotFoundError, TransportError, UserError
from .dates import KBDate

log = logging.getLogger(__name__)

CACHE_DIR_ENV = "RELEXKIT_CACHE_DIR"
ENTITY_ENDPOINT_ENV = "RELEXKIT_KB_ENDPOINT"
PAGE_ENDPOINT_ENV = "RELEXKIT_PAGE_ENDPOINT"

DEFAULT_ENTITY_ENDPOINT = "https://www.wikidata.org/wiki/Special:EntityData/{item_id}.json"
DEFAULT_PAGE_ENDPOINT = "https://{language}.wikipedia.org/api/rest_v1/page/html/{title}"
DEFAULT_API_ENDPOINT = "https://www.wikidata.org/w/api.php"

_ITEM_ID = re.compile(r"^Q[0-9]+$")
_PROPERTY_ID = re.compile(r"^P[0-9]+$")


@dataclass(frozen=True)
class ItemRef:
    """Reference to another item, to be resolved into designations."""

    item_id: str


TargetValue = ItemRef | KBDate | str


@dataclass(frozen=True)
class ItemRecord:
    """A knowledge-base item in one language.

    ``raw_statements`` holds (property_id, target value) pairs; values are
    item references, dates, or plain text, and empty-valued statements are
    already dropped. ``incomplete`` flags records whose label was missing
    in the requested language.
    """

    item_id: str
    label: str
    description: str = ""
    aliases: tuple[str, ...] = ()
    sitelink: str | None = None
    raw_statements: tuple[tuple[str, TargetValue], ...] = ()
    incomplete: bool = False

    def __post_init__(self):
        if not _ITEM_ID.match(self.item_id):
            raise ValueError(f"invalid item id {self.item_id!r}")

    def designations(self) -> tuple[str, ...]:
        """Label plus aliases, deduplicated, order preserved."""
        seen = dict.fromkeys(d for d in (self.label, *self.aliases) if d)
        return tuple(seen)


class Transport(Protocol):
    def get_json(self, url: str) -> dict: ...

    def get_text(self, url: str) -> str: ...


class HttpTransport:
    """requests-backed transport; 404 means NotFound, anything else that
    fails is a retryable TransportError."""

    def __init__(self, timeout: float = 30.0, user_agent: str = "relexkit/0.1"):
        import requests

        self._session = requests.Session()
        self._session.headers["User-Agent"] = user_agent
        self._timeout = timeout
        self._requests = requests

    def _get(self, url: str):
        try:
            response = self._session.get(url, timeout=self._timeout)
        except self._requests.RequestException as exc:
            raise TransportError(f"request failed: {url}: {exc}") from exc
        if response.status_code == 404:
            raise NotFoundError(f"not found: {url}")
        if response.status_code >= 400:
            raise TransportError(f"HTTP {response.status_code} for {url}")
        return response

    def get_json(self, url: str) -> dict:
        return self._get(url).json()

    def get_text(self, url: str) -> str:
        return self._get(url).text


class RateLimiter:
    """Global minimum interval between outgoing requests; thread-safe."""

    def __init__(self, min_interval: float = 0.0):
        self.min_interval = min_interval
        self._lock = threading.Lock()
        self._last = 0.0

    def wait(self):
        if self.min_interval <= 0:
            return
        with self._lock:
            now = time.monotonic()
            delay = self._last + self.min_interval - now
            if delay > 0:
                time.sleep(delay)
            self._last = time.monotonic()


class DiskCache:
    """One JSON file per key; writes are atomic (temp file + rename)."""

    def __init__(self, root: "str | Path"):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        safe = re.sub(r"[^A-Za-z0-9._-]", "_", key)
        if safe != key:
            safe += "-" + hashlib.sha1(key.encode("utf-8")).hexdigest()[:12]
        return self.root / f"{safe}.json"

    def get(self, key: str) -> dict | None:
        path = self._path(key)
        if not path.exists():
            return None
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)

    def put(self, key: str, payload: dict):
        path = self._path(key)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, ensure_ascii=False)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def _require_cache_dir(cache_dir: "str | Path | None") -> Path:
    resolved = cache_dir or os.environ.get(CACHE_DIR_ENV)
    if not resolved:
        raise UserError(
            f"cache directory not configured; pass cache_dir or set {CACHE_DIR_ENV}"
        )
    return Path(resolved)


class WikidataClient:
    """Fetches items and page HTML through the cache.

    With ``offline=True`` the transport is never touched; a cache miss
    raises TransportError so the caller knows the cache must be warmed.
    """

    def __init__(
        self,
        cache_dir: "str | Path | None" = None,
        entity_endpoint: str | None = None,
        page_endpoint: str | None = None,
        api_endpoint: str | None = None,
        snapshot: str = "latest",
        transport: Transport | None = None,
        min_interval: float = 0.0,
        max_retries: int = 2,
        offline: bool = False,
    ):
        self.cache = DiskCache(_require_cache_dir(cache_dir))
        self.entity_endpoint = (
            entity_endpoint
            or os.environ.get(ENTITY_ENDPOINT_ENV)
            or DEFAULT_ENTITY_ENDPOINT
        )
        self.page_endpoint = (
            page_endpoint or os.environ.get(PAGE_ENDPOINT_ENV) or DEFAULT_PAGE_ENDPOINT
        )
        self.api_endpoint = api_endpoint or DEFAULT_API_ENDPOINT
        self.snapshot = snapshot
        self.offline = offline
        self.max_retries = max_retries
        self._transport = transport
        self._limiter = RateLimiter(min_interval)

    @property
    def transport(self) -> Transport:
        if self._transport is None:
            self._transport = HttpTransport()
        return self._transport

    def _fetch(self, fetcher: Callable, url: str):
        last: Exception | None = None
        for attempt in range(self.max_retries + 1):
            self._limiter.wait()
            try:
                return fetcher(url)
            except TransportError as exc:
                last = exc
                if attempt < self.max_retries:
                    time.sleep(0.2 * (attempt + 1))
        assert last is not None
        raise last

    def _cached_json(self, key: str, url: str) -> dict:
        payload = self.cache.get(key)
        if payload is not None:
            return payload
        if self.offline:
            raise TransportError(f"offline mode: no cached payload for {key}")
        payload = self._fetch(self.transport.get_json, url)
        self.cache.put(key, payload)
        return payload

    def fetch_item(self, item_id: str, language: str) -> ItemRecord:
        if not _ITEM_ID.match(item_id):
            raise UserError(f"invalid item id {item_id!r}; expected Q<number>")
        key = f"entity-{item_id}-{language}-{self.snapshot}"
        url = self.entity_endpoint.format(item_id=item_id)
        payload = self._cached_json(key, url)
        return parse_entity_payload(payload, item_id, language)

    def fetch_items(
        self, item_ids: list[str], language: str, threads: int = 1
    ) -> list[ItemRecord]:
        """Fetch several items, preserving input order; fetches may overlap."""
        if threads <= 1 or len(item_ids) <= 1:
            return [self.fetch_item(item_id, language) for item_id in item_ids]
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda i: self.fetch_item(i, language), item_ids))

    def fetch_page_html(self, title: str, language: str) -> str:
        digest = hashlib.sha1(title.encode("utf-8")).hexdigest()[:16]
        key = f"page-{language}-{digest}-{self.snapshot}"
        from urllib.parse import quote

        url = self.page_endpoint.format(language=language, title=quote(title, safe=""))
        cached = self.cache.get(key)
        if cached is not None:
            return cached["html"]
        if self.offline:
            raise TransportError(f"offline mode: no cached page for {title!r}")
        html = self._fetch(self.transport.get_text, url)
        self.cache.put(key, {"title": title, "html": html})
        return html

    def enumerate_items_by_type(self, type_item: str = "Q5", limit: int = 100) -> list[str]:
        """Item ids linking to a type item (what-links-here listing).

        Listing order is not stable over time; prefer an explicit id-list
        file for reproducible runs.
        """
        from urllib.parse import urlencode

        ids: list[str] = []
        cont = ""
        while len(ids) < limit:
            params = {
                "action": "query",
                "list": "backlinks",
                "bltitle": type_item,
                "blnamespace": "0",
                "bllimit": str(min(500, limit - len(ids))),
                "format": "json",
            }
            if cont:
                params["blcontinue"] = cont
            key = f"backlinks-{type_item}-{limit}-{cont or '0'}-{self.snapshot}"
            payload = self._cached_json(key, f"{self.api_endpoint}?{urlencode(params)}")
            for row in payload.get("query", {}).get("backlinks", []):
                title = row.get("title", "")
                if _ITEM_ID.match(title):
                    ids.append(title)
            cont = payload.get("continue", {}).get("blcontinue", "")
            if not cont:
                break
        return ids[:limit]


def parse_entity_payload(payload: dict, item_id: str, language: str) -> ItemRecord:
    """Distill an entity-data payload into an ItemRecord for one language."""
    entity = payload.get("entities", {}).get(item_id)
    if entity is None:
        raise NotFoundError(f"payload has no entity {item_id}")
    label = entity.get("labels", {}).get(language, {}).get("value", "")
    if not label:
        log.warning("item %s has no %s label; record flagged incomplete", item_id, language)
    description = entity.get("descriptions", {}).get(language, {}).get("value", "")
    aliases = tuple(
        a["value"] for a in entity.get("aliases", {}).get(language, []) if a.get("value")
    )
    sitelink = (
        entity.get("sitelinks", {}).get(f"{language}wiki", {}).get("title") or None
    )
    statements: list[tuple[str, TargetValue]] = []
    for prop, claims in sorted(entity.get("claims", {}).items()):
        if not _PROPERTY_ID.match(prop):
            continue
        for claim in claims:
            snak = claim.get("mainsnak", {})
            if snak.get("snaktype") != "value":
                continue  # novalue / somevalue: empty target, skipped
            value = _parse_datavalue(snak.get("datavalue", {}))
            if value is not None:
                statements.append((prop, value))
    return ItemRecord(
        item_id=item_id,
        label=label,
        description=description,
        aliases=aliases,
        sitelink=sitelink,
        raw_statements=tuple(statements),
        incomplete=not label,
    )


_TIME = re.compile(r"^[+-](\d+)-(\d{2})-(\d{2})T")


def _parse_datavalue(datavalue: dict) -> TargetValue | None:
    kind = datavalue.get("type")
    value = datavalue.get("value")
    if kind == "wikibase-entityid":
        entity_id = value.get("id", "")
        return ItemRef(entity_id) if _ITEM_ID.match(entity_id) else None
    if kind == "time":
        m = _TIME.match(value.get("time", ""))
        if not m:
            return None
        year, month, day = int(m.group(1)), int(m.group(2)), int(m.group(3))
        precision = value.get("precision", 11)
        if precision >= 11 and month and day:
            return KBDate(year, month, day)
        if precision == 10 and month:
            return KBDate(year, month)
        return KBDate(year)
    if kind == "quantity":
        amount = str(value.get("amount", "")).lstrip("+")
        return amount or None
    if kind == "string":
        return value or None
    if kind == "monolingualtext":
        return value.get("text") or None
    return None
