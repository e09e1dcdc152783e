"""Search providers and the offline fixture corpus.

A fixture bundle is a directory holding ``manifest.json`` plus one raw HTML
file per page.  The manifest maps exact query strings to ranked hit lists
and page URLs to files::

    {
      "queries": [{"query": "...", "hits": [{"rank": 1, "title": "...",
                                             "snippet": "...", "url": "..."}]}],
      "pages":   [{"url": "...", "file": "pages/ab12cd.html"}]
    }

Fixture lookups are deterministic and never touch the network, which makes
every experiment replayable byte for byte.  A thin live adapter with the
same interface exists for ad-hoc use; it is best-effort plumbing and is not
exercised by the acceptance suite.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Protocol


@dataclass(frozen=True)
class SearchHit:
    """One ranked result for an exact-phrase query."""

    query: str
    rank: int
    title: str
    snippet: str
    url: str


@dataclass(frozen=True)
class RawPage:
    """Cached page bytes decoded to text; `fetched_at` is informational only."""

    url: str
    html: str
    fetched_at: float = 0.0


class FixtureError(ValueError):
    """Malformed or inconsistent fixture bundle."""


class MissingPageError(LookupError):
    """A URL was requested that the provider cannot resolve."""

    def __init__(self, url: str):
        super().__init__(f"no cached page for url: {url}")
        self.url = url


class TransientSearchError(RuntimeError):
    """Retryable transport failure; carries the query that failed."""

    def __init__(self, query: str, cause: str):
        super().__init__(f"search failed for query {query!r}: {cause}")
        self.query = query


class SearchProvider(Protocol):
    def search(self, query: str, max_results: int = 200) -> list[SearchHit]: ...

    def fetch_page(self, url: str) -> RawPage: ...


@dataclass
class FixtureCorpus:
    """Immutable-after-load corpus backing the fixture provider."""

    queries: dict[str, tuple[SearchHit, ...]]
    pages: dict[str, RawPage]

    def validate(self) -> None:
        dangling: list[str] = []
        for query, hits in self.queries.items():
            ranks = [h.rank for h in hits]
            if ranks != list(range(1, len(ranks) + 1)):
                raise FixtureError(
                    f"query {query!r}: ranks must be contiguous from 1, got {ranks}"
                )
            for hit in hits:
                if hit.url not in self.pages:
                    dangling.append(hit.url)
        if dangling:
            listing = ", ".join(sorted(set(dangling)))
            raise FixtureError(f"hits reference missing pages: {listing}")
        for url, page in self.pages.items():
            if not page.html:
                raise FixtureError(f"page {url!r} is empty")


def load_fixture(path: str | Path) -> FixtureCorpus:
    """Load and validate a fixture bundle directory."""
    root = Path(path)
    manifest_path = root / "manifest.json"
    if not manifest_path.is_file():
        raise FixtureError(f"no manifest.json under {root}")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FixtureError(f"manifest.json is not valid JSON: {exc}") from exc

    pages: dict[str, RawPage] = {}
    for entry in manifest.get("pages", []):
        try:
            url, rel = entry["url"], entry["file"]
        except (TypeError, KeyError):
            raise FixtureError(f"bad page entry: {entry!r}") from None
        page_path = root / rel
        if not page_path.is_file():
            raise FixtureError(f"page file missing for {url!r}: {page_path}")
        pages[url] = RawPage(url=url, html=page_path.read_text(encoding="utf-8"))

    queries: dict[str, tuple[SearchHit, ...]] = {}
    for entry in manifest.get("queries", []):
        try:
            query = entry["query"]
            hits = tuple(
                SearchHit(
                    query=query,
                    rank=int(h["rank"]),
                    title=str(h["title"]),
                    snippet=str(h["snippet"]),
                    url=str(h["url"]),
                )
                for h in entry["hits"]
            )
        except (TypeError, KeyError, ValueError):
            raise FixtureError(f"bad query entry: {entry!r}") from None
        queries[query] = hits

    corpus = FixtureCorpus(queries=queries, pages=pages)
    corpus.validate()
    return corpus


class FixtureProvider:
    """Deterministic provider over a loaded fixture corpus.

    Read-only after construction, so instances are safe to share between
    concurrent workers.
    """

    def __init__(self, corpus: FixtureCorpus):
        self._corpus = corpus

    def search(self, query: str, max_results: int = 200) -> list[SearchHit]:
        if not query:
            raise ValueError("query must be non-empty")
        if max_results < 1:
            raise ValueError("max_results must be >= 1")
        hits = self._corpus.queries.get(query, ())
        return list(hits[:max_results])

    def fetch_page(self, url: str) -> RawPage:
        if not url:
            raise ValueError("url must be non-empty")
        page = self._corpus.pages.get(url)
        if page is None:
            raise MissingPageError(url)
        return page


# (status_code, content_type_header, body_bytes)
Transport = Callable[[str], tuple[int, str, bytes]]


def _requests_transport(url: str) -> tuple[int, str, bytes]:
    import requests

    resp = requests.get(url, timeout=30)
    return resp.status_code, resp.headers.get("content-type", ""), resp.content


@dataclass
class LiveProviderConfig:
    """Settings for the optional live adapter.

    `endpoint` is a URL template with ``{query}`` and ``{count}``
    placeholders; the endpoint must answer with a JSON array of objects
    carrying ``title``, ``snippet`` and ``url`` fields, in rank order.
    """

    endpoint: str
    page_size: int = 50
    interval_s: float = 1.0

    @classmethod
    def from_file(cls, path: str | Path) -> "LiveProviderConfig":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            endpoint=data["endpoint"],
            page_size=int(data.get("page_size", 50)),
            interval_s=float(data.get("interval_s", 1.0)),
        )


class LiveSearchProvider:
    """Thin adapter for a JSON search endpoint.  Best effort only."""

    def __init__(self, config: LiveProviderConfig, transport: Transport | None = None):
        self._config = config
        self._transport = transport or _requests_transport
        self._page_cache: dict[str, RawPage] = {}
        self._last_request = 0.0
        # providers may be shared across workers; serialize the rate gate
        self._lock = threading.Lock()

    def _throttle(self) -> None:
        with self._lock:
            wait = self._config.interval_s - (time.monotonic() - self._last_request)
            if wait > 0:
                time.sleep(wait)
            self._last_request = time.monotonic()

    def search(self, query: str, max_results: int = 200) -> list[SearchHit]:
        if not query:
            raise ValueError("query must be non-empty")
        from urllib.parse import quote

        hits: list[SearchHit] = []
        while len(hits) < max_results:
            count = min(self._config.page_size, max_results - len(hits))
            url = self._config.endpoint.format(query=quote(query), count=count)
            self._throttle()
            try:
                status, _ctype, body = self._transport(url)
            except Exception as exc:  # transport errors are retryable
                raise TransientSearchError(query, str(exc)) from exc
            if status != 200:
                raise TransientSearchError(query, f"HTTP {status}")
            try:
                rows = json.loads(body.decode("utf-8", errors="replace"))
            except json.JSONDecodeError as exc:
                raise TransientSearchError(query, f"bad response body: {exc}") from exc
            for row in rows:
                hits.append(
                    SearchHit(
                        query=query,
                        rank=len(hits) + 1,
                        title=str(row.get("title", "")),
                        snippet=str(row.get("snippet", "")),
                        url=str(row.get("url", "")),
                    )
                )
            if len(rows) < count:
                break  # endpoint exhausted
        return hits[:max_results]

    def fetch_page(self, url: str) -> RawPage:
        if not url:
            raise ValueError("url must be non-empty")
        cached = self._page_cache.get(url)
        if cached is not None:
            return cached
        try:
            status, ctype, body = self._transport(url)
        except Exception as exc:
            raise MissingPageError(url) from exc
        if status != 200:
            raise MissingPageError(url)
        encoding = "utf-8"
        if "charset=" in ctype:
            encoding = ctype.split("charset=")[-1].split(";")[0].strip() or "utf-8"
        try:
            html = body.decode(encoding, errors="replace")
        except LookupError:
            html = body.decode("utf-8", errors="replace")
        page = RawPage(url=url, html=html, fetched_at=time.time())
        self._page_cache[url] = page
        return page
