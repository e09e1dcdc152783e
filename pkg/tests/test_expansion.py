import json

import pytest

from ctms.corpus import FixtureProvider, load_fixture
from ctms.expansion import (
    ExtendedSeedSet,
    expand,
    expansion_queries,
    weblist_id,
)
from ctms.wrappers import Wrapper

NAV_PAGE = """<html><body>
<h1>品牌导航</h1>
<ul>
<li><a href="/brand/01" class="entry">宝马</a></li>
<li><a href="/brand/02" class="entry">法拉利</a></li>
<li><a href="/brand/03" class="entry">保时捷</a></li>
<li><a href="/brand/04" class="entry">奥迪</a></li>
<li><a href="/brand/05" class="entry">捷豹</a></li>
<li><a href="/brand/06" class="entry">兰博基尼</a></li>
</ul>
</body></html>
"""


def write_bundle(tmp_path, queries, pages):
    (tmp_path / "pages").mkdir()
    page_entries = []
    for i, (url, html) in enumerate(sorted(pages.items())):
        name = f"pages/page{i}.html"
        (tmp_path / name).write_text(html, encoding="utf-8")
        page_entries.append({"url": url, "file": name})
    manifest = {
        "queries": [
            {
                "query": q,
                "hits": [
                    {"rank": r, "title": "t", "snippet": "s", "url": u}
                    for r, u in enumerate(urls, start=1)
                ],
            }
            for q, urls in queries.items()
        ],
        "pages": page_entries,
    }
    (tmp_path / "manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False), encoding="utf-8"
    )
    return FixtureProvider(load_fixture(tmp_path))


def test_expansion_queries_pair_seed_with_each_candidate():
    ext = ExtendedSeedSet("宝马", ("法拉利",))
    assert expansion_queries(ext) == ["宝马 法拉利"]


def test_expansion_queries_follow_candidate_order():
    ext = ExtendedSeedSet("s", ("a", "b", "c"))
    assert expansion_queries(ext) == ["s a", "s b", "s c"]


def test_empty_initial_means_no_queries():
    with pytest.raises(ValueError):
        expand(ExtendedSeedSet("s", ()), provider=None)


def test_seed_not_allowed_in_initial():
    with pytest.raises(ValueError):
        ExtendedSeedSet("s", ("s",))


def test_mini_expansion_harvests_full_navigation_list(tmp_path):
    provider = write_bundle(
        tmp_path,
        {"宝马 法拉利": ["http://x/nav"]},
        {"http://x/nav": NAV_PAGE},
    )
    ext = ExtendedSeedSet("宝马", ("法拉利", "奥迪"))
    result = expand(ext, provider)
    assert result.pages_processed == 1
    harvested = {wl.terms for wl in result.weblists}
    # at least one wrapper generalizes to the full six-brand list
    assert ("宝马", "法拉利", "保时捷", "奥迪", "捷豹", "兰博基尼") in harvested


def test_no_page_with_two_seeds_yields_nothing(tmp_path):
    provider = write_bundle(
        tmp_path,
        {"宝马 法拉利": ["http://x/solo"]},
        {"http://x/solo": "<p>只有宝马出现。</p>"},
    )
    result = expand(ExtendedSeedSet("宝马", ("法拉利",)), provider)
    assert result.weblists == []


def test_page_shared_by_two_queries_processed_once(tmp_path):
    provider = write_bundle(
        tmp_path,
        {"宝马 法拉利": ["http://x/nav"], "宝马 奥迪": ["http://x/nav"]},
        {"http://x/nav": NAV_PAGE},
    )
    result = expand(ExtendedSeedSet("宝马", ("法拉利", "奥迪")), provider)
    assert result.pages_processed == 1


def test_weblists_sorted_by_id_and_deterministic(tmp_path):
    provider = write_bundle(
        tmp_path,
        {"宝马 法拉利": ["http://x/nav"], "宝马 奥迪": ["http://x/nav2"]},
        {"http://x/nav": NAV_PAGE, "http://x/nav2": NAV_PAGE.replace("品牌", "车型")},
    )
    ext = ExtendedSeedSet("宝马", ("法拉利", "奥迪"))
    first = expand(ext, provider)
    second = expand(ext, provider)
    ids = [wl.id for wl in first.weblists]
    assert ids == sorted(ids)
    assert [(w.id, w.terms, w.context) for w in first.weblists] == [
        (w.id, w.terms, w.context) for w in second.weblists
    ]


def test_weblist_terms_are_distinct_and_min_two(tmp_path):
    provider = write_bundle(
        tmp_path,
        {"宝马 法拉利": ["http://x/nav"]},
        {"http://x/nav": NAV_PAGE},
    )
    result = expand(ExtendedSeedSet("宝马", ("法拉利",)), provider)
    for wl in result.weblists:
        assert len(wl.terms) >= 2
        assert len(set(wl.terms)) == len(wl.terms)


def test_context_window_contains_surrounding_text(tmp_path):
    provider = write_bundle(
        tmp_path,
        {"宝马 法拉利": ["http://x/nav"]},
        {"http://x/nav": NAV_PAGE},
    )
    result = expand(ExtendedSeedSet("宝马", ("法拉利",)), provider)
    assert result.weblists
    for wl in result.weblists:
        assert "品牌导航" in wl.context
        assert "<" not in wl.context


def test_weblist_id_stable():
    w = Wrapper("<a>", "</a>", "p/#text")
    assert weblist_id("http://x", w) == weblist_id("http://x", w)
    assert weblist_id("http://x", w) != weblist_id("http://y", w)


def test_every_weblist_covers_two_extended_seeds(tmp_path):
    provider = write_bundle(
        tmp_path,
        {"宝马 法拉利": ["http://x/nav"], "宝马 奥迪": ["http://x/nav2"]},
        {"http://x/nav": NAV_PAGE, "http://x/nav2": NAV_PAGE.replace("品牌", "车型")},
    )
    ext = ExtendedSeedSet("宝马", ("法拉利", "奥迪"))
    result = expand(ext, provider)
    assert result.weblists
    for wl in result.weblists:
        assert len(set(ext.terms) & set(wl.terms)) >= 2
