"""Tests for post loading, cleaning and time windows."""

from datetime import UTC, datetime, timedelta

import numpy as np
import pytest

from crosscheck.pipeline import (
    CleanPost,
    DuplicateIdError,
    EmptyAfterCleaningError,
    EmptyWindowError,
    IoError,
    ParseError,
    Patterns,
    RawPost,
    TimeWindow,
    clean_post,
    clean_text,
    load_posts,
    load_store,
    restrict_sources,
    save_store,
    select_window,
)


CENTER = datetime(2021, 8, 26, tzinfo=UTC)


def _write(path, *lines: str):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _post(post_id: str, when: datetime, source: str = "AP") -> CleanPost:
    return CleanPost(
        id=post_id,
        source=source,
        timestamp=when,
        text=post_id,
        text_cased=post_id,
        text_norm=post_id,
        tokens=(post_id,),
    )


def test_load_posts_keeps_file_order(tmp_path):
    """Three valid lines come back as three posts in order."""
    path = _write(
        tmp_path / "posts.jsonl",
        '{"id":"c","source":"AP","timestamp":"2021-08-26T12:00:00Z","text":"one"}',
        '{"id":"a","source":"AP","timestamp":"2021-08-26T13:00:00Z","text":"two"}',
        '{"id":"b","source":"AP","timestamp":"2021-08-26T14:00:00Z","text":"three"}',
    )
    assert [post.id for post in load_posts(path)] == ["c", "a", "b"]


def test_load_posts_maps_fields(tmp_path):
    """Each field maps directly; the timestamp becomes a UTC instant."""
    path = _write(
        tmp_path / "posts.jsonl",
        '{"id":"a","source":"BBC","timestamp":"2021-08-26T12:00:00Z","text":"x"}',
    )
    (post,) = load_posts(path)
    assert post == RawPost("a", "BBC", datetime(2021, 8, 26, 12, tzinfo=UTC), "x")


def test_load_posts_converts_offsets_to_utc(tmp_path):
    """Offsets other than Z are converted to UTC."""
    path = _write(
        tmp_path / "posts.jsonl",
        '{"id":"a","source":"BBC","timestamp":"2021-08-26T14:30:00+02:00","text":"x"}',
    )
    assert load_posts(path)[0].timestamp == datetime(2021, 8, 26, 12, 30, tzinfo=UTC)


def test_duplicate_id_names_later_line(tmp_path):
    """A repeated id is rejected on the line that repeats it."""
    path = _write(
        tmp_path / "posts.jsonl",
        '{"id":"a","source":"AP","timestamp":"2021-08-26T12:00:00Z","text":"one"}',
        '{"id":"a","source":"AP","timestamp":"2021-08-26T13:00:00Z","text":"two"}',
    )
    with pytest.raises(DuplicateIdError) as excinfo:
        load_posts(path)
    assert excinfo.value.line == 2


@pytest.mark.parametrize(
    ("line", "message"),
    [
        ("{not json", "invalid JSON"),
        ('{"id":"a","source":"AP","timestamp":"yesterday","text":"x"}', "bad timestamp"),
        ('{"id":"a","source":"AP","timestamp":"2021-08-26T12:00:00","text":"x"}', "bad timestamp"),
        ('{"id":"a","source":"AP","text":"x"}', "missing field"),
        ('{"id":"","source":"AP","timestamp":"2021-08-26T12:00:00Z","text":"x"}', "id"),
        ('{"id":"a","source":"AP","timestamp":"2021-08-26T12:00:00Z","text":"   "}', "empty"),
    ],
)
def test_malformed_lines_report_line_number(tmp_path, line, message):
    """Bad records raise ParseError naming the offending line."""
    path = _write(
        tmp_path / "posts.jsonl",
        '{"id":"ok","source":"AP","timestamp":"2021-08-26T12:00:00Z","text":"fine"}',
        line,
    )
    with pytest.raises(ParseError, match=message) as excinfo:
        load_posts(path)
    assert excinfo.value.line == 2


def test_missing_file_is_io_error(tmp_path):
    """An unreadable file raises IoError."""
    with pytest.raises(IoError):
        load_posts(tmp_path / "absent.jsonl")


def test_invalid_utf8_is_replaced_then_stripped(tmp_path, stopwords):
    """Undecodable bytes never reach the tokens."""
    path = tmp_path / "posts.jsonl"
    path.write_bytes(
        b'{"id":"a","source":"AP","timestamp":"2021-08-26T12:00:00Z","text":"Kabul\xff airport"}\n'
    )
    (post,) = load_posts(path)
    assert "\ufffd" in post.text
    assert clean_post(post, stopwords).tokens == ("kabul", "airport")


def test_clean_text_removes_urls_handles_and_stopwords():
    """Rules run in order: URL and handle removal, punctuation, stop words."""
    cleaned = clean_text("Check https://t.co/x @BBC the UN attack!", {"the", "check"})
    assert cleaned.text_cased == "UN attack"
    assert cleaned.text_norm == "un attack"
    assert cleaned.tokens == ("un", "attack")


def test_clean_text_without_matches():
    """Text no rule touches comes back as is."""
    cleaned = clean_text("hello", {"the"})
    assert cleaned.text_cased == "hello"
    assert cleaned.tokens == ("hello",)


def test_clean_text_everything_removed():
    """Nothing left after cleaning is an error."""
    with pytest.raises(EmptyAfterCleaningError):
        clean_text("@user http://a.b", {"the"})


def test_clean_text_removes_emails_whole():
    """An email address goes entirely, not just its domain."""
    cleaned = clean_text("write to press@example.org today", {"to"})
    assert cleaned.tokens == ("write", "today")


def test_apostrophe_and_hyphen_rules():
    """Apostrophes are punctuation, inner hyphens stay, loose hyphens go."""
    cleaned = clean_text("Kabul's Covid-19 -- don't wait-", {"the"})
    assert cleaned.text_cased == "Kabuls Covid-19 dont wait"


def test_curly_apostrophe():
    """The typographic apostrophe is removed like the straight one."""
    assert clean_text("Kabul’s airport", {"the"}).tokens == ("kabuls", "airport")
    assert clean_text("Kabul's airport", {"the"}).tokens == ("kabuls", "airport")


def test_numerals_are_kept():
    """Numbers are ordinary tokens."""
    assert clean_text("At least 12 killed", {"at"}).tokens == ("least", "12", "killed")


@pytest.mark.parametrize("stopwords", [set(), {"The"}])
def test_stopwords_must_be_nonempty_lowercase(stopwords):
    """The stop-word set is validated."""
    with pytest.raises(ValueError, match="stop"):
        clean_text("hello", stopwords)


def test_cleaning_is_idempotent(stopwords):
    """Cleaning the cleaned text changes nothing."""
    pieces = [
        "The", "Kabul's", "@BBC", "http://x.co/a?b=1", "www.site.org", "press@ap.org", "covid-19",
        "--", "hello!!", "U.S.", "don't", "’s", "UN", "Ida", "marines,", "(AP)", "it's",
        "naïve", "x_y", "12", "-lead", "trail-", "\ufffd", "#news", "a-b-c",
    ]
    rng = np.random.default_rng(7)
    for _ in range(300):
        text = " ".join(rng.choice(pieces, size=int(rng.integers(1, 12))))
        try:
            once = clean_text(text, stopwords)
        except EmptyAfterCleaningError:
            continue
        assert clean_text(once.text_cased, stopwords) == once


def test_clean_tokens_match_no_removal_pattern(kabul_corpus, stopwords):
    """No cleaned token is a URL, handle, email or stop word."""
    for post in kabul_corpus:
        assert post.text_norm == post.text_cased.lower()
        for token in post.tokens:
            assert token not in stopwords
            assert not any(pattern.search(token) for pattern in Patterns.removal_order)


def test_window_bounds_are_inclusive():
    """The window spans radius days either side, both ends included."""
    posts = [
        _post("start", datetime(2021, 8, 23, tzinfo=UTC)),
        _post("before", datetime(2021, 8, 22, 23, 59, 59, tzinfo=UTC)),
        _post("end", datetime(2021, 8, 29, tzinfo=UTC)),
        _post("after", datetime(2021, 8, 29, 0, 0, 1, tzinfo=UTC)),
    ]
    selected = select_window(posts, TimeWindow(CENTER, 3))
    assert [post.id for post in selected] == ["start", "end"]


def test_empty_window():
    """No posts inside means the claim cannot be checked."""
    with pytest.raises(EmptyWindowError):
        select_window([], TimeWindow(CENTER))


def test_window_is_symmetric():
    """A post at center + d is in the window exactly when one at center - d is."""
    rng = np.random.default_rng(11)
    window = TimeWindow(CENTER, 3)
    for delta in rng.integers(0, 4 * 86400, size=200):
        offset = timedelta(seconds=int(delta))
        assert (CENTER + offset in window) == (CENTER - offset in window)


def test_select_window_is_subsequence(kabul_corpus):
    """Selection keeps the corpus order."""
    selected = select_window(kabul_corpus, TimeWindow(CENTER, 3))
    positions = [kabul_corpus.index(post) for post in selected]
    assert positions == sorted(positions)
    assert "early-1" not in {post.id for post in selected}


def test_radius_must_be_positive():
    """A zero radius is rejected."""
    with pytest.raises(ValueError, match="radius"):
        TimeWindow(CENTER, 0)


def test_restrict_sources_is_case_insensitive():
    """Only posts from allowed accounts survive."""
    posts = [_post("a", CENTER, "BBCWorld"), _post("b", CENTER, "randomuser")]
    assert [post.id for post in restrict_sources(posts, ["bbcworld"])] == ["a"]
    assert len(restrict_sources(posts, None)) == 2


def test_store_round_trip(tmp_path, kabul_corpus):
    """The corpus store gives back the cleaned posts unchanged."""
    path = tmp_path / "store.jsonl"
    save_store(kabul_corpus, path)
    assert load_store(path) == kabul_corpus


def test_fixture_apostrophe_merges_into_word(kabul_corpus):
    """A possessive in a reliable post is kept as one merged token."""
    post = next(post for post in kabul_corpus if post.id == "attack-cnn")
    assert "Kabuls airport" in post.text_cased
    assert "kabul" not in post.tokens
