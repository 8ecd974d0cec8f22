import io
import logging
import os
from datetime import datetime, timezone

import pytest

from textnet.exceptions import DuplicateId, MalformedArchive, MalformedLine, MissingField, MissingResource
from textnet.ingest import (
    dump_jsonl,
    dump_mbox,
    load_store,
    normalize_author,
    parse_jsonl,
    parse_mbox,
    truncate,
)
from textnet.models import MessageStore, RawMessage

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def _get_entry(message_id, author="alice@example.org", reply_to=None, date="Tue, 01 Jan 2019 09:00:00 +0000",
               body="Hello there.", headers=()):
    lines = [
        "From {} Tue Jan  1 09:00:00 2019".format(author),
        "Message-ID: {}".format(message_id),
    ]
    lines.extend(headers)
    if reply_to is not None:
        lines.append("In-Reply-To: {}".format(reply_to))
    lines.extend([
        "From: {}".format(author),
        "Date: {}".format(date),
        "Content-Type: text/plain; charset=utf-8",
        "",
        body,
        "",
    ])
    return "\n".join(lines) + "\n"


def _get_mbox(*entries):
    return "".join(entries).encode("utf-8")


def _get_message(message_id, author="alice@example.org", reply_to=None, day=1, body="Hello."):
    return RawMessage(
        message_id=message_id,
        in_reply_to=reply_to,
        author=author,
        sent_at=datetime(2019, 1, day, 9, tzinfo=timezone.utc),
        body=body
    )


def _get_chain(length=5):
    messages = [_get_message("<m1>")]
    for i in range(2, length + 1):
        messages.append(_get_message("<m{}>".format(i), reply_to="<m{}>".format(i - 1), day=i))
    return MessageStore.from_messages(messages)


def test_empty_mbox():
    """
    Empty and blank input both give an empty store.
    """

    assert len(parse_mbox(b"")) == 0
    assert len(parse_mbox(io.BytesIO(b"\n\n"))) == 0


def test_two_messages():
    """
    A reply resolves its parent through by_id and no reference dangles. Header fields
    come through normalized.
    """

    data = _get_mbox(
        _get_entry("<m1>", author="Alice Doe <Alice@Example.org>"),
        _get_entry("<m2>", author="bob@example.org", reply_to="<m1>", date="Wed, 02 Jan 2019 10:30:00 +0200",
                   body="> Hello there.\nHi!")
    )
    store = parse_mbox(io.BytesIO(data))
    assert len(store) == 2
    assert store.by_id == {"<m1>": 0, "<m2>": 1}
    assert store.dangling_refs == frozenset()

    first, second = store.messages
    assert first.author == "alice@example.org"
    assert first.in_reply_to is None
    assert first.body == "Hello there."
    assert second.in_reply_to == "<m1>"
    assert second.sent_at == datetime(2019, 1, 2, 8, 30, tzinfo=timezone.utc)
    assert second.body == "> Hello there.\nHi!"
    assert store.parent(second) == first


def test_dangling_reference():
    """
    A reply to a message that isn't in the archive is recorded in dangling_refs.
    """

    data = _get_mbox(_get_entry("<m1>"), _get_entry("<m2>", reply_to="<mX>"))
    store = parse_mbox(data)
    assert store.dangling_refs == frozenset(["<mX>"])
    assert store.parent(store.messages[1]) is None


def test_references_fallback():
    """
    Without In-Reply-To the last References id is the parent; In-Reply-To wins when
    both are present.
    """

    data = _get_mbox(
        _get_entry("<m1>"),
        _get_entry("<m2>", headers=["References: <m0> <m1>"]),
        _get_entry("<m3>", reply_to="<m1>", headers=["References: <m1> <m2>"]),
    )
    store = parse_mbox(data)
    assert store.messages[1].in_reply_to == "<m1>"
    assert store.messages[2].in_reply_to == "<m1>"
    assert store.dangling_refs == frozenset()


def test_replacement_characters_logged(caplog):
    """
    Authors or ids holding U+FFFD are kept and reported with a warning.
    """

    data = (
        b'{"id": "<a>", "in_reply_to": null, "author": "al\\ufffdce@x.org", '
        b'"date": "2019-01-01T00:00:00", "body": "Hi."}\n'
    )
    with caplog.at_level(logging.WARNING, logger="textnet.ingest"):
        store = parse_jsonl(data)
    assert store.messages[0].author == "al�ce@x.org"
    assert any(r.levelno == logging.WARNING and "<a>" in r.getMessage() for r in caplog.records)

    caplog.clear()
    with caplog.at_level(logging.WARNING, logger="textnet.ingest"):
        parse_jsonl(b'{"id": "<b>", "in_reply_to": null, "author": "b@x.org", "date": "2019-01-01T00:00:00", "body": "Hi."}\n')
    assert not caplog.records


def test_duplicate_ids():
    """
    Repeated ids keep the first occurrence, or raise in strict mode.
    """

    data = _get_mbox(_get_entry("<m1>", body="first"), _get_entry("<m1>", body="second"))
    store = parse_mbox(data)
    assert len(store) == 1
    assert store.messages[0].body == "first"

    with pytest.raises(DuplicateId):
        parse_mbox(data, strict=True)


def test_malformed_mbox():
    """
    Text before the first separator, or entries without an id, are rejected.
    """

    with pytest.raises(MalformedArchive):
        parse_mbox(b"Message-ID: <m1>\n\nno separator\n")

    entry = "From a@example.org Tue Jan  1 09:00:00 2019\nFrom: a@example.org\n\nbody\n"
    with pytest.raises(MalformedArchive):
        parse_mbox(entry.encode("utf-8"))


def test_unparseable_date_backfilled():
    """
    A message with a bad Date takes the timestamp of the previous message.
    """

    data = _get_mbox(
        _get_entry("<m1>", date="Tue, 01 Jan 2019 09:00:00 +0000"),
        _get_entry("<m2>", date="yesterday-ish")
    )
    store = parse_mbox(data)
    assert store.messages[1].sent_at == store.messages[0].sent_at


def test_quoted_printable_and_escaped_from():
    """
    Quoted-printable bodies are decoded and ">From " lines unescaped.
    """

    entry = (
        "From a@example.org Tue Jan  1 09:00:00 2019\n"
        "Message-ID: <qp>\n"
        "From: a@example.org\n"
        "Date: Tue, 01 Jan 2019 09:00:00 +0000\n"
        "Content-Type: text/plain; charset=utf-8\n"
        "Content-Transfer-Encoding: quoted-printable\n"
        "\n"
        "caf=C3=A9 au lait\n"
        ">From here on\n"
        "\n"
    )
    store = parse_mbox(entry.encode("utf-8"))
    assert store.messages[0].body == "café au lait\nFrom here on"


def test_normalize_author():
    """
    Display names and angle brackets are removed and the address lowercased.
    """

    assert normalize_author("Bob Smith <Bob@Example.ORG>") == "bob@example.org"
    assert normalize_author("<carol@example.org>") == "carol@example.org"
    assert normalize_author("dave@example.org") == "dave@example.org"


def test_parse_jsonl_chain():
    """
    The three-line chain fixture resolves both reply links.
    """

    with open(os.path.join(FIXTURES, "chain.jsonl"), "rb") as handle:
        store = parse_jsonl(handle)
    assert len(store) == 3
    assert store.dangling_refs == frozenset()
    assert store.messages[1].author == "bob@example.org"
    assert store.messages[1].sent_at == datetime(2019, 1, 2, 9, tzinfo=timezone.utc)
    assert store.parent(store.messages[2]).message_id == "<m2@example.org>"
    assert len(parse_jsonl(b"")) == 0


def test_parse_jsonl_errors():
    """
    Missing keys name the line and key; broken JSON and bad dates name the line.
    """

    line = b'{"id": "<m1>", "in_reply_to": null, "date": "2019-01-01T00:00:00", "body": ""}\n'
    with pytest.raises(MissingField) as info:
        parse_jsonl(b"\n" + line)
    assert info.value.line_no == 2
    assert info.value.key == "author"

    with pytest.raises(MalformedLine) as info:
        parse_jsonl(b'{"id": \n')
    assert info.value.line_no == 1

    with pytest.raises(MalformedLine):
        parse_jsonl(b"[1, 2]\n")

    bad_date = b'{"id": "<m1>", "in_reply_to": null, "author": "a@b.c", "date": "soon", "body": ""}\n'
    with pytest.raises(MalformedLine):
        parse_jsonl(bad_date)


def test_truncate():
    """
    truncate keeps the first messages. A cut chain leaves no dangling reference since
    the reply itself is gone.
    """

    store = _get_chain(5)
    assert len(truncate(store, 0)) == 0
    assert truncate(store, 9) == store
    assert len(truncate(store, 3)) == 3

    pair = _get_chain(2)
    cut = truncate(pair, 1)
    assert [m.message_id for m in cut.messages] == ["<m1>"]
    assert cut.dangling_refs == frozenset()

    with pytest.raises(ValueError):
        truncate(store, -1)


def test_truncate_makes_dangling():
    """
    A reply kept past a cut parent becomes dangling.
    """

    messages = [
        _get_message("<m1>"),
        _get_message("<m2>", reply_to="<m3>", day=2),
        _get_message("<m3>", day=3),
    ]
    store = MessageStore.from_messages(messages)
    assert store.dangling_refs == frozenset()
    assert truncate(store, 2).dangling_refs == frozenset(["<m3>"])


def test_round_trips():
    """
    Both dump formats read back into an equal store.
    """

    with open(os.path.join(FIXTURES, "list.mbox"), "rb") as handle:
        store = parse_mbox(handle)

    sink = io.BytesIO()
    dump_jsonl(store, sink)
    assert parse_jsonl(sink.getvalue()) == store

    sink = io.BytesIO()
    dump_mbox(store, sink)
    assert parse_mbox(sink.getvalue()) == store


def test_load_store(tmp_path):
    """
    load_store reads both formats and reports missing files.
    """

    store = load_store(os.path.join(FIXTURES, "list.mbox"))
    assert len(store) == 50
    assert store.dangling_refs == frozenset(["<missing@example.org>"])
    assert len(store.authors()) == 6

    assert len(load_store(os.path.join(FIXTURES, "chain.jsonl"), "jsonl")) == 3

    with pytest.raises(MissingResource):
        load_store(str(tmp_path / "nothing.mbox"))
