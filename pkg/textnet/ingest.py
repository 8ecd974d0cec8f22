"""
Archive readers. Both formats produce the same immutable MessageStore; neither reader
mutates a store once it is built.
"""

import email
import io
import json
import logging
import re
from datetime import datetime, timezone
from email import policy as email_policy
from email.utils import format_datetime, parseaddr, parsedate_to_datetime

from jsonschema import ValidationError, validate

from textnet.exceptions import DuplicateId, MalformedArchive, MalformedLine, MissingField, MissingResource
from textnet.models import MessageStore, RawMessage

logger = logging.getLogger(__name__)

EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)
MSGID_RE = re.compile(r"<[^<>\s]+>")
ESCAPED_FROM_RE = re.compile(rb"^>+From ")
FROM_LINE_RE = re.compile(r"^>*From ", re.MULTILINE)
REPLACEMENT_CHAR = "\ufffd"


def normalize_author(value):
    """
    Bare lowercase address of a From value, display name and angle brackets removed.
    """

    _, address = parseaddr(value or "")
    address = address.strip().strip("<>").lower()
    if not address:
        address = (value or "").strip().strip("<>").lower()
    return address


def _first_msgid(value):
    if value is None:
        return None
    value = str(value).strip()
    if not value:
        return None
    match = MSGID_RE.search(value)
    if match:
        return match.group(0)
    return value.split()[0]


def _reply_target(msg):
    """
    In-Reply-To, or the last id of References when a client only sent those.
    """

    target = _first_msgid(msg.get("In-Reply-To"))
    if target is None:
        references = MSGID_RE.findall(str(msg.get("References") or ""))
        if references:
            target = references[-1]
    return target


def _to_utc(moment):
    if moment.tzinfo is None:
        return moment.replace(tzinfo=timezone.utc)
    return moment.astimezone(timezone.utc)


def _parse_date(value):
    if value is None:
        return None
    try:
        return _to_utc(parsedate_to_datetime(str(value)))
    except (TypeError, ValueError, IndexError):
        return None


def _decode(payload, charset, where):
    charset = charset or "utf-8"
    try:
        return payload.decode(charset)
    except LookupError:
        charset = "utf-8"
    except UnicodeDecodeError:
        pass
    try:
        return payload.decode(charset)
    except UnicodeDecodeError:
        logger.warning("invalid %s bytes in %s replaced", charset, where)
        return payload.decode(charset, errors="replace")


def _message_from_bytes(data):
    # the default policy occasionally chokes on malformed headers
    msg = email.message_from_bytes(data, policy=email_policy.default)
    try:
        _ = list(msg.items())
        return msg
    except Exception:
        return email.message_from_bytes(data, policy=email_policy.compat32)


def _text_body(msg, where):
    part = None
    if msg.is_multipart():
        for candidate in msg.walk():
            if candidate.is_multipart():
                continue
            if candidate.get_content_type() == "text/plain" and candidate.get_content_disposition() != "attachment":
                part = candidate
                break
    elif msg.get_content_type() == "text/plain":
        part = msg
    if part is None:
        return ""
    payload = part.get_payload(decode=True) or b""
    text = _decode(payload, part.get_content_charset(), where)
    text = text.replace("\r\n", "\n")
    # the line ending that terminates the body belongs to the mbox framing
    if text.endswith("\n"):
        text = text[:-1]
    return text


def _build_store(messages, strict):
    kept = []
    seen = set()
    for message in messages:
        if REPLACEMENT_CHAR in message.author or REPLACEMENT_CHAR in message.message_id:
            logger.warning("undecodable bytes in id or author of message %s (%s)", message.message_id, message.author)
        if message.message_id in seen:
            if strict:
                raise DuplicateId(message.message_id)
            logger.warning("duplicate message id %s dropped", message.message_id)
            continue
        seen.add(message.message_id)
        kept.append(message)
    store = MessageStore.from_messages(kept)
    if store.dangling_refs:
        logger.info("%d dangling reply references", len(store.dangling_refs))
    return store


def _backfill_dates(pending):
    """
    Fills unparseable dates with the previous message's timestamp. Leading gaps take
    the first known timestamp.
    """

    known = [moment for _, moment in pending if moment is not None]
    previous = known[0] if known else EPOCH
    filled = []
    for fields, moment in pending:
        if moment is None:
            logger.info("unparseable date of %s back-filled", fields["message_id"])
            moment = previous
        previous = moment
        filled.append(RawMessage(sent_at=moment, **fields))
    return filled


def _split_mbox(data):
    chunks = []
    current = None
    for line in io.BytesIO(data):
        if line.startswith(b"From "):
            current = []
            chunks.append(current)
            continue
        if current is None:
            if line.strip():
                raise MalformedArchive("Archive doesn't start with a 'From ' separator.")
            continue
        if ESCAPED_FROM_RE.match(line):
            line = line[1:]
        current.append(line)
    for chunk in chunks:
        if chunk and not chunk[-1].strip():
            chunk.pop()
    return [b"".join(chunk) for chunk in chunks]


def parse_mbox(source, strict=False):
    """
    Reads an mbox archive into a MessageStore, keeping archive order.

    : param source: binary stream or bytes
    : param bool strict: raise DuplicateId instead of dropping repeated ids
    """

    data = source if isinstance(source, bytes) else source.read()
    if not data.strip():
        return MessageStore()

    pending = []
    for position, chunk in enumerate(_split_mbox(data), start=1):
        msg = _message_from_bytes(chunk)
        message_id = _first_msgid(msg.get("Message-ID"))
        if not message_id:
            raise MalformedArchive("Message {} has no Message-ID.".format(position))
        author = normalize_author(str(msg.get("From", "")))
        if not author:
            raise MalformedArchive("Message {} has no author.".format(message_id))
        fields = {
            "message_id": message_id,
            "in_reply_to": _reply_target(msg),
            "author": author,
            "body": _text_body(msg, message_id)
        }
        pending.append((fields, _parse_date(msg.get("Date"))))

    return _build_store(_backfill_dates(pending), strict)


def parse_jsonl(source, strict=False):
    """
    Reads a JSON-lines dump, one message object per line. Blank lines are skipped.

    : param source: binary stream or bytes
    """

    if isinstance(source, bytes):
        source = io.BytesIO(source)

    schema = RawMessage.get_schema()
    messages = []
    for line_no, raw in enumerate(source, start=1):
        text = _decode(raw, "utf-8", "line {}".format(line_no))
        if not text.strip():
            continue
        try:
            record = json.loads(text)
        except ValueError as e:
            raise MalformedLine(line_no, str(e))
        if not isinstance(record, dict):
            raise MalformedLine(line_no)
        try:
            validate(record, schema)
        except ValidationError as e:
            if e.validator == "required":
                missing = [key for key in e.validator_value if key not in record]
                raise MissingField(line_no, missing[0])
            raise MalformedLine(line_no, e.message)
        try:
            sent_at = datetime.fromisoformat(record["date"].replace("Z", "+00:00"))
        except ValueError:
            raise MalformedLine(line_no, "Bad date '{}'.".format(record["date"]))
        author = normalize_author(record["author"])
        if not author:
            raise MissingField(line_no, "author")
        messages.append(RawMessage(
            message_id=record["id"],
            in_reply_to=record["in_reply_to"] or None,
            author=author,
            sent_at=_to_utc(sent_at),
            body=record["body"]
        ))
    return _build_store(messages, strict)


def truncate(store, limit):
    """
    First min(limit, |messages|) messages. Replies whose parent fell past the limit
    become dangling.
    """

    if limit < 0:
        raise ValueError("limit must be >= 0")
    if limit >= len(store):
        return store
    return MessageStore.from_messages(store.messages[:limit])


def dump_jsonl(store, sink):
    for message in store.messages:
        line = json.dumps(message.to_record(), ensure_ascii=False)
        sink.write(line.encode("utf-8") + b"\n")


def dump_mbox(store, sink):
    """
    Writes an mboxrd archive that parse_mbox reads back into an equal store. Dates are
    written with second precision.
    """

    for message in store.messages:
        moment = message.sent_at.astimezone(timezone.utc)
        lines = [
            "From {} {}".format(message.author, moment.strftime("%a %b %d %H:%M:%S %Y")),
            "Message-ID: {}".format(message.message_id),
        ]
        if message.in_reply_to is not None:
            lines.append("In-Reply-To: {}".format(message.in_reply_to))
        lines.extend([
            "From: {}".format(message.author),
            "Date: {}".format(format_datetime(moment, usegmt=True)),
            "MIME-Version: 1.0",
            "Content-Type: text/plain; charset=utf-8",
            "Content-Transfer-Encoding: 8bit",
            "",
            FROM_LINE_RE.sub(lambda m: ">" + m.group(0), message.body),
            "",
            ""
        ])
        sink.write("\n".join(lines).encode("utf-8"))


def load_store(path, fmt="mbox", strict=False):
    """
    Opens an archive file of the given format ("mbox" or "jsonl").
    """

    try:
        handle = open(path, "rb")
    except OSError:
        raise MissingResource(path)
    with handle:
        if fmt == "jsonl":
            return parse_jsonl(handle, strict)
        return parse_mbox(handle, strict)
