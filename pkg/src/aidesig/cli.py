"""``aidesig`` command line.

Exit codes: 0 success / true, 1 no match, 2 validation error, 3 I/O error.
"""
from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import registry as reglib
from .designation import Designation, from_bitstring, from_choices, to_bitstring, to_choices
from .errors import DesignationError, IncompleteChoices, IoFailure, MalformedDocument
from .notation import Style, format, parse_designation, parse_pattern
from .pattern import cardinality, enumerate_designations, matches
from .schema import Factor, FactorSchema, base_schema, extend, load_schema, save_schema

EXIT_NO_MATCH = 1
EXIT_VALIDATION = 2
EXIT_IO = 3


class Abort(click.ClickException):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def fail(exc: Exception) -> Abort:
    if isinstance(exc, (IoFailure, OSError)):
        return Abort(f"IoFailure: {exc}", EXIT_IO)
    return Abort(f"{type(exc).__name__}: {exc}", EXIT_VALIDATION)


class Context:
    def __init__(self, schema_path: str | None, as_json: bool, registry_path: str | None):
        self.schema_path = schema_path
        self.as_json = as_json
        self.registry_path = registry_path
        self._schema: FactorSchema | None = None

    @property
    def schema(self) -> FactorSchema:
        if self._schema is None:
            self._schema = load_schema(self.schema_path) if self.schema_path else base_schema()
        return self._schema

    def require_registry_path(self) -> Path:
        if not self.registry_path:
            raise Abort("--registry <file> is required for this command", EXIT_VALIDATION)
        return Path(self.registry_path)

    def load_registry(self, create: bool = False) -> reglib.Registry:
        path = self.require_registry_path()
        if create and not path.exists():
            return reglib.Registry(self.schema)
        requested = self.schema if self.schema_path else None
        return reglib.load(path, requested)

    def emit(self, payload, text: str) -> None:
        if self.as_json:
            click.echo(json.dumps(payload, ensure_ascii=False))
        else:
            click.echo(text)


pass_ctx = click.make_pass_decorator(Context)


def guarded(fn):
    """Translate library errors into the exit-code contract."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except (DesignationError, OSError) as exc:
            raise fail(exc) from None

    return wrapper


@click.group()
@click.option("--schema", "schema_path", type=click.Path(dir_okay=False), help="Schema JSON file (default: built-in base-10).")
@click.option("--json", "as_json", is_flag=True, help="Emit machine-readable JSON.")
@click.option("--registry", "registry_path", type=click.Path(dir_okay=False), help="Registry JSON file.")
@click.pass_context
def main(ctx, schema_path, as_json, registry_path):
    """Binary-stream AI system designations."""
    ctx.obj = Context(schema_path, as_json, registry_path)


def factor_rows(d: Designation) -> list[dict]:
    choices = to_choices(d)
    return [
        {
            "factor": f.name,
            "position": f.position_value,
            "bit": choices[f.position_value],
            "label": f.label(choices[f.position_value]),
        }
        for f in d.schema
    ]


def designation_payload(d: Designation) -> dict:
    return {
        "designation": format(d, Style.SYSTEM_NAME),
        "bits": to_bitstring(d),
        "schema_version": d.schema_version,
        "choices": {str(p): b for p, b in to_choices(d).items()},
    }


@main.command()
@click.argument("designation")
@pass_ctx
@guarded
def decode(obj: Context, designation):
    """Show the factor choices behind a designation."""
    d = parse_designation(obj.schema, designation)
    rows = factor_rows(d)
    lines = [f"{format(d, Style.SYSTEM_NAME)} ({to_bitstring(d)})"]
    lines += [f"{r['factor']} ({r['position']}): {r['bit']} ({r['label']})" for r in rows]
    payload = designation_payload(d)
    payload["factors"] = rows
    obj.emit(payload, "\n".join(lines))


def read_answers(schema: FactorSchema, path: str) -> tuple[dict[int, int], dict[int, str]]:
    """Read ``{position: {choice: 0|1, rationale: str?}}`` from a JSON file.

    A bare ``0``/``1`` is accepted in place of the inner object.
    """
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoFailure(f"cannot read answers file {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"answers file {path} is not JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedDocument("answers file must be a JSON object keyed by position")
    choices: dict[int, int] = {}
    rationales: dict[int, str] = {}
    for key, entry in doc.items():
        try:
            position = int(key)
        except ValueError:
            raise MalformedDocument(f"answer key {key!r} is not a position value") from None
        if isinstance(entry, dict):
            if "choice" not in entry:
                raise IncompleteChoices(f"answer for position {position} has no choice")
            choices[position] = entry["choice"]
            if entry.get("rationale"):
                rationales[position] = str(entry["rationale"])
        else:
            choices[position] = entry
    return choices, rationales


@main.command()
@click.option("--bits", help="Bit string, most significant position first.")
@click.option("--answers", "answers_path", type=click.Path(dir_okay=False), help="Answers JSON file.")
@pass_ctx
@guarded
def encode(obj: Context, bits, answers_path):
    """Turn a bit string or answers file into a System number."""
    if (bits is None) == (answers_path is None):
        raise Abort("give exactly one of --bits or --answers", EXIT_VALIDATION)
    if bits is not None:
        d = from_bitstring(obj.schema, bits.strip())
    else:
        choices, _ = read_answers(obj.schema, answers_path)
        d = from_choices(obj.schema, choices)
    obj.emit(designation_payload(d), f"{format(d, Style.SYSTEM_NAME)} ({to_bitstring(d)})")


@main.command()
@click.argument("pattern")
@click.argument("designation")
@pass_ctx
@guarded
def match(obj: Context, pattern, designation):
    """Exit 0 and print true if DESIGNATION lies in PATTERN, else exit 1."""
    p = parse_pattern(obj.schema, pattern)
    d = parse_designation(obj.schema, designation)
    hit = matches(p, d)
    obj.emit({"match": hit, "pattern": format(p, Style.BITSTRING), "designation": format(d, Style.SYSTEM_NAME)},
             "true" if hit else "false")
    if not hit:
        sys.exit(EXIT_NO_MATCH)


@main.command("enumerate")
@click.argument("pattern")
@click.option("--limit", type=click.IntRange(min=0), default=None, help="Stop after this many systems.")
@pass_ctx
@guarded
def enumerate_cmd(obj: Context, pattern, limit):
    """List the systems in PATTERN in ascending order."""
    p = parse_pattern(obj.schema, pattern)
    names = []
    for i, d in enumerate(enumerate_designations(p)):
        if limit is not None and i >= limit:
            break
        name = format(d, Style.SYSTEM_NAME)
        if obj.as_json:
            names.append(name)
        else:
            click.echo(name)
    if obj.as_json:
        click.echo(json.dumps(names))


@main.command("cardinality")
@click.argument("pattern")
@pass_ctx
@guarded
def cardinality_cmd(obj: Context, pattern):
    """Count the systems in PATTERN."""
    p = parse_pattern(obj.schema, pattern)
    n = cardinality(p)
    obj.emit({"pattern": format(p, Style.BITSTRING), "cardinality": n}, str(n))


def stdin_is_tty() -> bool:
    return sys.stdin.isatty()


def ask_interactively(schema: FactorSchema) -> tuple[dict[int, int], dict[int, str]]:
    choices: dict[int, int] = {}
    rationales: dict[int, str] = {}
    for f in schema:
        click.echo(f"\n{f.name} ({f.position_value})")
        if f.description:
            click.echo(f"  {f.description}")
        click.echo(f"  0 = {f.choice0_label}")
        click.echo(f"  1 = {f.choice1_label}")
        bit = click.prompt("  choice", type=click.Choice(["0", "1"]), show_choices=False)
        choices[f.position_value] = int(bit)
        reason = click.prompt("  rationale (optional)", default="", show_default=False)
        if reason.strip():
            rationales[f.position_value] = reason.strip()
    return choices, rationales


@main.command()
@click.option("--interactive", is_flag=True, help="Ask one question per factor.")
@click.option("--answers", "answers_path", type=click.Path(dir_okay=False), help="Answers JSON file.")
@click.option("--name", "display_name", required=True, help="Name of the system being classified.")
@click.option("--id", "record_id", default=None, help="Record id (default: slug of --name).")
@click.option("--tag", "tags", multiple=True, help="Tag to attach; repeatable.")
@click.option("--created-at", default=None, help="ISO-8601 timestamp (default: now).")
@pass_ctx
@guarded
def classify(obj: Context, interactive, answers_path, display_name, record_id, tags, created_at):
    """Classify a system from human answers; append it to --registry if given."""
    if interactive == (answers_path is not None):
        raise Abort("give exactly one of --interactive or --answers", EXIT_VALIDATION)
    reg = obj.load_registry(create=True) if obj.registry_path else None
    schema = reg.schema if reg is not None else obj.schema
    if interactive:
        if not stdin_is_tty():
            raise Abort("--interactive needs an attached terminal; use --answers", EXIT_VALIDATION)
        choices, rationales = ask_interactively(schema)
    else:
        choices, rationales = read_answers(schema, answers_path)
    rec = reglib.classify(
        schema, choices, rationales, display_name,
        record_id=record_id, created_at=created_at, tags=tags,
    )
    if reg is not None:
        reglib.save(reglib.add_record(reg, rec), obj.require_registry_path())
    payload = designation_payload(rec.classification)
    payload["record_id"] = rec.record_id
    obj.emit(payload, format(rec.classification, Style.SYSTEM_NAME))


# -- registry --------------------------------------------------------------


@main.group("registry")
def registry_group():
    """Manage a registry of classified systems."""


def record_payload(rec: reglib.SystemRecord) -> dict:
    return {
        "record_id": rec.record_id,
        "display_name": rec.display_name,
        "kind": "designation" if rec.is_designated else "pattern",
        "text": rec.classification_text(),
        "tags": list(rec.tags),
    }


@registry_group.command("add")
@click.argument("classification")
@click.option("--name", "display_name", required=True)
@click.option("--id", "record_id", default=None)
@click.option("--tag", "tags", multiple=True)
@click.option("--rationale", "rationale_pairs", multiple=True, metavar="POSITION=TEXT",
              help="Rationale for one factor; repeatable.")
@click.option("--created-at", default=None)
@pass_ctx
@guarded
def registry_add(obj: Context, classification, display_name, record_id, tags, rationale_pairs, created_at):
    """Add a record classified by a designation or category pattern."""
    reg = obj.load_registry(create=True)
    p = parse_pattern(reg.schema, classification)
    c = p.to_designation() if p.is_fully_specified else p
    rationales = {}
    for pair in rationale_pairs:
        key, sep, text = pair.partition("=")
        if not sep or not key.strip().isdigit():
            raise Abort(f"--rationale expects POSITION=TEXT, got {pair!r}", EXIT_VALIDATION)
        rationales[int(key)] = text
    reglib.validate_rationales(reg.schema, rationales)
    rec = reglib.SystemRecord(
        record_id or reglib.slugify(display_name), display_name, c, rationales,
        created_at or reglib.utc_now(), tuple(tags),
    )
    reg = reglib.add_record(reg, rec)
    reglib.save(reg, obj.require_registry_path())
    obj.emit(record_payload(rec), f"added {rec.record_id}: {rec.classification_text()}")


@registry_group.command("query")
@click.argument("pattern")
@pass_ctx
@guarded
def registry_query(obj: Context, pattern):
    """List records inside PATTERN (exit 1 when none)."""
    reg = obj.load_registry()
    hits = reglib.query(reg, parse_pattern(reg.schema, pattern))
    obj.emit([record_payload(r) for r in hits],
             "\n".join(f"{r.record_id}\t{r.classification_text()}\t{r.display_name}" for r in hits))
    if not hits:
        sys.exit(EXIT_NO_MATCH)


@registry_group.command("stats")
@click.argument("patterns", nargs=-1, required=True)
@pass_ctx
@guarded
def registry_stats(obj: Context, patterns):
    """Population counts per category."""
    reg = obj.load_registry()
    report = reglib.population_report(reg, [parse_pattern(reg.schema, t) for t in patterns])
    rows = [
        {
            "category": text,
            "pattern": format(c.pattern, Style.BITSTRING),
            "designated": c.designated,
            "patterned": c.patterned,
            "cardinality": c.cardinality,
        }
        for text, c in zip(patterns, report)
    ]
    obj.emit(rows, "\n".join(
        f"{r['category']}\t{r['designated']}\t(patterns: {r['patterned']}, space: {r['cardinality']})"
        for r in rows
    ))


@registry_group.command("export")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@pass_ctx
@guarded
def registry_export(obj: Context, fmt):
    """Write the registry to stdout."""
    reg = obj.load_registry()
    if fmt == "csv":
        reglib.export_csv(reg, sys.stdout)
    else:
        click.echo(reglib.dumps(reg), nl=False)


@registry_group.command("import")
@click.argument("csv_file", type=click.Path(dir_okay=False))
@click.option("--created-at", default=None)
@pass_ctx
@guarded
def registry_import(obj: Context, csv_file, created_at):
    """Add records from a name,bits,tag... CSV file."""
    reg = obj.load_registry(create=True)
    before = len(reg)
    with open(csv_file, newline="", encoding="utf-8") as fh:
        reg = reglib.import_csv(reg, fh, created_at=created_at)
    reglib.save(reg, obj.require_registry_path())
    obj.emit({"imported": len(reg) - before}, f"imported {len(reg) - before} records")


@registry_group.command("migrate")
@click.argument("schema_file", type=click.Path(dir_okay=False))
@pass_ctx
@guarded
def registry_migrate(obj: Context, schema_file):
    """Move the registry onto an extended schema."""
    reg = obj.load_registry()
    new = load_schema(schema_file)
    reglib.save(reglib.migrate(reg, new), obj.require_registry_path())
    obj.emit({"schema_version": new.version_id, "records": len(reg)},
             f"migrated {len(reg)} records to {new.version_id}")


# -- schema ----------------------------------------------------------------


@main.group("schema")
def schema_group():
    """Inspect or extend the factor schema."""


@schema_group.command("show")
@pass_ctx
@guarded
def schema_show(obj: Context):
    s = obj.schema
    obj.emit(s.to_dict(), "\n".join(
        [s.version_id] + [f"{f.name} ({f.position_value})\t{f.choice0_label}\t{f.choice1_label}" for f in s]
    ))


@schema_group.command("extend")
@click.option("--name", required=True)
@click.option("--choice0", required=True)
@click.option("--choice1", required=True)
@click.option("--description", default="")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="Write the new schema here (default: stdout).")
@click.option("--migrate", "do_migrate", is_flag=True, help="Also migrate --registry to the new schema.")
@pass_ctx
@guarded
def schema_extend(obj: Context, name, choice0, choice1, description, out_path, do_migrate):
    """Append a factor at the next position (1024, 2048, ...)."""
    base = obj.load_registry().schema if do_migrate else obj.schema
    new = extend(base, Factor(name, base.size, choice0, choice1, description))
    if out_path:
        save_schema(new, out_path)
    if do_migrate:
        reglib.save(reglib.migrate(obj.load_registry(), new), obj.require_registry_path())
    if out_path:
        obj.emit(new.to_dict(), f"{new.version_id}: {name} at {new.size >> 1} -> {out_path}")
        if not do_migrate:
            click.echo(f"migrate a registry with: aidesig --registry FILE registry migrate {out_path}",
                       err=True)
    else:
        click.echo(new.to_json(), nl=False)


if __name__ == "__main__":
    main()
