"""
Command-line interface for crosscheck.

Results go to stdout as JSON (or text with ``--format text``); errors and logs go to stderr.
Exit codes: 0 success, 1 hard error, 2 unverifiable claim.
"""

import logging

from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import replace
from datetime import datetime
from enum import StrEnum
from pathlib import Path
from typing import Any, Optional

import typer

from rich.console import Console
from rich.markup import escape

from crosscheck import __version__
from crosscheck._utils import dumps, parse_rfc3339, render_template, write_jsonl
from crosscheck.cross_checker import (
    CrossChecker,
    LabeledClaim,
    Unverifiable,
    check_claim,
    cluster_report,
    evaluate,
    load_claims,
    load_fake_real_csv,
    split_claims,
    train_pipeline,
)
from crosscheck.forest import TrainConfig, load_model, save_model
from crosscheck.logger import set_level
from crosscheck.pipeline import (
    CrossCheckError,
    FeatureConfig,
    clean_posts,
    default_stopwords,
    load_posts,
    load_store,
    load_wordlist,
    save_store,
)
from crosscheck.pipeline._errors import UnverifiableError
from crosscheck.synthetic import generate, write_synthetic


err_console = Console(stderr=True)
app = typer.Typer(
    name="crosscheck",
    help="Flags fake claims by cross-checking them against posts from reliable sources.",
    add_completion=False,
)

EXIT_ERROR = 1
EXIT_UNVERIFIABLE = 2


class OutputFormat(StrEnum):
    """How results are printed."""

    JSON = "json"
    TEXT = "text"


def version_callback(value: bool) -> None:
    """Print the version of the package."""
    if value:
        typer.echo(f"crosscheck version: {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    ctx: typer.Context,
    version: bool = typer.Option(
        False, "--version", "-v", help="Show the version and exit.", callback=version_callback
    ),
    verbose: bool = typer.Option(False, "--verbose", "-V", help="Log every pipeline stage."),
    config: Optional[Path] = typer.Option(
        None, "--config", "-c", help="YAML file with pipeline settings."
    ),
) -> None:
    """Cross-check claims against a time window of reliable posts."""
    if verbose:
        set_level(logging.DEBUG)
    ctx.obj = {"config_path": config}


@contextmanager
def _errors_exit() -> Iterator[None]:
    try:
        yield
    except (CrossCheckError, OSError, ValueError) as exc:
        err_console.print(f"[bold red]Error:[/bold red] {escape(str(exc))}")
        raise typer.Exit(EXIT_ERROR) from exc


def _config(ctx: typer.Context, **overrides: Any) -> FeatureConfig:
    path = (ctx.obj or {}).get("config_path")
    config = FeatureConfig.from_yaml(path) if path else FeatureConfig()
    return config.with_overrides(**overrides)


def _timestamp(value: str) -> datetime:
    try:
        return parse_rfc3339(value)
    except ValueError as exc:
        raise ValueError(f"--time: {exc}") from exc


def _emit(data: dict[str, Any], fmt: OutputFormat, template: str) -> None:
    if fmt is OutputFormat.TEXT:
        typer.echo(render_template(template, **data), nl=False)
    else:
        typer.echo(dumps(data, indent=2))


@app.command()
def ingest(
    ctx: typer.Context,
    posts: Path = typer.Option(..., "--posts", help="JSONL file of {id, source, timestamp, text}."),
    out: Path = typer.Option(..., "--out", "-o", help="Corpus store to write."),
) -> None:
    """Clean reliable posts once and store them for checking."""
    with _errors_exit():
        config = _config(ctx)
        stopwords = load_wordlist(config.stopwords) if config.stopwords else default_stopwords()
        raw = load_posts(posts)
        cleaned = clean_posts(raw, stopwords)
        save_store(cleaned, out)
    kept = {post.id for post in cleaned}
    typer.echo(
        dumps(
            {
                "read": len(raw),
                "stored": len(cleaned),
                "dropped": [post.id for post in raw if post.id not in kept],
                "store": str(out),
            },
            indent=2,
        )
    )


@app.command()
def check(
    ctx: typer.Context,
    claim: str = typer.Option(..., "--claim", help="The claim text."),
    time: str = typer.Option(..., "--time", help="When the claim was posted (RFC 3339)."),
    corpus: Path = typer.Option(..., "--corpus", help="Corpus store written by ingest."),
    model: Path = typer.Option(..., "--model", help="Model file written by train."),
    claim_id: str = typer.Option("claim", "--id", help="Id echoed in the result."),
    m: Optional[int] = typer.Option(None, "--m", help="Most evidence posts kept."),
    tau: Optional[float] = typer.Option(None, "--tau", help="Smallest cosine counted as evidence."),
    radius_days: Optional[int] = typer.Option(None, "--radius-days", help="Window half-width."),
    vectors: Optional[Path] = typer.Option(None, "--vectors", help="Word-vector file."),
    sentiment_lexicon: Optional[Path] = typer.Option(
        None, "--sentiment-lexicon", help="word<TAB>weight file."
    ),
    emotion_lexicon: Optional[Path] = typer.Option(
        None, "--emotion-lexicon", help="word<TAB>emotion file."
    ),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text."),
) -> None:
    """Check one claim; exits 2 when the corpus holds no evidence for it."""
    with _errors_exit():
        config = _config(
            ctx,
            m=m,
            tau=tau,
            radius_days=radius_days,
            vectors=vectors,
            sentiment_lexicon=sentiment_lexicon,
            emotion_lexicon=emotion_lexicon,
        )
        outcome = check_claim(
            claim,
            _timestamp(time),
            load_store(corpus),
            load_model(model),
            config,
            claim_id=claim_id,
        )
    data = outcome.to_dict()
    _emit({"outcome": data} if fmt is OutputFormat.TEXT else data, fmt, "verdict.txt.j2")
    if isinstance(outcome, Unverifiable):
        raise typer.Exit(EXIT_UNVERIFIABLE)


def _read_claims(path: Path, csv: bool) -> list[LabeledClaim]:
    return load_fake_real_csv(path) if csv else load_claims(path)


@app.command()
def train(
    ctx: typer.Context,
    claims: Path = typer.Option(..., "--claims", help="Labeled claims (JSONL, or CSV with --csv)."),
    corpus: Path = typer.Option(..., "--corpus", help="Corpus store written by ingest."),
    out: Path = typer.Option(..., "--out", "-o", help="Model file to write."),
    seed: int = typer.Option(0, "--seed", help="Seed for balancing, the split and the forest."),
    test_fraction: float = typer.Option(
        0.2, "--test-fraction", help="Share of claims held out for evaluation; 0 trains on all."
    ),
    trees: int = typer.Option(100, "--trees", help="Number of trees."),
    max_depth: Optional[int] = typer.Option(None, "--max-depth", help="Deepest tree level."),
    workers: int = typer.Option(1, "--workers", help="Threads for feature extraction and trees."),
    csv: bool = typer.Option(False, "--csv", help="Read claims from a title/date/label CSV."),
    report: Optional[Path] = typer.Option(None, "--report", help="Also write the report here."),
) -> None:
    """Train a forest on labeled claims and print the training report."""
    with _errors_exit():
        labeled = _read_claims(claims, csv)
        checker = CrossChecker(load_store(corpus), _config(ctx), workers=workers)
        train_config = TrainConfig(n_trees=trees, max_depth=max_depth, seed=seed)
        held_out = []
        if test_fraction > 0:
            labeled, held_out = split_claims(labeled, test_fraction, seed)
        forest, training = train_pipeline(labeled, checker, train_config)
        if held_out:
            metrics = evaluate(
                forest, held_out, checker, training_ids=[claim.id for claim in labeled]
            )
            training = replace(training, test_fraction=test_fraction, held_out=metrics)
        save_model(forest, out)
        text = dumps(training.to_dict(), indent=2)
        if report:
            report.parent.mkdir(parents=True, exist_ok=True)
            report.write_text(text + "\n", encoding="utf-8")
    typer.echo(text)


@app.command("evaluate")
def evaluate_command(
    ctx: typer.Context,
    claims: Path = typer.Option(..., "--claims", help="Labeled claims (JSONL, or CSV with --csv)."),
    corpus: Path = typer.Option(..., "--corpus", help="Corpus store written by ingest."),
    model: Path = typer.Option(..., "--model", help="Model file written by train."),
    workers: int = typer.Option(1, "--workers", help="Threads for feature extraction."),
    csv: bool = typer.Option(False, "--csv", help="Read claims from a title/date/label CSV."),
) -> None:
    """Score a model on labeled claims (fake is the positive class)."""
    with _errors_exit():
        forest = load_model(model)
        checker = CrossChecker(load_store(corpus), _config(ctx), workers=workers)
        metrics = evaluate(forest, _read_claims(claims, csv), checker)
    typer.echo(dumps(metrics.to_dict(), indent=2))


@app.command("cluster-report")
def cluster_report_command(
    ctx: typer.Context,
    corpus: Path = typer.Option(..., "--corpus", help="Corpus store written by ingest."),
    time: str = typer.Option(..., "--time", help="Window center (RFC 3339)."),
    radius_days: Optional[int] = typer.Option(None, "--radius-days", help="Window half-width."),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text."),
) -> None:
    """Show the stories found in one time window."""
    with _errors_exit():
        checker = CrossChecker(load_store(corpus), _config(ctx, radius_days=radius_days))
        try:
            data = cluster_report(checker, _timestamp(time))
        except UnverifiableError as exc:
            err_console.print(f"[bold yellow]{exc.reason}:[/bold yellow] {escape(str(exc))}")
            raise typer.Exit(EXIT_UNVERIFIABLE) from exc
    _emit({"report": data} if fmt is OutputFormat.TEXT else data, fmt, "cluster_report.txt.j2")


@app.command("extract-features")
def extract_features_command(
    ctx: typer.Context,
    claims: Path = typer.Option(..., "--claims", help="Labeled claims (JSONL, or CSV with --csv)."),
    corpus: Path = typer.Option(..., "--corpus", help="Corpus store written by ingest."),
    out: Path = typer.Option(..., "--out", "-o", help="JSONL file, one feature array per line."),
    workers: int = typer.Option(1, "--workers", help="Threads for feature extraction."),
    csv: bool = typer.Option(False, "--csv", help="Read claims from a title/date/label CSV."),
    records: bool = typer.Option(
        False,
        "--records",
        help="Write {id, label, status, features} objects for every claim instead of bare arrays.",
    ),
) -> None:
    """
    Write one JSON array of the twelve features per verifiable claim, in claim order.

    Unverifiable claims have no features; they are listed in the summary, and with ``--records``
    they get a row carrying their reason.
    """
    with _errors_exit():
        labeled = _read_claims(claims, csv)
        checker = CrossChecker(load_store(corpus), _config(ctx), workers=workers)
        results = checker.collect(labeled)
        rows: list[Any] = []
        unverifiable: dict[str, str] = {}
        for claim in labeled:
            result = results[claim.id]
            if isinstance(result, UnverifiableError):
                unverifiable[claim.id] = str(result.reason)
                if records:
                    rows.append(
                        {
                            "id": claim.id,
                            "label": str(claim.label),
                            "status": "unverifiable",
                            "reason": str(result.reason),
                        }
                    )
                continue
            features = [float(value) for value in result.values]
            if records:
                rows.append(
                    {
                        "id": claim.id,
                        "label": str(claim.label),
                        "status": "ok",
                        "features": features,
                        "layout_version": result.layout_version,
                    }
                )
            else:
                rows.append(features)
        write_jsonl(out, rows)
    typer.echo(
        dumps({"rows": len(rows), "unverifiable": unverifiable, "out": str(out)}, indent=2)
    )


@app.command()
def synthesize(
    out: Path = typer.Option(..., "--out", "-o", help="Directory to write the files into."),
    seed: int = typer.Option(0, "--seed", help="Generator seed."),
) -> None:
    """Write the seeded synthetic benchmark corpus and claims."""
    with _errors_exit():
        data = generate(seed)
        posts_path, claims_path = write_synthetic(data, out)
    typer.echo(
        dumps(
            {
                "posts": str(posts_path),
                "claims": str(claims_path),
                "n_posts": len(data.posts),
                "n_claims": len(data.claims),
            },
            indent=2,
        )
    )


if __name__ == "__main__":
    app()
