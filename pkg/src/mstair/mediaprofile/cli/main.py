"""
``mediaprofile`` command line.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

Example:
    mediaprofile synth work/
    mediaprofile --config work/mediaprofile.toml extract
    mediaprofile --config work/mediaprofile.toml evaluate --task factuality
    mediaprofile --config work/mediaprofile.toml report
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, TypeVar

import click

from mstair.mediaprofile.base.config import PipelineConfig, load_config
from mstair.mediaprofile.base.errors import MediaProfileError
from mstair.mediaprofile.base.fs_helpers import fs_atomic_write_text
from mstair.mediaprofile.cli import pipeline
from mstair.mediaprofile.corpus.synthetic import PLANTABLE_FAMILIES, build_synthetic_corpus
from mstair.mediaprofile.io.display_formatter import DisplayFormatter
from mstair.mediaprofile.xlogging.core_logger import initialize_root
from mstair.mediaprofile.xlogging.logger_constants import TRACE
from mstair.mediaprofile.xlogging.logger_factory import create_logger
from mstair.mediaprofile.xlogging.logger_util import get_root_level_from_environment


__all__ = ["cli", "main"]

_LOG = create_logger(__name__)

_F = TypeVar("_F", bound=Callable[..., Any])


def _root_level(verbose: int, quiet: bool) -> int:
    if quiet:
        return logging.ERROR
    if verbose >= 2:
        return TRACE
    if verbose == 1:
        return logging.DEBUG
    return get_root_level_from_environment() or logging.INFO


def _config(ctx: click.Context, **overrides: Any) -> PipelineConfig:
    obj = ctx.ensure_object(dict)
    return load_config(obj.get("config"), overrides={**obj.get("overrides", {}), **overrides})


# ---------- shared options ----------


def _path_options(func: _F) -> _F:
    options = [
        click.option("--corpus", type=click.Path(path_type=Path), help="corpus.csv path."),
        click.option(
            "--bundle-root", type=click.Path(path_type=Path), help="Directory of evidence bundles."
        ),
        click.option("--embeddings", type=click.Path(path_type=Path), help="word2vec file."),
        click.option("--cache-dir", type=click.Path(path_type=Path), help="Feature cache."),
        click.option("--output-dir", type=click.Path(path_type=Path), help="Artifact directory."),
        click.option(
            "--enable-url-ngrams/--no-url-ngrams",
            default=None,
            help="Add character n-grams of the URL to the url family.",
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _task_option(func: _F) -> _F:
    return click.option(
        "--task",
        "tasks",
        help="Comma-separated tasks: factuality, bias7, bias3 (default: all).",
    )(func)


def _families_option(func: _F) -> _F:
    return click.option(
        "--families",
        help="Comma-separated families for the full system (default: all five).",
    )(func)


# ---------- commands ----------


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--config",
    "config_path",
    type=click.Path(path_type=Path, dir_okay=False),
    help="TOML file of flat key = value settings.",
)
@click.option("--seed", type=int, help="Seed for every fold assignment.")
@click.option("--workers", type=int, help="Threads for extraction and grid search.")
@click.option("-v", "--verbose", count=True, help="DEBUG logging; twice for TRACE.")
@click.option("-q", "--quiet", is_flag=True, help="Only log errors.")
@click.pass_context
def cli(
    ctx: click.Context,
    config_path: Path | None,
    seed: int | None,
    workers: int | None,
    verbose: int,
    quiet: bool,
) -> None:
    """Predict factuality and political bias of news media."""
    initialize_root(level=_root_level(verbose, quiet))
    ctx.ensure_object(dict)
    ctx.obj["config"] = config_path
    ctx.obj["overrides"] = {"seed": seed, "workers": workers}


@cli.command()
@_path_options
@click.pass_context
def extract(ctx: click.Context, **paths: Any) -> None:
    """Featurize every medium into the feature cache."""
    cfg = _config(ctx, **paths)
    features = pipeline.extract_features(cfg)
    click.echo(
        f"{len(features.matrix)} row(s), dim {features.matrix.manifest.dim}, "
        f"{len(features.matrix.skipped)} skipped, manifest {features.manifest_hash[:12]}"
    )


@cli.command()
@_path_options
@_task_option
@_families_option
@click.pass_context
def train(ctx: click.Context, **options: Any) -> None:
    """Fit the final model per task on every cached medium."""
    for path in pipeline.train_models(_config(ctx, **options)):
        click.echo(str(path))


@cli.command()
@_path_options
@_task_option
@_families_option
@click.option(
    "--subset",
    "subsets",
    multiple=True,
    help="Feature selector for one table row, e.g. twitter:counts or traffic+url. Repeatable.",
)
@click.option(
    "--per-feature",
    is_flag=True,
    help="One row per single feature and per whole family, ahead of any --subset rows.",
)
@click.pass_context
def evaluate(
    ctx: click.Context, subsets: tuple[str, ...], per_feature: bool, **options: Any
) -> None:
    """Cross-validate feature subsets and write a results table per task."""
    cfg = _config(ctx, **options)
    for path in pipeline.evaluate_tasks(cfg, subsets, per_feature=per_feature):
        click.echo(str(path))


@cli.command()
@_path_options
@_task_option
@click.pass_context
def ablate(ctx: click.Context, **options: Any) -> None:
    """Cross-validate the full system and the full system without each family."""
    for path in pipeline.ablate_tasks(_config(ctx, **options)):
        click.echo(str(path))


@cli.command()
@click.option("--output-dir", type=click.Path(path_type=Path), help="Artifact directory.")
@click.pass_context
def report(ctx: click.Context, output_dir: Path | None) -> None:
    """Collect every saved table into one markdown report."""
    cfg = _config(ctx, output_dir=output_dir)
    click.echo(pipeline.write_report(cfg.output_dir).read_text(encoding="utf-8"), nl=False)


@cli.command()
@click.argument("model", type=click.Path(path_type=Path, dir_okay=False))
@click.option("--task", required=True, help="Task the model was trained for.")
@_path_options
@click.pass_context
def predict(ctx: click.Context, model: Path, task: str, **paths: Any) -> None:
    """Label every cached medium with a saved model."""
    cfg = _config(ctx, **paths)
    for medium_id, label in pipeline.predict_cached(cfg, model, task):
        click.echo(f"{medium_id}\t{label}")


@cli.command()
@click.option("--corpus", type=click.Path(path_type=Path), help="corpus.csv path.")
@click.option("--bundle-root", type=click.Path(path_type=Path), help="Bundle directory.")
@click.pass_context
def stats(ctx: click.Context, corpus: Path | None, bundle_root: Path | None) -> None:
    """Label distribution and evidence coverage of the corpus."""
    cfg = _config(ctx, corpus=corpus, bundle_root=bundle_root)
    click.echo(DisplayFormatter().to_json(pipeline.stats_for_corpus(cfg).to_json()))


@cli.command()
@click.argument("root", type=click.Path(path_type=Path, file_okay=False))
@click.option("--n-media", type=int, default=60, show_default=True)
@click.option(
    "--planted",
    default="wikipedia",
    show_default=True,
    help=f"Comma-separated families carrying signal, from {', '.join(PLANTABLE_FAMILIES)}.",
)
@click.pass_context
def synth(ctx: click.Context, root: Path, n_media: int, planted: str) -> None:
    """Write a synthetic planted-signal corpus and a config file pointing at it."""
    seed = ctx.ensure_object(dict)["overrides"].get("seed") or 0
    families = tuple(p.strip() for p in planted.split(",") if p.strip())
    try:
        corpus = build_synthetic_corpus(root, n_media=n_media, seed=seed, planted=families)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--planted/--n-media") from exc
    lines = [
        f'corpus = "{corpus.corpus.as_posix()}"',
        f'bundle_root = "{corpus.bundle_root.as_posix()}"',
        f'embeddings = "{corpus.embeddings.as_posix()}"',
        f'cache_dir = "{(root / ".cache").as_posix()}"',
        f'output_dir = "{(root / "results").as_posix()}"',
    ]
    config = fs_atomic_write_text(root / "mediaprofile.toml", "\n".join(lines) + "\n")
    click.echo(str(config))


# ---------- entry point ----------


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run the CLI and map failures to exit codes.

    :param argv: Arguments without the program name; ``sys.argv[1:]`` when omitted.
    """
    try:
        result = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="mediaprofile",
            standalone_mode=False,
        )
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except MediaProfileError as exc:
        if exc.exit_code == 3:
            _LOG.exception("internal error: %s", exc)
        else:
            _LOG.error("%s", exc)
        return exc.exit_code
    except Exception as exc:
        _LOG.exception("internal error: %s", exc)
        return 3
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    raise SystemExit(main())
