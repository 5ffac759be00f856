"""Command-line pipeline: ingest -> extract-facts -> stage1 -> stage2 ->
build-distant / eval / serve.

Configuration is one declarative JSON file; endpoint URLs and the admin token
can be overridden from the environment.  Every command writes a reproducibility
manifest next to its outputs.  Exit codes: 0 success, 1 partial failures
(valid items still written), 2 invalid configuration or arguments.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from . import __version__, jsonl
from .annotation import AnnotationService
from .errors import ConfigurationError, FactAlignError
from .facts import (
    Entity,
    EntityBundle,
    build_label_store,
    fact_from_json,
    fact_id,
    fact_to_json,
    parse_entity_facts,
    shipped_property_labels,
)
from .ingest import (
    SUPPORTED_LANGUAGES,
    Sentence,
    extract_pages,
    filter_sentences,
    page_sentences,
)
from .metrics import (
    cohen_kappa,
    corpus_bleu,
    dataset_stats,
    format_f1_table,
    format_stats_table,
    selection_f1,
)
from .providers import (
    HashEmbeddingProvider,
    IdentityTranslationProvider,
    LexiconContentTagger,
    LexiconTranslationProvider,
    OverlapAlignmentClassifier,
    OverlapEntailmentProvider,
    PermissiveContentTagger,
    RemoteAlignmentClassifier,
    RemoteEmbeddingProvider,
    RemoteEntailmentProvider,
    RemoteTranslationProvider,
    ScriptLanguageDetector,
    TranslatingEmbeddingProvider,
)
from .stage1 import (
    CandidateSet,
    ScoredCandidate,
    Stage1Config,
    build_tfidf_index,
    bundle_index_documents,
    generate_candidates,
)
from .stage2 import (
    AlignedInstance,
    aligned_pages_from_instances,
    baseline_overlap_select,
    build_distant_dataset,
    select_by_classifier,
    select_by_entailment,
)

logger = logging.getLogger("factalign")

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_CONFIG = 2

_ENV_OVERRIDES = {
    "embed_url": "FACTALIGN_EMBED_URL",
    "translate_url": "FACTALIGN_TRANSLATE_URL",
    "nli_url": "FACTALIGN_NLI_URL",
    "align_url": "FACTALIGN_ALIGN_URL",
}


@dataclass
class ProviderSet:
    embedder: object
    translator: object
    nli: object
    classifier: object


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        config = json.loads(Path(path).read_text("utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot load config {path}: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigurationError("config must be a JSON object")
    languages = config.get("languages", [])
    bad = [l for l in languages if l not in SUPPORTED_LANGUAGES]
    if bad:
        raise ConfigurationError(f"unsupported languages {bad}; supported: {SUPPORTED_LANGUAGES}")
    config["_base_dir"] = str(Path(path).resolve().parent)
    return config


def _config_path(config: Mapping, value: str | None) -> str | None:
    """Resolve a config-relative path."""
    if value is None:
        return None
    path = Path(value)
    if not path.is_absolute() and "_base_dir" in config:
        path = Path(config["_base_dir"]) / path
    return str(path)


def build_providers(config: Mapping) -> ProviderSet:
    spec = config.get("providers", "mock")
    if spec == "mock" or spec is None:
        dim = int(config.get("embed_dim", 64))
        lexicon_path = _config_path(config, config.get("translation_lexicon"))
        if lexicon_path:
            translator = LexiconTranslationProvider.from_json(
                json.loads(Path(lexicon_path).read_text("utf-8"))
            )
            # Pivot the hash embedder through the dictionary so cross-script
            # cosine reflects shared meaning, like a multilingual encoder.
            embedder = TranslatingEmbeddingProvider(HashEmbeddingProvider(dim=dim), translator)
        else:
            translator = IdentityTranslationProvider()
            embedder = HashEmbeddingProvider(dim=dim)
        return ProviderSet(
            embedder=embedder,
            translator=translator,
            nli=OverlapEntailmentProvider(threshold=float(config.get("nli_threshold", 0.5))),
            classifier=OverlapAlignmentClassifier(),
        )
    if not isinstance(spec, Mapping):
        raise ConfigurationError("providers must be 'mock' or an endpoint mapping")
    endpoints = dict(spec)
    for key, env in _ENV_OVERRIDES.items():
        if os.environ.get(env):
            endpoints[key] = os.environ[env]
    missing = [k for k in _ENV_OVERRIDES if not endpoints.get(k)]
    if missing:
        raise ConfigurationError(f"provider endpoints missing: {missing}")
    return ProviderSet(
        embedder=RemoteEmbeddingProvider(endpoints["embed_url"]),
        translator=RemoteTranslationProvider(endpoints["translate_url"]),
        nli=RemoteEntailmentProvider(endpoints["nli_url"]),
        classifier=RemoteAlignmentClassifier(endpoints["align_url"]),
    )


def _load_lexicon_tagger(config: Mapping):
    lexicons = config.get("lexicons") or {}
    if not lexicons:
        return PermissiveContentTagger()
    loaded = {}
    for language, path in lexicons.items():
        loaded[language] = json.loads(Path(_config_path(config, path)).read_text("utf-8"))
    return LexiconContentTagger(loaded)


# ---------------------------------------------------------------------------
# Row (de)serialization


def sentence_to_row(sentence: Sentence) -> dict:
    return {
        "text": sentence.text,
        "language": sentence.language,
        "section": sentence.section,
        "page_id": sentence.page_id,
        "entity_id": sentence.entity_id,
        "ordinal": sentence.ordinal,
    }


def sentence_from_row(row: Mapping) -> Sentence:
    return Sentence(
        text=row["text"],
        language=row["language"],
        section=row["section"],
        page_id=row["page_id"],
        entity_id=row["entity_id"],
        ordinal=row["ordinal"],
    )


def candidate_set_to_row(cs: CandidateSet) -> dict:
    return {
        "sentence": sentence_to_row(cs.sentence),
        "candidates": [
            {
                "fact_id": fact_id(c.fact),
                "fact": fact_to_json(c.fact),
                "score": c.score,
                "components": dict(c.components),
            }
            for c in cs.candidates
        ],
    }


def candidate_set_from_row(row: Mapping) -> CandidateSet:
    return CandidateSet(
        sentence=sentence_from_row(row["sentence"]),
        candidates=tuple(
            ScoredCandidate(
                fact=fact_from_json(c["fact"]),
                score=c["score"],
                components=dict(c["components"]),
            )
            for c in row["candidates"]
        ),
    )


def aligned_to_row(instance: AlignedInstance) -> dict:
    return {
        "sentence": sentence_to_row(instance.sentence),
        "facts": [fact_to_json(f) for f in instance.facts],
        "method": instance.method,
        "section": instance.section,
    }


def aligned_from_row(row: Mapping) -> AlignedInstance:
    return AlignedInstance(
        sentence=sentence_from_row(row["sentence"]),
        facts=tuple(fact_from_json(f) for f in row["facts"]),
        method=row["method"],
        section=row["section"],
    )


# ---------------------------------------------------------------------------
# Commands


def cmd_ingest(args, config: Mapping) -> int:
    dump = args.dump or _config_path(config, (config.get("paths", {}).get("dumps") or {}).get(args.language))
    if not dump:
        raise ConfigurationError("no dump file given (--dump or config paths.dumps.<language>)")
    entity_map = {}
    map_path = args.entity_map or _config_path(config, (config.get("entity_maps") or {}).get(args.language))
    if map_path:
        entity_map = json.loads(Path(map_path).read_text("utf-8"))

    detector = ScriptLanguageDetector.for_expected(args.language)
    tagger = _load_lexicon_tagger(config)

    kept_rows: list[dict] = []
    rejected_rows: list[dict] = []
    for page in extract_pages(dump, args.language, entity_map=entity_map):
        report = filter_sentences(page_sentences(page), args.language, detector, tagger)
        kept_rows.extend(sentence_to_row(s) for s in report.kept)
        for sentence, reason in report.rejected:
            rejected_rows.append({**sentence_to_row(sentence), "reason": reason.value})

    out = Path(args.out)
    jsonl.write_jsonl(out, kept_rows, jsonl.validate_sentence_row)
    if args.rejected:
        jsonl.write_jsonl(args.rejected, rejected_rows, jsonl.validate_rejected_row)
    jsonl.write_manifest(
        out,
        config={"command": "ingest", "language": args.language, "dump": Path(dump).name},
        inputs=[dump],
        seed=config.get("seed"),
    )
    logger.info("ingest: %d kept, %d rejected", len(kept_rows), len(rejected_rows))
    return EXIT_OK


def cmd_extract_facts(args, config: Mapping) -> int:
    entities = args.entities or _config_path(config, config.get("paths", {}).get("entities"))
    if not entities:
        raise ConfigurationError("no entity dump given (--entities or config paths.entities)")
    property_labels = shipped_property_labels()
    if args.property_labels:
        property_labels = {**property_labels, **json.loads(Path(args.property_labels).read_text("utf-8"))}

    docs = list(jsonl.read_jsonl(entities))
    label_store = build_label_store(docs)
    rows: list[dict] = []
    failures = 0
    counters: dict[str, int] = {}
    for doc in docs:
        try:
            for fact in parse_entity_facts(
                doc, property_labels=property_labels, label_store=label_store, counters=counters
            ):
                rows.append(fact_to_json(fact))
        except FactAlignError as exc:
            failures += 1
            logger.error("entity %s: %s", doc.get("id"), exc)

    out = Path(args.out)
    jsonl.write_jsonl(out, rows, jsonl.validate_fact_row)
    jsonl.write_manifest(
        out,
        config={"command": "extract-facts", "entities": Path(entities).name},
        inputs=[entities],
        seed=config.get("seed"),
    )
    logger.info("extract-facts: %d facts, %d failed entities, skipped=%s", len(rows), failures, counters)
    return EXIT_PARTIAL if failures else EXIT_OK


def _stage1_config(args, config: Mapping) -> Stage1Config:
    section = config.get("stage1", {})
    tau = args.tau if args.tau is not None else section.get("tau", 0.65)
    k = args.k if args.k is not None else section.get("k", 10)
    weights = section.get("weights", [0.25, 0.25, 0.25, 0.25])
    if args.weights:
        weights = [float(w) for w in args.weights.split(",")]
    return Stage1Config(tau=float(tau), k=int(k), component_weights=tuple(weights))


def _load_bundles(sentence_paths: Sequence[str], facts_path: str) -> list[EntityBundle]:
    facts_by_subject: dict[str, list] = {}
    subject_labels: dict[str, dict] = {}
    for row in jsonl.read_jsonl(facts_path, jsonl.validate_fact_row):
        fact = fact_from_json(row)
        facts_by_subject.setdefault(fact.subject.qid, []).append(fact)
        subject_labels[fact.subject.qid] = dict(fact.subject.labels)

    sentences_by_bundle: dict[tuple[str, str], list[Sentence]] = {}
    for path in sentence_paths:
        for row in jsonl.read_jsonl(path, jsonl.validate_sentence_row):
            sentence = sentence_from_row(row)
            if not sentence.entity_id:
                continue  # no entity join; cannot form a bundle
            sentences_by_bundle.setdefault((sentence.entity_id, sentence.language), []).append(sentence)

    bundles = []
    for (qid, language), sentences in sorted(sentences_by_bundle.items()):
        facts = facts_by_subject.get(qid)
        if not facts:
            continue
        sentences.sort(key=lambda s: (s.page_id, s.ordinal))
        bundles.append(
            EntityBundle(
                entity=Entity(qid, subject_labels.get(qid, {})),
                language=language,
                facts=list(facts),
                sentences=sentences,
            )
        )
    return bundles


def cmd_stage1(args, config: Mapping) -> int:
    cfg = _stage1_config(args, config)
    providers = build_providers(config)
    bundles = _load_bundles(args.sentences, args.facts)

    # Shared per-language indexes over the whole bundle collection keep
    # scoring identical however bundles are partitioned across workers.
    lr_docs: dict[str, list[str]] = {}
    en_docs: list[str] = []
    for bundle in bundles:
        lr, en = bundle_index_documents(bundle, providers.translator)
        lr_docs.setdefault(bundle.language, []).extend(lr)
        en_docs.extend(en)
    indexes_lr = {language: build_tfidf_index(docs) for language, docs in lr_docs.items()}
    index_en = build_tfidf_index(en_docs) if en_docs else None

    failures = 0
    results: list[CandidateSet] = []

    def run_bundle(bundle: EntityBundle) -> list[CandidateSet]:
        return generate_candidates(
            bundle,
            cfg,
            embedder=providers.embedder,
            translator=providers.translator,
            index_lr=indexes_lr[bundle.language],
            index_en=index_en,
        )

    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        for bundle, outcome in zip(bundles, pool.map(_shield(run_bundle), bundles)):
            if isinstance(outcome, Exception):
                failures += 1
                logger.error("bundle (%s, %s): %s", bundle.entity.qid, bundle.language, outcome)
            else:
                results.extend(outcome)

    results.sort(key=lambda cs: (cs.sentence.language, cs.sentence.page_id, cs.sentence.ordinal))
    for cs in results:
        cs.validate(cfg)
    out = Path(args.out)
    jsonl.write_jsonl(out, (candidate_set_to_row(cs) for cs in results), jsonl.validate_candidate_row)
    jsonl.write_manifest(
        out,
        config={
            "command": "stage1",
            "tau": cfg.tau,
            "k": cfg.k,
            "weights": list(cfg.component_weights),
        },
        inputs=list(args.sentences) + [args.facts],
        seed=config.get("seed"),
    )
    logger.info("stage1: %d candidate sets from %d bundles", len(results), len(bundles))
    return EXIT_PARTIAL if failures else EXIT_OK


def _shield(fn):
    def wrapped(item):
        try:
            return fn(item)
        except Exception as exc:  # collected by the caller; run continues
            return exc

    return wrapped


def cmd_stage2(args, config: Mapping) -> int:
    section = config.get("stage2", {})
    selector = args.selector or section.get("selector", "entailment")
    cutoff = args.cutoff if args.cutoff is not None else float(section.get("cutoff", 0.5))
    providers = build_providers(config)

    candidate_sets = [
        candidate_set_from_row(row)
        for row in jsonl.read_jsonl(args.candidates, jsonl.validate_candidate_row)
    ]

    def select(cs: CandidateSet):
        if selector == "entailment":
            return select_by_entailment(cs, providers.nli)
        if selector == "classifier":
            return select_by_classifier(cs, providers.classifier, cutoff)
        if selector == "overlap":
            return baseline_overlap_select(cs, cutoff)
        raise ConfigurationError(f"unknown selector {selector!r}")

    if selector not in ("entailment", "classifier", "overlap"):
        raise ConfigurationError(f"unknown selector {selector!r}")

    failures = 0
    instances: list[AlignedInstance] = []
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        for cs, outcome in zip(candidate_sets, pool.map(_shield(select), candidate_sets)):
            if isinstance(outcome, Exception):
                failures += 1
                logger.error("candidate set %s/%d: %s", cs.sentence.page_id, cs.sentence.ordinal, outcome)
            elif outcome is not None:
                instances.append(outcome)

    instances.sort(key=lambda i: (i.sentence.language, i.sentence.page_id, i.sentence.ordinal))
    out = Path(args.out)
    jsonl.write_jsonl(out, (aligned_to_row(i) for i in instances), jsonl.validate_aligned_row)
    jsonl.write_manifest(
        out,
        config={"command": "stage2", "selector": selector, "cutoff": cutoff},
        inputs=[args.candidates],
        seed=config.get("seed"),
    )
    logger.info("stage2: %d aligned instances from %d candidate sets", len(instances), len(candidate_sets))
    return EXIT_PARTIAL if failures else EXIT_OK


def cmd_build_distant(args, config: Mapping) -> int:
    seed = args.seed if args.seed is not None else config.get("seed")
    if seed is None:
        raise ConfigurationError("distant dataset construction needs --seed (or config seed)")
    providers = build_providers(config)
    instances = [
        aligned_from_row(row) for row in jsonl.read_jsonl(args.aligned, jsonl.validate_aligned_row)
    ]
    sentences = [
        sentence_from_row(row)
        for row in jsonl.read_jsonl(args.sentences, jsonl.validate_sentence_row)
    ]
    pages = aligned_pages_from_instances(sentences, instances)
    dataset = build_distant_dataset(pages, providers.embedder, int(seed))

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    train_path = out_dir / "train.jsonl"
    validation_path = out_dir / "validation.jsonl"

    def rows(examples):
        for example in examples:
            yield {
                "pair_text": example.pair_text,
                "label": example.label,
                "source_page": example.source_page,
                "sentence_ordinal": example.sentence_ordinal,
            }

    jsonl.write_jsonl(train_path, rows(dataset.train), jsonl.validate_pair_row)
    jsonl.write_jsonl(validation_path, rows(dataset.validation), jsonl.validate_pair_row)
    (out_dir / "distant_manifest.json").write_text(
        jsonl.canonical_json(
            {
                "seed": dataset.seed,
                "counts": {
                    "train": len(dataset.train),
                    "validation": len(dataset.validation),
                    "positive": dataset.positive_count,
                    "negative": dataset.negative_count,
                    "skipped_negatives": dataset.skipped_negatives,
                },
            }
        )
        + "\n",
        encoding="utf-8",
    )
    jsonl.write_manifest(
        train_path,
        config={"command": "build-distant"},
        inputs=[args.aligned, args.sentences],
        seed=int(seed),
    )
    logger.info(
        "build-distant: %d train, %d validation (%d+/%d-, %d skipped)",
        len(dataset.train),
        len(dataset.validation),
        dataset.positive_count,
        dataset.negative_count,
        dataset.skipped_negatives,
    )
    return EXIT_OK


def cmd_eval(args, config: Mapping) -> int:
    if args.metric == "kappa":
        a = json.loads(Path(args.a).read_text("utf-8"))
        b = json.loads(Path(args.b).read_text("utf-8"))
        kappa = cohen_kappa(a, b)
        print(f"kappa: {kappa:.6f}")
        return EXIT_OK
    if args.metric == "bleu":
        hypotheses = Path(args.hypotheses).read_text("utf-8").splitlines()
        references = Path(args.references).read_text("utf-8").splitlines()
        score = corpus_bleu(hypotheses, references)
        print(f"bleu: {100.0 * score:.2f}")  # in [0, 100] as conventionally presented
        return EXIT_OK
    if args.metric == "f1":
        predicted_rows = list(jsonl.read_jsonl(args.predicted))
        gold_rows = list(jsonl.read_jsonl(args.gold))
        if len(predicted_rows) != len(gold_rows):
            raise ConfigurationError(
                f"predicted has {len(predicted_rows)} rows, gold has {len(gold_rows)}"
            )
        predicted = [set(row["fact_ids"]) for row in predicted_rows]
        gold = [set(row["fact_ids"]) for row in gold_rows]
        tags = [row.get("language", "") for row in gold_rows]
        report = selection_f1(predicted, gold, tags)
        print(format_f1_table(report))
        print(jsonl.canonical_json(report.to_json()))
        return EXIT_OK
    if args.metric == "stats":
        instances = [
            aligned_from_row(row) for row in jsonl.read_jsonl(args.aligned, jsonl.validate_aligned_row)
        ]
        instances = [i for i in instances if i.sentence.language == args.language]
        report = dataset_stats(instances, args.language)
        print(format_stats_table(report, args.language))
        print(jsonl.canonical_json(report.to_json()))
        return EXIT_OK
    raise ConfigurationError(f"unknown metric {args.metric!r}")


def cmd_serve(args, config: Mapping) -> int:
    import uvicorn

    from .annotation_api import create_app

    section = config.get("annotation", {})
    token = os.environ.get("FACTALIGN_ADMIN_TOKEN") or section.get("admin_token")
    if not token:
        raise ConfigurationError("admin token required (config annotation.admin_token or env)")
    service = AnnotationService(
        log_path=args.log or _config_path(config, section.get("log_path")),
        golden_quota=int(section.get("quota", 60)),
        default_top_n=int(section.get("top_n", 4)),
    )
    app = create_app(service, token)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="factalign", description=__doc__)
    parser.add_argument("--version", action="version", version=f"factalign {__version__}")
    parser.add_argument("--config", help="pipeline config JSON")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="extract, split and filter dump sentences")
    p.add_argument("--language", required=True, choices=SUPPORTED_LANGUAGES)
    p.add_argument("--dump", help="XML dump path (.xml, .xml.bz2, .xml.gz)")
    p.add_argument("--entity-map", help="JSON mapping page title -> entity id")
    p.add_argument("--out", required=True, help="kept sentences JSONL")
    p.add_argument("--rejected", help="optional sidecar JSONL with reject reasons")
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("extract-facts", help="parse an entity dump into facts JSONL")
    p.add_argument("--entities", help="entity dump JSONL (one entity per line)")
    p.add_argument("--property-labels", help="extra property label JSON")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_extract_facts)

    p = sub.add_parser("stage1", help="candidate generation")
    p.add_argument("--sentences", nargs="+", required=True)
    p.add_argument("--facts", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--tau", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--weights", help="4 comma-separated component weights")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_stage1)

    p = sub.add_parser("stage2", help="candidate selection")
    p.add_argument("--candidates", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--selector", choices=["entailment", "classifier", "overlap"])
    p.add_argument("--cutoff", type=float)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_stage2)

    p = sub.add_parser("build-distant", help="distant-supervision pair dataset")
    p.add_argument("--aligned", required=True)
    p.add_argument("--sentences", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int)
    p.set_defaults(fn=cmd_build_distant)

    p = sub.add_parser("eval", help="metrics over files")
    ev = p.add_subparsers(dest="metric", required=True)
    q = ev.add_parser("f1")
    q.add_argument("--predicted", required=True, help="JSONL rows {fact_ids:[...]}")
    q.add_argument("--gold", required=True, help="JSONL rows {fact_ids:[...], language}")
    q.set_defaults(fn=cmd_eval)
    q = ev.add_parser("kappa")
    q.add_argument("--a", required=True, help="JSON array of marks")
    q.add_argument("--b", required=True, help="JSON array of marks")
    q.set_defaults(fn=cmd_eval)
    q = ev.add_parser("bleu")
    q.add_argument("--hypotheses", required=True, help="one hypothesis per line")
    q.add_argument("--references", required=True, help="one reference per line")
    q.set_defaults(fn=cmd_eval)
    q = ev.add_parser("stats")
    q.add_argument("--aligned", required=True)
    q.add_argument("--language", required=True, choices=SUPPORTED_LANGUAGES)
    q.set_defaults(fn=cmd_eval)

    p = sub.add_parser("serve", help="run the annotation HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8040)
    p.add_argument("--log", help="event log path override")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = load_config(args.config)
    except ConfigurationError as exc:
        logger.error("%s", exc)
        return EXIT_CONFIG
    try:
        return args.fn(args, config)
    except ConfigurationError as exc:
        logger.error("%s", exc)
        return EXIT_CONFIG
    except FactAlignError as exc:
        logger.error("%s", exc)
        return EXIT_PARTIAL


if __name__ == "__main__":
    sys.exit(main())
