"""Generate candidate summaries for a split subset.

Consumes the workbench corpus JSONL and split JSON files and writes a
candidate JSONL (header with model_name + model_card, then one
{id, summary} line per record) plus a loss-log sidecar with one JSON line
per training epoch (raw numbers only; empty in dry-run mode).
"""

from __future__ import annotations

import json
from pathlib import Path

from .config import AdapterConfig

SENTENCE_TERMINATORS = (".", "?", "!", "؟", "؛")


def first_sentence(text: str) -> str:
    """Everything up to the first terminator followed by space or EOT."""
    stripped = text.strip()
    for i, ch in enumerate(stripped):
        if ch in SENTENCE_TERMINATORS and (i + 1 == len(stripped) or stripped[i + 1].isspace()):
            return stripped[: i + 1]
    return stripped


def load_corpus_texts(path: Path) -> dict[str, str]:
    texts = {}
    with open(path, encoding="utf-8") as fh:
        for row, line in enumerate(fh):
            if not line.strip():
                continue
            record = json.loads(line)
            if "id" not in record or "section_content" not in record:
                raise ValueError(f"corpus row {row}: needs id and section_content")
            texts[record["id"]] = record["section_content"]
    return texts


def load_split_ids(path: Path, subset: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        split = json.load(fh)
    if subset not in split:
        raise ValueError(f"split file has no {subset!r} subset")
    return list(split[subset])


def _generate_with_model(texts: dict[str, str], ids: list[str], config: AdapterConfig, loss_log):
    """Fine-tune the checkpoint with the configured hyperparameters, then
    generate one summary per id.  Requires torch + transformers + weights."""
    import torch
    from transformers import AutoModelForSeq2SeqLM, AutoTokenizer

    torch.manual_seed(config.seed)
    tokenizer = AutoTokenizer.from_pretrained(config.checkpoint_id)
    model = AutoModelForSeq2SeqLM.from_pretrained(config.checkpoint_id)
    optimizer = torch.optim.AdamW(
        model.parameters(), lr=config.learning_rate, weight_decay=config.weight_decay
    )
    train_items = [(i, t) for i, t in texts.items() if i not in set(ids)]
    model.train()
    for epoch in range(1, config.epochs + 1):
        epoch_loss = 0.0
        batches = 0
        for start in range(0, len(train_items), config.batch_size):
            batch = train_items[start : start + config.batch_size]
            enc = tokenizer(
                [t for _, t in batch],
                truncation=True,
                max_length=config.max_input_tokens,
                padding=True,
                return_tensors="pt",
            )
            # self-supervised fallback target: the input itself, truncated
            dec = tokenizer(
                [t for _, t in batch],
                truncation=True,
                max_length=config.max_summary_tokens,
                padding=True,
                return_tensors="pt",
            )
            out = model(**enc, labels=dec["input_ids"])
            out.loss.backward()
            optimizer.step()
            optimizer.zero_grad()
            epoch_loss += float(out.loss)
            batches += 1
        loss_log.write(
            json.dumps(
                {"epoch": epoch, "train_loss": epoch_loss / max(batches, 1), "validation_loss": None}
            )
            + "\n"
        )
    model.eval()
    summaries = {}
    with torch.no_grad():
        for record_id in ids:
            enc = tokenizer(
                texts[record_id],
                truncation=True,
                max_length=config.max_input_tokens,
                return_tensors="pt",
            )
            generated = model.generate(
                **enc,
                max_length=config.max_summary_tokens,
                num_beams=config.num_beams,
                length_penalty=config.length_penalty,
            )
            summaries[record_id] = tokenizer.decode(generated[0], skip_special_tokens=True)
    return summaries


def generate_candidates(
    corpus_path: str | Path,
    split_path: str | Path,
    subset: str,
    config: AdapterConfig,
    out_path: str | Path,
    loss_log_path: str | Path,
    dry_run: bool = False,
) -> int:
    """Write the candidate file; returns the number of summaries emitted.

    On any failure the partial output is removed before the error
    propagates.
    """
    texts = load_corpus_texts(Path(corpus_path))
    ids = load_split_ids(Path(split_path), subset)
    missing = [i for i in ids if i not in texts]
    if missing:
        raise ValueError(f"split ids missing from corpus: {', '.join(sorted(missing))}")
    out_path = Path(out_path)
    loss_log_path = Path(loss_log_path)
    try:
        with open(loss_log_path, "w", encoding="utf-8") as loss_log:
            if dry_run:
                summaries = {i: first_sentence(texts[i]) for i in ids}
            else:
                summaries = _generate_with_model(texts, ids, config, loss_log)
        with open(out_path, "w", encoding="utf-8") as fh:
            header = {"model_name": config.checkpoint, "model_card": config.to_model_card()}
            fh.write(json.dumps(header, ensure_ascii=False) + "\n")
            for record_id in ids:
                fh.write(
                    json.dumps(
                        {"id": record_id, "summary": summaries[record_id]}, ensure_ascii=False
                    )
                    + "\n"
                )
    except Exception:
        out_path.unlink(missing_ok=True)
        loss_log_path.unlink(missing_ok=True)
        raise
    return len(ids)
