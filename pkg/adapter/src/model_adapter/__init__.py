"""Optional model runner: fine-tune/infer seq2seq checkpoints and emit
candidate summaries in the workbench candidate JSONL wire format.

Real inference needs torch + transformers and downloaded weights; the
``--dry-run`` mode exercises the full file contract with no model at all.
"""

__version__ = "0.1.0"
