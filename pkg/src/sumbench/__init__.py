"""Evaluation workbench for Arabic textbook summarization.

Pipeline: ingest and clean a sectioned-textbook corpus, split it
deterministically, generate extractive baseline summaries, score candidate
summaries with ROUGE against expert references, collect blind 1-10 expert
ratings over HTTP, and render score/rating tables.
"""

__version__ = "0.1.0"
