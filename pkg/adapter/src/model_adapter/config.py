"""Adapter configuration: training hyperparameters and token budgets.

Defaults: 10 epochs, lr 5e-5, weight decay 1%, batch size 4, adamW, with
1024/256 input/summary token budgets; every field is overridable from the
command line and recorded verbatim in the emitted model card.  Decoding
parameters carry documented defaults and make no reproduction claim.
"""

from __future__ import annotations

from dataclasses import dataclass

CHECKPOINTS = {
    "AraBART": "moussaKam/AraBART",
    "mBART50": "facebook/mbart-large-50",
    "AraT5": "marefa-nlp/summarization-arabic-english-news",
    "MT5": "google/mt5-base",
}


@dataclass(frozen=True)
class AdapterConfig:
    checkpoint: str = "AraBART"
    epochs: int = 10
    learning_rate: float = 5e-5
    weight_decay: float = 0.01
    batch_size: int = 4
    optimizer: str = "adamW"
    max_input_tokens: int = 1024
    max_summary_tokens: int = 256
    seed: int = 0
    num_beams: int = 4
    length_penalty: float = 1.0

    def __post_init__(self):
        if self.checkpoint not in CHECKPOINTS:
            raise ValueError(
                f"unknown checkpoint {self.checkpoint!r} (choices: {', '.join(CHECKPOINTS)})"
            )

    @property
    def checkpoint_id(self) -> str:
        return CHECKPOINTS[self.checkpoint]

    def to_model_card(self) -> dict:
        """The candidate-file model_card object, field for field."""
        return {
            "checkpoint": self.checkpoint_id,
            "epochs": self.epochs,
            "learning_rate": self.learning_rate,
            "weight_decay": self.weight_decay,
            "batch_size": self.batch_size,
            "optimizer": self.optimizer,
            "max_input_tokens": self.max_input_tokens,
            "max_summary_tokens": self.max_summary_tokens,
        }
