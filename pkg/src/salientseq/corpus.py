"""Labeled text corpora: file loading, synthetic planted-signal generation,
splits, and train-split token frequency counts.

Corpus files come in two shapes:

* jsonl: one object per line with keys ``text``, optional ``pair``,
  ``label`` (int) and optional ``split`` in {train, val, test};
* tsv: ``label<TAB>text[<TAB>pair]``. The tsv shape carries no split
  column, so every row lands in the train list and stages that need val or
  test data enforce non-emptiness themselves via :meth:`CorpusSplit.validate`.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError, ValidationError

TASK_CLASSIFICATION = "classification"
TASK_INFERENCE = "inference"

SPLIT_NAMES = ("train", "val", "test")

# Built-in vocabulary for planted-signal demos. Fillers span several parts of
# speech so property analyses on synthetic corpora are not degenerate; the
# trigger tokens are nonsense strings that cannot collide with fillers.
DEMO_TRIGGERS: tuple[tuple[str, ...], ...] = (("zork",), ("blim",))
DEMO_FILLER_VOCAB: tuple[str, ...] = (
    "movie", "film", "story", "actor", "music", "night", "city", "river",
    "garden", "coffee", "window", "letter",
    "runs", "walks", "sings", "jumps", "reads", "plays",
    "bright", "quiet", "happy", "slow", "green", "wild",
    "quickly", "softly", "nearly", "often",
    "the", "a", "this", "my",
    "under", "over", "with",
)


@dataclass(frozen=True)
class LabeledText:
    """One corpus example. ``pair_text`` is only present for inference-task
    examples (premise/hypothesis) and stays a separate field until
    tokenization time."""

    id: str
    text: str
    label: int
    pair_text: str | None = None

    def __post_init__(self):
        if not self.text.strip():
            raise ValidationError(f"sample {self.id!r}: text empty after trim")
        if self.label < 0:
            raise ValidationError(f"sample {self.id!r}: negative label {self.label}")

    @property
    def task(self) -> str:
        return TASK_INFERENCE if self.pair_text is not None else TASK_CLASSIFICATION


@dataclass
class CorpusSplit:
    name: str
    classes: int
    train: list[LabeledText] = field(default_factory=list)
    val: list[LabeledText] = field(default_factory=list)
    test: list[LabeledText] = field(default_factory=list)

    def split(self, split_name: str) -> list[LabeledText]:
        if split_name not in SPLIT_NAMES:
            raise ValidationError(f"unknown split {split_name!r}")
        return getattr(self, split_name)

    def all_samples(self):
        for split_name in SPLIT_NAMES:
            yield from getattr(self, split_name)

    def validate(self, require_all_splits: bool = True) -> None:
        """Check split invariants: unique ids, in-range labels and, unless
        disabled, that every split is non-empty."""
        if self.classes < 2:
            raise ValidationError(f"corpus {self.name!r}: needs >= 2 classes")
        seen: set[str] = set()
        for sample in self.all_samples():
            if sample.id in seen:
                raise ValidationError(f"duplicate sample id {sample.id!r}")
            seen.add(sample.id)
            if sample.label >= self.classes:
                raise ValidationError(
                    f"sample {sample.id!r}: label {sample.label} out of range "
                    f"for {self.classes} classes"
                )
        if require_all_splits:
            for split_name in SPLIT_NAMES:
                if not getattr(self, split_name):
                    raise ValidationError(
                        f"corpus {self.name!r}: split {split_name!r} is empty"
                    )


class FrequencyTable:
    """Token occurrence counts over a training split. Unseen tokens look up
    as zero."""

    def __init__(self, counts: dict[str, int]):
        for token, count in counts.items():
            if count < 0:
                raise ValidationError(f"negative count for token {token!r}")
        self.counts = dict(counts)
        self.total = sum(counts.values())

    def lookup(self, token: str) -> int:
        return self.counts.get(token, 0)


def build_frequency_table(train_tokens) -> FrequencyTable:
    """Count every token occurrence across the given tokenized training
    samples (an iterable of objects with a ``pieces`` list)."""
    samples = list(train_tokens)
    if not samples:
        raise ValidationError("cannot build a frequency table from no samples")
    counts: dict[str, int] = {}
    for sample in samples:
        for piece in sample.pieces:
            counts[piece] = counts.get(piece, 0) + 1
    return FrequencyTable(counts)


def _row_to_sample(sample_id, text, label, pair, line_no) -> LabeledText:
    try:
        return LabeledText(id=sample_id, text=text, label=label, pair_text=pair)
    except ValidationError as exc:
        raise ParseError(str(exc), line=line_no) from exc


def _load_jsonl(path: Path) -> dict[str, list[LabeledText]]:
    rows: dict[str, list[LabeledText]] = {name: [] for name in SPLIT_NAMES}
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid json: {exc.msg}", line=line_no) from exc
            if not isinstance(obj, dict) or "text" not in obj or "label" not in obj:
                raise ParseError("row must be an object with text and label", line=line_no)
            label = obj["label"]
            if not isinstance(label, int) or isinstance(label, bool):
                raise ParseError(f"label must be an integer, got {label!r}", line=line_no)
            split_name = obj.get("split", "train")
            if split_name not in SPLIT_NAMES:
                raise ParseError(f"unknown split {split_name!r}", line=line_no)
            pair = obj.get("pair")
            sample_id = f"{split_name}-{len(rows[split_name]):05d}"
            rows[split_name].append(
                _row_to_sample(sample_id, str(obj["text"]), label, pair, line_no)
            )
    return rows


def _load_tsv(path: Path) -> dict[str, list[LabeledText]]:
    rows: dict[str, list[LabeledText]] = {name: [] for name in SPLIT_NAMES}
    expect_cols: int | None = None
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) not in (2, 3):
                raise ParseError(
                    f"expected 2 or 3 tab-separated columns, got {len(cols)}",
                    line=line_no,
                )
            if expect_cols is None:
                expect_cols = len(cols)
            elif len(cols) != expect_cols:
                raise ParseError(
                    f"expected {expect_cols} columns as declared by the first row, "
                    f"got {len(cols)}",
                    line=line_no,
                )
            try:
                label = int(cols[0])
            except ValueError as exc:
                raise ParseError(f"label {cols[0]!r} is not an integer", line=line_no) from exc
            pair = cols[2] if len(cols) == 3 else None
            sample_id = f"train-{len(rows['train']):05d}"
            rows["train"].append(_row_to_sample(sample_id, cols[1], label, pair, line_no))
    return rows


def load_corpus(path, format: str, classes: int | None = None) -> CorpusSplit:
    """Load a corpus file. ``classes`` pins the declared class count; when
    omitted it is inferred as max(label)+1 (at least 2)."""
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"corpus file not found: {path}")
    if format == "jsonl":
        rows = _load_jsonl(path)
    elif format == "tsv":
        rows = _load_tsv(path)
    else:
        raise ValidationError(f"unknown corpus format {format!r}")

    labels = [s.label for split in rows.values() for s in split]
    if not labels:
        raise ValidationError(f"corpus file {path} contains no samples")
    if classes is None:
        classes = max(max(labels) + 1, 2)
    corpus = CorpusSplit(name=path.stem, classes=classes, **rows)
    corpus.validate(require_all_splits=False)
    return corpus


def save_corpus(corpus: CorpusSplit, path) -> None:
    """Serialize to jsonl with a fixed key order (text, pair, label, split)."""
    path = Path(path)
    with open(path, "w", encoding="utf-8") as handle:
        for split_name in SPLIT_NAMES:
            for sample in corpus.split(split_name):
                obj: dict = {"text": sample.text}
                if sample.pair_text is not None:
                    obj["pair"] = sample.pair_text
                obj["label"] = sample.label
                obj["split"] = split_name
                handle.write(json.dumps(obj, ensure_ascii=False) + "\n")


def generate_planted_corpus(
    n_per_class: int,
    trigger_tokens,
    filler_vocab,
    length_range: tuple[int, int],
    seed: int,
    n_val_per_class: int | None = None,
    n_test_per_class: int | None = None,
    name: str = "planted",
) -> CorpusSplit:
    """Generate a synthetic corpus where each sample of class c contains
    exactly one trigger token from ``trigger_tokens[c]`` at a uniformly drawn
    position; all other positions are uniform draws from ``filler_vocab``.

    ``n_per_class`` sizes the train split; val and test sizes default to
    max(1, n_per_class // 10) per class. Pure function of its arguments.
    """
    triggers = [tuple(t) for t in trigger_tokens]
    fillers = tuple(filler_vocab)
    classes = len(triggers)
    min_len, max_len = length_range

    if classes < 2:
        raise ValidationError("need trigger tokens for at least 2 classes")
    if any(not t for t in triggers):
        raise ValidationError("every class needs at least one trigger token")
    if not fillers:
        raise ValidationError("filler vocabulary is empty")
    trigger_set = {tok for class_triggers in triggers for tok in class_triggers}
    overlap = trigger_set.intersection(fillers)
    if overlap:
        raise ValidationError(f"trigger tokens overlap filler vocab: {sorted(overlap)}")
    if min_len < 3:
        raise ValidationError(f"minimum sample length must be >= 3, got {min_len}")
    if max_len < min_len:
        raise ValidationError("length_range maximum below minimum")
    if n_per_class < 1:
        raise ValidationError("n_per_class must be positive")

    if n_val_per_class is None:
        n_val_per_class = max(1, n_per_class // 10)
    if n_test_per_class is None:
        n_test_per_class = max(1, n_per_class // 10)

    rng = random.Random(seed)
    corpus = CorpusSplit(name=name, classes=classes)
    plan = (("train", n_per_class), ("val", n_val_per_class), ("test", n_test_per_class))
    for split_name, per_class in plan:
        samples = corpus.split(split_name)
        for i in range(per_class * classes):
            label = i % classes
            length = rng.randint(min_len, max_len)
            tokens = [rng.choice(fillers) for _ in range(length)]
            tokens[rng.randrange(length)] = rng.choice(triggers[label])
            samples.append(
                LabeledText(id=f"{split_name}-{i:05d}", text=" ".join(tokens), label=label)
            )
    corpus.validate()
    return corpus
