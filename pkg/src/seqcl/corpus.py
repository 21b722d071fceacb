"""Corpus types, column-file IO, BMES label conversion, and a seeded
synthetic-corpus generator for desk-scale experiments.

A corpus is a list of sentences; each sentence is a sequence of tokens
(single characters for the segmentation-style schemes) with one gold label
per token.  Labels live in a fixed, canonically ordered label set so that
label ids are reproducible across machines.
"""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, ParseError, SchemeError

SCHEME_BMES = "segmentation-BMES"
SCHEME_JOINT = "joint-BMES-POS"
SCHEME_GENERIC = "generic"
SCHEMES = (SCHEME_BMES, SCHEME_JOINT, SCHEME_GENERIC)

BMES = ("B", "M", "E", "S")

UNK_TOKEN = "<unk>"
PAD_TOKEN = "<pad>"
UNK_ID = 0
PAD_ID = 1


@dataclass(frozen=True)
class Sentence:
    """A token sequence with gold label ids; the unit ranked by difficulty."""

    id: int
    tokens: tuple
    gold_labels: tuple

    def __post_init__(self):
        if len(self.tokens) != len(self.gold_labels) or len(self.tokens) < 1:
            raise ValueError(
                f"sentence {self.id}: need equal, non-zero token/label counts "
                f"({len(self.tokens)} vs {len(self.gold_labels)})"
            )

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class LabelSet:
    """Ordered tag inventory; a label's id is its position in ``labels``."""

    labels: tuple
    scheme: str

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise SchemeError(f"unknown scheme {self.scheme!r}")
        if len(set(self.labels)) != len(self.labels) or not all(self.labels):
            raise SchemeError("labels must be unique, non-empty strings")
        for lab in self.labels:
            _validate_label(lab, self.scheme)
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self._index

    def id(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise SchemeError(f"label {label!r} not in label set") from None

    def bmes_of(self, label_id: int) -> str:
        """Boundary part (B/M/E/S) of a label; raises for generic labels."""
        lab = self.labels[label_id]
        if self.scheme == SCHEME_BMES:
            return lab
        if self.scheme == SCHEME_JOINT:
            return lab[-1]
        raise SchemeError("generic scheme has no BMES structure")

    def pos_of(self, label_id: int):
        """POS part of a joint label, None for plain segmentation labels."""
        if self.scheme == SCHEME_JOINT:
            return self.labels[label_id].rsplit("-", 1)[0]
        return None


@dataclass
class Dataset:
    """Sentences plus the label inventory and token->id map they were
    produced with.  ``vocab`` reserves id 0 for unknown tokens and id 1 for
    boundary padding; for dev/test splits it is the training split's vocab."""

    sentences: list
    label_set: LabelSet
    vocab: dict

    def __len__(self):
        return len(self.sentences)


def _validate_label(label: str, scheme: str) -> None:
    if scheme == SCHEME_BMES:
        if label not in BMES:
            raise SchemeError(f"label {label!r} invalid for {scheme}")
    elif scheme == SCHEME_JOINT:
        pos, sep, bmes = label.rpartition("-")
        if not sep or not pos or bmes not in BMES:
            raise SchemeError(f"label {label!r} invalid for {scheme} (want '<pos>-<B|M|E|S>')")


def build_label_set(scheme: str, seen_labels) -> LabelSet:
    """Canonical label set for ``scheme`` covering ``seen_labels``.

    BMES always yields the full (B, M, E, S) inventory; the joint scheme
    yields the cross product of the observed POS tags (sorted) with BMES;
    generic yields the observed labels sorted.
    """
    seen = set(seen_labels)
    for lab in seen:
        _validate_label(lab, scheme)
    if scheme == SCHEME_BMES:
        return LabelSet(labels=BMES, scheme=scheme)
    if scheme == SCHEME_JOINT:
        pos_tags = sorted({lab.rsplit("-", 1)[0] for lab in seen})
        labels = tuple(f"{pos}-{b}" for pos in pos_tags for b in BMES)
        return LabelSet(labels=labels, scheme=scheme)
    return LabelSet(labels=tuple(sorted(seen)), scheme=SCHEME_GENERIC)


def build_vocab(sentences) -> dict:
    """Token->id map with reserved unknown (0) and padding (1) entries."""
    vocab = {UNK_TOKEN: UNK_ID, PAD_TOKEN: PAD_ID}
    for tok in sorted({t for s in sentences for t in s.tokens}):
        if tok not in vocab:
            vocab[tok] = len(vocab)
    return vocab


# ---------------------------------------------------------------------------
# Column file format: "<token>\t<label>\n" lines, blank line between
# sentences; the final blank line is optional when parsing and always
# written, so write(parse(f)) == f for canonical files.
# ---------------------------------------------------------------------------

def parse_column_text(text: str, scheme: str, label_set: LabelSet = None) -> Dataset:
    """Parse column-format text into a Dataset; see parse_column_file."""
    raw_sentences = []
    pending = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if line == "":
            if pending:
                raw_sentences.append(pending)
                pending = []
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise ParseError(f"line {lineno}: expected '<token>\\t<label>', got {len(cols)} column(s)")
        token, label = cols
        if not token or not label:
            raise ParseError(f"line {lineno}: empty token or label")
        pending.append((token, label))
    if pending:
        raw_sentences.append(pending)
    if not raw_sentences:
        raise ParseError("empty file: no sentences found")

    if label_set is None:
        label_set = build_label_set(scheme, (lab for sent in raw_sentences for _, lab in sent))
    sentences = []
    for i, sent in enumerate(raw_sentences):
        tokens = tuple(tok for tok, _ in sent)
        try:
            labels = tuple(label_set.id(lab) for _, lab in sent)
        except SchemeError as exc:
            raise SchemeError(f"sentence {i}: {exc}") from None
        sentences.append(Sentence(id=i, tokens=tokens, gold_labels=labels))
    return Dataset(sentences=sentences, label_set=label_set, vocab=build_vocab(sentences))


def parse_column_file(path, scheme: str, label_set: LabelSet = None) -> Dataset:
    """Read a UTF-8 column file into a Dataset with ids 0..n-1.

    When ``label_set`` is given, labels are mapped into it (raising
    SchemeError on labels it does not contain); otherwise a canonical label
    set is built from the file contents.
    """
    text = Path(path).read_text(encoding="utf-8")
    return parse_column_text(text, scheme, label_set=label_set)


def format_column_text(dataset: Dataset) -> str:
    """Serialize a Dataset to canonical column format (trailing blank line)."""
    chunks = []
    for sent in dataset.sentences:
        for tok, lab_id in zip(sent.tokens, sent.gold_labels):
            chunks.append(f"{tok}\t{dataset.label_set.labels[lab_id]}\n")
        chunks.append("\n")
    return "".join(chunks)


def write_column_file(dataset: Dataset, path) -> None:
    Path(path).write_text(format_column_text(dataset), encoding="utf-8")


def infer_scheme(labels) -> str:
    """Best-effort scheme inference from observed label strings."""
    labels = set(labels)
    if labels <= set(BMES):
        return SCHEME_BMES

    def is_joint(lab):
        pos, sep, bmes = lab.rpartition("-")
        return bool(sep) and bool(pos) and bmes in BMES

    if all(is_joint(lab) for lab in labels):
        return SCHEME_JOINT
    return SCHEME_GENERIC


def reindex(dataset: Dataset, label_set: LabelSet, vocab: dict) -> Dataset:
    """Re-map a dataset's gold labels into another label set and attach the
    given vocab (used to key dev/test splits to the training split)."""
    sentences = []
    for sent in dataset.sentences:
        labels = tuple(label_set.id(dataset.label_set.labels[i]) for i in sent.gold_labels)
        sentences.append(Sentence(id=sent.id, tokens=sent.tokens, gold_labels=labels))
    return Dataset(sentences=sentences, label_set=label_set, vocab=vocab)


# ---------------------------------------------------------------------------
# BMES <-> word-span conversion
# ---------------------------------------------------------------------------

def word_spans_to_bmes(words):
    """Expand words into per-token BMES label strings.

    ``words`` is a sequence of (surface,) or (surface, pos) tuples; a POS
    makes the labels joint ("<pos>-<B|M|E|S>").  Single-token words map to
    S, longer words to B M... E.
    """
    if not words:
        raise ValueError("empty word list")
    tokens, labels = [], []
    for word in words:
        surface = word[0]
        pos = word[1] if len(word) > 1 else None
        if not surface:
            raise ValueError("empty word surface")
        n = len(surface)
        if n == 1:
            tags = ["S"]
        else:
            tags = ["B"] + ["M"] * (n - 2) + ["E"]
        for ch, tag in zip(surface, tags):
            tokens.append(ch)
            labels.append(tag if pos is None else f"{pos}-{tag}")
    return tokens, labels


def bmes_to_word_spans(tokens, labels):
    """Strict inverse of word_spans_to_bmes for well-formed label sequences."""
    words = []
    start = None
    pos = None

    def split_label(lab):
        p, sep, b = lab.rpartition("-")
        return (p, b) if sep else (None, lab)

    for i, (tok, lab) in enumerate(zip(tokens, labels)):
        p, b = split_label(lab)
        if b == "S":
            if start is not None:
                raise SchemeError(f"token {i}: S inside an open word")
            words.append(_word(tokens, i, i + 1, p))
        elif b == "B":
            if start is not None:
                raise SchemeError(f"token {i}: B inside an open word")
            start, pos = i, p
        elif b == "M":
            if start is None or p != pos:
                raise SchemeError(f"token {i}: M without a matching open word")
        elif b == "E":
            if start is None or p != pos:
                raise SchemeError(f"token {i}: E without a matching open word")
            words.append(_word(tokens, start, i + 1, p))
            start, pos = None, None
        else:
            raise SchemeError(f"token {i}: label {lab!r} is not BMES-structured")
    if start is not None:
        raise SchemeError("sequence ends inside an open word")
    return words


def _word(tokens, start, end, pos):
    surface = "".join(tokens[start:end])
    return (surface,) if pos is None else (surface, pos)


# ---------------------------------------------------------------------------
# Synthetic corpus generator
# ---------------------------------------------------------------------------

# Disjoint single-character alphabets for the two sub-domains.
_ALPHABET_A = [chr(0x4E00 + i) for i in range(384)]
_ALPHABET_B = [chr(0x3500 + i) for i in range(384)]


@dataclass(frozen=True)
class SynthConfig:
    """Knobs for the two-sub-domain synthetic corpus.

    The two sub-domains draw words from disjoint vocabularies (and disjoint
    character alphabets), which gives the corpus the heterogeneity a
    curriculum can exploit; label noise creates genuinely hard samples.
    """

    vocab_size_a: int = 1200
    vocab_size_b: int = 1200
    word_len_probs: tuple = (0.2, 0.6, 0.2)  # P(word length = 1, 2, 3)
    pos_tags: tuple = ("ADV", "NN", "NR", "PN", "VV")
    sent_len_range: tuple = (4, 30)
    n_train: int = 4000
    n_dev: int = 500
    n_test: int = 500
    noise_rate: float = 0.02
    mix_ratio: float = 0.7  # probability a sentence comes from sub-domain A
    scheme: str = SCHEME_JOINT

    def __post_init__(self):
        if self.vocab_size_a < 1 or self.vocab_size_b < 1:
            raise ConfigError("sub-domain vocabulary sizes must be >= 1")
        if len(self.word_len_probs) != 3 or abs(sum(self.word_len_probs) - 1.0) > 1e-9:
            raise ConfigError("word_len_probs must be 3 probabilities summing to 1")
        if not (4 <= len(self.pos_tags) <= 8) or len(set(self.pos_tags)) != len(self.pos_tags):
            raise ConfigError("pos_tags must be 4..8 distinct tags")
        lo, hi = self.sent_len_range
        if not (1 <= lo <= hi):
            raise ConfigError(f"bad sent_len_range {self.sent_len_range}")
        if min(self.n_train, self.n_dev, self.n_test) < 1:
            raise ConfigError("split sizes must be >= 1")
        if not (0.0 <= self.noise_rate <= 0.1):
            raise ConfigError(f"noise_rate must be in [0, 0.1], got {self.noise_rate}")
        if not (0.0 <= self.mix_ratio <= 1.0):
            raise ConfigError(f"mix_ratio must be in [0, 1], got {self.mix_ratio}")
        if self.scheme not in (SCHEME_BMES, SCHEME_JOINT):
            raise ConfigError(f"generator scheme must be BMES or joint, got {self.scheme!r}")


def _build_domain(rng, alphabet, vocab_size, word_len_probs, pos_tags):
    """Sample a word vocabulary with a fixed POS per word and Zipf weights."""
    words = []
    seen = set()
    attempts = 0
    while len(words) < vocab_size:
        attempts += 1
        if attempts > 200 * vocab_size:
            raise ConfigError(f"cannot build {vocab_size} distinct words from this alphabet")
        length = int(rng.choice(3, p=word_len_probs)) + 1
        surface = "".join(alphabet[i] for i in rng.integers(0, len(alphabet), size=length))
        if surface in seen:
            continue
        seen.add(surface)
        pos = pos_tags[int(rng.integers(0, len(pos_tags)))]
        words.append((surface, pos))
    ranks = np.arange(1, vocab_size + 1, dtype=np.float64)
    weights = 1.0 / (ranks + 2.0)
    return words, np.cumsum(weights / weights.sum())


def _noisy_words(rng, words, noise_rate, pos_tags, joint):
    """Perturb the label-side word list: POS flips and boundary merges/splits.

    The surface text is untouched; only the labels derived from the
    returned words change, which is what makes the affected sentences hard."""
    out = []
    i = 0
    while i < len(words):
        surface, pos = words[i]
        ops = []
        if noise_rate > 0.0 and rng.random() < noise_rate:
            if joint and len(pos_tags) > 1:
                ops.append("flip")
            if i + 1 < len(words):
                ops.append("merge")
            if len(surface) >= 2:
                ops.append("split")
        if not ops:
            out.append((surface, pos))
            i += 1
            continue
        op = ops[int(rng.integers(0, len(ops)))]
        if op == "flip":
            others = [t for t in pos_tags if t != pos]
            out.append((surface, others[int(rng.integers(0, len(others)))]))
            i += 1
        elif op == "merge":
            out.append((surface + words[i + 1][0], pos))
            i += 2
        else:  # split
            cut = int(rng.integers(1, len(surface)))
            out.append((surface[:cut], pos))
            out.append((surface[cut:], pos))
            i += 1
    return out


def generate_synthetic(config: SynthConfig, seed: int):
    """Deterministically generate (train, dev, test) Datasets.

    All splits are drawn from the same two-sub-domain mixture; sentences are
    distinct across the whole corpus (token-sequence identity), so splits
    cannot leak into each other.
    """
    rng = np.random.default_rng(np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, 0x67656E]))
    joint = config.scheme == SCHEME_JOINT

    vocab_a, cumw_a = _build_domain(
        rng, _ALPHABET_A, config.vocab_size_a, config.word_len_probs, config.pos_tags)
    vocab_b, cumw_b = _build_domain(
        rng, _ALPHABET_B, config.vocab_size_b, config.word_len_probs, config.pos_tags)

    label_set = build_label_set(
        config.scheme,
        [f"{pos}-{b}" for pos in config.pos_tags for b in BMES] if joint else BMES,
    )

    total = config.n_train + config.n_dev + config.n_test
    lo, hi = config.sent_len_range
    raw = []
    seen_texts = set()
    attempts = 0
    while len(raw) < total:
        attempts += 1
        if attempts > 50 * total + 1000:
            raise ConfigError("split sizes exceed the population this config can generate")
        domain_a = rng.random() < config.mix_ratio
        words_pool, cumw = (vocab_a, cumw_a) if domain_a else (vocab_b, cumw_b)
        target_len = int(rng.integers(lo, hi + 1))
        words = []
        n_chars = 0
        while n_chars < target_len:
            idx = min(int(np.searchsorted(cumw, rng.random(), side="right")), len(words_pool) - 1)
            surface, pos = words_pool[idx]
            if words and n_chars + len(surface) > target_len:
                break
            words.append((surface, pos))
            n_chars += len(surface)
        tokens = tuple(ch for surface, _ in words for ch in surface)
        if tokens in seen_texts:
            continue
        seen_texts.add(tokens)
        labeled = _noisy_words(rng, words, config.noise_rate, config.pos_tags, joint)
        if not joint:
            labeled = [(surface,) for surface, _ in labeled]
        _, label_strs = word_spans_to_bmes(labeled)
        raw.append((tokens, tuple(label_set.id(lab) for lab in label_strs)))

    def make_split(pairs):
        return [Sentence(id=i, tokens=t, gold_labels=l) for i, (t, l) in enumerate(pairs)]

    train_sents = make_split(raw[: config.n_train])
    dev_sents = make_split(raw[config.n_train: config.n_train + config.n_dev])
    test_sents = make_split(raw[config.n_train + config.n_dev:])

    vocab = build_vocab(train_sents)
    train = Dataset(sentences=train_sents, label_set=label_set, vocab=vocab)
    dev = Dataset(sentences=dev_sents, label_set=label_set, vocab=vocab)
    test = Dataset(sentences=test_sents, label_set=label_set, vocab=vocab)
    return train, dev, test
