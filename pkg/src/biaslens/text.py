"""Sentence segmentation, tokenization, paragraph chunking, and embedding lookup.

Everything here is rule-based and deterministic: the segmenter splits on
terminal punctuation with an abbreviation stop-list, the tokenizer case-folds
and splits clitics the way common pre-trained embedding vocabularies do, and
the embedding table is immutable after loading (unknown tokens map to a fixed
zero vector).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .errors import ParseError

#: Tokens kept per sequence when feeding the classifier; overlong articles are
#: truncated from the end (the head is kept). Discourse analysis always works
#: on the untruncated sentence list.
MAX_TOKENS = 1000

PARAGRAPH_SENTENCES = 3


def _load_abbreviations() -> frozenset[str]:
    data = resources.files("biaslens").joinpath("data/abbreviations.txt").read_text("utf-8")
    abbrevs = set()
    for line in data.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            abbrevs.add(line.lower())
    return frozenset(abbrevs)


_ABBREVIATIONS = _load_abbreviations()

# Terminal punctuation, optional closing quotes/brackets, whitespace, and a
# next sentence that opens with an uppercase letter or a quote.
_BOUNDARY_RE = re.compile(
    r"(?P<punct>[.!?]+)(?P<close>[\"'”’)\]]*)\s+"
    r"(?=[\"'“‘(\[]?[A-Z])"
)
_BLANK_LINE_RE = re.compile(r"\n[ \t]*\n+")
_SINGLE_INITIAL_RE = re.compile(r"[A-Za-z]\.")


def _is_abbreviation(paragraph: str, punct_start: int, punct: str) -> bool:
    """True if the token ending at this period is on the abbreviation stop-list."""
    if not punct.endswith(".") or punct != ".":
        return False
    head = paragraph[:punct_start]
    parts = head.rsplit(None, 1)
    if not parts:
        return False
    token = parts[-1] + "."
    if token.lower() in _ABBREVIATIONS:
        return True
    # Single capitalized initials such as middle names ("George W. Bush").
    return bool(_SINGLE_INITIAL_RE.fullmatch(token))


def segment_sentences(text: str) -> list[str]:
    """Split text into sentences.

    Splits on ``.``, ``!``, ``?`` followed by whitespace and an
    uppercase/quote sentence opener, with an abbreviation stop-list, and
    always splits on blank lines. Text without any boundary comes back as a
    single sentence.

    Raises ValueError for empty (or whitespace-only) input.
    """
    if not text or not text.strip():
        raise ValueError("cannot segment empty text")
    sentences: list[str] = []
    for paragraph in _BLANK_LINE_RE.split(text):
        if not paragraph.strip():
            continue
        start = 0
        for match in _BOUNDARY_RE.finditer(paragraph):
            if _is_abbreviation(paragraph, match.start(), match.group("punct")):
                continue
            sentence = paragraph[start : match.start()] + match.group("punct") + match.group("close")
            sentence = sentence.strip()
            if sentence:
                sentences.append(sentence)
            start = match.end()
        tail = paragraph[start:].strip()
        if tail:
            sentences.append(tail)
    return sentences


# Clitics split off as their own tokens, matching the convention of common
# pre-trained embedding vocabularies ("don't" -> "do", "n't").
_CLITIC_RE = re.compile(r"(?<=\w)(n't|'s|'re|'ve|'ll|'d|'m)\b", re.IGNORECASE)
_TOKEN_RE = re.compile(r"n't|'(?:s|re|ve|ll|d|m)|\w+(?:[-.'’]\w+)*|[^\w\s]")


def tokenize(sentence: str) -> list[str]:
    """Case-folded word/punctuation tokens of one sentence.

    Punctuation becomes separate tokens and contractions are split at the
    apostrophe. Whitespace-only input yields an empty list.
    """
    spaced = _CLITIC_RE.sub(lambda m: " " + m.group(1), sentence)
    return _TOKEN_RE.findall(spaced.lower())


def paragraphs(items: list) -> list[list]:
    """Chunk a sentence list into pseudo-paragraphs of three consecutive
    sentences; the final chunk may hold one or two."""
    if not items:
        raise ValueError("cannot chunk an empty sentence list")
    return [items[i : i + PARAGRAPH_SENTENCES] for i in range(0, len(items), PARAGRAPH_SENTENCES)]


@dataclass
class TokenizedArticle:
    """Sentence-segmented, tokenized article body.

    ``sentences`` holds one token list per sentence (none empty), in original
    order; ``sentence_texts`` keeps the aligned raw sentence strings for
    ablation and rendering.
    """

    sentences: list[list[str]]
    sentence_texts: list[str]
    token_count: int = field(init=False)

    def __post_init__(self) -> None:
        self.token_count = sum(len(s) for s in self.sentences)

    def flatten(self) -> list[str]:
        return [tok for sent in self.sentences for tok in sent]


def tokenize_article(text: str) -> TokenizedArticle:
    """Segment and tokenize a full article; sentences that tokenize to nothing
    are dropped so every kept sentence is non-empty."""
    sentences = []
    texts = []
    for sentence in segment_sentences(text):
        tokens = tokenize(sentence)
        if tokens:
            sentences.append(tokens)
            texts.append(sentence)
    return TokenizedArticle(sentences=sentences, sentence_texts=texts)


@dataclass(frozen=True)
class EmbeddingTable:
    """Immutable token -> vector lookup with a zero UNK vector.

    Lookup is total: any token not in the table maps to ``unk_vector``.
    """

    dimension: int
    vectors: dict[str, np.ndarray]
    unk_vector: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.unk_vector is None:
            object.__setattr__(self, "unk_vector", np.zeros(self.dimension))
        for token, vec in self.vectors.items():
            if vec.shape != (self.dimension,) or not np.all(np.isfinite(vec)):
                raise ValueError(f"embedding for {token!r} is not a finite {self.dimension}-vector")

    def lookup(self, token: str) -> np.ndarray:
        return self.vectors.get(token, self.unk_vector)

    def embed(self, tokens: list[str]) -> np.ndarray:
        """Stack the vectors for a token sequence into a (T, dimension) array."""
        if not tokens:
            return np.zeros((0, self.dimension))
        return np.stack([self.lookup(t) for t in tokens])

    def __contains__(self, token: str) -> bool:
        return token in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)


def load_embeddings(path, dimension: int = 50) -> EmbeddingTable:
    """Read a plain-text embedding file: one ``token v1 .. v<dimension>`` per line.

    Raises ParseError (with the line number) when a line does not carry
    exactly ``dimension`` components.
    """
    vectors: dict[str, np.ndarray] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split()
            if len(parts) != dimension + 1:
                raise ParseError(
                    f"{path}:{lineno}: expected token + {dimension} values, got {len(parts) - 1}",
                    line=lineno,
                )
            try:
                vec = np.array([float(v) for v in parts[1:]])
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: non-numeric embedding value", line=lineno) from exc
            vectors[parts[0]] = vec
    return EmbeddingTable(dimension=dimension, vectors=vectors)


def truncate(tokens: list[str], max_tokens: int = MAX_TOKENS) -> list[str]:
    """Keep the first ``max_tokens`` tokens (truncation drops the tail)."""
    return tokens[:max_tokens]
