"""Document loading, sentence segmentation and token normalization.

Raw text goes through a fixed, deterministic pipeline: sentences are
split on terminator punctuation (with an abbreviation exception list),
tokens are maximal runs of letters/digits, lowercased, filtered against
a frozen 153-entry stopword list and Porter-stemmed.  Sentence word
lengths are counted on the raw text because summary budgets apply to
the emitted text, not to the normalized tokens.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import EmptyCorpus, EmptyDocument
from .stemming import stem

_TERMINATOR_RE = re.compile(r"[.!?]+(?=\s|$)")
# letters and digits only; underscore and all punctuation separate tokens
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def _load_wordlist(name: str) -> tuple[str, ...]:
    text = resources.files("topicsum.data").joinpath(name).read_text("utf-8")
    return tuple(line.strip() for line in text.splitlines() if line.strip())


STOPWORDS = frozenset(_load_wordlist("stopwords.txt"))
ABBREVIATIONS = frozenset(_load_wordlist("abbreviations.txt"))


@dataclass(frozen=True)
class RawDocument:
    doc_id: str
    text: str


@dataclass(frozen=True)
class Sentence:
    sent_id: int
    doc_id: str
    raw_text: str
    tokens: tuple[int, ...]
    word_length: int


@dataclass(frozen=True)
class ExcludedSentence:
    doc_id: str
    raw_text: str
    reason: str


class Vocabulary:
    """Dense term <-> id bijection with corpus-wide counts."""

    def __init__(self):
        self._ids: dict[str, int] = {}
        self._terms: list[str] = []
        self._counts: list[int] = []

    def add(self, term: str) -> int:
        tid = self._ids.get(term)
        if tid is None:
            tid = len(self._terms)
            self._ids[term] = tid
            self._terms.append(term)
            self._counts.append(0)
        self._counts[tid] += 1
        return tid

    def id_of(self, term: str) -> int | None:
        return self._ids.get(term)

    def term_of(self, tid: int) -> str:
        return self._terms[tid]

    def count(self, tid: int) -> int:
        return self._counts[tid]

    @property
    def counts(self) -> list[int]:
        return list(self._counts)

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, term: str) -> bool:
        return term in self._ids


@dataclass
class ProcessedCorpus:
    documents: list[str]
    sentences: list[Sentence]
    vocabulary: Vocabulary
    n_j: dict[str, int]
    excluded: list[ExcludedSentence] = field(default_factory=list)

    @property
    def n_sentences(self) -> int:
        return len(self.sentences)

    @property
    def n_terms(self) -> int:
        return len(self.vocabulary)

    @property
    def n_documents(self) -> int:
        return len(self.documents)

    def doc_index(self, doc_id: str) -> int:
        return self.documents.index(doc_id)

    def sentence_doc_indices(self) -> list[int]:
        pos = {d: i for i, d in enumerate(self.documents)}
        return [pos[s.doc_id] for s in self.sentences]

    def sentence_lengths(self) -> list[int]:
        return [s.word_length for s in self.sentences]

    def token_lists(self) -> list[tuple[int, ...]]:
        return [s.tokens for s in self.sentences]


def split_sentences(doc: RawDocument) -> list[tuple[str, int]]:
    """Split a document into (raw_text, word_length) pairs.

    Boundaries are terminator runs ([.!?]+) followed by whitespace or
    end of document, except when the terminator closes a word on the
    abbreviation list (only plain '.' runs qualify for the exception).
    """
    text = doc.text
    if not text.strip():
        raise EmptyDocument(f"document {doc.doc_id!r} has no content")
    pieces = []
    start = 0
    for m in _TERMINATOR_RE.finditer(text):
        chunk = text[start:m.end()]
        words = chunk.split()
        last = words[-1].lstrip("\"'([{") if words else ""
        if m.group() == "." and last.lower() in ABBREVIATIONS:
            continue
        raw = chunk.strip()
        if raw:
            pieces.append(raw)
        start = m.end()
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return [(raw, len(raw.split())) for raw in pieces]


def tokenize(raw_text: str) -> list[str]:
    """Lowercased alphanumeric tokens in text order, nothing removed."""
    return _TOKEN_RE.findall(raw_text.lower())


def normalize_tokens(raw_text: str, stopwords=STOPWORDS) -> list[str]:
    """Lowercase, tokenize, drop stopwords, Porter-stem; order preserved."""
    out = []
    for tok in tokenize(raw_text):
        if tok in stopwords:
            continue
        out.append(stem(tok))
    return out


def build_corpus(docs, stopwords=STOPWORDS) -> ProcessedCorpus:
    """Assemble the indexed corpus from RawDocuments in input order.

    Sentences whose normalized token list is empty are excluded from
    the corpus (recorded with a reason) because every downstream stage
    requires at least one token per sentence.
    """
    vocab = Vocabulary()
    sentences: list[Sentence] = []
    excluded: list[ExcludedSentence] = []
    documents: list[str] = []
    n_j: dict[str, int] = {}
    for doc in docs:
        documents.append(doc.doc_id)
        n_j[doc.doc_id] = 0
        for raw, wlen in split_sentences(doc):
            terms = normalize_tokens(raw, stopwords)
            if not terms:
                excluded.append(ExcludedSentence(doc.doc_id, raw, "no tokens after normalization"))
                continue
            ids = tuple(vocab.add(t) for t in terms)
            sentences.append(Sentence(len(sentences), doc.doc_id, raw, ids, wlen))
            n_j[doc.doc_id] += len(ids)
    if not sentences:
        raise EmptyCorpus("no sentence survived preprocessing")
    return ProcessedCorpus(documents, sentences, vocab, n_j, excluded)


def corpus_from_token_lists(doc_sentences) -> ProcessedCorpus:
    """Build a corpus directly from per-document lists of term lists.

    Intended for synthetic corpora in tests and experiments; each term
    is taken verbatim (no splitting, stopwording or stemming), and the
    raw text is the space-joined term list.
    """
    vocab = Vocabulary()
    sentences: list[Sentence] = []
    documents: list[str] = []
    n_j: dict[str, int] = {}
    for d, sent_lists in enumerate(doc_sentences):
        doc_id = f"doc{d:03d}"
        documents.append(doc_id)
        n_j[doc_id] = 0
        for terms in sent_lists:
            if not terms:
                continue
            ids = tuple(vocab.add(str(t)) for t in terms)
            sentences.append(Sentence(len(sentences), doc_id, " ".join(str(t) for t in terms), ids, len(ids)))
            n_j[doc_id] += len(ids)
    if not sentences:
        raise EmptyCorpus("no sentence provided")
    return ProcessedCorpus(documents, sentences, vocab, n_j, [])


def load_directory(path) -> list[RawDocument]:
    """Read every UTF-8 text file in ``path`` as one document, sorted by name."""
    root = Path(path)
    docs = []
    for p in sorted(root.iterdir()):
        if p.is_file():
            docs.append(RawDocument(p.name, p.read_text("utf-8")))
    return docs
