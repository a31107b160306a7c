"""The bundled diagram corpus.

Named diagrams are braid closures (plus two hand-written PD codes); the
random part is 20 braid words drawn with a fixed seed.  ``write_corpus``
regenerates the shipped ``.pd`` files and ``load_corpus`` reads them back.
"""

from __future__ import annotations

import random
from importlib import resources
from pathlib import Path

from .diagram import PlanarDiagram, from_braid, parse_pd

SEED = 20240611
RANDOM_COUNT = 20
MAX_CROSSINGS = 10

TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"

# name -> braid word (None for explicit PD text)
NAMED: dict[str, tuple[int, ...] | str] = {
    "unknot": "loops=1",
    "unknot_kink_pos": (1,),
    "unknot_kink_neg": (-1,),
    "hopf": (1, 1),
    "trefoil": TREFOIL_PD,
    "trefoil_4": (1, 1, 1, 2),
    "figure8": (1, -2, 1, -2),
    "figure8_6": (1, -2, 1, -2, 1, -1),
    "cinquefoil": (1, 1, 1, 1, 1),
    "three_twist": (1, 1, 1, 2, -1, 2),
    "granny": (1, 1, 1, 2, 2, 2),
    "square": (1, 1, 1, -2, -2, -2),
}


def random_words(count: int = RANDOM_COUNT, seed: int = SEED) -> list[tuple[int, ...]]:
    """Braid words on 2 to 4 strands with 1 to 10 letters."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        strands = rng.randint(2, 4)
        length = rng.randint(1, MAX_CROSSINGS)
        word = tuple(rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length))
        out.append(word)
    return out


def build(name_or_word) -> PlanarDiagram:
    spec = NAMED.get(name_or_word, name_or_word) if isinstance(name_or_word, str) else name_or_word
    if isinstance(spec, str):
        return parse_pd(spec)
    return from_braid(spec)


def corpus_texts() -> dict[str, str]:
    """``{file stem: PD text}`` for the whole corpus, in a fixed order."""
    out = {}
    for name, spec in NAMED.items():
        D = build(spec)
        note = "" if isinstance(spec, str) else f"# braid {' '.join(map(str, spec))}\n"
        out[name] = note + _pd_text(D, spec)
    for k, word in enumerate(random_words()):
        D = from_braid(word)
        out[f"random_{k:02d}"] = f"# braid {' '.join(map(str, word))}\n" + _pd_text(D, word)
    return out


def _pd_text(D: PlanarDiagram, spec) -> str:
    if isinstance(spec, str):
        return spec + "\n"
    return D.text() + "\n"


def write_corpus(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in corpus_texts().items():
        p = directory / f"{name}.pd"
        p.write_text(text)
        paths.append(p)
    return paths


def corpus_dir() -> Path:
    return Path(str(resources.files("chronokh") / "corpus"))


def load_corpus(directory: str | Path | None = None) -> dict[str, PlanarDiagram]:
    """Every ``*.pd`` file in ``directory`` (default: the bundled corpus), sorted by name."""
    directory = Path(directory) if directory is not None else corpus_dir()
    return {p.stem: parse_pd(p.read_text()) for p in sorted(directory.glob("*.pd"))}


def load(name: str) -> PlanarDiagram:
    return parse_pd((corpus_dir() / f"{name}.pd").read_text())
