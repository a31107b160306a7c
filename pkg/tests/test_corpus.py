from chronokh.corpus import (
    MAX_CROSSINGS,
    RANDOM_COUNT,
    corpus_dir,
    corpus_texts,
    load_corpus,
    random_words,
    write_corpus,
)


def test_bundled_files_are_reproducible(tmp_path):
    write_corpus(tmp_path)
    shipped = {p.name: p.read_text() for p in sorted(corpus_dir().glob("*.pd"))}
    fresh = {p.name: p.read_text() for p in sorted(tmp_path.glob("*.pd"))}
    assert shipped == fresh


def test_corpus_contents():
    C = load_corpus()
    named = {"unknot", "unknot_kink_pos", "unknot_kink_neg", "hopf", "trefoil", "trefoil_4", "figure8",
             "figure8_6", "cinquefoil", "three_twist", "granny", "square"}
    assert named <= set(C)
    assert sum(1 for n in C if n.startswith("random_")) == RANDOM_COUNT
    assert all(D.n <= MAX_CROSSINGS for D in C.values())
    assert len(corpus_texts()) == len(C)


def test_random_words_fixed_seed():
    assert random_words() == random_words()
    assert random_words(seed=1) != random_words()
