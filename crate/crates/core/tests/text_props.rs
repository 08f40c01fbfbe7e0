use partcap::text::{
    extract_noun_mentions, pluralize, pos_tag, reconstruct, singularize, tokenize, Inflector, Lexicon, MentionOptions,
};
use proptest::prelude::*;

#[test]
fn lexicon_regular_nouns_round_trip() {
    let lex = Lexicon::bundled();
    let failures: Vec<_> = lex
        .nouns()
        .into_iter()
        .filter(|w| singularize(&pluralize(w)) != *w)
        .collect();
    assert!(failures.is_empty(), "round-trip failures: {failures:?}");
}

#[test]
fn lexicon_nouns_are_singular_fixed_points() {
    for w in Lexicon::bundled().nouns() {
        assert_eq!(singularize(w), w);
    }
}

fn caption() -> impl Strategy<Value = String> {
    let words = prop::sample::select(vec![
        "a", "the", "bird", "birds", "with", "red", "beak", "'s", "of", "on", "branches", ",", ".", "flower",
        "petals", "and", "white", "leaves", "sitting", "tree", "two", "its", "wing", "in", "addition", "to",
    ]);
    let seps = prop::sample::select(vec![" ", "  ", "\t", ""]);
    prop::collection::vec((words, seps), 0..14).prop_map(|parts| {
        parts.into_iter().map(|(w, s)| format!("{w}{s}")).collect::<String>()
    })
}

proptest! {
    #[test]
    fn tokenize_is_lossless(s in "[ a-zA-Z.,;'!?()-]{0,40}") {
        let toks = tokenize(&s);
        prop_assert_eq!(reconstruct(&s, &toks), s.clone());
        let mut cursor = 0;
        for (i, t) in toks.iter().enumerate() {
            prop_assert_eq!(t.index, i);
            prop_assert!(t.span.start < t.span.end);
            prop_assert!(s[cursor..t.span.start].chars().all(char::is_whitespace));
            prop_assert_eq!(&s[t.span.clone()], t.surface.as_str());
            cursor = t.span.end;
        }
        prop_assert!(s[cursor..].chars().all(char::is_whitespace));
    }

    #[test]
    fn singularize_idempotent(w in "[a-z]{1,12}") {
        let once = singularize(&w);
        prop_assert_eq!(singularize(&once), once.clone());
    }

    #[test]
    fn mention_insertions_strictly_increase(c in caption()) {
        let toks = pos_tag(&tokenize(&c));
        let ms = extract_noun_mentions(&toks, &Inflector::default(), MentionOptions::default());
        for m in &ms {
            prop_assert!(m.insertion_token_index < toks.len());
            prop_assert_eq!(singularize(&m.lemma_singular), m.lemma_singular.clone());
            prop_assert!(m.source_token_indices.iter().all(|&i| i <= m.insertion_token_index));
        }
        prop_assert!(ms.windows(2).all(|w| w[0].insertion_token_index < w[1].insertion_token_index));
    }

    #[test]
    fn tagging_deterministic(c in caption()) {
        let toks = tokenize(&c);
        prop_assert_eq!(pos_tag(&toks), pos_tag(&toks));
    }
}
