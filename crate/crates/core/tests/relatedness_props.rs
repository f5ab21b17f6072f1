use proptest::prelude::*;

use wikicorpus::preprocess::StopwordList;
use wikicorpus::relatedness::{cosine, embed_document, EmbeddingTable};

fn vec_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1usize..40).prop_flat_map(|d| {
        (
            prop::collection::vec(-100.0f64..100.0, d),
            prop::collection::vec(-100.0f64..100.0, d),
        )
    })
}

fn table() -> EmbeddingTable<f64> {
    let words = [
        "rail", "track", "train", "road", "lane", "signal", "brake", "street",
    ];
    EmbeddingTable::from_vectors(
        6,
        words.iter().enumerate().map(|(i, w)| {
            (
                w.to_string(),
                (0..6)
                    .map(|j| ((i * 7 + j * 3) % 11) as f64 - 5.0)
                    .collect(),
            )
        }),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn symmetric_and_bounded((u, v) in vec_pair()) {
        let a = cosine(&u, &v).unwrap();
        let b = cosine(&v, &u).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
        prop_assert!(a.abs() <= 1.0 + 1e-9);
    }

    #[test]
    fn positive_scale_invariant((u, v) in vec_pair(), s in 1e-3f64..1e3) {
        let scaled: Vec<f64> = u.iter().map(|x| x * s).collect();
        let a = cosine(&u, &v).unwrap();
        let b = cosine(&scaled, &v).unwrap();
        prop_assert!((a - b).abs() <= 1e-9);
    }

    #[test]
    fn zero_vector_scores_zero(v in prop::collection::vec(-10.0f64..10.0, 1..20)) {
        let zero = vec![0.0; v.len()];
        prop_assert_eq!(cosine(&zero, &v).unwrap(), 0.0);
        prop_assert_eq!(cosine(&v, &zero).unwrap(), 0.0);
    }

    #[test]
    fn embedding_ignores_word_order(
        words in prop::collection::vec(prop::sample::select(vec!["rail", "track", "the", "unknown", "road", "brake", ","]), 0..30),
        seed in any::<u64>(),
    ) {
        let t = table();
        let stop = StopwordList::default();
        let mut shuffled = words.clone();
        let mut state = seed;
        for i in (1..shuffled.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (state >> 33) as usize % (i + 1));
        }
        let a = embed_document(&words.join(" "), &t, &stop);
        let b = embed_document(&shuffled.join(" "), &t, &stop);
        prop_assert_eq!((a.tokens, a.oov), (b.tokens, b.oov));
        for (x, y) in a.vector.iter().zip(&b.vector) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }
}
