mod common;

use common::*;
use tflat_core::embed::Violation;
use tflat_core::{flag_embedding, verify_embedding, Flag, FlagEmbedding, MonoidPresentation};

#[test]
fn random_sharp_monoids_embed() {
    let bad = random_embedding_failures(200, 2024);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn embeddings_are_deterministic() {
    let mut rng = rng(5);
    for _ in 0..20 {
        let p = random_sharp_monoid(&mut rng);
        let again = MonoidPresentation::new(p.ambient_rank(), p.generators().to_vec()).unwrap();
        let a = flag_embedding(&p, &p.complete_flag()).unwrap();
        let b = flag_embedding(&again, &again.complete_flag()).unwrap();
        assert_eq!(a.generator_images(), b.generator_images());
    }
}

#[test]
fn saturation_restricts_to_the_monoid() {
    let mut fixtures = vec![
        MonoidPresentation::numerical(&[2, 3]),
        square_monoid(),
        paper_monoid(),
    ];
    let mut rng = rng(9);
    fixtures.extend((0..20).map(|_| random_sharp_monoid(&mut rng)));
    for p in fixtures {
        let s = p.saturation();
        let flag = p.complete_flag();
        let lifted: Vec<_> = flag
            .faces()
            .iter()
            .map(|f| s.smallest_face_containing(&f.generators()).unwrap())
            .collect();
        let sflag = Flag::new(lifted).unwrap();
        let e = flag_embedding(&p, &flag).unwrap();
        let es = flag_embedding(&s, &sflag).unwrap();
        for g in p.generators() {
            assert_eq!(e.image(g), es.image(g), "{:?}", p.generators());
        }
    }
}

#[test]
fn verifier_rejects_bad_matrices() {
    let p = MonoidPresentation::free(1);
    let flag = p.complete_flag();
    let doubled = FlagEmbedding::from_parts(&p, &flag, vec![vec![2]]);
    assert!(matches!(
        verify_embedding(&doubled, 3).violation,
        Some(Violation::GpIsomorphism { .. })
    ));
    let negative = FlagEmbedding::from_parts(&p, &flag, vec![vec![-1]]);
    assert!(matches!(
        verify_embedding(&negative, 3).violation,
        Some(Violation::Nonnegativity { .. })
    ));
}
