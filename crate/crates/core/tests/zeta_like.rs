use eulerian::algebra::FieldSpec;
use eulerian::carlitz::Carlitz;
use eulerian::criterion::{is_zeta_like, ZetaLikeOutcome};
use eulerian::oracle::{reconstruct_ratio, SeriesContext};

// A witness found by the algebraic search should come with a ratio
// ζ(s)/ζ(w) ∈ k that reconstructs from the series, and a proven negative
// should not.
#[test]
fn search_agrees_with_reconstruction() {
    let f = FieldSpec::of_order(3).unwrap();
    let c = Carlitz::new(&f);
    let ctx = SeriesContext::new(&f, 24);

    let z = is_zeta_like(&c, &[1, 2], 20).unwrap();
    assert!(matches!(z.outcome, ZetaLikeOutcome::ZetaLike { .. }), "{:?}", z.outcome);
    let (ratio, stable) = reconstruct_ratio(&ctx, &[1, 2]).unwrap();
    assert!(ratio.is_some() && stable, "{ratio:?}");

    let z = is_zeta_like(&c, &[2, 1], 20).unwrap();
    assert_eq!(z.is_zeta_like(), Some(false), "{:?}", z.outcome);
    let (ratio, _) = reconstruct_ratio(&ctx, &[2, 1]).unwrap();
    assert!(ratio.is_none(), "{ratio:?}");
}
