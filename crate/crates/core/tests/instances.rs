use ordlift::causal::{psi_estimate, r_x, Causal, CausalCoverInstance, CircleCover};
use ordlift::circle::sample::Sampler;
use ordlift::circle::Kind;
use ordlift::num::qi;
use ordlift::surface::{parse_rep, rep_to_text, FreeWord, SurfaceRep};
use ordlift::Error;

/// Deck powers have `R_x(Z^n) = n`, `psi(Z^n) = n` and `Z x >= x`.
fn deck_identities<I: CausalCoverInstance>(inst: &I, points: &[I::Point]) {
    for x in points {
        assert_eq!(inst.leq(x, &inst.deck(x, 1).unwrap()).unwrap(), Causal::Leq, "{x}");
        for n in [-4, -1, 0, 1, 3, 7] {
            let z = inst.deck_element(n).unwrap();
            assert_eq!(r_x(inst, &z, x).unwrap(), n, "R_x(Z^{n}) at {x}");
            assert!(psi_estimate(inst, &z, 50, x).unwrap().contains(&qi(n)), "psi(Z^{n}) at {x}");
        }
    }
}

#[test]
fn circle_deck_identities() {
    let mut s = Sampler::new(4);
    for kind in [Kind::Pl, Kind::Moebius] {
        let cover = CircleCover::new(kind);
        let points: Vec<_> = (0..10).map(|_| cover.sample_point(&mut s)).collect();
        deck_identities(&cover, &points);
    }
}

#[cfg(feature = "lagrangian")]
#[test]
fn lagrangian_deck_identities() {
    use ordlift::causal::lagrangian::LagrangianCover;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    for n in 1..=3 {
        let cover = LagrangianCover::new(n).unwrap();
        let points: Vec<_> = (0..5).map(|_| cover.sample_point(&mut rng)).collect();
        deck_identities(&cover, &points);
    }
}

#[test]
fn surface_file() {
    let text = "\
# the modular torus with a shifted winding
surface genus=1 boundary=1
reference
a: moebius: [[1,1],[1,2]] winding 0
b: moebius: [[1,-1],[-1,2]] winding 1
word abAB
word aabAAB
";
    let (rep, words) = parse_rep(text).unwrap();
    assert!(rep.reference);
    assert_eq!(rep.matrices(), SurfaceRep::modular_torus().matrices());
    assert_eq!(words, vec![FreeWord::parse("abAB", 2).unwrap(), FreeWord::parse("aabAAB", 2).unwrap()]);
    let (again, again_words) = parse_rep(&rep_to_text(&rep, &words)).unwrap();
    assert_eq!((again.matrices(), again_words), (rep.matrices(), words));
}

#[test]
fn surface_file_errors() {
    let bad = [
        "a: moebius: [[1,1],[1,2]] winding 0\n",
        "surface genus=1 boundary=1\na: moebius: [[1,1],[1,2]] winding 0\n",
        "surface genus=1 boundary=0\nexample\n",
        "surface genus=1 boundary=1\nexample\nword abz\n",
        "surface genus=1 boundary=1\nexample\nc: moebius: [[1,0],[0,1]]\n",
    ];
    for text in bad {
        assert!(matches!(parse_rep(text), Err(Error::Parse(_) | Error::InvalidElement(_) | Error::UnsupportedSurface(_) | Error::Precondition(_))), "{text:?}: {:?}", parse_rep(text).map(|_| ()));
    }
}
