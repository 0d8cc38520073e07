use proptest::prelude::*;
use semicover::formats::{self, ConeSpec, FormatError};
use semicover::fixtures;
use semicover_core::{cone, Ball, Error, GroupModel, Letter, Word};

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| char::from(b'a' + i as u8).to_string()).collect()
}

#[test]
fn tables_parse_and_reject_malformed_input() {
    let g = formats::parse_table("# comment\norder: 2\n0 1\n1 0\n").unwrap();
    assert_eq!(g.order(), 2);
    assert!(matches!(
        formats::parse_table("order: 2\n0 1\n"),
        Err(FormatError::Core(Error::MalformedTable(_)))
    ));
    assert!(formats::parse_table("0 1\n1 0\n").is_err());
    assert!(formats::parse_table("order: 2\n0 1\n1 x\n").is_err());
    // A Latin square that is not associative.
    let bad = "order: 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
    assert!(matches!(formats::parse_table(bad), Err(FormatError::Core(Error::NotAGroup { .. }))));
}

#[test]
fn bundled_groups_have_the_orders_their_names_say() {
    let expected = [
        ("trivial", 1),
        ("C2", 2),
        ("V4", 4),
        ("S3", 6),
        ("C4xC2", 8),
        ("Q8", 8),
        ("D5", 10),
        ("A4", 12),
        ("Dic3", 12),
    ];
    for (name, order) in expected {
        assert_eq!(fixtures::group(name).unwrap().order(), order, "{name}");
    }
    assert_eq!(fixtures::groups().len(), fixtures::GROUPS.len());
    assert!(fixtures::group("s3").is_some());
}

#[test]
fn words_with_exponents() {
    let n = names(2);
    let w = formats::parse_word("b^2a^-1", &n).unwrap();
    assert_eq!(formats::format_word(&w, &n), "bbA");
    assert_eq!(formats::parse_word("aA", &n).unwrap(), Word::new());
    assert_eq!(formats::format_word(&[], &n), "1");
    assert!(formats::parse_word("c", &n).is_err());
    assert!(formats::parse_word("a^", &n).is_err());
    assert!(formats::parse_word("a^1000000000", &n).is_err());
}

#[test]
fn presentations_parse_and_match_models() {
    let p = formats::parse_presentation("gens: a b\nrel: abAB\n").unwrap();
    assert_eq!(formats::model_for(&p), GroupModel::lattice(2));
    let klein = fixtures::presentation("klein_bottle").unwrap();
    assert_eq!(formats::model_for(&klein), GroupModel::KleinBottle);
    // The inverse of a cyclic conjugate names the same relator.
    let rotated = formats::parse_presentation("gens: a b\nrel: BAbA\n").unwrap();
    assert_eq!(formats::model_for(&rotated), GroupModel::KleinBottle);
    let heis = fixtures::presentation("heisenberg").unwrap();
    assert_eq!(formats::model_for(&heis), GroupModel::Heisenberg);
    let q = fixtures::presentation("quaternion").unwrap();
    assert_eq!(formats::model_for(&q), GroupModel::Free { rank: 2 });
    assert!(formats::parse_presentation("rel: ab\n").is_err());
    assert!(formats::parse_presentation("gens: a B\n").is_err());
    assert!(formats::parse_presentation("gens: a\nrel: ab\n").is_err());
}

#[test]
fn model_selectors() {
    assert_eq!(formats::parse_model("z^1xC2").unwrap(), GroupModel::Lattice { rank: 1, torsion: vec![2] });
    assert_eq!(formats::parse_model("free:3").unwrap(), GroupModel::Free { rank: 3 });
    assert_eq!(formats::parse_model("heisenberg").unwrap(), GroupModel::Heisenberg);
    assert!(matches!(formats::parse_model("S3").unwrap(), GroupModel::Finite(_)));
    for bad in ["z^x", "z^1xC1", "free:", "nothing"] {
        assert!(matches!(formats::parse_model(bad), Err(FormatError::Model(_))), "{bad}");
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2.table");
    std::fs::write(&path, "order: 2\n0 1\n1 0\n").unwrap();
    let m = formats::parse_model(&format!("finite:{}", path.display())).unwrap();
    assert_eq!(m.num_generators(), 1);
}

#[test]
fn bundled_cones_round_trip_through_json() {
    for (model, file) in [
        ("z^1xC2", "zc2_nonneg.cone"),
        ("z^1xC2", "zc2_nonpos.cone"),
        ("heisenberg", "heisenberg_a.cone"),
        ("heisenberg", "heisenberg_b.cone"),
    ] {
        let model = formats::parse_model(model).unwrap();
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/cones").join(file);
        let c = formats::load_cone(&model, &path).unwrap();
        let spec = ConeSpec::from_cone(&model, &c);
        let json = serde_json::to_string(&spec).unwrap();
        let back = formats::parse_cone(&model, &json).unwrap();
        assert_eq!(back, c, "{file}");
    }
}

#[test]
fn cone_specs_are_validated() {
    let z = GroupModel::lattice(1);
    assert!(formats::parse_cone(&z, r#"{"op": "pullback", "images": [[1]], "region": "sideways"}"#).is_err());
    assert!(formats::parse_cone(&z, r#"{"op": "identity", "extra": 1}"#).is_err());
    assert!(formats::parse_cone(&z, r#"{"op": "finite", "elements": [0]}"#).is_err());
    assert!(formats::parse_cone(&z, r#"{"op": "explicit", "mode": "include", "elements": ["(1,2)"]}"#).is_err());
    let c = formats::parse_cone(&z, r#"{"op": "explicit", "mode": "exclude", "elements": ["(3)"]}"#).unwrap();
    let three = formats::parse_element(&z, "(3)").unwrap();
    assert!(!cone::contains(&z, &c, &three).unwrap());
    let s3 = fixtures::group("S3").unwrap();
    let f = GroupModel::finite(s3);
    assert!(formats::parse_cone(&f, r#"{"op": "finite", "elements": [0, 9]}"#).is_err());
    assert!(formats::parse_cone(&f, r#"{"op": "finite", "elements": [0, 1]}"#).is_ok());
}

#[test]
fn bundled_witnesses_validate() {
    for (name, w) in fixtures::witnesses() {
        let report = w.validate(3).unwrap();
        assert!(report.is_valid(), "{name}");
    }
}

fn word_strategy(gens: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..12).prop_map(|ls| {
        let mut w = Word::new();
        for (g, inv) in ls {
            semicover_core::group::push_reduced(&mut w, Letter::new(g, inv));
        }
        w
    })
}

proptest! {
    #[test]
    fn word_format_round_trips(w in word_strategy(3)) {
        let n = names(3);
        let text = formats::format_word(&w, &n);
        prop_assert_eq!(formats::parse_word(&text, &n).unwrap(), w);
    }

    #[test]
    fn element_format_round_trips(pick in 0usize..5, w in word_strategy(2), idx in 0usize..200) {
        let model = match pick {
            0 => GroupModel::Lattice { rank: 2, torsion: vec![3] },
            1 => GroupModel::Heisenberg,
            2 => GroupModel::KleinBottle,
            3 => GroupModel::Free { rank: 2 },
            _ => GroupModel::finite(fixtures::group("D4").unwrap()),
        };
        let x = if matches!(model, GroupModel::Free { .. }) {
            model.eval_word(&w).unwrap()
        } else {
            let ball = Ball::new(&model, 3, 10_000).unwrap();
            ball.elements()[idx % ball.len()].clone()
        };
        let text = formats::format_element(&model, &x);
        prop_assert_eq!(formats::parse_element(&model, &text).unwrap(), x);
    }
}
