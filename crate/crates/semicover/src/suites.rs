//! Verification suites run by `semicover verify`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semicover_core::cone::{self, ExplicitMode, Region};
use semicover_core::cover::{self, check_coset_saturation, check_difference_closure, reduce_cover};
use semicover_core::covering::{self, SUBGROUP_CAP};
use semicover_core::order::pullback_cover;
use semicover_core::{Ball, ConeSet, CoverPair, Element, GroupModel, Homomorphism, Verdict, DEFAULT_BALL_CAP};
use serde::Serialize;
use serde_json::{json, Value};

use crate::certificate::{self, elements};
use crate::fixtures;

/// Pass and fail counts for one property.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Property {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub radius: u32,
    pub properties: Vec<Property>,
    pub total_passed: usize,
    pub total_failed: usize,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.total_failed == 0
    }

    pub fn property(&self, name: &str) -> Option<&Property> {
        self.properties.iter().find(|p| p.name == name)
    }
}

#[derive(Default)]
struct Tally {
    properties: Vec<Property>,
}

impl Tally {
    fn record(&mut self, name: &str, ok: bool, counterexample: impl FnOnce() -> Value) {
        let i = match self.properties.iter().position(|p| p.name == name) {
            Some(i) => i,
            None => {
                self.properties.push(Property { name: name.into(), ..Property::default() });
                self.properties.len() - 1
            }
        };
        let p = &mut self.properties[i];
        if ok {
            p.passed += 1;
        } else {
            p.failed += 1;
            if p.first_counterexample.is_none() {
                p.first_counterexample = Some(counterexample());
            }
        }
    }

    fn verdict(&mut self, name: &str, model: &GroupModel, context: &Value, v: &Verdict) {
        self.record(name, v.is_verified(), || {
            json!({"context": context, "witness": elements(model, &v.witness), "radius": v.radius_checked})
        });
    }

    fn finish(self, suite: &str, seed: u64, radius: u32) -> SuiteReport {
        let total_passed = self.properties.iter().map(|p| p.passed).sum();
        let total_failed = self.properties.iter().map(|p| p.failed).sum();
        SuiteReport { suite: suite.into(), seed, radius, properties: self.properties, total_passed, total_failed }
    }
}

pub const SUITES: &[&str] = &["lemmas", "roundtrip", "finite"];

/// Number of randomized covers in the lemma suite.
pub const LEMMA_CASES: usize = 100;

fn lex_nonneg(rank: usize) -> ConeSet {
    let rows = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
    ConeSet::pullback(rows, Region::NonNeg)
}

/// A random homomorphism onto a nonzero subgroup of `ℤʳ`, `r ∈ {1, 2}`.
fn random_images(rng: &mut ChaCha8Rng, model: &GroupModel) -> Vec<Vec<i64>> {
    loop {
        let rank = rng.gen_range(1..=2);
        let images: Vec<Vec<i64>> = (0..model.num_generators())
            .map(|g| {
                // The Klein bottle relator forces a ↦ 0.
                if matches!(model, GroupModel::KleinBottle) && g == 0 {
                    vec![0; rank]
                } else {
                    (0..rank).map(|_| rng.gen_range(-2..=2)).collect()
                }
            })
            .collect();
        if images.iter().any(|v| v.iter().any(|&x| x != 0)) {
            return images;
        }
    }
}

/// Moves `e` to the other side of the cover.
fn inject_fault(model: &GroupModel, c: &CoverPair, e: &Element) -> (ConeSet, ConeSet) {
    let single = ConeSet::explicit(ExplicitMode::Include, vec![e.clone()]);
    if cone::contains(model, &c.a, e).expect("valid element") {
        (c.a.clone().minus(single.clone()), c.b.clone().or(single))
    } else {
        (c.a.clone().or(single.clone()), c.b.clone().minus(single))
    }
}

/// The first failing check on a mutated cover, if any.
fn first_detection(model: &GroupModel, a: ConeSet, b: ConeSet, ball: &Ball) -> Option<(&'static str, Verdict)> {
    let c = CoverPair::verify_on(model.clone(), a, b, ball).expect("valid cones");
    if let Some((name, v)) = c.flags.first_failure() {
        return Some((name, v.clone()));
    }
    let r = ball.radius();
    [("coset_saturation", check_coset_saturation(&c, r)), ("difference_closure", check_difference_closure(&c, r))]
        .into_iter()
        .map(|(n, v)| (n, v.expect("valid cover")))
        .find(|(_, v)| !v.is_verified())
}

/// Randomized pullback covers over `ℤ²`, the Heisenberg group, the Klein
/// bottle group and `F₂`, fed to the reduction in normalized, raw and
/// swapped form; each reduced cover is then mutated by moving one element
/// across the boundary, and the mutation must be detected.
pub fn lemmas(seed: u64, radius: u32) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let models = [GroupModel::lattice(2), GroupModel::Heisenberg, GroupModel::KleinBottle, GroupModel::Free { rank: 2 }];
    let balls: Vec<Ball> =
        models.iter().map(|m| Ball::for_checks(m, radius, DEFAULT_BALL_CAP).expect("ball fits")).collect();
    let mut t = Tally::default();
    for case in 0..LEMMA_CASES {
        let mi = case % models.len();
        let (model, ball) = (&models[mi], &balls[mi]);
        let images = random_images(&mut rng, model);
        let rank = images[0].len();
        let hom = Homomorphism::to_lattice(model.clone(), &images).expect("images respect the relators");
        let normalized = match pullback_cover(model, &hom, &lex_nonneg(rank), 1) {
            Ok(c) => c,
            Err(e) => {
                t.record("pullback_cover", false, || json!({"case": case, "error": e.to_string()}));
                continue;
            }
        };
        let p = ConeSet::pullback(images.clone(), Region::NonNeg);
        let q = ConeSet::pullback(
            images.iter().map(|v| v.iter().map(|x| -x).collect()).collect(),
            Region::NonNeg,
        );
        let variant = rng.gen_range(0..3);
        let (a, b) = match variant {
            0 => (normalized.a.clone(), normalized.b.clone()),
            1 => (q, p),
            _ => (p, q),
        };
        let context = json!({"case": case, "model": model.name(), "images": images, "variant": variant});
        let red = match reduce_cover(model, &a, &b, radius) {
            Ok(r) => r,
            Err(e) => {
                t.record("reduce_cover", false, || json!({"context": context, "error": e.to_string()}));
                continue;
            }
        };
        t.record("reduce_cover", true, || Value::Null);
        t.verdict("coset_saturation", model, &context, &red.coset_saturation);
        t.verdict("inverse_duality", model, &context, &red.cover.flags.inverse_duality);
        t.verdict("difference_closure", model, &context, &red.difference_closure);
        let normalized_ok = red.cover.flags.all_verified();
        t.record("normalized_flags", normalized_ok, || {
            json!({"context": context, "failure": red.cover.flags.first_failure().map(|(n, _)| n)})
        });
        let again = reduce_cover(model, &red.cover.a, &red.cover.b, radius);
        let idempotent = again.as_ref().is_ok_and(|r2| {
            cone::equal_on_ball(model, &r2.cover.a, &red.cover.a, ball).is_ok_and(|v| v.is_verified())
                && cone::equal_on_ball(model, &r2.cover.b, &red.cover.b, ball).is_ok_and(|v| v.is_verified())
        });
        t.record("reduce_idempotent", idempotent, || json!({"context": context}));

        let inner: Vec<&Element> = ball.within(radius / 2).iter().filter(|x| !model.is_identity(x)).collect();
        let e = (*inner.choose(&mut rng).expect("nontrivial ball")).clone();
        let (fa, fb) = inject_fault(model, &red.cover, &e);
        let detection = first_detection(model, fa, fb, ball);
        let caught = detection.as_ref().is_some_and(|(_, v)| !v.witness.is_empty());
        t.record("fault_injection_caught", caught, || {
            json!({"context": context, "moved": certificate::elements(model, std::slice::from_ref(&e))})
        });
    }
    t.finish("lemmas", seed, radius)
}

/// Bundled witnesses: pulled back to covers, turned back into witnesses,
/// and compared with the originals on the ball.
pub fn roundtrip(radius: u32) -> SuiteReport {
    let mut t = Tally::default();
    for (name, w) in fixtures::witnesses() {
        let m = w.model().clone();
        let ball = Ball::for_checks(&m, radius, DEFAULT_BALL_CAP).expect("ball fits");
        let ctx = json!({"witness": name});
        let report = w.validate_on(&ball).expect("valid witness");
        t.record("witness_valid", report.is_valid(), || json!({"context": ctx}));
        let c = match w.cover(radius) {
            Ok(c) => c,
            Err(e) => {
                t.record("pullback_cover", false, || json!({"context": ctx, "error": e.to_string()}));
                continue;
            }
        };
        t.record("pullback_cover", c.flags.all_verified(), || json!({"context": ctx}));
        let d = match cover::order_witness_from_cover(&m, &c.a, &c.b, radius, 8) {
            Ok(d) => d,
            Err(e) => {
                t.record("witness_round_trip", false, || json!({"context": ctx, "error": e.to_string()}));
                continue;
            }
        };
        let same = |x: &ConeSet, y: &ConeSet| cone::equal_on_ball(&m, x, y, &ball).is_ok_and(|v| v.is_verified());
        t.record("witness_round_trip", same(d.witness.kernel(), w.kernel()) && same(d.witness.cone(), w.cone()), || {
            json!({"context": ctx})
        });
        let back = d.witness.cover(radius);
        let cover_same = back.as_ref().is_ok_and(|c2| same(&c2.a, &c.a) && same(&c2.b, &c.b));
        t.record("cover_round_trip", cover_same, || json!({"context": ctx}));
    }
    t.finish("roundtrip", 0, radius)
}

/// Covering numbers, the subsemigroup census and the cover search on every
/// bundled group. Groups above `cap` skip the exhaustive parts.
pub fn finite(cap: usize) -> SuiteReport {
    let mut t = Tally::default();
    for (name, g) in fixtures::groups() {
        let ctx = json!({"group": name});
        let exhaustive = g.order() <= cap;
        let r = covering::sigma_s_finite(&g, SUBGROUP_CAP, exhaustive, cap).expect("within caps");
        t.record("sigma_not_two_or_seven", !matches!(r.sigma_g, Some(2) | Some(7)), || json!({"context": ctx}));
        let union = r.witness_cover.iter().fold(semicover_core::BitSet::new(g.order()), |acc, s| acc.union(s));
        let cover_ok = match r.sigma_g {
            Some(k) => union.is_full() && r.witness_cover.len() == k && r.witness_cover.iter().all(|s| !s.is_full()),
            None => r.witness_cover.is_empty() && covering::is_cyclic(&g),
        };
        t.record("witness_cover_valid", cover_ok, || json!({"context": ctx}));
        if let Some(agree) = r.methods_agree() {
            t.record("sigma_s_equals_sigma_g", agree, || json!({"context": ctx, "result": certificate::covering_number(&r)}));
        }
        let scorza = covering::scorza_check(&g, SUBGROUP_CAP).expect("within cap");
        t.record("scorza_agreement", scorza.agrees(), || json!({"context": ctx}));
        if exhaustive {
            let census = covering::subsemigroups_are_subgroups(&g, cap, true).expect("within cap");
            t.record("subsemigroups_are_subgroups", census.holds(), || {
                json!({"context": ctx, "closed_subset": census.counterexample.as_ref().map(certificate::bits)})
            });
            let search = covering::two_cover_search(&g, cap).expect("within cap");
            t.record("no_two_cover", search.covers.is_empty(), || json!({"context": ctx}));
            let model = GroupModel::finite(g.clone());
            let obstruction = cover::torsion_obstruction(&model, cap).expect("finite model");
            t.record("torsion_obstruction", obstruction.obstructed && obstruction.exhaustive_covers == Some(0), || {
                json!({"context": ctx})
            });
        }
    }
    t.finish("finite", 0, 0)
}
