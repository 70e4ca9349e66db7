use cremona::constructions::{apply, audit_self_intersection, degree_after, Verdict};
use cremona::curves::{h1_from_degrees, seed_generic_lines, seed_pencil, seed_smooth};
use cremona::document::{from_json, to_json, CurveDocument, MeridianReport, Reports};
use cremona::extensions::{central_extend, ExtensionContext, Property, Tri};
use cremona::fpgroup::{abelianization, smith_normal_form, IntMatrix, Letter, Presentation, Word};
use cremona::meridians::{run_schedule, FiberLabel};
use cremona::singularities::blowdown_type;
use cremona::zariski::{lift_pair, ZariskiPairRecord};
use cremona::{ConstructionSpec, CurveDatum, GroupDescriptor, SingularityMultiset, SingularityType};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    (prop::sample::select(vec!["a", "b", "c"]), any::<bool>()).prop_map(|(g, inv)| Letter::new(g, inv))
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..24).prop_map(Word::from_letters)
}

/// Deletes the first cancelling pair until none is left.
fn naive_reduce(w: &Word) -> Vec<Letter> {
    let mut v = w.letters().to_vec();
    'scan: loop {
        for i in 0..v.len().saturating_sub(1) {
            if v[i].generator == v[i + 1].generator && v[i].inverse != v[i + 1].inverse {
                v.drain(i..i + 2);
                continue 'scan;
            }
        }
        return v;
    }
}

fn spec() -> impl Strategy<Value = ConstructionSpec> {
    let params = prop::collection::vec(1u64..=4, 1..=3);
    prop_oneof![
        (1u64..=4).prop_map(ConstructionSpec::Uludag),
        params.clone().prop_map(ConstructionSpec::General),
        (1u64..=4).prop_map(ConstructionSpec::Special),
        (params.clone(), params).prop_filter_map("unbalanced", |(n, m)| {
            let sn: u64 = n.iter().sum();
            let sm: u64 = m.iter().sum();
            // rescale m onto the same total
            if sm > sn {
                return None;
            }
            let mut m = m;
            *m.last_mut().unwrap() += sn - sm;
            Some(ConstructionSpec::Mixed { n, m })
        }),
    ]
}

fn seed() -> impl Strategy<Value = CurveDatum> {
    prop_oneof![
        (1u64..=5).prop_map(|d| seed_smooth(d).unwrap()),
        (2u64..=5).prop_map(|m| seed_pencil(m).unwrap()),
        (2u64..=5).prop_map(|m| seed_generic_lines(m).unwrap()),
    ]
}

fn leaf_type() -> impl Strategy<Value = SingularityType> {
    prop::collection::vec(1u64..=6, 1..=5).prop_map(|v| SingularityType::flat(v).unwrap())
}

fn singularity_type() -> impl Strategy<Value = SingularityType> {
    prop_oneof![
        leaf_type(),
        (2u64..=9, prop::collection::vec(leaf_type(), 1..=3))
            .prop_map(|(h, cs)| blowdown_type(BigUint::from(h), cs).unwrap()),
    ]
}

fn descriptor() -> impl Strategy<Value = GroupDescriptor> {
    let leaf = prop_oneof![
        (1u64..=30).prop_map(|r| GroupDescriptor::Cyclic(BigUint::from(r))),
        (0u64..=4).prop_map(GroupDescriptor::free),
        (0u64..=4).prop_map(GroupDescriptor::free_abelian),
        (1u64..=60).prop_map(|q| GroupDescriptor::finite(q, None).unwrap()),
        Just(GroupDescriptor::opaque("Z/2*Z/3", None).unwrap()),
    ];
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..=3).prop_map(GroupDescriptor::direct_sum),
            (inner, prop::collection::vec(2u64..=7, 1..=3)).prop_map(|(b, ks)| {
                GroupDescriptor::tower(b, ks.into_iter().map(BigUint::from).collect()).unwrap()
            }),
        ]
    })
}

proptest! {
    #[test]
    fn free_reduce_matches_naive(w in word()) {
        let r = w.free_reduce();
        let naive = naive_reduce(&w);
        prop_assert_eq!(r.letters(), naive.as_slice());
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert!(r.is_reduced());
    }

    #[test]
    fn word_text_round_trip(w in word()) {
        let r = w.free_reduce();
        prop_assert_eq!(r.to_string().parse::<Word>().unwrap().free_reduce(), r);
    }

    #[test]
    fn inverse_cancels(w in word()) {
        prop_assert!((&w * &w.inverse()).is_empty());
    }

    #[test]
    fn snf_divisibility_chain(rows in 0usize..5, cols in 0usize..5, seed in prop::collection::vec(-12i64..=12, 25)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 5 + c]).collect()).collect();
        let f = smith_normal_form(&IntMatrix::from_rows(&data));
        prop_assert!(f.len() <= rows.min(cols));
        prop_assert!(f.iter().all(|d| *d > BigInt::from(0)));
        for w in f.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
    }

    #[test]
    fn abelianization_ignores_relator_order(ws in prop::collection::vec(word(), 0..4)) {
        let p = Presentation::new(vec!["a", "b", "c"], ws.clone()).unwrap();
        let mut rev = ws;
        rev.reverse();
        let q = Presentation::new(vec!["a", "b", "c"], vec![]).unwrap().quotient(&rev).unwrap();
        prop_assert_eq!(abelianization(&p), abelianization(&q));
    }

    #[test]
    fn presentation_text_round_trip(ws in prop::collection::vec(word(), 0..4)) {
        let p = Presentation::new(vec!["a", "b", "c"], ws).unwrap();
        prop_assert_eq!(p.to_string().parse::<Presentation>().unwrap(), p);
    }

    #[test]
    fn singularity_text_round_trip(t in singularity_type()) {
        prop_assert_eq!(t.to_string().parse::<SingularityType>().unwrap(), t);
    }

    #[test]
    fn descriptor_text_round_trip(g in descriptor()) {
        let back: GroupDescriptor = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn spec_text_round_trip(s in spec()) {
        prop_assert_eq!(s.to_string().parse::<ConstructionSpec>().unwrap(), s);
    }

    #[test]
    fn audit_passes_except_special(d in 1u64..=6, s in spec()) {
        let r = audit_self_intersection(&BigUint::from(d), &s).unwrap();
        match s {
            ConstructionSpec::Special(n) => {
                prop_assert_eq!(r.residual().clone(), BigInt::from(-3 * (n * n * d * d) as i64));
                prop_assert_eq!(r.variant.unwrap().verdict(), Verdict::Pass);
            }
            _ => prop_assert_eq!(r.verdict(), Verdict::Pass),
        }
    }

    #[test]
    fn apply_scales_components(c in seed(), s in spec()) {
        let n = s.kernel_order();
        let out = apply(&c, &s).unwrap();
        prop_assert_eq!(out.components(), c.components());
        prop_assert_eq!(out.degree(), degree_after(&c.degree(), &s));
        for (a, b) in c.component_degrees().iter().zip(out.component_degrees()) {
            prop_assert_eq!(a * &n, b.clone());
        }
        let (h0, h1) = (c.h1(), out.h1());
        prop_assert_eq!(h0.free_rank, h1.free_rank);
        let g0: BigUint = h0.torsion.iter().product();
        let g1: BigUint = h1.torsion.iter().product();
        prop_assert_eq!(g0 * &n, g1);
        prop_assert_eq!(h1, h1_from_degrees(out.component_degrees()));
        prop_assert_eq!(out.log().len(), c.log().len() + 1);
        if let Some(q) = c.group().order() {
            prop_assert_eq!(out.group().order(), Some(q * &n));
        }
    }

    #[test]
    fn documents_round_trip(c in seed(), specs in prop::collection::vec(spec(), 0..3)) {
        let mut cur = c;
        for s in &specs {
            cur = apply(&cur, s).unwrap();
        }
        let reports = specs.last().map(|s| Reports {
            audit: Some(audit_self_intersection(&BigUint::from(3u32), s).unwrap()),
            meridians: Some(MeridianReport::of_spec(s).unwrap()),
        });
        let doc = CurveDocument { reports, ..CurveDocument::new(cur) };
        let text = to_json(&doc).unwrap();
        let back: CurveDocument = from_json(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(to_json(&back).unwrap(), text);
    }

    #[test]
    fn meridians_agree_with_kernel(s in spec()) {
        let run = run_schedule(&s).unwrap();
        // kill beta: the remaining Q relations present Z/N in homology
        let qs: Vec<Word> = run
            .words()
            .iter()
            .filter(|(l, _)| matches!(l, FiberLabel::Q(_) | FiberLabel::L))
            .map(|(_, w)| w.kill("beta"))
            .collect();
        let gens: Vec<String> = match s {
            ConstructionSpec::Special(_) => vec!["alpha".into()],
            _ => (1..=qs.len()).map(|i| format!("alpha{i}")).collect(),
        };
        let qs: Vec<Word> = qs.iter().map(|w| {
            (1..=4).fold(w.clone(), |w, j| w.kill(&format!("beta{j}")))
        }).collect();
        let inv = abelianization(&Presentation::new(gens, qs).unwrap());
        prop_assert_eq!(inv.order(), Some(s.kernel_order()));
    }

    #[test]
    fn extension_orders_multiply(r in 1u64..20, ks in prop::collection::vec(2u64..8, 1..4), irreducible in any::<bool>()) {
        let mut g = GroupDescriptor::Cyclic(BigUint::from(r));
        let mut order = BigUint::from(r);
        for k in ks {
            let k = BigUint::from(k);
            g = central_extend(&g, &k, ExtensionContext { irreducible, family: None }).unwrap();
            order *= &k;
        }
        prop_assert_eq!(g.order(), Some(order));
    }

    #[test]
    fn lifted_pairs_stay_pairs(specs in prop::collection::vec(spec(), 1..3)) {
        let cusps: SingularityMultiset = (0..6).map(|_| "[2]".parse().unwrap()).collect();
        let six = vec![BigUint::from(6u32)];
        let left = CurveDatum::custom(six.clone(), cusps.clone(), "Z/6".parse().unwrap(), &[]).unwrap();
        let right = CurveDatum::custom(six, cusps, "Group(B3)".parse().unwrap(), &[(Property::Nonabelian, Tri::True)]).unwrap();
        let mut pair = ZariskiPairRecord::seed(left, right);
        let mut order = BigUint::from(6u32);
        for s in &specs {
            pair = lift_pair(&pair, s).unwrap();
            order *= s.kernel_order();
            prop_assert!(pair.combinatorics_equal());
        }
        prop_assert_eq!(pair.left().group().clone(), GroupDescriptor::Cyclic(order));
        prop_assert_eq!(pair.generation(), specs.len() as u64);
        prop_assert!(pair.right().props().get(Property::Nonabelian).is_true());
    }
}

#[test]
fn two_uludag_steps_differ_from_general() {
    for d in 1..=4u64 {
        let c = seed_smooth(d).unwrap();
        let g = apply(&c, &"general(1,1)".parse().unwrap()).unwrap();
        let u = "uludag(1)".parse::<ConstructionSpec>().unwrap();
        let uu = apply(&apply(&c, &u).unwrap(), &u).unwrap();
        assert_eq!(g.degree(), BigUint::from(3 * d));
        assert_eq!(uu.degree(), BigUint::from(4 * d));
        assert_ne!(g.singularities(), uu.singularities());
    }
}
