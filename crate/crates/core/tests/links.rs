use birlinks_core::blowup;
use birlinks_core::catalog::Catalog;
use birlinks_core::game::{self, discrepancy, FiberKind, LinkStep, PointGerm, SarkisovLink, Verdict};
use birlinks_core::report::{self, Report};
use birlinks_core::tags;
use birlinks_core::wps::{self, Cqs};
use birlinks_core::{Error, Q};

fn link(id: u32, r: i64, b: [i64; 3], assume: &[&str]) -> SarkisovLink {
    let cat = Catalog::builtin();
    let f = cat.family(id).unwrap();
    let names: Vec<String> = assume.iter().map(|s| s.to_string()).collect();
    let extra = tags::resolve(&names).unwrap();
    let c = wps::locate_centre(f, &Cqs::new(r, b), &extra).unwrap();
    game::run_link(f, &c).unwrap()
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort();
    v
}

#[test]
fn family_97() {
    let l = link(97, 9, [1, 1, 8], &[]);
    assert_eq!(l.steps.len(), 3);
    assert!(matches!(l.steps[0], LinkStep::Isomorphism { .. }));
    match &l.steps[1] {
        LinkStep::Flip { loci, weights, degrees, .. } => {
            assert_eq!(sorted(loci.contracted.clone()), vec![1, 1, 7, 8]);
            assert_eq!(sorted(loci.extracted.clone()), vec![1, 3]);
            assert_eq!(weights, &vec![-8, -1, -1, 1, 3]);
            assert_eq!(degrees, &vec![-5]);
        }
        s => panic!("{s:?}"),
    }
    match &l.steps[2] {
        LinkStep::DivisorialToPoint { target_weights, target_degrees, point, discrepancy, residual_order, .. } => {
            assert_eq!(target_weights, &vec![1, 1, 1, 2, 3]);
            assert_eq!(target_degrees, &vec![7]);
            assert_eq!(point, &PointGerm::Quotient { sing: Cqs::new(2, [1, 1, 1]), terminal: true });
            assert_eq!(*discrepancy, Q::new(1, 2));
            assert_eq!(*residual_order, 1);
        }
        s => panic!("{s:?}"),
    }
    assert_eq!(l.verdict, Verdict::TypeII);
    assert_eq!(l.initial_discrepancy, Q::new(1, 9));
}

#[test]
fn family_118_conic_bundle() {
    let l = link(118, 3, [1, 1, 2], &[]);
    assert!(matches!(&l.steps[1], LinkStep::Flip { weights, degrees, .. } if *weights == vec![-5, -1, 2, 3] && degrees.is_empty()));
    match l.end().unwrap() {
        LinkStep::Fibration { base_weights, fiber, .. } => {
            assert_eq!(sorted(base_weights.clone()), vec![1, 2, 3]);
            assert_eq!(*fiber, FiberKind::Conic);
        }
        s => panic!("{s:?}"),
    }
    assert_eq!(l.verdict, Verdict::TypeI);
}

#[test]
fn family_119_isomorphisms_then_conic_bundle() {
    let l = link(119, 7, [1, 3, 4], &[]);
    let (end, walls) = l.steps.split_last().unwrap();
    assert!(!walls.is_empty());
    assert!(walls.iter().all(|s| matches!(s, LinkStep::Isomorphism { .. })));
    assert!(matches!(end, LinkStep::Fibration { fiber: FiberKind::Conic, base_weights, .. } if sorted(base_weights.clone()) == vec![1, 2, 3]));
}

fn dp_degree(l: &SarkisovLink) -> Option<Q> {
    match l.end() {
        Some(LinkStep::Fibration { fiber: FiberKind::DelPezzo { degree }, .. }) => Some(*degree),
        _ => None,
    }
}

#[test]
fn del_pezzo_degrees() {
    let l = link(89, 5, [1, 1, 4], &[]);
    assert_eq!(dp_degree(&l), Some(Q::from_integer(3)));
    // sign convention: wall-side weights come out negated relative to the hand computation
    assert!(matches!(&l.steps[1], LinkStep::Flip { weights, degrees, .. } if *weights == vec![-4, -1, -1, 1, 1] && *degrees == vec![-3]));
    assert_eq!(dp_degree(&link(113, 2, [1, 1, 1], &[])), Some(Q::from_integer(4)));
    assert_eq!(dp_degree(&link(119, 3, [1, 1, 2], &[])), Some(Q::from_integer(4)));
}

#[test]
fn flop_count_102() {
    let l = link(102, 3, [1, 1, 2], &[]);
    assert!(l.steps.iter().any(|s| matches!(s, LinkStep::Flop { count: Some(c), .. } if *c == Q::from_integer(5))));
    let l = link(105, 3, [1, 1, 2], &[]);
    assert!(l.steps.iter().any(|s| matches!(s, LinkStep::Flop { count: Some(c), .. } if *c == Q::from_integer(6))));
}

#[test]
fn bad_links() {
    let l = link(105, 3, [1, 1, 2], &["z3t-absent-in-g"]);
    assert_eq!(l.verdict, Verdict::BadLink);
    match l.end().unwrap() {
        LinkStep::DivisorialToPoint { point, discrepancy, .. } => {
            assert_eq!(point.to_string(), "1/2(1,1,1,1;2)");
            assert_eq!(*discrepancy, Q::from_integer(0));
        }
        s => panic!("{s:?}"),
    }
    assert_eq!(link(102, 3, [1, 1, 2], &["z3t-absent-in-g"]).verdict, Verdict::BadLink);
    assert_eq!(link(109, 5, [1, 2, 3], &[]).verdict, Verdict::BadLink);
}

#[test]
fn involutions_and_quotients() {
    assert_eq!(link(117, 4, [1, 1, 3], &["117-bi"]).verdict, Verdict::BirationalInvolution);
    assert_eq!(link(125, 2, [1, 1, 1], &["125-bi"]).verdict, Verdict::BirationalInvolution);
    let r = |l: &SarkisovLink| match l.end() {
        Some(LinkStep::DivisorialToPoint { residual_order, .. }) => *residual_order,
        s => panic!("{s:?}"),
    };
    assert_eq!(r(&link(117, 7, [1, 1, 6], &[])), 2);
    assert_eq!(r(&link(95, 5, [1, 2, 3], &[])), 1);
    assert_eq!(r(&link(95, 3, [1, 1, 2], &[])), 1);
    assert_eq!(r(&link(105, 5, [1, 1, 4], &["105-alpha0"])), 2);
    assert_eq!(r(&link(125, 2, [1, 1, 1], &["125-beta-gamma0"])), 3);
    assert_eq!(r(&link(123, 3, [1, 1, 2], &["123-beta"])), 2);
}

#[test]
fn curve_and_unprojection_ends() {
    assert!(matches!(link(91, 3, [1, 1, 2], &[]).end(), Some(LinkStep::DivisorialToCurve { .. })));
    assert_eq!(link(98, 3, [1, 1, 2], &[]).verdict, Verdict::RequiresUnprojection);
}

#[test]
fn discrepancy_op() {
    let q = Q::new;
    // X ← Y: −K_X pulls back to −K_Y + (1/r)E, E' = E
    assert_eq!(discrepancy(q(1, 1), q(-1, 3), q(0, 1), q(-1, 1)), Err(Error::EndpointNotInterior));
    assert_eq!(discrepancy(q(5, 2), q(1, 2), q(1, 2), q(1, 2)).unwrap(), q(1, 2));
    assert_eq!(discrepancy(q(2, 1), q(0, 1), q(1, 1), q(1, 1)).unwrap(), q(0, 1));
    assert!(discrepancy(q(1, 1), q(1, 1), q(1, 1), q(1, 1)).is_err());
}

#[test]
fn discrepancy_115_case_two() {
    let l = link(115, 11, [1, 2, 9], &[]);
    assert!(matches!(l.end(), Some(LinkStep::DivisorialToPoint { discrepancy, .. }) if *discrepancy == Q::from_integer(2)));
}

#[test]
fn first_wall_at_linear_centres_is_isomorphism() {
    let cat = Catalog::builtin();
    for f in cat.families().iter().filter(|f| !f.is_data_unverified()) {
        for b in &f.basket {
            let Ok(c) = wps::locate_centre(f, &b.sing(), &[]) else { continue };
            if !blowup::is_linear(f, c.index) {
                continue;
            }
            let l = game::run_link(f, &c).unwrap();
            assert!(matches!(l.steps[0], LinkStep::Isomorphism { .. }), "family {} at {}: {:?}", f.id, c.sing, l.steps[0]);
        }
    }
}

#[test]
fn verdict_invariants() {
    let cat = Catalog::builtin();
    for r in report::table_report(&cat, &[]).unwrap() {
        let f = cat.family(r.family).unwrap();
        for l in r.links.iter().filter(|l| l.error.is_none()) {
            let disc = l.steps.last().and_then(|s| match s {
                LinkStep::DivisorialToPoint { discrepancy, .. } | LinkStep::DivisorialToCurve { discrepancy, .. } => Some(*discrepancy),
                _ => None,
            });
            match l.verdict.unwrap() {
                Verdict::TypeII | Verdict::BirationalInvolution => assert!(disc.unwrap() > Q::from_integer(0), "{} {}", f.id, l.centre),
                Verdict::BadLink => assert_eq!(disc, Some(Q::from_integer(0)), "{} {}", f.id, l.centre),
                _ => {}
            }
        }
    }
}

#[test]
fn reports_round_trip() {
    let cat = Catalog::builtin();
    for r in report::table_report(&cat, &[]).unwrap() {
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
    let l = link(97, 9, [1, 1, 8], &[]);
    let s = serde_json::to_string(&l).unwrap();
    let back: SarkisovLink = serde_json::from_str(&s).unwrap();
    assert_eq!(back, l);
}

#[test]
fn markdown_rows() {
    let cat = Catalog::builtin();
    let f = cat.family(97).unwrap();
    let row = report::markdown_row(f, &report::link_summary(f, &Cqs::new(9, [1, 1, 8]), &[], None));
    assert!(row.contains("Z₇ ⊂ ℙ(1,1,1,2,3), 1/2(1,1,1)"), "{row}");
    let f = cat.family(106).unwrap();
    let rows = report::markdown_table(&cat, &report::table_report(&cat, &[106]).unwrap());
    assert!(rows.contains(&format!("{} (data-unverified)", f.id)));
}
