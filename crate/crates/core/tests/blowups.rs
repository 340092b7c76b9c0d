use birlinks_core::blowup::{self, has_linear_cqs, is_linear, kawamata_blowup};
use birlinks_core::catalog::{Catalog, WciFamily};
use birlinks_core::game;
use birlinks_core::toric::det;
use birlinks_core::wps::{self, Cqs, PointType};
use birlinks_core::{Error, Q};

fn shipped() -> Vec<WciFamily> {
    Catalog::builtin().families().iter().filter(|f| !f.is_data_unverified()).cloned().collect()
}

fn terminal_coordinate_centres(f: &WciFamily) -> Vec<(usize, Cqs)> {
    let tags = f.tags().unwrap();
    (0..6)
        .filter_map(|i| match wps::coordinate_point_type_with(&f.weights, &f.degrees, i, &tags) {
            Ok(PointType::Cqs { sing, .. }) if wps::is_terminal(&sing) => Some((i, sing)),
            _ => None,
        })
        .collect()
}

#[test]
fn every_blowup_is_integral() {
    let mut count = 0;
    for f in shipped() {
        let tags = f.tags().unwrap();
        for (i, s) in terminal_coordinate_centres(&f) {
            let b = kawamata_blowup(&f, i, &tags).unwrap_or_else(|e| panic!("family {} at {s}: {e}", f.id));
            for c in &b.ambient.columns {
                assert!(c.v[0] > 0 || c.name == "u", "family {} column {}", f.id, c.name);
            }
            // the congruence behind integrality: a_l ≡ ι·a_ξ·ν_l, read as k·a_l − r·ν_l ∈ rℤ
            for l in 0..6 {
                let s2 = (Q::from_integer(b.k * f.weights[l]) - b.vanishing_orders[l] * b.r) / b.r;
                assert!(s2.is_integer(), "family {} variable {l}", f.id);
            }
            count += 1;
        }
    }
    assert!(count >= 40, "only {count} centres checked");
}

#[test]
fn every_family_has_a_linear_centre() {
    for f in shipped() {
        assert!(has_linear_cqs(&f).is_some(), "family {}", f.id);
    }
}

#[test]
fn linear_witnesses() {
    let cat = Catalog::builtin();
    let f97 = cat.family(97).unwrap();
    let c = has_linear_cqs(f97).unwrap();
    assert_eq!(f97.weights[c.index], 9);
    assert_eq!(c.sing, Cqs::new(9, [1, 1, 8]));
    let f118 = cat.family(118).unwrap();
    let c = has_linear_cqs(f118).unwrap();
    assert_eq!(f118.weights[c.index], 5);
    assert_eq!(c.sing, Cqs::new(5, [1, 2, 3]));

    let f105 = cat.family(105).unwrap();
    let idx = |w: i64| f105.weights.iter().position(|&x| x == w).unwrap();
    assert!(is_linear(f97, 5));
    assert!(!is_linear(f105, idx(3)));
    assert!(is_linear(f105, idx(5)));
}

#[test]
fn no_linear_centre_on_a_toy_family() {
    // P(1,1,1,1,1,1) has no singular points at all
    let f = WciFamily {
        id: 0,
        weights: [1; 6],
        degrees: [2, 2],
        fano_index: 2,
        basket: vec![],
        solidity: birlinks_core::catalog::Solidity::S,
        assumptions: vec![],
    };
    assert!(has_linear_cqs(&f).is_none());
}

#[test]
fn point_types() {
    let cat = Catalog::builtin();
    let f97 = cat.family(97).unwrap();
    match wps::coordinate_point_type(f97, 5).unwrap() {
        PointType::Cqs { sing, eliminated } => {
            assert_eq!(sing, Cqs::new(9, [1, 1, 8]));
            let mut w: Vec<i64> = eliminated.iter().map(|&j| f97.weights[j]).collect();
            w.sort();
            assert_eq!(w, vec![1, 5]);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(wps::coordinate_point_type(f97, 0).unwrap(), PointType::SmoothPoint);
    let f105 = cat.family(105).unwrap();
    assert!(matches!(
        wps::coordinate_point_type(f105, 5).unwrap(),
        PointType::Cqs { sing, .. } if sing == Cqs::new(9, [1, 1, 8])
    ));
}

#[test]
fn lifts_family_105_index_three() {
    let cat = Catalog::builtin();
    let f = cat.family(105).unwrap();
    let c = wps::locate_centre(f, &Cqs::new(3, [1, 1, 2]), &[]).unwrap();
    let b = blowup::blowup_at(f, &c).unwrap();
    let class = |name: &str| {
        let e = b.lift_table.iter().find(|e| e.var == name).unwrap();
        (e.class.anti, e.class.exc)
    };
    let q = Q::new;
    assert_eq!(class("x"), (q(1, 1), q(0, 1)));
    assert_eq!(class("y"), (q(1, 1), q(0, 1)));
    assert_eq!(class("z"), (q(3, 2), q(1, 2)));
    assert_eq!(class("t"), (q(5, 2), q(-1, 2)));
    assert_eq!(class("v"), (q(7, 2), q(1, 2)));
    assert_eq!(class("w"), (q(9, 2), q(-1, 2)));
    let [cf, cg] = b.eq_classes();
    assert_eq!((cf.anti, cf.exc), (q(6, 1), q(0, 1)));
    assert_eq!((cg.anti, cg.exc), (q(7, 1), q(1, 1)));
    assert_eq!(b.m[1], q(4, 3));
}

#[test]
fn vanishing_order_family_102() {
    let cat = Catalog::builtin();
    let f = cat.family(102).unwrap();
    let c = wps::locate_centre(f, &Cqs::new(3, [1, 1, 2]), &[]).unwrap();
    let b = blowup::blowup_at(f, &c).unwrap();
    assert_eq!(b.m[0], Q::new(f.degrees[0], 6));
    assert_eq!(b.m[0], Q::new(5, 3));
}

#[test]
fn vanishing_order_at_linear_centres() {
    // the closed form needs ι ≠ 4
    for f in shipped().into_iter().filter(|f| f.fano_index != 4) {
        let c = has_linear_cqs(&f).unwrap();
        let b = blowup::blowup_at(&f, &c).unwrap();
        let expect = Q::new(f.degrees[0], f.fano_index * f.weights[c.index]);
        assert_eq!(b.m[0], expect, "family {}", f.id);
    }
}

#[test]
fn min_vanishing_order_basics() {
    let nu = [Q::new(1, 3), Q::new(1, 3), Q::from_integer(0), Q::new(4, 3), Q::new(2, 3), Q::from_integer(2)];
    assert_eq!(blowup::min_vanishing_order(&[[0; 6]], &nu, 0).unwrap(), Q::from_integer(0));
    assert_eq!(blowup::min_vanishing_order(&[[1, 0, 0, 1, 0, 0], [0, 0, 0, 0, 2, 0]], &nu, 10).unwrap(), Q::new(4, 3));
    assert_eq!(blowup::min_vanishing_order(&[], &nu, 7), Err(Error::DegenerateMember(7)));
}

#[test]
fn initial_discrepancy_is_one_over_r() {
    for f in shipped() {
        let tags = f.tags().unwrap();
        for (i, s) in terminal_coordinate_centres(&f) {
            let b = kawamata_blowup(&f, i, &tags).unwrap();
            assert_eq!(game::initial_discrepancy(&b).unwrap(), Q::new(1, s.r), "family {} at {s}", f.id);
        }
    }
}

#[test]
fn anticanonical_column() {
    for f in shipped() {
        let c = has_linear_cqs(&f).unwrap();
        let b = blowup::blowup_at(&f, &c).unwrap();
        let k = b.anticanonical;
        assert_eq!(k[0], f.fano_index);
        assert_eq!((b.k * f.fano_index - 1) % b.r, 0);
        // −K_Y lies between E and the ξ column
        assert!(det([0, 1], k) < 0 && det(b.ambient.columns[1].v, k) <= 0, "family {}", f.id);
    }
}
