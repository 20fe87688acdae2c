use proptest::prelude::*;
use wpl_core::{BundlePoint, ClassifiedForm, K0Class, MeshWindow, OrbitId, TiltingCandidate, TiltingFile, TorsionClass, Wpl};

fn point(wpl: &Wpl, orbit: usize, m: i64) -> BundlePoint {
    let orbits = wpl.orbits();
    BundlePoint::new(orbits[orbit % orbits.len()], m)
}

#[test]
fn rank_two_hom_persists_along_tau_inverse() {
    for n in 2..=6 {
        let wpl = Wpl::new(n).unwrap();
        let pts = wpl.window_points(3);
        for k in 2..=n as u32 {
            let e = BundlePoint::e(k, 0);
            for &x in &pts {
                if wpl.hom_dim(e, x) > 0 {
                    assert!(wpl.hom_dim(e, x.tau(-1)) > 0, "n={n}: Hom({e}, {x})");
                }
                if wpl.hom_dim(x, e) > 0 {
                    assert!(wpl.hom_dim(x.tau(1), e) > 0, "n={n}: Hom({x}, {e})");
                }
            }
        }
    }
}

#[test]
fn slices_have_one_point_per_orbit() {
    for n in 2..=5 {
        let wpl = Wpl::new(n).unwrap();
        for p in wpl.window_points(2) {
            for s in [wpl.slice_from(p).unwrap(), wpl.slice_to(p).unwrap()] {
                assert_eq!(s.len(), wpl.orbits().len());
                assert!(wpl.is_slice(&s), "n={n}: {p}");
                assert!(s.contains(&p));
            }
        }
    }
}

#[test]
fn simplified_slices_agree_with_definition() {
    for n in 2..=6 {
        let wpl = Wpl::new(n).unwrap();
        for k in 2..=n as u32 {
            for m in -2..=2 {
                let e = BundlePoint::e(k, m);
                let mut a = wpl.slice_from_simplified(e).unwrap();
                let mut b = wpl.slice_from_definitional(e).unwrap();
                a.sort();
                b.sort();
                assert_eq!(a, b, "n={n} {e}");
                let mut a = wpl.slice_to_simplified(e).unwrap();
                let mut b = wpl.slice_to_definitional(e).unwrap();
                a.sort();
                b.sort();
                assert_eq!(a, b, "n={n} {e}");
            }
        }
        assert!(wpl.slice_from_simplified(BundlePoint::new(OrbitId::L1, 0)).is_err());
    }
}

#[test]
fn domain_counterexample_for_line_bundles() {
    // O(x1 - x2) = tau O(x3) lies in Dom+(O) but not in Dom+(O(x3)),
    // although O lies in Dom+(O(x3)).
    let wpl = Wpl::new(3).unwrap();
    let o = BundlePoint::new(OrbitId::L1, 0);
    let ox3 = BundlePoint::new(OrbitId::L1p, 0);
    let z = wpl.line_point(wpl.x1() - wpl.x2());
    assert_eq!(z, ox3.tau(1));
    assert!(wpl.dom_plus(ox3).unwrap().contains(&o));
    assert!(wpl.dom_plus(o).unwrap().contains(&z));
    assert!(!wpl.dom_plus(ox3).unwrap().contains(&z));
}

#[test]
fn extension_free_examples() {
    let wpl = Wpl::new(4).unwrap();
    let o = wpl.line_point(wpl.zero());
    let far = wpl.line_point(wpl.c() + wpl.x3());
    assert!(wpl.extension_free(&[o]));
    assert!(!wpl.extension_free(&[o, far]));
    assert!(wpl.extension_free(&[o, wpl.line_point(wpl.c())]));
}

#[test]
fn branches_are_extension_free() {
    for n in 2..=6 {
        let wpl = Wpl::new(n).unwrap();
        for k in 2..=n as u32 {
            let e = BundlePoint::e(k, 0);
            for (tag, pts) in wpl.br_plus(e).unwrap() {
                assert!(wpl.extension_free(&pts), "n={n} {e} {}", tag.name());
            }
            for (tag, pts) in wpl.br_minus(e).unwrap() {
                assert!(wpl.extension_free(&pts), "n={n} {e} {}", tag.name());
            }
        }
    }
}

#[test]
fn canonical_bundle_classifies_as_its_twist() {
    for n in 2..=6 {
        let wpl = Wpl::new(n).unwrap();
        for l in [wpl.zero(), wpl.x3(), wpl.omega()] {
            let t = wpl.canonical_tilting(l);
            assert!(wpl.is_tilting(&t));
            assert_eq!(wpl.classify(&t).unwrap(), ClassifiedForm::CanonicalTwist { l });
        }
    }
}

#[test]
fn non_tilting_is_rejected() {
    let wpl = Wpl::new(3).unwrap();
    let t = TiltingCandidate::new(wpl.weight(), [BundlePoint::new(OrbitId::L1, 0)]).unwrap();
    assert!(!wpl.is_tilting(&t));
    assert!(wpl.classify(&t).is_err());
    let dup = [BundlePoint::e(2, 0), BundlePoint::e(2, 0)];
    assert!(TiltingCandidate::new(wpl.weight(), dup).is_err());
}

#[test]
fn torsion_classes_cover_the_window() {
    let wpl = Wpl::new(3).unwrap();
    let t = wpl.canonical_tilting(wpl.zero());
    let mp = wpl.missing_part(&t, 5).unwrap();
    for p in wpl.window_points(4) {
        let class = wpl.torsion_class(p, &t);
        assert_eq!(class == TorsionClass::Missing, mp.contains(p), "{p}");
        if t.contains(p) {
            assert_eq!(class, TorsionClass::X0);
        }
    }
}

#[test]
fn tilting_file_round_trip() {
    let wpl = Wpl::new(4).unwrap();
    for (form, t) in wpl.triple_space().unwrap().into_iter().take(12) {
        let json = wpl.tilting_file(&t).to_json();
        let back = wpl.candidate_from_file(&TiltingFile::from_json(&json).unwrap()).unwrap();
        assert_eq!(back, t);
        let fj = wpl.form_json(&form);
        let text = serde_json::to_string(&fj).unwrap();
        let parsed = serde_json::from_str(&text).unwrap();
        assert_eq!(wpl.form_from_json(&parsed).unwrap(), form);
    }
    let other = Wpl::new(5).unwrap();
    let file = wpl.tilting_file(&wpl.canonical_tilting(wpl.zero()));
    assert!(other.candidate_from_file(&file).is_err());
}

#[test]
fn missing_report_round_trip() {
    let wpl = Wpl::new(3).unwrap();
    let (_, t) = wpl.triple_space().unwrap().swap_remove(0);
    let mp = wpl.missing_part(&t, 6).unwrap();
    let report = wpl.missing_report(&mp).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    assert_eq!(serde_json::from_str::<wpl_core::MissingReport>(&text).unwrap(), report);
    assert_eq!(report.size, mp.len());
}

#[test]
fn mesh_window_is_stable_under_enlargement() {
    let wpl = Wpl::new(3).unwrap();
    let small = MeshWindow::new(&wpl, -2, 2).unwrap();
    let large = MeshWindow::new(&wpl, -4, 4).unwrap();
    for &x in small.vertices() {
        for &y in small.vertices() {
            assert_eq!(small.hom_dim(x, y).unwrap(), large.hom_dim(x, y).unwrap(), "{x} {y}");
        }
    }
    assert!(small.hom_dim(BundlePoint::e(2, 5), BundlePoint::e(2, 5)).is_err());
    assert!(MeshWindow::new(&wpl, 1, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn slope_grows_against_tau(n in 2i64..8, o in 0usize..16, m in -5i64..5) {
        let wpl = Wpl::new(n).unwrap();
        let p = point(&wpl, o, m);
        prop_assert!(wpl.slope_of(p.tau(-1)) > wpl.slope_of(p));
    }

    #[test]
    fn class_rank_matches_orbit(n in 2i64..8, o in 0usize..16, m in -5i64..5) {
        let wpl = Wpl::new(n).unwrap();
        let p = point(&wpl, o, m);
        prop_assert_eq!(wpl.class_of(p).rank(), p.rank());
    }

    #[test]
    fn class_json_round_trip(n in 2i64..8, o in 0usize..16, m in -5i64..5) {
        let wpl = Wpl::new(n).unwrap();
        let c = wpl.class_of(point(&wpl, o, m));
        prop_assert_eq!(K0Class::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn point_text_round_trip(n in 2i64..8, o in 0usize..16, m in -6i64..6) {
        let wpl = Wpl::new(n).unwrap();
        let p = point(&wpl, o, m);
        prop_assert_eq!(wpl.parse_point(&wpl.format_point(p)).unwrap(), p);
    }

    #[test]
    fn hom_is_tau_invariant(n in 2i64..7, a in 0usize..16, b in 0usize..16, ma in -3i64..3, mb in -3i64..3, s in -3i64..3) {
        let wpl = Wpl::new(n).unwrap();
        let (x, y) = (point(&wpl, a, ma), point(&wpl, b, mb));
        prop_assert_eq!(wpl.hom_dim(x, y), wpl.hom_dim(x.tau(s), y.tau(s)));
    }

    #[test]
    fn domain_membership_is_extension_freeness(n in 2i64..7, k in 2u32..7, b in 0usize..16, m in -3i64..4) {
        let wpl = Wpl::new(n).unwrap();
        let e = BundlePoint::e(2 + (k - 2) % (n as u32 - 1), 0);
        let y = point(&wpl, b, m);
        prop_assert_eq!(wpl.dom(e).unwrap().contains(&y), wpl.ext_free_pair(e, y));
    }
}
