mod common;

use common::{corpus_text, load};
use cyalg::linalg::Q;
use cyalg::quiver_algebra::{GradedQuiverPresentation, Path, Twist};
use cyalg::sign_dg::{
    check_twisted_cy, cohomology, default_window, dg_transport, dualize, exactness_probe,
    koszul_complex, parse_complex, potential_complex, relation_complex, BimoduleComplex,
    SignDgError, TwistSpec,
};
use num::One;

fn same(a: &BimoduleComplex, b: &BimoduleComplex) {
    assert_eq!(a.start, b.start);
    assert_eq!(a.setting, b.setting);
    assert_eq!(a.terms, b.terms);
    assert_eq!(a.diffs, b.diffs, "\n{}\nvs\n{}", a.to_text(), b.to_text());
}

fn complex(pres: &GradedQuiverPresentation, name: &str) -> BimoduleComplex {
    parse_complex(pres, &corpus_text(name)).unwrap()
}

#[test]
fn koszul_resolution_of_the_plane() {
    let pres = load("kxy.quiver");
    let k = koszul_complex(&pres).unwrap();
    same(&k, &complex(&pres, "kxy_koszul.complex"));
    same(&relation_complex(&pres).unwrap(), &k);
    assert_eq!(k.ranks(), vec![1, 2, 1]);
}

#[test]
fn transport_of_the_plane_resolution() {
    let pres = load("kxy.quiver");
    let t = dg_transport(&koszul_complex(&pres).unwrap()).unwrap();
    same(&t, &complex(&pres, "kxy_koszul_dg.complex"));
}

#[test]
fn dual_of_the_transported_plane_resolution() {
    let pres = load("kxy.quiver");
    let d = dualize(&dg_transport(&koszul_complex(&pres).unwrap()).unwrap()).unwrap();
    same(&d, &complex(&pres, "kxy_koszul_dual.complex"));
}

#[test]
fn transport_fixes_unshifted_entries() {
    let pres = load("kx.quiver");
    let k = koszul_complex(&pres).unwrap();
    let t = dg_transport(&k).unwrap();
    assert_eq!(t.diffs, k.diffs);
}

#[test]
fn dual_of_a_single_unshifted_term() {
    let pres = load("kx.quiver");
    let c = parse_complex(&pres, "[terms]\nterm 0 = 0\n").unwrap();
    let d = dualize(&c).unwrap();
    assert_eq!(d.terms, c.terms);
    assert_eq!(d.start, 0);
}

#[test]
fn skew_resolution_signs() {
    for m in 2..=4 {
        let pres = load(&format!("skew{m}.quiver"));
        let quiver = &pres.quiver;
        let c = relation_complex(&pres).unwrap();
        let t = dg_transport(&c).unwrap();
        for (i, a) in quiver.arrow_ids().enumerate() {
            let x = Path::arrow(quiver, a);
            let e = Path::lazy(x.source());
            let mut plus = cyalg::sign_dg::TensorPoly::zero();
            plus.add_term(Q::one(), x.clone(), e.clone());
            plus.add_term(Q::one(), e.clone(), x.clone());
            assert_eq!(c.diffs[0][0][i], plus);
            let mut transported = cyalg::sign_dg::TensorPoly::zero();
            transported.add_term(-Q::one(), x.clone(), e.clone());
            transported.add_term(Q::one(), e.clone(), x.clone());
            assert_eq!(t.diffs[0][0][i], transported, "m = {m}");
        }
        // The dual is the same complex after negating the middle generators.
        let d = dualize(&t).unwrap();
        let neg: Vec<Vec<Vec<_>>> = t
            .diffs
            .iter()
            .map(|m| {
                m.iter()
                    .map(|r| r.iter().map(|e| e.scale(&-Q::one())).collect())
                    .collect()
            })
            .collect();
        assert_eq!(d.diffs, neg, "m = {m}");
        assert_eq!(
            d.terms
                .iter()
                .map(|t| t.iter().map(|g| g.shift).collect())
                .collect::<Vec<Vec<i64>>>(),
            vec![vec![0], vec![-1; m], vec![-2]]
        );
        assert_eq!(d.ranks(), t.ranks());
    }
}

#[test]
fn double_dual_is_the_identity_up_to_generator_signs() {
    for name in ["kxy.quiver", "kxyz.quiver", "kxy_23.quiver"] {
        let pres = load(name);
        let t = dg_transport(&koszul_complex(&pres).unwrap()).unwrap();
        // Rescaling each generator by (-1)^shift and negating every map.
        let mut expected = t.clone();
        for (k, d) in expected.diffs.iter_mut().enumerate() {
            for (i, row) in d.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    let parity = t.terms[k][i].shift + t.terms[k + 1][j].shift + 1;
                    *e = e.scale(&cyalg::linalg::sign_pow(parity));
                }
            }
        }
        same(&dualize(&dualize(&t).unwrap()).unwrap(), &expected);
    }
}

#[test]
fn text_round_trip() {
    let pres = load("kxyz.quiver");
    let t = dg_transport(&koszul_complex(&pres).unwrap()).unwrap();
    same(&parse_complex(&pres, &t.to_text()).unwrap(), &t);
}

#[test]
fn transport_preserves_cohomology() {
    let pres = load("kxy.quiver");
    let k = koszul_complex(&pres).unwrap();
    let t = dg_transport(&k).unwrap();
    let (a, b) = (
        cohomology(&k, (-4, 2), None).unwrap(),
        cohomology(&t, (-4, 2), None).unwrap(),
    );
    assert_eq!(a, b);
    // R in position 0 is the only cohomology of the resolution itself.
    for r in &a {
        if r.position == 0 {
            assert_eq!(r.total() as i64, 1 - r.degree.min(1));
        } else {
            assert_eq!(r.total(), 0);
        }
    }
}

#[test]
fn resolutions_are_exact() {
    for name in ["kx.quiver", "kxy.quiver", "kxyz.quiver", "kxy_23.quiver"] {
        let pres = load(name);
        exactness_probe(&koszul_complex(&pres).unwrap(), (-5, 0), None).unwrap();
    }
    for m in 2..=4 {
        let pres = load(&format!("skew{m}.quiver"));
        exactness_probe(&relation_complex(&pres).unwrap(), (-5, 0), None).unwrap();
    }
}

#[test]
fn three_relations_do_not_resolve_three_space() {
    let pres = load("kxyz.quiver");
    let err = exactness_probe(&relation_complex(&pres).unwrap(), (-4, 0), None).unwrap_err();
    assert!(
        matches!(
            err,
            SignDgError::NotAResolution {
                position: -2,
                degree: -3,
                dim: 1
            }
        ),
        "{err}"
    );
}

#[test]
fn potential_complex_of_three_space() {
    let pres = load("kxyz.quiver");
    let qv = &pres.quiver;
    let d = |s: &str| pres.parse_poly(s).unwrap();
    let derivs = vec![d("y*z - z*y"), d("z*x - x*z"), d("x*y - y*x")];
    let c = potential_complex(&pres, &derivs, -3).unwrap();
    assert_eq!(c.ranks(), vec![1, 3, 3, 1]);
    exactness_probe(&c, (-5, 0), None).unwrap();
    assert!(qv.num_arrows() == 3);
    let v = check_twisted_cy(
        &c,
        &TwistSpec::from_cy(&pres, Twist::identity(qv)).unwrap(),
        (-5, 0),
        None,
    )
    .unwrap();
    assert!(v.pass, "{:?}", v.first_mismatch);
}

fn verdict(name: &str, twist: Twist) -> cyalg::sign_dg::Verdict {
    let pres = load(name);
    let c = if name.starts_with("skew") {
        relation_complex(&pres)
    } else {
        koszul_complex(&pres)
    }
    .unwrap();
    let spec = TwistSpec::from_cy(&pres, twist).unwrap();
    check_twisted_cy(&c, &spec, default_window(&pres).unwrap(), None).unwrap()
}

#[test]
fn polynomial_in_one_variable_is_cy() {
    let pres = load("kx.quiver");
    let v = verdict("kx.quiver", Twist::identity(&pres.quiver));
    assert_eq!(v.total_shift, 2);
    assert!(v.pass, "{:?}", v.first_mismatch);
}

#[test]
fn plane_needs_the_sign_twist() {
    let pres = load("kxy.quiver");
    let ok = verdict("kxy.quiver", Twist::sigma(&pres.quiver));
    assert_eq!(ok.total_shift, 4);
    assert!(ok.pass, "{:?}", ok.first_mismatch);
    assert!(ok
        .ratios
        .iter()
        .all(|r| r.measured.as_deref() == Some("-1")));
    let bad = verdict("kxy.quiver", Twist::identity(&pres.quiver));
    assert!(bad.dimensions_match && bad.action_free);
    assert!(!bad.twist_matches && !bad.pass);
    assert!(bad.first_mismatch.unwrap().contains("twist"));
}

#[test]
fn odd_a_invariants_give_cy() {
    for name in ["kxyz.quiver", "kxy_23.quiver"] {
        let pres = load(name);
        let v = verdict(name, Twist::identity(&pres.quiver));
        assert!(v.pass, "{name}: {:?}", v.first_mismatch);
        assert!(!verdict(name, Twist::sigma(&pres.quiver)).pass, "{name}");
    }
}

#[test]
fn skew_algebras_are_cy() {
    for m in 2..=3 {
        let name = format!("skew{m}.quiver");
        let pres = load(&name);
        let v = verdict(&name, Twist::identity(&pres.quiver));
        assert_eq!(v.total_shift, 4);
        assert_eq!(v.window, (-6, 0));
        assert!(v.pass, "{name}: {:?}", v.first_mismatch);
        assert!(!verdict(&name, Twist::sigma(&pres.quiver)).pass);
    }
}

#[test]
fn wrong_position_is_reported() {
    let pres = load("kxy.quiver");
    let c = koszul_complex(&pres).unwrap();
    let spec = TwistSpec::new(Twist::sigma(&pres.quiver), 1, 3);
    let v = check_twisted_cy(&c, &spec, (-4, 0), None).unwrap();
    assert!(!v.dimensions_match && !v.pass);
    assert!(v.first_mismatch.is_some());
}

#[test]
fn window_must_reach_the_arrows() {
    let pres = load("kxy_23.quiver");
    let c = koszul_complex(&pres).unwrap();
    let spec = TwistSpec::from_cy(&pres, Twist::identity(&pres.quiver)).unwrap();
    let err = check_twisted_cy(&c, &spec, (-2, 0), None).unwrap_err();
    assert_eq!(err, SignDgError::WindowTooSmall { degrees: vec![-3] });
}

#[test]
fn koszul_rejects_noncommutative_rings() {
    assert!(matches!(
        koszul_complex(&load("skew2.quiver")),
        Err(SignDgError::NotCommutative(_))
    ));
}
