mod common;

use std::collections::BTreeMap;

use common::load;
use cyalg::ar_shadow::{
    cartan_matrix, coxeter_step, knit_component, knit_labeled, path_algebra, verify_root, ArError,
    Component, DimVec, Label,
};
use cyalg::linalg::IntMatrix;
use cyalg::quiver_algebra::Quiver;

fn corpus_path_algebra(name: &str) -> cyalg::abc::FdAlgebra {
    path_algebra(&load(name).quiver).unwrap()
}

/// Arrows between labels as `(i, j) -> multiplicity` for `R(-i) -> R(-j)`.
fn label_arrows(c: &Component) -> BTreeMap<(i64, i64), usize> {
    c.arrows
        .iter()
        .map(|&(s, t, m)| {
            (
                (c.vertices[s].twist.unwrap(), c.vertices[t].twist.unwrap()),
                m,
            )
        })
        .collect()
}

#[test]
fn cartan_of_a2() {
    let c = cartan_matrix(&corpus_path_algebra("a2.quiver")).unwrap();
    assert_eq!(c, IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]));
}

#[test]
fn cartan_of_kronecker() {
    let c = cartan_matrix(&corpus_path_algebra("kronecker.quiver")).unwrap();
    assert_eq!(c, IntMatrix::from_rows(&[vec![1, 0], vec![2, 1]]));
}

#[test]
fn cartan_of_disjoint_vertices() {
    let q = Quiver::from_spec(&["1", "2", "3"], &[] as &[(&str, &str, &str, i64)]).unwrap();
    assert_eq!(
        cartan_matrix(&path_algebra(&q).unwrap()).unwrap(),
        IntMatrix::identity(3)
    );
}

#[test]
fn cartan_needs_a_hereditary_algebra() {
    let err = cartan_matrix(&cyalg::abc::dual_numbers()).unwrap_err();
    assert!(matches!(err, ArError::NotHereditary(_)));
}

#[test]
fn kronecker_coxeter_gives_preprojective_dimensions() {
    let c = cartan_matrix(&corpus_path_algebra("kronecker.quiver")).unwrap();
    let cx = coxeter_step(&c).unwrap();
    assert_eq!(cx.phi.mul(&cx.phi_inv), IntMatrix::identity(2));
    // Classical preprojectives (n, n+1): P_2 = (0,1), P_1 = (1,2), then (2,3), (3,4), ...
    let mut p2 = DimVec(c.col(1));
    let mut p1 = DimVec(c.col(0));
    assert_eq!(
        (p2.clone(), p1.clone()),
        (DimVec(vec![0, 1]), DimVec(vec![1, 2]))
    );
    for n in 1..=2 {
        p2 = DimVec::apply(&cx.phi_inv, &p2);
        p1 = DimVec::apply(&cx.phi_inv, &p1);
        assert_eq!(p2, DimVec(vec![2 * n, 2 * n + 1]));
        assert_eq!(p1, DimVec(vec![2 * n + 1, 2 * n + 2]));
    }
}

#[test]
fn a2_component_is_finite() {
    let c = knit_component(&corpus_path_algebra("a2.quiver"), 4).unwrap();
    assert!(c.closed);
    assert_eq!(c.vertices.len(), 3);
    let mut dims: Vec<DimVec> = c.vertices.iter().map(|v| v.dim.clone()).collect();
    dims.sort();
    assert_eq!(
        dims,
        vec![DimVec(vec![0, 1]), DimVec(vec![1, 0]), DimVec(vec![1, 1])]
    );
    assert!(c.mesh_additive());
}

#[test]
fn kronecker_band_moves_one_place_right() {
    let c = knit_labeled(&load("kxy.quiver"), 2, 6).unwrap();
    assert!(!c.closed);
    assert!(c.mesh_additive());
    let twists: Vec<i64> = c.vertices.iter().map(|v| v.twist.unwrap()).collect();
    let mut sorted = twists.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (0..14).collect::<Vec<_>>());
    // Only double arrows R(-i) -> R(-i-1): the zig-zag band.
    let expected: BTreeMap<(i64, i64), usize> = (0..13).map(|i| ((i, i + 1), 2)).collect();
    assert_eq!(label_arrows(&c), expected);
    assert_eq!(c.vertices[c.by_twist(0)[0]].label, "R");
    assert_eq!(c.vertices[c.by_twist(3)[0]].label, "R(-3)");
}

#[test]
fn weights_two_three_move_one_place_down() {
    let c = knit_labeled(&load("kxy_23.quiver"), 5, 4).unwrap();
    assert!(c.mesh_additive());
    let max = c.vertices.iter().map(|v| v.twist.unwrap()).max().unwrap();
    assert_eq!(max, 24);
    // Arrows R(-i) -> R(-i-2) and R(-i) -> R(-i-3), each single.
    let expected: BTreeMap<(i64, i64), usize> = (0..=max)
        .flat_map(|i| [((i, i + 2), 1), ((i, i + 3), 1)])
        .filter(|((_, j), _)| *j <= max)
        .collect();
    assert_eq!(label_arrows(&c), expected);
}

#[test]
fn label_level_root() {
    for a in 1..6 {
        for i in -3..8 {
            let l = Label::new(i, 1);
            let fa = (0..a).fold(l, |x, _| x.f());
            assert_eq!(fa, Label::new(i - a as i64, 1));
            assert_eq!(fa, l.nu_d(a));
        }
    }
    assert_eq!(Label::new(2, 0).to_string(), "R(-2)");
    assert_eq!(Label::new(-1, 1).to_string(), "R(1)[1]");
}

#[test]
fn root_for_the_plane() {
    let r = verify_root(&load("kxy.quiver"), 2, 1, 20).unwrap();
    assert_eq!(r.checks.len(), 20);
    assert!(r.coherent && r.label_level);
    assert_eq!(r.knit_agrees, Some(true));
    assert!(r.pass, "{:?}", r.checks.iter().find(|c| !c.ok));
    // dim R(-i) = (dim R_-i, dim R_{1-i}) = (i+1, i).
    for (i, d) in r.orbit.dims.iter().enumerate() {
        let i = i as i64;
        assert_eq!(d, &DimVec(vec![i + 1, i]));
    }
}

#[test]
fn root_for_weights_two_three() {
    let r = verify_root(&load("kxy_23.quiver"), 5, 1, 20).unwrap();
    assert!(r.pass, "{:?}", r.checks.iter().find(|c| !c.ok));
    assert_eq!(r.knit_agrees, Some(true));
}

#[test]
fn root_for_three_space_on_classes() {
    let r = verify_root(&load("kxyz.quiver"), 3, 2, 12).unwrap();
    assert!(r.pass, "{:?}", r.checks.iter().find(|c| !c.ok));
    assert_eq!(r.knit_agrees, None);
    assert_eq!(r.orbit.dims[3], DimVec(vec![10, 6, 3]));
}

#[test]
fn root_detects_the_wrong_dimension() {
    let r = verify_root(&load("kxy.quiver"), 2, 2, 5).unwrap();
    assert!(!r.pass);
    assert!(r.checks.iter().all(|c| !c.ok));
}

#[test]
fn root_needs_hereditary_a_when_d_is_one() {
    let err = verify_root(&load("kxyz.quiver"), 3, 1, 5).unwrap_err();
    assert!(matches!(err, ArError::NotHereditary(_)));
}
