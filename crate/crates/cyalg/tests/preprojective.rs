mod common;

use cyalg::abc::gabriel_quiver_of_b;
use cyalg::findim::{is_iwanaga_gorenstein, radical_layers};
use cyalg::linalg::SparseVec;
use cyalg::preprojective::{
    compare_qhat, corpi_b, default_cap, ext_bimodule, preprojective_presentation,
    qhat_presentation, PreprojError, StarProducts,
};
use cyalg::quiver_algebra::{GradedModel, Path, Quiver};

use common::{load, oracle};

fn quiver(file: &str) -> Quiver {
    load(file).quiver
}

#[test]
fn single_vertex_is_the_field() {
    let q = Quiver::new(vec!["0".into()], vec![]).unwrap();
    let pi = preprojective_presentation(&q).unwrap();
    assert!(pi.relations.is_empty());
    let data = ext_bimodule(&q, 4).unwrap();
    assert_eq!(data.algebra.dim(), 1);
    assert_eq!(data.bimodule.dim(), 0);
}

#[test]
fn cyclic_quiver_rejected() {
    let q = Quiver::from_spec(&["0", "1"], &[("a", "0", "1", 0), ("b", "1", "0", 0)]).unwrap();
    assert_eq!(
        preprojective_presentation(&q).unwrap_err(),
        PreprojError::Cyclic
    );
}

#[test]
fn a2_star_degrees() {
    let q = quiver("a2.quiver");
    let pi = preprojective_presentation(&q).unwrap();
    let m = GradedModel::stable(&pi, 6, -2, 0).unwrap();
    assert_eq!(m.total_dim(0), 3);
    assert_eq!(m.total_dim(-1), 1);
    assert_eq!(m.total_dim(-2), 0);
    let data = ext_bimodule(&q, default_cap(&q)).unwrap();
    assert_eq!(data.bimodule.dim(), 1);
}

#[test]
fn star_degree_pieces_match_brute_force() {
    for file in ["a2.quiver", "kronecker.quiver", "three_vertex.quiver"] {
        let q = quiver(file);
        let pi = preprojective_presentation(&q).unwrap();
        let cap = default_cap(&q);
        let m = GradedModel::stable(&pi, cap, -1, 0).unwrap();
        for d in [0, -1] {
            for s in pi.quiver.vertices() {
                for t in pi.quiver.vertices() {
                    let want = oracle::graded_dimension(&pi, d, s, t, cap as usize);
                    assert_eq!(m.dim(d, s, t), want, "{file} degree {d} {s:?}->{t:?}");
                }
            }
        }
    }
}

#[test]
fn kronecker_ext_bimodule() {
    let q = quiver("kronecker.quiver");
    let data = ext_bimodule(&q, default_cap(&q)).unwrap();
    assert_eq!(data.algebra.dim(), 4);
    // Preprojectives of dimension 5 and 7 follow the projectives of dimension 1 and 3.
    assert_eq!(data.bimodule.dim(), 12);
    data.bimodule.check(&data.algebra).unwrap();
}

/// `Σ_a (a u(a*) - u(a*) a) = 0` with `u(a*)` the star arrow itself.
#[test]
fn mesh_identity_in_bimodule() {
    for file in ["a2.quiver", "kronecker.quiver", "three_vertex.quiver"] {
        let q = quiver(file);
        let data = ext_bimodule(&q, default_cap(&q)).unwrap();
        let pi = data.model.quiver().clone();
        let m = q.num_arrows() as u32;
        let mut total = SparseVec::new();
        for a in q.arrow_ids() {
            let xa = data
                .a_elements()
                .iter()
                .position(|e| e.path == Path::arrow(&pi, a))
                .unwrap();
            let star = cyalg::quiver_algebra::ArrowId(a.0 + m);
            let xu = data
                .u_elements()
                .iter()
                .position(|e| e.path == Path::arrow(&pi, star))
                .unwrap();
            let l = data
                .bimodule
                .left_act(&SparseVec::unit(xa), &SparseVec::unit(xu));
            let r = data
                .bimodule
                .right_act(&SparseVec::unit(xu), &SparseVec::unit(xa));
            total = total.add(&l).sub(&r);
        }
        assert!(total.is_zero(), "{file}");
    }
}

#[test]
fn star_arrows_span_top_of_u() {
    for file in ["kronecker.quiver", "three_vertex.quiver"] {
        let q = quiver(file);
        let c = corpi_b(&q, 1, default_cap(&q)).unwrap();
        let g = gabriel_quiver_of_b(c.algebra()).unwrap();
        let mut stars: Vec<String> = g
            .quiver
            .arrows()
            .iter()
            .filter(|a| a.name.ends_with('\''))
            .map(|a| a.name.clone())
            .collect();
        stars.sort();
        let mut want: Vec<String> = q.arrows().iter().map(|a| format!("{}'", a.name)).collect();
        want.sort();
        assert_eq!(stars, want, "{file}");
    }
}

#[test]
fn qhat_arrow_count() {
    for file in ["kronecker.quiver", "three_vertex.quiver"] {
        let q = quiver(file);
        let h = qhat_presentation(&q, 3, StarProducts::ThroughArrowsAndVertices).unwrap();
        assert_eq!(
            h.presentation.quiver.num_arrows(),
            q.num_arrows() * 3 + q.num_vertices() * 2 + q.num_arrows()
        );
    }
}

#[test]
fn qhat_presents_block_algebra() {
    for file in ["kronecker.quiver", "three_vertex.quiver"] {
        let q = quiver(file);
        for n in [1, 2] {
            let c = corpi_b(&q, n, default_cap(&q)).unwrap();
            let h = qhat_presentation(&q, n, StarProducts::ThroughArrowsAndVertices).unwrap();
            let cmp = compare_qhat(&h, &c, 6).unwrap();
            assert!(
                cmp.tables_match(),
                "{file} n={n}\n{:?}\n{:?}",
                cmp.qhat_table,
                cmp.block_table
            );
            assert!(cmp.ideals.agree(), "{file} n={n}: {:?}", cmp.ideals);
        }
    }
}

#[test]
fn literal_star_relations_leave_extra_paths() {
    let q = quiver("three_vertex.quiver");
    let c = corpi_b(&q, 1, default_cap(&q)).unwrap();
    let h = qhat_presentation(&q, 1, StarProducts::ThroughArrows).unwrap();
    let cmp = compare_qhat(&h, &c, 6).unwrap();
    assert!(!cmp.tables_match());
    // The Kronecker quiver has no composable pair of stars.
    let k = quiver("kronecker.quiver");
    let ck = corpi_b(&k, 1, default_cap(&k)).unwrap();
    let hk = qhat_presentation(&k, 1, StarProducts::ThroughArrows).unwrap();
    assert!(compare_qhat(&hk, &ck, 6).unwrap().holds());
}

#[test]
fn block_algebras_are_gorenstein() {
    for file in ["kronecker.quiver", "three_vertex.quiver"] {
        let q = quiver(file);
        for n in [1, 2, 3] {
            let c = corpi_b(&q, n, default_cap(&q)).unwrap();
            c.algebra().check_associative().unwrap();
            let ig = is_iwanaga_gorenstein(c.algebra(), 1, 6).unwrap();
            assert!(ig.holds, "{file} n={n}: {ig:?}");
        }
    }
}

#[test]
fn kronecker_block_compares_to_skew_plane() {
    let q = quiver("kronecker.quiver");
    let c = corpi_b(&q, 1, default_cap(&q)).unwrap();
    let skew = load("skew2.quiver");
    let data = cyalg::abc::AbcData::new(&skew, 2, cyalg::abc::default_cap(2)).unwrap();
    let b = data.trivial_extension();
    assert_eq!(c.algebra().dim(), 16);
    assert_eq!(b.dim(), 12);
    let gc = gabriel_quiver_of_b(c.algebra()).unwrap();
    let gb = gabriel_quiver_of_b(&b).unwrap();
    assert_eq!(gc.quiver.num_vertices(), gb.quiver.num_vertices());
    assert_eq!(gc.quiver.num_arrows(), 4);
    assert_eq!(gb.quiver.num_arrows(), 3);
    assert_ne!(
        radical_layers(c.algebra()).unwrap(),
        radical_layers(&b).unwrap()
    );
}
