//! Worked examples with independently derived expected values.

use num_bigint::BigInt;
use num_rational::BigRational;
use reeslab::complex::alexander_dual;
use reeslab::constructions::{build_delta_chi, build_i_chi, build_l, squarefree_members, Colouring};
use reeslab::monomial::{Monomial, MonomialIdeal};
use reeslab::normality::{
    analytic_spread, closure_membership, closure_membership_oracle, integral_closure_power, is_normal_up_to,
    persistence_check, strong_persistence_check, DEFAULT_BOX_LIMIT,
};
use reeslab::report::example_i_chi_generators;
use reeslab::{is_vertex_decomposable, is_vertex_splittable, Graph, SimplicialComplex};

fn ideal(n: usize, gens: &[&[u64]]) -> MonomialIdeal {
    MonomialIdeal::with_default_vars(n, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
}

fn m(e: &[u64]) -> Monomial {
    Monomial::new(e.to_vec())
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn two_triangles() -> Graph {
    Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
}

fn masks_of(i: &MonomialIdeal) -> Vec<u64> {
    let mut v = i.support_masks();
    v.sort_unstable();
    v
}

#[test]
fn listed_squarefree_members_determine_the_coloured_ideal() {
    // the six listed squarefree members are exactly those of (x1x2, x2x3x4, x1x3x4)
    let i = ideal(4, &[&[1, 1, 0, 0], &[0, 1, 1, 1], &[1, 0, 1, 1]]);
    let listed = [0b0011u64, 0b0111, 0b1011, 0b1110, 0b1101, 0b1111];
    let mut want = listed.to_vec();
    want.sort_unstable();
    assert_eq!(squarefree_members(&i).unwrap(), want);
    let i_chi = build_i_chi(&i, &Colouring::singletons(4)).unwrap();
    assert_eq!(i_chi.gens(), example_i_chi_generators().as_slice());
    assert_eq!(i_chi.vars(), ["x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"]);
}

#[test]
fn coloured_ideal_of_the_stated_ideal_has_a_seventh_generator() {
    // x2x4 is itself a generator of (x1x2, x2x4, x1x3x4), so it contributes x2x4y1y3
    let i = ideal(4, &[&[1, 1, 0, 0], &[0, 1, 0, 1], &[1, 0, 1, 1]]);
    assert!(squarefree_members(&i).unwrap().contains(&0b1010));
    let i_chi = build_i_chi(&i, &Colouring::singletons(4)).unwrap();
    let mut expected = example_i_chi_generators();
    expected.push(m(&[0, 1, 0, 1, 1, 0, 1, 0]));
    expected.sort();
    assert_eq!(i_chi.gens(), expected.as_slice());
}

#[test]
fn coloured_complex_facets_complement_the_generators() {
    let i = ideal(4, &[&[1, 1, 0, 0], &[0, 1, 1, 1], &[1, 0, 1, 1]]);
    let delta = build_delta_chi(&i, &Colouring::singletons(4)).unwrap();
    assert_eq!(delta.facets().len(), 6);
    let mut facets = delta.facets().to_vec();
    facets.sort_unstable();
    let mut complements: Vec<u64> = example_i_chi_generators().iter().map(|g| 0xff & !g.support_mask()).collect();
    complements.sort_unstable();
    assert_eq!(facets, complements);
    assert!(facets.iter().all(|f| f.count_ones() == 4));

    let single = ideal(2, &[&[1, 1]]);
    let d = build_delta_chi(&single, &Colouring::singletons(2)).unwrap();
    assert_eq!(d.facets(), &[0b1100]);
}

#[test]
fn closure_examples() {
    let tri = two_triangles().edge_ideal();
    let d = closure_membership(&tri, 3, &m(&[1; 6])).unwrap();
    assert!(d.witness().unwrap().0.iter().all(|l| *l == half()));
    assert_eq!(closure_membership_oracle(&tri, 3, &m(&[1; 6]), 2).unwrap(), Some(2));

    let i = ideal(3, &[&[0, 1, 0], &[1, 0, 1]]);
    assert!(!closure_membership(&i, 2, &m(&[1, 1, 0])).unwrap().holds());

    let squares = ideal(2, &[&[2, 0], &[0, 2]]);
    assert_eq!(closure_membership_oracle(&squares, 1, &m(&[1, 1]), 2).unwrap(), Some(2));
    assert_eq!(
        integral_closure_power(&squares, 1, DEFAULT_BOX_LIMIT).unwrap(),
        ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])
    );
    assert_eq!(integral_closure_power(&i, 1, DEFAULT_BOX_LIMIT).unwrap(), i);
    let max = ideal(2, &[&[1, 0], &[0, 1]]);
    for k in 1..=3 {
        assert_eq!(integral_closure_power(&max, k, DEFAULT_BOX_LIMIT).unwrap(), max.power(k));
    }
}

#[test]
fn normality_examples() {
    let path_cover = Graph::path(3).cover_ideal();
    assert_eq!(path_cover, ideal(3, &[&[0, 1, 0], &[1, 0, 1]]));
    assert!(is_normal_up_to(&path_cover, 4, DEFAULT_BOX_LIMIT).unwrap().is_normal());

    let r = is_normal_up_to(&two_triangles().edge_ideal(), 3, DEFAULT_BOX_LIMIT).unwrap();
    let w = r.failure.unwrap();
    assert_eq!((w.k, w.monomial), (3, m(&[1; 6])));
}

#[test]
fn persistence_examples() {
    let i = ideal(3, &[&[0, 1, 0], &[1, 0, 1]]);
    assert!(persistence_check(&i, 3, DEFAULT_BOX_LIMIT).unwrap().holds());
    assert!(strong_persistence_check(&i, 2).unwrap().holds());
    let tri_cover = Graph::complete(3).cover_ideal();
    assert!(persistence_check(&tri_cover, 3, DEFAULT_BOX_LIMIT).unwrap().holds());
    assert!(strong_persistence_check(&ideal(1, &[&[1]]), 3).unwrap().holds());
    assert!(persistence_check(&ideal(3, &[&[1, 1, 1]]), 3, DEFAULT_BOX_LIMIT).unwrap().holds());
}

#[test]
fn spread_and_rank_examples() {
    let tri = Graph::complete(3);
    assert_eq!(analytic_spread(&tri.edge_ideal()).unwrap(), 3);
    assert_eq!(tri.profile().predicted_rank, Some(3));
    let path = Graph::path(3);
    assert_eq!(analytic_spread(&path.edge_ideal()).unwrap(), 2);
    assert_eq!(3 - analytic_spread(&path.edge_ideal()).unwrap(), 1);
    let edge_plus_point = Graph::new(3, &[(0, 1)]).unwrap();
    assert_eq!(edge_plus_point.profile().predicted_rank, Some(1));
    assert_eq!(edge_plus_point.incidence_rank(), 1);
    assert_eq!(analytic_spread(&ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(), 3);
}

#[test]
fn duality_examples() {
    let i = ideal(3, &[&[1, 0, 1]]);
    assert_eq!(alexander_dual(&i).unwrap(), ideal(3, &[&[1, 0, 0], &[0, 0, 1]]));
    let tri = Graph::complete(3).edge_ideal();
    assert_eq!(alexander_dual(&tri).unwrap(), tri);

    let c = SimplicialComplex::new(3, &[vec![0, 1], vec![1, 2]]).unwrap();
    assert!(is_vertex_decomposable(&c).holds());
    let two_edges = SimplicialComplex::new(4, &[vec![0, 1], vec![2, 3]]).unwrap();
    assert!(!is_vertex_decomposable(&two_edges).holds());
    assert!(!is_vertex_splittable(&ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]])).holds());
    assert!(is_vertex_splittable(&ideal(3, &[&[1, 0, 0], &[0, 0, 1]])).holds());
}

#[test]
fn l_construction_examples() {
    let l = build_l(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
    // variables x1_1, x1_2, x2_1, x2_2; standard monomials 1, x1, x2
    assert_eq!(l.vars(), ["x1_1", "x1_2", "x2_1", "x2_2"]);
    let mut want = vec![0b0101u64, 0b0110, 0b1001];
    want.sort_unstable();
    assert_eq!(masks_of(&l), want);
    assert_eq!(masks_of(&build_l(&ideal(2, &[&[1, 0], &[0, 1]])).unwrap()), vec![0b11]);
    assert!(build_l(&ideal(3, &[&[0, 1, 0], &[1, 0, 1]])).is_err());
}
