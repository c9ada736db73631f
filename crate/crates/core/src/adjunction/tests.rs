use rand::Rng;

use super::*;
use crate::completion::{is_complete, upper_bounds};
use crate::distributor::{
    co_inverse_image, copresheaf_hom, graph_cograph, yoneda_infomorphism, PresheafCategory,
};
use crate::enriched::{find_isomorphism, functor_adjoint_check};
use crate::fixtures::{antichain2, boolean, chain2, ctx1_over_two, lukasiewicz, two};
use crate::quantaloid::{find_dualizing_families, girard_structure};
use crate::random::{random_category, random_distributor, random_functor, random_weight, rng};
use crate::DEFAULT_CAP;

fn set(bits: &[usize]) -> Weight {
    Weight {
        ty: 0,
        w: bits.to_vec(),
    }
}

fn girard_two() -> GirardReport {
    let q = two();
    let d = crate::quantaloid::DualizingFamily(vec![q.hom(0, 0).bottom()]);
    girard_structure(&q, &d).unwrap()
}

#[test]
fn ctx1_isbell_transforms() {
    let phi = ctx1_over_two();
    assert_eq!(isbell_up(&phi, &set(&[1, 0])), set(&[1, 1]));
    assert_eq!(isbell_up(&phi, &set(&[0, 0])), set(&[1, 1]));
    assert_eq!(isbell_down(&phi, &set(&[0, 1])), set(&[1, 1]));
    assert_eq!(isbell_up(&phi, &set(&[1, 1])), set(&[0, 1]));
}

#[test]
fn ctx1_kan_transforms() {
    let phi = ctx1_over_two();
    assert_eq!(kan_star(&phi, &set(&[1, 0])), set(&[1, 0]));
    assert_eq!(kan_lower(&phi, &set(&[1, 0])), set(&[1, 0]));
    assert_eq!(kan_star(&phi, &set(&[0, 0])), set(&[0, 0]));
}

#[test]
fn ctx1_concept_counts() {
    let phi = ctx1_over_two();
    for algo in [EnumerationAlgorithm::Brute, EnumerationAlgorithm::Generated] {
        let m = concept_lattice(&phi, ConceptKind::Isbell, algo, DEFAULT_CAP).unwrap();
        let got: Vec<(Weight, Weight)> = m
            .concepts()
            .iter()
            .map(|c| (c.mu.clone(), c.lam.clone()))
            .collect();
        assert_eq!(
            got,
            vec![(set(&[1, 0]), set(&[1, 1])), (set(&[1, 1]), set(&[0, 1]))]
        );
        let k = concept_lattice(&phi, ConceptKind::Kan, algo, DEFAULT_CAP).unwrap();
        let got: Vec<(Weight, Weight)> = k
            .concepts()
            .iter()
            .map(|c| (c.mu.clone(), c.lam.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                (set(&[0, 0]), set(&[0, 0])),
                (set(&[1, 0]), set(&[1, 0])),
                (set(&[1, 1]), set(&[1, 1]))
            ]
        );
        assert!(m.codomain_homs_agree());
        assert!(k.codomain_homs_agree());
    }
}

#[test]
fn identity_distributor_gives_upper_bounds() {
    let q = lukasiewicz(3);
    let mut r = rng(1);
    for _ in 0..10 {
        let a = Arc::new(random_category(&q, 3, &mut r));
        let id = QDistributor::identity(Arc::clone(&a));
        let mu = random_weight(&a, Variance::Contra, r.gen_range(0..q.n()), &mut r);
        assert_eq!(isbell_up(&id, &mu), upper_bounds(&a, &mu));
    }
}

#[test]
fn isbell_and_kan_adjunctions_on_random_instances() {
    let q = lukasiewicz(3);
    let mut r = rng(2);
    for _ in 0..30 {
        let a = Arc::new(random_category(&q, 2, &mut r));
        let b = Arc::new(random_category(&q, 2, &mut r));
        let phi = random_distributor(&a, &b, &mut r);
        let ty = r.gen_range(0..q.n());
        let mu = random_weight(&a, Variance::Contra, ty, &mut r);
        let lam = random_weight(&b, Variance::Co, ty, &mut r);
        assert_eq!(
            copresheaf_hom(&b, &isbell_up(&phi, &mu), &lam),
            presheaf_hom(&a, &mu, &isbell_down(&phi, &lam))
        );
        let nu = random_weight(&b, Variance::Contra, ty, &mut r);
        assert_eq!(
            presheaf_hom(&a, &kan_star(&phi, &nu), &mu),
            presheaf_hom(&b, &nu, &kan_lower(&phi, &mu))
        );
        let kappa = random_weight(&a, Variance::Co, ty, &mut r);
        assert_eq!(
            copresheaf_hom(&a, &kan_lower_dag(&phi, &lam), &kappa),
            copresheaf_hom(&b, &lam, &kan_dag(&phi, &kappa))
        );
    }
}

#[test]
fn kan_transforms_of_graphs_are_image_functors() {
    let q = lukasiewicz(3);
    let mut r = rng(3);
    let mut seen = 0;
    while seen < 10 {
        let a = Arc::new(random_category(&q, 2, &mut r));
        let b = Arc::new(random_category(&q, 2, &mut r));
        let Some(f) = random_functor(&a, &b, &mut r) else {
            continue;
        };
        seen += 1;
        let (graph, cograph) = graph_cograph(&f);
        let ty = r.gen_range(0..q.n());
        let mu = random_weight(&a, Variance::Contra, ty, &mut r);
        let lam = random_weight(&b, Variance::Contra, ty, &mut r);
        assert_eq!(kan_star(&cograph, &mu), direct_image(&f, &mu));
        assert_eq!(kan_star(&graph, &lam), inverse_image(&f, &lam));
        let cmu = random_weight(&b, Variance::Co, ty, &mut r);
        let clam = random_weight(&a, Variance::Co, ty, &mut r);
        assert_eq!(kan_dag(&cograph, &cmu), co_inverse_image(&f, &cmu));
        assert_eq!(kan_dag(&graph, &clam), co_direct_image(&f, &clam));
    }
}

#[test]
fn brute_and_generated_agree_on_random_distributors() {
    for q in [two(), lukasiewicz(3), boolean(2)] {
        let mut r = rng(4);
        for _ in 0..15 {
            let a = Arc::new(random_category(&q, 2, &mut r));
            let b = Arc::new(random_category(&q, 2, &mut r));
            let phi = random_distributor(&a, &b, &mut r);
            for kind in [ConceptKind::Isbell, ConceptKind::Kan] {
                let brute =
                    concept_lattice(&phi, kind, EnumerationAlgorithm::Brute, DEFAULT_CAP).unwrap();
                let gen = concept_lattice(&phi, kind, EnumerationAlgorithm::Generated, DEFAULT_CAP)
                    .unwrap();
                assert_eq!(brute.concepts(), gen.concepts(), "{kind:?}");
            }
        }
    }
}

#[test]
fn concept_lattices_are_complete_and_skeletal() {
    let q = lukasiewicz(3);
    let mut r = rng(5);
    for _ in 0..5 {
        let a = Arc::new(random_category(&q, 2, &mut r));
        let b = Arc::new(random_category(&q, 2, &mut r));
        let phi = random_distributor(&a, &b, &mut r);
        for kind in [ConceptKind::Isbell, ConceptKind::Kan] {
            let m =
                concept_lattice(&phi, kind, EnumerationAlgorithm::Generated, DEFAULT_CAP).unwrap();
            assert!(m.category().is_skeletal());
            let rep = is_complete(m.category(), DEFAULT_CAP).unwrap();
            assert!(rep.complete && rep.is_consistent(), "{kind:?}");
            assert!(m.codomain_homs_agree());
        }
    }
}

#[test]
fn isbell_lattice_of_yoneda_graph_is_presheaf_category() {
    let q = lukasiewicz(3);
    let mut r = rng(6);
    for _ in 0..3 {
        let a = Arc::new(random_category(&q, 2, &mut r));
        let pa = PresheafCategory::build(Arc::clone(&a), Variance::Contra, DEFAULT_CAP).unwrap();
        let (graph, _) = graph_cograph(&pa.yoneda());
        let m = concept_lattice(
            &graph,
            ConceptKind::Isbell,
            EnumerationAlgorithm::Generated,
            DEFAULT_CAP,
        )
        .unwrap();
        assert_eq!(m.len(), pa.len());
        assert!(find_isomorphism(m.category(), pa.category()).is_some());
    }
}

#[test]
fn kan_lattice_of_fully_faithful_cograph_is_presheaf_category() {
    let q = lukasiewicz(3);
    let mut r = rng(7);
    for _ in 0..3 {
        let a = Arc::new(random_category(&q, 2, &mut r));
        let f = QFunctor::identity(Arc::clone(&a));
        let (_, cograph) = graph_cograph(&f);
        let k = concept_lattice(
            &cograph,
            ConceptKind::Kan,
            EnumerationAlgorithm::Generated,
            DEFAULT_CAP,
        )
        .unwrap();
        let pa = PresheafCategory::build(Arc::clone(&a), Variance::Contra, DEFAULT_CAP).unwrap();
        assert_eq!(k.len(), pa.len());
    }
}

#[test]
fn macneille_examples() {
    let (m, e) = macneille_completion(&Arc::new(chain2()));
    assert_eq!(m.len(), 2);
    assert!(e.validate().fully_faithful);
    assert!(find_isomorphism(m.category(), &chain2()).is_some());
    let (m, e) = macneille_completion(&Arc::new(antichain2()));
    assert_eq!(m.len(), 4);
    assert!(e.validate().fully_faithful);
    let (m, _) = macneille_completion(&Arc::new(QCategory::empty(two())));
    assert_eq!(m.len(), 1);
}

#[test]
fn macneille_is_idempotent() {
    let q = lukasiewicz(3);
    let mut r = rng(8);
    for _ in 0..5 {
        let a = Arc::new(random_category(&q, 2, &mut r));
        let (m, _) = macneille_completion(&a);
        let (mm, _) = macneille_completion(m.category());
        assert!(find_isomorphism(m.category(), mm.category()).is_some());
    }
}

#[test]
fn negation_over_two_is_complemented_transpose() {
    let g = girard_two();
    let phi = ctx1_over_two();
    let neg = negate_distributor(&phi, &g).unwrap();
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(neg.get(y, x), 1 - phi.get(x, y));
        }
    }
    assert!(neg.is_valid());
    assert_eq!(negate_distributor(&neg, &g).unwrap(), phi);
}

#[test]
fn negation_requires_matching_girard_structure() {
    let g = girard_two();
    let q = lukasiewicz(3);
    let a = Arc::new(QCategory::singleton(Arc::clone(&q), 0));
    let phi = QDistributor::identity(a);
    assert!(matches!(
        negate_distributor(&phi, &g),
        Err(Error::NotGirard)
    ));
}

#[test]
fn girard_duality_on_ctx1() {
    let g = girard_two();
    let rep = girard_duality_check(&ctx1_over_two(), &g, DEFAULT_CAP).unwrap();
    assert!(rep.holds());
    assert_eq!(rep.kan.len(), 3);
    assert_eq!(rep.isbell_of_negation.len(), 3);
}

#[test]
fn girard_duality_on_boolean_four() {
    let q = boolean(2);
    let d = find_dualizing_families(&q).remove(0);
    let g = girard_structure(&q, &d).unwrap();
    let mut r = rng(9);
    for _ in 0..10 {
        let a = Arc::new(random_category(&q, 2, &mut r));
        let b = Arc::new(random_category(&q, 2, &mut r));
        let phi = random_distributor(&a, &b, &mut r);
        let rep = girard_duality_check(&phi, &g, DEFAULT_CAP).unwrap();
        assert!(rep.holds());
    }
}

#[test]
fn identity_infomorphism_gives_identity_functors() {
    let phi = ctx1_over_two();
    for kind in [ConceptKind::Isbell, ConceptKind::Kan] {
        let img = concept_functor_image(&Infomorphism::identity(&phi), kind).unwrap();
        let n = img.source.len();
        assert_eq!(img.lower.map, (0..n).collect::<Vec<_>>());
        assert_eq!(img.upper.map, (0..n).collect::<Vec<_>>());
    }
}

#[test]
fn infomorphism_images_are_adjoint() {
    let q = lukasiewicz(3);
    let mut r = rng(10);
    for _ in 0..10 {
        for i in crate::random::random_infomorphism_chain(&q, 1, &mut r) {
            for kind in [ConceptKind::Isbell, ConceptKind::Kan] {
                let img = concept_functor_image(&i, kind).unwrap();
                assert!(img.lower.validate().is_valid());
                assert!(img.upper.validate().is_valid());
                assert!(
                    functor_adjoint_check(&img.lower, &img.upper).unwrap(),
                    "{kind:?}"
                );
            }
        }
    }
}

#[test]
fn yoneda_infomorphism_is_valid() {
    let q = two();
    let mut r = rng(11);
    let a = Arc::new(random_category(&q, 2, &mut r));
    let f = QFunctor::identity(Arc::clone(&a));
    let pa = PresheafCategory::build(Arc::clone(&a), Variance::Contra, DEFAULT_CAP).unwrap();
    assert!(yoneda_infomorphism(&f, &pa, &pa).unwrap().is_valid());
}

#[test]
fn density_examples() {
    let q = lukasiewicz(3);
    let mut r = rng(12);
    let a = Arc::new(random_category(&q, 2, &mut r));
    let pa = PresheafCategory::build(Arc::clone(&a), Variance::Contra, DEFAULT_CAP).unwrap();
    assert!(
        density_check(&pa.yoneda(), DensityDirection::Sup, DEFAULT_CAP)
            .unwrap()
            .dense
    );
    let pda = PresheafCategory::build(Arc::clone(&a), Variance::Co, DEFAULT_CAP).unwrap();
    assert!(
        density_check(&pda.yoneda(), DensityDirection::Inf, DEFAULT_CAP)
            .unwrap()
            .dense
    );

    let c = Arc::new(chain2());
    let point = Arc::new(QCategory::singleton(two(), 0));
    let bottom = QFunctor::new(Arc::clone(&point), Arc::clone(&c), vec![0]).unwrap();
    let rep = density_check(&bottom, DensityDirection::Sup, DEFAULT_CAP).unwrap();
    assert!(!rep.dense);
    assert_eq!(rep.missed, vec![1]);
}

#[test]
fn dense_factorization_on_ctx1() {
    let phi = ctx1_over_two();
    let d = dense_factorization(&phi, DEFAULT_CAP).unwrap();
    assert!(d.holds());
    let extents: Vec<Weight> = (0..2)
        .map(|a| d.lattice.concepts()[d.f.apply(a)].mu.clone())
        .collect();
    assert_eq!(extents, vec![set(&[1, 0]), set(&[1, 1])]);
    let intents: Vec<Weight> = (0..2)
        .map(|a| d.lattice.concepts()[d.f.apply(a)].lam.clone())
        .collect();
    assert_eq!(intents, vec![set(&[1, 1]), set(&[0, 1])]);
}

#[test]
fn dense_factorization_of_identity_is_macneille() {
    let a = Arc::new(antichain2());
    let d = dense_factorization(&QDistributor::identity(Arc::clone(&a)), DEFAULT_CAP).unwrap();
    assert!(d.holds());
    let (_, e) = macneille_completion(&a);
    assert_eq!(d.f.map, e.map);
}

#[test]
fn dense_factorization_on_random_fuzzy_contexts() {
    let q = crate::quantaloid::build_lukasiewicz_chain(3).unwrap();
    let mut r = rng(13);
    for _ in 0..5 {
        let ctx = crate::random::random_context(&q, 3, 3, &mut r);
        let lifted = ctx.lift().unwrap();
        assert!(dense_factorization(&lifted.phi, DEFAULT_CAP)
            .unwrap()
            .holds());
    }
}

#[test]
fn concept_lattice_with_evaluation_is_state_property_system() {
    let phi = ctx1_over_two();
    let m = concept_lattice(
        &phi,
        ConceptKind::Isbell,
        EnumerationAlgorithm::Generated,
        DEFAULT_CAP,
    )
    .unwrap();
    let zeta = QDistributor::from_fn(Arc::clone(&phi.dom), Arc::clone(m.category()), |x, c| {
        m.concepts()[c].mu.w[x]
    })
    .unwrap();
    assert!(state_property_system_check(&zeta, DEFAULT_CAP)
        .unwrap()
        .holds());
}

#[test]
fn coarsened_hom_breaks_state_property_system() {
    let q = two();
    let a = Arc::new(antichain2());
    let pa = PresheafCategory::build(Arc::clone(&a), Variance::Contra, DEFAULT_CAP).unwrap();
    let pcat = pa.category();
    let n = pcat.n();
    let coarse: Vec<usize> = (0..n * n)
        .map(|c| {
            if c / n == c % n {
                pcat.h(c / n, c % n)
            } else {
                q.hom(0, 0).bottom()
            }
        })
        .collect();
    let b = Arc::new(
        QCategory::new(
            Arc::clone(&q),
            pcat.labels().to_vec(),
            pcat.types().to_vec(),
            coarse,
        )
        .unwrap(),
    );
    let zeta =
        QDistributor::from_fn(Arc::clone(&a), Arc::clone(&b), |x, mu| pa.weight(mu).w[x]).unwrap();
    let rep = state_property_system_check(&zeta, DEFAULT_CAP).unwrap();
    assert!(!rep.holds());
}
