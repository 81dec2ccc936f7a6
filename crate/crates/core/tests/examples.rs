use stabgeom::catalog;
use stabgeom::clique::{find_cliques, CliqueMode};
use stabgeom::lines::{lines_from_matrix, Distance};
use stabgeom::oracle::{code_projector, component_projector, kl_detect, subspace_equal, ErrorSet};
use stabgeom::recipe::{run_recipe, RecipeConfig};
use stabgeom::search::{candidates_and_gamma, graph_to_generators, is_subspace_t, CodingSet};
use stabgeom::{Error, FpVector, PauliOperator, PrimeModulus, ProjLine, StabiliserGroup};

const F2: PrimeModulus = PrimeModulus::TWO;

fn e(n: usize, idx: &[usize]) -> FpVector {
    idx.iter().fold(FpVector::zeros(F2, n), |acc, &i| acc.add(&FpVector::unit(F2, n, i)))
}

#[test]
fn nine_cycle_generators_and_lines() {
    let s = graph_to_generators(&catalog::nine_cycle()).unwrap();
    assert_eq!(s.generators()[2], PauliOperator::from_letters("IZXZIIIII").unwrap());
    let x = lines_from_matrix(s.gmatrix()).unwrap();
    for i in 0..9 {
        let expect = ProjLine::through(&e(9, &[i]), &e(9, &[(i + 8) % 9, (i + 1) % 9])).unwrap();
        assert_eq!(x.lines()[i], expect);
    }
    assert!(x.validate_even_skew().unwrap());
    assert_eq!(x.min_dependent_set(9), Distance::Exact(3));
}

#[test]
fn pentagon_incident_and_free_points() {
    let x = lines_from_matrix(catalog::pentagon_group().gmatrix()).unwrap();
    assert_eq!(x.incident_points().len(), 15);
}

/// Every Γ edge gives a projection with `d(X_{u,v}) ≥ d`; every non-edge between candidates
/// gives a collapsed projection or a dependent set of fewer than `d` points.
fn check_edge_criterion(x: &stabgeom::QuantumLineSet, d: usize, restriction: Option<&stabgeom::ProjSubspace>) {
    let gamma = candidates_and_gamma(x, d, restriction).unwrap();
    let vs = gamma.vertices();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let proj = x.project_lines(&[vs[i].coords().clone(), vs[j].coords().clone()]);
            let good = match proj {
                Ok(y) => y.min_dependent_set(d - 1) == Distance::AtLeast(d),
                Err(Error::CollapsedImage { .. }) => false,
                Err(e) => panic!("unexpected {e}"),
            };
            assert_eq!(gamma.is_edge(i, j), good, "pair {} {}", vs[i], vs[j]);
        }
    }
}

#[test]
fn edge_criterion_pentagon() {
    let x = lines_from_matrix(catalog::pentagon_group().gmatrix()).unwrap();
    check_edge_criterion(&x, 2, None);
}

#[test]
fn edge_criterion_nine_cycle() {
    let s = graph_to_generators(&catalog::nine_cycle()).unwrap();
    let x = lines_from_matrix(s.gmatrix()).unwrap();
    check_edge_criterion(&x, 3, Some(&catalog::nine_cycle_restriction()));
}

#[test]
fn nine_cycle_frozen_counts() {
    // frozen from a full run
    let s = graph_to_generators(&catalog::nine_cycle()).unwrap();
    let x = lines_from_matrix(s.gmatrix()).unwrap();
    let gamma = candidates_and_gamma(&x, 3, Some(&catalog::nine_cycle_restriction())).unwrap();
    assert_eq!(gamma.vertex_count(), 39);
    assert_eq!(gamma.edge_count(), 450);
    let cliques = find_cliques(&gamma, CliqueMode::Exact, None).unwrap();
    assert_eq!(cliques.len(), 6);
    assert!(cliques.iter().all(|c| c.len() == 11 && gamma.is_clique(c)));
}

#[test]
fn cliques_are_maximal_in_both_modes() {
    let x = lines_from_matrix(catalog::pentagon_group().gmatrix()).unwrap();
    let gamma = candidates_and_gamma(&x, 2, None).unwrap();
    for mode in [CliqueMode::Exact, CliqueMode::Greedy] {
        for c in find_cliques(&gamma, mode, None).unwrap() {
            assert!(gamma.is_clique(&c));
            let extendable = (0..gamma.vertex_count()).any(|v| !c.contains(&v) && c.iter().all(|&u| gamma.is_edge(u, v)));
            assert!(!extendable);
        }
    }
}

#[test]
fn pentagon_clique_projection_is_a_line_set() {
    let x = lines_from_matrix(catalog::pentagon_group().gmatrix()).unwrap();
    let t = catalog::pentagon_coding_set();
    let nz: Vec<&FpVector> = t.nonzero().collect();
    let y = x.project_lines(&[nz[0].clone(), nz[1].clone()]).unwrap();
    assert_eq!(y.len(), 5);
    assert_eq!(y.ambient(), 3);
}

#[test]
fn recipe_is_deterministic() {
    let mut cfg = RecipeConfig::new(3, 0);
    cfg.restriction = Some(catalog::nine_cycle_restriction());
    let a = run_recipe(&catalog::nine_cycle(), &cfg).unwrap();
    let b = run_recipe(&catalog::nine_cycle(), &cfg).unwrap();
    assert_eq!(a.without_timing(), b.without_timing());
    assert_eq!(a.coding_set, b.coding_set);
    assert_eq!(a.notation(), "((9,12,3))");
    assert_eq!(a.dimension, a.t_size as u128);
}

#[test]
fn ternary_subspace_and_generators() {
    let s = catalog::ternary_group();
    assert_eq!((s.n(), s.k()), (11, 4));
    assert!(is_subspace_t(&catalog::ternary_coding_set()));
}

#[test]
fn pentagon_component_projectors() {
    let s = catalog::pentagon_group();
    let p0 = component_projector(&s, &FpVector::zeros(F2, 5)).unwrap();
    assert!((p0.trace().re - 1.0).abs() < 1e-12);
    let t = catalog::pentagon_coding_set();
    let nz: Vec<&FpVector> = t.nonzero().collect();
    let pt = component_projector(&s, nz[0]).unwrap();
    let pu = component_projector(&s, nz[1]).unwrap();
    assert!(pt.mul(&pu).unwrap().frobenius_norm() < 1e-12);
}

#[test]
fn single_generator_subspace_instance() {
    // a 5-qubit group with k = 1 and T = <e4>: Q(S, T) is the code of the first three generators
    let full = catalog::pentagon_group();
    let s = StabiliserGroup::new(F2, 5, full.generators()[..4].to_vec()).unwrap();
    let t = CodingSet::new(F2, 4, &[FpVector::unit(F2, 4, 3)]).unwrap();
    let lhs = code_projector(&s, &t).unwrap();
    let sub = StabiliserGroup::new(F2, 5, full.generators()[..3].to_vec()).unwrap();
    let rhs = component_projector(&sub, &FpVector::zeros(F2, 3)).unwrap();
    assert!(subspace_equal(&lhs, &rhs).unwrap());
    let ann = s.annihilator_subgroup(&[FpVector::unit(F2, 4, 3)]).unwrap();
    assert_eq!(ann.generators(), sub.generators());
}

#[test]
fn distance_three_recipe_result_passes_kl() {
    let r = run_recipe(&stabgeom::LabelledGraph::cycle(F2, 5), &RecipeConfig::new(3, 0)).unwrap();
    let s = StabiliserGroup::from_matrix(&r.gmatrix).unwrap();
    let pr = code_projector(&s, &r.coding_set).unwrap();
    let kl = kl_detect(&pr, &ErrorSet::up_to_weight(F2, 5, 2)).unwrap();
    assert!(kl.pass);
    assert_eq!(kl.dim, 2);
}
