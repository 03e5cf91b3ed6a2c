use std::collections::BTreeSet;

use gelfand_core::gelfand::GelfandSet;
use gelfand_core::hecke::{act_word, canonical_basis, trace_at_one, ClassifiedBasis, Family, ModuleVector};
use gelfand_core::parabolic::{phi_map, KSet};
use gelfand_core::wgraph::{build, cells, graph_from_table, stats};
use gelfand_core::{CoxeterType, Generator, GroupType};
use proptest::prelude::*;

fn group(ty: CoxeterType, n: usize) -> GroupType {
    GroupType::new(ty, n).unwrap()
}

#[test]
fn iota_maps_cells_to_cells() {
    for g in [group(CoxeterType::BC, 3), group(CoxeterType::BC, 4), group(CoxeterType::D, 4)] {
        let iota = GelfandSet::new(g).iota_map().unwrap();
        let m: BTreeSet<BTreeSet<usize>> = cells(&build(g, Family::M))
            .into_iter()
            .map(|c| c.into_iter().map(|v| iota[v]).collect())
            .collect();
        let n: BTreeSet<BTreeSet<usize>> = cells(&build(g, Family::N))
            .into_iter()
            .map(|c| c.into_iter().collect())
            .collect();
        assert_eq!(m, n, "{g}");
    }
}

#[test]
fn n_stats_equal_m_stats_for_bc_and_d() {
    for g in [
        group(CoxeterType::BC, 2),
        group(CoxeterType::BC, 3),
        group(CoxeterType::BC, 4),
        group(CoxeterType::D, 3),
        group(CoxeterType::D, 4),
        group(CoxeterType::D, 5),
    ] {
        let (m, n) = (stats(&build(g, Family::M)), stats(&build(g, Family::N)));
        assert_eq!(
            (m.vertices, m.edges, &m.weights, m.wcc, m.cells, m.molecules),
            (n.vertices, n.edges, &n.weights, n.wcc, n.cells, n.molecules),
            "{g}"
        );
    }
}

#[test]
fn bidirected_edges_are_strict_moves() {
    for g in [group(CoxeterType::A, 5), group(CoxeterType::BC, 3), group(CoxeterType::D, 4)] {
        let basis = ClassifiedBasis::from_gelfand(&GelfandSet::new(g));
        for family in [Family::M, Family::N] {
            let graph = graph_from_table(family.into(), &basis, &canonical_basis(family, &basis));
            for u in 0..graph.len() {
                for v in 0..graph.len() {
                    if u == v {
                        continue;
                    }
                    let bidirected = graph.weight(u, v) != 0 && graph.weight(v, u) != 0;
                    let moved = (0..basis.generators().len()).any(|slot| {
                        basis.class(u, slot).is_strict() && basis.moved(u, slot) == v
                    });
                    let crossing = !graph.vertices[u].asc.is_subset(&graph.vertices[v].asc)
                        && !graph.vertices[v].asc.is_subset(&graph.vertices[u].asc);
                    assert_eq!(bidirected, moved && crossing, "{family} {g} {u} {v}");
                }
            }
        }
    }
}

#[test]
fn trace_is_a_class_function() {
    let g = group(CoxeterType::BC, 3);
    let basis = ClassifiedBasis::from_gelfand(&GelfandSet::new(g));
    for class in g.conjugacy_classes() {
        for family in [Family::M, Family::N] {
            let values: BTreeSet<i64> = class.iter().map(|w| trace_at_one(family, &basis, w).unwrap()).collect();
            assert_eq!(values.len(), 1);
        }
    }
    assert_eq!(trace_at_one(Family::M, &basis, &g.identity()).unwrap(), basis.len() as i64);
}

#[test]
fn tables_agree_under_phi() {
    for g in [group(CoxeterType::A, 5), group(CoxeterType::BC, 3), group(CoxeterType::D, 4)] {
        let set = GelfandSet::new(g);
        let kset = KSet::new(g);
        let map = phi_map(&set, &kset).unwrap();
        let basis = ClassifiedBasis::from_gelfand(&set);
        for family in [Family::M, Family::N] {
            let ours = canonical_basis(family, &basis);
            let theirs = canonical_basis(family, kset.basis());
            for z in 0..set.len() {
                assert_eq!(ours.column(z).len(), theirs.column(map[z]).len());
                for (y, p) in ours.column(z).iter() {
                    assert_eq!(*p, theirs.entry(map[y], map[z]), "{family} {g}");
                }
            }
        }
    }
}

fn gens_of(g: &GroupType) -> Vec<Generator> {
    g.generators()
}

proptest! {
    #[test]
    fn word_action_depends_only_on_the_element(picks in prop::collection::vec(0usize..4, 0..10), start in 0usize..38) {
        let g = group(CoxeterType::D, 4);
        let basis = ClassifiedBasis::from_gelfand(&GelfandSet::new(g));
        let gens = gens_of(&g);
        let word: Vec<Generator> = picks.iter().map(|&i| gens[i % gens.len()]).collect();
        let w = g.from_word(&word).unwrap();
        let reduced = w.reduced_word();
        prop_assume!(reduced.len() == word.len());
        let e = ModuleVector::unit(start % basis.len());
        prop_assert_eq!(act_word(Family::M, &basis, &word, &e), act_word(Family::M, &basis, &reduced, &e));
        prop_assert_eq!(act_word(Family::N, &basis, &word, &e), act_word(Family::N, &basis, &reduced, &e));
    }
}
