use slelab_core::lattice::*;

#[test]
fn loop_erasure_is_idempotent_and_simple() {
    for seed in 0..50 {
        let walk = sample_srw(2000, seed);
        let once = loop_erase(&walk);
        assert!(once.is_simple());
        assert_eq!(loop_erase(&once), once);
        assert_eq!(once.first(), walk.first());
        assert_eq!(once.last(), walk.last());
    }
}

#[test]
fn wilson_trees_are_spanning_and_acyclic() {
    let graph = RegionGraph::grid(12, 9).unwrap();
    for seed in 0..50 {
        let tree = wilson_ust(&graph, &[0], seed).unwrap();
        tree.validate().unwrap();
        assert_eq!(tree.edges().len(), graph.len() - 1);
    }
}

#[test]
fn peano_curves_fill_the_doubled_grid() {
    let graph = RegionGraph::grid(6, 5).unwrap();
    for seed in 0..20 {
        let curve = ust_peano_curve(&wilson_ust(&graph, &[0], seed).unwrap()).unwrap();
        assert!(curve.is_simple());
        assert_eq!(curve.len() + 1, 4 * graph.len());
        assert!(curve.validate().is_ok());
    }
}

#[test]
fn exploration_agrees_with_cluster_crossing() {
    let white = [RhombusSide::Left];
    let black = [RhombusSide::Bottom, RhombusSide::Right, RhombusSide::Top];
    for seed in 0..200 {
        let coloring = percolation_sample(Region::Rhombus { side: 15 }, seed).unwrap();
        let e = exploration_path(&coloring, Corner::BottomLeft, &white, &black).unwrap();
        assert_eq!(e.touches_black(RhombusSide::Right), cluster_crossing(&coloring, "left", "right").unwrap());
        assert!(e.path.validate().is_ok());
    }
}

#[test]
fn samplers_are_deterministic() {
    assert_eq!(sample_srw(500, 3), sample_srw(500, 3));
    assert_eq!(lerw_sample(20, 3).unwrap(), lerw_sample(20, 3).unwrap());
    let g = RegionGraph::grid(5, 5).unwrap();
    assert_eq!(wilson_ust(&g, &[0], 9).unwrap(), wilson_ust(&g, &[0], 9).unwrap());
    let r = Region::Triangle { side: 20 };
    assert_eq!(percolation_sample(r, 1).unwrap(), percolation_sample(r, 1).unwrap());
}

#[test]
fn text_round_trips() {
    let lerw = lerw_sample(30, 11).unwrap();
    assert_eq!(parse_path(&write_path(&lerw)).unwrap(), lerw);
    let c = percolation_sample(Region::Rhombus { side: 12 }, 2).unwrap();
    assert_eq!(parse_coloring(&write_coloring(&c)).unwrap(), c);
}
