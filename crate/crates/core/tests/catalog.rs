//! Named paths, free glues, dead ends and classification of `T^(4,10)` and
//! smaller instances.

use std::collections::BTreeSet;

use tamloop::construction::{generate_tileset, Catalog, Params, PathName};
use tamloop::explorer::{free_glues, is_dead_end, ExplorationBounds};
use tamloop::model::{Family, Glue, Pos, Side, Tile, TileAssemblySystem, TypeId};
use tamloop::render::dot_positions;
use tamloop::verifier::{
    classify_path, faults, predicted_free_glues, run_subject, verify_bounds, verify_free_glues,
    verify_positions, verify_theorem, verify_theorem_instance, Plan, Residual, Sampling, Subject,
};
use tamloop::Vector;

fn setup(k: usize, n: usize) -> (Params, TileAssemblySystem, Catalog) {
    let p = Params::new(k, n).unwrap();
    let sys = generate_tileset(&p).unwrap();
    let c = Catalog::new(&p).unwrap();
    (p, sys, c)
}

#[test]
fn seed_binds_first_green_tile() {
    let (_, sys, _) = setup(4, 10);
    let ts = sys.tileset();
    let s = Tile::new(Pos::ORIGIN, ts.id_of("s").unwrap());
    let g0 = ts.id_of("g0").unwrap();
    assert!(ts.interacts(&s, &Tile::new(Pos::new(1, 0), g0)));
    assert!(!ts.interacts(&s, &Tile::new(Pos::new(0, 1), g0)));
    assert!(!ts.interacts(&s, &Tile::new(Pos::new(2, 0), g0)));
}

#[test]
fn green_and_loop_are_producible() {
    let (_, sys, c) = setup(4, 10);
    assert!(sys.path_producible(c.green()));
    assert_eq!(c.green().len(), 12);
    assert!(sys.path_producible(c.composite(1, 1)));
    for i in 1..=4 {
        assert!(sys.path_producible(c.composite(i, i)));
        assert!(sys.path_producible(c.loop_path(i)));
    }
    let moved: tamloop::Path = std::iter::once(Tile::new(Pos::new(2, 0), c.green().tiles()[0].ty))
        .chain(c.green().tiles()[1..].iter().copied())
        .collect();
    assert!(!sys.path_producible(&moved));
}

#[test]
fn a44_geometry_and_loop_width() {
    let (_, _, c) = setup(4, 10);
    let a = c.composite(4, 4);
    assert_eq!(a.width(), 19);
    let (lo, hi) = a.bounding_box().unwrap();
    assert_eq!((lo.y, hi.y), (0, 67));
    assert_eq!(c.loop_path(4).width(), 49);
    let (_, _, c) = setup(2, 3);
    assert_eq!(c.loop_path(2).width(), 8);
}

#[test]
fn translation_vectors() {
    let (_, _, c) = setup(4, 10);
    assert_eq!(c.u(4, 4), Vector::new(10, 26));
    assert_eq!(c.u(4, 3), Vector::new(10, 52));
    assert_eq!(c.u(4, 2), Vector::new(10, 62));
    let (_, _, c) = setup(2, 3);
    assert_eq!(c.u(2, 2), Vector::new(3, 4));
}

fn rec(x: i32, y: i32, side: Side, f: Family, i: u32) -> (Pos, Side, Glue) {
    (Pos::new(x, y), side, Glue::indexed(f, i))
}

#[test]
fn free_glues_of_a44() {
    let (p, sys, c) = setup(4, 10);
    let got: BTreeSet<(Pos, Side, Glue)> = free_glues(c.composite(4, 4), &sys)
        .into_iter()
        .map(|r| (r.pos, r.side, r.glue))
        .collect();
    let want = BTreeSet::from([
        rec(9, 3, Side::East, Family::Blue, 0),
        rec(9, 9, Side::East, Family::Blue, 0),
        rec(9, 25, Side::East, Family::Blue, 0),
        rec(10, 62, Side::East, Family::Green, 0),
        rec(10, 52, Side::East, Family::Green, 0),
        rec(10, 26, Side::East, Family::Green, 0),
    ]);
    assert_eq!(got, want);
    let formula: BTreeSet<(Pos, Side, Glue)> = predicted_free_glues(&p, 4)
        .into_iter()
        .map(|r| (r.pos, r.side, r.glue))
        .collect();
    assert_eq!(formula, want);
}

#[test]
fn black_dots_of_a44() {
    let (_, sys, c) = setup(4, 10);
    let asm = sys.assembly_of_path(c.composite(4, 4)).unwrap();
    let dots: BTreeSet<(i32, i32)> = dot_positions(&asm, sys.tileset())
        .into_iter()
        .map(|p| (p.x, p.y))
        .collect();
    let fig = BTreeSet::from([(9, 3), (9, 9), (9, 25), (9, 67), (10, 62), (10, 52), (10, 26)]);
    assert_eq!(dots, fig);
    let asm = sys.assembly_of_path(c.loop_path(4)).unwrap();
    let dots: BTreeSet<(i32, i32)> = dot_positions(&asm, sys.tileset())
        .into_iter()
        .map(|p| (p.x, p.y))
        .collect();
    assert!(dots.is_superset(&fig));
}

#[test]
fn single_tile_free_glues() {
    use tamloop::model::{Assembly, TileSet, TileType};
    let g = |s: &str| Some(Glue::named(s).unwrap());
    let ts = TileSet::new(vec![
        TileType::new("s", None, g("x"), None, None),
        TileType::new("t", g("x"), g("x"), g("x"), g("x")),
    ])
    .unwrap();
    let seed = Assembly::seed([Tile::new(Pos::ORIGIN, TypeId(0))]).unwrap();
    let sys = TileAssemblySystem::new(ts, seed).unwrap();
    let path: tamloop::Path = [Tile::new(Pos::new(1, 0), TypeId(1))].into_iter().collect();
    let free = free_glues(&path, &sys);
    assert_eq!(free.len(), 3);
    assert!(free.iter().all(|r| r.side != Side::West));
}

#[test]
fn a11_last_tile_is_blocked() {
    for (k, n) in [(4, 10), (2, 3)] {
        let (p, sys, c) = setup(k, n);
        let a = c.composite(1, 1);
        let last = *a.last().unwrap();
        assert_eq!(last.pos, Pos::new(p.ni(), 2));
        let free = free_glues(a, &sys);
        assert!(free.iter().all(|r| r.pos != last.pos));
        assert!(is_dead_end(a, &sys));
    }
}

#[test]
fn dead_end_table() {
    let (_, sys, c) = setup(4, 10);
    assert!(is_dead_end(c.dead(1), &sys));
    assert!(is_dead_end(c.dead(3), &sys));
    assert!(!is_dead_end(c.dead(4), &sys));
    assert_eq!(c.dead(4), c.composite(4, 4));
    assert_eq!(c.dead(1), c.composite(1, 1));
    for i in 2..=4 {
        for j in 2..=i {
            assert_eq!(is_dead_end(c.double_dead(i, j), &sys), j > 2, "DD({i},{j})");
        }
    }
    for i in 1..4 {
        let last = c.dead(i).last().unwrap().pos;
        assert_eq!(last, Pos::new(10, 2));
    }
}

#[test]
fn dead_two_top_row() {
    let (p, _, c) = setup(3, 4);
    let (_, hi) = c.dead(2).bounding_box().unwrap();
    assert_eq!(hi.y, p.h(2) - 1);
    assert_eq!(hi.y, 9);
}

#[test]
fn classification_examples() {
    let (_, _, c) = setup(4, 10);
    let p = c.composite(4, 3).concat(&c.dead(2).translate(c.u(4, 3)));
    let cl = classify_path(&p, &c).unwrap();
    assert_eq!(cl.hops, vec![(4, 3)]);
    assert_eq!(cl.residual, Residual::PrefixOfDead(2));

    let gy = c.green_orange();
    assert_eq!(classify_path(&gy, &c).unwrap().residual, Residual::PrefixOfGreenOrange);
    for len in 1..gy.len() {
        let cl = classify_path(&gy.prefix(len), &c).unwrap();
        assert_eq!(cl.hops, vec![]);
    }

    let l = classify_path(c.loop_path(4), &c).unwrap();
    assert_eq!(l.hops, vec![(4, 4), (3, 3), (2, 2)]);
    assert_eq!(l.residual, Residual::CompleteLoop);

    let dd = classify_path(c.double_dead(4, 3), &c).unwrap();
    assert_eq!(dd.residual, Residual::PrefixOfDoubleDead(4, 3));
    assert!(dd.complete);
}

#[test]
fn every_prefix_of_every_maximal_path_classifies() {
    let s = Subject::generate(&Params::new(3, 3).unwrap()).unwrap();
    let e = s.enumerate().unwrap();
    for path in &e.paths {
        for len in 1..=path.len() {
            let pre = path.prefix(len);
            assert!(classify_path(&pre, &s.catalog).is_ok(), "len {len}");
            assert!(s.system.path_producible(&pre));
        }
    }
}

#[test]
fn hop_levels_strictly_decrease() {
    let s = Subject::generate(&Params::new(4, 10).unwrap()).unwrap();
    for path in s.enumerate().unwrap().paths {
        let cl = classify_path(&path, &s.catalog).unwrap();
        for w in cl.hops.windows(2) {
            assert!(w[1].0 < w[0].0);
            assert!(w[1].0 < w[0].1);
        }
    }
}

#[test]
fn path_name_lookup() {
    let (_, _, c) = setup(3, 3);
    for name in ["G", "Y:2", "B:3", "P:2,3", "A:3,2", "D:1", "DD:3,3", "L:3"] {
        let n: PathName = name.parse().unwrap();
        assert!(c.get(n).is_some(), "{name}");
        assert_eq!(n.to_string(), name);
    }
    assert!(c.get("L:4".parse().unwrap()).is_none());
    assert!(c.get("DD:2,3".parse().unwrap()).is_none());
}

#[test]
fn position_check_passes_and_catches_shift() {
    for (k, n) in [(2, 2), (4, 10)] {
        let s = Subject::generate(&Params::new(k, n).unwrap()).unwrap();
        assert!(verify_positions(&s).passed());
    }
    let p = Params::new(4, 10).unwrap();
    let s = faults::shift_orange(&p, 2, Vector::new(1, 0)).unwrap();
    let r = verify_positions(&s);
    assert!(!r.passed());
    assert!(r.witnesses.iter().any(|w| w.starts_with("Y:2@(10,2)")), "{r}");
}

#[test]
fn free_glue_check_dual_computation() {
    let s = Subject::generate(&Params::new(3, 3).unwrap()).unwrap();
    let got = free_glues(s.catalog.composite(2, 2), &s.system);
    assert_eq!(got, predicted_free_glues(&s.params, 2));
    assert!(verify_free_glues(&s).passed());
}

#[test]
fn bounds_hold_with_loose_box() {
    for (k, n) in [(2, 3), (3, 4)] {
        let s = Subject::generate(&Params::new(k, n).unwrap()).unwrap();
        let loose = ExplorationBounds::for_params(&s.params).expanded(6);
        let e = tamloop::explorer::enumerate_paths(&s.system, &loose).unwrap();
        assert!(verify_bounds(&s, &e).passed());
    }
}

#[test]
fn every_check_fails_on_some_fault() {
    let sampling = Sampling {
        samples: 3,
        first_seed: 0,
    };
    let p = Params::new(3, 3).unwrap();
    let red = Subject::with_system(&p, faults::remove_red_east_glue(&p).unwrap()).unwrap();
    let shifted = faults::shift_orange(&p, 2, Vector::new(1, 0)).unwrap();
    let mut failed: BTreeSet<String> = BTreeSet::new();
    for s in [&red, &shifted] {
        for r in run_subject(s, &Plan::all(sampling)).unwrap() {
            if !r.passed() {
                assert!(!r.witnesses.is_empty());
                failed.insert(r.check.clone());
            }
        }
    }
    let pt = Params::new(2, 20).unwrap();
    let red_t = Subject::with_system(&pt, faults::remove_red_east_glue(&pt).unwrap()).unwrap();
    let r = verify_theorem_instance(&red_t);
    assert!(!r.passed());
    failed.insert(r.check);
    let all: BTreeSet<String> = tamloop::verifier::CHECK_NAMES.iter().map(|s| s.to_string()).collect();
    assert_eq!(failed, all);
}

#[test]
fn theorem_rows() {
    let rows = verify_theorem(2..=6).unwrap();
    assert!(rows.iter().all(|r| r.passed()));
    let k4 = rows.iter().find(|r| r.k == 4).unwrap();
    assert_eq!(k4.n, 136);
    assert_eq!(k4.witnesses, vec!["t=517 width=679 bound=588.06"]);
}
