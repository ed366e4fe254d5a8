use std::collections::BTreeSet;

use proptest::prelude::*;

use tamloop::construction::{generate_tileset, Catalog, Params, PathName};
use tamloop::explorer::{
    enumerate_paths, enumerate_paths_parallel, sample_terminal, ExplorationBounds,
};
use tamloop::format::{parse_tileset, serialize};
use tamloop::model::{conflict_between, Assembly, Path, Pos, Tile, TileAssemblySystem, TypeId};
use tamloop::render::{render_ascii, render_path_svg, RenderOptions};
use tamloop::Vector;

fn small_params() -> impl Strategy<Value = Params> {
    prop_oneof![
        Just((1usize, 2usize)),
        Just((2, 2)),
        Just((2, 3)),
        Just((3, 3)),
        Just((3, 4))
    ]
    .prop_map(|(k, n)| Params::new(k, n).unwrap())
}

fn named_path(c: &Catalog, pick: usize) -> Path {
    let k = c.params().k();
    let mut names = vec![PathName::Green];
    for i in 1..=k {
        names.push(PathName::Composite(i, i));
        names.push(PathName::Dead(i));
        names.push(PathName::Loop(i));
        for j in 2..=i {
            names.push(PathName::DoubleDead(i, j));
        }
    }
    c.get(names[pick % names.len()]).unwrap()
}

fn connected(a: &Assembly) -> bool {
    Assembly::from_parts(a.map().clone(), a.seed_positions().clone()).is_ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interacts_is_symmetric(
        a in 0u32..24, b in 0u32..24,
        x in -2i32..3, y in -2i32..3, dx in -1i32..2, dy in -1i32..2,
    ) {
        let sys = generate_tileset(&Params::new(2, 3).unwrap()).unwrap();
        let ts = sys.tileset();
        let n = ts.len() as u32;
        let p = Tile::new(Pos::new(x, y), TypeId(a % n));
        let q = Tile::new(Pos::new(x + dx, y + dy), TypeId(b % n));
        prop_assert_eq!(ts.interacts(&p, &q), ts.interacts(&q, &p));
    }

    #[test]
    fn translation_preserves_shape(p in small_params(), pick in 0usize..64, vx in -50i32..50, vy in -50i32..50) {
        let sys = generate_tileset(&p).unwrap();
        let c = Catalog::new(&p).unwrap();
        let path = named_path(&c, pick);
        let v = Vector::new(vx, vy);
        let moved = path.translate(v);
        prop_assert!(moved.validate(sys.tileset()).is_ok());
        prop_assert_eq!(moved.width(), path.width());
        prop_assert_eq!(moved.height(), path.height());
        prop_assert_eq!(moved.translate(-v), path.clone());
        prop_assert_eq!(path.translate(Vector::ZERO), path);
    }

    #[test]
    fn attach_grows_by_one_and_stays_connected(p in small_params(), choices in prop::collection::vec(0usize..16, 1..60)) {
        let sys = generate_tileset(&p).unwrap();
        let mut a = sys.seed().clone();
        for pick in choices {
            let sites: Vec<_> = sys.attachable_sites(&a).into_iter().collect();
            if sites.is_empty() {
                prop_assert!(sys.is_terminal(&a));
                break;
            }
            let (pos, ty) = sites[pick % sites.len()];
            let b = sys.attach(&a, pos, ty).unwrap();
            prop_assert_eq!(b.len(), a.len() + 1);
            prop_assert!(connected(&b));
            prop_assert!(a.is_subassembly_of(&b));
            prop_assert!(sys.attach(&b, pos, ty).is_err());
            a = b;
        }
    }

    #[test]
    fn prefixes_of_enumerated_paths_are_producible(p in small_params(), pick in 0usize..32, cut in 1usize..400) {
        let sys = generate_tileset(&p).unwrap();
        let e = enumerate_paths(&sys, &ExplorationBounds::for_params(&p)).unwrap();
        let path = &e.paths[pick % e.paths.len()];
        let pre = path.prefix(cut.min(path.len()));
        prop_assert!(sys.path_producible(&pre));
    }

    #[test]
    fn sampler_is_deterministic_and_terminal(p in small_params(), seed in any::<u64>()) {
        let sys = generate_tileset(&p).unwrap();
        let bounds = ExplorationBounds::for_params(&p);
        let a = sample_terminal(&sys, seed, &bounds).unwrap();
        let b = sample_terminal(&sys, seed, &bounds).unwrap();
        prop_assert_eq!(&a, &b);
        let open: Vec<_> = sys
            .attachable_sites(&a)
            .into_iter()
            .filter(|&(q, _)| bounds.contains(q))
            .collect();
        prop_assert!(open.is_empty());
        let c = Catalog::new(&p).unwrap();
        let l = sys.assembly_of_path(c.loop_path(p.k())).unwrap();
        prop_assert!(l.is_subassembly_of(&a));
    }

    #[test]
    fn growth_never_leaves_the_region(p in small_params(), margin in 1i32..6, seed in any::<u64>()) {
        let sys = generate_tileset(&p).unwrap();
        let loose = ExplorationBounds::for_params(&p).expanded(margin);
        let (lo, hi) = p.region();
        let inside = |q: Pos| lo.x <= q.x && q.x <= hi.x && lo.y <= q.y && q.y <= hi.y;
        let e = enumerate_paths(&sys, &loose).unwrap();
        prop_assert!(e.paths.iter().all(|path| path.positions().all(inside)));
        let a = sample_terminal(&sys, seed, &loose).unwrap();
        prop_assert!(a.positions().all(inside));
    }

    #[test]
    fn conflict_is_symmetric(p in small_params(), a in 0usize..64, b in 0usize..64, dx in -3i32..4) {
        let c = Catalog::new(&p).unwrap();
        let x = named_path(&c, a);
        let y = named_path(&c, b).translate(Vector::new(dx, 0));
        prop_assert_eq!(conflict_between(&x, &y), conflict_between(&y, &x));
        prop_assert_eq!(conflict_between(&x, &x), None);
    }

    #[test]
    fn tileset_file_round_trips(k in 1usize..=6, n in 2usize..12) {
        let sys = generate_tileset(&Params::new(k, n).unwrap()).unwrap();
        let text = serialize(&sys);
        let back = parse_tileset(&text).unwrap();
        prop_assert_eq!(&back, &sys);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn rendering_is_pure(p in small_params(), pick in 0usize..64, cell in 4u32..20) {
        let sys = generate_tileset(&p).unwrap();
        let c = Catalog::new(&p).unwrap();
        let path = named_path(&c, pick);
        let mut opts = RenderOptions::default().with_cell_size(cell).unwrap();
        opts.show_dots = true;
        opts.show_glue_ticks = true;
        opts.show_path_trace = true;
        let a = render_path_svg(&path, &sys, &opts);
        prop_assert_eq!(&a, &render_path_svg(&path, &sys, &opts));
        prop_assert_eq!(a.matches("<rect").count(), path.len() + 1);
        let asm = sys.assembly_of_path(&path).unwrap();
        let art = render_ascii(&asm, sys.tileset());
        let letters = art.chars().filter(|ch| !matches!(ch, '.' | '\n')).count();
        prop_assert_eq!(letters, asm.len());
        prop_assert!(art.lines().all(|l| !l.ends_with(' ')));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn parallel_enumeration_matches_sequential(p in small_params(), threads in 1usize..5) {
        let sys = generate_tileset(&p).unwrap();
        let bounds = ExplorationBounds::for_params(&p);
        let seq = enumerate_paths(&sys, &bounds).unwrap().paths;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let par = pool.install(|| enumerate_paths_parallel(&sys, &bounds)).unwrap().paths;
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn every_assembly_tile_lies_on_some_path(seed in any::<u64>()) {
        // at temperature 1 each tile of a producible assembly is reachable by a path
        let p = Params::new(3, 3).unwrap();
        let sys = generate_tileset(&p).unwrap();
        let a = sample_terminal(&sys, seed, &ExplorationBounds::for_params(&p)).unwrap();
        let e = enumerate_paths(&sys, &ExplorationBounds::for_params(&p)).unwrap();
        let on_paths: BTreeSet<Tile> = e.paths.iter().flat_map(|q| q.tiles().iter().copied()).collect();
        for t in a.tiles().filter(|t| !a.is_seed(t.pos)) {
            prop_assert!(on_paths.contains(&t));
        }
    }
}

fn send_sync<T: Send + Sync>() {}

#[test]
fn values_are_shareable_across_threads() {
    send_sync::<TileAssemblySystem>();
    send_sync::<Catalog>();
    send_sync::<Assembly>();
    send_sync::<Path>();
}
