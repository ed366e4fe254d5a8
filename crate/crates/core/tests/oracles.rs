//! Cross-checks against naive reimplementations that only look at raw glue
//! tables (no binder index, no dense grid).

use std::collections::{BTreeMap, BTreeSet, HashSet};

use tamloop::construction::{generate_tileset, tile_types, Catalog, Params};
use tamloop::demo::{block_system, pump_system};
use tamloop::explorer::{
    enumerate_assemblies, enumerate_paths, find_conflict, sample_terminal, ExplorationBounds,
};
use tamloop::model::{conflict_between, Assembly, Path, Pos, Side, Tile, TileAssemblySystem};
use tamloop::verifier::catalog_closure;

type Cell = (i32, i32);

/// Raw view of a system: glue strings per side, seed cells.
struct Naive {
    names: Vec<String>,
    glues: Vec<[Option<String>; 4]>,
    seed: BTreeMap<Cell, usize>,
}

const DIRS: [(Side, i32, i32); 4] = [
    (Side::North, 0, 1),
    (Side::East, 1, 0),
    (Side::South, 0, -1),
    (Side::West, -1, 0),
];

fn opposite(i: usize) -> usize {
    (i + 2) % 4
}

impl Naive {
    fn of(sys: &TileAssemblySystem) -> Self {
        let ts = sys.tileset();
        let names = ts.types().iter().map(|t| t.name().to_string()).collect();
        let glues = ts
            .types()
            .iter()
            .map(|t| DIRS.map(|(s, _, _)| t.glue(s).map(|g| g.to_string())))
            .collect();
        let seed = sys
            .seed()
            .tiles()
            .map(|t| ((t.pos.x, t.pos.y), t.ty.index()))
            .collect();
        Naive { names, glues, seed }
    }

    /// Does type `b` at `q` bind to type `a` at `p`?
    fn binds(&self, a: usize, p: Cell, b: usize, q: Cell) -> bool {
        DIRS.iter().enumerate().any(|(d, &(_, dx, dy))| {
            (p.0 + dx, p.1 + dy) == q
                && self.glues[a][d].is_some()
                && self.glues[a][d] == self.glues[b][opposite(d)]
        })
    }

    fn sites(&self, asm: &BTreeMap<Cell, usize>) -> BTreeSet<(Cell, usize)> {
        let mut out = BTreeSet::new();
        for (&p, &a) in asm {
            for &(_, dx, dy) in &DIRS {
                let q = (p.0 + dx, p.1 + dy);
                if asm.contains_key(&q) {
                    continue;
                }
                for b in 0..self.names.len() {
                    if self.binds(a, p, b, q) {
                        out.insert((q, b));
                    }
                }
            }
        }
        out
    }

    fn assemblies(&self, max_tiles: usize) -> HashSet<Vec<(Cell, String)>> {
        fn go(
            me: &Naive,
            asm: &mut BTreeMap<Cell, usize>,
            max: usize,
            seen: &mut HashSet<Vec<(Cell, String)>>,
        ) {
            let key: Vec<(Cell, String)> =
                asm.iter().map(|(&p, &t)| (p, me.names[t].clone())).collect();
            if !seen.insert(key) || asm.len() >= max {
                return;
            }
            for (q, b) in me.sites(asm) {
                asm.insert(q, b);
                go(me, asm, max, seen);
                asm.remove(&q);
            }
        }
        let mut seen = HashSet::new();
        let mut asm = self.seed.clone();
        if asm.len() <= max_tiles {
            go(self, &mut asm, max_tiles, &mut seen);
        }
        seen
    }

    /// Producible paths with at most `max_len` tiles, as `(cell, type)` lists.
    fn paths(&self, max_len: usize, cells: &dyn Fn(Cell) -> bool) -> Vec<Vec<(Cell, usize)>> {
        fn go(
            me: &Naive,
            path: &mut Vec<(Cell, usize)>,
            max: usize,
            cells: &dyn Fn(Cell) -> bool,
            out: &mut Vec<Vec<(Cell, usize)>>,
        ) {
            out.push(path.clone());
            if path.len() >= max {
                return;
            }
            let &(p, a) = path.last().expect("nonempty");
            for &(_, dx, dy) in &DIRS {
                let q = (p.0 + dx, p.1 + dy);
                if !cells(q) || me.seed.contains_key(&q) || path.iter().any(|&(c, _)| c == q) {
                    continue;
                }
                for b in 0..me.names.len() {
                    if me.binds(a, p, b, q) {
                        path.push((q, b));
                        go(me, path, max, cells, out);
                        path.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        let starts: BTreeSet<(Cell, usize)> = self
            .sites(&self.seed)
            .into_iter()
            .filter(|&(q, _)| cells(q))
            .collect();
        for s in starts {
            let mut path = vec![s];
            go(self, &mut path, max_len, cells, &mut out);
        }
        out
    }
}

fn to_cells(p: &Path) -> Vec<(Cell, usize)> {
    p.tiles()
        .iter()
        .map(|t| ((t.pos.x, t.pos.y), t.ty.index()))
        .collect()
}

fn system(k: usize, n: usize) -> (Params, TileAssemblySystem) {
    let p = Params::new(k, n).unwrap();
    let sys = generate_tileset(&p).unwrap();
    (p, sys)
}

#[test]
fn attachable_sites_match_brute_force_scan() {
    let (_, sys) = system(2, 2);
    let naive = Naive::of(&sys);
    let name = |t: tamloop::TypeId| sys.tileset().name(t).to_string();

    let sites = sys.attachable_sites(sys.seed());
    let listed: Vec<(Pos, String)> = sites.iter().map(|&(p, t)| (p, name(t))).collect();
    assert_eq!(listed, vec![(Pos::new(1, 0), "g0".to_string())]);
    let brute: BTreeSet<(Cell, usize)> = naive.sites(&naive.seed);
    let ours: BTreeSet<(Cell, usize)> = sites.iter().map(|&(p, t)| ((p.x, p.y), t.index())).collect();
    assert_eq!(ours, brute);

    let g0 = sys.tileset().id_of("g0").unwrap();
    let a = sys.attach(sys.seed(), Pos::new(1, 0), g0).unwrap();
    let listed: Vec<(Pos, String)> = sys
        .attachable_sites(&a)
        .iter()
        .map(|&(p, t)| (p, name(t)))
        .collect();
    assert_eq!(listed, vec![(Pos::new(2, 0), "g1".to_string())]);
}

#[test]
fn sites_match_brute_force_along_random_growth() {
    for (k, n) in [(2, 3), (3, 3)] {
        let (p, sys) = system(k, n);
        let naive = Naive::of(&sys);
        let bounds = ExplorationBounds::for_params(&p);
        for seed in 0..5 {
            let term = sample_terminal(&sys, seed, &bounds).unwrap();
            assert!(sys.is_terminal(&term));
            let map: BTreeMap<Cell, usize> = term
                .tiles()
                .map(|t| ((t.pos.x, t.pos.y), t.ty.index()))
                .collect();
            assert!(naive.sites(&map).is_empty());
        }
    }
}

#[test]
fn tileset_size_matches_independent_count() {
    fn h(i: usize) -> i64 {
        let (mut a, mut b) = (2i64, 4i64);
        if i == 0 {
            return a;
        }
        for _ in 1..i {
            (a, b) = (b, 3 * b - a);
        }
        b
    }
    for k in 1..=6 {
        for n in [2usize, 3, 10] {
            let p = Params::new(k, n).unwrap();
            let types = tile_types(&p);
            let count = |c: char| {
                types
                    .iter()
                    .filter(|t| t.name().starts_with(c) && t.name()[1..].parse::<u32>().is_ok())
                    .count() as i64
            };
            // one seed, n+2 green, h_k - 2 orange, 2n blue, h_k - h_{k-1} - 2 red
            assert_eq!(count('g'), n as i64 + 2);
            assert_eq!(count('o'), h(k) - 2);
            assert_eq!(count('b'), 2 * n as i64);
            assert_eq!(count('r'), h(k) - h(k - 1) - 2);
            assert_eq!(types.len() as i64, 1 + count('g') + count('o') + count('b') + count('r'));
            assert_eq!(types.len() as i64, 3 * n as i64 + 2 * h(k) - h(k - 1) - 1);
        }
    }
}

#[test]
fn green_assembly_has_thirteen_tiles() {
    let (p, sys) = system(4, 10);
    let c = Catalog::new(&p).unwrap();
    let a = sys.assembly_of_path(c.green()).unwrap();
    assert_eq!(a.len(), 13);
    assert_eq!(sys.assembly_of_path(&Path::default()).unwrap(), *sys.seed());
}

#[test]
fn inner_loop_is_translated_a11() {
    let (p, _) = system(2, 3);
    let c = Catalog::new(&p).unwrap();
    assert_eq!(c.u(2, 2), tamloop::Vector::new(3, 4));
    let l2 = c.loop_path(2);
    let a22 = c.composite(2, 2);
    let inner = c.composite(1, 1).translate(c.u(2, 2));
    assert_eq!(l2.suffix_from(a22.len()), inner);
    let xs: BTreeSet<i32> = l2.tiles().iter().map(|t| t.pos.x).collect();
    assert_eq!(xs.len(), 8);
}

#[test]
fn dead_two_does_not_conflict_with_loop() {
    let (p, _) = system(4, 10);
    let c = Catalog::new(&p).unwrap();
    let d2 = c.dead(2);
    let l4 = c.loop_path(4);
    // position scan, not conflict_between
    let l4_cells: BTreeMap<Pos, _> = l4.tiles().iter().map(|t| (t.pos, t.ty)).collect();
    for t in d2.tiles() {
        if let Some(&ty) = l4_cells.get(&t.pos) {
            assert_eq!(ty, t.ty, "conflict at {}", t.pos);
        }
    }
    assert_eq!(conflict_between(d2, l4), None);
}

/// Every prefix of the naive path list, restricted to maximal ones in the box.
fn naive_maximal(naive: &Naive, max_len: usize, cells: &dyn Fn(Cell) -> bool) -> BTreeSet<Vec<(Cell, usize)>> {
    let all = naive.paths(max_len, cells);
    let set: BTreeSet<Vec<(Cell, usize)>> = all.iter().cloned().collect();
    let mut max = BTreeSet::new();
    for p in &all {
        let extended = set.iter().any(|q| q.len() == p.len() + 1 && q.starts_with(p));
        if !extended {
            max.insert(p.clone());
        }
    }
    max
}

#[test]
fn enumeration_matches_naive_path_search() {
    for (k, n) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
        let (p, sys) = system(k, n);
        let bounds = ExplorationBounds::for_params(&p);
        let ours: BTreeSet<Vec<(Cell, usize)>> = enumerate_paths(&sys, &bounds)
            .unwrap()
            .paths
            .iter()
            .map(to_cells)
            .collect();
        let (lo, hi) = p.region();
        let inside = move |c: Cell| lo.x <= c.0 && c.0 <= hi.x && lo.y <= c.1 && c.1 <= hi.y;
        let naive = naive_maximal(&Naive::of(&sys), 10_000, &inside);
        assert_eq!(ours, naive, "k={k} n={n}");
    }
}

#[test]
fn enumeration_equals_catalog_closure() {
    for (k, n) in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 10)] {
        let p = Params::new(k, n).unwrap();
        let sys = generate_tileset(&p).unwrap();
        let c = Catalog::new(&p).unwrap();
        let e = enumerate_paths(&sys, &ExplorationBounds::for_params(&p).expanded(3)).unwrap();
        let found: BTreeSet<Path> = e.paths.into_iter().collect();
        assert_eq!(found, catalog_closure(&c), "k={k} n={n}");
    }
}

#[test]
fn block_demo_enumeration_matches_naive() {
    let sys = block_system();
    let bounds = ExplorationBounds::new(-3..=8, -3..=4, 96, 100_000).unwrap();
    let ours: BTreeSet<Vec<(Cell, usize)>> = enumerate_paths(&sys, &bounds)
        .unwrap()
        .paths
        .iter()
        .map(to_cells)
        .collect();
    let inside = |c: Cell| (-3..=8).contains(&c.0) && (-3..=4).contains(&c.1);
    assert_eq!(ours, naive_maximal(&Naive::of(&sys), 96, &inside));
}

fn canonical(sys: &TileAssemblySystem, a: &Assembly) -> Vec<(Cell, String)> {
    let mut v: Vec<(Cell, String)> = a
        .tiles()
        .map(|t| ((t.pos.x, t.pos.y), sys.tileset().name(t.ty).to_string()))
        .collect();
    v.sort();
    v
}

#[test]
fn assembly_enumeration_matches_naive_dfs() {
    let cases: Vec<(TileAssemblySystem, usize)> = vec![
        (system(2, 2).1, 6),
        (system(2, 3).1, 9),
        (block_system(), 12),
        (pump_system(), 10),
    ];
    for (sys, max) in cases {
        let ours: HashSet<Vec<(Cell, String)>> = enumerate_assemblies(&sys, max, 1_000_000)
            .unwrap()
            .iter()
            .map(|a| canonical(&sys, a))
            .collect();
        let naive = Naive::of(&sys).assemblies(max);
        assert_eq!(ours, naive);
    }
}

#[test]
fn single_path_system_has_one_assembly_per_size() {
    let (_, sys) = system(2, 2);
    let all = enumerate_assemblies(&sys, 6, 1000).unwrap();
    // no branching before the orange column, so one assembly per size
    assert_eq!(all.len(), 6);
    let naive = Naive::of(&sys);
    let starts = naive.paths(5, &|_| true);
    assert_eq!(starts.len() + 1, all.len());
    assert_eq!(enumerate_assemblies(&sys, 1, 10).unwrap(), vec![sys.seed().clone()]);
}

#[test]
fn path_and_assembly_oracles_agree_on_placements() {
    for (sys, budget) in [(block_system(), 12), (system(3, 3).1, 14)] {
        let seed_len = sys.seed().len();
        let from_assemblies: BTreeSet<(Cell, String)> = enumerate_assemblies(&sys, budget, 1_000_000)
            .unwrap()
            .iter()
            .flat_map(|a| canonical(&sys, a))
            .filter(|(c, _)| !sys.seed().contains(Pos::new(c.0, c.1)))
            .collect();
        let naive = Naive::of(&sys);
        let from_paths: BTreeSet<(Cell, String)> = naive
            .paths(budget - seed_len, &|_| true)
            .iter()
            .flatten()
            .map(|&(c, t)| (c, naive.names[t].clone()))
            .collect();
        assert_eq!(from_assemblies, from_paths);
    }
}

#[test]
fn block_demo_has_conflicting_assemblies() {
    let sys = block_system();
    let all = enumerate_assemblies(&sys, 12, 1_000_000).unwrap();
    let w = find_conflict(&all).expect("conflict");
    assert_ne!(w.first.get(w.position), w.second.get(w.position));
    // the cell where the repeated segment runs into the loop
    let at = Pos::new(4, 1);
    let ts = sys.tileset();
    let types: BTreeSet<&str> = all.iter().filter_map(|a| a.get(at)).map(|t| ts.name(t)).collect();
    assert_eq!(types, BTreeSet::from(["g4", "g9"]));
}

#[test]
fn pump_demo_grows_until_step_cap() {
    let sys = pump_system();
    let bounds = ExplorationBounds::new(-1..=400, -400..=2, 300, 10).unwrap();
    let err = enumerate_paths(&sys, &bounds).unwrap_err();
    match err {
        tamloop::explorer::ExploreError::StepCapExceeded { cap, witness } => {
            assert_eq!(cap, 300);
            assert!(sys.path_producible(&witness));
            // periodic: each tile after the first hook repeats 5 tiles later, shifted (3,-2)
            let t = witness.tiles();
            for i in 2..t.len() - 5 {
                assert_eq!(t[i + 5].ty, t[i].ty);
                assert_eq!(t[i + 5].pos - t[i].pos, tamloop::Vector::new(3, -2));
            }
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn unmatched_seed_has_no_paths() {
    use tamloop::model::{Glue, TileSet, TileType};
    let g = |s: &str| Some(Glue::named(s).unwrap());
    let ts = TileSet::new(vec![
        TileType::new("s", None, g("x"), None, None),
        TileType::new("t", None, None, None, g("y")),
    ])
    .unwrap();
    let seed = Assembly::seed([Tile::new(Pos::ORIGIN, tamloop::TypeId(0))]).unwrap();
    let sys = TileAssemblySystem::new(ts, seed).unwrap();
    let bounds = ExplorationBounds::new(-2..=2, -2..=2, 25, 10).unwrap();
    assert!(enumerate_paths(&sys, &bounds).unwrap().paths.is_empty());
    assert!(sys.is_terminal(sys.seed()));
}
