//! Exhaustive path enumeration, seeded random growth and brute-force oracles.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::construction::Params;
use crate::model::{
    conflict_between, Assembly, Glue, Path, Pos, Side, Tile, TileAssemblySystem, TypeId, Vector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExploreError {
    #[error("step cap exceeded ({cap} attachments)")]
    StepCapExceeded { cap: usize, witness: Path },
    #[error("path cap exceeded ({cap} paths)")]
    PathCapExceeded { cap: usize },
    #[error("assembly cap exceeded ({cap} assemblies)")]
    AssemblyCapExceeded { cap: usize },
    #[error("seed position {0} outside exploration bounds")]
    SeedOutsideBounds(Pos),
    #[error("invalid bounds: {0}")]
    InvalidBounds(&'static str),
}

/// Finite box and caps for exploration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorationBounds {
    x: RangeInclusive<i32>,
    y: RangeInclusive<i32>,
    step_cap: usize,
    path_cap: usize,
}

impl ExplorationBounds {
    pub const DEFAULT_PATH_CAP: usize = 1_000_000;

    pub fn new(
        x: RangeInclusive<i32>,
        y: RangeInclusive<i32>,
        step_cap: usize,
        path_cap: usize,
    ) -> Result<Self, ExploreError> {
        if x.is_empty() || y.is_empty() {
            return Err(ExploreError::InvalidBounds("empty range"));
        }
        if step_cap == 0 || path_cap == 0 {
            return Err(ExploreError::InvalidBounds("caps must be positive"));
        }
        Ok(ExplorationBounds {
            x,
            y,
            step_cap,
            path_cap,
        })
    }

    /// Region of `T^(k,n)`; the step cap is the number of cells in it.
    pub fn for_params(p: &Params) -> Self {
        let (lo, hi) = p.region();
        let cells = ((hi.x - lo.x + 1) as usize) * ((hi.y - lo.y + 1) as usize);
        ExplorationBounds {
            x: lo.x..=hi.x,
            y: lo.y..=hi.y,
            step_cap: cells,
            path_cap: Self::DEFAULT_PATH_CAP,
        }
    }

    /// Grow the box by `margin` cells on every side and raise the step cap to match.
    pub fn expanded(&self, margin: i32) -> Self {
        let x = self.x.start() - margin..=self.x.end() + margin;
        let y = self.y.start() - margin..=self.y.end() + margin;
        let cells = ((x.end() - x.start() + 1) as usize) * ((y.end() - y.start() + 1) as usize);
        ExplorationBounds {
            x,
            y,
            step_cap: self.step_cap.max(cells),
            path_cap: self.path_cap,
        }
    }

    pub fn with_step_cap(mut self, cap: usize) -> Self {
        self.step_cap = cap.max(1);
        self
    }

    pub fn with_path_cap(mut self, cap: usize) -> Self {
        self.path_cap = cap.max(1);
        self
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.x.contains(&p.x) && self.y.contains(&p.y)
    }

    pub fn step_cap(&self) -> usize {
        self.step_cap
    }

    pub fn path_cap(&self) -> usize {
        self.path_cap
    }

    pub fn x_range(&self) -> &RangeInclusive<i32> {
        &self.x
    }

    pub fn y_range(&self) -> &RangeInclusive<i32> {
        &self.y
    }
}

/// Dense occupancy grid over the exploration box.
#[derive(Clone)]
struct Grid {
    x0: i32,
    y0: i32,
    w: usize,
    h: usize,
    cells: Vec<u32>,
}

const EMPTY: u32 = u32::MAX;

impl Grid {
    fn new(b: &ExplorationBounds) -> Self {
        let w = (b.x.end() - b.x.start() + 1) as usize;
        let h = (b.y.end() - b.y.start() + 1) as usize;
        Grid {
            x0: *b.x.start(),
            y0: *b.y.start(),
            w,
            h,
            cells: vec![EMPTY; w * h],
        }
    }

    fn idx(&self, p: Pos) -> Option<usize> {
        let dx = p.x - self.x0;
        let dy = p.y - self.y0;
        (dx >= 0 && dy >= 0 && (dx as usize) < self.w && (dy as usize) < self.h)
            .then(|| dy as usize * self.w + dx as usize)
    }

    fn is_empty(&self, p: Pos) -> bool {
        self.idx(p).is_some_and(|i| self.cells[i] == EMPTY)
    }

    fn set(&mut self, t: Tile) {
        let i = self.idx(t.pos).expect("tile inside grid");
        self.cells[i] = t.ty.0;
    }

    fn clear(&mut self, p: Pos) {
        if let Some(i) = self.idx(p) {
            self.cells[i] = EMPTY;
        }
    }
}

/// Counters gathered during enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumStats {
    /// Tiles placed over the whole search.
    pub placements: u64,
    /// Glue exposures that pointed outside the bounds.
    pub pruned_by_bounds: u64,
    /// Largest number of types binding to one exposed glue.
    pub max_binders: usize,
    /// Tiles at which the search branched.
    pub branch_points: u64,
}

impl EnumStats {
    fn merge(&mut self, o: &EnumStats) {
        self.placements += o.placements;
        self.pruned_by_bounds += o.pruned_by_bounds;
        self.max_binders = self.max_binders.max(o.max_binders);
        self.branch_points += o.branch_points;
    }
}

/// Maximal producible paths within bounds, lexicographically sorted.
#[derive(Clone, Debug)]
pub struct PathEnumeration {
    pub paths: Vec<Path>,
    pub stats: EnumStats,
}

struct Search<'a> {
    sys: &'a TileAssemblySystem,
    bounds: &'a ExplorationBounds,
    grid: Grid,
    stats: EnumStats,
}

impl<'a> Search<'a> {
    fn new(sys: &'a TileAssemblySystem, bounds: &'a ExplorationBounds) -> Result<Self, ExploreError> {
        let mut grid = Grid::new(bounds);
        for t in sys.seed().tiles() {
            if !bounds.contains(t.pos) {
                return Err(ExploreError::SeedOutsideBounds(t.pos));
            }
            grid.set(t);
        }
        Ok(Search {
            sys,
            bounds,
            grid,
            stats: EnumStats::default(),
        })
    }

    fn candidates(&mut self, tile: Tile, out: &mut Vec<(Pos, TypeId)>) {
        let ts = self.sys.tileset();
        for (side, glue) in ts.get(tile.ty).glues() {
            let q = tile.pos.step(side);
            if !self.bounds.contains(q) {
                self.stats.pruned_by_bounds += 1;
                continue;
            }
            if !self.grid.is_empty(q) {
                continue;
            }
            let binders = ts.binders(side.opposite(), glue);
            self.stats.max_binders = self.stats.max_binders.max(binders.len());
            out.extend(binders.iter().map(|&t| (q, t)));
        }
    }

    /// One-tile extensions at the end of `path` (or off the seed when empty).
    fn extensions(&mut self, path: &[Tile]) -> Vec<(Pos, TypeId)> {
        let mut out = Vec::new();
        match path.last() {
            Some(&t) => self.candidates(t, &mut out),
            None => {
                let seed: Vec<Tile> = self.sys.seed().tiles().collect();
                for t in seed {
                    self.candidates(t, &mut out);
                }
                out.sort();
                out.dedup();
            }
        }
        if out.len() > 1 {
            self.stats.branch_points += 1;
        }
        out
    }

    fn place(&mut self, path: &mut Vec<Tile>, t: Tile) {
        self.grid.set(t);
        path.push(t);
        self.stats.placements += 1;
    }

    /// Depth-first search over every producible path extending `prefix`.
    fn run_from(&mut self, prefix: Vec<Tile>, out: &mut Vec<Path>) -> Result<(), ExploreError> {
        let mut path = prefix;
        for t in path.clone() {
            self.grid.set(t);
        }
        let root = self.extensions(&path);
        if root.is_empty() {
            if !path.is_empty() {
                out.push(Path::from_tiles(path));
            }
            return Ok(());
        }
        let base_len = path.len();
        let mut stack: Vec<(Vec<(Pos, TypeId)>, usize)> = vec![(root, 0)];
        while let Some((cands, next)) = stack.last_mut() {
            if *next == cands.len() {
                stack.pop();
                if !stack.is_empty() {
                    let t = path.pop().expect("frame owns a tile");
                    self.grid.clear(t.pos);
                }
                continue;
            }
            let (q, ty) = cands[*next];
            *next += 1;
            if path.len() >= self.bounds.step_cap {
                return Err(ExploreError::StepCapExceeded {
                    cap: self.bounds.step_cap,
                    witness: Path::from_tiles(path),
                });
            }
            self.place(&mut path, Tile::new(q, ty));
            let ext = self.extensions(&path);
            if ext.is_empty() {
                out.push(Path::from_tiles(path.clone()));
                if out.len() > self.bounds.path_cap {
                    return Err(ExploreError::PathCapExceeded {
                        cap: self.bounds.path_cap,
                    });
                }
                let t = path.pop().expect("just placed");
                self.grid.clear(t.pos);
            } else {
                stack.push((ext, 0));
            }
        }
        debug_assert_eq!(path.len(), base_len);
        Ok(())
    }
}

/// All maximal producible paths within `bounds`, lexicographically sorted.
///
/// A path is maximal when no tile can be appended at its end inside the box.
pub fn enumerate_paths(
    sys: &TileAssemblySystem,
    bounds: &ExplorationBounds,
) -> Result<PathEnumeration, ExploreError> {
    let mut search = Search::new(sys, bounds)?;
    let mut paths = Vec::new();
    search.run_from(Vec::new(), &mut paths)?;
    paths.sort();
    Ok(PathEnumeration {
        paths,
        stats: search.stats,
    })
}

/// Same result as [`enumerate_paths`], with subtrees split across rayon workers.
///
/// The search first walks unbranched stretches sequentially and splits at
/// branch points until enough independent prefixes exist.
pub fn enumerate_paths_parallel(
    sys: &TileAssemblySystem,
    bounds: &ExplorationBounds,
) -> Result<PathEnumeration, ExploreError> {
    let target = 4 * rayon::current_num_threads().max(1);
    let mut probe = Search::new(sys, bounds)?;
    let mut finished = Vec::new();
    let mut frontier: Vec<Vec<Tile>> = vec![Vec::new()];
    for _round in 0..32 {
        if frontier.len() >= target || frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for mut prefix in frontier {
            for t in &prefix {
                probe.grid.set(*t);
            }
            // Walk forward while the path does not branch.
            let ext = loop {
                let ext = probe.extensions(&prefix);
                if ext.len() != 1 {
                    break ext;
                }
                if prefix.len() >= bounds.step_cap {
                    return Err(ExploreError::StepCapExceeded {
                        cap: bounds.step_cap,
                        witness: Path::from_tiles(prefix),
                    });
                }
                let (q, ty) = ext[0];
                probe.place(&mut prefix, Tile::new(q, ty));
            };
            for t in &prefix {
                probe.grid.clear(t.pos);
            }
            if ext.is_empty() {
                if !prefix.is_empty() {
                    finished.push(Path::from_tiles(prefix));
                }
                continue;
            }
            if prefix.len() >= bounds.step_cap {
                return Err(ExploreError::StepCapExceeded {
                    cap: bounds.step_cap,
                    witness: Path::from_tiles(prefix),
                });
            }
            for (q, ty) in ext {
                let mut child = prefix.clone();
                child.push(Tile::new(q, ty));
                next.push(child);
            }
        }
        frontier = next;
    }
    let mut stats = probe.stats;
    let results: Vec<Result<(Vec<Path>, EnumStats), ExploreError>> = frontier
        .into_par_iter()
        .map(|prefix| {
            let mut s = Search::new(sys, bounds)?;
            let mut out = Vec::new();
            s.run_from(prefix, &mut out)?;
            Ok((out, s.stats))
        })
        .collect();
    let mut paths = finished;
    for r in results {
        let (p, s) = r?;
        paths.extend(p);
        stats.merge(&s);
        if paths.len() > bounds.path_cap {
            return Err(ExploreError::PathCapExceeded {
                cap: bounds.path_cap,
            });
        }
    }
    paths.sort();
    Ok(PathEnumeration { paths, stats })
}

/// Grow from the seed, attaching a uniformly chosen `(position, type)` pair among
/// all attachable pairs inside `bounds`, until nothing can attach.
///
/// The generator is ChaCha8 seeded with `rng_seed`, so equal seeds give equal
/// assemblies on every platform.
pub fn sample_terminal(
    sys: &TileAssemblySystem,
    rng_seed: u64,
    bounds: &ExplorationBounds,
) -> Result<Assembly, ExploreError> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let seed = sys.seed();
    for p in seed.positions() {
        if !bounds.contains(p) {
            return Err(ExploreError::SeedOutsideBounds(p));
        }
    }
    let mut grid = Grid::new(bounds);
    let mut tiles: BTreeMap<Pos, TypeId> = BTreeMap::new();
    let mut frontier: BTreeSet<(Pos, TypeId)> = BTreeSet::new();
    let mut buf = Vec::new();
    let expose = |t: Tile, grid: &Grid, frontier: &mut BTreeSet<(Pos, TypeId)>, buf: &mut Vec<_>| {
        buf.clear();
        sys.extensions_of(t.pos, t.ty, |q| grid.is_empty(q), buf);
        frontier.extend(buf.iter().copied());
    };
    for t in seed.tiles() {
        grid.set(t);
        tiles.insert(t.pos, t.ty);
    }
    for t in seed.tiles() {
        expose(t, &grid, &mut frontier, &mut buf);
    }
    let mut steps = 0usize;
    while !frontier.is_empty() {
        if steps >= bounds.step_cap {
            let witness = tiles.iter().map(|(&p, &t)| Tile::new(p, t)).collect();
            return Err(ExploreError::StepCapExceeded {
                cap: bounds.step_cap,
                witness,
            });
        }
        let pick = rng.random_range(0..frontier.len());
        let (p, ty) = *frontier.iter().nth(pick).expect("index in range");
        let stale: Vec<_> = frontier
            .range((p, TypeId(0))..=(p, TypeId(u32::MAX)))
            .copied()
            .collect();
        for s in stale {
            frontier.remove(&s);
        }
        let t = Tile::new(p, ty);
        grid.set(t);
        tiles.insert(p, ty);
        expose(t, &grid, &mut frontier, &mut buf);
        steps += 1;
    }
    Ok(Assembly::from_parts_unchecked(
        tiles,
        seed.seed_positions().clone(),
    ))
}

/// Every producible assembly with at most `max_tiles` tiles, by breadth-first
/// attachment with canonical deduplication. Sorted by size, then canonically.
pub fn enumerate_assemblies(
    sys: &TileAssemblySystem,
    max_tiles: usize,
    cap: usize,
) -> Result<Vec<Assembly>, ExploreError> {
    let seed = sys.seed().clone();
    if max_tiles < seed.len() {
        return Ok(Vec::new());
    }
    let mut all = vec![seed.clone()];
    let mut level = BTreeSet::from([seed]);
    while let Some(size) = level.first().map(Assembly::len) {
        if size >= max_tiles {
            break;
        }
        let mut next = BTreeSet::new();
        for a in &level {
            for (p, t) in sys.attachable_sites(a) {
                let b = sys.attach(a, p, t).expect("attachable site binds");
                next.insert(b);
            }
            if all.len() + next.len() > cap {
                return Err(ExploreError::AssemblyCapExceeded { cap });
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(all)
}

/// Two producible assemblies placing different types at `position`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictWitness {
    pub position: Pos,
    pub first: Assembly,
    pub second: Assembly,
}

/// Smallest position at which two of `assemblies` disagree, with a witness pair.
pub fn find_conflict(assemblies: &[Assembly]) -> Option<ConflictWitness> {
    let mut seen: BTreeMap<Pos, BTreeMap<TypeId, usize>> = BTreeMap::new();
    for (i, a) in assemblies.iter().enumerate() {
        for t in a.tiles() {
            seen.entry(t.pos).or_default().entry(t.ty).or_insert(i);
        }
    }
    seen.into_iter().find_map(|(pos, types)| {
        let mut it = types.values();
        match (it.next(), it.next()) {
            (Some(&a), Some(&b)) => Some(ConflictWitness {
                position: pos,
                first: assemblies[a].clone(),
                second: assemblies[b].clone(),
            }),
            _ => None,
        }
    })
}

/// A glue exposed to an empty cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeGlueRecord {
    pub pos: Pos,
    pub side: Side,
    pub glue: Glue,
}

/// Glues of `path` facing a cell that neither the path nor the seed occupies.
/// A glue facing an occupied cell is consumed or blocked by a mismatch.
pub fn free_glues(path: &Path, sys: &TileAssemblySystem) -> Vec<FreeGlueRecord> {
    let occupied: HashSet<Pos> = path
        .positions()
        .chain(sys.seed().positions())
        .collect();
    let ts = sys.tileset();
    let mut out: Vec<FreeGlueRecord> = path
        .tiles()
        .iter()
        .flat_map(|t| {
            ts.get(t.ty)
                .glues()
                .filter(|(side, _)| !occupied.contains(&t.pos.step(*side)))
                .map(|(side, glue)| FreeGlueRecord {
                    pos: t.pos,
                    side,
                    glue: glue.clone(),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    out
}

/// True when no producible path extends `path` by one tile at its end.
pub fn is_dead_end(path: &Path, sys: &TileAssemblySystem) -> bool {
    let occupied: HashSet<Pos> = path
        .positions()
        .chain(sys.seed().positions())
        .collect();
    let ends: Vec<Tile> = match path.last() {
        Some(t) => vec![*t],
        None => sys.seed().tiles().collect(),
    };
    let mut ext = Vec::new();
    for t in ends {
        sys.extensions_of(t.pos, t.ty, |q| !occupied.contains(&q), &mut ext);
    }
    ext.is_empty()
}

/// Where a pumping attempt got stuck.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpBlocked {
    /// 1-based repetition that failed.
    pub repetition: usize,
    pub position: Pos,
    /// Type already sitting at `position`, if the failure is a collision.
    pub occupant: Option<TypeId>,
}

/// Repeat the segment `path[i+1..=j]` (with `type(P_i) = type(P_j)`) shifted by
/// multiples of `pos(P_j) - pos(P_i)`, appended to `path[..=j]`.
pub fn attempt_pump(
    sys: &TileAssemblySystem,
    path: &Path,
    i: usize,
    j: usize,
    repetitions: usize,
) -> Result<Path, PumpBlocked> {
    let tiles = path.tiles();
    assert!(i < j && j < tiles.len(), "segment indices out of range");
    let v: Vector = tiles[j].pos - tiles[i].pos;
    let segment = &tiles[i + 1..=j];
    let mut out: Vec<Tile> = tiles[..=j].to_vec();
    let mut occupied: BTreeMap<Pos, TypeId> = sys.seed().map().clone();
    occupied.extend(out.iter().map(|t| (t.pos, t.ty)));
    for m in 1..=repetitions {
        for t in segment {
            let next = t.translate(v.scale(m as i32));
            if let Some(&occ) = occupied.get(&next.pos) {
                return Err(PumpBlocked {
                    repetition: m,
                    position: next.pos,
                    occupant: Some(occ),
                });
            }
            let prev = out.last().expect("nonempty");
            if !sys.tileset().interacts(prev, &next) {
                return Err(PumpBlocked {
                    repetition: m,
                    position: next.pos,
                    occupant: None,
                });
            }
            occupied.insert(next.pos, next.ty);
            out.push(next);
        }
    }
    Ok(Path::from_tiles(out))
}

/// A pumpable segment and the pumped producible path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpWitness {
    pub base: Path,
    pub i: usize,
    pub j: usize,
    pub vector: Vector,
    pub pumped: Path,
}

/// Look for a producible path with two equal types whose segment can be
/// repeated until the pumped path reaches `target_len` tiles.
///
/// Candidate bases are producible paths of at most `probe_len` tiles (maximal
/// ones, or prefixes cut at the probe length).
pub fn find_pump(
    sys: &TileAssemblySystem,
    bounds: &ExplorationBounds,
    probe_len: usize,
    target_len: usize,
) -> Result<Option<PumpWitness>, ExploreError> {
    let probe = bounds.clone().with_step_cap(probe_len.max(1));
    let mut bases = Vec::new();
    let mut search = Search::new(sys, &probe)?;
    collect_bases(&mut search, &mut bases)?;
    bases.sort();
    for base in bases {
        let tiles = base.tiles();
        for j in 1..tiles.len() {
            for i in 0..j {
                if tiles[i].ty != tiles[j].ty {
                    continue;
                }
                let seg = j - i;
                let reps = target_len.saturating_sub(j + 1).div_ceil(seg).max(1);
                if let Ok(pumped) = attempt_pump(sys, &base, i, j, reps) {
                    if sys.path_producible(&pumped) {
                        return Ok(Some(PumpWitness {
                            base: base.prefix(j + 1),
                            i,
                            j,
                            vector: tiles[j].pos - tiles[i].pos,
                            pumped,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Maximal paths in the probe box, plus every path cut at the probe length.
fn collect_bases(search: &mut Search<'_>, out: &mut Vec<Path>) -> Result<(), ExploreError> {
    let cap = search.bounds.path_cap;
    let mut path: Vec<Tile> = Vec::new();
    let root = search.extensions(&path);
    let mut stack = vec![(root, 0usize)];
    while let Some((cands, next)) = stack.last_mut() {
        if *next == cands.len() {
            stack.pop();
            if !stack.is_empty() {
                let t = path.pop().expect("frame owns a tile");
                search.grid.clear(t.pos);
            }
            continue;
        }
        let (q, ty) = cands[*next];
        *next += 1;
        search.place(&mut path, Tile::new(q, ty));
        let ext = search.extensions(&path);
        if ext.is_empty() || path.len() >= search.bounds.step_cap {
            out.push(Path::from_tiles(path.clone()));
            if out.len() > cap {
                return Err(ExploreError::PathCapExceeded { cap });
            }
            let t = path.pop().expect("just placed");
            search.grid.clear(t.pos);
        } else {
            stack.push((ext, 0));
        }
    }
    Ok(())
}

/// First enumerated path conflicting with `reference`, if any.
pub fn first_conflicting<'a>(paths: &'a [Path], reference: &Path) -> Option<(&'a Path, Pos)> {
    paths
        .iter()
        .find_map(|p| conflict_between(p, reference).map(|pos| (p, pos)))
}
