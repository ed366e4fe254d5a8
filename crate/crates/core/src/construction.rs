//! The controlled-loop tile set `T^(k,n)` and its catalog of named paths.
//!
//! Five families: the seed `s`, green `g_0..g_{n+1}`, orange `o_0..o_{h_k-3}`,
//! blue `b_0..b_{2n-1}` and red `r_0..r_{h_k-h_{k-1}-3}`. Glue labels are
//! `(family, index)` pairs, so every table below is generated, not listed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{
    Assembly, Family, Glue, ModelError, Path, Pos, Tile, TileAssemblySystem, TileSet, TileType,
    TypeId, Vector,
};

/// Largest supported level count; beyond it `h_k` overflows lattice coordinates.
pub const MAX_LEVELS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("parameters out of domain: k={k}, n={n} (need 1 <= k <= {MAX_LEVELS}, n >= 2)")]
    OutOfDomain { k: usize, n: usize },
    #[error("target size {0} below the minimum of {MIN_TARGET_SIZE}")]
    TargetTooSmall(usize),
    #[error("tile set lacks type `{0}`")]
    MissingType(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// `h_0 = 2`, `h_1 = 4`, `h_i = 3 h_{i-1} - h_{i-2}`.
pub fn h_seq(i: usize) -> u64 {
    let (mut a, mut b) = (2u64, 4u64);
    if i == 0 {
        return a;
    }
    for _ in 1..i {
        (a, b) = (b, 3 * b - a);
    }
    b
}

/// Number of tile types of `T^(k,n)`: `3n + 2h_k - h_{k-1} - 1`.
pub fn tileset_size(k: usize, n: usize) -> u64 {
    3 * n as u64 + 2 * h_seq(k) - h_seq(k - 1) - 1
}

/// Size obtained with `n = 2 h_k`: `8 h_k - h_{k-1} - 1`.
pub fn target_size_for_level(k: usize) -> u64 {
    8 * h_seq(k) - h_seq(k - 1) - 1
}

/// Parameters `(k, n)` with the precomputed `h_0..h_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    k: usize,
    n: usize,
    h: Vec<i32>,
}

impl Params {
    pub fn new(k: usize, n: usize) -> Result<Self, ConstructionError> {
        let err = ConstructionError::OutOfDomain { k, n };
        if !(1..=MAX_LEVELS).contains(&k) || n < 2 {
            return Err(err);
        }
        let width = (k as u64 + 1) * n as u64;
        if width > i32::MAX as u64 / 4 {
            return Err(err);
        }
        let h = (0..=k).map(|i| h_seq(i) as i32).collect();
        Ok(Params { k, n, h })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `h_i` for `0 <= i <= k`.
    pub fn h(&self, i: usize) -> i32 {
        self.h[i]
    }

    pub fn ni(&self) -> i32 {
        self.n as i32
    }

    /// `u_{i,j} = (n, h_i - h_j + h_{j-1})`, defined for `2 <= j <= i <= k`.
    pub fn u(&self, i: usize, j: usize) -> Vector {
        debug_assert!(2 <= j && j <= i && i <= self.k);
        Vector::new(self.ni(), self.h(i) - self.h(j) + self.h(j - 1))
    }

    pub fn orange_len(&self) -> usize {
        (self.h(self.k) - 2) as usize
    }

    pub fn red_len(&self) -> usize {
        (self.h(self.k) - self.h(self.k - 1) - 2) as usize
    }

    pub fn tileset_size(&self) -> usize {
        1 + (self.n + 2) + self.orange_len() + 2 * self.n + self.red_len()
    }

    /// Growth region: `0 <= x <= (k+1)n - 1`, `0 <= y <= h_k - 1`.
    pub fn region(&self) -> (Pos, Pos) {
        (
            Pos::ORIGIN,
            Pos::new((self.k as i32 + 1) * self.ni() - 1, self.h(self.k) - 1),
        )
    }

    fn orange_has_east(&self, i: i32) -> bool {
        (1..=self.k).any(|s| i == self.h(s) - 3)
    }

    fn red_has_east(&self, i: i32) -> bool {
        (2..=self.k).any(|j| i == self.h(j) - self.h(j - 1) - 3)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} n={}", self.k, self.n)
    }
}

fn glue(f: Family, i: i32) -> Option<Glue> {
    Some(Glue::indexed(f, i as u32))
}

fn green_types(n: i32) -> Vec<TileType> {
    use Family::*;
    let mut v = Vec::new();
    for i in 0..=n - 2 {
        v.push(TileType::new(&format!("g{i}"), None, glue(Green, i + 1), None, glue(Green, i)));
    }
    v.push(TileType::new(&format!("g{}", n - 1), glue(Green, n), None, None, glue(Green, n - 1)));
    v.push(TileType::new(&format!("g{n}"), None, None, glue(Green, n), glue(Green, n + 1)));
    v.push(TileType::new(&format!("g{}", n + 1), glue(Orange, 0), glue(Green, n + 1), None, None));
    v
}

fn orange_types(p: &Params) -> Vec<TileType> {
    let last = p.h(p.k) - 3;
    (0..=last)
        .map(|i| {
            TileType::new(
                &format!("o{i}"),
                (i < last).then(|| Glue::indexed(Family::Orange, (i + 1) as u32)),
                p.orange_has_east(i).then(|| Glue::indexed(Family::Blue, 0)),
                glue(Family::Orange, i),
                None,
            )
        })
        .collect()
}

fn blue_types(n: i32) -> Vec<TileType> {
    use Family::*;
    let mut v = Vec::new();
    for i in 0..=n - 2 {
        v.push(TileType::new(&format!("b{i}"), None, glue(Blue, i + 1), None, glue(Blue, i)));
    }
    v.push(TileType::new(&format!("b{}", n - 1), None, None, glue(Blue, n), glue(Blue, n - 1)));
    v.push(TileType::new(&format!("b{n}"), glue(Blue, n), None, None, glue(Blue, n + 1)));
    for i in n + 1..=2 * n - 2 {
        v.push(TileType::new(&format!("b{i}"), None, glue(Blue, i), None, glue(Blue, i + 1)));
    }
    v.push(TileType::new(
        &format!("b{}", 2 * n - 1),
        None,
        glue(Blue, 2 * n - 1),
        glue(Red, 0),
        None,
    ));
    v
}

fn red_types(p: &Params) -> Vec<TileType> {
    let last = p.red_len() as i32 - 1;
    (0..=last)
        .map(|i| {
            TileType::new(
                &format!("r{i}"),
                glue(Family::Red, i),
                p.red_has_east(i).then(|| Glue::indexed(Family::Green, 0)),
                (i < last).then(|| Glue::indexed(Family::Red, (i + 1) as u32)),
                None,
            )
        })
        .collect()
}

/// Tile types of `T^(k,n)` in canonical order: seed, then g, o, b, r ascending.
pub fn tile_types(p: &Params) -> Vec<TileType> {
    let mut types = vec![TileType::new(
        "s",
        None,
        Some(Glue::indexed(Family::Green, 0)),
        None,
        None,
    )];
    types.extend(green_types(p.ni()));
    types.extend(orange_types(p));
    types.extend(blue_types(p.ni()));
    types.extend(red_types(p));
    types
}

fn seed_assembly(tileset: &TileSet) -> Result<Assembly, ConstructionError> {
    let s = tileset
        .id_of("s")
        .ok_or_else(|| ConstructionError::MissingType("s".into()))?;
    Ok(Assembly::seed([Tile::new(Pos::ORIGIN, s)])?)
}

/// `(T^(k,n), σ, 1)` with the single seed tile `((0,0), s)`.
pub fn generate_tileset(p: &Params) -> Result<TileAssemblySystem, ConstructionError> {
    let tileset = TileSet::new(tile_types(p))?;
    let seed = seed_assembly(&tileset)?;
    Ok(TileAssemblySystem::new(tileset, seed)?)
}

/// Smallest size reachable by [`for_target_size`] (`k = 1`, `n = 8`).
pub const MIN_TARGET_SIZE: usize = 29;

/// A sized system together with the parameters that produced it.
#[derive(Clone, Debug)]
pub struct SizedSystem {
    pub params: Params,
    pub padding: usize,
    pub system: TileAssemblySystem,
}

/// Largest `k` with `8h_k - h_{k-1} - 1 <= t`, `n = 2h_k`, padded with inert
/// types (one fresh glue each, matched by nothing) up to exactly `t` types.
pub fn for_target_size(t: usize) -> Result<SizedSystem, ConstructionError> {
    if t < MIN_TARGET_SIZE {
        return Err(ConstructionError::TargetTooSmall(t));
    }
    let k = (1..=MAX_LEVELS)
        .take_while(|&k| target_size_for_level(k) <= t as u64)
        .last()
        .unwrap_or(1);
    let params = Params::new(k, 2 * h_seq(k) as usize)?;
    let mut types = tile_types(&params);
    let padding = t - types.len();
    for i in 0..padding {
        let label = format!("pad{i}");
        types.push(TileType::new(&label, Some(Glue::named(&label)?), None, None, None));
    }
    let tileset = TileSet::new(types)?;
    let seed = seed_assembly(&tileset)?;
    Ok(SizedSystem {
        params,
        padding,
        system: TileAssemblySystem::new(tileset, seed)?,
    })
}

/// Names of catalog entries, as used on the command line (`A:4,3`, `DD:3,2`, ...).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathName {
    Green,
    Orange(usize),
    Blue(usize),
    RedPrefix(usize, usize),
    Composite(usize, usize),
    Dead(usize),
    DoubleDead(usize, usize),
    Loop(usize),
}

impl fmt::Display for PathName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathName::Green => write!(f, "G"),
            PathName::Orange(j) => write!(f, "Y:{j}"),
            PathName::Blue(j) => write!(f, "B:{j}"),
            PathName::RedPrefix(j, i) => write!(f, "P:{j},{i}"),
            PathName::Composite(i, j) => write!(f, "A:{i},{j}"),
            PathName::Dead(i) => write!(f, "D:{i}"),
            PathName::DoubleDead(i, j) => write!(f, "DD:{i},{j}"),
            PathName::Loop(i) => write!(f, "L:{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad path name `{0}` (expected G, Y:i, B:i, P:j,i, A:i,j, D:i, DD:i,j or L:i)")]
pub struct PathNameError(String);

impl FromStr for PathName {
    type Err = PathNameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PathNameError(s.to_string());
        if s == "G" {
            return Ok(PathName::Green);
        }
        let (head, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match (head, nums.as_slice()) {
            ("Y", [j]) => Ok(PathName::Orange(*j)),
            ("B", [j]) => Ok(PathName::Blue(*j)),
            ("P", [j, i]) => Ok(PathName::RedPrefix(*j, *i)),
            ("A", [i, j]) => Ok(PathName::Composite(*i, *j)),
            ("D", [i]) => Ok(PathName::Dead(*i)),
            ("DD", [i, j]) => Ok(PathName::DoubleDead(*i, *j)),
            ("L", [i]) => Ok(PathName::Loop(*i)),
            _ => Err(bad()),
        }
    }
}

/// Building blocks placed by coordinate formula: `G`, `Y^j`, `B^j`, `P_{j,i}`
/// and the full red run. Everything else in the catalog is composed from these.
#[derive(Clone, Debug)]
pub struct CatalogParts {
    pub params: Params,
    pub green: Path,
    /// `Y^j` at index `j - 1`.
    pub orange: Vec<Path>,
    /// `O_0 .. O_{h_k-3}` (the full orange column, untranslated).
    pub orange_column: Path,
    /// `B^j` at index `j - 1`.
    pub blue: Vec<Path>,
    /// `R_0 .. R_{h_k-h_{k-1}-3}` (untranslated, starts at `(n, 1)`).
    pub red_column: Path,
}

struct Resolver<'a> {
    tileset: &'a TileSet,
}

impl Resolver<'_> {
    fn ty(&self, family: char, i: i32) -> Result<TypeId, ConstructionError> {
        let name = format!("{family}{i}");
        self.tileset
            .id_of(&name)
            .ok_or(ConstructionError::MissingType(name))
    }

    fn tile(&self, family: char, i: i32, x: i32, y: i32) -> Result<Tile, ConstructionError> {
        Ok(Tile::new(Pos::new(x, y), self.ty(family, i)?))
    }
}

impl CatalogParts {
    /// Lay the building blocks out against `tileset`, resolving types by name.
    pub fn build(params: &Params, tileset: &TileSet) -> Result<Self, ConstructionError> {
        let r = Resolver { tileset };
        let n = params.ni();
        let k = params.k;

        let mut green = Vec::new();
        for i in 0..=n - 2 {
            green.push(r.tile('g', i, 1 + i, 0)?);
        }
        green.push(r.tile('g', n - 1, n, 0)?);
        green.push(r.tile('g', n, n, 1)?);
        green.push(r.tile('g', n + 1, n - 1, 1)?);

        let orange_column: Path = (0..=params.h(k) - 3)
            .map(|i| r.tile('o', i, n - 1, 2 + i))
            .collect::<Result<_, _>>()?;
        let orange = (1..=k)
            .map(|j| orange_column.prefix((params.h(j) - 2) as usize))
            .collect();

        let mut blue1 = Vec::new();
        for i in 0..=n - 2 {
            blue1.push(r.tile('b', i, n + i, 3)?);
        }
        blue1.push(r.tile('b', n - 1, 2 * n - 1, 3)?);
        blue1.push(r.tile('b', n, 2 * n - 1, 2)?);
        for i in n + 1..=2 * n - 2 {
            blue1.push(r.tile('b', i, 3 * n - 1 - i, 2)?);
        }
        blue1.push(r.tile('b', 2 * n - 1, n, 2)?);
        let blue1 = Path::from_tiles(blue1);
        let blue = (1..=k)
            .map(|j| blue1.translate(Vector::new(0, params.h(j) - 4)))
            .collect();

        let red_column: Path = (0..params.red_len() as i32)
            .map(|i| r.tile('r', i, n, 1 - i))
            .collect::<Result<_, _>>()?;

        Ok(CatalogParts {
            params: params.clone(),
            green: Path::from_tiles(green),
            orange,
            orange_column,
            blue,
            red_column,
        })
    }

    /// `P_{j,i}`: the first `h_j - h_{j-1} - 2` red tiles, lifted by `h_i - 4`.
    fn red_prefix(&self, j: usize, i: usize) -> Path {
        let p = &self.params;
        let len = (p.h(j) - p.h(j - 1) - 2) as usize;
        self.red_column
            .prefix(len)
            .translate(Vector::new(0, p.h(i) - 4))
    }

    /// Red run of `D_i`: down to row 2, or until the red tiles run out.
    fn red_run(&self, i: usize) -> Path {
        let p = &self.params;
        let len = ((p.h(i) - 4) as usize).min(p.red_len());
        self.red_column
            .prefix(len)
            .translate(Vector::new(0, p.h(i) - 4))
    }
}

/// Every named path of the construction for one `(k, n)`.
#[derive(Clone, Debug)]
pub struct Catalog {
    parts: CatalogParts,
    red_prefix: BTreeMap<(usize, usize), Path>,
    composite: BTreeMap<(usize, usize), Path>,
    dead: Vec<Path>,
    double_dead: BTreeMap<(usize, usize), Path>,
    loops: Vec<Path>,
}

impl Catalog {
    /// Catalog of the generated tile set for `params`.
    pub fn new(params: &Params) -> Result<Self, ConstructionError> {
        let sys = generate_tileset(params)?;
        Catalog::for_tileset(params, sys.tileset())
    }

    /// Catalog whose tiles reference types of `tileset` by name.
    pub fn for_tileset(params: &Params, tileset: &TileSet) -> Result<Self, ConstructionError> {
        Ok(Catalog::from_parts(CatalogParts::build(params, tileset)?))
    }

    /// Compose all derived paths from (possibly altered) building blocks.
    pub fn from_parts(parts: CatalogParts) -> Self {
        let p = parts.params.clone();
        let k = p.k;
        let mut red_prefix = BTreeMap::new();
        for i in 1..=k {
            for j in 1..=i {
                red_prefix.insert((j, i), parts.red_prefix(j, i));
            }
        }
        let stem = |i: usize| parts.green.concat(&parts.orange[i - 1]).concat(&parts.blue[i - 1]);

        let mut composite = BTreeMap::new();
        for i in 1..=k {
            for j in 1..=i {
                composite.insert((i, j), stem(i).concat(&red_prefix[&(j, i)]));
            }
        }

        let dead = (1..=k).map(|i| stem(i).concat(&parts.red_run(i))).collect();

        let mut double_dead = BTreeMap::new();
        for i in 2..=k {
            for j in 2..=i {
                let u = p.u(i, j);
                let climb = (p.h(j) - p.h(j - 1) - 4) as usize;
                let tail = parts
                    .green
                    .concat(&parts.orange_column.prefix(climb))
                    .translate(u);
                double_dead.insert((i, j), composite[&(i, j)].concat(&tail));
            }
        }

        let mut loops: Vec<Path> = vec![composite[&(1, 1)].clone()];
        for i in 2..=k {
            let inner = loops[i - 2].translate(p.u(i, i));
            loops.push(composite[&(i, i)].concat(&inner));
        }

        Catalog {
            parts,
            red_prefix,
            composite,
            dead,
            double_dead,
            loops,
        }
    }

    pub fn params(&self) -> &Params {
        &self.parts.params
    }

    pub fn parts(&self) -> &CatalogParts {
        &self.parts
    }

    pub fn green(&self) -> &Path {
        &self.parts.green
    }

    pub fn orange(&self, j: usize) -> &Path {
        &self.parts.orange[j - 1]
    }

    pub fn blue(&self, j: usize) -> &Path {
        &self.parts.blue[j - 1]
    }

    pub fn red_prefix(&self, j: usize, i: usize) -> &Path {
        &self.red_prefix[&(j, i)]
    }

    /// `A_{i,j} = G Y^i B^i P_{j,i}`.
    pub fn composite(&self, i: usize, j: usize) -> &Path {
        &self.composite[&(i, j)]
    }

    pub fn dead(&self, i: usize) -> &Path {
        &self.dead[i - 1]
    }

    pub fn double_dead(&self, i: usize, j: usize) -> &Path {
        &self.double_dead[&(i, j)]
    }

    pub fn loop_path(&self, i: usize) -> &Path {
        &self.loops[i - 1]
    }

    pub fn u(&self, i: usize, j: usize) -> Vector {
        self.parts.params.u(i, j)
    }

    /// `G Y^k`: the green hook followed by the whole orange column.
    pub fn green_orange(&self) -> Path {
        self.parts.green.concat(&self.parts.orange_column)
    }

    pub fn get(&self, name: PathName) -> Option<Path> {
        let k = self.params().k;
        let level = |i: usize| (1..=k).contains(&i);
        match name {
            PathName::Green => Some(self.green().clone()),
            PathName::Orange(j) if level(j) => Some(self.orange(j).clone()),
            PathName::Blue(j) if level(j) => Some(self.blue(j).clone()),
            PathName::RedPrefix(j, i) => self.red_prefix.get(&(j, i)).cloned(),
            PathName::Composite(i, j) => self.composite.get(&(i, j)).cloned(),
            PathName::Dead(i) if level(i) => Some(self.dead(i).clone()),
            PathName::DoubleDead(i, j) => self.double_dead.get(&(i, j)).cloned(),
            PathName::Loop(i) if level(i) => Some(self.loop_path(i).clone()),
            _ => None,
        }
    }

    /// Building-block paths with their names, for position checks.
    pub fn blocks(&self) -> Vec<(PathName, &Path)> {
        let k = self.params().k;
        let mut v = vec![(PathName::Green, self.green())];
        for i in 1..=k {
            v.push((PathName::Orange(i), self.orange(i)));
            v.push((PathName::Blue(i), self.blue(i)));
        }
        for i in 2..=k {
            for j in 2..=i {
                v.push((PathName::RedPrefix(j, i), self.red_prefix(j, i)));
            }
        }
        v
    }
}
