//! Exact semantics of the temperature-1 abstract tile assembly model.
//!
//! Glues have strength 1; a side without a glue carries no label at all.
//! Tile types live in a [`TileSet`] and are referenced by [`TypeId`], so
//! tiles, paths and assemblies are small `Copy`/`Clone` values that only make
//! sense next to the tile set that produced them.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Binding threshold. Fixed: this engine only models noncooperative growth.
pub const TEMPERATURE: u32 = 1;

/// Lattice point. `x` grows east, `y` grows north.
///
/// Ordering is row-major from the south: `(y, x)` lexicographic. Reports and
/// canonical forms rely on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pos {
    pub x: i32,
    pub y: i32,
}

impl Pos {
    pub const ORIGIN: Pos = Pos { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        Pos { x, y }
    }

    pub fn step(self, side: Side) -> Pos {
        self + side.delta()
    }

    pub fn is_adjacent(self, other: Pos) -> bool {
        (self.x - other.x).abs() + (self.y - other.y).abs() == 1
    }

    /// Side of `self` that faces `other`, if the two are 4-adjacent.
    pub fn side_towards(self, other: Pos) -> Option<Side> {
        Side::ALL.into_iter().find(|s| self.step(*s) == other)
    }
}

impl Ord for Pos {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Pos {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Translation vector on the lattice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    pub dx: i32,
    pub dy: i32,
}

impl Vector {
    pub const ZERO: Vector = Vector { dx: 0, dy: 0 };

    pub const fn new(dx: i32, dy: i32) -> Self {
        Vector { dx, dy }
    }

    pub fn scale(self, m: i32) -> Vector {
        Vector::new(self.dx * m, self.dy * m)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dx, self.dy)
    }
}

impl Add<Vector> for Pos {
    type Output = Pos;
    fn add(self, v: Vector) -> Pos {
        Pos::new(self.x + v.dx, self.y + v.dy)
    }
}

impl Sub<Vector> for Pos {
    type Output = Pos;
    fn sub(self, v: Vector) -> Pos {
        Pos::new(self.x - v.dx, self.y - v.dy)
    }
}

impl Sub for Pos {
    type Output = Vector;
    fn sub(self, o: Pos) -> Vector {
        Vector::new(self.x - o.x, self.y - o.y)
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, o: Vector) -> Vector {
        Vector::new(self.dx + o.dx, self.dy + o.dy)
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector::new(-self.dx, -self.dy)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    North,
    East,
    South,
    West,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::North, Side::East, Side::South, Side::West];

    pub fn opposite(self) -> Side {
        match self {
            Side::North => Side::South,
            Side::East => Side::West,
            Side::South => Side::North,
            Side::West => Side::East,
        }
    }

    pub fn delta(self) -> Vector {
        match self {
            Side::North => Vector::new(0, 1),
            Side::East => Vector::new(1, 0),
            Side::South => Vector::new(0, -1),
            Side::West => Vector::new(-1, 0),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        match self {
            Side::North => 'N',
            Side::East => 'E',
            Side::South => 'S',
            Side::West => 'W',
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Color families of the controlled-loop construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Green,
    Orange,
    Blue,
    Red,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Green, Family::Orange, Family::Blue, Family::Red];

    pub fn letter(self) -> char {
        match self {
            Family::Green => 'g',
            Family::Orange => 'o',
            Family::Blue => 'b',
            Family::Red => 'r',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.letter() == c)
    }
}

/// Family letter followed by digits, including zero-padded forms like `g01`.
fn looks_indexed(s: &str) -> bool {
    let mut chars = s.chars();
    let lead = chars.next().and_then(Family::from_letter).is_some();
    let digits = chars.as_str();
    lead && !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Splits `g12` into `(Green, 12)`. Leading zeros are not a family token.
fn parse_indexed(s: &str) -> Option<(Family, u32)> {
    let mut chars = s.chars();
    let fam = Family::from_letter(chars.next()?)?;
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    digits.parse().ok().map(|i| (fam, i))
}

fn valid_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

/// A strength-1 glue label. Equality is token equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Glue {
    /// Structured label of the construction: family letter plus index.
    Indexed(Family, u32),
    /// Free-form label; never spells an indexed token.
    Named(Arc<str>),
}

impl Glue {
    pub fn indexed(family: Family, index: u32) -> Glue {
        Glue::Indexed(family, index)
    }

    pub fn named(token: &str) -> Result<Glue, ModelError> {
        if !valid_token(token) || looks_indexed(token) {
            return Err(ModelError::BadGlueToken(token.to_string()));
        }
        Ok(Glue::Named(Arc::from(token)))
    }
}

impl fmt::Display for Glue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Glue::Indexed(fam, i) => write!(f, "{}{}", fam.letter(), i),
            Glue::Named(s) => f.write_str(s),
        }
    }
}

impl FromStr for Glue {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Glue, ModelError> {
        match parse_indexed(s) {
            Some((fam, i)) => Ok(Glue::Indexed(fam, i)),
            None => Glue::named(s),
        }
    }
}

/// Unit square with an optional glue on each side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TileType {
    name: Arc<str>,
    glues: [Option<Glue>; 4],
}

impl TileType {
    pub fn new(
        name: &str,
        north: Option<Glue>,
        east: Option<Glue>,
        south: Option<Glue>,
        west: Option<Glue>,
    ) -> Self {
        TileType {
            name: Arc::from(name),
            glues: [north, east, south, west],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn glue(&self, side: Side) -> Option<&Glue> {
        self.glues[side.index()].as_ref()
    }

    pub fn glues(&self) -> impl Iterator<Item = (Side, &Glue)> {
        Side::ALL
            .into_iter()
            .filter_map(move |s| self.glue(s).map(|g| (s, g)))
    }

    pub fn glue_count(&self) -> usize {
        self.glues.iter().flatten().count()
    }

    pub fn with_glue(mut self, side: Side, glue: Option<Glue>) -> Self {
        self.glues[side.index()] = glue;
        self
    }

    /// Construction family implied by the name (`g3` is green, ...).
    pub fn family(&self) -> Option<Family> {
        parse_indexed(&self.name).map(|(f, _)| f)
    }
}

/// Index of a tile type inside its [`TileSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeId(pub u32);

impl TypeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Finite set of tile types with a name index and a glue-to-binder index.
#[derive(Clone, Debug)]
pub struct TileSet {
    types: Vec<TileType>,
    by_name: HashMap<Arc<str>, TypeId>,
    binders: HashMap<(Side, Glue), Vec<TypeId>>,
}

impl PartialEq for TileSet {
    fn eq(&self, other: &Self) -> bool {
        self.types == other.types
    }
}

impl Eq for TileSet {}

impl TileSet {
    pub fn new(types: Vec<TileType>) -> Result<Self, ModelError> {
        let mut by_name = HashMap::with_capacity(types.len());
        let mut binders: HashMap<(Side, Glue), Vec<TypeId>> = HashMap::new();
        for (i, t) in types.iter().enumerate() {
            let id = TypeId(i as u32);
            if t.glue_count() == 0 {
                return Err(ModelError::GlueFreeType(t.name().to_string()));
            }
            if by_name.insert(t.name.clone(), id).is_some() {
                return Err(ModelError::DuplicateType(t.name().to_string()));
            }
            for (side, glue) in t.glues() {
                binders.entry((side, glue.clone())).or_default().push(id);
            }
        }
        Ok(TileSet {
            types,
            by_name,
            binders,
        })
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn get(&self, id: TypeId) -> &TileType {
        &self.types[id.index()]
    }

    pub fn name(&self, id: TypeId) -> &str {
        self.types[id.index()].name()
    }

    pub fn id_of(&self, name: &str) -> Option<TypeId> {
        self.by_name.get(name).copied()
    }

    pub fn types(&self) -> &[TileType] {
        &self.types
    }

    pub fn ids(&self) -> impl Iterator<Item = TypeId> {
        (0..self.types.len() as u32).map(TypeId)
    }

    /// Types carrying `glue` on `side`.
    pub fn binders(&self, side: Side, glue: &Glue) -> &[TypeId] {
        self.binders
            .get(&(side, glue.clone()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Abutting tiles whose facing sides carry equal glues.
    pub fn interacts(&self, a: &Tile, b: &Tile) -> bool {
        let Some(side) = a.pos.side_towards(b.pos) else {
            return false;
        };
        match (self.get(a.ty).glue(side), self.get(b.ty).glue(side.opposite())) {
            (Some(ga), Some(gb)) => ga == gb,
            _ => false,
        }
    }

    /// Return a copy with the type named `name` replaced by `replacement`.
    pub fn replace(&self, name: &str, replacement: TileType) -> Result<TileSet, ModelError> {
        let id = self
            .id_of(name)
            .ok_or_else(|| ModelError::UnknownType(name.to_string()))?;
        let mut types = self.types.clone();
        types[id.index()] = replacement;
        TileSet::new(types)
    }
}

/// A placed tile: a position and a reference to a tile type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub pos: Pos,
    pub ty: TypeId,
}

impl Tile {
    pub fn new(pos: Pos, ty: TypeId) -> Self {
        Tile { pos, ty }
    }

    pub fn translate(self, v: Vector) -> Tile {
        Tile::new(self.pos + v, self.ty)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("occupied: {0}")]
    Occupied(Pos),
    #[error("no matching glue for {ty} at {pos}")]
    NoMatchingGlue { pos: Pos, ty: String },
    #[error("conflict with seed at {0}")]
    ConflictWithSeed(Pos),
    #[error("domain is not connected")]
    Disconnected,
    #[error("duplicate tile type name `{0}`")]
    DuplicateType(String),
    #[error("tile type `{0}` carries no glue")]
    GlueFreeType(String),
    #[error("unknown tile type `{0}`")]
    UnknownType(String),
    #[error("tile type id {0} outside the tile set")]
    TypeOutOfRange(u32),
    #[error("bad glue token `{0}`")]
    BadGlueToken(String),
    #[error("position {0} placed twice")]
    DuplicatePosition(Pos),
    #[error("seed is empty")]
    EmptySeed,
}

fn is_connected(positions: &BTreeSet<Pos>) -> bool {
    let Some(&start) = positions.iter().next() else {
        return true;
    };
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for s in Side::ALL {
            let q = p.step(s);
            if positions.contains(&q) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    seen.len() == positions.len()
}

/// Number of distinct columns touched by `positions`.
pub fn width_of(positions: impl IntoIterator<Item = Pos>) -> usize {
    positions.into_iter().map(|p| p.x).collect::<HashSet<_>>().len()
}

/// Number of distinct rows touched by `positions`.
pub fn height_of(positions: impl IntoIterator<Item = Pos>) -> usize {
    positions.into_iter().map(|p| p.y).collect::<HashSet<_>>().len()
}

/// Inclusive bounding box `(min, max)` of a set of positions.
pub fn bounding_box(positions: impl IntoIterator<Item = Pos>) -> Option<(Pos, Pos)> {
    positions.into_iter().fold(None, |acc, p| match acc {
        None => Some((p, p)),
        Some((lo, hi)) => Some((
            Pos::new(lo.x.min(p.x), lo.y.min(p.y)),
            Pos::new(hi.x.max(p.x), hi.y.max(p.y)),
        )),
    })
}

/// Finite connected placement of tile types, with a marked seed.
///
/// Values are immutable: [`TileAssemblySystem::attach`] returns a new one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assembly {
    tiles: BTreeMap<Pos, TypeId>,
    seed: BTreeSet<Pos>,
}

impl Assembly {
    /// Assembly consisting of seed tiles only.
    pub fn seed(tiles: impl IntoIterator<Item = Tile>) -> Result<Self, ModelError> {
        let mut map = BTreeMap::new();
        for t in tiles {
            if map.insert(t.pos, t.ty).is_some() {
                return Err(ModelError::DuplicatePosition(t.pos));
            }
        }
        if map.is_empty() {
            return Err(ModelError::EmptySeed);
        }
        let seed: BTreeSet<Pos> = map.keys().copied().collect();
        if !is_connected(&seed) {
            return Err(ModelError::Disconnected);
        }
        Ok(Assembly { tiles: map, seed })
    }

    /// Build from parts; rejects disconnected domains or seeds outside the domain.
    pub fn from_parts(tiles: BTreeMap<Pos, TypeId>, seed: BTreeSet<Pos>) -> Result<Self, ModelError> {
        let dom: BTreeSet<Pos> = tiles.keys().copied().collect();
        if !seed.is_subset(&dom) || !is_connected(&dom) || !is_connected(&seed) {
            return Err(ModelError::Disconnected);
        }
        Ok(Assembly { tiles, seed })
    }

    pub(crate) fn from_parts_unchecked(tiles: BTreeMap<Pos, TypeId>, seed: BTreeSet<Pos>) -> Self {
        Assembly { tiles, seed }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn get(&self, p: Pos) -> Option<TypeId> {
        self.tiles.get(&p).copied()
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.tiles.contains_key(&p)
    }

    pub fn is_seed(&self, p: Pos) -> bool {
        self.seed.contains(&p)
    }

    pub fn seed_positions(&self) -> &BTreeSet<Pos> {
        &self.seed
    }

    /// Tiles in canonical `(y, x)` order.
    pub fn tiles(&self) -> impl Iterator<Item = Tile> + '_ {
        self.tiles.iter().map(|(&p, &t)| Tile::new(p, t))
    }

    pub fn map(&self) -> &BTreeMap<Pos, TypeId> {
        &self.tiles
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        self.tiles.keys().copied()
    }

    /// Positions grown after the seed.
    pub fn grown_positions(&self) -> impl Iterator<Item = Pos> + '_ {
        self.positions().filter(|p| !self.seed.contains(p))
    }

    pub fn width(&self) -> usize {
        width_of(self.positions())
    }

    pub fn height(&self) -> usize {
        height_of(self.positions())
    }

    pub fn is_subassembly_of(&self, other: &Assembly) -> bool {
        self.tiles.iter().all(|(p, t)| other.get(*p) == Some(*t))
    }

    pub(crate) fn insert_unchecked(&mut self, tile: Tile) {
        self.tiles.insert(tile.pos, tile.ty);
    }
}

/// Simple sequence of tiles where consecutive tiles interact.
///
/// The interaction invariant depends on a tile set, so construction through
/// [`Path::new`] checks it, while [`Path::from_tiles`] leaves checking to
/// [`Path::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    tiles: Vec<Tile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("position {pos} repeated at index {index}")]
    Repeated { index: usize, pos: Pos },
    #[error("tiles {index} and {} do not interact", index + 1)]
    NotInteracting { index: usize },
    #[error("type id {0} not in tile set")]
    UnknownType(u32),
}

impl Path {
    pub fn new(tiles: Vec<Tile>, tileset: &TileSet) -> Result<Self, PathError> {
        let p = Path { tiles };
        p.validate(tileset)?;
        Ok(p)
    }

    pub fn from_tiles(tiles: Vec<Tile>) -> Self {
        Path { tiles }
    }

    pub fn validate(&self, tileset: &TileSet) -> Result<(), PathError> {
        let mut seen = HashSet::with_capacity(self.tiles.len());
        for (index, t) in self.tiles.iter().enumerate() {
            if t.ty.index() >= tileset.len() {
                return Err(PathError::UnknownType(t.ty.0));
            }
            if !seen.insert(t.pos) {
                return Err(PathError::Repeated { index, pos: t.pos });
            }
        }
        for (index, w) in self.tiles.windows(2).enumerate() {
            if !tileset.interacts(&w[0], &w[1]) {
                return Err(PathError::NotInteracting { index });
            }
        }
        Ok(())
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn into_tiles(self) -> Vec<Tile> {
        self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn first(&self) -> Option<&Tile> {
        self.tiles.first()
    }

    pub fn last(&self) -> Option<&Tile> {
        self.tiles.last()
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        self.tiles.iter().map(|t| t.pos)
    }

    pub fn translate(&self, v: Vector) -> Path {
        Path {
            tiles: self.tiles.iter().map(|t| t.translate(v)).collect(),
        }
    }

    /// Concatenation `self · other` (no validity check).
    pub fn concat(&self, other: &Path) -> Path {
        let mut tiles = self.tiles.clone();
        tiles.extend_from_slice(&other.tiles);
        Path { tiles }
    }

    pub fn prefix(&self, len: usize) -> Path {
        Path {
            tiles: self.tiles[..len.min(self.tiles.len())].to_vec(),
        }
    }

    pub fn suffix_from(&self, start: usize) -> Path {
        Path {
            tiles: self.tiles[start.min(self.tiles.len())..].to_vec(),
        }
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.tiles.starts_with(&self.tiles)
    }

    pub fn width(&self) -> usize {
        width_of(self.positions())
    }

    pub fn height(&self) -> usize {
        height_of(self.positions())
    }

    pub fn bounding_box(&self) -> Option<(Pos, Pos)> {
        bounding_box(self.positions())
    }
}

impl FromIterator<Tile> for Path {
    fn from_iter<I: IntoIterator<Item = Tile>>(iter: I) -> Self {
        Path {
            tiles: iter.into_iter().collect(),
        }
    }
}

/// Anything that places tile types on positions: paths and assemblies.
pub trait Placement {
    fn placements(&self) -> BTreeMap<Pos, TypeId>;
}

impl Placement for Path {
    fn placements(&self) -> BTreeMap<Pos, TypeId> {
        self.tiles.iter().map(|t| (t.pos, t.ty)).collect()
    }
}

impl Placement for Assembly {
    fn placements(&self) -> BTreeMap<Pos, TypeId> {
        self.tiles.clone()
    }
}

/// Smallest position (in `(y, x)` order) where `a` and `b` place different types.
pub fn conflict_between(a: &impl Placement, b: &impl Placement) -> Option<Pos> {
    let (ma, mb) = (a.placements(), b.placements());
    let (small, large) = if ma.len() <= mb.len() { (&ma, &mb) } else { (&mb, &ma) };
    small
        .iter()
        .find(|(p, t)| large.get(p).is_some_and(|u| u != *t))
        .map(|(p, _)| *p)
}

/// Why a path is not producible.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProducibilityFault {
    #[error("empty path")]
    Empty,
    #[error("invalid path: {0}")]
    Invalid(#[from] PathError),
    #[error("first tile does not bind to the seed")]
    NotAttachedToSeed,
    #[error("tile {index} overlaps the seed at {pos}")]
    OverlapsSeed { index: usize, pos: Pos },
}

/// A tile assembly system `(T, σ, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileAssemblySystem {
    tileset: TileSet,
    seed: Assembly,
}

impl TileAssemblySystem {
    pub fn new(tileset: TileSet, seed: Assembly) -> Result<Self, ModelError> {
        if let Some(t) = seed.tiles().find(|t| t.ty.index() >= tileset.len()) {
            return Err(ModelError::TypeOutOfRange(t.ty.0));
        }
        if seed.is_empty() {
            return Err(ModelError::EmptySeed);
        }
        Ok(TileAssemblySystem { tileset, seed })
    }

    pub fn tileset(&self) -> &TileSet {
        &self.tileset
    }

    pub fn seed(&self) -> &Assembly {
        &self.seed
    }

    pub fn temperature(&self) -> u32 {
        TEMPERATURE
    }

    /// Same seed, different tile set (used for fault injection).
    pub fn with_tileset(&self, tileset: TileSet) -> Result<Self, ModelError> {
        TileAssemblySystem::new(tileset, self.seed.clone())
    }

    /// Candidate `(position, type)` pairs binding to a tile at `pos` of type `ty`
    /// through empty neighbors, as decided by `is_free`.
    pub(crate) fn extensions_of(
        &self,
        pos: Pos,
        ty: TypeId,
        mut is_free: impl FnMut(Pos) -> bool,
        out: &mut Vec<(Pos, TypeId)>,
    ) {
        for (side, glue) in self.tileset.get(ty).glues() {
            let q = pos.step(side);
            if !is_free(q) {
                continue;
            }
            for &t in self.tileset.binders(side.opposite(), glue) {
                out.push((q, t));
            }
        }
    }

    /// Every `(p, t)` with `p` empty and `t` binding to some neighbor of `p` in `alpha`.
    pub fn attachable_sites(&self, alpha: &Assembly) -> BTreeSet<(Pos, TypeId)> {
        let mut out = Vec::new();
        for tile in alpha.tiles() {
            self.extensions_of(tile.pos, tile.ty, |q| !alpha.contains(q), &mut out);
        }
        out.into_iter().collect()
    }

    fn binds_at(&self, alpha: &Assembly, p: Pos, t: TypeId) -> bool {
        let candidate = Tile::new(p, t);
        Side::ALL.into_iter().any(|s| {
            alpha
                .get(p.step(s))
                .is_some_and(|u| self.tileset.interacts(&candidate, &Tile::new(p.step(s), u)))
        })
    }

    pub fn attach(&self, alpha: &Assembly, p: Pos, t: TypeId) -> Result<Assembly, ModelError> {
        if t.index() >= self.tileset.len() {
            return Err(ModelError::TypeOutOfRange(t.0));
        }
        if alpha.contains(p) {
            return Err(ModelError::Occupied(p));
        }
        if !self.binds_at(alpha, p, t) {
            return Err(ModelError::NoMatchingGlue {
                pos: p,
                ty: self.tileset.name(t).to_string(),
            });
        }
        let mut next = alpha.clone();
        next.insert_unchecked(Tile::new(p, t));
        Ok(next)
    }

    pub fn is_terminal(&self, alpha: &Assembly) -> bool {
        self.attachable_sites(alpha).is_empty()
    }

    /// Grow the path tile by tile on top of the seed; report the first failure.
    pub fn check_path_producible(&self, path: &Path) -> Result<(), ProducibilityFault> {
        path.validate(&self.tileset)?;
        let Some(first) = path.first() else {
            return Err(ProducibilityFault::Empty);
        };
        for (index, t) in path.tiles().iter().enumerate() {
            if self.seed.contains(t.pos) {
                return Err(ProducibilityFault::OverlapsSeed { index, pos: t.pos });
            }
        }
        let attached = Side::ALL.into_iter().any(|s| {
            let q = first.pos.step(s);
            self.seed
                .get(q)
                .is_some_and(|u| self.tileset.interacts(first, &Tile::new(q, u)))
        });
        if !attached {
            return Err(ProducibilityFault::NotAttachedToSeed);
        }
        // Each later tile binds to its predecessor and its cell is still empty
        // (the path is simple and avoids the seed), so sequential growth succeeds.
        Ok(())
    }

    pub fn path_producible(&self, path: &Path) -> bool {
        self.check_path_producible(path).is_ok()
    }

    /// `σ ∪ asm(P)`.
    pub fn assembly_of_path(&self, path: &Path) -> Result<Assembly, ModelError> {
        assembly_of_path(path, &self.seed)
    }
}

/// Union of a path with an assembly (normally the seed).
pub fn assembly_of_path(path: &Path, base: &Assembly) -> Result<Assembly, ModelError> {
    let mut tiles = base.tiles.clone();
    for t in path.tiles() {
        match tiles.get(&t.pos) {
            Some(u) if *u != t.ty => {
                return Err(if base.contains(t.pos) {
                    ModelError::ConflictWithSeed(t.pos)
                } else {
                    ModelError::DuplicatePosition(t.pos)
                })
            }
            _ => {
                tiles.insert(t.pos, t.ty);
            }
        }
    }
    Assembly::from_parts(tiles, base.seed.clone())
}
