//! Two small hand-made systems: a path with a pumpable segment, and one whose
//! repeated segment runs into its own earlier tiles.

use crate::model::{Assembly, Glue, Path, Pos, Tile, TileAssemblySystem, TileSet, TileType};

fn g(token: &str) -> Option<Glue> {
    Some(Glue::named(token).expect("demo glue tokens are valid"))
}

/// `(name, N, E, S, W)` rows with `None` written as `""`.
type Row<'a> = (&'a str, &'a str, &'a str, &'a str, &'a str);

fn types(rows: &[Row<'_>]) -> Vec<TileType> {
    let opt = |s: &str| if s.is_empty() { None } else { g(s) };
    rows.iter()
        .map(|&(name, n, e, s, w)| TileType::new(name, opt(n), opt(e), opt(s), opt(w)))
        .collect()
}

fn system(rows: &[Row<'_>], seed: &[(&str, i32, i32)]) -> TileAssemblySystem {
    let ts = TileSet::new(types(rows)).expect("demo tile set is valid");
    let tiles: Vec<Tile> = seed
        .iter()
        .map(|&(name, x, y)| Tile::new(Pos::new(x, y), ts.id_of(name).expect("seed type")))
        .collect();
    let seed = Assembly::seed(tiles).expect("demo seed is connected");
    TileAssemblySystem::new(ts, seed).expect("demo system is valid")
}

/// Hook that climbs, runs east, drops two rows and re-enters `g2`; the
/// segment `g2..g2` repeats forever with offset `(3, -2)`.
pub fn pump_system() -> TileAssemblySystem {
    system(
        &[
            ("s", "", "a", "", ""),
            ("g0", "b", "", "", "a"),
            ("g1", "", "c", "b", ""),
            ("g2", "", "d", "", "c"),
            ("g3", "", "e", "", "d"),
            ("g4", "", "", "f", "e"),
            ("g5", "f", "", "h", ""),
            ("g6", "h", "c", "", ""),
        ],
        &[("s", 0, 0)],
    )
}

/// Offset between the two `g2` tiles of the pump demo.
pub const PUMP_VECTOR: (i32, i32) = (3, -2);

/// A loop east of the seed that comes back to `g2` one period later; a second
/// seed lane `w1..w6` along row -1 reaches the same `g2` type from below.
pub fn block_system() -> TileAssemblySystem {
    system(
        &[
            ("s", "", "a", "", ""),
            ("s2", "", "z1", "", ""),
            ("g0", "", "b", "", "a"),
            ("g1", "", "c", "", "b"),
            ("g2", "d", "", "y", "c"),
            ("g3", "", "", "d", "e"),
            ("g4", "f", "e", "", ""),
            ("g5", "", "g", "f", ""),
            ("g6", "", "h", "", "g"),
            ("g7", "", "i", "", "h"),
            ("g8", "", "", "j", "i"),
            ("g9", "j", "", "k", ""),
            ("g10", "k", "c", "", ""),
            ("w1", "", "z2", "", "z1"),
            ("w2", "", "z3", "", "z2"),
            ("w3", "", "z4", "", "z3"),
            ("w4", "", "z5", "", "z4"),
            ("w5", "", "z6", "", "z5"),
            ("w6", "y", "", "", "z6"),
        ],
        &[("s", -1, 0), ("s2", -1, -1)],
    )
}

/// The main route of the block demo, `g0 .. g10 g2`, and the indices of its
/// two `g2` tiles.
pub fn block_route(sys: &TileAssemblySystem) -> (Path, usize, usize) {
    let ts = sys.tileset();
    let cells = [
        ("g0", 0, 0),
        ("g1", 1, 0),
        ("g2", 2, 0),
        ("g3", 2, 1),
        ("g4", 1, 1),
        ("g5", 1, 2),
        ("g6", 2, 2),
        ("g7", 3, 2),
        ("g8", 4, 2),
        ("g9", 4, 1),
        ("g10", 4, 0),
        ("g2", 5, 0),
    ];
    let path = cells
        .iter()
        .map(|&(name, x, y)| Tile::new(Pos::new(x, y), ts.id_of(name).expect("demo type")))
        .collect();
    (path, 2, 11)
}

/// The pump demo route from the seed through the second `g2`.
pub fn pump_route(sys: &TileAssemblySystem) -> (Path, usize, usize) {
    let ts = sys.tileset();
    let cells = [
        ("g0", 1, 0),
        ("g1", 1, 1),
        ("g2", 2, 1),
        ("g3", 3, 1),
        ("g4", 4, 1),
        ("g5", 4, 0),
        ("g6", 4, -1),
        ("g2", 5, -1),
    ];
    let path = cells
        .iter()
        .map(|&(name, x, y)| Tile::new(Pos::new(x, y), ts.id_of(name).expect("demo type")))
        .collect();
    (path, 2, 7)
}
