//! Line-oriented tile set files.
//!
//! ```text
//! format tam1 v1
//! temperature 1
//! tile g0 N=. E=g1 S=. W=g0
//! seed s 0 0
//! ```
//!
//! `#` starts a comment. Tiles are written in tile set order and seed tiles
//! in row-major order, so generated files diff cleanly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{
    Assembly, Glue, ModelError, Pos, Side, Tile, TileAssemblySystem, TileSet, TileType,
};

pub const HEADER: &str = "format tam1 v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatErrorKind {
    #[error("missing header `{HEADER}`")]
    MissingHeader,
    #[error("unsupported format `{0}`")]
    UnsupportedFormat(String),
    #[error("unsupported temperature {0}")]
    UnsupportedTemperature(String),
    #[error("missing temperature line")]
    MissingTemperature,
    #[error("repeated directive `{0}`")]
    Repeated(&'static str),
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("malformed `{0}` line")]
    Malformed(&'static str),
    #[error("bad tile name `{0}`")]
    BadName(String),
    #[error("duplicate tile name `{0}`")]
    DuplicateName(String),
    #[error("unknown glue syntax `{0}`")]
    BadGlue(String),
    #[error("side {0} given twice")]
    RepeatedSide(char),
    #[error("tile `{0}` carries no glue")]
    GlueFree(String),
    #[error("seed names undeclared tile `{0}`")]
    UnknownTile(String),
    #[error("bad coordinate `{0}`")]
    BadCoordinate(String),
    #[error("seed position {0} given twice")]
    DuplicateSeedPosition(Pos),
    #[error("no seed tiles")]
    EmptySeed,
    #[error("seed is not connected")]
    DisconnectedSeed,
    #[error("no tile types")]
    NoTiles,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct FormatError {
    pub line: usize,
    pub kind: FormatErrorKind,
}

fn err(line: usize, kind: FormatErrorKind) -> FormatError {
    FormatError { line, kind }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-' | b'.' | b':'))
        && s != "."
}

fn side_from_letter(c: &str) -> Option<Side> {
    Side::ALL.into_iter().find(|s| s.letter().to_string() == c)
}

fn parse_tile(line: usize, words: &[&str]) -> Result<TileType, FormatError> {
    let [name, sides @ ..] = words else {
        return Err(err(line, FormatErrorKind::Malformed("tile")));
    };
    if !valid_name(name) {
        return Err(err(line, FormatErrorKind::BadName(name.to_string())));
    }
    if sides.len() != 4 {
        return Err(err(line, FormatErrorKind::Malformed("tile")));
    }
    let mut glues: [Option<Option<Glue>>; 4] = [None, None, None, None];
    for w in sides {
        let Some((s, label)) = w.split_once('=') else {
            return Err(err(line, FormatErrorKind::BadGlue(w.to_string())));
        };
        let Some(side) = side_from_letter(s) else {
            return Err(err(line, FormatErrorKind::BadGlue(w.to_string())));
        };
        let glue = if label == "." {
            None
        } else {
            Some(
                label
                    .parse::<Glue>()
                    .map_err(|_| err(line, FormatErrorKind::BadGlue(label.to_string())))?,
            )
        };
        let slot = &mut glues[side.index()];
        if slot.is_some() {
            return Err(err(line, FormatErrorKind::RepeatedSide(side.letter())));
        }
        *slot = Some(glue);
    }
    let [n, e, s, w] = glues.map(|g| g.expect("all four sides present"));
    let ty = TileType::new(name, n, e, s, w);
    if ty.glue_count() == 0 {
        return Err(err(line, FormatErrorKind::GlueFree(name.to_string())));
    }
    Ok(ty)
}

fn parse_coord(line: usize, s: &str) -> Result<i32, FormatError> {
    s.parse()
        .map_err(|_| err(line, FormatErrorKind::BadCoordinate(s.to_string())))
}

/// Parse a tile set file into a temperature-1 system.
pub fn parse_tileset(text: &str) -> Result<TileAssemblySystem, FormatError> {
    let mut header = false;
    let mut temperature = false;
    let mut types: Vec<TileType> = Vec::new();
    let mut names: BTreeMap<String, usize> = BTreeMap::new();
    let mut seeds: Vec<(usize, &str, Pos)> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        if !header {
            if words[0] != "format" {
                return Err(err(line, FormatErrorKind::MissingHeader));
            }
            if content != HEADER || words.len() != 3 {
                return Err(err(line, FormatErrorKind::UnsupportedFormat(content.to_string())));
            }
            header = true;
            continue;
        }
        match words[0] {
            "format" => return Err(err(line, FormatErrorKind::Repeated("format"))),
            "temperature" => {
                if temperature {
                    return Err(err(line, FormatErrorKind::Repeated("temperature")));
                }
                match words[1..] {
                    ["1"] => temperature = true,
                    [t] => {
                        return Err(err(line, FormatErrorKind::UnsupportedTemperature(t.into())))
                    }
                    _ => return Err(err(line, FormatErrorKind::Malformed("temperature"))),
                }
            }
            "tile" => {
                let ty = parse_tile(line, &words[1..])?;
                if names.contains_key(ty.name()) {
                    return Err(err(line, FormatErrorKind::DuplicateName(ty.name().to_string())));
                }
                names.insert(ty.name().to_string(), types.len());
                types.push(ty);
            }
            "seed" => {
                let [name, x, y] = words[1..] else {
                    return Err(err(line, FormatErrorKind::Malformed("seed")));
                };
                let pos = Pos::new(parse_coord(line, x)?, parse_coord(line, y)?);
                if seeds.iter().any(|&(_, _, p)| p == pos) {
                    return Err(err(line, FormatErrorKind::DuplicateSeedPosition(pos)));
                }
                seeds.push((line, name, pos));
            }
            other => return Err(err(line, FormatErrorKind::UnknownDirective(other.to_string()))),
        }
    }
    if !header {
        return Err(err(last_line.max(1), FormatErrorKind::MissingHeader));
    }
    if !temperature {
        return Err(err(last_line, FormatErrorKind::MissingTemperature));
    }
    if types.is_empty() {
        return Err(err(last_line, FormatErrorKind::NoTiles));
    }
    let tileset = TileSet::new(types).map_err(|e| match e {
        ModelError::DuplicateType(n) => err(last_line, FormatErrorKind::DuplicateName(n)),
        ModelError::GlueFreeType(n) => err(last_line, FormatErrorKind::GlueFree(n)),
        other => err(last_line, FormatErrorKind::BadName(other.to_string())),
    })?;
    let Some(&(first_seed_line, _, _)) = seeds.first() else {
        return Err(err(last_line, FormatErrorKind::EmptySeed));
    };
    let mut tiles = Vec::new();
    for &(line, name, pos) in &seeds {
        let ty = tileset
            .id_of(name)
            .ok_or_else(|| err(line, FormatErrorKind::UnknownTile(name.to_string())))?;
        tiles.push(Tile::new(pos, ty));
    }
    let seed = Assembly::seed(tiles).map_err(|e| match e {
        ModelError::DuplicatePosition(p) => {
            err(first_seed_line, FormatErrorKind::DuplicateSeedPosition(p))
        }
        _ => err(first_seed_line, FormatErrorKind::DisconnectedSeed),
    })?;
    TileAssemblySystem::new(tileset, seed)
        .map_err(|_| err(first_seed_line, FormatErrorKind::DisconnectedSeed))
}

fn label(g: Option<&Glue>) -> String {
    g.map_or_else(|| ".".to_string(), Glue::to_string)
}

/// Serialize `sys`; `parse_tileset(&serialize(sys)) == sys`.
pub fn serialize(sys: &TileAssemblySystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "temperature {}", sys.temperature());
    for ty in sys.tileset().types() {
        let _ = write!(out, "tile {}", ty.name());
        for side in Side::ALL {
            let _ = write!(out, " {}={}", side.letter(), label(ty.glue(side)));
        }
        out.push('\n');
    }
    for t in sys.seed().tiles() {
        let _ = writeln!(
            out,
            "seed {} {} {}",
            sys.tileset().name(t.ty),
            t.pos.x,
            t.pos.y
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{generate_tileset, Params};

    const SMALL: &str = "format tam1 v1\ntemperature 1\ntile s N=. E=g0 S=. W=.\ntile g0 N=. E=. S=. W=g0\nseed s 0 0\n";

    #[test]
    fn round_trip_generated() {
        let sys = generate_tileset(&Params::new(2, 2).unwrap()).unwrap();
        let text = serialize(&sys);
        assert_eq!(parse_tileset(&text).unwrap(), sys);
        assert!(text.starts_with("format tam1 v1\ntemperature 1\ntile s N=. E=g0 S=. W=.\n"));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!("# demo\n\n{}", SMALL.replace("seed s 0 0", "seed s 0 0 # origin"));
        let sys = parse_tileset(&text).unwrap();
        assert_eq!(sys.tileset().len(), 2);
    }

    fn kind(text: &str) -> (usize, FormatErrorKind) {
        let e = parse_tileset(text).unwrap_err();
        (e.line, e.kind)
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let t2 = SMALL.replace("temperature 1", "temperature 2");
        assert_eq!(
            kind(&t2),
            (2, FormatErrorKind::UnsupportedTemperature("2".into()))
        );
        assert!(parse_tileset(&t2).unwrap_err().to_string().contains("unsupported temperature"));

        let dup = SMALL.replace("tile g0 N=. E=. S=. W=g0", "tile s N=. E=. S=. W=g0");
        assert_eq!(kind(&dup), (4, FormatErrorKind::DuplicateName("s".into())));

        let glue = SMALL.replace("W=g0", "W=g00");
        assert_eq!(kind(&glue), (4, FormatErrorKind::BadGlue("g00".into())));

        let unknown = SMALL.replace("seed s 0 0", "grow s 0 0");
        assert_eq!(kind(&unknown), (5, FormatErrorKind::UnknownDirective("grow".into())));

        let split = format!("{SMALL}seed g0 3 3\n");
        assert_eq!(kind(&split), (5, FormatErrorKind::DisconnectedSeed));

        assert_eq!(kind("temperature 1\n"), (1, FormatErrorKind::MissingHeader));
        let free = SMALL.replace("W=g0", "W=.");
        assert_eq!(kind(&free), (4, FormatErrorKind::GlueFree("g0".into())));
    }
}
