//! ASCII and SVG pictures of assemblies and paths.
//!
//! Model coordinates grow north; pictures are drawn top-down, so rows are
//! flipped here and nowhere else.

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{bounding_box, Assembly, Family, Path, Pos, Side, TileAssemblySystem, TileSet};

/// Character for tiles whose type belongs to no construction family.
pub const OTHER_CHAR: char = '#';

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("cell size {0} is below the minimum of 4")]
    CellTooSmall(u32),
}

/// Fill colors per tile class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette {
    pub seed: String,
    pub green: String,
    pub orange: String,
    pub blue: String,
    pub red: String,
    /// Types outside the four families (demo and padding tiles).
    pub other: String,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            seed: "#ffffff".into(),
            green: "#b7e4b0".into(),
            orange: "#ffd199".into(),
            blue: "#a9c8f0".into(),
            red: "#f4a6a6".into(),
            other: "#d9d9d9".into(),
        }
    }
}

impl Palette {
    fn fill(&self, family: Option<Family>, seed: bool) -> &str {
        if seed {
            return &self.seed;
        }
        match family {
            Some(Family::Green) => &self.green,
            Some(Family::Orange) => &self.orange,
            Some(Family::Blue) => &self.blue,
            Some(Family::Red) => &self.red,
            None => &self.other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    cell_size: u32,
    pub palette: Palette,
    pub show_glue_ticks: bool,
    pub show_dots: bool,
    pub show_path_trace: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            cell_size: 12,
            palette: Palette::default(),
            show_glue_ticks: false,
            show_dots: false,
            show_path_trace: false,
        }
    }
}

impl RenderOptions {
    pub fn with_cell_size(mut self, size: u32) -> Result<Self, RenderError> {
        if size < 4 {
            return Err(RenderError::CellTooSmall(size));
        }
        self.cell_size = size;
        Ok(self)
    }

    pub fn cell_size(&self) -> u32 {
        self.cell_size
    }
}

fn ascii_char(asm: &Assembly, ts: Option<&TileSet>, p: Pos) -> char {
    if asm.is_seed(p) {
        return 'S';
    }
    match (asm.get(p), ts) {
        (None, _) => '.',
        (Some(ty), Some(ts)) => ts
            .get(ty)
            .family()
            .map_or(OTHER_CHAR, |f| f.letter().to_ascii_uppercase()),
        (Some(_), None) => OTHER_CHAR,
    }
}

/// One character per cell, north row first; every line ends with `\n`.
pub fn render_ascii(asm: &Assembly, ts: &TileSet) -> String {
    render_ascii_with(asm, Some(ts))
}

fn render_ascii_with(asm: &Assembly, ts: Option<&TileSet>) -> String {
    let Some((lo, hi)) = bounding_box(asm.positions()) else {
        return String::new();
    };
    let mut out = String::new();
    for y in (lo.y..=hi.y).rev() {
        for x in lo.x..=hi.x {
            out.push(ascii_char(asm, ts, Pos::new(x, y)));
        }
        out.push('\n');
    }
    out
}

/// Tiles marked with a black dot: orange or red tiles carrying an east glue.
pub fn dot_positions(asm: &Assembly, ts: &TileSet) -> Vec<Pos> {
    asm.tiles()
        .filter(|t| !asm.is_seed(t.pos))
        .filter(|t| {
            let ty = ts.get(t.ty);
            matches!(ty.family(), Some(Family::Orange | Family::Red))
                && ty.glue(Side::East).is_some()
        })
        .map(|t| t.pos)
        .collect()
}

struct Canvas {
    c: i64,
    lo: Pos,
    hi: Pos,
}

impl Canvas {
    fn left(&self, p: Pos) -> i64 {
        self.c + (p.x - self.lo.x) as i64 * self.c
    }

    fn top(&self, p: Pos) -> i64 {
        self.c + (self.hi.y - p.y) as i64 * self.c
    }

    fn center(&self, p: Pos) -> (i64, i64) {
        (self.left(p) + self.c / 2, self.top(p) + self.c / 2)
    }

    fn width(&self) -> i64 {
        (self.hi.x - self.lo.x + 1) as i64 * self.c + 2 * self.c
    }

    fn height(&self) -> i64 {
        (self.hi.y - self.lo.y + 1) as i64 * self.c + 2 * self.c
    }
}

/// SVG of `asm`; `trace` (if given and enabled) is drawn as a polyline of segments.
fn svg(asm: &Assembly, ts: &TileSet, opts: &RenderOptions, trace: Option<&Path>) -> String {
    let mut s = String::new();
    let Some((lo, hi)) = bounding_box(asm.positions()) else {
        s.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"0\" height=\"0\"></svg>\n",
        );
        return s;
    };
    let cv = Canvas {
        c: opts.cell_size as i64,
        lo,
        hi,
    };
    let c = cv.c;
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        cv.width(),
        cv.height(),
        cv.width(),
        cv.height()
    );
    for t in asm.tiles() {
        let ty = ts.get(t.ty);
        let fill = opts.palette.fill(ty.family(), asm.is_seed(t.pos));
        let _ = writeln!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"{c}\" height=\"{c}\" fill=\"{fill}\" stroke=\"#000000\" stroke-width=\"1\"/>",
            cv.left(t.pos),
            cv.top(t.pos)
        );
    }
    if opts.show_glue_ticks {
        let len = (c / 4).max(1);
        for t in asm.tiles() {
            let (cx, cy) = cv.center(t.pos);
            for (side, _) in ts.get(t.ty).glues() {
                let h = c / 2;
                let (x1, y1, x2, y2) = match side {
                    Side::North => (cx, cy - h, cx, cy - h + len),
                    Side::South => (cx, cy + h, cx, cy + h - len),
                    Side::East => (cx + h, cy, cx + h - len, cy),
                    Side::West => (cx - h, cy, cx - h + len, cy),
                };
                let _ = writeln!(
                    s,
                    "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#000000\" stroke-width=\"1\"/>"
                );
            }
        }
    }
    if opts.show_path_trace {
        if let Some(path) = trace {
            for w in path.tiles().windows(2) {
                let (x1, y1) = cv.center(w[0].pos);
                let (x2, y2) = cv.center(w[1].pos);
                let _ = writeln!(
                    s,
                    "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#444444\" stroke-width=\"1\"/>"
                );
            }
        }
    }
    if opts.show_dots {
        let r = (c / 6).max(1);
        for p in dot_positions(asm, ts) {
            let (cx, cy) = cv.center(p);
            let _ = writeln!(s, "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r}\" fill=\"#000000\"/>");
        }
    }
    s.push_str("</svg>\n");
    s
}

pub fn render_svg(asm: &Assembly, ts: &TileSet, opts: &RenderOptions) -> String {
    svg(asm, ts, opts, None)
}

/// The path together with the seed; the trace follows the path order.
pub fn render_path_svg(path: &Path, sys: &TileAssemblySystem, opts: &RenderOptions) -> String {
    let asm = path_assembly(path, sys);
    svg(&asm, sys.tileset(), opts, Some(path))
}

pub fn render_path_ascii(path: &Path, sys: &TileAssemblySystem) -> String {
    render_ascii(&path_assembly(path, sys), sys.tileset())
}

/// `seed ∪ path`, tolerating paths that are not producible (faulty catalogs).
fn path_assembly(path: &Path, sys: &TileAssemblySystem) -> Assembly {
    sys.assembly_of_path(path).unwrap_or_else(|_| {
        let mut map = sys.seed().map().clone();
        for t in path.tiles() {
            map.entry(t.pos).or_insert(t.ty);
        }
        Assembly::from_parts_unchecked(map, sys.seed().seed_positions().clone())
    })
}
