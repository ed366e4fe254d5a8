//! Temperature-1 abstract tile assembly: model, a loop-building tile set
//! family, exhaustive exploration, verification and rendering.

pub mod construction;
pub mod demo;
pub mod explorer;
pub mod format;
pub mod model;
pub mod render;
pub mod verifier;

pub use construction::{generate_tileset, Catalog, Params, PathName};
pub use model::{
    Assembly, Family, Glue, Path, Pos, Side, Tile, TileAssemblySystem, TileSet, TileType, TypeId,
    Vector,
};
