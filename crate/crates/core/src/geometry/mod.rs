//! Simplex mappings, grid cells, rasterization and Hausdorff distances.

mod grid;
mod hausdorff;
mod simplex;

pub use grid::{boundary_hit_check, cell_of, rasterize, Cell, CellSet, GridSpec};
pub use hausdorff::{
    cellset_hausdorff, cellset_hausdorff_with, cellset_point_hausdorff, directed_hausdorff, hausdorff_distance,
    Metric, BOX_TOLERANCE,
};
pub use simplex::{simplex_map, simplex_unmap, MappedPoint, SimplexMapping, SimplexPoint};
