//! File formats, tables and image output.

pub mod coeff_file;
pub mod gfc;
pub mod render;
pub mod tables;

pub use coeff_file::{read_coeffs, write_coeffs, CoefficientKind};
pub use gfc::{ingest_gfc, parse_gfc, GfcRecord, SYNTHETIC_TOPOGRAPHY};
pub use render::{centering_rotation, recenter_view, render, Colormap, Part, RasterImage};
pub use tables::{write_grid_table, write_so3_table};
