//! Regions of the r-Shi and r-Catalan hyperplane arrangements, computed with
//! exact rational arithmetic, together with their bijections to O-rooted
//! labeled r-trees, r-parking functions (Pak-Stanley labeling) and pairs of a
//! permutation with an r-Dyck path.
//!
//! Indexing convention: coordinates and labeled vertices are 0-based in the
//! API (`v1` in rendered output is index `0`). The depth index `k` of a cubic
//! matrix entry and the position `q` inside an f-tuple are 1-based, because
//! they enter the entry formulas as integer offsets.

pub mod arrangement;
pub mod catalan_maps;
#[cfg(feature = "cli")]
pub mod cli;
pub mod cubic;
mod error;
pub mod json;
pub mod rational;
pub mod rtree;
pub mod shi_maps;
pub mod verify;

pub use arrangement::{
    enumerate_regions, enumerate_regions_sharded, feasible, hyperplanes, project, region_of_point,
    representative, ArrangementSpec, Hyperplane, Kind, Region, Window,
};
pub use catalan_maps::{
    enumerate_dyck_paths, fuss_catalan, heights_to_path, phi, sort_permutation, DyckPath,
    Permutation,
};
pub use cubic::{
    catalan_cubic, check_linear_facts, check_sign_relations, col_positive_count,
    min_positive_in_column, row_positive_count, shi_cubic, sign_tensor, ColumnMinimum, CubicMatrix,
    Sign, SignTensor,
};
pub use error::{Error, Result};
pub use rational::Rational;
pub use rtree::{enumerate_rtrees, f_tuples, is_valid_order, validate, FTupleTable, RTree, Vertex};
pub use shi_maps::{
    is_parking_function, pak_stanley, psi, psi_inverse, tree_to_parking, ParkingFunction,
};
