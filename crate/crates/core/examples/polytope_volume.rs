//! Normalized volumes of P(6,3,2). Against the column lattice the volume
//! is the degree of the toric variety.

use incidence_toric::incidence::build_matrix;
use incidence_toric::polytope::{lattice_index, normalized_volume, placing_triangulation, PointConfig, VolumeLattice};

fn main() -> incidence_toric::Result<()> {
    let pc = PointConfig::from_incidence(&build_matrix(6, 3, 2)?);
    let tri = placing_triangulation(&pc)?;
    println!("placing triangulation: {} simplices of dimension {}", tri.len(), tri.dim);
    println!("column-lattice volume: {}", normalized_volume(&pc, VolumeLattice::ColumnLattice)?);
    println!("euclidean volume: {}", normalized_volume(&pc, VolumeLattice::Euclidean)?);
    println!("lattice index: {}", lattice_index(&pc)?);
    Ok(())
}
