//! Graver basis of a small incidence ideal, with a primitivity check.

use incidence_toric::incidence::build_matrix;
use incidence_toric::toric::{graver_basis, is_primitive, ToricBudget, ToricMatrix};

fn main() -> incidence_toric::Result<()> {
    let budget = ToricBudget::default();
    let a = ToricMatrix::from(&build_matrix(5, 2, 1)?);
    let g = graver_basis(&a, &budget)?;
    println!("Graver basis of I(5,2,1): {} elements, degrees {:?}", g.len(), g.degree_counts());
    let primitive = g.elements.iter().map(|b| is_primitive(b, &a, &budget)).collect::<incidence_toric::Result<Vec<_>>>()?;
    println!("all primitive: {}", primitive.iter().all(|&p| p));
    Ok(())
}
