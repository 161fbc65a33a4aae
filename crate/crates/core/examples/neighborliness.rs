//! Every three vertices of P(6,3,2) span a face; the positive support of
//! a pod does not.

use incidence_toric::designs::{all_pods, pod_expand};
use incidence_toric::incidence::build_matrix;
use incidence_toric::polytope::{is_face, neighborliness, PointConfig};

fn main() -> incidence_toric::Result<()> {
    let a = build_matrix(6, 3, 2)?;
    let pc = PointConfig::from_incidence(&a);
    let nb = neighborliness(&pc, 4, 100_000)?;
    println!("{}-neighborly after {} LPs", nb.neighborly, nb.lps_solved);

    let pod = pod_expand(&all_pods(6, 3, 2)[0], 6)?;
    let support: Vec<usize> = pod.positive_support().iter().filter_map(|s| a.column_of(s)).collect();
    let cert = is_face(&pc, &support)?;
    println!("pod support is a face: {} (certificate checks: {})", cert.is_face(), cert.verify(&pc, &support));
    println!("{}", serde_json::to_string(&cert).unwrap());
    Ok(())
}
