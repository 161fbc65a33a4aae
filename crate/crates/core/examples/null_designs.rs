//! Pods are null designs of minimal support; they span the integer kernel.

use incidence_toric::designs::{all_pods, is_null_design, min_support_scan, pod_expand, pod_matrix, ScanMode};
use incidence_toric::exactmath::{kernel_basis, LatticeBasis};
use incidence_toric::incidence::build_matrix;

fn main() -> incidence_toric::Result<()> {
    let (n, k, t) = (6, 3, 2);
    let pods = all_pods(n, k, t);
    let first = pod_expand(&pods[0], n)?;
    println!("{} pods; the first expands to {}", pods.len(), serde_json::to_string(&first).unwrap());
    println!("it is a null {t}-design: {}", is_null_design(&first, t).balanced);

    let a = build_matrix(n, k, t)?;
    let span = pod_matrix(n, k, t)?;
    let span = LatticeBasis::from_generators(span.rows(), &span.columns())?;
    let kernel = kernel_basis(&a.matrix);
    println!(
        "pods span the kernel: {}",
        span.contains_lattice(&kernel)? && kernel.contains_lattice(&span)?
    );

    let scan = min_support_scan(&a, ScanMode::PlusMinusOne { max_support: 8 }, 10_000_000)?;
    println!("smallest positive support of a +-1 kernel vector: {:?}", scan.min_positive_support);
    Ok(())
}
