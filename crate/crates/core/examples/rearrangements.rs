//! Distribution function, rearrangement along a stream function, the
//! symmetric increasing rearrangement, and Hoelder seminorms of profiles.

use steady_euler::fieldcore::{build_grid, ConvexDomain, ScalarField};
use steady_euler::poisson::solve_dirichlet;
use steady_euler::rearrange::{
    distribution_function, holder_seminorm_sampled, rearrange_along, symmetric_increasing_rearrangement, Order,
};

fn main() -> steady_euler::Result<()> {
    let grid = build_grid(ConvexDomain::unit_disk(), 1.0 / 64.0)?;
    let w = ScalarField::from_fn(grid.clone(), |p| 1.0 + (3.0 * p[0]).sin().powi(2) + 0.5 * p[1])?;
    let psi = solve_dirichlet(&w, 1e-10)?.psi;

    let dist = distribution_function(&w);
    println!("{} values, {} plateaus, total measure {:.6}", dist.count(), dist.plateaus().len(), dist.total_measure());

    for order in [Order::Increasing, Order::Decreasing] {
        let r = rearrange_along(&w, &psi, order)?;
        let pairing: f64 = r.values().iter().zip(psi.values()).map(|(a, b)| a * b).sum::<f64>() * grid.area() / grid.len() as f64;
        println!("{order:?}: same multiset {}, integral of omega psi {pairing:.6}", r.sorted_bits() == w.sorted_bits());
    }

    let sym = symmetric_increasing_rearrangement(&w)?;
    println!("symmetric increasing: same distribution {}, centre value {:.4}", sym.same_distribution(&w), sym.min());

    let mu = distribution_function(&psi).linearized()?;
    let (lo, hi) = mu.domain();
    for beta in [0.25, 0.5, 1.0] {
        println!("distribution of psi: sampled [.]_{beta} = {:.4}", holder_seminorm_sampled(&mu, beta, lo, hi, 128)?);
    }
    Ok(())
}
