//! Inscribed balls of convex rings and the explicit-constant bound
//! r(A \ D) >= eps0 |A \ D| / diam(A), on random and hand-picked rings.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steady_euler::convexgeo::{inscribed_ball, instance_seed, random_ring, ring_constant, verify_ring_bound};
use steady_euler::lab::{geometry_sweep, injected_rings};

fn main() -> steady_euler::Result<()> {
    println!("eps0 = {:.6}", ring_constant());
    for i in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(3, i));
        let ring = random_ring(&mut rng);
        let ball = inscribed_ball(&ring, 1e-9)?;
        println!(
            "ring {i}: area {:.4}  radius {:.5} at ({:.3}, {:.3})  ratio {:.4}",
            ring.area(),
            ball.radius,
            ball.center[0],
            ball.center[1],
            ball.ratio
        );
    }
    for (name, ring) in injected_rings()? {
        let rep = verify_ring_bound(&ring, 1e-9)?;
        println!("{name:<18} diam(A) bound {}  diam(D) bound {}", rep.passes_outer, rep.passes_inner);
    }
    let (_, rep) = geometry_sweep(1000, 0, 1e-9)?;
    let s = &rep.summary;
    println!(
        "sweep of {}: {} diam(A) failures, {} diam(D) failures, smallest ratio {:.4} (ring {})",
        s.instances, s.failures_outer, s.failures_inner, s.min_ratio, s.min_ratio_index
    );
    Ok(())
}
