use canvas_forge::campaign::*;
use num::FromPrimitive;

fn main() {
    let n_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let samples: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(50);
    let cfg = CampaignConfig {
        n_max,
        samples,
        seed: 7,
        palette: 6,
        jobs: 0,
        distance: 4,
        c1: num::rational::BigRational::from_u32(1).unwrap(),
        c2: num::rational::BigRational::from_u32(1).unwrap(),
    };
    let t0 = std::time::Instant::now();
    let out = thomassen_verify(&cfg).unwrap();
    println!("thomassen n_max={} samples={}: cases={} failures={} elapsed={:?}",
        n_max, samples, out.cases, out.failures, t0.elapsed());
    if out.failures > 0 {
        for r in &out.reports {
            if r.name.contains("failures") {
                for line in r.body.lines().take(2) {
                    println!("FAIL {line}");
                }
            }
        }
    }
}
