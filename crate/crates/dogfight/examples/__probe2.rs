use dogfight::benchmarks::make_function;
use dogfight::dos::{dos_optimize_observed, DosParams};
use dogfight::problem::Budget;

fn norm(v: &[f64]) -> f64 { v.iter().map(|x| x * x).sum::<f64>().sqrt() }

fn main() {
    let f = make_function("sphere", 10).unwrap();
    let p = f.to_problem();
    let mut iter = 0u64;
    dos_optimize_observed(&p, &DosParams::default(), Budget::new(200_000), 3, |state| {
        if iter >= 3900 && iter % 20 == 0 {
            // fitness quantiles of the population
            let mut fits: Vec<f64> = state.stealth.fitness.iter().chain(&state.regular.fitness).copied().collect();
            fits.sort_by(f64::total_cmp);
            // archive entry fitness quantiles and coordinate norms
            let occ = state.archive.occupancy();
            let mut arch_f: Vec<f64> = (0..occ).map(|i| state.archive.entry(i).fitness).collect();
            arch_f.sort_by(f64::total_cmp);
            let arch_norm_max = (0..occ).map(|i| norm(&state.archive.entry(i).position)).fold(0.0f64, f64::max);
            println!("t={} pop f: [{:.1e} {:.1e} {:.1e} {:.1e}] arch f: [{:.1e} {:.1e} {:.1e}] arch |x| max {:.2e} vmin {:.1e}",
                iter, fits[0], fits[12], fits[25], fits[49],
                arch_f[0], arch_f[occ/2], arch_f[occ-1], arch_norm_max, state.velocity.v_min);
        }
        iter += 1;
    }).unwrap();
}
