use dogfight::benchmarks::make_function;
use dogfight::dos::{dos_optimize, DosParams};
use dogfight::problem::Budget;

fn main() {
    let params = DosParams::default();
    for name in ["sphere", "zakharov", "rastrigin", "ackley", "rosenbrock", "griewank"] {
        let f = make_function(name, 10).unwrap();
        let p = f.to_problem();
        let mut finals: Vec<f64> = (0..9)
            .map(|s| dos_optimize(&p, &params, Budget::new(200_000), s).unwrap().best_value)
            .collect();
        finals.sort_by(f64::total_cmp);
        println!("{name:28} median {:.3e}  min {:.3e}  max {:.3e}", finals[4], finals[0], finals[8]);
    }
}
