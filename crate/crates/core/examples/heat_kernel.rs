//! Heat kernel norms, trace asymptotics and truncation plans.

use liewords::constants::default_trace_times;
use liewords::heat::{heat_l2_norm, heat_trace_fit, plan_truncation};
use liewords::GroupDescriptor;

fn main() {
    for g in [
        GroupDescriptor::Torus(1),
        GroupDescriptor::Torus(2),
        GroupDescriptor::Su2,
    ] {
        println!("{g}");
        for t in [1e-3, 1e-2, 1e-1] {
            let n = g.dim() as f64;
            println!(
                "  t = {t:.0e}: ||H_t|| = {:.4e}, t^(-n/4) = {:.4e}",
                heat_l2_norm(g, t).unwrap(),
                t.powf(-n / 4.0)
            );
        }
        let fit = heat_trace_fit(g, &default_trace_times()).unwrap();
        println!("  trace ~ a0 t^(-n/2): a0 = {:.5}, a1 = {:.5}", fit.a0, fit.a1);
        let plans = plan_truncation(g, 0.01, 1e-6, 2.0).unwrap();
        println!(
            "  truncation at eta = 1e-6: adaptive M = {:.1}, formula M = {:.1}",
            plans.adaptive.cutoff, plans.formula.cutoff
        );
    }
}
