//! Boundedness, curvature, intrinsic metrics and ball probes.

use hodge_complex::criteria::{
    ball_probe, boundedness_report, curvature_criterion, curvature_trend, intrinsic_check, path_product_sums, sequence_trend,
    ProbeMetric,
};
use hodge_complex::generators::{fan, random_complex, FanFamily};
use hodge_complex::schrodinger::Flavor;
use hodge_complex::WeightedComplex;

fn main() -> hodge_complex::Result<()> {
    let wc = WeightedComplex::combinatorial(random_complex(8, 0.6, 2, 3, false)?);
    let b = boundedness_report(&wc)?;
    println!("sup gamma+/m = {}, norm bound {} >= lambda_max {:.4}", b.sup_gamma_over_m, b.norm_bound, b.lambda_max.unwrap());
    for f in Flavor::ALL {
        println!("intrinsic {f}: {:.6}", intrinsic_check(&wc, f).max_row_ratio);
    }

    let mut sups = Vec::new();
    let mut curv = Vec::new();
    for n in 2..=6 {
        let piece = fan(n)?.complex;
        sups.push(boundedness_report(&piece)?.sup_gamma_over_m);
        curv.push(curvature_criterion(&piece));
    }
    println!("fan sup gamma+/m: {sups:?} -> {:?}", sequence_trend(&sups));
    println!("fan inf m: {:?} -> {:?}", curv.iter().map(|c| c.inf_m).collect::<Vec<_>>(), curvature_trend(&curv));

    for budget in [10, 100, 1000] {
        let p = ball_probe(&FanFamily, ProbeMetric::Degree, 0, 1.0, budget);
        println!("degree ball of radius 1 at 0, budget {budget}: {} vertices, exceeded {}", p.count, p.budget_exceeded);
    }

    let piece = fan(10)?.complex;
    let path: Vec<_> = (1..=8).map(FanFamily::spoke).collect();
    let d = path_product_sums(&piece, Flavor::Up, &path, 0.0)?;
    println!("path products along the spokes: {:?} ({:?})", d.partial_sums, d.trend);
    Ok(())
}
